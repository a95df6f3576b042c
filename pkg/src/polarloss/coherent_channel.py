"""Closed-form weak-coherent pipeline: output matrix, ensemble average, Holevo.

The channel output for a weak coherent input is a 5x5 matrix whose entries
are the Gaussian moments weighted by powers of alpha.  Averaging over a
centered Gaussian ensemble of amplitudes gives a block state whose entropy,
minus the ensemble-averaged output entropy, is the Holevo information.

The matrix sign convention follows the beam-splitter orientation used by
the Fock simulator (a photon entering the first slot acquires +sin on the
second slot), which makes the closed form entrywise equal to the simulated
average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import density
from .noise_model import ChannelParams, GaussianMoments, ParameterError, moments_closed_form
from .sweep import CurvePoint, evaluate_points

__all__ = [
    "CoherentEnsembleParams",
    "QuadSettings",
    "HolevoResult",
    "EigenvalueComparison",
    "QuadratureError",
    "output_state_closed_form",
    "eigenvalues_closed_form",
    "eigenvalue_comparison",
    "ensemble_photon_weight",
    "average_state",
    "output_entropy",
    "holevo_chi",
    "sweep_x",
]

DEFAULT_MAX_ALPHA = 0.5

_MOMENT_SUM_TOL = 1e-9


class QuadratureError(RuntimeError):
    """Radial quadrature failed its convergence or symmetry check."""


@dataclass(frozen=True)
class CoherentEnsembleParams:
    """Amplitude scale of the centered Gaussian input ensemble, 0 < delta <= 0.3."""

    delta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta) and 0.0 < self.delta <= 0.3):
            raise ParameterError(f"delta must be in (0, 0.3], got {self.delta!r}")


@dataclass(frozen=True)
class QuadSettings:
    """Radial quadrature controls for the ensemble integrals.

    The Gauss-Legendre panel covers [0, domain_factor * delta]; the ensemble
    weight beyond 12 delta is below 1e-31, so the truncation never matters.
    """

    radial_nodes: int = 256
    domain_factor: float = 12.0

    def __post_init__(self) -> None:
        if self.radial_nodes < 32:
            raise ParameterError(f"radial_nodes must be >= 32, got {self.radial_nodes}")
        if not self.domain_factor >= 6.0:
            raise ParameterError(f"domain_factor must be >= 6, got {self.domain_factor!r}")


@dataclass(frozen=True)
class HolevoResult:
    """Holevo information and its two entropy terms, all in bits."""

    chi: float
    s_average: float
    mean_output_entropy: float
    radial_nodes: int
    estimated_error: float


@dataclass(frozen=True)
class EigenvalueComparison:
    """Closed-form eigenvalue expressions versus the numerical eigensolver."""

    closed_form: np.ndarray
    numerical: np.ndarray
    max_abs_diff: float


def _check_moments(moments: GaussianMoments) -> None:
    gap = abs(moments.a + moments.b + moments.epsilon - 1.0)
    if gap > _MOMENT_SUM_TOL:
        raise ParameterError(f"moments violate a + b + epsilon = 1 (off by {gap:.3e})")


def output_state_closed_form(
    moments: GaussianMoments, alpha: complex, max_alpha: float = DEFAULT_MAX_ALPHA
) -> np.ndarray:
    """5x5 output matrix for input amplitude ``alpha``; trace is exactly 1.

    Basis order: vacuum, the two input-photon configurations (coupled by the
    ``d`` moment), then the two cross-polarized configurations (coupled by
    ``e``); the ``c`` moment couples the blocks and ``b`` fills the second
    block with alternating signs fixed by the beam-splitter orientation.
    """
    alpha = complex(alpha)
    if abs(alpha) > max_alpha:
        raise ParameterError(f"|alpha| = {abs(alpha):.4f} exceeds the weakness guard {max_alpha}")
    _check_moments(moments)
    aa = abs(alpha) ** 2
    n2 = 1.0 / (1.0 + 2.0 * aa)
    m = np.zeros((5, 5), dtype=complex)
    m[0, 0] = 1.0 + 2.0 * aa * (1.0 - moments.a - moments.b)
    m[0, 1] = m[0, 2] = alpha.conjugate() * moments.d
    m[0, 3] = alpha.conjugate() * moments.e
    m[0, 4] = -alpha.conjugate() * moments.e
    m[1:, 0] = m[0, 1:].conj()
    m[1, 1] = m[1, 2] = m[2, 1] = m[2, 2] = aa * moments.a
    half_c = 0.5 * aa * moments.c
    m[1, 3] = m[2, 3] = half_c
    m[1, 4] = m[2, 4] = -half_c
    m[3, 1] = m[3, 2] = half_c
    m[4, 1] = m[4, 2] = -half_c
    m[3, 3] = m[4, 4] = aa * moments.b
    m[3, 4] = m[4, 3] = -aa * moments.b
    return n2 * m


def eigenvalues_closed_form(moments: GaussianMoments, abs_alpha: float) -> np.ndarray:
    """Closed-form output eigenvalue expressions, diagnostic only.

    Valid only in the regime where the odd moments vanish (|c|, |e| below
    1e-6).  The entropy pipeline never uses these: they disagree with the
    numerical eigenvalues of the full matrix (see eigenvalue_comparison),
    so they are kept purely to quantify that gap.
    """
    if abs(moments.c) >= 1e-6 or abs(moments.e) >= 1e-6:
        raise ParameterError(
            f"closed-form eigenvalues need |c|, |e| < 1e-6, got c={moments.c!r}, e={moments.e!r}"
        )
    aa = abs_alpha * abs_alpha
    n2 = 1.0 / (1.0 + 2.0 * aa)
    disc = math.sqrt((1.0 - 2.0 * aa * moments.a) ** 2 + 8.0 * aa * moments.d)
    base = 1.0 + 2.0 * aa - 2.0 * aa * moments.b
    lam1 = 0.5 * n2 * (base + disc)
    lam2 = 0.5 * n2 * (base - disc)
    lam3 = 2.0 * n2 * aa * moments.b
    return np.array([lam1, lam2, lam3, 0.0, 0.0])


def eigenvalue_comparison(moments: GaussianMoments, abs_alpha: float) -> EigenvalueComparison:
    """Compare the closed-form eigenvalue expressions with exact eigenvalues."""
    closed = np.sort(eigenvalues_closed_form(moments, abs_alpha))[::-1]
    numerical = density.eigenvalues(output_state_closed_form(moments, abs_alpha))
    return EigenvalueComparison(
        closed_form=closed,
        numerical=numerical,
        max_abs_diff=float(np.max(np.abs(closed - numerical))),
    )


def _radial_grid(delta: float, settings: QuadSettings) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and ensemble-weighted weights on [0, factor*delta]."""
    t, w = np.polynomial.legendre.leggauss(settings.radial_nodes)
    upper = settings.domain_factor * delta
    r = 0.5 * upper * (t + 1.0)
    scaled_w = 0.5 * upper * w
    weight = (r / (delta * delta)) * np.exp(-r * r / (2.0 * delta * delta))
    return r, scaled_w * weight


def ensemble_photon_weight(delta: float) -> float:
    """The ensemble average of |alpha|^2 / (1 + 2 |alpha|^2).

    This is the single-photon weight that multiplies the moments in the
    ensemble-averaged state.  It is strictly below 2 delta^2 and approaches
    it as delta -> 0.
    """
    CoherentEnsembleParams(delta)
    settings = QuadSettings()
    r, w = _radial_grid(delta, settings)
    return float(np.sum(w * (r * r) / (1.0 + 2.0 * r * r)))


def average_state(moments: GaussianMoments, delta: float) -> np.ndarray:
    """Ensemble-averaged 5x5 output state; the amplitude-odd entries vanish.

    The vacuum weight is 1 - 2 L (a + b) with L the ensemble photon weight;
    each photon block carries its moment times L, and the ``c`` moment
    couples the blocks (it is zero whenever theta_star is zero).
    """
    _check_moments(moments)
    weight = ensemble_photon_weight(delta)
    m = np.zeros((5, 5), dtype=complex)
    m[0, 0] = 1.0 - 2.0 * weight * (moments.a + moments.b)
    m[1, 1] = m[1, 2] = m[2, 1] = m[2, 2] = moments.a * weight
    half_c = 0.5 * moments.c * weight
    m[1, 3] = m[2, 3] = m[3, 1] = m[3, 2] = half_c
    m[1, 4] = m[2, 4] = m[4, 1] = m[4, 2] = -half_c
    m[3, 3] = m[4, 4] = moments.b * weight
    m[3, 4] = m[4, 3] = -moments.b * weight
    return m


def output_entropy(moments: GaussianMoments, alpha: complex) -> float:
    """Entropy in bits of the closed-form output at amplitude ``alpha``."""
    matrix = output_state_closed_form(moments, alpha, max_alpha=math.inf)
    return density.von_neumann_entropy(matrix)


def holevo_chi(
    params: ChannelParams,
    delta: float,
    quad_settings: QuadSettings | None = None,
) -> HolevoResult:
    """Holevo information of the Gaussian weak-coherent ensemble.

    First term: entropy of the ensemble-averaged state.  Second term: the
    radial integral of the output entropy (the output spectrum depends only
    on |alpha|, which is asserted numerically before integrating).
    """
    CoherentEnsembleParams(delta)
    settings = quad_settings or QuadSettings()
    moments = moments_closed_form(params)

    phase = complex(math.cos(math.pi / 3.0), math.sin(math.pi / 3.0))
    s_line = output_entropy(moments, delta)
    s_rot = output_entropy(moments, delta * phase)
    if abs(s_line - s_rot) > 1e-10:
        raise QuadratureError(
            f"output entropy is not radially symmetric ({abs(s_line - s_rot):.3e})"
        )

    def integrate(nodes: int) -> float:
        r, w = _radial_grid(delta, replace(settings, radial_nodes=nodes))
        return float(np.sum(w * np.array([output_entropy(moments, ri) for ri in r])))

    mean_entropy = integrate(settings.radial_nodes)
    coarse = integrate(settings.radial_nodes // 2)
    estimated_error = abs(mean_entropy - coarse)
    if estimated_error > 1e-8 * max(1.0, abs(mean_entropy)):
        raise QuadratureError(
            f"radial quadrature did not converge (doubling change {estimated_error:.3e})"
        )

    s_avg = density.von_neumann_entropy(average_state(moments, delta))
    return HolevoResult(
        chi=s_avg - mean_entropy,
        s_average=s_avg,
        mean_output_entropy=mean_entropy,
        radial_nodes=settings.radial_nodes,
        estimated_error=estimated_error,
    )


def sweep_x(
    params_base: ChannelParams,
    delta: float,
    x_grid,
    sigma_list,
    quad_settings: QuadSettings | None = None,
    threads: int | None = None,
) -> list[CurvePoint]:
    """Holevo information over every (sigma, x) pair, sigma-major ordering."""
    x_grid = list(x_grid)
    sigma_list = list(sigma_list)
    if not x_grid or not sigma_list:
        raise ParameterError("x_grid and sigma_list must be non-empty")
    pairs = [(s, x) for s in sigma_list for x in x_grid]

    def point(pair: tuple[float, float]) -> CurvePoint:
        sigma, x = pair
        params = replace(params_base, sigma=sigma, x=x)
        result = holevo_chi(params, delta, quad_settings)
        return CurvePoint(x=x, sigma=sigma, value=result.chi)

    return evaluate_points(point, pairs, threads=threads)
