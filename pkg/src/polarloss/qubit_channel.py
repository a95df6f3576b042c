"""Dual-rail single-photon channel: rotation plus correlated erasure.

A logical qubit rides on one photon split over the two input slots.  The
mixing beam splitter rotates the logical state in its plane; the loss beam
splitters move the photon to the environment with probability sin^2(phi),
which reads out as an orthogonal flag state |2>.  Averaged over the angle
distribution the channel is an erasure channel with probability ``epsilon``
composed with a mixture of rotations, and its classical capacity is
1 - epsilon: the two circular states (|0> +/- i |1>)/sqrt(2) are invariant
under every rotation angle, so they ride through the non-erased branch
untouched.

Qutrit outputs are 3x3 matrices in the basis (|0>_L, |1>_L, |2>_L).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import density
from .noise_model import ChannelParams, ParameterError, moments_closed_form
from .sweep import CurvePoint, evaluate_points

__all__ = [
    "ROTATION_GENERATOR",
    "LogicalQubit",
    "DiscreteEnsemble",
    "rotation_matrix",
    "erasure_probability",
    "channel_output_exact",
    "channel_output_mean_rotation",
    "erasure_capacity",
    "holevo_for_ensemble",
    "optimal_ensemble",
    "sweep_x",
]

# Generator of in-plane rotations: |0>_L -> -|1>_L, |1>_L -> |0>_L.
ROTATION_GENERATOR = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class LogicalQubit:
    """Amplitudes on the dual-rail logical basis, normalized to 1."""

    c0: complex
    c1: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "c0", complex(self.c0))
        object.__setattr__(self, "c1", complex(self.c1))
        norm = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ParameterError(f"logical qubit must be normalized, |c|^2 = {norm!r}")

    def density_matrix(self) -> np.ndarray:
        vec = np.array([self.c0, self.c1], dtype=complex)
        return np.outer(vec, vec.conj())


@dataclass(frozen=True)
class DiscreteEnsemble:
    """Weighted set of logical qubit states; probabilities sum to 1."""

    members: tuple[tuple[float, LogicalQubit], ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ParameterError("ensemble must contain at least one state")
        probs = [p for p, _ in self.members]
        if any(p < 0.0 for p in probs):
            raise ParameterError("ensemble probabilities must be non-negative")
        total = math.fsum(probs)
        if abs(total - 1.0) > 1e-12:
            raise ParameterError(f"ensemble probabilities must sum to 1, got {total!r}")


def rotation_matrix(angle: float) -> np.ndarray:
    """exp(angle * generator): |0>_L -> cos|0>_L - sin|1>_L."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, s], [-s, c]])


def erasure_probability(params: ChannelParams) -> float:
    """Probability that the photon leaks to the environment.

    Average of sin^2(phi): (1 - cos(2 phi*) exp(-2 sigma^2/(1 - x^2))) / 2,
    with the exponential replaced by its limit 0 at x = 1.  Equals
    1 - (a + b) of the closed-form moments.
    """
    if params.x == 1.0:
        damping = 0.0
    else:
        damping = math.exp(-2.0 * params.sigma**2 / (1.0 - params.x**2))
    return 0.5 * (1.0 - math.cos(2.0 * params.phi_star) * damping)


def _logical_block_exact(params: ChannelParams, rho: np.ndarray) -> np.ndarray:
    """Gaussian average of cos^2(phi) R(theta) rho R(theta)^T via the moments."""
    m = moments_closed_form(params)
    y = ROTATION_GENERATOR
    return m.a * rho + 0.5 * m.c * (y @ rho - rho @ y) - m.b * (y @ rho @ y)


def channel_output_exact(params: ChannelParams, psi: LogicalQubit) -> np.ndarray:
    """Averaged qutrit output: erasure weight on |2>, moment-mixed logical block."""
    rho = psi.density_matrix()
    out = np.zeros((3, 3), dtype=complex)
    out[:2, :2] = _logical_block_exact(params, rho)
    out[2, 2] = erasure_probability(params)
    return out


def channel_output_mean_rotation(params: ChannelParams, psi: LogicalQubit) -> np.ndarray:
    """Single rotation by the mean angle instead of the averaged mixture.

    Simpler picture of the same channel: rotate once by theta_star, erase
    with probability epsilon.  It agrees with channel_output_exact as
    sigma -> 0 and, for the circular states, at every parameter value; for
    generic inputs at finite sigma the two differ.
    """
    rho = psi.density_matrix()
    eps = erasure_probability(params)
    r = rotation_matrix(params.theta_star)
    out = np.zeros((3, 3), dtype=complex)
    out[:2, :2] = (1.0 - eps) * (r @ rho @ r.T)
    out[2, 2] = eps
    return out


def erasure_capacity(params: ChannelParams) -> float:
    """Classical capacity 1 - epsilon in bits per use."""
    return 1.0 - erasure_probability(params)


def holevo_for_ensemble(params: ChannelParams, ensemble: DiscreteEnsemble) -> float:
    """Holevo information of a discrete ensemble through the exact channel."""
    outputs = [(p, channel_output_exact(params, psi)) for p, psi in ensemble.members]
    averaged = sum(p * out for p, out in outputs)
    mean_entropy = math.fsum(p * density.von_neumann_entropy(out) for p, out in outputs)
    return density.von_neumann_entropy(averaged) - mean_entropy


def optimal_ensemble() -> DiscreteEnsemble:
    """Equal mixture of the two circular states (|0> +/- i |1>)/sqrt(2)."""
    inv = 1.0 / math.sqrt(2.0)
    plus = LogicalQubit(c0=inv, c1=1j * inv)
    minus = LogicalQubit(c0=inv, c1=-1j * inv)
    return DiscreteEnsemble(members=((0.5, plus), (0.5, minus)))


def sweep_x(
    params_base: ChannelParams,
    x_grid,
    sigma_list,
    threads: int | None = None,
) -> list[CurvePoint]:
    """Erasure capacity over every (sigma, x) pair, sigma-major ordering."""
    x_grid = list(x_grid)
    sigma_list = list(sigma_list)
    if not x_grid or not sigma_list:
        raise ParameterError("x_grid and sigma_list must be non-empty")
    pairs = [(s, x) for s in sigma_list for x in x_grid]

    def point(pair: tuple[float, float]) -> CurvePoint:
        sigma, x = pair
        params = replace(params_base, sigma=sigma, x=x)
        return CurvePoint(x=x, sigma=sigma, value=erasure_capacity(params))

    return evaluate_points(point, pairs, threads=threads)
