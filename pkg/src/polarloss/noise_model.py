"""Joint statistics of the mixing angle theta and the loss angle phi.

The two angles are bivariate normal with mean ``(theta_star, phi_star)``.
The density is written with the coupling matrix ``[[1, -x], [-x, 1]]``
scaled by ``1/sigma^2`` in the exponent, which is the same as a covariance

    sigma^2 / (1 - x^2) * [[1, x], [x, 1]]

so the marginal spread grows as the correlation ``x`` approaches 1.  At
``x = 0`` the angles are independent with variance ``sigma^2`` each.

Trigonometric moments of this distribution (the ``GaussianMoments`` record)
are what the channel outputs are built from.  They are available both in
closed form and through two independent numerical oracles (Gauss-Hermite
quadrature and seeded Monte Carlo) so the closed forms can be cross-checked.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "ParameterError",
    "SpreadWarning",
    "SPREAD_WARNING_LIMIT",
    "ChannelParams",
    "AngleSample",
    "GaussianMoments",
    "validate_params",
    "pdf",
    "sample",
    "moments_closed_form",
    "moments_oracle",
    "monte_carlo_moments",
    "distribution_distance",
    "gauss_hermite_grid",
]

# Angles are radians throughout; degrees are not supported.

SPREAD_WARNING_LIMIT = math.pi / 8

_MIN_QUAD_NODES = 8
_MIN_MC_SAMPLES = 1000


class ParameterError(ValueError):
    """Raised when channel or solver parameters are out of range."""


class SpreadWarning(UserWarning):
    """Marginal angle spread is large enough for periodicity effects."""


@dataclass(frozen=True)
class ChannelParams:
    """Noise parameters: mean angles, fluctuation scale, correlation.

    ``sigma`` must be positive and ``x`` must lie in [0, 1].  ``x = 1`` is
    accepted here because the closed-form moments have a finite limit; the
    density and the sampler reject it (the distribution is improper there).
    """

    theta_star: float
    phi_star: float
    sigma: float
    x: float

    def __post_init__(self) -> None:
        for name in ("theta_star", "phi_star", "sigma", "x"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        if not self.sigma > 0.0:
            raise ParameterError(f"sigma must be positive, got {self.sigma!r}")
        if not 0.0 <= self.x <= 1.0:
            raise ParameterError(f"x must be in [0, 1], got {self.x!r}")

    @property
    def marginal_std(self) -> float:
        """Standard deviation of each angle, sigma / sqrt(1 - x^2)."""
        if self.x == 1.0:
            return math.inf
        return self.sigma / math.sqrt(1.0 - self.x * self.x)

    @property
    def spread_warning(self) -> bool:
        """True when the marginal spread exceeds pi/8 (small-angle regime broken)."""
        return self.marginal_std > SPREAD_WARNING_LIMIT

    def covariance(self) -> np.ndarray:
        if self.x == 1.0:
            raise ParameterError("covariance is unbounded at x = 1")
        s2 = self.sigma * self.sigma / (1.0 - self.x * self.x)
        return s2 * np.array([[1.0, self.x], [self.x, 1.0]])

    def scale_matrix(self) -> np.ndarray:
        """Lower-triangular L with L @ L.T equal to the covariance."""
        if self.x == 1.0:
            raise ParameterError("scale matrix is unbounded at x = 1")
        s = self.sigma / math.sqrt(1.0 - self.x * self.x)
        return s * np.array([[1.0, 0.0], [self.x, math.sqrt(1.0 - self.x * self.x)]])


class AngleSample(NamedTuple):
    theta: float
    phi: float


@dataclass(frozen=True)
class GaussianMoments:
    """Trigonometric moments of the angle distribution.

    ``a``, ``b``, ``c`` are the cos^2(phi)-weighted averages of
    cos^2(theta), sin^2(theta) and sin(2 theta); ``d`` and ``e`` average
    cos(theta)cos(phi) and sin(theta)cos(phi); ``epsilon`` is the loss
    probability, the average of sin^2(phi).  The identity
    ``a + b + epsilon = 1`` holds exactly.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    epsilon: float

    def max_abs_difference(self, other: "GaussianMoments") -> float:
        return max(
            abs(self.a - other.a),
            abs(self.b - other.b),
            abs(self.c - other.c),
            abs(self.d - other.d),
            abs(self.e - other.e),
            abs(self.epsilon - other.epsilon),
        )


def validate_params(theta_star: float, phi_star: float, sigma: float, x: float) -> ChannelParams:
    """Build a validated parameter record, warning when the spread is large.

    Raises ParameterError for non-finite input, sigma <= 0 or x outside
    [0, 1].  Emits SpreadWarning (and sets the record's ``spread_warning``
    flag) when sigma / sqrt(1 - x^2) exceeds pi/8.
    """
    params = ChannelParams(float(theta_star), float(phi_star), float(sigma), float(x))
    if params.spread_warning:
        warnings.warn(
            f"marginal angle spread {params.marginal_std:.4f} rad exceeds "
            f"{SPREAD_WARNING_LIMIT:.4f}; periodicity effects are no longer negligible",
            SpreadWarning,
            stacklevel=2,
        )
    return params


def pdf(params: ChannelParams, theta, phi):
    """Joint density of (theta, phi).  Broadcasts over array input.

    Undefined at x = 1 where the distribution degenerates onto a line.
    """
    if params.x >= 1.0:
        raise ParameterError("pdf is undefined at x = 1")
    dt = np.asarray(theta, dtype=float) - params.theta_star
    dp = np.asarray(phi, dtype=float) - params.phi_star
    x = params.x
    s2 = params.sigma * params.sigma
    quad = (dt * dt - 2.0 * x * dt * dp + dp * dp) / (2.0 * s2)
    norm = math.sqrt(1.0 - x * x) / (2.0 * math.pi * s2)
    out = norm * np.exp(-quad)
    return float(out) if out.ndim == 0 else out


def sample(params: ChannelParams, seed: int, n: int) -> np.ndarray:
    """Draw ``n`` correlated (theta, phi) pairs, shape (n, 2), deterministically.

    Standard-normal pairs are pushed through the lower-triangular square
    root of the covariance; the same seed always yields the same array.
    Rows unpack as ``AngleSample(theta, phi)``.
    """
    if params.x >= 1.0 - 1e-9:
        raise ParameterError("sampling requires x < 1 - 1e-9")
    if n < 1:
        raise ParameterError(f"sample count must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((n, 2))
    mean = np.array([params.theta_star, params.phi_star])
    return u @ params.scale_matrix().T + mean


def _damping_factors(params: ChannelParams) -> tuple[float, float, float, float, float]:
    """exp factors (g2, g4m, g4p, g1m, g1p); the 1/(1-x) ones vanish at x = 1."""
    s2 = params.sigma * params.sigma
    x = params.x
    if x == 1.0:
        g2 = 0.0
        g4m = 0.0
        g1m = 0.0
    else:
        g2 = math.exp(-2.0 * s2 / (1.0 - x * x))
        g4m = math.exp(-4.0 * s2 / (1.0 - x))
        g1m = math.exp(-s2 / (1.0 - x))
    g4p = math.exp(-4.0 * s2 / (1.0 + x))
    g1p = math.exp(-s2 / (1.0 + x))
    return g2, g4m, g4p, g1m, g1p


def moments_closed_form(params: ChannelParams) -> GaussianMoments:
    """Exact Gaussian averages of the six trigonometric moments.

    Uses E[cos(u)] = cos(u*) exp(-Var(u)/2) applied to the sum and
    difference angles; Var(theta +/- phi) = 2 sigma^2 / (1 -/+ x).
    At x = 1 the divergent-variance factors are replaced by their limit 0,
    so every moment stays finite.
    """
    t2 = 2.0 * params.theta_star
    f2 = 2.0 * params.phi_star
    g2, g4m, g4p, g1m, g1p = _damping_factors(params)

    # E[cos 2theta cos 2phi] resolved through cos(2theta +/- 2phi).
    cos_cross = 0.5 * (math.cos(t2 + f2) * g4m + math.cos(t2 - f2) * g4p)
    sin_cross = 0.5 * (math.sin(t2 + f2) * g4m + math.sin(t2 - f2) * g4p)

    a = 0.25 * (1.0 + g2 * (math.cos(t2) + math.cos(f2)) + cos_cross)
    b = 0.25 * (1.0 - g2 * (math.cos(t2) - math.cos(f2)) - cos_cross)
    c = 0.5 * g2 * math.sin(t2) + 0.5 * sin_cross
    d = 0.5 * (
        math.cos(params.theta_star + params.phi_star) * g1m
        + math.cos(params.theta_star - params.phi_star) * g1p
    )
    e = 0.5 * (
        math.sin(params.theta_star + params.phi_star) * g1m
        + math.sin(params.theta_star - params.phi_star) * g1p
    )
    epsilon = 0.5 * (1.0 - math.cos(f2) * g2)
    return GaussianMoments(a=a, b=b, c=c, d=d, e=e, epsilon=epsilon)


def _moment_integrands(theta: np.ndarray, phi: np.ndarray) -> tuple[np.ndarray, ...]:
    ct, st = np.cos(theta), np.sin(theta)
    cp = np.cos(phi)
    cp2 = cp * cp
    a = ct * ct * cp2
    return (a, cp2 - a, 2.0 * st * ct * cp2, ct * cp, st * cp, 1.0 - cp2)


def _mean_and_se(values: np.ndarray) -> tuple[float, float]:
    n = values.size
    mean = float(values.sum()) / n
    square_sum = float(np.dot(values, values))
    var = max((square_sum - n * mean * mean) / (n - 1), 0.0)
    return mean, math.sqrt(var / n)


def gauss_hermite_grid(params: ChannelParams, nodes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tensor Gauss-Hermite nodes in whitened coordinates.

    Returns flattened (theta, phi, weight) arrays; the weights sum to 1.
    """
    if nodes < _MIN_QUAD_NODES:
        raise ParameterError(f"quadrature needs >= {_MIN_QUAD_NODES} nodes per axis, got {nodes}")
    t, w = np.polynomial.hermite.hermgauss(nodes)
    u1, u2 = np.meshgrid(t, t, indexing="ij")
    u = np.stack([u1.ravel(), u2.ravel()], axis=1) * math.sqrt(2.0)
    pts = u @ params.scale_matrix().T
    weights = np.outer(w, w).ravel() / math.pi
    theta = pts[:, 0] + params.theta_star
    phi = pts[:, 1] + params.phi_star
    return theta, phi, weights


def moments_oracle(
    params: ChannelParams,
    method: str = "quadrature",
    effort: int = 40,
    seed: int | None = None,
) -> GaussianMoments:
    """Numerically integrated moments, independent of the closed forms.

    ``effort`` is nodes per axis for quadrature (>= 8) or the sample count
    for Monte Carlo (>= 1000, requires x < 1).
    """
    if method == "quadrature":
        theta, phi, w = gauss_hermite_grid(params, effort)
        vals = _moment_integrands(theta, phi)
        a, b, c, d, e, eps = (float(w @ v) for v in vals)
        return GaussianMoments(a=a, b=b, c=c, d=d, e=e, epsilon=eps)
    if method == "monte_carlo":
        estimate, _ = monte_carlo_moments(params, effort, 0 if seed is None else seed)
        return estimate
    raise ParameterError(f"unknown method {method!r}")


def monte_carlo_moments(
    params: ChannelParams, n_samples: int, seed: int
) -> tuple[GaussianMoments, GaussianMoments]:
    """Monte-Carlo moments plus their standard errors, as two records."""
    if n_samples < _MIN_MC_SAMPLES:
        raise ParameterError(f"monte carlo needs >= {_MIN_MC_SAMPLES} samples, got {n_samples}")
    draws = sample(params, seed, n_samples)
    vals = _moment_integrands(draws[:, 0], draws[:, 1])
    stats = [_mean_and_se(v) for v in vals]
    return GaussianMoments(*(m for m, _ in stats)), GaussianMoments(*(s for _, s in stats))


def distribution_distance(params: ChannelParams, theta, phi):
    """Pointwise gap between the joint density and the x = 0 product form.

    Evaluates p(theta) p(phi) |1 - exp(-(theta - theta*)(phi - phi*) x / 2 sigma^2)|
    where the product reference keeps marginal variance sigma^2.
    """
    if params.x >= 1.0:
        raise ParameterError("distance is undefined at x = 1")
    dt = np.asarray(theta, dtype=float) - params.theta_star
    dp = np.asarray(phi, dtype=float) - params.phi_star
    s2 = params.sigma * params.sigma
    product = np.exp(-(dt * dt + dp * dp) / (2.0 * s2)) / (2.0 * math.pi * s2)
    out = product * np.abs(1.0 - np.exp(-dt * dp * params.x / (2.0 * s2)))
    return float(out) if out.ndim == 0 else out
