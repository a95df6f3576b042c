"""Cross-check suite pairing every closed form with an independent oracle.

Each check recomputes one pipeline quantity along a second route (tensor
quadrature, Monte Carlo, or the Fock simulator) and compares at the
tolerance the pipeline promises.  The CLI ``verify`` subcommand runs all of
them and fails loudly if any gap exceeds its tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coherent_channel, density, fock_sim, qubit_channel
from .noise_model import (
    ChannelParams,
    moments_closed_form,
    moments_oracle,
    monte_carlo_moments,
    sample,
)

__all__ = ["CheckResult", "run_verification", "MOMENT_GRID", "CHANNEL_GRID"]

MOMENT_GRID = tuple(
    ChannelParams(theta_star=t, phi_star=f, sigma=s, x=x)
    for s in (0.05, 0.1, 0.2, 0.3)
    for x in (0.0, 0.3, 0.6, 0.9)
    for t in (0.0, 0.3)
    for f in (0.0, 0.3)
)

CHANNEL_GRID = tuple(
    (sigma, x, amp)
    for sigma in (0.05, 0.1, 0.2)
    for x in (0.0, 0.5, 0.9)
    for amp in (0.05, 0.1, 0.2)
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status} {self.name}: max_error={self.max_error:.6e} tol={self.tolerance:.1e}{extra}"


def check_moments_quadrature(nodes: int = 40) -> CheckResult:
    """Closed-form moments against Gauss-Hermite quadrature over the grid."""
    worst = 0.0
    for params in MOMENT_GRID:
        closed = moments_closed_form(params)
        quad = moments_oracle(params, method="quadrature", effort=nodes)
        worst = max(worst, closed.max_abs_difference(quad))
    return CheckResult(
        name="moments-closed-vs-quadrature",
        passed=worst <= 1e-10,
        max_error=worst,
        tolerance=1e-10,
        detail=f"{len(MOMENT_GRID)} parameter points, {nodes} nodes/axis",
    )


def check_moments_monte_carlo(seed: int, samples: int = 100_000) -> CheckResult:
    """Closed-form moments within 4 standard errors of Monte-Carlo estimates."""
    worst = 0.0
    points = [
        ChannelParams(0.0, 0.0, 0.1, 0.0),
        ChannelParams(0.0, 0.0, 0.2, 0.3),
        ChannelParams(0.3, 0.3, 0.2, 0.6),
        ChannelParams(0.0, 0.3, 0.3, 0.9),
    ]
    for i, params in enumerate(points):
        closed = moments_closed_form(params)
        est, err = monte_carlo_moments(params, samples, seed + i)
        for field in ("a", "b", "c", "d", "e", "epsilon"):
            gap = abs(getattr(closed, field) - getattr(est, field))
            se = max(getattr(err, field), 1e-15)
            worst = max(worst, gap / (4.0 * se))
    return CheckResult(
        name="moments-closed-vs-monte-carlo",
        passed=worst <= 1.0,
        max_error=worst,
        tolerance=1.0,
        detail=f"gap / (4 SE) over {len(points)} points, {samples} samples each",
    )


def check_channel_oracle(nodes: int = 40) -> CheckResult:
    """Closed-form 5x5 output against the Fock-simulator quadrature average."""
    worst = 0.0
    for sigma, x, amp in CHANNEL_GRID:
        params = ChannelParams(0.0, 0.0, sigma, x)
        closed = coherent_channel.output_state_closed_form(moments_closed_form(params), amp)
        simulated = fock_sim.channel_output(params, amp, method="quadrature", effort=nodes)
        worst = max(worst, float(np.max(np.abs(closed - simulated))))
    return CheckResult(
        name="channel-closed-vs-fock-sim",
        passed=worst <= 1e-8,
        max_error=worst,
        tolerance=1e-8,
        detail=f"{len(CHANNEL_GRID)} grid points, entrywise",
    )


def check_density_contracts(seed: int, cases: int = 200) -> CheckResult:
    """Randomized outputs satisfy the Hermitian / trace / PSD contracts."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    failed = 0
    for _ in range(cases):
        amp = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
        theta = rng.uniform(-math.pi, math.pi)
        phi = rng.uniform(-math.pi, math.pi)
        report = density.assert_density(fock_sim.apply_channel_once(amp, theta, phi))
        if not report.passed:
            failed += 1
        worst = max(worst, report.hermiticity_defect, report.trace_defect, -report.min_eigenvalue)
    return CheckResult(
        name="density-contracts",
        passed=failed == 0,
        max_error=worst,
        tolerance=1e-10,
        detail=f"{cases} random single-shot outputs, {failed} failures",
    )


def check_average_state(seed: int) -> CheckResult:
    """Block-form average state against 2-D quadrature over the ensemble."""
    del seed  # deterministic check; signature kept uniform
    worst = 0.0
    delta = 0.1
    for params in (ChannelParams(0.0, 0.0, 0.1, 0.5), ChannelParams(0.3, 0.0, 0.2, 0.3)):
        moments = moments_closed_form(params)
        direct = coherent_channel.average_state(moments, delta)
        r, w = coherent_channel._radial_grid(delta, coherent_channel.QuadSettings())
        angles = np.arange(8) * (2.0 * math.pi / 8)
        averaged = np.zeros((5, 5), dtype=complex)
        for ri, wi in zip(r, w):
            for ang in angles:
                amp = ri * complex(math.cos(ang), math.sin(ang))
                averaged += (wi / len(angles)) * coherent_channel.output_state_closed_form(
                    moments, amp, max_alpha=math.inf
                )
        worst = max(worst, float(np.max(np.abs(direct - averaged))))
    return CheckResult(
        name="average-state-vs-ensemble-quadrature",
        passed=worst <= 1e-8,
        max_error=worst,
        tolerance=1e-8,
        detail="entrywise, delta=0.1",
    )


def check_optimal_ensemble(seed: int) -> CheckResult:
    """Holevo of the circular-state ensemble equals the erasure capacity."""
    del seed
    worst = 0.0
    ensemble = qubit_channel.optimal_ensemble()
    for params in MOMENT_GRID:
        chi = qubit_channel.holevo_for_ensemble(params, ensemble)
        worst = max(worst, abs(chi - qubit_channel.erasure_capacity(params)))
    return CheckResult(
        name="optimal-ensemble-holevo-vs-capacity",
        passed=worst <= 1e-9,
        max_error=worst,
        tolerance=1e-9,
        detail=f"{len(MOMENT_GRID)} parameter points",
    )


def check_erasure_monte_carlo(seed: int, samples: int = 200_000) -> CheckResult:
    """Closed-form erasure probability within 4 SE of sampled sin^2(phi)."""
    worst = 0.0
    points = [
        ChannelParams(0.0, 0.0, 0.1, 0.0),
        ChannelParams(0.0, 0.0, 0.1, 0.9),
        ChannelParams(0.0, 0.3, 0.2, 0.5),
    ]
    for i, params in enumerate(points):
        draws = sample(params, seed + 1000 + i, samples)
        values = np.sin(draws[:, 1]) ** 2
        est = float(np.mean(values))
        se = max(float(np.std(values, ddof=1) / math.sqrt(samples)), 1e-15)
        gap = abs(qubit_channel.erasure_probability(params) - est)
        worst = max(worst, gap / (4.0 * se))
    return CheckResult(
        name="erasure-probability-vs-monte-carlo",
        passed=worst <= 1.0,
        max_error=worst,
        tolerance=1.0,
        detail=f"gap / (4 SE), {samples} samples per point",
    )


def run_verification(
    seed: int = 1, mc_samples: int = 100_000, density_cases: int = 200
) -> list[CheckResult]:
    """Run every cross-check; deterministic for a fixed seed and effort."""
    return [
        check_moments_quadrature(),
        check_moments_monte_carlo(seed, samples=mc_samples),
        check_channel_oracle(),
        check_density_contracts(seed, cases=density_cases),
        check_average_state(seed),
        check_optimal_ensemble(seed),
        check_erasure_monte_carlo(seed, samples=2 * mc_samples),
    ]
