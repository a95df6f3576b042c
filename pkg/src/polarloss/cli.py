"""Command-line front end: moment tables, sweeps, verification, matrices.

Exit codes: 0 success, 1 usage or I/O error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import coherent_channel, qubit_channel, verify
from .noise_model import (
    ChannelParams,
    ParameterError,
    moments_closed_form,
    moments_oracle,
    validate_params,
)
from .sweep import CurvePoint, parse_grid

__all__ = ["RunConfig", "run", "main", "write_csv"]


class UsageError(Exception):
    """Bad flags or malformed values on the command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, resolved from flags and defaults."""

    subcommand: str
    theta_star: float = 0.0
    phi_star: float = 0.0
    sigma_list: tuple[float, ...] = (0.1,)
    x_grid: tuple[float, ...] = (0.0,)
    delta: float = 0.1
    seed: int = 1
    samples: int = 100_000
    nodes: int = 40
    alpha: complex = 0.1 + 0.0j
    c0: complex = 1.0 + 0.0j
    c1: complex = 0.0 + 0.0j
    kind: str = "coherent"
    out: str | None = None

    def base_params(self) -> ChannelParams:
        return validate_params(self.theta_star, self.phi_star, self.sigma_list[0], self.x_grid[0])


def _parse_sigma_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad sigma list {text!r}") from exc
    if not values:
        raise UsageError("sigma list must be non-empty")
    return values


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--theta-star", type=float, default=0.0, help="mean mixing angle (rad)")
    parser.add_argument("--phi-star", type=float, default=0.0, help="mean loss angle (rad)")


def build_parser() -> _Parser:
    parser = _Parser(prog="polarloss", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("moments", help="closed-form vs quadrature moment table")
    _add_param_flags(p)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--nodes", type=int, default=40)

    for name, help_text in (
        ("coherent-sweep", "Holevo information vs x, one series per sigma"),
        ("qubit-sweep", "erasure capacity vs x, one series per sigma"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_param_flags(p)
        p.add_argument("--sigma", type=_parse_sigma_list, default=(0.1,), metavar="S1[,S2,...]")
        p.add_argument("--x", type=str, default="0:0.9:0.1", metavar="START:STOP:STEP")
        p.add_argument("--out", type=str, required=True)
        if name == "coherent-sweep":
            p.add_argument("--delta", type=float, default=0.1)

    p = sub.add_parser("verify", help="run the oracle cross-check suite")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=100_000, help="Monte-Carlo sample count")

    p = sub.add_parser("output-state", help="print the output matrix for given params")
    _add_param_flags(p)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--kind", choices=("coherent", "qubit"), default="coherent")
    p.add_argument("--alpha", type=complex, default=0.1 + 0.0j)
    p.add_argument("--c0", type=complex, default=1.0 + 0.0j)
    p.add_argument("--c1", type=complex, default=0.0 + 0.0j)

    return parser


def _to_config(args: argparse.Namespace) -> RunConfig:
    """Resolve the parsed namespace into one typed record."""
    sigma = getattr(args, "sigma", (0.1,))
    sigma_list = sigma if isinstance(sigma, tuple) else (float(sigma),)
    x = getattr(args, "x", 0.0)
    x_grid = tuple(parse_grid(x)) if isinstance(x, str) else (float(x),)
    if not x_grid:
        raise UsageError(f"empty x grid {x!r}")
    return RunConfig(
        subcommand=args.subcommand,
        theta_star=getattr(args, "theta_star", 0.0),
        phi_star=getattr(args, "phi_star", 0.0),
        sigma_list=sigma_list,
        x_grid=x_grid,
        delta=getattr(args, "delta", 0.1),
        seed=getattr(args, "seed", 1),
        samples=getattr(args, "samples", 100_000),
        nodes=getattr(args, "nodes", 40),
        alpha=getattr(args, "alpha", 0.1 + 0.0j),
        c0=getattr(args, "c0", 1.0 + 0.0j),
        c1=getattr(args, "c1", 0.0 + 0.0j),
        kind=getattr(args, "kind", "coherent"),
        out=getattr(args, "out", None),
    )


def write_csv(points: list[CurvePoint], path: str) -> None:
    """Write sweep rows as ``x,sigma,value`` with round-trip float text."""
    if not points:
        raise ParameterError("refusing to write an empty sweep")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("x,sigma,value\n")
        for p in points:
            # float() guards against numpy scalars, whose repr is not a decimal
            handle.write(f"{float(p.x)!r},{float(p.sigma)!r},{float(p.value)!r}\n")


def _print_matrix(matrix: np.ndarray) -> None:
    for row in matrix:
        cells = "  ".join(f"{z.real:+.9f}{z.imag:+.9f}j" for z in row)
        print(cells)


def _cmd_moments(config: RunConfig) -> int:
    params = config.base_params()
    closed = moments_closed_form(params)
    quad = moments_oracle(params, method="quadrature", effort=config.nodes)
    print(f"params: theta*={params.theta_star!r} phi*={params.phi_star!r} "
          f"sigma={params.sigma!r} x={params.x!r}")
    print(f"{'moment':<8}{'closed_form':>20}{'quadrature':>20}{'abs_diff':>12}")
    for name in ("a", "b", "c", "d", "e", "epsilon"):
        cv = getattr(closed, name)
        qv = getattr(quad, name)
        print(f"{name:<8}{cv:>20.12f}{qv:>20.12f}{abs(cv - qv):>12.2e}")
    print(f"max abs difference: {closed.max_abs_difference(quad):.3e}")
    return 0


def _cmd_sweep(config: RunConfig) -> int:
    base = validate_params(config.theta_star, config.phi_star, config.sigma_list[0], 0.0)
    x_grid = list(config.x_grid)
    if config.subcommand == "coherent-sweep":
        points = coherent_channel.sweep_x(base, config.delta, x_grid, list(config.sigma_list))
    else:
        points = qubit_channel.sweep_x(base, x_grid, list(config.sigma_list))
    assert config.out is not None
    write_csv(points, config.out)
    print(f"wrote {len(points)} rows to {config.out}")
    return 0


def _cmd_verify(config: RunConfig) -> int:
    results = verify.run_verification(config.seed, mc_samples=config.samples)
    for result in results:
        print(result.line())
    failures = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failures}/{len(results)} checks passed (seed {config.seed})")
    return 2 if failures else 0


def _cmd_output_state(config: RunConfig) -> int:
    params = config.base_params()
    if config.kind == "coherent":
        matrix = coherent_channel.output_state_closed_form(
            moments_closed_form(params), config.alpha
        )
    else:
        psi = qubit_channel.LogicalQubit(config.c0, config.c1)
        matrix = qubit_channel.channel_output_exact(params, psi)
    _print_matrix(matrix)
    return 0


_COMMANDS = {
    "moments": _cmd_moments,
    "coherent-sweep": _cmd_sweep,
    "qubit-sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "output-state": _cmd_output_state,
}


def run(argv: list[str] | None = None) -> int:
    """Parse flags, dispatch, and return the process exit code."""
    parser = build_parser()
    try:
        config = _to_config(parser.parse_args(argv))
        return _COMMANDS[config.subcommand](config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
