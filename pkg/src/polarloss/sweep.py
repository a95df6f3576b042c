"""Shared sweep plumbing: curve points, grid parsing, deterministic mapping."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .noise_model import ParameterError

__all__ = ["CurvePoint", "parse_grid", "thread_count", "evaluate_points", "THREADS_ENV_VAR"]

THREADS_ENV_VAR = "POLARLOSS_THREADS"


@dataclass(frozen=True)
class CurvePoint:
    """One sweep sample: correlation x, spread sigma, value in bits."""

    x: float
    sigma: float
    value: float


def parse_grid(text: str) -> list[float]:
    """Parse ``start:stop:step`` into an inclusive grid.

    The stop value is included when it lands within step/2 of the last
    multiple, so grids like 0:0.9:0.1 keep their endpoint despite float
    round-off.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ParameterError(f"grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ParameterError(f"grid has non-numeric parts: {text!r}") from exc
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise ParameterError(f"grid values must be finite: {text!r}")
    if step <= 0.0:
        raise ParameterError(f"grid step must be positive, got {step!r}")
    if stop < start:
        raise ParameterError(f"grid stop must be >= start, got {text!r}")
    count = int(math.floor((stop - start) / step + 0.5))
    values = [start + k * step for k in range(count + 1)]
    return [v for v in values if v <= stop + 0.5 * step]


def thread_count() -> int:
    """Worker count from the environment, at least 1."""
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")
    return max(n, 1)


def evaluate_points(fn, items, threads: int | None = None) -> list:
    """Map ``fn`` over ``items`` preserving order; results do not depend on
    whether or how the evaluation is parallelised."""
    items = list(items)
    workers = thread_count() if threads is None else max(int(threads), 1)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
