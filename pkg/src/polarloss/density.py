"""Small dense Hermitian linear algebra: eigenvalues, entropy, density checks.

Everything here targets matrices of dimension 2 to 9 (the channel outputs
are 3x3 and 5x5), so the eigensolver is a cyclic Jacobi iteration: slow in
big-O terms but deterministic and robust, which matters more at this size.
Entropies are in bits (log base 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noise_model import ParameterError

__all__ = [
    "EigenSolverError",
    "HermitianMatrix",
    "DensityReport",
    "eigenvalues",
    "von_neumann_entropy",
    "assert_density",
]

_EIG_CLIP = 1e-10  # eigenvalues in [-1e-10, 0] are treated as round-off zeros


class EigenSolverError(RuntimeError):
    """Jacobi iteration failed to converge (malformed input)."""


class HermitianMatrix:
    """Square complex matrix validated to be Hermitian at construction."""

    __slots__ = ("data",)

    def __init__(self, data, tol: float = 1e-12):
        arr = np.array(data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ParameterError(f"expected a square matrix, got shape {arr.shape}")
        n = arr.shape[0]
        if not 2 <= n <= 9:
            raise ParameterError(f"dimension must be in [2, 9], got {n}")
        defect = float(np.max(np.abs(arr - arr.conj().T)))
        if not defect <= tol:
            raise ParameterError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.1e})")
        arr.setflags(write=False)
        self.data = arr

    @property
    def n(self) -> int:
        return self.data.shape[0]


def _as_array(matrix) -> np.ndarray:
    if isinstance(matrix, HermitianMatrix):
        return matrix.data
    return HermitianMatrix(matrix).data


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eigenvalues(matrix, tol: float = 1e-13, max_sweeps: int = 60) -> np.ndarray:
    """Real eigenvalues in descending order via cyclic Jacobi rotations.

    Each rotation is a phase times a real plane rotation chosen to zero one
    off-diagonal entry; sweeps repeat until the off-diagonal Frobenius norm
    drops below ``tol`` (scaled by the matrix norm when that exceeds 1).
    """
    a = _as_array(matrix).copy()
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    threshold = tol * scale
    skip = 1e-300

    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                absg = abs(g)
                if absg <= skip:
                    continue
                w = g.conjugate() / absg
                alpha = a[p, p].real
                beta = a[q, q].real
                tau = (beta - alpha) / (2.0 * absg)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + math.hypot(1.0, tau))
                cos = 1.0 / math.sqrt(1.0 + t * t)
                sin = t * cos
                j = np.eye(n, dtype=complex)
                j[p, p] = cos
                j[p, q] = sin
                j[q, p] = -w * sin
                j[q, q] = w * cos
                a = j.conj().T @ a @ j
        a = 0.5 * (a + a.conj().T)
    else:
        raise EigenSolverError(
            f"no convergence after {max_sweeps} sweeps "
            f"(off-diagonal norm {_off_diagonal_norm(a):.3e})"
        )
    vals = np.sort(np.real(np.diag(a)))[::-1]
    return vals


def von_neumann_entropy(rho, tol_trace: float = 1e-10) -> float:
    """Entropy -sum(l log2 l) in bits of a unit-trace PSD Hermitian matrix.

    Eigenvalues in [-1e-10, 0] are clipped to zero (quadrature round-off);
    anything more negative, or a trace off by more than ``tol_trace``,
    is rejected.
    """
    arr = _as_array(rho)
    trace = float(np.trace(arr).real)
    if abs(trace - 1.0) > tol_trace:
        raise ParameterError(f"trace {trace!r} deviates from 1 beyond {tol_trace:.1e}")
    vals = eigenvalues(arr)
    lowest = float(vals[-1])
    if lowest < -_EIG_CLIP:
        raise ParameterError(f"matrix is not PSD (eigenvalue {lowest:.3e})")
    vals = np.clip(vals, 0.0, None)
    s = 0.0
    for v in vals:
        if v > 0.0:
            s -= float(v) * math.log2(float(v))
    return max(s, 0.0)


@dataclass(frozen=True)
class DensityReport:
    """Diagnostic summary of how far a matrix is from a density matrix."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    passed: bool


def assert_density(
    matrix,
    tol_trace: float = 1e-10,
    tol_psd: float = 1e-10,
    tol_herm: float = 1e-12,
) -> DensityReport:
    """Report Hermiticity, trace and positivity defects without raising.

    Any square complex matrix of supported size is diagnosable, including
    non-Hermitian ones (the spectrum is taken from the Hermitian part).
    """
    arr = np.asarray(matrix, dtype=complex)
    herm_defect = float(np.max(np.abs(arr - arr.conj().T)))
    trace_defect = abs(float(np.trace(arr).real) - 1.0)
    symmetrized = 0.5 * (arr + arr.conj().T)
    min_eig = float(eigenvalues(HermitianMatrix(symmetrized, tol=math.inf))[-1])
    passed = (
        herm_defect <= tol_herm
        and trace_defect <= tol_trace
        and min_eig >= -tol_psd
    )
    return DensityReport(
        hermiticity_defect=herm_defect,
        trace_defect=trace_defect,
        min_eigenvalue=min_eig,
        passed=passed,
    )
