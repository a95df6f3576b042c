"""Eigensolver, entropy and density-matrix diagnostics."""

import math

import numpy as np
import pytest

from polarloss.density import (
    DensityReport,
    EigenSolverError,
    HermitianMatrix,
    assert_density,
    eigenvalues,
    von_neumann_entropy,
)
from polarloss.noise_model import ParameterError


def random_jacobi_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Product of random complex plane rotations; exactly unitary up to round-off."""
    u = np.eye(n, dtype=complex)
    for _ in range(3 * n * n):
        p, q = rng.choice(n, size=2, replace=False)
        angle = rng.uniform(0.0, 2.0 * math.pi)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        j = np.eye(n, dtype=complex)
        j[p, p] = math.cos(angle)
        j[p, q] = math.sin(angle) * phase
        j[q, p] = -math.sin(angle) * phase.conjugate()
        j[q, q] = math.cos(angle)
        u = u @ j
    return u


class TestHermitianMatrix:
    def test_accepts_hermitian(self):
        m = HermitianMatrix([[1.0, 1j], [-1j, 2.0]])
        assert m.n == 2

    def test_rejects_non_hermitian(self):
        with pytest.raises(ParameterError):
            HermitianMatrix([[1.0, 1e-6], [0.0, 2.0]])

    def test_rejects_non_square(self):
        with pytest.raises(ParameterError):
            HermitianMatrix(np.zeros((2, 3)))

    @pytest.mark.parametrize("n", [1, 10])
    def test_rejects_unsupported_dimension(self, n):
        with pytest.raises(ParameterError):
            HermitianMatrix(np.eye(n))

    def test_data_is_read_only(self):
        m = HermitianMatrix(np.eye(3))
        with pytest.raises(ValueError):
            m.data[0, 0] = 2.0


class TestEigenvalues:
    def test_identity(self):
        np.testing.assert_allclose(eigenvalues(np.eye(3)), [1.0, 1.0, 1.0], atol=1e-15)

    def test_recovers_spectrum_under_random_conjugation(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            u = random_jacobi_unitary(2, rng)
            m = u @ np.diag([0.7, 0.3]).astype(complex) @ u.conj().T
            m = 0.5 * (m + m.conj().T)
            np.testing.assert_allclose(eigenvalues(m), [0.7, 0.3], atol=1e-12)

    def test_descending_order(self):
        vals = eigenvalues(np.diag([0.1, 0.9, 0.5]).astype(complex))
        assert list(vals) == sorted(vals, reverse=True)

    def test_sum_equals_trace(self):
        rng = np.random.default_rng(22)
        for _ in range(50):
            n = int(rng.integers(2, 10))
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            h = 0.5 * (z + z.conj().T)
            assert abs(float(np.sum(eigenvalues(h))) - float(np.trace(h).real)) <= 1e-12 * max(
                1.0, float(np.linalg.norm(h))
            )

    def test_sweep_budget_exhaustion_raises(self):
        m = np.array([[1.0, 0.5], [0.5, 2.0]], dtype=complex)
        with pytest.raises(EigenSolverError):
            eigenvalues(m, max_sweeps=0)

    def test_matches_reference_solver(self):
        # numpy's eigvalsh is the independent oracle for the hand-rolled Jacobi.
        rng = np.random.default_rng(23)
        for _ in range(100):
            n = int(rng.integers(2, 10))
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            h = 0.5 * (z + z.conj().T)
            mine = eigenvalues(h)
            ref = np.sort(np.linalg.eigvalsh(h))[::-1]
            scale = max(1.0, float(np.linalg.norm(h)))
            assert float(np.max(np.abs(mine - ref))) <= 1e-12 * scale


class TestVonNeumannEntropy:
    def test_pure_state_is_zero(self):
        v = np.array([1.0, 2.0, -1.0 + 0.5j]) / math.sqrt(6.25)
        rho = np.outer(v, v.conj())
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_qubit_is_one_bit(self):
        assert von_neumann_entropy(np.eye(2) / 2.0) == pytest.approx(1.0, abs=1e-14)

    def test_shannon_spectrum(self):
        rho = np.diag([0.5, 0.25, 0.25]).astype(complex)
        assert von_neumann_entropy(rho) == pytest.approx(1.5, abs=1e-14)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(31)
        rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        base = von_neumann_entropy(rho)
        for _ in range(10):
            u = random_jacobi_unitary(4, rng)
            rotated = u @ rho @ u.conj().T
            rotated = 0.5 * (rotated + rotated.conj().T)
            assert von_neumann_entropy(rotated) == pytest.approx(base, abs=1e-10)

    def test_concavity_spot_check(self):
        rng = np.random.default_rng(32)
        for _ in range(20):
            u1 = random_jacobi_unitary(3, rng)
            u2 = random_jacobi_unitary(3, rng)
            p1 = rng.dirichlet(np.ones(3))
            p2 = rng.dirichlet(np.ones(3))
            r1 = u1 @ np.diag(p1).astype(complex) @ u1.conj().T
            r2 = u2 @ np.diag(p2).astype(complex) @ u2.conj().T
            r1 = 0.5 * (r1 + r1.conj().T)
            r2 = 0.5 * (r2 + r2.conj().T)
            mix = 0.5 * (r1 + r2)
            s_mix = von_neumann_entropy(mix)
            assert s_mix >= 0.5 * von_neumann_entropy(r1) + 0.5 * von_neumann_entropy(r2) - 1e-10

    def test_range_bound(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            p = rng.dirichlet(np.ones(5))
            s = von_neumann_entropy(np.diag(p).astype(complex))
            assert 0.0 <= s <= math.log2(5) + 1e-12

    def test_rejects_bad_trace(self):
        with pytest.raises(ParameterError):
            von_neumann_entropy(np.diag([0.5, 0.4]).astype(complex))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ParameterError):
            von_neumann_entropy(np.diag([1.000001, -1e-6]).astype(complex))

    def test_clips_round_off_negatives(self):
        rho = np.diag([1.0 + 5e-11, -5e-11]).astype(complex)
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-8)


class TestAssertDensity:
    def test_valid_density_passes(self):
        report = assert_density(np.diag([0.6, 0.4]).astype(complex))
        assert isinstance(report, DensityReport)
        assert report.passed
        assert report.trace_defect <= 1e-15

    def test_wrong_trace_reported(self):
        report = assert_density(np.diag([0.5, 0.4]).astype(complex))
        assert not report.passed
        assert report.trace_defect == pytest.approx(0.1, abs=1e-12)

    def test_negative_eigenvalue_reported(self):
        report = assert_density(np.diag([1.0 + 1e-6, -1e-6]).astype(complex))
        assert not report.passed
        assert report.min_eigenvalue == pytest.approx(-1e-6, abs=1e-12)

    def test_hermiticity_defect_reported(self):
        m = np.diag([0.5, 0.5]).astype(complex)
        m[0, 1] = 1e-9
        report = assert_density(m)
        assert not report.passed
        assert report.hermiticity_defect == pytest.approx(1e-9, abs=1e-15)
