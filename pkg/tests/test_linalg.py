import numpy as np
import pytest

from conftest import random_density, random_hermitian
from meanforce import (
    DimensionError,
    HermiticityError,
    SpectrumDomainError,
    dephase,
    herm_eig,
    mat_exp,
    mat_func,
    mat_log,
    mat_power,
    partial_trace,
    tensor,
)

SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)


class TestHermEig:
    def test_identity(self):
        dec = herm_eig(np.eye(2))
        assert np.allclose(dec.eigenvalues, [1.0, 1.0])

    def test_pauli_z_spectrum(self):
        dec = herm_eig(SIGMA_Z)
        assert np.allclose(dec.eigenvalues, [-1.0, 1.0])
        # ascending order puts |1> (eigenvalue -1) first, then |0>
        assert abs(dec.eigenvectors[1, 0]) == pytest.approx(1.0)
        assert abs(dec.eigenvectors[0, 1]) == pytest.approx(1.0)

    def test_reconstruction_oracle(self, rng):
        m = random_hermitian(rng, 8)
        dec = herm_eig(m)
        scale = np.max(np.abs(m))
        assert np.max(np.abs(dec.reconstruct() - m)) <= 1e-11 * scale

    def test_orthonormal_eigenvectors(self, rng):
        dec = herm_eig(random_hermitian(rng, 8))
        v = dec.eigenvectors
        assert np.max(np.abs(v.conj().T @ v - np.eye(8))) <= 1e-11

    def test_rejects_non_hermitian(self):
        bad = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(HermiticityError) as err:
            herm_eig(bad)
        assert err.value.violation == pytest.approx(1.0)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            herm_eig(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_deterministic(self, rng):
        m = random_hermitian(rng, 6)
        first = herm_eig(m.copy())
        second = herm_eig(m.copy())
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.eigenvectors, second.eigenvectors)


class TestMatFunc:
    def test_exp_of_zero(self):
        assert np.allclose(mat_exp(np.zeros((3, 3))), np.eye(3))

    def test_log_inverts_exp(self):
        assert np.max(np.abs(mat_log(mat_exp(SIGMA_Z)) - SIGMA_Z)) <= 1e-12

    def test_sqrt_oracle(self, rng):
        rho = random_density(rng, 4)
        root = mat_power(rho, 0.5)
        assert np.max(np.abs(root @ root - rho)) <= 1e-11

    def test_log_domain_error_names_eigenvalue(self):
        singular = np.diag([1.0, 0.0]).astype(complex)
        with pytest.raises(SpectrumDomainError) as err:
            mat_func(singular, np.log)
        assert "0.0" in str(err.value)

    def test_composition(self, rng):
        m = random_hermitian(rng, 5)
        via_two = mat_func(mat_func(m, np.exp), np.log)
        assert np.max(np.abs(via_two - m)) <= 1e-10
        rho = random_density(rng, 5)
        squared_then_root = mat_power(mat_func(rho, np.square), 0.5)
        assert np.max(np.abs(squared_then_root - rho)) <= 1e-10

    def test_hermitian_output_for_real_f(self, rng):
        out = mat_func(random_hermitian(rng, 5), np.tanh)
        assert np.max(np.abs(out - out.conj().T)) <= 1e-13


class TestTensor:
    def test_identity_case(self):
        assert np.array_equal(tensor(np.eye(2), np.eye(3)), np.eye(6))

    def test_mixed_product_oracle(self, rng):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        lhs = tensor(a, b) @ tensor(c, d)
        rhs = tensor(a @ c, b @ d)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_spin_z_block_structure(self):
        spin_z = np.diag([0.5, -0.5])
        out = tensor(spin_z, np.eye(3))
        assert np.allclose(np.diag(out), [0.5] * 3 + [-0.5] * 3)


class TestPartialTrace:
    def test_product_state(self, rng):
        rho = random_density(rng, 3)
        sigma = random_hermitian(rng, 4)
        traced = partial_trace(tensor(rho, sigma), (3, 4), keep="S")
        assert np.max(np.abs(traced - rho * np.trace(sigma))) <= 1e-12

    def test_bell_state(self):
        psi = np.zeros(4, dtype=complex)
        psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
        rho = np.outer(psi, psi.conj())
        assert np.max(np.abs(partial_trace(rho, (2, 2), keep="S") - np.eye(2) / 2)) <= 1e-14

    def test_index_summation_oracle(self, rng):
        m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
        expected_s = np.zeros((4, 4), dtype=complex)
        expected_b = np.zeros((3, 3), dtype=complex)
        for i in range(4):
            for j in range(4):
                for a in range(3):
                    expected_s[i, j] += m[i * 3 + a, j * 3 + a]
        for a in range(3):
            for b in range(3):
                for i in range(4):
                    expected_b[a, b] += m[i * 3 + a, i * 3 + b]
        assert np.max(np.abs(partial_trace(m, (4, 3), keep="S") - expected_s)) <= 1e-12
        assert np.max(np.abs(partial_trace(m, (4, 3), keep="B") - expected_b)) <= 1e-12

    def test_trace_preserved(self, rng):
        m = random_hermitian(rng, 12)
        assert np.trace(partial_trace(m, (4, 3))) == pytest.approx(np.trace(m).real, abs=1e-12)

    def test_linearity(self, rng):
        a = random_hermitian(rng, 6)
        b = random_hermitian(rng, 6)
        lhs = partial_trace(2.5 * a + b, (2, 3))
        rhs = 2.5 * partial_trace(a, (2, 3)) + partial_trace(b, (2, 3))
        assert np.max(np.abs(lhs - rhs)) <= 1e-13

    def test_tensor_duality(self, rng):
        a = random_hermitian(rng, 2)
        b = random_hermitian(rng, 5)
        out = partial_trace(tensor(a, b), (2, 5), keep="S")
        assert np.max(np.abs(out - a * np.trace(b))) <= 1e-12

    def test_dimension_mismatch(self, rng):
        with pytest.raises(DimensionError):
            partial_trace(np.eye(10), (4, 3))


class TestDephase:
    def test_fixed_point(self):
        rho = np.diag([0.25, 0.75]).astype(complex)
        assert np.max(np.abs(dephase(rho, SIGMA_Z) - rho)) <= 1e-14

    def test_plus_state_fully_decoheres(self):
        plus = 0.5 * np.ones((2, 2), dtype=complex)
        assert np.max(np.abs(dephase(plus, SIGMA_Z) - np.eye(2) / 2)) <= 1e-14

    def test_population_conservation_oracle(self, rng):
        rho = random_density(rng, 5)
        h = random_hermitian(rng, 5)
        out = dephase(rho, h)
        assert np.trace(out) == pytest.approx(1.0, abs=1e-12)
        evecs = herm_eig(h).eigenvectors
        pops_in = np.diag(evecs.conj().T @ rho @ evecs).real
        pops_out = np.diag(evecs.conj().T @ out @ evecs).real
        assert np.max(np.abs(pops_in - pops_out)) <= 1e-12

    def test_idempotent(self, rng):
        rho = random_density(rng, 4)
        h = random_hermitian(rng, 4)
        once = dephase(rho, h)
        assert np.max(np.abs(dephase(once, h) - once)) <= 1e-12

    def test_degenerate_block_untouched(self, rng):
        h = np.diag([0.0, 0.0, 1.0]).astype(complex)
        rho = random_density(rng, 3)
        out = dephase(rho, h)
        assert out[0, 1] == pytest.approx(rho[0, 1], abs=1e-14)
        assert abs(out[0, 2]) <= 1e-14
        assert abs(out[1, 2]) <= 1e-14

    def test_full_dephasing_clears_degenerate_block(self, rng):
        h = np.diag([0.0, 0.0, 1.0]).astype(complex)
        rho = random_density(rng, 3)
        out = dephase(rho, h, block=False)
        off_diag = out - np.diag(np.diag(out))
        assert np.max(np.abs(off_diag)) <= 1e-14
