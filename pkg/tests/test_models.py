import numpy as np
import pytest

from meanforce import (
    JC,
    TWO_QUBIT,
    ModelParams,
    build_jc_model,
    build_model,
    build_two_qubit_model,
    coupling_preset,
    fock_mode,
    tensor,
)

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


class TestFockMode:
    def test_ladder_action(self):
        a, _, _ = fock_mode(5, 1.0)
        ket1 = np.zeros(6)
        ket1[1] = 1.0
        out = a @ ket1
        assert out[0] == pytest.approx(1.0)
        assert np.linalg.norm(out[1:]) == pytest.approx(0.0, abs=1e-15)

    def test_number_spectrum(self):
        _, number, _ = fock_mode(7, 1.0)
        assert np.allclose(number, np.diag(np.arange(8.0)))

    def test_commutator_oracle(self):
        n_fock = 6
        a, _, _ = fock_mode(n_fock, 1.0)
        comm = a @ a.conj().T - a.conj().T @ a
        expected = np.eye(n_fock + 1)
        expected[n_fock, n_fock] = -n_fock
        assert np.max(np.abs(comm - expected)) <= 1e-12

    def test_bath_hamiltonian_zero_point(self):
        _, _, h_with = fock_mode(3, 2.0, include_zero_point=True)
        _, _, h_without = fock_mode(3, 2.0, include_zero_point=False)
        assert np.allclose(np.diag(h_with), 2.0 * (np.arange(4) + 0.5))
        assert np.allclose(np.diag(h_without), 2.0 * np.arange(4))

    def test_rejects_bad_truncation(self):
        with pytest.raises(ValueError):
            fock_mode(0, 1.0)


class TestTwoQubitModel:
    def test_decoupled_limit(self):
        model = build_two_qubit_model(ModelParams(kind=TWO_QUBIT, coupling=0.0, n_fock=5))
        bare = tensor(model.h_sys, np.eye(model.d_bath)) + tensor(np.eye(4), model.h_bath)
        assert np.array_equal(model.h_total, bare)

    def test_collective_point_swap_symmetry(self):
        model = build_two_qubit_model(
            ModelParams(kind=TWO_QUBIT, coupling=1.3, xi=0.0, n_fock=6)
        )
        swap_full = tensor(SWAP, np.eye(model.d_bath))
        comm = model.v_coupling @ swap_full - swap_full @ model.v_coupling
        assert np.max(np.abs(comm)) <= 1e-12

    def test_paper_parameter_point(self):
        lam = coupling_preset("strong", TWO_QUBIT, omega0=2.0, omega=1.0)
        model = build_two_qubit_model(
            ModelParams(kind=TWO_QUBIT, omega0=2.0, xi=0.05, omega=1.0, coupling=lam, n_fock=20)
        )
        assert model.dim == 84
        defect = np.max(np.abs(model.h_total - model.h_total.conj().T))
        assert defect <= 1e-12 * np.max(np.abs(model.h_total))

    def test_decomposition_invariant(self):
        model = build_two_qubit_model(ModelParams(kind=TWO_QUBIT, coupling=0.7, n_fock=8))
        rebuilt = (
            tensor(model.h_sys, np.eye(model.d_bath))
            + tensor(np.eye(model.d_sys), model.h_bath)
            + model.v_coupling
        )
        assert np.max(np.abs(model.h_total - rebuilt)) <= 1e-12

    def test_level_splitting(self):
        model = build_two_qubit_model(ModelParams(kind=TWO_QUBIT, omega0=2.0, coupling=0.0, n_fock=2))
        assert np.allclose(np.sort(np.diag(model.h_sys).real), [-2.0, 0.0, 0.0, 2.0])


class TestJCModel:
    def test_decoupled_spectrum_grid(self):
        params = ModelParams(kind=JC, omega0=2.0, omega_c=1.0, coupling=0.0, n_fock=6)
        model = build_jc_model(params)
        evals = np.linalg.eigvalsh(model.h_total)
        expected = np.sort(
            np.concatenate([n * 1.0 + np.array([-1.0, 1.0]) for n in range(7)])
        )
        assert np.max(np.abs(evals - expected)) <= 1e-12

    def test_parity_commutator_oracle(self):
        lam = coupling_preset("strong", JC)
        model = build_jc_model(ModelParams(kind=JC, coupling=lam, n_fock=12))
        parity_bath = np.diag((-1.0) ** np.arange(13)).astype(complex)
        parity = tensor(np.diag([1.0, -1.0]), parity_bath)
        comm = model.h_total @ parity - parity @ model.h_total
        assert np.max(np.abs(comm)) <= 1e-12

    def test_paper_parameter_point(self):
        model = build_jc_model(ModelParams(kind=JC, omega0=2.0, omega_c=1.0, coupling=0.1, n_fock=10))
        assert model.params.omega0 == 2.0
        assert model.params.omega_c == 1.0
        assert model.d_sys == 2

    def test_zero_point_excluded_by_default(self):
        model = build_jc_model(ModelParams(kind=JC, coupling=0.0, n_fock=4))
        assert model.h_bath[0, 0] == 0.0


class TestCouplingPreset:
    def test_strong_two_qubit_paper_value(self):
        assert coupling_preset("strong", TWO_QUBIT, omega0=2.0, omega=1.0) == pytest.approx(2.0)

    def test_weak_jc_paper_value(self):
        assert coupling_preset("weak", JC, omega0=2.0) == pytest.approx(0.002)

    def test_moderate_is_half_strong(self):
        strong = coupling_preset("strong", TWO_QUBIT, omega0=2.0, omega=1.7)
        moderate = coupling_preset("moderate", TWO_QUBIT, omega0=2.0, omega=1.7)
        assert moderate == pytest.approx(0.5 * strong)

    def test_scales_with_bath_frequency(self):
        lam = coupling_preset("strong", TWO_QUBIT, omega0=2.0, omega=4.0)
        assert lam * np.sqrt(4.0) == pytest.approx(2.0)

    def test_unknown_regime(self):
        with pytest.raises(ValueError):
            coupling_preset("medium", JC)


class TestTruncationConvergence:
    @pytest.mark.parametrize("kind", [TWO_QUBIT, JC])
    def test_partition_function_converged_at_largest_beta(self, kind):
        # doubling n_fock moves Z_SB by < 1e-8 relative at the largest beta in
        # use, once n_fock is at the converged working value
        from meanforce import MeanForceProblem

        lam = coupling_preset("strong", kind)
        log_z = [
            MeanForceProblem(
                build_model(ModelParams(kind=kind, coupling=lam, n_fock=n))
            ).log_z_sb(10.0)
            for n in (60, 120)
        ]
        assert abs(log_z[0] - log_z[1]) < 1e-8


class TestModelParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"omega0": -1.0},
            {"omega": 0.0},
            {"coupling": -0.1},
            {"xi": -0.5},
            {"n_fock": 0},
            {"kind": "spin-boson"},
        ],
    )
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(ValueError):
            ModelParams(**{"kind": TWO_QUBIT, **kwargs})

    def test_per_kind_defaults(self):
        assert ModelParams(kind=TWO_QUBIT).n_fock == 20
        assert ModelParams(kind=JC).n_fock == 30
        assert ModelParams(kind=TWO_QUBIT).include_zero_point is True
        assert ModelParams(kind=JC).include_zero_point is False

    def test_build_model_dispatch(self):
        assert build_model(ModelParams(kind=JC, n_fock=3)).d_sys == 2
        assert build_model(ModelParams(kind=TWO_QUBIT, n_fock=3)).d_sys == 4
