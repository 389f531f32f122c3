"""Concrete system-bath models on a truncated bosonic Hilbert space.

Two models are provided (hbar = k_B = c = 1 throughout):

* ``two-qubit``: two identical qubits dipole-coupled to a single bosonic mode
  (the single-mode reduction of the electromagnetic-field bath), with a
  position-dependent phase exp(i*omega*xi) on the second qubit.
* ``jc``: a single qubit coupled to a single-mode resonator with both rotating
  and counter-rotating terms kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .linalg import require_hermitian, tensor

TWO_QUBIT = "two-qubit"
JC = "jc"

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# Spin-1/2 energy operator: eigenvalues +-1/2 so the level splitting is omega0.
SPIN_Z = 0.5 * SIGMA_Z
WEAK_COUPLING_RATIO = 1e-3

DEFAULT_N_FOCK = {TWO_QUBIT: 20, JC: 30}
# The +1/2 zero-point term is part of the two-qubit bath Hamiltonian; the JC
# resonator is plain omega_c * n. It cancels in every reported quantity and
# only shows up in raw partition functions.
DEFAULT_ZERO_POINT = {TWO_QUBIT: True, JC: False}


@dataclass(frozen=True)
class ModelParams:
    kind: str = TWO_QUBIT
    omega0: float = 2.0  # qubit transition frequency
    omega_c: float = 1.0  # resonator frequency (jc)
    omega: float = 1.0  # bath-mode frequency (two-qubit)
    xi: float = 0.05  # inter-qubit separation (two-qubit)
    coupling: float = 0.0  # lambda
    n_fock: int | None = None  # bosonic truncation level (defaults per kind)
    include_zero_point: bool | None = None  # defaults per kind

    def __post_init__(self):
        if self.kind not in (TWO_QUBIT, JC):
            raise ValueError(f"unknown model kind {self.kind!r}")
        for name in ("omega0", "omega_c", "omega"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if self.coupling < 0:
            raise ValueError(f"coupling must be >= 0, got {self.coupling!r}")
        if self.xi < 0:
            raise ValueError(f"xi must be >= 0, got {self.xi!r}")
        if self.n_fock is None:
            object.__setattr__(self, "n_fock", DEFAULT_N_FOCK[self.kind])
        if self.n_fock < 1:
            raise ValueError(f"n_fock must be >= 1, got {self.n_fock!r}")
        if self.include_zero_point is None:
            object.__setattr__(self, "include_zero_point", DEFAULT_ZERO_POINT[self.kind])

    @property
    def bath_frequency(self) -> float:
        return self.omega if self.kind == TWO_QUBIT else self.omega_c


@dataclass(frozen=True, eq=False)
class SystemBathModel:
    """Hamiltonian data for one system-bath composite.

    h_sys/h_bath live on their native spaces; h_sys_full, h_bath_full,
    v_coupling and h_total on the d_sys*d_bath composite space (system-first
    tensor ordering).
    """

    params: ModelParams
    d_sys: int
    d_bath: int
    h_sys: np.ndarray
    h_bath: np.ndarray
    v_coupling: np.ndarray
    h_total: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.d_sys * self.d_bath

    def with_n_fock(self, n_fock: int) -> "SystemBathModel":
        return build_model(replace(self.params, n_fock=n_fock))


def fock_mode(n_fock: int, omega: float, include_zero_point: bool = True):
    """Truncated bosonic mode: annihilator, number operator and bath Hamiltonian.

    a|n> = sqrt(n)|n-1> on dimension n_fock+1; H_B = omega*(n + 1/2) when the
    zero-point term is included.
    """
    if n_fock < 1:
        raise ValueError(f"n_fock must be >= 1, got {n_fock!r}")
    dim = n_fock + 1
    a = np.zeros((dim, dim), dtype=complex)
    ns = np.arange(1, dim)
    a[ns - 1, ns] = np.sqrt(ns)
    number = a.conj().T @ a
    h_bath = omega * (number + (0.5 if include_zero_point else 0.0) * np.eye(dim))
    return a, number, h_bath


def _assemble(params: ModelParams, h_sys, h_bath, v_coupling) -> SystemBathModel:
    d_sys = h_sys.shape[0]
    d_bath = h_bath.shape[0]
    h_total = tensor(h_sys, np.eye(d_bath)) + tensor(np.eye(d_sys), h_bath) + v_coupling
    require_hermitian(h_total)
    return SystemBathModel(
        params=params,
        d_sys=d_sys,
        d_bath=d_bath,
        h_sys=h_sys,
        h_bath=h_bath,
        v_coupling=v_coupling,
        h_total=h_total,
    )


def build_two_qubit_model(params: ModelParams) -> SystemBathModel:
    """Two qubits coupled to one bosonic mode through i(a*e^{i*omega*xi} - h.c.)."""
    if params.kind != TWO_QUBIT:
        raise ValueError(f"expected kind {TWO_QUBIT!r}, got {params.kind!r}")
    eye2 = np.eye(2)
    s1z = tensor(SPIN_Z, eye2)
    s2z = tensor(eye2, SPIN_Z)
    x1 = tensor(SIGMA_X, eye2)  # S1+ + S1-
    x2 = tensor(eye2, SIGMA_X)
    h_sys = params.omega0 * (s1z + s2z)

    a, _, h_bath = fock_mode(params.n_fock, params.omega, params.include_zero_point)
    adag = a.conj().T
    phase = np.exp(1j * params.omega * params.xi)
    b1 = a - adag
    b2 = a * phase - adag * np.conj(phase)
    amp = params.coupling * np.sqrt(params.omega)
    v = -1j * amp * (tensor(x1, b1) + tensor(x2, b2))
    return _assemble(params, h_sys, h_bath, v)


def build_jc_model(params: ModelParams) -> SystemBathModel:
    """Single qubit and single-mode resonator, counter-rotating terms kept."""
    if params.kind != JC:
        raise ValueError(f"expected kind {JC!r}, got {params.kind!r}")
    h_sys = 0.5 * params.omega0 * SIGMA_Z
    a, _, h_bath = fock_mode(params.n_fock, params.omega_c, params.include_zero_point)
    v = params.coupling * tensor(SIGMA_X, a + a.conj().T)
    return _assemble(params, h_sys, h_bath, v)


def build_model(params: ModelParams) -> SystemBathModel:
    if params.kind == TWO_QUBIT:
        return build_two_qubit_model(params)
    return build_jc_model(params)


def coupling_preset(regime: str, kind: str, omega0: float = 2.0, omega: float = 1.0) -> float:
    """Coupling amplitude for the named regime.

    two-qubit: lambda*sqrt(omega) = omega0 (strong), omega0/2 (moderate),
    1e-3*omega0 (weak). jc: lambda = omega0, omega0/2, 1e-3*omega0.
    """
    if kind == TWO_QUBIT:
        strong = omega0 / np.sqrt(omega)
    elif kind == JC:
        strong = omega0
    else:
        raise ValueError(f"unknown model kind {kind!r}")
    scale = {"strong": 1.0, "moderate": 0.5, "weak": WEAK_COUPLING_RATIO}
    if regime not in scale:
        raise ValueError(f"unknown coupling regime {regime!r}")
    return float(strong * scale[regime])
