"""Gibbs states, partition functions and the Hamiltonian of mean force.

The mean-force Hamiltonian of a system-bath model is

    H*_S(beta) = -(1/beta) * ln( Tr_B[exp(-beta*H_total)] / Z_B ),

and the mean-force Gibbs state zeta_S = exp(-beta*H*_S)/Z*_S equals the
bath-traced global Gibbs state. Everything here is evaluated spectrally from
one eigendecomposition of H_total per model: the bath trace of
exp(-beta*H_total) is a fixed contraction of the eigenvector data, so each new
beta costs O(dim * d_sys^2).

All exponentials are computed relative to the smallest eigenvalue so large
beta never under- or overflows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, PositivityError
from .linalg import herm_eig, partial_trace, require_hermitian
from .models import SystemBathModel

DEFAULT_FD_STEP = 1e-4
FD_STEP_FLOOR = 1e-5
ROUTE_TOL = 1e-10
HMF_EIG_FLOOR = 1e-300


def fd_delta(beta: float, fd_step: float = DEFAULT_FD_STEP) -> float:
    """Central-difference step for beta-derivatives: max(1e-5, fd_step*beta)."""
    return max(FD_STEP_FLOOR, fd_step * beta)


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not beta > 0.0:
        raise ValueError(f"beta must be > 0, got {beta!r}")
    return beta


def log_partition_from_eigenvalues(evals: np.ndarray, beta: float) -> float:
    """ln Tr exp(-beta*H) from the spectrum, shifted for stability."""
    beta = _check_beta(beta)
    lam0 = float(evals[0])
    return -beta * lam0 + float(np.log(np.sum(np.exp(-beta * (evals - lam0)))))


def partition_fn(h, beta: float) -> float:
    """Tr exp(-beta*H) for a Hermitian operator."""
    evals = herm_eig(h).eigenvalues
    return float(np.exp(log_partition_from_eigenvalues(evals, beta)))


def gibbs_state(h, beta: float) -> np.ndarray:
    """exp(-beta*H)/Z, computed through the spectrum of H."""
    beta = _check_beta(beta)
    evals, evecs = herm_eig(h)
    w = np.exp(-beta * (evals - evals[0]))
    w /= w.sum()
    return (evecs * w) @ evecs.conj().T


@dataclass
class _BetaPoint:
    """Everything the thermodynamic layer reuses at one inverse temperature."""

    beta: float
    log_z_sb: float
    log_z_b: float
    zeta: np.ndarray
    hmf: np.ndarray

    @property
    def log_z_star(self) -> float:
        return self.log_z_sb - self.log_z_b


class MeanForceProblem:
    """Spectral workspace for one model: diagonalize H_total once, then serve
    partition functions, mean-force Hamiltonians and reduced Gibbs states at
    any beta out of a per-beta cache.

    ``richardson`` upgrades every downstream beta-derivative from a plain
    central difference to a two-step Richardson extrapolation (off by default).
    """

    def __init__(self, model: SystemBathModel, fd_step: float = DEFAULT_FD_STEP,
                 richardson: bool = False):
        if not 0.0 < fd_step <= 1e-2:
            raise ValueError(f"fd_step must be in (0, 1e-2], got {fd_step!r}")
        self.model = model
        self.fd_step = fd_step
        self.richardson = richardson
        self._total = herm_eig(model.h_total)
        # Bath-trace contraction of the eigenvector dyads:
        # weights[n, i, j] = sum_b V[(i,b),n] * conj(V[(j,b),n]), so that
        # Tr_B exp(-beta*H_total) = sum_n exp(-beta*lam_n) * weights[n].
        v = self._total.eigenvectors.reshape(model.d_sys, model.d_bath, model.dim)
        self._trace_weights = np.einsum("ibn,jbn->nij", v, v.conj())
        self._bath_evals = herm_eig(model.h_bath).eigenvalues
        self._points: dict[float, _BetaPoint] = {}

    @property
    def total_eigenvalues(self) -> np.ndarray:
        return self._total.eigenvalues

    @property
    def total_eigenvectors(self) -> np.ndarray:
        return self._total.eigenvectors

    def delta(self, beta: float) -> float:
        return fd_delta(beta, self.fd_step)

    def log_z_sb(self, beta: float) -> float:
        return self.point(beta).log_z_sb

    def log_z_b(self, beta: float) -> float:
        return log_partition_from_eigenvalues(self._bath_evals, beta)

    def point(self, beta: float) -> _BetaPoint:
        beta = _check_beta(beta)
        cached = self._points.get(beta)
        if cached is not None:
            return cached

        lam = self._total.eigenvalues
        lam0 = float(lam[0])
        w = np.exp(-beta * (lam - lam0))
        w_sum = float(w.sum())
        log_z_sb = -beta * lam0 + float(np.log(w_sum))
        log_z_b = self.log_z_b(beta)

        numerator = np.tensordot(w, self._trace_weights, axes=(0, 0))
        numerator = 0.5 * (numerator + numerator.conj().T)
        zeta = numerator / w_sum

        evals, evecs = np.linalg.eigh(numerator)
        if evals[0] < HMF_EIG_FLOOR:
            raise PositivityError(
                f"bath-traced Boltzmann operator has eigenvalue {evals[0]:.3e} at "
                f"beta={beta:g}; increase n_fock or reduce beta"
            )
        # ln(Tr_B e^{-beta H}) = ln(numerator) - beta*lam0 * Id (the shift is a
        # scalar multiple), hence:
        log_num = (evecs * np.log(evals)) @ evecs.conj().T
        hmf_op = -(log_num - (beta * lam0 + log_z_b) * np.eye(len(evals))) / beta
        hmf_op = 0.5 * (hmf_op + hmf_op.conj().T)

        pt = _BetaPoint(beta=beta, log_z_sb=log_z_sb, log_z_b=log_z_b, zeta=zeta, hmf=hmf_op)
        self._points[beta] = pt
        return pt

    def hmf(self, beta: float) -> np.ndarray:
        return self.point(beta).hmf

    def zeta(self, beta: float) -> np.ndarray:
        return self.point(beta).zeta

    def log_z_star(self, beta: float) -> float:
        return self.point(beta).log_z_star

    def mean_force_partition(self, beta: float, check: bool = True) -> float:
        pt = self.point(beta)
        z_ratio = float(np.exp(pt.log_z_star))
        if check:
            z_trace = partition_fn(pt.hmf, beta)
            if abs(z_ratio - z_trace) > 1e-10 * max(abs(z_ratio), abs(z_trace)):
                raise ConsistencyError(
                    f"Z_SB/Z_B = {z_ratio!r} vs Tr exp(-beta*H*) = {z_trace!r} "
                    f"disagree beyond 1e-10 relative at beta={beta:g}"
                )
        return z_ratio

    def mean_force_state(self, beta: float, check: bool = True) -> np.ndarray:
        pt = self.point(beta)
        if check:
            from_hmf = gibbs_state(pt.hmf, beta)
            defect = float(np.max(np.abs(pt.zeta - from_hmf)))
            if defect > ROUTE_TOL:
                raise ConsistencyError(
                    f"mean-force state routes disagree by {defect:.3e} (> {ROUTE_TOL:g}) "
                    f"at beta={beta:g}: likely insufficient n_fock or extreme beta"
                )
        return pt.zeta


# Small process-wide cache so the free-function API does not rediagonalize
# H_total on every call for the same model object.
_PROBLEM_CACHE: dict[int, MeanForceProblem] = {}
_PROBLEM_CACHE_LIMIT = 8


def ensure_problem(model_or_problem, fd_step: float | None = None) -> MeanForceProblem:
    """Return a MeanForceProblem for a model, reusing a small process cache."""
    if isinstance(model_or_problem, MeanForceProblem):
        prob = model_or_problem
        if fd_step is not None and fd_step != prob.fd_step:
            return MeanForceProblem(prob.model, fd_step, prob.richardson)
        return prob
    model = model_or_problem
    step = DEFAULT_FD_STEP if fd_step is None else fd_step
    key = id(model)
    prob = _PROBLEM_CACHE.get(key)
    if prob is None or prob.model is not model or prob.fd_step != step:
        prob = MeanForceProblem(model, step)
        _PROBLEM_CACHE[key] = prob
        while len(_PROBLEM_CACHE) > _PROBLEM_CACHE_LIMIT:
            _PROBLEM_CACHE.pop(next(iter(_PROBLEM_CACHE)))
    return prob


def hmf(model_or_problem, beta: float, fd_step: float | None = None) -> np.ndarray:
    """Hamiltonian of mean force H*_S(beta) on the system space."""
    return ensure_problem(model_or_problem, fd_step).hmf(beta)


def mean_force_partition(model_or_problem, beta: float) -> float:
    """Z*_S = Z_SB/Z_B, cross-checked against Tr exp(-beta*H*_S)."""
    return ensure_problem(model_or_problem).mean_force_partition(beta)


def mean_force_state(model_or_problem, beta: float) -> np.ndarray:
    """zeta_S(beta): bath trace of the global Gibbs state, cross-checked
    against the Gibbs state of the mean-force Hamiltonian."""
    return ensure_problem(model_or_problem).mean_force_state(beta)


def global_gibbs_state(model: SystemBathModel, beta: float) -> np.ndarray:
    """Gibbs state of H_total on the full composite space."""
    return gibbs_state(model.h_total, beta)


def reduced_global_gibbs(model: SystemBathModel, beta: float) -> np.ndarray:
    """Independent route to zeta_S: partial trace of the global Gibbs state."""
    rho = global_gibbs_state(model, beta)
    return partial_trace(rho, (model.d_sys, model.d_bath), keep="S")
