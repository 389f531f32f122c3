"""Dense complex operator algebra: spectral decompositions, matrix functions,
tensor products, partial traces and dephasing.

All operators are square complex numpy arrays. The subsystem ordering is fixed
globally to system (x) bath; every composite-space helper assumes it.
Eigenvalue clamping for fractional powers / logarithms of density matrices:
values in [-1e-12, 0] are treated as exact zeros (0*log 0 := 0), values below
-1e-10 are an error.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .errors import DimensionError, HermiticityError, PositivityError, SpectrumDomainError

HERMITICITY_RTOL = 1e-12
EIG_CLAMP_FLOOR = -1e-12
EIG_NEGATIVE_ERROR = -1e-10
LOG_FLOOR = 1e-300


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary, columns are eigenvectors

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_operator(m) -> np.ndarray:
    """Validate and return a square, finite, complex matrix."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError("square matrix", arr.shape)
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError("operator contains NaN or Inf entries")
    return arr


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def require_hermitian(m, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    arr = as_operator(m)
    scale = float(np.max(np.abs(arr)))
    defect = hermiticity_defect(arr)
    if defect > rtol * max(scale, 1e-300):
        raise HermiticityError(defect, scale)
    return arr


def herm_eig(m) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian operator (ascending eigenvalues).

    Raises HermiticityError for non-Hermitian input and re-raises LAPACK
    convergence failures with context.
    """
    arr = require_hermitian(m)
    try:
        evals, evecs = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise np.linalg.LinAlgError(
            f"Hermitian eigensolver did not converge on dim {arr.shape[0]}: {exc}"
        ) from exc
    return SpectralDecomposition(evals, evecs)


def mat_func(m, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar function to a Hermitian operator through its spectrum.

    ``f`` must be defined (finite) on every eigenvalue; otherwise a
    SpectrumDomainError names the offending eigenvalue.
    """
    evals, evecs = herm_eig(m)
    with np.errstate(all="ignore"):
        fvals = np.asarray(f(evals))
    bad = ~np.isfinite(fvals)
    if np.any(bad):
        idx = int(np.argmax(bad))
        raise SpectrumDomainError(float(evals[idx]), "f(eigenvalue) is not finite")
    return (evecs * fvals) @ evecs.conj().T


def mat_exp(m) -> np.ndarray:
    return mat_func(m, np.exp)


def mat_log(m, floor: float = LOG_FLOOR) -> np.ndarray:
    """Spectral logarithm of a positive-definite Hermitian operator.

    Eigenvalues below ``floor`` are a hard error: a silently clamped log
    corrupts every downstream derivative.
    """
    evals, evecs = herm_eig(m)
    if evals[0] < floor:
        raise SpectrumDomainError(
            float(evals[0]), f"log requires eigenvalues >= {floor:g}"
        )
    return (evecs * np.log(evals)) @ evecs.conj().T


def clamp_state_eigenvalues(evals: np.ndarray) -> np.ndarray:
    """Clamp small negative density-matrix eigenvalues to zero.

    Values in [EIG_CLAMP_FLOOR, 0] are finite-precision positivity drift;
    anything below EIG_NEGATIVE_ERROR is a genuine error.
    """
    if evals[0] < EIG_NEGATIVE_ERROR:
        raise PositivityError(
            f"state has eigenvalue {evals[0]:.3e} < {EIG_NEGATIVE_ERROR:g}"
        )
    return np.where(evals < 0.0, 0.0, evals)


def mat_power(rho, a: float) -> np.ndarray:
    """Fractional power rho^a of a positive-semidefinite Hermitian operator."""
    evals, evecs = herm_eig(rho)
    evals = clamp_state_eigenvalues(evals)
    return (evecs * evals**a) @ evecs.conj().T


def check_density_matrix(rho, trace_tol: float = 1e-10, eig_tol: float = 1e-10) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite."""
    arr = require_hermitian(rho)
    tr = complex(np.trace(arr))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr!r} differs from 1 by more than {trace_tol:g}")
    smallest = float(np.linalg.eigvalsh(arr)[0])
    if smallest < -eig_tol:
        raise PositivityError(f"density matrix has eigenvalue {smallest:.3e} < -{eig_tol:g}")
    return arr


def tensor(a, b) -> np.ndarray:
    """Kronecker product with the system-first ordering convention."""
    return np.kron(as_operator(a), as_operator(b))


def partial_trace(m, dims: tuple[int, int], keep: str = "S") -> np.ndarray:
    """Trace out one factor of a system (x) bath operator.

    ``dims`` is (d_S, d_B); ``keep`` selects the retained subsystem,
    "S" (system) or "B" (bath).
    """
    arr = as_operator(m)
    d_s, d_b = dims
    if arr.shape[0] != d_s * d_b:
        raise DimensionError(d_s * d_b, arr.shape[0])
    blocks = arr.reshape(d_s, d_b, d_s, d_b)
    if keep in ("S", "s", "system"):
        return np.einsum("ibjb->ij", blocks)
    if keep in ("B", "b", "bath"):
        return np.einsum("aiaj->ij", blocks)
    raise ValueError(f"keep must be 'S' or 'B', got {keep!r}")


def degenerate_blocks(evals: np.ndarray, tol: float | None = None) -> list[slice]:
    """Group ascending eigenvalues into degenerate clusters (adjacent-gap rule)."""
    if tol is None:
        tol = 1e-10 * max(1.0, float(np.max(np.abs(evals))) if evals.size else 1.0)
    slices = []
    start = 0
    for i in range(1, evals.shape[0]):
        if evals[i] - evals[i - 1] > tol:
            slices.append(slice(start, i))
            start = i
    slices.append(slice(start, evals.shape[0]))
    return slices


def dephase(rho, h, tol: float | None = None, block: bool = True) -> np.ndarray:
    """Remove coherences of ``rho`` between distinct eigenspaces of ``h``.

    By default this is block-dephasing: coherences inside a degenerate
    eigenspace of ``h`` are kept, so the map commutes with every unitary
    generated by ``h``. With ``block=False`` every off-diagonal entry in the
    (ascending) eigenbasis of ``h`` is removed, including those inside
    degenerate blocks.
    """
    rho = as_operator(rho)
    evals, evecs = herm_eig(h)
    if rho.shape != evecs.shape:
        raise DimensionError(evecs.shape, rho.shape)
    rot = evecs.conj().T @ rho @ evecs
    out = np.zeros_like(rot)
    if block:
        for blk in degenerate_blocks(evals, tol):
            out[blk, blk] = rot[blk, blk]
    else:
        np.fill_diagonal(out, np.diag(rot))
    return evecs @ out @ evecs.conj().T
