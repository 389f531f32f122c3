"""Scalar thermodynamics of the mean-force description.

Internal energy, its fluctuations and quantum/classical split, entropy, the
generalized fluctuation-dissipation decomposition of the heat capacity, the
quantum Fisher information and the signal-to-noise bounds all live here. Every
beta-derivative is a central difference with relative step
max(1e-5, fd_step*beta); the per-model spectral cache in
:mod:`meanforce.mean_force` makes the repeated evaluations cheap.

The heat-capacity decomposition used throughout is

    C_S = beta^2 * Var - beta^2 * Q + <d_T E*>,  with <d_T E*> = -beta^2 <d_beta E*>,

which is the form consistent with C_S = d_T U_S and with the
signal-to-noise bound C_S - <d_T E*> (= beta^2 * K).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConsistencyError, FiniteDifferenceWarning
from .linalg import clamp_state_eigenvalues, herm_eig, require_hermitian
from .mean_force import MeanForceProblem, ensure_problem

QFI_POPULATION_FLOOR = 1e-12
VAR_SPLIT_RTOL = 1e-8
FISHER_BOUND_SLACK = 1e-8
SNR_BOUND_SLACK = 1e-6
ENERGY_ROUTE_RTOL = 1e-6
HEAT_CAPACITY_RTOL = 1e-4


def expectation(rho: np.ndarray, op: np.ndarray) -> float:
    return float(np.trace(rho @ op).real)


def variance(rho: np.ndarray, op: np.ndarray) -> float:
    """Var(rho, Y) = Tr(rho Y^2) - Tr(rho Y)^2."""
    mean = expectation(rho, op)
    return expectation(rho, op @ op) - mean * mean


def effective_energy_op(
    model_or_problem,
    beta: float,
    fd_step: float | None = None,
    check_stability: bool = False,
) -> np.ndarray:
    """E*_S(beta) = d_beta[beta * H*_S(beta)] by central difference."""
    prob = ensure_problem(model_or_problem, fd_step)
    op = _estar(prob, beta, prob.delta(beta))
    if check_stability:
        finer = _estar(prob, beta, 0.5 * prob.delta(beta))
        scale = max(float(np.max(np.abs(op))), 1e-30)
        change = float(np.max(np.abs(op - finer))) / scale
        if change > 0.1:
            warnings.warn(
                f"effective energy operator changed by {change:.1%} when the "
                f"finite-difference step was halved at beta={beta:g}",
                FiniteDifferenceWarning,
                stacklevel=2,
            )
    return op


def _dbeta_of(func, beta: float, delta: float, richardson: bool):
    """Central difference of ``func`` at ``beta``, optionally Richardson-refined."""

    def central(step):
        return (func(beta + step) - func(beta - step)) / (2.0 * step)

    estimate = central(delta)
    if richardson:
        estimate = (4.0 * central(0.5 * delta) - estimate) / 3.0
    return estimate


def _estar(prob: MeanForceProblem, beta: float, delta: float) -> np.ndarray:
    op = _dbeta_of(lambda b: b * prob.hmf(b), beta, delta, prob.richardson)
    return 0.5 * (op + op.conj().T)


def _dbeta_hmf(prob: MeanForceProblem, beta: float) -> np.ndarray:
    return _dbeta_of(prob.hmf, beta, prob.delta(beta), prob.richardson)


def _dbeta_estar(prob: MeanForceProblem, beta: float) -> np.ndarray:
    return _dbeta_of(
        lambda b: _estar(prob, b, prob.delta(b)), beta, prob.delta(beta), prob.richardson
    )


def _energy_at(prob: MeanForceProblem, beta: float) -> float:
    return expectation(prob.zeta(beta), _estar(prob, beta, prob.delta(beta)))


def internal_energy(
    model_or_problem,
    beta: float,
    fd_step: float | None = None,
    check: bool = True,
    rtol: float = ENERGY_ROUTE_RTOL,
) -> float:
    """U_S = Tr[E*_S zeta_S], cross-checked against U_SB - U'_B.

    The second route differentiates ln Z_SB and ln Z_B directly; disagreement
    beyond ``rtol`` (relative) raises ConsistencyError.
    """
    prob = ensure_problem(model_or_problem, fd_step)
    u_expect = _energy_at(prob, beta)
    if check:
        delta = prob.delta(beta)
        u_sb = -_dbeta_of(prob.log_z_sb, beta, delta, prob.richardson)
        u_b = -_dbeta_of(prob.log_z_b, beta, delta, prob.richardson)
        u_diff = u_sb - u_b
        scale = max(abs(u_expect), abs(u_diff), 1e-9)
        if abs(u_expect - u_diff) > rtol * scale:
            raise ConsistencyError(
                f"internal energy routes disagree at beta={beta:g}: "
                f"expectation route {u_expect!r} vs partition route {u_diff!r}"
            )
    return u_expect


def energy_fluctuation(model_or_problem, beta: float, fd_step: float | None = None) -> float:
    """Standard deviation of E*_S in the mean-force Gibbs state."""
    prob = ensure_problem(model_or_problem, fd_step)
    var = variance(prob.zeta(beta), _estar(prob, beta, prob.delta(beta)))
    return float(np.sqrt(max(var, 0.0)))


def wyd_skew(rho, obs, eta: float) -> float:
    """Skew information Tr(rho Y^2) - Tr(rho^eta Y rho^(1-eta) Y), 0 < eta < 1."""
    if not 0.0 < eta < 1.0:
        raise ValueError(f"eta must be in (0, 1), got {eta!r}")
    obs = require_hermitian(obs)
    evals, evecs = herm_eig(rho)
    p = clamp_state_eigenvalues(evals)
    y = evecs.conj().T @ obs @ evecs
    abs_y2 = np.abs(y) ** 2
    term1 = float(np.sum(p[:, None] * abs_y2))  # Tr(rho Y^2) in the eigenbasis
    term2 = float(np.sum((p[:, None] ** eta) * (p[None, :] ** (1.0 - eta)) * abs_y2))
    return term1 - term2


def _log_mean(p: float, q: float) -> float:
    """Logarithmic mean L(p, q); L(p, p) = p, L(p, 0) = 0."""
    if p <= 0.0 or q <= 0.0:
        return 0.0
    if abs(p - q) <= 1e-12 * max(p, q):
        return 0.5 * (p + q)
    return (p - q) / (np.log(p) - np.log(q))


def uncertainty_split(rho, obs) -> tuple[float, float]:
    """Split Var(rho, Y) into quantum (Q) and classical (K) uncertainty.

    K is the a-averaged correlation integral in closed form: the a-integral of
    p^a q^(1-a) is the logarithmic mean of the eigenvalue pair. Q is the
    remainder of the variance and is clamped at zero against rounding.
    """
    obs = require_hermitian(obs)
    evals, evecs = herm_eig(rho)
    p = clamp_state_eigenvalues(evals)
    y = evecs.conj().T @ obs @ evecs
    mean = float(np.sum(p * np.diag(y).real))
    dy = y - mean * np.eye(len(p))
    abs_dy2 = np.abs(dy) ** 2

    n = len(p)
    log_mean = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            log_mean[i, j] = _log_mean(float(p[i]), float(p[j]))
    k = float(np.sum(log_mean * abs_dy2))
    var = float(np.sum(0.5 * (p[:, None] + p[None, :]) * abs_dy2))
    q = var - k
    if q < 0.0:
        if q < -1e-10:
            raise ConsistencyError(f"quantum uncertainty evaluated to {q!r} < -1e-10")
        q = 0.0
    return q, k


def entropy(model_or_problem, beta: float, fd_step: float | None = None) -> float:
    """System entropy: von Neumann term plus the mean-force temperature correction

    S_S = -Tr[zeta ln zeta] + beta^2 Tr[(d_beta H*_S) zeta].
    """
    prob = ensure_problem(model_or_problem, fd_step)
    zeta = prob.zeta(beta)
    p = clamp_state_eigenvalues(herm_eig(zeta).eigenvalues)
    nz = p > 0.0
    von_neumann = -float(np.sum(p[nz] * np.log(p[nz])))
    correction = beta * beta * expectation(zeta, _dbeta_hmf(prob, beta))
    return von_neumann + correction


@dataclass(frozen=True)
class HeatCapacityResult:
    """Generalized fluctuation-dissipation decomposition of C_S."""

    c_s: float
    beta2_var: float  # beta^2 * Var(zeta, E*)
    beta2_q: float  # beta^2 * Q(zeta, E*)
    dET: float  # <d_T E*_S> = -beta^2 <d_beta E*_S>
    c_direct: float  # d_T U_S by central difference

    @property
    def terms(self) -> dict[str, float]:
        return {
            "beta2_var": self.beta2_var,
            "beta2_q": self.beta2_q,
            "dET": self.dET,
        }


def heat_capacity(
    model_or_problem,
    beta: float,
    fd_step: float | None = None,
    check: bool = True,
    rtol: float = HEAT_CAPACITY_RTOL,
) -> HeatCapacityResult:
    """Heat capacity via the generalized fluctuation-dissipation decomposition,
    cross-checked against the direct temperature derivative of U_S."""
    prob = ensure_problem(model_or_problem, fd_step)
    zeta = prob.zeta(beta)
    estar = _estar(prob, beta, prob.delta(beta))
    var = variance(zeta, estar)
    q, _ = uncertainty_split(zeta, estar)
    det = -beta * beta * expectation(zeta, _dbeta_estar(prob, beta))
    c_s = beta * beta * var - beta * beta * q + det

    du_dbeta = _dbeta_of(lambda b: _energy_at(prob, b), beta, prob.delta(beta), prob.richardson)
    c_direct = -beta * beta * du_dbeta

    if check:
        scale = max(abs(c_s), abs(c_direct))
        if scale > 1e-6 and abs(c_s - c_direct) > rtol * scale:
            raise ConsistencyError(
                f"heat-capacity routes disagree at beta={beta:g}: decomposition "
                f"{c_s!r} vs direct derivative {c_direct!r}"
            )
    return HeatCapacityResult(c_s=c_s, beta2_var=beta * beta * var, beta2_q=beta * beta * q,
                              dET=det, c_direct=c_direct)


def qfi(
    model_or_problem,
    beta: float,
    parameterization: str = "beta",
    fd_step: float | None = None,
) -> float:
    """Quantum Fisher information of zeta_S for the thermal parameter.

    Spectral form: F(theta) = 2 sum_{n,m} |<n| d_theta zeta |m>|^2 / (p_n + p_m),
    with the derivative taken by central difference in beta. The temperature
    parameterization applies the exact chain-rule factor beta^4.
    """
    if parameterization not in ("beta", "temperature"):
        raise ValueError(f"parameterization must be 'beta' or 'temperature', got {parameterization!r}")
    prob = ensure_problem(model_or_problem, fd_step)
    dzeta = _dbeta_of(prob.zeta, beta, prob.delta(beta), prob.richardson)
    evals, evecs = herm_eig(prob.zeta(beta))
    p = clamp_state_eigenvalues(evals)
    d = evecs.conj().T @ dzeta @ evecs
    denom = p[:, None] + p[None, :]
    mask = denom >= QFI_POPULATION_FLOOR
    f_beta = 2.0 * float(np.sum((np.abs(d) ** 2)[mask] / denom[mask]))
    if parameterization == "temperature":
        return beta**4 * f_beta
    return f_beta


@dataclass(frozen=True)
class ThermalPoint:
    """All scalar observables at one (model, beta)."""

    beta: float
    temperature: float
    u_s: float
    var_u: float  # (Delta U_S)^2
    q: float
    k: float
    s_s: float
    c_s: float
    c_direct: float
    dET: float
    f_beta: float
    snr_bound: float  # C_S - <d_T E*>
    snr_opt: float  # T^2 F(T) = beta^2 F(beta)
    violations: tuple[str, ...] = field(default=())

    @property
    def du_s(self) -> float:
        return float(np.sqrt(max(self.var_u, 0.0)))

    @property
    def f_temperature(self) -> float:
        return self.beta**4 * self.f_beta


def _bound_violations(point: ThermalPoint) -> tuple[str, ...]:
    out = []
    split = point.q + point.k
    # the variance is a difference of second moments, so rounding noise scales
    # with the second moment itself, not with the (possibly cancelled) variance
    second_moment = abs(point.var_u) + point.u_s * point.u_s
    atol = 1e-12 * max(1.0, second_moment)
    scale = max(abs(point.var_u), abs(split))
    if abs(split - point.var_u) > VAR_SPLIT_RTOL * scale + atol:
        out.append(f"var-split:{split - point.var_u:.3e}")
    if point.q < 0.0 or point.k < 0.0:
        out.append(f"negative-uncertainty:q={point.q:.3e}&k={point.k:.3e}")
    if point.f_beta > point.k + FISHER_BOUND_SLACK * max(1.0, point.k):
        out.append(f"fisher-bound:{point.f_beta - point.k:.3e}")
    if point.snr_opt > point.snr_bound + SNR_BOUND_SLACK * max(1.0, abs(point.snr_bound)):
        out.append(f"snr-bound:{point.snr_opt - point.snr_bound:.3e}")
    return tuple(out)


def thermal_point(
    model_or_problem,
    beta: float,
    fd_step: float | None = None,
    strict: bool = True,
) -> ThermalPoint:
    """Evaluate every thermodynamic scalar at one inverse temperature.

    With ``strict`` the documented bounds (variance split, Fisher bound,
    signal-to-noise bound) raise ConsistencyError when violated; otherwise the
    violations are reported on the returned point.
    """
    prob = ensure_problem(model_or_problem, fd_step)
    zeta = prob.zeta(beta)
    estar = _estar(prob, beta, prob.delta(beta))
    u_s = internal_energy(prob, beta)
    var_u = variance(zeta, estar)
    q, k = uncertainty_split(zeta, estar)
    s_s = entropy(prob, beta)
    cap = heat_capacity(prob, beta)
    f_beta = qfi(prob, beta)
    point = ThermalPoint(
        beta=beta,
        temperature=1.0 / beta,
        u_s=u_s,
        var_u=var_u,
        q=q,
        k=k,
        s_s=s_s,
        c_s=cap.c_s,
        c_direct=cap.c_direct,
        dET=cap.dET,
        f_beta=f_beta,
        snr_bound=cap.c_s - cap.dET,
        snr_opt=beta * beta * f_beta,
    )
    violations = _bound_violations(point)
    if violations:
        if strict:
            raise ConsistencyError(
                f"thermal point at beta={beta:g} violates invariants: {violations}"
            )
        point = replace(point, violations=violations)
    return point
