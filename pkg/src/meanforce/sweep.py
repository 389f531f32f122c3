"""Temperature sweeps with truncation-convergence checks and deterministic CSV.

A sweep evaluates one model at a list of coupling strengths over a uniform
temperature grid. Before the grid runs, the bosonic truncation is stress-tested
once: n_fock is doubled and every requested scalar re-evaluated at the most
demanding point (lowest temperature, strongest coupling); shifts beyond
1e-6 relative mark every record of the run with a convergence flag.

CSV rows are written with shortest round-trip float formatting (repr), so a
rerun of an identical configuration is byte-identical and a parse of the file
recovers the records exactly.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .errors import ConsistencyError, PositivityError
from .mean_force import MeanForceProblem
from .models import JC, TWO_QUBIT, ModelParams, build_model, coupling_preset
from .thermo import heat_capacity, qfi, thermal_point
from .work import bell_state, entropy_production, ergotropy, ergotropy_split, plus_state

THERMAL_COLUMNS = [
    "model", "coupling", "lambda", "n_fock", "T", "beta",
    "U_S", "dU_S", "Q", "K", "S_S", "C_S", "C_direct", "dET",
    "snr_bound", "snr_opt", "F_beta",
    "ergotropy_total", "ergotropy_coherent", "ergotropy_incoherent",
    "flags",
]
EP_COLUMNS = ["model", "coupling", "lambda", "n_fock", "T", "t", "Sigma", "mutual_info", "flags"]

CONVERGENCE_RTOL = 1e-6
CONVERGENCE_ATOL = 1e-12
PRESET_ORDER = {"weak": 0, "moderate": 1, "strong": 2}

DEFAULT_EP_TIME = {TWO_QUBIT: 1.0, JC: 0.5}


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep parameters (file values overridden by flags upstream)."""

    model: str = TWO_QUBIT
    omega0: float = 2.0
    omega_c: float = 1.0
    omega: float = 1.0
    xi: float = 0.05
    couplings: tuple[str, ...] = ("weak", "moderate", "strong")
    lambdas: tuple[float, ...] = ()
    t_min: float = 0.1
    t_max: float = 6.0
    t_steps: int = 60
    time: float | None = None
    n_fock: int | None = None
    fd_step: float = 1e-4
    include_zero_point: bool | None = None
    outputs: tuple[str, ...] = ("thermal", "ergotropy")
    out: str = "sweep.csv"

    def __post_init__(self):
        if self.model not in (TWO_QUBIT, JC):
            raise ValueError(f"model must be '{TWO_QUBIT}' or '{JC}', got {self.model!r}")
        if not 0.0 < self.t_min < self.t_max:
            raise ValueError(
                f"temperature grid requires 0 < T_min < T_max, got [{self.t_min!r}, {self.t_max!r}]"
            )
        if self.t_steps < 2:
            raise ValueError(f"t_steps must be >= 2, got {self.t_steps!r}")
        if not self.outputs:
            raise ValueError("requested outputs must be nonempty")
        if not self.couplings and not self.lambdas:
            raise ValueError("at least one coupling preset or explicit lambda is required")
        for name in self.couplings:
            if name not in PRESET_ORDER:
                raise ValueError(f"unknown coupling preset {name!r}")
        if any(lam < 0 for lam in self.lambdas):
            raise ValueError("explicit lambda values must be >= 0")
        if not 0.0 < self.fd_step <= 1e-2:
            raise ValueError(f"fd_step must be in (0, 1e-2], got {self.fd_step!r}")

    def temperatures(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.t_steps)

    def coupling_list(self) -> list[tuple[str, float]]:
        """(label, lambda) pairs in deterministic record order."""
        pairs = [
            (name, coupling_preset(name, self.model, self.omega0, self.omega))
            for name in sorted(set(self.couplings), key=PRESET_ORDER.__getitem__)
        ]
        pairs.extend(("custom", lam) for lam in sorted(set(self.lambdas)))
        return pairs

    def model_params(self, coupling: float, n_fock: int | None = None) -> ModelParams:
        return ModelParams(
            kind=self.model,
            omega0=self.omega0,
            omega_c=self.omega_c,
            omega=self.omega,
            xi=self.xi,
            coupling=coupling,
            n_fock=n_fock if n_fock is not None else self.n_fock,
            include_zero_point=self.include_zero_point,
        )

    @property
    def ep_time(self) -> float:
        return self.time if self.time is not None else DEFAULT_EP_TIME[self.model]


CONFIG_FIELD_TYPES = {f.name: f for f in fields(SweepConfig)}


def _parse_config_value(key: str, raw: str):
    if key in ("model", "out"):
        return raw
    if key == "couplings":
        return tuple(s for s in raw.replace(",", " ").split() if s)
    if key == "lambdas":
        return tuple(float(s) for s in raw.replace(",", " ").split() if s)
    if key == "outputs":
        return tuple(s for s in raw.replace(",", " ").split() if s)
    if key in ("t_steps", "n_fock"):
        return int(raw)
    if key == "include_zero_point":
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"cannot parse boolean {raw!r}")
    return float(raw)


def read_config_file(path: str) -> dict:
    """Parse a flat key=value configuration file (# comments allowed)."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line.rstrip()!r}")
            key, raw = (part.strip() for part in stripped.split("=", 1))
            if key not in CONFIG_FIELD_TYPES:
                raise ValueError(f"{path}:{lineno}: unknown configuration key {key!r}")
            try:
                values[key] = _parse_config_value(key, raw)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from exc
    return values


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> SweepConfig:
    """Merge config-file values with flag overrides (flags win)."""
    merged = dict(file_values or {})
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    unknown = set(merged) - set(CONFIG_FIELD_TYPES)
    if unknown:
        raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
    return SweepConfig(**merged)


@dataclass(frozen=True)
class SweepRecord:
    """One CSV row: a mapping from column name to value plus error state."""

    columns: tuple[str, ...]
    values: dict
    error: str = ""

    def row(self) -> list[str]:
        return [format_value(self.values.get(col)) for col in self.columns]


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        if "," in value:
            raise ValueError(f"CSV field value may not contain a comma: {value!r}")
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _initial_state(model_kind: str):
    return bell_state() if model_kind == TWO_QUBIT else plus_state()


def _thermal_scalars(problem: MeanForceProblem, beta: float, with_ergotropy: bool) -> dict:
    point = thermal_point(problem, beta, strict=False)
    values = {
        "beta": beta,
        "U_S": point.u_s,
        "dU_S": point.du_s,
        "Q": point.q,
        "K": point.k,
        "S_S": point.s_s,
        "C_S": point.c_s,
        "C_direct": point.c_direct,
        "dET": point.dET,
        "snr_bound": point.snr_bound,
        "snr_opt": point.snr_opt,
        "F_beta": point.f_beta,
    }
    flags = [f"invariant:{v}" for v in point.violations]
    if with_ergotropy:
        report = ergotropy_split(problem.mean_force_state(beta), problem.model.h_sys)
        values.update(
            ergotropy_total=report.total,
            ergotropy_coherent=report.coherent,
            ergotropy_incoherent=report.incoherent,
        )
    return {"values": values, "flags": flags}


def _ep_scalars(problem: MeanForceProblem, beta: float, t: float) -> dict:
    snap = entropy_production(problem, _initial_state(problem.model.params.kind), beta, t)
    return {"values": {"Sigma": snap.sigma, "mutual_info": snap.mutual_info}, "flags": []}


def _evaluate(config: SweepConfig, problem: MeanForceProblem, temperature: float) -> dict:
    beta = 1.0 / temperature
    if "entropy-production" in config.outputs:
        return _ep_scalars(problem, beta, config.ep_time)
    return _thermal_scalars(problem, beta, "ergotropy" in config.outputs)


def _numeric_items(values: dict) -> list[tuple[str, float]]:
    return [(k, float(v)) for k, v in values.items() if not isinstance(v, str)]


def check_convergence(config: SweepConfig) -> tuple[bool, list[str]]:
    """Double n_fock once and compare every requested scalar at the most
    demanding point (strongest coupling, lowest temperature)."""
    label, strongest = max(config.coupling_list(), key=lambda pair: pair[1])
    details = []
    ok = True
    base_params = config.model_params(strongest)
    for params in (base_params, replace(base_params, n_fock=2 * base_params.n_fock)):
        problem = MeanForceProblem(build_model(params), config.fd_step)
        details.append(_evaluate(config, problem, config.t_min)["values"])
    messages = []
    doubled = dict(_numeric_items(details[1]))
    for key, a in _numeric_items(details[0]):
        if key == "beta":
            continue
        b = doubled[key]
        if abs(a - b) > CONVERGENCE_RTOL * max(abs(a), abs(b)) + CONVERGENCE_ATOL:
            ok = False
            messages.append(f"{key}: {a!r} -> {b!r} on doubling n_fock (coupling {label})")
    return ok, messages


def run_sweep(config: SweepConfig, log=None) -> list[SweepRecord]:
    """Evaluate the full (coupling, temperature) grid.

    Numerical failures become record-level error entries; the sweep continues.
    """
    columns = tuple(EP_COLUMNS if "entropy-production" in config.outputs else THERMAL_COLUMNS)
    converged, messages = check_convergence(config)
    if log is not None:
        bath = (
            f"omega={config.omega!r}, xi={config.xi!r}"
            if config.model == TWO_QUBIT
            else f"omega_c={config.omega_c!r}"
        )
        log(f"model={config.model} omega0={config.omega0!r} {bath} "
            f"n_fock={config.model_params(0.0).n_fock} fd_step={config.fd_step!r}")
        for msg in messages:
            log(f"convergence warning: {msg}")

    records = []
    for label, lam in config.coupling_list():
        params = config.model_params(lam)
        problem = MeanForceProblem(build_model(params), config.fd_step)
        for temperature in config.temperatures():
            base = {
                "model": config.model,
                "coupling": label,
                "lambda": lam,
                "n_fock": params.n_fock,
                "T": float(temperature),
            }
            if "entropy-production" in config.outputs:
                base["t"] = config.ep_time
            flags = [] if converged else ["convergence"]
            try:
                result = _evaluate(config, problem, float(temperature))
            except (ConsistencyError, PositivityError, ValueError) as exc:
                message = f"error:{type(exc).__name__}"
                base["flags"] = ";".join(flags + [message])
                records.append(SweepRecord(columns=columns, values=base, error=str(exc)))
                if log is not None:
                    log(f"record error at T={temperature:g}, coupling={label}: {exc}")
                continue
            base.update(result["values"])
            base["flags"] = ";".join(flags + result["flags"])
            records.append(SweepRecord(columns=columns, values=base))
    return records


def write_csv(records: list[SweepRecord], path: str, columns: tuple[str, ...] | None = None) -> None:
    """Write header plus records; floats as shortest round-trip decimals."""
    if columns is None:
        if not records:
            raise ValueError("cannot infer columns for an empty record list")
        columns = records[0].columns
    lines = [",".join(columns)]
    lines.extend(",".join(record.row()) for record in records)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path: str) -> tuple[list[str], list[dict]]:
    """Parse a sweep CSV back into typed records (round-trip of write_csv)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(header):
            raise ValueError(f"{path}: row has {len(parts)} fields, header has {len(header)}")
        row = {}
        for key, raw in zip(header, parts):
            if key in ("model", "coupling", "flags"):
                row[key] = raw
            elif key == "n_fock":
                row[key] = int(raw)
            else:
                row[key] = float(raw) if raw else float("nan")
        rows.append(row)
    return header, rows


def sweep_exit_code(records: list[SweepRecord]) -> int:
    """0 when clean; 3 when any record carries an error or warning flag."""
    for record in records:
        if record.error or record.values.get("flags"):
            return 3
    return 0


def point_diagnostics(config: SweepConfig, temperature: float) -> dict:
    """Full diagnostic dump at a single temperature for every coupling.

    Includes both variants of the fluctuation-dissipation third term and both
    ergotropy reference Hamiltonians.
    """
    beta = 1.0 / temperature
    out = {
        "model": config.model,
        "T": temperature,
        "beta": beta,
        "omega0": config.omega0,
        "omega_c": config.omega_c,
        "omega": config.omega,
        "xi": config.xi,
        "fd_step": config.fd_step,
        "couplings": {},
    }
    for label, lam in config.coupling_list():
        params = config.model_params(lam)
        problem = MeanForceProblem(build_model(params), config.fd_step)
        point = thermal_point(problem, beta, strict=False)
        cap = heat_capacity(problem, beta)
        zeta = problem.mean_force_state(beta)
        erg_bare = ergotropy_split(zeta, problem.model.h_sys)
        erg_mf = ergotropy(zeta, problem.hmf(beta))
        dbeta_estar_mean = -cap.dET / (beta * beta)
        entry = {
            "lambda": lam,
            "n_fock": params.n_fock,
            "include_zero_point": params.include_zero_point,
            "U_S": point.u_s,
            "dU_S": point.du_s,
            "Q": point.q,
            "K": point.k,
            "S_S": point.s_s,
            "C_S": point.c_s,
            "C_direct": point.c_direct,
            "F_beta": point.f_beta,
            "F_T": point.f_temperature,
            "snr_bound": point.snr_bound,
            "snr_opt": point.snr_opt,
            "dET_canonical": cap.dET,
            "dET_printed_prefactor": -dbeta_estar_mean / (beta * beta),
            "beta2_var": cap.beta2_var,
            "beta2_q": cap.beta2_q,
            "ergotropy_total": erg_bare.total,
            "ergotropy_coherent": erg_bare.coherent,
            "ergotropy_incoherent": erg_bare.incoherent,
            "ergotropy_vs_mean_force_hamiltonian": erg_mf,
            "hmf": [[repr(problem.hmf(beta)[i, j]) for j in range(params_dim(problem))]
                    for i in range(params_dim(problem))],
            "violations": list(point.violations),
        }
        if "entropy-production" in config.outputs or config.time is not None:
            snap = entropy_production(problem, _initial_state(config.model), beta, config.ep_time)
            entry["Sigma"] = snap.sigma
            entry["mutual_info"] = snap.mutual_info
            entry["t"] = config.ep_time
        out["couplings"][label] = entry
    return out


def params_dim(problem: MeanForceProblem) -> int:
    return problem.model.d_sys


def log_stderr(message: str) -> None:
    print(message, file=sys.stderr)
