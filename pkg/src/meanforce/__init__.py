"""Strong-coupling quantum thermodynamics of finite system-bath models.

The toolkit builds finite system-bath Hamiltonians (a two-qubit/single-mode
model and a non-rotating-wave Jaynes-Cummings model), computes their
Hamiltonian of mean force, and evaluates the thermodynamics that follows from
it: internal energy, entropy, the generalized fluctuation-dissipation
decomposition of the heat capacity, quantum Fisher information and the
signal-to-noise bound, ergotropy, and entropy production under global unitary
quenches.
"""

from .errors import (
    ConsistencyError,
    DimensionError,
    FiniteDifferenceWarning,
    HermiticityError,
    PositivityError,
    SpectrumDomainError,
)
from .linalg import (
    SpectralDecomposition,
    check_density_matrix,
    dephase,
    herm_eig,
    mat_exp,
    mat_func,
    mat_log,
    mat_power,
    partial_trace,
    tensor,
)
from .mean_force import (
    MeanForceProblem,
    gibbs_state,
    hmf,
    mean_force_partition,
    mean_force_state,
    partition_fn,
    reduced_global_gibbs,
)
from .models import (
    JC,
    TWO_QUBIT,
    ModelParams,
    SystemBathModel,
    build_jc_model,
    build_model,
    build_two_qubit_model,
    coupling_preset,
    fock_mode,
)
from .sweep import SweepConfig, SweepRecord, read_csv, run_sweep, write_csv
from .thermo import (
    HeatCapacityResult,
    ThermalPoint,
    effective_energy_op,
    energy_fluctuation,
    entropy,
    heat_capacity,
    internal_energy,
    qfi,
    thermal_point,
    uncertainty_split,
    wyd_skew,
)
from .work import (
    ErgotropyReport,
    EvolutionSnapshot,
    bell_state,
    entropy_production,
    ergotropy,
    ergotropy_split,
    evolve,
    mutual_information,
    plus_state,
    relative_entropy,
    von_neumann_entropy,
)

__version__ = "0.1.0"
