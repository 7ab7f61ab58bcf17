"""Maximum-entropy electron-population ensembles for molecular domains."""

from .domain_network import DomainCharge, NetworkSolution, equilibrate, total_charge_at
from .ensemble_core import (
    DomainSpec,
    EnsembleReport,
    ThreeStateWeights,
    edge_weights_algebraic,
    entropy,
    gamma_from_nu,
    nu_from_gamma,
    report,
    weights_from_gamma,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    EnsembleError,
    InfeasibleError,
    InvalidInputError,
    OutOfRangeError,
)
from .maxent_solver import GeneralEnsemble, brute_force_maxent, log_partition, solve_maxent

__version__ = "0.1.0"
