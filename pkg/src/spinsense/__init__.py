"""Spin-S magnetometry under Ornstein-Uhlenbeck dephasing.

Quantum Fisher information of high-spin probes, decoherence-time analysis,
yield-rate optimization and scaling laws, spin-1 initial-state optimization,
and a measurement-level estimator benchmarked against the Cramer-Rao bound.
"""

__version__ = "0.1.0"

from .estimation import (
    BinaryMeasurement,
    EstimationRun,
    classical_fisher,
    outcome_probability,
    simulate_and_estimate,
)
from .ou_noise import (
    DDProfile,
    McCoherence,
    NoiseRegime,
    OUNoise,
    RegimeKind,
    chi,
    chi_limit,
    classify,
    dd_chi,
    dd_t2,
    mc_coherence,
    sample_ou_path,
    sample_ou_paths,
    t2,
)
from .protocol import (
    ExponentFit,
    StateOptResult,
    SweepTable,
    YieldMethod,
    YieldResult,
    dd_scaling,
    fit_loglog_exponent,
    optimize_initial_state_spin1,
    sweep,
    yield_rate,
    yield_rate_asymptotic,
)
from .qfi import (
    QFIMethod,
    QFIResult,
    drho_domega,
    ghz_qfi_values,
    min_error,
    qfi_generic,
    qfi_noisefree_ghz,
    qfi_noisy_ghz,
    qfi_spin1_closed,
    spin1_qfi_values,
)
from .spin_ops import (
    DensityMatrix,
    PureState,
    Spin1Params,
    SpinQuantumNumber,
    dephase,
    evolve_noisefree,
    fidelity,
    ghz_like_state,
    spin1_param_state,
    sz_operator,
)

__all__ = [
    "BinaryMeasurement",
    "DDProfile",
    "DensityMatrix",
    "EstimationRun",
    "ExponentFit",
    "McCoherence",
    "NoiseRegime",
    "OUNoise",
    "PureState",
    "QFIMethod",
    "QFIResult",
    "RegimeKind",
    "Spin1Params",
    "SpinQuantumNumber",
    "StateOptResult",
    "SweepTable",
    "YieldMethod",
    "YieldResult",
    "chi",
    "chi_limit",
    "classical_fisher",
    "classify",
    "dd_chi",
    "dd_scaling",
    "dd_t2",
    "dephase",
    "drho_domega",
    "evolve_noisefree",
    "fidelity",
    "fit_loglog_exponent",
    "ghz_like_state",
    "ghz_qfi_values",
    "mc_coherence",
    "min_error",
    "optimize_initial_state_spin1",
    "outcome_probability",
    "qfi_generic",
    "qfi_noisefree_ghz",
    "qfi_noisy_ghz",
    "qfi_spin1_closed",
    "sample_ou_path",
    "sample_ou_paths",
    "simulate_and_estimate",
    "spin1_param_state",
    "spin1_qfi_values",
    "sweep",
    "sz_operator",
    "t2",
    "yield_rate",
    "yield_rate_asymptotic",
]
