"""entrokit: numerical entropy toolkit.

Discrete Shannon entropy and its concave-kernel generalization, total
entropy with observational bin widths, quantization of continuous densities
with a differential-entropy convergence harness, and the classical
microcanonical ideal-gas application.
"""

from .distributions import (
    BinnedVariable,
    DensityFamily,
    DensitySpec,
    DiscreteDistribution,
    EntropyUnit,
    EntropyValue,
    binned_from_json,
    density_from_json,
    discrete_from_json,
    product_distribution,
    renormalize,
    unit_to_k,
    validate_distribution,
)
from .entropy import (
    AxiomSuiteReport,
    MajorizationReport,
    PhiFunction,
    additivity_defect,
    phi_entropy,
    random_distribution,
    robin_hood_pair,
    run_axiom_suite,
    schur_concavity_check,
    shannon_entropy,
    shannon_phi,
    total_entropy,
)
from .errors import (
    DegenerateDesign,
    EntrokitError,
    EvaluationFailure,
    InvalidDensity,
    NegativeProbability,
    NonPositiveWidth,
    NotAdmissible,
    NotNormalized,
    PhiUndefined,
    QuadratureFailure,
    UnboundedSupport,
    ValidationError,
)
from .functional_eq import (
    DEFAULT_GRID,
    LogAffineFit,
    PhiPrimeSamples,
    cauchy_defect,
    difference_equation_defect,
    fit_log_affine,
    reconstruct_phi,
)
from .quantize import (
    ConvergenceRow,
    QuantizationResult,
    convergence_sweep,
    differential_entropy,
    quantize_density,
    total_entropy_from_density,
)
from .statmech import (
    DiscretizedShellDensity,
    EntropyFormComparison,
    MaxentReport,
    ShellSpec,
    boltzmann_entropy,
    classical_entropy_comparison,
    compare_entropy_forms,
    log_phase_ball_volume,
    log_phase_shell_volume,
    maxent_shell_check,
    modified_differential_entropy,
    sackur_tetrode_entropy,
    shell_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomSuiteReport",
    "BinnedVariable",
    "ConvergenceRow",
    "DEFAULT_GRID",
    "DegenerateDesign",
    "DensityFamily",
    "DensitySpec",
    "DiscreteDistribution",
    "DiscretizedShellDensity",
    "EntrokitError",
    "EntropyFormComparison",
    "EntropyUnit",
    "EntropyValue",
    "EvaluationFailure",
    "InvalidDensity",
    "LogAffineFit",
    "MajorizationReport",
    "MaxentReport",
    "NegativeProbability",
    "NonPositiveWidth",
    "NotAdmissible",
    "NotNormalized",
    "PhiFunction",
    "PhiPrimeSamples",
    "PhiUndefined",
    "QuadratureFailure",
    "QuantizationResult",
    "ShellSpec",
    "UnboundedSupport",
    "ValidationError",
    "additivity_defect",
    "binned_from_json",
    "boltzmann_entropy",
    "cauchy_defect",
    "classical_entropy_comparison",
    "compare_entropy_forms",
    "convergence_sweep",
    "density_from_json",
    "difference_equation_defect",
    "differential_entropy",
    "discrete_from_json",
    "fit_log_affine",
    "log_phase_ball_volume",
    "log_phase_shell_volume",
    "maxent_shell_check",
    "modified_differential_entropy",
    "phi_entropy",
    "product_distribution",
    "quantize_density",
    "random_distribution",
    "reconstruct_phi",
    "renormalize",
    "robin_hood_pair",
    "run_axiom_suite",
    "sackur_tetrode_entropy",
    "schur_concavity_check",
    "shannon_entropy",
    "shannon_phi",
    "shell_entropy",
    "total_entropy",
    "total_entropy_from_density",
    "unit_to_k",
    "validate_distribution",
]
