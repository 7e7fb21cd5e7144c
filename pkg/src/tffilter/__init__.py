"""Schmidt-mode analysis of time-frequency filters.

Model a spectral window and a temporal gate (applied in either order, or
fused coherently) as a linear integral operator on pulse waveforms, compute
its singular value decomposition, and turn the spectrum into the quantities
experiments care about: target-mode efficiency, mode discriminativity,
filtered-noise statistics, and entanglement-based key rates.
"""

from .core import (
    ConvergenceError,
    Domain,
    DomainMismatchError,
    FilterSpec,
    OperatorMatrix,
    ResolutionError,
    SampledAxis,
    SampledSignal,
    SeparableCoherent,
    Sif,
    SpectralWindow,
    SpectralWindowProfile,
    StageOrder,
    TemporalGate,
    TemporalGateProfile,
    TruncationError,
    TruncationWarning,
    apply_filter,
    build_operator,
    centered_axis,
    compose_order_swap,
    fourier_forward,
    fourier_inverse,
    frequency_axis_for,
    indicator_axis,
    inner_product,
    recommended_axes,
)
from .gaussian import (
    GaussianSif,
    GaussianSpectralWindow,
    GaussianTemporalGate,
    gaussian_profiles,
    gaussian_sif,
    gaussian_singular_values,
    gaussian_tradeoff,
    hermite_gaussian_mode_set,
    hermite_gaussian_modes,
    mehler_u,
)
from .metrics import FilterFigures, analytic_snr, bt_from_profiles, figures_from_singulars
from .noisesim import (
    RNG_ALGORITHM,
    CorrelationSurface,
    EnergyReport,
    NoiseEnsembleConfig,
    filtered_noise_correlation,
    run_ensemble,
    sample_white_noise,
    trial_generator,
)
from .qkd import (
    QBER_THRESHOLD,
    CharacteristicKind,
    FilterCharacteristic,
    OptimizationResult,
    QkdScenario,
    binary_entropy,
    normalized_key_rate,
    optimize_over_efficiency,
    qber,
)
from .schmidt import (
    GridReport,
    SchmidtResult,
    decompose_filter,
    project_onto_input_mode,
    reconstruct_kernel,
    schmidt_decompose,
)
from .slepian import (
    PswfSolution,
    RectangularSif,
    RectangularSpectralWindow,
    RectangularTemporalGate,
    full_line_gram,
    interval_gram,
    pswf_solve_legendre,
    pswf_solve_nystrom,
    rectangular_filter_modes,
    rectangular_profiles,
    rectangular_sif,
    slepian_filter_modes,
    slepian_singular_values,
    slepian_tradeoff,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "Domain",
    "StageOrder",
    "SampledAxis",
    "SampledSignal",
    "SpectralWindowProfile",
    "TemporalGateProfile",
    "SpectralWindow",
    "TemporalGate",
    "Sif",
    "SeparableCoherent",
    "FilterSpec",
    "OperatorMatrix",
    "DomainMismatchError",
    "ResolutionError",
    "TruncationError",
    "TruncationWarning",
    "ConvergenceError",
    "centered_axis",
    "frequency_axis_for",
    "indicator_axis",
    "inner_product",
    "fourier_forward",
    "fourier_inverse",
    "apply_filter",
    "build_operator",
    "compose_order_swap",
    "recommended_axes",
    # schmidt
    "GridReport",
    "SchmidtResult",
    "schmidt_decompose",
    "decompose_filter",
    "project_onto_input_mode",
    "reconstruct_kernel",
    # gaussian
    "GaussianSpectralWindow",
    "GaussianTemporalGate",
    "GaussianSif",
    "gaussian_profiles",
    "gaussian_sif",
    "mehler_u",
    "gaussian_singular_values",
    "hermite_gaussian_mode_set",
    "hermite_gaussian_modes",
    "gaussian_tradeoff",
    # slepian
    "RectangularSpectralWindow",
    "RectangularTemporalGate",
    "RectangularSif",
    "rectangular_profiles",
    "rectangular_sif",
    "PswfSolution",
    "pswf_solve_legendre",
    "pswf_solve_nystrom",
    "interval_gram",
    "full_line_gram",
    "slepian_singular_values",
    "slepian_filter_modes",
    "rectangular_filter_modes",
    "slepian_tradeoff",
    # metrics
    "FilterFigures",
    "figures_from_singulars",
    "bt_from_profiles",
    "analytic_snr",
    # noisesim
    "RNG_ALGORITHM",
    "NoiseEnsembleConfig",
    "EnergyReport",
    "trial_generator",
    "sample_white_noise",
    "run_ensemble",
    "CorrelationSurface",
    "filtered_noise_correlation",
    # qkd
    "QBER_THRESHOLD",
    "binary_entropy",
    "qber",
    "normalized_key_rate",
    "CharacteristicKind",
    "FilterCharacteristic",
    "OptimizationResult",
    "optimize_over_efficiency",
    "QkdScenario",
]