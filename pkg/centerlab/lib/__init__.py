from .decomposition import (
    CorrelationLedger,
    ModesOfVariation,
    correlation_ledger,
    numerical_rank,
    pearson_correlation,
    reconstruct,
    svd_modes,
)
from .diagnostics import (
    EnergyBreakdown,
    EnergyTestResult,
    constant_direction,
    direction_energy,
    energy_breakdown,
    energy_test,
    sample_null_directions,
    smooth_histogram,
)
from .errors import (
    BoundsError,
    CenteringError,
    DegenerateInputError,
    DimensionError,
    InvalidInputError,
    NumericalError,
    ParseError,
    PartialModelWarning,
    UndefinedCorrelationError,
    UndefinedProportionError,
    UsageError,
)
from .integration import PlsMethod, PlsModel, TwoBlockData, cross_covariance, fit_pls, pls_sequential, pls_svd
from .matrix import (
    CenteringKind,
    DataMatrix,
    center,
    compute_means,
    frobenius_inner,
    is_centered,
    mean_matrices,
    mean_orthogonality,
)
