"""Bell-CHSH correlators of Weyl operators for a free massive real scalar
field in 1+1D Minkowski spacetime, smeared against bump functions supported
in causal diamonds."""

from .chsh import (
    TSIRELSON_BOUND,
    BilinearSet,
    Classification,
    ChshResult,
    ChshScenario,
    chsh_correlator,
    classify,
    correlator_from_bilinears,
    correlator_terms,
    hadamard_bilinear,
    pauli_jordan_bilinear,
    scenario_from_params,
)
from .kernels import (
    DEFAULT_GUARD,
    KernelGuard,
    SpacetimePoint,
    hadamard_kernel,
    lorentz_interval,
    pauli_jordan_kernel,
)
from .quad import (
    IntegralEstimate,
    NonFiniteIntegrandError,
    QuadPlan,
    integrate_bilinear,
    integrate_tensor_oracle,
    low_discrepancy_stream,
)
from .search import (
    ParamRanges,
    RecordFormatError,
    ScenarioParams,
    SearchRecord,
    load_records,
    persist_records,
    random_search,
    sample_params,
)
from .special import j0, k0, y0
from .testfns import BoundingBox, DiamondSide, DiamondTestFunction

__version__ = "0.1.0"

__all__ = [
    "TSIRELSON_BOUND",
    "BilinearSet",
    "Classification",
    "ChshResult",
    "ChshScenario",
    "chsh_correlator",
    "classify",
    "correlator_from_bilinears",
    "correlator_terms",
    "hadamard_bilinear",
    "pauli_jordan_bilinear",
    "scenario_from_params",
    "DEFAULT_GUARD",
    "KernelGuard",
    "SpacetimePoint",
    "hadamard_kernel",
    "lorentz_interval",
    "pauli_jordan_kernel",
    "IntegralEstimate",
    "NonFiniteIntegrandError",
    "QuadPlan",
    "integrate_bilinear",
    "integrate_tensor_oracle",
    "low_discrepancy_stream",
    "ParamRanges",
    "RecordFormatError",
    "ScenarioParams",
    "SearchRecord",
    "load_records",
    "persist_records",
    "random_search",
    "sample_params",
    "j0",
    "k0",
    "y0",
    "BoundingBox",
    "DiamondSide",
    "DiamondTestFunction",
    "__version__",
]
