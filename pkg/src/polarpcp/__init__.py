"""Polar n-complex and n-bicomplex linear algebra, transform-parameterized
t-SVD, hypercomplex proximity operators, and principal component pursuit."""

from .hyperalgebra import (
    COMPLEX,
    REAL,
    AngleSet,
    PolarScalar,
    SingularScalarError,
)
from .hypermatrix import (
    HyperMatrix,
    SpectralMatrix,
    adjoint,
    cft,
    frobenius,
    icft,
    max_modulus,
    spectral_norm,
    stride_permutation,
    unfold,
    vec,
)
from .pht import PhtFormatError, read_pht, write_pht
from .prox import (
    GroupedVector,
    group_soft_threshold,
    prox_l1,
    prox_trace,
    soft_threshold_real,
)
from .simlab import (
    GridResult,
    TrialSpec,
    embed,
    extract,
    gen_low_rank_sparse,
    run_grid,
    run_trial,
    write_csv,
)
from .solvers import (
    PcpResult,
    SolverConfig,
    mu_schedule,
    pcp_ialm,
    residual,
    tensor_rpca,
)
from .tsvd import (
    TSVDFactors,
    TubeTransform,
    reconstruct,
    singular_moduli,
    t_conj_transpose,
    t_matmul,
    tsvd,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSet",
    "COMPLEX",
    "GridResult",
    "GroupedVector",
    "HyperMatrix",
    "PcpResult",
    "PhtFormatError",
    "PolarScalar",
    "REAL",
    "SingularScalarError",
    "SolverConfig",
    "SpectralMatrix",
    "TSVDFactors",
    "TrialSpec",
    "TubeTransform",
    "adjoint",
    "cft",
    "embed",
    "extract",
    "frobenius",
    "gen_low_rank_sparse",
    "group_soft_threshold",
    "icft",
    "max_modulus",
    "mu_schedule",
    "pcp_ialm",
    "prox_l1",
    "prox_trace",
    "read_pht",
    "reconstruct",
    "residual",
    "run_grid",
    "run_trial",
    "singular_moduli",
    "soft_threshold_real",
    "spectral_norm",
    "stride_permutation",
    "t_conj_transpose",
    "t_matmul",
    "tensor_rpca",
    "tsvd",
    "unfold",
    "vec",
    "write_csv",
    "write_pht",
]
