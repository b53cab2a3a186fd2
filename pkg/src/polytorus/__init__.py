"""Hardy-space machinery for Dirichlet series on the infinite polytorus.

The toolkit rests on the multiplicative lift: a Dirichlet polynomial
sum a_n n^(-s) corresponds term by term with a power series in one
complex variable per prime, via the exponents of n's factorization.
On that side live integral p-norms over torus sections, grid-DFT
coefficient recovery, growth and tail inequality certifiers, and a
desk-scale normal-family extraction pipeline with honest certificates.

Numerical kernels run through numba when importable; set
POLYTORUS_BACKEND=numpy (or numba, or auto) before import to pin the
dispatch.  Both backends share exact contracts and fixed reduction
orders, so each is deterministic run to run.
"""

from ._kernels import BACKEND
from .analysis import (
    NormEstimate,
    PointInPolydisc,
    QuadratureConfig,
    bayart_mean_norm,
    evaluate,
    evaluate_dirichlet_line,
    evaluate_many,
    extract_coefficients,
    hp_norm,
    torus_mean,
)
from .bohr import (
    MultiIndex,
    PrimeBasis,
    ZERO_INDEX,
    enumerate_indices,
    factorize_to_index,
    first_primes,
    index_to_integer,
    nth_prime,
    prime_position,
    primes_upto,
)
from .bounds import (
    BoundReport,
    DEFAULT_TRUNCATION_C,
    abel_tail_bound,
    coefficient_sup_bound,
    disc_coefficient_sup,
    disc_pointwise_bound,
    disc_two_point_bound,
    lipschitz_bound,
    pointwise_bound,
    run_all_suites,
    truncation_ratio,
)
from .errors import ResourceError
from .fileio import (
    ParseError,
    RunConfig,
    load_config,
    parse_family,
    parse_series,
    serialize_family,
    serialize_series,
)
from .montel import (
    CompactBox,
    EpsNet,
    ExtractionReport,
    StageCertificate,
    box_distance,
    build_eps_net,
    certify_uniform_cauchy,
    dense_enumerate,
    diagonal_extract,
    dirichlet_montel,
    extract_and_certify,
    limit_norm_check,
)
from .sampling import random_dirichlet, random_dirichlet_exact, random_expansion, random_point
from .series import (
    DirichletPolynomial,
    HpIndex,
    MonomialExpansion,
    bohr_drop,
    bohr_lift,
    h2_distance,
    h2_norm_exact,
    tail_h2_norm,
    translate,
    truncate,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundReport",
    "CompactBox",
    "DEFAULT_TRUNCATION_C",
    "DirichletPolynomial",
    "EpsNet",
    "ExtractionReport",
    "HpIndex",
    "MonomialExpansion",
    "MultiIndex",
    "NormEstimate",
    "ParseError",
    "PointInPolydisc",
    "PrimeBasis",
    "QuadratureConfig",
    "ResourceError",
    "RunConfig",
    "StageCertificate",
    "ZERO_INDEX",
    "abel_tail_bound",
    "bayart_mean_norm",
    "bohr_drop",
    "bohr_lift",
    "box_distance",
    "build_eps_net",
    "certify_uniform_cauchy",
    "coefficient_sup_bound",
    "dense_enumerate",
    "diagonal_extract",
    "dirichlet_montel",
    "disc_coefficient_sup",
    "disc_pointwise_bound",
    "disc_two_point_bound",
    "enumerate_indices",
    "evaluate",
    "evaluate_dirichlet_line",
    "evaluate_many",
    "extract_and_certify",
    "extract_coefficients",
    "factorize_to_index",
    "first_primes",
    "h2_distance",
    "h2_norm_exact",
    "hp_norm",
    "index_to_integer",
    "limit_norm_check",
    "lipschitz_bound",
    "load_config",
    "nth_prime",
    "parse_family",
    "parse_series",
    "pointwise_bound",
    "prime_position",
    "primes_upto",
    "random_dirichlet",
    "random_dirichlet_exact",
    "random_expansion",
    "random_point",
    "run_all_suites",
    "serialize_family",
    "serialize_series",
    "tail_h2_norm",
    "torus_mean",
    "translate",
    "truncate",
    "truncation_ratio",
]
