"""Exact operational calculus for umbral operators.

Truncated power series and polynomial matrices over exact rationals (or
floats), five independent constructions of the umbral operator of a
generator series, iterative logarithms and fractional iteration, Pincherle
calculus with normal forms and the x/D swap, fractional operator powers, and
the degenerate Laguerre family, all cross-checked bit-exactly.
"""

from .scalars import EXACT, FLOAT, ModeMismatchError, gbinom, qbinom
from .series import (
    DEFAULT_ORDER,
    PreconditionError,
    TruncatedSeries,
    series_from_tail,
)
from .polynomials import Polynomial, poly_from_series
from .operators import (
    NormalForm,
    OperatorMatrix,
    WindowUnderflowError,
    apply_op,
    compose_ops,
    composition_operator,
    exp_loc_nilpotent,
    first_discrepancy,
    gen_pow,
    km_operator,
    log_unipotent,
    normal_form,
    nth_pincherle,
    op_from_normal_form,
    op_inverse,
    ops_equal,
    pincherle_derivative,
)
from .umbral import (
    CONSTRUCTIONS,
    UmbralOperator,
    UmbralSpec,
    delta_operator,
    extract_generator_field,
    flow,
    frac_power,
    fractional_iterate,
    itlog,
    julia_residual,
    koenigs_coordinate,
    umbral_bucc,
    umbral_exp_itlog,
    umbral_garsia,
    umbral_inverse,
    umbral_steffensen,
    umbral_steffensen2,
)
from .laguerre import (
    LaguerreParams,
    degenerate_laguerre_explicit,
    degenerate_laguerre_operator,
    frac_laguerre,
    laguerre_generator,
    laguerre_ode_residual,
)
from .corpus import load_corpus, random_generators
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FLOAT",
    "ModeMismatchError",
    "gbinom",
    "qbinom",
    "DEFAULT_ORDER",
    "PreconditionError",
    "TruncatedSeries",
    "series_from_tail",
    "Polynomial",
    "poly_from_series",
    "NormalForm",
    "OperatorMatrix",
    "WindowUnderflowError",
    "apply_op",
    "compose_ops",
    "composition_operator",
    "exp_loc_nilpotent",
    "first_discrepancy",
    "gen_pow",
    "km_operator",
    "log_unipotent",
    "normal_form",
    "nth_pincherle",
    "op_from_normal_form",
    "op_inverse",
    "ops_equal",
    "pincherle_derivative",
    "CONSTRUCTIONS",
    "UmbralOperator",
    "UmbralSpec",
    "delta_operator",
    "extract_generator_field",
    "flow",
    "frac_power",
    "fractional_iterate",
    "itlog",
    "julia_residual",
    "koenigs_coordinate",
    "umbral_bucc",
    "umbral_exp_itlog",
    "umbral_garsia",
    "umbral_inverse",
    "umbral_steffensen",
    "umbral_steffensen2",
    "LaguerreParams",
    "degenerate_laguerre_explicit",
    "degenerate_laguerre_operator",
    "frac_laguerre",
    "laguerre_generator",
    "laguerre_ode_residual",
    "load_corpus",
    "random_generators",
    "run_verify",
]
