"""Trace forms of symbol algebras and their exterior powers."""

from .errors import *  # noqa: F401,F403
from .exterior import (
    binomial,
    binomial_identities_check,
    exterior_power_bruteforce,
    exterior_power_diagonal,
    exterior_sum_expand,
    hyperbolic_exterior_closed_form,
)
from .fields import (
    cyclo_create,
    gauss_sum_prime,
    gf_create,
    is_square,
    level,
    root_of_unity,
    square_root_of_signed_n,
)
from .paperlab import (
    matrix_algebra_trace_form,
    predict_exterior_trace_form,
    predict_trace_form,
    predict_trace_form_odd_simplified,
    verify,
)
from .quadform import (
    DiagForm,
    QuadForm,
    WittClass,
    diag,
    diagonalize,
    hyperbolic,
    hyperbolic_certificate,
    is_isometric,
    orth_sum,
    scale,
    tensor,
    witt_decompose,
)
from .symalg import (
    SymbolAlgebra,
    find_zero_divisor,
    quaternion_norm_form,
    quaternion_subalgebra,
    reduced_trace,
    regular_rep,
    trace_form,
)

__version__ = "0.1.0"
