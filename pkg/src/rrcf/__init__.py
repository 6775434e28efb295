"""High-precision evaluation, recognition and certification for the Rogers-Ramanujan continued fraction."""

from .catalog import A_VALUES, CATALOG, POLYNOMIALS, ClosedFormEntry, KnownPolynomial
from .invariants import (
    G_4n_from_G,
    G_from_g,
    G_from_lambda_star,
    alpha_from_G,
    g_of_4n,
    klein_J,
    lambda_of_tau,
    lambda_star,
    lambda_star_from_G,
    lambda_star_from_g,
    lambda_star_quarter,
    ramanujan_G,
    ramanujan_g,
)
from .precision import (
    ConvergenceError,
    DomainError,
    MismatchError,
    PrecisionCtx,
    PreconditionError,
    Real,
    RRCFError,
    SingularityError,
    SurdArg,
)
from .qseries import eval_f_neg_q, eval_R_cf, eval_R_product, eval_theta2, eval_theta3
from .recognition import AlgebraicCandidate, FieldElement, recognize_in_field, recognize_minpoly, select_root, yi_recognize
from .verify import Certificate, check_companion, check_icosahedral, check_order25, check_recursions, reproduce_theorem, yi_map

__version__ = "0.1.0"
