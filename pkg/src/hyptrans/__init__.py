"""hyptrans: hypergeometric fractional-integral and generalized Stieltjes
transforms, with a numerical verification harness.

The package evaluates the Gauss hypergeometric function and the six
explicit solutions of its differential equation on the real line, encodes
the classical parameter-shifting integral transforms between those
solutions as a machine-readable catalog, and verifies every identity by
double-exponential quadrature against its closed form.
"""

__version__ = "0.1.0"

from .errors import (
    ConstraintError,
    ConvergenceError,
    DomainError,
    HyptransError,
    NoConvergenceError,
    NonIntegrableError,
    PoleError,
    SamplerExhaustedError,
    UnknownCaseError,
    UnknownIdentityError,
)
from .special import (
    GammaRatioSpec,
    HypParams,
    gamma_ratio,
    gauss_sum,
    hyp2f1,
    hyp2f1_raw,
    hyp3f2,
    ln_abs_gamma,
    pochhammer,
)
from .solutions import SolutionKind, domain_of, eval_w
from .diffop import (
    SmoothFn,
    TransmutationCase,
    TRANSMUTATION_CASES,
    adjoint_residual,
    apply_D,
    apply_L,
    d2f1,
    kernel_residual,
    solution_fn,
)
from .quadrature import (
    SingularIntegrand,
    integrate_finite,
    integrate_semi_infinite,
)
from .catalog import (
    ClosedFormSpec,
    Family,
    IdentitySpec,
    IntegralSpec,
    IntervalKind,
    ParamPoint,
    build_catalog,
    catalog,
    catalog_to_dict,
    get_identity,
    realize_lhs,
    realize_rhs,
    sample_params,
)
from .harness import (
    VerificationReport,
    verify_all,
    verify_identity,
    verify_transmutation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
