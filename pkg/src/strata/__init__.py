"""Exact support computations and build verdicts for complexes and DG-modules
over non-positive DG-rings."""

from .field import QQ, GF, Field
from .poly import PolyRing, Poly, ParseError, polynomial_ring
from .groebner import (
    Ideal,
    GroebnerBudgetExceeded,
    groebner_basis,
    normal_form,
    radical_member,
    module_syzygies,
    module_lift,
    spair_budget,
)
from .complexes import (
    PresentedRing,
    RationalPoint,
    FPModule,
    FreeComplex,
    CohomologyTable,
    validate_complex,
    cohomology,
    fiber_dims,
    koszul_complex,
    tensor_complexes,
    smart_truncate,
    truncation_triangle,
)
from .dg import (
    DGAlgebra,
    DGModule,
    RestrictedModule,
    validate_dg,
    validate_dgmod,
    underlying_complex,
    dg_cohomology,
    reduce_to_h0,
    free_module,
    koszul_algebra,
    koszul_module,
    cone_identity,
    dg_tensor,
    shift,
)
from .tate import TateResolution, tate_resolve, coreduction, InsufficientDepth
from .verdicts import (
    SupportIdeal,
    SpecializationClosedSet,
    Verdict,
    support_of,
    supp_contains,
    support_equal,
    builds,
    finitely_builds,
    tensor_support_check,
    reduction_supp_check,
    thick_membership,
)
from .session import Session, SessionError, parse_session, format_session, elaborate, run_session

__version__ = "0.1.0"
