"""Exact finite verification that the intermediate Jacobian of the symmetric
quartic double solid is not a direct sum of Jacobians of curves.

The library decomposes into exact cyclotomic arithmetic, a monomial-symmetry
group engine, the induced action on anticanonical section monomials, genus
bookkeeping for curve quotients, and an orchestrator that replays the
case-by-case exclusion argument and emits an auditable proof certificate.
"""

from .axioms import AXIOM_CATALOG, axiom_statement
from .certificates import (
    CaseCertificate,
    ClaimNode,
    TheoremCertificate,
    emit_certificate,
    parse_certificate,
    validate_certificate,
)
from .curves import (
    Exclusion,
    Feasibility,
    GenusBoundResult,
    HurwitzScenario,
    OrbitCatalog,
    elliptic_invariant_set_feasible,
    genus2_canonical_exclusion,
    genus2_group_exclusion,
    hurwitz_genus,
    min_genus_bound,
    p1_invariant_set_feasible,
    p1_orbit_catalogs,
    weierstrass_orbit_argument,
)
from .cyclotomic import (
    CycInt,
    RootOfUnity,
    cyc_add,
    cyc_conj,
    cyc_mul,
    cyclotomic_polynomial,
    is_rational_integer,
    phi,
    root_order,
)
from .errors import (
    BoundExceeded,
    CertificateError,
    ConventionMismatch,
    DegreeError,
    DivisibilityError,
    DsolidError,
    InternalInconsistency,
    InvalidScenario,
    ModelError,
    ModelSyntaxError,
    ModulusError,
    NormalityError,
    NotASymmetry,
    NotDiagonal,
    ReducibleSummand,
    SignatureError,
    SubgroupError,
    UnknownVariableError,
    UnsupportedParameter,
)
from .groups import (
    AmbientSignature,
    GroupTable,
    MonomialSymmetry,
    closure,
    compose,
    conjugation_power,
)
from .modelfile import ParsedModel, builtin_model_path, load_model, parse_model
from .sections import (
    Character,
    QuarticTerm,
    RepMatrix,
    SectionAction,
    VarietyModel,
    all_primitive,
    attainable_invariant_dims,
    basis_names,
    decompose,
    degree2_basis,
    induced_action,
    inner_product,
    semi_invariance_scalar,
)
from .theorem import (
    ProofContext,
    enumerate_orbit_sizes,
    replay_certificate,
    verify_case,
    verify_theorem,
    verify_with_context,
)

__version__ = "0.1.0"
