"""Exact workbench for birational maps of 3-space preserving z0*dz1 + dz2.

Everything is exact rational arithmetic: polynomials and rational functions
in z0..z3 over the rationals, differential forms up to degree 3, rational
maps in three arities, the contact analysis (multiplier, directional
invariant, regularity at infinity), plane-map lifts through rational
exactness, the worked-example catalog, and degree-growth bookkeeping.
"""

from .algebra import (
    Poly,
    Rat,
    SquarefreeDecomposition,
    canonical,
    canonical_string,
    derive,
    div_exact,
    divides,
    gcd,
    is_squarefree,
    poly_string,
    rat_string,
    reduce,
    squarefree,
    substitute,
    valuation,
)
from .catalog import (
    CatalogEntry,
    Expected,
    aut_p3_contact,
    blow_down_chart_map,
    format_catalog,
    horizontal_flow,
    jonquieres_eta,
    jonquieres_exact,
    klein_embed,
    lambda_family,
    legendre_family,
    legendre_involution,
    lookup,
    monomial_eta,
    parse_catalog,
    pgl2_contact,
    potential_shear,
    quadratic_tau,
    registry,
    transported_infinity_form,
)
from .contact import (
    INFINITY,
    ContactReport,
    RegularityVerdict,
    alpha_of,
    analyze,
    cocycle_check,
    contraction_multiplicity,
    invariant_multiplier_check,
    multiplier_at_infinity,
    multiplier_of,
    regular_at_infinity,
    z_field,
)
from .errors import (
    AllSamplesIndeterminate,
    ArityError,
    ChartMismatch,
    DegenerateEmbedding,
    DegreeOverflow,
    DivisionByZero,
    HInftyMoved,
    InconsistentPDE,
    IndeterminateComposition,
    InputError,
    InternalCheckError,
    InvalidDivisor,
    KleinFamily,
    MathFalse,
    NonDominant,
    NotClosed,
    NotContact,
    NotEtaPreserving,
    NotExact,
    NotPeriodic,
    NotPeriodicWindow,
    NotPolynomialAutomorphism,
    ParseError,
    SingularFraction,
    UpsilonViolation,
    WindowTooSmall,
    WorkbenchError,
    ZeroPolynomial,
    ZeroScale,
)
from .forms import (
    AFFINE,
    HOMOGENEOUS,
    DiffForm,
    VectorField,
    contract,
    d_var,
    eta,
    exterior_derivative,
    form_string,
    from_function,
    omega,
    omega_bar,
    pullback,
    reeb_field,
    theta_tilde,
    wedge,
    zero_form,
)
from .growth import (
    DegreeSequence,
    EmbeddingDegreeReport,
    GrowthClass,
    classify_growth,
    degree_sequence,
    embedding_degree_report,
    same_order_check,
)
from .lifts import (
    ExactnessResult,
    HermiteSplit,
    exactness_test,
    finite_order_lift,
    hermite_reduce,
    lift_form,
    sigma_lift,
    sigma_lift_contact,
)
from .maps import (
    AFFINE3,
    CONTACT_PLANE,
    HOMOGENEOUS4,
    KLEIN_PLANE,
    PLANE,
    HInftyAction,
    RationalMap,
    SampleEvidence,
    affine_map,
    compose,
    hinfty_action,
    homogeneous_map,
    homogenize,
    identity_map,
    iterate,
    jacobian_det,
    map_degree,
    map_string,
    normalize_projective_point,
    plane_map,
    rebind_plane,
    verify_inverse,
)
from .parsing import parse_expression, parse_form, parse_map

__all__ = [name for name in dir() if not name.startswith("_")]
