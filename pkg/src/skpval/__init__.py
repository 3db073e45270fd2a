"""Exact arithmetic for sequences of key polynomials (SKPs): building the
polynomials from a table of values, computing the attached valuations via
adic and Euclidean expansions, classifying their numerical invariants, and
realizing well-ordered semigroups of positive type as value semigroups.
"""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatchError,
    HypothesisViolatedError,
    InvalidTableError,
    IterationCapError,
    NoCutoffError,
    NonStabilizingError,
    NotInGroupError,
    NotMonicError,
    PolyParseError,
    SchemaError,
    SkpvalError,
    ThetaZeroError,
    UnrealizableError,
    VerificationFailedError,
    ZeroPolyError,
)
from .fields import GF, QQ
from .ordgroup import (
    GroupValue,
    INFINITY,
    Representation,
    canonical_representation,
    isolated_level,
    lex_compare,
    rational_rank,
    subgroup_index,
)
from .valtable import (
    ValueTable,
    compute_relations,
    enumerate_semigroup,
    validate_table,
)
from .poly import MultiPoly, TruncationContext, monic_divide, order_of, parse_poly
from .skp import (
    LimitTail,
    SkpTable,
    build_skp,
    minimal_pseudo_skp,
    unroll_limit,
    validate_acceptable,
)
from .expansion import (
    AdicExpansion,
    AdicMonomial,
    adic_expand,
    euclidean_expand,
    exponent_from_vdeg,
    vdeg_vp,
)
from .valuation import (
    GradedNormalForm,
    SkpValuation,
    delta_of,
    graded_normal_form,
    initial_form,
    stabilization_profile,
    value_of,
    value_via_euclidean,
)
from .classify import (
    InvariantReport,
    PseudoSkpArithmetic,
    RowArithmetic,
    abhyankar_check,
    classify_table1,
    inductive_invariants,
)
from .realize import (
    CORRECTED,
    LITERAL,
    SemigroupSpec,
    analyze_generators,
    rank_jump_check,
    realize,
    reindex,
    verify_realization,
)
