"""Exact-arithmetic toolkit for 3-fold hypersurface singularity germs.

Classification of germs (smooth, ADE, compound-A), weight-respecting normal
forms with verified witnesses, divisorial-contraction censuses, and
weighted-blowup charts with discrepancies and lift checks.  All arithmetic
is exact over the rationals; analytic germs are modeled as jets at the
finite-determinacy order.
"""

from .blowup import (
    AMBIENT,
    BlowupChart,
    LiftCertificate,
    algebraize,
    charts,
    discrepancy,
    lift_check,
    strict_transform,
)
from .classify import (
    SingTag,
    SingularityReport,
    cA_index,
    classify_simple,
    germ_report,
    is_simple,
)
from .contractions import (
    COUNTABLY_INFINITE,
    UNCOUNTABLE,
    ContractionCensus,
    ContractionClass,
    MembershipRejection,
    admissible_weight_systems,
    decide_membership,
    enumerate_contractions,
    family_witness,
)
from .errors import GermError, ParseError
from .milnor import MilnorData, determinacy_truncate, milnor_data, milnor_number
from .normal_form import (
    MarkedNormalForm,
    reduce_to_simple,
    split_off,
    split_quadratic,
    weighted_normal_form,
)
from .parsing import parse_polynomial
from .poly import (
    Polynomial,
    WeightVector,
    format_polynomial,
    jacobian_generators,
    multiplicity,
    quadratic_rank,
    quasihomogeneous_part,
    weight,
)
from .substitution import (
    JetSubstitution,
    compose,
    invert_jet,
    substitute_jet,
    verify_weight_respecting,
)

__all__ = [
    "AMBIENT",
    "BlowupChart",
    "COUNTABLY_INFINITE",
    "ContractionCensus",
    "ContractionClass",
    "GermError",
    "JetSubstitution",
    "LiftCertificate",
    "MarkedNormalForm",
    "MembershipRejection",
    "MilnorData",
    "ParseError",
    "Polynomial",
    "SingTag",
    "SingularityReport",
    "UNCOUNTABLE",
    "WeightVector",
    "admissible_weight_systems",
    "algebraize",
    "cA_index",
    "charts",
    "classify_simple",
    "compose",
    "decide_membership",
    "determinacy_truncate",
    "discrepancy",
    "enumerate_contractions",
    "family_witness",
    "format_polynomial",
    "germ_report",
    "invert_jet",
    "is_simple",
    "jacobian_generators",
    "lift_check",
    "milnor_data",
    "milnor_number",
    "multiplicity",
    "parse_polynomial",
    "quadratic_rank",
    "quasihomogeneous_part",
    "reduce_to_simple",
    "split_off",
    "split_quadratic",
    "strict_transform",
    "substitute_jet",
    "verify_weight_respecting",
    "weight",
    "weighted_normal_form",
]
