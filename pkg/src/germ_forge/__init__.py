"""Exact kernels for algebraic approximation of analytic germs.

Generalized discriminants, the normal-system cascade and its deformation,
a Zariski-equisingularity checker, the tangency map ``phi_m`` and
truncated arc-space certificates, all over exact rationals (or Gaussian
rationals in complex mode).
"""

from .arcs import (
    JetSystem,
    MembershipCertificate,
    TruncatedArc,
    compare_arc_spaces,
    jet_equations,
    member_trunc,
    replay_certificate,
)
from .cascade import DeformationFamily, NormalSystem, build_cascade, build_deformation, constant_family
from .discriminants import (
    GenDiscVector,
    distinct_root_count,
    first_nonvanishing,
    gen_disc_oracle,
    gen_discriminants,
)
from .equisingularity import EquisingVerdict, check_system, divides_to_order, replay_witness
from .errors import (
    GermForgeError,
    JetBeyondTruncation,
    MalformedFamily,
    NotRegular,
    RegularDirectionExhausted,
    TruncationTooCoarse,
)
from .parser import ParseError, parse_list, parse_poly
from .poly import Poly
from .scalars import COMPLEX, REAL, QQi, gaussian
from .series import (
    LinearChange,
    PseudoPoly,
    TruncSeries,
    Vanishing,
    find_regular_direction,
    jet,
    ord_at_origin,
    substitute,
)
from .serialize import from_json
from .tangency import TangencyMap, apply_to_arc, make_phi, verify_tangency
from .weierstrass import weierstrass_prepare

__version__ = "0.1.0"

__all__ = [
    "COMPLEX", "REAL", "QQi", "gaussian", "Poly", "TruncSeries", "PseudoPoly", "LinearChange",
    "Vanishing", "ord_at_origin", "jet", "substitute", "find_regular_direction", "weierstrass_prepare",
    "GenDiscVector", "gen_disc_oracle", "gen_discriminants", "first_nonvanishing", "distinct_root_count",
    "NormalSystem", "DeformationFamily", "build_cascade", "build_deformation", "constant_family",
    "EquisingVerdict", "check_system", "divides_to_order", "replay_witness",
    "TruncatedArc", "JetSystem", "MembershipCertificate", "jet_equations", "member_trunc",
    "replay_certificate", "compare_arc_spaces",
    "TangencyMap", "make_phi", "verify_tangency", "apply_to_arc",
    "parse_poly", "parse_list", "ParseError", "from_json",
    "GermForgeError", "JetBeyondTruncation", "MalformedFamily", "NotRegular",
    "RegularDirectionExhausted", "TruncationTooCoarse",
]
