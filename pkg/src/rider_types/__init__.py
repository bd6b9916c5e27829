"""Combinatorial types of non-attacking riders: closed-form bounds and exact counts."""

from .bounds import (
    BoundsReport,
    bounds_report,
    generate_table,
    permutations_lower,
    problem_spaces,
    spaces_closed,
    spaces_recurrence,
    t_lower,
    t_upper,
)
from .geometry import (
    QUEEN,
    ROOK,
    Direction,
    MoveSet,
    Placement,
    Signature,
    canonicalize_signature,
    default_moveset,
    is_attacking,
    normalize_direction,
    parse_moveset,
    region_of,
    relabel_signature,
    side_sign,
    signature_of,
)
from .oracle import census, realize_type, sandwich_check

__all__ = [
    "BoundsReport", "bounds_report", "generate_table", "permutations_lower", "problem_spaces",
    "spaces_closed", "spaces_recurrence", "t_lower", "t_upper", "QUEEN", "ROOK", "Direction",
    "MoveSet", "Placement", "Signature", "canonicalize_signature", "default_moveset",
    "is_attacking", "normalize_direction", "parse_moveset", "region_of", "relabel_signature",
    "side_sign", "signature_of", "census", "realize_type", "sandwich_check",
]
