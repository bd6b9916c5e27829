"""Closed-form space counts and the lower/upper bounds on type counts.

All quantities are exact: integers or :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Published middle values quoted alongside the bounds; not derived here.
REFERENCE_VALUES = {
    (4, 3): {"value": 151, "source": "Kotesovec, Non-attacking chess pieces (2013)", "queen_only": False},
    (4, 4): {"value": 574, "source": "Kotesovec, Non-attacking chess pieces (2013)", "queen_only": True},
    (5, 3): {"value": 1899, "source": "Kotesovec, Non-attacking chess pieces (2013)", "queen_only": False},
    (5, 4): {"value": 14206, "source": "Kotesovec, Non-attacking chess pieces (2013)", "queen_only": True},
    (6, 3): {"value": 31709, "source": "Kotesovec, Non-attacking chess pieces (2013)", "queen_only": False},
    (6, 4): {"value": 501552, "source": "Kotesovec, Non-attacking chess pieces (2013)", "queen_only": True},
}

UPPER_BOUND_NOTE = (
    "upper bound evaluated literally: the n=1 factor carries the extra term "
    "r(r-1)(r-2)(n-2)(n-3)/2 = r(r-1)(r-2)"
)


def _check(q: int, r: int) -> None:
    if q < 1 or r < 1:
        raise ValueError(f"q and r must be positive (got q={q}, r={r})")


def spaces_recurrence(q: int, r: int) -> int:
    _check(q, r)
    s = 2 * r
    for n in range(2, q + 1):
        s += (2 * r - 1) + r * (r - 1) * (n - 1)
    return s


def spaces_closed(q: int, r: int) -> int:
    _check(q, r)
    return q * (q + 1) // 2 * (r * r - r) + q * (-r * r + 3 * r - 1) + 1


def permutations_lower(q: int, r: int) -> int:
    _check(q, r)
    return math.prod(spaces_closed(n, r) for n in range(1, q))


def problem_spaces(q: int, r: int) -> int:
    """Literal value of r(r-1)(r-2)(q-2)(q-3)/2, also for q = 1."""
    _check(q, r)
    return r * (r - 1) * (r - 2) * (q - 2) * (q - 3) // 2


def upper_applicable(q: int, r: int) -> bool:
    return q >= 4 and r >= 3


def t_lower(q: int, r: int) -> Fraction:
    return Fraction(permutations_lower(q, r), math.factorial(q))


def permutations_upper(q: int, r: int) -> int:
    return math.prod(spaces_closed(n, r) + problem_spaces(n, r) for n in range(1, q))


def t_upper(q: int, r: int) -> Fraction:
    _check(q, r)
    if not upper_applicable(q, r):
        return t_lower(q, r)
    return Fraction(permutations_upper(q, r), math.factorial(q))


@dataclass(frozen=True)
class BoundsReport:
    q: int
    r: int
    spaces: int
    permutations_lower: int
    problem_spaces: int
    t_lower: Fraction
    t_upper: Fraction
    upper_applicable: bool

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "r": self.r,
            "spaces": self.spaces,
            "permutations_lower": self.permutations_lower,
            "problem_spaces": self.problem_spaces,
            "t_lower": fraction_text(self.t_lower),
            "t_lower_decimal": decimal_text(self.t_lower),
            "t_upper": fraction_text(self.t_upper),
            "t_upper_decimal": decimal_text(self.t_upper),
            "upper_applicable": self.upper_applicable,
        }
        if self.upper_applicable:
            out["note"] = UPPER_BOUND_NOTE
        ref = REFERENCE_VALUES.get((self.q, self.r))
        if ref is not None:
            out["external_reference"] = dict(ref)
        return out


def bounds_report(q: int, r: int) -> BoundsReport:
    return BoundsReport(
        q=q,
        r=r,
        spaces=spaces_closed(q, r),
        permutations_lower=permutations_lower(q, r),
        problem_spaces=problem_spaces(q, r),
        t_lower=t_lower(q, r),
        t_upper=t_upper(q, r),
        upper_applicable=upper_applicable(q, r),
    )


def generate_table(q_max: int, r_max: int) -> list[list[BoundsReport]]:
    """Rows q = 1..q_max, columns r = 1..r_max."""
    if q_max < 1 or r_max < 1:
        raise ValueError("table dimensions must be positive")
    return [[bounds_report(q, r) for r in range(1, r_max + 1)] for q in range(1, q_max + 1)]


def fraction_text(v) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def decimal_text(v) -> str:
    """Exact decimal expansion when it terminates, else ``num/den``."""
    v = Fraction(v)
    den = v.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return fraction_text(v)
    digits = max(twos, fives)
    if digits == 0:
        return str(v.numerator)
    scaled = abs(v.numerator) * 10**digits // v.denominator
    sign = "-" if v < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def table_rows(table: list[list[BoundsReport]]) -> list[dict]:
    return [cell.to_json() for row in table for cell in row]


CSV_FIELDS = ("q", "r", "spaces", "t_lower", "t_lower_decimal", "t_upper", "t_upper_decimal",
              "upper_applicable", "external_reference")


def table_csv_rows(table: list[list[BoundsReport]]) -> list[dict]:
    rows = []
    for cell in (c for row in table for c in row):
        data = cell.to_json()
        ref = data.get("external_reference")
        data["external_reference"] = (
            f"{ref['value']}{' (queen)' if ref['queen_only'] else ''}" if ref else ""
        )
        rows.append({k: data[k] for k in CSV_FIELDS})
    return rows
