"""Ground-truth counts of combinatorial types by chamber enumeration.

With rider 1 pinned at the origin, every (pair, move) gives a homogeneous
linear form ``det(d_m, P_i - P_j)`` in the coordinates of riders 2..q.  Open
chambers of this central arrangement are exactly the recordings of types, so
counting realizable strict sign vectors and quotienting by relabeling gives
the type count.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .bounds import REFERENCE_VALUES, t_lower, t_upper
from .geometry import (
    MoveSet,
    Placement,
    RiderError,
    Signature,
    antipode,
    pair_index,
)
from .lp import strict_witness
from .search import Node, SearchStats, frontier, iter_leaves, root


class InfeasibleError(RiderError):
    pass


DEFAULT_Q_LIMIT = 4
STRETCH_Q_LIMIT = 5


@dataclass(frozen=True)
class ConstraintSystem:
    q: int
    moves: MoveSet
    forms: tuple[tuple[int, ...], ...]
    index: tuple[tuple[int, int, int], ...]  # (j, i, m) per form, 1-based pieces, 0-based move

    @property
    def dimension(self) -> int:
        return 2 * (self.q - 1)

    @property
    def r(self) -> int:
        return self.moves.r

    def __len__(self) -> int:
        return len(self.forms)


def coordinate_form(q: int, j: int, i: int, dx: int, dy: int) -> list[int]:
    """Coefficients of ``det((dx, dy), P_i - P_j)`` over ``(x_2, y_2, ..., x_q, y_q)``."""
    a = [0] * (2 * (q - 1))
    for piece, s in ((i, 1), (j, -1)):
        if piece >= 2:
            a[2 * (piece - 2)] -= s * dy
            a[2 * (piece - 2) + 1] += s * dx
    return a


def build_constraints(q: int, moves: MoveSet) -> ConstraintSystem:
    if q < 2:
        raise ValueError("the constraint system needs q >= 2")
    forms, index = [], []
    for i in range(2, q + 1):
        for j in range(1, i):
            for m, d in enumerate(moves.directions):
                forms.append(tuple(coordinate_form(q, j, i, d.dx, d.dy)))
                index.append((j, i, m))
    return ConstraintSystem(q, moves, tuple(forms), tuple(index))


def signed_rows(system: ConstraintSystem, signs: Sequence[int]) -> list[list[int]]:
    return [[s * c for c in system.forms[k]] for k, s in enumerate(signs)]


def strict_feasible(system: ConstraintSystem, partial_signs: Sequence[int]) -> Optional[list[int]]:
    """Witness ``x`` with ``sign_k * form_k(x) > 0`` for every assigned sign, else None."""
    if len(partial_signs) > len(system):
        raise ValueError("more signs than forms")
    return strict_witness(signed_rows(system, partial_signs), system.dimension)


def witness_placement(x: Sequence[int], q: int) -> Placement:
    pts = [(Fraction(0), Fraction(0))]
    pts += [(Fraction(x[2 * k]), Fraction(x[2 * k + 1])) for k in range(q - 1)]
    return Placement(tuple(pts))


def _pair_prefilter(system: ConstraintSystem):
    """Reject sign prefixes whose current pair pattern matches no region."""
    r = system.r
    ok_prefixes = set()
    for pattern in system.moves.region_sign_table:
        for k in range(1, r + 1):
            ok_prefixes.add(pattern[:k])

    def check(position: int, signs: tuple[int, ...]) -> bool:
        start = position - position % r
        return signs[start:] in ok_prefixes

    return check


def signs_to_signature(system: ConstraintSystem, signs: Sequence[int]) -> Signature:
    r = system.r
    table = system.moves.region_sign_table
    entries = tuple(table[tuple(signs[k : k + r])] for k in range(0, len(signs), r))
    return Signature(entries, r)


def signature_to_signs(system: ConstraintSystem, sig: Signature) -> tuple[int, ...]:
    if sig.r != system.r or sig.q != system.q:
        raise ValueError(f"signature {sig} does not fit q={system.q}, r={system.r}")
    out = []
    for label in sig.entries:
        out.extend(system.moves.region_signs[label])
    return tuple(out)


@dataclass
class Chamber:
    signs: tuple[int, ...]
    witness: tuple[int, ...]


def _subtree_job(args):
    system, node, shortcut, budget = args
    stats = SearchStats()
    prefilter = _pair_prefilter(system) if shortcut else None
    leaves = [
        Chamber(leaf.signs, tuple(leaf.witness))
        for leaf in iter_leaves(
            node, system.forms, system.dimension, shortcut=shortcut,
            prefilter=prefilter, budget=budget, stats=stats,
        )
    ]
    return leaves, stats.nodes, stats.lp_calls


def iter_chambers(
    system: ConstraintSystem,
    *,
    shortcut: bool = True,
    budget: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Iterator[Chamber]:
    start = root(system.dimension)
    prefilter = _pair_prefilter(system) if shortcut else None
    for leaf in iter_leaves(
        start, system.forms, system.dimension, shortcut=shortcut,
        prefilter=prefilter, budget=budget, stats=stats,
    ):
        yield Chamber(leaf.signs, tuple(leaf.witness))


def enumerate_chambers(
    system: ConstraintSystem,
    *,
    shortcut: bool = True,
    budget: Optional[int] = None,
    workers: int = 1,
    stats: Optional[SearchStats] = None,
) -> list[Chamber]:
    """All realizable full sign vectors, in lexicographic (+ before -) order.

    With ``workers > 1`` the search tree is cut into independent subtrees that
    run in separate processes; results are concatenated in tree order, so the
    output does not depend on the worker count.
    """
    stats = stats if stats is not None else SearchStats()
    if workers <= 1:
        return list(iter_chambers(system, shortcut=shortcut, budget=budget, stats=stats))
    from .search import BudgetExceededError

    prefilter = _pair_prefilter(system) if shortcut else None
    start = root(system.dimension)
    jobs = frontier(
        start, system.forms, system.dimension, 8 * workers,
        shortcut=shortcut, prefilter=prefilter, stats=stats,
    )
    out: list[Chamber] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = pool.map(_subtree_job, [(system, node, shortcut, budget) for node in jobs])
        for leaves, nodes, lps in results:
            out.extend(leaves)
            stats.nodes += nodes
            stats.lp_calls += lps
    if budget is not None and stats.nodes > budget:
        raise BudgetExceededError(budget, len(out))
    return out


def count_chambers(system: ConstraintSystem, **kwargs) -> int:
    return len(enumerate_chambers(system, **kwargs))


# -- relabeling on raw label tuples (hot path of the census) -------------------


def _relabel_maps(q: int) -> list[tuple[tuple[int, bool], ...]]:
    """For each permutation, (source position, flipped) per new entry."""
    maps = []
    for perm in itertools.permutations(range(1, q + 1)):
        spec = []
        for i in range(2, q + 1):
            for j in range(1, i):
                a, b = perm[j - 1], perm[i - 1]
                if a < b:
                    spec.append((pair_index(a, b), False))
                else:
                    spec.append((pair_index(b, a), True))
        maps.append(tuple(spec))
    return maps


@dataclass
class TypeCensus:
    q: int
    r: int
    moves: MoveSet
    chamber_count: int
    type_count: int
    freeness_violations: list[Signature] = field(default_factory=list)
    signatures: Optional[list[Signature]] = None
    runtime: float = 0.0

    @property
    def divisible(self) -> bool:
        return self.chamber_count == math.factorial(self.q) * self.type_count

    def to_json(self) -> dict:
        lo, hi = t_lower(self.q, self.r), t_upper(self.q, self.r)
        ref = REFERENCE_VALUES.get((self.q, self.r))
        out = {
            "q": self.q,
            "r": self.r,
            "moveset": self.moves.to_text(),
            "chamber_count": self.chamber_count,
            "type_count": self.type_count,
            "t_lower": _frac(lo),
            "t_upper": _frac(hi),
            "sandwich_ok": lo <= self.type_count <= hi,
            "divisible": self.divisible,
            "freeness_violations": [str(s) for s in self.freeness_violations],
        }
        if ref is not None:
            out["external_reference"] = {
                "value": ref["value"],
                "source": ref["source"],
                "queen_only": ref["queen_only"],
                "agrees": ref["value"] == self.type_count,
            }
        out["runtime"] = round(self.runtime, 3)
        return out


def _frac(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def census(
    q: int,
    moves: MoveSet,
    *,
    budget: Optional[int] = None,
    workers: int = 1,
    shortcut: bool = True,
    keep_signatures: bool = False,
    stretch: bool = False,
) -> TypeCensus:
    """Count chambers and combinatorial types of ``q`` riders with ``moves``."""
    limit = STRETCH_Q_LIMIT if stretch else DEFAULT_Q_LIMIT
    if q > limit:
        from .geometry import ResourceLimitError

        raise ResourceLimitError(
            f"q={q} exceeds the tractable limit q <= {limit}"
            + ("" if stretch else " (pass stretch=True for q=5)")
        )
    if q < 1:
        raise ValueError("q must be >= 1")
    t0 = time.perf_counter()
    r = moves.r
    if q == 1:
        return TypeCensus(1, r, moves, 1, 1, [], [Signature((), r)] if keep_signatures else None,
                          time.perf_counter() - t0)
    system = build_constraints(q, moves)
    chambers = enumerate_chambers(system, shortcut=shortcut, budget=budget, workers=workers)
    maps = _relabel_maps(q)
    ident = maps[0]
    canon_set = set()
    violations = []
    table = moves.region_sign_table
    for ch in chambers:
        labels = tuple(table[ch.signs[k : k + r]] for k in range(0, len(ch.signs), r))
        anti = [antipode(v, r) for v in labels]
        best = labels
        fixed = 0
        for spec in maps:
            cand = tuple(anti[p] if flip else labels[p] for p, flip in spec)
            if cand < best:
                best = cand
            if spec is not ident and cand == labels:
                fixed += 1
        if fixed:
            violations.append(Signature(labels, r))
        canon_set.add(best)
    sigs = None
    if keep_signatures:
        sigs = [Signature(e, r) for e in sorted(canon_set)]
    return TypeCensus(
        q, r, moves, len(chambers), len(canon_set), violations, sigs, time.perf_counter() - t0
    )


def realize_type(sig: Signature, moves: MoveSet) -> Placement:
    """Exact placement, rider 1 at the origin, whose recording is exactly ``sig``."""
    if sig.r != moves.r:
        raise ValueError("signature and moveset disagree on r")
    q = sig.q
    if q == 1:
        return Placement(((Fraction(0), Fraction(0)),))
    system = build_constraints(q, moves)
    x = strict_feasible(system, signature_to_signs(system, sig))
    if x is None:
        raise InfeasibleError(f"signature {sig} is not realizable with moveset {moves.to_text()}")
    return witness_placement(x, q)


@dataclass
class SandwichReport:
    q: int
    r: int
    type_count: int
    t_lower: Fraction
    t_upper: Fraction

    @property
    def ok(self) -> bool:
        return self.t_lower <= self.type_count <= self.t_upper

    @property
    def slack_lower(self) -> Fraction:
        return self.type_count - self.t_lower

    @property
    def slack_upper(self) -> Fraction:
        return self.t_upper - self.type_count


def sandwich_check(q: int, moves: MoveSet, result: Optional[TypeCensus] = None, **kwargs) -> SandwichReport:
    result = result if result is not None else census(q, moves, **kwargs)
    return SandwichReport(q, moves.r, result.type_count, t_lower(q, moves.r), t_upper(q, moves.r))


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("RIDER_TYPES_WORKERS", "1")))
    except ValueError:
        return 1
