"""The planar arrangement of all q*r move lines of a placement.

Cells ("spaces") are counted two ways: by the incidence formula
``1 + L + sum_p (m_p - 1)`` over exact intersection points, and by enumerating
strict sign vectors with the exact LP.  The LP witnesses double as sample
positions for an extra rider, which is how extension profiles are built.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import spaces_closed
from .geometry import (
    Direction,
    InvalidSignatureError,
    MoveSet,
    Placement,
    Point,
    Signature,
    cross,
    signature_of,
)
from .oracle import build_constraints, coordinate_form, signature_to_signs, witness_placement
from .lp import strict_witness
from .search import iter_leaves, root


@dataclass(frozen=True)
class Line:
    direction: Direction
    anchor: Point
    owner: int  # 1-based piece
    move_index: int

    @property
    def coefficients(self) -> tuple[int, int, int]:
        """Integers (a, b, c) with a*X + b*Y + c having the sign of det(d, X - anchor)."""
        dx, dy = self.direction
        px, py = self.anchor
        c = dy * px - dx * py
        k = c.denominator
        return (-dy * k, dx * k, c.numerator)

    def value(self, p: Sequence) -> Fraction:
        dx, dy = self.direction
        return cross(dx, dy, Fraction(p[0]) - self.anchor[0], Fraction(p[1]) - self.anchor[1])


@dataclass(frozen=True)
class LineSet:
    lines: tuple[Line, ...]
    moves: MoveSet
    q: int

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)


@dataclass(frozen=True)
class CellWitness:
    point: Point
    cell_signs: tuple[int, ...]


@dataclass(frozen=True)
class ExtensionProfile:
    base_signature: Signature
    extensions: frozenset[tuple[int, ...]]

    def extended(self, ext: Sequence[int]) -> Signature:
        """The (q+1)-piece recording with the new rider last."""
        return Signature(self.base_signature.entries + tuple(ext), self.base_signature.r)

    def sorted_extensions(self) -> list[tuple[int, ...]]:
        return sorted(self.extensions)


def build_lines(placement: Placement, moves: MoveSet) -> LineSet:
    placement.check(moves)
    lines = tuple(
        Line(d, p, k + 1, m)
        for k, p in enumerate(placement.points)
        for m, d in enumerate(moves.directions)
    )
    return LineSet(lines, moves, placement.q)


def intersection(l1: Line, l2: Line) -> Optional[Point]:
    a1, b1, c1 = l1.coefficients
    a2, b2, c2 = l2.coefficients
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    x = Fraction(b1 * c2 - b2 * c1, det)
    y = Fraction(a2 * c1 - a1 * c2, det)
    return (x, y)


def incidences(lines: LineSet) -> dict[Point, set[int]]:
    """Every intersection point with the indices of the lines through it."""
    pts: dict[Point, set[int]] = {}
    ls = lines.lines
    for i, j in itertools.combinations(range(len(ls)), 2):
        p = intersection(ls[i], ls[j])
        if p is not None:
            pts.setdefault(p, set()).update((i, j))
    return pts


def count_cells(lines: LineSet) -> int:
    pts = incidences(lines)
    return 1 + len(lines) + sum(len(s) - 1 for s in pts.values())


def is_generic(placement: Placement, moves: MoveSet) -> bool:
    """No three lines concurrent except the r lines through each rider."""
    lines = build_lines(placement, moves)
    riders = set(placement.points)
    for p, through in incidences(lines).items():
        if len(through) == 2:
            continue
        if p in riders and len(through) == moves.r:
            continue
        return False
    return True


def enumerate_cells(lines: LineSet, *, shortcut: bool = True) -> list[CellWitness]:
    """One exact interior witness per open cell, via sign-vector branch and prune.

    Points are homogenised as (X, Y, t) with t > 0 so the kernel only ever
    sees homogeneous strict systems.
    """
    forms = [tuple(l.coefficients) for l in lines]
    start = root(3, [(0, 0, 1)])
    out = []
    for leaf in iter_leaves(start, forms, 3, shortcut=shortcut):
        x, y, t = leaf.witness
        out.append(CellWitness((Fraction(x, t), Fraction(y, t)), leaf.signs))
    return out


def cell_signs_at(lines: LineSet, point: Sequence) -> tuple[int, ...]:
    out = []
    for l in lines:
        v = l.value(point)
        out.append((v > 0) - (v < 0))
    return tuple(out)


def extension_of_signs(lines: LineSet, signs: Sequence[int]) -> tuple[int, ...]:
    """Regions, relative to riders 1..q, of a point with the given cell signs."""
    r = lines.moves.r
    table = lines.moves.region_sign_table
    return tuple(table[tuple(signs[k : k + r])] for k in range(0, len(signs), r))


def extension_profile(placement: Placement, moves: MoveSet) -> ExtensionProfile:
    lines = build_lines(placement, moves)
    base = signature_of(placement, moves)
    exts = frozenset(extension_of_signs(lines, c.cell_signs) for c in enumerate_cells(lines))
    return ExtensionProfile(base, exts)


# -- problem spaces -----------------------------------------------------------


def concurrency_forms(q: int, moves: MoveSet) -> list[tuple[int, ...]]:
    """Homogeneous forms in (x_2, y_2, ..., x_q, y_q) that vanish when three
    lines owned by three distinct riders pass through one point."""
    dirs = moves.directions
    seen = set()
    out = []
    for owners in itertools.combinations(range(1, q + 1), 3):
        for ms in itertools.permutations(range(len(dirs)), 3):
            # line k: n_k . X = c_k with n_k = (-dy, dx), c_k linear in the owner's point
            ns = [(-dirs[m].dy, dirs[m].dx) for m in ms]
            # with rider 1 at the origin, c_k = det(d, P_o) = coordinate_form(q, 1, o, d)
            cs = [coordinate_form(q, 1, o, dirs[m].dx, dirs[m].dy) for o, m in zip(owners, ms)]
            cof = [
                cross(*ns[1], *ns[2]),
                -cross(*ns[0], *ns[2]),
                cross(*ns[0], *ns[1]),
            ]
            form = [sum(cof[k] * cs[k][v] for k in range(3)) for v in range(2 * (q - 1))]
            g = 0
            for v in form:
                g = math.gcd(g, v)
            if g == 0:
                continue
            form = [v // g for v in form]
            first = next(v for v in form if v)
            if first < 0:
                form = [-v for v in form]
            key = tuple(form)
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out


def refine_chamber(sig: Signature, moves: MoveSet) -> list[Placement]:
    """One placement per open sub-cone of the chamber of ``sig`` cut by all
    three-line concurrency hyperplanes.  Extension profiles are constant on
    each sub-cone, so this list sees every profile the type admits."""
    q = sig.q
    if q < 2:
        return [Placement(((Fraction(0), Fraction(0)),))]
    system = build_constraints(q, moves)
    signs = signature_to_signs(system, sig)
    fixed = [[s * c for c in f] for s, f in zip(signs, system.forms)]
    start = root(system.dimension, fixed)
    if start is None:
        raise InvalidSignatureError(f"signature {sig} is not realizable")
    forms = concurrency_forms(q, moves)
    return [witness_placement(leaf.witness, q) for leaf in iter_leaves(start, forms, system.dimension)]


def perturbed_samples(placement: Placement, moves: MoveSet, count: int, rng: random.Random,
                      extra_forms: Sequence[Sequence[int]] = ()) -> list[Placement]:
    """``count`` placements near ``placement`` with the same signature (and the
    same side of every ``extra_forms`` hyperplane, when given)."""
    base = signature_of(placement, moves)
    q = placement.q
    out = []
    pts = placement.points
    coords = [c for p in pts[1:] for c in (p[0] - pts[0][0], p[1] - pts[0][1])]
    extra_sides = [_sgn(sum(Fraction(a) * c for a, c in zip(f, coords))) for f in extra_forms]
    scale = max((abs(c) for c in coords), default=Fraction(1)) or Fraction(1)
    attempts = 0
    while len(out) < count and attempts < 200 * max(count, 1):
        attempts += 1
        delta = Fraction(rng.randint(1, 64), 64) * scale
        cand = [c + delta * Fraction(rng.randint(-1000, 1000), 1000) for c in coords]
        for _ in range(30):
            p = witness_placement_fractions(cand, q)
            if _same_cone(p, moves, base, extra_forms, extra_sides, cand):
                out.append(p)
                break
            cand = [(c + o) / 2 for c, o in zip(cand, coords)]
    return out


def witness_placement_fractions(coords: Sequence[Fraction], q: int) -> Placement:
    pts = [(Fraction(0), Fraction(0))] + [(coords[2 * k], coords[2 * k + 1]) for k in range(q - 1)]
    return Placement(tuple(pts))


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def _same_cone(p: Placement, moves, base, extra_forms, extra_sides, coords) -> bool:
    try:
        if signature_of(p, moves) != base:
            return False
    except Exception:
        return False
    for f, s in zip(extra_forms, extra_sides):
        if _sgn(sum(Fraction(a) * c for a, c in zip(f, coords))) != s:
            return False
    return True


@dataclass
class ProblemPair:
    first: Placement
    second: Placement
    first_profile: ExtensionProfile
    second_profile: ExtensionProfile

    @property
    def only_first(self) -> list[tuple[int, ...]]:
        return sorted(self.first_profile.extensions - self.second_profile.extensions)

    @property
    def only_second(self) -> list[tuple[int, ...]]:
        return sorted(self.second_profile.extensions - self.first_profile.extensions)


def sampled_profiles(type_sig: Signature, moves: MoveSet, samples_per_cell: int = 8,
                     seed: int = 0, refine: bool = True) -> list[tuple[Placement, ExtensionProfile]]:
    """Sample placements recorded as ``type_sig`` and compute their profiles.

    With ``refine`` the chamber is first cut by the concurrency hyperplanes
    and every sub-cone is sampled; otherwise only the chamber's LP witness and
    its perturbations are used.
    """
    rng = random.Random(seed)
    if refine:
        bases = refine_chamber(type_sig, moves)
    else:
        from .oracle import realize_type

        bases = [realize_type(type_sig, moves)]
    out = []
    for b in bases:
        cands = [b]
        if samples_per_cell > 1:
            cands += perturbed_samples(b, moves, samples_per_cell - 1, rng)
        for p in cands:
            out.append((p, extension_profile(p, moves)))
    return out


def find_problem_pair(type_sig: Signature, moves: MoveSet, samples_per_cell: int = 8,
                      seed: int = 0, refine: bool = True,
                      want: Optional[tuple[Sequence[int], Sequence[int]]] = None) -> Optional[ProblemPair]:
    """Two placements recorded as ``type_sig`` whose extension profiles differ.

    ``want = (ext_a, ext_b)`` prefers a pair where ``ext_a`` is only available
    to the first placement and ``ext_b`` only to the second.  Returns None
    when every sample shares one profile.
    """
    if type_sig.r != moves.r:
        raise InvalidSignatureError("signature and moveset disagree on r")
    samples = sampled_profiles(type_sig, moves, samples_per_cell, seed, refine)
    distinct: dict[frozenset, tuple[Placement, ExtensionProfile]] = {}
    for p, prof in samples:
        distinct.setdefault(prof.extensions, (p, prof))
    if len(distinct) < 2:
        return None
    items = list(distinct.values())
    if want is not None:
        a, b = tuple(want[0]), tuple(want[1])
        for (p1, f1), (p2, f2) in itertools.permutations(items, 2):
            if a in f1.extensions - f2.extensions and b in f2.extensions - f1.extensions:
                return ProblemPair(p1, p2, f1, f2)
    (p1, f1), (p2, f2) = items[0], items[1]
    return ProblemPair(p1, p2, f1, f2)


def extension_census(q: int, moves: MoveSet, samples_per_cell: int = 1, seed: int = 0,
                     refine: bool = False) -> int:
    """Sum over all q-rider chambers of the number of distinct sampled extensions.

    Every counted extension is a realizable (q+1)-rider recording, so the sum
    never exceeds the (q+1) chamber count.
    """
    from .oracle import enumerate_chambers, signs_to_signature

    system = build_constraints(q, moves)
    total = 0
    for ch in enumerate_chambers(system):
        sig = signs_to_signature(system, ch.signs)
        exts = set()
        for _, prof in sampled_profiles(sig, moves, samples_per_cell, seed, refine):
            exts |= prof.extensions
        total += len(exts)
    return total


# -- space-count audit --------------------------------------------------------


def random_placement(q: int, moves: MoveSet, rng: random.Random, magnitude: int = 1000,
                     denominator: int = 7, generic: bool = True, max_tries: int = 10_000) -> Placement:
    for _ in range(max_tries):
        pts = set()
        while len(pts) < q:
            pts.add((Fraction(rng.randint(-magnitude, magnitude), denominator),
                     Fraction(rng.randint(-magnitude, magnitude), denominator)))
        p = Placement(tuple(sorted(pts)))
        try:
            p.check(moves)
        except ValueError:
            continue
        if not generic or is_generic(p, moves):
            return p
    raise RuntimeError("could not sample a placement; widen the coordinate range")


def forced_concurrence_placement(q: int, moves: MoveSet, rng: random.Random,
                                 magnitude: int = 1000, denominator: int = 7) -> Placement:
    """A non-attacking placement where the last rider's line passes through the
    crossing of two lines from two other riders (needs q >= 3, r >= 3)."""
    if q < 3 or moves.r < 3:
        raise ValueError("three-line concurrences away from riders need q >= 3 and r >= 3")
    dirs = moves.directions
    for _ in range(10_000):
        base = random_placement(q - 1, moves, rng, magnitude, denominator, generic=True)
        j1, j2 = rng.sample(range(q - 1), 2)
        m1, m2, m3 = rng.sample(range(len(dirs)), 3)
        l1 = Line(dirs[m1], base.points[j1], j1 + 1, m1)
        l2 = Line(dirs[m2], base.points[j2], j2 + 1, m2)
        x = intersection(l1, l2)
        t = Fraction(rng.choice([-1, 1]) * rng.randint(1, magnitude), denominator)
        new = (x[0] + t * dirs[m3].dx, x[1] + t * dirs[m3].dy)
        if new in base.points:
            continue
        p = Placement(base.points + (new,))
        try:
            p.check(moves)
        except ValueError:
            continue
        return p
    raise RuntimeError("could not construct a forced concurrence")


@dataclass
class Lemma2Report:
    q: int
    r: int
    expected: int
    generic_counts: list[int]
    forced_counts: list[int] = field(default_factory=list)
    forced_note: str = ""

    @property
    def generic_ok(self) -> bool:
        return all(c == self.expected for c in self.generic_counts)

    @property
    def forced_ok(self) -> bool:
        return all(c < self.expected for c in self.forced_counts)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "expected_spaces": self.expected,
            "trials": len(self.generic_counts),
            "generic_equal": sum(c == self.expected for c in self.generic_counts),
            "generic_counts": sorted(set(self.generic_counts)),
            "forced_trials": len(self.forced_counts),
            "forced_counts": self.forced_counts,
            "forced_all_smaller": self.forced_ok,
            "forced_note": self.forced_note,
        }


def lemma2_audit(q: int, r: int, moves: Optional[MoveSet] = None, trials: int = 100,
                 seed: int = 0, forced_trials: int = 10) -> Lemma2Report:
    from .geometry import default_moveset

    if trials < 1:
        raise ValueError("trials must be >= 1")
    moves = moves if moves is not None else default_moveset(r)
    if moves.r != r:
        raise ValueError("moveset size does not match r")
    rng = random.Random(seed)
    expected = spaces_closed(q, r)
    counts = [count_cells(build_lines(random_placement(q, moves, rng), moves)) for _ in range(trials)]
    report = Lemma2Report(q, r, expected, counts)
    if q >= 3 and r >= 3:
        report.forced_counts = [
            count_cells(build_lines(forced_concurrence_placement(q, moves, rng), moves))
            for _ in range(forced_trials)
        ]
    else:
        report.forced_note = "no concurrence away from riders is possible for q < 3 or r < 3"
    return report


def lemma1_audit(q: int, moves: MoveSet, trials: int = 100, seed: int = 0) -> dict:
    """Record random generic placements in all q! orders and count repeats.

    A repeat would be two orderings giving the same recording, i.e. a
    counterexample to the q!-recordings count; it is reported, not assumed away.
    """
    from .geometry import all_recordings

    rng = random.Random(seed)
    collisions = 0
    examples = []
    for _ in range(trials):
        p = random_placement(q, moves, rng)
        recs = all_recordings(signature_of(p, moves))
        dup = len(recs) - len(set(recs))
        if dup:
            collisions += dup
            if len(examples) < 5:
                examples.append({"placement": p.to_json(), "signature": str(recs[0])})
    return {
        "q": q,
        "r": moves.r,
        "trials": trials,
        "recordings_per_type": math.factorial(q),
        "collisions": collisions,
        "examples": examples,
    }
