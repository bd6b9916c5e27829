"""Exact plane geometry for riders: directions, movesets, regions, signatures.

Everything here works on integers and :class:`fractions.Fraction`; no floating
point enters a predicate.  Regions around a rider are numbered 1..2r clockwise,
starting with the sector just clockwise of the reference ray (the upward
vertical ray when the moveset contains it).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Point = tuple[Fraction, Fraction]


class RiderError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidDirectionError(RiderError, ValueError):
    pass


class CoincidentPointsError(RiderError, ValueError):
    pass


class AttackingError(RiderError, ValueError):
    """Two riders share a line of some move."""

    def __init__(self, i: int, j: int, direction: "Direction"):
        self.pair = (i, j)
        self.direction = direction
        super().__init__(
            f"pieces {i} and {j} attack each other along direction "
            f"({direction.dx},{direction.dy})"
        )


class InvalidSignatureError(RiderError, ValueError):
    pass


class ResourceLimitError(RiderError):
    pass


# -- directions ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Direction:
    dx: int
    dy: int

    def __post_init__(self):
        if (self.dx, self.dy) == (0, 0):
            raise InvalidDirectionError("zero vector is not a direction")
        if math.gcd(self.dx, self.dy) != 1 or not (
            self.dy > 0 or (self.dy == 0 and self.dx > 0)
        ):
            raise InvalidDirectionError(
                f"({self.dx},{self.dy}) is not in canonical form; use normalize_direction"
            )

    def __iter__(self) -> Iterator[int]:
        yield self.dx
        yield self.dy


def normalize_direction(dx: int, dy: int) -> Direction:
    """Primitive representative of the line direction through ``(dx, dy)``.

    >>> normalize_direction(-2, -2)
    Direction(dx=1, dy=1)
    """
    dx, dy = int(dx), int(dy)
    if dx == 0 and dy == 0:
        raise InvalidDirectionError("zero vector is not a direction")
    g = math.gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dy < 0 or (dy == 0 and dx < 0):
        dx, dy = -dx, -dy
    return Direction(dx, dy)


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _angle_less(a: Direction, b: Direction) -> bool:
    # canonical directions live in [0, 180), where cross > 0 means "b is further ccw"
    return cross(a.dx, a.dy, b.dx, b.dy) > 0


@dataclass(frozen=True)
class MoveSet:
    """The r pairwise non-parallel move directions shared by every rider.

    Directions are stored by increasing angle in [0, 180).  The reference
    direction is (0, 1) when present, otherwise the one of largest angle.
    """

    directions: tuple[Direction, ...]
    reference_index: int = field(default=-1)

    def __post_init__(self):
        dirs = [d if isinstance(d, Direction) else normalize_direction(*d) for d in self.directions]
        if not dirs:
            raise InvalidDirectionError("a moveset needs at least one direction")
        if len(set(dirs)) != len(dirs):
            raise InvalidDirectionError("moveset directions must be pairwise non-parallel")
        dirs.sort(key=_AngleKey)
        ref = Direction(0, 1)
        ref_index = dirs.index(ref) if ref in dirs else len(dirs) - 1
        object.__setattr__(self, "directions", tuple(dirs))
        object.__setattr__(self, "reference_index", ref_index)

    @classmethod
    def of(cls, *pairs: Iterable[int]) -> "MoveSet":
        return cls(tuple(normalize_direction(*p) for p in pairs))

    @property
    def r(self) -> int:
        return len(self.directions)

    def __len__(self) -> int:
        return len(self.directions)

    @cached_property
    def rays_clockwise(self) -> tuple[tuple[int, int], ...]:
        """The 2r rays in clockwise order, starting at the reference ray."""
        ccw = [tuple(d) for d in self.directions] + [(-d.dx, -d.dy) for d in self.directions]
        k = self.reference_index
        n = len(ccw)
        return tuple(ccw[(k - t) % n] for t in range(n))

    @cached_property
    def region_sign_table(self) -> dict[tuple[int, ...], int]:
        """Map from the sign vector ``(sign det(d_m, v))_m`` to the region of ``v``."""
        table = {}
        for label in range(1, 2 * self.r + 1):
            vx, vy = self.sector_interior(label)
            signs = tuple(_sign(cross(d.dx, d.dy, vx, vy)) for d in self.directions)
            table[signs] = label
        return table

    @cached_property
    def region_signs(self) -> dict[int, tuple[int, ...]]:
        return {label: signs for signs, label in self.region_sign_table.items()}

    def sector_interior(self, label: int) -> tuple[int, int]:
        """An integer vector strictly inside sector ``label``."""
        rays = self.rays_clockwise
        a = rays[label - 1]
        b = rays[label % len(rays)]
        if cross(a[0], a[1], b[0], b[1]) == 0:
            # r == 1: the sector is a half-plane; rotate a clockwise by 90 degrees
            return (a[1], -a[0])
        return (a[0] + b[0], a[1] + b[1])

    def to_text(self) -> str:
        return ";".join(f"{d.dx},{d.dy}" for d in self.directions)


class _AngleKey:
    __slots__ = ("d",)

    def __init__(self, d: Direction):
        self.d = d

    def __lt__(self, other: "_AngleKey") -> bool:
        return _angle_less(self.d, other.d)


QUEEN = MoveSet.of((0, 1), (1, 1), (1, 0), (1, -1))
ROOK = MoveSet.of((0, 1), (1, 0))
MOVESET_ALIASES = {"queen": QUEEN, "rook": ROOK}

# one documented choice per r; q <= 3 counts do not depend on it
DEFAULT_MOVESETS = {
    1: MoveSet.of((0, 1)),
    2: ROOK,
    3: MoveSet.of((0, 1), (1, 1), (1, 0)),
    4: QUEEN,
    5: MoveSet.of((0, 1), (1, 1), (1, 0), (1, -1), (1, 2)),
    6: MoveSet.of((0, 1), (1, 1), (1, 0), (1, -1), (1, 2), (2, 1)),
}


def default_moveset(r: int) -> MoveSet:
    if r in DEFAULT_MOVESETS:
        return DEFAULT_MOVESETS[r]
    # beyond 6: vertical plus slopes 1..r-1, always pairwise non-parallel
    return MoveSet.of((0, 1), *((1, k) for k in range(r - 1)))


def parse_moveset(text: str) -> MoveSet:
    """Parse ``"0,1;1,1;1,0"`` (or an alias such as ``"queen"``)."""
    text = text.strip()
    if text.lower() in MOVESET_ALIASES:
        return MOVESET_ALIASES[text.lower()]
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise InvalidDirectionError(f"cannot parse direction {chunk!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return MoveSet.of(*pairs)


# -- points and predicates ----------------------------------------------------


def as_point(p: Sequence) -> Point:
    x, y = p
    return (Fraction(x), Fraction(y))


def side_sign(base: Sequence, direction: Direction | Sequence[int], other: Sequence) -> int:
    """Sign of ``det(direction, other - base)``; 0 means ``other`` is on the line."""
    dx, dy = direction
    return _sign(cross(dx, dy, Fraction(other[0]) - Fraction(base[0]), Fraction(other[1]) - Fraction(base[1])))


def is_attacking(a: Sequence, b: Sequence, moves: MoveSet) -> bool:
    a, b = as_point(a), as_point(b)
    if a == b:
        raise CoincidentPointsError(f"points coincide at {a}")
    return any(side_sign(a, d, b) == 0 for d in moves.directions)


def region_of(observer: Sequence, target: Sequence, moves: MoveSet) -> int:
    """Label in 1..2r of the open sector of ``observer`` that holds ``target``."""
    o, t = as_point(observer), as_point(target)
    if o == t:
        raise CoincidentPointsError(f"points coincide at {o}")
    vx, vy = t[0] - o[0], t[1] - o[1]
    signs = []
    for d in moves.directions:
        s = _sign(cross(d.dx, d.dy, vx, vy))
        if s == 0:
            raise AttackingError(0, 0, d)
        signs.append(s)
    return moves.region_sign_table[tuple(signs)]


def antipode(label: int, r: int) -> int:
    return (label + r - 1) % (2 * r) + 1


# -- placements and signatures ------------------------------------------------


@dataclass(frozen=True)
class Placement:
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise CoincidentPointsError("placement points must be distinct")
        object.__setattr__(self, "points", pts)

    @property
    def q(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def check(self, moves: MoveSet) -> "Placement":
        """Raise :class:`AttackingError` if any two riders attack each other."""
        pts = self.points
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                for d in moves.directions:
                    if side_sign(pts[i], d, pts[j]) == 0:
                        raise AttackingError(i + 1, j + 1, d)
        return self

    def translated(self, dx, dy) -> "Placement":
        return Placement(tuple((x + dx, y + dy) for x, y in self.points))

    def scaled(self, factor, center=(0, 0)) -> "Placement":
        cx, cy = as_point(center)
        f = Fraction(factor)
        return Placement(tuple((cx + f * (x - cx), cy + f * (y - cy)) for x, y in self.points))

    def to_json(self) -> list[list[str]]:
        return [[str(x), str(y)] for x, y in self.points]

    @classmethod
    def from_json(cls, data) -> "Placement":
        return cls(tuple((Fraction(x), Fraction(y)) for x, y in data))


def pair_index(j: int, i: int) -> int:
    """0-based position of the (observer j, target i) entry, 1 <= j < i."""
    return (i - 1) * (i - 2) // 2 + (j - 1)


def pieces_for_length(n: int) -> int:
    q = (1 + math.isqrt(1 + 8 * n)) // 2
    if q * (q - 1) // 2 != n:
        raise InvalidSignatureError(f"length {n} is not a triangular number")
    return q


@dataclass(frozen=True, order=True)
class Signature:
    """A recording: entry (j, i) is the region of piece j holding piece i."""

    entries: tuple[int, ...]
    r: int

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        pieces_for_length(len(entries))
        for e in entries:
            if not 1 <= e <= 2 * self.r:
                raise InvalidSignatureError(f"label {e} outside 1..{2 * self.r}")

    @property
    def q(self) -> int:
        return pieces_for_length(len(self.entries))

    def region(self, j: int, i: int) -> int:
        """Region of piece ``j`` containing piece ``i`` (either order, 1-based)."""
        if j < i:
            return self.entries[pair_index(j, i)]
        return antipode(self.entries[pair_index(i, j)], self.r)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"

    @classmethod
    def parse(cls, text: str, r: int) -> "Signature":
        body = text.strip().strip("()").strip()
        if not body:
            raise InvalidSignatureError("empty signature")
        return cls(tuple(int(t) for t in body.split(",")), r)


def signature_of(placement: Placement, moves: MoveSet) -> Signature:
    pts = placement.points
    entries = []
    for i in range(1, len(pts)):
        for j in range(i):
            try:
                entries.append(region_of(pts[j], pts[i], moves))
            except AttackingError as exc:
                raise AttackingError(j + 1, i + 1, exc.direction) from None
    return Signature(tuple(entries), moves.r)


def relabel_signature(sig: Signature, perm: Sequence[int]) -> Signature:
    """Recording of the same configuration when new piece i is old piece ``perm[i-1]``."""
    q = sig.q
    if sorted(perm) != list(range(1, q + 1)):
        raise InvalidSignatureError(f"{perm} is not a permutation of 1..{q}")
    entries = []
    for i in range(2, q + 1):
        for j in range(1, i):
            entries.append(sig.region(perm[j - 1], perm[i - 1]))
    return Signature(tuple(entries), sig.r)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """Permutation with ``relabel(relabel(s, sigma), tau) == relabel(s, compose(sigma, tau))``."""
    return tuple(sigma[t - 1] for t in tau)


CANONICAL_LIMIT = 7


def canonicalize_signature(sig: Signature, limit: int = CANONICAL_LIMIT) -> Signature:
    q = sig.q
    if q > limit:
        raise ResourceLimitError(f"canonicalization over {q}! orderings exceeds limit q <= {limit}")
    best = None
    for perm in itertools.permutations(range(1, q + 1)):
        cand = relabel_signature(sig, perm).entries
        if best is None or cand < best:
            best = cand
    return Signature(best, sig.r)


def all_recordings(sig: Signature) -> list[Signature]:
    return [relabel_signature(sig, p) for p in itertools.permutations(range(1, sig.q + 1))]


def stabilizer(sig: Signature) -> list[tuple[int, ...]]:
    """Non-identity relabelings that leave ``sig`` unchanged."""
    ident = tuple(range(1, sig.q + 1))
    return [
        p for p in itertools.permutations(ident) if p != ident and relabel_signature(sig, p) == sig
    ]
