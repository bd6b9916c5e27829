"""Depth-first branch-and-prune over strict sign vectors of homogeneous forms.

A node is a prefix of signs together with an integer witness lying strictly
inside the corresponding open cone.  The witness usually settles one child for
free, so each node costs at most one LP; the other child is decided by
:func:`rider_types.lp.strict_witness`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .geometry import ResourceLimitError
from .lp import strict_witness

Vector = Sequence[int]
# prefilter(position, signs_so_far) -> False when the prefix is known to be empty
Prefilter = Callable[[int, tuple[int, ...]], bool]


class BudgetExceededError(ResourceLimitError):
    """The node budget ran out; ``partial_count`` leaves found so far are not a valid total."""

    def __init__(self, budget: int, partial_count: int):
        self.budget = budget
        self.partial_count = partial_count
        self.valid = False
        super().__init__(
            f"node budget {budget} exhausted after {partial_count} leaves (partial, invalid)"
        )


def dot(a: Vector, b: Vector) -> int:
    return sum(x * y for x, y in zip(a, b))


def _push_off(rows: Sequence[Vector], x: list[int], a: Vector) -> list[int]:
    # x is strict for rows and a.x == 0: move along a while keeping rows positive
    t = 1
    for row in rows:
        num = -dot(row, a)
        if num >= 0:
            t = max(t, num // dot(row, x) + 1)
    return [t * xi + ai for xi, ai in zip(x, a)]


@dataclass
class SearchStats:
    nodes: int = 0
    lp_calls: int = 0


@dataclass
class Node:
    depth: int
    signs: tuple[int, ...]
    rows: list[list[int]] = field(repr=False)
    witness: list[int]


def root(dim: int, fixed_rows: Sequence[Vector] = ()) -> Optional[Node]:
    rows = [list(r) for r in fixed_rows]
    w = strict_witness(rows, dim) if rows else [1] * dim
    if w is None:
        return None
    return Node(0, (), rows, w)


def children(
    node: Node,
    forms: Sequence[Vector],
    dim: int,
    *,
    shortcut: bool = True,
    prefilter: Optional[Prefilter] = None,
    stats: Optional[SearchStats] = None,
) -> list[Node]:
    """Feasible children of ``node``, ``+`` before ``-``."""
    a = forms[node.depth]
    out = []
    free_sign = 0
    x = node.witness
    if shortcut:
        v = dot(a, x)
        if v == 0:
            x = _push_off(node.rows, list(x), a)
            v = dot(a, x)
        free_sign = 1 if v > 0 else -1
    for s in (1, -1):
        signs = node.signs + (s,)
        if prefilter is not None and not prefilter(node.depth, signs):
            continue
        row = [s * c for c in a]
        rows = node.rows + [row]
        if s == free_sign:
            out.append(Node(node.depth + 1, signs, rows, x))
            continue
        if stats is not None:
            stats.lp_calls += 1
        w = strict_witness(rows, dim)
        if w is not None:
            out.append(Node(node.depth + 1, signs, rows, w))
    return out


def iter_leaves(
    start: Node,
    forms: Sequence[Vector],
    dim: int,
    *,
    shortcut: bool = True,
    prefilter: Optional[Prefilter] = None,
    budget: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Iterator[Node]:
    """Yield every full-length feasible sign vector below ``start`` in lexicographic (+ first) order."""
    stats = stats if stats is not None else SearchStats()
    n = len(forms)
    stack = [start]
    found = 0
    while stack:
        node = stack.pop()
        stats.nodes += 1
        if budget is not None and stats.nodes > budget:
            raise BudgetExceededError(budget, found)
        if node.depth == n:
            found += 1
            yield node
            continue
        kids = children(node, forms, dim, shortcut=shortcut, prefilter=prefilter, stats=stats)
        stack.extend(reversed(kids))


def frontier(
    start: Node,
    forms: Sequence[Vector],
    dim: int,
    min_size: int,
    *,
    shortcut: bool = True,
    prefilter: Optional[Prefilter] = None,
    stats: Optional[SearchStats] = None,
) -> list[Node]:
    """Expand breadth-first until at least ``min_size`` nodes (or full depth)."""
    level = [start]
    while len(level) < min_size and level and level[0].depth < len(forms):
        nxt = []
        for node in level:
            if stats is not None:
                stats.nodes += 1
            nxt.extend(children(node, forms, dim, shortcut=shortcut, prefilter=prefilter, stats=stats))
        level = nxt
    return level
