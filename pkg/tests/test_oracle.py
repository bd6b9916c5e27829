import itertools
import math

import pytest

from rider_types.bounds import t_lower, t_upper
from rider_types.geometry import (
    QUEEN,
    MoveSet,
    ResourceLimitError,
    Signature,
    default_moveset,
    region_of,
    signature_of,
)
from rider_types.oracle import (
    InfeasibleError,
    build_constraints,
    census,
    enumerate_chambers,
    realize_type,
    sandwich_check,
    signs_to_signature,
    strict_feasible,
    witness_placement,
)
from rider_types.search import BudgetExceededError, SearchStats

R3 = MoveSet.of((0, 1), (1, 1), (1, 0))
ODD_MOVESETS = [
    MoveSet.of((2, 1), (-1, 3)),
    MoveSet.of((1, 2), (3, -1), (1, 5)),
    MoveSet.of((0, 1), (1, 3), (2, -1), (5, 1)),
    MoveSet.of((1, 0), (0, 1), (1, 2), (2, -1), (3, 1)),
]


@pytest.mark.parametrize("q, moves, n, dim", [(2, QUEEN, 4, 2), (3, R3, 9, 4), (4, QUEEN, 24, 6)])
def test_build_constraints_shape(q, moves, n, dim):
    system = build_constraints(q, moves)
    assert len(system) == n and system.dimension == dim
    assert all(any(f) for f in system.forms)
    # index order is lexicographic in (i, j, m)
    assert list(system.index) == sorted(system.index, key=lambda t: (t[1], t[0], t[2]))


def test_build_constraints_domain():
    with pytest.raises(ValueError):
        build_constraints(1, QUEEN)


def test_strict_feasible_examples():
    system = build_constraints(2, QUEEN)
    w = strict_feasible(system, ())
    assert w is not None and any(w)
    sector1 = QUEEN.region_signs[1]
    w = strict_feasible(system, sector1)
    assert region_of((0, 0), tuple(w), QUEEN) == 1
    with pytest.raises(ValueError):
        strict_feasible(system, sector1 + (1,))


def test_contradiction_on_proportional_forms_is_infeasible():
    from rider_types.lp import strict_witness

    f = build_constraints(2, QUEEN).forms[0]
    assert strict_witness([list(f), [-2 * v for v in f]], 2) is None


@pytest.mark.parametrize("r", range(1, 7))
def test_q2_chambers(r):
    for moves in [default_moveset(r)] + [m for m in ODD_MOVESETS if m.r == r]:
        assert len(enumerate_chambers(build_constraints(2, moves))) == 2 * r
        assert census(2, moves).type_count == r


@pytest.mark.parametrize("r", range(2, 7))
def test_q3_chambers_match_closed_form(r):
    for moves in [default_moveset(r)] + [m for m in ODD_MOVESETS if m.r == r]:
        res = census(3, moves)
        assert res.chamber_count == 2 * r * (r * r + 3 * r - 1)
        assert res.type_count * 3 == r * (r * r + 3 * r - 1)
        assert res.divisible and not res.freeness_violations


def test_shortcut_does_not_change_chambers():
    for q, moves in [(3, R3), (3, QUEEN), (3, ODD_MOVESETS[0])]:
        system = build_constraints(q, moves)
        fast = enumerate_chambers(system)
        slow = enumerate_chambers(system, shortcut=False)
        assert [c.signs for c in fast] == [c.signs for c in slow]


def test_chamber_witness_round_trip():
    system = build_constraints(3, QUEEN)
    for ch in enumerate_chambers(system):
        p = witness_placement(ch.witness, 3)
        assert signature_of(p, QUEEN) == signs_to_signature(system, ch.signs)


def test_chambers_cover_all_realizable_triples_and_nothing_else():
    # brute force over every label triple: LP on the full sign vector
    system = build_constraints(3, R3)
    found = {signs_to_signature(system, c.signs).entries for c in enumerate_chambers(system)}
    realizable = set()
    for triple in itertools.product(range(1, 7), repeat=3):
        try:
            realize_type(Signature(triple, 3), R3)
            realizable.add(triple)
        except InfeasibleError:
            pass
    assert realizable == found
    assert len(found) == 102


def test_realize_type_examples():
    p = realize_type(Signature((1,), 4), QUEEN)
    assert region_of(p.points[0], p.points[1], QUEEN) == 1
    p = realize_type(Signature((1, 6, 5), 3), R3)
    assert p.points[0] == (0, 0)
    assert signature_of(p, R3).entries == (1, 6, 5)
    # P2 north-north-east of P1, P3 south-south-west of P1, yet P3 north-north-east of P2
    with pytest.raises(InfeasibleError):
        realize_type(Signature((1, 4, 1), 3), R3)


def test_census_examples():
    assert census(3, QUEEN).type_count == 36
    assert census(3, R3).type_count == 17
    assert census(1, QUEEN).type_count == 1


def test_census_limit():
    with pytest.raises(ResourceLimitError):
        census(5, R3)


def test_budget_exceeded_is_flagged():
    with pytest.raises(BudgetExceededError) as info:
        census(3, QUEEN, budget=50)
    assert info.value.valid is False


def test_sandwich_q3():
    for r in range(2, 6):
        rep = sandwich_check(3, default_moveset(r))
        assert rep.ok and rep.t_lower == rep.t_upper == rep.type_count


def test_sandwich_q4_r3():
    res = census(4, R3)
    rep = sandwich_check(4, R3, res)
    assert rep.ok
    assert t_lower(4, 3) <= res.type_count <= t_upper(4, 3)
    assert res.chamber_count == math.factorial(4) * res.type_count
    assert res.type_count == 151  # agrees with the published middle value for this moveset


def test_parallel_enumeration_matches_serial():
    system = build_constraints(3, QUEEN)
    serial_stats, par_stats = SearchStats(), SearchStats()
    a = enumerate_chambers(system, stats=serial_stats)
    b = enumerate_chambers(system, workers=2, stats=par_stats)
    assert [c.signs for c in a] == [c.signs for c in b]
    assert serial_stats.nodes == par_stats.nodes


def test_type_count_depends_on_angles_not_just_r():
    # same r, same bounds, different counts
    other = MoveSet.of((1, 0), (1, 2), (1, 3), (0, 1))
    res = census(4, other)
    assert res.chamber_count == 13824 and res.type_count == 576
    assert census(4, MoveSet.of((1, 2), (0, 1), (-1, 3), (-2, 1))).type_count == 574
