import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import float_region
from rider_types.geometry import (
    QUEEN,
    AttackingError,
    CoincidentPointsError,
    Direction,
    InvalidDirectionError,
    MoveSet,
    Placement,
    ResourceLimitError,
    Signature,
    all_recordings,
    antipode,
    canonicalize_signature,
    compose,
    default_moveset,
    is_attacking,
    normalize_direction,
    parse_moveset,
    region_of,
    relabel_signature,
    side_sign,
    signature_of,
    stabilizer,
)

R3 = MoveSet.of((0, 1), (1, 1), (1, 0))


@pytest.mark.parametrize(
    "raw, expected",
    [((2, 4), (1, 2)), ((0, -3), (0, 1)), ((-2, -2), (1, 1)), ((-4, 0), (1, 0)), ((3, -6), (-1, 2))],
)
def test_normalize_direction(raw, expected):
    assert tuple(normalize_direction(*raw)) == expected


def test_normalize_negation_invariant():
    for dx, dy in itertools.product(range(-5, 6), repeat=2):
        if (dx, dy) != (0, 0):
            assert normalize_direction(dx, dy) == normalize_direction(-dx, -dy)


def test_zero_direction_rejected():
    with pytest.raises(InvalidDirectionError):
        normalize_direction(0, 0)
    with pytest.raises(InvalidDirectionError):
        Direction(2, 4)


@pytest.mark.parametrize(
    "base, d, other, expected",
    [((0, 0), (0, 1), (1, 5), -1), ((0, 0), (1, 1), (2, 2), 0), ((0, 0), (1, 0), (3, -2), -1)],
)
def test_side_sign(base, d, other, expected):
    assert side_sign(base, d, other) == expected


def test_is_attacking():
    assert is_attacking((0, 0), (3, 3), QUEEN)
    assert not is_attacking((0, 0), (1, 2), QUEEN)
    assert not is_attacking((0, 0), (5, 0), MoveSet.of((0, 1)))
    with pytest.raises(CoincidentPointsError):
        is_attacking((1, 1), (1, 1), QUEEN)


def test_moveset_reference_and_order():
    assert QUEEN.directions[QUEEN.reference_index] == Direction(0, 1)
    no_vertical = MoveSet.of((1, 0), (1, 1))
    assert no_vertical.directions[no_vertical.reference_index] == Direction(1, 1)
    with pytest.raises(InvalidDirectionError):
        MoveSet.of((1, 1), (2, 2))
    assert parse_moveset("queen") == QUEEN
    assert parse_moveset("0,1;1,1;1,0;1,-1") == QUEEN


def test_region_examples():
    assert region_of((0, 0), (1, 3), QUEEN) == 1
    assert region_of((0, 0), (-1, 3), QUEEN) == 8
    assert region_of((0, 0), (1, 3), R3) == 1
    assert region_of((1, 3), (0, 0), R3) == 4
    # float-angle oracle agrees on the same examples
    assert float_region((1, 3), (0, 0), R3) == 4
    assert float_region((0, 0), (-1, 3), QUEEN) == 8


def test_region_on_boundary_raises():
    with pytest.raises(AttackingError):
        region_of((0, 0), (2, 2), QUEEN)


MOVESETS = [default_moveset(r) for r in range(1, 7)] + [
    MoveSet.of((1, 0), (1, 1)),
    MoveSet.of((2, 1), (-1, 3), (1, -4)),
]

coords = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(MOVESETS), coords, coords, coords, coords)
def test_region_matches_float_oracle_and_antipodality(moves, ax, ay, bx, by):
    a, b = (ax, ay), (bx, by)
    assume(a != b)
    assume(not is_attacking(a, b, moves))
    label = region_of(a, b, moves)
    assert 1 <= label <= 2 * moves.r
    assert region_of(b, a, moves) == antipode(label, moves.r)
    assert float_region(a, b, moves) == label


@pytest.mark.parametrize("moves", MOVESETS)
def test_sign_vector_bijection_on_ray_fan(moves):
    # sweep a fine fan of targets; exactly 2r distinct side vectors occur
    seen = {}
    for k in range(-60, 61):
        for v in ((60, k), (-60, k), (k, 60), (k, -60)):
            signs = tuple(side_sign((0, 0), d, v) for d in moves.directions)
            if 0 in signs:
                continue
            seen.setdefault(signs, region_of((0, 0), v, moves))
    assert len(seen) == 2 * moves.r
    assert sorted(seen.values()) == list(range(1, 2 * moves.r + 1))
    assert seen == moves.region_sign_table


def sample_165_placement():
    # P2 in sector 1 of P1; P3 in sector 6 of P1 and sector 5 of P2
    return Placement(((0, 0), (1, 3), (-2, 2)))


def test_signature_examples():
    p = sample_165_placement()
    pts = p.points
    assert [float_region(pts[0], pts[1], R3), float_region(pts[0], pts[2], R3),
            float_region(pts[1], pts[2], R3)] == [1, 6, 5]
    assert signature_of(p, R3).entries == (1, 6, 5)
    reordered = Placement((pts[0], pts[2], pts[1]))
    assert signature_of(reordered, R3).entries == (6, 1, 2)
    assert signature_of(Placement(((0, 0), (1, 3))), R3).entries == (1,)


def test_signature_of_attacking_names_pair():
    with pytest.raises(AttackingError) as info:
        signature_of(Placement(((0, 0), (1, 2), (4, 4))), QUEEN)
    assert info.value.pair == (1, 3)
    assert info.value.direction == Direction(1, 1)


def test_signature_text_roundtrip():
    s = Signature.parse("(1,6,5)", 3)
    assert str(s) == "(1,6,5)"
    assert s.q == 3


def test_relabel_examples():
    s = Signature((1, 6, 5), 3)
    assert relabel_signature(s, (1, 2, 3)) == s
    assert relabel_signature(s, (1, 3, 2)).entries == (6, 1, 2)
    assert relabel_signature(relabel_signature(s, (1, 3, 2)), (1, 3, 2)) == s


def test_relabel_matches_reordered_placement(rng):
    moves = QUEEN
    pts = ((0, 0), (1, 3), (-3, 1), (Fraction(7, 3), Fraction(-5, 2)))
    p = Placement(pts).check(moves)
    pts = p.points
    sig = signature_of(p, moves)
    for perm in itertools.permutations(range(1, 5)):
        reordered = Placement(tuple(pts[k - 1] for k in perm))
        assert relabel_signature(sig, perm) == signature_of(reordered, moves)


def test_canonicalize_examples():
    assert canonicalize_signature(Signature((1,), 3)).entries == (1,)
    assert canonicalize_signature(Signature((4,), 3)).entries == (1,)
    assert canonicalize_signature(Signature((6, 1, 2), 3)) == canonicalize_signature(
        Signature((1, 6, 5), 3)
    )
    with pytest.raises(ResourceLimitError):
        canonicalize_signature(Signature(tuple([1] * 28), 3))


def random_signatures(rng, n, q_max=5):
    out = []
    for _ in range(n):
        q = rng.randint(2, q_max)
        r = rng.randint(1, 5)
        out.append(Signature(tuple(rng.randint(1, 2 * r) for _ in range(q * (q - 1) // 2)), r))
    return out


def test_canonicalize_idempotent_on_random_signatures(rng):
    for sig in random_signatures(rng, 1000, q_max=4):
        c = canonicalize_signature(sig)
        assert canonicalize_signature(c) == c


def test_relabel_group_action_and_invariance(rng):
    for sig in random_signatures(rng, 60):
        perms = list(itertools.permutations(range(1, sig.q + 1)))
        canon = canonicalize_signature(sig)
        for _ in range(5):
            s, t = rng.choice(perms), rng.choice(perms)
            assert relabel_signature(relabel_signature(sig, s), t) == relabel_signature(sig, compose(s, t))
            assert canonicalize_signature(relabel_signature(sig, s)) == canon


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(coords, coords), min_size=2, max_size=5, unique=True),
    coords, coords, st.fractions(min_value=Fraction(1, 10), max_value=10),
)
def test_signature_translation_and_scaling_invariant(pts, dx, dy, factor):
    moves = QUEEN
    p = Placement(tuple(pts))
    try:
        p.check(moves)
    except AttackingError:
        assume(False)
    sig = signature_of(p, moves)
    assert signature_of(p.translated(dx, dy), moves) == sig
    assert signature_of(p.scaled(factor, center=(dx, dy)), moves) == sig


def test_lemma1_recordings_distinct_on_random_placements(rng):
    from rider_types.arrangement import random_placement

    for moves in (R3, QUEEN, MoveSet.of((0, 1))):
        for _ in range(20):
            p = random_placement(4, moves, rng)
            recs = all_recordings(signature_of(p, moves))
            assert len(set(recs)) == 24
            assert stabilizer(recs[0]) == []
