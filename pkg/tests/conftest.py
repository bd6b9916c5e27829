import math
import random

import pytest

ACCEPTANCE_LINES: list[str] = []


def float_region(observer, target, moves):
    """Region label from floating-point ray angles, independent of the exact code."""
    ox, oy = map(float, observer)
    tx, ty = map(float, target)
    rays = [math.atan2(d.dy, d.dx) for d in moves.directions]
    rays += [a + math.pi for a in rays]
    ref = moves.directions[moves.reference_index]
    ref_angle = math.atan2(ref.dy, ref.dx)
    # clockwise offset of each ray from the reference ray, in [0, 2pi)
    offsets = sorted((ref_angle - a) % (2 * math.pi) for a in rays)
    t = (ref_angle - math.atan2(ty - oy, tx - ox)) % (2 * math.pi)
    for k in range(len(offsets)):
        hi = offsets[k + 1] if k + 1 < len(offsets) else 2 * math.pi
        if offsets[k] < t < hi:
            return k + 1
    raise ValueError("target on a ray")


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
