import random
from itertools import combinations

import pytest

from geohom.exact_geometry import (
    COORDINATE_LIMIT,
    GeneralPositionViolation,
    Point,
    Segment,
    find_general_position_violation,
    in_general_position,
    orient,
    proper_cross,
    segments_cross_rational,
)


def P(x, y):
    return Point(x, y)


def test_orient_counterclockwise():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1


def test_orient_collinear():
    assert orient(P(0, 0), P(1, 1), P(2, 2)) == 0


def test_orient_clockwise():
    assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1


def test_orient_antisymmetry_random():
    rng = random.Random(99)
    for _ in range(300):
        p, q, r = (
            P(rng.randrange(-50, 51), rng.randrange(-50, 51)) for _ in range(3)
        )
        assert orient(p, q, r) == -orient(p, r, q) == -orient(q, p, r)


def test_point_coordinate_bound():
    Point(COORDINATE_LIMIT, -COORDINATE_LIMIT)
    with pytest.raises(ValueError):
        Point(COORDINATE_LIMIT + 1, 0)
    with pytest.raises(TypeError):
        Point(0.5, 0)


def test_segment_rejects_degenerate():
    with pytest.raises(ValueError):
        Segment(P(1, 2), P(1, 2))


def test_general_position_all_triples():
    # oracle: every triple individually non-collinear
    pts = [P(0, 0), P(1, 0), P(0, 1), P(2, 3)]
    for i, j, k in combinations(range(4), 3):
        assert orient(pts[i], pts[j], pts[k]) != 0
    assert in_general_position(pts)


def test_general_position_collinear_triple():
    assert not in_general_position([P(0, 0), P(1, 1), P(2, 2)])
    kind, indices = find_general_position_violation([P(0, 0), P(1, 1), P(2, 2)])
    assert kind == "collinear" and indices == (0, 1, 2)


def test_general_position_duplicate():
    assert not in_general_position([P(0, 0), P(0, 0), P(1, 2)])
    kind, indices = find_general_position_violation([P(0, 0), P(0, 0), P(1, 2)])
    assert kind == "duplicate" and indices == (0, 1)


def test_proper_cross_x_configuration():
    assert proper_cross(
        Segment(P(0, 0), P(2, 2)), Segment(P(0, 2), P(2, 0))
    )


def test_proper_cross_shared_endpoint():
    assert not proper_cross(
        Segment(P(0, 0), P(1, 1)), Segment(P(1, 1), P(2, 0))
    )


def test_proper_cross_disjoint_parallels():
    assert not proper_cross(
        Segment(P(0, 0), P(1, 0)), Segment(P(0, 2), P(1, 2))
    )


def test_proper_cross_symmetric_and_distinct_endpoints():
    rng = random.Random(7)
    for _ in range(500):
        coords = [
            (rng.randrange(-30, 31), rng.randrange(-30, 31)) for _ in range(4)
        ]
        if coords[0] == coords[1] or coords[2] == coords[3]:
            continue
        s = Segment(P(*coords[0]), P(*coords[1]))
        t = Segment(P(*coords[2]), P(*coords[3]))
        assert proper_cross(s, t) == proper_cross(t, s)
        if proper_cross(s, t):
            assert len({s.a, s.b, t.a, t.b}) == 4


def test_proper_cross_matches_rational_oracle():
    rng = random.Random(2024)
    compared = 0
    while compared < 1000:
        coords = [
            (rng.randrange(-60, 61), rng.randrange(-60, 61)) for _ in range(4)
        ]
        if coords[0] == coords[1] or coords[2] == coords[3]:
            continue
        s = Segment(P(*coords[0]), P(*coords[1]))
        t = Segment(P(*coords[2]), P(*coords[3]))
        assert proper_cross(s, t) == segments_cross_rational(s, t)
        compared += 1


def test_violation_exception_carries_context():
    err = GeneralPositionViolation("collinear", (0, 3, 5))
    assert err.kind == "collinear"
    assert err.indices == (0, 3, 5)
    assert "0, 3, 5" in str(err)
