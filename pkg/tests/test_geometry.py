import math
import random

import pytest

from flipcycles.core import DomainError
from flipcycles.geometry import (
    GeneralPositionError,
    PointSet,
    canonical_label,
    convex_hull,
    format_points,
    orientation,
    parse_points,
    random_point_set,
    segments_cross,
)


def test_orientation_basic():
    assert orientation((0, 0), (1, 0), (0, 1)) == "left"
    assert orientation((0, 0), (0, 1), (1, 0)) == "right"
    with pytest.raises(GeneralPositionError):
        orientation((0, 0), (1, 0), (2, 0))


def test_orientation_antisymmetric():
    rng = random.Random(3)
    for _ in range(100):
        p, q, r = [(rng.randrange(50), rng.randrange(50)) for _ in range(3)]
        try:
            a = orientation(p, q, r)
        except (GeneralPositionError, DomainError):
            continue
        b = orientation(p, r, q)
        assert {a, b} == {"left", "right"}


def test_canonical_label_idempotent():
    rng = random.Random(5)
    for _ in range(20):
        ps = random_point_set(6, rng)
        again = canonical_label(ps.points)
        assert again.points == ps.points


def test_canonical_label_invariants():
    rng = random.Random(6)
    for _ in range(20):
        ps = random_point_set(7, rng)
        hull = ps.hull()
        assert hull[0] == 1
        assert 2 in hull and ps.n in hull
        assert ps.is_hull_edge(1, 2) and ps.is_hull_edge(1, ps.n)
        # points 2..n appear in ccw angular order around point 1
        p1 = ps.point(1)
        for a, b in zip(range(2, ps.n), range(3, ps.n + 1)):
            assert orientation(p1, ps.point(a), ps.point(b)) == "left"


def test_collinear_rejected():
    with pytest.raises(GeneralPositionError):
        canonical_label([(0, 0), (2, 2), (4, 4), (1, 0)])


def test_coordinate_bound_rejected():
    with pytest.raises(DomainError):
        canonical_label([(0, 0), (1 << 40, 0), (0, 5)])


def test_half_planes_hull_edge_one_side_empty():
    ps = canonical_label([(i, i * i) for i in range(5)])
    left, right = ps.half_planes(1, 2)
    assert not left or not right
    left, right = ps.half_planes(2, 4)
    assert left and right
    with pytest.raises(DomainError):
        ps.half_planes(3, 3)


def test_angular_orders_cover_everything():
    rng = random.Random(9)
    for _ in range(10):
        ps = random_point_set(6, rng)
        for i in range(1, 7):
            for j in range(1, 7):
                if i == j:
                    continue
                pl, pr = ps.angular_orders(i, j)
                expect = set(ps.labels()) - {i, j}
                assert set(pl) == set(pr) == expect
                assert len(pl) == len(pr) == ps.n - 2


def _clockwise_angle(pj, pi, pk) -> float:
    # angle at j from ray j->i rotating clockwise to ray j->k, in (0, 2*pi)
    a = math.atan2(pi[1] - pj[1], pi[0] - pj[0])
    b = math.atan2(pk[1] - pj[1], pk[0] - pj[0])
    return (a - b) % (2 * math.pi)


def test_angular_orders_match_float_oracle():
    ps = canonical_label([(0, 0), (5, 1), (7, 5), (3, 8), (-2, 4)])
    for i in range(1, 6):
        for j in range(1, 6):
            if i == j:
                continue
            left, right = ps.half_planes(i, j)
            pl, _ = ps.angular_orders(i, j)
            tau_l, tau_r = pl[: len(left)], pl[len(left) :]
            pj, pi = ps.point(j), ps.point(i)
            want_l = sorted(
                left, key=lambda k: _clockwise_angle(pj, pi, ps.point(k)), reverse=True
            )
            want_r = sorted(
                right,
                key=lambda k: -_clockwise_angle(pj, pi, ps.point(k)) % (2 * math.pi),
                reverse=True,
            )
            assert list(tau_l) == want_l
            assert list(tau_r) == want_r


def test_segments_cross():
    assert segments_cross((0, 0), (4, 4), (0, 4), (4, 0))
    assert not segments_cross((0, 0), (4, 4), (5, 0), (8, 1))
    # shared endpoint does not count as a crossing
    assert not segments_cross((0, 0), (4, 4), (4, 4), (8, 0))


def test_convex_hull_square_with_interior():
    hull = convex_hull([(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)])
    assert set(hull) == {(0, 0), (4, 0), (4, 4), (0, 4)}


def test_point_file_round_trip():
    text = "# demo\n0 0\n4 0  # corner\n\n0 4\n"
    pts = parse_points(text)
    assert pts == [(0, 0), (4, 0), (0, 4)]
    ps = canonical_label(pts)
    again = parse_points(format_points(ps))
    assert tuple(again) == ps.points
    with pytest.raises(DomainError):
        parse_points("1 2 3\n")
    with pytest.raises(DomainError):
        parse_points("a b\n")
