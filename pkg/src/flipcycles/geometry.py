"""Exact integer geometry for point sets in general position.

All predicates are sign computations on integer cross products; no floating
point anywhere.  Coordinates are bounded so that the three-point orientation
fits comfortably in fixed-width intermediates.

A ``PointSet`` carries the canonical labeling the spanning-tree machinery
relies on: point 1 is the bottom-most (then left-most) point, which always
lies on the convex hull, and points 2..n follow in counter-clockwise angular
order around point 1, making {1,2} and {1,n} hull edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

from .core import DomainError, label

Point = tuple[int, int]

COORD_BOUND = 1 << 30


class GeneralPositionError(DomainError):
    """Three collinear points where general position is required."""


def _check_coord(p: Point) -> Point:
    x, y = p
    if not (isinstance(x, int) and isinstance(y, int)):
        raise DomainError(f"coordinates must be integers, got {p!r}")
    if abs(x) > COORD_BOUND or abs(y) > COORD_BOUND:
        raise DomainError(f"coordinate magnitude above {COORD_BOUND}: {p!r}")
    return (x, y)


def cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(p: Point, q: Point, r: Point) -> str:
    """'left' if r lies strictly left of the directed line p->q, else 'right'."""
    c = cross(p, q, r)
    if c == 0:
        raise GeneralPositionError(f"collinear triple {p}, {q}, {r}")
    return "left" if c > 0 else "right"


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Proper interior crossing of segments ab and cd (shared endpoints: no)."""
    if len({a, b, c, d}) < 4:
        return False
    return (
        (cross(a, b, c) > 0) != (cross(a, b, d) > 0)
        and (cross(c, d, a) > 0) != (cross(c, d, b) > 0)
    )


@dataclass(frozen=True)
class PointSet:
    """Canonically labeled points; label i is ``points[i-1]``, 1-based."""

    points: tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.points)

    def point(self, i: int) -> Point:
        return self.points[i - 1]

    def labels(self) -> range:
        return range(1, self.n + 1)

    def restrict(self, n: int) -> "PointSet":
        """The prefix sub-point-set on labels 1..n; stays canonical."""
        return PointSet(self.points[:n])

    def half_planes(self, i: int, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Labels strictly left resp. right of the directed line i -> j."""
        if i == j:
            raise DomainError("half planes need two distinct labels")
        pi, pj = self.point(i), self.point(j)
        left, right = [], []
        for k in self.labels():
            if k in (i, j):
                continue
            if orientation(pi, pj, self.point(k)) == "left":
                left.append(k)
            else:
                right.append(k)
        return tuple(left), tuple(right)

    def is_hull_edge(self, i: int, j: int) -> bool:
        left, right = self.half_planes(i, j)
        return not left or not right

    def hull(self) -> tuple[int, ...]:
        """Hull labels in counter-clockwise order starting at point 1."""
        vertices = set(convex_hull(self.points))
        out = [k for k in self.labels() if self.point(k) in vertices]
        # canonical labeling lists points 2..n in ccw order around the hull
        # point 1, so ascending labels already walk the hull ccw
        assert out and out[0] == 1
        for a, b in zip(out, out[1:] + out[:1]):
            assert self.is_hull_edge(a, b)
        return tuple(out)

    def angular_orders(self, i: int, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The two point orders driving the star-to-star flip sequences.

        The left-side points sorted by decreasing clockwise angle at j from
        the ray j->i, then the right-side points sorted by decreasing
        counter-clockwise angle; one order is (tau_L, tau_R), the other
        (tau_R, tau_L).  Both have length n-2.  Comparisons are cross-product
        signs, total within each open half-plane.
        """
        left, right = self.half_planes(i, j)
        pj = self.point(j)

        def cmp_ccw(a: int, b: int) -> int:
            # negative when a precedes b counter-clockwise within a half-plane
            return -cross(pj, self.point(a), self.point(b))

        tau_l = tuple(sorted(left, key=cmp_to_key(cmp_ccw)))
        tau_r = tuple(sorted(right, key=cmp_to_key(lambda a, b: -cmp_ccw(a, b))))
        return tau_l + tau_r, tau_r + tau_l


def convex_hull(points) -> list[Point]:
    """Hull vertices in counter-clockwise order (monotone chain, exact)."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def assert_general_position(points) -> None:
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise GeneralPositionError(f"duplicate point {pts[i]}")
            for k in range(j + 1, len(pts)):
                if cross(pts[i], pts[j], pts[k]) == 0:
                    raise GeneralPositionError(
                        f"collinear triple {pts[i]}, {pts[j]}, {pts[k]}"
                    )


def canonical_label(raw_points) -> PointSet:
    """Label a raw point collection canonically.

    Point 1 is the bottom-most point (ties broken left-most); the rest follow
    in counter-clockwise angular order around it.  Idempotent on already
    canonical inputs.
    """
    pts = [_check_coord(tuple(p)) for p in raw_points]
    if len(pts) < 3:
        raise DomainError(f"need at least 3 points, got {len(pts)}")
    assert_general_position(pts)
    first = min(pts, key=lambda p: (p[1], p[0]))
    rest = [p for p in pts if p != first]

    def by_angle(a: Point, b: Point) -> int:
        return -cross(first, a, b)

    rest.sort(key=cmp_to_key(by_angle))
    return PointSet(tuple([first] + rest))


def is_plane_tree(ps: PointSet, edges) -> bool:
    """Spanning, acyclic, and pairwise non-crossing on the labeled points."""
    n = ps.n
    es = [label(*e) for e in edges]
    if len(set(es)) != n - 1:
        return False
    if any(not (1 <= a <= n and 1 <= b <= n) for a, b in es):
        return False
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in es:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    for i in range(len(es)):
        a, b = es[i]
        for c, d in es[i + 1 :]:
            if segments_cross(ps.point(a), ps.point(b), ps.point(c), ps.point(d)):
                return False
    return True


# ---------------------------------------------------------------------------
# point-set files: one "x y" pair per line, '#' starts a comment


def parse_points(text: str) -> list[Point]:
    pts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise DomainError(f"line {lineno}: expected 'x y', got {line!r}")
        try:
            pts.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise DomainError(f"line {lineno}: non-integer coordinate in {line!r}") from None
    return pts


def format_points(ps: PointSet) -> str:
    lines = [f"# {ps.n} points, canonical labeling 1..{ps.n}"]
    lines += [f"{x} {y}" for x, y in ps.points]
    return "\n".join(lines) + "\n"


def random_point_set(n: int, rng, span: int = 50) -> PointSet:
    """Seeded random general-position set; rejection sampling on collinearity."""
    while True:
        pts = set()
        while len(pts) < n:
            pts.add((rng.randrange(-span, span + 1), rng.randrange(-span, span + 1)))
        try:
            return canonical_label(sorted(pts))
        except GeneralPositionError:
            continue
