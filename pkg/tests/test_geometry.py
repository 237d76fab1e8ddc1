import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cheeger_forge import (
    ArcEdge,
    ArcGon,
    InvalidGeometry,
    arc_through,
    boundary_distances,
    contains_disc,
    edge_intersections,
    hausdorff_distance,
    inner_parallel,
    load_arcgon,
    minkowski_disc,
    save_arcgon,
)

from conftest import disc, square


def test_semicircle_edge():
    e = ArcEdge((1.0, 0.0), (-1.0, 0.0), 1.0)
    assert e.length == pytest.approx(math.pi, abs=1e-12)
    assert e.span == pytest.approx(math.pi, abs=1e-12)
    assert e.radius == pytest.approx(1.0)
    assert e.point_at(0.0) == pytest.approx((1.0, 0.0))
    assert e.point_at(1.0) == pytest.approx((-1.0, 0.0))
    assert e.point_at(0.5) == pytest.approx((0.0, 1.0), abs=1e-12)
    tx, ty = e.tangent_at(0.25)
    assert math.hypot(tx, ty) == pytest.approx(1.0, abs=1e-12)


def test_reversed_edge_swaps_endpoints_and_curvature():
    e = ArcEdge((0.0, 0.0), (2.0, 0.0), 0.5)
    r = e.reversed()
    assert r.start == e.end and r.end == e.start
    assert r.curvature == -e.curvature
    assert r.length == pytest.approx(e.length, abs=1e-12)


def test_arc_through_recovers_circle():
    c, rho = (0.3, -1.1), 2.5
    angs = [0.2, 0.9, 1.7]
    p, m, q = [(c[0] + rho * math.cos(a), c[1] + rho * math.sin(a)) for a in angs]
    (e,) = arc_through(p, m, q)
    assert e.radius == pytest.approx(rho, abs=1e-9)
    assert e.center == pytest.approx(c, abs=1e-9)
    assert e.distance_to(m) < 1e-9


def test_arc_through_collinear_gives_segment():
    (e,) = arc_through((0.0, 0.0), (1.0, 0.0), (2.0, 0.0))
    assert e.is_segment


@given(
    ang=st.tuples(
        st.floats(0.0, 2.0), st.floats(2.1, 4.0), st.floats(4.1, 6.0)
    ),
    rho=st.floats(0.1, 50.0),
)
@settings(max_examples=50, deadline=None)
def test_arc_through_interpolates(ang, rho):
    pts = [(rho * math.cos(a), rho * math.sin(a)) for a in ang]
    chain = arc_through(*pts)
    for p in pts:
        assert min(e.distance_to(p) for e in chain) < 1e-8 * rho


def test_square_area_perimeter(unit_square):
    assert unit_square.area() == pytest.approx(1.0, abs=1e-15)
    assert unit_square.perimeter() == pytest.approx(4.0, abs=1e-15)


def test_disc_area_perimeter(unit_disc):
    assert unit_disc.area() == pytest.approx(math.pi, abs=1e-12)
    assert unit_disc.perimeter() == pytest.approx(2.0 * math.pi, abs=1e-12)


def test_validate_rejects_open_chain():
    g = ArcGon(
        (
            ArcEdge((0.0, 0.0), (1.0, 0.0)),
            ArcEdge((1.0, 0.0), (1.0, 1.0)),
            ArcEdge((1.0, 1.0), (0.3, 0.9)),
        )
    )
    with pytest.raises(InvalidGeometry):
        g.validate()


def test_validate_rejects_clockwise():
    g = ArcGon(
        (
            ArcEdge((0.0, 0.0), (0.0, 1.0)),
            ArcEdge((0.0, 1.0), (1.0, 1.0)),
            ArcEdge((1.0, 1.0), (1.0, 0.0)),
            ArcEdge((1.0, 0.0), (0.0, 0.0)),
        )
    )
    with pytest.raises(InvalidGeometry):
        g.validate()


def test_validate_full_rejects_bowtie():
    g = ArcGon(
        (
            ArcEdge((0.0, 0.0), (1.0, 1.0)),
            ArcEdge((1.0, 1.0), (1.0, 0.0)),
            ArcEdge((1.0, 0.0), (0.0, 1.0)),
            ArcEdge((0.0, 1.0), (0.0, 0.0)),
        )
    )
    with pytest.raises(InvalidGeometry):
        g.validate(full=True)


def test_save_load_roundtrip(tmp_path):
    g = ArcGon(
        (
            ArcEdge((0.0, 0.0), (2.0, 0.0)),
            ArcEdge((2.0, 0.0), (0.0, 0.0), 1.0 / 3.0),
        ),
        meta={"kind": "lens", "note": 7},
    )
    path = tmp_path / "lens.json"
    save_arcgon(g, path)
    back = load_arcgon(path)
    assert back.meta == g.meta
    for a, b in zip(back.edges, g.edges):
        assert a.start == b.start and a.end == b.end and a.curvature == b.curvature
    raw = json.loads(path.read_text())
    assert "edges" in raw


def test_edge_intersections_segments_cross():
    a = ArcEdge((0.0, 0.0), (2.0, 2.0))
    b = ArcEdge((0.0, 2.0), (2.0, 0.0))
    hits = edge_intersections(a, b)
    assert len(hits) == 1
    _, _, p = hits[0]
    assert p == pytest.approx((1.0, 1.0), abs=1e-12)


def test_edge_intersections_arc_segment():
    arc = ArcEdge((1.0, 0.0), (-1.0, 0.0), 1.0)  # upper unit semicircle
    seg = ArcEdge((-2.0, 0.5), (2.0, 0.5))
    hits = edge_intersections(arc, seg)
    assert len(hits) == 2
    xs = sorted(p[0] for _, _, p in hits)
    root = math.sqrt(1.0 - 0.25)
    assert xs == pytest.approx([-root, root], abs=1e-9)


def test_edge_intersections_disjoint():
    a = ArcEdge((0.0, 0.0), (1.0, 0.0))
    b = ArcEdge((0.0, 1.0), (1.0, 1.0))
    assert edge_intersections(a, b) == []


def test_contains_point(unit_square, unit_disc):
    assert unit_square.contains_point((0.5, 0.5))
    assert not unit_square.contains_point((1.5, 0.5))
    assert not unit_square.contains_point((0.5, -0.01))
    assert unit_disc.contains_point((0.0, 0.0))
    assert not unit_disc.contains_point((1.01, 0.0))


def test_boundary_distances_matches_scalar(unit_disc, unit_square):
    rng = np.random.default_rng(7)
    pts = rng.uniform(-2.0, 2.0, size=(64, 2))
    for g in (unit_disc, unit_square):
        vec = boundary_distances(g, pts)
        scal = np.array([g.boundary_distance(tuple(p)) for p in pts])
        assert np.allclose(vec, scal, atol=1e-12)


def test_contains_disc(unit_square):
    assert contains_disc(unit_square, (0.5, 0.5), 0.49)
    assert not contains_disc(unit_square, (0.5, 0.5), 0.51)
    assert not contains_disc(unit_square, (2.0, 2.0), 0.1)


def test_inner_parallel_square():
    g = square(2.0)
    er = inner_parallel(g, 0.5)
    assert er.area() == pytest.approx(1.0, abs=1e-12)
    assert er.perimeter() == pytest.approx(4.0, abs=1e-12)
    # past the inradius nothing is left
    assert inner_parallel(g, 1.0 + 1e-9).is_empty


def test_inner_parallel_disc():
    g = disc(r=2.0)
    er = inner_parallel(g, 0.5)
    assert er.area() == pytest.approx(math.pi * 1.5**2, abs=1e-10)
    # erosion at the full radius collapses to the center
    core = inner_parallel(g, 2.0)
    assert core.area() == 0.0
    assert len(core.points) == 1
    assert core.points[0] == pytest.approx((0.0, 0.0), abs=1e-9)


def test_minkowski_steiner_square():
    g = square(3.0)
    r = 0.4
    d = minkowski_disc(g, r)
    assert d.area() == pytest.approx(9.0 + 12.0 * r + math.pi * r * r, abs=1e-10)
    assert d.perimeter() == pytest.approx(12.0 + 2.0 * math.pi * r, abs=1e-10)


def test_minkowski_rejects_oversized_radius_at_concave_arc():
    from cheeger_forge import InvalidParameter

    lens = ArcGon(
        (
            ArcEdge((1.0, 0.0), (-1.0, 0.0), 0.8),
            ArcEdge((-1.0, 0.0), (1.0, 0.0), -0.4),  # concave, radius 2.5
        )
    )
    with pytest.raises(InvalidParameter):
        minkowski_disc(lens, 3.0)
    assert minkowski_disc(lens, 2.0).area() > lens.area()


def test_erode_dilate_square_roundtrip():
    # (square eroded by r) dilated by r = square with corners rounded off
    g = square(2.0)
    r = 0.3
    back = minkowski_disc(inner_parallel(g, r), r)
    assert back.area() == pytest.approx(4.0 - (4.0 - math.pi) * r * r, abs=1e-10)
    assert back.perimeter() == pytest.approx(8.0 - (8.0 - 2.0 * math.pi) * r, abs=1e-10)


def test_inner_parallel_vs_shapely():
    shapely = pytest.importorskip("shapely")
    from shapely.geometry import Polygon

    # L-shaped polygon: the reflex corner makes the erosion grow an arc
    pts = [(0, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3)]
    g = ArcGon(tuple(ArcEdge(pts[i], pts[(i + 1) % 6]) for i in range(6)))
    r = 0.25
    ours = inner_parallel(g, r).area()
    theirs = Polygon(pts).buffer(-r, quad_segs=256).area
    assert ours == pytest.approx(theirs, rel=1e-4)


@given(r=st.floats(0.01, 0.49), s=st.floats(0.5, 3.0))
@settings(max_examples=40, deadline=None)
def test_inner_parallel_area_monotone(r, s):
    g = square(1.0)
    a1 = inner_parallel(g, r * s if r * s < 0.5 else 0.499).area()
    a0 = inner_parallel(g, r if r < 0.5 else 0.499).area()
    if s >= 1.0:
        assert a1 <= a0 + 1e-12
    else:
        assert a1 >= a0 - 1e-12


@given(lam=st.floats(0.1, 10.0))
@settings(max_examples=40, deadline=None)
def test_scaling_covariance(lam):
    g = disc(0.3, -0.2, 1.3)
    s = g.scaled(lam)
    assert s.area() == pytest.approx(lam * lam * g.area(), rel=1e-12)
    assert s.perimeter() == pytest.approx(lam * g.perimeter(), rel=1e-12)


def test_hausdorff_translation(unit_square):
    moved = unit_square.translated(0.1, 0.0)
    d = hausdorff_distance(unit_square, moved, samples=1024)
    assert 0.05 <= d <= 0.1 + 1e-9
