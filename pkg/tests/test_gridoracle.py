import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from cheeger_forge import ArcEdge, ArcGon, EmptyRegion, ResolutionTooCoarse
from cheeger_forge.gridoracle import (
    Grid,
    brute_force_distance,
    default_step,
    distance_transform,
    grid_cheeger,
    grid_connected,
    grid_inner_area,
    rasterize,
    write_pbm,
    write_pgm,
)

from conftest import disc, square


def test_default_step_is_diag_fraction(unit_square):
    assert default_step(unit_square) == pytest.approx(math.sqrt(2.0) / 2048.0)


def test_raster_area_budget():
    for g in (disc(r=1.0), square(1.0), disc(0.5, 0.5, 0.75)):
        step = 1.0 / 256.0
        grid = rasterize(g, step)
        assert abs(grid.area() - g.area()) <= 2.0 * step * g.perimeter()


def test_raster_refinement_first_order():
    # parity error is not pointwise monotone under step halving (alignment
    # resonances), but two refinements must at least halve it net
    g = disc(r=1.0)
    errs = []
    for step in (1.0 / 128.0, 1.0 / 256.0, 1.0 / 512.0):
        errs.append(abs(rasterize(g, step).area() - g.area()))
    assert errs[2] <= errs[0] / 2.0 + 1e-12


def test_rasterize_rejects_coarse_step():
    with pytest.raises(ResolutionTooCoarse):
        rasterize(square(1.0), 0.2)


def test_distance_transform_matches_brute_force():
    g = disc(r=1.0)
    grid = distance_transform(rasterize(g, 1.0 / 24.0))
    ref = brute_force_distance(grid)
    assert np.allclose(grid.distance, ref, atol=1e-9)


@given(
    occ=hnp.arrays(bool, (12, 16), elements=st.booleans()),
)
@settings(max_examples=40, deadline=None)
def test_distance_transform_matches_brute_force_random(occ):
    grid = Grid(origin=(0.0, 0.0), step=0.5, width=16, height=12, occupancy=occ)
    fast = distance_transform(grid).distance
    slow = brute_force_distance(grid)
    assert np.allclose(fast, slow, atol=1e-9)


def test_grid_cheeger_disc():
    g = disc(r=1.0)
    step = 1.0 / 512.0
    grid = distance_transform(rasterize(g, step))
    r, h = grid_cheeger(grid)
    assert abs(h - 2.0) <= max(1e-3, 4.0 * step * h * h)
    assert abs(r - 0.5) <= 4.0 * step


def test_grid_inner_area_square():
    g = square(2.0)
    step = 2.0 / 512.0
    grid = distance_transform(rasterize(g, step))
    r = 0.5
    exact = 1.0  # (2 - 2*0.5)^2
    assert abs(grid_inner_area(grid, r) - exact) <= 2.0 * step * 8.0 + 8.0 * r * step


def test_grid_connected_two_blobs():
    # two squares joined by a thin bridge: the erosion disconnects once r
    # exceeds the bridge half-width
    w = 0.06
    pts = [
        (0.0, 0.0), (1.0, 0.0), (1.0, 0.5 - w), (2.0, 0.5 - w),
        (2.0, 0.0), (3.0, 0.0), (3.0, 1.0), (2.0, 1.0),
        (2.0, 0.5 + w), (1.0, 0.5 + w), (1.0, 1.0), (0.0, 1.0),
    ]
    g = ArcGon(tuple(ArcEdge(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))))
    grid = distance_transform(rasterize(g, 1.0 / 96.0))
    assert grid_connected(grid, 0.02)
    assert not grid_connected(grid, 0.12)
    with pytest.raises(EmptyRegion):
        grid_connected(grid, 10.0)


def test_write_pbm_pgm(tmp_path):
    grid = distance_transform(rasterize(disc(r=1.0), 1.0 / 32.0))
    pbm = tmp_path / "occ.pbm"
    pgm = tmp_path / "dist.pgm"
    write_pbm(grid, pbm)
    write_pgm(grid, pgm)
    assert pbm.read_bytes().startswith(b"P4\n")
    head = pgm.read_bytes()
    assert head.startswith(b"P5\n")
    assert b"65535" in head[:32]
