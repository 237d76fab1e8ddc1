import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cheeger_forge import (
    InsufficientScales,
    StaircaseParams,
    alpha,
    box_count,
    cantor_stage,
    estimate_dimension,
    staircase_eval,
)

from conftest import CANTOR_DIM_T13


def test_alpha_middle_thirds():
    assert alpha(1.0 / 3.0) == pytest.approx(CANTOR_DIM_T13, abs=1e-15)


@given(tau=st.floats(1e-3, 0.999))
@settings(max_examples=50, deadline=None)
def test_alpha_in_unit_interval(tau):
    a = alpha(tau)
    assert 0.0 < a < 1.0


def test_cantor_stage_counts_and_lengths():
    for tau in (0.2, 1.0 / 3.0, 0.6):
        for n in range(5):
            stage = cantor_stage(tau, n)
            assert len(stage.intervals) == 2**n
            total = sum(b - a for a, b in stage.intervals)
            assert total == pytest.approx((1.0 - tau) ** n, abs=1e-12)


def test_cantor_stage_middle_thirds_endpoints():
    stage = cantor_stage(1.0 / 3.0, 2)
    got = [(round(a * 9), round(b * 9)) for a, b in stage.intervals]
    assert got == [(0, 1), (2, 3), (6, 7), (8, 9)]


def test_staircase_endpoint_values():
    p = StaircaseParams(H=2.0, ell=0.9, tau=0.4, n=3)
    assert staircase_eval(p, 0.0) == 0.0
    assert staircase_eval(p, p.ell) == pytest.approx(p.H * p.ell, abs=1e-12)
    assert staircase_eval(p, p.ell / 2.0) == pytest.approx(p.H * p.ell / 2.0, abs=1e-12)


def test_staircase_constant_on_gaps():
    p = StaircaseParams(H=1.0, ell=1.0, tau=1.0 / 3.0, n=2)
    # central gap of the middle-thirds construction is (1/3, 2/3)
    vals = staircase_eval(p, np.linspace(0.34, 0.66, 20))
    assert np.ptp(vals) == 0.0


def test_staircase_monotone():
    p = StaircaseParams(H=1.0, ell=1.9, tau=0.3, n=4)
    t = np.linspace(0.0, p.ell, 4001)
    v = staircase_eval(p, t)
    assert np.all(np.diff(v) >= -1e-15)


def test_box_count_full_interval_and_points():
    assert box_count([[0.0, 1.0]], 3, kind="intervals") == 8
    assert box_count([[0.0, 1.0]], 6, kind="intervals") == 64
    assert box_count([0.0, 1.0], 2, kind="points") == 2
    # right endpoint exactly on a grid line touches but does not occupy
    assert box_count([[0.0, 0.5]], 1, kind="intervals") == 1


def test_box_count_plane_points():
    pts = [(0.1, 0.1), (0.9, 0.9), (0.1, 0.12)]
    assert box_count(pts, 1, kind="points") == 2


def test_box_count_ambiguous_2col_requires_kind():
    with pytest.raises(Exception):
        box_count([[0.0, 1.0]], 2, kind="auto")


@given(
    j=st.integers(1, 8),
    ivs=st.lists(
        st.tuples(st.floats(0.0, 0.9), st.floats(0.01, 0.1)), min_size=1, max_size=8
    ),
)
@settings(max_examples=60, deadline=None)
def test_box_count_monotone_in_level(j, ivs):
    data = [[a, min(1.0, a + w)] for a, w in ivs]
    assert box_count(data, j, kind="intervals") <= box_count(
        data, j + 1, kind="intervals"
    )


def test_estimate_dimension_cantor_intervals():
    stage = cantor_stage(1.0 / 3.0, 12)
    rep = estimate_dimension(stage.intervals, 2, 10, kind="intervals")
    assert abs(rep.slope - CANTOR_DIM_T13) < 0.05
    assert rep.r2 > 0.99
    assert rep.scales == tuple(range(2, 11))


def test_estimate_dimension_full_interval_slope_one():
    rep = estimate_dimension([[0.0, 1.0]], 1, 8, kind="intervals")
    assert rep.slope == pytest.approx(1.0, abs=1e-9)


def test_estimate_dimension_needs_three_scales():
    with pytest.raises(InsufficientScales):
        estimate_dimension([[0.0, 1.0]], 4, 5, kind="intervals")


def test_staircase_scaling_in_H():
    base = StaircaseParams(H=1.0, ell=0.9, tau=1.0 / 3.0, n=3)
    double = StaircaseParams(H=2.0, ell=0.9, tau=1.0 / 3.0, n=3)
    t = np.linspace(0.0, 0.9, 257)
    assert np.allclose(staircase_eval(double, t), 2.0 * staircase_eval(base, t), atol=1e-12)


def test_supercritical_gate():
    with pytest.raises(Exception):
        StaircaseParams(H=2.0, ell=1.5, tau=0.4, n=3)
    # the wider admissible range opens up with the explicit flag
    p = StaircaseParams(H=2.0, ell=1.5, tau=0.4, n=3, allow_supercritical=True)
    assert staircase_eval(p, p.ell) == pytest.approx(p.H * p.ell, abs=1e-12)
