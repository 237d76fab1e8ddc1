import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cheeger_forge import EmptyRegion, InvalidParameter, StaircaseParams
from cheeger_forge.constructions import (
    KgonSpec,
    build_cantor_domain,
    build_dumbbell_domain,
    build_kgon_domain,
)
from cheeger_forge.geometry import RegionSet
from cheeger_forge.solver import (
    cheeger_constant,
    cheeger_ratio,
    steiner_check,
    verify_self_cheeger,
)

from conftest import ELL0_T13_N4_H1, RHO0_K6_H1, SQUARE_H, disc, square


def test_disc_constant_exact(unit_disc):
    sol = cheeger_constant(unit_disc)
    assert sol.method == "exact"
    assert sol.h == pytest.approx(2.0, abs=1e-9)
    assert sol.r == pytest.approx(0.5, abs=1e-10)
    assert sol.residual <= 1e-9
    assert sol.no_neck_certified
    # the maximal Cheeger set of a disc is the disc itself
    assert sol.cheeger_set.area() == pytest.approx(math.pi, rel=1e-9)


def test_square_constant_exact(unit_square):
    sol = cheeger_constant(unit_square)
    assert sol.method == "exact"
    assert sol.h == pytest.approx(SQUARE_H, abs=1e-8)
    r = sol.r
    # maximal set = eroded square dilated back: rounded square closed forms
    E = sol.cheeger_set
    assert E.area() == pytest.approx(1.0 - (4.0 - math.pi) * r * r, abs=1e-9)
    assert E.perimeter() == pytest.approx(4.0 - (8.0 - 2.0 * math.pi) * r, abs=1e-9)
    assert E.perimeter() / E.area() == pytest.approx(sol.h, rel=1e-9)


def test_kgon_root_domain_constant_is_curvature():
    g = build_kgon_domain(KgonSpec(6, 1.0, RHO0_K6_H1))
    sol = cheeger_constant(g)
    assert sol.method == "exact"
    assert sol.h == pytest.approx(1.0, abs=1e-8)
    assert sol.no_neck_certified
    # self-Cheeger: the maximal set is the whole domain
    assert sol.cheeger_set.area() == pytest.approx(g.area(), rel=1e-8)


def test_cantor_root_domain_constant_is_curvature():
    g = build_cantor_domain(StaircaseParams(H=1.0, ell=ELL0_T13_N4_H1, tau=1.0 / 3.0, n=4))
    sol = cheeger_constant(g)
    assert sol.h == pytest.approx(1.0, abs=1e-7)
    assert sol.no_neck_certified


def test_self_cheeger_certificate_passes_on_root_kgon():
    g = build_kgon_domain(KgonSpec(6, 1.0, RHO0_K6_H1))
    rep = verify_self_cheeger(g, 1000)
    assert rep.passed
    assert rep.samples >= 1000
    assert rep.r_star == pytest.approx(1.0, abs=1e-8)


def test_self_cheeger_certificate_fails_on_square(unit_square):
    # corners block the tangent disc: the square is not its own Cheeger set
    rep = verify_self_cheeger(unit_square, 512)
    assert not rep.passed
    assert len(rep.failures) > 0


def test_self_cheeger_rejects_bad_samples(unit_disc):
    with pytest.raises(InvalidParameter):
        verify_self_cheeger(unit_disc, 0)


def test_steiner_identities():
    for g in (disc(), square(1.0)):
        a_res, p_res = steiner_check(g, 0.37)
        assert a_res <= 1e-8
        assert p_res <= 1e-8
    with pytest.raises(InvalidParameter):
        steiner_check(disc(), 0.0)


def test_cheeger_ratio_values(unit_disc, unit_square):
    assert cheeger_ratio(unit_disc) == pytest.approx(2.0, rel=1e-12)
    assert cheeger_ratio(unit_square) == pytest.approx(4.0, rel=1e-12)


def test_region_set_takes_component_minimum():
    rs = RegionSet(components=(disc(r=1.0), disc(5.0, 0.0, 2.0)))
    # ratios 2 and 1; the disjoint union reports the better one
    assert cheeger_ratio(rs) == pytest.approx(1.0, rel=1e-12)
    sol = cheeger_constant(rs)
    assert sol.h == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(EmptyRegion):
        cheeger_ratio(RegionSet())
    with pytest.raises(EmptyRegion):
        cheeger_constant(RegionSet())


def test_dumbbell_escalates_to_grid_and_flags_neck():
    sol = cheeger_constant(build_dumbbell_domain())
    assert sol.method == "grid"
    assert not sol.no_neck_certified
    assert sol.cheeger_set is None
    assert sol.h == pytest.approx(1.7064940163915026, abs=1e-12)


def test_grid_route_agrees_with_exact(unit_square):
    exact = cheeger_constant(unit_square)
    step = 1.0 / 512.0
    grid = cheeger_constant(unit_square, force_grid=True, grid_step=step)
    assert grid.method == "grid"
    assert abs(grid.h - exact.h) <= max(1e-3, 4.0 * step * exact.h * exact.h)
    assert abs(grid.r - exact.r) <= 4.0 * step


@settings(max_examples=20, deadline=None)
@given(lam=st.floats(min_value=0.2, max_value=8.0))
def test_scale_covariance_exact(lam):
    g = disc(r=1.0)
    h1 = cheeger_constant(g).h
    h2 = cheeger_constant(g.scaled(lam)).h
    assert h2 * lam == pytest.approx(h1, rel=1e-9)


def test_solution_serialization(unit_disc):
    sol = cheeger_constant(unit_disc)
    d = sol.to_dict()
    assert set(d) == {"r", "h", "residual", "no_neck_certified", "cheeger_set", "method"}
    assert d["method"] == "exact"
    assert d["cheeger_set"]["edges"]
    rep = verify_self_cheeger(unit_disc, 64)
    rd = rep.to_dict()
    assert rd["passed"] is True
    assert rd["failures"] == []
