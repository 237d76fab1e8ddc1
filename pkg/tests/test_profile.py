import math
import os

import numpy as np
import pytest

from cheeger_forge import (
    InvalidParameter,
    StaircaseParams,
    arc_angles,
    staircase_eval,
    tangent_ball,
    u_arc_chain,
    u_quadrature,
    verify_tangent_balls,
)

PARAMS = StaircaseParams(H=1.0, ell=1.5, tau=1.0 / 3.0, n=3)


def interior_ts(p, m=200, margin=1e-3):
    return np.linspace(margin * p.ell, (1.0 - margin) * p.ell, m)


def test_params_validation():
    with pytest.raises(InvalidParameter):
        StaircaseParams(H=1.0, ell=1.0, tau=1.5, n=2)
    with pytest.raises(InvalidParameter):
        StaircaseParams(H=1.0, ell=1.0, tau=0.3, n=-1)
    with pytest.raises(InvalidParameter):
        StaircaseParams(H=-1.0, ell=1.0, tau=0.3, n=2)


def test_profile_vanishes_at_endpoints():
    prof = u_arc_chain(PARAMS)
    assert prof.eval(0.0) == pytest.approx(0.0, abs=1e-12)
    assert prof.eval(PARAMS.ell) == pytest.approx(0.0, abs=1e-12)


def test_profile_symmetric():
    prof = u_arc_chain(PARAMS)
    t = interior_ts(PARAMS)
    assert np.allclose(prof.eval(t), prof.eval(PARAMS.ell - t), atol=1e-12)


def test_profile_positive_inside():
    prof = u_arc_chain(PARAMS)
    assert np.all(prof.eval(interior_ts(PARAMS)) > 0.0)


def test_flux_identity():
    prof = u_arc_chain(PARAMS)
    t = interior_ts(PARAMS, 2000)
    lhs = prof.flux(t)
    rhs = staircase_eval(PARAMS, t) - PARAMS.H * t
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_flux_matches_derivative():
    # sin(arctan(u')) = u'/sqrt(1+u'^2) must agree with the chain's flux
    prof = u_arc_chain(PARAMS)
    t = interior_ts(PARAMS, 500)
    d = prof.deriv(t)
    assert np.max(np.abs(d / np.sqrt(1.0 + d * d) - prof.flux(t))) < 1e-9


def test_deriv_matches_finite_differences():
    prof = u_arc_chain(PARAMS)
    # stay away from breakpoints: the central gap is smooth
    t = np.linspace(0.72, 0.78, 50)
    h = 1e-6
    fd = (prof.eval(t + h) - prof.eval(t - h)) / (2.0 * h)
    assert np.max(np.abs(fd - prof.deriv(t))) < 1e-7


def test_chain_vs_quadrature():
    prof = u_arc_chain(PARAMS)
    t = interior_ts(PARAMS, 60)
    q = u_quadrature(PARAMS, t)
    assert np.max(np.abs(prof.eval(t) - q)) < 1e-8


def test_central_angle_identity():
    for tau in (0.25, 1.0 / 3.0):
        for n in (1, 2, 4):
            p = StaircaseParams(H=1.2, ell=1.1, tau=tau, n=n)
            rep = arc_angles(p)
            assert 2.0 * math.sin(rep.central_angle / 2.0) == pytest.approx(
                p.H * p.ell * tau, abs=1e-12
            )
            assert rep.max_noncentral <= math.pi / 2.0 + 1e-9
            assert len(rep.gap_angles) == 2**p.n - 1


def test_tangent_ball_certificates():
    ts = np.linspace(0.1, 0.9, 7) * PARAMS.ell
    certs = verify_tangent_balls(PARAMS, ts)
    assert len(certs) == len(ts)
    for c in certs:
        assert c.contained
        assert c.clearance >= -1e-9
        assert c.radius == pytest.approx(1.0 / PARAMS.H)


def test_tangent_ball_center_below_graph():
    prof = u_arc_chain(PARAMS)
    c = tangent_ball(PARAMS, 0.4 * PARAMS.ell)
    assert c.center[1] < prof.eval(c.t)


def test_thread_env_var_results_stable(monkeypatch):
    ts = np.linspace(0.2, 0.8, 9) * PARAMS.ell
    monkeypatch.delenv("CHEEGER_FORGE_THREADS", raising=False)
    serial = verify_tangent_balls(PARAMS, ts)
    monkeypatch.setenv("CHEEGER_FORGE_THREADS", "4")
    threaded = verify_tangent_balls(PARAMS, ts)
    assert [c.t for c in serial] == [c.t for c in threaded]
    assert [c.clearance for c in serial] == [c.clearance for c in threaded]


def test_profile_to_dict_roundtrippable_fields():
    prof = u_arc_chain(PARAMS)
    d = prof.to_dict()
    assert d["closed"] is False
    assert d["meta"]["tau"] == PARAMS.tau
    assert len(d["edges"]) == len(prof.edges)
