"""Staircase-driven constant-curvature profiles.

The profile u on [0, ell] is the primitive of z/sqrt(1-z^2) where
z(t) = staircase(t) - H*t is the flux.  At a finite stage the staircase is
piecewise linear, so z is piecewise linear and the graph of u is an exact
chain of circular arcs:

* on gaps z' = -H, giving arcs of signed curvature -H (radius 1/H) in the
  t-increasing traversal;
* on stage intervals z' = H*((1-tau)^-n - 1) > 0, giving arcs of that
  curvature (straight segments at stage 0 where the slope vanishes).

The tangent-ball certificate places a disc of radius 1/H below the graph,
touching it at a prescribed parameter, and measures the worst clearance of
the disc's upper boundary against the graph.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .cantor import StaircaseParams, staircase_eval
from .errors import InvalidParameter, NumericalFailure
from .geometry import ArcEdge, Point, edge_to_dict

__all__ = [
    "Profile",
    "TangentBallCertificate",
    "AngleReport",
    "u_arc_chain",
    "u_quadrature",
    "tangent_ball",
    "verify_tangent_balls",
    "ball_clearance",
    "arc_angles",
]


def thread_count() -> int:
    """Worker cap for batch certificate verification (CHEEGER_FORGE_THREADS)."""
    raw = os.environ.get("CHEEGER_FORGE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


# ---------------------------------------------------------------------------
# piece table


@dataclass(frozen=True)
class _PieceTable:
    """Breakpoints of the piecewise-linear flux z and cumulative profile u."""

    t: np.ndarray        # piece boundaries, len m+1, t[0]=0, t[-1]=ell
    z: np.ndarray        # flux at boundaries
    u: np.ndarray        # profile at boundaries
    slope: np.ndarray    # dz/dt per piece, len m
    is_stage: np.ndarray  # bool per piece


def _piece_table(p: StaircaseParams) -> _PieceTable:
    n = p.n
    H, ell = p.H, p.ell
    stage = p.stage()
    arr = np.asarray(stage.intervals, dtype=float) * ell
    a, b = arr[:, 0], arr[:, 1]
    k = np.arange(2**n, dtype=float)
    # staircase value at stage-interval endpoints is exactly H*ell*k/2^n
    s_a = H * ell * (k / 2**n)
    s_b = H * ell * ((k + 1.0) / 2**n)
    z_a = s_a - H * a
    z_b = s_b - H * b
    # interleave: stage, gap, stage, gap, ..., stage
    m = 2 ** (n + 1) - 1
    t = np.empty(m + 1)
    z = np.empty(m + 1)
    t[0::2] = a
    t[1::2] = b
    z[0::2] = z_a
    z[1::2] = z_b
    slope = np.empty(m)
    is_stage = np.zeros(m, dtype=bool)
    is_stage[0::2] = True
    m_stage = H * ((1.0 - p.tau) ** (-n) - 1.0)
    slope[0::2] = m_stage
    slope[1::2] = -H
    # profile increments: piece antiderivative of z/sqrt(1-z^2) is
    # -sqrt(1-z^2)/slope when z is linear with nonzero slope
    z0, z1 = z[:-1], z[1:]
    if np.any(np.abs(z0) >= 1.0) or np.any(np.abs(z1) >= 1.0):
        raise InvalidParameter("flux reaches the vertical-slope singularity |z| = 1")
    w0 = np.sqrt(1.0 - z0 * z0)
    w1 = np.sqrt(1.0 - z1 * z1)
    du = np.zeros(m)
    nz = np.abs(slope) > 1e-12 * max(H, 1.0)
    du[nz] = -(w1[nz] - w0[nz]) / slope[nz]
    u = np.concatenate(([0.0], np.cumsum(du)))
    return _PieceTable(t, z, u, slope, is_stage)


# ---------------------------------------------------------------------------
# profile


@dataclass(frozen=True)
class Profile:
    """Exact arc-chain form of the profile, plus its breakpoint table."""

    params: StaircaseParams
    edges: tuple[ArcEdge, ...]
    table: _PieceTable

    # cached arc data for vectorized evaluation
    _cx: np.ndarray
    _cy: np.ndarray
    _rho: np.ndarray
    _branch: np.ndarray  # +1: graph is the upper circle branch; -1: lower; 0: straight

    def eval(self, t):
        """Profile height u(t) from the arc chain (vectorized)."""
        t_arr = np.asarray(t, dtype=float)
        self._check_range(t_arr)
        idx = self._piece_of(t_arr)
        out = np.empty_like(t_arr, dtype=float)
        straight = self._branch[idx] == 0
        if np.any(straight):
            i = idx[straight]
            tb = self.table
            frac = (t_arr[straight] - tb.t[i]) / (tb.t[i + 1] - tb.t[i])
            out[straight] = tb.u[i] + frac * (tb.u[i + 1] - tb.u[i])
        curved = ~straight
        if np.any(curved):
            i = idx[curved]
            dx = t_arr[curved] - self._cx[i]
            rad = np.sqrt(np.maximum(0.0, self._rho[i] ** 2 - dx * dx))
            out[curved] = self._cy[i] + self._branch[i] * rad
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def flux(self, t):
        """sin of the tangent angle, computed from the chain geometry.

        Equals staircase(t) - H*t up to roundoff (the defining identity)."""
        t_arr = np.asarray(t, dtype=float)
        self._check_range(t_arr)
        idx = self._piece_of(t_arr)
        out = np.zeros_like(t_arr, dtype=float)
        curved = self._branch[idx] != 0
        if np.any(curved):
            i = idx[curved]
            sgn = np.where(self.table.is_stage[i], 1.0, -1.0)
            out[curved] = sgn * (t_arr[curved] - self._cx[i]) / self._rho[i]
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def deriv(self, t):
        """u'(t) = z/sqrt(1-z^2) via the breakpoint table."""
        z = self.flux_linear(t)
        return z / np.sqrt(1.0 - np.square(z))

    def flux_linear(self, t):
        """z(t) from the piecewise-linear table (not the chain geometry)."""
        t_arr = np.asarray(t, dtype=float)
        self._check_range(t_arr)
        idx = self._piece_of(t_arr)
        tb = self.table
        z = tb.z[idx] + tb.slope[idx] * (t_arr - tb.t[idx])
        return float(z) if np.isscalar(t) or t_arr.ndim == 0 else z

    def _piece_of(self, t_arr: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.table.t, t_arr, side="right") - 1
        return np.clip(idx, 0, len(self.table.slope) - 1)

    def _check_range(self, t_arr: np.ndarray) -> None:
        ell = self.params.ell
        if np.any(t_arr < -1e-12 * ell) or np.any(t_arr > ell * (1.0 + 1e-12)):
            raise InvalidParameter(f"parameter outside [0, {ell}]")

    def to_dict(self) -> dict:
        return {
            "edges": [edge_to_dict(e) for e in self.edges],
            "closed": False,
            "meta": {
                "H": self.params.H,
                "ell": self.params.ell,
                "tau": self.params.tau,
                "n": self.params.n,
            },
        }


def u_arc_chain(p: StaircaseParams) -> Profile:
    """Exact arc-chain of the profile graph over [0, ell]."""
    tb = _piece_table(p)
    m = len(tb.slope)
    edges = []
    cx = np.zeros(m)
    cy = np.zeros(m)
    rho = np.full(m, np.inf)
    branch = np.zeros(m, dtype=int)
    for j in range(m):
        p0: Point = (float(tb.t[j]), float(tb.u[j]))
        p1: Point = (float(tb.t[j + 1]), float(tb.u[j + 1]))
        slope = tb.slope[j]
        if abs(slope) <= 1e-12 * max(p.H, 1.0):
            edges.append(ArcEdge(p0, p1, 0.0))
            continue
        # curvature of the graph in the t-increasing traversal equals dz/dt
        kappa = slope
        e = ArcEdge(p0, p1, kappa)
        edges.append(e)
        c = e.center
        cx[j], cy[j] = c
        rho[j] = e.radius
        # gap arcs (kappa < 0) have their center below the graph
        branch[j] = 1 if kappa < 0.0 else -1
    return Profile(p, tuple(edges), tb, cx, cy, rho, branch)


@lru_cache(maxsize=32)
def _cached_chain(p: StaircaseParams) -> Profile:
    return u_arc_chain(p)


# ---------------------------------------------------------------------------
# quadrature evaluator


def u_quadrature(p: StaircaseParams, t, tol: float = 1e-10):
    """Profile by adaptive quadrature of z/sqrt(1-z^2), splitting at the
    stage-interval endpoints where the integrand loses smoothness."""
    if tol <= 0.0:
        raise InvalidParameter("quadrature tolerance must be positive")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    ell = p.ell
    if np.any(t_arr < -1e-12 * ell) or np.any(t_arr > ell * (1.0 + 1e-12)):
        raise InvalidParameter(f"evaluation point outside [0, {ell}]")
    breaks, cum = _quad_prefix(p, tol)

    H = p.H

    def integrand(r: float) -> float:
        z = staircase_eval(p, r) - H * r
        return z / math.sqrt(1.0 - z * z)

    out = np.empty_like(t_arr)
    for i, ti in enumerate(t_arr):
        ti = min(max(ti, 0.0), ell)
        j = int(np.searchsorted(breaks, ti, side="right")) - 1
        j = min(max(j, 0), len(breaks) - 2)
        lo = breaks[j]
        partial = 0.0
        if ti > lo:
            partial, _ = quad(integrand, lo, ti, epsabs=tol / 4.0, epsrel=1e-13, limit=200)
        out[i] = cum[j] + partial
    return float(out[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else out


@lru_cache(maxsize=32)
def _quad_prefix(p: StaircaseParams, tol: float) -> tuple[np.ndarray, np.ndarray]:
    tb = _piece_table(p)
    H = p.H

    def integrand(r: float) -> float:
        z = staircase_eval(p, r) - H * r
        return z / math.sqrt(1.0 - z * z)

    m = len(tb.slope)
    vals = np.zeros(m + 1)
    eps = tol / (2.0 * max(m, 1))
    for j in range(m):
        piece, _ = quad(integrand, tb.t[j], tb.t[j + 1], epsabs=eps, epsrel=1e-13, limit=200)
        vals[j + 1] = vals[j] + piece
    return tb.t.copy(), vals


# ---------------------------------------------------------------------------
# tangent-ball certificates


@dataclass(frozen=True)
class TangentBallCertificate:
    t: float
    center: Point
    radius: float
    contained: bool
    clearance: float

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "center": [self.center[0], self.center[1]],
            "radius": self.radius,
            "contained": self.contained,
            "clearance": self.clearance,
        }


def _ball_center(profile: Profile, t: float) -> tuple[Point, float]:
    p = profile.params
    s = staircase_eval(p, t)
    z = s - p.H * t
    w = math.sqrt(1.0 - z * z)
    u_t = profile.eval(t)
    return (s / p.H, u_t - w / p.H), 1.0 / p.H


def ball_clearance(p: StaircaseParams, t: float, r) -> float | np.ndarray:
    """Gap between the graph and the upper boundary of the tangent ball
    touching at parameter t, evaluated at parameter(s) r.

    Nonnegative everywhere (zero exactly at r = t) when the ball fits below
    the graph.
    """
    profile = _cached_chain(p)
    (cx, cy), rho = _ball_center(profile, t)
    r_arr = np.asarray(r, dtype=float)
    dx = r_arr - cx
    top = cy + np.sqrt(np.maximum(0.0, rho * rho - dx * dx))
    gap = profile.eval(np.clip(r_arr, 0.0, p.ell)) - top
    return float(gap) if np.isscalar(r) or r_arr.ndim == 0 else gap


def tangent_ball(
    p: StaircaseParams, t: float, *, grid: int = 4096, tol: float = 1e-9
) -> TangentBallCertificate:
    """Certificate that the radius-1/H disc touching the graph from below at
    parameter t stays below the graph over [0, ell]."""
    if not (0.0 < t < p.ell):
        raise InvalidParameter(f"certificate parameter must lie in (0, {p.ell})")
    profile = _cached_chain(p)
    cert = _tangent_ball_on(profile, t, grid, tol)
    return cert


def _tangent_ball_on(profile: Profile, t: float, grid: int, tol: float) -> TangentBallCertificate:
    p = profile.params
    (cx, cy), rho = _ball_center(profile, t)
    lo = max(0.0, cx - rho)
    hi = min(p.ell, cx + rho)
    if hi <= lo:
        # ball's horizontal extent misses the strip entirely (cannot happen
        # for interior parameters; guard for roundoff)
        return TangentBallCertificate(t, (cx, cy), rho, True, rho)
    rs = np.linspace(lo, hi, grid)
    rs[grid // 2] = min(max(t, lo), hi)  # always test the touch parameter
    dx = rs - cx
    top = cy + np.sqrt(np.maximum(0.0, rho * rho - dx * dx))
    gap = profile.eval(rs) - top
    clearance = float(np.min(gap))
    return TangentBallCertificate(t, (cx, cy), rho, clearance >= -tol, clearance)


def verify_tangent_balls(
    p: StaircaseParams, ts, *, grid: int = 4096, tol: float = 1e-9
) -> list[TangentBallCertificate]:
    """Batch tangent-ball verification; parallel over samples when
    CHEEGER_FORGE_THREADS > 1 (results are order-stable either way)."""
    profile = _cached_chain(p)
    ts = [float(t) for t in np.atleast_1d(np.asarray(ts, dtype=float))]
    for t in ts:
        if not (0.0 < t < p.ell):
            raise InvalidParameter(f"certificate parameter must lie in (0, {p.ell})")
    workers = thread_count()
    if workers == 1 or len(ts) < 8:
        return [_tangent_ball_on(profile, t, grid, tol) for t in ts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: _tangent_ball_on(profile, t, grid, tol), ts))


# ---------------------------------------------------------------------------
# arc angles


@dataclass(frozen=True)
class AngleReport:
    gap_angles: tuple[float, ...]
    central_angle: float
    max_noncentral: float

    def to_dict(self) -> dict:
        return {
            "gap_angles": list(self.gap_angles),
            "central_angle": self.central_angle,
            "max_noncentral": self.max_noncentral,
        }


def arc_angles(p: StaircaseParams) -> AngleReport:
    """Angles subtended by the gap arcs of the chain; the central gap's angle
    beta satisfies 2 sin(beta/2) = H*ell*tau."""
    if p.n < 1:
        raise InvalidParameter("arc angles need at least one gap (stage >= 1)")
    profile = _cached_chain(p)
    gaps = [e for e, st in zip(profile.edges, profile.table.is_stage) if not st]
    if not gaps:
        raise NumericalFailure("no gap arcs found")
    spans = [e.span for e in gaps]
    central_idx = 2 ** (p.n - 1) - 1
    central = spans[central_idx]
    non_central = [s for i, s in enumerate(spans) if i != central_idx]
    max_nc = max(non_central) if non_central else 0.0
    return AngleReport(tuple(spans), central, max_nc)
