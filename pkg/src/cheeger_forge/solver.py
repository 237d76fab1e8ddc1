"""Cheeger engine.

The constant of a no-neck simply connected domain is h = 1/r where r is the
unique positive root of

    f(r) = pi r^2 - area(inner_parallel(Omega, r)),

and the maximal Cheeger set is the erosion dilated back by r.  The engine
bisects f with exact arc-gon erosions while the chain stays in the certified
class and escalates to the raster oracle otherwise.  Alongside it: the
self-Cheeger tangent-ball certificate and the Steiner identity check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gridoracle
from .errors import (
    EmptyRegion,
    FallbackRequired,
    InvalidGeometry,
    InvalidParameter,
    NotConnected,
    NumericalFailure,
)
from .geometry import (
    ArcGon,
    Point,
    RegionSet,
    boundary_distances,
    inner_parallel,
    minkowski_disc,
)

__all__ = [
    "CheegerSolution",
    "SelfCheegerReport",
    "cheeger_constant",
    "verify_self_cheeger",
    "steiner_check",
    "cheeger_ratio",
]


@dataclass(frozen=True)
class CheegerSolution:
    r: float
    h: float
    cheeger_set: ArcGon | None
    no_neck_certified: bool
    residual: float
    method: str = "exact"

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "h": self.h,
            "residual": self.residual,
            "no_neck_certified": self.no_neck_certified,
            "cheeger_set": None if self.cheeger_set is None else self.cheeger_set.to_dict(),
            "method": self.method,
        }


@dataclass(frozen=True)
class SelfCheegerReport:
    r_star: float
    samples: int
    failures: tuple[Point, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "r_star": self.r_star,
            "samples": self.samples,
            "failures": [[x, y] for x, y in self.failures],
            "passed": self.passed,
        }


def cheeger_constant(
    omega: ArcGon | RegionSet,
    tol: float = 1e-10,
    *,
    grid_step: float | None = None,
    force_grid: bool = False,
) -> CheegerSolution:
    """Cheeger constant and maximal Cheeger set of a simply connected domain.

    A disjoint-union input (RegionSet) is solved per component and the
    smallest constant wins.  Results whose erosion at the solved radius is
    not path-connected come back with ``no_neck_certified=False`` and no
    Cheeger set: the value is then only a diagnostic.
    """
    if tol <= 0.0:
        raise InvalidParameter("tolerance must be positive")
    if isinstance(omega, RegionSet):
        if omega.is_empty:
            raise EmptyRegion("cannot solve an empty region")
        sols = [
            cheeger_constant(c, tol, grid_step=grid_step, force_grid=force_grid)
            for c in omega.components
        ]
        return min(sols, key=lambda s: s.h)
    omega.validate()
    if not force_grid:
        try:
            return _exact_solve(omega, tol)
        except FallbackRequired:
            pass
    return _grid_solve(omega, grid_step)


def _erosion_area(omega: ArcGon, r: float) -> float:
    if r == 0.0:
        return omega.area()
    return inner_parallel(omega, r).area()


def _exact_solve(omega: ArcGon, tol: float) -> CheegerSolution:
    area = omega.area()
    hi = math.sqrt(area / math.pi)
    r_class = min((1.0 / e.curvature for e in omega.edges if e.curvature > 0.0), default=math.inf)
    hi = min(hi, r_class)
    # the residual pi r^2 - |Omega^r| carries units of area, so accept it
    # relative to the domain's area; otherwise scaling the domain up pushes
    # pure roundoff past a fixed threshold and breaks scale covariance
    tol_area = tol * max(1.0, area)

    def f(r: float) -> float:
        return math.pi * r * r - _erosion_area(omega, r)

    f_hi = f(hi)
    if f_hi < -tol_area:
        raise FallbackRequired(
            "erosion stays too large up to the certified-class radius; root lies beyond"
        )
    if abs(f_hi) <= tol_area:
        r_star = hi
    else:
        lo = 0.0
        r_star = None
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm = f(mid)
            if abs(fm) <= tol_area:
                r_star = mid
                break
            if fm < 0.0:
                lo = mid
            else:
                hi = mid
        if r_star is None:
            raise NumericalFailure(f"bisection did not reach residual {tol:.1e} in 200 iterations")

    region = inner_parallel(omega, r_star)
    residual = abs(math.pi * r_star * r_star - region.area())
    connected = (len(region.components) == 1 and not region.points) or (
        not region.components and len(region.points) == 1
    )
    cheeger = None
    if connected:
        try:
            cheeger = minkowski_disc(region, r_star)
        except NotConnected:
            connected = False
    return CheegerSolution(r_star, 1.0 / r_star, cheeger, connected, residual, "exact")


def _grid_solve(omega: ArcGon, grid_step: float | None) -> CheegerSolution:
    step = gridoracle.default_step(omega) if grid_step is None else grid_step
    grid = gridoracle.distance_transform(gridoracle.rasterize(omega, step))
    r, h = gridoracle.grid_cheeger(grid)
    residual = abs(math.pi * r * r - gridoracle.grid_inner_area(grid, r))
    connected = gridoracle.grid_connected(grid, r)
    return CheegerSolution(r, h, None, connected, residual, "grid")


# ---------------------------------------------------------------------------
# certificates


def _boundary_samples_with_normals(e_gon: ArcGon, n: int):
    """Arclength-proportional boundary samples with outward normals; at
    junction samples the normal is the average of the adjacent tangents."""
    per = e_gon.perimeter()
    pts: list[Point] = []
    normals: list[Point] = []
    edges = e_gon.edges
    for idx, e in enumerate(edges):
        k = max(1, int(round(n * e.length / per)))
        for i in range(k):
            u = i / k
            if i == 0:
                t_prev = edges[idx - 1].tangent_at(1.0)
                t_cur = e.tangent_at(0.0)
                tx, ty = t_prev[0] + t_cur[0], t_prev[1] + t_cur[1]
                nrm = math.hypot(tx, ty)
                if nrm < 1e-12:
                    tx, ty = t_cur
                    nrm = 1.0
                tx, ty = tx / nrm, ty / nrm
            else:
                tx, ty = e.tangent_at(u)
            pts.append(e.point_at(u))
            normals.append((ty, -tx))  # outward: right of the CCW tangent
    return pts, normals


def verify_self_cheeger(E: ArcGon, samples: int = 1024, *, tol: float = 1e-9) -> SelfCheegerReport:
    """Tangent-ball certificate that E is its own Cheeger set: at every
    boundary sample x an inscribed disc of radius r* = area/perimeter must
    fit tangentially, centred at x - r* nu(x)."""
    E.validate()
    if samples < 1:
        raise InvalidParameter("need at least one sample")
    r_star = E.area() / E.perimeter()
    pts, normals = _boundary_samples_with_normals(E, samples)
    centers = np.array(
        [(x - r_star * nx, y - r_star * ny) for (x, y), (nx, ny) in zip(pts, normals)]
    )
    dist = boundary_distances(E, centers)
    failures = [pts[i] for i in np.flatnonzero(dist < r_star - tol)]
    # distance alone cannot tell inside from outside; spot-check parity
    stride = max(1, len(pts) // 64)
    for i in range(0, len(pts), stride):
        if dist[i] >= r_star - tol and not E.contains_point(tuple(centers[i])):
            failures.append(pts[i])
    return SelfCheegerReport(r_star, len(pts), tuple(failures))


def steiner_check(G: ArcGon, r: float) -> tuple[float, float]:
    """Residuals of the two Steiner identities for the dilation G + B_r:
    area grows by perimeter*r + pi r^2, perimeter by 2 pi r."""
    if not (r > 0.0 and math.isfinite(r)):
        raise InvalidParameter(f"dilation radius must be positive, got {r!r}")
    G.validate()
    dil = minkowski_disc(G, r)
    a_res = abs(dil.area() - (G.area() + G.perimeter() * r + math.pi * r * r))
    p_res = abs(dil.perimeter() - (G.perimeter() + 2.0 * math.pi * r))
    return a_res, p_res


def cheeger_ratio(E: ArcGon | RegionSet) -> float:
    """Perimeter over area; for a disjoint union, the best (smallest) ratio
    among the components."""
    if isinstance(E, RegionSet):
        if not E.components:
            raise EmptyRegion("no components with positive area")
        return min(cheeger_ratio(c) for c in E.components)
    area = E.signed_area()
    if abs(area) <= 0.0:
        raise InvalidGeometry("cheeger ratio of a zero-area region")
    return E.perimeter() / abs(area)