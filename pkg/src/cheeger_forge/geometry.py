"""Planar geometry kernel for chains of circular arcs and line segments.

Conventions used throughout:

* A boundary is a closed CCW chain of :class:`ArcEdge` items; the enclosed
  region lies on the *left* of the traversal.
* Signed curvature follows the usual differential-geometry sign: positive
  curvature turns left (so a CCW convex boundary, e.g. a disc, has positive
  curvature everywhere).
* An :class:`ArcEdge` always denotes the *minor* arc between its endpoints
  (subtended angle <= pi).  Builders that need a longer sweep emit several
  edges.

The exact erosion/dilation machinery (`inner_parallel`, `minkowski_disc`)
works edge-by-edge and resolves junctions by snapping (C^1), inserting a
corner arc, or trimming.  When a configuration falls outside what can be
certified exactly, :class:`~cheeger_forge.errors.FallbackRequired` is raised
so that callers can escalate to the raster oracle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyRegion,
    FallbackRequired,
    InvalidGeometry,
    InvalidInput,
    InvalidParameter,
    NotConnected,
    NumericalFailure,
)

Point = tuple[float, float]

DEFAULT_ATOL = 1e-9

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# small vector helpers (tuples in, tuples out; hot paths use numpy separately)

def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def _scale(a: Point, s: float) -> Point:
    return (a[0] * s, a[1] * s)


def _dot(a: Point, b: Point) -> float:
    return a[0] * b[0] + a[1] * b[1]


def _cross(a: Point, b: Point) -> float:
    return a[0] * b[1] - a[1] * b[0]


def _norm(a: Point) -> float:
    return math.hypot(a[0], a[1])


def _dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _rot90(a: Point) -> Point:
    """Rotate by +90 degrees (left normal of a direction vector)."""
    return (-a[1], a[0])


def _unit(a: Point) -> Point:
    n = _norm(a)
    if n == 0.0:
        raise InvalidGeometry("zero-length direction")
    return (a[0] / n, a[1] / n)


def _wrap_pos(angle: float) -> float:
    """Wrap an angle into [0, 2*pi)."""
    a = math.fmod(angle, _TWO_PI)
    return a + _TWO_PI if a < 0.0 else a


def _turn_angle(t_in: Point, t_out: Point) -> float:
    """Signed turn from direction t_in to t_out, in (-pi, pi]."""
    return math.atan2(_cross(t_in, t_out), _dot(t_in, t_out))


# ---------------------------------------------------------------------------
# edges


@dataclass(frozen=True)
class ArcEdge:
    """Directed circular-arc (or straight) edge between two points.

    Parameters
    ----------
    start, end : pair of floats
    curvature : float
        Signed curvature; 0 means a straight segment.  For a curved edge the
        chord must satisfy ``|curvature| * chord <= 2`` (minor arc).
    """

    start: Point
    end: Point
    curvature: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", (float(self.start[0]), float(self.start[1])))
        object.__setattr__(self, "end", (float(self.end[0]), float(self.end[1])))
        object.__setattr__(self, "curvature", float(self.curvature))
        if not all(map(math.isfinite, (*self.start, *self.end, self.curvature))):
            raise InvalidGeometry("non-finite edge data")
        if self.chord == 0.0:
            raise InvalidGeometry("zero-length edge")
        if self.curvature != 0.0:
            ratio = abs(self.curvature) * self.chord / 2.0
            if ratio > 1.0 + 1e-9:
                raise InvalidGeometry(
                    f"chord {self.chord:.6g} too long for curvature {self.curvature:.6g}"
                )

    # -- basic scalar geometry -------------------------------------------

    @property
    def is_segment(self) -> bool:
        return self.curvature == 0.0

    @property
    def chord(self) -> float:
        return _dist(self.start, self.end)

    @property
    def radius(self) -> float:
        if self.is_segment:
            return math.inf
        return 1.0 / abs(self.curvature)

    @property
    def span(self) -> float:
        """Subtended angle in [0, pi] (0 for a segment)."""
        if self.is_segment:
            return 0.0
        half = abs(self.curvature) * self.chord / 2.0
        return 2.0 * math.asin(min(1.0, half))

    @property
    def length(self) -> float:
        if self.is_segment:
            return self.chord
        return self.span * self.radius

    @property
    def center(self) -> Point:
        """Center of the supporting circle (undefined for segments)."""
        if self.is_segment:
            raise InvalidGeometry("segment has no center")
        mid = _scale(_add(self.start, self.end), 0.5)
        v = _sub(self.end, self.start)
        half_chord = _norm(v) / 2.0
        rho = self.radius
        h = math.sqrt(max(0.0, rho * rho - half_chord * half_chord))
        n_left = _rot90(_unit(v))
        s = 1.0 if self.curvature > 0.0 else -1.0
        return _add(mid, _scale(n_left, s * h))

    def _angles(self) -> tuple[Point, float, float]:
        """(center, start angle, signed sweep) for an arc edge."""
        c = self.center
        a0 = math.atan2(self.start[1] - c[1], self.start[0] - c[0])
        sweep = math.copysign(self.span, self.curvature)
        return c, a0, sweep

    # -- evaluation ------------------------------------------------------

    def point_at(self, f: float) -> Point:
        """Point at parameter f in [0, 1] (arclength-proportional)."""
        if self.is_segment:
            return (
                self.start[0] + f * (self.end[0] - self.start[0]),
                self.start[1] + f * (self.end[1] - self.start[1]),
            )
        c, a0, sweep = self._angles()
        a = a0 + f * sweep
        rho = self.radius
        return (c[0] + rho * math.cos(a), c[1] + rho * math.sin(a))

    def tangent_at(self, f: float) -> Point:
        """Unit tangent (traversal direction) at parameter f."""
        if self.is_segment:
            return _unit(_sub(self.end, self.start))
        _, a0, sweep = self._angles()
        a = a0 + f * sweep
        s = 1.0 if sweep > 0.0 else -1.0
        return (-s * math.sin(a), s * math.cos(a))

    def reversed(self) -> "ArcEdge":
        return ArcEdge(self.end, self.start, -self.curvature)

    def bbox(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax), including arc bulge extremes."""
        xs = [self.start[0], self.end[0]]
        ys = [self.start[1], self.end[1]]
        if not self.is_segment:
            c, a0, sweep = self._angles()
            rho = self.radius
            # axis-aligned extremes occur at multiples of pi/2
            for k in range(-4, 5):
                a = k * math.pi / 2.0
                u = self._param_of_angle(a)
                if u is not None and -1e-12 <= u <= 1.0 + 1e-12:
                    xs.append(c[0] + rho * math.cos(a))
                    ys.append(c[1] + rho * math.sin(a))
        return (min(xs), min(ys), max(xs), max(ys))

    def _param_of_angle(self, phi: float) -> float | None:
        """Arc parameter u with angle(u) == phi; picks the branch nearest
        [0, 1].  None for segments or zero sweep."""
        if self.is_segment:
            return None
        _, a0, sweep = self._angles()
        if sweep == 0.0:
            return None
        if sweep > 0.0:
            rel = _wrap_pos(phi - a0)
        else:
            rel = _wrap_pos(a0 - phi)
        u = rel / abs(sweep)
        u_alt = (rel - _TWO_PI) / abs(sweep)
        # choose the representative closer to the parameter interval
        d = max(0.0 - u, u - 1.0, 0.0)
        d_alt = max(0.0 - u_alt, u_alt - 1.0, 0.0)
        return u if d <= d_alt else u_alt

    # -- transforms ------------------------------------------------------

    def translated(self, dx: float, dy: float) -> "ArcEdge":
        return ArcEdge(
            (self.start[0] + dx, self.start[1] + dy),
            (self.end[0] + dx, self.end[1] + dy),
            self.curvature,
        )

    def transformed(self, a: Sequence[Sequence[float]], b: Point = (0.0, 0.0)) -> "ArcEdge":
        """Apply x -> A x + b where A is a similarity (lam * orthogonal).

        Curvature maps to ``curvature * det(Q) / lam``.
        """
        m = np.asarray(a, dtype=float)
        gram = m.T @ m
        lam2 = 0.5 * (gram[0, 0] + gram[1, 1])
        if lam2 <= 0.0 or abs(gram[0, 1]) > 1e-9 * lam2 or abs(gram[0, 0] - gram[1, 1]) > 1e-9 * lam2:
            raise InvalidParameter("transform must be a similarity")
        lam = math.sqrt(lam2)
        det_sign = 1.0 if float(np.linalg.det(m)) > 0.0 else -1.0

        def apply(p: Point) -> Point:
            return (
                m[0, 0] * p[0] + m[0, 1] * p[1] + b[0],
                m[1, 0] * p[0] + m[1, 1] * p[1] + b[1],
            )

        return ArcEdge(apply(self.start), apply(self.end), self.curvature * det_sign / lam)

    def scaled(self, lam: float) -> "ArcEdge":
        if lam <= 0.0:
            raise InvalidParameter("scale factor must be positive")
        return ArcEdge(_scale(self.start, lam), _scale(self.end, lam), self.curvature / lam)

    # -- measure contributions ------------------------------------------

    def _area_contribution(self) -> float:
        """Contribution to the signed area of a closed chain.

        The shoelace term of the chord plus, for arcs, the signed circular
        segment between chord and arc.
        """
        a = 0.5 * _cross(self.start, self.end)
        if not self.is_segment:
            theta = self.span
            rho = self.radius
            seg = 0.5 * rho * rho * (theta - math.sin(theta))
            a += math.copysign(seg, self.curvature)
        return a

    def distance_to(self, p: Point) -> float:
        """Euclidean distance from p to this edge."""
        if self.is_segment:
            v = _sub(self.end, self.start)
            L2 = _dot(v, v)
            t = _dot(_sub(p, self.start), v) / L2
            t = min(1.0, max(0.0, t))
            q = _add(self.start, _scale(v, t))
            return _dist(p, q)
        c, _, _ = self._angles()
        d_c = _dist(p, c)
        if d_c == 0.0:
            return self.radius
        phi = math.atan2(p[1] - c[1], p[0] - c[0])
        u = self._param_of_angle(phi)
        if u is not None and 0.0 <= u <= 1.0:
            return abs(d_c - self.radius)
        return min(_dist(p, self.start), _dist(p, self.end))


def arc_through(p: Point, m: Point, q: Point, *, atol: float = DEFAULT_ATOL) -> tuple[ArcEdge, ...]:
    """Arc (or segment) from p to q passing through m, split into minor arcs.

    Returns one edge when the sweep is at most pi, otherwise the sweep is cut
    at intermediate points so every returned edge is a minor arc.
    """
    scale = max(1.0, _dist(p, q), _dist(p, m))
    cr = _cross(_sub(m, p), _sub(q, m))
    if abs(cr) <= atol * scale * scale:
        return (ArcEdge(p, q, 0.0),)
    # circumcenter: intersection of perpendicular bisectors
    ax, ay = p
    bx, by = m
    cx, cy = q
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    center = (ux, uy)
    rho = _dist(center, p)
    sgn = 1.0 if cr > 0.0 else -1.0
    a_p = math.atan2(p[1] - uy, p[0] - ux)
    a_m = math.atan2(m[1] - uy, m[0] - ux)
    a_q = math.atan2(q[1] - uy, q[0] - ux)
    rel_m = _wrap_pos(sgn * (a_m - a_p))
    rel_q = _wrap_pos(sgn * (a_q - a_p))
    if rel_q == 0.0:
        rel_q = _TWO_PI
    if rel_m > rel_q:
        raise InvalidGeometry("middle point not between endpoints on the arc")
    pieces = max(1, math.ceil(rel_q / math.pi - 1e-12))
    edges = []
    prev = p
    for i in range(1, pieces + 1):
        a = a_p + sgn * rel_q * i / pieces
        nxt = q if i == pieces else (ux + rho * math.cos(a), uy + rho * math.sin(a))
        edges.append(ArcEdge(prev, nxt, sgn / rho))
        prev = nxt
    return tuple(edges)


# ---------------------------------------------------------------------------
# intersections


def _seg_seg_intersections(e1: ArcEdge, e2: ArcEdge, atol: float) -> list[tuple[float, float, Point]]:
    p, r = e1.start, _sub(e1.end, e1.start)
    q, s = e2.start, _sub(e2.end, e2.start)
    denom = _cross(r, s)
    scale = max(_norm(r), _norm(s), 1.0)
    if abs(denom) <= atol * scale * scale:
        return []  # parallel (collinear overlap not reported)
    qp = _sub(q, p)
    u1 = _cross(qp, s) / denom
    u2 = _cross(qp, r) / denom
    x = _add(p, _scale(r, u1))
    return [(u1, u2, x)]


def _seg_circle(e_seg: ArcEdge, center: Point, rho: float, atol: float) -> list[tuple[float, Point]]:
    """Intersections of the segment's supporting line with a circle, as
    (parameter along segment, point)."""
    p = e_seg.start
    v = _sub(e_seg.end, e_seg.start)
    L = _norm(v)
    d = _scale(v, 1.0 / L)
    pc = _sub(center, p)
    t_mid = _dot(pc, d)
    h2 = _dot(pc, pc) - t_mid * t_mid
    disc = rho * rho - h2
    if disc < -atol * rho * max(rho, 1.0):
        return []
    disc = max(0.0, disc)
    root = math.sqrt(disc)
    out = []
    for t in ((t_mid - root, t_mid + root) if root > 0.0 else (t_mid,)):
        x = _add(p, _scale(d, t))
        out.append((t / L, x))
    return out


def _circle_circle(c1: Point, r1: float, c2: Point, r2: float, atol: float) -> list[Point]:
    d = _dist(c1, c2)
    scale = max(r1, r2, 1.0)
    if d <= atol * scale:
        return []  # concentric (cocircular overlap not reported)
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - a * a
    if h2 < -atol * scale * scale:
        return []
    h = math.sqrt(max(0.0, h2))
    ex = _scale(_sub(c2, c1), 1.0 / d)
    ey = _rot90(ex)
    base = _add(c1, _scale(ex, a))
    if h == 0.0:
        return [base]
    return [_add(base, _scale(ey, h)), _add(base, _scale(ey, -h))]


def edge_intersections(
    e1: ArcEdge, e2: ArcEdge, *, unbounded: bool = False, atol: float = DEFAULT_ATOL
) -> list[tuple[float, float, Point]]:
    """Intersection points of two edges as (u1, u2, point).

    Parameters are in [0, 1] along each edge; with ``unbounded=True`` the
    supporting line/circle is used instead and parameters may fall outside
    [0, 1] (arc parameters pick the branch nearest the edge).
    """
    cands: list[tuple[float, float, Point]] = []
    if e1.is_segment and e2.is_segment:
        cands = _seg_seg_intersections(e1, e2, atol)
    elif e1.is_segment != e2.is_segment:
        seg, arc, swapped = (e1, e2, False) if e1.is_segment else (e2, e1, True)
        c = arc.center
        for t, x in _seg_circle(seg, c, arc.radius, atol):
            phi = math.atan2(x[1] - c[1], x[0] - c[0])
            u_arc = arc._param_of_angle(phi)
            if u_arc is None:
                continue
            cands.append((u_arc, t, x) if swapped else (t, u_arc, x))
    else:
        c1, c2 = e1.center, e2.center
        for x in _circle_circle(c1, e1.radius, c2, e2.radius, atol):
            phi1 = math.atan2(x[1] - c1[1], x[0] - c1[0])
            phi2 = math.atan2(x[1] - c2[1], x[0] - c2[0])
            u1 = e1._param_of_angle(phi1)
            u2 = e2._param_of_angle(phi2)
            if u1 is None or u2 is None:
                continue
            cands.append((u1, u2, x))
    if unbounded:
        return cands
    slack = 1e-9
    return [c for c in cands if -slack <= c[0] <= 1.0 + slack and -slack <= c[1] <= 1.0 + slack]


# ---------------------------------------------------------------------------
# closed chains


@dataclass(frozen=True)
class ArcGon:
    """Simple closed CCW chain of edges; the region lies on the left."""

    edges: tuple[ArcEdge, ...]
    meta: dict | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.edges) < 2:
            raise InvalidGeometry("a closed chain needs at least two edges")

    # -- basic checks ----------------------------------------------------

    def validate(self, *, full: bool = False, atol: float = DEFAULT_ATOL) -> None:
        """Raise InvalidGeometry on closure/orientation (and, with
        ``full=True``, simplicity) violations."""
        scale = self._scale()
        for a, b in zip(self.edges, self.edges[1:] + self.edges[:1]):
            if _dist(a.end, b.start) > 1e-6 * scale:
                raise InvalidGeometry(
                    f"chain not closed: gap {_dist(a.end, b.start):.3g} between edges"
                )
        if self.signed_area() <= 0.0:
            raise InvalidGeometry("chain is not positively oriented (or degenerate)")
        if full:
            bad = self._self_intersections(atol=atol)
            if bad:
                u1, u2, x, i, j = bad[0]
                raise InvalidGeometry(
                    f"chain self-intersects near ({x[0]:.6g}, {x[1]:.6g}) (edges {i}, {j})"
                )

    def _scale(self) -> float:
        xmin, ymin, xmax, ymax = self.bbox()
        return max(1.0, xmax - xmin, ymax - ymin)

    def _self_intersections(self, *, atol: float = DEFAULT_ATOL) -> list[tuple]:
        """Pairwise crossings between non-neighbouring edges (plus crossings of
        neighbours away from their shared vertex).  Sweep over x-sorted boxes."""
        m = len(self.edges)
        boxes = [e.bbox() for e in self.edges]
        scale = self._scale()
        pad = atol * scale
        order = sorted(range(m), key=lambda i: boxes[i][0])
        active: list[int] = []
        out = []
        for i in order:
            bi = boxes[i]
            active = [j for j in active if boxes[j][2] >= bi[0] - pad]
            for j in active:
                bj = boxes[j]
                if bi[1] > bj[3] + pad or bj[1] > bi[3] + pad:
                    continue
                lo, hi = (i, j) if i < j else (j, i)
                adjacent = (hi - lo == 1) or (lo == 0 and hi == m - 1)
                for u1, u2, x in edge_intersections(self.edges[lo], self.edges[hi], atol=atol):
                    if adjacent:
                        shared = self.edges[lo].end if hi - lo == 1 else self.edges[hi].end
                        if _dist(x, shared) <= 1e-7 * scale:
                            continue
                    out.append((u1, u2, x, lo, hi))
            active.append(i)
        return out

    # -- measures --------------------------------------------------------

    def signed_area(self) -> float:
        return math.fsum(e._area_contribution() for e in self.edges)

    def area(self) -> float:
        return abs(self.signed_area())

    def perimeter(self) -> float:
        return math.fsum(e.length for e in self.edges)

    def bbox(self) -> tuple[float, float, float, float]:
        boxes = [e.bbox() for e in self.edges]
        return (
            min(b[0] for b in boxes),
            min(b[1] for b in boxes),
            max(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )

    def vertices(self) -> list[Point]:
        return [e.start for e in self.edges]

    # -- point queries ---------------------------------------------------

    def boundary_distance(self, p: Point) -> float:
        return min(e.distance_to(p) for e in self.edges)

    def contains_point(self, p: Point, *, atol: float = DEFAULT_ATOL) -> bool:
        """Point-in-region test (boundary counts as inside, within atol)."""
        scale = self._scale()
        if self.boundary_distance(p) <= atol * scale:
            return True
        return self._parity(p, scale)

    def _parity(self, p: Point, scale: float) -> bool:
        # Ray casting with retry: directions are fixed; a cast is rejected if
        # any hit is tangential or lands near an edge endpoint.
        for k in range(12):
            ang = 0.5376 + k * 0.7639320225  # irrational step avoids axes
            d = (math.cos(ang), math.sin(ang))
            far = _add(p, _scale(d, 4.0 * scale))
            try:
                ray = ArcEdge(p, far, 0.0)
            except InvalidGeometry:
                return False
            count = 0
            ok = True
            for e in self.edges:
                hits = edge_intersections(ray, e, unbounded=True, atol=1e-12)
                for u_ray, u_edge, x in hits:
                    if u_ray < -1e-12 or u_ray * 4.0 * scale < 1e-12:
                        if -1e-9 < u_edge < 1.0 + 1e-9 and abs(u_ray) * 4.0 * scale < 1e-12:
                            ok = False  # ray origin essentially on the edge
                        continue
                    if u_ray > 1.0:
                        continue
                    if u_edge < -1e-9 or u_edge > 1.0 + 1e-9:
                        continue
                    if u_edge < 1e-7 or u_edge > 1.0 - 1e-7:
                        ok = False
                        break
                    # tangential grazing?
                    tang = e.tangent_at(min(1.0, max(0.0, u_edge)))
                    if abs(_cross(d, tang)) < 1e-7:
                        ok = False
                        break
                    count += 1
                if not ok:
                    break
            if ok:
                return count % 2 == 1
        raise NumericalFailure("point-in-region test failed to find a clean ray")

    # -- sampling --------------------------------------------------------

    def sample_boundary(self, n: int = 256) -> np.ndarray:
        """Roughly arclength-uniform boundary samples, shape (N, 2)."""
        per = self.perimeter()
        pts = []
        for e in self.edges:
            k = max(1, int(round(n * e.length / per)))
            for i in range(k):
                pts.append(e.point_at(i / k))
        return np.array(pts, dtype=float)

    # -- transforms ------------------------------------------------------

    def translated(self, dx: float, dy: float) -> "ArcGon":
        return ArcGon(tuple(e.translated(dx, dy) for e in self.edges), meta=self.meta)

    def scaled(self, lam: float) -> "ArcGon":
        return ArcGon(tuple(e.scaled(lam) for e in self.edges), meta=self.meta)

    def transformed(self, a: Sequence[Sequence[float]], b: Point = (0.0, 0.0)) -> "ArcGon":
        det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
        edges = [e.transformed(a, b) for e in self.edges]
        if det < 0.0:
            # orientation flipped; reverse the chain to stay CCW
            edges = [e.reversed() for e in reversed(edges)]
        return ArcGon(tuple(edges), meta=self.meta)

    # -- io --------------------------------------------------------------

    def to_dict(self) -> dict:
        d = {"edges": [edge_to_dict(e) for e in self.edges], "closed": True}
        if self.meta:
            d["meta"] = dict(self.meta)
        return d

    @staticmethod
    def from_dict(data: dict) -> "ArcGon":
        if not isinstance(data, dict) or "edges" not in data:
            raise InvalidInput("expected an object with an 'edges' array")
        if data.get("closed", True) is not True:
            raise InvalidInput("expected a closed chain")
        edges = tuple(edge_from_dict(item) for item in data["edges"])
        meta = data.get("meta")
        gon = ArcGon(edges, meta=meta)
        gon.validate()
        return gon


def edge_to_dict(e: ArcEdge) -> dict:
    return {
        "start": [e.start[0], e.start[1]],
        "end": [e.end[0], e.end[1]],
        "curvature": e.curvature,
    }


def edge_from_dict(data: dict) -> ArcEdge:
    try:
        start = (float(data["start"][0]), float(data["start"][1]))
        end = (float(data["end"][0]), float(data["end"][1]))
        kappa = float(data.get("curvature", 0.0))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidInput(f"malformed edge record: {exc}") from exc
    return ArcEdge(start, end, kappa)


def load_arcgon(path) -> ArcGon:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}") from exc
    return ArcGon.from_dict(data)


def save_arcgon(gon: ArcGon, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(gon.to_dict(), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# region sets


@dataclass(frozen=True)
class RegionSet:
    """Result of an erosion: zero or more closed chains, possibly degenerate
    isolated points (a fully collapsed region)."""

    components: tuple[ArcGon, ...] = ()
    points: tuple[Point, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.components and not self.points

    def area(self) -> float:
        return math.fsum(c.area() for c in self.components)

    def perimeter(self) -> float:
        return math.fsum(c.perimeter() for c in self.components)


# ---------------------------------------------------------------------------
# offsets (erosion / dilation)


_LIVE = "live"
_COLLAPSED = "collapsed"


def _offset_edge(e: ArcEdge, r: float, inward: bool, scale: float):
    """Offset one edge by r to the interior (inward) or exterior side.

    Returns ("live", edge) or ("collapsed", center_point).  Raises
    FallbackRequired if the edge curvature is out of the exact class.
    """
    s = 1.0 if inward else -1.0  # displacement along the left normal
    if e.is_segment:
        n = _rot90(e.tangent_at(0.0))
        d = _scale(n, s * r)
        return (_LIVE, ArcEdge(_add(e.start, d), _add(e.end, d), 0.0))
    rho = e.radius
    c = e.center
    # inward offset shrinks left-turning arcs; outward shrinks right-turning
    shrinks = (e.curvature > 0.0) == inward
    rho_new = rho - r if shrinks else rho + r
    tol = 1e-12 * max(rho, scale)
    if shrinks and rho_new <= tol:
        if rho_new < -tol:
            raise FallbackRequired(
                f"offset radius {r:.6g} exceeds arc radius {rho:.6g}; "
                "edge curvature out of the exact offset class"
            )
        return (_COLLAPSED, c)
    f = rho_new / rho
    p = _add(c, _scale(_sub(e.start, c), f))
    q = _add(c, _scale(_sub(e.end, c), f))
    return (_LIVE, ArcEdge(p, q, math.copysign(1.0 / rho_new, e.curvature)))


def _trim_pair(a: ArcEdge, b: ArcEdge, corner: Point, atol: float) -> tuple[ArcEdge, ArcEdge]:
    """Trim edge a's end and edge b's start to their intersection nearest the
    original corner."""
    cands = edge_intersections(a, b, unbounded=True, atol=atol)
    if not cands:
        raise FallbackRequired("offset edges at a trimmed corner do not intersect")
    _, _, x = min(cands, key=lambda t: _dist(t[2], corner))
    try:
        a2 = ArcEdge(a.start, x, a.curvature)
        b2 = ArcEdge(x, b.end, b.curvature)
    except InvalidGeometry as exc:
        raise FallbackRequired(f"corner trim degenerates an edge: {exc}") from exc
    return a2, b2


def _offset_arcgon(gon: ArcGon, r: float, *, inward: bool, atol: float = DEFAULT_ATOL):
    """Shared erosion/dilation core.

    Returns ("chain", ArcGon) | ("points", list[Point]) | ("empty",).
    """
    scale = gon._scale()
    snap_dist = 1e-6 * scale
    angle_snap = 1e-7

    if inward:
        for e in gon.edges:
            if e.curvature > 0.0 and e.curvature * r > 1.0 + 1e-12:
                raise FallbackRequired(
                    f"convex arc curvature {e.curvature:.6g} exceeds 1/r = {1.0 / r:.6g}"
                )
    else:
        # no oracle can stand in for an inadmissible dilation radius, so this
        # is an input error rather than a fallback signal
        for e in gon.edges:
            if e.curvature < 0.0 and -e.curvature * r > 1.0 + 1e-12:
                raise InvalidParameter(
                    f"dilation radius {r:.6g} exceeds the concave-arc radius "
                    f"bound {-1.0 / e.curvature:.6g}"
                )

    m = len(gon.edges)
    items = [_offset_edge(e, r, inward, scale) for e in gon.edges]

    # Resolve junctions.  A collapsed edge takes part as the degenerate point
    # at its centre (which sits at distance exactly r from both original
    # endpoints, so corner-arc inserts stay valid on either side of it).
    live = [list(it) for it in items]  # mutable copies [kind, payload]
    inserts: list[ArcEdge | None] = [None] * m
    trim_dropped = False

    for i in range(m):
        j = (i + 1) % m
        ka, pa = live[i]
        kb, pb = live[j]
        corner = gon.edges[i].end
        a_end = pa if ka == _COLLAPSED else pa.end
        b_start = pb if kb == _COLLAPSED else pb.start
        t_in = gon.edges[i].tangent_at(1.0)
        t_out = gon.edges[j].tangent_at(0.0)
        turn = _turn_angle(t_in, t_out)
        insert_side = turn < 0.0 if inward else turn > 0.0
        if abs(turn) <= angle_snap:
            gap = _dist(a_end, b_start)
            if gap > snap_dist:
                raise FallbackRequired(f"tangent-continuous junction left a gap of {gap:.3g}")
            if gap > 0.0 and ka == _LIVE and kb == _LIVE:
                mid = _scale(_add(a_end, b_start), 0.5)
                live[i][1] = ArcEdge(pa.start, mid, pa.curvature)
                live[j][1] = ArcEdge(mid, pb.end, pb.curvature)
        elif insert_side:
            sgn = -1.0 if inward else 1.0
            if _dist(a_end, b_start) <= 1e-12 * scale:
                continue  # numerically closed already
            inserts[i] = ArcEdge(a_end, b_start, sgn / r)
        else:
            if ka == _COLLAPSED or kb == _COLLAPSED:
                # region vanished locally; legitimate only if nothing survives
                trim_dropped = True
                continue
            a2, b2 = _trim_pair(pa, pb, corner, atol)
            live[i][1] = a2
            live[j][1] = b2

    chain: list[ArcEdge] = []
    for i in range(m):
        kind, payload = live[i]
        if kind == _LIVE:
            chain.append(payload)
        if inserts[i] is not None:
            chain.append(inserts[i])
    if not chain:
        # Everything collapsed.  A centre belongs to the eroded set iff its
        # distance to the whole original boundary is still >= r.
        pts: list[Point] = []
        for kind, c in items:
            if kind != _COLLAPSED:
                continue
            if inward and gon.boundary_distance(c) < r - snap_dist:
                continue
            if not any(_dist(c, p) <= snap_dist for p in pts):
                pts.append(c)
        return ("points", pts) if pts else ("empty",)
    if trim_dropped:
        raise FallbackRequired("collapsed arc at a trimming junction")
    if len(chain) == 1:
        raise FallbackRequired("offset left a single dangling edge")

    # continuity audit
    for a, b in zip(chain, chain[1:] + chain[:1]):
        if _dist(a.end, b.start) > snap_dist:
            raise FallbackRequired(
                f"offset chain has a gap of {_dist(a.end, b.start):.3g}"
            )

    out = ArcGon(tuple(chain))
    sa = out.signed_area()
    if sa <= (1e-12 * scale) ** 2:
        return ("empty",)
    if sa < 0.0:
        return ("empty",)
    if out._self_intersections(atol=atol):
        raise FallbackRequired("offset chain self-intersects (region disconnects or vanishes)")
    return ("chain", out)


def inner_parallel(gon: ArcGon, r: float, *, atol: float = DEFAULT_ATOL) -> RegionSet:
    """Erosion: the set of interior points at distance >= r from the boundary.

    Exact for chains whose convex-side arcs satisfy ``curvature * r <= 1``;
    raises FallbackRequired when exactness cannot be certified (the caller
    should escalate to the raster oracle).
    """
    if r < 0.0 or not math.isfinite(r):
        raise InvalidParameter(f"offset distance must be nonnegative, got {r}")
    if r == 0.0:
        return RegionSet((gon,), ())
    kind, *rest = _offset_arcgon(gon, r, inward=True, atol=atol)
    if kind == "empty":
        return RegionSet((), ())
    if kind == "points":
        return RegionSet((), tuple(rest[0]))
    return RegionSet((rest[0],), ())


def minkowski_disc(region: RegionSet | ArcGon, r: float, *, atol: float = DEFAULT_ATOL) -> ArcGon:
    """Dilation by a closed disc of radius r.

    Accepts a single chain, or a RegionSet with exactly one component (a
    degenerate single point dilates to a disc).  A RegionSet with several
    far-apart components raises NotConnected; components whose dilations
    would overlap need a boolean union, which the exact route does not
    provide (FallbackRequired).
    """
    if r <= 0.0 or not math.isfinite(r):
        raise InvalidParameter(f"dilation radius must be positive, got {r}")
    if isinstance(region, ArcGon):
        return _dilate_gon(region, r, atol)
    if region.is_empty:
        raise EmptyRegion("cannot dilate an empty region")
    n_parts = len(region.components) + len(region.points)
    if n_parts > 1:
        parts: list[ArcGon] = [_dilate_gon(g, r, atol) for g in region.components]
        parts += [_point_disc(p, r) for p in region.points]
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if _gons_touch(parts[i], parts[j], atol):
                    raise FallbackRequired(
                        "dilated components overlap; boolean union is not supported"
                    )
        raise NotConnected(f"region has {n_parts} components; dilation is not connected")
    if region.components:
        return _dilate_gon(region.components[0], r, atol)
    return _point_disc(region.points[0], r)


def _point_disc(p: Point, r: float) -> ArcGon:
    east = (p[0] + r, p[1])
    west = (p[0] - r, p[1])
    return ArcGon((ArcEdge(east, west, 1.0 / r), ArcEdge(west, east, 1.0 / r)))


def _gons_touch(a: ArcGon, b: ArcGon, atol: float) -> bool:
    ba, bb = a.bbox(), b.bbox()
    if ba[2] < bb[0] or bb[2] < ba[0] or ba[3] < bb[1] or bb[3] < ba[1]:
        return False
    for e1 in a.edges:
        for e2 in b.edges:
            if edge_intersections(e1, e2, atol=atol):
                return True
    return a.contains_point(b.edges[0].start) or b.contains_point(a.edges[0].start)


def _dilate_gon(gon: ArcGon, r: float, atol: float) -> ArcGon:
    kind, *rest = _offset_arcgon(gon, r, inward=False, atol=atol)
    if kind != "chain":
        raise NumericalFailure("dilation unexpectedly produced no chain")
    return rest[0]


# ---------------------------------------------------------------------------
# distances between chains


def contains_disc(g: ArcGon, c: Point, r: float, *, tol: float = DEFAULT_ATOL) -> bool:
    """True iff the closed disc of radius r about c lies inside g: the centre
    is interior and its boundary distance is at least r - tol."""
    if not (r > 0.0):
        raise InvalidParameter(f"disc radius must be positive, got {r!r}")
    if not (math.isfinite(c[0]) and math.isfinite(c[1])):
        return False
    if g.boundary_distance(c) < r - tol:
        return False
    try:
        return g.contains_point(c)
    except NumericalFailure:
        return False


def boundary_distances(gon: ArcGon, pts: np.ndarray) -> np.ndarray:
    """Distance from each point in `pts` (shape (N, 2)) to the boundary of
    `gon`; one numpy pass per edge."""
    p = np.asarray(pts, dtype=float)
    if p.ndim == 1:
        p = p[None, :]
    best = np.full(len(p), np.inf)
    for e in gon.edges:
        if e.is_segment:
            v = np.subtract(e.end, e.start)
            t = np.clip((p - e.start) @ v / (v @ v), 0.0, 1.0)
            foot = np.asarray(e.start) + t[:, None] * v
            d = np.hypot(p[:, 0] - foot[:, 0], p[:, 1] - foot[:, 1])
        else:
            c, a0, sweep = e._angles()
            dc = np.hypot(p[:, 0] - c[0], p[:, 1] - c[1])
            phi = np.arctan2(p[:, 1] - c[1], p[:, 0] - c[0])
            rel = np.mod((phi - a0) * math.copysign(1.0, sweep), 2.0 * math.pi)
            on_arc = rel <= abs(sweep) * (1.0 + 1e-12)
            d_end = np.minimum(
                np.hypot(p[:, 0] - e.start[0], p[:, 1] - e.start[1]),
                np.hypot(p[:, 0] - e.end[0], p[:, 1] - e.end[1]),
            )
            d = np.where(on_arc, np.abs(dc - e.radius), d_end)
        np.minimum(best, d, out=best)
    return best


def hausdorff_distance(a: ArcGon, b: ArcGon, *, samples: int = 512) -> float:
    """Symmetric Hausdorff distance between two boundaries, estimated from
    arclength samples (exact up to the sampling density)."""
    pa = a.sample_boundary(samples)
    pb = b.sample_boundary(samples)
    return max(float(boundary_distances(b, pa).max()), float(boundary_distances(a, pb).max()))
