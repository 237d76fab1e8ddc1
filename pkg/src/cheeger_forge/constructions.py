"""Builders for the sharp example domains.

Two families, both tuned so that the erosion by 1/H has area exactly
pi/H^2 (making 1/H the solved Cheeger radius):

* a regular k-gon whose edges are replaced by outward arcs of radius 1/H
  (boundary Lipschitz, reflex corners) — admissible only for k >= 6;
* a square with four staircase-profile bulges glued by quarter circles
  (boundary C^1, contact structure a Cantor set).

Plus ambient perturbations that leave a prescribed contact set, and the
contact-set extractor used to verify them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cantor import StaircaseParams
from .errors import (
    DeltaTooLarge,
    InvalidInput,
    InvalidParameter,
    NoSolution,
    NumericalFailure,
)
from .geometry import (
    ArcEdge,
    ArcGon,
    Point,
    arc_through,
    boundary_distances,
    inner_parallel,
)
from .profile import Profile, u_arc_chain

__all__ = [
    "KgonSpec",
    "CantorDomainSpec",
    "PerturbationSpec",
    "ContactSet",
    "build_kgon_domain",
    "inner_area_kgon",
    "solve_rho0",
    "build_cantor_domain",
    "solve_ell0",
    "delta_max",
    "build_perturbed_domain",
    "contact_set",
    "build_dumbbell_domain",
]


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class KgonSpec:
    """Bulged regular k-gon: edge length rho, edge arcs of radius 1/H."""

    k: int
    H: float
    rho: float

    def __post_init__(self) -> None:
        if not isinstance(self.k, (int, np.integer)) or self.k < 3:
            raise InvalidParameter(f"side count must be an integer >= 3, got {self.k!r}")
        if not (self.H > 0.0 and math.isfinite(self.H)):
            raise InvalidParameter(f"curvature must be positive, got {self.H!r}")
        if not (self.rho > 1e-9):
            raise InvalidParameter(f"edge length {self.rho!r} too small (degenerate polygon)")
        if self.rho >= 2.0 / self.H:
            raise InvalidParameter(
                f"edge length {self.rho:.6g} must stay below the arc diameter 2/H = {2.0 / self.H:.6g}"
            )
        object.__setattr__(self, "k", int(self.k))

    @property
    def beta(self) -> float:
        """Angle spanned by each edge arc: rho = (2/H) sin(beta/2)."""
        return 2.0 * math.asin(self.H * self.rho / 2.0)


@dataclass(frozen=True)
class CantorDomainSpec:
    params: StaircaseParams
    corner_radius: float = field(default=0.0)

    def __post_init__(self) -> None:
        if self.corner_radius == 0.0:
            object.__setattr__(self, "corner_radius", 1.0 / self.params.H)
        elif not math.isclose(self.corner_radius, 1.0 / self.params.H, rel_tol=1e-12):
            raise InvalidParameter("corner radius must equal 1/H")


@dataclass(frozen=True)
class PerturbationSpec:
    delta: float
    bump: str = "exp(4 - 1/(s(1-s))) per gap, height delta * gap width / max gap width"

    def __post_init__(self) -> None:
        if self.delta < 0.0 or not math.isfinite(self.delta):
            raise InvalidParameter(f"perturbation amplitude must be >= 0, got {self.delta!r}")


@dataclass(frozen=True)
class ContactSet:
    """Loci where an inner domain's boundary touches the ambient boundary:
    isolated points plus arclength-parameter intervals on the inner boundary."""

    points: tuple[Point, ...]
    intervals_param: tuple[tuple[float, float], ...]

    def count(self) -> int:
        return len(self.points) + len(self.intervals_param)

    def to_dict(self) -> dict:
        return {
            "points": [[p[0], p[1]] for p in self.points],
            "intervals_param": [[a, b] for a, b in self.intervals_param],
        }

    @staticmethod
    def from_dict(data: dict) -> "ContactSet":
        try:
            pts = tuple((float(x), float(y)) for x, y in data.get("points", []))
            ivs = tuple((float(a), float(b)) for a, b in data.get("intervals_param", []))
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed contact-set record: {exc}") from exc
        return ContactSet(pts, ivs)


# ---------------------------------------------------------------------------
# k-gon family


def build_kgon_domain(s: KgonSpec) -> ArcGon:
    """Closed chain of k outward arcs of curvature H over the edges of a
    regular k-gon with edge length rho.

    The interior angle at each vertex is pi - 2 pi/k + beta, so vertices are
    reflex exactly when beta > 2 pi/k.
    """
    k, beta = s.k, s.beta
    r_circ = s.rho / (2.0 * math.sin(math.pi / k))
    verts = [
        (r_circ * math.cos(2.0 * math.pi * i / k), r_circ * math.sin(2.0 * math.pi * i / k))
        for i in range(k)
    ]
    edges = tuple(
        ArcEdge(verts[i], verts[(i + 1) % k], s.H) for i in range(k)
    )
    gon = ArcGon(edges, meta={"kind": "kgon", "k": k, "H": s.H, "rho": s.rho, "beta": beta})
    gon.validate()
    return gon


def inner_area_kgon(s: KgonSpec) -> float:
    """Area of the erosion by 1/H of the bulged k-gon, in closed form.

    The eroded set is bounded by k inward arcs of radius 1/H centred at the
    polygon vertices, whose corners sit at the edge-arc centres.  With
    phi = beta/2 - pi/k that region is a regular k-gon of circumradius
    sin(phi)/(H sin(pi/k)) minus k circular segments of half-angle phi:

        area = (k/H^2) * (cot(pi/k) sin^2(phi) - phi + sin(2 phi)/2)

    Empty (area 0) while beta <= 2 pi/k, i.e. while the incircle of the
    bulged k-gon has radius below 1/H.
    """
    phi = s.beta / 2.0 - math.pi / s.k
    if phi <= 0.0:
        return 0.0
    k = s.k
    return (k / (s.H * s.H)) * (
        math.sin(phi) ** 2 / math.tan(math.pi / k) - phi + math.sin(2.0 * phi) / 2.0
    )


def solve_rho0(k: int, H: float, tol: float = 1e-10) -> float:
    """Edge length rho0 at which the erosion by 1/H has area exactly pi/H^2.

    Exists only for k >= 6: as the edge arcs approach half circles the
    erosion area tends to (k cot(pi/k) - k pi/2 + pi)/H^2, which exceeds
    pi/H^2 exactly when cot(pi/k) > pi/2.
    """
    if not isinstance(k, (int, np.integer)) or k < 3:
        raise InvalidParameter(f"side count must be an integer >= 3, got {k!r}")
    if not (H > 0.0 and math.isfinite(H)):
        raise InvalidParameter(f"curvature must be positive, got {H!r}")
    if tol <= 0.0:
        raise InvalidParameter("tolerance must be positive")
    if 1.0 / math.tan(math.pi / k) <= math.pi / 2.0:
        raise NoSolution(
            f"k = {k}: the limiting erosion area stays below the disc area pi/H^2 "
            "(needs cot(pi/k) > pi/2, which first holds at k = 6)"
        )
    target = math.pi / (H * H)

    def resid(beta: float) -> float:
        return inner_area_kgon(KgonSpec(k, H, 2.0 * math.sin(beta / 2.0) / H)) - target

    lo, hi = 2.0 * math.pi / k, math.pi
    # resid(lo) = -pi/H^2 < 0; resid(hi) > 0 for k >= 6
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r = resid(mid)
        if abs(r) <= tol:
            return 2.0 * math.sin(mid / 2.0) / H
        if r < 0.0:
            lo = mid
        else:
            hi = mid
    raise NumericalFailure(
        f"rho0 bisection did not reach residual {tol:.1e} in 200 iterations "
        f"(bracket [{lo:.17g}, {hi:.17g}])"
    )


# ---------------------------------------------------------------------------
# Cantor family


def _side_transforms(ell: float, H: float):
    """Similarity (A, b) per side mapping profile coordinates (t, u) onto the
    outward-offset graph along the bottom, right, top, left side (CCW)."""
    h = 1.0 / H
    return [
        ([[1.0, 0.0], [0.0, -1.0]], (0.0, -h)),
        ([[0.0, 1.0], [1.0, 0.0]], (ell + h, 0.0)),
        ([[-1.0, 0.0], [0.0, 1.0]], (ell, ell + h)),
        ([[0.0, -1.0], [-1.0, 0.0]], (-h, ell)),
    ]


def build_cantor_domain(s: CantorDomainSpec | StaircaseParams) -> ArcGon:
    """Square of side ell with four outward staircase-profile bulges at
    distance 1/H, glued C^1 by quarter circles at the corners."""
    if isinstance(s, StaircaseParams):
        s = CantorDomainSpec(s)
    p = s.params
    profile = u_arc_chain(p)
    ell, H = p.ell, p.H
    h = 1.0 / H
    corners = [(ell, 0.0), (ell, ell), (0.0, ell), (0.0, 0.0)]
    corner_from = [(ell, -h), (ell + h, ell), (0.0, ell + h), (-h, 0.0)]
    corner_to = [(ell + h, 0.0), (ell, ell + h), (-h, ell), (0.0, -h)]
    edges: list[ArcEdge] = []
    for i, (a, b) in enumerate(_side_transforms(ell, H)):
        side = [e.transformed(a, b) for e in profile.edges]
        edges.extend(side)
        edges.append(ArcEdge(corner_from[i], corner_to[i], H))
        assert _dist2(side[-1].end, corner_from[i]) < 1e-18
    gon = ArcGon(
        tuple(edges),
        meta={"kind": "cantor", "tau": p.tau, "n": p.n, "H": H, "ell": ell},
    )
    gon.validate()
    return gon


def _dist2(a: Point, b: Point) -> float:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def solve_ell0(tau: float, n: int, H: float, tol: float = 1e-10) -> float:
    """Square side ell0 at which the erosion by 1/H of the Cantor-profile
    domain has area exactly pi/H^2; lies in [1/(H sqrt 2), sqrt(pi)/H]."""
    if tol <= 0.0:
        raise InvalidParameter("tolerance must be positive")
    target = math.pi / (H * H)

    def resid(ell: float) -> float:
        params = StaircaseParams(H=H, ell=ell, tau=tau, n=n)
        domain = build_cantor_domain(CantorDomainSpec(params))
        region = inner_parallel(domain, 1.0 / H)
        return region.area() - target

    lo = 1.0 / (H * math.sqrt(2.0))
    hi = math.sqrt(math.pi) / H
    f_lo, f_hi = resid(lo), resid(hi)
    # the flat-profile family roots exactly at the right endpoint, where
    # roundoff can flip the residual sign
    if abs(f_lo) <= tol:
        return lo
    if abs(f_hi) <= tol:
        return hi
    if not (f_lo < 0.0 < f_hi):
        raise NumericalFailure(
            f"no sign change over [{lo:.6g}, {hi:.6g}]: residuals {f_lo:.3g}, {f_hi:.3g}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r = resid(mid)
        if abs(r) <= tol:
            return mid
        if r < 0.0:
            lo = mid
        else:
            hi = mid
    raise NumericalFailure(
        f"ell0 bisection did not reach residual {tol:.1e} in 200 iterations"
    )


# ---------------------------------------------------------------------------
# perturbed ambients


def delta_max(base: ArcGon) -> float:
    """Safety bound for the outward perturbation amplitude.

    For every boundary arc spanning more than pi/2 the pushed arc must stay
    short of self-intersection: the sector bound 2 rho sin((pi - span)/2).
    Independently the push may never exceed the smallest convex arc radius.
    """
    cap = math.inf
    for e in base.edges:
        if e.curvature > 0.0:
            cap = min(cap, e.radius)
            if e.span > math.pi / 2.0:
                cap = min(cap, 2.0 * e.radius * math.sin((math.pi - e.span) / 2.0))
    if not math.isfinite(cap):
        raise InvalidInput("domain has no convex arcs; no perturbation bound available")
    return cap


def _bump1(sigma: float) -> float:
    """C-infinity bump on (0,1), peak 1 at 1/2, flat to all orders at 0, 1."""
    if sigma <= 0.0 or sigma >= 1.0:
        return 0.0
    return math.exp(4.0 - 1.0 / (sigma * (1.0 - sigma)))


def _min_clearance(piece: ArcEdge, c: tuple[float, float], rho: float) -> float:
    """Exact min over the piece of |x - c| - rho (negative: dips inside the
    circle of radius rho about c)."""
    lo = min(math.hypot(piece.start[0] - c[0], piece.start[1] - c[1]),
             math.hypot(piece.end[0] - c[0], piece.end[1] - c[1]))
    if piece.is_segment:
        v = (piece.end[0] - piece.start[0], piece.end[1] - piece.start[1])
        vv = v[0] * v[0] + v[1] * v[1]
        if vv > 0.0:
            t = ((c[0] - piece.start[0]) * v[0] + (c[1] - piece.start[1]) * v[1]) / vv
            if 0.0 < t < 1.0:
                foot = (piece.start[0] + t * v[0], piece.start[1] + t * v[1])
                lo = min(lo, math.hypot(foot[0] - c[0], foot[1] - c[1]))
        return lo - rho
    q, a0, sweep = piece._angles()
    dqc = math.hypot(c[0] - q[0], c[1] - q[1])
    if dqc > 0.0:
        phi = math.atan2(c[1] - q[1], c[0] - q[0])
        rel = math.fmod((phi - a0) * math.copysign(1.0, sweep), 2.0 * math.pi)
        if rel < 0.0:
            rel += 2.0 * math.pi
        if rel <= abs(sweep):
            lo = min(lo, abs(dqc - piece.radius))
    return lo - rho


def _interp_chain(point, c: Point, rho: float, span: float) -> list[ArcEdge]:
    """Arc chain through samples of the curve `point`: [0,1] -> R^2.

    A three-point arc interpolant has cubic error in the node spacing and
    can (a) dip inside the base arc (circle of radius rho about c) where
    the pushed curve hugs it and (b) stray sideways from the true curve on
    its steep stretches, so any sub-chain whose exact clearance to that
    circle goes negative, or whose distance to the curve at the quarter
    points exceeds the accuracy tolerance, is split at the midpoint and
    rebuilt.  The result encloses the base arc to within 1e-11 * radius
    and tracks the curve to within 1e-6 * radius — far below the minimum
    separation of neighboring pushed walls, so the chain stays simple —
    while the endpoints (and with them the contact set) stay exact.
    """
    tol = 1e-11 * rho
    atol = 1e-6 * rho
    pieces = max(3, min(24, int(math.ceil(span / 0.06))))

    def good(sub: list[ArcEdge], s0: float, s1: float) -> bool:
        if any(_min_clearance(p, c, rho) < -tol for p in sub):
            return False
        for f in (0.25, 0.75):
            x = point(s0 + f * (s1 - s0))
            if min(p.distance_to(x) for p in sub) > atol:
                return False
        return True

    def rec(s0: float, s1: float, x0, x1, depth: int) -> list[ArcEdge]:
        sm = 0.5 * (s0 + s1)
        xm = point(sm)
        sub = arc_through(x0, xm, x1)
        if depth >= 24 or good(sub, s0, s1):
            return sub
        return rec(s0, sm, x0, xm, depth + 1) + rec(sm, s1, xm, x1, depth + 1)

    out: list[ArcEdge] = []
    nodes = np.linspace(0.0, 1.0, pieces + 1)
    x_prev = point(0.0)
    for i in range(pieces):
        x_next = point(float(nodes[i + 1]))
        out.extend(rec(float(nodes[i]), float(nodes[i + 1]), x_prev, x_next, 0))
        x_prev = x_next
    return out


def _pushed_edge_chain(e: ArcEdge, delta: float) -> list[ArcEdge]:
    """Replace a convex arc by a chain through samples of the outward
    normal push x(s) + delta * bump(s) * nu(s)."""
    c = e.center
    rho = e.radius

    def point(s: float) -> Point:
        if s <= 0.0:
            return e.start
        if s >= 1.0:
            return e.end
        d_val = delta * _bump1(s)
        x = e.point_at(s)
        return (
            x[0] + d_val * (x[0] - c[0]) / rho,
            x[1] + d_val * (x[1] - c[1]) / rho,
        )

    return _interp_chain(point, c, rho, e.span)


def _pushed_graph_chain(prof: Profile, j: int, delta: float) -> list[ArcEdge]:
    """Replace gap arc j of a profile graph by a chain through samples of
    the lifted graph (t, u(t) + delta * bump(t)) over the gap.

    The push is vertical in the graph frame, so each perturbed side stays
    the graph of a function and cannot self-intersect no matter how the
    deep gaps crowd together (a normal push tilts neighboring bumps into
    each other there)."""
    pe = prof.edges[j]
    a, b = pe.start[0], pe.end[0]
    w = b - a

    def point(s: float) -> Point:
        if s <= 0.0:
            return pe.start
        if s >= 1.0:
            return pe.end
        t = a + s * w
        return (t, float(prof.eval(t)) + delta * _bump1(s))

    return _interp_chain(point, pe.center, pe.radius, pe.span)


def build_perturbed_domain(
    base: ArcGon, p: PerturbationSpec, kind: str
) -> tuple[ArcGon, ContactSet]:
    """Ambient domain containing `base`, equal to it exactly on the
    prescribed contact set and pushed outward by up to delta elsewhere.

    kind="lipschitz": every edge arc is replaced by one outward arc through
    the delta-pushed midpoint; contact = the vertices.

    kind="cantor": concave (stage) arcs are kept verbatim; gap arcs and
    corner quarter-circles are pushed outward under a smooth bump vanishing
    to all orders at their endpoints; contact = the kept arcs.
    """
    if kind not in ("lipschitz", "cantor"):
        raise InvalidParameter(f"unknown perturbation kind {kind!r}")
    dmax = delta_max(base)
    if p.delta >= dmax:
        raise DeltaTooLarge(f"delta = {p.delta:.6g} >= safety bound {dmax:.6g}")
    prefix = _arclength_prefix(base)
    if p.delta == 0.0:
        warnings.warn("zero perturbation: ambient equals the base domain", stacklevel=2)
        whole = ((0.0, prefix[-1]),)
        return base, ContactSet((), whole)

    if kind == "lipschitz":
        edges: list[ArcEdge] = []
        for e in base.edges:
            c = e.center
            mid = e.point_at(0.5)
            nu = ((mid[0] - c[0]) / e.radius, (mid[1] - c[1]) / e.radius)
            out_mid = (mid[0] + p.delta * nu[0], mid[1] + p.delta * nu[1])
            edges.extend(arc_through(e.start, out_mid, e.end))
        omega = ArcGon(tuple(edges), meta={"kind": "perturbed-lipschitz", "delta": p.delta})
        omega.validate()
        return omega, ContactSet(tuple(base.vertices()), ())

    # cantor: keep the stage arcs; push each gap arc vertically in its
    # side's graph frame and the corner quarter-circles along their normals
    meta = base.meta or {}
    if meta.get("kind") != "cantor":
        raise InvalidInput(
            "cantor perturbation needs a domain built from a staircase profile"
        )
    params = StaircaseParams(
        H=float(meta["H"]),
        ell=float(meta["ell"]),
        tau=float(meta["tau"]),
        n=int(meta["n"]),
    )
    prof = u_arc_chain(params)
    n_prof = len(prof.edges)
    if len(base.edges) != 4 * (n_prof + 1):
        raise InvalidInput("domain edge count does not match its staircase metadata")
    side_tf = _side_transforms(params.ell, params.H)
    # bump height proportional to gap width: every gap is pushed strictly
    # outward, the widest by the full delta, so wall slopes stay uniformly
    # bounded instead of growing like the inverse gap width at deep stages
    gap_w = {
        j: pe.end[0] - pe.start[0]
        for j, pe in enumerate(prof.edges)
        if pe.curvature < 0.0
    }
    w_max = max(gap_w.values(), default=0.0)
    edges = []
    intervals: list[tuple[float, float]] = []
    kept_any = False
    for m, e in enumerate(base.edges):
        block, off = divmod(m, n_prof + 1)
        if off == n_prof:  # corner quarter-circle
            edges.extend(_pushed_edge_chain(e, p.delta))
            continue
        pe = prof.edges[off]
        if pe.curvature >= 0.0:  # stage arc (flat for n = 0): kept, contact
            edges.append(e)
            intervals.append((prefix[m], prefix[m + 1]))
            kept_any = True
            continue
        a_mat, b_vec = side_tf[block]
        height = p.delta * gap_w[off] / w_max
        for piece in _pushed_graph_chain(prof, off, height):
            edges.append(piece.transformed(a_mat, b_vec))
    if not kept_any:
        raise InvalidInput("domain has no stage arcs to keep; not a Cantor-profile build")
    omega = ArcGon(tuple(edges), meta={"kind": "perturbed-cantor", "delta": p.delta})
    omega.validate()
    return omega, ContactSet((), tuple(_merge_intervals(intervals)))


def _arclength_prefix(gon: ArcGon) -> np.ndarray:
    lens = np.array([e.length for e in gon.edges])
    return np.concatenate(([0.0], np.cumsum(lens)))


def _merge_intervals(ivs: list[tuple[float, float]]) -> list[tuple[float, float]]:
    if not ivs:
        return []
    ivs = sorted(ivs)
    out = [list(ivs[0])]
    for a, b in ivs[1:]:
        if a <= out[-1][1] + 1e-12:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


# ---------------------------------------------------------------------------
# contact extraction


def contact_set(E: ArcGon, Omega: ArcGon, tol: float = 1e-9) -> ContactSet:
    """Loci where the boundary of E touches the boundary of Omega.

    Edges of E that coincide with an edge of Omega (as whole arcs, within
    tol) become arclength intervals; otherwise near-touching runs of
    boundary samples collapse to isolated points.  E must lie inside Omega.
    """
    scale = max(Omega._scale(), E._scale())
    samples = E.sample_boundary(max(512, 8 * len(E.edges)))
    d_omega = boundary_distances(Omega, samples)
    inside_slack = max(tol, 2e-3) * scale
    for (x, y), d in zip(samples, d_omega):
        if d > inside_slack and not Omega.contains_point((x, y)):
            raise InvalidInput(
                f"inner domain leaves the ambient near ({x:.6g}, {y:.6g})"
            )

    prefix = _arclength_prefix(E)
    atol = max(tol, 1e-12) * scale
    omega_index: dict[tuple[int, int], list[ArcEdge]] = {}
    q = max(atol, 1e-9 * scale)
    for oe in Omega.edges:
        key = (int(round(oe.start[0] / q)), int(round(oe.start[1] / q)))
        omega_index.setdefault(key, []).append(oe)
    intervals: list[tuple[float, float]] = []
    matched = np.zeros(len(E.edges), dtype=bool)
    for i, ee in enumerate(E.edges):
        kx = ee.start[0] / q
        ky = ee.start[1] / q
        found = False
        for key in {(int(math.floor(kx + dx)), int(math.floor(ky + dy)))
                    for dx in (0.0, 0.5, 1.0) for dy in (0.0, 0.5, 1.0)}:
            for oe in omega_index.get(key, ()):  # pragma: no branch
                if (
                    _dist2(oe.start, ee.start) <= atol * atol
                    and _dist2(oe.end, ee.end) <= atol * atol
                    and abs(oe.curvature - ee.curvature) * max(ee.chord, 1.0) <= 1e-6
                ):
                    found = True
                    break
            if found:
                break
        if found:
            matched[i] = True
            intervals.append((float(prefix[i]), float(prefix[i + 1])))
    merged = _merge_intervals(intervals)

    points: list[Point] = []
    if not merged:
        # metric fallback: isolated touch points from below-tol sample runs
        close = d_omega <= atol
        if np.any(close):
            idx = np.flatnonzero(close)
            gaps = np.flatnonzero(np.diff(idx) > 1)
            runs = np.split(idx, gaps + 1)
            verts = E.vertices()
            span = E.perimeter() / len(samples)
            for run in runs:
                best = run[int(np.argmin(d_omega[run]))]
                cand = (float(samples[best][0]), float(samples[best][1]))
                near = min(verts, key=lambda v: _dist2(v, cand))
                if _dist2(near, cand) <= (2.0 * span) ** 2:
                    cand = near
                if all(_dist2(cand, q0) > (2.0 * span) ** 2 for q0 in points):
                    points.append(cand)
    if not merged and not points:
        warnings.warn(
            "boundaries never touch (a true Cheeger pair meets its ambient "
            "boundary in at least two points)",
            stacklevel=2,
        )
    return ContactSet(tuple(points), tuple(merged))


# ---------------------------------------------------------------------------
# auxiliary test domain


def build_dumbbell_domain(
    radius: float = 1.0, neck_half_width: float = 0.15, center_offset: float = 2.0
) -> ArcGon:
    """Two discs joined by a thin rectangular bridge — the classic domain
    whose erosion at the solved radius disconnects (a neck)."""
    if not (0.0 < neck_half_width < radius <= center_offset):
        raise InvalidParameter("need 0 < neck_half_width < radius <= center_offset")
    w = neck_half_width
    a = math.sqrt(radius * radius - w * w)
    th = math.asin(w / radius)

    def arc_run(cx: float, ang0: float, ang1: float, n: int = 4) -> list[ArcEdge]:
        out = []
        for i in range(n):
            b0 = ang0 + (ang1 - ang0) * i / n
            b1 = ang0 + (ang1 - ang0) * (i + 1) / n
            out.append(
                ArcEdge(
                    (cx + radius * math.cos(b0), radius * math.sin(b0)),
                    (cx + radius * math.cos(b1), radius * math.sin(b1)),
                    1.0 / radius,
                )
            )
        return out

    edges: list[ArcEdge] = []
    edges += arc_run(-center_offset, th, 2.0 * math.pi - th)
    edges.append(ArcEdge((-center_offset + a, -w), (center_offset - a, -w)))
    edges += arc_run(center_offset, math.pi + th, 2.0 * math.pi + math.pi - th)
    edges.append(ArcEdge((center_offset - a, w), (-center_offset + a, w)))
    gon = ArcGon(tuple(edges), meta={"kind": "dumbbell", "radius": radius, "neck": w})
    gon.validate()
    return gon
