"""Raster verification oracle.

Everything here is deliberately independent of the exact-geometry route: a
domain is rasterized by scanline parity over cell centers, the distance
transform gives erosion areas and connectivity, and the raster Cheeger value
comes from bisection on the raster areas.  Agreement between the two routes
is the package's main verification device.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import ndimage

from .errors import EmptyRegion, InvalidInput, NumericalFailure, ResolutionTooCoarse
from .geometry import ArcGon, Point

# deterministic sub-cell phases; irrational so cell centers avoid the exact
# coordinates that show up in hand-built domains (0, 1/2, 1, ...)
_PHASES = [(0.28408392, 0.41598722), (0.13704211, 0.21987344), (0.07103377, 0.33271808)]
_PAD_CELLS = 3


@dataclass(frozen=True)
class Grid:
    """Occupancy raster of a domain; cell (ix, iy) has its center at
    origin + ((ix + 0.5) step, (iy + 0.5) step).  occupancy is indexed
    [iy, ix]."""

    origin: Point
    step: float
    width: int
    height: int
    occupancy: np.ndarray
    distance: np.ndarray | None = None

    def cell_centers_x(self) -> np.ndarray:
        return self.origin[0] + (np.arange(self.width) + 0.5) * self.step

    def cell_centers_y(self) -> np.ndarray:
        return self.origin[1] + (np.arange(self.height) + 0.5) * self.step

    def area(self) -> float:
        return float(np.count_nonzero(self.occupancy)) * self.step * self.step


def default_step(gon: ArcGon) -> float:
    xmin, ymin, xmax, ymax = gon.bbox()
    return math.hypot(xmax - xmin, ymax - ymin) / 2048.0


def rasterize(gon: ArcGon, step: float) -> Grid:
    """Occupancy grid: a cell is occupied iff its center lies inside the
    domain (scanline crossing parity)."""
    if not (step > 0.0 and math.isfinite(step)):
        raise InvalidInput(f"step must be positive, got {step}")
    xmin, ymin, xmax, ymax = gon.bbox()
    if min(xmax - xmin, ymax - ymin) / step < 16.0:
        raise ResolutionTooCoarse(
            f"step {step:.3g} leaves fewer than 16 cells across the domain"
        )
    width = int(math.ceil((xmax - xmin) / step)) + 2 * _PAD_CELLS
    height = int(math.ceil((ymax - ymin) / step)) + 2 * _PAD_CELLS
    last_odd = -1
    for phase in _PHASES:
        origin = (
            xmin - (_PAD_CELLS + phase[0]) * step,
            ymin - (_PAD_CELLS + phase[1]) * step,
        )
        occupancy, n_odd = _scan(gon, origin, step, width, height)
        if n_odd == 0:
            return Grid(origin, step, width, height, occupancy)
        last_odd = n_odd
    raise NumericalFailure(
        f"scanline parity failed on {last_odd} rows at every grid phase"
    )


def _scan(gon: ArcGon, origin: Point, step: float, width: int, height: int):
    ys = origin[1] + (np.arange(height) + 0.5) * step
    xs_centers = origin[0] + (np.arange(width) + 0.5) * step
    rows_acc: list[np.ndarray] = []
    xs_acc: list[np.ndarray] = []

    for e in gon.edges:
        if e.is_segment:
            (x0, y0), (x1, y1) = e.start, e.end
            if y0 == y1:
                continue
            ylo, yhi = (y0, y1) if y0 < y1 else (y1, y0)
            i0 = int(np.searchsorted(ys, ylo, side="left"))
            i1 = int(np.searchsorted(ys, yhi, side="left"))  # half-open at top
            if i1 <= i0:
                continue
            yy = ys[i0:i1]
            xx = x0 + (yy - y0) * (x1 - x0) / (y1 - y0)
            rows_acc.append(np.arange(i0, i1))
            xs_acc.append(xx)
        else:
            c, a0, sweep = e._angles()
            rho = e.radius
            i0 = int(np.searchsorted(ys, c[1] - rho, side="left"))
            i1 = int(np.searchsorted(ys, c[1] + rho, side="right"))
            if i1 <= i0:
                continue
            yy = ys[i0:i1]
            dy = yy - c[1]
            disc = rho * rho - dy * dy
            good = disc > 0.0
            if not np.any(good):
                continue
            root = np.sqrt(disc[good])
            dyg = dy[good]
            rows_g = np.arange(i0, i1)[good]
            for sgn in (1.0, -1.0):
                dx = sgn * root
                phi = np.arctan2(dyg, dx)
                if sweep > 0.0:
                    rel = np.mod(phi - a0, 2.0 * math.pi)
                else:
                    rel = np.mod(a0 - phi, 2.0 * math.pi)
                u = rel / abs(sweep)
                # half-open [0, 1): junction points belong to the next edge
                keep = u < 1.0 - 1e-12
                # points wrapped to just below 2*pi/|sweep| are u ~ 0^-
                keep |= (rel - 2.0 * math.pi) / abs(sweep) > -1e-12
                if not np.any(keep):
                    continue
                rows_acc.append(rows_g[keep])
                xs_acc.append(c[0] + dx[keep])

    occupancy = np.zeros((height, width), dtype=bool)
    if not rows_acc:
        return occupancy, 0
    rows = np.concatenate(rows_acc)
    xs = np.concatenate(xs_acc)
    order = np.lexsort((xs, rows))
    rows, xs = rows[order], xs[order]
    row_starts = np.searchsorted(rows, np.arange(height), side="left")
    row_ends = np.searchsorted(rows, np.arange(height), side="right")
    n_odd = 0
    for iy in range(height):
        a, b = row_starts[iy], row_ends[iy]
        cnt = b - a
        if cnt == 0:
            continue
        if cnt % 2 == 1:
            n_odd += 1
            continue
        xr = xs[a:b]
        for k in range(0, cnt, 2):
            c0 = int(np.searchsorted(xs_centers, xr[k], side="left"))
            c1 = int(np.searchsorted(xs_centers, xr[k + 1], side="left"))
            if c1 > c0:
                occupancy[iy, c0:c1] = True
    return occupancy, n_odd


def distance_transform(grid: Grid) -> Grid:
    """Distance (length units) from each occupied cell center to the nearest
    unoccupied cell center; the outside of the raster counts as unoccupied."""
    padded = np.zeros((grid.height + 2, grid.width + 2), dtype=bool)
    padded[1:-1, 1:-1] = grid.occupancy
    dt = ndimage.distance_transform_edt(padded)
    return replace(grid, distance=dt[1:-1, 1:-1] * grid.step)


def _need_distance(grid: Grid) -> np.ndarray:
    if grid.distance is None:
        raise InvalidInput("grid has no distance data; run distance_transform first")
    return grid.distance


def grid_inner_area(grid: Grid, r: float) -> float:
    """Raster area of the erosion by r: step^2 * #{cells with distance > r}."""
    d = _need_distance(grid)
    return float(np.count_nonzero(d > r)) * grid.step * grid.step


def grid_connected(grid: Grid, r: float) -> bool:
    """4-connectivity of the eroded raster {distance > r}."""
    d = _need_distance(grid)
    mask = d > r
    if not np.any(mask):
        raise EmptyRegion(f"erosion by {r:.6g} leaves no cells")
    _, num = ndimage.label(mask)  # default structure = 4-neighborhood
    return bool(num == 1)


def grid_cheeger(grid: Grid, tol: float | None = None) -> tuple[float, float]:
    """Raster estimate (r, h): bisection root of pi r^2 = raster area of the
    r-erosion.  Expected error is O(step * h)."""
    d = _need_distance(grid)
    vals = np.sort(d[grid.occupancy].ravel())
    if vals.size == 0:
        raise EmptyRegion("empty raster")
    step2 = grid.step * grid.step

    def f(r: float) -> float:
        inside = vals.size - int(np.searchsorted(vals, r, side="right"))
        return math.pi * r * r - inside * step2

    lo, hi = 0.0, float(vals[-1])
    if f(hi) < 0.0:
        raise NumericalFailure("raster area still exceeds pi r^2 at maximal depth")
    if tol is None:
        tol = grid.step / 64.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    r = 0.5 * (lo + hi)
    if r <= 0.0:
        raise NumericalFailure("raster Cheeger bisection collapsed to r = 0")
    return r, 1.0 / r


def write_pbm(grid: Grid, path) -> None:
    """Occupancy as binary PBM (P4)."""
    with open(path, "wb") as fh:
        fh.write(f"P4\n{grid.width} {grid.height}\n".encode())
        # PBM rows run top to bottom; our row 0 is the bottom
        bits = np.flipud(grid.occupancy).astype(np.uint8)
        fh.write(np.packbits(bits, axis=1).tobytes())


def write_pgm(grid: Grid, path) -> None:
    """Distance field as 16-bit binary PGM (P5), scaled to the full range."""
    d = _need_distance(grid)
    dmax = float(d.max())
    scale = 65535.0 / dmax if dmax > 0.0 else 0.0
    img = np.flipud(np.round(d * scale)).astype(">u2")
    with open(path, "wb") as fh:
        fh.write(f"P5\n{grid.width} {grid.height}\n65535\n".encode())
        fh.write(img.tobytes())


def brute_force_distance(grid: Grid) -> np.ndarray:
    """Quadratic-time reference distance transform (tests only; small grids)."""
    occ = grid.occupancy
    h, w = occ.shape
    if h * w > 64 * 64:
        raise InvalidInput("brute-force distance restricted to grids up to 64x64")
    padded = np.zeros((h + 2, w + 2), dtype=bool)
    padded[1:-1, 1:-1] = occ
    empty = np.argwhere(~padded)
    out = np.zeros_like(occ, dtype=float)
    for iy in range(h):
        for ix in range(w):
            if occ[iy, ix]:
                dy = empty[:, 0] - (iy + 1)
                dx = empty[:, 1] - (ix + 1)
                out[iy, ix] = math.sqrt(float(np.min(dx * dx + dy * dy)))
    return out * grid.step
