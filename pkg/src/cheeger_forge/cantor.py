"""Generalized Cantor sets, staircase functions, and a dyadic box-counting
dimension estimator.

The stage-n set keeps 2^n closed intervals of equal length ((1-tau)/2)^n;
the staircase is the normalized primitive of the stage indicator, constant
on gaps and linear on stage intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EmptyRegion, InsufficientScales, InvalidInput, InvalidParameter

_MAX_STAGE = 24  # 2^24 intervals is already ~0.5 GiB of floats; refuse beyond


@dataclass(frozen=True)
class CantorStage:
    """Stage-n truncation of the generalized Cantor set with removal ratio tau."""

    tau: float
    n: int
    intervals: tuple[tuple[float, float], ...]

    def total_length(self) -> float:
        return math.fsum(b - a for a, b in self.intervals)

    def endpoints(self) -> np.ndarray:
        return np.asarray(self.intervals, dtype=float).reshape(-1)

    def to_dict(self) -> dict:
        return {
            "tau": self.tau,
            "n": self.n,
            "intervals": [[a, b] for a, b in self.intervals],
        }

    @staticmethod
    def from_dict(data: dict) -> "CantorStage":
        try:
            tau = float(data["tau"])
            n = int(data["n"])
            intervals = tuple((float(a), float(b)) for a, b in data["intervals"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed stage record: {exc}") from exc
        if len(intervals) != 2**n:
            raise InvalidInput(f"stage {n} must have {2**n} intervals, got {len(intervals)}")
        return CantorStage(tau, n, intervals)


def cantor_stage(tau: float, n: int) -> CantorStage:
    """Stage-n interval list: start from [0,1] and repeatedly remove the open
    central part of relative length tau from every interval."""
    _check_tau(tau)
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidParameter(f"stage must be a nonnegative integer, got {n!r}")
    if n > _MAX_STAGE:
        raise InvalidParameter(f"stage {n} too deep (limit {_MAX_STAGE})")
    intervals = [(0.0, 1.0)]
    for _ in range(int(n)):
        nxt = []
        for a, b in intervals:
            keep = (b - a) * (1.0 - tau) / 2.0
            nxt.append((a, a + keep))
            nxt.append((b - keep, b))
        intervals = nxt
    return CantorStage(float(tau), int(n), tuple(intervals))


def _check_tau(tau: float) -> None:
    if not (0.0 < tau < 1.0) or not math.isfinite(tau):
        raise InvalidParameter(f"removal ratio must lie in (0,1), got {tau!r}")


def alpha(tau: float) -> float:
    """Box/Hausdorff dimension of the limit set: log 2 / log(2/(1-tau))."""
    _check_tau(tau)
    return math.log(2.0) / math.log(2.0 / (1.0 - tau))


@lru_cache(maxsize=64)
def _cached_stage(tau: float, n: int) -> CantorStage:
    return cantor_stage(tau, n)


@dataclass(frozen=True)
class StaircaseParams:
    """Parameters of the scaled staircase t -> H*ell*s_n(t/ell) on [0, ell].

    The standing admissibility assumption is H*ell < 2.  The profile based on
    this staircase stays well defined on the wider range H*ell*tau < 2; pass
    ``allow_supercritical=True`` to work there (see :mod:`cheeger_forge.profile`).
    """

    H: float
    ell: float
    tau: float
    n: int
    allow_supercritical: bool = False

    def __post_init__(self) -> None:
        _check_tau(self.tau)
        if not (self.H > 0.0 and math.isfinite(self.H)):
            raise InvalidParameter(f"curvature must be positive, got {self.H!r}")
        if not (self.ell > 0.0 and math.isfinite(self.ell)):
            raise InvalidParameter(f"length must be positive, got {self.ell!r}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise InvalidParameter(f"stage must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        he = self.H * self.ell
        if he >= 2.0 and not self.allow_supercritical:
            raise InvalidParameter(
                f"H*ell = {he:.6g} >= 2; pass allow_supercritical=True to work in "
                "the wider admissible range H*ell*tau < 2"
            )
        if he * self.tau >= 2.0 * (1.0 - 1e-12):
            raise InvalidParameter(
                f"H*ell*tau = {he * self.tau:.6g} >= 2: the staircase deviation "
                "reaches the vertical-slope singularity; no override exists"
            )

    def stage(self) -> CantorStage:
        return _cached_stage(self.tau, self.n)


def staircase_eval(p: StaircaseParams, t):
    """Scaled staircase H*ell*s_n(t/ell); scalar in, scalar out (arrays pass
    through elementwise).

    Piecewise linear: slope H/(1-tau)^n * 2^n/2^n ... concretely
    H*(1-tau)^{-n} on stage intervals, 0 on gaps.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < -1e-12 * p.ell) or np.any(t_arr > p.ell * (1.0 + 1e-12)):
        raise InvalidParameter(f"evaluation point outside [0, {p.ell}]")
    x = np.clip(t_arr / p.ell, 0.0, 1.0)
    val = p.H * p.ell * _s_norm(p.stage(), x)
    return float(val) if np.isscalar(t) or t_arr.ndim == 0 else val


def _s_norm(stage: CantorStage, x: np.ndarray) -> np.ndarray:
    """Normalized staircase on [0,1]: measure of the stage set left of x,
    divided by the stage set's total length (1-tau)^n."""
    n = stage.n
    if n == 0:
        return np.clip(x, 0.0, 1.0)
    arr = np.asarray(stage.intervals, dtype=float)
    a, b = arr[:, 0], arr[:, 1]
    pow1mt = (1.0 - stage.tau) ** n
    # exact power-of-two division keeps midpoint/endpoint values bit-clean
    len_unit = pow1mt / 2**n
    idx = np.searchsorted(b, x, side="left")
    idx = np.minimum(idx, 2**n - 1)
    part = np.clip(x - a[idx], 0.0, b[idx] - a[idx])
    out = (idx * len_unit + part) / pow1mt
    out = np.where(x <= 0.0, 0.0, out)
    out = np.where(x >= 1.0, 1.0, out)
    return out


# ---------------------------------------------------------------------------
# box counting


def box_count(data, j: int, kind: str = "auto") -> int:
    """Number of half-open level-j dyadic cubes meeting the input.

    Parameters
    ----------
    data : array-like
        ``kind="points"``: scalars (1-D) or rows (x, y) (2-D).
        ``kind="intervals"``: rows [a, b] on the line, a <= b.
    j : int
        Dyadic level; cube edge is 2**-j.
    kind : {"auto", "points", "intervals"}
        "auto" resolves a 1-D array to points; a 2-column array is ambiguous
        and must be named explicitly.

    Notes
    -----
    Cubes are half-open, [m 2^-j, (m+1) 2^-j): a point on a grid line belongs
    to exactly one cube.  For an interval whose right endpoint lies exactly on
    a grid line, the cube it merely touches is not counted (so [0,1] meets
    exactly 2^j cubes at every level).
    """
    if not isinstance(j, (int, np.integer)) or j < 0:
        raise InvalidParameter(f"dyadic level must be a nonnegative integer, got {j!r}")
    arr = np.asarray(data, dtype=float)
    if arr.size == 0:
        raise EmptyRegion("cannot box-count an empty set")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("box_count input contains non-finite values")
    if kind == "auto":
        if arr.ndim == 1:
            kind = "points"
        else:
            raise InvalidInput(
                "2-column input is ambiguous; pass kind='points' or kind='intervals'"
            )
    scale = float(2**j)
    if kind == "points":
        if arr.ndim == 1:
            cells = np.unique(np.floor(arr * scale).astype(np.int64))
            return int(cells.size)
        if arr.ndim == 2 and arr.shape[1] == 2:
            cells = np.unique(np.floor(arr * scale).astype(np.int64), axis=0)
            return int(cells.shape[0])
        raise InvalidInput(f"points must be 1-D or (m, 2), got shape {arr.shape}")
    if kind == "intervals":
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise InvalidInput(f"intervals must have shape (m, 2), got {arr.shape}")
        a, b = arr[:, 0], arr[:, 1]
        if np.any(b < a):
            raise InvalidInput("interval with b < a")
        lo = np.floor(a * scale).astype(np.int64)
        hi = np.floor(b * scale).astype(np.int64)
        bs = b * scale
        exact = (bs == np.floor(bs)) & (b > a)
        hi = np.where(exact, hi - 1, hi)
        hi = np.maximum(hi, lo)  # degenerate interval = point rule
        # merge [lo, hi] ranges
        order = np.argsort(lo, kind="stable")
        lo, hi = lo[order], hi[order]
        total = 0
        cur_lo, cur_hi = lo[0], hi[0]
        for L, Hh in zip(lo[1:], hi[1:]):
            if L > cur_hi + 1:
                total += cur_hi - cur_lo + 1
                cur_lo, cur_hi = L, Hh
            else:
                cur_hi = max(cur_hi, Hh)
        total += cur_hi - cur_lo + 1
        return int(total)
    raise InvalidInput(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class DimensionReport:
    scales: tuple[int, ...]
    counts: tuple[int, ...]
    slope: float
    r2: float

    def to_dict(self) -> dict:
        return {
            "scales": list(self.scales),
            "counts": list(self.counts),
            "slope": self.slope,
            "r2": self.r2,
        }


def estimate_dimension(data, j_min: int, j_max: int, kind: str = "auto") -> DimensionReport:
    """OLS slope of log2(N_j) against j over the window [j_min, j_max].

    The window is an honest free parameter (no automatic selection); R^2 is
    reported so the caller can judge the fit.
    """
    if not (isinstance(j_min, (int, np.integer)) and isinstance(j_max, (int, np.integer))):
        raise InvalidParameter("dyadic levels must be integers")
    if j_min < 0 or not j_min < j_max:
        raise InvalidParameter(f"need 0 <= j_min < j_max, got [{j_min}, {j_max}]")
    js = list(range(int(j_min), int(j_max) + 1))
    if len(js) < 3:
        raise InsufficientScales(f"window [{j_min}, {j_max}] has {len(js)} scales; need >= 3")
    counts = [box_count(data, j, kind=kind) for j in js]
    x = np.asarray(js, dtype=float)
    y = np.log2(np.asarray(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    fit = slope * x + intercept
    ss_res = float(np.sum((y - fit) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 and ss_res <= 1e-30 else (1.0 - ss_res / ss_tot if ss_tot > 0.0 else 0.0)
    return DimensionReport(tuple(js), tuple(counts), float(slope), float(r2))
