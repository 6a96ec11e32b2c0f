"""Scale-indexed Lipschitz functionals on sampled maps.

All suprema/infima are computed exactly on the finite sample; the only
approximations live in the per-point limit estimates of a scale profile.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .metric import FiniteMetricSpace, _norm, validate_metric

#: per-step factor threshold driving the divergence flag (see RadiusGrid docs)
DIVERGENCE_FACTOR = 2.0


class SampledMap:
    """A function sampled on a finite metric space.

    The codomain metric is either the real absolute difference (scalar
    values), a p-norm on R^m (vector values), or an explicit table of value
    distances indexed like the domain.
    """

    def __init__(self, domain: FiniteMetricSpace, values=None, codomain_p=None,
                 value_table=None, validate_table=True):
        self.domain = domain
        self.value_table = None
        self.codomain_p = codomain_p
        if value_table is not None:
            value_table = np.asarray(value_table, dtype=float)
            if value_table.shape != (domain.n, domain.n):
                raise InputError("value-distance table must match the domain")
            if validate_table:
                probe = FiniteMetricSpace(list(range(domain.n)), table=value_table)
                bad = [v for v in validate_metric(probe)
                       if v["axiom"] in ("identity", "symmetry", "triangle")]
                if bad:
                    raise InputError(f"codomain distances violate {bad[0]['axiom']}")
            self.value_table = value_table
            self.values = None
            return
        values = np.asarray(values, dtype=float)
        if values.shape[0] != domain.n:
            raise InputError("one value per domain point required")
        self.values = values

    @classmethod
    def real(cls, domain, values):
        return cls(domain, values=np.asarray(values, dtype=float).reshape(-1))

    @classmethod
    def vector(cls, domain, values, p=2.0):
        return cls(domain, values=np.atleast_2d(values), codomain_p=p)

    def value_dist_from(self, i: int) -> np.ndarray:
        """|f(u) - f(x_i)|_Y for every sample point u."""
        if self.value_table is not None:
            return self.value_table[i]
        if self.values.ndim == 1:
            return np.abs(self.values - self.values[i])
        return _norm(self.values - self.values[i], self.codomain_p)

    def value_pairwise(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=int)
        return self.value_cross(idx, idx)

    def value_cross(self, rows, cols) -> np.ndarray:
        rows = np.asarray(rows, dtype=int)
        cols = np.asarray(cols, dtype=int)
        if self.value_table is not None:
            return self.value_table[np.ix_(rows, cols)]
        a, b = self.values[rows], self.values[cols]
        if self.values.ndim == 1:
            return np.abs(a[:, None] - b[None, :])
        return _norm(a[:, None, :] - b[None, :, :], self.codomain_p)


@dataclass(frozen=True)
class RadiusGrid:
    """Geometric radius grid r_k = r_max * q**k, k = 0..steps-1.

    ``tail_window`` radii at the small end feed the limit estimates and the
    divergence flag.  The flag fires when the tail of the pointwise little
    estimates increases monotonically as r shrinks and grows overall by more
    than ``divergence_factor``; the stated per-step reading of that factor
    would never fire for square-root cusps on geometric grids, so the total
    tail growth is used instead.
    """
    r_max: float
    q: float = 0.5
    steps: int = 8
    tail_window: int = 3
    divergence_factor: float = DIVERGENCE_FACTOR

    def __post_init__(self):
        if self.r_max <= 0:
            raise InputError("r_max must be positive")
        if not (0.0 < self.q < 1.0):
            raise InputError("q must lie in (0, 1)")
        if self.steps < 1:
            raise InputError("steps must be >= 1")
        if not (1 <= self.tail_window <= self.steps):
            raise InputError("tail_window must be in [1, steps]")

    @property
    def radii(self) -> np.ndarray:
        return self.r_max * self.q ** np.arange(self.steps)


def _sorted_increments(f: SampledMap, i: int):
    """Distinct positive distances from point i, with running maxima of the
    value increments over the corresponding closed balls."""
    d = f.domain.dist_row(i)
    dv = f.value_dist_from(i)
    mask = d > 0
    d, dv = d[mask], dv[mask]
    if d.size == 0:
        return np.empty(0), np.empty(0)
    order = np.argsort(d, kind="stable")
    d, dv = d[order], dv[order]
    run = np.maximum.accumulate(dv)
    # collapse ties in distance: keep the last entry of each distinct d
    last = np.flatnonzero(np.append(np.diff(d) > 0, True))
    return d[last], run[last]


def lip_upper_r(f: SampledMap, x, r: float) -> float:
    """sup over the open ball B(x, r) of |f(u)-f(x)| / r (sup empty = 0)."""
    if r <= 0:
        raise InputError("r must be positive")
    i = f.domain.index(x)
    d = f.domain.dist_row(i)
    dv = f.value_dist_from(i)[(d > 0) & (d < r)]
    return float(np.max(dv) / r) if dv.size else 0.0


def lip_upper_r_closed(f: SampledMap, x, r: float) -> float:
    """Closed-ball variant of lip_upper_r."""
    if r <= 0:
        raise InputError("r must be positive")
    i = f.domain.index(x)
    d = f.domain.dist_row(i)
    dv = f.value_dist_from(i)[(d > 0) & (d <= r)]
    return float(np.max(dv) / r) if dv.size else 0.0


def big_lip_below_r(f: SampledMap, x, r: float) -> float:
    """sup over 0 < d(u,x) < r of the difference quotient |f(u)-f(x)|/d(u,x)."""
    if r <= 0:
        raise InputError("r must be positive")
    i = f.domain.index(x)
    d = f.domain.dist_row(i)
    mask = (d > 0) & (d < r)
    if not np.any(mask):
        return 0.0
    return float(np.max(f.value_dist_from(i)[mask] / d[mask]))


def little_lip_below_r(f: SampledMap, x, r: float) -> float:
    """Exact infimum of lip_upper over scales in (d_1, r).

    d_1 is the nearest-neighbor distance of x; scales below d_1 carry no
    sample information and would collapse the infimum to 0, so they are
    excluded.  Returns 0 when x has no neighbor within r (unresolved).
    """
    value, _ = _little_scan(f, f.domain.index(x), r)
    return value


def _little_scan(f: SampledMap, i: int, r: float):
    """Breakpoint scan for the little functional; returns (value, resolved)."""
    if r <= 0:
        raise InputError("r must be positive")
    d, run = _sorted_increments(f, i)
    below = np.flatnonzero(d < r)
    if below.size == 0:
        return 0.0, False
    ends = np.minimum(np.append(d[1:], np.inf), r)[below]
    return float(np.min(run[below] / ends)), True


def loc_lip_r(f: SampledMap, x, r: float) -> float:
    """Lipschitz constant of f restricted to the open ball B(x, r)."""
    if r <= 0:
        raise InputError("r must be positive")
    i = f.domain.index(x)
    idx = f.domain.ball_indices(i, r)
    return _pair_sup(f, idx)


def _pair_sup(f: SampledMap, idx) -> float:
    idx = np.asarray(idx, dtype=int)
    m = idx.size
    if m < 2:
        return 0.0
    best = 0.0
    # block the row axis so big balls never allocate an m x m matrix at once
    step = max(1, (1 << 22) // m)
    for s in range(0, m - 1, step):
        rows = idx[s:s + step]
        D = f.domain.cross(rows, idx)
        V = f.value_cross(rows, idx)
        # keep strictly-upper pairs only
        mask = np.arange(m)[None, :] > (s + np.arange(rows.size))[:, None]
        mask &= D > 0
        if np.any(mask):
            best = max(best, float(np.max(V[mask] / D[mask])))
    return best


def lip_norm(f: SampledMap) -> float:
    """Supremum of difference quotients over all pairs of distinct points."""
    best = 0.0
    for i in range(f.domain.n):
        d = f.domain.dist_row(i)
        mask = d > 0
        if np.any(mask):
            best = max(best, float(np.max(f.value_dist_from(i)[mask] / d[mask])))
    return best


class _PointScan:
    """One sorted pass over the distances from a point, reused across radii.

    Produces values identical to the standalone functionals: the same sets of
    increments are maxed/minned, only the sorting is shared.
    """

    def __init__(self, f: SampledMap, i: int):
        d = f.domain.dist_row(i)
        dv = f.value_dist_from(i)
        mask = d > 0
        d, dv = d[mask], dv[mask]
        order = np.argsort(d, kind="stable")
        self.d = d[order]
        dv = dv[order]
        self.run_raw = np.maximum.accumulate(dv) if dv.size else dv
        self.ratio_run = (np.maximum.accumulate(dv / self.d) if dv.size
                          else dv)
        last = np.flatnonzero(np.append(np.diff(self.d) > 0, True))
        self.dd = self.d[last]
        self.run = self.run_raw[last]

    def lip_upper(self, r: float) -> float:
        k = int(np.searchsorted(self.d, r, "left"))
        return float(self.run_raw[k - 1] / r) if k else 0.0

    def lip_upper_closed(self, r: float) -> float:
        k = int(np.searchsorted(self.d, r, "right"))
        return float(self.run_raw[k - 1] / r) if k else 0.0

    def big_below(self, r: float) -> float:
        k = int(np.searchsorted(self.d, r, "left"))
        return float(self.ratio_run[k - 1]) if k else 0.0

    def little_below(self, r: float) -> float:
        below = np.flatnonzero(self.dd < r)
        if below.size == 0:
            return 0.0
        ends = np.minimum(np.append(self.dd[1:], np.inf), r)[below]
        return float(np.min(self.run[below] / ends))

    def nearest_scale_inf(self, r: float) -> float:
        below = np.flatnonzero(self.dd < r)
        if below.size == 0:
            return 0.0
        return float(np.min(self.run[below] / self.dd[below]))


def point_scale_values(f: SampledMap, x, radii) -> dict:
    """All five scale functionals of one point on an array of radii."""
    i = f.domain.index(x)
    scan = _PointScan(f, i)
    out = {"lip_upper": [], "lip_upper_closed": [], "big_below": [],
           "little_below": [], "loc": []}
    for r in radii:
        r = float(r)
        if r <= 0:
            raise InputError("radii must be positive")
        out["lip_upper"].append(scan.lip_upper(r))
        out["lip_upper_closed"].append(scan.lip_upper_closed(r))
        out["big_below"].append(scan.big_below(r))
        out["little_below"].append(scan.little_below(r))
        out["loc"].append(loc_lip_r(f, x, r))
    return {k: np.array(v) for k, v in out.items()}


def nearest_scale_infimum(f: SampledMap, x, r: float) -> float:
    """min over distinct neighbor distances d_k < r of M_k / d_k, where M_k is
    the max value increment over the closed ball of radius d_k.

    This is the profile's little-derivative estimate: unlike the exact sampled
    infimum it evaluates each scale at its attained neighbor distance, so it
    converges to |f'| on uniform samples of C1 functions.  Returns 0 when x
    has no neighbor within r.
    """
    if r <= 0:
        raise InputError("r must be positive")
    d, run = _sorted_increments(f, f.domain.index(x))
    below = np.flatnonzero(d < r)
    if below.size == 0:
        return 0.0
    return float(np.min(run[below] / d[below]))


@dataclass
class PointSummary:
    point: object
    lip_hat: float
    big_hat: float
    loc_hat: float
    unresolved: bool
    divergent: bool
    liminf_surrogate: float | None = None


@dataclass
class ScaleProfile:
    """Per-point, per-radius scale functionals with limit estimates."""
    points: list
    radii: np.ndarray
    table: dict                      # name -> (n_points, n_radii) array
    summaries: list = field(default_factory=list)

    def row(self, point):
        i = self.points.index(point)
        return {k: v[i] for k, v in self.table.items()}

    def summary(self, point) -> PointSummary:
        for s in self.summaries:
            if s.point == point:
                return s
        raise InputError(f"no summary for point {point!r}")

    def summary_array(self, which: str) -> np.ndarray:
        return np.array([getattr(s, which) for s in self.summaries])


def scale_profile(f: SampledMap, grid: RadiusGrid, points=None,
                  liminf_surrogate: bool = False,
                  warn=None) -> ScaleProfile:
    """Evaluate all scale functionals on the radius grid.

    Limit estimates per point: the big estimate is the exact big functional at
    the smallest radius, the little estimate is the nearest-scale infimum at
    the smallest radius, and the local estimate is the local functional at the
    smallest radius whose ball is resolved (contains a neighbor).

    ``liminf_surrogate`` additionally reports min over the tail window of the
    raw open-ball functional (off by default).
    """
    radii = grid.radii
    if points is None:
        points = list(f.domain.ids)
    if warn is not None and radii[0] > f.domain.diameter():
        warn(f"r_max {radii[0]} exceeds the domain diameter")
    table = {k: np.zeros((len(points), len(radii)))
             for k in ("lip_upper", "lip_upper_closed", "big_below",
                       "little_below", "loc")}
    summaries = []
    for pi, x in enumerate(points):
        i = f.domain.index(x)
        scan = _PointScan(f, i)
        for r_i, r in enumerate(radii):
            r = float(r)
            table["lip_upper"][pi, r_i] = scan.lip_upper(r)
            table["lip_upper_closed"][pi, r_i] = scan.lip_upper_closed(r)
            table["big_below"][pi, r_i] = scan.big_below(r)
            table["little_below"][pi, r_i] = scan.little_below(r)
            table["loc"][pi, r_i] = loc_lip_r(f, x, r)
        d1 = f.domain.nearest_neighbor_distance(i)
        r_small = float(radii[-1])
        resolved_r = [float(r) for r in radii if d1 < r]
        unresolved = d1 >= r_small
        lip_hat = scan.nearest_scale_inf(r_small)
        big_hat = float(table["big_below"][pi, -1])
        loc_hat = loc_lip_r(f, x, min(resolved_r)) if resolved_r else 0.0
        # divergence: the little estimates along the tail keep growing as the
        # radius shrinks and more than double overall
        tail = radii[-grid.tail_window:]
        series = np.array([scan.nearest_scale_inf(float(r)) for r in tail])
        # radii shrink along the array, so growth toward small scales means a
        # nondecreasing series
        divergent = bool(
            series[-1] > 0
            and np.all(np.diff(series) >= 0)
            and series[-1] > grid.divergence_factor * series[0])
        surrogate = None
        if liminf_surrogate:
            surrogate = float(
                np.min(table["lip_upper"][pi, -grid.tail_window:]))
        summaries.append(PointSummary(x, lip_hat, big_hat, loc_hat,
                                      unresolved, divergent, surrogate))
    return ScaleProfile(list(points), radii, table, summaries)
