"""Executable desk-scale verification of the library's structural claims.

Every check returns a CheckResult; run_suite collects them in canonical name
order so that identical configurations produce byte-identical reports.
Zero-tolerance checks are finite-data identities (max/min over the same
sample), not approximations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .envelopes import ScalarField, baire_upper, lsc_defect, usc_defect
from .errors import InputError
from .metric import (FiniteMetricSpace, IntervalUnion, LinearMapSpec,
                     operator_norm)
from .scales import (RadiusGrid, SampledMap, _sorted_increments,
                     big_lip_below_r, lip_norm, lip_upper_r,
                     lip_upper_r_closed, little_lip_below_r, loc_lip_r,
                     nearest_scale_infimum, scale_profile)
from . import setclass
from .setclass import FiniteField, SetFamily
from .zoo import ZooEntry, get_entry, make_zoo


@dataclass
class CheckResult:
    name: str
    status: str                    # pass | fail | skipped
    discrepancy: float = 0.0
    tolerance: float = 0.0
    witness: dict | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = {k: (list(v) if isinstance(v, (tuple, list)) else v)
                 for k, v in self.witness.items()}
        return {"name": self.name, "status": self.status,
                "discrepancy": self.discrepancy, "tolerance": self.tolerance,
                "witness": w, "detail": self.detail}


def _result(name, ok, discrepancy, tolerance, witness=None, detail=""):
    status = "pass" if ok else "fail"
    return CheckResult(name, status, float(discrepancy), float(tolerance),
                       witness if not ok else witness, detail)


def random_space(rng, n_points, dim=2) -> FiniteMetricSpace:
    p = float(rng.choice([1.0, 2.0, np.inf]))
    coords = rng.uniform(-1.0, 1.0, size=(n_points, dim))
    return FiniteMetricSpace(list(range(n_points)), coords=coords, p=p)


def random_map(rng, space: FiniteMetricSpace) -> SampledMap:
    return SampledMap.real(space, rng.normal(size=space.n))


# ---------------------------------------------------------------------------
# individual checks


def check_chain(f: SampledMap, grid: RadiusGrid, name="chain", points=None,
                inject_fault=False) -> CheckResult:
    """little <= big <= local at every (point, radius): exact on finite data."""
    prof = scale_profile(f, grid, points=points)
    little = prof.table["little_below"]
    big = prof.table["big_below"]
    loc = prof.table["loc"]
    if inject_fault:
        little = little.copy()
        little[0, 0] = big[0, 0] + 1.0
    gap = np.maximum(little - big, big - loc)
    worst = float(np.max(gap)) if gap.size else 0.0
    witness = None
    if worst > 0:
        pi, ri = np.unravel_index(int(np.argmax(gap)), gap.shape)
        witness = {"point": prof.points[pi], "radius": float(prof.radii[ri])}
    return _result(name, worst <= 0.0, max(worst, 0.0), 0.0, witness)


def check_plus_variant(f: SampledMap, x, r: float, name="plus_variant",
                       tol=1e-12) -> CheckResult:
    """Open-ball sweep, closed-ball sweep and the ratio formula agree.

    The suprema over scales below r are reconstructed from open/closed-ball
    functional evaluations at the neighbor-distance breakpoints (the exact
    per-segment limits), independently of the ratio formula.
    """
    i = f.domain.index(x)
    d, _ = _sorted_increments(f, i)
    d = d[d < r]
    if d.size == 0:
        return CheckResult(name, "skipped", detail="no neighbor within r")
    alpha = 0.0
    beta = 0.0
    for dk in d:
        rho = float(dk) * (1.0 + 1e-9)
        alpha = max(alpha, lip_upper_r(f, x, rho) * rho / float(dk))
        beta = max(beta, lip_upper_r_closed(f, x, float(dk)))
    gamma = big_lip_below_r(f, x, r)
    worst = max(abs(alpha - beta), abs(beta - gamma), abs(alpha - gamma))
    return _result(name, worst <= tol, worst, tol,
                   {"point": x, "radius": float(r),
                    "alpha": alpha, "beta": beta, "gamma": gamma})


def linear_map_sample(A: LinearMapSpec, x0, resolution: float,
                      radius=None) -> SampledMap:
    """Grid sample of u -> A u on a ball around x0."""
    x0 = np.asarray(x0, dtype=float)
    n = A.shape[1]
    if radius is None:
        radius = 25.0 * resolution
    axis = np.arange(-radius, radius + resolution / 2, resolution)
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    offsets = np.column_stack([m.ravel() for m in mesh])
    offsets = offsets[np.linalg.norm(offsets, axis=1) <= radius + 1e-12]
    # snap the row nearest the origin to exact zeros so x0 itself is sampled
    offsets[np.argmin(np.linalg.norm(offsets, axis=1))] = 0.0
    coords = x0 + offsets
    ids = [tuple(float(c) for c in row) for row in coords]
    space = FiniteMetricSpace(ids, coords=coords, p=A.domain_p)
    return SampledMap.vector(space, A.apply(coords), p=A.codomain_p)


def check_frechet(A: LinearMapSpec, x0, resolution: float, name="frechet",
                  tol=0.02, seed=0) -> CheckResult:
    """Big-derivative estimate of a linear map matches its operator norm."""
    f = linear_map_sample(A, x0, resolution)
    x0_id = tuple(float(c) for c in np.asarray(x0, dtype=float))
    r = 25.0 * resolution * 1.01
    big_hat = big_lip_below_r(f, x0_id, r)
    norm = operator_norm(A, sphere_samples=20000, seed=seed)
    gap = abs(big_hat - norm) / norm if norm > 0 else abs(big_hat)
    return _result(name, gap <= tol, gap, tol,
                   {"big_hat": big_hat, "operator_norm": norm})


def check_gamma_lipschitz(f: SampledMap, gamma: float, grid: RadiusGrid,
                          name="gamma_lipschitz", convex=True,
                          pair_tol=None) -> CheckResult:
    """Both directions of the convex-domain characterization.

    Forward: pairwise gamma-Lipschitz data has little functional <= gamma at
    every scale (a finite-data identity, tolerance 0).  Backward: little
    functional <= gamma at the finest scale implies the pairwise bound up to
    a sub-resolution tolerance.
    """
    if not convex:
        return CheckResult(name, "skipped", detail="domain not flagged convex")
    norm = lip_norm(f)
    radii = grid.radii
    little = np.array([[little_lip_below_r(f, x, float(r)) for r in radii]
                       for x in f.domain.ids])
    # rounding allowance so e.g. exact-slope data is not pushed off the
    # hypothesis boundary by one ulp
    eps = 1e-12 * max(1.0, gamma, norm)
    finest_ok = bool(np.all(little[:, -1] <= gamma + eps))
    pairwise_ok = norm <= gamma + eps
    if pair_tol is None:
        diam = f.domain.diameter()
        pair_tol = 2.0 * f.domain.resolution() / diam if diam > 0 else 0.0
    checked = False
    worst = 0.0
    tol_used = 0.0
    detail = []
    if pairwise_ok:        # forward: exact up to the ulp allowance
        checked = True
        worst = max(worst, float(np.max(little)) - gamma - eps)
        detail.append("forward")
    if finest_ok:          # backward: pairwise bound up to sub-resolution tol
        checked = True
        gap = norm - gamma * (1.0 + pair_tol) - eps
        if gap > 0:
            worst = max(worst, gap)
        tol_used = pair_tol
        detail.append("backward")
    if not checked:
        return CheckResult(name, "skipped",
                           detail="hypothesis-not-met: little functional "
                                  "exceeds gamma at the finest scale")
    return _result(name, worst <= 0.0, max(worst, 0.0), tol_used,
                   {"gamma": gamma, "lip_norm": norm},
                   detail="+".join(detail))


def check_lipnorm_identity(f: SampledMap, grid: RadiusGrid,
                           name="lipnorm_identity", tol=0.05) -> CheckResult:
    """Global Lipschitz constant vs the sup of pointwise little estimates."""
    norm = lip_norm(f)
    r_small = float(grid.radii[-1])
    hats = [nearest_scale_infimum(f, x, r_small) for x in f.domain.ids]
    sup_hat = float(np.max(hats))
    if norm == 0.0:
        return _result(name, sup_hat == 0.0, sup_hat, 0.0,
                       {"lip_norm": 0.0, "sup_little": sup_hat})
    gap = abs(norm - sup_hat) / norm
    return _result(name, gap <= tol, gap, tol,
                   {"lip_norm": norm, "sup_little": sup_hat})


def check_segment_chain_rule(f: SampledMap, func, a, b, r: float,
                             name="segment_chain_rule", steps=200,
                             tol=None) -> CheckResult:
    """Composition with the segment parametrization obeys the slope bound.

    g = f(T(u)) on a uniform grid of [0,1]; the little estimate of g at scale
    r is checked against |b-a| times the big functional of f at T(u) at the
    matched scale r*|b-a| (an upper bound for the little derivative of f).
    """
    ia, ib = f.domain.index(a), f.domain.index(b)
    pa, pb = f.domain.coords[ia], f.domain.coords[ib]
    seg = pb - pa
    length = float(np.linalg.norm(seg))
    if length == 0.0:
        raise InputError("segment endpoints coincide")
    us = np.linspace(0.0, 1.0, steps + 1)
    gspace = FiniteMetricSpace.grid1d(0.0, 1.0, 1.0 / steps)
    gvals = []
    for u in us:
        y = func(pa + u * seg)
        y = np.asarray(y, dtype=float)
        if y.ndim > 0 and y.size > 1:
            raise InputError("segment check needs a real-valued function")
        gvals.append(float(y))
    g = SampledMap.real(gspace, gvals)
    worst = 0.0
    witness = None
    rhs_scale = 0.0
    for u in us[::10]:
        lhs = nearest_scale_infimum(g, g.domain.ids[int(round(u * steps))], r)
        xu = pa + u * seg
        i_near = int(np.argmin(np.linalg.norm(f.domain.coords - xu, axis=1)))
        rhs = length * big_lip_below_r(f, f.domain.ids[i_near], r * length)
        rhs_scale = max(rhs_scale, rhs)
        gap = lhs - rhs
        if gap > worst:
            worst = gap
            witness = {"u": float(u), "lhs": lhs, "rhs": rhs}
    if tol is None:
        tol = 0.05 * rhs_scale + 2.0 * length / steps
    return _result(name, worst <= tol, max(worst, 0.0), tol, witness)


def bhmv_map(E: IntervalUnion, span, resolution: float) -> SampledMap:
    """f(u) = measure([span_lo, u] intersect E) on a uniform grid of span."""
    lo, hi = float(span[0]), float(span[1])
    space = FiniteMetricSpace.grid1d(lo, hi, resolution)
    values = [E.intersect(lo, float(u)).measure() for u in space.ids]
    return SampledMap.real(space, values)


def check_bhmv_bound(E: IntervalUnion, span, resolution: float,
                     name="bhmv", tol=1e-12) -> CheckResult:
    """|f(a)-f(b)| equals the measure of [a,b] within E, plus slope bounds."""
    f = bhmv_map(E, span, resolution)
    xs = np.array([float(u) for u in f.domain.ids])
    vals = f.values
    worst = 0.0
    witness = None
    for i, j in itertools.combinations(range(len(xs)), 2):
        mu = E.intersect(xs[i], xs[j]).measure()
        gap = abs(abs(vals[j] - vals[i]) - mu) - tol
        if gap > worst:
            worst = gap
            witness = {"a": xs[i], "b": xs[j], "mu": mu}
    r_small = 2.0 * resolution
    for i, u in enumerate(xs):
        hat = nearest_scale_infimum(f, f.domain.ids[i], r_small)
        dist = E.distance_to(float(u))
        bound = 1.0 + tol if dist == 0.0 else (np.inf if dist <= r_small else tol)
        gap = hat - bound
        if gap > worst:
            worst = gap
            witness = {"point": float(u), "little_hat": hat}
    return _result(name, worst <= 0.0, max(worst, 0.0), tol, witness)


def derivative_fields(f: SampledMap, r_fine: float, r_loc: float):
    """Pointwise little/big estimates at a fine scale and the local
    functional at scale r_loc, as scalar fields."""
    little = []
    big = []
    loc = []
    for x in f.domain.ids:
        little.append(nearest_scale_infimum(f, x, r_fine))
        big.append(big_lip_below_r(f, x, r_fine))
        loc.append(loc_lip_r(f, x, r_loc))
    sp = f.domain
    return (ScalarField(sp, little), ScalarField(sp, big),
            ScalarField(sp, loc))


def _cell_oscillation(g: ScalarField) -> float:
    worst = 0.0
    for i in range(g.space.n):
        d = g.space.dist_row(i)
        pos = d > 0
        if not np.any(pos):
            continue
        j = int(np.argmin(np.where(pos, d, np.inf)))
        diff = abs(g.values[i] - g.values[j])
        if np.isfinite(diff):
            worst = max(worst, float(diff))
    return worst


def check_envelope_identity(f: SampledMap, h: float, resolution: float,
                            name="envelope_identity", rel_tol=0.05,
                            r_fine=None) -> CheckResult:
    """Upper envelopes of the little/big fields match the local field.

    Fields approximating the little and big derivatives are computed at a
    fine scale (capped at h/2), their scale-h upper Baire envelopes are
    compared to the scale-h local field in sup distance.
    """
    if h <= resolution:
        raise InputError("envelope scale h must exceed the sample resolution")
    if r_fine is None:
        r_fine = min(h / 2.0, 2.5 * resolution)
    little_f, big_f, loc_f = derivative_fields(f, r_fine, h)
    env_little = baire_upper(little_f, h)
    env_big = baire_upper(big_f, h)
    tol = _cell_oscillation(loc_f) + rel_tol * float(np.max(loc_f.values))
    gaps = np.maximum(np.abs(env_little.values - loc_f.values),
                      np.abs(env_big.values - loc_f.values))
    worst = float(np.max(gaps))
    i = int(np.argmax(gaps))
    return _result(name, worst <= tol, worst, tol,
                   {"point": f.domain.ids[i],
                    "envelope_little": float(env_little.values[i]),
                    "envelope_big": float(env_big.values[i]),
                    "local": float(loc_f.values[i])})


def check_openness_surrogate(f: SampledMap, x0, r: float, gamma: float,
                             name="openness", inject_fault=False) -> CheckResult:
    """Local functional at half scale never exceeds it at the center: exact."""
    base = loc_lip_r(f, x0, r)
    if not base < gamma:
        return CheckResult(name, "skipped",
                           detail="precondition loc < gamma not met")
    i0 = f.domain.index(x0)
    worst = 0.0
    witness = None
    for j in f.domain.ball_indices(i0, r / 2.0):
        x = f.domain.ids[j]
        val = loc_lip_r(f, x, r / 2.0)
        if inject_fault and witness is None:
            val = base + 1.0
        gap = val - base
        if gap > worst:
            worst = gap
            witness = {"x0": x0, "x": x, "radius": float(r)}
    return _result(name, worst <= 0.0, max(worst, 0.0), 0.0, witness)


def check_semicontinuity_fields(entry: ZooEntry, r: float, h: float,
                                name="semicontinuity") -> CheckResult:
    """usc/lsc defects of the derivative fields obey the modulus schedule."""
    if not entry.continuous:
        return CheckResult(name, "skipped", detail="discontinuous entry")
    if entry.omega is None:
        return CheckResult(name, "skipped", detail="no modulus oracle")
    if h < 2.0 * entry.resolution:
        raise InputError("h must be at least twice the sample resolution")
    f = entry.map
    little = []
    big = []
    loc = []
    for x in f.domain.ids:
        little.append(little_lip_below_r(f, x, r))
        big.append(big_lip_below_r(f, x, r))
        loc.append(loc_lip_r(f, x, r))
    sp = f.domain
    scale = max(1.0, float(np.max(np.abs(
        [v for v in little + big + loc if np.isfinite(v)] or [0.0]))))
    bound = float(entry.omega(h)) + 1e-9 * scale
    defects = {
        "usc_little": float(np.max(usc_defect(ScalarField(sp, little), h).values)),
        "lsc_big": float(np.max(lsc_defect(ScalarField(sp, big), h).values)),
        "usc_loc": float(np.max(usc_defect(ScalarField(sp, loc), h).values)),
    }
    worst_kind = max(defects, key=defects.get)
    worst = defects[worst_kind]
    return _result(name, worst <= bound, worst, bound,
                   {"kind": worst_kind, "h": h, "r": r}, detail=str(defects))


def check_summary_ordering(f: SampledMap, grid: RadiusGrid,
                           name="summary_ordering", points=None) -> CheckResult:
    """little <= big <= local on the per-point summary estimates: exact, so
    the thresholded level sets are nested for every gamma."""
    prof = scale_profile(f, grid, points=points)
    lip_hat = prof.summary_array("lip_hat")
    big_hat = prof.summary_array("big_hat")
    loc_hat = prof.summary_array("loc_hat")
    gap = np.maximum(lip_hat - big_hat, big_hat - loc_hat)
    worst = float(np.max(gap)) if gap.size else 0.0
    witness = None
    if worst > 0:
        witness = {"point": prof.points[int(np.argmax(gap))]}
    return _result(name, worst <= 0.0, max(worst, 0.0), 0.0, witness)


def check_level_sets(entry: ZooEntry, gamma: float, grid: RadiusGrid,
                     name="level_sets", points=None) -> CheckResult:
    """Summary estimates are ordered little <= big <= local pointwise (so the
    thresholded sets are nested for every gamma), and for cusp entries the
    above-gamma set localizes around the genuine blow-up point."""
    prof = scale_profile(entry.map, grid, points=points)
    lip_hat = prof.summary_array("lip_hat")
    big_hat = prof.summary_array("big_hat")
    loc_hat = prof.summary_array("loc_hat")
    worst = float(np.max(np.maximum(lip_hat - big_hat, big_hat - loc_hat)))
    ok = worst <= 0.0
    witness = None
    detail = ""
    blow_up = entry.meta.get("infinite_big_set")
    # localization only makes sense when the sample can exhibit values above
    # gamma near the blow-up point and the smallest radius resolves the grid
    resolvable = (blow_up is not None
                  and gamma * gamma * entry.resolution < 1.0
                  and float(grid.radii[-1]) > entry.resolution)
    if ok and resolvable:
        radius = max(gamma ** -2 * 1.0001, 2.0 * entry.resolution)
        hot = [p for p, v in zip(prof.points, big_hat) if v > gamma]
        contains = all(any(abs(p - q) <= entry.resolution / 2 for p in hot)
                       for q in blow_up)
        inside = all(min(abs(p - q) for q in blow_up) <= radius for p in hot)
        ok = contains and inside
        detail = (f"localized: above-gamma set size {len(hot)} "
                  f"within radius {radius:g}")
        if not ok:
            witness = {"gamma": gamma, "hot": hot[:8]}
    return _result(name, ok, max(worst, 0.0), 0.0, witness, detail)


# ---------------------------------------------------------------------------
# set-class sweeps


def _field_values(n, levels):
    return itertools.product(levels, repeat=n)


def check_setclass_exhaustive(max_ground=4, name="setclass/exhaustive",
                              levels=(-math.inf, 0.0, 1.0, math.inf),
                              rng=None) -> CheckResult:
    """Family identities plus the semicontinuity duality properties over every
    topology on grounds of size <= max_ground and all fields on the given
    level set."""
    failures = []
    for n in range(1, max_ground + 1):
        ground = tuple(range(n))
        fields = [FiniteField(ground, v) for v in _field_values(n, levels)]
        for masks in setclass.all_topologies(n):
            F = SetFamily(ground, masks)
            for ident in setclass.FAMILY_IDENTITIES:
                ok, _ = setclass.verify_family_identity(F, ident)
                if not ok:
                    failures.append({"n": n, "identity": ident})
            upper = [f for f in fields if setclass.is_A_upper_sc(f, F)]
            lower = [f for f in fields if setclass.is_A_lower_sc(f, F)]
            for f in upper + lower:
                rep = setclass.check_duality_props(f, F)
                if not rep["all"]:
                    failures.append({"n": n, "field": list(f.values),
                                     "family": sorted(masks)})
            if upper and not setclass.check_sup_inf_props(upper, F, "sup"):
                failures.append({"n": n, "prop": "sup", "family": sorted(masks)})
            if lower and not setclass.check_sup_inf_props(lower, F, "inf"):
                failures.append({"n": n, "prop": "inf", "family": sorted(masks)})
            if rng is not None and len(upper) >= 2:
                for _ in range(3):
                    pick = rng.choice(len(upper), size=2, replace=False)
                    if not setclass.check_sup_inf_props(
                            [upper[i] for i in pick], F, "sup"):
                        failures.append({"n": n, "prop": "sup-pair"})
    return _result(name, not failures, float(len(failures)), 0.0,
                   {"failures": failures[:5]} if failures else None)


def check_setclass_random(n=5, cases=500, seed=0,
                          name="setclass/random") -> CheckResult:
    """Seeded identity and duality checks on larger grounds."""
    rng = np.random.default_rng(seed)
    ground = tuple(range(n))
    levels = [-math.inf, 0.0, 1.0, math.inf]
    failures = []
    for _ in range(cases):
        F = SetFamily(ground, setclass.random_topology(n, rng))
        ident = list(setclass.FAMILY_IDENTITIES)[int(rng.integers(0, 3))]
        ok, _ = setclass.verify_family_identity(F, ident)
        if not ok:
            failures.append({"identity": ident})
        vals = [levels[i] for i in rng.integers(0, len(levels), size=n)]
        f = FiniteField(ground, vals)
        if setclass.is_A_upper_sc(f, F) or setclass.is_A_lower_sc(f, F):
            rep = setclass.check_duality_props(f, F)
            if not rep["all"]:
                failures.append({"field": vals})
    return _result(name, not failures, float(len(failures)), 0.0,
                   {"failures": failures[:5]} if failures else None)


# ---------------------------------------------------------------------------
# brute-force oracle equivalence


def _brute_lip_upper(d, dv, rho, closed=False):
    mask = (d > 0) & ((d <= rho) if closed else (d < rho))
    return float(np.max(dv[mask]) / rho) if np.any(mask) else 0.0


def _brute_sweep(d, dv, rhos):
    """Open-ball functional straight from the definition on a scale array."""
    rhos = np.asarray(rhos, dtype=float)
    mask = (d[:, None] > 0) & (d[:, None] < rhos[None, :])
    tops = np.max(np.where(mask, dv[:, None], 0.0), axis=0)
    return tops / rhos


def check_scale_oracles(space: FiniteMetricSpace, values, radii,
                        name="oracle_equiv", tol=1e-9,
                        rho_grid=2000) -> CheckResult:
    """Every scale functional vs direct-definition enumeration.

    The little/big functionals are compared against min/max of the open-ball
    functional over a dense scale grid enriched with the neighbor distances
    (and points just above them), evaluated straight from the definition.
    """
    f = SampledMap.real(space, values)
    worst = 0.0
    witness = None
    for i, x in enumerate(space.ids):
        d = space.dist_row(i)
        dv = f.value_dist_from(i)
        pos = np.sort(d[d > 0])
        for r in radii:
            r = float(r)
            checks = {
                "lip_upper": (lip_upper_r(f, x, r),
                              _brute_lip_upper(d, dv, r)),
                "lip_upper_closed": (lip_upper_r_closed(f, x, r),
                                     _brute_lip_upper(d, dv, r, closed=True)),
            }
            mask = (d > 0) & (d < r)
            brute_big = float(np.max(dv[mask] / d[mask])) if np.any(mask) else 0.0
            checks["big_below"] = (big_lip_below_r(f, x, r), brute_big)
            inside = pos[pos < r]
            if inside.size:
                d1 = float(inside[0])
                cand = np.concatenate([
                    np.linspace(d1, r, rho_grid)[1:],
                    inside[inside > d1], [r]])
                cand = cand[cand > d1]
                sweep = _brute_sweep(d, dv, cand)
                brute_little = float(np.min(sweep))
                cand_up = np.concatenate([inside * (1 + 1e-12),
                                          np.linspace(1e-9, r, 200)])
                cand_up = cand_up[(cand_up > 0) & (cand_up < r * (1 + 1e-12))]
                brute_big_sweep = float(np.max(_brute_sweep(d, dv, cand_up)))
                checks["little_below"] = (little_lip_below_r(f, x, r),
                                          brute_little)
                checks["big_sweep"] = (big_lip_below_r(f, x, r),
                                       brute_big_sweep)
            else:
                checks["little_below"] = (little_lip_below_r(f, x, r), 0.0)
            idx = np.flatnonzero(d < r)
            brute_loc = 0.0
            for a, b in itertools.combinations(idx, 2):
                dd = space.dist(int(a), int(b))
                brute_loc = max(brute_loc, abs(values[a] - values[b]) / dd)
            checks["loc"] = (loc_lip_r(f, x, r), brute_loc)
            for kind, (got, want) in checks.items():
                gap = abs(got - want)
                if gap > worst:
                    worst = gap
                    witness = {"point": x, "radius": r, "kind": kind,
                               "got": got, "want": want}
    brute_norm = 0.0
    for a, b in itertools.combinations(range(space.n), 2):
        brute_norm = max(brute_norm,
                         abs(values[a] - values[b]) / space.dist(a, b))
    gap = abs(lip_norm(f) - brute_norm)
    if gap > worst:
        worst = gap
        witness = {"kind": "lip_norm"}
    return _result(name, worst <= tol, worst, tol, witness)


# ---------------------------------------------------------------------------
# suite runner


@dataclass
class SuiteConfig:
    seed: int = 7
    suite: tuple = ("all",)
    inject_fault: str | None = None
    zoo_resolution: float = 0.02
    random_spaces: int = 50
    matrix: object = None
    overrides: dict = field(default_factory=dict)


SUITE_NAMES = ("chain", "plus_variant", "frechet", "c1_identity",
               "separation", "gamma_lipschitz", "lipnorm", "segment_chain",
               "bhmv", "envelope", "openness", "semicontinuity",
               "level_sets", "setclass", "oracle_equiv")


def _entry_points(entry: ZooEntry, rng, cap=80):
    ids = list(entry.space.ids)
    if len(ids) <= cap:
        return ids
    pick = rng.choice(len(ids), size=cap, replace=False)
    return [ids[i] for i in sorted(pick)]


def _suite_chain(cfg, rng, entries):
    grid = RadiusGrid(0.3, 0.5, 5, 3)
    out = []
    for e in entries:
        pts = _entry_points(e, rng)
        fault = cfg.inject_fault == "chain" and e.name == "sin"
        out.append(check_chain(e.map, grid, name=f"chain/zoo:{e.name}",
                               points=pts, inject_fault=fault))
    for k in range(cfg.random_spaces):
        sp = random_space(rng, int(rng.integers(4, 13)))
        out.append(check_chain(random_map(rng, sp), RadiusGrid(1.5, 0.5, 5, 3),
                               name=f"chain/random:{k:03d}"))
    return out


def _suite_plus_variant(cfg, rng, entries):
    out = []
    for k in range(100):
        sp = random_space(rng, 8)
        f = random_map(rng, sp)
        i = int(rng.integers(0, sp.n))
        x = sp.ids[i]
        # keep the scale above the nearest-neighbor distance so the sweep
        # always has breakpoints to compare
        r = float(max(rng.uniform(0.3, 2.5),
                      1.5 * sp.nearest_neighbor_distance(i)))
        out.append(check_plus_variant(f, x, r, name=f"plus_variant/{k:03d}"))
    e = get_entry(entries, "affine_slope3")
    out.append(check_plus_variant(e.map, e.point_near(0.1), 0.3,
                                  name="plus_variant/zoo:affine"))
    return out


FRECHET_CASES = {
    "diag": ([[2.0, 0.0], [0.0, 1.0]], (0.3, -0.7)),
    "rotation": ([[math.cos(0.5), -math.sin(0.5)],
                  [math.sin(0.5), math.cos(0.5)]], (0.0, 0.0)),
    "shear": ([[1.0, 1.0], [0.0, 1.0]], (0.1, 0.2)),
}


def _suite_frechet(cfg, rng, entries):
    out = []
    if cfg.matrix is not None:
        out.append(check_frechet(LinearMapSpec(cfg.matrix), (0.0, 0.0), 1e-2,
                                 name="frechet/custom", seed=cfg.seed))
        return out
    for label, (mat, x0) in FRECHET_CASES.items():
        out.append(check_frechet(LinearMapSpec(mat), x0, 1e-2,
                                 name=f"frechet/{label}", seed=cfg.seed))
    return out


def c1_identity_check(entry: ZooEntry, name, rel_tol=0.02) -> CheckResult:
    """Summary estimates vs |f'| within 2% relative plus 2x resolution."""
    res = entry.resolution
    grid = RadiusGrid(32 * res, 0.5, 5, 3)
    margin = grid.r_max
    coords = entry.space.coords[:, 0]
    lo, hi = float(np.min(coords)) + margin, float(np.max(coords)) - margin
    pts = [p for p in entry.space.ids if lo <= p <= hi]
    prof = scale_profile(entry.map, grid, points=pts)
    worst = 0.0
    witness = None
    for s in prof.summaries:
        target = entry.Lip_oracle(s.point)
        tol = rel_tol * target + 2.0 * res
        for kind, got in (("little", s.lip_hat), ("big", s.big_hat),
                          ("local", s.loc_hat)):
            gap = abs(got - target) - tol
            if gap > worst:
                worst = gap
                witness = {"point": s.point, "kind": kind, "got": got,
                           "target": target}
    return _result(name, worst <= 0.0, max(worst, 0.0), rel_tol, witness)


def _suite_c1(cfg, rng, entries):
    fine = make_zoo(1e-3)
    return [c1_identity_check(get_entry(fine, n), name=f"c1_identity/{n}")
            for n in ("sin", "square")]


def separation_checks() -> list:
    """Dyadic staircase and the quadratic oscillator at the origin."""
    out = []
    dy = get_entry(make_zoo(2.0 ** -14), "dyadic_staircase")
    prof = scale_profile(dy.map, RadiusGrid(0.5, 0.5, 3, 2), points=[0.0])
    s = prof.summaries[0]
    ok = 0.45 <= s.lip_hat <= 0.55 and 0.95 <= s.big_hat <= 1.05
    out.append(_result("separation/dyadic", ok,
                       max(abs(s.lip_hat - 0.5), abs(s.big_hat - 1.0)), 0.05,
                       {"lip_hat": s.lip_hat, "big_hat": s.big_hat}))
    osc = get_entry(make_zoo(2.5e-4), "oscillator")
    prof = scale_profile(osc.map, RadiusGrid(0.02, 0.5, 1, 1), points=[0.0])
    s = prof.summaries[0]
    ok = s.lip_hat <= 0.05 and 0.9 <= s.loc_hat <= 1.05
    out.append(_result("separation/oscillator", ok,
                       max(s.lip_hat, abs(s.loc_hat - 1.0)), 0.1,
                       {"lip_hat": s.lip_hat, "loc_hat": s.loc_hat}))
    return out


def _suite_separation(cfg, rng, entries):
    return separation_checks()


def _suite_gamma(cfg, rng, entries):
    fine = make_zoo(1e-3)
    grid = RadiusGrid(0.064, 0.5, 5, 3)
    out = []
    for entry_name, gamma in (("sin", 1.0), ("affine_slope3", 3.0),
                              ("constant", 0.0), ("bhmv_measure", 1.0)):
        e = get_entry(fine, entry_name)
        out.append(check_gamma_lipschitz(e.map, gamma, grid,
                                         name=f"gamma_lipschitz/{entry_name}"))
    e = get_entry(fine, "sqrt_abs")
    out.append(check_gamma_lipschitz(e.map, 1.0, grid,
                                     name="gamma_lipschitz/sqrt_abs"))
    return out


def _suite_lipnorm(cfg, rng, entries):
    fine = make_zoo(1e-3)
    grid = RadiusGrid(0.016, 0.5, 3, 2)
    out = []
    for n in ("sin", "affine_slope3", "constant"):
        e = get_entry(fine, n)
        out.append(check_lipnorm_identity(e.map, grid,
                                          name=f"lipnorm_identity/{n}"))
    return out


def _suite_segment(cfg, rng, entries):
    out = []
    e = get_entry(entries, "linear_shear")
    A = e.meta["matrix"]
    proj = lambda u: float(np.asarray(u)[1])
    planar = SampledMap.real(e.space, e.space.coords[:, 1])
    out.append(check_segment_chain_rule(
        planar, proj, e.point_near((-0.4, -0.3)), e.point_near((0.4, 0.3)),
        0.05, name="segment_chain_rule/planar_projection"))
    slope = np.array([2.0, -1.0])
    aff = SampledMap.real(e.space, e.space.coords @ slope)
    out.append(check_segment_chain_rule(
        aff, lambda u: float(np.asarray(u) @ slope),
        e.point_near((-0.4, -0.2)), e.point_near((0.4, 0.2)),
        0.05, name="segment_chain_rule/affine"))
    const = SampledMap.real(e.space, np.zeros(e.space.n))
    out.append(check_segment_chain_rule(
        const, lambda u: 0.0, e.point_near((-0.3, 0.3)),
        e.point_near((0.3, -0.3)), 0.05,
        name="segment_chain_rule/constant"))
    return out


def _suite_bhmv(cfg, rng, entries):
    cases = {
        "two_blocks": IntervalUnion([(0.0, 1.0), (2.0, 3.0)]),
        "empty": IntervalUnion([]),
        "full": IntervalUnion([(0.0, 3.0)]),
    }
    return [check_bhmv_bound(E, (0.0, 3.0), 0.02, name=f"bhmv/{label}")
            for label, E in cases.items()]


def _suite_envelope(cfg, rng, entries):
    fine = make_zoo(1e-3)
    out = []
    for n in ("constant", "affine_slope3", "sin", "square", "abs",
              "oscillator"):
        e = get_entry(fine, n)
        out.append(check_envelope_identity(e.map, 0.05, 1e-3,
                                           name=f"envelope_identity/{n}"))
    return out


def _suite_openness(cfg, rng, entries):
    out = []
    for e in entries:
        if e.space.n < 3:
            continue
        x0 = e.space.ids[e.space.n // 2]
        r = 0.3
        gamma = loc_lip_r(e.map, x0, r) + 1.0
        fault = cfg.inject_fault == "openness" and e.name == "sin"
        out.append(check_openness_surrogate(
            e.map, x0, r, gamma, name=f"openness/zoo:{e.name}",
            inject_fault=fault))
    for k in range(cfg.random_spaces):
        sp = random_space(rng, 12)
        f = random_map(rng, sp)
        x0 = sp.ids[int(rng.integers(0, sp.n))]
        r = float(rng.uniform(0.5, 2.0))
        out.append(check_openness_surrogate(
            f, x0, r, loc_lip_r(f, x0, r) + 1.0,
            name=f"openness/random:{k:03d}"))
    return out


def _suite_semicontinuity(cfg, rng, entries):
    coarse = make_zoo(2e-3)
    out = []
    # scale radius chosen off the sample lattice: a grid-aligned open-ball
    # boundary would flicker between points under floating-point rounding
    for e in coarse:
        out.append(check_semicontinuity_fields(
            e, r=0.0999, h=0.01, name=f"semicontinuity/{e.name}"))
    return out


def _suite_level_sets(cfg, rng, entries):
    fine = make_zoo(1e-4)
    out = []
    grid = RadiusGrid(0.02, 0.5, 4, 2)
    e = get_entry(fine, "sqrt_abs")
    pts = [p for p in e.space.ids if abs(p) <= 0.02]
    out.append(check_level_sets(e, 99.5, grid, name="level_sets/sqrt_abs",
                                points=pts))
    coarse_grid = RadiusGrid(0.3, 0.5, 5, 3)
    for e in entries:
        pts = _entry_points(e, rng)
        out.append(check_level_sets(e, 10.0, coarse_grid,
                                    name=f"level_sets/zoo:{e.name}",
                                    points=pts))
    for k in range(cfg.random_spaces):
        sp = random_space(rng, int(rng.integers(4, 13)))
        out.append(check_summary_ordering(
            random_map(rng, sp), RadiusGrid(1.5, 0.5, 5, 3),
            name=f"level_sets/random:{k:03d}"))
    return out


def _suite_setclass(cfg, rng, entries):
    return [check_setclass_exhaustive(rng=rng),
            check_setclass_random(seed=cfg.seed)]


def _suite_oracle_equiv(cfg, rng, entries, spaces=None):
    out = []
    count = spaces if spaces is not None else cfg.random_spaces
    for k in range(count):
        sp = random_space(rng, int(rng.integers(3, 13)))
        vals = rng.normal(size=sp.n)
        radii = rng.uniform(0.2, 2.5, size=3)
        out.append(check_scale_oracles(sp, vals, radii,
                                       name=f"oracle_equiv/{k:03d}"))
    return out


_SUITES = {
    "chain": _suite_chain,
    "plus_variant": _suite_plus_variant,
    "frechet": _suite_frechet,
    "c1_identity": _suite_c1,
    "separation": _suite_separation,
    "gamma_lipschitz": _suite_gamma,
    "lipnorm": _suite_lipnorm,
    "segment_chain": _suite_segment,
    "bhmv": _suite_bhmv,
    "envelope": _suite_envelope,
    "openness": _suite_openness,
    "semicontinuity": _suite_semicontinuity,
    "level_sets": _suite_level_sets,
    "setclass": _suite_setclass,
    "oracle_equiv": _suite_oracle_equiv,
}


def run_suite(config: SuiteConfig) -> list:
    """Run the configured check suites; results sorted by canonical name."""
    names = config.suite
    if "all" in names:
        names = SUITE_NAMES
    unknown = [n for n in names if n not in _SUITES]
    if unknown:
        raise InputError(f"unknown suite(s): {unknown}")
    entries = make_zoo(config.zoo_resolution)
    results = []
    for suite_name in names:
        rng = np.random.default_rng(config.seed)
        try:
            results.extend(_SUITES[suite_name](config, rng, entries))
        except InputError as exc:
            results.append(CheckResult(f"{suite_name}/input", "fail",
                                       detail=str(exc)))
    return sorted(results, key=lambda r: r.name)


def overall_ok(results) -> bool:
    return all(r.passed for r in results)
