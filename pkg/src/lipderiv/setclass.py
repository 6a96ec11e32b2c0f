"""Finite set-family algebra and semicontinuity relative to a family.

On a finite ground set, countable unions and intersections collapse to
finite ones, so the sigma/delta closures are fixpoints inside the power set
and every statement about them is exhaustively checkable.  Subsets are
represented as bitmasks over the ground tuple.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import CapacityError, InputError

#: exhaustive-regime limit on |ground|
MAX_GROUND = 12


class SetFamily:
    """A collection of subsets of a finite ground set."""

    def __init__(self, ground, masks):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise InputError("ground elements must be distinct")
        full = (1 << len(self.ground)) - 1
        masks = frozenset(int(m) for m in masks)
        if any(m & ~full for m in masks):
            raise InputError("member subset escapes the ground set")
        self.masks = masks

    @classmethod
    def from_sets(cls, ground, members):
        ground = tuple(ground)
        pos = {e: i for i, e in enumerate(ground)}
        masks = []
        for member in members:
            m = 0
            for e in member:
                m |= 1 << pos[e]
            masks.append(m)
        return cls(ground, masks)

    @classmethod
    def power_set(cls, ground):
        ground = tuple(ground)
        return cls(ground, range(1 << len(ground)))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    def members(self):
        """Members as frozensets in canonical (bitmask) order."""
        out = []
        for m in sorted(self.masks):
            out.append(frozenset(e for i, e in enumerate(self.ground)
                                 if m >> i & 1))
        return out

    def __eq__(self, other):
        return (isinstance(other, SetFamily) and self.ground == other.ground
                and self.masks == other.masks)

    def __hash__(self):
        return hash((self.ground, self.masks))

    def __len__(self):
        return len(self.masks)

    def __repr__(self):
        return f"SetFamily(ground={self.ground!r}, members={len(self.masks)})"


def complements(F: SetFamily) -> SetFamily:
    full = F.full_mask
    return SetFamily(F.ground, {full ^ m for m in F.masks})


def _closure(masks, op):
    out = set(masks)
    frontier = set(masks)
    while frontier:
        new = set()
        for a in frontier:
            for b in out:
                c = op(a, b)
                if c not in out and c not in new:
                    new.add(c)
        out |= new
        frontier = new
    return out


def sigma_closure(F: SetFamily) -> SetFamily:
    """Smallest superfamily closed under unions (finite fixpoint)."""
    return SetFamily(F.ground, _closure(F.masks, lambda a, b: a | b))


def delta_closure(F: SetFamily) -> SetFamily:
    """Smallest superfamily closed under intersections."""
    return SetFamily(F.ground, _closure(F.masks, lambda a, b: a & b))


_OPS = {"c": complements, "s": sigma_closure, "d": delta_closure}


def apply_ops(F: SetFamily, ops: str) -> SetFamily:
    """Apply a string of closure operators left to right, e.g. "cs", "cdc"."""
    for op in ops:
        F = _OPS[op](F)
    return F


#: the three subscript identities, as (left ops, right ops) pairs
FAMILY_IDENTITIES = {
    "cdc=s": ("cdc", "s"),
    "sc=cd": ("sc", "cd"),
    "dc=cs": ("dc", "cs"),
}


def verify_family_identity(F: SetFamily, identity: str):
    """Check one of the closure identities; returns (holds, counterexamples).

    Counterexamples are the members (as frozensets) in the symmetric
    difference of the two sides; empty on success.
    """
    if len(F.ground) > MAX_GROUND:
        raise CapacityError(f"ground set larger than {MAX_GROUND}")
    try:
        left_ops, right_ops = FAMILY_IDENTITIES[identity]
    except KeyError:
        raise InputError(f"unknown identity {identity!r}") from None
    left = apply_ops(F, left_ops)
    right = apply_ops(F, right_ops)
    if left == right:
        return True, []
    diff = SetFamily(F.ground, left.masks ^ right.masks)
    return False, diff.members()


class FiniteField:
    """An extended-real value per element of a finite ground set."""

    def __init__(self, ground, values):
        self.ground = tuple(ground)
        self.values = np.asarray(values, dtype=float).reshape(-1)
        if self.values.shape[0] != len(self.ground):
            raise InputError("one value per ground element required")
        if np.any(np.isnan(self.values)):
            raise InputError("NaN is not a valid value")

    def sublevel_mask(self, gamma: float) -> int:
        """Bitmask of {x : f(x) < gamma}."""
        m = 0
        for i, v in enumerate(self.values):
            if v < gamma:
                m |= 1 << i
        return m

    def superlevel_mask(self, gamma: float) -> int:
        """Bitmask of {x : f(x) > gamma}."""
        m = 0
        for i, v in enumerate(self.values):
            if v > gamma:
                m |= 1 << i
        return m

    def level_mask(self, value: float) -> int:
        m = 0
        for i, v in enumerate(self.values):
            if v == value:
                m |= 1 << i
        return m


def _upper_thresholds(f: FiniteField):
    """Finitely many gammas whose sublevel preimages cover all of R.

    Preimages {f < gamma} change only at finite values of f, so each constancy
    region needs one representative: the finite values themselves plus one
    gamma above the largest.
    """
    finite = sorted({float(v) for v in f.values if np.isfinite(v)})
    if not finite:
        return [0.0]
    return finite + [finite[-1] + 1.0]


def _lower_thresholds(f: FiniteField):
    finite = sorted({float(v) for v in f.values if np.isfinite(v)})
    if not finite:
        return [0.0]
    return [finite[0] - 1.0] + finite


def is_A_upper_sc(f: FiniteField, F: SetFamily) -> bool:
    """True iff every strict sublevel preimage of f belongs to F."""
    if f.ground != F.ground:
        raise InputError("field and family must share the ground set")
    return all(f.sublevel_mask(g) in F.masks for g in _upper_thresholds(f))


def is_A_lower_sc(f: FiniteField, F: SetFamily) -> bool:
    """True iff every strict superlevel preimage of f belongs to F."""
    if f.ground != F.ground:
        raise InputError("field and family must share the ground set")
    return all(f.superlevel_mask(g) in F.masks for g in _lower_thresholds(f))


def check_duality_props(f: FiniteField, F: SetFamily) -> dict:
    """Conclusions that follow from f being F-upper (or F-lower) sc.

    For an F-upper sc field: (i) all closed superlevel preimages lie in F_c,
    (ii) the finite part lies in F_s and the +inf level in F_sc, (iii) the
    -inf level lies in F_d, (iv) f is F_cs-lower sc.  For an F-lower sc field
    the dual statements are checked.  Raises InputError when neither
    hypothesis holds.
    """
    full = F.full_mask
    if is_A_upper_sc(f, F):
        Fc = apply_ops(F, "c")
        report = {
            "closed_superlevels_in_c":
                all((full ^ f.sublevel_mask(g)) in Fc.masks
                    for g in _upper_thresholds(f)),
            "finite_part_in_s":
                (full ^ f.level_mask(np.inf)) in apply_ops(F, "s").masks,
            "plus_inf_level_in_sc":
                f.level_mask(np.inf) in apply_ops(F, "sc").masks,
            "minus_inf_level_in_d":
                f.level_mask(-np.inf) in apply_ops(F, "d").masks,
            "lower_sc_wrt_cs": is_A_lower_sc(f, apply_ops(F, "cs")),
        }
    elif is_A_lower_sc(f, F):
        report = {
            "closed_sublevels_in_c":
                all((full ^ f.superlevel_mask(g)) in apply_ops(F, "c").masks
                    for g in _lower_thresholds(f)),
            "finite_part_in_s":
                (full ^ f.level_mask(-np.inf)) in apply_ops(F, "s").masks,
            "minus_inf_level_in_sc":
                f.level_mask(-np.inf) in apply_ops(F, "sc").masks,
            "plus_inf_level_in_d":
                f.level_mask(np.inf) in apply_ops(F, "d").masks,
            "upper_sc_wrt_cs": is_A_upper_sc(f, apply_ops(F, "cs")),
        }
    else:
        raise InputError("field is neither F-upper nor F-lower semicontinuous")
    report["all"] = all(report.values())
    return report


def check_sup_inf_props(fs, F: SetFamily, mode: str) -> bool:
    """Pointwise sup of F-upper sc fields is F_cs-lower sc (mode="sup");
    pointwise inf of F-lower sc fields is F_cs-upper sc (mode="inf")."""
    fs = list(fs)
    if not fs:
        raise InputError("need at least one field")
    if mode == "sup":
        if not all(is_A_upper_sc(f, F) for f in fs):
            raise InputError("every field must be F-upper semicontinuous")
        agg = FiniteField(F.ground, np.max([f.values for f in fs], axis=0))
        return is_A_lower_sc(agg, apply_ops(F, "cs"))
    if mode == "inf":
        if not all(is_A_lower_sc(f, F) for f in fs):
            raise InputError("every field must be F-lower semicontinuous")
        agg = FiniteField(F.ground, np.min([f.values for f in fs], axis=0))
        return is_A_upper_sc(agg, apply_ops(F, "cs"))
    raise InputError("mode must be 'sup' or 'inf'")


def all_topologies(n: int):
    """All topologies on an n-element ground set {0..n-1}, as mask frozensets.

    Brute force over families containing the empty set and the whole set,
    filtered for closure under union and intersection; fine for n <= 4.
    """
    if n > 4:
        raise CapacityError("topology enumeration limited to n <= 4")
    full = (1 << n) - 1
    inner = [m for m in range(1, full)] if full else []
    topologies = []
    for bits in range(1 << len(inner)):
        members = {0, full} | {inner[i] for i in range(len(inner))
                               if bits >> i & 1}
        if all(a | b in members and a & b in members
               for a, b in itertools.combinations(members, 2)):
            topologies.append(frozenset(members))
    return topologies


def random_topology(n: int, rng) -> frozenset:
    """Topology generated by a few random subsets of {0..n-1}."""
    full = (1 << n) - 1
    gens = {0, full}
    for _ in range(rng.integers(1, 4)):
        gens.add(int(rng.integers(0, full + 1)))
    members = set(gens)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(members), 2):
            for c in (a | b, a & b):
                if c not in members:
                    members.add(c)
                    changed = True
    return frozenset(members)
