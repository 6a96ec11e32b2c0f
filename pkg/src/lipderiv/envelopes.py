"""Scale-h Baire envelopes and semicontinuity-defect diagnostics.

The envelopes are taken over metric balls at an explicit scale h; on a finite
sample the infimum over all scales degenerates to the field itself, so a
two-scale comparison is the meaningful surrogate of the continuum envelope.
"""
from __future__ import annotations

import numpy as np

from .errors import InputError
from .metric import FiniteMetricSpace


class ScalarField:
    """An extended-real value per point of a finite metric space.

    +inf and -inf are permitted, NaN is not.
    """

    def __init__(self, space: FiniteMetricSpace, values):
        values = np.asarray(values, dtype=float).reshape(-1)
        if values.shape[0] != space.n:
            raise InputError("one value per point required")
        if np.any(np.isnan(values)):
            raise InputError("NaN is not a valid field value")
        self.space = space
        self.values = values

    def value(self, point) -> float:
        return float(self.values[self.space.index(point)])

    def __neg__(self):
        return ScalarField(self.space, -self.values)


def _check_scale(h: float):
    if h <= 0:
        raise InputError("envelope scale h must be positive")


def baire_upper(g: ScalarField, h: float) -> ScalarField:
    """Pointwise max of g over the open ball B(x, h); >= g everywhere."""
    _check_scale(h)
    out = np.empty_like(g.values)
    for i in range(g.space.n):
        idx = g.space.ball_indices(i, h)
        out[i] = np.max(g.values[idx]) if idx.size else g.values[i]
    return ScalarField(g.space, out)


def baire_lower(g: ScalarField, h: float) -> ScalarField:
    """Pointwise min of g over the open ball B(x, h); <= g everywhere."""
    _check_scale(h)
    out = np.empty_like(g.values)
    for i in range(g.space.n):
        idx = g.space.ball_indices(i, h)
        out[i] = np.min(g.values[idx]) if idx.size else g.values[i]
    return ScalarField(g.space, out)


def usc_defect(g: ScalarField, h: float) -> ScalarField:
    """max(0, sup over the punctured ball - g(x)); 0 on empty punctured balls.

    Zero everywhere is the finite-scale signature of upper semicontinuity.
    """
    _check_scale(h)
    out = np.zeros_like(g.values)
    for i in range(g.space.n):
        d = g.space.dist_row(i)
        mask = (d > 0) & (d < h)
        if np.any(mask):
            with np.errstate(invalid="ignore"):
                gap = np.max(g.values[mask]) - g.values[i]
            if np.isnan(gap):          # inf - inf
                gap = 0.0
            out[i] = max(0.0, gap)
    return ScalarField(g.space, out)


def lsc_defect(g: ScalarField, h: float) -> ScalarField:
    """Dual of usc_defect: max(0, g(x) - inf over the punctured ball)."""
    _check_scale(h)
    out = np.zeros_like(g.values)
    for i in range(g.space.n):
        d = g.space.dist_row(i)
        mask = (d > 0) & (d < h)
        if np.any(mask):
            with np.errstate(invalid="ignore"):
                gap = g.values[i] - np.min(g.values[mask])
            if np.isnan(gap):
                gap = 0.0
            out[i] = max(0.0, gap)
    return ScalarField(g.space, out)
