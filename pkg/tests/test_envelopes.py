import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipderiv import (FiniteMetricSpace, InputError, ScalarField, baire_lower,
                      baire_upper, lsc_defect, usc_defect)


def line_field(xs, values):
    sp = FiniteMetricSpace(list(xs), coords=np.asarray(xs, float)[:, None])
    return ScalarField(sp, values)


def test_field_validation():
    sp = FiniteMetricSpace.grid1d(0, 1, 0.5)
    with pytest.raises(InputError):
        ScalarField(sp, [1.0, 2.0])
    with pytest.raises(InputError):
        ScalarField(sp, [1.0, np.nan, 2.0])
    f = ScalarField(sp, [1.0, np.inf, -np.inf])
    assert f.value(sp.ids[1]) == np.inf


def test_envelopes_bracket_field():
    g = line_field(np.linspace(0, 1, 11), np.sin(np.linspace(0, 6, 11)))
    up = baire_upper(g, 0.25)
    lo = baire_lower(g, 0.25)
    assert np.all(up.values >= g.values)
    assert np.all(lo.values <= g.values)
    assert np.all(up.values >= lo.values)


def test_envelope_scale_validation():
    g = line_field([0.0, 1.0], [0.0, 1.0])
    for op in (baire_upper, baire_lower, usc_defect, lsc_defect):
        with pytest.raises(InputError):
            op(g, 0.0)


def test_indicator_defects():
    # step field: usc defect vanishes at the top of the jump, not the bottom
    xs = np.linspace(-1, 1, 21)
    g = line_field(xs, (xs >= 0).astype(float))
    ud = usc_defect(g, 0.15)
    ld = lsc_defect(g, 0.15)
    i_lo = int(np.argmin(np.abs(xs + 0.1)))      # just below the jump
    i_hi = int(np.argmin(np.abs(xs - 0.0)))      # at the jump
    assert ud.values[i_lo] == 1.0
    assert ud.values[i_hi] == 0.0
    assert ld.values[i_hi] == 1.0
    assert ld.values[i_lo] == 0.0


def test_defect_duality():
    xs = np.linspace(-1, 1, 31)
    g = line_field(xs, np.cos(3 * xs) + (xs > 0.3))
    np.testing.assert_allclose(usc_defect(g, 0.2).values,
                               lsc_defect(-g, 0.2).values)


def test_infinite_values_defect_zero():
    g = line_field([0.0, 0.1, 0.2], [np.inf, np.inf, 1.0])
    # inf - inf gaps collapse to 0 rather than NaN
    d = usc_defect(g, 0.15).values
    assert d[0] == 0.0 and d[1] == 0.0
    assert d[2] == np.inf


def test_continuous_field_defects_small():
    xs = np.linspace(0, 1, 201)
    g = line_field(xs, np.sin(xs))
    h = 0.01
    assert float(np.max(usc_defect(g, h).values)) <= h
    assert float(np.max(lsc_defect(g, h).values)) <= h


@given(st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_envelope_idempotent_and_monotone(seed):
    rng = np.random.default_rng(seed)
    xs = np.sort(rng.uniform(0, 1, size=12))
    g = line_field(xs, rng.normal(size=12))
    h = float(rng.uniform(0.05, 0.5))
    up = baire_upper(g, h)
    # envelope of the envelope can only grow, and smaller scales shrink it
    assert np.all(baire_upper(up, h).values >= up.values)
    assert np.all(baire_upper(g, h / 2).values <= up.values)
