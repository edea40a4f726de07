import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kirchhoff import PowerNonlinearity, eval_G, eval_g, validate_hypotheses
from kirchhoff.errors import ModelRejected

CUBIC = PowerNonlinearity(1.0, 3.0)


@pytest.mark.parametrize("s, expected", [(0.0, 0.0), (1.0, 0.0), (2.0, 6.0)])
def test_eval_g_examples(s, expected):
    assert eval_g(CUBIC, s) == expected


@pytest.mark.parametrize("s, expected", [(math.sqrt(2.0), 0.0), (1.0, -0.25), (2.0, 2.0)])
def test_eval_G_examples(s, expected):
    assert eval_G(CUBIC, s) == pytest.approx(expected, abs=1e-15)


def test_arrays_are_evaluated_elementwise():
    s = np.array([-2.0, 0.0, 2.0])
    np.testing.assert_array_equal(CUBIC.g(s), [-6.0, 0.0, 6.0])
    np.testing.assert_array_equal(CUBIC.G(s), [2.0, 0.0, 2.0])


models = st.builds(PowerNonlinearity, st.floats(0.1, 5.0), st.floats(1.05, 4.5))


@settings(max_examples=200, deadline=None)
@given(models, st.floats(-5.0, 5.0))
def test_g_odd_G_even(model, s):
    assert model.g(-s) == -model.g(s)
    assert model.G(-s) == model.G(s)


@settings(max_examples=200, deadline=None)
@given(models, st.floats(-3.0, 3.0))
def test_G_is_antiderivative_of_g(model, s):
    # remainder of the first-order expansion is O(h^2)
    errs = []
    for h in (1e-2, 5e-3, 2.5e-3):
        errs.append(abs(model.G(s + h) - model.G(s) - h * model.g(s)))
    bound = 2.0 * max(abs(model.m), abs(s) ** (model.p - 1) * model.p + 1.0) * 1e-4
    assert errs[0] <= bound + 1e-12
    if errs[0] > 1e-9:
        assert errs[2] < 0.3 * errs[0]


@settings(max_examples=200, deadline=None)
@given(models)
def test_zeta0_is_zero_of_G(model):
    z = model.zeta0
    assert abs(model.G(z)) < 1e-12 * max(1.0, z * z * model.m)
    assert model.G(1.01 * z) > 0 > model.G(0.99 * z)


@pytest.mark.parametrize("m, p, N, ok", [(1, 3, 3, True), (1, 5, 3, False), (1, 1.5, 6, True)])
def test_validation_examples(m, p, N, ok):
    report = validate_hypotheses(PowerNonlinearity(m, p), N)
    assert report.accepted is ok
    assert report.p_critical == pytest.approx((N + 2) / (N - 2))


def test_validation_report_fields():
    report = validate_hypotheses(CUBIC, 3)
    assert report.zeta0 == pytest.approx(math.sqrt(2.0))
    assert report.p_critical == 5.0
    assert report.g1 and report.g2 and report.g3 and report.g4


def test_distinct_diagnostics():
    crit = validate_hypotheses(PowerNonlinearity(1, 5), 3)
    assert not crit.g3 and "critical exponent" in crit.diagnostics[0]
    neg_m = validate_hypotheses(PowerNonlinearity(-1, 3), 3)
    assert not neg_m.g2 and "m = -1" in neg_m.diagnostics[0]
    linear = validate_hypotheses(PowerNonlinearity(1, 1), 3)
    assert not linear.accepted and "must exceed 1" in linear.diagnostics[0]
    assert len({crit.diagnostics[0], neg_m.diagnostics[0], linear.diagnostics[0]}) == 3


def test_require_valid_raises():
    with pytest.raises(ModelRejected, match="critical exponent"):
        PowerNonlinearity(1, 5).require_valid(3)
    with pytest.raises(ValueError):
        CUBIC.validate(2)
