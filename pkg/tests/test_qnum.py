import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsorep.qnum import QParam, ZeroDenominatorError, denom_even, half_inverse_gap, qnumber, qnumber_plus

qs = st.floats(min_value=1.01, max_value=5.0) | st.floats(min_value=0.2, max_value=0.99)
exponents = st.integers(min_value=-12, max_value=12).map(lambda a: Fraction(a, 2))


def test_qnumber_examples():
    assert qnumber(1, 2.0) == pytest.approx(1.0, abs=1e-15)
    assert qnumber(0, 1.5) == 0
    assert qnumber(2, 2.0) == pytest.approx(2.5, rel=1e-15)


def test_qnumber_plus_examples():
    assert qnumber_plus(0, 2.0) == pytest.approx(4 / 3, rel=1e-15)
    # (4^{1/2} + 4^{-1/2}) / (4 - 1/4), evaluated at 50 digits
    with mpmath.workdps(50):
        ref = (mpmath.sqrt(4) + 1 / mpmath.sqrt(4)) / (4 - mpmath.mpf(1) / 4)
    assert qnumber_plus(Fraction(1, 2), 4.0) == pytest.approx(float(ref), rel=1e-15)
    assert float(ref) == pytest.approx(2 / 3, rel=1e-15)
    q = 1.7
    assert qnumber_plus(Fraction(1, 2), q) * (q**0.5 - q**-0.5) == pytest.approx(1.0, rel=1e-14)


def test_denom_even_examples():
    assert denom_even(0, 1.3, "classical") == 2
    assert denom_even(1, 2.0, "nonclassical") == pytest.approx(1.5)
    assert denom_even(Fraction(1, 2), 4.0, "classical") == pytest.approx(2.5)
    with pytest.raises(ZeroDenominatorError):
        denom_even(0, 2.0, "nonclassical")


@pytest.mark.parametrize("bad", [0.0, -1.0, 1.0])
def test_qparam_rejects(bad):
    with pytest.raises(ValueError):
        QParam(bad)


def test_qparam_h():
    assert QParam(math.e).h == pytest.approx(1.0)


@given(exponents, qs)
def test_symmetries(a, q):
    assert qnumber(-a, q) == pytest.approx(-qnumber(a, q), rel=1e-12, abs=1e-300)
    assert qnumber_plus(-a, q) == pytest.approx(qnumber_plus(a, q), rel=1e-12)


@given(exponents, qs)
def test_plus_bracket_nonzero(a, q):
    assert qnumber_plus(a, q) != 0


@given(st.integers(min_value=1, max_value=20), st.floats(min_value=1.001, max_value=6.0))
def test_positive_for_positive_integers(a, q):
    assert qnumber(a, q) > 0


@given(st.integers(min_value=-10, max_value=10).map(lambda a: Fraction(a, 2)))
def test_classical_limit(a):
    eps = 1e-4
    assert abs(qnumber(a, 1 + eps) - float(a)) <= 1e-3 * abs(float(a)) * (1 + float(a) ** 2)


def test_extended_precision_agrees():
    hi = QParam(1.3, dps=40)
    for a in (Fraction(1, 2), Fraction(5, 2), 3, Fraction(-7, 2)):
        assert float(qnumber(a, hi)) == pytest.approx(qnumber(a, 1.3), rel=1e-13)
        assert float(qnumber_plus(a, hi)) == pytest.approx(qnumber_plus(a, 1.3), rel=1e-13)
    assert isinstance(qnumber(Fraction(3, 2), hi), mpmath.mpf) or hasattr(qnumber(Fraction(3, 2), hi), "_mpf_")


def test_half_inverse_gap():
    assert half_inverse_gap(4.0) == pytest.approx(2 / 3)
