import itertools
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from qsorep.patterns import Basis, Flavor, GTPattern, HighestWeight, enumerate_patterns, lcoords, shift
from qsorep.qnum import QParam, qnumber, qnumber_plus
from qsorep.repmatrix import (
    Kind,
    RepSpec,
    SignVector,
    build,
    coeff_A,
    coeff_B,
    coeff_C,
    coeff_Chat,
    coeff_D,
)
from qsorep.verify import check_relations

C, NC = Flavor.CLASSICAL, Flavor.NONCLASSICAL
Q = 2.0


def hw(n, *values, flavor=C):
    return HighestWeight.from_values(n, values, flavor)


def spec(n, *values, kind="classical", signs=None, q=Q):
    flavor = NC if kind in ("nonclassical", "onedim") else C
    return RepSpec(hw(n, *values, flavor=flavor), QParam(q), Kind.parse(kind), signs and SignVector(tuple(signs)))


# -- coefficients -----------------------------------------------------------------

def test_A_blocked_at_upper_bound():
    top = GTPattern(((2,), (2,)))
    assert coeff_A(top, 1, 1, Q) == 0


def test_A_interior():
    mid = GTPattern(((2,), (0,)))
    assert coeff_A(mid, 1, 1, Q) == pytest.approx(np.sqrt(qnumber(2, Q) * qnumber(1, Q)), rel=1e-15)


def test_B_interior_so5_vector():
    # m_5 = (1,0), m_4 = (1,0), m_3 = (0), m_2 = (0): raising m_{1,3}
    p = GTPattern(((2, 0), (2, 0), (0,), (0,)))
    assert p.is_valid()
    value = coeff_B(p, 2, 1, Q)
    # l_{1,4}=2, l_{2,4}=0, l_{1,3}=1, l_{1,2}=0
    with mpmath.workdps(40):
        qq = mpmath.mpf(Q)

        def br(a):
            return (qq**a - qq**-a) / (qq - 1 / qq)

        ref = mpmath.sqrt(br(3) * br(1) * br(1) * br(-1) * br(1) * br(-1))
    assert value > 0
    assert value == pytest.approx(float(ref), rel=1e-14)
    assert value == pytest.approx(np.sqrt(qnumber(3, Q)), rel=1e-14)


def test_B_blocked_at_upper_bound_so4():
    # m_4 = (1,0), m_3 = (1): m_{1,3} already at m_{1,4}
    p = GTPattern(((2, 0), (2,), (0,)))
    assert coeff_B(p, 2, 1, Q) == 0


def test_B_from_lcoords_matches_pattern():
    for p in enumerate_patterns(hw(5, "2", "1")):
        assert coeff_B(p, 2, 1, Q) == coeff_B(lcoords(p), 2, 1, Q)


@pytest.mark.parametrize("m2", [-2, 0, 2, 4])
def test_C_so3(m2):
    p = GTPattern(((4,), (m2,)))
    assert coeff_C(p, 1, Q) == pytest.approx(qnumber(Fraction(m2, 2), Q), abs=1e-15)


def test_Chat_and_D_small():
    p = GTPattern(((3,), (1,)), NC)
    assert coeff_Chat(p, 1, Q) == pytest.approx(qnumber_plus(Fraction(1, 2), Q), rel=1e-15)
    # l_{1,3} = 3/2 + 1, so D_2 = [l_{1,3} - 1/2] = [2]
    assert coeff_D(p, 1, Q) == pytest.approx(qnumber(2, Q), rel=1e-15)


# -- builders ---------------------------------------------------------------------

def test_classical_so3_vector():
    rep = build(spec(3, "1"))
    assert np.allclose(rep[2], np.diag([-1j, 0, 1j]), atol=1e-15)
    i32 = rep[3]
    assert np.allclose(i32.imag, 0)
    assert np.allclose(np.diag(i32), 0)
    assert np.count_nonzero(np.abs(i32) > 1e-14) == 4
    assert np.allclose(np.triu(i32, 2), 0) and np.allclose(np.tril(i32, -2), 0)
    assert check_relations(rep).passed


def test_nonclassical_so3_three_halves():
    q = QParam(Q)
    gap = 1 / (Q**0.5 - Q**-0.5)
    for e2, e3 in itertools.product((1, -1), repeat=2):
        rep = build(spec(3, "3/2", kind="nonclassical", signs=(e2, e3)))
        assert rep.dim == 2
        expect = np.diag([e2 * qnumber_plus(Fraction(1, 2), q), e2 * qnumber_plus(Fraction(3, 2), q)])
        assert np.allclose(rep[2], expect, rtol=1e-14)
        i32 = rep[3]
        # the delta term sits only in the m_{1,2} = 1/2 column
        assert i32[0, 0] == pytest.approx(e3 * gap * qnumber(2, q), rel=1e-14)
        assert i32[1, 1] == 0
        assert check_relations(rep).passed


def test_onedim_values():
    rep = build(spec(4, "1/2", "1/2", kind="onedim", signs=(1, 1, 1), q=4.0))
    assert [complex(rep[k][0, 0]) for k in (2, 3, 4)] == pytest.approx([2 / 3] * 3, rel=1e-15)
    flipped = build(spec(4, "1/2", "1/2", kind="onedim", signs=(-1, 1, 1), q=4.0))
    assert flipped[2][0, 0] == pytest.approx(-2 / 3) and flipped[3][0, 0] == pytest.approx(2 / 3)


@pytest.mark.parametrize("q, bound", [(1.2, 1e-14), (2.0, 1e-14), (4.0, 1e-14), (7.0, 1e-14), (1.05, 1e-12)])
def test_onedim_scalar_identity(q, bound):
    c = 1 / (q**0.5 - q**-0.5)
    assert c * c * (2 - q - 1 / q) == pytest.approx(-1, rel=1e-12)
    rep = build(spec(3, "1/2", kind="onedim", signs=(1, -1), q=q))
    # near q = 1 the factor 2 - [2] cancels and rounding grows like 1/(q-1)^2
    assert check_relations(rep).max_residual < bound


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_onedim_equals_nonclassical_half(n):
    half = ["1/2"] * (n // 2)
    for signs in SignVector.all(n):
        a = build(spec(n, *half, kind="onedim", signs=signs.values))
        b = build(spec(n, *half, kind="nonclassical", signs=signs.values))
        for k in range(2, n + 1):
            assert np.allclose(np.asarray(a[k], complex), b[k], rtol=1e-14, atol=0)


def test_prime_basis_so3():
    rep = build(spec(3, "3/2", kind="prime", signs=(1, 1)))
    assert rep.dim == 4
    assert [p.m(1, 2) for p in rep.basis] == [Fraction(x, 2) for x in (-3, -1, 1, 3)]
    assert check_relations(rep).passed


def test_prime_odd_signs_noted():
    rep = build(spec(3, "3/2", kind="prime", signs=(1, -1)))
    assert "odd signs ignored" in rep.notes
    plain = build(spec(3, "3/2", kind="prime", signs=(1, 1)))
    assert np.array_equal(rep[3], plain[3])


@pytest.mark.parametrize("n, values", [(4, ("3/2", "1/2")), (5, ("3/2", "1/2")), (4, ("1/2", "-1/2"))])
def test_prime_relations(n, values):
    if float(Fraction(values[-1])) < 0:
        with pytest.raises(ValueError):
            spec(n, *values, kind="prime", signs=(1,) * (n - 1))
        return
    for signs in SignVector.all(n):
        assert check_relations(build(spec(n, *values, kind="prime", signs=signs.values))).passed


@pytest.mark.parametrize("bad", [dict(kind="classical", signs=(1, 1)), dict(kind="nonclassical")])
def test_spec_validation(bad):
    with pytest.raises(ValueError):
        spec(3, "3/2", **bad)


# -- structural invariants ------------------------------------------------------------

CASES = [
    ("classical", 4, ("1", "-1")), ("classical", 5, ("2", "1")), ("classical", 5, ("3/2", "1/2")),
    ("classical", 6, ("1", "1", "0")), ("nonclassical", 4, ("3/2", "1/2")),
    ("nonclassical", 5, ("5/2", "1/2")), ("nonclassical", 6, ("3/2", "3/2", "1/2")),
    ("prime", 5, ("3/2", "1/2")),
]


def _reps():
    for kind, n, values in CASES:
        if kind == "classical":
            yield build(spec(n, *values))
        else:
            for signs in SignVector.all(n)[:4]:
                yield build(spec(n, *values, kind=kind, signs=signs.values))


def test_structure_and_sparsity():
    for rep in _reps():
        for k, m in rep.generators.items():
            m = np.asarray(m, complex)
            nnz = np.count_nonzero(np.abs(m) > 0, axis=0)
            assert nnz.max() <= 2 * ((k - 1) // 2) + 1
            if rep.spec.kind is not Kind.CLASSICAL:
                assert np.all(m.imag == 0)
            elif k % 2:
                assert np.all(m.imag == 0) and np.all(np.diag(m) == 0)
            else:
                off = m - np.diag(np.diag(m))
                assert np.all(off.imag == 0) and np.all(np.diag(m).real == 0)


def test_skipped_term_consistency():
    q = QParam(1.2)
    weights = [
        hw(3, "2"), hw(4, "2", "-1"), hw(4, "3/2", "1/2"), hw(5, "2", "1"), hw(5, "3/2", "1/2"),
        hw(3, "5/2", flavor=NC), hw(4, "5/2", "3/2", flavor=NC), hw(5, "5/2", "3/2", flavor=NC),
    ]
    checked = 0
    for w in weights:
        for p in enumerate_patterns(w):
            for k in range(2, w.n):
                for j in range(1, k // 2 + 1):
                    for d in (1, -1):
                        if shift(p, k, j, d) is not None:
                            continue
                        probe = p if d == 1 else shift(p, k, j, d, check=False)
                        if k % 2 == 0:
                            pp = k // 2
                            if w.flavor is NC and d == -1 and j == pp and p.row(k)[j - 1] == 1:
                                continue  # the delta term replaces this lowering
                            value = coeff_A(probe, pp, j, q)
                        else:
                            value = coeff_B(probe, (k + 1) // 2, j, q)
                        assert value == 0, (str(p), k, j, d)
                        checked += 1
    assert checked > 100


def test_extended_precision_build_agrees():
    lo = build(spec(5, "3/2", "1/2", kind="nonclassical", signs=(1, -1, 1, 1)))
    hi = build(RepSpec(lo.spec.weight, QParam(Q, dps=40), Kind.NONCLASSICAL, lo.spec.signs))
    for k in lo.generators:
        ref = np.array([[complex(mpmath.mpc(x)) for x in row] for row in hi[k]])
        assert np.allclose(lo[k], ref, rtol=1e-13, atol=1e-15)
