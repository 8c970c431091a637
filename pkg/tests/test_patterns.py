from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsorep.oracles import brute_force_patterns, satisfies_betweenness
from qsorep.patterns import (
    Basis,
    Flavor,
    GTPattern,
    HighestWeight,
    InvalidWeightError,
    PatternNotFoundError,
    enumerate_patterns,
    format_half_integer,
    index_of,
    lcoords,
    parse_half_integer,
    shift,
    validate_weight,
)

C, NC = Flavor.CLASSICAL, Flavor.NONCLASSICAL


def hw(n, *values, flavor=C):
    return HighestWeight.from_values(n, values, flavor)


@pytest.mark.parametrize(
    "n, values, flavor, ok",
    [
        (3, ("1",), C, True),
        (4, ("1", "-1"), C, True),
        (4, ("1/2", "-3/2"), C, False),
        (5, ("3/2", "1/2"), NC, True),
        (5, ("1", "0"), NC, False),
        (5, ("3/2", "-1/2"), NC, False),
        (5, ("1", "1/2"), C, False),
        (5, ("0", "1"), C, False),
    ],
)
def test_validate_weight(n, values, flavor, ok):
    assert validate_weight(hw(n, *values, flavor=flavor)) is ok


def test_invalid_weight_raises():
    with pytest.raises(InvalidWeightError):
        enumerate_patterns(hw(5, "1", "1/2"))


@pytest.mark.parametrize(
    "n, values, flavor, dim",
    [
        (3, ("1",), C, 3),
        (3, ("3/2",), NC, 2),
        (4, ("1", "0"), C, 4),
        (4, ("1/2", "1/2"), C, 2),
        (5, ("1", "0"), C, 5),
        (5, ("1/2", "1/2"), C, 4),
        (5, ("1/2", "1/2"), NC, 1),
    ],
)
def test_enumerate_dimensions(n, values, flavor, dim):
    assert len(enumerate_patterns(hw(n, *values, flavor=flavor))) == dim


def test_so3_middle_pattern_index():
    basis = Basis.of(hw(3, "1"))
    p = GTPattern(((2,), (2,)))
    assert index_of(p, basis) == 2
    assert [b.m(1, 2) for b in basis] == [-1, 0, 1]
    with pytest.raises(PatternNotFoundError):
        index_of(GTPattern(((2,), (4,))), basis)
    with pytest.raises(PatternNotFoundError):
        index_of(None, basis)


ORACLE_CASES = [
    (3, ("2",), C), (3, ("5/2",), NC), (4, ("2", "-1"), C), (4, ("3/2", "1/2"), NC),
    (5, ("2", "1"), C), (5, ("3/2", "1/2"), C), (5, ("5/2", "3/2"), NC),
    (6, ("1", "1", "-1"), C), (6, ("3/2", "1/2", "1/2"), NC), (7, ("1", "1", "0"), C),
]


@pytest.mark.parametrize("n, values, flavor", ORACLE_CASES)
def test_enumeration_matches_brute_force(n, values, flavor):
    w = hw(n, *values, flavor=flavor)
    assert enumerate_patterns(w) == brute_force_patterns(w)


small_weights = st.integers(min_value=3, max_value=6).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(min_value=-4, max_value=4), min_size=n // 2, max_size=n // 2),
        st.sampled_from([C, NC]),
    )
)


@settings(max_examples=60, deadline=None)
@given(small_weights)
def test_enumeration_property(case):
    n, entries, flavor = case
    w = HighestWeight(n, tuple(sorted(entries, reverse=True)), flavor)
    if not validate_weight(w):
        return
    pats = enumerate_patterns(w)
    assert pats == brute_force_patterns(w)
    assert len(set(pats)) == len(pats)
    for p in pats:
        assert satisfies_betweenness(p.rows, n, flavor)
        if flavor is NC:
            assert all(x >= 1 for r in p.rows for x in r)
        L = lcoords(p)
        for k in range(2, n + 1):
            row = L.row(k)
            assert all(a > b for a, b in zip(row, row[1:]))


def test_lcoords_examples():
    p = GTPattern(((3, 1), (3, 1), (1,), (1,)), NC)
    assert p.is_valid()
    L = lcoords(p)
    # l_{j,2p+1} = m + p - j + 1, l_{j,2p} = m + p - j
    assert L.row(5) == (Fraction(7, 2), Fraction(3, 2))
    assert L.row(4) == (Fraction(5, 2), Fraction(1, 2))
    assert L.row(3) == (Fraction(3, 2),)
    assert L.row(2) == (Fraction(1, 2),)


def test_shift_examples():
    basis = Basis.of(hw(3, "1"))
    mid = basis[1]
    up = shift(mid, 2, 1, 1)
    assert up == basis[2]
    assert shift(up, 2, 1, 1) is None
    assert shift(up, 2, 1, 1, check=False).m(1, 2) == 2
    with pytest.raises(ValueError):
        shift(mid, 3, 1, 1)
    with pytest.raises(ValueError):
        shift(mid, 2, 1, 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ORACLE_CASES), st.data())
def test_shift_round_trip(case, data):
    n, values, flavor = case
    pats = enumerate_patterns(hw(n, *values, flavor=flavor))
    p = data.draw(st.sampled_from(pats))
    k = data.draw(st.integers(min_value=2, max_value=n - 1))
    j = data.draw(st.integers(min_value=1, max_value=k // 2))
    d = data.draw(st.sampled_from([1, -1]))
    moved = shift(p, k, j, d)
    if moved is not None:
        assert moved in pats
        assert shift(moved, k, j, -d) == p


def test_json_round_trip():
    for p in enumerate_patterns(hw(5, "3/2", "1/2", flavor=NC)):
        assert GTPattern.from_json(p.to_json()) == p


@pytest.mark.parametrize("token, doubled", [("3/2", 3), ("1.5", 3), ("-1/2", -1), ("2", 4), (0, 0)])
def test_parse_half_integer(token, doubled):
    assert parse_half_integer(token) == doubled
    assert parse_half_integer(format_half_integer(doubled)) == doubled


@pytest.mark.parametrize("token", ["1/3", "0.25", "x"])
def test_parse_half_integer_rejects(token):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_half_integer(token)


def test_lcoords_single_rows():
    from qsorep.patterns import lrow2

    assert lrow2((2,), 3) == (4,)  # m_3 = (1) -> l_{1,3} = 2
    assert lrow2((0,), 2) == (0,)
    assert lrow2((2, 0), 4) == (4, 0)


def test_shift_nonclassical_floor():
    basis = Basis.of(hw(3, "3/2", flavor=NC))
    low = basis[0]
    assert low.m(1, 2) == Fraction(1, 2)
    assert shift(low, 2, 1, -1) is None
    assert shift(Basis.of(hw(3, "1"))[1], 2, 1, -1).m(1, 2) == -1
