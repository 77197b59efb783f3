from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbox_spectra import (
    BadParametersError,
    EvenCharacteristicError,
    MixedFieldsError,
    NoBuiltinModulusError,
    NotADivisorError,
    NotPrimeError,
    ReduciblePolynomialError,
    UnparsableElementError,
    UnparsableFieldSpecError,
    UnsupportedSizeError,
    make_field,
    parse_field_spec,
)
from sbox_spectra.fields import MAX_SIZE_ENV


# -- construction ------------------------------------------------------------

def test_builtin_modulus_lookup(f26):
    assert f26.order == 64
    assert f26.spec_string() == "p=2;n=6;mod=1,1,0,1,1,0,1"


def test_not_prime():
    with pytest.raises(NotPrimeError):
        make_field(4, 2)


def test_no_builtin_modulus():
    with pytest.raises(NoBuiltinModulusError):
        make_field(13, 2)


def test_size_bound():
    with pytest.raises(UnsupportedSizeError):
        make_field(2, 25)
    with pytest.raises(UnsupportedSizeError):
        make_field(2, 7, max_size=64)


def test_env_override(monkeypatch):
    monkeypatch.setenv(MAX_SIZE_ENV, "64")
    with pytest.raises(UnsupportedSizeError):
        make_field(2, 7)
    assert make_field(2, 6).order == 64


def test_user_modulus_validation():
    f9 = make_field(3, 2, [1, 0, 1])  # x^2 + 1, irreducible over F_3
    assert f9.order == 9
    with pytest.raises(ReduciblePolynomialError):
        make_field(3, 2, [2, 0, 1])  # x^2 + 2 = (x-1)(x+1)
    with pytest.raises(BadParametersError):
        make_field(3, 2, [1, 0, 0, 1])  # wrong length
    with pytest.raises(BadParametersError):
        make_field(3, 2, [1, 0, 2])  # not monic
    with pytest.raises(BadParametersError):
        make_field(3, 0)


# -- arithmetic -------------------------------------------------------------

@pytest.mark.parametrize("p,n", [(2, 4), (3, 2), (5, 2), (2, 6), (3, 3)])
def test_field_axioms_exhaustive_pairs(p, n):
    f = make_field(p, n)
    N = f.order
    one = 1
    for i in range(N):
        assert f.add(i, 0) == i
        assert f.mul(i, one) == i
        assert f.add(i, f.neg(i)) == 0
        if i:
            assert f.mul(i, f.inv(i)) == one
            assert f.pow(i, N - 1) == one
    for i in range(N):
        for j in range(N):
            assert f.add(i, j) == f.add(j, i)
            assert f.mul(i, j) == f.mul(j, i)
            assert f.sub(f.add(i, j), j) == i


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 1023), st.integers(0, 1023), st.integers(0, 1023))
def test_axioms_random_f2_10(i, j, k):
    f = make_field(2, 10)
    assert f.mul(f.add(i, j), k) == f.add(f.mul(i, k), f.mul(j, k))
    assert f.mul(f.mul(i, j), k) == f.mul(i, f.mul(j, k))
    assert f.add(f.add(i, j), k) == f.add(i, f.add(j, k))
    assert f.add(i, i) == 0  # characteristic 2


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 242), st.integers(0, 242), st.integers(0, 242))
def test_axioms_random_f3_5(i, j, k):
    f = make_field(3, 5)
    assert f.mul(f.add(i, j), k) == f.add(f.mul(i, k), f.mul(j, k))
    assert f.mul(f.mul(i, j), k) == f.mul(i, f.mul(j, k))


@pytest.mark.parametrize("p,n", [(2, 12), (3, 8)])
def test_axioms_random_above_2_10(p, n):
    # spot checks on fields past the exhaustive-testing size
    f = make_field(p, n)
    rng = np.random.default_rng(5)
    for _ in range(100):
        i, j, k = (int(v) for v in rng.integers(0, f.order, 3))
        assert f.mul(f.add(i, j), k) == f.add(f.mul(i, k), f.mul(j, k))
        assert f.mul(f.mul(i, j), k) == f.mul(i, f.mul(j, k))
        if i:
            assert f.mul(i, f.inv(i)) == 1


def test_division_by_zero(f26):
    with pytest.raises(ZeroDivisionError):
        f26.inv(0)
    with pytest.raises(ZeroDivisionError):
        f26.div(5, 0)


def test_pow_edge_cases(f33):
    assert f33.pow(0, 0) == 1
    assert f33.pow(0, 5) == 0
    assert f33.pow(7, 0) == 1
    with pytest.raises(BadParametersError):
        f33.pow(2, -1)


# -- frobenius / trace / subfields -------------------------------------------

def test_frobenius_identity_powers(f26):
    for x in range(64):
        assert f26.frobenius(x, 0) == x
        assert f26.frobenius(x, 6) == x
        assert f26.frobenius(x, 1) == f26.pow(x, 2)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 5))
def test_frobenius_is_automorphism(x, y, j):
    f = make_field(2, 6)
    assert f.frobenius(f.add(x, y), j) == f.add(f.frobenius(x, j), f.frobenius(y, j))
    assert f.frobenius(f.mul(x, y), j) == f.mul(f.frobenius(x, j), f.frobenius(y, j))


def test_trace_fibers_f16(f24):
    # onto F_4: every target element hit exactly 4 times
    fibers = Counter(f24.trace(x, 2) for x in range(16))
    assert sorted(fibers.values()) == [4, 4, 4, 4]
    targets = set(fibers)
    assert all(f24.in_subfield(t, 2) for t in targets)


def test_trace_linear_and_subfield_valued(f26):
    for x in range(0, 64, 5):
        for y in range(0, 64, 7):
            assert f26.trace(f26.add(x, y), 3) == f26.add(f26.trace(x, 3), f26.trace(y, 3))
    assert f26.trace(0, 2) == 0
    for x in range(64):
        y = f26.trace(x, 2)
        assert f26.frobenius(y, 2) == y
    with pytest.raises(NotADivisorError):
        f26.trace(1, 4)


def test_trace_surjective_and_subfield_linear(f26):
    for d in (1, 2, 3):
        images = {f26.trace(x, d) for x in range(64)}
        assert images == set(f26.subfield_indices(d))
        # F_{p^d}-linearity: trace(c*x) = c*trace(x) for subfield scalars c
        for c in f26.subfield_indices(d):
            for x in (7, 22, 51):
                assert f26.trace(f26.mul(c, x), d) == f26.mul(c, f26.trace(x, d))


def test_subfield_counts(f26):
    assert len(f26.subfield_indices(1)) == 2
    assert len(f26.subfield_indices(2)) == 4
    assert len(f26.subfield_indices(3)) == 8
    assert len(f26.subfield_indices(6)) == 64
    assert f26.in_subfield(0, 3)
    with pytest.raises(NotADivisorError):
        f26.in_subfield(1, 5)


# -- quadratic character ------------------------------------------------------

def test_quadratic_character_basics(f33):
    assert f33.quadratic_character(0) == 0
    for y in range(1, 27):
        assert f33.quadratic_character(f33.mul(y, y)) == 1
    plus = sum(1 for x in range(1, 27) if f33.quadratic_character(x) == 1)
    assert plus == 13  # (p^n - 1) / 2


@pytest.mark.parametrize("n,expected", [(1, -1), (2, 1), (3, -1), (4, 1)])
def test_eta_minus_one_parity(n, expected):
    f = make_field(3, n)
    assert f.quadratic_character(f.neg(1)) == expected


def test_eta_multiplicative(f52):
    for x in range(1, 25):
        for y in range(1, 25):
            assert f52.quadratic_character(f52.mul(x, y)) == (
                f52.quadratic_character(x) * f52.quadratic_character(y)
            )


def test_eta_even_characteristic(f26):
    with pytest.raises(EvenCharacteristicError):
        f26.quadratic_character(1)


# -- enumeration and encoding --------------------------------------------------

def test_enumeration_order(f33):
    elems = list(f33.elements())
    assert elems[0].idx == 0
    assert len(elems) == 27
    assert len({e.idx for e in elems}) == 27
    assert [e.idx for e in elems] == list(range(27))
    # coefficient vectors sort like their encodings (constant term least significant)
    for e in elems:
        assert f33.from_coeffs(e.coeffs) == e.idx


def test_element_wrappers(f26):
    a = f26.element(5)
    b = f26.element([1, 1])  # 1 + x
    assert (a + b).idx == f26.add(5, 3)
    assert (a * b).idx == f26.mul(5, 3)
    assert (a / b * b) == a
    assert int(a**63) == 1
    assert (-a) == a  # characteristic 2
    assert a != b and hash(a) != hash(f26.element(6))


def test_mixed_fields_rejected(f26, f28):
    with pytest.raises(MixedFieldsError):
        _ = f26.element(1) + f28.element(1)
    with pytest.raises(MixedFieldsError):
        f26.as_index(f28.element(1))


def test_power_facts(f26, f28):
    pf = f26.power_facts(11)  # gcd(11, 63) = 1
    assert pf.g == 1 and pf.is_permutation
    pf = f28.power_facts(21)  # gcd(21, 255) = 3
    assert pf.g == 3 and not pf.is_permutation
    assert f26.power_facts(1).g == 1


# -- parsing -------------------------------------------------------------------

def test_field_spec_round_trip(f26):
    f = parse_field_spec(f26.spec_string())
    assert f.spec_string() == f26.spec_string()
    g = parse_field_spec("p=3;n=2")
    assert g.order == 9 and "mod=" in g.spec_string()


@pytest.mark.parametrize("bad", ["", "p=2", "n=6", "p=2;n=6;extra=1", "p=x;n=6",
                                 "p=2;n=6;mod=1,2,3"])
def test_field_spec_errors(bad):
    with pytest.raises((UnparsableFieldSpecError, BadParametersError, ValueError)):
        parse_field_spec(bad)


def test_element_parsing(f26, f33):
    assert f26.parse_element("0x0b") == 11
    assert f26.parse_element("11") == 11
    assert f26.parse_element("1,1,0,1") == 11
    assert f33.parse_element("2,1") == 5
    with pytest.raises(UnparsableElementError):
        f33.parse_element("0x5")  # hex words only for p = 2
    with pytest.raises(UnparsableElementError):
        f26.parse_element("64")  # out of range
    with pytest.raises(UnparsableElementError):
        f26.parse_element("zz")
    assert f26.format_element(11) == "0x0b"
    assert f33.format_element(5) == "2,1,0"  # all n digits, constant term first


# -- vectorized operations agree with scalar ------------------------------------

@pytest.mark.parametrize("p,n", [(2, 6), (3, 3), (5, 2)])
def test_vector_ops_match_scalar(p, n):
    f = make_field(p, n)
    N = f.order
    rng = np.random.default_rng(42)
    A = rng.integers(0, N, 200)
    B = rng.integers(0, N, 200)
    add = f.add_vec(A, B)
    sub = f.sub_vec(A, B)
    mul = f.mul_vec(A, B)
    for i in range(200):
        assert add[i] == f.add(int(A[i]), int(B[i]))
        assert sub[i] == f.sub(int(A[i]), int(B[i]))
        assert mul[i] == f.mul(int(A[i]), int(B[i]))
    Bn = np.where(B == 0, 1, B)
    div = f.div_vec(A, Bn)
    pw = f.pow_vec(A, 7)
    for i in range(200):
        assert div[i] == f.div(int(A[i]), int(Bn[i]))
        assert pw[i] == f.pow(int(A[i]), 7)
    tab = f.power_map_table(5)
    for x in range(N):
        assert tab[x] == f.pow(x, 5)


def test_add_matrix(f33):
    m = f33.add_matrix()
    for i in range(0, 27, 4):
        for j in range(27):
            assert m[i, j] == f33.add(i, j)
