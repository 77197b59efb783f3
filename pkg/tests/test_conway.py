"""The built-in modulus table: spot checks against classical values plus a
full property audit (primitive + subfield-compatible) and, for tiny sizes,
an independent re-derivation of minimality."""

import pytest

from sbox_spectra import polyarith as pa
from sbox_spectra._conway import CONWAY_POLYNOMIALS

KNOWN = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (7, 1): (4, 1),
    (11, 1): (9, 1),
}


def test_known_values():
    for key, coeffs in KNOWN.items():
        assert CONWAY_POLYNOMIALS[key] == coeffs, key


def test_table_covers_declared_range():
    for p, max_n in ((2, 24), (3, 15), (5, 10), (7, 8), (11, 6)):
        for n in range(1, max_n + 1):
            entry = CONWAY_POLYNOMIALS[(p, n)]
            assert len(entry) == n + 1
            assert entry[-1] == 1  # monic
        assert (p, max_n + 1) not in CONWAY_POLYNOMIALS  # bound respected


AUDIT = [key for key in CONWAY_POLYNOMIALS if key[0] ** key[1] <= 4096]


@pytest.mark.parametrize("key", AUDIT, ids=lambda k: f"p{k[0]}n{k[1]}")
def test_primitive_and_compatible(key):
    p, n = key
    f = list(CONWAY_POLYNOMIALS[key])
    order = p**n - 1
    assert pa.is_primitive(f, p)
    for q in pa.prime_factors(n):
        m = n // q
        sub = CONWAY_POLYNOMIALS[(p, m)]
        e = order // (p**m - 1)
        y = pa.poly_powmod([0, 1], e, f, p)
        acc = []
        for c in reversed(sub):
            acc = pa.poly_mulmod(acc, y, f, p)
            acc = pa.poly_add(acc, [c], p)
        assert acc == [], f"subfield compatibility fails for {key} via degree {m}"


TINY = [key for key in CONWAY_POLYNOMIALS if key[0] ** key[1] <= 128]


@pytest.mark.parametrize("key", TINY, ids=lambda k: f"p{k[0]}n{k[1]}")
def test_minimality_rederived(key):
    """First candidate in word order that is primitive and compatible must be
    the table entry (independent re-enumeration)."""
    p, n = key

    def word_poly(W):
        coeffs = [0] * (n + 1)
        coeffs[n] = 1
        for i in range(n):
            W, w = divmod(W, p)
            coeffs[i] = (w if (n - i) % 2 == 0 else -w) % p
        return coeffs

    def acceptable(f):
        if not pa.is_primitive(f, p):
            return False
        for q in pa.prime_factors(n):
            m = n // q
            sub = CONWAY_POLYNOMIALS[(p, m)]
            e = (p**n - 1) // (p**m - 1)
            y = pa.poly_powmod([0, 1], e, f, p)
            acc = []
            for c in reversed(sub):
                acc = pa.poly_mulmod(acc, y, f, p)
                acc = pa.poly_add(acc, [c], p)
            if acc:
                return False
        return True

    for W in range(p**n):
        f = word_poly(W)
        if acceptable(f):
            assert tuple(f) == CONWAY_POLYNOMIALS[key]
            return
    pytest.fail(f"no acceptable polynomial found for {key}")
