#!/usr/bin/env python3
"""Generate the built-in Conway polynomial table.

Searches, for each prime p in {2, 3, 5, 7, 11} and each degree n with
p^n <= 2^24, the Conway polynomial C_{p,n}: the minimal monic primitive
polynomial of degree n over Z_p (in the standard word ordering) whose root
powers are compatible with the Conway polynomials of all proper subfields:
for every prime q | n,  C_{p,n/q}(x^((p^n-1)/(p^(n/q)-1))) == 0  (mod C_{p,n}).

The word ordering maps f = x^n + a_{n-1} x^{n-1} + ... + a_0 to the tuple
(w_{n-1}, ..., w_0) with w_i = (-1)^(n-i) * a_i mod p, compared
lexicographically.  Candidates are therefore enumerated by counting an
integer W upward and reading its base-p digits as the word.

Writes src/sbox_spectra/_conway.py.  Rerunning reproduces the same file.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sbox_spectra.polyarith import (  # noqa: E402
    gcd2,
    is_prime,
    mulmod2,
    poly_add,
    poly_gcd,
    poly_mulmod,
    poly_powmod,
    poly_sub,
    powmod2,
    prime_factors,
)

MAX_ORDER = 1 << 24
PRIMES = (2, 3, 5, 7, 11)


def primitive_roots_mod_p(p):
    if p == 2:
        return {1}
    factors = prime_factors(p - 1)
    return {g for g in range(2, p) if all(pow(g, (p - 1) // r, p) != 1 for r in factors)}


def word_to_coeffs(W, p, n):
    """Base-p digits of W as the word (w_{n-1},...,w_0), unsigned into a_i."""
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for i in range(n):
        W, w = divmod(W, p)
        coeffs[i] = (w if (n - i) % 2 == 0 else -w) % p
    return coeffs


def conway2(n, subpolys):
    """Conway polynomial for p=2 via the packed-int fast path."""
    if n == 1:
        return 0b11  # x + 1; its root 1 generates the trivial group F_2*
    order = (1 << n) - 1
    order_factors = prime_factors(order)
    subchecks = []
    for q in prime_factors(n):
        m = n // q
        e = order // ((1 << m) - 1)
        subchecks.append((subpolys[m], e))
    for W in range(1, 1 << n, 2):  # constant term must be 1
        if bin(W).count("1") & 1:  # f(1) = 1 + popcount(W) = 0 -> x+1 divides f
            continue
        f = (1 << n) | W
        # irreducibility + primitivity of x
        x = 2
        xq = x
        for _ in range(n):
            xq = mulmod2(xq, xq, f, n)
        if xq != x:
            continue
        reducible = False
        for q in prime_factors(n):
            xr = x
            for _ in range(n // q):
                xr = mulmod2(xr, xr, f, n)
            if gcd2(xr ^ x, f) != 1:
                reducible = True
                break
        if reducible:
            continue
        if any(powmod2(x, order // r, f, n) == 1 for r in order_factors):
            continue
        ok = True
        for sub, e in subchecks:
            y = powmod2(x, e, f, n)
            acc = 0  # Horner over the packed subfield polynomial
            for bit in reversed(range(sub.bit_length())):
                acc = mulmod2(acc, y, f, n) ^ ((sub >> bit) & 1)
            if acc != 0:
                ok = False
                break
        if ok:
            return f
    raise RuntimeError(f"no Conway polynomial found for (2, {n})")


def conway_odd(p, n, subpolys):
    order = p**n - 1
    order_factors = prime_factors(order)
    primroots = primitive_roots_mod_p(p)
    subchecks = []
    for q in prime_factors(n):
        m = n // q
        e = order // (p**m - 1)
        subchecks.append((subpolys[m], e))
    x = [0, 1]
    for W in range(p**n):
        f = word_to_coeffs(W, p, n)
        a0 = f[0]
        if a0 == 0:
            continue
        if ((-1) ** n * a0) % p not in primroots:  # norm of x must generate Z_p*
            continue
        if n > 1 and any(
            sum(c * pow(v, i, p) for i, c in enumerate(f)) % p == 0 for v in range(p)
        ):
            continue
        # irreducibility (degree 1 always passes)
        if n > 1:
            xq = poly_powmod(x, p**n, f, p)
            if poly_sub(xq, x, p):
                continue
            reducible = False
            for q in prime_factors(n):
                xr = poly_powmod(x, p ** (n // q), f, p)
                if len(poly_gcd(poly_sub(xr, x, p), f, p)) != 1:
                    reducible = True
                    break
            if reducible:
                continue
        if any(poly_powmod(x, order // r, f, p) == [1] for r in order_factors):
            continue
        ok = True
        for sub, e in subchecks:
            y = poly_powmod(x, e, f, p)
            acc = []
            for c in reversed(sub):  # Horner
                acc = poly_mulmod(acc, y, f, p)
                acc = poly_add(acc, [c], p)
            if acc:
                ok = False
                break
        if ok:
            return f
    raise RuntimeError(f"no Conway polynomial found for ({p}, {n})")


def main():
    assert all(is_prime(p) for p in PRIMES)
    table = {}
    for p in PRIMES:
        subpolys = {}
        n = 1
        while p**n <= MAX_ORDER:
            t0 = time.time()
            if p == 2:
                f_int = conway2(n, subpolys)
                subpolys[n] = f_int
                coeffs = tuple((f_int >> i) & 1 for i in range(n + 1))
            else:
                coeffs = tuple(conway_odd(p, n, subpolys))
                subpolys[n] = list(coeffs)
            table[(p, n)] = coeffs
            print(f"C_{{{p},{n}}} = {list(coeffs)}   ({time.time() - t0:.2f}s)", flush=True)
            n += 1

    out = Path(__file__).resolve().parent.parent / "src" / "sbox_spectra" / "_conway.py"
    with open(out, "w") as fh:
        fh.write('"""Built-in Conway polynomial table.\n\n')
        fh.write("Generated by scripts/gen_conway_table.py; do not edit by hand.\n")
        fh.write("Keys are (p, n); values are monic modulus coefficients, constant\n")
        fh.write('term first, defining the canonical F_{p^n}.\n"""\n\n')
        fh.write("CONWAY_POLYNOMIALS = {\n")
        for (p, n), coeffs in sorted(table.items()):
            fh.write(f"    ({p}, {n}): {coeffs!r},\n")
        fh.write("}\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
