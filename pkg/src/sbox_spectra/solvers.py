"""Constructive root solvers for the equation families behind the spectra.

Three solvers, each with an exhaustive-evaluation oracle in the test suite:

* quadratics a2 x^2 + a1 x + a0 over odd characteristic, solved through the
  discriminant and a Tonelli-Shanks square root in F_{p^n}*;
* trinomials x^(2^k) + a x + b over F_{2^n}, classified into no root, a
  unique root, or a coset of a 2^d-dimensional F_2-subspace (d = gcd(k, n));
* general affine polynomials L(x) + b with L linearized over F_{2^n},
  counted via the rank of the associated n x n 2-circulant matrix.

All element arguments and results are canonical encodings (ints); pass
FieldElement values and they are coerced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BadParametersError,
    EvenCharacteristicError,
    LeadingCoefficientZeroError,
    OddCharacteristicError,
    ZeroLinearCoefficientError,
)
from .fields import Field


@dataclass(frozen=True)
class RootResult:
    """Solution-set classification for one equation instance.

    kind is one of "none", "unique", "pair" (distinct quadratic roots),
    "subspace" (a coset of a subspace of size `count`).  `roots` holds the
    explicit sorted root encodings when the solver produced or was asked to
    enumerate them; for large subspaces it may be None.
    """

    kind: str
    count: int
    roots: tuple[int, ...] | None = None
    representative: int | None = None
    direction: int | None = None

    @property
    def root(self) -> int:
        if self.kind != "unique":
            raise ValueError(f"no single root for kind={self.kind!r}")
        return self.roots[0]


def sqrt_in_field(field: Field, s: int) -> int:
    """Square root of a nonzero square s in F_{p^n}, p odd.

    Uses the (p^n+1)/4 exponent shortcut when p^n = 3 (mod 4), otherwise
    generic Tonelli-Shanks in the multiplicative group with the first
    nonsquare (in enumeration order) as the auxiliary nonresidue.  Returns
    the smaller encoding of the two roots.
    """
    if field.p == 2:
        raise EvenCharacteristicError("square roots via eta need odd p")
    s = field.as_index(s)
    if s == 0:
        return 0
    if field.quadratic_character(s) != 1:
        raise BadParametersError("argument is not a square")
    order = field.order
    if order % 4 == 3:
        r = field.pow(s, (order + 1) // 4)
    else:
        q, e = order - 1, 0
        while q % 2 == 0:
            q //= 2
            e += 1
        z = next(i for i in range(1, order) if field.quadratic_character(i) == -1)
        c = field.pow(z, q)
        r = field.pow(s, (q + 1) // 2)
        t = field.pow(s, q)
        m = e
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = field.mul(t2, t2)
                i += 1
            b = field.pow(c, 1 << (m - i - 1))
            r = field.mul(r, b)
            c = field.mul(b, b)
            t = field.mul(t, c)
            m = i
    return min(r, field.neg(r))


def solve_quadratic(field: Field, a2, a1, a0) -> RootResult:
    """Roots of a2 x^2 + a1 x + a0 over F_{p^n}, p odd.

    The root count is 1 + eta(delta) with delta = a1^2 - 4 a0 a2; roots are
    always returned explicitly.
    """
    if field.p == 2:
        raise EvenCharacteristicError("quadratic solver requires odd p")
    a2 = field.as_index(a2)
    a1 = field.as_index(a1)
    a0 = field.as_index(a0)
    if a2 == 0:
        raise LeadingCoefficientZeroError("a2 must be nonzero")
    four = 4 % field.p
    delta = field.sub(field.mul(a1, a1), field.mul(four, field.mul(a0, a2)))
    eta = field.quadratic_character(delta)
    inv2a2 = field.inv(field.mul(2 % field.p, a2))
    if eta == 0:
        x = field.mul(field.neg(a1), inv2a2)
        return RootResult(kind="unique", count=1, roots=(x,))
    if eta == -1:
        return RootResult(kind="none", count=0, roots=())
    r = sqrt_in_field(field, delta)
    x1 = field.mul(field.add(field.neg(a1), r), inv2a2)
    x2 = field.mul(field.sub(field.neg(a1), r), inv2a2)
    lo, hi = sorted((x1, x2))
    return RootResult(kind="pair", count=2, roots=(lo, hi))


@lru_cache(maxsize=65536)
def _trinomial_prep(field: Field, k: int, a: int):
    """Per-(k, a) data reused across the b sweep: d, t, alpha, a^{s_i} and
    the reduced Frobenius exponents 2^(k i) mod (2^n - 1)."""
    d = math.gcd(k, field.n)
    t = field.n // d
    exp_alpha = sum(1 << (k * j) for j in range(t))
    alpha = field.pow(a, exp_alpha)
    a_pows = []
    for i in range(t):
        s_i = sum(1 << (k * (j + 1)) for j in range(i, t - 1))
        a_pows.append(field.pow(a, s_i))
    # 2^(k i) mod m is a power of two, never 0, so b = 0 still maps to 0;
    # the trivial group (n = 1) keeps exponent 1 for the same reason
    m = field.order - 1
    b_exps = tuple((1 << (k * i)) % m if m > 1 else 1 for i in range(t))
    return d, t, alpha, tuple(a_pows), b_exps


@lru_cache(maxsize=4096)
def _trace_anchor(field: Field, d: int) -> tuple[int, int]:
    """First element (enumeration order) with nonzero trace onto F_{2^d},
    plus the inverse of that trace; the scan always succeeds since the
    trace is surjective."""
    c = next(i for i in range(1, field.order) if field.trace(i, d) != 0)
    return c, field.inv(field.trace(c, d))


@lru_cache(maxsize=65536)
def _direction_tau(field: Field, k: int, a: int) -> int:
    """tau with tau^(2^k - 1) = a, via exponent inversion when gcd permits,
    otherwise a memoized scan in enumeration order."""
    if k == 0:
        return 1  # 2^k - 1 = 0: any nonzero direction spans with delta in F_{2^n}
    e = (1 << k) - 1
    m = field.order - 1
    if math.gcd(e, m) == 1:
        return field.pow(a, pow(e, -1, m))
    for tau in range(1, field.order):
        if field.pow(tau, e) == a:
            return tau
    raise BadParametersError("no direction tau exists; not in the subspace case")


def solve_linearized_trinomial(
    field: Field, k: int, a, b, enumerate_roots: bool = False
) -> RootResult:
    """Classify the roots of x^(2^k) + a x + b over F_{2^n} (a != 0).

    Root count is 0, 1 or 2^d with d = gcd(k, n).  In the subspace case the
    result carries a representative root and a direction tau with
    tau^(2^k - 1) = a; the full root set is representative + delta * tau
    for delta ranging over F_{2^d}.
    """
    if field.p != 2:
        raise OddCharacteristicError("trinomial solver requires p = 2")
    a = field.as_index(a)
    b = field.as_index(b)
    if a == 0:
        raise ZeroLinearCoefficientError("linear coefficient a must be nonzero")
    if not 0 <= k < field.n:
        raise BadParametersError(f"k={k} outside [0, n)")
    d, t, alpha, a_pows, b_exps = _trinomial_prep(field, k, a)
    beta = 0
    for i in range(t):
        beta ^= field.mul(a_pows[i], field.pow(b, b_exps[i]))
    if alpha != 1:
        x = field.div(beta, 1 ^ alpha)
        return RootResult(kind="unique", count=1, roots=(x,))
    if beta != 0:
        return RootResult(kind="none", count=0, roots=())
    # 2^d roots: representative from the trace construction, first usable c.
    c, inv_trace_c = _trace_anchor(field, d)
    acc = 0
    gamma = 0  # running sum of c^(2^(k j)), j = 0..i
    for i in range(t):
        gamma ^= field.pow(c, b_exps[i])
        acc ^= field.mul(gamma, field.mul(a_pows[i], field.pow(b, b_exps[i])))
    x0 = field.mul(inv_trace_c, acc)
    tau = _direction_tau(field, k, a)
    roots = None
    if enumerate_roots:
        roots = tuple(
            sorted(x0 ^ field.mul(delta, tau) for delta in field.subfield_indices(d))
        )
    return RootResult(
        kind="subspace", count=1 << d, roots=roots, representative=x0, direction=tau
    )


def build_AL(field: Field, coeffs) -> list[list[int]]:
    """The n x n matrix of L(x) = sum a_i x^(2^i): row i is the cyclic right
    shift of (a_0, ..., a_{n-1}) by i with every entry raised to 2^i."""
    if field.p != 2:
        raise OddCharacteristicError("affine machinery requires p = 2")
    cs = [field.as_index(c) for c in coeffs]
    if len(cs) != field.n:
        raise BadParametersError(f"need exactly {field.n} coefficients, got {len(cs)}")
    n = field.n
    return [
        [field.pow(cs[(j - i) % n], 1 << i) for j in range(n)]
        for i in range(n)
    ]


def affine_root_count(field: Field, coeffs, b) -> int:
    """Number of roots of L(x) + b: 2^(n - r) when rank(A_L) = rank(A_L | b)
    = r, else 0.  Gaussian elimination over F_{2^n}, first-nonzero pivots."""
    b = field.as_index(b)
    A = build_AL(field, coeffs)
    n = field.n
    rows = [A[i] + [field.frobenius(b, i)] for i in range(n)]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, v) for v in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [
                    rv ^ field.mul(factor, pv) for rv, pv in zip(rows[r], rows[rank])
                ]
        rank += 1
    for r in range(rank, n):
        if rows[r][n] != 0:
            return 0
    return 1 << (n - rank)
