"""Exact arithmetic and structural queries in F_{p^n}.

Elements are canonically encoded as integers in [0, p^n): the residue
polynomial c_0 + c_1 x + ... + c_{n-1} x^{n-1} packs to sum(c_i * p^i).
For p = 2 this makes addition a single XOR; for odd p addition works on
base-p digits.  Enumeration order is ascending encoding, zero first, which
is also the row/column order of every CSV this package writes.

A Field caches exp/log tables over a generator once multiplication is first
needed (for orders up to TABLE_CAP), turning mul/inv/pow/character into O(1)
lookups; larger fields fall back to direct polynomial arithmetic.  Fields
and elements are immutable values; lazy cache builds are idempotent, so
sharing across threads is safe.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import polyarith as pa
from .errors import (
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
)

DEFAULT_MAX_SIZE = 1 << 24
MAX_SIZE_ENV = "SBOX_SPECTRA_MAX_SIZE"
TABLE_CAP = 1 << 20  # largest order for which exp/log tables are built


def configured_max_size() -> int:
    raw = os.environ.get(MAX_SIZE_ENV)
    if raw is None:
        return DEFAULT_MAX_SIZE
    try:
        return int(raw)
    except ValueError:
        raise UnparsableFieldSpecError(f"bad {MAX_SIZE_ENV} value: {raw!r}") from None


@dataclass(frozen=True)
class PowerFacts:
    """gcd structure of an exponent d against the multiplicative group."""

    g: int
    is_permutation: bool


class Field:
    """F_{p^n} with a fixed monic irreducible modulus."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.order = p**n
        self.modulus = tuple(int(c) % p for c in modulus)
        self._m = self.order - 1  # multiplicative group order
        self._modint = pa.coeffs_to_int(list(self.modulus), p) if p == 2 else 0
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._generator: int | None = None
        self._np_exp: np.ndarray | None = None
        self._np_log: np.ndarray | None = None
        self._digits: np.ndarray | None = None
        self._ppows: np.ndarray | None = None
        self._xs: np.ndarray | None = None
        self._add_mat: np.ndarray | None = None

    # -- construction ------------------------------------------------------

    def __repr__(self):
        return f"Field(p={self.p}, n={self.n})"

    def __len__(self):
        return self.order

    def spec_string(self) -> str:
        """Canonical `p=..;n=..;mod=c0,...,cn` form."""
        mod = ",".join(str(c) for c in self.modulus)
        return f"p={self.p};n={self.n};mod={mod}"

    # -- encoding ----------------------------------------------------------

    def coeffs(self, i: int) -> tuple[int, ...]:
        """Residue polynomial digits of encoding i, constant term first."""
        out = []
        for _ in range(self.n):
            i, c = divmod(i, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.n:
            raise UnparsableElementError(f"{len(cs)} coefficients for degree {self.n}")
        out = 0
        for c in reversed(cs):
            out = out * self.p + int(c) % self.p
        return out

    def as_index(self, x) -> int:
        """Coerce an element or raw encoding to a validated index."""
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise MixedFieldsError(f"element of {x.field!r} used in {self!r}")
            return x.idx
        i = int(x)
        if not 0 <= i < self.order:
            raise UnparsableElementError(f"encoding {i} outside [0, {self.order})")
        return i

    def element(self, x) -> FieldElement:
        """Wrap an encoding, coefficient sequence, or element of this field."""
        if isinstance(x, FieldElement):
            return FieldElement(self, self.as_index(x))
        if isinstance(x, (list, tuple)):
            return FieldElement(self, self.from_coeffs(x))
        return FieldElement(self, self.as_index(x))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self):
        """All p^n elements in canonical order, zero first."""
        for i in range(self.order):
            yield FieldElement(self, i)

    def __iter__(self):
        return self.elements()

    def indices(self) -> range:
        return range(self.order)

    def format_element(self, x) -> str:
        i = self.as_index(x)
        if self.p == 2:
            return f"0x{i:0{(self.n + 3) // 4}x}"
        return ",".join(str(c) for c in self.coeffs(i))

    def parse_element(self, text: str) -> int:
        """Parse `0x..` (p=2 word), a decimal encoding, or `c0,c1,...`."""
        text = text.strip()
        try:
            if text.lower().startswith("0x"):
                if self.p != 2:
                    raise UnparsableElementError("hex words are only valid for p=2")
                i = int(text, 16)
            elif "," in text:
                i = self.from_coeffs(int(t) for t in text.split(","))
            else:
                i = int(text)
        except UnparsableElementError:
            raise
        except ValueError:
            raise UnparsableElementError(f"cannot parse element {text!r}") from None
        if not 0 <= i < self.order:
            raise UnparsableElementError(f"element {text!r} outside field of order {self.order}")
        return i

    # -- raw polynomial arithmetic (table-free fallback) ---------------------

    def _mul_raw(self, i: int, j: int) -> int:
        if self.p == 2:
            return pa.mulmod2(i, j, self._modint, self.n)
        a = pa.int_to_coeffs(i, self.p)
        b = pa.int_to_coeffs(j, self.p)
        return pa.coeffs_to_int(pa.poly_mulmod(a, b, list(self.modulus), self.p), self.p)

    def _pow_raw(self, i: int, e: int) -> int:
        if i == 0:
            return 1 if e == 0 else 0
        e %= self._m
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, i)
            i = self._mul_raw(i, i)
            e >>= 1
        return r

    # -- exp/log tables ------------------------------------------------------

    def _find_generator(self) -> int:
        factors = pa.prime_factors(self._m) if self._m > 1 else []
        for g in range(1, self.order):
            if all(self._pow_raw(g, self._m // r) != 1 for r in factors):
                return g
        raise RuntimeError("no generator found")  # unreachable for a true field

    def _ensure_tables(self):
        if self._exp is not None:
            return
        if self.order > TABLE_CAP:
            raise UnsupportedSizeError(
                f"exp/log tables not built for order {self.order} > {TABLE_CAP}"
            )
        g = self._find_generator()
        exp = [1] * self._m
        log = [-1] * self.order
        log[1] = 0
        acc = 1
        for i in range(1, self._m):
            acc = self._mul_raw(acc, g)
            exp[i] = acc
            log[acc] = i
        # _exp is the readiness sentinel: assign it last so concurrent lazy
        # builds (idempotent under the GIL) never observe a half-built state
        self._generator = g
        self._log = log
        self._exp = exp

    @property
    def generator(self) -> int:
        self._ensure_tables()
        return self._generator

    def _have_tables(self) -> bool:
        if self._exp is None and self.order <= TABLE_CAP:
            self._ensure_tables()
        return self._exp is not None

    # -- scalar field operations ---------------------------------------------

    def add(self, i: int, j: int) -> int:
        if self.p == 2:
            return i ^ j
        p = self.p
        out = 0
        mult = 1
        while i or j:
            out += ((i % p + j % p) % p) * mult
            i //= p
            j //= p
            mult *= p
        return out

    def neg(self, i: int) -> int:
        if self.p == 2:
            return i
        p = self.p
        out = 0
        mult = 1
        while i:
            c = i % p
            if c:
                out += (p - c) * mult
            i //= p
            mult *= p
        return out

    def sub(self, i: int, j: int) -> int:
        if self.p == 2:
            return i ^ j
        return self.add(i, self.neg(j))

    def mul(self, i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        if self._have_tables():
            return self._exp[(self._log[i] + self._log[j]) % self._m]
        return self._mul_raw(i, j)

    def inv(self, i: int) -> int:
        if i == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._have_tables():
            return self._exp[(self._m - self._log[i]) % self._m]
        return self._pow_raw(i, self._m - 1)

    def div(self, i: int, j: int) -> int:
        if j == 0:
            raise ZeroDivisionError("division by zero")
        if i == 0:
            return 0
        if self._have_tables():
            return self._exp[(self._log[i] - self._log[j]) % self._m]
        return self.mul(i, self.inv(j))

    def pow(self, i: int, e: int) -> int:
        if e < 0:
            raise BadParametersError("exponent must be nonnegative")
        if i == 0:
            return 1 if e == 0 else 0
        if self._have_tables():
            return self._exp[(self._log[i] * e) % self._m] if self._m else 1
        return self._pow_raw(i, e)

    def frobenius(self, i: int, j: int = 1) -> int:
        if j < 0:
            raise BadParametersError("frobenius power must be nonnegative")
        return self.pow(i, self.p ** (j % self.n))

    def trace(self, i: int, d: int = 1) -> int:
        """Trace onto the subfield F_{p^d}: sum of x^(p^(d*t))."""
        if d <= 0 or self.n % d:
            raise NotADivisorError(f"d={d} does not divide n={self.n}")
        acc = 0
        y = i
        for _ in range(self.n // d):
            acc = self.add(acc, y)
            y = self.frobenius(y, d)
        return acc

    def quadratic_character(self, i: int) -> int:
        if self.p == 2:
            raise EvenCharacteristicError("quadratic character needs odd p")
        if i == 0:
            return 0
        if self._have_tables():
            return -1 if self._log[i] & 1 else 1
        return 1 if self._pow_raw(i, self._m // 2) == 1 else -1

    def in_subfield(self, i: int, d: int) -> bool:
        if d <= 0 or self.n % d:
            raise NotADivisorError(f"d={d} does not divide n={self.n}")
        return self.frobenius(i, d) == i

    def subfield_indices(self, d: int) -> list[int]:
        """All p^d encodings lying in the subfield F_{p^d}."""
        return [i for i in range(self.order) if self.in_subfield(i, d)]

    def power_facts(self, d: int) -> PowerFacts:
        if d < 1:
            raise BadParametersError("exponent must be >= 1")
        g = math.gcd(d, self._m) if self._m else 1
        return PowerFacts(g=g, is_permutation=(g == 1))

    # -- vectorized operations (numpy, encodings as int64) --------------------

    def xs(self) -> np.ndarray:
        if self._xs is None:
            self._xs = np.arange(self.order, dtype=np.int64)
        return self._xs

    def _ensure_np(self):
        if self._np_exp is None:
            self._ensure_tables()
            self._np_log = np.array(self._log, dtype=np.int64)
            self._np_exp = np.array(self._exp, dtype=np.int64)  # sentinel last

    def _ensure_digits(self):
        if self._digits is None:
            digits = np.empty((self.order, self.n), dtype=np.int16)
            v = self.xs().copy()
            for k in range(self.n):
                digits[:, k] = v % self.p
                v //= self.p
            self._ppows = (self.p ** np.arange(self.n)).astype(np.int64)
            self._digits = digits  # sentinel last

    def add_vec(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.p == 2:
            return A ^ B
        self._ensure_digits()
        s = (self._digits[A] + self._digits[B]) % self.p
        return s.astype(np.int64) @ self._ppows

    def sub_vec(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.p == 2:
            return A ^ B
        self._ensure_digits()
        s = (self._digits[A] - self._digits[B]) % self.p
        return s.astype(np.int64) @ self._ppows

    def mul_vec(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        self._ensure_np()
        A, B = np.broadcast_arrays(A, B)
        out = np.zeros(A.shape, dtype=np.int64)
        nz = (A != 0) & (B != 0)
        out[nz] = self._np_exp[(self._np_log[A[nz]] + self._np_log[B[nz]]) % self._m]
        return out

    def div_vec(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if np.any(B == 0):
            raise ZeroDivisionError("division by zero")
        self._ensure_np()
        A, B = np.broadcast_arrays(A, B)
        out = np.zeros(A.shape, dtype=np.int64)
        nz = A != 0
        out[nz] = self._np_exp[(self._np_log[A[nz]] - self._np_log[B[nz]]) % self._m]
        return out

    def pow_vec(self, A, e: int) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        if e < 0:
            raise BadParametersError("exponent must be nonnegative")
        if e == 0:
            return np.ones(A.shape, dtype=np.int64)
        self._ensure_np()
        out = np.zeros(A.shape, dtype=np.int64)
        nz = A != 0
        out[nz] = self._np_exp[(self._np_log[A[nz]] * (e % self._m)) % self._m]
        return out

    def power_map_table(self, d: int) -> np.ndarray:
        """Images of every element under x -> x^d, in canonical order."""
        if d < 1:
            raise BadParametersError("power map exponent must be >= 1")
        return self.pow_vec(self.xs(), d)

    def add_matrix(self, cap: int = 4096) -> np.ndarray:
        """Full (i, j) -> i + j lookup table; cached.  Only for orders <= cap."""
        if self._add_mat is None:
            if self.order > cap:
                raise UnsupportedSizeError(
                    f"addition table for order {self.order} exceeds cap {cap}"
                )
            xs = self.xs()
            self._add_mat = self.add_vec(xs[:, None], xs[None, :])
        return self._add_mat


class FieldElement:
    """An immutable element of a specific Field."""

    __slots__ = ("field", "idx")

    def __init__(self, field: Field, idx: int):
        self.field = field
        self.idx = idx

    def _peer(self, other) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field is not self.field:
            raise MixedFieldsError("elements from different fields")
        return other.idx

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.idx, self._peer(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.idx, self._peer(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.idx))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.idx, self._peer(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.idx, self._peer(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.idx, e))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.idx))

    def frobenius(self, j: int = 1):
        return FieldElement(self.field, self.field.frobenius(self.idx, j))

    def trace(self, d: int = 1):
        return FieldElement(self.field, self.field.trace(self.idx, d))

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.idx == other.idx

    def __hash__(self):
        return hash((id(self.field), self.idx))

    def __int__(self):
        return self.idx

    def __bool__(self):
        return self.idx != 0

    @property
    def coeffs(self):
        return self.field.coeffs(self.idx)

    def __repr__(self):
        return f"<F({self.field.p}^{self.field.n}) {self.field.format_element(self.idx)}>"


# -- construction and parsing -------------------------------------------------

def make_field(p: int, n: int, modulus=None, max_size: int | None = None) -> Field:
    """Build F_{p^n}, validating primality, size and irreducibility.

    With modulus omitted the built-in Conway polynomial table supplies one,
    making results reproducible bit for bit across runs.  The element-count
    bound (default 2^24) is configurable via max_size or the
    SBOX_SPECTRA_MAX_SIZE environment variable.
    """
    if not isinstance(p, int) or not pa.is_prime(p):
        raise NotPrimeError(f"p={p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise BadParametersError(f"degree n={n} must be a positive integer")
    bound = configured_max_size() if max_size is None else max_size
    if p**n > bound:
        raise UnsupportedSizeError(f"p^n = {p}^{n} exceeds the element-count bound {bound}")
    if modulus is None:
        from ._conway import CONWAY_POLYNOMIALS

        entry = CONWAY_POLYNOMIALS.get((p, n))
        if entry is None:
            raise NoBuiltinModulusError(f"no built-in modulus for p={p}, n={n}")
        return Field(p, n, entry)
    mod = [int(c) for c in modulus]
    if len(mod) != n + 1:
        raise BadParametersError(f"modulus must have {n + 1} coefficients, got {len(mod)}")
    if mod[-1] % p != 1:
        raise BadParametersError("modulus must be monic")
    if any(not 0 <= c < p for c in mod):
        raise BadParametersError("modulus coefficients must lie in [0, p)")
    if not pa.is_irreducible(mod, p):
        raise ReduciblePolynomialError(f"modulus {mod} is reducible over Z_{p}")
    return Field(p, n, tuple(mod))


def parse_field_spec(text: str, max_size: int | None = None) -> Field:
    """Parse `p=<int>;n=<int>;mod=<c0,c1,...,cn>` (mod optional)."""
    parts = [s for s in text.strip().split(";") if s]
    kv = {}
    for part in parts:
        if "=" not in part:
            raise UnparsableFieldSpecError(f"bad field spec fragment {part!r}")
        k, v = part.split("=", 1)
        kv[k.strip()] = v.strip()
    unknown = set(kv) - {"p", "n", "mod"}
    if unknown or "p" not in kv or "n" not in kv:
        raise UnparsableFieldSpecError(f"bad field spec {text!r}")
    try:
        p = int(kv["p"])
        n = int(kv["n"])
        modulus = [int(c) for c in kv["mod"].split(",")] if "mod" in kv else None
    except ValueError:
        raise UnparsableFieldSpecError(f"bad field spec {text!r}") from None
    return make_field(p, n, modulus, max_size=max_size)
