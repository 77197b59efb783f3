"""Closed-form spectrum predictions, a cross-check registry, and the
verification harness that diffs both against exhaustive computation.

Four prediction families are implemented, one per published closed form:

  t1: FBCT of x^(2^m+3) over F_{2^2m}, m > 2
  t2: FBCT of x^(2^m+5) over F_{2^2m}, m > 2
  t3: SOZD of x^(p^k+1) over F_{p^n}, p odd, 1 <= k < n
  t4: DDT of x^4 over F_{3^n}

Predictors encode the claims; `verify_*` computes the exhaustive spectrum
and reports every (a, b) where claim and computation disagree, plus the
claimed-versus-actual uniformity.  Where the published case analysis proves
only a bound, the predictor carries an interval and the verifier checks
containment.  The registry holds power-function families with published
second-order zero differential uniformities for bulk cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import BadParametersError, EvenCharacteristicError
from .fields import Field, make_field
from .spectra import (
    PowerMap,
    ddt_table,
    sozd_table,
    sozd_uniformity,
    differential_uniformity,
)

MISMATCH_CAP = 200  # listed per report; total count always reported


@dataclass(frozen=True)
class Prediction:
    """Predicted count for one (a, b) pair: an exact value, or an inclusive
    interval where the closed form proves only a bound.  `case` names the
    condition that fired."""

    case: str
    value: int | None = None
    bounds: tuple[int, int] | None = None

    @property
    def is_exact(self) -> bool:
        return self.value is not None

    def admits(self, actual: int) -> bool:
        if self.value is not None:
            return actual == self.value
        lo, hi = self.bounds
        return lo <= actual <= hi


@dataclass(frozen=True)
class DualPrediction:
    """The two competing conditions for the x^(p^k+1) family."""

    exact: Prediction
    stated: Prediction


def _m_of(field: Field) -> int:
    if field.p != 2 or field.n % 2:
        raise BadParametersError("these families live over F_{2^(2m)}")
    m = field.n // 2
    if m <= 2:
        raise BadParametersError("m must exceed 2 (smaller m covered by prior families)")
    return m


def predict_fbct_2m3(field: Field, a, b) -> Prediction:
    """Per-pair FBCT claim for x^(2^m+3): 2^n degenerate, 2^m on the
    subfield coset b in a*F_{2^m}^*, 4 otherwise."""
    m = _m_of(field)
    a = field.as_index(a)
    b = field.as_index(b)
    if a == 0 or b == 0 or a == b:
        return Prediction("degenerate", value=field.order)
    u = field.div(b, a)
    if field.pow(u, (1 << m) - 1) == 1:
        return Prediction("subfield-coset", value=1 << m)
    return Prediction("residual", value=4)


def predict_fbct_2m5(field: Field, a, b) -> Prediction:
    """Per-pair FBCT claim for x^(2^m+5): 2^n degenerate; on a^3 = b^3 the
    value eps = 4 (m odd) or 0 (m even); 2^m on the subfield coset; else 16.

    At m = 3 the residual claim (16) exceeds the claimed uniformity 2^3, so
    the residual case is downgraded to the proven interval [0, 16]."""
    m = _m_of(field)
    a = field.as_index(a)
    b = field.as_index(b)
    if a == 0 or b == 0 or a == b:
        return Prediction("degenerate", value=field.order)
    if field.pow(field.div(a, b), 3) == 1:
        return Prediction("cube-equal", value=4 if m % 2 else 0)
    if field.pow(field.div(b, a), (1 << m) - 1) == 1:
        return Prediction("subfield-coset", value=1 << m)
    if m == 3:
        return Prediction("residual-bound-only", bounds=(0, 16))
    return Prediction("residual", value=16)


def predict_sozd_pk1(field: Field, k: int, a, b) -> DualPrediction:
    """Dual per-pair claim for x^(p^k+1), p odd.

    exact: p^n iff a*b*(a^(p^k-1) + b^(p^k-1)) = 0, else 0.  The defining
    equation collapses to this x-free condition, so it is ground truth.
    stated: p^n iff b = 0 or (a/b)^2 lies in F_{p^s}, s = gcd(n, k); this
    is the published membership condition, kept as a claim under test.
    """
    if field.p == 2:
        raise EvenCharacteristicError("x^(p^k+1) family needs odd p")
    if not 1 <= k < field.n:
        raise BadParametersError(f"k={k} outside [1, n)")
    a = field.as_index(a)
    b = field.as_index(b)
    pn = field.order
    e = field.p**k - 1
    cond = field.mul(field.mul(a, b), field.add(field.pow(a, e), field.pow(b, e)))
    exact = Prediction(
        "vanishing-difference" if cond == 0 else "nonvanishing",
        value=pn if cond == 0 else 0,
    )
    s = math.gcd(field.n, k)
    if b == 0:
        stated = Prediction("b-zero", value=pn)
    else:
        u = field.div(a, b)
        if field.in_subfield(field.mul(u, u), s):
            stated = Prediction("square-ratio-in-subfield", value=pn)
        else:
            stated = Prediction("outside-subfield", value=0)
    return DualPrediction(exact=exact, stated=stated)


def predict_ddt_x4_f3n(field: Field, a, b) -> Prediction:
    """Per-pair DDT claim for x^4 over F_{3^n}: 3^n at (0,0), 0 on the rest
    of row zero; rows a != 0 are all-ones for odd n (the map is planar) and
    for even n carry entries in [0, 3] with row maximum 3."""
    if field.p != 3:
        raise BadParametersError("this family lives over F_{3^n}")
    a = field.as_index(a)
    b = field.as_index(b)
    if a == 0:
        return Prediction("zero-row", value=field.order if b == 0 else 0)
    if field.n % 2:
        return Prediction("planar-row", value=1)
    return Prediction("even-degree-row", bounds=(0, 3))


# -- vectorized predicted tables (mask logic mirrors the scalar predictors) ----

def _degenerate_overlay(out: np.ndarray, n: int) -> None:
    out[0, :] = n
    out[:, 0] = n
    np.fill_diagonal(out, n)


def _coset_cells(field: Field, m: int) -> np.ndarray:
    sub = np.array([u for u in field.subfield_indices(m) if u != 0], dtype=np.int64)
    return sub


def predicted_fbct_2m3_table(field: Field) -> np.ndarray:
    m = _m_of(field)
    n = field.order
    out = np.full((n, n), 4, dtype=np.int64)
    sub = _coset_cells(field, m)
    for a in range(1, n):
        out[a, field.mul_vec(np.int64(a), sub)] = 1 << m
    _degenerate_overlay(out, n)
    return out


def predicted_fbct_2m5_table(field: Field) -> tuple[np.ndarray, np.ndarray]:
    """Returns (values, interval_mask): cells under interval_mask carry the
    proven bound [0, 16] instead of an exact value (m = 3 residual case)."""
    m = _m_of(field)
    n = field.order
    eps = 4 if m % 2 else 0
    out = np.full((n, n), 16, dtype=np.int64)
    interval = np.zeros((n, n), dtype=bool)
    if m == 3:
        interval[:, :] = True
    sub = _coset_cells(field, m)
    cube = np.array(
        [u for u in range(1, n) if u != 1 and field.pow(u, 3) == 1], dtype=np.int64
    )
    for a in range(1, n):
        coset_b = field.mul_vec(np.int64(a), sub)
        out[a, coset_b] = 1 << m
        interval[a, coset_b] = False
        cube_b = field.mul_vec(np.int64(a), cube)
        out[a, cube_b] = eps
        interval[a, cube_b] = False
    _degenerate_overlay(out, n)
    interval[0, :] = False
    interval[:, 0] = False
    np.fill_diagonal(interval, False)
    return out, interval


def predicted_sozd_pk1_table(field: Field, k: int, condition: str = "exact") -> np.ndarray:
    if field.p == 2:
        raise EvenCharacteristicError("x^(p^k+1) family needs odd p")
    if not 1 <= k < field.n:
        raise BadParametersError(f"k={k} outside [1, n)")
    if condition not in ("exact", "stated"):
        raise BadParametersError(f"unknown condition {condition!r}")
    n = field.order
    xs = field.xs()
    if condition == "exact":
        pe = field.pow_vec(xs, field.p**k - 1)
        s = field.add_vec(pe[:, None], pe[None, :])
        nonzero_pair = (xs[:, None] != 0) & (xs[None, :] != 0)
        return np.where((s == 0) | ~nonzero_pair, n, 0).astype(np.int64)
    s = math.gcd(field.n, k)
    out = np.zeros((n, n), dtype=np.int64)
    out[:, 0] = n  # b = 0
    bs = xs[1:]
    for a in range(n):
        u = field.div_vec(np.int64(a), bs)
        u2 = field.mul_vec(u, u)
        member = field.pow_vec(u2, field.p**s) == u2
        out[a, 1:] = np.where(member, n, 0)
    return out


def predicted_ddt_x4_table(field: Field) -> tuple[np.ndarray, np.ndarray]:
    if field.p != 3:
        raise BadParametersError("this family lives over F_{3^n}")
    n = field.order
    interval = np.zeros((n, n), dtype=bool)
    if field.n % 2:
        out = np.ones((n, n), dtype=np.int64)
    else:
        out = np.zeros((n, n), dtype=np.int64)
        interval[1:, :] = True  # entries in [0, 3], checked by containment
    out[0, :] = 0
    out[0, 0] = n
    return out, interval


# -- verification reports -------------------------------------------------------

@dataclass
class VerificationReport:
    target: str
    params: dict
    field_spec: str
    uniformity_claimed: int
    uniformity_actual: int
    agrees: bool
    matches: int
    mismatch_count: int
    mismatches: list  # [a, b, predicted, actual], capped at MISMATCH_CAP
    notes: list = dataclass_field(default_factory=list)
    extras: dict = dataclass_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.mismatch_count == 0 and self.agrees

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "params": self.params,
            "field": self.field_spec,
            "uniformity_claimed": self.uniformity_claimed,
            "uniformity_actual": self.uniformity_actual,
            "agrees": self.agrees,
            "matches": self.matches,
            "mismatch_count": self.mismatch_count,
            "mismatches": self.mismatches,
            "notes": self.notes,
            "extras": self.extras,
        }


def _diff(
    actual: np.ndarray, predicted: np.ndarray, interval_mask: np.ndarray | None = None,
    bounds: tuple[int, int] = (0, 16),
) -> tuple[int, int, list]:
    """Compare tables; interval cells pass on containment in bounds."""
    bad = actual != predicted
    if interval_mask is not None:
        lo, hi = bounds
        contained = (actual >= lo) & (actual <= hi)
        bad = np.where(interval_mask, ~contained, bad)
    idx = np.argwhere(bad)
    listing = []
    for a, b in idx[:MISMATCH_CAP]:
        if interval_mask is not None and interval_mask[a, b]:
            pred = list(bounds)
        else:
            pred = int(predicted[a, b])
        listing.append([int(a), int(b), pred, int(actual[a, b])])
    n_bad = int(bad.sum())
    return actual.size - n_bad, n_bad, listing


def _value_histogram(entries: np.ndarray) -> dict[int, int]:
    values, counts = np.unique(entries, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def verify_fbct_2m3(m: int, method: str = "auto", jobs: int = 1) -> VerificationReport:
    fld = make_field(2, 2 * m)
    table = sozd_table(fld, PowerMap((1 << m) + 3), method=method, jobs=jobs)
    predicted = predicted_fbct_2m3_table(fld)
    matches, n_bad, listing = _diff(table.entries, predicted)
    actual_u = sozd_uniformity(table).uniformity
    report = VerificationReport(
        target="t1",
        params={"m": m, "d": (1 << m) + 3},
        field_spec=fld.spec_string(),
        uniformity_claimed=1 << m,
        uniformity_actual=actual_u,
        agrees=actual_u == 1 << m,
        matches=matches,
        mismatch_count=n_bad,
        mismatches=listing,
        extras={"value_histogram": _value_histogram(table.entries)},
    )
    if n_bad:
        report.notes.append(
            "residual-class cells differ from the claimed constant; the "
            "closed form proves only an upper bound there"
        )
    return report


def verify_fbct_2m5(m: int, method: str = "auto", jobs: int = 1) -> VerificationReport:
    fld = make_field(2, 2 * m)
    table = sozd_table(fld, PowerMap((1 << m) + 5), method=method, jobs=jobs)
    predicted, interval = predicted_fbct_2m5_table(fld)
    matches, n_bad, listing = _diff(table.entries, predicted, interval, (0, 16))
    actual_u = sozd_uniformity(table).uniformity
    report = VerificationReport(
        target="t2",
        params={"m": m, "d": (1 << m) + 5},
        field_spec=fld.spec_string(),
        uniformity_claimed=1 << m,
        uniformity_actual=actual_u,
        agrees=actual_u == 1 << m,
        matches=matches,
        mismatch_count=n_bad,
        mismatches=listing,
        extras={"value_histogram": _value_histogram(table.entries)},
    )
    if m == 3:
        report.notes.append(
            f"residual class checked by containment in [0, 16]; exhaustive "
            f"maximum over the restricted domain is {actual_u}, claimed {1 << m}"
        )
    if n_bad:
        report.notes.append(
            "residual-class cells differ from the claimed constant; the "
            "closed form proves only an upper bound there"
        )
    return report


def verify_sozd_pk1(
    p: int, k: int, n: int, condition: str = "exact", jobs: int = 1
) -> VerificationReport:
    fld = make_field(p, n)
    table = sozd_table(fld, PowerMap(p**k + 1), method="bruteforce", jobs=jobs)
    predicted = predicted_sozd_pk1_table(fld, k, condition)
    matches, n_bad, listing = _diff(table.entries, predicted)
    actual_u = sozd_uniformity(table).uniformity
    s = math.gcd(n, k)
    claimed = p**n if (n // s) % 2 == 0 else 0
    stated_tbl = predicted_sozd_pk1_table(fld, k, "stated")
    exact_tbl = predicted_sozd_pk1_table(fld, k, "exact")
    disc = np.argwhere(stated_tbl != exact_tbl)
    report = VerificationReport(
        target="t3",
        params={"p": p, "k": k, "n": n, "d": p**k + 1, "condition": condition},
        field_spec=fld.spec_string(),
        uniformity_claimed=claimed,
        uniformity_actual=actual_u,
        agrees=actual_u == claimed,
        matches=matches,
        mismatch_count=n_bad,
        mismatches=listing,
        extras={
            "entry_values": sorted(int(v) for v in np.unique(table.entries)),
            "stated_vs_exact_discrepancies": int(len(disc)),
            "stated_vs_exact_examples": [[int(a), int(b)] for a, b in disc[:20]],
        },
    )
    report.notes.append(
        "claimed uniformity follows the vanishing condition: p^n when "
        "n/gcd(n,k) is even, else 0"
    )
    return report


def verify_ddt_x4(n: int, jobs: int = 1) -> VerificationReport:
    fld = make_field(3, n)
    table = ddt_table(fld, PowerMap(4), jobs=jobs)
    predicted, interval = predicted_ddt_x4_table(fld)
    matches, n_bad, listing = _diff(table.entries, predicted, interval, (0, 3))
    e = table.entries
    claimed = 1 if n % 2 else 3
    actual_u = differential_uniformity(fld, table=table).uniformity
    report = VerificationReport(
        target="t4",
        params={"n": n, "d": 4},
        field_spec=fld.spec_string(),
        uniformity_claimed=claimed,
        uniformity_actual=actual_u,
        agrees=actual_u == claimed,
        matches=matches,
        mismatch_count=n_bad,
        mismatches=listing,
    )
    if n % 2 == 0:
        row_max_ok = bool((e[1:, :].max(axis=1) == 3).all())
        row_sum_ok = bool((e[1:, :].sum(axis=1) == fld.order).all())
        report.extras["rows_attain_max_3"] = row_max_ok
        report.extras["row_sums_equal_order"] = row_sum_ok
        if not (row_max_ok and row_sum_ok):
            report.mismatch_count += 1
            report.notes.append("row structure violated for some a != 0")
    else:
        report.extras["permutation_rows"] = bool((e[1:, :] == 1).all())
    return report


# -- Table registry -------------------------------------------------------------

@dataclass(frozen=True)
class RegistryCase:
    name: str     # family slug
    pattern: str  # human-readable exponent pattern
    p: int
    n: int
    d: int
    expected: int
    params: dict


def registry_cases() -> list[RegistryCase]:
    """Power families with published second-order zero differential
    uniformities, instantiated at every desk-scale size the suite checks.

    Expected values encode the published closed forms; a handful of
    instances are known to disagree with exhaustive computation (see the
    registry report), e.g. x^5 over F_25 where x^5 is the Frobenius map.
    """
    cases: list[RegistryCase] = []

    def add(name, pattern, p, n, d, expected, **params):
        cases.append(RegistryCase(name, pattern, p, n, d, expected, params))

    for n in (4, 5, 6, 8):
        add("inverse", "2^n-2", 2, n, 2**n - 2, 2 if n % 2 else 4)
    for n, k in ((4, 2), (6, 2), (6, 3), (8, 2), (8, 4)):
        add("gold", "2^k+1", 2, n, 2**k + 1, 2**n, k=k)
    for n in (4, 5, 6, 7, 8):
        add("x7-char2", "7", 2, n, 7, 4)
    for n in (2, 3, 4):
        add("x7-char3", "7", 3, n, 7, 3)
    for n in (2, 3, 4, 5):
        add("ternary-inverse", "3^n-2", 3, n, 3**n - 2, 3)
    for p, n in ((3, 2), (3, 3), (3, 4), (5, 2), (7, 1), (7, 2), (11, 1)):
        add("x5-oddp", "5", p, n, 5, 3)
    for p, n in ((5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (11, 1), (11, 2)):
        add("x3-oddp", "3", p, n, 3, 1)
    for p, n in ((5, 2), (5, 3), (7, 2), (11, 2)):
        add("x4-oddp", "4", p, n, 4, 2)
    for m in (3, 4, 5):
        add("fam-2m3", "2^m+3", 2, 2 * m, (1 << m) + 3, 1 << m, m=m)
    for m in (3, 4, 5):
        add("fam-2m5", "2^m+5", 2, 2 * m, (1 << m) + 5, 1 << m, m=m)
    for p, k, n in ((3, 1, 2), (3, 1, 3), (3, 2, 4), (5, 1, 2), (5, 1, 3), (7, 1, 2)):
        s = math.gcd(n, k)
        add(
            "fam-pk1", "p^k+1", p, n, p**k + 1,
            p**n if (n // s) % 2 == 0 else 0, k=k,
        )
    for n in (2, 3, 4, 5):
        add("fam-x4-f3n", "4", 3, n, 4, 0 if n % 2 else 3**n)
    return cases


@dataclass
class RegistryReport:
    rows: list  # dicts: name, pattern, p, n, d, params, expected, actual, status
    matched: int
    mismatched: int
    skipped: int

    @property
    def ok(self) -> bool:
        return self.mismatched == 0

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "matched": self.matched,
            "mismatched": self.mismatched,
            "skipped": self.skipped,
        }


def verify_registry(max_size: int = 1024, jobs: int = 1) -> RegistryReport:
    """Compute the uniformity for every registry case with p^n <= max_size
    and compare with the published value; larger cases are marked skipped."""
    rows = []
    matched = mismatched = skipped = 0
    for case in registry_cases():
        row = {
            "name": case.name,
            "pattern": case.pattern,
            "p": case.p,
            "n": case.n,
            "d": case.d,
            "params": case.params,
            "expected": case.expected,
        }
        if case.p**case.n > max_size:
            row["status"] = "skipped"
            row["actual"] = None
            skipped += 1
        else:
            fld = make_field(case.p, case.n)
            table = sozd_table(fld, PowerMap(case.d), jobs=jobs)
            actual = sozd_uniformity(table).uniformity
            row["actual"] = actual
            row["status"] = "match" if actual == case.expected else "mismatch"
            if actual == case.expected:
                matched += 1
            else:
                mismatched += 1
        rows.append(row)
    return RegistryReport(rows=rows, matched=matched, mismatched=mismatched, skipped=skipped)


def verify_theorem(theorem: str, jobs: int = 1, **params) -> VerificationReport:
    """Dispatch by theorem id: t1/t2 need m; t3 needs p, k, n and an optional
    condition; t4 needs n."""
    try:
        if theorem == "t1":
            return verify_fbct_2m3(params["m"], jobs=jobs)
        if theorem == "t2":
            return verify_fbct_2m5(params["m"], jobs=jobs)
        if theorem == "t3":
            return verify_sozd_pk1(
                params["p"], params["k"], params["n"],
                condition=params.get("condition", "exact"), jobs=jobs,
            )
        if theorem == "t4":
            return verify_ddt_x4(params["n"], jobs=jobs)
    except KeyError as exc:
        raise BadParametersError(f"{theorem} needs parameter {exc}") from None
    raise BadParametersError(f"unknown theorem id {theorem!r}")
