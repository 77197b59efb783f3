"""Difference distribution tables and second-order zero differential spectra.

A spectrum table counts, for every pair (a, b) of field elements, the
solutions x of

  DDT:   F(x+a) - F(x) = b
  SOZD:  F(x+a+b) - F(x+a) - F(x+b) + F(x) = 0

over F_{p^n}.  For p = 2 the SOZD table is the FBCT.  Power maps x^d admit
a fast path: one exhaustive row at a = 1 determines every other nonzero row
by the scalings DDT(a, b) = DDT(1, b/a^d) and SOZD(a, b) = SOZD(1, b/a);
the brute-force path is kept selectable for cross-validation.

Rows are independent, computed in enumeration order and merged by index, so
output is identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NotAPowerMapError, SpectraError, WrongLengthError
from .fields import Field

ADD_MATRIX_CAP = 2048  # largest odd-p order swept by the brute-force path


@dataclass(frozen=True)
class PowerMap:
    """The power function x -> x^d (with 0^d = 0)."""

    d: int


@dataclass(frozen=True)
class TableMap:
    """An arbitrary S-box given by its image encodings in enumeration order."""

    images: tuple[int, ...]


def image_table(field: Field, fmap) -> np.ndarray:
    """Image encoding of every element under fmap, in enumeration order."""
    if isinstance(fmap, PowerMap):
        return field.power_map_table(fmap.d)
    if isinstance(fmap, TableMap):
        if len(fmap.images) != field.order:
            raise WrongLengthError(
                f"table has {len(fmap.images)} entries, field has {field.order}"
            )
        tab = np.asarray(fmap.images, dtype=np.int64)
        if tab.size and (tab.min() < 0 or tab.max() >= field.order):
            raise SpectraError("table image outside the field")
        return tab
    raise SpectraError(f"not a map spec: {fmap!r}")


def map_label(fmap) -> str:
    return str(fmap.d) if isinstance(fmap, PowerMap) else "table"


@dataclass
class SpectrumTable:
    kind: str  # "ddt" | "sozd"
    field: Field
    map_label: str
    entries: np.ndarray  # (p^n, p^n) int64, indexed [a, b] in enumeration order

    @property
    def is_fbct(self) -> bool:
        return self.kind == "sozd" and self.field.p == 2


@dataclass(frozen=True)
class SpectrumSummary:
    uniformity: int
    histogram: tuple[tuple[int, int], ...]  # (value, pair count), ascending value
    domain: str


def _neg_table(field: Field, tab: np.ndarray) -> np.ndarray:
    return tab if field.p == 2 else field.sub_vec(np.int64(0), tab)


def _add_matrix(field: Field) -> np.ndarray:
    return field.add_matrix(ADD_MATRIX_CAP)


def _ddt_row(field: Field, tab: np.ndarray, a: int) -> np.ndarray:
    xs = field.xs()
    if field.p == 2:
        diff = tab[xs ^ a] ^ tab
    else:
        add = _add_matrix(field)
        neg = _neg_table(field, tab)
        diff = add[tab[add[a]], neg]
    return np.bincount(diff, minlength=field.order)


def _sozd_row(field: Field, tab: np.ndarray, a: int) -> np.ndarray:
    xs = field.xs()
    n = field.order
    if field.p == 2:
        inner = tab ^ tab[xs ^ a]  # F(x) + F(x+a), per x
        xb = xs[:, None] ^ xs[None, :]  # [b, x] -> x + b
        outer = tab[xb] ^ tab[xb ^ a]  # F(x+b) + F(x+a+b)
        return (outer == inner[None, :]).sum(axis=1)
    add = _add_matrix(field)
    neg = _neg_table(field, tab)
    inner = add[tab, neg[add[a]]]  # F(x) - F(x+a)
    xb = add  # [b, x] -> x + b
    xab = add[a][xb]
    outer = add[tab[xab], neg[xb]]  # F(x+a+b) - F(x+b)
    total = add[outer, np.broadcast_to(inner, outer.shape)]
    return (total == 0).sum(axis=1)


def _rows_to_table(row_fn, n: int, jobs: int) -> np.ndarray:
    out = np.empty((n, n), dtype=np.int64)
    if jobs <= 1:
        for a in range(n):
            out[a] = row_fn(a)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            for a, row in enumerate(ex.map(row_fn, range(n))):
                out[a] = row
    return out


def ddt_entry(field: Field, fmap, a, b) -> int:
    """Exact count of x with F(x+a) - F(x) = b."""
    a = field.as_index(a)
    b = field.as_index(b)
    tab = image_table(field, fmap)
    xs = field.xs()
    diff = field.sub_vec(tab[field.add_vec(xs, a)], tab)
    return int(np.count_nonzero(diff == b))


def sozd_entry(field: Field, fmap, a, b) -> int:
    """Exact count of x with F(x+a+b) - F(x+a) - F(x+b) + F(x) = 0.

    For p = 2 this is the FBCT entry at (a, b).
    """
    a = field.as_index(a)
    b = field.as_index(b)
    tab = image_table(field, fmap)
    xs = field.xs()
    xa = field.add_vec(xs, a)
    xb = field.add_vec(xs, b)
    xab = field.add_vec(xa, b)
    if field.p == 2:
        total = tab[xab] ^ tab[xa] ^ tab[xb] ^ tab
    else:
        total = field.add_vec(
            field.sub_vec(tab[xab], tab[xa]), field.sub_vec(tab, tab[xb])
        )
    return int(np.count_nonzero(total == 0))


def ddt_row_power(field: Field, d: int, normalize: bool = False) -> np.ndarray:
    """DDT row at a = 1 for x^d; rows a != 0 follow by b -> b/a^d.

    With normalize=True the counts are divided by p^n, giving the
    differential transition probabilities of the row."""
    row = _ddt_row(field, field.power_map_table(d), 1)
    if normalize:
        return row / field.order
    return row


def sozd_row_power(field: Field, d: int) -> np.ndarray:
    """SOZD row at a = 1 for x^d; rows a != 0 follow by b -> b/a."""
    return _sozd_row(field, field.power_map_table(d), 1)


def _require_power(fmap) -> int:
    if not isinstance(fmap, PowerMap):
        raise NotAPowerMapError("fast path needs a power map")
    return fmap.d


def ddt_table(field: Field, fmap, method: str = "auto", jobs: int = 1) -> SpectrumTable:
    """Full DDT.  method: "auto" (fast path for power maps), "fast", or
    "bruteforce" (the oracle path, selectable for cross-validation)."""
    entries = _table(field, fmap, method, jobs, kind="ddt")
    return SpectrumTable("ddt", field, map_label(fmap), entries)


def sozd_table(field: Field, fmap, method: str = "auto", jobs: int = 1) -> SpectrumTable:
    """Full second-order zero differential spectrum (FBCT for p = 2)."""
    entries = _table(field, fmap, method, jobs, kind="sozd")
    return SpectrumTable("sozd", field, map_label(fmap), entries)


def _table(field: Field, fmap, method: str, jobs: int, kind: str) -> np.ndarray:
    if method not in ("auto", "fast", "bruteforce"):
        raise SpectraError(f"unknown method {method!r}")
    use_fast = method == "fast" or (method == "auto" and isinstance(fmap, PowerMap))
    n = field.order
    if use_fast:
        d = _require_power(fmap)
        xs = field.xs()
        if kind == "ddt":
            row1 = ddt_row_power(field, d)

            def row_fn(a):
                if a == 0:
                    row = np.zeros(n, dtype=np.int64)
                    row[0] = n
                    return row
                return row1[field.div_vec(xs, np.int64(field.pow(a, d)))]

        else:
            row1 = sozd_row_power(field, d)

            def row_fn(a):
                if a == 0:
                    return np.full(n, n, dtype=np.int64)
                return row1[field.div_vec(xs, np.int64(a))]

    else:
        tab = image_table(field, fmap)
        if kind == "ddt":
            def row_fn(a):
                return _ddt_row(field, tab, a)
        else:
            def row_fn(a):
                return _sozd_row(field, tab, a)

    return _rows_to_table(row_fn, n, jobs)


# -- uniformities and histograms ----------------------------------------------

def _histogram(entries: np.ndarray) -> tuple[tuple[int, int], ...]:
    values, counts = np.unique(entries, return_counts=True)
    return tuple((int(v), int(c)) for v, c in zip(values, counts))


def differential_uniformity(field: Field, fmap=None, table: SpectrumTable | None = None,
                            jobs: int = 1) -> SpectrumSummary:
    """Max DDT entry over a != 0 (all b), plus the full-table histogram."""
    if table is None:
        table = ddt_table(field, fmap, jobs=jobs)
    elif table.kind != "ddt":
        raise SpectraError("differential uniformity needs a DDT table")
    e = table.entries
    return SpectrumSummary(
        uniformity=int(e[1:, :].max()) if e.shape[0] > 1 else 0,
        histogram=_histogram(e),
        domain="a != 0",
    )


def sozd_uniformity(table: SpectrumTable) -> SpectrumSummary:
    """Second-order zero differential uniformity.

    The max ranges over a, b nonzero with a != b for p = 2 (the Feistel
    boomerang uniformity) and over a, b nonzero for p > 2.  The histogram
    still covers all p^2n pairs.
    """
    if table.kind != "sozd":
        raise SpectraError("sozd uniformity needs a SOZD table")
    e = table.entries
    n = e.shape[0]
    mask = np.ones((n, n), dtype=bool)
    mask[0, :] = False
    mask[:, 0] = False
    if table.field.p == 2:
        np.fill_diagonal(mask, False)
        domain = "a, b nonzero and a != b"
    else:
        domain = "a, b nonzero"
    uniformity = int(e[mask].max()) if mask.any() else 0
    return SpectrumSummary(uniformity=uniformity, histogram=_histogram(e), domain=domain)


def summary_to_dict(summary: SpectrumSummary) -> dict:
    return {
        "uniformity": summary.uniformity,
        "histogram": [[v, c] for v, c in summary.histogram],
        "domain": summary.domain,
    }


# -- structural FBCT properties -------------------------------------------------

@dataclass(frozen=True)
class PropertyViolation:
    prop: str
    a: int
    b: int
    detail: str


@dataclass
class PropertyReport:
    ok: bool
    counts: dict[str, int]  # violations per property
    violations: list[PropertyViolation]  # capped listing


_VIOLATION_CAP = 50


def fbct_property_check(table: SpectrumTable) -> PropertyReport:
    """Check the structural FBCT identities on a p = 2 SOZD table:
    symmetry, first line/column/diagonal = 2^n, every entry = 0 (mod 4),
    and entry (a, b) = entry (a, a+b)."""
    if not table.is_fbct:
        raise SpectraError("property check applies to SOZD tables over p = 2")
    e = table.entries
    n = e.shape[0]
    xs = np.arange(n)
    counts: dict[str, int] = {}
    violations: list[PropertyViolation] = []

    def record(prop, mask, detail_fn):
        idx = np.argwhere(mask)
        counts[prop] = len(idx)
        for a, b in idx[:_VIOLATION_CAP]:
            violations.append(PropertyViolation(prop, int(a), int(b), detail_fn(a, b)))

    record("symmetry", e != e.T, lambda a, b: f"{e[a, b]} != {e[b, a]}")
    fixed = np.zeros((n, n), dtype=bool)
    fixed[0, :] = e[0, :] != n
    fixed[:, 0] |= e[:, 0] != n
    fixed[xs, xs] |= e[xs, xs] != n
    record("fixed-values", fixed, lambda a, b: f"{e[a, b]} != {n}")
    record("multiplicity-mod-4", e % 4 != 0, lambda a, b: f"{e[a, b]} % 4 != 0")
    shift = e[xs[:, None], xs[:, None] ^ xs[None, :]]  # entry (a, a^b)
    record("translate-equality", e != shift, lambda a, b: f"{e[a, b]} != {e[a, a ^ b]}")

    total = sum(counts.values())
    return PropertyReport(ok=total == 0, counts=counts, violations=violations)


def property_report_to_dict(report: PropertyReport) -> dict:
    return {
        "ok": report.ok,
        "counts": report.counts,
        "violations": [
            {"property": v.prop, "a": v.a, "b": v.b, "detail": v.detail}
            for v in report.violations
        ],
    }


# -- serialization ---------------------------------------------------------------

def write_table_csv(table: SpectrumTable, fobj) -> None:
    """Header `kind,p,n,d_or_table`, then p^n rows of p^n counts."""
    fobj.write(f"{table.kind.upper()},{table.field.p},{table.field.n},{table.map_label}\n")
    for row in table.entries:
        fobj.write(",".join(map(str, row.tolist())))
        fobj.write("\n")


def write_row_csv(field: Field, kind: str, label: str, row: np.ndarray, fobj) -> None:
    fobj.write(f"{kind.upper()},{field.p},{field.n},{label}\n")
    fobj.write(",".join(map(str, row.tolist())))
    fobj.write("\n")
