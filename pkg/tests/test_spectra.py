import io
from collections import Counter

import numpy as np
import pytest

from sbox_spectra import (
    NotAPowerMapError,
    PowerMap,
    SpectraError,
    TableMap,
    WrongLengthError,
    ddt_entry,
    ddt_row_power,
    ddt_table,
    differential_uniformity,
    fbct_property_check,
    image_table,
    make_field,
    sozd_entry,
    sozd_row_power,
    sozd_table,
    sozd_uniformity,
    write_table_csv,
)


def hist(entries):
    return dict(Counter(np.asarray(entries).ravel().tolist()))


# -- DDT ------------------------------------------------------------------------

def test_ddt_zero_row(f26):
    row = ddt_table(f26, PowerMap(11)).entries[0]
    assert row[0] == 64 and row[1:].sum() == 0
    # and for an arbitrary S-box too
    rng = np.random.default_rng(3)
    tm = TableMap(tuple(int(v) for v in rng.integers(0, 64, 64)))
    assert ddt_entry(f26, tm, 0, 0) == 64
    assert ddt_entry(f26, tm, 0, 5) == 0


def test_ddt_row_sums(f26, f33):
    for field, fmap in ((f26, PowerMap(11)), (f33, PowerMap(4))):
        t = ddt_table(field, fmap)
        assert (t.entries.sum(axis=1) == field.order).all()


def test_ddt_x4_over_f3(f33, f32):
    t3 = ddt_table(f33, PowerMap(4))
    assert t3.entries[1:, :].max() == 1  # planar for odd n
    assert differential_uniformity(f33, table=t3).uniformity == 1
    t2 = ddt_table(f32, PowerMap(4))
    assert differential_uniformity(f32, table=t2).uniformity == 3


def test_ddt_identity_map(f33):
    summary = differential_uniformity(f33, PowerMap(1))
    assert summary.uniformity == 27  # constant difference: one cell per row
    row = ddt_row_power(f33, 1)
    assert row[1] == 27 and row.sum() == 27


def test_ddt_row_power_normalized(f32):
    row = ddt_row_power(f32, 4)
    prob = ddt_row_power(f32, 4, normalize=True)
    assert np.allclose(prob, row / 9)
    assert abs(prob.sum() - 1.0) < 1e-12


def test_ddt_row_power_multiset_matches_all_rows(f32):
    # spec example: d = 4, p = 3, n = 2, checked against the full table
    t = ddt_table(f32, PowerMap(4), method="bruteforce")
    row1 = ddt_row_power(f32, 4)
    assert (row1 == t.entries[1]).all()
    want = sorted(row1.tolist())
    for a in range(1, 9):
        assert sorted(t.entries[a].tolist()) == want


def test_ddt_fast_equals_bruteforce(f28, f33):
    for field, d in ((f28, 19), (f33, 4)):
        fast = ddt_table(field, PowerMap(d), method="fast")
        brute = ddt_table(field, PowerMap(d), method="bruteforce")
        assert np.array_equal(fast.entries, brute.entries)


def test_ddt_entry_scalar(f32):
    t = ddt_table(f32, PowerMap(4))
    for a in range(9):
        for b in range(9):
            assert ddt_entry(f32, PowerMap(4), a, b) == t.entries[a, b]


# -- SOZD / FBCT -----------------------------------------------------------------

def test_sozd_degenerate_values(f26):
    t = sozd_table(f26, PowerMap(11))
    assert (t.entries[0] == 64).all()
    assert (t.entries[:, 0] == 64).all()
    assert (np.diag(t.entries) == 64).all()


def test_fbct_x11_known_distribution(f26):
    # frozen from the exhaustive oracle: degenerate 190 @ 64, subfield coset
    # 378 @ 8, residual class split between 4 and 0
    t = sozd_table(f26, PowerMap(11), method="bruteforce")
    assert hist(t.entries) == {64: 190, 8: 378, 4: 1260, 0: 2268}
    assert sozd_uniformity(t).uniformity == 8


def test_fbct_coset_cells_exact(f26):
    sub = [u for u in f26.subfield_indices(3) if u not in (0, 1)]
    for a in (1, 7, 30):
        for u in sub:
            assert sozd_entry(f26, PowerMap(11), a, f26.mul(a, u)) == 8


def test_sozd_fast_equals_bruteforce():
    for p, n, d in ((2, 6, 11), (3, 3, 4), (2, 8, 19), (5, 2, 6), (3, 4, 10)):
        f = make_field(p, n)
        fast = sozd_table(f, PowerMap(d), method="fast")
        brute = sozd_table(f, PowerMap(d), method="bruteforce")
        assert np.array_equal(fast.entries, brute.entries), (p, n, d)


def test_sozd_odd_p_pk1_rule(f33):
    # x^(p^k+1): entry is p^n exactly when a*b*(a^(p^k-1) + b^(p^k-1)) = 0
    d = 3 + 1
    t = sozd_table(f33, PowerMap(d), method="bruteforce")
    for a in range(27):
        for b in range(27):
            cond = f33.mul(f33.mul(a, b), f33.add(f33.pow(a, 2), f33.pow(b, 2)))
            assert t.entries[a, b] == (27 if cond == 0 else 0)


def test_sozd_row_power_reconstruction(f26):
    row1 = sozd_row_power(f26, 11)
    t = sozd_table(f26, PowerMap(11), method="bruteforce")
    assert (row1 == t.entries[1]).all()
    assert row1[0] == 64
    for a in (3, 25, 60):
        for b in (0, 5, 17):
            assert t.entries[a, b] == row1[f26.div(b, a)]


def test_sozd_uniformity_examples(f28):
    assert sozd_uniformity(sozd_table(f28, PowerMap(19))).uniformity == 16
    f10 = make_field(2, 10)
    assert sozd_uniformity(sozd_table(f10, PowerMap(37))).uniformity == 32
    f33 = make_field(3, 3)
    assert sozd_uniformity(sozd_table(f33, PowerMap(4))).uniformity == 0


def test_sozd_uniformity_domains(f26, f33):
    t2 = sozd_table(f26, PowerMap(11))
    s2 = sozd_uniformity(t2)
    assert "a != b" in s2.domain
    t3 = sozd_table(f33, PowerMap(4))
    s3 = sozd_uniformity(t3)
    assert s3.domain == "a, b nonzero"
    # diagonal (a = b) is excluded only for p = 2
    f32 = make_field(3, 2)
    t = sozd_table(f32, PowerMap(4))
    assert sozd_uniformity(t).uniformity == 9  # attained at a = b among others


def test_histograms_cover_all_pairs(f26, f33):
    for field, fmap, kind in ((f26, PowerMap(11), "sozd"), (f33, PowerMap(4), "ddt")):
        t = (sozd_table if kind == "sozd" else ddt_table)(field, fmap)
        s = (sozd_uniformity(t) if kind == "sozd"
             else differential_uniformity(field, table=t))
        assert sum(c for _, c in s.histogram) == field.order**2
        values = [v for v, _ in s.histogram]
        assert values == sorted(values)


# -- table maps --------------------------------------------------------------------

def test_table_map_equals_power_map(f26):
    images = tuple(int(v) for v in f26.power_map_table(11))
    tm = TableMap(images)
    t_tm = sozd_table(f26, tm)
    t_pm = sozd_table(f26, PowerMap(11))
    assert np.array_equal(t_tm.entries, t_pm.entries)
    assert t_tm.map_label == "table" and t_pm.map_label == "11"


def test_table_map_validation(f26):
    with pytest.raises(WrongLengthError):
        image_table(f26, TableMap((0, 1, 2)))
    with pytest.raises(SpectraError):
        image_table(f26, TableMap(tuple(range(60)) + (99, 1, 2, 3)))
    with pytest.raises(NotAPowerMapError):
        sozd_table(f26, TableMap(tuple(range(64))), method="fast")


def test_random_sbox_row_sums(f26):
    rng = np.random.default_rng(11)
    tm = TableMap(tuple(int(v) for v in rng.integers(0, 64, 64)))
    t = ddt_table(f26, tm)
    assert (t.entries.sum(axis=1) == 64).all()
    s = sozd_table(f26, tm)
    report = fbct_property_check(s)
    assert report.ok, report.counts


# -- structural properties ------------------------------------------------------------

def test_property_check_clean_tables(f26, f28):
    for field, d in ((f26, 11), (f26, 13), (f28, 19), (f28, 21)):
        report = fbct_property_check(sozd_table(field, PowerMap(d)))
        assert report.ok
        assert all(v == 0 for v in report.counts.values())


def test_property_check_catches_mutation(f26):
    t = sozd_table(f26, PowerMap(11))
    t.entries[5, 9] -= 1
    report = fbct_property_check(t)
    assert not report.ok
    assert sum(report.counts.values()) >= 1
    props = {v.prop for v in report.violations}
    assert "multiplicity-mod-4" in props or "symmetry" in props


def test_property_check_diagonal(f26):
    t = sozd_table(f26, PowerMap(11))
    assert (np.diag(t.entries) == 64).all()


def test_property_check_requires_fbct(f33, f26):
    with pytest.raises(SpectraError):
        fbct_property_check(sozd_table(f33, PowerMap(4)))
    with pytest.raises(SpectraError):
        fbct_property_check(ddt_table(f26, PowerMap(11)))


# -- APN and PN links -------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_apn_link_gold(n):
    f = make_field(2, n)
    t = sozd_table(f, PowerMap(3))  # gcd(1, n) = 1: APN
    mask = np.ones((f.order, f.order), dtype=bool)
    mask[0, :] = mask[:, 0] = False
    np.fill_diagonal(mask, False)
    fbct_zero = not t.entries[mask].any()
    delta = differential_uniformity(f, PowerMap(3)).uniformity
    assert fbct_zero and delta == 2


def test_apn_link_negative_control():
    f = make_field(2, 6)
    t = sozd_table(f, PowerMap(5))  # gcd(2, 6) = 2: not APN
    mask = np.ones((64, 64), dtype=bool)
    mask[0, :] = mask[:, 0] = False
    np.fill_diagonal(mask, False)
    assert t.entries[mask].any()
    assert differential_uniformity(f, PowerMap(5)).uniformity > 2


@pytest.mark.parametrize("n", [1, 3, 5])
@pytest.mark.parametrize("d", [2, 4])
def test_pn_link_odd_characteristic(n, d):
    f = make_field(3, n)
    t = sozd_table(f, PowerMap(d))
    mask = np.ones((f.order, f.order), dtype=bool)
    mask[0, :] = mask[:, 0] = False
    assert not t.entries[mask].any()
    assert differential_uniformity(f, PowerMap(d)).uniformity == 1


# -- modulus independence -----------------------------------------------------------

def test_histogram_invariant_under_modulus(f26):
    alt = make_field(2, 6, [1, 1, 0, 0, 0, 0, 1])  # x^6 + x + 1
    assert alt.modulus != f26.modulus
    for d in (11, 13):
        h1 = hist(sozd_table(f26, PowerMap(d)).entries)
        h2 = hist(sozd_table(alt, PowerMap(d)).entries)
        assert h1 == h2


# -- serialization and determinism -----------------------------------------------------

def test_csv_format_small():
    f = make_field(2, 2)
    t = ddt_table(f, PowerMap(1))
    buf = io.StringIO()
    write_table_csv(t, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "DDT,2,2,1"
    assert len(lines) == 5
    assert lines[1] == "4,0,0,0"
    assert lines[2] == "0,4,0,0"  # difference of x is constant a


def test_jobs_do_not_change_results(f26):
    for jobs in (2, 4, 8):
        a = sozd_table(f26, PowerMap(11), jobs=1)
        b = sozd_table(f26, PowerMap(11), jobs=jobs)
        assert np.array_equal(a.entries, b.entries)
        c = sozd_table(f26, PowerMap(11), method="bruteforce", jobs=jobs)
        assert np.array_equal(a.entries, c.entries)


def test_spectrum_table_kind_flags(f26, f33):
    assert sozd_table(f26, PowerMap(11)).is_fbct
    assert not sozd_table(f33, PowerMap(4)).is_fbct
    assert not ddt_table(f26, PowerMap(11)).is_fbct
