"""DDT/BCT machinery, spectra, closed forms for u = 1."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nhsbox.gf import UnsupportedFieldError, build_field, cached_field
from nhsbox.nh_family import ConsistencyError, NHParams
from nhsbox.spectra import (
    BOOMERANG_CLASSES,
    DifferentialSpectrum,
    FunctionTable,
    bct_entry,
    bct_entry_bruteforce,
    boomerang_case_counts_F21,
    boomerang_row,
    boomerang_spectrum,
    closed_form_spectrum_F21,
    cubic_character_sum,
    ddt_entry,
    derivative_row,
    differential_spectrum,
    locally_apn_check,
)


def f21(field):
    return FunctionTable.from_nh(field, NHParams(2, 1))


def test_ddt_entry_examples():
    f = cached_field(11)
    square = FunctionTable.from_nh(f, NHParams(2, 0))
    for a in range(1, 11):
        for b in range(11):
            assert ddt_entry(square, a, b) == 1  # D_a(x^2) is a bijection
    t = f21(f)
    assert ddt_entry(t, 1, 0) == (11 + 1) // 4
    assert ddt_entry(t, 1, 2) == 1
    f19 = cached_field(19)
    assert ddt_entry(f21(f19), 1, 0) == 5
    with pytest.raises(ValueError):
        ddt_entry(t, 0, 1)


def test_derivative_row_matches_entries():
    f = cached_field(19)
    t = f21(f)
    row = derivative_row(t, 3)
    counts = np.bincount(row, minlength=19)
    for b in range(19):
        assert counts[b] == ddt_entry(t, 3, b)


def test_spectrum_identities_and_reduction_agreement():
    for args in ((11, 1), (19, 1), (3, 3), (31, 1)):
        f = cached_field(*args)
        for u in range(f.q):
            for r in (2, f.q - 2):
                params = NHParams(r, u)
                table = FunctionTable.from_nh(f, params)
                full = differential_spectrum(table)
                red = differential_spectrum(table, reduction=params)
                assert full.omega == red.omega, (f.q, u, r)
                assert full.uniformity == red.uniformity
                assert full.locally_apn == red.locally_apn
                assert full.identities_hold(f.q)


def test_reduction_consistency_error():
    f = cached_field(11)
    table = f21(f)
    with pytest.raises(ConsistencyError):
        differential_spectrum(table, reduction=NHParams(2, 3))


def test_closed_form_spectrum_f21():
    f11 = cached_field(11)
    spec = closed_form_spectrum_F21(f11)
    assert spec.omega == {0: 40, 1: 40, 2: 20, 3: 10}
    assert spec.uniformity == 3
    assert cubic_character_sum(f11) == -2
    # q = 7 (mod 8): eta(2) = 1 kills the character-sum term
    for q in (23, 31, 47):
        f = cached_field(q)
        spec = closed_form_spectrum_F21(f)
        assert spec.omega[0] == (q - 1) * (3 * q - 5) // 8
        assert spec.identities_hold(q)
    with pytest.raises(UnsupportedFieldError):
        closed_form_spectrum_F21(cached_field(7))


def test_closed_form_matches_brute_small():
    for args in ((11, 1), (19, 1), (3, 3), (43, 1), (7, 3)):
        f = cached_field(*args)
        assert closed_form_spectrum_F21(f).omega == differential_spectrum(f21(f)).omega


def test_locally_apn():
    assert locally_apn_check(f21(cached_field(11)))
    assert locally_apn_check(f21(cached_field(31)))
    assert locally_apn_check(f21(cached_field(3, 3)))
    assert not locally_apn_check(FunctionTable.from_nh(cached_field(11), NHParams(2, 0)))


def test_bct_linear_function():
    f = cached_field(11)
    c = 4
    table = FunctionTable.from_callable(f, lambda x: f.mul(c, x))
    for a in (1, 5):
        for b in (0, 1, 7):
            assert bct_entry(table, a, b) == 11
    spec = boomerang_spectrum(table)
    assert spec.nu == {11: 100}
    assert spec.identities_hold(11)


def test_bct_bucketing_equals_bruteforce():
    rng = np.random.default_rng(7)
    for args in ((23, 1), (3, 3), (103, 1)):
        f = cached_field(*args)
        for u in (1, 2):
            table = FunctionTable.from_nh(f, NHParams(2, u))
            row1 = boomerang_row(table, 1)
            for _ in range(8):
                a = int(rng.integers(1, f.q))
                b = int(rng.integers(0, f.q))
                fast = bct_entry(table, a, b)
                assert fast == bct_entry_bruteforce(table, a, b)
                if a == 1:
                    assert fast == row1[b]


def test_f21_bct_row_capped_at_two():
    for args in ((31, 1), (43, 1), (3, 3), (103, 1)):
        f = cached_field(*args)
        row = boomerang_row(f21(f), 1)
        assert int(row[1:].max()) <= 2


def test_boomerang_spectrum_reduction_and_negation():
    for args in ((19, 1), (31, 1), (3, 3)):
        f = cached_field(*args)
        for u in (1, 2, f.neg(1)):
            params = NHParams(2, u)
            table = FunctionTable.from_nh(f, params)
            full = boomerang_spectrum(table)
            red = boomerang_spectrum(table, reduction=params)
            assert full.nu == red.nu and full.uniformity == red.uniformity
            assert full.identities_hold(f.q)
        plus = boomerang_spectrum(FunctionTable.from_nh(f, NHParams(2, 1)))
        minus = boomerang_spectrum(FunctionTable.from_nh(f, NHParams(2, f.neg(1))))
        assert plus.nu == minus.nu


def test_boomerang_case_counts():
    for args in ((31, 1), (43, 1), (19, 1)):
        f = cached_field(*args)
        table = f21(f)
        row = boomerang_row(table, 1)
        for b in range(1, f.q):
            counts = boomerang_case_counts_F21(f, b)
            assert set(counts) == set(BOOMERANG_CLASSES)
            live = {k: v for k, v in counts.items() if v}
            assert set(live) <= {"00,01", "00,10", "01,00", "10,00"}
            assert sum(counts.values()) == row[b], (f.q, b)
    with pytest.raises(ValueError):
        boomerang_case_counts_F21(cached_field(31), 0)


def test_spectrum_json_roundtrip():
    f = cached_field(19)
    spec = differential_spectrum(f21(f))
    blob = json.dumps(spec.to_json_dict())
    assert DifferentialSpectrum.omega_from_json(json.loads(blob)) == spec.omega


# -- generic properties on arbitrary function tables --------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**62), st.sampled_from([(7, 1), (11, 1), (3, 3), (19, 1)]))
def test_random_table_row_and_pair_identities(seed, field_args):
    field = cached_field(*field_args)
    q = field.q
    rng = np.random.default_rng(seed)
    table = FunctionTable(field, rng.integers(0, q, size=q).astype(np.int64))

    a = int(rng.integers(1, q))
    b = int(rng.integers(0, q))
    # every derivative row partitions F_q: counts sum to q
    counts = np.bincount(derivative_row(table, a), minlength=q)
    assert counts.sum() == q
    assert ddt_entry(table, a, b) == counts[b]
    # the O(q) bucketing BCT equals O(q^2) pair enumeration
    assert bct_entry(table, a, b) == bct_entry_bruteforce(table, a, b)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**62))
def test_random_table_spectrum_identities(seed):
    field = cached_field(11)
    rng = np.random.default_rng(seed)
    table = FunctionTable(field, rng.integers(0, 11, size=11).astype(np.int64))
    spec = differential_spectrum(table)
    assert spec.identities_hold(11)
    boom = boomerang_spectrum(table)
    assert boom.identities_hold(11)
