"""Differential and boomerang analysis of function tables over F_q.

The generic paths work for any table; the reduced paths exploit the
row-1 reduction available to F_{r,u} (every row a is a b-relabelling of
row 1, so whole-table spectra are (q-1) copies of the row-1 tally).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import Field, UnsupportedFieldError
from .nh_family import ConsistencyError, NHParams, nh_table

# ---------------------------------------------------------------------------
# tables and spectrum containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionTable:
    """Dense value table of a function F_q -> F_q, indexed by element code."""

    field: Field
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.field.q:
            raise ValueError("table length must equal q")

    @classmethod
    def from_callable(cls, field, fn):
        return cls(field, np.array([fn(x) for x in range(field.q)], dtype=np.int64))

    @classmethod
    def from_nh(cls, field, params: NHParams):
        return cls(field, nh_table(field, params))


@dataclass(frozen=True)
class DifferentialSpectrum:
    """Sparse multiset {omega_i}; omega_0 is always materialised."""

    omega: dict
    uniformity: int
    locally_apn: bool

    def identities_hold(self, q):
        total = sum(self.omega.values())
        weighted = sum(i * w for i, w in self.omega.items())
        return total == q * (q - 1) and weighted == q * (q - 1)

    def to_json_dict(self):
        return {str(i): int(w) for i, w in sorted(self.omega.items())}

    @staticmethod
    def omega_from_json(d):
        return {int(i): int(w) for i, w in d.items()}


@dataclass(frozen=True)
class BoomerangSpectrum:
    """Sparse multiset {nu_i} over (a, b) in F_q* x F_q*."""

    nu: dict
    uniformity: int

    def identities_hold(self, q):
        return sum(self.nu.values()) == (q - 1) ** 2

    def to_json_dict(self):
        return {str(i): int(w) for i, w in sorted(self.nu.items())}


def _tally_to_sparse(tally):
    out = {0: int(tally[0]) if len(tally) else 0}
    for i, w in enumerate(tally):
        if i > 0 and w:
            out[i] = int(w)
    return out


# ---------------------------------------------------------------------------
# DDT
# ---------------------------------------------------------------------------


def derivative_row(table: FunctionTable, a):
    """D_a F(x) for every x, as a length-q array."""
    if a == 0:
        raise ValueError("a must be nonzero")
    f = table.field
    shifted = table.values[f.add_vec(f.elements(), a)]
    return f.sub_vec(shifted, table.values)


def ddt_entry(table: FunctionTable, a, b):
    """delta_F(a, b): preimage count of b under D_a F."""
    return int(np.count_nonzero(derivative_row(table, a) == b))


def _prime_subfield_mask(field: Field):
    # For extension fields the prime subfield is codes 0..p-1.  For a prime
    # field that set is everything, so the exclusion degenerates to {0}
    # (the value where the large delta of the x^r(1 + u eta) family lives).
    mask = np.zeros(field.q, dtype=bool)
    if field.n > 1:
        mask[: field.p] = True
    else:
        mask[0] = True
    return mask


def locally_apn_check(table: FunctionTable):
    """True iff max{delta(a, b): a != 0, b outside the prime subfield} == 2."""
    f = table.field
    sub = _prime_subfield_mask(f)
    best = 0
    for a in range(1, f.q):
        counts = np.bincount(derivative_row(table, a), minlength=f.q)
        counts[sub] = 0
        best = max(best, int(counts.max()))
        if best > 2:
            return False
    return best == 2


def _check_reduction(table: FunctionTable, reduction: NHParams):
    expected = nh_table(table.field, reduction)
    if not np.array_equal(expected, table.values):
        raise ConsistencyError("table does not match F_{r,u} for the given (r, u)")


def _locally_apn_from_row(field: Field, row_counts, r):
    """Locally-APN from the a = 1 row of an F_{r,u} table.

    delta(a, b) = row[s*b*a^-r] with s = +/-1, so the b-values outside the
    prime subfield correspond, per a, to row positions outside one line
    mu*F_p through 0 (mu = a^-r; the sign does not change the line).
    """
    if field.n == 1:
        masked = row_counts.copy()
        masked[0] = 0
        return int(masked.max()) == 2
    subfield = np.arange(field.p, dtype=np.int64)
    seen = set()
    overall = 0
    for a in range(1, field.q):
        mu = field.inv(field.pow(a, r))
        line_elems = field.mul_vec(np.int64(mu), subfield)
        key = int(line_elems[line_elems > 0].min())
        if key in seen:
            continue
        seen.add(key)
        line = np.zeros(field.q, dtype=bool)
        line[line_elems] = True
        masked = row_counts.copy()
        masked[line] = 0
        if int(masked.max()) > 2:
            return False
        overall = max(overall, int(masked.max()))
    return overall == 2


def differential_spectrum(table: FunctionTable, reduction: NHParams | None = None):
    """Full DDT aggregation, or the (q-1)-fold expansion of row a = 1.

    Both paths produce identical spectra for F_{r,u}: each row's count
    multiset is a b-relabelling of row 1 (relabelling depends on eta(a)
    and the parity of r but is always a bijection on b).
    """
    f = table.field
    q = f.q
    if reduction is not None:
        _check_reduction(table, reduction)
        row = np.bincount(derivative_row(table, 1), minlength=q)
        tally = np.bincount(row)
        omega = {i: int(w) * (q - 1) for i, w in enumerate(tally) if w and i > 0}
        omega[0] = int(tally[0]) * (q - 1)
        uniformity = int(row.max())
        return DifferentialSpectrum(
            omega=omega,
            uniformity=uniformity,
            locally_apn=_locally_apn_from_row(f, row, reduction.r),
        )

    tally = np.zeros(1, dtype=np.int64)
    sub = _prime_subfield_mask(f)
    best_outside = 0
    for a in range(1, q):
        counts = np.bincount(derivative_row(table, a), minlength=q)
        rt = np.bincount(counts)
        if len(rt) > len(tally):
            rt[: len(tally)] += tally
            tally = rt
        else:
            tally[: len(rt)] += rt
        outside = counts.copy()
        outside[sub] = 0
        best_outside = max(best_outside, int(outside.max()))
    omega = _tally_to_sparse(tally)
    uniformity = max(i for i, w in omega.items() if w) if any(omega.values()) else 0
    return DifferentialSpectrum(
        omega=omega, uniformity=uniformity, locally_apn=best_outside == 2
    )


# ---------------------------------------------------------------------------
# BCT
# ---------------------------------------------------------------------------


def bct_entry(table: FunctionTable, a, b):
    """beta_F(a, b) by O(q) preimage bucketing.

    (x, y) solves the system iff the pair (F(x), F(x+a)) equals
    (F(y)+b, F(y+a)+b); bucket the left pairs and look up the right ones.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    f = table.field
    q = f.q
    fa = table.values[f.add_vec(f.elements(), a)]
    keys = table.values * q + fa
    queries = f.add_vec(table.values, b) * q + f.add_vec(fa, b)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    left = np.searchsorted(sorted_keys, queries, side="left")
    right = np.searchsorted(sorted_keys, queries, side="right")
    return int((right - left).sum())


def bct_entry_bruteforce(table: FunctionTable, a, b):
    """beta_F(a, b) by direct O(q^2) pair enumeration (the oracle)."""
    if a == 0:
        raise ValueError("a must be nonzero")
    f = table.field
    fa = table.values[f.add_vec(f.elements(), a)]
    d1 = f.sub_vec(table.values[:, None], table.values[None, :])
    d2 = f.sub_vec(fa[:, None], fa[None, :])
    return int(np.count_nonzero((d1 == b) & (d2 == b)))


def boomerang_row(table: FunctionTable, a):
    """beta(a, b) for every b (b = 0 included), via one O(q^2) pass."""
    if a == 0:
        raise ValueError("a must be nonzero")
    f = table.field
    fa = table.values[f.add_vec(f.elements(), a)]
    d1 = f.sub_vec(table.values[:, None], table.values[None, :])
    d2 = f.sub_vec(fa[:, None], fa[None, :])
    agree = d1 == d2
    return np.bincount(d1[agree], minlength=f.q)


def boomerang_spectrum(table: FunctionTable, reduction: NHParams | None = None):
    """nu_i over (a, b) in F_q* x F_q*; reduced path expands row a = 1."""
    f = table.field
    q = f.q
    if reduction is not None:
        _check_reduction(table, reduction)
        row = boomerang_row(table, 1)
        tally = np.bincount(row[1:])
        nu = {i: int(w) * (q - 1) for i, w in enumerate(tally) if w}
        uniformity = int(row[1:].max())
        return BoomerangSpectrum(nu=nu, uniformity=uniformity)

    tally = np.zeros(1, dtype=np.int64)
    for a in range(1, q):
        row = boomerang_row(table, a)
        rt = np.bincount(row[1:])
        if len(rt) > len(tally):
            rt[: len(tally)] += tally
            tally = rt
        else:
            tally[: len(rt)] += rt
    nu = {i: int(w) for i, w in enumerate(tally) if w}
    uniformity = max(nu) if nu else 0
    return BoomerangSpectrum(nu=nu, uniformity=uniformity)


# ---------------------------------------------------------------------------
# closed forms for F_{2,1}
# ---------------------------------------------------------------------------


def cubic_character_sum(field: Field):
    """T = sum of eta((y+1)(y^2+1)) over F_q."""
    ys = field.elements()
    prod = field.mul_vec(
        field.add_vec(ys, 1), field.add_vec(field.mul_vec(ys, ys), 1)
    )
    return int(field.eta_vec(prod).astype(np.int64).sum())


def closed_form_spectrum_F21(field: Field):
    """The differential spectrum of F_{2,1} from the character sum T.

    All four class sizes are exact integer expressions in q, eta(2) and T;
    any non-exact division signals a computation bug upstream.
    """
    q = field.q
    if q % 4 != 3:
        raise UnsupportedFieldError("needs q = 3 (mod 4)")
    if q <= 7:
        raise UnsupportedFieldError("q <= 7: the (q+1)/4 class collides with 2")
    T = cubic_character_sum(field)
    eta2 = field.eta(field.embed(2))

    def exact(num, den):
        if num % den:
            raise ArithmeticError("non-exact division in the closed-form spectrum")
        return num // den

    omega0 = exact((q - 1) * (3 * q - 5 + (eta2 - 1) * T), 8)
    omega1 = exact((q - 1) * (2 * q - 2 + (1 - eta2) * T), 4)
    omega2 = exact((q - 1) * (q + 1 + (eta2 - 1) * T), 8)
    omega = {0: omega0}
    if omega1:
        omega[1] = omega1
    if omega2:
        omega[2] = omega2
    omega[(q + 1) // 4] = q - 1
    return DifferentialSpectrum(omega=omega, uniformity=(q + 1) // 4, locally_apn=True)


BOOMERANG_CLASSES = tuple(f"{i}{j},{k}{l}" for i in "01" for j in "01" for k in "01" for l in "01")


def boomerang_case_counts_F21(field: Field, b):
    """Per-class boomerang pair counts #A_{ij,kl}(b) for F_{2,1}, b != 0.

    Only the four classes {00,01}, {00,10}, {01,00}, {10,00} can be hit;
    each is 0/1 and is decided by a chain of two canonical square roots.
    """
    if b == 0:
        raise ValueError("b = 0 is outside the boomerang case analysis")
    if field.q % 4 != 3:
        raise UnsupportedFieldError("needs q = 3 (mod 4)")
    f = field
    inv2 = f.inv(f.embed(2))
    counts = {label: 0 for label in BOOMERANG_CLASSES}

    def chain(half, shift_sign):
        # first root s of `half`; then root t of 1 + shift_sign*2s; the
        # canonical root always carries eta = +1, matching the class shape.
        if f.eta(half) != 1:
            return 0
        s = f.sqrt(half)
        near = f.add(s, 1) if shift_sign > 0 else f.sub(s, 1)
        if f.eta(near) != 1:
            return 0
        inner = f.add(1, f.mul(f.embed(2), s)) if shift_sign > 0 else f.sub(1, f.mul(f.embed(2), s))
        if f.eta(inner) != 1:
            return 0
        t = f.sqrt(inner)
        far = f.sub(t, 1) if shift_sign > 0 else f.add(t, 1)
        return 1 if f.eta(far) == -1 else 0

    b_half = f.mul(b, inv2)
    neg_b_half = f.neg(b_half)
    counts["00,01"] = chain(b_half, -1)
    counts["00,10"] = chain(b_half, +1)
    counts["01,00"] = chain(neg_b_half, -1)
    counts["10,00"] = chain(neg_b_half, +1)
    return counts
