"""Construction of and arithmetic in F_{p^n} for odd p.

Elements are integer codes in [0, q): the polynomial sum(c_i * x^i) is
encoded as sum(c_i * p^i).  Prime fields use plain modular arithmetic;
extension fields use schoolbook polynomial arithmetic plus, when q is
small enough, dense log/antilog tables so that the bulk (numpy) paths
stay table-driven.

All tables are immutable after construction; a Field is safe to share
across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from sympy import factorint, isprime

ETA_TABLE_LIMIT = 1 << 22
LOG_TABLE_LIMIT = 1 << 20
CODE_LIMIT = 1 << 31  # keeps products inside int64 on the numpy paths


class FieldConstructionError(ValueError):
    """Invalid (p, n, modulus) for field construction."""


class NotPrimeError(FieldConstructionError):
    pass


class EvenCharacteristicError(FieldConstructionError):
    pass


class DegreeError(FieldConstructionError):
    pass


class FieldSizeError(FieldConstructionError):
    pass


class UnsupportedFieldError(ValueError):
    """Operation requires q = 3 (mod 4) (or another unmet field shape)."""


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over Z_p (coefficient tuples, low degree first)
# ---------------------------------------------------------------------------


def _poly_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_mulmod(a, b, mod, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(tuple(out), mod, p)


def _poly_rem(a, mod, p):
    n = len(mod) - 1
    a = list(a)
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            f = (c * inv_lead) % p
            for j, mj in enumerate(mod):
                a[i - n + j] = (a[i - n + j] - f * mj) % p
    return _poly_trim(tuple(a[:n]))


def _poly_powmod(a, e, mod, p):
    result = (1,)
    base = _poly_rem(a, mod, p) if len(a) >= len(mod) else _poly_trim(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd_zp(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        for i in range(len(r) - 1, len(b) - 2, -1):
            c = r[i]
            if c:
                f = (c * inv_lead) % p
                for j, bj in enumerate(b):
                    r[i - len(b) + 1 + j] = (r[i - len(b) + 1 + j] - f * bj) % p
        a, b = b, _poly_trim(tuple(r[: len(b) - 1]))
    return a


def is_irreducible_zp(coeffs, p):
    """Rabin test for a monic polynomial over Z_p (coeffs low degree first)."""
    coeffs = tuple(c % p for c in coeffs)
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != 1:
        raise ValueError("monic polynomial of positive degree expected")
    if n == 1:
        return True
    if coeffs[0] == 0:  # divisible by x
        return False
    x = (0, 1)
    frob = {}  # k -> x^(p^k) mod f
    h = x
    for k in range(1, n + 1):
        h = _poly_powmod(h, p, coeffs, p)
        frob[k] = h
    if _poly_trim(frob[n]) != x:
        return False
    for t in factorint(n):
        g = list(frob[n // t]) + [0, 0]
        g[1] = (g[1] - 1) % p
        if len(_poly_gcd_zp(tuple(g), coeffs, p)) != 1:
            # non-constant gcd with x^(p^(n/t)) - x means a small-degree factor
            return False
    return True


def lex_min_irreducible(p, n):
    """Smallest monic irreducible of degree n over Z_p, coefficients
    compared low-degree-first."""
    for cs in product(range(p), repeat=n):
        f = cs + (1,)
        if cs[0] != 0 and is_irreducible_zp(f, p):
            return f
    raise FieldConstructionError(f"no irreducible of degree {n} over Z_{p}")  # unreachable


# ---------------------------------------------------------------------------
# the field itself
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CijPartition:
    """Classification of every x not in {0, -1} by the signs (eta(x), eta(x+1)).

    Class index is 2*i + j where eta(x) = (-1)^i and eta(x+1) = (-1)^j;
    the two excluded codes carry index -1.
    """

    counts: dict
    classes: np.ndarray

    CLASS_LABELS = ("00", "01", "10", "11")

    def class_of(self, x):
        idx = int(self.classes[x])
        return None if idx < 0 else self.CLASS_LABELS[idx]

    def members(self, label):
        idx = self.CLASS_LABELS.index(label)
        return np.nonzero(self.classes == idx)[0]


class Field:
    """F_{p^n} for odd p, with eta / sqrt / C_ij machinery.

    Use :func:`build_field`; the constructor only wires precomputed parts.
    """

    def __init__(self, p, n, modulus, generator, eta_table, log_table, alog_table):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus  # None for prime fields, else monic coeff tuple
        self.generator = generator
        self.eta_table = eta_table
        self._log = log_table
        self._alog = alog_table  # doubled: alog[k] = g^(k mod q-1) for k < 2(q-1)
        self._pw = tuple(p**k for k in range(n))
        self._sqrt_table = None
        self._cij = None

    # -- basics ------------------------------------------------------------

    def __repr__(self):
        if self.n == 1:
            return f"Field(p={self.p})"
        return f"Field(p={self.p}, n={self.n}, modulus={self.modulus})"

    @property
    def is_prime_field(self):
        return self.n == 1

    def elements(self):
        return np.arange(self.q, dtype=np.int64)

    def embed(self, k):
        """Image of the rational integer k in the prime subfield."""
        return k % self.p

    def digits(self, x):
        return tuple((x // w) % self.p for w in self._pw)

    def from_digits(self, ds):
        return sum((d % self.p) * w for d, w in zip(ds, self._pw))

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def sub(self, a, b):
        if self.n == 1:
            return (a - b) % self.p
        return self.from_digits(x - y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a):
        if self.n == 1:
            return (-a) % self.p
        return self.from_digits(-x for x in self.digits(a))

    def mul(self, a, b):
        if self.n == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._alog[self._log[a] + self._log[b]])
        return self._mul_poly(a, b)

    def _mul_poly(self, a, b):
        prod = _poly_mulmod(self.digits(a), self.digits(b), self.modulus, self.p)
        return self.from_digits(prod + (0,) * (self.n - len(prod)))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return int(self._alog[(self.q - 1 - self._log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0")
            return 0
        e %= self.q - 1
        if self.n == 1:
            return pow(a, e, self.p)
        if self._log is not None:
            return int(self._alog[(self._log[a] * e) % (self.q - 1)])
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    # -- vector arithmetic (numpy int64 code arrays, broadcasting allowed) ---

    def add_vec(self, x, y):
        if self.n == 1:
            return (x + y) % self.p
        out = 0
        for w in self._pw:
            out = out + ((x // w + y // w) % self.p) * w
        return out

    def sub_vec(self, x, y):
        if self.n == 1:
            return (x - y) % self.p
        out = 0
        for w in self._pw:
            out = out + ((x // w - y // w) % self.p) * w
        return out

    def neg_vec(self, x):
        return self.sub_vec(0 * x, x) if self.n > 1 else (-x) % self.p

    def mul_vec(self, x, y):
        if self.n == 1:
            return (x * y) % self.p
        if self._log is None:
            raise UnsupportedFieldError("vector multiplication needs log tables (q too large)")
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = self._alog[self._log[x] + self._log[y]]
        return np.where((x != 0) & (y != 0), out, 0)

    def pow_vec(self, x, e):
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        if e < 0:
            raise ValueError("negative exponents are scalar-only")
        if self.n == 1:
            result = np.ones_like(x)
            base = x % self.p
            k = e % (self.p - 1)
            while k:
                if k & 1:
                    result = (result * base) % self.p
                base = (base * base) % self.p
                k >>= 1
            return np.where(x % self.p == 0, 0, result)
        if self._log is None:
            raise UnsupportedFieldError("vector powers need log tables (q too large)")
        out = self._alog[(self._log[x] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(x != 0, out, 0)

    # -- quadratic character, square roots, C_ij ------------------------------

    def eta(self, x):
        if self.eta_table is not None:
            return int(self.eta_table[x])
        if x == 0:
            return 0
        r = self.pow(x, (self.q - 1) // 2)
        return 1 if r == 1 else -1

    def eta_vec(self, x):
        if self.eta_table is not None:
            return self.eta_table[x]
        r = self.pow_vec(np.asarray(x, dtype=np.int64), (self.q - 1) // 2)
        return np.where(r == 0, 0, np.where(r == 1, 1, -1)).astype(np.int8)

    def sqrt(self, x):
        """Canonical root x^((q+1)/4); None when x is a non-square."""
        if self.q % 4 != 3:
            raise UnsupportedFieldError("canonical sqrt needs q = 3 (mod 4)")
        if x == 0:
            return 0
        if self.eta(x) == -1:
            return None
        return self.pow(x, (self.q + 1) // 4)

    @property
    def sqrt_table(self):
        """Dense canonical-root table; -1 marks non-squares."""
        if self.q % 4 != 3:
            raise UnsupportedFieldError("canonical sqrt needs q = 3 (mod 4)")
        if self._sqrt_table is None:
            codes = self.elements()
            roots = self.pow_vec(codes, (self.q + 1) // 4)
            table = np.where(self.eta_vec(codes) >= 0, roots, -1)
            table[0] = 0
            self._sqrt_table = table
        return self._sqrt_table

    def cij_partition(self):
        if self.q % 4 != 3:
            raise UnsupportedFieldError("C_ij partition needs q = 3 (mod 4)")
        if self._cij is None:
            codes = self.elements()
            e0 = self.eta_vec(codes)
            e1 = self.eta_vec(self.add_vec(codes, 1))
            idx = (2 * (e0 < 0) + (e1 < 0)).astype(np.int8)
            idx[e0 == 0] = -1
            idx[e1 == 0] = -1  # x = -1
            counts = {
                label: int(np.count_nonzero(idx == k))
                for k, label in enumerate(CijPartition.CLASS_LABELS)
            }
            self._cij = CijPartition(counts=counts, classes=idx)
        return self._cij


def _smallest_generator(field_like, p, n, q):
    factors = list(factorint(q - 1))
    cofactors = [(q - 1) // f for f in factors]
    for g in range(2, q):
        if all(field_like.pow(g, c) != 1 for c in cofactors):
            return g
    raise FieldConstructionError("no generator found")  # unreachable for a true field


def build_field(p, n=1, *, modulus=None, eta_limit=ETA_TABLE_LIMIT, log_limit=LOG_TABLE_LIMIT):
    """Construct F_{p^n} with a deterministic modulus and generator.

    The modulus (for n > 1) defaults to the lexicographically smallest
    monic irreducible of degree n over Z_p, coefficients compared
    low-degree-first; pass ``modulus`` (a monic coefficient tuple, low
    degree first) to override the representation.
    """
    if not isinstance(p, int) or not isprime(p):
        raise NotPrimeError(f"p = {p} is not prime")
    if p == 2:
        raise EvenCharacteristicError("characteristic 2 is out of scope")
    if not isinstance(n, int) or n < 1:
        raise DegreeError(f"extension degree n = {n} must be a positive integer")
    q = p**n
    if q > CODE_LIMIT:
        raise FieldSizeError(f"q = {q} exceeds the element-code limit {CODE_LIMIT}")

    if n == 1:
        if modulus is not None:
            raise FieldConstructionError("prime fields take no modulus")
        field = Field(p, 1, None, 0, None, None, None)
    else:
        if modulus is None:
            modulus = lex_min_irreducible(p, n)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise FieldConstructionError("modulus must be monic of degree n")
            if not is_irreducible_zp(modulus, p):
                raise FieldConstructionError("modulus is reducible over Z_p")
        field = Field(p, n, modulus, 0, None, None, None)

    g = _smallest_generator(field, p, n, q)
    field.generator = g

    if n > 1 and q <= log_limit:
        log = np.zeros(q, dtype=np.int64)
        alog = np.zeros(2 * (q - 1), dtype=np.int64)
        acc = 1
        for k in range(q - 1):
            alog[k] = acc
            alog[k + q - 1] = acc
            log[acc] = k
            acc = field._mul_poly(acc, g)
        if acc != 1:
            raise FieldConstructionError("generator order check failed")
        field._log = log
        field._alog = alog

    if q <= eta_limit:
        eta = np.full(q, -1, dtype=np.int8)
        eta[0] = 0
        if n == 1:
            x = np.arange(1, q, dtype=np.int64)
            eta[(x * x) % p] = 1
        elif field._log is not None:
            eta[field._alog[0 : q - 1 : 2]] = 1  # even powers of g are the squares
        else:
            for x in range(1, q):
                eta[field._mul_poly(x, x)] = 1
        field.eta_table = eta

    return field


@lru_cache(maxsize=128)
def cached_field(p, n=1):
    """Memoised build_field for the default representation."""
    return build_field(p, n)
