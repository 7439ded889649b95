"""Finite field arithmetic GF(q) for small q, and torus enumeration.

Elements of GF(p^e) are represented as integers in [0, q): the base-p
digits of the integer are the coefficients of the residue polynomial,
so for prime fields the representation is the usual residue.  All
fields are built from a fixed table of primitive polynomials (resp.
primitive roots for prime q), so generator matrices are bit-identical
across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

# Smallest primitive root mod p, for the primes we support.
_PRIMITIVE_ROOTS = {
    2: 1, 3: 2, 5: 2, 7: 3, 11: 2, 13: 2, 17: 3, 19: 2, 23: 5,
    29: 2, 31: 3, 37: 2, 41: 6, 43: 3, 47: 5, 53: 2, 59: 2, 61: 2,
}

# Primitive polynomial for GF(p^e), coefficients of x^0..x^e.  The class
# of x is then a generator of the multiplicative group; this is checked
# at construction time.
_PRIMITIVE_POLYS = {
    4: (2, 2, (1, 1, 1)),          # x^2 + x + 1
    8: (2, 3, (1, 1, 0, 1)),       # x^3 + x + 1
    9: (3, 2, (2, 2, 1)),          # x^2 + 2x + 2
    16: (2, 4, (1, 1, 0, 0, 1)),   # x^4 + x + 1
    25: (5, 2, (2, 4, 1)),         # x^2 + 4x + 2
    27: (3, 3, (1, 2, 0, 1)),      # x^3 + 2x + 1
    32: (2, 5, (1, 0, 1, 0, 0, 1)),  # x^5 + x^2 + 1
    49: (7, 2, (3, 6, 1)),         # x^2 + 6x + 3
    64: (2, 6, (1, 1, 0, 0, 0, 0, 1)),  # x^6 + x + 1
}

TORUS_BUDGET = 10**7


def _factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p^e, p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q and p < q:
            break
        if q % p:
            continue
        e = 0
        n = q
        while n % p == 0:
            n //= p
            e += 1
        return (p, e) if n == 1 else None
    return (q, 1)


def _digits(value: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(value % p)
        value //= p
    return out


def _undigits(coeffs: list[int], p: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * p + c
    return value


def _poly_mul_mod(a: int, b: int, p: int, e: int, poly: tuple[int, ...]) -> int:
    """Multiply field elements in digit encoding, reducing by the primitive polynomial."""
    da, db = _digits(a, p, e), _digits(b, p, e)
    prod = [0] * (2 * e - 1)
    for i, ca in enumerate(da):
        if not ca:
            continue
        for j, cb in enumerate(db):
            prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce: x^e = -(poly[0] + poly[1] x + ... + poly[e-1] x^{e-1})
    for deg in range(2 * e - 2, e - 1, -1):
        c = prod[deg]
        if not c:
            continue
        prod[deg] = 0
        for j in range(e):
            prod[deg - e + j] = (prod[deg - e + j] - c * poly[j]) % p
    return _undigits(prod[:e], p)


class FiniteField:
    """GF(q) with exp/log tables over a fixed generator.

    Tables are numpy arrays so vectorized code can gather from them
    directly; the values are immutable after construction.
    """

    def __init__(self, q: int):
        fact = _factor_prime_power(q)
        if fact is None:
            raise ValueError(f"q={q} is not a prime power")
        p, e = fact
        if not 2 <= q <= 64:
            raise ValueError(f"q={q} out of supported range [2, 64]")
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.primitive_poly = None
            self.generator = _PRIMITIVE_ROOTS[p]
            mul = lambda a, b: (a * b) % p
            add = lambda a, b: (a + b) % p
        else:
            self.primitive_poly = _PRIMITIVE_POLYS[q][2]
            self.generator = p  # the class of x, digit encoding (0, 1, 0, ...)
            poly = self.primitive_poly
            mul = lambda a, b: _poly_mul_mod(a, b, p, e, poly)
            add = lambda a, b: _undigits(
                [(x + y) % p for x, y in zip(_digits(a, p, e), _digits(b, p, e))], p)

        exp = np.zeros(2 * (q - 1), dtype=np.uint8)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            exp[i + q - 1] = x
            if log[x] >= 0:
                raise ValueError(f"generator for q={q} is not primitive")
            log[x] = i
            x = mul(x, self.generator)
        if x != 1:
            raise ValueError(f"generator for q={q} has wrong order")
        self.exp_table = exp
        self.log_table = log

        grid = np.arange(q)
        self.add_table = np.fromiter(
            (add(a, b) for a in range(q) for b in range(q)),
            dtype=np.uint8, count=q * q).reshape(q, q)
        self.mul_table = np.fromiter(
            (mul(a, b) for a in range(q) for b in range(q)),
            dtype=np.uint8, count=q * q).reshape(q, q)
        self.neg_table = np.empty(q, dtype=np.uint8)
        for a in grid:
            row = np.nonzero(self.add_table[a] == 0)[0]
            self.neg_table[a] = row[0]
        self.sub_table = self.add_table[:, self.neg_table]
        self.inv_table = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            self.inv_table[a] = exp[(q - 1 - log[a]) % (q - 1)]
        for arr in (self.exp_table, self.log_table, self.add_table,
                    self.mul_table, self.neg_table, self.sub_table,
                    self.inv_table):
            arr.setflags(write=False)

    # scalar operations ------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inverse(b))

    def power(self, a: int, k: int) -> int:
        """a^k with any integer k (negative k via the inverse)."""
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if k == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * k) % (self.q - 1)])

    @property
    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.uint8)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("FiniteField", self.q))


_FIELD_CACHE: dict[int, FiniteField] = {}


def make_field(q: int) -> FiniteField:
    """GF(q) with fixed tables; q must be a prime power in [2, 64]."""
    f = _FIELD_CACHE.get(q)
    if f is None:
        f = FiniteField(q)
        _FIELD_CACHE[q] = f
    return f


def evaluate_monomial(field: FiniteField, point, exponent) -> int:
    """Evaluate t^a at a torus point (all coordinates nonzero).

    Negative exponents are fine: on the torus every coordinate is
    invertible, and the value only depends on the exponent mod q-1.
    """
    qm1 = field.q - 1
    acc = 0
    for t, a in zip(point, exponent, strict=True):
        if t == 0:
            raise ValueError("monomial evaluation requires nonzero coordinates")
        acc = (acc + int(field.log_table[t]) * (int(a) % qm1)) % qm1
    return int(field.exp_table[acc])


@dataclass(frozen=True)
class TorusEnumeration:
    """All points of (F_q^*)^m in a fixed canonical order.

    Point i is (g^{e_1}, ..., g^{e_m}) where (e_1, ..., e_m) runs over
    [0, q-2]^m in lexicographic order (last coordinate fastest).
    ``exponents`` holds the e-vectors, ``points`` the field elements.
    """

    field: FiniteField
    m: int
    exponents: np.ndarray = dc_field(repr=False)
    points: np.ndarray = dc_field(repr=False)

    @property
    def n(self) -> int:
        return self.points.shape[0]


def torus_points(field: FiniteField, m: int) -> TorusEnumeration:
    """Enumerate (F_q^*)^m; raises if (q-1)^m exceeds the point budget."""
    if m < 1:
        raise ValueError("torus dimension must be >= 1")
    n = (field.q - 1) ** m
    if n > TORUS_BUDGET:
        raise ValueError(f"torus has {n} points, exceeding budget {TORUS_BUDGET}")
    qm1 = field.q - 1
    idx = np.arange(n)
    exponents = np.empty((n, m), dtype=np.int64)
    for j in range(m - 1, -1, -1):
        exponents[:, j] = idx % qm1
        idx //= qm1
    points = field.exp_table[exponents]
    exponents.setflags(write=False)
    points.setflags(write=False)
    return TorusEnumeration(field=field, m=m, exponents=exponents, points=points)
