"""Finite fields GF(p^m) in a polynomial basis.

An element is a coefficient vector ``(c0, c1, ..., c_{m-1})`` (constant term
first) reduced modulo a monic irreducible polynomial of degree ``m``.  Every
element also has an integer *index* ``sum(c_i * p**i)``; the enumeration order
of :func:`elements` is increasing index, i.e. lexicographic on the coefficient
vector read from the top coefficient down (the constant term is the least
significant digit).  For ``m == 1`` the index is simply the residue mod ``p``.

Two arithmetic routes exist.  The polynomial route (``poly_*`` functions,
extended Euclid) works directly on coefficient vectors; the table route
(``FieldSpec.imul`` and friends) works on indices through discrete log/exp
tables, with a plain modular fast path for prime fields.  Tests hold the two
routes to identical results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    FieldMismatch,
    FieldTooLarge,
    NonPrimeCharacteristic,
    ReducibleModulus,
    ZeroInverse,
)

MAX_ORDER = 1 << 16

# add tables are materialised below this order; above it addition goes digitwise
_ADD_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m``, or None if ``q`` is not a prime power."""
    if q < 2:
        return None
    p = prime_factors(q)
    if len(p) != 1:
        return None
    p = p[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


def prime_powers(limit: int) -> list[int]:
    return [q for q in range(2, limit + 1) if prime_power(q) is not None]


# ---------------------------------------------------------------------------
# polynomials over GF(p): lists of ints, constant term first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    lead_inv = pow(b[-1], -1, p)
    quot = [0] * (len(a) - len(b) + 1)
    rem = list(a)
    for shift in range(len(a) - len(b), -1, -1):
        coef = rem[shift + len(b) - 1] * lead_inv % p
        quot[shift] = coef
        if coef:
            for i, bi in enumerate(b):
                rem[shift + i] = (rem[shift + i] - coef * bi) % p
    return _trim(quot), _trim(rem[: len(b) - 1])


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = _trim([c % p for c in modulus])
    m = len(f) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            _, r = poly_divmod(f, list(low) + [1], p)
            if not r:
                return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """A finite field GF(p^m) with a fixed modulus (monic, constant term first)."""

    p: int
    m: int
    modulus: tuple[int, ...]
    order: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "order", self.p**self.m)

    # aliases matching the usual vocabulary
    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return self.m

    @property
    def q(self) -> int:
        return self.order

    def __repr__(self):
        return f"GF({self.order})" if self.m == 1 else f"GF({self.p}^{self.m}; {self.modulus})"

    # -- index <-> coefficients -------------------------------------------

    @cached_property
    def _digits(self) -> list[tuple[int, ...]]:
        return [tuple(reversed(t)) for t in itertools.product(range(self.p), repeat=self.m)]

    def coeffs(self, index: int) -> tuple[int, ...]:
        if self.m == 1:
            return (index,)
        return self._digits[index]

    def index(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise DegreeMismatch(f"expected {self.m} coefficients, got {len(coeffs)}")
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    # -- polynomial route ---------------------------------------------------

    def poly_mul(self, a: int, b: int) -> int:
        prod = poly_mul(self.coeffs(a), self.coeffs(b), self.p)
        _, r = poly_divmod(prod, self.modulus, self.p)
        return self.index(r + [0] * (self.m - len(r)))

    def poly_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.poly_mul(result, base)
            base = self.poly_mul(base, base)
            e >>= 1
        return result

    def euclid_inv(self, a: int) -> int:
        """Inverse by the extended Euclidean algorithm on polynomials."""
        if a == 0:
            raise ZeroInverse("0 has no inverse")
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(self.coeffs(a)))
        s0, s1 = [], [1]
        while len(r1) > 1:
            qt, r = poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(qt, s1, p), p)
        # r1 is a nonzero constant
        c = pow(r1[0], -1, p)
        s = [x * c % p for x in s1]
        _, s = poly_divmod(s, self.modulus, p)
        return self.index(s + [0] * (self.m - len(s)))

    def power_inv(self, a: int) -> int:
        """Inverse as a**(q-2)."""
        if a == 0:
            raise ZeroInverse("0 has no inverse")
        return self.poly_pow(a, self.order - 2)

    # -- table route ------------------------------------------------------------

    @cached_property
    def generator(self) -> int:
        """Least index whose multiplicative order is q - 1."""
        q = self.order
        if q == 2:
            return 1
        factors = prime_factors(q - 1)
        for g in range(2 if self.m == 1 else self.p, q):
            if all(self.poly_pow(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element; modulus cannot be irreducible")

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        q = self.order
        g = self.generator
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        if self.m == 1:
            for i in range(q - 1):
                exp[i] = x
                x = x * g % q
        elif g == self.p:
            # multiplying by x is a shift plus one reduction step
            p, m = self.p, self.m
            top = [(-c) % p for c in self.modulus[:m]]
            cur = [1] + [0] * (m - 1)
            for i in range(q - 1):
                exp[i] = self.index(cur)
                hi = cur[-1]
                cur = [0] + cur[:-1]
                if hi:
                    cur = [(c + hi * t) % p for c, t in zip(cur, top)]
        else:
            for i in range(q - 1):
                exp[i] = x
                x = self.poly_mul(x, g)
        for i in range(q - 1):
            exp[i + q - 1] = exp[i]
            log[exp[i]] = i
        return exp, log

    @cached_property
    def _neg(self) -> list[int]:
        return [self.index([-c for c in self.coeffs(a)]) for a in range(self.order)]

    @cached_property
    def _add_table(self) -> list[list[int]] | None:
        if self.m == 1 or self.p == 2 or self.order > _ADD_TABLE_LIMIT:
            return None
        return [[self._add_digits(a, b) for b in range(self.order)] for a in range(self.order)]

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out, w = 0, 1
        for _ in range(self.m):
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def iadd(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self._add_table
        if t is not None:
            return t[a][b]
        return self._add_digits(a, b)

    def ineg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._neg[a]

    def isub(self, a: int, b: int) -> int:
        return self.iadd(a, self.ineg(b))

    def imul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[log[a] + log[b]]

    def iinv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no inverse")
        if self.m == 1:
            return pow(a, -1, self.p)
        exp, log = self._tables
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]

    def ipow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroInverse("0 has no inverse")
            return 1 if e == 0 else 0
        if self.m == 1:
            return pow(a, e, self.p)
        exp, log = self._tables
        return exp[log[a] * e % (self.order - 1)]

    def is_square(self, a: int) -> bool:
        """True for 0 and for the nonzero squares."""
        if a == 0 or self.p == 2:
            return True
        if self.m == 1:
            return pow(a, (self.p - 1) // 2, self.p) == 1
        return self._tables[1][a] % 2 == 0

    def abs_trace(self, a: int) -> int:
        """Absolute trace a + a^p + ... + a^(p^(m-1)), an element of the prime field."""
        t, x = 0, a
        for _ in range(self.m):
            t = self.iadd(t, x)
            x = self.ipow(x, self.p)
        return t

    @cached_property
    def vec(self) -> "VectorOps":
        return VectorOps(self)

    # -- element objects --------------------------------------------------------

    @cached_property
    def _elems(self) -> list["FieldElem"]:
        return [FieldElem(self, i) for i in range(self.order)]

    def __call__(self, value: int | Sequence[int]) -> "FieldElem":
        """Element from an index (int) or a coefficient sequence."""
        if isinstance(value, (int, np.integer)):
            if self.m == 1:
                return self._elems[int(value) % self.p]
            if not 0 <= value < self.order:
                raise DegreeMismatch(f"index {value} out of range for {self!r}")
            return self._elems[int(value)]
        return self._elems[self.index(list(value))]

    @property
    def zero(self) -> "FieldElem":
        return self._elems[0]

    @property
    def one(self) -> "FieldElem":
        return self._elems[1]


class VectorOps:
    """numpy versions of the table route, for bulk evaluation."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        q = spec.order
        exp, log = spec._tables
        self.exp = np.asarray(exp, dtype=np.int64)
        self.log = np.asarray(log, dtype=np.int64)
        inv = [0] + [spec.iinv(a) for a in range(1, q)]
        self.inv_table = np.asarray(inv, dtype=np.int64)
        if spec.m > 1 and spec.p != 2:
            t = spec._add_table
            if t is not None:
                self.add_table = np.asarray(t, dtype=np.int64)
            else:
                self.add_table = None
                self.weights = spec.p ** np.arange(spec.m, dtype=np.int64)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.spec.m == 1:
            return a * b % self.spec.p
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        s = self.spec
        if s.m == 1:
            return (a + b) % s.p
        if s.p == 2:
            return a ^ b
        if self.add_table is not None:
            return self.add_table[a, b]
        out = np.zeros(a.shape, dtype=np.int64)
        aa, bb = a.copy(), b.copy()
        for w in self.weights:
            out += ((aa % s.p + bb % s.p) % s.p) * w
            aa //= s.p
            bb //= s.p
        return out

    def inv(self, a: np.ndarray) -> np.ndarray:
        return self.inv_table[np.asarray(a, dtype=np.int64)]


class FieldElem:
    """An element of a :class:`FieldSpec`; immutable, compared structurally."""

    __slots__ = ("spec", "index")

    def __init__(self, spec: FieldSpec, index: int):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "index", index)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.index)

    def _other(self, other) -> "FieldElem":
        if isinstance(other, int):
            return self.spec._elems[other % self.spec.p]
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.spec is not self.spec and other.spec != self.spec:
            raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
        return other

    def __add__(self, other):
        other = self._other(other)
        return self.spec._elems[self.spec.iadd(self.index, other.index)]

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return self.spec._elems[self.spec.isub(self.index, other.index)]

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return self.spec._elems[self.spec.ineg(self.index)]

    def __mul__(self, other):
        other = self._other(other)
        return self.spec._elems[self.spec.imul(self.index, other.index)]

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        return self.spec._elems[self.spec.ipow(self.index, e)]

    def inverse(self) -> "FieldElem":
        return self.spec._elems[self.spec.iinv(self.index)]

    def __bool__(self):
        return self.index != 0

    def __int__(self):
        return self.index

    def __eq__(self, other):
        if isinstance(other, int):
            return self.index == other % self.spec.p
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.index == other.index and (self.spec is other.spec or self.spec == other.spec)

    def __hash__(self):
        return hash((self.spec, self.index))

    def __repr__(self):
        if self.spec.m == 1:
            return str(self.index)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}{mono}")
        return " + ".join(reversed(terms)) if terms else "0"


# ---------------------------------------------------------------------------
# public operations


def field_make(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^m).

    Without an explicit modulus the least monic irreducible polynomial of
    degree m is used, "least" meaning smallest index of its lower coefficients
    (same ordering as :func:`elements`).  For m = 1 the modulus is ``x``.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if m < 1:
        raise DegreeMismatch(f"degree must be >= 1, got {m}")
    if p**m > MAX_ORDER:
        raise FieldTooLarge(f"q = {p}^{m} exceeds the supported bound {MAX_ORDER}")
    if modulus is not None:
        mod = [int(c) % p for c in modulus]
        if len(mod) != m + 1 or mod[-1] != 1:
            raise DegreeMismatch(f"modulus must be monic of degree {m}: {list(modulus)}")
        if m > 1 and not is_irreducible(mod, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
        return FieldSpec(p, m, tuple(mod))
    if m == 1:
        return FieldSpec(p, 1, (0, 1))
    for low in itertools.product(range(p), repeat=m):
        cand = list(reversed(low)) + [1]
        if cand[0] and is_irreducible(cand, p):
            return FieldSpec(p, m, tuple(cand))
    raise AssertionError("irreducible polynomials exist in every degree")


def field_of_order(q: int) -> FieldSpec:
    pm = prime_power(q)
    if pm is None:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return field_make(*pm)


def _same(x: FieldElem, y: FieldElem) -> FieldSpec:
    if x.spec is not y.spec and x.spec != y.spec:
        raise FieldMismatch(f"{x.spec!r} vs {y.spec!r}")
    return x.spec


def add(x: FieldElem, y: FieldElem) -> FieldElem:
    s = _same(x, y)
    return s._elems[s.iadd(x.index, y.index)]


def sub(x: FieldElem, y: FieldElem) -> FieldElem:
    s = _same(x, y)
    return s._elems[s.isub(x.index, y.index)]


def neg(x: FieldElem) -> FieldElem:
    return -x


def mul(x: FieldElem, y: FieldElem) -> FieldElem:
    s = _same(x, y)
    return s._elems[s.imul(x.index, y.index)]


def inv(x: FieldElem, method: str = "table") -> FieldElem:
    """Multiplicative inverse; ``method`` is "table", "euclid" or "power"."""
    s = x.spec
    if method == "table":
        return s._elems[s.iinv(x.index)]
    if method == "euclid":
        return s._elems[s.euclid_inv(x.index)]
    if method == "power":
        return s._elems[s.power_inv(x.index)]
    raise ValueError(f"unknown method {method!r}")


def elements(spec: FieldSpec) -> list[FieldElem]:
    """All q elements in increasing index order."""
    return list(spec._elems)


def nonzero_product(spec: FieldSpec) -> FieldElem:
    """Product of every nonzero element of the field; always equals -1."""
    return reduce(mul, spec._elems[1:], spec.one)


# ---------------------------------------------------------------------------
# JSON


def field_to_json(spec: FieldSpec) -> dict:
    return {"p": spec.p, "m": spec.m, "modulus": list(spec.modulus)}


def field_from_json(data: dict) -> FieldSpec:
    return field_make(int(data["p"]), int(data.get("m", 1)), data.get("modulus"))


def elem_to_json(x: FieldElem) -> int | list[int]:
    return x.index if x.spec.m == 1 else list(x.coeffs)


def elem_from_json(spec: FieldSpec, value: int | Iterable[int]) -> FieldElem:
    if isinstance(value, int):
        if spec.m != 1:
            raise DegreeMismatch(f"expected a coefficient array for {spec!r}")
        return spec(value)
    return spec(list(value))
