"""The projective line P^1(K) and the group PGL_2(K) acting on it.

Points and group elements store field *indices* (see :mod:`pglregular.gf`)
in canonical form, so equality and hashing are structural:

* a point is ``(t : 1)`` or ``(1 : 0)``; its position in :func:`points` is
  ``t`` for the finite points and ``q`` for infinity;
* a matrix ``(a b; c d)`` is scaled so that its first nonzero entry in the
  order a, b, c, d equals 1.

The deterministic element order is lexicographic on ``(a, b, c, d)`` indices.
"""

from __future__ import annotations

import os
from typing import Iterator, Sequence

from . import gf
from .errors import CapExceeded, FieldMismatch, SingularMatrix, ZeroVector
from .gf import FieldElem, FieldSpec

CAP_ENV = "PGLREGULAR_ENUM_CAP"
DEFAULT_ENUM_CAP = 64


def enum_cap() -> int:
    """Largest q for which whole-group enumeration is allowed."""
    return int(os.environ.get(CAP_ENV, DEFAULT_ENUM_CAP))


class ProjPoint:
    __slots__ = ("spec", "x_index", "y_index")

    def __init__(self, spec: FieldSpec, x_index: int, y_index: int):
        # callers guarantee canonical form; use point_canon otherwise
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "x_index", x_index)
        object.__setattr__(self, "y_index", y_index)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @property
    def x(self) -> FieldElem:
        return self.spec(self.x_index)

    @property
    def y(self) -> FieldElem:
        return self.spec(self.y_index)

    @property
    def index(self) -> int:
        """Position in :func:`points`."""
        return self.x_index if self.y_index else self.spec.order

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return (self.x_index, self.y_index) == (other.x_index, other.y_index) and self.spec == other.spec

    def __hash__(self):
        return hash((self.x_index, self.y_index))

    def __repr__(self):
        return f"({self.x!r}:{self.y!r})"


class GroupElem:
    """An element of PGL_2(K), stored as the canonical matrix (a b; c d)."""

    __slots__ = ("spec", "key")

    def __init__(self, spec: FieldSpec, key: tuple[int, int, int, int]):
        # key must already be canonical; use elem_canon otherwise
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "key", key)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElem is immutable")

    a = property(lambda self: self.spec(self.key[0]))
    b = property(lambda self: self.spec(self.key[1]))
    c = property(lambda self: self.spec(self.key[2]))
    d = property(lambda self: self.spec(self.key[3]))

    @property
    def entries(self) -> tuple[FieldElem, FieldElem, FieldElem, FieldElem]:
        return tuple(self.spec(i) for i in self.key)

    def __eq__(self, other):
        if not isinstance(other, GroupElem):
            return NotImplemented
        return self.key == other.key and (self.spec is other.spec or self.spec == other.spec)

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other: "GroupElem") -> bool:
        return self.key < other.key

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return mul(self, other)

    def __repr__(self):
        a, b, c, d = self.entries
        return f"[{a!r}, {b!r}; {c!r}, {d!r}]"


# ---------------------------------------------------------------------------
# index-level kernels (no object allocation)


def canon_key(spec: FieldSpec, a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    if spec.isub(spec.imul(a, d), spec.imul(b, c)) == 0:
        raise SingularMatrix(f"singular matrix {(a, b, c, d)} over {spec!r}")
    lead = a or b  # a nonsingular matrix has a or b nonzero
    if lead == 1:
        return (a, b, c, d)
    s = spec.iinv(lead)
    m = spec.imul
    return (m(a, s), m(b, s), m(c, s), m(d, s))


def mul_key(spec: FieldSpec, g: Sequence[int], h: Sequence[int]) -> tuple[int, int, int, int]:
    a1, b1, c1, d1 = g
    a2, b2, c2, d2 = h
    m, s = spec.imul, spec.iadd
    return canon_key(
        spec,
        s(m(a1, a2), m(b1, c2)),
        s(m(a1, b2), m(b1, d2)),
        s(m(c1, a2), m(d1, c2)),
        s(m(c1, b2), m(d1, d2)),
    )


def inv_key(spec: FieldSpec, g: Sequence[int]) -> tuple[int, int, int, int]:
    a, b, c, d = g
    n = spec.ineg
    return canon_key(spec, d, n(b), n(c), a)


def act_index(spec: FieldSpec, g: Sequence[int], point: int) -> int:
    """Image of the point with position ``point`` under ``g``, as a position."""
    a, b, c, d = g
    q = spec.order
    if point == q:
        num, den = a, c
    else:
        m, s = spec.imul, spec.iadd
        num, den = s(m(a, point), b), s(m(c, point), d)
    if den == 0:
        return q
    return spec.imul(num, spec.iinv(den))


def permutation(g: GroupElem) -> tuple[int, ...]:
    """``g`` as a permutation of point positions 0..q."""
    spec, key = g.spec, g.key
    return tuple(act_index(spec, key, i) for i in range(spec.order + 1))


def point_at(spec: FieldSpec, index: int) -> ProjPoint:
    return ProjPoint(spec, 1, 0) if index == spec.order else ProjPoint(spec, index, 1)


def _check(spec: FieldSpec, other: FieldSpec):
    if spec is not other and spec != other:
        raise FieldMismatch(f"{spec!r} vs {other!r}")


# ---------------------------------------------------------------------------
# public operations


def point_canon(x: FieldElem, y: FieldElem) -> ProjPoint:
    spec = x.spec
    _check(spec, y.spec)
    if y.index:
        return ProjPoint(spec, spec.imul(x.index, spec.iinv(y.index)), 1)
    if x.index:
        return ProjPoint(spec, 1, 0)
    raise ZeroVector("(0, 0) is not a point of the projective line")


def points(spec: FieldSpec) -> list[ProjPoint]:
    """The q+1 points: (t : 1) for t in field order, then (1 : 0)."""
    return [point_at(spec, i) for i in range(spec.order + 1)]


def elem_canon(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> GroupElem:
    spec = a.spec
    for e in (b, c, d):
        _check(spec, e.spec)
    return GroupElem(spec, canon_key(spec, a.index, b.index, c.index, d.index))


def matrix(spec: FieldSpec, a, b, c, d) -> GroupElem:
    """Canonical element from entries given as FieldElems or prime-field ints."""
    def idx(v):
        if isinstance(v, FieldElem):
            _check(spec, v.spec)
            return v.index
        return spec.index([v] + [0] * (spec.m - 1))
    return GroupElem(spec, canon_key(spec, idx(a), idx(b), idx(c), idx(d)))


def identity(spec: FieldSpec) -> GroupElem:
    return GroupElem(spec, (1, 0, 0, 1))


def is_identity(g: GroupElem) -> bool:
    return g.key == (1, 0, 0, 1)


def mul(g: GroupElem, h: GroupElem) -> GroupElem:
    _check(g.spec, h.spec)
    return GroupElem(g.spec, mul_key(g.spec, g.key, h.key))


def inv(g: GroupElem) -> GroupElem:
    return GroupElem(g.spec, inv_key(g.spec, g.key))


def power(g: GroupElem, n: int) -> GroupElem:
    spec = g.spec
    if n < 0:
        g, n = inv(g), -n
    result, base = (1, 0, 0, 1), g.key
    while n:
        if n & 1:
            result = mul_key(spec, result, base)
        base = mul_key(spec, base, base)
        n >>= 1
    return GroupElem(spec, result)


def conjugate(t: GroupElem, g: GroupElem) -> GroupElem:
    """t g t^-1."""
    spec = g.spec
    return GroupElem(spec, mul_key(spec, mul_key(spec, t.key, g.key), inv_key(spec, t.key)))


def act(g: GroupElem, pt: ProjPoint) -> ProjPoint:
    _check(g.spec, pt.spec)
    return point_at(g.spec, act_index(g.spec, g.key, pt.index))


def fixed_points(g: GroupElem) -> list[ProjPoint]:
    spec, key = g.spec, g.key
    return [point_at(spec, i) for i in range(spec.order + 1) if act_index(spec, key, i) == i]


def _has_eigenvalue(spec: FieldSpec, key: Sequence[int]) -> bool:
    """Whether x^2 - tr x + det has a root in K."""
    a, b, c, d = key
    tr = spec.iadd(a, d)
    det = spec.isub(spec.imul(a, d), spec.imul(b, c))
    if spec.p != 2:
        disc = spec.isub(spec.imul(tr, tr), spec.imul(spec.iadd(2 % spec.p, 2 % spec.p), det))
        return spec.is_square(disc)
    if tr == 0:
        return True  # x^2 = det always has a root; squaring is bijective
    # x = tr*y turns it into y^2 + y + det/tr^2, solvable iff that constant has trace 0
    z = spec.imul(det, spec.iinv(spec.imul(tr, tr)))
    return spec.abs_trace(z) == 0


def is_fixed_point_free(g: GroupElem, method: str = "charpoly") -> bool:
    """True iff ``g`` moves every point.

    ``"scan"`` evaluates g on all q+1 points; ``"charpoly"`` asks whether the
    characteristic polynomial has a root in K (an eigenvector is a fixed point).
    """
    if method == "scan":
        spec, key = g.spec, g.key
        return all(act_index(spec, key, i) != i for i in range(spec.order + 1))
    if method == "charpoly":
        return not _has_eigenvalue(g.spec, g.key)
    raise ValueError(f"unknown method {method!r}")


def group_order(spec: FieldSpec) -> int:
    q = spec.order
    return q**3 - q


def iter_group(spec: FieldSpec) -> Iterator[GroupElem]:
    """Every element once, in canonical (a, b, c, d) order; no cap check."""
    q = spec.order
    nz = range(1, q)
    for c in nz:
        for d in range(q):
            yield GroupElem(spec, (0, 1, c, d))
    m = spec.imul
    for b in range(q):
        for c in range(q):
            bc = m(b, c)
            for d in range(q):
                if d != bc:
                    yield GroupElem(spec, (1, b, c, d))


def enumerate_group(spec: FieldSpec, cap: int | None = None) -> list[GroupElem]:
    """All q^3 - q elements of PGL_2(K) in canonical order."""
    cap = enum_cap() if cap is None else cap
    if spec.order > cap:
        raise CapExceeded(f"q = {spec.order} exceeds the enumeration cap {cap} (set {CAP_ENV})")
    return list(iter_group(spec))


# ---------------------------------------------------------------------------
# JSON


def elem_to_json(g: GroupElem) -> list:
    return [gf.elem_to_json(e) for e in g.entries]


def elem_from_json(spec: FieldSpec, data: Sequence) -> GroupElem:
    if len(data) != 4:
        raise SingularMatrix(f"expected four entries, got {len(data)}")
    return elem_canon(*(gf.elem_from_json(spec, v) for v in data))


def point_to_json(pt: ProjPoint) -> list:
    return [gf.elem_to_json(pt.x), gf.elem_to_json(pt.y)]


def point_from_json(spec: FieldSpec, data: Sequence) -> ProjPoint:
    x, y = (gf.elem_from_json(spec, v) for v in data)
    return point_canon(x, y)
