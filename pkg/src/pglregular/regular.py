"""Sharply transitive (regular) subsets of PGL_2(K).

Besides the regularity test this module carries two executable pieces of the
argument that a regular set containing 1 is a subgroup:

* :func:`segre_check` / :func:`segre_scan` evaluate the product identity
  ``b1 d2 a3 c4 == c1 a2 d3 b4`` for members with the zero pattern
  ``a1 = b2 = c3 = d4 = 0``;
* :func:`closure_witness` runs the closure construction for a pair (g, h)
  and records every intermediate in a :class:`ClosureTrace`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from . import gf, projline
from .errors import (
    EmptySet,
    IdentityArgument,
    MixedFields,
    NoIdentity,
    NotAMember,
    NotVerified,
    ZeroPatternViolation,
)
from .gf import FieldElem, FieldSpec
from .projline import GroupElem, ProjPoint, act_index, canon_key, inv_key, mul_key

IDENTITY_KEY = (1, 0, 0, 1)


@dataclass(eq=False)
class RegularSet:
    """A candidate sharply transitive set; ``verified`` is only set by
    :func:`is_sharply_transitive`."""

    spec: FieldSpec
    members: tuple[GroupElem, ...]
    verified: bool = False

    @classmethod
    def of(cls, members: Iterable[GroupElem], spec: FieldSpec | None = None) -> "RegularSet":
        members = list(members)
        if not members:
            if spec is None:
                raise EmptySet("a regular set needs at least one member")
            return cls(spec, ())
        spec = members[0].spec if spec is None else spec
        for g in members:
            if g.spec is not spec and g.spec != spec:
                raise MixedFields(f"{g!r} lives over {g.spec!r}, expected {spec!r}")
        return cls(spec, tuple(sorted(set(members))))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g):
        return g in self._member_set

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)

    @property
    def keys(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple(g.key for g in self.members)

    def __eq__(self, other):
        if not isinstance(other, RegularSet):
            return NotImplemented
        return self.spec == other.spec and self.keys == other.keys

    def __hash__(self):
        return hash(self.keys)

    def index_of(self, g: GroupElem) -> int:
        return self.members.index(g)


def _as_regular_set(S) -> RegularSet:
    if isinstance(S, RegularSet):
        return S
    return RegularSet.of(S)


def _require_verified(S: RegularSet):
    if not (isinstance(S, RegularSet) and S.verified):
        raise NotVerified("operation requires a set verified by is_sharply_transitive")


# ---------------------------------------------------------------------------
# regularity


def image_table(S: RegularSet) -> np.ndarray:
    """``T[i, x]`` = position of member i applied to point x (numpy, vectorised)."""
    spec = S.spec
    q = spec.order
    v = spec.vec
    keys = np.asarray(S.keys, dtype=np.int64).reshape(-1, 4)
    A, B, C, D = (keys[:, i : i + 1] for i in range(4))
    t = np.arange(q, dtype=np.int64)[None, :]
    num = v.add(v.mul(A, t), B)
    den = v.add(v.mul(C, t), D)
    finite = np.where(den == 0, q, v.mul(num, v.inv(den)))
    inf = np.where(C[:, 0] == 0, q, v.mul(A[:, 0], v.inv(C[:, 0])))
    return np.concatenate([finite, inf[:, None]], axis=1)


def _direct(S: RegularSet) -> bool:
    """Definition check: every (x, y) has exactly one member with gx = y."""
    q = S.spec.order
    table = image_table(S)
    counts = np.zeros((q + 1, q + 1), dtype=np.int64)
    cols = np.broadcast_to(np.arange(q + 1), table.shape)
    np.add.at(counts, (cols.ravel(), table.ravel()), 1)
    return bool(np.all(counts == 1))


def _pairwise(S: RegularSet) -> bool:
    """|S| = q+1 and h^-1 g is fixed-point-free for all distinct members."""
    if len(S) != S.spec.order + 1:
        return False
    ms = S.members
    for i, g in enumerate(ms):
        for h in ms[i + 1 :]:
            if not projline.is_fixed_point_free(projline.mul(projline.inv(h), g)):
                return False
    return True


def is_sharply_transitive(S, method: str = "direct") -> bool:
    """Regularity test; stamps ``S.verified`` when S is a :class:`RegularSet`.

    ``method="direct"`` counts solutions of gx = y over all point pairs,
    ``method="pairwise"`` checks that quotients of distinct members are
    fixed-point-free.  The two are equivalent.
    """
    R = _as_regular_set(S)
    if not R.members:
        raise EmptySet("empty set")
    if len(R) != R.spec.order + 1:
        ok = False
    elif method == "direct":
        ok = _direct(R)
    elif method == "pairwise":
        ok = _pairwise(R)
    else:
        raise ValueError(f"unknown method {method!r}")
    if isinstance(S, RegularSet):
        S.verified = ok
    return ok


def explain_irregular(S: RegularSet) -> str | None:
    """One-line reason why S is not regular, or None if it is."""
    n = S.spec.order + 1
    if len(S) != n:
        return f"{len(S)} members, a regular set needs q + 1 = {n}"
    table = image_table(S)
    for x in range(n):
        hits = Counter(table[:, x].tolist())
        for y in range(n):
            if hits.get(y, 0) != 1:
                X, Y = projline.point_at(S.spec, x), projline.point_at(S.spec, y)
                return f"{hits.get(y, 0)} members map {X!r} to {Y!r}"
    return None


def verified(members: Iterable[GroupElem], spec: FieldSpec | None = None) -> RegularSet:
    """Build a RegularSet and run the regularity test on it."""
    S = RegularSet.of(members, spec)
    is_sharply_transitive(S)
    return S


# ---------------------------------------------------------------------------
# transformations


def translate(S: RegularSet, t: GroupElem, side: str = "right") -> RegularSet:
    """S*t (``side="right"``) or t*S; regularity is preserved and re-stamped."""
    if side == "right":
        out = RegularSet.of((projline.mul(g, t) for g in S), S.spec)
    elif side == "left":
        out = RegularSet.of((projline.mul(t, g) for g in S), S.spec)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    out.verified = S.verified
    return out


def inverse_set(S: RegularSet) -> RegularSet:
    out = RegularSet.of((projline.inv(g) for g in S), S.spec)
    out.verified = S.verified
    return out


def conjugate_set(S: RegularSet, t: GroupElem) -> RegularSet:
    out = RegularSet.of((projline.conjugate(t, g) for g in S), S.spec)
    out.verified = S.verified
    return out


# ---------------------------------------------------------------------------
# the product identity


def _entries(g) -> tuple[FieldSpec, tuple[int, int, int, int]]:
    if isinstance(g, GroupElem):
        return g.spec, g.key
    a, b, c, d = g
    return a.spec, (a.index, b.index, c.index, d.index)


def segre_check(g1, g2, g3, g4) -> bool:
    """``b1 d2 a3 c4 == c1 a2 d3 b4`` for a1 = b2 = c3 = d4 = 0.

    Arguments are GroupElems or raw ``(a, b, c, d)`` FieldElem quadruples;
    the relation has degree one in each argument, so any scalar
    representative gives the same answer.
    """
    (s, k1), (_, k2), (_, k3), (_, k4) = map(_entries, (g1, g2, g3, g4))
    bad = [i for i, (k, pos) in enumerate(zip((k1, k2, k3, k4), range(4)), 1) if k[pos] != 0]
    if bad:
        raise ZeroPatternViolation(f"argument(s) {bad} lack the required zero entry")
    m = s.imul
    lhs = m(m(k1[1], k2[3]), m(k3[0], k4[2]))
    rhs = m(m(k1[2], k2[0]), m(k3[3], k4[1]))
    return lhs == rhs


@dataclass
class SegreReport:
    checked: int
    violations: list[tuple[GroupElem, GroupElem, GroupElem, GroupElem]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def segre_scan(S: RegularSet, require_verified: bool = True) -> SegreReport:
    """Check the identity on every quadruple of S with the zero pattern,
    coincident members included.  Pass ``require_verified=False`` to scan
    arbitrary sets for diagnostics."""
    if require_verified:
        _require_verified(S)
    slots = [[g for g in S if g.key[pos] == 0] for pos in range(4)]
    report = SegreReport(0)
    for g1 in slots[0]:
        for g2 in slots[1]:
            for g3 in slots[2]:
                for g4 in slots[3]:
                    report.checked += 1
                    if not segre_check(g1, g2, g3, g4):
                        report.violations.append((g1, g2, g3, g4))
    return report


# ---------------------------------------------------------------------------
# closure construction


@dataclass
class ClosureTrace:
    g: GroupElem
    h: GroupElem
    k: GroupElem
    u: GroupElem
    fixed_pair: tuple[ProjPoint, ProjPoint]
    frame: GroupElem
    residual: GroupElem
    k_table: list[GroupElem]
    witnesses: tuple[GroupElem, GroupElem, GroupElem, GroupElem]
    segre_holds: bool
    frame_residual: GroupElem
    abc: tuple[FieldElem, FieldElem, FieldElem]

    @property
    def closes(self) -> bool:
        return projline.is_identity(self.residual) and self.k == projline.mul(self.g, self.h)


def _frame(spec: FieldSpec, x: int, gx: int) -> GroupElem:
    """Element sending x -> (1:0), gx -> (0:1) and the first other point -> (1:1)."""
    z = next(i for i in range(spec.order + 1) if i not in (x, gx))

    def vec(i):
        return (1, 0) if i == spec.order else (i, 1)

    (x1, x2), (y1, y2), (z1, z2) = vec(x), vec(gx), vec(z)
    m, s = spec.imul, spec.isub
    # solve lam * X + mu * Y = Z by Cramer's rule
    det = s(m(x1, y2), m(x2, y1))
    di = spec.iinv(det)
    lam = m(s(m(z1, y2), m(z2, y1)), di)
    mu = m(s(m(x1, z2), m(x2, z1)), di)
    M = canon_key(spec, m(lam, x1), m(mu, y1), m(lam, x2), m(mu, y2))
    return GroupElem(spec, inv_key(spec, M))


def closure_witness(S: RegularSet, g: GroupElem, h: GroupElem) -> ClosureTrace:
    """Show g*h in S by the fixed-point construction.

    1. For every point x find the member k_x with k_x h^-1 x = g x.
    2. Some k occurs at two points x, y (at most q candidates, q+1 points);
       those are fixed points of g^-1 k h^-1.
    3. Change coordinates so x = (1:0) and g x = (0:1).
    4. Pick u = (1 t; 0 1) with h u (0:1) = (1:0).
    5. gu, ku, u, hu have the zero pattern of the product identity, which
       forces h k^-1 g to be unipotent upper triangular; with two fixed
       points it is the identity, i.e. k = g h.
    """
    _require_verified(S)
    spec = S.spec
    if projline.identity(spec) not in S:
        raise NoIdentity("the set does not contain the identity")
    for name, e in (("g", g), ("h", h)):
        if projline.is_identity(e):
            raise IdentityArgument(f"{name} must not be the identity")
        if e not in S:
            raise NotAMember(f"{name} = {e!r} is not a member of the set")

    q = spec.order
    n = q + 1
    lookup: dict[tuple[int, int], GroupElem] = {}
    for member in S:
        for i in range(n):
            lookup[(i, act_index(spec, member.key, i))] = member

    h_inv = inv_key(spec, h.key)
    k_table = []
    for x in range(n):
        k_x = lookup[(act_index(spec, h_inv, x), act_index(spec, g.key, x))]
        if k_x == g or k_x == h:
            raise AssertionError(f"k at point {x} equals g or h; S is not regular with 1")
        k_table.append(k_x)
    if len(set(k_table)) > q:
        raise AssertionError("more than q distinct k values")

    seen: dict[GroupElem, int] = {}
    for y, k_x in enumerate(k_table):
        if k_x in seen:
            k, x = k_x, seen[k_x]
            break
        seen[k_x] = y
    else:  # pragma: no cover - pigeonhole
        raise AssertionError("no k attained at two points")

    gx = act_index(spec, g.key, x)
    frame = _frame(spec, x, gx)
    f_inv = inv_key(spec, frame.key)

    def into_frame(e: GroupElem) -> tuple[int, int, int, int]:
        return mul_key(spec, mul_key(spec, frame.key, e.key), f_inv)

    g_f, h_f, k_f = into_frame(g), into_frame(h), into_frame(k)
    t = act_index(spec, inv_key(spec, h_f), q)
    if t == q:
        raise AssertionError("h fixes a point")
    u = GroupElem(spec, (1, t, 0, 1))

    gu, ku, hu = (GroupElem(spec, mul_key(spec, e, u.key)) for e in (g_f, k_f, h_f))
    holds = segre_check(gu, ku, u, hu)

    m, iv = spec.imul, spec.iinv
    a = m(ku.key[0], iv(ku.key[3]))
    b = m(gu.key[1], iv(gu.key[2]))
    c = m(hu.key[2], iv(hu.key[1]))

    frame_residual = GroupElem(spec, mul_key(spec, mul_key(spec, h_f, inv_key(spec, k_f)), g_f))
    residual = GroupElem(spec, mul_key(spec, mul_key(spec, h.key, inv_key(spec, k.key)), g.key))
    return ClosureTrace(
        g=g,
        h=h,
        k=k,
        u=u,
        fixed_pair=(projline.point_at(spec, x), projline.point_at(spec, y)),
        frame=frame,
        residual=residual,
        k_table=k_table,
        witnesses=(gu, ku, u, hu),
        segre_holds=holds,
        frame_residual=frame_residual,
        abc=(spec(a), spec(b), spec(c)),
    )


# ---------------------------------------------------------------------------
# subgroup structure


def is_subgroup(S: RegularSet) -> bool:
    """Identity present and closed under products.

    For a finite set closure suffices: the powers of any g cycle back to 1,
    so g^-1 is a positive power of g.
    """
    _require_verified(S)
    spec = S.spec
    keys = set(S.keys)
    if IDENTITY_KEY not in keys:
        return False
    return all(mul_key(spec, g, h) in keys for g in keys for h in keys)


def coset_decompose(S: RegularSet, side: str = "right") -> tuple[RegularSet, GroupElem]:
    """Return (H, s) with H = S s^-1 (so S = H s).

    s is the identity when S contains it, otherwise the least member.
    ``side="left"`` uses H = s^-1 S instead (S = s H).
    """
    _require_verified(S)
    ident = projline.identity(S.spec)
    s = ident if ident in S else S.members[0]
    s_inv = projline.inv(s)
    H = translate(S, s_inv, side)
    is_sharply_transitive(H)
    return H, s


# ---------------------------------------------------------------------------
# JSON


def to_json(S: RegularSet) -> dict:
    return {
        "field": gf.field_to_json(S.spec),
        "members": [projline.elem_to_json(g) for g in S],
    }


def from_json(data: dict, spec: FieldSpec | None = None) -> RegularSet:
    if "field" in data:
        spec = gf.field_from_json(data["field"])
    if spec is None:
        raise ValueError("no field given for the set")
    return RegularSet.of((projline.elem_from_json(spec, m) for m in data["members"]), spec)


def trace_to_json(S: RegularSet, tr: ClosureTrace) -> dict:
    e, p = projline.elem_to_json, projline.point_to_json
    return {
        "g": e(tr.g),
        "h": e(tr.h),
        "k_table": [{"x": p(projline.point_at(S.spec, i)), "k": e(k)} for i, k in enumerate(tr.k_table)],
        "k": e(tr.k),
        "fixed_pair": [p(pt) for pt in tr.fixed_pair],
        "frame": e(tr.frame),
        "u": e(tr.u),
        "witnesses": {"gu": e(tr.witnesses[0]), "ku": e(tr.witnesses[1]),
                      "u": e(tr.witnesses[2]), "hu": e(tr.witnesses[3])},
        "a_b_c": [gf.elem_to_json(v) for v in tr.abc],
        "segre_holds": tr.segre_holds,
        "frame_residual": e(tr.frame_residual),
        "residual": e(tr.residual),
        "gh": e(projline.mul(tr.g, tr.h)),
        "closes": tr.closes,
    }
