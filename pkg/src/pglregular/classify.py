"""Recognition and construction of the regular subgroups of PGL_2(q).

The regular subgroups are: cyclic of order q+1, dihedral of order q+1
(q odd), and A4, S4, A5 for q = 11, 23, 59 respectively.  Recognition uses
element-order profiles; at these orders the profiles separate the five
types, so no general isomorphism test is needed.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from . import projline
from .errors import CapExceeded, EvenCharacteristicQ, NotASubgroup, UnsupportedPair
from .gf import FieldSpec, prime_factors
from .projline import GroupElem, enum_cap, inv_key, mul_key
from .regular import IDENTITY_KEY, RegularSet, is_sharply_transitive

CYCLIC, DIHEDRAL, A4, S4, A5, NOT_ON_LIST = "Cyclic", "Dihedral", "A4", "S4", "A5", "NotOnList"
TAGS = (CYCLIC, DIHEDRAL, A4, S4, A5, NOT_ON_LIST)

PROFILES = {
    A4: {1: 1, 2: 3, 3: 8},
    S4: {1: 1, 2: 9, 3: 8, 4: 6},
    A5: {1: 1, 2: 15, 3: 20, 5: 24},
}

EXCEPTIONAL_Q = {A4: 11, S4: 23, A5: 59}

# order of the second generator in the randomized search
_SECOND_GENERATOR_ORDER = {A4: 3, S4: 3, A5: 5}


@dataclass(frozen=True)
class SubgroupType:
    tag: str
    order: int

    def to_json(self) -> dict:
        return {"tag": self.tag, "order": self.order}


def element_order(g: GroupElem) -> int:
    spec = g.spec
    q = spec.order
    cap = q * (q * q - 1)
    x, n = g.key, 1
    while x != IDENTITY_KEY:
        x = mul_key(spec, x, g.key)
        n += 1
        if n > cap:  # pragma: no cover - impossible in a finite group
            raise AssertionError("element order exceeds |PGL_2(q)|")
    return n


def has_order(g: GroupElem, n: int) -> bool:
    """Exact order test by fast powering."""
    if projline.power(g, n).key != IDENTITY_KEY:
        return False
    return all(projline.power(g, n // r).key != IDENTITY_KEY for r in prime_factors(n))


def order_profile(H) -> dict[int, int]:
    return dict(sorted(Counter(element_order(g) for g in H).items()))


def _is_closed(H: RegularSet) -> bool:
    spec = H.spec
    keys = set(H.keys)
    if IDENTITY_KEY not in keys:
        return False
    return all(mul_key(spec, a, b) in keys for a in keys for b in keys)


def subgroup_type(H: RegularSet) -> SubgroupType:
    if not _is_closed(H):
        raise NotASubgroup("the set is not closed under multiplication")
    q = H.spec.order
    n = len(H)
    orders = {g: element_order(g) for g in H}
    profile = dict(Counter(orders.values()))
    if n == q + 1:
        if n in profile:
            return SubgroupType(CYCLIC, n)
        if q % 2 == 1:
            half = n // 2
            for r, o in orders.items():
                if o == half:
                    rotations = {projline.power(r, i) for i in range(half)}
                    if all(orders[g] == 2 for g in H if g not in rotations):
                        return SubgroupType(DIHEDRAL, n)
                    break
    for tag, prof in PROFILES.items():
        if profile == prof:
            return SubgroupType(tag, n)
    return SubgroupType(NOT_ON_LIST, n)


# ---------------------------------------------------------------------------
# constructions


def _cyclic_closure(g: GroupElem) -> list[GroupElem]:
    spec = g.spec
    out, x = [projline.identity(spec)], g.key
    while x != IDENTITY_KEY:
        out.append(GroupElem(spec, x))
        x = mul_key(spec, x, g.key)
    return out


def torus_generator(spec: FieldSpec) -> GroupElem:
    """Companion matrix (0 N; 1 T) of the least x^2 - T x - N giving order q+1.

    Quadratics x^2 + c1 x + c0 are tried in increasing ``c0 + q*c1``.
    """
    q = spec.order
    for c1 in range(q):
        for c0 in range(1, q):
            N, T = spec.ineg(c0), spec.ineg(c1)
            g = GroupElem(spec, projline.canon_key(spec, 0, N, 1, T))
            if projline.is_fixed_point_free(g) and has_order(g, q + 1):
                return g
    raise AssertionError("a nonsplit torus always exists")


def construct_cyclic_regular(spec: FieldSpec) -> RegularSet:
    S = RegularSet.of(_cyclic_closure(torus_generator(spec)), spec)
    if not is_sharply_transitive(S):  # pragma: no cover
        raise AssertionError("cyclic construction is not regular")
    return S


def construct_dihedral_regular(spec: FieldSpec) -> RegularSet:
    q = spec.order
    if q % 2 == 0:
        raise EvenCharacteristicQ(f"no dihedral regular subgroup for even q = {q}")
    r = torus_generator(spec)
    c = projline.mul(r, r)
    rotations = _cyclic_closure(c)
    rot_keys = {g.key for g in rotations}
    c_inv = inv_key(spec, c.key)
    for j in projline.iter_group(spec):
        jk = j.key
        if jk in rot_keys or mul_key(spec, jk, jk) != IDENTITY_KEY:
            continue
        if mul_key(spec, jk, c.key) != mul_key(spec, c_inv, jk):
            continue
        reflections = [GroupElem(spec, mul_key(spec, jk, x.key)) for x in rotations]
        if not all(projline.is_fixed_point_free(x) for x in reflections):
            continue
        S = RegularSet.of(rotations + reflections, spec)
        if is_sharply_transitive(S):
            return S
    raise AssertionError("no inverting involution found")  # pragma: no cover


def _random_elem(spec: FieldSpec, rng: random.Random) -> GroupElem:
    q = spec.order
    while True:
        a, b, c, d = (rng.randrange(q) for _ in range(4))
        try:
            return GroupElem(spec, projline.canon_key(spec, a, b, c, d))
        except ValueError:
            continue


def _random_fpf_of_order(spec: FieldSpec, n: int, rng: random.Random) -> GroupElem:
    while True:
        g = _random_elem(spec, rng)
        if projline.is_fixed_point_free(g) and has_order(g, n):
            return g


def generated_fpf_group(gens: Sequence[GroupElem], limit: int) -> list[GroupElem] | None:
    """Close ``gens`` under multiplication; None as soon as the group has
    more than ``limit`` elements or a non-identity element with a fixed point."""
    spec = gens[0].spec
    seen = {IDENTITY_KEY}
    frontier = [IDENTITY_KEY]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul_key(spec, x, g.key)
                if y in seen:
                    continue
                if not projline.is_fixed_point_free(GroupElem(spec, y)):
                    return None
                seen.add(y)
                if len(seen) > limit:
                    return None
                nxt.append(y)
        frontier = nxt
    return [GroupElem(spec, k) for k in seen]


def construct_exceptional(spec: FieldSpec, tag: str, seed: int = 0, max_tries: int = 100_000) -> RegularSet:
    """Regular A4 (q=11), S4 (q=23) or A5 (q=59) by seeded random generation.

    Draw a fixed-point-free involution and a fixed-point-free element of
    order 3 (order 5 for A5), close them up, and keep the first result of
    the right type.
    """
    q = spec.order
    if EXCEPTIONAL_Q.get(tag) != q:
        raise UnsupportedPair(f"({tag}, q={q}) is not one of (A4, 11), (S4, 23), (A5, 59)")
    rng = random.Random(seed)
    second = _SECOND_GENERATOR_ORDER[tag]
    for _ in range(max_tries):
        i = _random_fpf_of_order(spec, 2, rng)
        r = _random_fpf_of_order(spec, second, rng)
        group = generated_fpf_group([i, r], q + 1)
        if group is None or len(group) != q + 1:
            continue
        S = RegularSet.of(group, spec)
        if subgroup_type(S).tag == tag and is_sharply_transitive(S):
            return S
    raise RuntimeError(f"no {tag} found in {max_tries} attempts")  # pragma: no cover


def construct(spec: FieldSpec, kind: str, seed: int = 0) -> RegularSet:
    kind = kind.lower()
    if kind == "cyclic":
        return construct_cyclic_regular(spec)
    if kind == "dihedral":
        return construct_dihedral_regular(spec)
    tag = {"a4": A4, "s4": S4, "a5": A5}.get(kind)
    if tag is None:
        raise ValueError(f"unknown type {kind!r}")
    return construct_exceptional(spec, tag, seed)


# ---------------------------------------------------------------------------
# conjugacy


def generators(H: RegularSet) -> list[GroupElem]:
    """A small generating set: high-order members first, skipping any
    already in the span."""
    spec = H.spec
    gens: list[GroupElem] = []
    span = {IDENTITY_KEY}
    for g in sorted(H, key=lambda e: (-element_order(e), e.key)):
        if g.key in span:
            continue
        gens.append(g)
        span = _closure_keys(spec, gens)
        if len(span) == len(H):
            break
    return gens


def _closure_keys(spec: FieldSpec, gens: Sequence[GroupElem]) -> set:
    seen = {IDENTITY_KEY}
    frontier = [IDENTITY_KEY]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul_key(spec, x, g.key)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@dataclass
class ConjugacyClass:
    representative: RegularSet
    members: list[int]


def conjugacy_classes(spec: FieldSpec, subgroups: Sequence[RegularSet], cap: int | None = None) -> list[ConjugacyClass]:
    """Partition ``subgroups`` under conjugation by all of PGL_2(K).

    ``t H t^-1 == H'`` is tested through generators of H only: equal orders
    plus ``t x t^-1 in H'`` for each generator x.
    """
    cap = enum_cap() if cap is None else cap
    if spec.order > cap:
        raise CapExceeded(f"q = {spec.order} exceeds the enumeration cap {cap}")
    for H in subgroups:
        if not _is_closed(H):
            raise NotASubgroup("conjugacy classes are computed for subgroups only")
    keysets = [frozenset(H.keys) for H in subgroups]
    unassigned = list(range(len(subgroups)))
    classes: list[ConjugacyClass] = []
    group = None
    while unassigned:
        first = unassigned.pop(0)
        members = [first]
        H = subgroups[first]
        gens = [g.key for g in generators(H)]
        candidates = [i for i in unassigned if len(subgroups[i]) == len(H)]
        if candidates:
            if group is None:
                group = [g.key for g in projline.iter_group(spec)]
            for t in group:
                if not candidates:
                    break
                t_inv = inv_key(spec, t)
                images = [mul_key(spec, mul_key(spec, t, x), t_inv) for x in gens]
                hit = [i for i in candidates if all(y in keysets[i] for y in images)]
                for i in hit:
                    candidates.remove(i)
                    members.append(i)
        for i in members[1:]:
            unassigned.remove(i)
        members.sort()
        rep = min((subgroups[i] for i in members), key=lambda S: S.keys)
        classes.append(ConjugacyClass(rep, members))
    return classes
