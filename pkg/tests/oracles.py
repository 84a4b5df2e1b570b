"""Independent reference computations used by the tests.

Nothing here imports the package: matrices over prime fields are plain
integer tuples, and abstract groups are permutation groups or Cayley tables.
"""

from __future__ import annotations

import itertools
from collections import Counter


# -- PGL_2(p) for a prime p, from scratch ----------------------------------


def pgl2_prime(p: int) -> list[tuple[int, int, int, int]]:
    """Canonical representatives (first nonzero entry 1) of PGL_2(p)."""
    out = set()
    for a, b, c, d in itertools.product(range(p), repeat=4):
        if (a * d - b * c) % p == 0:
            continue
        lead = a if a else b
        s = pow(lead, -1, p)
        out.add((a * s % p, b * s % p, c * s % p, d * s % p))
    return sorted(out)


def points_prime(p: int) -> list[tuple[int, int]]:
    return [(t, 1) for t in range(p)] + [(1, 0)]


def act_prime(p: int, g, pt) -> tuple[int, int]:
    a, b, c, d = g
    x, y = pt
    u, v = (a * x + b * y) % p, (c * x + d * y) % p
    if v:
        return (u * pow(v, -1, p) % p, 1)
    return (1, 0)


def is_regular_by_definition(p: int, subset) -> bool:
    """For every (x, y) count the members with g x = y; all counts must be 1."""
    pts = points_prime(p)
    for x in pts:
        for y in pts:
            if sum(1 for g in subset if act_prime(p, g, x) == y) != 1:
                return False
    return True


def naive_regular_sets(p: int, require_identity: bool) -> list[frozenset]:
    """Every (p+1)-subset of PGL_2(p) checked against the definition."""
    group = pgl2_prime(p)
    ident = (1, 0, 0, 1)
    found = []
    for subset in itertools.combinations(group, p + 1):
        if require_identity and ident not in subset:
            continue
        if is_regular_by_definition(p, subset):
            found.append(frozenset(subset))
    return found


# -- abstract groups ---------------------------------------------------------


def cayley_invariants(elements, mul) -> tuple:
    """(order profile, |center|, |derived subgroup|) of a finite group."""
    elements = list(elements)
    ident = next(e for e in elements if all(mul(e, x) == x for x in elements))

    def order(g):
        n, x = 1, g
        while x != ident:
            x = mul(x, g)
            n += 1
        return n

    def inverse(g):
        return next(x for x in elements if mul(g, x) == ident)

    profile = tuple(sorted(Counter(order(g) for g in elements).items()))
    center = sum(1 for z in elements if all(mul(z, x) == mul(x, z) for x in elements))
    comms = {mul(mul(inverse(a), inverse(b)), mul(a, b)) for a in elements for b in elements}
    derived = {ident} | comms
    while True:
        bigger = derived | {mul(a, b) for a in derived for b in derived}
        if bigger == derived:
            break
        derived = bigger
    return profile, center, len(derived)


def _compose(s, t):
    return tuple(s[i] for i in t)


def _even(perm) -> bool:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inv % 2 == 0


def reference_invariants(kind: str, n: int) -> tuple:
    """Invariants of the abstract group C_n, D_{n/2} (order n), A4, S4 or A5."""
    if kind == "Cyclic":
        return cayley_invariants(range(n), lambda a, b: (a + b) % n)
    if kind == "Dihedral":
        m = n // 2
        rot = tuple((i + 1) % m for i in range(m))
        ref = tuple((-i) % m for i in range(m))
        elems = {tuple(range(m))}
        frontier = list(elems)
        while frontier:
            nxt = []
            for x in frontier:
                for g in (rot, ref):
                    y = _compose(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        if m == 2:  # the permutation action of D_2 on 2 points is not faithful
            elems = {(a, b) for a in range(2) for b in range(2)}
            return cayley_invariants(elems, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2))
        return cayley_invariants(elems, _compose)
    k = {"A4": 4, "S4": 4, "A5": 5}[kind]
    perms = list(itertools.permutations(range(k)))
    if kind != "S4":
        perms = [p for p in perms if _even(p)]
    return cayley_invariants(perms, _compose)


# -- fields ------------------------------------------------------------------


def monic_irreducible_quadratics_gf2() -> list[tuple[int, int, int]]:
    """Trial division of x^2 + b x + c by x and x + 1 over GF(2)."""
    out = []
    for c, b in itertools.product(range(2), repeat=2):
        roots = [t for t in range(2) if (t * t + b * t + c) % 2 == 0]
        if not roots:
            out.append((c, b, 1))
    return out


def gf9_product_of_nonzero() -> tuple[int, int]:
    """Multiply the nonzero elements of Z_3[i] (i^2 = -1) as pairs (re, im)."""
    acc = (1, 0)
    for a, b in itertools.product(range(3), repeat=2):
        if (a, b) == (0, 0):
            continue
        acc = ((acc[0] * a - acc[1] * b) % 3, (acc[0] * b + acc[1] * a) % 3)
    return acc
