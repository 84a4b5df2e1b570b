"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines are printed even
without ``-s``).
"""
import random
import time

import pytest

import oracles
from pglregular import classify as cl
from pglregular import gf
from pglregular import projline as pl
from pglregular import regular as rg
from pglregular import search

DESK_QS = [2, 3, 4, 5, 7, 8, 9]


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, started):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail}; {time.perf_counter() - started:.2f}s)"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def F(q):
    return gf.field_of_order(q)


def test_criterion_1_field_product(report):
    t0 = time.perf_counter()
    qs = gf.prime_powers(64)
    bad = [q for q in qs if gf.nonzero_product(F(q)) != -F(q).one]
    elapsed = time.perf_counter() - t0
    report(1, "product of nonzero elements is -1", not bad and elapsed < 1.0,
           f"{len(qs)} fields, failures {bad}, limit 1s", t0)


def test_criterion_2_theorem_desk_scale(report, regular_sets):
    t0 = time.perf_counter()
    problems = []
    census = {}
    for q in DESK_QS:
        rep = search.verify_theorem(search.SearchConfig(F(q)))
        census[q] = rep.type_census
        allowed = {"Cyclic"} if q % 2 == 0 else {"Cyclic", "Dihedral"}
        if not rep.all_are_subgroups or rep.violations:
            problems.append(f"q={q}: violations")
        if not set(rep.type_census) <= allowed:
            problems.append(f"q={q}: census {rep.type_census}")
        if set(rep.conjugacy_class_count.values()) != {1}:
            problems.append(f"q={q}: classes {rep.conjugacy_class_count}")
    for q in (2, 3):
        for ident in (True, False):
            found = sorted(tuple(sorted(g.key for g in S)) for S in regular_sets(q, ident))
            naive = sorted(tuple(sorted(s)) for s in oracles.naive_regular_sets(q, ident))
            if found != naive:
                problems.append(f"q={q} identity={ident}: oracle mismatch")
    report(2, "regular sets with 1 are subgroups for q <= 9", not problems,
           f"census {census}; problems {problems}", t0)


def test_criterion_3_q11_exceptional(report):
    t0 = time.perf_counter()
    rep = search.verify_theorem(search.SearchConfig(F(11)))
    ok = (
        rep.all_are_subgroups
        and not rep.violations
        and rep.type_census.get("A4", 0) > 0
        and rep.conjugacy_class_count.get("A4") == 1
    )
    report(3, "q = 11 exhaustive run finds one class of regular A4", ok,
           f"census {rep.type_census}, classes {rep.conjugacy_class_count}", t0)


def test_criterion_4_constructive_witnesses(report):
    t0 = time.perf_counter()
    problems = []
    cyc_qs = gf.prime_powers(499)
    for q in cyc_qs:
        S = cl.construct_cyclic_regular(F(q))
        if not (rg.is_sharply_transitive(S) and len(S) == q + 1):
            problems.append(f"cyclic q={q}")
    cyc_time = time.perf_counter() - t0
    if cyc_time >= 30:
        problems.append(f"cyclic sweep took {cyc_time:.1f}s")
    for q in [q for q in gf.prime_powers(31) if q % 2]:
        S = cl.construct_dihedral_regular(F(q))
        if not rg.is_sharply_transitive(S) or cl.subgroup_type(S) != cl.SubgroupType("Dihedral", q + 1):
            problems.append(f"dihedral q={q}")
    for tag, q in (("A4", 11), ("S4", 23), ("A5", 59)):
        S = cl.construct_exceptional(F(q), tag, seed=0)
        if not rg.is_sharply_transitive(S) or cl.order_profile(S) != cl.PROFILES[tag]:
            problems.append(f"{tag} q={q}")
    report(4, "constructive cyclic, dihedral and exceptional witnesses", not problems,
           f"{len(cyc_qs)} cyclic fields in {cyc_time:.2f}s (limit 30s); problems {problems}", t0)


def _random_elem(K, rng):
    while True:
        try:
            return pl.GroupElem(K, pl.canon_key(K, *(rng.randrange(K.order) for _ in range(4))))
        except ValueError:
            pass


def test_criterion_5_lemma_suite(report, regular_sets):
    t0 = time.perf_counter()
    rng = random.Random(55)
    scanned = violations = 0
    for q in (2, 3, 4, 5, 7):
        K = F(q)
        sets = regular_sets(q, False)
        for S in sets:
            rep = rg.segre_scan(S)
            scanned += 1
            violations += len(rep.violations)
        with_id = regular_sets(q)
        for _ in range(100):
            T = rg.translate(rng.choice(with_id), _random_elem(K, rng))
            rg.is_sharply_transitive(T)
            rep = rg.segre_scan(T)
            scanned += 1
            violations += len(rep.violations)
    disagreements = 0
    pool = [(q, S) for q in (3, 4, 5, 7, 8, 9) for S in regular_sets(q)]
    for _ in range(1000):
        q, S = rng.choice(pool)
        K = S.spec
        quad = [next(g for g in S if g.key[pos] == 0) for pos in range(4)]
        lams = [K(rng.randrange(1, q)) for _ in quad]
        raw = [tuple(lam * e for e in g.entries) for lam, g in zip(lams, quad)]
        if rg.segre_check(*raw) != rg.segre_check(*quad):
            disagreements += 1
    report(5, "zero-pattern product identity", violations == 0 and disagreements == 0,
           f"{scanned} sets scanned, {violations} violations, 1000 rescalings, {disagreements} disagreements", t0)


def test_criterion_6_proof_trace(report, regular_sets):
    t0 = time.perf_counter()
    K = F(11)
    S = cl.construct_cyclic_regular(K)
    nonid = [g for g in S if not pl.is_identity(g)]
    bad = 0
    pairs = 0
    for g in nonid:
        for h in nonid:
            tr = rg.closure_witness(S, g, h)
            pairs += 1
            bad += not (pl.is_identity(tr.residual) and tr.k == pl.mul(g, h))
    c12_time = time.perf_counter() - t0
    small_pairs = 0
    for q in (2, 3, 4, 5, 7):
        for H in regular_sets(q):
            ms = [g for g in H if not pl.is_identity(g)]
            for g in ms:
                for h in ms:
                    tr = rg.closure_witness(H, g, h)
                    small_pairs += 1
                    bad += not (pl.is_identity(tr.residual) and tr.k == pl.mul(g, h))
    report(6, "closure witness gives residual 1 and k = g h", bad == 0 and c12_time < 1.0,
           f"C12: {pairs} pairs in {c12_time:.3f}s (limit 1s); q <= 7: {small_pairs} pairs; {bad} failures", t0)


def test_criterion_7_latin_equivalence(report):
    t0 = time.perf_counter()
    rng = random.Random(77)
    disagreements = positives = 0
    for q in (2, 3, 4, 5):
        K = F(q)
        G = pl.enumerate_group(K)
        for _ in range(500):
            S = rg.RegularSet.of(rng.sample(G, q + 1), K)
            latin = search.is_latin(search.latin_square(S))
            regular = rg.is_sharply_transitive(S)
            disagreements += latin != regular
            positives += regular
    report(7, "Latin square iff sharply transitive", disagreements == 0,
           f"2000 subsets, {positives} regular, {disagreements} disagreements", t0)


def test_criterion_8_structural_invariants(report):
    t0 = time.perf_counter()
    rng = random.Random(88)
    problems = []
    for q in DESK_QS:
        K = F(q)
        G = pl.enumerate_group(K)
        if len(G) != q**3 - q or len(set(G)) != len(G):
            problems.append(f"q={q}: order")
        partners = rng.sample(G, min(8, len(G)))
        for g in G:
            if pl.elem_canon(*g.entries) != g:
                problems.append(f"q={q}: canon {g!r}")
            lam = K(rng.randrange(1, q))
            if pl.elem_canon(*(lam * e for e in g.entries)) != g:
                problems.append(f"q={q}: rescale {g!r}")
            if not pl.is_identity(g) and len(pl.fixed_points(g)) > 2:
                problems.append(f"q={q}: fixed points {g!r}")
            if pl.is_fixed_point_free(g, "scan") != pl.is_fixed_point_free(g, "charpoly"):
                problems.append(f"q={q}: fpf {g!r}")
            pg = pl.permutation(g)
            for h in partners:
                gh = pl.permutation(pl.mul(g, h))
                ph = pl.permutation(h)
                if any(gh[x] != pg[ph[x]] for x in range(q + 1)):
                    problems.append(f"q={q}: action law {g!r} {h!r}")
    report(8, "group order, canonical form, fixed points, action law", not problems,
           f"q in {DESK_QS}; problems {problems[:3]}", t0)
