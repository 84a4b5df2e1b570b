import random

import pytest

from pglregular import classify, gf
from pglregular import projline as pl
from pglregular import regular as rg
from pglregular.errors import (
    EmptySet,
    IdentityArgument,
    MixedFields,
    NoIdentity,
    NotVerified,
    ZeroPatternViolation,
)


def F(q):
    return gf.field_of_order(q)


@pytest.fixture
def c3():
    K = F(2)
    A = pl.matrix(K, 0, 1, 1, 1)
    return rg.verified([pl.identity(K), A, pl.mul(A, A)]), A


def random_elem(K, rng):
    while True:
        try:
            return pl.GroupElem(K, pl.canon_key(K, *(rng.randrange(K.order) for _ in range(4))))
        except ValueError:
            pass


def test_examples_gf2(c3):
    S, _ = c3
    assert S.verified
    K = F(2)
    T = rg.RegularSet.of([pl.identity(K), pl.matrix(K, 1, 1, 0, 1), pl.matrix(K, 0, 1, 1, 0)])
    assert not rg.is_sharply_transitive(T)
    assert not T.verified
    assert "2 members map" in rg.explain_irregular(T)
    assert not rg.is_sharply_transitive(S.members[:2])


def test_errors():
    with pytest.raises(EmptySet):
        rg.is_sharply_transitive([])
    with pytest.raises(MixedFields):
        rg.RegularSet.of([pl.identity(F(2)), pl.identity(F(3))])


def test_methods_agree_on_random_subsets(regular_sets):
    rng = random.Random(2024)
    for q in (2, 3, 4, 5):
        K = F(q)
        G = pl.enumerate_group(K)
        cases = [list(S) for S in regular_sets(q, False)]
        for _ in range(1000):
            size = rng.randint(q - 1, q + 2)
            cases.append(rng.sample(G, max(size, 1)))
        positives = 0
        for members in cases:
            S = rg.RegularSet.of(members, K)
            direct = rg.is_sharply_transitive(S, "direct")
            pair = rg.is_sharply_transitive(S, "pairwise")
            assert direct == pair
            positives += direct
        assert positives >= len(regular_sets(q, False))


def test_segre_examples(c3):
    S, A = c3
    K = F(2)
    I = pl.identity(K)
    A2 = pl.mul(A, A)
    assert rg.segre_check(A, I, I, A2)
    with pytest.raises(ZeroPatternViolation):
        rg.segre_check(I, I, I, A2)
    rep = rg.segre_scan(S)
    assert rep.checked == 1 and rep.ok


def test_segre_scan_requires_verification(c3):
    S, _ = c3
    with pytest.raises(NotVerified):
        rg.segre_scan(rg.RegularSet.of(S.members))


def test_segre_violation_on_non_regular_quadruple():
    rng = random.Random(5)
    K = F(3)
    G = pl.enumerate_group(K)
    slots = [[g for g in G if g.key[pos] == 0] for pos in range(4)]
    for _ in range(1000):
        quad = [rng.choice(s) for s in slots]
        if not rg.segre_check(*quad):
            break
    else:
        pytest.fail("rejection sampling found no violating quadruple")
    S = rg.RegularSet.of(quad, K)
    assert not rg.is_sharply_transitive(S)
    rep = rg.segre_scan(S, require_verified=False)
    assert rep.violations


def test_segre_representative_independence(regular_sets):
    rng = random.Random(11)
    for q in (3, 4, 5, 7):
        K = F(q)
        for S in regular_sets(q, False)[:20]:
            quad = [next(g for g in S if g.key[pos] == 0) for pos in range(4)]
            base = rg.segre_check(*quad)
            assert base
            for _ in range(5):
                raw = []
                for g in quad:
                    lam = K(rng.randrange(1, q))
                    raw.append(tuple(lam * e for e in g.entries))
                assert rg.segre_check(*raw) == base


def test_segre_scan_translates(regular_sets):
    rng = random.Random(3)
    for q in (3, 4, 5):
        K = F(q)
        for S in regular_sets(q):
            t = random_elem(K, rng)
            St = rg.translate(S, t)
            assert rg.is_sharply_transitive(St)
            assert rg.segre_scan(St).ok


def test_closure_witness_gf2(c3):
    S, A = c3
    tr = rg.closure_witness(S, A, A)
    assert tr.k == pl.mul(A, A) and tr.k.key == (1, 1, 1, 0)
    assert pl.is_identity(tr.residual)
    assert tr.closes and tr.segre_holds


def test_closure_witness_errors(c3):
    S, A = c3
    K = F(2)
    with pytest.raises(IdentityArgument):
        rg.closure_witness(S, pl.identity(K), A)
    with pytest.raises(NotVerified):
        rg.closure_witness(rg.RegularSet.of(S.members), A, A)
    T = rg.translate(S, pl.matrix(K, 1, 1, 0, 1))
    assert rg.is_sharply_transitive(T)
    with pytest.raises(NoIdentity):
        rg.closure_witness(T, T.members[0], T.members[1])


def test_closure_witness_c12():
    K = F(11)
    S = classify.construct_cyclic_regular(K)
    nonid = [g for g in S if not pl.is_identity(g)]
    for g in nonid:
        for h in nonid:
            tr = rg.closure_witness(S, g, h)
            assert tr.k == pl.mul(g, h)
            assert pl.is_identity(tr.residual)
            assert pl.is_identity(tr.frame_residual)
            assert len(set(tr.k_table)) <= K.order
            a, b, c = tr.abc
            assert a == b * c
            gu, ku, u, hu = tr.witnesses
            assert (gu.key[0], ku.key[1], u.key[2], hu.key[3]) == (0, 0, 0, 0)
            x, y = tr.fixed_pair
            probe = pl.mul(pl.mul(pl.inv(g), tr.k), pl.inv(h))
            assert pl.act(probe, x) == x and pl.act(probe, y) == y


def test_frame_sends_points_where_claimed(regular_sets):
    for q in (4, 5, 7):
        K = F(q)
        for S in regular_sets(q)[:5]:
            ms = [g for g in S if not pl.is_identity(g)]
            tr = rg.closure_witness(S, ms[0], ms[-1])
            x = tr.fixed_pair[0]
            assert pl.act(tr.frame, x) == pl.point_at(K, K.order)
            assert pl.act(tr.frame, pl.act(tr.g, x)) == pl.point_at(K, 0)


def test_is_subgroup_examples(c3, regular_sets):
    S, _ = c3
    assert rg.is_subgroup(S)
    K = F(2)
    T = rg.translate(S, pl.matrix(K, 1, 1, 0, 1))
    rg.is_sharply_transitive(T)
    assert not rg.is_subgroup(T)
    for q in (2, 3, 4, 5, 7, 8, 9):
        assert all(rg.is_subgroup(S) for S in regular_sets(q))
    with pytest.raises(NotVerified):
        rg.is_subgroup(rg.RegularSet.of(S.members))


def test_coset_decompose(c3, regular_sets):
    S, _ = c3
    K = F(2)
    H, s = rg.coset_decompose(S)
    assert pl.is_identity(s) and H == S
    t = pl.matrix(K, 1, 1, 0, 1)
    T = rg.translate(S, t)
    H, s = rg.coset_decompose(T)
    assert H == S and rg.translate(H, s) == T
    for S in regular_sets(5, False):
        for side in ("right", "left"):
            H, s = rg.coset_decompose(S, side)
            assert H.verified and pl.identity(H.spec) in H and rg.is_subgroup(H)
            assert rg.translate(H, s, side) == S


def test_regularity_preserved(regular_sets):
    rng = random.Random(17)
    for q in (2, 3, 4, 5):
        K = F(q)
        for S in regular_sets(q, False):
            u = random_elem(K, rng)
            for T in (
                rg.inverse_set(S),
                rg.translate(S, u, "right"),
                rg.translate(S, u, "left"),
                rg.conjugate_set(S, u),
            ):
                assert rg.is_sharply_transitive(T, "pairwise")


def test_json_round_trip(regular_sets):
    for S in regular_sets(4, False)[:10]:
        T = rg.from_json(rg.to_json(S))
        assert T == S and not T.verified
