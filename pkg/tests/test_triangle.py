from fractions import Fraction
from math import comb

import pytest

from fgflip.triangle import (
    build_triangle, borel_nondegeneracy, check_dl_characterization, cone, embed_into_VN,
    fundamental_weights, gfr, gfr_steps, index_less, index_set, ne, nw, se, special_vectors, sw, tau,
    verify_pairing_tables, weight_exponents,
)

H = Fraction(1, 2)


def test_examples_nabla2():
    sp = build_triangle(2).space
    e = sp.basis
    assert sp.pair(e((1, 1, 0)), e((0, 1, 1))) == 1
    # e020 = e_{a,b+1,c-1} for (a,b,c) = (0,1,1): the arrow starts at e011
    assert sp.pair(e((0, 1, 1)), e((0, 2, 0))) == H
    assert sp.pair(e((0, 2, 0)), e((0, 1, 1))) == -H


def test_node_count():
    assert len(cone(4)) == comb(6, 2) == 15
    with pytest.raises(ValueError):
        build_triangle(1)


def test_gfr_displayed_examples():
    tri = build_triangle(5)
    e = tri.e
    assert gfr(tri, (3, 0, 2), (3, 1, 1)) == e(3, 0, 2) + e(3, 1, 1)
    assert gfr(tri, (3, 2, 0), (1, 2, 2)) == e(3, 2, 0) + e(2, 2, 1) + e(1, 2, 2)
    assert gfr_steps(tri, (3, 0, 2), 1, 0) == e(3, 0, 2) + e(3, 1, 1)
    assert gfr_steps(tri, (2, 2, 1), 0, 0) == e(2, 2, 1)
    with pytest.raises(ValueError):
        gfr(tri, (3, 0, 2), (2, 2, 1))


def test_special_vector_identities():
    for N in range(2, 6):
        tri = build_triangle(N)
        for s in range(N + 1):
            assert sw(tri, s) == ne(tri, s)
            for k in range(s):
                # sw_{s,k} = ne_s - ne_{s,s-k-1}
                assert sw(tri, s, k) == ne(tri, s) - ne(tri, s, s - k - 1)
    tri = build_triangle(2)
    assert ne(tri, 1, 0) == tri.e(1, 0, 1)
    assert sw(tri, 1, 0) == tri.e(1, 1, 0)
    assert "ne_{1,0}" in special_vectors(2)


def test_fundamental_weights_small():
    tri = build_triangle(2)
    assert fundamental_weights(2)[0] == ne(tri, 1) / 2
    tri = build_triangle(3)
    assert fundamental_weights(3)[0] == (2 * ne(tri, 1) + ne(tri, 2)) / 3
    for N in range(2, 6):
        tri = build_triangle(N)
        ws = fundamental_weights(N)
        for s in range(1, N):
            for s2 in range(1, N):
                for k in range(s2):
                    assert tri.space.pair(ws[s - 1], ne(tri, s2, k)) == (-H if s == s2 else 0)


def test_pairing_table_examples():
    tri = build_triangle(2)
    assert tri.space.pair(ne(tri, 1, 0), se(tri, 1, 0)) == 1
    for N in range(2, 6):
        tri = build_triangle(N)
        for s in range(N + 1):
            for t in range(N + 1):
                assert tri.space.pair(ne(tri, s), ne(tri, t)) == 0
            for k in range(s):
                if 1 <= s < N:
                    assert tri.space.pair(ne(tri, s), ne(tri, s, k)) == -1


@pytest.mark.parametrize("N", range(2, 7))
def test_pairing_tables_exhaustive(N):
    rep = verify_pairing_tables(N)
    assert rep.ok, rep.mismatch
    assert set(rep.counts) == {"same_nilpotent", "same_cartan", "vanishing", "mixed_nilpotent", "mixed_cartan",
                               "mixed_cartan_opposite", "mixed_torus"}


def test_pairing_tables_catch_a_perturbation():
    tri = build_triangle(3)
    sp = tri.space
    i, j = sp.index[(2, 1, 0)], sp.index[(1, 1, 1)]
    old = sp._adj[i][j]
    try:
        sp._adj[i][j], sp._adj[j][i] = old + 1, -(old + 1)
        assert not verify_pairing_tables(3).ok
    finally:
        sp._adj[i][j], sp._adj[j][i] = old, -old


def test_borel_nondegeneracy():
    # frozen exact values
    assert borel_nondegeneracy(2) == -1
    assert borel_nondegeneracy(3) == Fraction(3, 4)
    for N in range(2, 7):
        assert borel_nondegeneracy(N) != 0


def test_embedding_rules():
    for N in range(2, 6):
        emb = embed_into_VN(N)
        assert emb.ok, emb.checks
        for i, v in emb.ne.items():
            assert v[("f", i)] == 1
        for s in range(1, N):
            assert emb.se[s] == -emb.space.basis(("f", N - s))


def test_index_order_matches_definition():
    for N in (3, 4, 5):
        idx = index_set(N)
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                assert index_less(idx[a], idx[b])


def test_weight_exponents():
    w = weight_exponents(2)
    tri = build_triangle(2)
    assert w["two_d_l"].vector == tri.e(1, 0, 1)
    for N in range(2, 7):
        assert weight_exponents(N)["forms_agree"]
        assert check_dl_characterization(N)


def test_nw_vectors_exist():
    tri = build_triangle(3)
    assert nw(tri, 1, 0) == tri.e(0, 2, 1)


def test_tau_small():
    assert [tau(n) for n in range(1, 6)] == [1, 4, 10, 20, 35]
