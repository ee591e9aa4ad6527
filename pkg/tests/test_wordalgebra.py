from fractions import Fraction

import pytest

from fgflip import braidgraph as bg
from fgflip import wordalgebra as wa
from fgflip.skewspace import SkewSpace


@pytest.fixture
def plane():
    # (v, w) = 1, u pairs trivially with both
    sp = SkewSpace("vwu", {("v", "w"): 1})
    return sp, sp.basis("v"), sp.basis("w"), sp.basis("u")


def test_letters_and_commutation(plane):
    sp, v, w, u = plane
    assert wa.commutes(wa.dilog(v), wa.dilog(u))
    assert not wa.commutes(wa.dilog(v), wa.dilog(w))
    assert wa.letter_pairing(wa.dilog(v), wa.dilog(w)) == 1
    with pytest.raises(wa.WordError):
        wa.dilog(0 * v)
    with pytest.raises(wa.PreconditionError):
        wa.swap(wa.OperatorWord([wa.dilog(v), wa.dilog(w)]), 0)


def test_pentagon_round_trip(plane):
    sp, v, w, u = plane
    word = wa.OperatorWord([wa.dilog(v), wa.dilog(w)])
    fwd = wa.apply_pentagon(word, 0)
    assert list(fwd) == [wa.dilog(w), wa.dilog(v + w), wa.dilog(v)]
    assert tuple(wa.apply_pentagon(fwd, 0, "backward")) == tuple(word)
    with pytest.raises(wa.PreconditionError):
        wa.apply_pentagon(wa.OperatorWord([wa.dilog(w), wa.dilog(v)]), 0)


def test_pentagon_rank_one_triangle():
    # N = 2, letters e101 and e110 pair to 1
    from fgflip.triangle import build_triangle
    sp = build_triangle(2).space
    a, b = sp.basis((1, 0, 1)), sp.basis((1, 1, 0))
    out = wa.apply_pentagon(wa.OperatorWord([wa.dilog(a), wa.dilog(b)]), 0)
    assert out[1].vector == a + b


def test_gauss_push_is_adjoint(plane):
    sp, v, w, u = plane
    g = wa.gauss([(v, u)])
    word = wa.OperatorWord([g, wa.dilog(w)])
    pushed = wa.gauss_push(word, 0, "right")
    # Ad: w -> w + (u, w) v + (v, w) u = w + u
    assert pushed[0].vector == w + u and pushed[1] == g
    back = wa.gauss_push(pushed, 0, "left")
    assert tuple(back) == tuple(word)


def test_conjugate_formsum_examples(plane):
    sp, v, w, u = plane
    S = bg.FormSum.of([w, u])
    out = wa.conjugate_formsum_by_dilog(S, v)
    assert out == bg.FormSum.of([w, v + w, u])
    # and back: the reverse rule merges the +1 pair again
    assert wa.conjugate_formsum_by_dilog(out, v, "reverse") == S
    with pytest.raises(wa.UngroupedTerm):
        wa.conjugate_formsum_by_dilog(bg.FormSum.of([2 * w]), v)


def test_flip_factor_counts():
    assert [l.kind for l in wa.flip_factors(2, "F")] == ["phi"]
    assert len(wa.flip_factors(3, "F")) == 4
    for N in (2, 3, 4):
        F = wa.flip_factors(N, "F")
        assert len(F) == sum(k * (k + 1) // 2 for k in range(1, N))
        for name in ("F-ne-first", "F-se-first"):
            assert wa.trace_monoid_equal(F, wa.flip_factors(N, name))


def test_trace_monoid(plane):
    sp, v, w, u = plane
    a, b, c = wa.dilog(v), wa.dilog(w), wa.dilog(u)
    assert wa.trace_monoid_equal([a, c, b], [c, a, b])
    assert not wa.trace_monoid_equal([a, b], [b, a])
    assert wa.multiset_equal([a, b], [b, a])


def test_dilog_product_expansion_is_all_dilogs():
    gE = bg.standard_graph(3, "E")
    word = wa.dilog_product_expansion(bg.subgraph(gE, 1, 2), bg.subgraph(gE, 1, 2))
    assert all(l.kind == "phi" for l in word)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_braided_pentagon(N):
    t = wa.verify_braided_pentagon(N)
    assert t.ok and t.replay()
    assert len(t.steps) > 0


def test_braided_pentagon_rank_one_pairing():
    t = wa.verify_braided_pentagon(2)
    pents = [s for s in t.steps if s.rule == "pentagon"]
    assert [s.pairing for s in pents] == [1]


def test_pentagon_oracle_agrees():
    ok, states = wa.pentagon_oracle(2)
    assert ok and states == 2
    assert wa.pentagon_oracle(3)[0]


@pytest.mark.parametrize("N", [2, 3])
def test_K_and_mu_pentagons(N):
    assert wa.verify_K_pentagon(N).ok
    t = wa.verify_mu_pentagon(N)
    assert t.ok and t.replay()


@pytest.mark.parametrize("N", [2, 3, 4])
@pytest.mark.parametrize("fam", ["E", "F"])
def test_zmut_forward(N, fam):
    assert all(r.ok for r in wa.verify_zmut_all(N, fam))


def test_zmut_reverse_rule_fails():
    assert not all(r.ok for r in wa.verify_zmut_all(3, "E", direction="reverse"))


@pytest.mark.parametrize("N,i", [(3, 2), (4, 2), (4, 3)])
def test_serre_pairings(N, i):
    r = wa.verify_serre(N, i)
    assert r.ok
    assert set(r.pairings.values()) == {Fraction(1, 2)}
    with pytest.raises(ValueError):
        wa.verify_serre(N, 1)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_R_equals_F(N):
    rep = wa.verify_R_equals_F(N)
    assert rep.ok, rep.detail


@pytest.mark.parametrize("N", [2, 3, 4])
def test_decomposition_and_symmetry(N):
    assert wa.verify_rank_one_decomposition(N).ok
    assert wa.verify_symmetry_maps(N).ok


def test_self_dual():
    assert wa.self_dual_check(2)
    assert wa.self_dual_check(3)
