from fractions import Fraction

import pytest

from fgflip.skewspace import (
    SkewSpace, SpaceMismatch, conjugate, determinant, direct_sum, inject, radical, rank,
    space_from_json, space_to_json, vector_from_json, vector_to_json,
)
from fgflip.triangle import build_triangle, cross_nilp_check, heisenberg_double, restrict

H = Fraction(1, 2)


def test_pair_examples_in_nabla2():
    sp = build_triangle(2).space
    e = sp.basis
    assert sp.pair(e((1, 0, 1)), e((1, 1, 0))) == 1
    assert sp.pair(e((1, 1, 0)), e((1, 1, 0))) == 0
    assert sp.pair(e((2, 0, 0)), e((1, 0, 1))) == H


def test_antisymmetry_all_built_spaces():
    for N in range(2, 7):
        m = build_triangle(N).space.matrix()
        assert all(m[i][j] == -m[j][i] for i in range(len(m)) for j in range(len(m)))


def test_from_matrix_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        SkewSpace.from_matrix("ab", [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        SkewSpace("aa")


def test_radical_trivial_and_symplectic():
    zero = SkewSpace("ef")
    assert sorted(v.support()[0] for v in radical(zero)) == ["e", "f"]
    sym = SkewSpace("ef", {("e", "f"): 1})
    assert radical(sym) == []


def test_radical_of_nabla2_prime_is_a_line():
    # 3x3 pairing on e110, e101, e011: rank 2 by hand
    sp = restrict(build_triangle(2).space, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])
    rad = radical(sp)
    assert len(rad) == 1 and rank(sp) == 2
    v = rad[0]
    assert all(sp.pair(v, sp.basis(l)) == 0 for l in sp.labels)


def test_radical_complement_nondegenerate():
    # a rational complement to the radical carries a nondegenerate form
    for N in (2, 3, 4):
        sp = build_triangle(N).space
        rad = radical(sp)
        r = rank(sp)
        assert r + len(rad) == len(sp)
        assert r % 2 == 0


def test_direct_sum_untwisted_and_conjugate():
    V = build_triangle(2).space
    S = direct_sum([V, V])
    for a in V.labels:
        for b in V.labels:
            assert S.pair(inject(S, 0, V.basis(a)), inject(S, 1, V.basis(b))) == 0
            assert S.pair(inject(S, 1, V.basis(a)), inject(S, 1, V.basis(b))) == V.entry(a, b)
    C = conjugate(V)
    assert all(C.entry(a, b) == -V.entry(a, b) for a in V.labels for b in V.labels)


def test_direct_sum_cross_shape_checked():
    V = SkewSpace("ab", {("a", "b"): 1})
    with pytest.raises(ValueError):
        direct_sum([V, V], {(0, 1): [[1]]})
    with pytest.raises(ValueError):
        direct_sum([V, V], {(1, 0): [[0, 0], [0, 0]]})


def test_heisenberg_double_cross_table():
    for N in (2, 3, 4):
        assert cross_nilp_check(N)
    H2 = heisenberg_double(2)
    assert len(H2) == 6


def test_space_mismatch():
    a = SkewSpace("ab", {("a", "b"): 1})
    b = SkewSpace("ab", {("a", "b"): 1})
    with pytest.raises(SpaceMismatch):
        a.basis("a") + b.basis("a")


def test_json_round_trip():
    sp = build_triangle(3).space
    back = space_from_json(space_to_json(sp))
    assert back.matrix() == sp.matrix()
    v = sp.vector({(2, 1, 0): Fraction(3, 2), (0, 0, 3): -1})
    assert vector_from_json(sp, vector_to_json(v)) == v


def test_determinant_degenerate_control():
    sp = SkewSpace("abc", {("a", "b"): 1})
    assert determinant(sp.matrix()) == 0
    assert determinant([[0, 1], [-1, 0]]) == 1
