import pytest

from fgflip import braidgraph as bg
from fgflip.triangle import build_triangle, ne, se


def E(N, *lab):
    return build_triangle(N).e(*lab)


def test_single_crossing():
    g = bg.graph_from_word(bg.BraidWord(2, (1,)))
    verts, edges = g.structure()
    assert sum(1 for e in edges if e["kind"] == "vertical") == 1
    assert g.faces() == [(1, 0), (1, 1)]


def test_word_parsing_and_bounds():
    assert bg.BraidWord.parse("s1 s2 s1").letters == (1, 2, 1)
    assert bg.BraidWord.parse("121").m == 3
    with pytest.raises(ValueError):
        bg.BraidWord(2, (2,))


def test_longest_words():
    assert bg.longest_word_E(4) == (1, 2, 3, 1, 2, 1)
    assert bg.longest_word_F(3) == (2, 1, 2)


def test_commutation_equivalent_words_same_graph():
    a = bg.graph_from_word(bg.BraidWord(4, (1, 3, 2)))
    b = bg.graph_from_word(bg.BraidWord(4, (3, 1, 2)))
    assert a == b
    c = bg.graph_from_word(bg.BraidWord(4, (1, 2, 3)))
    assert a != c


def test_standard_graph_rows():
    gE = bg.standard_graph(4, "E")
    assert list(gE.labels[1]) == [E(4, 3, 1, 0), E(4, 2, 1, 1), E(4, 1, 1, 2), E(4, 0, 1, 3)]
    gF = bg.standard_graph(4, "F")
    assert list(gF.labels[3]) == [E(4, 1, 0, 3), E(4, 1, 1, 2), E(4, 1, 2, 1), E(4, 1, 3, 0)]
    for N in range(2, 6):
        for fam in "EF":
            assert bg.is_valid_coloring(bg.standard_graph(N, fam))


def test_coloring_violation_detected():
    g = bg.standard_graph(3, "E")
    labels = {j: list(v) for j, v in g.labels.items()}
    labels[1][1] = labels[1][1] + labels[1][0]
    assert not bg.is_valid_coloring(g.with_word(g.letters, labels))


def test_demazure_on_s1s1():
    sp = build_triangle(3).space
    v1, v, v2 = sp.basis((3, 0, 0)), sp.basis((2, 1, 0)), sp.basis((1, 2, 0))
    g = bg.BraidGraph(bg.BraidWord(2, (1, 1)), {1: (v1, v, v2)}, sp)
    assert bg.mutation_kind(g, (1, 1)) == "demazure"
    h = bg.mutate(g, (1, 1))
    assert h.letters == (1,)
    assert h.labels[1] == (v1, v2 + v)


def test_braid_move_then_reverse():
    g = bg.standard_graph(3, "E")
    assert bg.mutable_faces(g) == [(1, 1)]
    h = bg.mutate(g, (1, 1))
    assert h.letters == (2, 1, 2)
    back = bg.mutate(h, (2, 1))
    assert bg.canonical_word(back.letters) == bg.canonical_word(g.letters)
    assert back != g  # same word, different labelling


def test_commutation_keeps_labels():
    g = bg.graph_from_word(bg.BraidWord(4, (1, 3)))
    h = bg.commute_letters(g, 0)
    assert h.labels == g.labels and h.letters == (3, 1)
    with pytest.raises(bg.NotMutable):
        bg.commute_letters(bg.graph_from_word(bg.BraidWord(3, (1, 2))), 0)


def test_not_mutable_faces():
    g = bg.standard_graph(3, "E")
    with pytest.raises(bg.NotMutable):
        bg.mutation_kind(g, (1, 0))


def test_merge_all_and_conditional():
    g = bg.standard_graph(3, "E")
    full = bg.merge_labels(g, range(len(g.letters)))
    assert full.letters == ()
    for j in g.labels:
        total = g.labels[j][0]
        for x in g.labels[j][1:]:
            total = total + x
        assert full.labels[j] == (total,)
    # keep only the second top-row vertical
    c = bg.conditional_graph(4, "E", 1, 3, keep=2)
    assert E(4, 3, 1, 0) + E(4, 2, 1, 1) in c.labels[1]
    d = bg.conditional_graph(4, "E", 1, 3, keep=1)
    assert d.labels[1][0] == E(4, 3, 1, 0)


def test_paths_and_order():
    g = bg.graph_from_word(bg.BraidWord(2, (1,)), {1: (E(2, 2, 0, 0), E(2, 1, 1, 0))})
    assert len(bg.enumerate_paths(g, 1, 2)) == 1
    ps = bg.enumerate_paths(bg.standard_graph(3, "E"), 1, 2)
    assert len(ps) == 2
    # the smaller path goes down first
    assert ps[0].descents < ps[1].descents
    assert ps[0].u == E(3, 2, 1, 0)


def test_standard_generators_N3():
    tri = build_triangle(3)
    Z = bg.standard_generator
    assert Z(3, "E", 2, 3) == bg.FormSum.of([se(tri, 1, 0)])
    assert Z(3, "E", 1, 2) == bg.FormSum.of([se(tri, 2, 0), se(tri, 2, 1)])
    assert Z(3, "E", 1, 3) == bg.FormSum.of([se(tri, 2, 0) + se(tri, 1, 0)])
    assert Z(3, "F", 2, 3) == bg.FormSum.of([ne(tri, 2, 0), ne(tri, 2, 1)])
    assert Z(3, "F", 1, 2) == bg.FormSum.of([ne(tri, 1, 0)])
    assert Z(3, "F", 1, 3) == bg.FormSum.of([ne(tri, 1, 0) + ne(tri, 2, 1)])


def test_path_weight_adds_faces_below():
    g = bg.standard_graph(3, "E")
    p = bg.enumerate_paths(g, 1, 2)[0]
    below = g.labels[2][0] + g.labels[2][1]
    assert bg.path_weight(g, p) == p.u + below


@pytest.mark.parametrize("n", range(1, 6))
def test_snake_reduction(n):
    schedule, P, checks = bg.snake_reduce_doubled(n)
    assert all(checks.values()), checks
    assert P.value == bg.snake_final(n).value


def test_snake_P3_matches_figure():
    _, P, _ = bg.snake_reduce_doubled(3)
    e = lambda *l: E(4, *l)  # noqa: E731
    assert P.rows_top_down() == [[1, 0, 0, 0], [2, 1, 0, 0], [3, 2, 1, 0], [4, 3, 2, 1]]
    # rows k = 3, 2, 1 carry se_{30}; se_{20}, se_{31}; se_{10}, se_{21}, se_{32}
    sp = bg.snake_space(4)
    tr = lambda v: sp.vector(v.coeffs())  # noqa: E731
    assert P.weight[3][0] == tr(e(3, 1, 0))
    assert P.weight[2][:2] == [tr(e(2, 2, 0)), tr(e(3, 1, 0) + e(2, 1, 1))]
    assert P.weight[1][:3] == [tr(e(1, 3, 0)), tr(e(2, 2, 0) + e(1, 2, 1)), tr(e(3, 1, 0) + e(2, 1, 1) + e(1, 1, 2))]
    D = bg.snake_doubled(3)
    assert D.rows_top_down()[:3] == [[1, 1, 1, 1], [2, 2, 2, 1], [3, 3, 2, 1]]


def test_snake_graph_of_final_is_colored_graph():
    _, P, _ = bg.snake_reduce_doubled(3)
    g = bg.snake_graph(P)
    assert len(g.letters) == 6
