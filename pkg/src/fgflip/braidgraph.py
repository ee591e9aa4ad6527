"""Positive braid words, their coloured planar graphs, paths and partition functions.

Conventions.  Horizontal lines are numbered 1..m from the top.  The strip
between lines j and j+1 is cut into cells by the vertical edges of the
letters sigma_j; cell c of strip j is the face with id (j, c), counted from
the left.  Vertical edges point down, from a blue source on line j to a red
sink on line j+1.  A colouring assigns a vector (or None for an unspecified
padding face) to every cell of every strip 1..m-1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .skewspace import SkewSpace, SkewVector, vector_to_json, frac_str
from .triangle import build_triangle, se, ne


class NotMutable(ValueError):
    pass


# Words --------------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    m: int
    letters: tuple

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one strand")
        for i in self.letters:
            if not (isinstance(i, int) and 1 <= i <= self.m - 1):
                raise ValueError(f"letter sigma_{i} out of range for {self.m} strands")

    def __str__(self):
        return " ".join(f"s{i}" for i in self.letters) or "(empty)"

    @classmethod
    def parse(cls, text, m=None):
        """Parse 's1 s2 s1', '1,2,1' or '121' style words."""
        text = text.replace(",", " ").replace("s", " ").replace("σ", " ").split()
        if len(text) == 1 and len(text[0]) > 1:
            text = list(text[0])
        letters = tuple(int(x) for x in text)
        if m is None:
            m = max(letters, default=0) + 1
        return cls(m, letters)


def letters_commute(i, j):
    return abs(i - j) >= 2


def canonical_word(letters) -> tuple:
    """Lexicographically least word in the commutation class."""
    letters = list(letters)
    remaining = list(range(len(letters)))
    out = []
    while remaining:
        best = None
        for pos, t in enumerate(remaining):
            blocked = any(not letters_commute(letters[u], letters[t]) for u in remaining[:pos])
            if not blocked and (best is None or letters[t] < letters[remaining[best]]):
                best = pos
        out.append(letters[remaining.pop(best)])
    return tuple(out)


def make_adjacent(letters, positions, commute=letters_commute):
    """Reorder ``letters`` by commutations so that ``positions`` become consecutive.

    Returns (new_letters, permutation) with permutation[new_index] = old_index,
    or None when no such reordering exists.
    """
    positions = sorted(positions)
    lo, hi = positions[0], positions[-1]
    sel = set(positions)
    inside = [t for t in range(lo, hi + 1) if t not in sel]
    after = set()  # forced to stay after some earlier selected letter
    for t in inside:
        for u in range(lo, t):
            if (u in sel or u in after) and not commute(letters[u], letters[t]):
                after.add(t)
                break
    before = set()  # forced to stay before some later selected letter
    for t in reversed(inside):
        for u in range(t + 1, hi + 1):
            if (u in sel or u in before) and not commute(letters[u], letters[t]):
                before.add(t)
                break
    if after & before:
        return None
    left = [t for t in inside if t not in after]
    right = [t for t in inside if t in after]
    perm = list(range(lo)) + left + positions + right + list(range(hi + 1, len(letters)))
    return [letters[t] for t in perm], perm


# Graphs -------------------------------------------------------------------

class BraidGraph:
    """A braid graph together with a (possibly partial) colouring."""

    def __init__(self, word: BraidWord, labels=None, space: SkewSpace | None = None):
        self.word = word
        self.space = space
        counts = self.letter_counts()
        if labels is None:
            labels = {j: (None,) * (counts[j] + 1) for j in range(1, word.m)}
        labels = {j: tuple(v) for j, v in labels.items()}
        for j in range(1, word.m):
            if len(labels.get(j, ())) != counts[j] + 1:
                raise ValueError(f"strip {j} needs {counts[j] + 1} labels, got {len(labels.get(j, ()))}")
        self.labels = labels

    @property
    def m(self):
        return self.word.m

    @property
    def letters(self):
        return self.word.letters

    def letter_counts(self):
        counts = {j: 0 for j in range(1, self.word.m)}
        for i in self.word.letters:
            counts[i] += 1
        return counts

    def positions(self, j):
        """Word positions of the sigma_j letters, left to right."""
        return [t for t, i in enumerate(self.word.letters) if i == j]

    def faces(self):
        return [(j, c) for j in range(1, self.m) for c in range(len(self.labels[j]))]

    def label(self, face):
        j, c = face
        return self.labels[j][c]

    def key(self):
        lab = tuple((j, tuple(None if v is None else v.key() for v in self.labels[j])) for j in sorted(self.labels))
        return (self.m, canonical_word(self.letters), lab)

    def __eq__(self, other):
        return isinstance(other, BraidGraph) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"BraidGraph({self.word})"

    def with_word(self, letters, labels):
        return BraidGraph(BraidWord(self.m, tuple(letters)), labels, self.space)

    # structure -------------------------------------------------------------

    def structure(self):
        """Vertices, edges and faces of the planar graph.

        Letter t sits at x = t+1; boundary vertices sit at x = 0 and
        x = len(word)+1.
        """
        L = len(self.letters)
        verts = []
        for line in range(1, self.m + 1):
            verts.append({"id": f"L{line}", "line": line, "x": 0, "kind": "black"})
            verts.append({"id": f"R{line}", "line": line, "x": L + 1, "kind": "black"})
        edges = []
        for t, j in enumerate(self.letters):
            verts.append({"id": f"b{t}", "line": j, "x": t + 1, "kind": "blue"})
            verts.append({"id": f"r{t}", "line": j + 1, "x": t + 1, "kind": "red"})
            edges.append({"from": f"b{t}", "to": f"r{t}", "kind": "vertical"})
        for line in range(1, self.m + 1):
            on = sorted((v for v in verts if v["line"] == line), key=lambda v: v["x"])
            for a, b in zip(on, on[1:]):
                edges.append({"from": a["id"], "to": b["id"], "kind": "horizontal"})
        verts.sort(key=lambda v: (v["line"], v["x"]))
        return verts, edges

    def to_json(self):
        verts, edges = self.structure()
        faces = []
        for j, c in self.faces():
            v = self.label((j, c))
            faces.append({"id": [j, c], "strip": j, "cell": c, "label": None if v is None else vector_to_json(v)})
        return {"strands": self.m, "word": list(self.letters), "vertices": verts, "edges": edges, "faces": faces}


def graph_from_word(word: BraidWord, labels=None, space=None) -> BraidGraph:
    return BraidGraph(word, labels, space)


def _face_at(graph, j, x):
    """Cell of strip j containing horizontal position x (not on a wall)."""
    c = 0
    for t in graph.positions(j):
        if t + 1 < x:
            c += 1
    return (j, c)


def coloring_contributions(graph: BraidGraph) -> dict:
    """Oriented contributions (f, g) -> value read off the graph."""
    contrib = {}

    def add(f, g, val):
        contrib[(f, g)] = contrib.get((f, g), 0) + Fraction(val)

    for j in range(1, graph.m):
        for c in range(len(graph.labels[j]) - 1):
            add((j, c), (j, c + 1), 1)
    L = len(graph.letters)
    for line in range(2, graph.m):
        # vertices on this line, left to right: red ends of sigma_{line-1}, blue starts of sigma_line
        pts = [(0, "L")]
        for t, j in enumerate(graph.letters):
            if j == line - 1:
                pts.append((t + 1, "red"))
            elif j == line:
                pts.append((t + 1, "blue"))
        pts.append((L + 1, "R"))
        for (x0, k0), (x1, k1) in zip(pts, pts[1:]):
            mid = Fraction(x0 + x1, 2)
            lower = _face_at(graph, line, mid)
            upper = _face_at(graph, line - 1, mid)
            val = {
                ("blue", "red"): 1, ("red", "blue"): -1,
                ("L", "red"): Fraction(1, 2), ("red", "R"): Fraction(-1, 2),
                ("L", "blue"): Fraction(-1, 2), ("blue", "R"): Fraction(1, 2),
            }.get((k0, k1), 0)
            if val:
                add(lower, upper, val)
    return contrib


def coloring_violations(graph: BraidGraph, space: SkewSpace | None = None) -> list:
    """Pairs of labelled faces whose pairing disagrees with the graph."""
    space = space or graph.space
    contrib = coloring_contributions(graph)
    faces = [f for f in graph.faces() if graph.label(f) is not None]
    bad = []
    for f, g in itertools.combinations(faces, 2):
        want = contrib.get((f, g), 0) - contrib.get((g, f), 0)
        got = space.pair(graph.label(f), graph.label(g))
        if got != want:
            bad.append((f, g, got, want))
    return bad


def is_valid_coloring(graph, space=None) -> bool:
    return not coloring_violations(graph, space)


# Mutations -----------------------------------------------------------------

def _between(graph, lo, hi, j):
    return [t for t in range(lo + 1, hi) if graph.letters[t] == j]


def mutation_kind(graph: BraidGraph, face) -> str:
    """'braid_down', 'braid_up' or 'demazure'; raises NotMutable otherwise."""
    j, c = face
    pos = graph.positions(j)
    if not (1 <= c <= len(pos) - 1):
        raise NotMutable(f"face {face} is not bounded by two sigma_{j} walls")
    lo, hi = pos[c - 1], pos[c]
    up = _between(graph, lo, hi, j - 1) if j > 1 else []
    down = _between(graph, lo, hi, j + 1) if j < graph.m - 1 else []
    if len(down) == 1 and not up:
        return "braid_down"
    if len(up) == 1 and not down:
        return "braid_up"
    if not up and not down:
        if j in (1, graph.m - 1):
            return "demazure"
        raise NotMutable(f"face {face}: Demazure moves are only allowed on the outer strips")
    raise NotMutable(f"face {face}: {len(up)} sigma_{j-1} and {len(down)} sigma_{j+1} letters between its walls")


def is_mutable(graph, face) -> bool:
    try:
        mutation_kind(graph, face)
    except NotMutable:
        return False
    return True


def mutable_faces(graph):
    return [f for f in graph.faces() if is_mutable(graph, f) and graph.label(f) is not None]


def _add(a, b):
    if a is None or b is None:
        return None
    return a + b


def mutate(graph: BraidGraph, face) -> BraidGraph:
    """Apply the braid or Demazure move at ``face`` and mutate the labels."""
    kind = mutation_kind(graph, face)
    j, c = face
    v = graph.label(face)
    if v is None:
        raise NotMutable(f"face {face} carries no label")
    pos = graph.positions(j)
    lo, hi = pos[c - 1], pos[c]
    labels = {k: list(val) for k, val in graph.labels.items()}
    letters = list(graph.letters)
    if kind == "demazure":
        sel = [lo, hi]
    else:
        other = j + 1 if kind == "braid_down" else j - 1
        sel = [lo, _between(graph, lo, hi, other)[0], hi]
    res = make_adjacent(letters, sel)
    if res is None:
        raise NotMutable(f"face {face}: walls cannot be made adjacent")
    letters, perm = res
    start = perm.index(min(sel))  # the selected letters now form a block
    if kind == "demazure":
        letters[start:start + 2] = [j]
        labels[j][c - 1:c + 2] = [labels[j][c - 1], _add(labels[j][c + 1], v)]
    elif kind == "braid_down":
        # sigma_j sigma_{j+1} sigma_j -> sigma_{j+1} sigma_j sigma_{j+1}
        d = sum(1 for t in graph.positions(j + 1) if t < lo)
        v4, v3 = labels[j + 1][d], labels[j + 1][d + 1]
        letters[start:start + 3] = [j + 1, j, j + 1]
        labels[j][c - 1:c + 2] = [labels[j][c - 1], _add(labels[j][c + 1], v)]
        labels[j + 1][d:d + 2] = [_add(v4, v), -v, v3]
    else:
        # sigma_j sigma_{j-1} sigma_j -> sigma_{j-1} sigma_j sigma_{j-1}
        d = sum(1 for t in graph.positions(j - 1) if t < lo)
        v1, v2 = labels[j - 1][d], labels[j - 1][d + 1]
        v4, v3 = labels[j][c - 1], labels[j][c + 1]
        letters[start:start + 3] = [j - 1, j, j - 1]
        labels[j - 1][d:d + 2] = [_add(v1, v), -v, v2]
        labels[j][c - 1:c + 2] = [v4, _add(v3, v)]
    return graph.with_word(letters, labels)



def commute_letters(graph: BraidGraph, t: int) -> BraidGraph:
    """Swap letters t, t+1 when they commute; labels are unchanged."""
    letters = list(graph.letters)
    if not letters_commute(letters[t], letters[t + 1]):
        raise NotMutable(f"letters at {t} and {t + 1} do not commute")
    letters[t], letters[t + 1] = letters[t + 1], letters[t]
    return graph.with_word(letters, graph.labels)


# Merging and sub-graphs ------------------------------------------------------

def merge_labels(graph: BraidGraph, deleted_positions) -> BraidGraph:
    """Delete vertical edges (by word position) and sum the labels of merged faces."""
    deleted = set(deleted_positions)
    for t in deleted:
        if not 0 <= t < len(graph.letters):
            raise ValueError(f"no letter at position {t}")
    labels = {}
    for j in range(1, graph.m):
        pos = graph.positions(j)
        cells = list(graph.labels[j])
        out = [cells[0]]
        for k, t in enumerate(pos):
            if t in deleted:
                out[-1] = _add(out[-1], cells[k + 1])
            else:
                out.append(cells[k + 1])
        labels[j] = out
    letters = [i for t, i in enumerate(graph.letters) if t not in deleted]
    return graph.with_word(letters, labels)


def subgraph(graph: BraidGraph, a: int, b: int) -> BraidGraph:
    """The piece between horizontal lines a < b, renumbered from 1."""
    if not 1 <= a < b <= graph.m:
        raise ValueError(f"bad line range {a}, {b}")
    letters = tuple(i - a + 1 for i in graph.letters if a <= i < b)
    labels = {j - a + 1: graph.labels[j] for j in range(a, b)}
    return BraidGraph(BraidWord(b - a + 1, letters), labels, graph.space)


# Paths -----------------------------------------------------------------------

@dataclass(frozen=True)
class GraphPath:
    a: int
    b: int
    descents: tuple  # word position of the sigma_j letter used to go from line j to j+1
    u: SkewVector

    def key(self):
        return tuple(t for t in self.descents)


def enumerate_paths(graph: BraidGraph, a: int, b: int) -> list:
    """All directed paths from left boundary a to right boundary b, in lexical order.

    The order is lexicographic in the descent positions, so the path that goes
    down first is the smaller one.
    """
    if not 1 <= a < b <= graph.m:
        raise ValueError(f"need 1 <= a < b <= {graph.m}")
    pos = {j: graph.positions(j) for j in range(a, b)}
    out = []

    def rec(j, last, chosen, u):
        if j == b:
            out.append(GraphPath(a, b, tuple(chosen), u))
            return
        for k, t in enumerate(pos[j]):
            if t > last:
                cells = graph.labels[j][: k + 1]
                if any(x is None for x in cells):
                    raise ValueError(f"path crosses an unlabelled face in strip {j}")
                add = cells[0]
                for x in cells[1:]:
                    add = add + x
                rec(j + 1, t, chosen + [t], add if u is None else u + add)

    rec(a, -1, [], None)
    return out


def path_weight(graph: BraidGraph, path: GraphPath) -> SkewVector:
    """w_p: u_p plus every face lying entirely below line b."""
    w = path.u
    for j in range(path.b, graph.m):
        for x in graph.labels[j]:
            if x is None:
                raise ValueError("padding face below the path")
            w = w + x
    return w


@dataclass(frozen=True)
class FormSum:
    """Multiset of exponents, kept in canonical sorted order."""

    terms: tuple

    @classmethod
    def of(cls, vectors):
        vectors = list(vectors)
        return cls(tuple(sorted(vectors, key=_vec_sort_key)))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other):
        return FormSum.of(self.terms + other.terms)

    def to_json(self):
        return [vector_to_json(v) for v in self.terms]


def _vec_sort_key(v):
    return tuple((i, c.numerator, c.denominator) for i, c in v.key())


def partition_function(graph: BraidGraph, a: int, b: int) -> FormSum:
    return FormSum.of(p.u for p in enumerate_paths(graph, a, b))


# Standard graphs ---------------------------------------------------------------

def longest_word_E(N):
    """w_0 = w_n ... w_1 with w_k = sigma_1 ... sigma_k."""
    out = []
    for k in range(N - 1, 0, -1):
        out += list(range(1, k + 1))
    return tuple(out)


def longest_word_F(N):
    """w_0 = v_n ... v_1 with v_k = sigma_n ... sigma_{N-k}."""
    n = N - 1
    out = []
    for k in range(n, 0, -1):
        out += list(range(n, N - k - 1, -1))
    return tuple(out)


@lru_cache(maxsize=None)
def standard_graph(N: int, family: str) -> BraidGraph:
    tri = build_triangle(N)
    e = tri.e
    family = family.upper()
    if family == "E":
        word = longest_word_E(N)
        labels = {b: [e(N - b - c, b, c) for c in range(N - b + 1)] for b in range(1, N)}
    elif family == "F":
        word = longest_word_F(N)
        labels = {}
        for j in range(1, N):
            a = N - j
            labels[j] = [e(a, b, N - a - b) for b in range(N - a + 1)]
    else:
        raise ValueError("family must be E or F")
    return BraidGraph(BraidWord(N, word), labels, tri.space)


def standard_generator(N, family, r, s) -> FormSum:
    return partition_function(standard_graph(N, family), r, s)


def conditional_graph(N, family, a, b, keep=None, drop_first=False) -> BraidGraph:
    """Sub-graph between lines a, b with top-row verticals deleted.

    keep=j keeps only the j-th top-row vertical (1-indexed); drop_first
    deletes only the left-most one.
    """
    g = subgraph(standard_graph(N, family), a, b)
    top = g.positions(1)
    if keep is not None:
        if not 1 <= keep <= len(top):
            raise ValueError(f"top row has {len(top)} verticals")
        deleted = [t for k, t in enumerate(top, 1) if k != keep]
    elif drop_first:
        deleted = top[:1]
    else:
        deleted = []
    return merge_labels(g, deleted)


def conditional_generator(N, family, a, b, keep=None, drop_first=False) -> FormSum:
    g = conditional_graph(N, family, a, b, keep, drop_first)
    if drop_first and not g.positions(1):
        return FormSum(())
    return partition_function(g, 1, g.m)


# Snake matrices ----------------------------------------------------------------

@lru_cache(maxsize=None)
def snake_space(N) -> SkewSpace:
    """nabla_N extended by formal symbols sf_{s,k} pairing trivially."""
    tri = build_triangle(N)
    n = N - 1
    extra = [("sf", s, k) for s in range(1, n + 1) for k in range(s + 1)]
    entries = {}
    for i, row in enumerate(tri.space._adj):
        for j, val in row.items():
            if i < j:
                entries[(tri.space.labels[i], tri.space.labels[j])] = val
    return SkewSpace(list(tri.space.labels) + extra, entries, name=f"nabla_{N}+sf")


def _se_in(space, N, s, k):
    tri = build_triangle(N)
    return space.vector(se(tri, s, k).coeffs())


@dataclass
class SnakeMatrix:
    """Entries value[k][l] and weight[k][l]; k counts rows from the bottom."""

    n: int
    value: list
    weight: list

    @property
    def N(self):
        return self.n + 1

    def get(self, k, l):
        if 0 <= k <= self.n and 0 <= l <= self.n:
            return self.value[k][l]
        return 0

    def copy(self):
        return SnakeMatrix(self.n, [r[:] for r in self.value], [r[:] for r in self.weight])

    def rows_top_down(self):
        return [self.value[k] for k in range(self.n, -1, -1)]

    def path(self, i):
        """Vertices of path i in traversal order."""
        pts = [(k, l) for k in range(self.n + 1) for l in range(self.n + 1) if self.value[k][l] == i and not (k == 0 and l == 0)]
        return sorted(pts, key=lambda p: (p[1], -p[0]))

    def to_json(self):
        rows = []
        for k in range(self.n, -1, -1):
            rows.append([
                {"value": self.value[k][l], "weight": None if self.weight[k][l] is None else vector_to_json(self.weight[k][l])}
                for l in range(self.n + 1)
            ])
        return {"n": self.n, "rows_top_down": rows}


def _blank(n):
    value = [[0] * (n + 1) for _ in range(n + 1)]
    weight = [[None] * (n + 1) for _ in range(n + 1)]
    N = n + 1
    value[0][0] = N  # corner, continuing both borders
    for l in range(1, n + 1):
        value[0][l] = N - l
    for k in range(1, n + 1):
        value[k][0] = N - k
    return value, weight


def snake_doubled(n) -> SnakeMatrix:
    """P_n(2): entry N - max(k, l), weights se_{k,l} below the diagonal and sf_{l,l-k} above."""
    N = n + 1
    sp = snake_space(N)
    value, weight = _blank(n)
    for k in range(1, n + 1):
        for l in range(n + 1):
            value[k][l] = N - max(k, l)
            weight[k][l] = _se_in(sp, N, k, l) if l < k else sp.basis(("sf", l, l - k))
    return SnakeMatrix(n, value, weight)


def snake_final(n) -> SnakeMatrix:
    """P_n: entry max(0, N-k-l), weight se_{k+l,l} where a path passes."""
    N = n + 1
    sp = snake_space(N)
    value, weight = _blank(n)
    for k in range(1, n + 1):
        for l in range(n + 1):
            value[k][l] = max(0, N - k - l)
            if value[k][l]:
                weight[k][l] = _se_in(sp, N, k + l, l)
    return SnakeMatrix(n, value, weight)


def snake_move(P: SnakeMatrix, k, l):
    """Return (kind, new matrix) if (k, l) is an admissible corner, else None."""
    g = P.get
    i = g(k, l)
    if i <= 0 or not (1 <= k <= P.n and 1 <= l <= P.n):
        return None
    up, ur, left, right, down = g(k + 1, l), g(k + 1, l + 1), g(k, l - 1), g(k, l + 1), g(k - 1, l)
    Q = P.copy()
    if i >= 2 and (up, ur, left, right, down) == (i - 1, i - 2, i, i - 1, i) and k + 1 <= P.n:
        w1, z1, z2 = P.weight[k + 1][l], P.weight[k][l - 1], P.weight[k][l]
        Q.value[k][l] = i - 1
        Q.weight[k][l] = w1
        Q.weight[k + 1][l] = w1 + z2 - z1
        return "braid", Q
    if i == 1 and (up, ur, right, left, down, g(k - 1, l - 1)) == (0, 0, 0, 1, 1, 2):
        Q.value[k][l] = 0
        Q.weight[k][l] = None
        return "demazure", Q
    return None


def _types_ok(P: SnakeMatrix) -> bool:
    for k in range(P.n):
        for l in range(P.n):
            top = (P.get(k + 1, l), P.get(k + 1, l + 1))
            bot = (P.get(k, l), P.get(k, l + 1))
            i = bot[0]
            allowed = [
                ((i - 1, i - 1), (i, i - 1)),
                ((i, i - 1), (i, i - 1)),
                ((i - 1, i - 1), (i, i)),
                ((i, i - 1), (i, i)),
                ((i - 1, i - 2), (i, i - 1)),
                ((0, 0), (0, 0)),
            ]
            block = (top, bot)
            if block not in allowed:
                # zero rows clipped at 0 (e.g. i-1 = 0 followed by 0 rather than -1)
                clipped = [tuple(tuple(max(0, x) for x in row) for row in a) for a in allowed]
                if block not in clipped:
                    return False
    return True


def snake_reduce_doubled(n):
    """Greedy reduction of P_n(2); returns (schedule, final matrix, checks)."""
    P = snake_doubled(n)
    schedule = []
    guard = 10 * (n + 1) ** 3 + 10
    while True:
        step = None
        for k in range(P.n, 0, -1):
            for l in range(1, P.n + 1):
                res = snake_move(P, k, l)
                if res:
                    step = (k, l, res[0], res[1])
                    break
            if step:
                break
        if step is None:
            break
        k, l, kind, Q = step
        schedule.append((k, l, kind))
        P = Q
        if len(schedule) > guard:
            raise RuntimeError("snake reduction does not terminate")
    target = snake_final(n)
    checks = {
        "values_match": P.value == target.value,
        "weights_match": all(
            P.weight[k][l] == target.weight[k][l]
            for k in range(1, n + 1) for l in range(n + 1) if target.value[k][l]
        ),
        "shape_types_ok": _types_ok(P),
    }
    return schedule, P, checks


def snake_graph(P: SnakeMatrix) -> BraidGraph:
    """Braid graph of a weighted snake matrix.

    Row i has one cell per vertex of path i; the label of a cell is the
    weight difference with the previous vertex.  The last vertex lies on the
    bottom border and gives an unlabelled padding cell.
    """
    n, N = P.n, P.N
    paths = {i: P.path(i) for i in range(1, n + 1)}
    labels = {}
    for i, pts in paths.items():
        cells = []
        prev = None
        for (k, l) in pts:
            w = P.weight[k][l] if k > 0 else None
            if w is None:
                cells.append(None)
            else:
                cells.append(w if prev is None else w - prev)
            prev = w
        labels[i] = cells
    # walls: the right wall of cell c of row i (i >= 2) sits under cell d of row i-1,
    # where d is the index of the path i-1 vertex it is joined to.
    where = {}
    for i, pts in paths.items():
        for c, p in enumerate(pts):
            where[p] = (i, c)
    constraints = []  # (row, wall index, upper row wall index bounds)
    for i in range(2, n + 1):
        for c, (k, l) in enumerate(paths[i][:-1]):
            right = (k, l + 1)
            tgt = right if P.get(*right) != i else (k + 1, l + 1)
            ti, d = where[tgt]
            if ti != i - 1:
                raise ValueError(f"snake vertex {(k, l)} is not joined to path {i - 1}")
            constraints.append((i, c, d))
    # build the word: wall c of row i lies after wall d-1 and before wall d of row i-1
    nodes = [(i, c) for i in range(1, n + 1) for c in range(len(paths[i]) - 1)]
    succ = {x: set() for x in nodes}
    for i in range(1, n + 1):
        for c in range(len(paths[i]) - 2):
            succ[(i, c)].add((i, c + 1))
    for i, c, d in constraints:
        if d - 1 >= 0:
            succ[(i - 1, d - 1)].add((i, c))
        if d < len(paths[i - 1]) - 1:
            succ[(i, c)].add((i - 1, d))
    indeg = {x: 0 for x in nodes}
    for x in nodes:
        for y in succ[x]:
            indeg[y] += 1
    ready = sorted(x for x in nodes if indeg[x] == 0)
    order = []
    while ready:
        x = ready.pop(0)
        order.append(x)
        for y in sorted(succ[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
        ready.sort()
    if len(order) != len(nodes):
        raise ValueError("inconsistent wall constraints")
    word = BraidWord(N, tuple(i for i, _ in order))
    return BraidGraph(word, labels, snake_space(N))
