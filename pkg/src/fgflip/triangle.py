"""The triangle diagrams C_N and the vectors living on them.

Basis vectors e_{a,b,c} with a+b+c = N are labelled by integer triples.
Neighbouring vertices pair to 1, or to 1/2 when the index they share is 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import sympy

from .skewspace import SkewSpace, SkewVector, as_fraction, conjugate, determinant, direct_sum

# cyclic arrow patterns e_{abc} -> e_{abc} + delta, with the index that stays fixed
_ARROWS = (((1, -1, 0), 2), ((0, 1, -1), 0), ((-1, 0, 1), 1))

T = sympy.Symbol("t", positive=True)  # stands for 1 + |hbar|^{-1}


def cone(N):
    """Labels of C_N, ordered by a descending then b descending."""
    return [(a, b, N - a - b) for a in range(N, -1, -1) for b in range(N - a, -1, -1)]


@dataclass(frozen=True)
class TriangleSpace:
    N: int
    space: SkewSpace
    subsets: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.N - 1

    def e(self, a, b, c) -> SkewVector:
        return self.space.basis((a, b, c))

    def subspace_labels(self, name):
        return self.subsets[name]


@lru_cache(maxsize=None)
def build_triangle(N: int) -> TriangleSpace:
    if N < 2:
        raise ValueError("N must be at least 2")
    labels = cone(N)
    entries = {}
    for lab in labels:
        for delta, fixed in _ARROWS:
            tgt = tuple(x + d for x, d in zip(lab, delta))
            if min(tgt) < 0:
                continue
            entries[(lab, tgt)] = Fraction(1, 2) if lab[fixed] == 0 else Fraction(1)
    space = SkewSpace(labels, entries, name=f"nabla_{N}")
    n = N - 1
    subsets = {
        "C": labels,
        "C'": [l for l in labels if max(l) < N],
        "neC": [l for l in labels if 1 <= l[0] <= n],
        "wneC": [l for l in labels if 1 <= l[0] <= n and l[2] > 0],
        "seC": [l for l in labels if 1 <= l[1] <= n],
        "wseC": [l for l in labels if 1 <= l[1] <= n and l[0] > 0],
    }
    # B-/B+ and N-/N+ are spans of these label sets
    subsets["B-"] = subsets["neC"]
    subsets["N-"] = subsets["wneC"]
    subsets["B+"] = subsets["seC"]
    subsets["N+"] = subsets["wseC"]
    return TriangleSpace(N, space, subsets)


def pairing(N, v, w):
    return build_triangle(N).space.pair(v, w)


def gfr(tri: TriangleSpace, start, end) -> SkewVector:
    """Sum of consecutive basis vectors from start to end along one axis.

    start and end must share exactly one coordinate (or coincide).
    """
    N = tri.N
    start, end = tuple(start), tuple(end)
    for lab in (start, end):
        if len(lab) != 3 or min(lab) < 0 or sum(lab) != N:
            raise ValueError(f"{lab} is not in C_{N}")
    if start == end:
        return tri.space.basis(start)
    same = [i for i in range(3) if start[i] == end[i]]
    if len(same) != 1:
        raise ValueError(f"{start} and {end} do not lie on a common line")
    diff = [i for i in range(3) if i not in same]
    i, j = diff
    k = end[i] - start[i]
    step = [0, 0, 0]
    step[i] = 1 if k > 0 else -1
    step[j] = -step[i]
    out = {}
    for m in range(abs(k) + 1):
        out[tuple(x + m * d for x, d in zip(start, step))] = 1
    return tri.space.vector(out)


def gfr_steps(tri: TriangleSpace, start, steps: int, axis: int) -> SkewVector:
    """k-step variant: walk from start keeping coordinate ``axis`` fixed.

    The walk moves one unit from coordinate axis+2 to axis+1 (mod 3) per step,
    the orientation of the defining example with axis=0.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    end = list(start)
    end[(axis + 1) % 3] += steps
    end[(axis + 2) % 3] -= steps
    if min(end) < 0:
        raise ValueError("walk leaves the cone")
    return gfr(tri, start, tuple(end))


def _check_sk(N, s, k):
    if not (0 <= k <= s <= N):
        raise ValueError(f"need 0 <= k <= s <= N, got s={s}, k={k}")


def ne(tri, s, k=None):
    N = tri.N
    k = s if k is None else k
    _check_sk(N, s, k)
    return gfr(tri, (N - s, 0, s), (N - s, k, s - k))


def se(tri, s, k=None):
    N = tri.N
    k = s if k is None else k
    _check_sk(N, s, k)
    return gfr(tri, (s, N - s, 0), (s - k, N - s, k))


def nw(tri, s, k=None):
    N = tri.N
    k = s if k is None else k
    _check_sk(N, s, k)
    return gfr(tri, (0, N - s, s), (k, N - s, s - k))


def sw(tri, s, k=None):
    N = tri.N
    k = s if k is None else k
    _check_sk(N, s, k)
    return gfr(tri, (N - s, s, 0), (N - s, s - k, k))


VECTOR_FAMILIES = {"ne": ne, "se": se, "nw": nw, "sw": sw}


def special_vectors(N) -> dict:
    """All named vectors, keyed like 'ne_{2,1}' and 'ne_{2}'."""
    tri = build_triangle(N)
    out = {}
    for name, fn in VECTOR_FAMILIES.items():
        for s in range(N + 1):
            for k in range(s + 1):
                out[f"{name}_{{{s},{k}}}"] = fn(tri, s, k)
            out[f"{name}_{{{s}}}"] = fn(tri, s)
    return out


def cartan_inverse(n) -> list[list[Fraction]]:
    B = sympy.Matrix(n, n, lambda r, s: 2 if r == s else (-1 if abs(r - s) == 1 else 0))
    inv = B.inv()
    return [[as_fraction(inv[r, s]) for s in range(n)] for r in range(n)]


def fundamental_weights(N, side="ne") -> list[SkewVector]:
    """[varpi_1, ..., varpi_n] on the ne side (T-) or the se side (T+)."""
    tri = build_triangle(N)
    n = N - 1
    fam = {"ne": ne, "se": se, "nw": nw, "sw": sw}[side]
    inv = cartan_inverse(n)
    out = []
    for s in range(1, n + 1):
        v = tri.space.zero()
        for t in range(1, n + 1):
            v = v + inv[s - 1][t - 1] * fam(tri, t)
        out.append(v)
    return out


# Pairing tables ----------------------------------------------------------

def _d(x, y):
    return 1 if x == y else 0


def _table_cases(N):
    """Yield (family, args, v, w, expected) for every formula family."""
    tri = build_triangle(N)
    n = N - 1
    half = Fraction(1, 2)
    nil = [(s, k) for s in range(1, n + 1) for k in range(s)]
    for s, k in nil:
        for s2, k2 in nil:
            if s2 == s and k2 > k:
                exp = Fraction(1)
            elif s2 == s + 1 and k2 <= k:
                exp = half
            elif s2 == s - 1 and k2 < k:
                exp = half
            elif abs(s - s2) >= 2:
                exp = Fraction(0)
            elif s2 == s and k2 == k:
                exp = Fraction(0)
            else:
                # remaining cases follow from skew-symmetry
                continue
            yield "same_nilpotent", (s, k, s2, k2), ne(tri, s, k), ne(tri, s2, k2), exp
            yield "same_nilpotent", (s, k, s2, k2), se(tri, s, k), se(tri, s2, k2), exp
    for s in range(N + 1):
        for s2, k2 in nil:
            d = abs(s2 - s)
            exp = Fraction(-1) if d == 0 else (half if d == 1 else Fraction(0))
            yield "same_cartan", (s, s2, k2), ne(tri, s), ne(tri, s2, k2), exp
            yield "same_cartan", (s, s2, k2), se(tri, s), se(tri, s2, k2), exp
    for s in range(N + 1):
        for t in range(N + 1):
            yield "vanishing", (s, t), ne(tri, s), ne(tri, t), Fraction(0)
            yield "vanishing", (s, t), se(tri, s), se(tri, t), Fraction(0)
    for s, k in nil:
        for s2, k2 in nil:
            exp = Fraction(_d(k + k2, s - 1) * (_d(k + s2, n) - _d(k + s2, N)))
            yield "mixed_nilpotent", (s, k, s2, k2), ne(tri, s, k), se(tri, s2, k2), exp
    for s in range(N + 1):
        for s2, k2 in nil:
            d = abs(s2 - (N - s))
            exp = Fraction(1) if d == 0 else (-half if d == 1 else Fraction(0))
            yield "mixed_cartan", (s, s2, k2), ne(tri, s), se(tri, s2, k2), exp
    for s, k in nil:
        for s2 in range(N + 1):
            yield "mixed_cartan_opposite", (s, k, s2), ne(tri, s, k), se(tri, s2), Fraction(0)
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            d = abs(t - (N - s))
            exp = Fraction(1) if d == 0 else (-half if d == 1 else Fraction(0))
            yield "mixed_torus", (s, t), ne(tri, s), se(tri, t), exp


@dataclass
class TableReport:
    N: int
    checked: int
    counts: dict
    mismatch: tuple | None = None

    @property
    def ok(self):
        return self.mismatch is None


def verify_pairing_tables(N) -> TableReport:
    tri = build_triangle(N)
    counts = {}
    checked = 0
    for fam, args, v, w, exp in _table_cases(N):
        got = tri.space.pair(v, w)
        checked += 1
        counts[fam] = counts.get(fam, 0) + 1
        if got != exp:
            return TableReport(N, checked, counts, (fam, args, got, exp))
    return TableReport(N, checked, counts)


def pairing_block(space: SkewSpace, rows, cols) -> list[list[Fraction]]:
    return [[space.entry(r, c) for c in cols] for r in rows]


def borel_nondegeneracy(N) -> Fraction:
    """Determinant of the B- x B+ pairing matrix in the label bases."""
    tri = build_triangle(N)
    return determinant(pairing_block(tri.space, tri.subsets["B-"], tri.subsets["B+"]))


# Embedding into V_N -----------------------------------------------------

def index_set(N):
    """I = I_0 followed by I_1 in the total order used for the embedding."""
    n = N - 1
    i0 = list(range(1, n + 1))
    i1 = sorted(((s, k) for s in range(1, n + 1) for k in range(s)), key=lambda p: (p[0] - p[1], -p[0]))
    return i0 + i1


def index_to_label(N, i):
    s, k = (i, i) if isinstance(i, int) else i
    return (N - s, k, s - k)


def index_less(i, j):
    """The order on I, written out from its definition (for property tests)."""
    if isinstance(i, int) and isinstance(j, int):
        return i < j
    if isinstance(i, int):
        return True
    if isinstance(j, int):
        return False
    (s, k), (s2, k2) = i, j
    return s - k < s2 - k2 or (s - k == s2 - k2 and s > s2)


@dataclass
class EmbeddingVN:
    N: int
    index: list
    space: SkewSpace  # V_N with labels ('f', i) and ('w', i)
    ne: dict  # (s, k) -> image of ne_{s,k}, k < s
    varpi_hat: dict  # s -> image of the ne-side fundamental weight
    se: dict  # s -> image of se_s
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def build_VN(N) -> SkewSpace:
    idx = index_set(N)
    labels = [(t, i) for i in idx for t in ("f", "w")]
    return SkewSpace(labels, {(("f", i), ("w", i)): Fraction(1, 2) for i in idx}, name=f"V_{N}")


def embed_into_VN(N) -> EmbeddingVN:
    tri = build_triangle(N)
    n = N - 1
    idx = index_set(N)
    pos = {i: p for p, i in enumerate(idx)}
    V = build_VN(N)
    i1 = [i for i in idx if not isinstance(i, int)]
    ne_img = {}
    # rule 1: ne_i = f_i + sum_{j>i} c_j varpi_j; pairing with ne_j fixes c_j
    for i in i1:
        coeffs = {("f", i): Fraction(1)}
        for j in i1:
            if pos[j] > pos[i]:
                coeffs[("w", j)] = -2 * tri.space.pair(ne(tri, *i), ne(tri, *j))
        ne_img[i] = V.vector(coeffs)
    # rule 2: varpi_s = varpi_s + sum over I_1 of multiples of varpi_j
    weights = fundamental_weights(N, "ne")
    vh_img = {}
    for s in range(1, n + 1):
        coeffs = {("w", s): Fraction(1)}
        for j in i1:
            coeffs[("w", j)] = -2 * tri.space.pair(weights[s - 1], ne(tri, *j))
        vh_img[s] = V.vector(coeffs)
    se_img = {s: -V.basis(("f", N - s)) for s in range(1, n + 1)}

    checks = {}
    src = [(("ne",) + i, ne(tri, *i), ne_img[i]) for i in i1]
    src += [(("varpi", s), weights[s - 1], vh_img[s]) for s in range(1, n + 1)]
    src += [(("se", s), se(tri, s), se_img[s]) for s in range(1, n + 1)]
    ok = True
    for a, va, ia in src:
        for b, vb, ib in src:
            if tri.space.pair(va, vb) != V.pair(ia, ib):
                ok = False
    checks["pairings_preserved"] = ok

    # f_{(s,k)} + 2 sum_{(s',k')>(s,k)} (se_{N-s,n-r}, se_{N-s'}) varpi_{(s',k')} = ne_{s,k}, for every r
    ok = True
    for (s, k) in i1:
        for r in range(s, n + 1):
            v = V.basis(("f", (s, k)))
            for j in i1:
                if pos[j] > pos[(s, k)]:
                    v = v + 2 * tri.space.pair(se(tri, N - s, n - r), se(tri, N - j[0])) * V.basis(("w", j))
            ok = ok and v == ne_img[(s, k)]
    checks["sum_ne_vectors"] = ok

    ok = True
    for s in range(1, n + 1):
        v = V.basis(("w", s))
        for k in range(s):
            v = v + V.basis(("w", (s, k)))
        ok = ok and v == vh_img[s]
    checks["sum_fundamental_weights"] = ok

    # triangularity rules
    ok = True
    for i in i1:
        for lab, c in ne_img[i].coeffs().items():
            t, j = lab
            if pos[j] < pos[i] or (j == i and (t, c) != ("f", 1)) or (pos[j] > pos[i] and t != "w"):
                ok = False
    for s in range(1, n + 1):
        for lab, c in vh_img[s].coeffs().items():
            t, j = lab
            if t != "w" or pos[j] < pos[s] or (isinstance(j, int) and j != s):
                ok = False
    checks["triangular"] = ok
    return EmbeddingVN(N, idx, V, ne_img, vh_img, se_img, checks)


# Weight exponents ----------------------------------------------------------

@dataclass(frozen=True)
class ScaledVector:
    """scale * vector, with scale a sympy expression in the symbol t."""

    scale: sympy.Expr
    vector: SkewVector

    def evaluate(self, hbar):
        tval = 1 + 1 / abs(sympy.nsimplify(hbar))
        return self.scale.subs(T, tval), self.vector


def weight_exponents(N) -> dict:
    """2d_l and 2d_r as multiples of t = 1 + |hbar|^{-1}.

    Both closed forms are built and compared; the result carries the flag.
    """
    tri = build_triangle(N)
    n = N - 1
    by_label_l = tri.space.vector({(a, b, c): a * c for (a, b, c) in tri.subsets["neC"]})
    by_label_r = tri.space.vector({(a, b, c): -a * b for (a, b, c) in tri.subsets["neC"]})
    by_vec_l = tri.space.zero()
    by_vec_r = tri.space.zero()
    for s in range(1, n + 1):
        for k in range(s):
            by_vec_l = by_vec_l + (N - s) * ne(tri, s, k)
            by_vec_r = by_vec_r - (N - s) * sw(tri, s, k)
    return {
        "two_d_l": ScaledVector(T, by_label_l),
        "two_d_r": ScaledVector(T, by_label_r),
        "forms_agree": by_label_l == by_vec_l and by_label_r == by_vec_r,
    }


def check_dl_characterization(N) -> bool:
    """(d_l, z) = -t sum_i (varpi^e_i, z) for all basis z of B+."""
    tri = build_triangle(N)
    two_dl = weight_exponents(N)["two_d_l"].vector
    total = tri.space.zero()
    for w in fundamental_weights(N, "se"):
        total = total + w
    for lab in tri.subsets["B+"]:
        z = tri.space.basis(lab)
        if tri.space.pair(two_dl, z) / 2 != -tri.space.pair(total, z):
            return False
    return True


def tau(n) -> int:
    return sum(s * (n + 1 - s) for s in range(1, n + 1))


# Twisted double ------------------------------------------------------------

def restrict(space: SkewSpace, labels, name="") -> SkewSpace:
    labels = list(labels)
    entries = {(a, b): space.entry(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]}
    return SkewSpace(labels, entries, name)


def _split_borel_torus(N):
    """Coordinates of every C' label in the basis (B- labels, se_1..se_n)."""
    tri = build_triangle(N)
    labels = tri.subsets["C'"]
    bm = tri.subsets["B-"]
    cols = [tri.space.basis(l) for l in bm] + [se(tri, s) for s in range(1, N)]
    M = sympy.Matrix([[sympy.Rational(c[l].numerator, c[l].denominator) for c in cols] for l in labels])
    if M.shape[0] != M.shape[1] or M.det() == 0:
        raise ValueError("B- and T+ do not span C'")
    inv = M.inv()
    out = {}
    for j, lab in enumerate(labels):
        coords = [as_fraction(inv[i, j]) for i in range(len(cols))]
        u = tri.space.zero()
        w = tri.space.zero()
        for i, c in enumerate(coords):
            if i < len(bm):
                u = u + c * cols[i]
            else:
                w = w + c * cols[i]
        out[lab] = (u, w)
    return out


@lru_cache(maxsize=None)
def heisenberg_double(N) -> SkewSpace:
    """nabla'_N (+) conj(nabla'_N) with the twisted cross form.

    Writing x = u + w with u in B- and w in T+, the cross pairing is
    (u, conj v) = (w, conj z) = 0, (u, conj z) = -(u, z), (w, conj v) = (w, v).
    Labels are (0, e) and (1, e).
    """
    tri = build_triangle(N)
    labels = tri.subsets["C'"]
    prime = restrict(tri.space, labels, f"nabla'_{N}")
    parts = _split_borel_torus(N)
    pair = tri.space.pair
    cross = []
    for x in labels:
        u, w = parts[x]
        row = []
        for y in labels:
            v, z = parts[y]
            row.append(-pair(u, z) + pair(w, v))
        cross.append(row)
    return direct_sum([prime, conjugate(prime)], {(0, 1): cross}, f"Heis({prime.name})")


def cross_nilp_check(N) -> bool:
    """Cross pairings of e_abc (+) 0 and 0 (+) vartheta(e_abc) on N+ against the closed table."""
    H = heisenberg_double(N)
    labels = build_triangle(N).subsets["N+"]
    ok = True
    for a, b, c in labels:
        e = H.basis((0, (a, b, c)))
        for a2, b2, c2 in labels:
            # vartheta(e_abc) = -e_cba, read in the conjugate copy
            f = -H.basis((1, (c2, b2, a2)))
            got = H.pair(e, f)
            if c != 0 or c2 != 0:
                exp = Fraction(0)
            else:
                d = abs(a - a2)
                exp = Fraction(1) if d == 0 else (Fraction(-1, 2) if d == 1 else Fraction(0))
            ok = ok and got == exp
    return ok
