"""Exact-rational skew-symmetric spaces.

A space is an ordered list of hashable basis labels together with an
antisymmetric pairing matrix.  Vectors are sparse and immutable, so they can
be used as dictionary keys and multiset elements.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

import sympy


class SpaceMismatch(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


class SkewSpace:
    """Labelled basis with an exact antisymmetric bilinear form."""

    def __init__(self, labels: Sequence[Hashable], entries: Mapping | None = None, name: str = ""):
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("basis labels must be distinct")
        self.name = name
        self._adj: list[dict[int, Fraction]] = [dict() for _ in self.labels]
        for (a, b), val in (entries or {}).items():
            val = as_fraction(val)
            i, j = self.index[a], self.index[b]
            if i == j:
                if val != 0:
                    raise ValueError(f"diagonal entry for {a!r} must vanish")
                continue
            old = self._adj[i].get(j)
            if old is not None and old != val:
                raise ValueError(f"inconsistent entries for {a!r}, {b!r}")
            if val == 0:
                continue
            self._adj[i][j] = val
            self._adj[j][i] = -val

    @classmethod
    def from_matrix(cls, labels, matrix, name=""):
        labels = tuple(labels)
        n = len(labels)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError("pairing matrix has the wrong shape")
        entries = {}
        for i in range(n):
            for j in range(n):
                a, b = as_fraction(matrix[i][j]), as_fraction(matrix[j][i])
                if a != -b:
                    raise ValueError(f"pairing not antisymmetric at ({i}, {j})")
                if i < j and a != 0:
                    entries[(labels[i], labels[j])] = a
        return cls(labels, entries, name)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"SkewSpace({self.name or 'unnamed'}, dim={len(self)})"

    def entry(self, a, b) -> Fraction:
        return self._adj[self.index[a]].get(self.index[b], Fraction(0))

    def matrix(self) -> list[list[Fraction]]:
        n = len(self.labels)
        out = [[Fraction(0)] * n for _ in range(n)]
        for i, row in enumerate(self._adj):
            for j, val in row.items():
                out[i][j] = val
        return out

    def vector(self, coeffs: Mapping | Iterable = ()) -> "SkewVector":
        if isinstance(coeffs, Mapping):
            coeffs = coeffs.items()
        data: dict[int, Fraction] = {}
        for lab, c in coeffs:
            if lab not in self.index:
                raise KeyError(f"{lab!r} is not a basis label of {self!r}")
            i = self.index[lab]
            data[i] = data.get(i, Fraction(0)) + as_fraction(c)
        return SkewVector._raw(self, data)

    def basis(self, label) -> "SkewVector":
        return SkewVector._raw(self, {self.index[label]: Fraction(1)})

    def zero(self) -> "SkewVector":
        return SkewVector._raw(self, {})

    def pair(self, v: "SkewVector", w: "SkewVector") -> Fraction:
        if v.space is not self or w.space is not self:
            raise SpaceMismatch("vectors do not belong to this space")
        total = Fraction(0)
        small, big, sign = (v, w, 1) if len(v._items) <= len(w._items) else (w, v, -1)
        bd = big._dict
        for i, c in small._items:
            row = self._adj[i]
            if len(row) < len(bd):
                for j, e in row.items():
                    d = bd.get(j)
                    if d is not None:
                        total += c * e * d
            else:
                for j, d in bd.items():
                    e = row.get(j)
                    if e is not None:
                        total += c * e * d
        return total if sign == 1 else -total


class SkewVector:
    """Immutable sparse vector; zero coefficients are never stored."""

    __slots__ = ("space", "_items", "_dict", "_hash")

    @classmethod
    def _raw(cls, space, data: dict):
        self = object.__new__(cls)
        self.space = space
        self._dict = {i: c for i, c in data.items() if c != 0}
        self._items = tuple(sorted(self._dict.items()))
        self._hash = None
        return self

    def coeffs(self) -> dict:
        labels = self.space.labels
        return {labels[i]: c for i, c in self._items}

    def __getitem__(self, label) -> Fraction:
        return self._dict.get(self.space.index[label], Fraction(0))

    def support(self):
        return [self.space.labels[i] for i, _ in self._items]

    def key(self):
        return self._items

    def is_zero(self):
        return not self._items

    def _check(self, other):
        if not isinstance(other, SkewVector):
            return NotImplemented
        if other.space is not self.space:
            raise SpaceMismatch("vectors live in different spaces")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        data = dict(self._dict)
        for i, c in other._items:
            data[i] = data.get(i, 0) + c
        return SkewVector._raw(self.space, data)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        data = dict(self._dict)
        for i, c in other._items:
            data[i] = data.get(i, 0) - c
        return SkewVector._raw(self.space, data)

    def __neg__(self):
        return SkewVector._raw(self.space, {i: -c for i, c in self._items})

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return SkewVector._raw(self.space, {i: s * c for i, c in self._items})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / as_fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, SkewVector):
            return NotImplemented
        return self.space is other.space and self._items == other._items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.space), self._items))
        return self._hash

    def __repr__(self):
        if not self._items:
            return "0"
        labels = self.space.labels
        parts = []
        for i, c in self._items:
            lab = labels[i]
            tag = "e" + "".join(map(str, lab)) if _is_int_tuple(lab) else str(lab)
            parts.append(tag if c == 1 else f"{c}*{tag}")
        return " + ".join(parts)

    def pair(self, other) -> Fraction:
        return self.space.pair(self, other)


def _is_int_tuple(lab):
    return isinstance(lab, tuple) and all(isinstance(x, int) for x in lab)


def pair(space: SkewSpace, v: SkewVector, w: SkewVector) -> Fraction:
    return space.pair(v, w)


def radical(space: SkewSpace) -> list[SkewVector]:
    """Basis of {v : (v, -) = 0}, by exact null space computation."""
    mat = sympy.Matrix(len(space), len(space), lambda i, j: sympy.Rational(0))
    for i, row in enumerate(space._adj):
        for j, val in row.items():
            mat[i, j] = sympy.Rational(val.numerator, val.denominator)
    out = []
    for col in mat.nullspace():
        out.append(space.vector({space.labels[i]: as_fraction(col[i]) for i in range(len(space)) if col[i] != 0}))
    return out


def rank(space: SkewSpace) -> int:
    return len(space) - len(radical(space))


def determinant(matrix) -> Fraction:
    if not matrix:
        return Fraction(1)
    m = sympy.Matrix([[sympy.Rational(as_fraction(x).numerator, as_fraction(x).denominator) for x in row] for row in matrix])
    return as_fraction(m.det())


def direct_sum(parts: Sequence[SkewSpace], cross: Mapping | None = None, name: str = "") -> SkewSpace:
    """Block direct sum; labels become (part_index, label).

    ``cross`` maps a pair (i, j) with i < j to a rational matrix whose rows
    follow the basis of part i and columns the basis of part j.
    """
    entries = {}
    for k, sp in enumerate(parts):
        for i, row in enumerate(sp._adj):
            for j, val in row.items():
                if i < j:
                    entries[((k, sp.labels[i]), (k, sp.labels[j]))] = val
    for (a, b), block in (cross or {}).items():
        if not a < b:
            raise ValueError("cross blocks must be keyed by (i, j) with i < j")
        pa, pb = parts[a], parts[b]
        if len(block) != len(pa) or any(len(row) != len(pb) for row in block):
            raise ValueError(f"cross block ({a}, {b}) has the wrong shape")
        for i, row in enumerate(block):
            for j, val in enumerate(row):
                val = as_fraction(val)
                if val != 0:
                    entries[((a, pa.labels[i]), (b, pb.labels[j]))] = val
    labels = [(k, lab) for k, sp in enumerate(parts) for lab in sp.labels]
    return SkewSpace(labels, entries, name or "+".join(sp.name or "?" for sp in parts))


def inject(total: SkewSpace, k: int, v: SkewVector) -> SkewVector:
    """Image of v under the inclusion of the k-th summand of a direct sum."""
    return total.vector({(k, lab): c for lab, c in v.coeffs().items()})


def project(total: SkewSpace, k: int, v: SkewVector, part: SkewSpace) -> SkewVector:
    return part.vector({lab: c for (j, lab), c in v.coeffs().items() if j == k})


def conjugate(space: SkewSpace) -> SkewSpace:
    """The conjugate space: same labels, negated form."""
    entries = {}
    for i, row in enumerate(space._adj):
        for j, val in row.items():
            if i < j:
                entries[(space.labels[i], space.labels[j])] = -val
    return SkewSpace(space.labels, entries, f"conj({space.name})")


def transport(v: SkewVector, target: SkewSpace) -> SkewVector:
    """Same coefficients, read in another space with the same labels."""
    return target.vector(v.coeffs())


# JSON helpers -------------------------------------------------------------

def _label_str(lab) -> str:
    if _is_int_tuple(lab):
        return "e" + ",".join(map(str, lab)) if any(x > 9 for x in lab) else "e" + "".join(map(str, lab))
    return str(lab)


def frac_str(x: Fraction) -> str:
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vector_to_json(v: SkewVector) -> dict:
    return {_label_str(lab): frac_str(c) for lab, c in v.coeffs().items()}


def vector_from_json(space: SkewSpace, obj: Mapping) -> SkewVector:
    lookup = {_label_str(lab): lab for lab in space.labels}
    return space.vector({lookup[k]: Fraction(val) for k, val in obj.items()})


def space_to_json(space: SkewSpace) -> dict:
    return {
        "labels": [_label_str(lab) for lab in space.labels],
        "pairing": [[frac_str(x) for x in row] for row in space.matrix()],
    }


def space_from_json(obj: Mapping, name: str = "") -> SkewSpace:
    return SkewSpace.from_matrix(obj["labels"], [[Fraction(x) for x in row] for row in obj["pairing"]], name)
