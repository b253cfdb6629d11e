"""Matrices over GF(q), classical forms, and generators for SL, Sp and SU.

A ``Matrix`` stores packed field values (see :mod:`invcensus.fields`), so
entries are plain integers and the matrix hashes cheaply. Its canonical
code packs the entries row-major as base-|F| digits with the first entry
most significant; integer order on codes is therefore lexicographic order
on entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import DimMismatch, FieldMismatch, Singular, UnsupportedFamily
from .fields import FieldElement, FieldSpec, field_make
from .numtheory import prime_power


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable]) -> Matrix:
        """Rows may hold ints (packed values) or FieldElements."""
        out = []
        for row in rows:
            out.append(tuple(field(x).value for x in row))
        dim = len(out)
        if any(len(r) != dim for r in out):
            raise DimMismatch("matrix must be square")
        return cls(field, tuple(out))

    @classmethod
    def identity(cls, field: FieldSpec, dim: int) -> Matrix:
        return cls(field, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def scalar(cls, value: FieldElement, dim: int) -> Matrix:
        v = value.value
        return cls(value.field, tuple(tuple(v if i == j else 0 for j in range(dim)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self.entries[i][j])

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    @property
    def code(self) -> int:
        q = self.field.q
        c = 0
        for row in self.entries:
            for v in row:
                c = c * q + v
        return c

    def transpose(self) -> Matrix:
        return Matrix(self.field, tuple(zip(*self.entries)))

    def conjugate(self) -> Matrix:
        """Entrywise x -> x^q0 on GF(q0^2)."""
        f = self.field.frobenius_table
        return Matrix(self.field, tuple(tuple(int(f[v]) for v in row) for row in self.entries))

    def scale(self, lam: FieldElement) -> Matrix:
        mul = self.field.mul_values
        return Matrix(self.field, tuple(tuple(mul(lam.value, v) for v in row) for row in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __repr__(self):
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.entries)
        return f"Matrix[{self.field!r}]({rows})"


def _check_pair(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if a.dim != b.dim:
        raise DimMismatch(f"dimension {a.dim} vs {b.dim}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _check_pair(a, b)
    F = a.field
    n = a.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = F.add_values(acc, F.mul_values(a.entries[i][k], b.entries[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return Matrix(F, tuple(rows))


def _eliminate(a: Matrix, rhs: list[list[int]] | None):
    """Gauss-Jordan on a copy of ``a``; returns (det value, reduced rhs)."""
    F = a.field
    n = a.dim
    m = [list(r) for r in a.entries]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0, None
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            if rhs is not None:
                rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
            det = F.neg_value(det)
        pv = m[col][col]
        det = F.mul_values(det, pv)
        inv = F.inv_value(pv)
        m[col] = [F.mul_values(inv, v) for v in m[col]]
        if rhs is not None:
            rhs[col] = [F.mul_values(inv, v) for v in rhs[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = F.neg_value(m[r][col])
                m[r] = [F.add_values(x, F.mul_values(f, y)) for x, y in zip(m[r], m[col])]
                if rhs is not None:
                    rhs[r] = [F.add_values(x, F.mul_values(f, y)) for x, y in zip(rhs[r], rhs[col])]
    return det, rhs


def det(a: Matrix) -> FieldElement:
    d, _ = _eliminate(a, None)
    return FieldElement(a.field, d)


def mat_inv(a: Matrix) -> Matrix:
    ident = [list(r) for r in Matrix.identity(a.field, a.dim).entries]
    d, out = _eliminate(a, ident)
    if not d:
        raise Singular(f"{a!r} is singular")
    return Matrix(a.field, tuple(tuple(r) for r in out))


# -- forms ------------------------------------------------------------------

FormKind = Literal["symplectic", "hermitian", "none"]


@dataclass(frozen=True)
class FormSpec:
    kind: FormKind
    gram: Matrix | None = None


def symplectic_form(field: FieldSpec, dim: int) -> FormSpec:
    """Gram matrix [[0, I], [-I, 0]] in dimension 2 or 4."""
    if dim not in (2, 4):
        raise DimMismatch("symplectic forms are supported in dimension 2 and 4")
    h = dim // 2
    one, mone = 1, field.neg_value(1)
    rows = [[0] * dim for _ in range(dim)]
    for i in range(h):
        rows[i][h + i] = one
        rows[h + i][i] = mone
    return FormSpec("symplectic", Matrix.from_rows(field, rows))


def hermitian_form(field: FieldSpec, dim: int = 3) -> FormSpec:
    """Antidiagonal identity; needs a field of square order."""
    field.sqrt_q  # raises NotSquareField on odd degree
    rows = [[int(i + j == dim - 1) for j in range(dim)] for i in range(dim)]
    return FormSpec("hermitian", Matrix.from_rows(field, rows))


def preserves_form(m: Matrix, f: FormSpec) -> bool:
    if f.kind == "none":
        return True
    if f.gram.dim != m.dim:
        raise DimMismatch(f"form of dimension {f.gram.dim} vs matrix of dimension {m.dim}")
    left = m.transpose() if f.kind == "symplectic" else m.conjugate().transpose()
    return mat_mul(mat_mul(left, f.gram), m) == f.gram


# -- the families -------------------------------------------------------------

FAMILIES = {
    # family: (dimension, form kind)
    "SL2": (2, "none"),
    "SL3": (3, "none"),
    "SP4": (4, "symplectic"),
    "SU3": (3, "hermitian"),
}


def family_field(family: str, q: int) -> FieldSpec:
    """GF(q), or GF(q^2) for the unitary family."""
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unknown family {family!r}")
    pp = prime_power(q)
    if pp is None:
        raise UnsupportedFamily(f"{q} is not a prime power")
    p, n = pp
    return field_make(p, 2 * n if family == "SU3" else n)


def family_form(family: str, q: int) -> FormSpec:
    dim, kind = FAMILIES[family]
    F = family_field(family, q)
    if kind == "symplectic":
        return symplectic_form(F, dim)
    if kind == "hermitian":
        return hermitian_form(F, dim)
    return FormSpec("none")


def _elementary(F: FieldSpec, dim: int, i: int, j: int, lam: int) -> Matrix:
    rows = [[int(r == c) for c in range(dim)] for r in range(dim)]
    rows[i][j] = lam
    return Matrix.from_rows(F, rows)


def _symplectic_transvection(F: FieldSpec, J: Matrix, v: Sequence[int], lam: int) -> Matrix:
    # x -> x + lam <x, v> v with <x, y> = x^T J y, i.e. I - lam v v^T J
    dim = J.dim
    vJ = [0] * dim
    for c in range(dim):
        acc = 0
        for k in range(dim):
            acc = F.add_values(acc, F.mul_values(v[k], J.entries[k][c]))
        vJ[c] = acc
    nl = F.neg_value(lam)
    rows = []
    for r in range(dim):
        row = []
        for c in range(dim):
            term = F.mul_values(nl, F.mul_values(v[r], vJ[c]))
            row.append(F.add_values(int(r == c), term))
        rows.append(row)
    return Matrix.from_rows(F, rows)


def _unitary_root_group(F: FieldSpec) -> list[Matrix]:
    """All upper unitriangular 3x3 matrices preserving the antidiagonal form."""
    form = hermitian_form(F)
    out = []
    fro = F.frobenius_table
    for a in range(F.q):
        c = F.neg_value(int(fro[a]))
        for b in range(F.q):
            m = Matrix.from_rows(F, [[1, a, b], [0, 1, c], [0, 0, 1]])
            if preserves_form(m, form):
                out.append(m)
    return out


def _small_generating_subset(elements: list[Matrix]) -> list[Matrix]:
    """Greedy generating subset of a finite matrix group given in full."""
    target = set(elements)
    ident = Matrix.identity(elements[0].field, elements[0].dim)
    span = {ident}
    chosen = []
    for g in sorted(elements, key=lambda m: m.code):
        if g in span:
            continue
        chosen.append(g)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for h in chosen:
                    y = mat_mul(x, h)
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        if span == target:
            break
    return chosen


def generators(family: str, q: int) -> list[Matrix]:
    """A generating set of SL(2,q), SL(3,q), Sp(4,q) or SU(3,q)."""
    F = family_field(family, q)
    dim, kind = FAMILIES[family]
    basis = [e.value for e in F.prime_basis()]
    if kind == "none":
        return [
            _elementary(F, dim, i, j, lam)
            for i in range(dim)
            for j in range(dim)
            if i != j
            for lam in basis
        ]
    if kind == "symplectic":
        J = symplectic_form(F, dim).gram
        # Transvections along the standard basis alone only give Sp(2)xSp(2);
        # e1+e2 links the two hyperbolic planes.
        vectors = [[int(k == i) for k in range(dim)] for i in range(dim)]
        vectors.append([1, 1] + [0] * (dim - 2))
        return [_symplectic_transvection(F, J, v, lam) for v in vectors for lam in basis]
    upper = _small_generating_subset(_unitary_root_group(F))
    return upper + [m.transpose() for m in upper]


def center_scalars(family: str, q: int) -> list[FieldElement]:
    """Scalars lam with lam*I in the group: lam^dim = 1 and lam*I preserves the form."""
    F = family_field(family, q)
    dim, _ = FAMILIES[family]
    form = family_form(family, q)
    out = []
    for v in range(1, F.q):
        lam = FieldElement(F, v)
        if (lam**dim).value == 1 and preserves_form(Matrix.scalar(lam, dim), form):
            out.append(lam)
    return out


@dataclass(frozen=True)
class ProjectiveElement:
    rep: Matrix
    center_scalars: tuple[FieldElement, ...]


def canonical_projective(m: Matrix, scalars: Iterable[FieldElement]) -> ProjectiveElement:
    """Minimum-code member of the orbit {lam*m : lam in scalars}."""
    scalars = tuple(scalars)
    candidates = [m.scale(lam) for lam in scalars] or [m]
    rep = min(candidates, key=lambda x: x.code)
    return ProjectiveElement(rep, scalars)
