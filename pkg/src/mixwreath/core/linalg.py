"""Sparse exact linear algebra: matrices, echelon forms, kernels, subspaces.

Vectors are dicts ``index -> scalar`` with no zero values stored.  Matrices act
on row vectors from the right (``v @ m``), matching the right actions used in
every representation pair of the package.
"""
from __future__ import annotations

from typing import Iterable

from . import kernels
from .field import QQ, Field

Vector = dict


def vec_add(u: Vector, v: Vector, field: Field, scale=1) -> Vector:
    """Return ``u + scale * v``."""
    out = dict(u)
    p = field.p
    for k, b in v.items():
        x = out.get(k, 0) + scale * b
        if p:
            x %= p
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def vec_iadd(u: Vector, v: Vector, field: Field, scale=1) -> None:
    p = field.p
    for k, b in v.items():
        x = u.get(k, 0) + scale * b
        if p:
            x %= p
        if x:
            u[k] = x
        else:
            u.pop(k, None)


def vec_scale(v: Vector, c, field: Field) -> Vector:
    if not c:
        return {}
    p = field.p
    if p:
        return {k: x * c % p for k, x in v.items() if x * c % p}
    return {k: field.norm(x * c) for k, x in v.items()}


class SparseMatrix:
    """``nrows x ncols`` matrix stored as one dict per row."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, nrows: int, ncols: int, rows=None, field: Field = QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.rows = [dict() for _ in range(nrows)] if rows is None else [dict(r) for r in rows]
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            for j, x in list(r.items()):
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range")
                if not x:
                    del r[j]

    @classmethod
    def from_dense(cls, data, field: Field = QQ) -> "SparseMatrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        rows = [{j: field(x) for j, x in enumerate(r) if field(x)} for r in data]
        return cls(len(data), ncols, rows, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "SparseMatrix":
        return cls(n, n, [{i: 1} for i in range(n)], field)

    def to_dense(self) -> list[list]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    @property
    def entries(self) -> dict:
        return {(i, j): x for i, r in enumerate(self.rows) for j, x in r.items()}

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"

    def rmul(self, v: Vector) -> Vector:
        """Row vector times matrix."""
        out: Vector = {}
        for i, a in v.items():
            r = self.rows[i]
            if r:
                vec_iadd(out, r, self.field, a)
        return out

    def apply(self, x: Vector) -> Vector:
        """Matrix times column vector."""
        out = {}
        p = self.field.p
        for i, r in enumerate(self.rows):
            s = 0
            for j, a in r.items():
                b = x.get(j)
                if b:
                    s += a * b
            if p:
                s %= p
            if s:
                out[i] = self.field.norm(s)
        return out

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return SparseMatrix(self.ncols, self.nrows, cols, self.field)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return SparseMatrix(self.nrows, other.ncols, [other.rmul(r) for r in self.rows], self.field)


class Subspace:
    """Subspace of ``field^ambient_dim`` held as a reduced echelon basis.

    Mutable while being built with :meth:`add`; treat as frozen afterwards.
    """

    __slots__ = ("ambient_dim", "field", "_rows")

    def __init__(self, ambient_dim: int, field: Field = QQ, vectors: Iterable[Vector] = ()):
        self.ambient_dim = ambient_dim
        self.field = field
        self._rows: dict = {}
        for v in vectors:
            self.add(v)

    def _check(self, v: Vector):
        for k in v:
            if not 0 <= k < self.ambient_dim:
                raise ValueError(f"coordinate {k} outside ambient dimension {self.ambient_dim}")

    def add(self, v: Vector) -> bool:
        """Insert ``v``; return True when the dimension grew."""
        self._check(v)
        return kernels.insert_row(v, self._rows, self.field.p) >= 0

    def reduce(self, v: Vector) -> Vector:
        """Canonical representative of ``v`` modulo the subspace."""
        return kernels.reduce_vector(v, self._rows, self.field.p)

    def __contains__(self, v: Vector) -> bool:
        return not self.reduce(v)

    def __len__(self):
        return len(self._rows)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    @property
    def basis(self) -> list[Vector]:
        return [dict(sorted(self._rows[c].items())) for c in sorted(self._rows)]

    def complement_indices(self) -> list[int]:
        """Coordinates not used as pivots; their unit vectors span a complement."""
        return [i for i in range(self.ambient_dim) if i not in self._rows]

    def copy(self) -> "Subspace":
        s = Subspace(self.ambient_dim, self.field)
        s._rows = {c: dict(r) for c, r in self._rows.items()}
        return s

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def rref(m: SparseMatrix) -> SparseMatrix:
    """Reduced row echelon form; zero rows are placed at the bottom."""
    rows = kernels.echelonize(m.rows, m.field.p)
    out = [dict(sorted(rows[c].items())) for c in sorted(rows)]
    out += [{} for _ in range(m.nrows - len(out))]
    return SparseMatrix(m.nrows, m.ncols, out, m.field)


def rank(m: SparseMatrix) -> int:
    return len(kernels.echelonize(m.rows, m.field.p))


def kernel(m: SparseMatrix) -> Subspace:
    """Null space ``{x : m x = 0}`` of the matrix acting on column vectors."""
    field = m.field
    rows = kernels.echelonize(m.rows, field.p)
    ker = Subspace(m.ncols, field)
    for f in range(m.ncols):
        if f in rows:
            continue
        v = {f: 1}
        for c, r in rows.items():
            x = r.get(f)
            if x:
                v[c] = field.neg(x)
        ker.add(v)
    return ker


def left_kernel(m: SparseMatrix) -> Subspace:
    """``{v : v m = 0}`` for row vectors ``v``."""
    return kernel(m.transpose())


def member(s: Subspace, v: Vector) -> bool:
    if isinstance(v, (list, tuple)):
        if len(v) != s.ambient_dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
        v = {i: s.field(x) for i, x in enumerate(v) if s.field(x)}
    return v in s


def solve(m: SparseMatrix, b: Vector):
    """One solution ``x`` of ``m x = b`` (free variables zero), or None."""
    field = m.field
    aug = [dict(r) for r in m.rows]
    for i, r in enumerate(aug):
        if i in b:
            r[m.ncols] = b[i]
    rows = kernels.echelonize(aug, field.p)
    if m.ncols in rows:
        return None
    return {c: r[m.ncols] for c, r in rows.items() if m.ncols in r}
