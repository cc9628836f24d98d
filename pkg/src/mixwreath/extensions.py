"""Abelian extensions of Lie algebras through factor sets.

An extension of a right ``G``-module ``A`` by ``G`` with factor set ``f`` is
the space ``A x G`` with bracket

    [(a1, g1), (a2, g2)] = (a1.g2 - a2.g1 + f(g1, g2), [g1, g2]).

It splits when some linear ``rho: G -> A`` satisfies
``f(g1, g2) = rho(g1).g2 - rho(g2).g1 - rho([g1, g2])``; then
``(a, g) -> (a + rho(g), g)`` is an isomorphism onto the semidirect product.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import Sequence

from .core import QQ, Field, SparseMatrix, rank, solve, vec_add, vec_iadd, vec_scale


class FiniteLieAlgebra:
    """Lie algebra given by structure constants on a basis ``e_0 .. e_{n-1}``.

    ``brackets[(i, j)]`` (``i < j``) is the vector ``[e_i, e_j]``.  Optional
    ``degrees`` grade the basis; then brackets must respect the grading and
    anything landing above ``D`` (when given) is discarded.
    """

    def __init__(self, dim: int, brackets: dict, field: Field = QQ, names: Sequence[str] | None = None,
                 degrees: Sequence[int] | None = None, D: int | None = None):
        self.dim = dim
        self.field = field
        self.names = list(names) if names is not None else [f"e{i + 1}" for i in range(dim)]
        self.degrees = list(degrees) if degrees is not None else [1] * dim
        self.D = D
        self.table: dict = {}
        for (i, j), v in brackets.items():
            v = {k: field(x) for k, x in v.items() if field(x)}
            if i == j:
                if v:
                    raise ValueError("bracket of a basis element with itself must vanish")
                continue
            if i > j:
                i, j, v = j, i, vec_scale(v, -1, field)
            if v:
                self.table[(i, j)] = v

    def __repr__(self):
        return f"FiniteLieAlgebra(dim={self.dim}, {self.field.name})"

    # protocol shared with the other acting algebras
    @property
    def ngens(self) -> int:
        return self.dim

    @property
    def gen_names(self) -> list[str]:
        return self.names

    @property
    def gen_degrees(self) -> list[int]:
        return self.degrees

    def gen(self, i: int) -> dict:
        return {i: 1}

    def zero(self) -> dict:
        return {}

    def add(self, a: dict, b: dict) -> dict:
        return vec_add(a, b, self.field)

    def scale(self, c, a: dict) -> dict:
        return vec_scale(a, self.field(c), self.field)

    def vector(self, a: dict) -> dict:
        return a

    def from_vector(self, v: dict) -> dict:
        return dict(v)

    def coord_degree(self, i: int) -> int:
        return self.degrees[i]

    def to_poly(self, a: dict) -> dict:
        return {(i,): c for i, c in a.items()}

    def basis_bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return vec_scale(self.table.get((j, i), {}), -1, self.field)

    def bracket(self, a: dict, b: dict) -> dict:
        out: dict = {}
        f = self.field
        for i, x in a.items():
            for j, y in b.items():
                if i != j:
                    v = self.basis_bracket(i, j)
                    if v:
                        vec_iadd(out, v, f, x * y)
        return out

    def random_element(self, rng: random.Random, d: int | None = None) -> dict:
        idx = [i for i in range(self.dim) if d is None or self.degrees[i] == d]
        return {i: self.field(rng.randint(-3, 3)) for i in idx if rng.random() < 0.7}

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        for i, j, k in combinations(range(self.dim), 3):
            s = self.bracket(self.bracket({i: 1}, {j: 1}), {k: 1})
            s = vec_add(s, self.bracket(self.bracket({j: 1}, {k: 1}), {i: 1}), self.field)
            s = vec_add(s, self.bracket(self.bracket({k: 1}, {i: 1}), {j: 1}), self.field)
            if s:
                bad.append((i, j, k))
        return bad

    def ad_matrix(self, j: int) -> SparseMatrix:
        """Right adjoint action ``a -> [a, e_j]`` as a matrix on row vectors."""
        return SparseMatrix(self.dim, self.dim, [self.basis_bracket(i, j) for i in range(self.dim)],
                            self.field)

    def change_basis(self, P: Sequence[dict]) -> "FiniteLieAlgebra":
        """Same algebra in the basis ``f_i = sum_k P[i][k] e_k`` (P invertible)."""
        n = self.dim
        M = SparseMatrix(n, n, P, self.field)
        if rank(M) != n:
            raise ValueError("change of basis must be invertible")
        Minv = _inverse(M)
        table = {}
        for i in range(n):
            for j in range(i + 1, n):
                v = self.bracket(P[i], P[j])
                table[(i, j)] = Minv.rmul(v)
        return FiniteLieAlgebra(n, table, self.field, degrees=None)


def _inverse(M: SparseMatrix) -> SparseMatrix:
    n = M.nrows
    rows = []
    for i in range(n):
        # x M = e_i  <=>  M^T x^T = e_i
        x = solve(M.transpose(), {i: 1})
        if x is None:
            raise ValueError("matrix is singular")
        rows.append(x)
    return SparseMatrix(n, n, rows, M.field)


class GModule:
    """Right module ``A`` over a finite Lie algebra ``G``: ``action[j]`` is ``a -> a.e_j``."""

    def __init__(self, G: FiniteLieAlgebra, dim: int, actions: Sequence[SparseMatrix]):
        if len(actions) != G.dim:
            raise ValueError("one action matrix per basis element of G required")
        self.G = G
        self.dim = dim
        self.field = G.field
        self.actions = list(actions)

    @classmethod
    def trivial(cls, G: FiniteLieAlgebra, dim: int) -> "GModule":
        return cls(G, dim, [SparseMatrix(dim, dim, None, G.field) for _ in range(G.dim)])

    @classmethod
    def adjoint(cls, G: FiniteLieAlgebra) -> "GModule":
        return cls(G, G.dim, [G.ad_matrix(j) for j in range(G.dim)])

    def act(self, a: dict, g: dict) -> dict:
        out: dict = {}
        for j, y in g.items():
            vec_iadd(out, self.actions[j].rmul(a), self.field, y)
        return out

    def law_violations(self) -> list[tuple[int, int, int]]:
        """Basis triples where (a.g1).g2 - (a.g2).g1 != a.[g1, g2]."""
        bad = []
        for i in range(self.G.dim):
            for j in range(i + 1, self.G.dim):
                br = self.G.basis_bracket(i, j)
                for k in range(self.dim):
                    a = {k: 1}
                    lhs = vec_add(self.act(self.act(a, {i: 1}), {j: 1}),
                                  self.act(self.act(a, {j: 1}), {i: 1}), self.field, -1)
                    if lhs != self.act(a, br):
                        bad.append((k, i, j))
        return bad

    def direct_sum(self, other: "GModule") -> "GModule":
        n = self.dim + other.dim
        mats = []
        for A, B in zip(self.actions, other.actions):
            rows = [dict(r) for r in A.rows] + [{self.dim + c: x for c, x in r.items()} for r in B.rows]
            mats.append(SparseMatrix(n, n, rows, self.field))
        return GModule(self.G, n, mats)

    def change_basis(self, P: Sequence[dict]) -> "GModule":
        """Same module in the basis ``b_i = sum_k P[i][k] a_k``."""
        M = SparseMatrix(self.dim, self.dim, P, self.field)
        Minv = _inverse(M)
        return GModule(self.G, self.dim, [M @ A @ Minv for A in self.actions])


class FactorSet:
    """Alternating bilinear ``G x G -> A`` given on basis pairs ``i < j``."""

    def __init__(self, G: FiniteLieAlgebra, A: GModule, values: dict):
        self.G = G
        self.A = A
        f = G.field
        self.values = {}
        for (i, j), v in values.items():
            v = {k: f(x) for k, x in v.items() if f(x)}
            if i == j:
                if v:
                    raise ValueError("factor set must vanish on equal arguments")
                continue
            if i > j:
                i, j, v = j, i, vec_scale(v, -1, f)
            if v:
                self.values[(i, j)] = v

    @classmethod
    def zero(cls, G: FiniteLieAlgebra, A: GModule) -> "FactorSet":
        return cls(G, A, {})

    def basis_value(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.values.get((i, j), {})
        return vec_scale(self.values.get((j, i), {}), -1, self.G.field)

    def __call__(self, g1: dict, g2: dict) -> dict:
        out: dict = {}
        for i, x in g1.items():
            for j, y in g2.items():
                v = self.basis_value(i, j)
                if v:
                    vec_iadd(out, v, self.G.field, x * y)
        return out

    def is_zero(self) -> bool:
        return not self.values


class Retraction:
    """Linear ``rho: G -> A``; ``rows[i]`` is ``rho(e_i)``."""

    def __init__(self, G: FiniteLieAlgebra, A: GModule, rows: Sequence[dict]):
        self.G = G
        self.A = A
        self.rows = [dict(r) for r in rows]

    def __call__(self, g: dict) -> dict:
        out: dict = {}
        for i, x in g.items():
            vec_iadd(out, self.rows[i], self.G.field, x)
        return out


def coboundary(rho: Retraction) -> FactorSet:
    """The factor set ``rho(g1).g2 - rho(g2).g1 - rho([g1, g2])``."""
    G, A = rho.G, rho.A
    vals = {}
    for i in range(G.dim):
        for j in range(i + 1, G.dim):
            vals[(i, j)] = _split_rhs(rho, i, j)
    return FactorSet(G, A, vals)


def _split_rhs(rho: Retraction, i: int, j: int) -> dict:
    G, A, f = rho.G, rho.A, rho.G.field
    v = A.act(rho({i: 1}), {j: 1})
    v = vec_add(v, A.act(rho({j: 1}), {i: 1}), f, -1)
    return vec_add(v, rho(G.basis_bracket(i, j)), f, -1)


class Extension:
    """The space ``A x G`` with the factor-set bracket; also an acting-algebra object."""

    def __init__(self, G: FiniteLieAlgebra, A: GModule, f: FactorSet | None = None):
        if A.G is not G:
            raise ValueError("module is over a different Lie algebra")
        self.G = G
        self.A = A
        self.f = f if f is not None else FactorSet.zero(G, A)
        self.field = G.field
        self.dim = A.dim + G.dim

    def __repr__(self):
        return f"Extension(dim A={self.A.dim}, dim G={self.G.dim}, split={self.f.is_zero()})"

    def bracket(self, x: tuple, y: tuple) -> tuple:
        return ext_bracket(self, x, y)

    def zero(self) -> tuple:
        return ({}, {})

    def add(self, x: tuple, y: tuple) -> tuple:
        return (vec_add(x[0], y[0], self.field), vec_add(x[1], y[1], self.field))

    def scale(self, c, x: tuple) -> tuple:
        c = self.field(c)
        return (vec_scale(x[0], c, self.field), vec_scale(x[1], c, self.field))

    def vector(self, x: tuple) -> dict:
        out = dict(x[0])
        out.update({self.A.dim + i: c for i, c in x[1].items()})
        return out

    def from_vector(self, v: dict) -> tuple:
        n = self.A.dim
        return ({i: c for i, c in v.items() if i < n}, {i - n: c for i, c in v.items() if i >= n})

    def basis(self) -> list[tuple]:
        return [self.from_vector({i: 1}) for i in range(self.dim)]


def ext_bracket(e: Extension, x: tuple, y: tuple) -> tuple:
    (a1, g1), (a2, g2) = x, y
    f = e.field
    a = e.A.act(a1, g2)
    a = vec_add(a, e.A.act(a2, g1), f, -1)
    a = vec_add(a, e.f(g1, g2), f)
    return a, e.G.bracket(g1, g2)


def _jacobi(e: Extension, x, y, z) -> tuple:
    s = e.bracket(e.bracket(x, y), z)
    s = e.add(s, e.bracket(e.bracket(y, z), x))
    return e.add(s, e.bracket(e.bracket(z, x), y))


def cocycle_check(f: FactorSet, A: GModule) -> bool:
    """True iff the factor-set bracket satisfies Jacobi on every basis triple."""
    e = Extension(f.G, A, f)
    basis = e.basis()
    for x, y, z in combinations(basis, 3):
        s = _jacobi(e, x, y, z)
        if s[0] or s[1]:
            return False
    return True


def cocycle_identity_holds(f: FactorSet, A: GModule) -> bool:
    """The expanded condition: for all basis triples of G,

    f(g1,g2).g3 + f(g2,g3).g1 + f(g3,g1).g2 = f(g1,[g2,g3]) + f(g2,[g3,g1]) + f(g3,[g1,g2]),

    together with the module law for A (the triples involving A)."""
    G, fld = f.G, f.G.field
    if A.law_violations() or G.jacobi_violations():
        return False
    for i, j, k in combinations(range(G.dim), 3):
        g = [{i: 1}, {j: 1}, {k: 1}]
        lhs: dict = {}
        rhs: dict = {}
        for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            vec_iadd(lhs, A.act(f(g[a], g[b]), g[c]), fld)
            vec_iadd(rhs, f(g[a], G.bracket(g[b], g[c])), fld)
        if lhs != rhs:
            return False
    return True


def splitting_check(f: FactorSet, A: GModule) -> Retraction | None:
    """Solve for ``rho`` with ``f = rho(g1).g2 - rho(g2).g1 - rho([g1,g2])``; None if none exists."""
    G, fld = f.G, f.G.field
    n, m = G.dim, A.dim
    eq_rows = []
    rhs = {}
    for i in range(n):
        for j in range(i + 1, n):
            br = G.basis_bracket(i, j)
            target = f.basis_value(i, j)
            for k in range(m):
                row: dict = {}
                # rho(e_i).e_j contributes rho_{i,l} * act_j[l][k]
                for l in range(m):
                    x = A.actions[j].rows[l].get(k)
                    if x:
                        vec_iadd(row, {i * m + l: x}, fld)
                    y = A.actions[i].rows[l].get(k)
                    if y:
                        vec_iadd(row, {j * m + l: y}, fld, -1)
                for t, c in br.items():
                    vec_iadd(row, {t * m + k: c}, fld, -1)
                if target.get(k):
                    rhs[len(eq_rows)] = target[k]
                eq_rows.append(row)
    if not eq_rows:
        return Retraction(G, A, [{} for _ in range(n)])
    sol = solve(SparseMatrix(len(eq_rows), n * m, eq_rows, fld), rhs)
    if sol is None:
        return None
    rows = [{} for _ in range(n)]
    for u, x in sol.items():
        rows[u // m][u % m] = x
    return Retraction(G, A, rows)


class MuMap:
    """``(a, g) -> (a + rho(g), g)`` from the extension onto the semidirect product."""

    def __init__(self, source: Extension, target: Extension, rho: Retraction):
        self.source = source
        self.target = target
        self.rho = rho

    def __call__(self, x: tuple) -> tuple:
        a, g = x
        return vec_add(a, self.rho(g), self.source.field), dict(g)

    def inverse(self, x: tuple) -> tuple:
        a, g = x
        return vec_add(a, self.rho(g), self.source.field, -1), dict(g)

    def matrix(self) -> SparseMatrix:
        S = self.source
        return SparseMatrix(S.dim, S.dim, [S.vector(self(x)) for x in S.basis()], S.field)

    def homomorphism_failures(self) -> list[tuple[int, int]]:
        S, T = self.source, self.target
        basis = S.basis()
        bad = []
        for i, j in combinations(range(len(basis)), 2):
            lhs = self(S.bracket(basis[i], basis[j]))
            rhs = T.bracket(self(basis[i]), self(basis[j]))
            if S.vector(lhs) != T.vector(rhs):
                bad.append((i, j))
        return bad

    def is_bijective(self) -> bool:
        return rank(self.matrix()) == self.source.dim

    def inverse_is_identity(self) -> bool:
        S = self.source
        return all(S.vector(self.inverse(self(x))) == S.vector(x) and
                   S.vector(self(self.inverse(x))) == S.vector(x) for x in S.basis())

    def verify(self) -> bool:
        return not self.homomorphism_failures() and self.is_bijective() and self.inverse_is_identity()


def mu_map(e: Extension, rho: Retraction) -> MuMap:
    """The isomorphism of a split extension onto the semidirect product."""
    for i in range(e.G.dim):
        for j in range(i + 1, e.G.dim):
            if e.f.basis_value(i, j) != _split_rhs(rho, i, j):
                raise ValueError(f"rho does not split the factor set on basis pair "
                                 f"({e.G.names[i]}, {e.G.names[j]})")
    return MuMap(e, semidirect_build(e.A, e.G), rho)


def semidirect_build(A: GModule, G: FiniteLieAlgebra) -> Extension:
    """``A x G`` with zero factor set."""
    bad = A.law_violations()
    if bad:
        k, i, j = bad[0]
        raise ValueError(f"module law fails on a{k} with ({G.names[i]}, {G.names[j]})")
    if G.jacobi_violations():
        raise ValueError("G violates the Jacobi identity")
    return Extension(G, A, FactorSet.zero(G, A))


def factor_set_from_complement(B: FiniteLieAlgebra, ideal: Sequence[int],
                               complement: Sequence[int]) -> tuple[FiniteLieAlgebra, GModule, FactorSet]:
    """Factor set of ``B`` over an abelian ideal spanned by basis vectors ``ideal``.

    The section ``sigma`` sends the quotient basis to the complementary basis
    vectors; ``f(g1, g2) = [g1^sigma, g2^sigma] - [g1, g2]^sigma``.
    """
    ideal, complement = list(ideal), list(complement)
    if sorted(ideal + complement) != list(range(B.dim)):
        raise ValueError("ideal and complement must partition the basis")
    ipos = {b: k for k, b in enumerate(ideal)}
    cpos = {b: k for k, b in enumerate(complement)}
    fld = B.field
    for a in ideal:
        for b in ideal:
            if B.basis_bracket(a, b):
                raise ValueError("ideal is not abelian")
        for c in range(B.dim):
            if any(t not in ipos for t in B.basis_bracket(a, c)):
                raise ValueError("span is not an ideal")
    # G = B / A with induced brackets
    gtab = {}
    for x, bx in enumerate(complement):
        for y in range(x + 1, len(complement)):
            v = B.basis_bracket(bx, complement[y])
            gtab[(x, y)] = {cpos[t]: c for t, c in v.items() if t in cpos}
    G = FiniteLieAlgebra(len(complement), gtab, fld, [B.names[c] for c in complement])
    acts = []
    for bc in complement:
        rows = [{ipos[t]: c for t, c in B.basis_bracket(a, bc).items()} for a in ideal]
        acts.append(SparseMatrix(len(ideal), len(ideal), rows, fld))
    A = GModule(G, len(ideal), acts)
    vals = {}
    for x, bx in enumerate(complement):
        for y in range(x + 1, len(complement)):
            v = B.basis_bracket(bx, complement[y])
            vals[(x, y)] = {ipos[t]: c for t, c in v.items() if t in ipos}
    return G, A, FactorSet(G, A, vals)


# -- a small catalogue of Lie algebras of dimension <= 4 -----------------------

def abelian(n: int, field: Field = QQ) -> FiniteLieAlgebra:
    return FiniteLieAlgebra(n, {}, field)


def heisenberg(field: Field = QQ) -> FiniteLieAlgebra:
    return FiniteLieAlgebra(3, {(0, 1): {2: 1}}, field)


def sl2(field: Field = QQ) -> FiniteLieAlgebra:
    # basis e, h, f
    return FiniteLieAlgebra(3, {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}, field,
                            ["e", "h", "f"])


def affine_line(field: Field = QQ) -> FiniteLieAlgebra:
    return FiniteLieAlgebra(2, {(0, 1): {1: 1}}, field)


def filiform4(field: Field = QQ) -> FiniteLieAlgebra:
    return FiniteLieAlgebra(4, {(0, 1): {2: 1}, (0, 2): {3: 1}}, field)


def gl2(field: Field = QQ) -> FiniteLieAlgebra:
    # sl2 plus a central element
    return FiniteLieAlgebra(4, {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}, field,
                            ["e", "h", "f", "z"])


def catalogue(field: Field = QQ) -> list[FiniteLieAlgebra]:
    return [abelian(1, field), abelian(2, field), affine_line(field), abelian(3, field),
            heisenberg(field), sl2(field), abelian(4, field), filiform4(field), gl2(field)]
