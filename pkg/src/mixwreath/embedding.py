"""Embedding of ``(F / F X*(F_1, M), L)`` into the wreath product, checked degree by degree.

``L`` is the free Lie algebra on ``x_1..x_n`` and ``F`` its enveloping algebra,
both truncated at ``D``.  ``M`` is an ideal of ``L``, ``F_1`` the subalgebra of
``F`` generated by ``M`` and ``B = L/M``.  The map sends ``x_i`` to
``y_i + xbar_i`` in ``P x| B`` and the cyclic vector to the cyclic vector.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .core import QQ, Field, SparseMatrix, Subspace, rank, vec_iadd
from .extensions import Extension, FiniteLieAlgebra, GModule, semidirect_build
from .free_assoc import FreeAssocAlgebra
from .free_lie import (FreeLieAlgebra, LieElement, LieIdeal, LieVarietySpec, ideal_closure,
                       standard_factorization, theta_verbal_ideal)
from .pairs import (PairHom, QuotientPair, RepPair, extend_hom, free_cyclic_pair, free_module_pair,
                    quotient_pair, subpair_generated)
from .varieties import VarietySpec, close_under_action, identity_values
from .wreath import Envelope, WreathProduct, wreath_build


@dataclass
class EmbeddingScenario:
    gens: int
    D: int
    X_spec: VarietySpec
    theta: LieVarietySpec | None = None
    ideal_generators: list | None = None  # strings over x1..xn
    field: Field = QQ
    name: str = ""

    def __post_init__(self):
        if self.gens < 1:
            raise ValueError("at least one generator required")
        if self.D < 1:
            raise ValueError("degree must be at least 1")
        if not self.X_spec.multihom_validated:
            raise ValueError("variety must be validated with validate_multihomogeneous first")
        if (self.theta is None) == (self.ideal_generators is None):
            raise ValueError("give exactly one of theta or ideal_generators")
        if self.field.p and self.field.p <= self.D:
            raise ValueError(f"characteristic {self.field.p} must exceed the degree {self.D}")

    def lie(self) -> FreeLieAlgebra:
        return FreeLieAlgebra(self.gens, self.D, self.field)


@dataclass
class EmbeddingReport:
    domain_dims: list
    codomain_dims: list
    ranks: list
    kernel_dims: list
    verdicts: dict = dc_field(default_factory=dict)
    field: str = "Q"
    seconds: float = 0.0

    def __post_init__(self):
        assert all(k == d - r for k, d, r in zip(self.kernel_dims, self.domain_dims, self.ranks))


def ideal_of(s: EmbeddingScenario, L: FreeLieAlgebra | None = None) -> LieIdeal:
    L = L or s.lie()
    if s.theta is not None:
        return theta_verbal_ideal(s.theta, L)
    return ideal_closure(L, [L.parse(t) for t in s.ideal_generators])


@dataclass
class LieQuotient:
    """``B = L/M`` on the complement of M's pivots; ``xbar[i]`` is the image of ``x_i``."""

    algebra: FiniteLieAlgebra
    complement: list  # Lyndon words spanning the complement
    xbar: list
    _ideal: LieIdeal = dc_field(default=None, repr=False)
    _pos: dict = dc_field(default=None, repr=False)

    def image(self, a: LieElement) -> dict:
        """Image in B of an element of L."""
        r = self._ideal.space.reduce(a.vector())
        return {self._pos[i]: c for i, c in r.items()}


def quotient_lie(L: FreeLieAlgebra, M: LieIdeal) -> LieQuotient:
    """Structure constants of ``L/M`` in the basis of non-pivot Lyndon words."""
    keep = M.space.complement_indices()
    pos = {j: k for k, j in enumerate(keep)}
    words = [L.lyndon[j] for j in keep]

    def red(a: LieElement) -> dict:
        return {pos[i]: c for i, c in M.space.reduce(a.vector()).items()}

    table = {}
    for a in range(len(words)):
        for b in range(a + 1, len(words)):
            v = red(L.basis_element(words[a]).bracket(L.basis_element(words[b])))
            if v:
                table[(a, b)] = v
    names = [f"e{k + 1}" for k in range(len(words))]
    B = FiniteLieAlgebra(len(words), table, L.field, names, [L.degree(w) for w in words], L.D)
    return LieQuotient(B, words, [red(g) for g in L.gens()], M, pos)


def enveloping_subalgebra(pair: RepPair, M: LieIdeal) -> Subspace:
    """Span in F (as module coordinates of the free pair) of all products of elements of M."""
    polys = [pair.algebra.to_poly(a) for a in M.basis_elements()]
    space = Subspace(pair.dim, pair.field, [pair.cyclic])
    queue = [dict(pair.cyclic)]
    while queue:
        v = queue.pop()
        for poly in polys:
            w = pair.act_poly(v, poly)
            if w and space.add(w):
                queue.append(w)
    return space


def build_domain_pair(s: EmbeddingScenario) -> QuotientPair:
    """``(F / F X*(F_1, M), L)`` truncated at ``D``."""
    L = s.lie()
    free = free_module_pair(L.assoc, L)
    M = ideal_of(s, L)
    F1 = enveloping_subalgebra(free, M)
    pool = M.basis_elements()
    space = Subspace(free.dim, free.field)
    queue = []
    if pool:
        for ident in s.X_spec.identities:
            for v in identity_values(free, ident, pool, F1.basis):
                if space.add(v):
                    queue.append(v)
    close_under_action(free, space, queue)
    dom = quotient_pair(free, space)
    dom.ideal = M
    dom.F1 = F1
    return dom


def left_closed(dom: QuotientPair) -> bool:
    """Whether the quotiented subspace is also stable under left multiplication by generators."""
    free = dom.parent
    index = {w: k for k, w in enumerate(free.words)}
    for row in dom.space.basis:
        for g in range(free.algebra.ngens):
            v = {}
            for k, x in row.items():
                j = index.get((g,) + free.words[k])
                if j is not None:
                    v[j] = x
            if v not in dom.space:
                return False
    return True


def build_codomain(s: EmbeddingScenario, quotient: LieQuotient | None = None) -> WreathProduct:
    if quotient is None:
        L = s.lie()
        quotient = quotient_lie(L, ideal_of(s, L))
    wp = wreath_build(s.X_spec, s.gens, quotient.algebra, s.D, s.field)
    wp.quotient = quotient
    return wp


def phi_images(wp: WreathProduct) -> list:
    g = wp.gamma
    return [g.add(wp.y(i), g.from_b(wp.quotient.xbar[i])) for i in range(wp.base_gens)]


def phi_map(s: EmbeddingScenario, dom: QuotientPair, cod: WreathProduct, check: bool = True) -> PairHom:
    """x_i -> y_i + xbar_i, extended multiplicatively from the cyclic vector."""
    return extend_hom(dom, cod.module, phi_images(cod), cod.e(), check=check)


def verify_monomorphism(phi: PairHom) -> list[int]:
    """Kernel dimension of the module map in each degree."""
    return phi.kernel_dims()


def zero_image_coordinate(phi: PairHom, row: int) -> PairHom:
    """Copy of ``phi`` with the image of basis element ``row`` zeroed."""
    rows = [dict(r) for r in phi.module_map.rows]
    rows[row] = {}
    m = SparseMatrix(phi.module_map.nrows, phi.module_map.ncols, rows, phi.module_map.field)
    return PairHom(phi.dom, phi.codom, phi.algebra_map, m)


@dataclass
class Lemma3Result:
    injective: bool
    ideal_dims: list
    square_dims: list
    image_ranks: list
    square_maps_to_zero: bool


def _bracket_span(L: FreeLieAlgebra, elems: list) -> Subspace:
    space = Subspace(L.dim, L.field)
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            c = a.bracket(b)
            if c:
                space.add(c.vector())
    return space


def lemma3_check(s: EmbeddingScenario) -> Lemma3Result:
    """Injectivity of the map ``M/M^2 -> P/P^2`` induced by ``x_i -> (y_i, xbar_i)``."""
    L = s.lie()
    M = ideal_of(s, L)
    quo = quotient_lie(L, M)
    B, D = quo.algebra, s.D
    U = Envelope(B, D)
    letters = [(i, z) for z in U.monomials for i in range(s.gens) if 1 + U.degree(z) <= D]
    lindex = {t: k for k, t in enumerate(letters)}
    acts = []
    for c in range(B.dim):
        rows = []
        for i, z in letters:
            v = {}
            for z2, x in U.mul(z, c).items():
                k = lindex.get((i, z2))
                if k is not None:
                    v[k] = x
            rows.append(v)
        acts.append(SparseMatrix(len(letters), len(letters), rows, s.field))
    S = semidirect_build(GModule(B, len(letters), acts), B)
    chi_memo: dict = {}

    def chi_word(w):
        r = chi_memo.get(w)
        if r is None:
            if len(w) == 1:
                r = ({lindex[(w[0], ())]: 1}, dict(quo.xbar[w[0]]))
            else:
                u, v = standard_factorization(w)
                r = S.bracket(chi_word(u), chi_word(v))
            chi_memo[w] = r
        return r

    def chi(a: LieElement):
        acc = S.zero()
        for w, c in a.coords.items():
            acc = S.add(acc, S.scale(c, chi_word(w)))
        return acc

    Mbasis = M.basis_elements()
    sq = _bracket_span(L, Mbasis)
    ideal_dims = M.component_dims()
    square_dims = [0] * (D + 1)
    for p in sq.pivots:
        square_dims[L.coord_degree(p)] += 1
    ranks = []
    for d in range(D + 1):
        rows = []
        for a in M.basis_elements(d):
            img = chi(a)
            if img[1]:
                raise AssertionError("ideal element maps outside the abelian part")
            rows.append(img[0])
        ranks.append(rank(SparseMatrix(len(rows), len(letters), rows, s.field)) if rows else 0)
    sq_zero = all(not chi(L.from_vector(r))[0] for r in sq.basis)
    injective = sq_zero and all(r == m - q for r, m, q in zip(ranks, ideal_dims, square_dims))
    return Lemma3Result(injective, ideal_dims, square_dims, ranks, sq_zero)


@dataclass
class PropositionResult:
    holds: bool
    subpair_dims: list
    free_dims: list


def proposition_check(spec: VarietySpec, gens: int, Y: Sequence, D: int,
                      field: Field = QQ) -> PropositionResult:
    """Compare the subpair generated by ``Y`` and the cyclic vector with the free pair of rank |Y|.

    ``Y`` holds LieElements (or strings over x1..xn) of degree one, independent modulo L^2.
    """
    free = free_cyclic_pair(spec, gens, D, field)
    L = free.algebra
    Y = [L.parse(y) if isinstance(y, str) else y for y in Y]
    for y in Y:
        if not y.is_homogeneous() or y.degree() != 1:
            raise ValueError("elements of Y must be homogeneous of degree 1")
    lin = SparseMatrix(len(Y), L.dim, [y.vector() for y in Y], field)
    if rank(lin) != len(Y):
        raise ValueError("Y must be linearly independent modulo L^2")
    sub = subpair_generated(free, Y, [free.cyclic])
    ref = free_cyclic_pair(spec, len(Y), D, field)
    a, b = sub.graded_dims(), ref.graded_dims()
    return PropositionResult(a == b, a, b)


@dataclass
class CorollaryResult:
    holds: bool
    image_dims: list
    domain_dims: list


def corollary1_dims(dom: RepPair, wp: WreathProduct) -> CorollaryResult:
    """Graded dims of the subpair generated by ``y_i + xbar_i`` and the cyclic vector."""
    sub = subpair_generated(wp.module, phi_images(wp), [wp.e()])
    a, b = sub.graded_dims(), dom.graded_dims()
    return CorollaryResult(a == b, a, b)


@dataclass
class TheoremRun:
    scenario: EmbeddingScenario
    domain: QuotientPair
    codomain: WreathProduct
    phi: PairHom
    report: EmbeddingReport


def run_theorem(s: EmbeddingScenario) -> TheoremRun:
    t0 = time.perf_counter()
    dom = build_domain_pair(s)
    cod = build_codomain(s)
    phi = phi_map(s, dom, cod)
    ranks = phi.rank_by_degree()
    ker = [d - r for d, r in zip(dom.graded_dims(), ranks)]
    rep = EmbeddingReport(dom.graded_dims(), cod.graded_dims(), ranks, ker,
                          {"theorem": not any(ker)}, s.field.name, time.perf_counter() - t0)
    return TheoremRun(s, dom, cod, phi, rep)


def domain_dims_by_decomposition(s: EmbeddingScenario) -> list[int]:
    """Independent count of the domain dims from ``F = sum e_{a1}..e_{ak} F_1 / ...``.

    With ``U(L) = U(B-complement) (x) U(M)`` as graded spaces (PBW), the domain
    is graded-isomorphic to ``U(L/M) (x) (F_1 / X*(F_1, M))``; both factors are
    computed separately here and convolved.
    """
    L = s.lie()
    M = ideal_of(s, L)
    quo = quotient_lie(L, M)
    U = Envelope(quo.algebra, s.D)
    u_dims = [0] * (s.D + 1)
    for z in U.monomials:
        u_dims[U.degree(z)] += 1
    free = free_module_pair(L.assoc, L)
    F1 = enveloping_subalgebra(free, M)
    pool = M.basis_elements()
    X = Subspace(free.dim, free.field)
    if pool:
        for ident in s.X_spec.identities:
            for v in identity_values(free, ident, pool, F1.basis):
                X.add(v)
        # X*(F_1, M) is an F_1-submodule: close under M only
        polys = [L.to_poly(a) for a in pool]
        queue = list(X.basis)
        while queue:
            v = queue.pop()
            for poly in polys:
                w = free.act_poly(v, poly)
                if w and X.add(w):
                    queue.append(w)
    f1_dims = [0] * (s.D + 1)
    for r in F1.basis:
        f1_dims[free.degrees[min(r)]] += 1
    x_dims = [0] * (s.D + 1)
    for r in X.basis:
        x_dims[free.degrees[min(r)]] += 1
    q = [a - b for a, b in zip(f1_dims, x_dims)]
    return [sum(u_dims[k] * q[d - k] for k in range(d + 1)) for d in range(s.D + 1)]
