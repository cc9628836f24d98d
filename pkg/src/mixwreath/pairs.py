"""Truncated representation pairs (module, Lie algebra) and their morphisms.

A :class:`RepPair` stores a graded module basis and, for every generator of
the acting algebra, a matrix of its right action on module coordinates.  The
algebra object supplies brackets and expresses each of its elements as a
noncommutative polynomial in the generators (``to_poly``), which is how an
arbitrary element acts.
"""
from __future__ import annotations

import random
from typing import Sequence

from .core import SparseMatrix, Subspace, rank, vec_add, vec_iadd
from .free_assoc import FreeAssocAlgebra
from .free_lie import FreeLieAlgebra, LieElement, standard_factorization, subalgebra_closure
from .varieties import VarietySpec, VerbalSubmodule, close_under_action, verbal_submodule


class RepPair:
    def __init__(self, algebra, degrees: Sequence[int], actions: Sequence[SparseMatrix], D: int,
                 labels: Sequence[str] | None = None, cyclic: dict | None = None,
                 words: Sequence[tuple] | None = None):
        self.algebra = algebra
        self.field = algebra.field
        self.D = D
        self.degrees = list(degrees)
        self.actions = list(actions)
        self.labels = list(labels) if labels is not None else [f"m{i}" for i in range(len(degrees))]
        self.cyclic = cyclic
        # word over the algebra generators reaching each basis element from the cyclic vector
        self.words = list(words) if words is not None else None
        if len(self.actions) != algebra.ngens:
            raise ValueError("one action matrix per algebra generator required")

    def __repr__(self):
        return f"RepPair(dims={self.graded_dims()}, gens={self.algebra.ngens})"

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def graded_dims(self) -> list[int]:
        dims = [0] * (self.D + 1)
        for d in self.degrees:
            dims[d] += 1
        return dims

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, x in enumerate(self.degrees) if x == d]

    def degree_of(self, v: dict) -> int:
        degs = {self.degrees[i] for i in v}
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous")
        return degs.pop() if degs else 0

    def act_gen(self, v: dict, g: int) -> dict:
        return self.actions[g].rmul(v)

    def act_word(self, v: dict, word: tuple) -> dict:
        for g in word:
            if not v:
                break
            v = self.actions[g].rmul(v)
        return v

    def act_poly(self, v: dict, poly: dict) -> dict:
        out: dict = {}
        cache = {(): v}
        actions = self.actions

        def get(word):
            w = cache.get(word)
            if w is None:
                prev = get(word[:-1])
                w = actions[word[-1]].rmul(prev) if prev else {}
                cache[word] = w
            return w

        f = self.field
        for word, c in poly.items():
            w = get(word)
            if w:
                vec_iadd(out, w, f, c)
        return out

    def act(self, v: dict, elem) -> dict:
        return self.act_poly(v, self.algebra.to_poly(elem))

    def render_vector(self, v: dict) -> str:
        if not v:
            return "0"
        parts = []
        for i in sorted(v):
            c = self.field.to_str(v[i])
            parts.append(self.labels[i] if c == "1" else f"{c}*({self.labels[i]})")
        return " + ".join(parts)

    def representation_law_violations(self, rng: random.Random, samples: int = 200) -> list:
        """Random triples (m, a, b) with (m.a).b - (m.b).a != m.[a,b]."""
        bad = []
        alg = self.algebra
        for _ in range(samples):
            a = alg.random_element(rng)
            b = alg.random_element(rng)
            m = {rng.randrange(self.dim): 1} if self.dim else {}
            lhs = vec_add(self.act(self.act(m, a), b), self.act(self.act(m, b), a), self.field, -1)
            rhs = self.act(m, alg.bracket(a, b))
            if lhs != rhs:
                bad.append((m, a, b))
        return bad

    def action_dump(self) -> str:
        """Deterministic text dump of every action matrix."""
        lines = [f"# basis ({self.dim})"]
        for i, (d, lab) in enumerate(zip(self.degrees, self.labels)):
            lines.append(f"{i}\tdeg={d}\t{lab}")
        for g in range(self.algebra.ngens):
            lines.append(f"# action of {self.algebra.gen_names[g]}")
            for i, row in enumerate(self.actions[g].rows):
                if row:
                    ent = " ".join(f"{j}:{self.field.to_str(x)}" for j, x in sorted(row.items()))
                    lines.append(f"{i} -> {ent}")
        return "\n".join(lines) + "\n"


class QuotientPair(RepPair):
    """Quotient of a parent pair by an action-closed graded subspace."""

    def __init__(self, parent: RepPair, space: Subspace, keep: list[int], **kw):
        self.parent = parent
        self.space = space
        self.keep = keep
        self.newindex = {j: k for k, j in enumerate(keep)}
        super().__init__(**kw)

    def project(self, v: dict) -> dict:
        """Parent coordinates -> quotient coordinates."""
        r = self.space.reduce(v)
        return {self.newindex[j]: x for j, x in r.items()}

    def lift(self, v: dict) -> dict:
        return {self.keep[k]: x for k, x in v.items()}


def free_module_pair(assoc: FreeAssocAlgebra, algebra: FreeLieAlgebra | None = None) -> RepPair:
    """The truncated regular pair (F, L): F acted on by right multiplication."""
    if algebra is None:
        algebra = FreeLieAlgebra(assoc.ngens, assoc.D, assoc.field, assoc.weights, assoc.names)
    words = assoc.words()
    index = {w: i for i, w in enumerate(words)}
    actions = []
    for g in range(assoc.ngens):
        rows = []
        for w in words:
            nw = w + (g,)
            rows.append({index[nw]: 1} if nw in index else {})
        actions.append(SparseMatrix(len(words), len(words), rows, assoc.field))
    labels = [assoc.render(assoc.word(w)) if w else "1" for w in words]
    return RepPair(algebra, [assoc.degree(w) for w in words], actions, assoc.D, labels,
                   cyclic={index[()]: 1}, words=words)


def quotient_pair(p: RepPair, s: VerbalSubmodule | Subspace) -> QuotientPair:
    space = s.space if isinstance(s, VerbalSubmodule) else s
    for row in space.basis:
        for g in range(p.algebra.ngens):
            if p.act_gen(row, g) not in space:
                raise ValueError(f"closure violation: subspace not stable under {p.algebra.gen_names[g]}")
    keep = space.complement_indices()
    newindex = {j: k for k, j in enumerate(keep)}
    actions = []
    for g in range(p.algebra.ngens):
        rows = []
        for j in keep:
            r = space.reduce(p.act_gen({j: 1}, g))
            rows.append({newindex[i]: x for i, x in r.items()})
        actions.append(SparseMatrix(len(keep), len(keep), rows, p.field))
    cyclic = None
    if p.cyclic is not None:
        r = space.reduce(p.cyclic)
        cyclic = {newindex[i]: x for i, x in r.items()}
    words = [p.words[j] for j in keep] if p.words is not None else None
    return QuotientPair(p, space, keep, algebra=p.algebra, degrees=[p.degrees[j] for j in keep],
                        actions=actions, D=p.D, labels=[p.labels[j] for j in keep],
                        cyclic=cyclic, words=words)


def free_cyclic_pair(spec: VarietySpec, gens: int, D: int, field=None,
                     weights: Sequence[int] | None = None,
                     names: Sequence[str] | None = None) -> QuotientPair:
    """Free cyclic pair of the variety on ``gens`` generators, truncated at ``D``."""
    from .core import QQ
    assoc = FreeAssocAlgebra(gens, D, field or QQ, weights, names)
    free = free_module_pair(assoc)
    sub = verbal_submodule(free, spec, free.algebra.gens())
    return quotient_pair(free, sub)


def graded_dims(p: RepPair) -> list[int]:
    return p.graded_dims()


class SubPair(RepPair):
    """Subpair spanned by ``basis`` (parent coordinates, echelon rows)."""

    def __init__(self, parent: RepPair, basis: list[dict], subalgebra: list, **kw):
        self.parent = parent
        self.basis = basis
        self.subalgebra = subalgebra
        self._pivots = {min(r): k for k, r in enumerate(basis)}
        super().__init__(**kw)

    def coords(self, v: dict) -> dict:
        """Coordinates of a parent vector lying in the subpair."""
        return {self._pivots[c]: x for c, x in v.items() if c in self._pivots}


def subpair_generated(p: RepPair, lie_gens: Sequence, module_gens: Sequence[dict]) -> SubPair:
    """Smallest subpair containing the given algebra and module elements.

    The result is presented as a representation of the free Lie algebra on
    ``len(lie_gens)`` letters (letter k acting as ``lie_gens[k]``), which is
    the form the freeness comparisons need.  Generators must be homogeneous.
    """
    alg = p.algebra
    weights = []
    for a in lie_gens:
        degs = {alg.coord_degree(i) for i in alg.vector(a)}
        if len(degs) != 1:
            raise ValueError("subpair generators must be nonzero and homogeneous")
        weights.append(degs.pop())
    polys = [alg.to_poly(a) for a in lie_gens]
    subalgebra = subalgebra_closure(alg, list(lie_gens))
    space = Subspace(p.dim, p.field)
    queue = []
    for m in module_gens:
        p.degree_of(m)
        if m and space.add(m):
            queue.append(m)
    while queue:
        v = queue.pop()
        for poly in polys:
            w = p.act_poly(v, poly)
            if w and space.add(w):
                queue.append(w)
    basis = space.basis
    pivots = {min(r): k for k, r in enumerate(basis)}
    actions = []
    for poly in polys:
        rows = []
        for r in basis:
            w = p.act_poly(r, poly)
            rows.append({pivots[c]: x for c, x in w.items() if c in pivots})
        actions.append(SparseMatrix(len(basis), len(basis), rows, p.field))
    free = FreeLieAlgebra(len(lie_gens), p.D, p.field, weights or None,
                          [f"z{k + 1}" for k in range(len(lie_gens))])
    degrees = [p.degrees[min(r)] for r in basis]
    labels = [p.render_vector(r) for r in basis]
    return SubPair(p, basis, subalgebra, algebra=free, degrees=degrees, actions=actions, D=p.D,
                   labels=labels)


class PairHom:
    """Morphism of pairs: generator images in the target algebra plus a module matrix."""

    def __init__(self, dom: RepPair, codom: RepPair, algebra_map: list, module_map: SparseMatrix):
        self.dom = dom
        self.codom = codom
        self.algebra_map = algebra_map
        self.module_map = module_map
        self._lie_cache: dict = {}

    def image_of_vector(self, v: dict) -> dict:
        return self.module_map.rmul(v)

    def image_of_lie(self, a: LieElement):
        """Image of an element of the (free) domain algebra, via Lyndon bracketings."""
        calg = self.codom.algebra
        acc = calg.zero()
        for w, c in a.coords.items():
            acc = calg.add(acc, calg.scale(c, self._image_of_word(w)))
        return acc

    def _image_of_word(self, w: tuple):
        img = self._lie_cache.get(w)
        if img is None:
            if len(w) == 1:
                img = self.algebra_map[w[0]]
            else:
                u, v = standard_factorization(w)
                img = self.codom.algebra.bracket(self._image_of_word(u), self._image_of_word(v))
            self._lie_cache[w] = img
        return img

    def intertwining_failures(self) -> list[tuple[int, int]]:
        """(basis index, generator) pairs where M(m.x) != M(m).phi(x)."""
        bad = []
        polys = [self.codom.algebra.to_poly(a) for a in self.algebra_map]
        for j in range(self.dom.dim):
            mj = self.module_map.rows[j]
            for g, poly in enumerate(polys):
                lhs = self.module_map.rmul(self.dom.act_gen({j: 1}, g))
                rhs = self.codom.act_poly(mj, poly)
                if lhs != rhs:
                    bad.append((j, g))
        return bad

    def rank_by_degree(self) -> list[int]:
        out = []
        for d in range(self.dom.D + 1):
            idx = self.dom.indices_of_degree(d)
            m = SparseMatrix(len(idx), self.codom.dim, [self.module_map.rows[j] for j in idx],
                             self.dom.field)
            out.append(rank(m))
        return out

    def kernel_dims(self) -> list[int]:
        dims = self.dom.graded_dims()
        return [d - r for d, r in zip(dims, self.rank_by_degree())]

    def is_graded(self) -> bool:
        for j, row in enumerate(self.module_map.rows):
            if any(self.codom.degrees[i] != self.dom.degrees[j] for i in row):
                return False
        return True


class NotAMorphism(ValueError):
    """Generator images violate the domain's relations in the target."""


def extend_hom(dom: RepPair, codom: RepPair, algebra_images: Sequence, e_image: dict,
               check: bool = True) -> PairHom:
    """Extend generator images to a pair morphism out of a cyclic pair.

    ``dom`` must carry ``words`` (it comes from a free pair or a quotient of one).
    The module map sends the basis element reached by ``w`` to
    ``e_image . phi(w_1) . phi(w_2) ...``.
    """
    if dom.words is None:
        raise ValueError("domain pair has no word labels; it must be a (quotient of a) free pair")
    if len(algebra_images) != dom.algebra.ngens:
        raise ValueError("one image per domain generator required")
    polys = [codom.algebra.to_poly(a) for a in algebra_images]
    memo = {(): dict(e_image)}

    def img(w):
        v = memo.get(w)
        if v is None:
            v = codom.act_poly(img(w[:-1]), polys[w[-1]])
            memo[w] = v
        return v

    rows = [img(tuple(w)) for w in dom.words]
    hom = PairHom(dom, codom, list(algebra_images), SparseMatrix(dom.dim, codom.dim, rows, dom.field))
    if check:
        bad = hom.intertwining_failures()
        if bad:
            j, g = bad[0]
            raise NotAMorphism(f"not a morphism into the variety: relation through "
                               f"{dom.labels[j]} * {dom.algebra.gen_names[g]} maps to nonzero "
                               f"({len(bad)} failures)")
    return hom


def module_closure(p: RepPair, vectors: Sequence[dict], polys: Sequence[dict]) -> Subspace:
    """Span of ``vectors`` closed under the given acting polynomials."""
    space = Subspace(p.dim, p.field)
    queue = [v for v in vectors if v and space.add(v)]
    while queue:
        v = queue.pop()
        for poly in polys:
            w = p.act_poly(v, poly)
            if w and space.add(w):
                queue.append(w)
    return space


def submodule_closure(p: RepPair, vectors: Sequence[dict]) -> Subspace:
    """Span of ``vectors`` closed under every generator of the pair algebra."""
    space = Subspace(p.dim, p.field)
    queue = [v for v in vectors if v and space.add(v)]
    close_under_action(p, space, queue)
    return space
