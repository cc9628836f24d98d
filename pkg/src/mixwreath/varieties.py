"""Varieties of representations given by identities ``y*v(x1, ..., xn) = 0``.

Identities are written in the grammar ``y*v1*v2 - y*v2*v1``: every monomial
starts with the module variable ``y`` followed by algebra variables ``v1, v2,
...``.  Verbal submodules are computed inside truncated representation pairs
(see :mod:`mixwreath.pairs`) from polarized substitution values, then closed
under the action of the whole pair algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .core import Subspace, vec_iadd
from .free_assoc import MonomialOrder, ParseError, parse_monomial_sum, render_terms
from .free_lie import subalgebra_closure
from .substitution import multihom_components, multidegree, polarized_instances

_ORDER = MonomialOrder()


def _var_names(k: int) -> list[str]:
    return [f"v{i + 1}" for i in range(k)]


@dataclass(frozen=True)
class RepIdentity:
    """``y * body = 0``; body is ``{word over v-variables: Fraction}``."""

    body: tuple  # sorted ((word, coef), ...)
    nvars: int

    @classmethod
    def from_terms(cls, terms: dict, nvars: int | None = None) -> "RepIdentity":
        terms = {tuple(w): c for w, c in terms.items() if c}
        if not terms:
            raise ValueError("identity body must be nonzero")
        used = max((max(w) + 1 for w in terms if w), default=0)
        return cls(tuple(sorted(terms.items())), max(used, nvars or 0))

    @classmethod
    def parse(cls, text: str) -> "RepIdentity":
        text = text.strip()
        names = []
        for tok in text.replace("*", " ").replace("+", " ").replace("-", " ").split():
            if tok.startswith("v") and tok[1:].isdigit():
                names.append(int(tok[1:]))
        k = max(names, default=0)
        if any(n < 1 for n in names):
            raise ParseError("variables are numbered from v1", text, 0)
        terms = parse_monomial_sum(text, _var_names(k), prefix="y")
        if not terms:
            raise ParseError("identity is zero", text, 0)
        return cls.from_terms(terms, k)

    @property
    def terms(self) -> dict:
        return dict(self.body)

    def render(self) -> str:
        return render_terms(self.terms, _var_names(self.nvars), _ORDER, prefix="y")

    def __str__(self):
        return self.render()

    def multidegrees(self) -> set:
        return {multidegree(w, self.nvars) for w, _ in self.body}

    def is_multihomogeneous(self) -> bool:
        return len(self.multidegrees()) == 1


def multihom_decompose(ident: RepIdentity) -> list[RepIdentity]:
    comps = multihom_components(ident.terms, ident.nvars)
    return [RepIdentity.from_terms(t, ident.nvars) for t in comps.values()]


@dataclass(frozen=True)
class VarietySpec:
    identities: tuple = ()
    multihom_validated: bool = False
    name: str = dc_field(default="", compare=False)

    @classmethod
    def parse(cls, texts: Sequence[str], name: str = "") -> "VarietySpec":
        return cls(tuple(RepIdentity.parse(t) for t in texts), False, name)

    def render(self) -> list[str]:
        return [i.render() for i in self.identities]


def validate_multihomogeneous(spec: VarietySpec) -> VarietySpec:
    """Replace every identity by its multihomogeneous components."""
    out = []
    for ident in spec.identities:
        for part in multihom_decompose(ident):
            if part not in out:
                out.append(part)
    return VarietySpec(tuple(out), True, spec.name)


def trivial_variety() -> VarietySpec:
    """All pairs on which the algebra acts as zero: ``y*v1 = 0``."""
    return validate_multihomogeneous(VarietySpec.parse(["y*v1"], "S"))


def all_representations() -> VarietySpec:
    return VarietySpec((), True, "all")


class VerbalSubmodule:
    """A graded subspace of a pair's module coordinates."""

    def __init__(self, pair, space: Subspace):
        self.pair = pair
        self.space = space

    def component_dims(self) -> list[int]:
        dims = [0] * (self.pair.D + 1)
        for c in self.space.pivots:
            dims[self.pair.degrees[c]] += 1
        return dims

    def __contains__(self, v: dict) -> bool:
        return v in self.space

    def is_graded(self) -> bool:
        for r in self.space.basis:
            if len({self.pair.degrees[i] for i in r}) > 1:
                return False
        return True


def identity_values(pair, ident: RepIdentity, pool: Sequence, module_vectors: Sequence[dict]):
    """Polarized values ``m * v(a_1, ...)`` of one multihomogeneous identity.

    ``pool`` holds homogeneous acting-algebra elements; yields module vectors.
    """
    alg = pair.algebra
    polys = [alg.to_poly(a) for a in pool]
    wts = [max(pair.algebra.coord_degree(i) for i in alg.vector(a)) for a in pool]
    order = sorted(range(len(pool)), key=lambda i: wts[i])
    polys = [polys[i] for i in order]
    wts = [wts[i] for i in order]
    f = pair.field
    insts_by_budget: dict = {}
    for m in module_vectors:
        dm = pair.degree_of(m)
        budget = pair.D - dm
        if budget < 0:
            continue
        if budget not in insts_by_budget:
            insts_by_budget[budget] = list(polarized_instances(ident.terms, ident.nvars, wts, budget))
        cache = {(): m}

        def act_seq(seq):
            v = cache.get(seq)
            if v is None:
                v = pair.act_poly(act_seq(seq[:-1]), polys[seq[-1]])
                cache[seq] = v
            return v

        for terms in insts_by_budget[budget]:
            acc: dict = {}
            for c, seq in terms:
                vec_iadd(acc, act_seq(seq), f, f(c))
            if acc:
                yield acc


def verbal_submodule(pair, spec: VarietySpec, subalgebra_gens: Sequence,
                     module_vectors: Sequence[dict] | None = None) -> VerbalSubmodule:
    """Verbal submodule of ``pair`` for ``spec`` relative to the given subalgebra.

    Values ``m * v(a_1, ...)`` are taken with ``m`` over ``module_vectors``
    (default: the whole module basis) and ``a_i`` over a graded basis of the
    subalgebra generated by ``subalgebra_gens``; the span is then closed under
    the action of every generator of the pair algebra.
    """
    if not spec.multihom_validated:
        raise ValueError("variety must be validated with validate_multihomogeneous first")
    if pair.field.p and pair.field.p <= pair.D and spec.identities:
        raise ValueError(f"characteristic {pair.field.p} must exceed the degree {pair.D} "
                         "for substitution values to span")
    if module_vectors is None:
        module_vectors = [{i: 1} for i in range(pair.dim)]
    space = Subspace(pair.dim, pair.field)
    queue = []
    if spec.identities:
        pool = subalgebra_closure(pair.algebra, list(subalgebra_gens))
        homog = []
        for a in pool:
            degs = {pair.algebra.coord_degree(i) for i in pair.algebra.vector(a)}
            if len(degs) != 1:
                raise ValueError("subalgebra generators must be homogeneous")
            homog.append(a)
        for ident in spec.identities:
            for v in identity_values(pair, ident, homog, module_vectors):
                if space.add(v):
                    queue.append(v)
    close_under_action(pair, space, queue)
    return VerbalSubmodule(pair, space)


def close_under_action(pair, space: Subspace, queue: list) -> None:
    """Grow ``space`` in place until it is stable under every generator action."""
    while queue:
        v = queue.pop()
        for g in range(pair.algebra.ngens):
            w = pair.act_gen(v, g)
            if w and space.add(w):
                queue.append(w)
