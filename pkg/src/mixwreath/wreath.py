"""Mixed verbal wreath product of a free cyclic pair by a graded Lie algebra B.

Ingredients, all truncated at total degree ``D``:

* ``U``: the enveloping algebra of ``B`` with ordered PBW monomials ``z``;
* ``P``: the free Lie algebra on letters ``y_i.z`` of degree ``1 + deg z``;
* ``Q = W / X*(W, P)`` with ``W = U(P)``, the free cyclic pair of the base variety on those letters;
* the module ``U (x) Q`` with basis ``z (x) q``, acted on by ``Gamma = P x| B``.

A letter of ``P`` acts on the ``Q`` factor.  A basis element ``b`` of ``B`` acts by
``(z (x) w) b = zb (x) w + z (x) w.b`` where ``w.b`` is the derivation of ``W`` with
``(y_i.z) b = y_i.(zb)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .core import QQ, Field, SparseMatrix, Subspace, rank, vec_add, vec_iadd, vec_scale
from .extensions import FiniteLieAlgebra
from .free_lie import FreeLieAlgebra, LieElement, subalgebra_closure
from .pairs import QuotientPair, RepPair, extend_hom, free_cyclic_pair, submodule_closure
from .varieties import VarietySpec, identity_values


class Envelope:
    """Truncated enveloping algebra of a graded finite Lie algebra in PBW form.

    Monomials are nondecreasing tuples of basis indices of total degree <= D.
    """

    def __init__(self, B: FiniteLieAlgebra, D: int):
        if any(d < 1 for d in B.degrees):
            raise ValueError("top algebra basis must have positive degrees")
        for (i, j), v in B.table.items():
            if any(B.degrees[t] != B.degrees[i] + B.degrees[j] for t in v):
                raise ValueError("top algebra brackets must respect the grading")
        self.B = B
        self.D = D
        self.field = B.field
        mons = [()]
        frontier = [()]
        while frontier:
            nxt = []
            for z in frontier:
                for c in range(z[-1] if z else 0, B.dim):
                    w = z + (c,)
                    if self.degree(w) <= D:
                        nxt.append(w)
            mons.extend(nxt)
            frontier = nxt
        self.monomials = sorted(mons, key=lambda z: (self.degree(z), z))
        self.index = {z: k for k, z in enumerate(self.monomials)}
        self._memo: dict = {}

    def degree(self, z: tuple) -> int:
        return sum(self.B.degrees[c] for c in z)

    def straighten(self, word: tuple) -> dict:
        """PBW normal form of an arbitrary product of basis elements."""
        if self.degree(word) > self.D:
            return {}
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if a > b:
                f = self.field
                out = dict(self.straighten(word[:k] + (b, a) + word[k + 2:]))
                for t, c in self.B.basis_bracket(a, b).items():
                    vec_iadd(out, self.straighten(word[:k] + (t,) + word[k + 2:]), f, c)
                break
        else:
            out = {word: 1}
        self._memo[word] = out
        return out

    def mul(self, z: tuple, c: int) -> dict:
        return self.straighten(z + (c,))

    def render(self, z: tuple) -> str:
        return "*".join(self.B.names[c] for c in z) if z else "1"


class GammaAlgebra:
    """``P x| B`` with elements ``(p, b)``: p a LieElement of P, b a vector over B.

    Generators are the letters of P followed by the basis of B.
    """

    def __init__(self, P: FreeLieAlgebra, B: FiniteLieAlgebra, gen_deriv: list):
        self.P = P
        self.B = B
        self.field = P.field
        self.np = P.ngens
        # gen_deriv[g][c] = letter vector of (letter g) . e_c
        self.gen_deriv = gen_deriv
        self._dmemo: dict = {}

    def __repr__(self):
        return f"GammaAlgebra(dim P={self.P.dim}, dim B={self.B.dim})"

    @property
    def ngens(self) -> int:
        return self.np + self.B.dim

    @property
    def dim(self) -> int:
        return self.P.dim + self.B.dim

    @property
    def gen_names(self) -> list[str]:
        return self.P.gen_names + self.B.names

    @property
    def gen_degrees(self) -> list[int]:
        return self.P.gen_degrees + self.B.degrees

    def gen(self, i: int) -> tuple:
        if i < self.np:
            return (self.P.gen(i), {})
        return (self.P.zero(), {i - self.np: 1})

    def from_p(self, p: LieElement) -> tuple:
        return (p, {})

    def from_b(self, b: dict) -> tuple:
        return (self.P.zero(), dict(b))

    def zero(self) -> tuple:
        return (self.P.zero(), {})

    def add(self, x: tuple, y: tuple) -> tuple:
        return (x[0] + y[0], vec_add(x[1], y[1], self.field))

    def scale(self, c, x: tuple) -> tuple:
        return (x[0].scale(c), vec_scale(x[1], self.field(c), self.field))

    def vector(self, x: tuple) -> dict:
        v = x[0].vector()
        v.update({self.P.dim + c: y for c, y in x[1].items()})
        return v

    def from_vector(self, v: dict) -> tuple:
        n = self.P.dim
        return (self.P.from_vector({i: c for i, c in v.items() if i < n}),
                {i - n: c for i, c in v.items() if i >= n})

    def coord_degree(self, i: int) -> int:
        if i < self.P.dim:
            return self.P.coord_degree(i)
        return self.B.degrees[i - self.P.dim]

    def to_poly(self, x: tuple) -> dict:
        out = dict(self.P.to_poly(x[0]))
        for c, y in x[1].items():
            out[(self.np + c,)] = y
        return out

    def derive_basis(self, w: tuple, c: int) -> dict:
        """Lyndon coordinates of ``(basis element w) . e_c``."""
        key = (w, c)
        hit = self._dmemo.get(key)
        if hit is not None:
            return hit
        P, f = self.P, self.field
        out: dict = {}
        for word, x in P.expand(w).items():
            for j, g in enumerate(word):
                for h, y in self.gen_deriv[g][c].items():
                    nw = word[:j] + (h,) + word[j + 1:]
                    if P.degree(nw) <= P.D:
                        vec_iadd(out, {nw: x * y}, f)
        res = P.coords_of(out)
        self._dmemo[key] = res
        return res

    def derive(self, p: LieElement, b: dict) -> LieElement:
        """The derivation ``p -> [p, b]`` of P induced by ``b`` in B."""
        out: dict = {}
        f = self.field
        for w, x in p.coords.items():
            for c, y in b.items():
                vec_iadd(out, self.derive_basis(w, c), f, x * y)
        return LieElement(self.P, out)

    def bracket(self, x: tuple, y: tuple) -> tuple:
        (p1, b1), (p2, b2) = x, y
        p = p1.bracket(p2) + self.derive(p1, b2) - self.derive(p2, b1)
        return (p, self.B.bracket(b1, b2))

    def random_element(self, rng: random.Random, d: int | None = None) -> tuple:
        return (self.P.random_element(rng, d), self.B.random_element(rng, d))

    def render(self, x: tuple) -> str:
        parts = []
        if x[0]:
            parts.append(self.P.render(x[0]))
        for c in sorted(x[1]):
            parts.append(f"{self.field.to_str(x[1][c])}*{self.B.names[c]}")
        return " + ".join(parts) if parts else "0"


@dataclass
class WreathProduct:
    base_spec: VarietySpec
    base_gens: int
    top: FiniteLieAlgebra
    D: int
    field: Field
    envelope: Envelope
    p_generators: list  # (i, z) per letter of P
    P: FreeLieAlgebra
    Q: QuotientPair
    gamma: GammaAlgebra
    module: RepPair
    basis_pairs: list  # (z index, q index) per module basis element
    base_pair: QuotientPair = dc_field(repr=False, default=None)
    _index: dict = dc_field(repr=False, default=None)

    def y(self, i: int) -> tuple:
        """The letter ``y_i`` (trivial z-word) as an element of Gamma."""
        return self.gamma.gen(self.p_generators.index((i, ())))

    def e(self) -> dict:
        return dict(self.module.cyclic)

    def module_index(self, z: tuple, q: int) -> int | None:
        return self._index.get((self.envelope.index[z], q))

    def graded_dims(self) -> list[int]:
        return self.module.graded_dims()

    def gamma_dims(self) -> list[int]:
        dims = [0] * (self.D + 1)
        for i in range(self.gamma.dim):
            dims[self.gamma.coord_degree(i)] += 1
        return dims


def _letter_name(i: int, z: tuple, B: FiniteLieAlgebra) -> str:
    return f"y{i + 1}" + "".join(f".{B.names[c]}" for c in z)


def wreath_build(base_spec: VarietySpec, base_gens: int, top: FiniteLieAlgebra, D: int,
                 field: Field | None = None) -> WreathProduct:
    """Build the truncated mixed wreath product of the free base pair on ``y_1..y_n`` by ``top``."""
    field = field or top.field
    if field != top.field:
        raise ValueError("top algebra is over a different field")
    if D < 1:
        raise ValueError("degree must be at least 1")
    if base_gens < 1:
        raise ValueError("at least one base generator required")
    if len(set(top.names)) != top.dim:
        raise ValueError("top basis names must be distinct")
    if not base_spec.multihom_validated:
        raise ValueError("base variety must be validated with validate_multihomogeneous first")
    U = Envelope(top, D)
    letters = [(i, z) for z in U.monomials for i in range(base_gens) if 1 + U.degree(z) <= D]
    letters.sort(key=lambda t: (1 + U.degree(t[1]), U.index[t[1]], t[0]))
    lindex = {t: k for k, t in enumerate(letters)}
    weights = [1 + U.degree(z) for _, z in letters]
    names = [_letter_name(i, z, top) for i, z in letters]
    P = FreeLieAlgebra(len(letters), D, field, weights, names)
    gen_deriv = []
    for i, z in letters:
        row = []
        for c in range(top.dim):
            v = {}
            for z2, x in U.mul(z, c).items():
                k = lindex.get((i, z2))
                if k is not None:
                    v[k] = x
            row.append(v)
        gen_deriv.append(row)
    gamma = GammaAlgebra(P, top, gen_deriv)
    Q = free_cyclic_pair(base_spec, len(letters), D, field, weights, names)

    # module basis z (x) q, ordered by total degree then z then q
    pairs = [(zi, qi) for zi, z in enumerate(U.monomials) for qi in range(Q.dim)
             if U.degree(z) + Q.degrees[qi] <= D]
    pairs.sort(key=lambda t: (U.degree(U.monomials[t[0]]) + Q.degrees[t[1]], t[0], t[1]))
    index = {t: k for k, t in enumerate(pairs)}
    n = len(pairs)
    degs = [U.degree(U.monomials[zi]) + Q.degrees[qi] for zi, qi in pairs]
    parent_index = {w: k for k, w in enumerate(Q.parent.words)}

    def put(out, zi, qvec, scale=1):
        for qj, x in qvec.items():
            k = index.get((zi, qj))
            if k is not None:
                vec_iadd(out, {k: x}, field, scale)

    actions = []
    for g in range(len(letters)):
        rows = []
        for zi, qi in pairs:
            out: dict = {}
            put(out, zi, Q.act_gen({qi: 1}, g))
            rows.append(out)
        actions.append(SparseMatrix(n, n, rows, field))
    qderiv = [[_derive_word(Q.words[qi], c, gen_deriv, Q, parent_index) for qi in range(Q.dim)]
              for c in range(top.dim)]
    for c in range(top.dim):
        rows = []
        for zi, qi in pairs:
            out = {}
            for z2, x in U.mul(U.monomials[zi], c).items():
                put(out, U.index[z2], {qi: 1}, x)
            put(out, zi, qderiv[c][qi])
            rows.append(out)
        actions.append(SparseMatrix(n, n, rows, field))
    q_one = Q.words.index(())
    labels = [f"{U.render(U.monomials[zi])} (x) {Q.labels[qi]}" for zi, qi in pairs]
    words = [tuple(len(letters) + c for c in U.monomials[zi]) + tuple(Q.words[qi]) for zi, qi in pairs]
    module = RepPair(gamma, degs, actions, D, labels, cyclic={index[(0, q_one)]: 1}, words=words)
    wp = WreathProduct(base_spec, base_gens, top, D, field, U, letters, P, Q, gamma, module, pairs,
                       free_cyclic_pair(base_spec, base_gens, D, field,
                                        names=[f"y{i + 1}" for i in range(base_gens)]))
    wp._index = index
    return wp


def _derive_word_terms(word: tuple, c: int, gen_deriv: list) -> dict:
    """Derivation by ``e_c`` of a W word, as {word: coef} (no truncation)."""
    out: dict = {}
    for j, g in enumerate(word):
        for h, y in gen_deriv[g][c].items():
            nw = word[:j] + (h,) + word[j + 1:]
            out[nw] = out.get(nw, 0) + y
    return out


def _derive_word(word: tuple, c: int, gen_deriv: list, Q: QuotientPair, parent_index: dict) -> dict:
    f = Q.field
    vec: dict = {}
    for nw, y in _derive_word_terms(word, c, gen_deriv).items():
        k = parent_index.get(nw)
        if k is not None:
            vec_iadd(vec, {k: y}, f)
    return Q.project(vec)


def derivation_invariance_failures(wp: WreathProduct) -> list[tuple[int, int]]:
    """(verbal basis row, top basis index) pairs where the derivation leaves X*(W, P)."""
    Q = wp.Q
    parent_index = {w: k for k, w in enumerate(Q.parent.words)}
    f = wp.field
    bad = []
    for r, row in enumerate(Q.space.basis):
        for c in range(wp.top.dim):
            vec: dict = {}
            for k, x in row.items():
                for nw, y in _derive_word_terms(Q.parent.words[k], c, wp.gamma.gen_deriv).items():
                    j = parent_index.get(nw)
                    if j is not None:
                        vec_iadd(vec, {j: x * y}, f)
            if vec not in Q.space:
                bad.append((r, c))
    return bad


def wreath_action(wp: WreathProduct, m: dict, g: tuple) -> dict:
    """Action of an element ``g = (p, b)`` of Gamma on module coordinates ``m``."""
    return wp.module.act(m, g)


def leibniz_violations(wp: WreathProduct, rng: random.Random, samples: int = 200) -> list:
    """Random checks of ``(z (x) w1 w2) b = zb (x) w1 w2 + z (x) (w1.b) w2 + z (x) w1 (w2.b)``."""
    U, mod, f = wp.envelope, wp.module, wp.field
    nl = len(wp.p_generators)
    q_one = wp.Q.words.index(())
    weights = wp.P.weights
    gd = wp.gamma.gen_deriv

    def zvec(z):
        k = wp._index.get((U.index[z], q_one))
        return {k: 1} if k is not None else {}

    def tensor(zterms: dict, wterms: dict) -> dict:
        out: dict = {}
        for z, x in zterms.items():
            base = zvec(z)
            for w, y in wterms.items():
                vec_iadd(out, mod.act_word(base, w), f, x * y)
        return out

    def rand_word(budget):
        w = []
        while rng.random() < 0.7:
            opts = [g for g in range(nl) if weights[g] <= budget]
            if not opts:
                break
            g = rng.choice(opts)
            w.append(g)
            budget -= weights[g]
        return tuple(w), budget

    bad = []
    if not wp.top.dim:
        return bad
    for _ in range(samples):
        z = rng.choice(U.monomials)
        budget = wp.D - U.degree(z)
        w1, budget = rand_word(budget)
        w2, budget = rand_word(budget)
        c = rng.randrange(wp.top.dim)
        lhs = mod.act_gen(tensor({z: 1}, {w1 + w2: 1}), nl + c)
        rhs = tensor(U.mul(z, c), {w1 + w2: 1})
        d1 = {u + w2: y for u, y in _derive_word_terms(w1, c, gd).items()}
        d2 = {w1 + u: y for u, y in _derive_word_terms(w2, c, gd).items()}
        rhs = vec_add(rhs, tensor({z: 1}, d1), f)
        rhs = vec_add(rhs, tensor({z: 1}, d2), f)
        if lhs != rhs:
            bad.append((z, w1, w2, c))
    return bad


@dataclass
class Definition1Report:
    conditions: dict  # name -> bool
    details: dict

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())


def check_definition1(wp: WreathProduct, module: RepPair | None = None) -> Definition1Report:
    """Check the four defining conditions of the wreath pair up to degree D.

    (1) the base free pair embeds as a subpair; (2) the y-letters and B generate
    Gamma; (3) the cyclic vector generates the module; (4) the restriction to P
    satisfies every identity of the base variety.  ``module`` overrides the
    stored module (used for fault injection).
    """
    mod = module if module is not None else wp.module
    gamma, D = wp.gamma, wp.D
    details = {}
    # (1)
    base = wp.base_pair
    ok1 = True
    try:
        hom = extend_hom(base, mod, [wp.y(i) for i in range(wp.base_gens)], mod.cyclic)
        ker = hom.kernel_dims()
        details["base_kernel_dims"] = ker
        ok1 = not any(ker)
    except ValueError as exc:
        details["base_embedding_error"] = str(exc)
        ok1 = False
    L1 = base.algebra
    ranks = []
    for d in range(D + 1):
        rows = [gamma.vector(gamma.from_p(_lift_letters(L1.basis_element(w), wp))) for w in L1.basis(d)]
        ranks.append(rank(SparseMatrix(len(rows), gamma.dim, rows, wp.field)) if rows else 0)
    details["base_algebra_ranks"] = ranks
    ok1 = ok1 and ranks == L1.component_dims()
    # (2)
    gens = [wp.y(i) for i in range(wp.base_gens)] + [gamma.from_b({c: 1}) for c in range(wp.top.dim)]
    sub = subalgebra_closure(gamma, gens)
    sub_dims = [0] * (D + 1)
    for a in sub:
        sub_dims[max(gamma.coord_degree(i) for i in gamma.vector(a))] += 1
    details["generated_dims"] = sub_dims
    ok2 = sub_dims == wp.gamma_dims()
    # (3)
    closure = submodule_closure(mod, [mod.cyclic])
    details["cyclic_span"] = closure.dim
    ok3 = closure.dim == mod.dim
    # (4)
    pool = [gamma.from_p(wp.P.basis_element(w)) for w in wp.P.lyndon]
    basis = [{k: 1} for k in range(mod.dim)]
    nonzero = 0
    for ident in wp.base_spec.identities:
        for v in identity_values(mod, ident, pool, basis):
            nonzero += 1
            break
    details["identity_failures"] = nonzero
    ok4 = nonzero == 0
    return Definition1Report({"subpair": ok1, "generation": ok2, "cyclic": ok3, "variety": ok4},
                             details)


def _lift_letters(a: LieElement, wp: WreathProduct) -> LieElement:
    """Element of the base free Lie algebra on y_i, rewritten in the letters of P."""
    m = {i: wp.p_generators.index((i, ())) for i in range(wp.base_gens)}
    terms = {tuple(m[g] for g in w): c for w, c in a.alg.to_poly(a).items()}
    return LieElement(wp.P, wp.P.coords_of(terms))


def inject_fault(module: RepPair, row: int, gen: int, target: dict) -> RepPair:
    """Copy of ``module`` where ``basis[row] . gen`` gains ``target``."""
    actions = list(module.actions)
    m = actions[gen]
    rows = [dict(r) for r in m.rows]
    rows[row] = vec_add(rows[row], target, module.field)
    actions[gen] = SparseMatrix(m.nrows, m.ncols, rows, m.field)
    return RepPair(module.algebra, module.degrees, actions, module.D, module.labels,
                   module.cyclic, module.words)


def extend_universal(wp: WreathProduct, target: RepPair, y_images: Sequence, b_images: Sequence,
                     e_image: dict):
    """Extend images of ``y_i``, the basis of B and the cyclic vector to a pair morphism.

    Letters ``y_i.z`` go to the left-normed bracket of the image of ``y_i`` with
    the images of the factors of ``z``.  Raises NotAMorphism when the images do
    not define a morphism.
    """
    calg = target.algebra
    images = []
    for i, z in wp.p_generators:
        a = y_images[i]
        for c in z:
            a = calg.bracket(a, b_images[c])
        images.append(a)
    images.extend(b_images)
    return extend_hom(wp.module, target, images, e_image)


def action_table(wp: WreathProduct) -> str:
    return wp.module.action_dump()
