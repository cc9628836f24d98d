"""Free Lie algebras inside their truncated envelopes, in Lyndon coordinates.

The basis element attached to a Lyndon word ``w`` with right standard
factorization ``w = uv`` is ``[P_u, P_v]``.  Its expansion equals ``w`` plus
lexicographically larger words with the same letters, so any Lie polynomial
is recoordinatized by repeatedly peeling off its smallest word.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .core import QQ, Field, Subspace
from .free_assoc import AssocElement, FreeAssocAlgebra, ParseError, tokenize
from .substitution import multihom_components, polarized_instances


def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    n = len(w)
    return n > 0 and all(w < w[i:] + w[:i] for i in range(1, n))


def standard_factorization(w: tuple) -> tuple[tuple, tuple]:
    """Split a Lyndon word of length >= 2 at its longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no proper Lyndon suffix")


def lyndon_words(weights: Sequence[int], max_weight: int) -> list[tuple]:
    """All Lyndon words of weight <= max_weight, ordered by (weight, word)."""
    out = []
    stack = [()]
    while stack:
        w = stack.pop()
        wt = sum(weights[i] for i in w)
        if w and is_lyndon(w):
            out.append((wt, w))
        for i, a in enumerate(weights):
            if wt + a <= max_weight:
                stack.append(w + (i,))
    out.sort()
    return [w for _, w in out]


class LieElement:
    """Coordinates in the Lyndon basis: ``{lyndon word: coef}``."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg: "FreeLieAlgebra", coords: dict):
        self.alg = alg
        self.coords = {tuple(w): c for w, c in coords.items() if c}

    def _check(self, other):
        if not isinstance(other, LieElement) or not self.alg.same_ambient(other.alg):
            raise ValueError("ambient mismatch")

    def __add__(self, other):
        self._check(other)
        return LieElement(self.alg, _add(self.coords, other.coords, self.alg.field, 1))

    def __sub__(self, other):
        self._check(other)
        return LieElement(self.alg, _add(self.coords, other.coords, self.alg.field, -1))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        f = self.alg.field
        c = f(c)
        return LieElement(self.alg, {w: f.norm(x * c) for w, x in self.coords.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, LieElement):
            return self.alg.same_ambient(other.alg) and self.coords == other.coords
        if other == 0:
            return not self.coords
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __bool__(self):
        return bool(self.coords)

    def __repr__(self):
        return f"LieElement({self})"

    def __str__(self):
        return self.alg.render(self)

    def bracket(self, other: "LieElement") -> "LieElement":
        return bracket(self, other)

    def to_assoc(self) -> AssocElement:
        return lie_to_assoc(self)

    def vector(self) -> dict:
        idx = self.alg.index
        return {idx[w]: c for w, c in self.coords.items()}

    def degree(self) -> int:
        return max((self.alg.degree(w) for w in self.coords), default=-1)

    def degrees(self) -> set:
        return {self.alg.degree(w) for w in self.coords}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def components(self) -> dict:
        out: dict = {}
        for w, c in self.coords.items():
            out.setdefault(self.alg.degree(w), {})[w] = c
        return {d: LieElement(self.alg, t) for d, t in sorted(out.items())}


def _add(a: dict, b: dict, field: Field, s) -> dict:
    out = dict(a)
    for k, y in b.items():
        x = field.norm(out.get(k, 0) + s * y)
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


class FreeLieAlgebra:
    """Free Lie algebra on weighted generators, truncated above degree ``D``."""

    def __init__(self, ngens: int, D: int, field: Field = QQ, weights: Sequence[int] | None = None,
                 names: Sequence[str] | None = None):
        self.assoc = FreeAssocAlgebra(ngens, D, field, weights, names)
        self.ngens = ngens
        self.D = D
        self.field = field
        self.weights = self.assoc.weights
        self.names = self.assoc.names
        self.lyndon = lyndon_words(self.weights, D)
        self.index = {w: i for i, w in enumerate(self.lyndon)}
        self._expand: dict = {}

    def __repr__(self):
        return f"FreeLieAlgebra({self.names}, D={self.D}, {self.field.name})"

    @property
    def dim(self) -> int:
        return len(self.lyndon)

    def same_ambient(self, other) -> bool:
        return self is other or self.assoc.same_ambient(other.assoc)

    def degree(self, w: tuple) -> int:
        return self.assoc.degree(w)

    def basis(self, d: int) -> list[tuple]:
        return [w for w in self.lyndon if self.degree(w) == d]

    def component_dims(self) -> list[int]:
        dims = [0] * (self.D + 1)
        for w in self.lyndon:
            dims[self.degree(w)] += 1
        return dims

    def gen(self, i: int) -> LieElement:
        return LieElement(self, {(i,): 1})

    def gens(self) -> list[LieElement]:
        return [self.gen(i) for i in range(self.ngens)]

    def zero(self) -> LieElement:
        return LieElement(self, {})

    def basis_element(self, w) -> LieElement:
        return LieElement(self, {tuple(w): 1})

    def from_vector(self, v: dict) -> LieElement:
        return LieElement(self, {self.lyndon[i]: c for i, c in v.items()})

    def expand(self, w: tuple) -> dict:
        """Associative expansion (terms dict) of the Lyndon basis element ``w``."""
        t = self._expand.get(w)
        if t is None:
            if len(w) == 1:
                t = {w: 1}
            else:
                u, v = standard_factorization(w)
                pu, pv = self.expand(u), self.expand(v)
                a = self.assoc
                t = _add(a.mul_terms(pu, pv), a.mul_terms(pv, pu), self.field, -1)
            self._expand[w] = t
        return t

    def coords_of(self, terms: dict) -> dict:
        """Lyndon coordinates of a Lie polynomial given by associative terms."""
        rest = {w: c for w, c in terms.items() if c}
        out = {}
        f = self.field
        while rest:
            w = min(rest)
            if not is_lyndon(w) or w not in self.index:
                raise ValueError(f"not a Lie polynomial (leftover word {w})")
            c = rest[w]
            out[w] = c
            for u, x in self.expand(w).items():
                y = f.norm(rest.get(u, 0) - c * x)
                if y:
                    rest[u] = y
                else:
                    rest.pop(u, None)
        return out

    def from_assoc(self, a: AssocElement) -> LieElement:
        return LieElement(self, self.coords_of(a.terms))

    def bracketing(self, w: tuple) -> str:
        if len(w) == 1:
            return self.names[w[0]]
        u, v = standard_factorization(w)
        return f"[{self.bracketing(u)},{self.bracketing(v)}]"

    def render(self, a: LieElement) -> str:
        if not a.coords:
            return "0"
        pieces = []
        for w in sorted(a.coords, key=lambda w: (self.degree(w), w)):
            c = Fraction(a.coords[w])
            if self.field.p and 2 * c > self.field.p:
                c -= self.field.p
            mag = abs(c)
            body = self.bracketing(w)
            if mag != 1:
                body = f"{mag}*{body}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def parse(self, text: str) -> LieElement:
        tree = parse_lie_tree(text)
        env = {n: self.gen(i) for i, n in enumerate(self.names)}
        return eval_lie_tree(tree, env, bracket, lambda a, b: a + b, lambda c, a: a.scale(c),
                             self.zero(), text)

    # protocol shared with the other acting algebras (see pairs.RepPair)
    @property
    def gen_names(self) -> list[str]:
        return list(self.names)

    @property
    def gen_degrees(self) -> list[int]:
        return list(self.weights)

    def to_poly(self, a: LieElement) -> dict:
        return lie_to_assoc(a).terms

    def vector(self, a: LieElement) -> dict:
        return a.vector()

    def coord_degree(self, i: int) -> int:
        return self.degree(self.lyndon[i])

    def bracket(self, a: LieElement, b: LieElement) -> LieElement:
        return bracket(a, b)

    def add(self, a: LieElement, b: LieElement) -> LieElement:
        return a + b

    def scale(self, c, a: LieElement) -> LieElement:
        return a.scale(c)

    def random_element(self, rng: random.Random, d: int | None = None, span: int = 3) -> LieElement:
        ws = self.basis(d) if d is not None else self.lyndon
        if not ws:
            return self.zero()
        coords = {}
        for w in rng.sample(ws, min(span, len(ws))):
            coords[w] = self.field(rng.randint(-3, 3))
        return LieElement(self, coords)


def lyndon_basis(gens: int, degree: int) -> list[tuple]:
    """Lyndon words of exact degree over ``gens`` letters, in lexicographic order."""
    return [w for w in lyndon_words((1,) * gens, degree) if len(w) == degree]


def lie_to_assoc(a: LieElement) -> AssocElement:
    alg = a.alg
    out: dict = {}
    for w, c in a.coords.items():
        for u, x in alg.expand(w).items():
            y = alg.field.norm(out.get(u, 0) + c * x)
            if y:
                out[u] = y
            else:
                out.pop(u, None)
    return AssocElement._raw(alg.assoc, out)


def bracket(a: LieElement, b: LieElement) -> LieElement:
    a._check(b)
    alg = a.alg
    A, B = lie_to_assoc(a).terms, lie_to_assoc(b).terms
    t = _add(alg.assoc.mul_terms(A, B), alg.assoc.mul_terms(B, A), alg.field, -1)
    return LieElement(alg, alg.coords_of(t))


# -- bracket-word grammar -------------------------------------------------------
#   expr := ['-'] term (('+'|'-') term)*
#   term := [number '*'] atom
#   atom := name | '[' expr ',' expr ']' | '(' expr ')'

def parse_lie_tree(text: str):
    toks = tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("end", "", len(text))

    def take(expected=None):
        nonlocal pos
        t = peek()
        if expected is not None and t[1] != expected:
            raise ParseError(f"expected {expected!r}", text, t[2])
        if t[0] == "end":
            raise ParseError("unexpected end of input", text, t[2])
        pos += 1
        return t

    def expr():
        terms = []
        sign = 1
        if peek()[1] == "-" and peek()[0] == "op":
            take()
            sign = -1
        terms.append(term(sign))
        while peek()[0] == "op" and peek()[1] in "+-":
            s = 1 if take()[1] == "+" else -1
            terms.append(term(s))
        return ("sum", terms)

    def term(sign):
        coef = Fraction(sign)
        if peek()[0] == "num":
            coef *= Fraction(take()[1])
            take("*")
        return coef, atom()

    def atom():
        kind, val, p = peek()
        if kind == "name":
            take()
            return ("name", val, p)
        if val == "[":
            take()
            left = expr()
            take(",")
            right = expr()
            take("]")
            return ("br", left, right)
        if val == "(":
            take()
            inner = expr()
            take(")")
            return inner
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", text, p)

    tree = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input {toks[pos][1]!r}", text, toks[pos][2])
    return tree


def eval_lie_tree(tree, env: dict, br: Callable, add: Callable, scale: Callable, zero, text=""):
    kind = tree[0]
    if kind == "name":
        if tree[1] not in env:
            raise ParseError(f"unknown symbol {tree[1]!r}", text, tree[2])
        return env[tree[1]]
    if kind == "br":
        return br(eval_lie_tree(tree[1], env, br, add, scale, zero, text),
                  eval_lie_tree(tree[2], env, br, add, scale, zero, text))
    acc = zero
    for c, sub in tree[1]:
        acc = add(acc, scale(c, eval_lie_tree(sub, env, br, add, scale, zero, text)))
    return acc


def tree_names(tree) -> set:
    if tree[0] == "name":
        return {tree[1]}
    if tree[0] == "br":
        return tree_names(tree[1]) | tree_names(tree[2])
    return set().union(*(tree_names(s) for _, s in tree[1])) if tree[1] else set()


# -- Lie varieties and their verbal ideals --------------------------------------

class LieVarietySpec:
    """A variety of Lie algebras given by identities in variables ``v1, v2, ...``."""

    def __init__(self, identities: Sequence[str]):
        self.texts = [s.strip() for s in identities]
        self.trees = [parse_lie_tree(s) for s in self.texts]
        self.nvars = 0
        for s, t in zip(self.texts, self.trees):
            for n in tree_names(t):
                if not (n.startswith("v") and n[1:].isdigit() and int(n[1:]) >= 1):
                    raise ParseError(f"identity variables must be v1, v2, ...; got {n!r}", s, 0)
                self.nvars = max(self.nvars, int(n[1:]))
        self._bodies = None

    def __repr__(self):
        return f"LieVarietySpec({self.texts})"

    def bodies(self) -> list[dict]:
        """Each identity expanded in the free associative algebra on the variables."""
        if self._bodies is None:
            k = max(self.nvars, 1)
            deg = max((_tree_degree(t) for t in self.trees), default=1)
            var_alg = FreeAssocAlgebra(k, deg, QQ, names=[f"v{i + 1}" for i in range(k)])
            env = {f"v{i + 1}": var_alg.gen(i) for i in range(k)}
            out = []
            for s, t in zip(self.texts, self.trees):
                e = eval_lie_tree(t, env, lambda a, b: a * b - b * a, lambda a, b: a + b,
                                  lambda c, a: a.scale(c), var_alg.zero(), s)
                if not e:
                    raise ValueError(f"identity {s!r} is zero in the free Lie algebra")
                if () in e.terms or any(len(w) == 1 for w in e.terms):
                    raise ValueError(f"identity {s!r} has a linear part; "
                                     "give M = L by explicit ideal generators instead")
                out.append(e.terms)
            self._bodies = out
        return self._bodies


def _tree_degree(tree) -> int:
    if tree[0] == "name":
        return 1
    if tree[0] == "br":
        return _tree_degree(tree[1]) + _tree_degree(tree[2])
    return max((_tree_degree(s) for _, s in tree[1]), default=0)


class LieIdeal:
    """A graded subspace of a truncated free Lie algebra (global Lyndon coordinates)."""

    def __init__(self, alg: FreeLieAlgebra, space: Subspace):
        self.alg = alg
        self.space = space

    def component_dims(self) -> list[int]:
        dims = [0] * (self.alg.D + 1)
        for c in self.space.pivots:
            dims[self.alg.degree(self.alg.lyndon[c])] += 1
        return dims

    def component(self, d: int) -> Subspace:
        """The degree-``d`` component as a subspace of the same coordinates."""
        return Subspace(self.space.ambient_dim, self.alg.field,
                        [r for r in self.space.basis if self.alg.degree(self.alg.lyndon[min(r)]) == d])

    def basis_elements(self, d: int | None = None) -> list[LieElement]:
        out = []
        for r in self.space.basis:
            if d is None or self.alg.degree(self.alg.lyndon[min(r)]) == d:
                out.append(self.alg.from_vector(r))
        return out

    def __contains__(self, a: LieElement) -> bool:
        return a.vector() in self.space


def ideal_closure(alg: FreeLieAlgebra, seeds: Sequence[LieElement]) -> LieIdeal:
    """Smallest ideal containing homogeneous ``seeds`` (closure under ad of generators)."""
    space = Subspace(alg.dim, alg.field)
    queue = []
    for s in seeds:
        for comp in s.components().values():
            if space.add(comp.vector()):
                queue.append(comp)
    gens = alg.gens()
    while queue:
        a = queue.pop()
        if a.degree() >= alg.D:
            continue
        for g in gens:
            b = bracket(a, g)
            if b and space.add(b.vector()):
                queue.append(b)
    return LieIdeal(alg, space)


def theta_verbal_ideal(spec: LieVarietySpec, alg: FreeLieAlgebra) -> LieIdeal:
    """Verbal ideal of the variety inside the truncated free Lie algebra."""
    pool = list(alg.lyndon)
    pool_w = [alg.degree(w) for w in pool]
    seeds = []
    f = alg.field
    for body in spec.bodies():
        for comp in multihom_components(body, max(spec.nvars, 1)).values():
            for terms in polarized_instances(comp, max(spec.nvars, 1), pool_w, alg.D):
                acc: dict = {}
                for c, seq in terms:
                    prod = {(): 1}
                    for i in seq:
                        prod = alg.assoc.mul_terms(prod, alg.expand(pool[i]))
                    acc = _add(acc, prod, f, f(c))
                if acc:
                    seeds.append(LieElement(alg, alg.coords_of(acc)))
    return ideal_closure(alg, seeds)


def subalgebra_closure(algebra, gens: Sequence) -> list:
    """Basis (as algebra elements) of the subalgebra generated by ``gens``.

    Works for any algebra exposing ``bracket``, ``vector``, ``from_vector`` and
    ``dim``; truncation keeps the closure finite.  Left-normed brackets of the
    generators span the subalgebra, so only brackets with generators are formed.
    """
    space = Subspace(algebra.dim, algebra.field)
    out = []
    queue = []
    for g in gens:
        if space.add(algebra.vector(g)):
            out.append(g)
            queue.append(g)
    while queue:
        a = queue.pop()
        for g in gens:
            b = algebra.bracket(a, g)
            v = algebra.vector(b)
            if v and space.add(v):
                out.append(b)
                queue.append(b)
    return out
