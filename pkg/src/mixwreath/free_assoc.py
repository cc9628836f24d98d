"""Truncated free associative algebras with unity.

A word is a tuple of generator indices; the empty tuple is the unity.  Each
generator carries a positive weight (1 unless stated), the degree of a word is
the sum of the weights of its letters, and all products are taken modulo the
two-sided ideal spanned by words of degree greater than the truncation ``D``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .core import QQ, Field

Word = tuple


def default_names(n: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


class MonomialOrder:
    """Degree first, then lexicographic on index sequences; unity is minimal."""

    kind = "deglex"

    def __init__(self, weights: Sequence[int] | None = None):
        self.weights = tuple(weights) if weights is not None else None

    def degree(self, w: Word) -> int:
        if self.weights is None:
            return len(w)
        return sum(self.weights[i] for i in w)

    def key(self, w: Word):
        return (self.degree(w), w)

    def compare(self, w1: Word, w2: Word) -> int:
        k1, k2 = self.key(w1), self.key(w2)
        return (k1 > k2) - (k1 < k2)


def compare(o: MonomialOrder, w1: Word, w2: Word) -> int:
    return o.compare(w1, w2)


class FreeAssocAlgebra:
    """The free associative algebra on ``ngens`` letters truncated above degree ``D``."""

    def __init__(self, ngens: int, D: int, field: Field = QQ, weights: Sequence[int] | None = None,
                 names: Sequence[str] | None = None):
        if ngens < 0 or D < 0:
            raise ValueError("generator count and degree must be non-negative")
        self.ngens = ngens
        self.D = D
        self.field = field
        self.weights = tuple(weights) if weights is not None else (1,) * ngens
        if len(self.weights) != ngens or any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive, one per generator")
        self.names = list(names) if names is not None else default_names(ngens)
        if len(self.names) != ngens:
            raise ValueError("one name per generator required")
        self.order = MonomialOrder(self.weights)
        self._words = None

    def __repr__(self):
        return f"FreeAssocAlgebra({self.names}, D={self.D}, {self.field.name})"

    def same_ambient(self, other: "FreeAssocAlgebra") -> bool:
        return (self is other or (self.ngens == other.ngens and self.D == other.D
                and self.field == other.field and self.weights == other.weights))

    def degree(self, w: Word) -> int:
        return sum(self.weights[i] for i in w)

    def words(self, d: int | None = None) -> list[Word]:
        """All words of degree ``d`` (or of every degree <= D), in monomial order."""
        if self._words is None:
            by_deg: list[list[Word]] = [[] for _ in range(self.D + 1)]
            by_deg[0].append(())
            for deg in range(1, self.D + 1):
                for i, wt in enumerate(self.weights):
                    if wt <= deg:
                        by_deg[deg].extend(w + (i,) for w in by_deg[deg - wt])
                by_deg[deg].sort()
            self._words = by_deg
        if d is None:
            return [w for ws in self._words for w in ws]
        if d < 0 or d > self.D:
            return []
        return list(self._words[d])

    def elem(self, terms: dict | None = None) -> "AssocElement":
        return AssocElement(self, terms or {})

    def zero(self) -> "AssocElement":
        return AssocElement(self, {})

    def one(self) -> "AssocElement":
        return AssocElement(self, {(): 1})

    def gen(self, i: int) -> "AssocElement":
        return AssocElement(self, {(i,): 1})

    def gens(self) -> list["AssocElement"]:
        return [self.gen(i) for i in range(self.ngens)]

    def word(self, w: Iterable[int]) -> "AssocElement":
        return AssocElement(self, {tuple(w): 1})

    def mul_terms(self, a: dict, b: dict) -> dict:
        D, p, wt = self.D, self.field.p, self.weights
        out: dict = {}
        bdeg = [(v, c, sum(wt[i] for i in v)) for v, c in b.items()]
        for u, x in a.items():
            du = sum(wt[i] for i in u)
            for v, y, dv in bdeg:
                if du + dv > D:
                    continue
                w = u + v
                z = out.get(w, 0) + x * y
                if p:
                    z %= p
                if z:
                    out[w] = z
                else:
                    out.pop(w, None)
        if not p:
            out = {w: self.field.norm(c) for w, c in out.items()}
        return out

    def parse(self, text: str) -> "AssocElement":
        return parse_assoc(text, self)

    def render(self, a: "AssocElement") -> str:
        return render_terms(a.terms, self.names, self.order)


class AssocElement:
    """Sparse combination of words; immutable by convention."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAssocAlgebra, terms: dict):
        self.alg = alg
        f = alg.field
        D = alg.D
        clean = {}
        for w, c in terms.items():
            w = tuple(w)
            c = f(c) if not isinstance(c, int) or f.p else c
            if c and alg.degree(w) <= D:
                clean[w] = c
        self.terms = clean

    @classmethod
    def _raw(cls, alg, terms):
        e = object.__new__(cls)
        e.alg = alg
        e.terms = terms
        return e

    def _check(self, other):
        if not isinstance(other, AssocElement):
            raise TypeError("expected an AssocElement")
        if not self.alg.same_ambient(other.alg):
            raise ValueError("ambient mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        p = self.alg.field.p
        for w, c in other.terms.items():
            x = out.get(w, 0) + c
            if p:
                x %= p
            if x:
                out[w] = self.alg.field.norm(x)
            else:
                out.pop(w, None)
        return AssocElement._raw(self.alg, out)

    def __neg__(self):
        f = self.alg.field
        return AssocElement._raw(self.alg, {w: f.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AssocElement":
        f = self.alg.field
        c = f(c)
        if not c:
            return self.alg.zero()
        return AssocElement._raw(self.alg, {w: f.norm(x * c) for w, x in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return AssocElement._raw(self.alg, self.alg.mul_terms(self.terms, other.terms))

    def __eq__(self, other):
        if isinstance(other, AssocElement):
            return self.alg.same_ambient(other.alg) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"AssocElement({self})"

    def __str__(self):
        return self.alg.render(self)

    def degree(self) -> int:
        return max((self.alg.degree(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self.alg.degree(w) for w in self.terms}) <= 1


def mul(a: AssocElement, b: AssocElement) -> AssocElement:
    return a * b


def grade_split(a: AssocElement) -> list[AssocElement]:
    """Components of ``a`` indexed by degree 0..D."""
    alg = a.alg
    parts: list[dict] = [dict() for _ in range(alg.D + 1)]
    for w, c in a.terms.items():
        parts[alg.degree(w)][w] = c
    return [AssocElement._raw(alg, t) for t in parts]


def leading_term(a: AssocElement) -> tuple[Word, object]:
    if not a.terms:
        raise ValueError("zero element has no leading term")
    w = max(a.terms, key=a.alg.order.key)
    return w, a.terms[w]


# -- text form ---------------------------------------------------------------

def _coef_str(c) -> str:
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def render_terms(terms: dict, names: Sequence[str], order: MonomialOrder | None = None,
                 prefix: str = "", field: Field | None = None) -> str:
    """Render ``{word: coef}`` as ``3*x1*x2 + x2`` (largest monomial first).

    ``prefix`` is prepended to every monomial (used for identities ``y*...``);
    the unity renders as ``1`` (or as the bare prefix).
    """
    if not terms:
        return "0"
    order = order or MonomialOrder()
    pieces = []
    for w in sorted(terms, key=order.key, reverse=True):
        c = terms[w]
        if field is not None and field.p:
            c = c if 2 * c <= field.p else c - field.p
        neg = c < 0
        mag = -c if neg else c
        factors = ([prefix] if prefix else []) + [names[i] for i in w]
        mono = "*".join(factors)
        if not mono:
            body = _coef_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_str(mag)}*{mono}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][\w.]*)|(.))")


class ParseError(ValueError):
    """Text that does not match the element grammar; carries the column."""

    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.column = pos + 1
        self.text = text


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            toks.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return toks


def parse_monomial_sum(text: str, names: Sequence[str], prefix: str | None = None) -> dict:
    """Parse ``c*a*b + ...`` into ``{word: Fraction}``.

    With ``prefix`` set, every monomial must start with that name (it is
    stripped from the word).
    """
    index = {n: i for i, n in enumerate(names)}
    toks = tokenize(text)
    if not toks:
        raise ParseError("empty expression", text, 0)
    out: dict = {}
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val, pos = toks[i]
        if kind == "op" and val in "+-":
            if not expect_term and val == "+":
                sign = 1
            elif not expect_term:
                sign = -1
            elif val == "-":
                sign = -sign
            else:
                raise ParseError("unexpected '+'", text, pos)
            expect_term = True
            i += 1
            continue
        if not expect_term:
            raise ParseError(f"unexpected token {val!r}", text, pos)
        coef = Fraction(1)
        word: list[int] = []
        saw_prefix = False
        while True:
            kind, val, pos = toks[i]
            if kind == "num":
                coef *= Fraction(val)
            elif kind == "name":
                if prefix is not None and val == prefix and not saw_prefix and not word:
                    saw_prefix = True
                elif val in index:
                    word.append(index[val])
                else:
                    raise ParseError(f"unknown symbol {val!r}", text, pos)
            else:
                raise ParseError(f"unexpected {val!r}", text, pos)
            i += 1
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
                if i >= len(toks):
                    raise ParseError("dangling '*'", text, len(text))
                continue
            break
        if prefix is not None and not saw_prefix:
            raise ParseError(f"monomial must start with {prefix!r}", text, pos)
        w = tuple(word)
        out[w] = out.get(w, 0) + sign * coef
        if not out[w]:
            del out[w]
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError("expression ends with an operator", text, len(text))
    return out


def parse_assoc(text: str, alg: FreeAssocAlgebra) -> AssocElement:
    terms = parse_monomial_sum(text, alg.names)
    return AssocElement(alg, {w: alg.field(c) for w, c in terms.items()})

