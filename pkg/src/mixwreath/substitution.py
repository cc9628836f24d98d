"""Multihomogeneous splitting and polarized substitution of identity words.

An identity body is a dict ``{word over variables: coef}``.  Substituting
basis elements for the variables is enough to span all values only for
multilinear bodies; for a variable of degree k we instead substitute a
multiset of k basis elements and sum over every distinct placement of that
multiset into the k occurrences (full polarization).  Over a field with more
than ``D`` elements these sums span exactly the values at arbitrary elements.
"""
from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence


def multidegree(word: tuple, nvars: int) -> tuple:
    md = [0] * nvars
    for v in word:
        md[v] += 1
    return tuple(md)


def multihom_components(terms: dict, nvars: int) -> dict:
    """Split ``terms`` by multidegree; returns ``{multidegree: terms}`` in sorted order."""
    parts: dict = {}
    for w, c in terms.items():
        parts.setdefault(multidegree(w, nvars), {})[w] = c
    return {md: parts[md] for md in sorted(parts)}


def _distinct_perms(items: tuple) -> list[tuple]:
    if not items:
        return [()]
    out = []
    seen = set()
    for i, x in enumerate(items):
        if x in seen:
            continue
        seen.add(x)
        rest = items[:i] + items[i + 1:]
        out.extend((x,) + p for p in _distinct_perms(rest))
    return out


def _multisets(k: int, weights: Sequence[int], budget: int, start: int = 0) -> Iterator[tuple]:
    """Nondecreasing index tuples of length k with total weight <= budget.

    ``weights`` must be sorted nondecreasing.
    """
    if k == 0:
        yield ()
        return
    for i in range(start, len(weights)):
        w = weights[i]
        if w * k > budget:
            break
        for rest in _multisets(k - 1, weights, budget - w, i):
            yield (i,) + rest


def polarized_instances(comp: dict, nvars: int, pool_weights: Sequence[int],
                        budget: int) -> Iterator[list[tuple]]:
    """Yield, per multiset choice, the list ``[(coef, pool-index sequence), ...]``.

    ``comp`` must be multihomogeneous.  The value of the identity at that choice
    is the sum of ``coef * product(pool[i] for i in sequence)``.
    ``pool_weights`` must be sorted nondecreasing.
    """
    if not comp:
        return
    md = multidegree(next(iter(comp)), nvars)
    positions = {}
    for w in comp:
        pos = [[] for _ in range(nvars)]
        for k, v in enumerate(w):
            pos[v].append(k)
        positions[w] = pos

    def choose(j: int, remaining: int):
        if j == nvars:
            yield ()
            return
        for ms in _multisets(md[j], pool_weights, remaining):
            used = sum(pool_weights[i] for i in ms)
            for rest in choose(j + 1, remaining - used):
                yield (ms,) + rest

    for choice in choose(0, budget):
        perms = [_distinct_perms(ms) for ms in choice]
        terms = []
        for w, c in comp.items():
            pos = positions[w]
            for placement in product(*perms):
                seq = [0] * len(w)
                for j in range(nvars):
                    for k, idx in zip(pos[j], placement[j]):
                        seq[k] = idx
                terms.append((c, tuple(seq)))
        yield terms
