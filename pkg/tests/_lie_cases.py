"""Random finite Lie algebras, modules and retractions for the extension tests."""
import random

from mixwreath.core import QQ, SparseMatrix, rank
from mixwreath.extensions import GModule, Retraction, catalogue


def random_invertible(rng, n, field=QQ):
    while True:
        rows = [{j: rng.randint(-2, 2) for j in range(n)} for _ in range(n)]
        rows = [{j: x for j, x in r.items() if x} for r in rows]
        if rank(SparseMatrix(n, n, rows, field)) == n:
            return rows


def random_module(rng, G):
    kind = rng.choice(["trivial", "adjoint", "sum"])
    if kind == "trivial":
        A = GModule.trivial(G, rng.randint(1, 3))
    elif kind == "adjoint":
        A = GModule.adjoint(G)
    else:
        A = GModule.adjoint(G).direct_sum(GModule.trivial(G, 1))
    return A.change_basis(random_invertible(rng, A.dim))


def random_case(seed):
    """(G, A, rho) with G of dimension <= 4 in a random basis."""
    rng = random.Random(seed)
    G = rng.choice(catalogue())
    G = G.change_basis(random_invertible(rng, G.dim))
    A = random_module(rng, G)
    rho = Retraction(G, A, [{k: rng.randint(-3, 3) for k in range(A.dim)} for _ in range(G.dim)])
    return G, A, rho
