import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from mixwreath.core import QQ, SparseMatrix, rank
from mixwreath.free_lie import (FreeLieAlgebra, LieVarietySpec, bracket, ideal_closure, is_lyndon,
                                lie_to_assoc, lyndon_basis, standard_factorization,
                                theta_verbal_ideal)


def brute_force_dim(gens: int, d: int) -> int:
    """Rank of all left-normed commutators of length d, expanded by hand."""
    def comm(a, b):
        out = {}
        for u, x in a.items():
            for v, y in b.items():
                out[u + v] = out.get(u + v, 0) + x * y
                out[v + u] = out.get(v + u, 0) - x * y
        return {w: c for w, c in out.items() if c}

    elems = [{(i,): 1} for i in range(gens)]
    for _ in range(d - 1):
        elems = [comm(e, {(i,): 1}) for e in elems for i in range(gens)]
    words = sorted({w for e in elems for w in e})
    idx = {w: k for k, w in enumerate(words)}
    rows = [{idx[w]: c for w, c in e.items()} for e in elems]
    return rank(SparseMatrix(len(rows), len(words), rows, QQ))


def witt(gens: int, d: int) -> int:
    def mobius(n):
        res, k = 1, 2
        while k * k <= n:
            if n % k == 0:
                n //= k
                if n % k == 0:
                    return 0
                res = -res
            k += 1
        return -res if n > 1 else res
    return sum(mobius(d // k) * gens ** k for k in range(1, d + 1) if d % k == 0) // d


def test_lyndon_basis_examples():
    assert lyndon_basis(2, 1) == [(0,), (1,)]
    assert lyndon_basis(2, 2) == [(0, 1)]
    assert len(lyndon_basis(2, 3)) == 2 == (2 ** 3 - 2) // 3


@pytest.mark.parametrize("gens", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_lyndon_sizes_match_oracles(gens, d):
    n = len(lyndon_basis(gens, d))
    assert n == brute_force_dim(gens, d)
    assert n == witt(gens, d)


def test_free_lie_component_dims():
    assert FreeLieAlgebra(2, 5).component_dims() == [0, 2, 1, 2, 3, 6]


def test_lyndon_words_and_factorization():
    assert is_lyndon((0, 0, 1)) and not is_lyndon((0, 1, 0)) and not is_lyndon((0, 0))
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))


L3 = FreeLieAlgebra(3, 4)
x1, x2, x3 = L3.gens()


def test_bracket_examples():
    assert bracket(x1, x1) == L3.zero()
    assert bracket(x1, x2) == L3.basis_element((0, 1))
    jac = bracket(bracket(x1, x2), x3) + bracket(bracket(x2, x3), x1) + bracket(bracket(x3, x1), x2)
    assert jac == L3.zero()


def test_lie_to_assoc_examples():
    L = FreeLieAlgebra(2, 3)
    y1, y2 = L.gens()
    A = L.assoc
    assert lie_to_assoc(y1) == A.gen(0)
    assert lie_to_assoc(bracket(y1, y2)) == A.parse("x1*x2 - x2*x1")
    assert lie_to_assoc(bracket(bracket(y1, y2), y2)) == A.parse("x1*x2*x2 - 2*x2*x1*x2 + x2*x2*x1")


def test_render_parse_round_trip():
    a = L3.parse("[[x1,x2],x2] - 2*[x1,x3]")
    assert L3.parse(L3.render(a)) == a
    assert L3.render(L3.basis_element((0, 1, 1))) == "[[x1,x2],x2]"


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        bracket(x1, FreeLieAlgebra(2, 4).gen(0))


def test_truncation_drops_high_degree():
    L = FreeLieAlgebra(2, 2)
    a, b = L.gens()
    assert bracket(bracket(a, b), a) == L.zero()


lie_elems = st.integers(0, 10 ** 6).map(lambda s: L3.random_element(random.Random(s), span=4))


@settings(max_examples=80, deadline=None)
@given(lie_elems, lie_elems, lie_elems)
def test_lie_axioms(a, b, c):
    assert bracket(a, b) == -bracket(b, a)
    jac = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
    assert jac == L3.zero()
    A, B = lie_to_assoc(a), lie_to_assoc(b)
    assert lie_to_assoc(bracket(a, b)) == A * B - B * A


def test_theta_abelian():
    L = FreeLieAlgebra(2, 5)
    M = theta_verbal_ideal(LieVarietySpec(["[v1,v2]"]), L)
    assert M.component_dims() == [0, 0, 1, 2, 3, 6]
    assert L.parse("[x1,x2]") in M


def test_theta_nilpotent_and_metabelian():
    L = FreeLieAlgebra(2, 5)
    assert theta_verbal_ideal(LieVarietySpec(["[[v1,v2],v3]"]), L).component_dims() == [0, 0, 0, 2, 3, 6]
    assert theta_verbal_ideal(LieVarietySpec(["[[v1,v2],[v3,v4]]"]), L).component_dims() == [0, 0, 0, 0, 0, 2]


def test_theta_no_identities_is_zero():
    L = FreeLieAlgebra(2, 4)
    assert theta_verbal_ideal(LieVarietySpec([]), L).component_dims() == [0] * 5


def test_theta_is_an_ideal():
    L = FreeLieAlgebra(2, 5)
    M = theta_verbal_ideal(LieVarietySpec(["[[v1,v2],v3]"]), L)
    for a in M.basis_elements():
        for g in L.gens():
            assert bracket(a, g) in M


def test_theta_non_multilinear_identity():
    # Engel-type identity [[v1,v2],v2]: needs polarization to reach all values
    L = FreeLieAlgebra(2, 4)
    M = theta_verbal_ideal(LieVarietySpec(["[[v1,v2],v2]"]), L)
    assert M.component_dims()[3] == 2
    assert L.parse("[[x1,x2],x2]") in M and L.parse("[[x1,x2],x1]") in M


def test_theta_rejects_degenerate_identities():
    L = FreeLieAlgebra(2, 3)
    with pytest.raises(ValueError):
        theta_verbal_ideal(LieVarietySpec(["v1"]), L)
    with pytest.raises(ValueError):
        theta_verbal_ideal(LieVarietySpec(["[v1,v1]"]), L)


def test_ideal_closure_of_generators_is_everything():
    L = FreeLieAlgebra(2, 3)
    M = ideal_closure(L, L.gens())
    assert M.component_dims() == L.component_dims()
