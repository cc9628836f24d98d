import random
from itertools import product

import pytest

from mixwreath.core import QQ, SparseMatrix
from mixwreath.extensions import FiniteLieAlgebra, abelian, heisenberg, sl2
from mixwreath.pairs import NotAMorphism, free_cyclic_pair
from mixwreath.varieties import VarietySpec, all_representations
from mixwreath.wreath import (Envelope, action_table, check_definition1, derivation_invariance_failures,
                              extend_universal, inject_fault, leibniz_violations, wreath_action,
                              wreath_build)


def graded_heisenberg():
    return FiniteLieAlgebra(3, {(0, 1): {2: 1}}, degrees=[1, 1, 2])


def pbw_dims(degrees, D):
    """Coefficients of prod 1/(1 - t^d), computed independently of Envelope."""
    out = [1] + [0] * D
    for d in degrees:
        for k in range(d, D + 1):
            out[k] += out[k - d]
    return out


def x2_wreath_dims(gens, top_degrees, D):
    """Count labels z (x) q when the base kills all products of two letters."""
    u = pbw_dims(top_degrees, D)
    letters = [0] + [gens * u[k - 1] for k in range(1, D + 1)]
    q = [1] + letters[1:]
    return [sum(u[k] * q[d - k] for k in range(d + 1)) for d in range(D + 1)]


def test_envelope_pbw():
    U = Envelope(graded_heisenberg(), 4)
    dims = [0] * 5
    for z in U.monomials:
        dims[U.degree(z)] += 1
    assert dims == pbw_dims([1, 1, 2], 4)
    assert U.straighten((1, 0)) == {(0, 1): 1, (2,): -1}
    assert U.straighten((0, 0, 1, 1, 0)) == {}  # degree 5 > 4


def test_envelope_associative():
    U = Envelope(graded_heisenberg(), 5)
    rng = random.Random(0)
    for _ in range(100):
        w = tuple(rng.randrange(3) for _ in range(rng.randint(2, 4)))
        k = rng.randint(1, len(w) - 1)
        left, right = U.straighten(w[:k]), U.straighten(w[k:])
        combined = {}
        for a, x in left.items():
            for b, y in right.items():
                for c, z in U.straighten(a + b).items():
                    combined[c] = combined.get(c, 0) + x * y * z
        assert {c: v for c, v in combined.items() if v} == U.straighten(w)


def test_envelope_requires_grading():
    with pytest.raises(ValueError, match="grading"):
        Envelope(sl2(), 3)


def test_build_errors(x2):
    with pytest.raises(ValueError):
        wreath_build(x2, 2, abelian(1), 0)
    with pytest.raises(ValueError):
        wreath_build(VarietySpec.parse(["y*v1*v2"]), 2, abelian(1), 2)
    with pytest.raises(ValueError, match="distinct"):
        wreath_build(x2, 1, FiniteLieAlgebra(2, {}, names=["e", "e"]), 2)


def test_zero_top_gives_base_pair(x2):
    wp = wreath_build(x2, 2, abelian(0), 3)
    base = free_cyclic_pair(x2, 2, 3)
    assert wp.graded_dims() == base.graded_dims()
    assert check_definition1(wp).passed


def test_trivial_base_gives_envelope(trivial):
    wp = wreath_build(trivial, 2, graded_heisenberg(), 4)
    assert wp.graded_dims() == pbw_dims([1, 1, 2], 4)


def test_one_generator_abelian_top(x2):
    wp = wreath_build(x2, 1, abelian(1), 2)
    assert wp.graded_dims() == [1, 2, 3] == x2_wreath_dims(1, [1], 2)
    labels = sorted(wp.module.labels)
    assert labels == sorted(["1 (x) 1", "1 (x) y1", "e1 (x) 1", "1 (x) y1.e1", "e1 (x) y1", "e1*e1 (x) 1"])


@pytest.mark.parametrize("gens,top,D", [(2, [1, 1], 3), (2, [1, 1, 2], 3), (3, [1], 3), (1, [1, 2], 4)])
def test_dims_against_enumeration(x2, gens, top, D):
    B = FiniteLieAlgebra(len(top), {}, degrees=top)
    assert wreath_build(x2, gens, B, D).graded_dims() == x2_wreath_dims(gens, top, D)


def test_action_examples(x2):
    wp = wreath_build(x2, 2, abelian(2), 3)
    g = wp.gamma
    e = wp.e()
    eb = wreath_action(wp, e, g.from_b({0: 1}))
    assert [wp.module.labels[i] for i in eb] == ["e1 (x) 1"]
    ey = wreath_action(wp, e, wp.y(0))
    assert [wp.module.labels[i] for i in ey] == ["1 (x) y1"]
    assert wreath_action(wp, e, g.zero()) == {}
    # y1 then e1 gives the letter y1.e1 through the derivation
    v = wreath_action(wp, ey, g.from_b({0: 1}))
    assert sorted(wp.module.labels[i] for i in v) == ["1 (x) y1.e1", "e1 (x) y1"]


SUITE = [
    (["y*v1*v2"], 2, lambda: abelian(2), 3),
    (["y*v1"], 2, graded_heisenberg, 3),
    (["y*v1*v2"], 1, graded_heisenberg, 3),
    ([], 1, lambda: abelian(1), 3),
    (["y*v1*v2 - y*v2*v1"], 2, lambda: abelian(1), 3),
    (["y*v1*v1"], 1, lambda: FiniteLieAlgebra(2, {}, degrees=[1, 2]), 4),
]


@pytest.fixture(params=range(len(SUITE)), scope="module")
def suite_wreath(request):
    from mixwreath.varieties import validate_multihomogeneous
    texts, gens, top, D = SUITE[request.param]
    return wreath_build(validate_multihomogeneous(VarietySpec.parse(texts)), gens, top(), D)


def test_definition1_holds(suite_wreath):
    rep = check_definition1(suite_wreath)
    assert rep.passed, rep


def test_derivations_preserve_verbal_submodule(suite_wreath):
    assert derivation_invariance_failures(suite_wreath) == []


def test_representation_law(suite_wreath):
    assert suite_wreath.module.representation_law_violations(random.Random(11), 200) == []


def test_leibniz(suite_wreath):
    assert leibniz_violations(suite_wreath, random.Random(12), 200) == []


def test_mixed_law_on_basis(suite_wreath):
    wp = suite_wreath
    g = wp.gamma
    mod = wp.module
    for w in wp.P.lyndon:
        p = g.from_p(wp.P.basis_element(w))
        for c in range(wp.top.dim):
            b = g.from_b({c: 1})
            br = g.bracket(p, b)
            for j in range(mod.dim):
                m = {j: 1}
                lhs = mod.act(mod.act(m, p), b)
                rhs = mod.act(mod.act(m, b), p)
                diff = {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}
                assert {k: v for k, v in diff.items() if v} == mod.act(m, br)


def test_fault_injection_detected(x2):
    wp = wreath_build(x2, 2, abelian(2), 3)
    Q = wp.Q
    y1 = wp.p_generators.index((0, ()))
    y1e1 = wp.p_generators.index((0, (0,)))
    row = wp.module_index((), Q.words.index((y1,)))
    target = wp.module_index((), Q.words.index((y1e1,)))
    bad = inject_fault(wp.module, row, y1, {target: 1})
    rep = check_definition1(wp, bad)
    assert not rep.conditions["variety"]
    assert check_definition1(wp).passed


def test_fault_injection_trivial_base(trivial):
    wp = wreath_build(trivial, 2, graded_heisenberg(), 3)
    y1 = wp.p_generators.index((0, ()))
    target = wp.module_index((0,), 0)
    bad = inject_fault(wp.module, 0, y1, {target: 1})
    assert not check_definition1(wp, bad).conditions["variety"]


def test_extend_universal_identity(x2):
    wp = wreath_build(x2, 2, abelian(2), 3)
    g = wp.gamma
    h = extend_universal(wp, wp.module, [wp.y(i) for i in range(2)],
                         [g.from_b({c: 1}) for c in range(2)], wp.e())
    assert h.module_map == SparseMatrix.identity(wp.module.dim, QQ)


def test_extend_universal_into_smaller_variety(x2, trivial):
    big = wreath_build(x2, 2, abelian(2), 3)
    small = wreath_build(trivial, 2, abelian(2), 3)
    g = small.gamma
    h = extend_universal(big, small.module, [small.y(i) for i in range(2)],
                         [g.from_b({c: 1}) for c in range(2)], small.e())
    assert h.rank_by_degree() == small.graded_dims()
    with pytest.raises(NotAMorphism):
        extend_universal(small, big.module, [big.y(i) for i in range(2)],
                         [big.gamma.from_b({c: 1}) for c in range(2)], big.e())


def test_action_table_deterministic(x2):
    a = action_table(wreath_build(x2, 2, abelian(2), 3))
    b = action_table(wreath_build(x2, 2, abelian(2), 3))
    assert a == b
    assert a.startswith("# basis (40)")
