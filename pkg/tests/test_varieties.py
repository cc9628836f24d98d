import random

import pytest

from mixwreath.core import GF, QQ, Subspace
from mixwreath.free_assoc import FreeAssocAlgebra, ParseError
from mixwreath.free_lie import FreeLieAlgebra, LieElement
from mixwreath.pairs import free_cyclic_pair, free_module_pair
from mixwreath.varieties import (RepIdentity, VarietySpec, all_representations, multihom_decompose,
                                 trivial_variety, validate_multihomogeneous, verbal_submodule)


def bodies(idents):
    return sorted(i.render() for i in idents)


def test_multihom_decompose_examples():
    assert bodies(multihom_decompose(RepIdentity.parse("y*v1 + y*v1*v2"))) == ["y*v1", "y*v1*v2"]
    assert bodies(multihom_decompose(RepIdentity.parse("y*v1*v2 - y*v2*v1"))) == ["-y*v2*v1 + y*v1*v2"]
    assert bodies(multihom_decompose(RepIdentity.parse("y*v1*v1 + y*v1"))) == ["y*v1", "y*v1*v1"]


def test_validate_examples():
    spec = validate_multihomogeneous(VarietySpec.parse(["y*v1 + y*v1*v2"]))
    assert spec.multihom_validated
    assert sorted(spec.render()) == ["y*v1", "y*v1*v2"]
    homog = VarietySpec.parse(["y*v1*v2"])
    assert validate_multihomogeneous(homog).identities == homog.identities
    assert validate_multihomogeneous(VarietySpec.parse([])).identities == ()


def test_identity_round_trip():
    for text in ["y*v1*v2", "y*v1*v2 - y*v2*v1", "2*y*v1*v1"]:
        i = RepIdentity.parse(text)
        assert RepIdentity.parse(i.render()) == i
    with pytest.raises(ParseError):
        RepIdentity.parse("y*v1*")
    with pytest.raises(ParseError):
        RepIdentity.parse("y*v1 - y*v1")


def test_trivial_variety_kills_positive_degrees():
    free = free_module_pair(FreeAssocAlgebra(1, 3))
    sub = verbal_submodule(free, trivial_variety(), free.algebra.gens())
    assert sub.component_dims() == [0, 1, 1, 1]


def test_x2_on_one_generator(x2):
    free = free_module_pair(FreeAssocAlgebra(1, 2, names=["y1"]))
    sub = verbal_submodule(free, x2, free.algebra.gens())
    assert sub.component_dims() == [0, 0, 1]
    assert {2: 1} in sub  # y1*y1
    assert free_cyclic_pair(x2, 1, 2).graded_dims() == [1, 1, 0]


def test_empty_spec_gives_zero():
    free = free_module_pair(FreeAssocAlgebra(2, 3))
    sub = verbal_submodule(free, all_representations(), free.algebra.gens())
    assert sub.space.dim == 0


def test_unvalidated_spec_rejected():
    free = free_module_pair(FreeAssocAlgebra(1, 2))
    with pytest.raises(ValueError):
        verbal_submodule(free, VarietySpec.parse(["y*v1"]), free.algebra.gens())


def test_small_characteristic_rejected(x2):
    free = free_module_pair(FreeAssocAlgebra(1, 3, GF(3)))
    with pytest.raises(ValueError):
        verbal_submodule(free, x2, free.algebra.gens())


SPECS = [["y*v1*v2"], ["y*v1*v1"], ["y*v1*v2 - y*v2*v1"], ["y*v1*v2*v1"], ["y*v1 + y*v1*v2*v3"]]


@pytest.mark.parametrize("texts", SPECS)
def test_verbal_submodules_graded_and_closed(texts):
    spec = validate_multihomogeneous(VarietySpec.parse(texts))
    free = free_module_pair(FreeAssocAlgebra(2, 4))
    sub = verbal_submodule(free, spec, free.algebra.gens())
    assert sub.is_graded()
    for r in sub.space.basis:
        for d in range(free.D + 1):
            comp = {i: c for i, c in r.items() if free.degrees[i] == d}
            assert comp in sub
        for g in range(2):
            assert free.act_gen(r, g) in sub


def test_polarization_reaches_non_basis_values():
    spec = validate_multihomogeneous(VarietySpec.parse(["y*v1*v1"]))
    free = free_module_pair(FreeAssocAlgebra(2, 2))
    sub = verbal_submodule(free, spec, free.algebra.gens())
    # x1x1, x2x2 and x1x2 + x2x1: substituting basis elements alone misses the last one
    assert sub.component_dims() == [0, 0, 3]


@pytest.mark.parametrize("texts", SPECS)
@pytest.mark.parametrize("field", [QQ, GF(7)])
def test_random_substitutions_land_inside(texts, field):
    rng = random.Random(3)
    spec = validate_multihomogeneous(VarietySpec.parse(texts))
    free = free_module_pair(FreeAssocAlgebra(2, 4, field))
    L = free.algebra
    sub = verbal_submodule(free, spec, L.gens())
    for ident in spec.identities:
        for _ in range(15):
            vals = [L.random_element(rng, span=3) for _ in range(ident.nvars)]
            m = {rng.randrange(free.dim): 1}
            out = {}
            for word, c in ident.terms.items():
                v = m
                for k in word:
                    v = free.act(v, vals[k])
                for i, x in v.items():
                    out[i] = field.norm(out.get(i, 0) + field(c) * x)
            out = {i: x for i, x in out.items() if x}
            assert out in sub


def test_monotonicity():
    base = validate_multihomogeneous(VarietySpec.parse(["y*v1*v2*v3"]))
    more = validate_multihomogeneous(VarietySpec.parse(["y*v1*v2*v3", "y*v1*v2 - y*v2*v1"]))
    a = free_cyclic_pair(base, 2, 4).graded_dims()
    b = free_cyclic_pair(more, 2, 4).graded_dims()
    assert all(y <= x for x, y in zip(a, b))
