import pytest

from psg.exact_linear import SparseMatrix, scalar
from psg.enveloping import (
    CliffordSpec,
    action_homomorphism,
    clifford,
    generator_relations,
    u_poisson_gn,
    verify_matrix_algebra,
)
from psg.grassmann import gn_structure_constants
from psg.modules import direct_sum, gn_beta, regular_module
from psg.superalgebra import SuperAlgebra, check_identity


def test_clifford_trivial():
    c = clifford(CliffordSpec(0, ()))
    assert c.dim == 1 and c.mul({0: 1}, {0: 1}) == {0: 1}


def test_clifford_d2_anticommutator():
    c = clifford(CliffordSpec(2, ((0, -1), (-1, 0))))
    assert c.dim == 4
    anti = c.mul({1: 1}, {2: 1})
    for k, v in c.mul({2: 1}, {1: 1}).items():
        anti[k] = anti.get(k, 0) + v
    assert {k: v for k, v in anti.items() if v} == {0: -1}
    # v1 (v1 v2) = 0 since f(1,1) = 0
    assert c.mul({1: 1}, {3: 1}) == {}
    assert check_identity(c, "associativity").passed


def test_clifford_diagonal_form_squares():
    c = clifford(CliffordSpec(1, ((4,),)))
    assert c.mul({1: 1}, {1: 1}) == {0: 2}


def test_asymmetric_form_rejected():
    with pytest.raises(ValueError):
        CliffordSpec(2, ((0, 1), (0, 0)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_u_poisson_gn(n):
    env = u_poisson_gn(n)
    assert env.algebra.dim == 4**n
    assert generator_relations(env) == {"MM": True, "MH": True, "HH": True}
    rep = verify_matrix_algebra(env.algebra)
    assert rep.verdict == "true" and rep.k == 2**n and rep.center_dim == 1
    assert len(rep.representation) == env.algebra.dim
    half = 2 ** (n - 1)
    assert rep.graded_split == (half, half)


def test_grassmann_is_not_matrix_algebra():
    rep = verify_matrix_algebra(gn_structure_constants(2).replace(bracket=None))
    assert rep.verdict == "false" and not rep.simple


def test_non_associative_rejected():
    # 1, x, y with x y = y, y y = x: (x x) y = 0 but x (x y) = y
    dot = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}}
    dot.update({(1, 2): {2: 1}, (2, 2): {1: 1}})
    with pytest.raises(ValueError):
        verify_matrix_algebra(SuperAlgebra(parity=[0, 0, 0], dot=dot))


@pytest.mark.parametrize("n", [1, 2])
def test_action_of_regular_module_is_bijective(n):
    hom = action_homomorphism(n, regular_module(gn_structure_constants(n)))
    assert hom.image_dim == 4**n  # onto End(V) and injective
    assert hom.commutant_dim == 1
    assert hom.images[0] == SparseMatrix.identity(2**n)


def test_action_on_double_regular():
    reg = regular_module(gn_structure_constants(2))
    hom = action_homomorphism(2, direct_sum(reg, reg))
    assert hom.image_dim == 16 and hom.commutant_dim == 4


def test_action_rejects_contact_modules():
    with pytest.raises(ValueError):
        action_homomorphism(1, gn_beta(1, 1))
