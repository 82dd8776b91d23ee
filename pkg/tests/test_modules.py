import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from psg.exact_linear import SparseMatrix, scalar
from psg.grassmann import gn_structure_constants
from psg.kantor import jordan_from_contact, kantor_module
from psg.modules import (
    SuperModule,
    check_module,
    conjugate,
    decompose,
    direct_sum,
    find_isomorphism,
    gn_beta,
    gn_beta_jordan,
    gn_beta_jordan_displayed,
    identify_contact_irrep,
    IdentificationError,
    irreducibility,
    is_irreducible,
    jordan_to_contact_module,
    module_identity_reports,
    m_alpha,
    opposite,
    random_even_matrix,
    regular_module,
    split_null_extension,
    submodule_closure,
    unkan,
)
from psg.superalgebra import check_identity, check_suite

G = gn_structure_constants


def test_regular_g3_is_poisson_module():
    assert check_module(regular_module(G(3))).passed


def test_gn_beta_contact_module():
    assert check_module(gn_beta(3, scalar(5) / 7)).passed


def test_flipped_unit_beta_term_fails_identity_7():
    beta = scalar(1)
    v = gn_beta(2, beta)
    h = list(v.h)
    h[0] = h[0].scale(-1)  # {bar e_I, 1} = +2 beta bar e_I
    bad = v.replace(h=h)
    assert not check_module(bad).passed
    reports = {r.name: r for r in module_identity_reports(bad)}
    id7 = reports["id7"]
    assert not id7.passed
    assert len(id7.counterexample) == 3
    # defect is the 2 beta e_I e_J e_K term, doubled by the flip
    assert set(id7.defect.values()) == {4 * beta} or set(id7.defect.values()) == {-4 * beta}


def test_split_null_extensions():
    g1 = G(1)
    assert all(r.passed for r in check_suite(split_null_extension(g1, regular_module(g1)), "poisson"))
    e = split_null_extension(G(2), gn_beta(2, 1))
    assert check_identity(e, "super-jacobi").passed
    assert check_identity(e, "contact-leibniz").passed
    assert e.dim == 8 and e.unit == {0: 1}


def test_opposite_is_involution_and_odd_iso():
    v = gn_beta(2, 3)
    assert opposite(opposite(v)).parity == v.parity
    res = find_isomorphism(v, opposite(v), "odd")
    assert res.found and res.witness == SparseMatrix.identity(v.dim)


def test_regular_has_no_even_iso_to_opposite():
    r = regular_module(G(2))
    res = find_isomorphism(r, opposite(r), "even")
    assert res.status == "none" and res.solution_dim == 0


def test_gn_beta_values():
    beta = scalar(3)
    v = gn_beta(2, beta)
    # {bar e_empty, e_1} = -beta bar e_1
    assert v.h[1].apply({0: 1}) == {1: -beta}
    for i in range(4):
        assert v.h[0].apply({i: 1}) == {i: -2 * beta}
    reg = regular_module(G(2))
    z = gn_beta(2, 0)
    assert z.m == reg.m and z.h == reg.h


def test_gn_beta_jordan_sign():
    beta = scalar(2)
    v = gn_beta_jordan(2, beta)
    assert check_module(v).passed
    # <bar 1, e_J> = beta (|J| - 1) bar e_J under the conversion formula
    for mask, size in ((1, 1), (2, 1), (3, 2)):
        assert v.h[mask].apply({0: 1}) == ({mask: beta * (size - 1)} if size != 1 else {})
    # the variant with the opposite sign on the beta v.a term is not a module
    assert not check_module(gn_beta_jordan_displayed(2, beta)).passed


def test_gn_beta_jordan_zero_is_regular():
    v = gn_beta_jordan(2, 0)
    reg = regular_module(G(2))
    assert v.m == reg.m and v.h == reg.h and v.kind == "jordan"


def test_m_alpha_table_entries():
    v = m_alpha(2, 1)
    size = 4
    bar = lambda k: size + k  # noqa: E731
    # w~_{12} = -w~_{(2,1)} in the aligned form, so the table's -alpha becomes +alpha
    assert v.m[bar(3)].apply({bar(3): 1}) == {0: 1}
    for i in range(size):
        for j in range(size):
            if j & ~i:
                assert v.m[j].apply({i: 1}) == {}
    assert v.m[bar(2)].apply({bar(1): 1}) == {3: 1}


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("alpha", [0, 1, -2])
def test_m_alpha_is_jordan_module(n, alpha):
    assert check_module(m_alpha(n, alpha)).passed


def test_wrong_grading_rejected():
    v = m_alpha(2, 1)
    flipped = list(v.parity)
    flipped[0] ^= 1
    with pytest.raises(ValueError):
        v.replace(parity=flipped)


def test_closures():
    g = G(2)
    reg = regular_module(g)
    assert len(submodule_closure(reg, [{0: 1}])) == 4
    assert submodule_closure(reg, [{}]) == []
    two = direct_sum(reg, reg)
    sub = submodule_closure(two, [{0: 1}])
    assert len(sub) == 4 and all(max(v) < 4 for v in sub)


def test_irreducibility_examples():
    g = G(2)
    rep = irreducibility(regular_module(g))
    assert rep.irreducible and rep.closure_dim == 16
    two = irreducibility(direct_sum(regular_module(g), regular_module(g)))
    assert not two.irreducible and len(two.witness) == 4 and all(max(v) < 4 for v in two.witness)
    assert is_irreducible(gn_beta(3, 2))


@settings(max_examples=10)
@given(st.integers(1, 3), st.integers(-3, 3))
def test_irreducible_means_every_basis_vector_generates(n, beta):
    v = gn_beta(n, beta)
    assert is_irreducible(v)
    for i in range(v.dim):
        assert len(submodule_closure(v, [{i: 1}])) == v.dim


def test_decompose_examples():
    g = G(2)
    reg = regular_module(g)
    assert decompose(reg).tags == ["reg"]
    assert sorted(decompose(direct_sum(reg, opposite(reg))).tags) == ["reg", "reg-op"]
    three = direct_sum(reg, reg, reg)
    scrambled = conjugate(three, random_even_matrix(three.parity, random.Random(3)))
    assert decompose(scrambled).tags == ["reg"] * 3


def test_decompose_rejects_non_unital():
    g = G(1)
    zero = SuperModule(g, [0, 1], [SparseMatrix.zero(2)] * 2, [SparseMatrix.zero(2)] * 2, "poisson")
    with pytest.raises(ValueError):
        decompose(zero)


def test_iso_examples():
    v = gn_beta(2, 1)
    same = find_isomorphism(v, v, "even")
    assert same.found and same.witness == SparseMatrix.identity(4)
    diff = find_isomorphism(gn_beta(2, 1), gn_beta(2, -1), "any")
    assert diff.status == "none" and diff.solution_dim == 0


def test_iso_kind_mismatch():
    with pytest.raises(ValueError):
        find_isomorphism(gn_beta(1, 0), gn_beta_jordan(1, 0))


def test_identify_examples():
    p = identify_contact_irrep(gn_beta(2, scalar(3) / 2))
    assert p.beta == scalar(3) / 2 and p.flag == "straight" and p.complement_ok
    q = identify_contact_irrep(opposite(gn_beta(3, 0)))
    assert q.beta == 0 and q.flag == "opposite"
    v = gn_beta(2, -1)
    w = conjugate(v, random_even_matrix(v.parity, random.Random(11)))
    r = identify_contact_irrep(w)
    assert r.beta == -1 and r.witness is not None


def test_identify_rejects_reducible():
    v = direct_sum(gn_beta(1, 1), gn_beta(1, 2))
    with pytest.raises(IdentificationError):
        identify_contact_irrep(v)


@pytest.mark.parametrize("alpha", [0, 1, -2, 3])
def test_w_alpha_route_gives_beta_minus_alpha(alpha):
    g = jordan_from_contact(G(2), check=False)
    w = unkan(m_alpha(2, alpha), g)
    assert check_module(w).passed
    assert kantor_module(g, w).m == m_alpha(2, alpha).m
    prof = identify_contact_irrep(jordan_to_contact_module(w))
    assert prof.beta == -scalar(alpha)


def test_module_json_roundtrip():
    v = gn_beta(2, scalar(1) / 2)
    data = json.loads(json.dumps(v.to_json()))
    w = SuperModule.from_json(data)
    assert w.m == v.m and w.h == v.h and w.kind == "contact" and w.labels == v.labels
    with pytest.raises(ValueError):
        SuperModule.from_json({**data, "dim": 3})
