"""Acceptance criteria, one test (or a few parts) per criterion.

Each part records a pass/fail line; the lines are aggregated per criterion and
printed in the terminal summary (and when the file is run as a script).
Parts that are known to be unattainable are marked as strict expected
failures: they still run in full and their FAIL line is printed.
"""

import random
import sys
import time
from collections import Counter
from contextlib import contextmanager

import pytest

from helpers import random_contact_bracket, small_poisson_3
from psg.coordinatize import coordinatization, right_embedding
from psg.enveloping import generator_relations, u_poisson_gn, verify_matrix_algebra
from psg.exact_linear import SparseMatrix, coordinates, is_invertible, scalar
from psg.grassmann import gn_structure_constants, tensor_generator_map
from psg.kantor import contact_from_jordan, jordan_from_contact, kantor_double
from psg.modules import (
    check_module,
    conjugate,
    decompose,
    direct_sum,
    find_isomorphism,
    gn_beta,
    identify_contact_irrep,
    irreducibility,
    opposite,
    random_even_matrix,
    regular_module,
    restrict,
)
from psg.pipeline import golden_pipeline
from psg.superalgebra import (
    check_homomorphism,
    check_identity,
    check_suite,
    find_ideal,
    grassmann_envelope_jordan_oracle,
    is_ideal,
    is_isomorphism,
    is_simple,
    tensor_product,
)

G = gn_structure_constants
RESULTS: dict = {}


@contextmanager
def criterion(num: int, part: str):
    t = time.perf_counter()
    try:
        yield
    except BaseException:
        RESULTS.setdefault(num, []).append((part, False, time.perf_counter() - t))
        raise
    RESULTS.setdefault(num, []).append((part, True, time.perf_counter() - t))


def summary_lines() -> list[str]:
    lines = []
    for num in sorted(RESULTS):
        parts = RESULTS[num]
        ok = all(p for _, p, _ in parts)
        detail = "; ".join(f"{name}: {'pass' if p else 'FAIL'} ({dt:.1f}s)" for name, p, dt in parts)
        lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    return lines


# 1 ------------------------------------------------------------------------

AXIOMS = ("supercommutativity", "associativity", "super-anticommutativity", "super-jacobi", "leibniz")


def test_criterion_1_axiom_suite():
    with criterion(1, "G_1..G_5 pass all five identities in < 300 s"):
        t = time.perf_counter()
        for n in range(1, 6):
            g = G(n)
            for name in AXIOMS:
                rep = check_identity(g, name)
                assert rep.passed, (n, name, rep.counterexample)
                assert rep.tuples_checked > 0
        assert time.perf_counter() - t < 300


# 2 ------------------------------------------------------------------------


def test_criterion_2_simple_n2_n3():
    with criterion(2, "G_2, G_3 simple"):
        for n in (2, 3):
            assert is_simple(G(n))


@pytest.mark.xfail(strict=True, reason="G_1 is simple: {e1, x} reaches the unit from any nonzero x")
def test_criterion_2_g1_not_simple():
    with criterion(2, "G_1 not simple with ideal witness"):
        g = G(1)
        assert not is_simple(g)
        ideal = find_ideal(g)
        assert ideal is not None and is_ideal(g, ideal)


# 3 ------------------------------------------------------------------------


def test_criterion_3_envelope():
    with criterion(3, "dim U(G_n) = 4^n, relations, M_{2^n}"):
        for n in (1, 2, 3):
            env = u_poisson_gn(n)
            assert env.algebra.dim == 4**n
            assert all(generator_relations(env).values())
            rep = verify_matrix_algebra(env.algebra)
            assert rep.verdict == "true" and rep.k == 2**n


# 4 ------------------------------------------------------------------------


def test_criterion_4_regular_irreducible():
    with criterion(4, "Reg G_n irreducible, odd iso to opposite, no even iso"):
        for n in (1, 2, 3):
            reg = regular_module(G(n))
            rep = irreducibility(reg)
            assert rep.irreducible and rep.closure_dim == 4**n
            odd = find_isomorphism(reg, opposite(reg), "odd")
            assert odd.found
            even = find_isomorphism(reg, opposite(reg), "even")
            assert even.status == "none" and even.solution_dim == 0


# 5 ------------------------------------------------------------------------


def _component_tag(v, basis, reg, op):
    sub = restrict(v, basis)
    if find_isomorphism(sub, reg, "even").found:
        return "reg"
    if find_isomorphism(sub, op, "even").found:
        return "reg-op"
    return "?"


def test_criterion_5_decomposition():
    with criterion(5, "decompose recovers (Reg)^a + (Reg^op)^b, a+b <= 3, n <= 2"):
        rng = random.Random(20)
        for n in (1, 2):
            reg = regular_module(G(n))
            op = opposite(reg)
            for a in range(4):
                for b in range(4 - a):
                    if a + b == 0:
                        continue
                    parts = [reg] * a + [op] * b
                    rng.shuffle(parts)
                    v = direct_sum(*parts)
                    want = Counter({"reg": a, "reg-op": b})
                    for w in (v, conjugate(v, random_even_matrix(v.parity, rng))):
                        res = decompose(w)
                        assert Counter(res.tags) == want
                        iso_tags = Counter(_component_tag(w, basis, reg, op) for basis, _ in res.components)
                        assert iso_tags == want


# 6 ------------------------------------------------------------------------


def test_criterion_6_coordinatization():
    with criterion(6, "P = Q (x) G_n round trip"):
        qs = [G(1), G(2), small_poisson_3(random.Random(6))]
        assert all(r.passed for r in check_suite(qs[2], "poisson"))
        for q in qs:
            for n in (1, 2):
                p = tensor_product(q, G(n))
                res = coordinatization(p, right_embedding(q, n))
                assert res.a.dim == q.dim
                assert is_invertible(res.witness)
                assert check_homomorphism(tensor_product(res.a, G(n)), p, res.witness).passed
                size = 1 << n
                cols = [coordinates(res.a_basis, {i * size: scalar(1)}) for i in range(q.dim)]
                assert is_isomorphism(q, res.a, SparseMatrix.from_columns(res.a.dim, cols))


# 7 ------------------------------------------------------------------------


def test_criterion_7_kantor_and_brackets():
    with criterion(7, "Kan(G_n) Jordan + envelope; KM after contact-to-Jordan; 20 round trips"):
        for n in (1, 2, 3):
            k = kantor_double(G(n))
            assert check_identity(k, "jordan").passed
            assert grassmann_envelope_jordan_oracle(k, m=4).passed
        rng = random.Random(7)
        for _ in range(20):
            a = random_contact_bracket(rng, max_n=3)
            assert a.dim <= 16
            assert all(r.passed for r in check_suite(a, "contact"))
            j = jordan_from_contact(a, check=False)
            assert all(r.passed for r in check_suite(j, "jordan-bracket"))
            assert contact_from_jordan(j, check=False).same_constants(a)
            assert jordan_from_contact(contact_from_jordan(j, check=False), check=False).same_constants(j)


# 8 ------------------------------------------------------------------------

BETAS = (scalar(0), scalar(1), scalar(-1), scalar(3) / 2)


def test_criterion_8_contact_modules():
    with criterion(8, "G_n(beta) suite, identification, pairwise non-isomorphic"):
        for n in (1, 2, 3, 4):
            for beta in BETAS:
                assert check_module(gn_beta(n, beta)).passed
        rng = random.Random(8)
        for n in (1, 2, 3):
            for beta in BETAS:
                for flip in (False, True):
                    v = gn_beta(n, beta)
                    if flip:
                        v = opposite(v)
                    want = "opposite" if flip else "straight"
                    for w in (v, conjugate(v, random_even_matrix(v.parity, rng))):
                        prof = identify_contact_irrep(w)
                        assert prof.beta == beta and prof.flag == want
            for b1 in BETAS:
                for b2 in BETAS:
                    if b1 != b2:
                        res = find_isomorphism(gn_beta(n, b1), gn_beta(n, b2), "any")
                        assert res.status == "none" and res.solution_dim == 0


# 9 ------------------------------------------------------------------------


def _golden_cases(alphas):
    for n in (1, 2, 3):
        for alpha in alphas:
            yield n, alpha


def test_criterion_9_alpha_zero():
    with criterion(9, "alpha = 0"):
        for n, alpha in _golden_cases([0]):
            res = golden_pipeline(n, alpha)
            assert res.passed and res.resolved == 0


@pytest.mark.xfail(
    strict=True,
    reason="the even isomorphism exists for beta = -alpha, which is neither alpha/2 nor -alpha/2",
)
def test_criterion_9_alpha_nonzero():
    with criterion(9, "alpha in {1, -2, 3}: exactly one of +-alpha/2, one convention"):
        conventions = set()
        failures = []
        for n, alpha in _golden_cases([1, -2, 3]):
            res = golden_pipeline(n, alpha)
            if not res.passed:
                found = [d["rule"] for d in res.diagnostics if d["match"]]
                failures.append((n, alpha, found))
            else:
                conventions.add(res.convention)
        assert not failures, f"no candidate matched; diagnostic matches: {failures}"
        assert len(conventions) == 1


# 10 -----------------------------------------------------------------------


def test_criterion_10_tensor_coherence():
    with criterion(10, "G_1 (x) G_1 = G_2, G_1 (x) G_2 = G_3"):
        for p, q in ((1, 1), (1, 2)):
            assert is_isomorphism(tensor_product(G(p), G(q)), G(p + q), tensor_generator_map(p, q))


if __name__ == "__main__":
    tests = [(k, v) for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for name, fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    for line in summary_lines():
        print(line)
    sys.exit(0 if all(p for parts in RESULTS.values() for _, p, _ in parts) else 1)
