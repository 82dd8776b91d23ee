"""Supermodules as representation pairs (m, h) of right actions.

Column convention: ``m[i]`` is the matrix of ``v -> v . b_i`` acting on
column vectors, so the operator product written left-to-right in the
right-action notation, ``m(a) h(b)`` (first m(a), then h(b)), is the matrix
``h[b] @ m[a]``; :func:`seq` encodes that order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .exact_linear import (
    Echelon,
    SparseMatrix,
    block_diag,
    coordinates,
    inverse,
    is_invertible,
    matrix_rank,
    scalar,
    solve_rows,
    span_closure,
    subspace_closure,
    vlin,
)
from .grassmann import gn_structure_constants, indices_mask, mask_indices, merge_sign, popcount
from .superalgebra import IdentityReport, SuperAlgebra, check_suite, find_unit

KINDS = ("poisson", "contact", "jordan", "plain-jordan")


def seq(*ops: SparseMatrix) -> SparseMatrix:
    """Composite of right operators applied in the given order."""
    out = ops[0]
    for op in ops[1:]:
        out = op @ out
    return out


@dataclass(frozen=True, eq=False)
class SuperModule:
    algebra: SuperAlgebra
    parity: tuple
    m: tuple
    h: tuple | None
    kind: str
    labels: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown module kind {self.kind!r}")
        parity = tuple(int(p) for p in self.parity)
        if any(p not in (0, 1) for p in parity):
            raise ValueError("parity entries must be 0 or 1")
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "m", tuple(self.m))
        if self.kind == "plain-jordan":
            if self.h is not None:
                raise ValueError("plain-jordan modules carry no bracket action")
        else:
            if self.h is None:
                raise ValueError(f"{self.kind} modules need bracket action matrices")
            object.__setattr__(self, "h", tuple(self.h))
        d, na = len(parity), self.algebra.dim
        for fam, mats in (("m", self.m), ("h", self.h)):
            if mats is None:
                continue
            if len(mats) != na:
                raise ValueError(f"need one {fam} matrix per algebra basis element ({na}), got {len(mats)}")
            for i, mat in enumerate(mats):
                if mat.shape != (d, d):
                    raise ValueError(f"{fam}[{i}] has shape {mat.shape}, expected {d}x{d}")
                pi = self.algebra.parity[i]
                for r, c, _ in mat.entries():
                    if parity[r] != parity[c] ^ pi:
                        raise ValueError(f"{fam}[{i}] is not parity-homogeneous at ({r},{c})")
        if self.labels is not None:
            if len(self.labels) != d:
                raise ValueError("basis_labels length must equal dim")
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self) -> int:
        return len(self.parity)

    def m_of(self, vec: dict) -> SparseMatrix:
        return _combine(self.m, vec, self.dim)

    def h_of(self, vec: dict) -> SparseMatrix:
        if self.h is None:
            raise ValueError("module has no bracket action")
        return _combine(self.h, vec, self.dim)

    def operators(self) -> list[SparseMatrix]:
        ops = list(self.m) + list(self.h or ())
        return [op for op in ops if not op.is_zero()]

    def replace(self, **kw) -> "SuperModule":
        args = dict(algebra=self.algebra, parity=self.parity, m=self.m, h=self.h, kind=self.kind, labels=self.labels)
        args.update(kw)
        return SuperModule(**args)

    def to_json(self, algebra_ref=None) -> dict:
        out = {
            "algebra": algebra_ref if algebra_ref is not None else self.algebra.to_json(),
            "dim": self.dim,
            "parity": list(self.parity),
            "kind": self.kind,
            "m": [mat.to_json() for mat in self.m],
        }
        if self.h is not None:
            out["h"] = [mat.to_json() for mat in self.h]
        if self.labels is not None:
            out["basis_labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict, algebra: SuperAlgebra | None = None) -> "SuperModule":
        if not isinstance(data, dict):
            raise ValueError("module JSON must be an object")
        if algebra is None:
            alg = data.get("algebra")
            if not isinstance(alg, dict):
                raise ValueError("module JSON needs an inline 'algebra' object (or a resolved reference)")
            algebra = SuperAlgebra.from_json(alg)
        try:
            d = int(data["dim"])
            parity = [int(p) for p in data["parity"]]
            kind = data["kind"]
            m = [SparseMatrix.from_json(d, d, t) for t in data["m"]]
            h = [SparseMatrix.from_json(d, d, t) for t in data["h"]] if data.get("h") is not None else None
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed module JSON: {exc}") from exc
        if len(parity) != d:
            raise ValueError("parity vector length must equal dim")
        return cls(algebra=algebra, parity=parity, m=m, h=h, kind=kind, labels=data.get("basis_labels"))


def _combine(mats: Sequence[SparseMatrix], vec: dict, d: int) -> SparseMatrix:
    out = SparseMatrix.zero(d)
    for k, c in vec.items():
        out = out + mats[k].scale(c)
    return out


# --------------------------------------------------------------------------
# identity checks


def _sgn(p, i, j) -> int:
    return -1 if p[i] and p[j] else 1


def _matrix_identity(name, pairs, lhs_rhs) -> IdentityReport:
    rep = IdentityReport(name)
    for a, b in pairs:
        rep.tuples_checked += 1
        diff = lhs_rhs(a, b)
        if not diff.is_zero():
            c = next(iter(sorted(diff.entries(), key=lambda e: (e[1], e[0]))))[1]
            rep.counterexample = (a, b, c)
            rep.defect = dict(diff.column(c))
            return rep
    return rep


def module_identity_reports(v: SuperModule) -> list[IdentityReport]:
    """Per-identity reports for poisson and contact modules."""
    a = v.algebra
    if v.kind not in ("poisson", "contact"):
        raise ValueError("matrix identities apply to poisson and contact modules")
    if a.bracket is None:
        raise ValueError("algebra has no bracket")
    p = a.parity
    M, H = v.m, v.h
    d = a.dim
    pairs = list(itertools.product(range(d), repeat=2))
    dot = lambda i, j: a.dot.get((i, j), {})  # noqa: E731
    bra = lambda i, j: a.bracket.get((i, j), {})  # noqa: E731

    def id1(i, j):
        return v.m_of(dot(i, j)) - seq(M[i], M[j])

    def id2(i, j):
        return v.m_of(bra(i, j)) - (seq(M[i], H[j]) - seq(H[j], M[i]).scale(_sgn(p, i, j)))

    def id3(i, j):
        return v.h_of(dot(i, j)) - (seq(H[i], M[j]) + seq(H[j], M[i]).scale(_sgn(p, i, j)))

    def id4(i, j):
        return v.h_of(bra(i, j)) - (seq(H[i], H[j]) - seq(H[j], H[i]).scale(_sgn(p, i, j)))

    if v.kind == "poisson":
        return [
            _matrix_identity("id1", pairs, id1),
            _matrix_identity("id2", pairs, id2),
            _matrix_identity("id3", pairs, id3),
            _matrix_identity("id4", pairs, id4),
        ]

    u = a.unit if a.unit is not None else find_unit(a)
    if u is None:
        raise ValueError("contact module identities need a unital algebra")
    H1 = v.h_of(u)
    d1 = [a.br(u, {j: 1}) for j in range(d)]  # {1, b_j}

    def id6(i, j):
        return v.m_of(bra(i, j)) - (
            seq(M[i], H[j]) - seq(H[j], M[i]).scale(_sgn(p, i, j)) + seq(M[i], v.m_of(d1[j]))
        )

    def id7(i, j):
        return v.h_of(dot(i, j)) - (
            seq(H[i], M[j]) + seq(H[j], M[i]).scale(_sgn(p, i, j)) - seq(H1, M[i], M[j])
        )

    return [
        _matrix_identity("id1", pairs, id1),
        _matrix_identity("id4", pairs, id4),
        _matrix_identity("id6", pairs, id6),
        _matrix_identity("id7", pairs, id7),
    ]


def check_module(v: SuperModule) -> IdentityReport:
    """First failing identity for the module's kind, or a passing summary."""
    if v.kind in ("poisson", "contact"):
        reports = module_identity_reports(v)
    else:
        e = split_null_extension(v.algebra, v)
        da = v.algebra.dim
        one_v = lambda t: sum(1 for i in t if i >= da) == 1  # noqa: E731
        suite = "jordan-bracket" if v.kind == "jordan" else "jordan"
        reports = check_suite(e, suite, only=one_v)
    total = sum(r.tuples_checked for r in reports)
    for r in reports:
        if not r.passed:
            return r
    return IdentityReport(f"{v.kind}-module", total)


# --------------------------------------------------------------------------
# constructions


def is_unital(v: SuperModule) -> bool:
    u = v.algebra.unit if v.algebra.unit is not None else find_unit(v.algebra)
    return u is not None and v.m_of(u) == SparseMatrix.identity(v.dim)


def split_null_extension(a: SuperAlgebra, v: SuperModule) -> SuperAlgebra:
    """E(A, V) = A + V with V a square-zero ideal; V sits at indices dim(A)...

    The mixed bracket is {a, u} = -(-1)^{|a||u|} {u, a}, which keeps the
    bracket super-anticommutative.
    """
    if v.algebra is not a and not v.algebra.same_constants(a):
        raise ValueError("module is over a different algebra")
    da, dv = a.dim, v.dim
    pa, pv = a.parity, v.parity
    dot = {k: dict(x) for k, x in a.dot.items()}
    for i in range(da):
        mat = v.m[i]
        for c in range(dv):
            col = mat.column(c)
            if col:
                out = {da + r: x for r, x in col.items()}
                dot[da + c, i] = out
                s = -1 if pa[i] and pv[c] else 1
                dot[i, da + c] = {k: s * x for k, x in out.items()}
    bracket = None
    if v.h is not None:
        if a.bracket is None:
            raise ValueError("bracket module over an algebra without bracket")
        bracket = {k: dict(x) for k, x in a.bracket.items()}
        for i in range(da):
            mat = v.h[i]
            for c in range(dv):
                col = mat.column(c)
                if col:
                    out = {da + r: x for r, x in col.items()}
                    bracket[da + c, i] = out
                    s = 1 if pa[i] and pv[c] else -1
                    bracket[i, da + c] = {k: s * x for k, x in out.items()}
    unit = None
    if a.unit is not None and is_unital(v):
        unit = dict(a.unit)
    labels = None
    if a.labels or v.labels:
        labels = [a.label(i) for i in range(da)] + [
            (v.labels[c] if v.labels else f"v{c}") for c in range(dv)
        ]
    return SuperAlgebra(parity=list(pa) + list(pv), dot=dot, bracket=bracket, unit=unit, labels=labels)


def module_from_extension(e: SuperAlgebra, a: SuperAlgebra, kind: str) -> SuperModule:
    """Read the (m, h) actions of V = E / A back off a split null extension."""
    da = a.dim
    dv = e.dim - da
    m, h = [], []
    for i in range(da):
        m.append(_block(e.dot, da, dv, i))
        if kind != "plain-jordan":
            h.append(_block(e.bracket, da, dv, i))
    return SuperModule(
        algebra=a,
        parity=e.parity[da:],
        m=m,
        h=None if kind == "plain-jordan" else h,
        kind=kind,
        labels=e.labels[da:] if e.labels else None,
    )


def _block(table: dict, da: int, dv: int, i: int) -> SparseMatrix:
    cols = []
    for c in range(dv):
        out = table.get((da + c, i), {})
        col = {}
        for k, x in out.items():
            if k < da:
                raise ValueError("extension does not keep V as an ideal")
            col[k - da] = x
        cols.append(col)
    return SparseMatrix.from_columns(dv, cols)


def regular_module(a: SuperAlgebra, kind: str | None = None) -> SuperModule:
    if kind is None:
        kind = "poisson" if a.bracket is not None else "plain-jordan"
    m = [a.right_operator(i) for i in range(a.dim)]
    h = None if kind == "plain-jordan" else [a.right_operator(i, bracket=True) for i in range(a.dim)]
    return SuperModule(algebra=a, parity=a.parity, m=m, h=h, kind=kind, labels=a.labels)


def opposite(v: SuperModule) -> SuperModule:
    labels = None if v.labels is None else tuple(lab + "^op" if not lab.endswith("^op") else lab[:-3] for lab in v.labels)
    return v.replace(parity=tuple(1 - p for p in v.parity), labels=labels)


def direct_sum(*vs: SuperModule) -> SuperModule:
    first = vs[0]
    for w in vs[1:]:
        if w.kind != first.kind or not (w.algebra is first.algebra or w.algebra.same_constants(first.algebra)):
            raise ValueError("direct sum needs modules of one kind over one algebra")
    n = first.algebra.dim
    m = [block_diag(*(w.m[i] for w in vs)) for i in range(n)]
    h = None if first.h is None else [block_diag(*(w.h[i] for w in vs)) for i in range(n)]
    parity = [p for w in vs for p in w.parity]
    return SuperModule(algebra=first.algebra, parity=parity, m=m, h=h, kind=first.kind)


def conjugate(v: SuperModule, p: SparseMatrix) -> SuperModule:
    """The same module in the basis whose coordinates are x -> p x (p even, invertible)."""
    for r, c, _ in p.entries():
        if v.parity[r] != v.parity[c]:
            raise ValueError("conjugating matrix must be even")
    pinv = inverse(p)
    m = [p @ mat @ pinv for mat in v.m]
    h = None if v.h is None else [p @ mat @ pinv for mat in v.h]
    return SuperModule(algebra=v.algebra, parity=v.parity, m=m, h=h, kind=v.kind)


def random_even_matrix(parity: Sequence[int], rng: random.Random, bound: int = 3) -> SparseMatrix:
    """Random invertible parity-preserving integer matrix."""
    d = len(parity)
    while True:
        entries = [
            (r, c, rng.randint(-bound, bound)) for r in range(d) for c in range(d) if parity[r] == parity[c]
        ]
        mat = SparseMatrix.from_entries(d, d, entries)
        if is_invertible(mat):
            return mat


def restrict(v: SuperModule, basis: Sequence[dict]) -> SuperModule:
    """The submodule spanned by ``basis`` (homogeneous, action-closed) in its own coordinates."""
    basis = list(basis)
    parity = []
    for b in basis:
        ps = {v.parity[k] for k in b}
        if len(ps) != 1:
            raise ValueError("restriction basis must be homogeneous and nonzero")
        parity.append(ps.pop())

    def block(mat):
        cols = []
        for b in basis:
            coords = coordinates(basis, mat.apply(b))
            if coords is None:
                raise ValueError("subspace is not invariant")
            cols.append(coords)
        return SparseMatrix.from_columns(len(basis), cols)

    m = [block(x) for x in v.m]
    h = None if v.h is None else [block(x) for x in v.h]
    return SuperModule(algebra=v.algebra, parity=parity, m=m, h=h, kind=v.kind)


# --------------------------------------------------------------------------
# concrete modules over G_n and Kan(G_n)


def gn_beta(n: int, beta) -> SuperModule:
    """G_n(beta): bar(e_I).e_J = bar(e_I e_J),
    {bar(e_I), e_J} = bar({e_I, e_J}) + beta (|J| - 2) bar(e_I e_J)."""
    if n < 1:
        raise ValueError("G_n(beta) needs n >= 1")
    beta = scalar(beta)
    g = gn_structure_constants(n)
    dim = g.dim
    m, h = [], []
    for j in range(dim):
        mj = g.right_operator(j)
        hj = g.right_operator(j, bracket=True)
        w = beta * (popcount(j) - 2)
        m.append(mj)
        h.append(hj + mj.scale(w))
    labels = [lab + "~" for lab in g.labels]
    return SuperModule(algebra=g, parity=g.parity, m=m, h=h, kind="contact", labels=labels)


def contact_to_jordan_module(v: SuperModule) -> SuperModule:
    """Apply <a,b> = {a,b} - 1/2(a{1,b} - {1,a}b) inside E(A, V)."""
    from .kantor import jordan_from_contact

    if v.kind != "contact":
        raise ValueError("expected a contact module")
    a = v.algebra
    e = split_null_extension(a, v)
    ej = jordan_from_contact(e, check=False)
    aj = jordan_from_contact(a, check=False)
    out = module_from_extension(ej, aj, "jordan")
    return out.replace(labels=v.labels)


def jordan_to_contact_module(v: SuperModule) -> SuperModule:
    """Apply {a,b} = <a,b> + (a<1,b> - <1,a>b) inside E(A, V)."""
    from .kantor import contact_from_jordan

    if v.kind != "jordan":
        raise ValueError("expected a Jordan-bracket module")
    a = v.algebra
    e = split_null_extension(a, v)
    ec = contact_from_jordan(e, check=False)
    ac = contact_from_jordan(a, check=False)
    out = module_from_extension(ec, ac, "contact")
    return out.replace(labels=v.labels)


def gn_beta_jordan(n: int, beta) -> SuperModule:
    """The Jordan-bracket module obtained from G_n(beta) by the contact-to-Jordan bracket conversion.

    On G_n, {1, a} = 0 and {v, 1} = -2 beta v, so the converted bracket is
    <v, a> = {v, a} + beta v.a.
    """
    return contact_to_jordan_module(gn_beta(n, beta))


def gn_beta_jordan_displayed(n: int, beta) -> SuperModule:
    """Variant with <v, a> = {v, a} - beta v.a (the sign that fails the module check)."""
    v = gn_beta(n, beta)
    beta = scalar(beta)
    h = [hj - mj.scale(beta) for hj, mj in zip(v.h, v.m)]
    return v.replace(h=h, kind="jordan")


def _perm_sign(seq_: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq_)) for j in range(i + 1, len(seq_)) if seq_[i] > seq_[j])
    return -1 if inv & 1 else 1


def _m_alpha_action(n: int, alpha, imask: int, ibar: bool, jmask: int, jbar: bool):
    """w_I (or bar w_I) acted on by e_J (or bar e_J) in M_alpha.

    Returns (bar_flag, mask, coefficient) or None. Index sets are aligned as
    I = (rest, reversed common part), J = (common part, extra) before the
    table is applied; the permutation signs of both alignments are tracked.
    """
    I = mask_indices(imask)
    J = mask_indices(jmask)
    common = [j for j in J if j in I]
    extra = [j for j in J if j not in I]
    rest = [i for i in I if i not in J]
    sign_i = _perm_sign(rest + common[::-1])  # w_{aligned I} = sign_i w_I
    if not extra:
        # J subset of I; J aligned = J itself
        if not ibar and not jbar:
            return (False, indices_mask(rest), sign_i)
        if not ibar and jbar:
            return (True, indices_mask(rest), sign_i)
        if ibar and not jbar:
            return (True, indices_mask(rest), sign_i * (-1) ** len(J))
        k = len(J)
        return (False, indices_mask(rest), sign_i * (-1) ** (k - 1) * alpha * (k - 1))
    if not (ibar and jbar) or len(extra) >= 2:
        return None
    x = extra[0]
    sign_j = _perm_sign(common + [x])  # e_{aligned J} = sign_j e_J
    target = rest + [x]
    sign_t = _perm_sign(target)  # w_{target} = sign_t w_{sorted}
    coeff = sign_i * sign_j * sign_t * (-1) ** len(common)
    return (False, indices_mask(target), coeff)


def m_alpha(n: int, alpha) -> SuperModule:
    """The Jordan supermodule M_alpha over Kan(G_n).

    Basis: w_I at index mask(I), bar w_I at 2^n + mask(I); parity of w_I is
    (n + |I|) mod 2. Algebra basis: e_J at mask(J), bar e_J at 2^n + mask(J).
    """
    from .kantor import kantor_double

    if n < 1:
        raise ValueError("M_alpha needs n >= 1")
    alpha = scalar(alpha)
    g = gn_structure_constants(n)
    kan = kantor_double(g)
    size = 1 << n
    d = 2 * size
    mats = []
    for jb in (False, True):
        for jm in range(size):
            entries = []
            for ib in (False, True):
                for im in range(size):
                    res = _m_alpha_action(n, alpha, im, ib, jm, jb)
                    if res is None:
                        continue
                    tb, tm, c = res
                    if c:
                        entries.append(((size if tb else 0) + tm, (size if ib else 0) + im, c))
            mats.append(SparseMatrix.from_entries(d, d, entries))
    parity = [(n + popcount(k)) % 2 for k in range(size)] * 1
    parity = parity + [1 - p for p in parity]
    labels = ["w" + _set_label(k) for k in range(size)] + ["w" + _set_label(k) + "~" for k in range(size)]
    return SuperModule(algebra=kan, parity=parity, m=mats, h=None, kind="plain-jordan", labels=labels)


def _set_label(mask: int) -> str:
    return "{" + ",".join(str(i) for i in mask_indices(mask)) + "}"


# --------------------------------------------------------------------------
# closures, irreducibility, decomposition


def submodule_closure(v: SuperModule, seeds: Iterable[dict]) -> list[dict]:
    for s in seeds:
        if s and (max(s) >= v.dim or min(s) < 0):
            raise ValueError("seed vector outside the module")
    return subspace_closure(list(seeds), v.operators())


@dataclass
class IrreducibilityReport:
    irreducible: bool
    closure_dim: int
    witness: list | None = None
    verdict: str = ""

    def __bool__(self) -> bool:
        return self.irreducible


def irreducibility(v: SuperModule) -> IrreducibilityReport:
    """Density test; on failure look for an invariant subspace from basis-vector closures."""
    d = v.dim
    if d < 1:
        raise ValueError("zero-dimensional module")
    ops = v.operators()
    closure = len(span_closure(ops)) if ops else 1
    if closure == d * d:
        return IrreducibilityReport(True, closure, verdict="absolutely irreducible")
    seeds = [{i: scalar(1)} for i in range(d)]
    seeds += [{i: scalar(1), j: scalar(1)} for i, j in itertools.combinations(range(d), 2)]
    for s in seeds:
        sub = subspace_closure([s], ops)
        if 0 < len(sub) < d:
            return IrreducibilityReport(False, closure, sub, "reducible: proper invariant subspace found")
    return IrreducibilityReport(False, closure, None, "not absolutely irreducible, no rational witness found")


def is_irreducible(v: SuperModule) -> bool:
    return irreducibility(v).irreducible


def grassmann_rank(a: SuperAlgebra) -> int:
    d = a.dim
    n = d.bit_length() - 1
    if d != 1 << n:
        raise ValueError("algebra dimension is not a power of two; expected G_n")
    return n


@dataclass
class DecompositionResult:
    components: list  # (basis, tag)

    @property
    def tags(self) -> list[str]:
        return [t for _, t in self.components]


def decompose(v: SuperModule) -> DecompositionResult:
    """Split a unital Poisson G_n-module into copies of Reg G_n and its opposite.

    Generators are the common kernel of h(e_i), i.e. the images of 1.
    """
    if v.kind != "poisson":
        raise ValueError("decompose expects a Poisson module over G_n")
    n = grassmann_rank(v.algebra)
    if not is_unital(v):
        raise ValueError("module is not unital (m(1) != Id)")
    rep = check_module(v)
    if not rep.passed:
        raise ValueError(f"not a Poisson module: {rep.name} fails at {rep.counterexample}")
    gens = []
    for par in (0, 1):
        idx = [k for k in range(v.dim) if v.parity[k] == par]
        if not idx:
            continue
        rows = []
        for i in range(1, n + 1):
            hm = v.h[1 << (i - 1)]
            # rows of h(e_i) restricted to columns of this parity
            sub = hm.submatrix(range(v.dim), idx)
            rr: list[dict] = [dict() for _ in range(v.dim)]
            for r, c, x in sub.entries():
                rr[r][c] = x
            rows.extend(r for r in rr if r)
        for vec in solve_rows(rows, len(idx)).nullspace:
            gens.append(({idx[c]: x for c, x in vec.items()}, par))
    comps = []
    total = Echelon()
    for g, par in gens:
        sub = submodule_closure(v, [g])
        comps.append((sub, "reg" if par == 0 else "reg-op"))
        for b in sub:
            total.add(b)
    if sum(len(b) for b, _ in comps) != v.dim or total.rank != v.dim:
        raise ValueError("components do not form a direct sum decomposition of the module")
    return DecompositionResult(comps)


# --------------------------------------------------------------------------
# isomorphisms


@dataclass
class IsoResult:
    status: str  # found | none | inconclusive
    witness: SparseMatrix | None = None
    parity: str | None = None
    solution_dim: int = 0
    note: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"

    def __bool__(self) -> bool:
        return self.found


def intertwiner_space(v: SuperModule, w: SuperModule, parity: int) -> list[SparseMatrix]:
    """Basis of maps phi: V -> W of the given parity with phi(x.b) = phi(x).b for all actions."""
    dv, dw = v.dim, w.dim
    unknowns = {}
    for r in range(dw):
        for c in range(dv):
            if w.parity[r] == v.parity[c] ^ parity:
                unknowns[r, c] = len(unknowns)
    fams = [(v.m, w.m)]
    if v.h is not None:
        fams.append((v.h, w.h))
    eqs: dict = {}
    for mv_list, mw_list in fams:
        for mv, mw in zip(mv_list, mw_list):
            # (phi mv - mw phi)[r, c]
            local: dict = {}
            for k, c, x in mv.entries():  # mv[k, c]
                for r in range(dw):
                    u = unknowns.get((r, k))
                    if u is not None:
                        row = local.setdefault((r, c), {})
                        row[u] = row.get(u, 0) + x
            for r, k, x in mw.entries():  # mw[r, k]
                for c in range(dv):
                    u = unknowns.get((k, c))
                    if u is not None:
                        row = local.setdefault((r, c), {})
                        row[u] = row.get(u, 0) - x
            for key, row in local.items():
                row = {u: x for u, x in row.items() if x}
                if row:
                    eqs[(id(mv), key)] = row
    sol = solve_rows(list(eqs.values()), len(unknowns))
    inv = {u: rc for rc, u in unknowns.items()}
    out = []
    for vec in sol.nullspace:
        out.append(SparseMatrix.from_entries(dw, dv, ((inv[u][0], inv[u][1], x) for u, x in vec.items())))
    return out


def _search_invertible(space: list[SparseMatrix], bound: int, seed: int, tries: int) -> SparseMatrix | None:
    for b in space:
        if is_invertible(b):
            return b
    if len(space) < 2:
        return None
    rng = random.Random(seed)
    coeffs = [c for c in range(-bound, bound + 1) if c]
    for _ in range(tries):
        mat = SparseMatrix.zero(space[0].rows, space[0].cols)
        for b in space:
            mat = mat + b.scale(rng.choice(coeffs))
        if is_invertible(mat):
            return mat
    return None


def find_isomorphism(
    v: SuperModule, w: SuperModule, parity: str = "even", bound: int = 3, seed: int = 0, tries: int = 64
) -> IsoResult:
    """Invertible intertwiner V -> W of the requested parity (even | odd | any)."""
    if not (v.algebra is w.algebra or v.algebra.same_constants(w.algebra)):
        raise ValueError("modules are over different algebras")
    if v.kind != w.kind:
        raise ValueError(f"module kinds differ: {v.kind} vs {w.kind}")
    if parity not in ("even", "odd", "any"):
        raise ValueError("parity must be even, odd or any")
    if v.dim != w.dim:
        return IsoResult("none", note="dimensions differ")
    pars = {"even": [0], "odd": [1], "any": [0, 1]}[parity]
    dims = []
    for par in pars:
        space = intertwiner_space(v, w, par)
        dims.append(len(space))
        phi = _search_invertible(space, bound, seed, tries)
        if phi is not None:
            return IsoResult("found", phi, "even" if par == 0 else "odd", len(space))
    if not any(dims):
        return IsoResult("none", solution_dim=0, note="zero intertwiner space")
    return IsoResult(
        "inconclusive", solution_dim=max(dims), note="intertwiners exist, invertibility search exhausted"
    )


def is_module_isomorphism(v: SuperModule, w: SuperModule, phi: SparseMatrix) -> bool:
    if not is_invertible(phi):
        return False
    fams = [(v.m, w.m)] + ([(v.h, w.h)] if v.h is not None else [])
    return all(phi @ x == y @ phi for xs, ys in fams for x, y in zip(xs, ys))


# --------------------------------------------------------------------------
# contact irreducibles over G_n


@dataclass
class ContactIrrepProfile:
    alpha: object
    beta: object
    lowest: dict
    flag: str  # straight | opposite
    ladder_basis: list = dc_field(default_factory=list)  # v_I by mask
    complement_map: SparseMatrix | None = None
    complement_ok: bool = False
    witness: SparseMatrix | None = None
    notes: list = dc_field(default_factory=list)


class IdentificationError(ValueError):
    pass


def _ladder_vectors(v: SuperModule, lowest: dict, n: int) -> list[dict]:
    vecs = []
    for mask in range(1 << n):
        x = dict(lowest)
        for i in mask_indices(mask):
            x = v.h[1 << (i - 1)].apply(x)
        vecs.append(x)
    return vecs


def check_ladder_laws(v: SuperModule, vecs: list[dict], alpha, n: int) -> str | None:
    """First violated action law for the v_I basis, or None."""
    half = alpha / 2
    for mask in range(1 << n):
        I = mask_indices(mask)
        k = len(I)
        for j in range(1, n + 1):
            ej = 1 << (j - 1)
            dot = v.m[ej].apply(vecs[mask])
            br = v.h[ej].apply(vecs[mask])
            if j in I:
                s = I.index(j) + 1
                sign = -1 if (k - s - 1) % 2 else 1
                low = vecs[mask ^ ej]
                if vlin((1, dot), (-sign, low)):
                    return f"law 2 at I={I}, j={j}"
                if vlin((1, br), (-sign * half, low)):
                    return f"law 4 at I={I}, j={j}"
            else:
                if dot:
                    return f"law 1 at I={I}, j={j}"
                inv = sum(1 for i in I if i > j)
                sign = -1 if inv % 2 else 1
                if vlin((1, br), (-sign, vecs[mask | ej])):
                    return f"law 3 at I={I}, j={j}"
    return None


def complement_map(n: int, vecs: list[dict], target_dim: int) -> SparseMatrix:
    """phi(v_I) = (-1)^{k(n-1) + i_1 + ... + i_k} bar(e_{I'}) with I' the complement."""
    full = (1 << n) - 1
    src = SparseMatrix.from_columns(target_dim, vecs)
    cols = []
    for mask in range(1 << n):
        I = mask_indices(mask)
        e = len(I) * (n - 1) + sum(I)
        cols.append({full ^ mask: scalar(-1 if e % 2 else 1)})
    tgt = SparseMatrix.from_columns(1 << n, cols)
    return tgt @ inverse(src)


def identify_contact_irrep(v: SuperModule, seed: int = 0) -> ContactIrrepProfile:
    """Recover (alpha, beta, parity flag) of an irreducible contact G_n-module of dim 2^n."""
    if v.kind != "contact":
        raise IdentificationError("expected a contact module")
    n = grassmann_rank(v.algebra)
    if v.dim != 1 << n:
        raise IdentificationError(f"dimension {v.dim} is not 2^{n}")
    # lowest vectors: common kernel of m(e_i), homogeneous
    lowest = None
    for par in ((n % 2), 1 - n % 2):
        idx = [k for k in range(v.dim) if v.parity[k] == par]
        rows = []
        for i in range(1, n + 1):
            sub = v.m[1 << (i - 1)].submatrix(range(v.dim), idx)
            rr: list[dict] = [dict() for _ in range(v.dim)]
            for r, c, x in sub.entries():
                rr[r][c] = x
            rows.extend(r for r in rr if r)
        null = solve_rows(rows, len(idx)).nullspace
        if null:
            lowest = {idx[c]: x for c, x in null[0].items()}
            flag = "straight" if par == n % 2 else "opposite"
            break
    if lowest is None:
        raise IdentificationError("no lowest vector: not a valid contact module")
    u = v.algebra.unit if v.algebra.unit is not None else find_unit(v.algebra)
    h1 = v.h_of(u)
    alpha = h1[0, 0]
    if h1 != SparseMatrix.identity(v.dim).scale(alpha):
        raise IdentificationError("h(1) is not scalar: module is not irreducible")
    vecs = _ladder_vectors(v, lowest, n)
    law = check_ladder_laws(v, vecs, alpha, n)
    if law is not None:
        raise IdentificationError(f"action law violated: {law}")
    if matrix_rank(SparseMatrix.from_columns(v.dim, vecs)) != v.dim:
        raise IdentificationError("v_I are linearly dependent")
    # G_n(beta) has h(1) = -2 beta Id
    beta = -alpha / 2
    prof = ContactIrrepProfile(alpha=alpha, beta=beta, lowest=lowest, flag=flag, ladder_basis=vecs)
    target = gn_beta(n, beta)
    if flag == "opposite":
        target = opposite(target)
    phi = complement_map(n, vecs, v.dim)
    prof.complement_map = phi
    prof.complement_ok = is_module_isomorphism(v, target, phi) and all(
        target.parity[r] == v.parity[c] for r, c, _ in phi.entries()
    )
    if not prof.complement_ok:
        prof.notes.append("closed-form complement map does not intertwine; using solver witness")
    iso = find_isomorphism(v, target, "even", seed=seed)
    if not iso.found:
        raise IdentificationError(f"no even isomorphism onto G_{n}({beta}) ({iso.status}: {iso.note})")
    prof.witness = prof.complement_map if prof.complement_ok else iso.witness
    return prof


def unkan(v: SuperModule, a: SuperAlgebra) -> SuperModule:
    """Inverse of Kan on modules laid out as V followed by bar(V).

    Reads v.b = (v.b restricted to V) and <v, b> = (-1)^|b| (bar(v).bar(b)
    read back in V), giving a Jordan-bracket module over ``a``.
    """
    if v.kind != "plain-jordan":
        raise ValueError("expected a plain Jordan module over a Kantor double")
    da, half = a.dim, v.dim // 2
    if v.algebra.dim != 2 * da or v.dim != 2 * half:
        raise ValueError("module is not laid out as V + bar(V) over Kan(A)")
    lo, hi = list(range(half)), list(range(half, 2 * half))
    m, h = [], []
    for i in range(da):
        m.append(v.m[i].submatrix(lo, lo))
        hb = v.m[da + i].submatrix(lo, hi)
        h.append(hb.scale(-1) if a.parity[i] else hb)
    labels = v.labels[:half] if v.labels else None
    return SuperModule(algebra=a, parity=v.parity[:half], m=m, h=h, kind="jordan", labels=labels)
