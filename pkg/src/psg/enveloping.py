"""Clifford superalgebras and the matrix-algebra realization of U(G_n)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exact_linear import (
    Echelon,
    SparseMatrix,
    axpy,
    scalar,
    solve_rows,
    span_closure,
    subspace_closure,
)
from .grassmann import mask_indices, popcount
from .superalgebra import SuperAlgebra, check_identity, find_unit


@dataclass(frozen=True)
class CliffordSpec:
    d: int
    form: tuple  # d x d, f(v_i, v_j)

    def __post_init__(self):
        form = tuple(tuple(scalar(x) for x in row) for row in self.form)
        if len(form) != self.d or any(len(row) != self.d for row in form):
            raise ValueError("form must be a d x d matrix")
        for i in range(self.d):
            for j in range(i):
                if form[i][j] != form[j][i]:
                    raise ValueError(f"form is not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "form", form)


def _normalizer(spec: CliffordSpec):
    f = spec.form
    half = scalar(1) / 2

    @lru_cache(maxsize=None)
    def normal(word: tuple) -> tuple:
        # word: generator indices (0-based); result: ((mask, coeff), ...)
        for k in range(len(word) - 1):
            i, j = word[k], word[k + 1]
            if i < j:
                continue
            rest = word[:k] + word[k + 2:]
            out: dict = {}
            if i == j:
                c = half * f[i][i]
                if c:
                    for m, x in normal(rest):
                        axpy(out, c, {m: x})
            else:
                for m, x in normal(word[:k] + (j, i) + word[k + 2:]):
                    axpy(out, -1, {m: x})
                if f[i][j]:
                    for m, x in normal(rest):
                        axpy(out, f[i][j], {m: x})
            return tuple(sorted(out.items()))
        mask = 0
        for i in word:
            mask |= 1 << i
        return ((mask, scalar(1)),)

    return normal


def clifford(spec: CliffordSpec, labels_prefix: str = "v") -> SuperAlgebra:
    """Cl(W, f): uw + wu = f(u, w) 1 on odd generators, basis = increasing products (masks)."""
    d = spec.d
    normal = _normalizer(spec)
    dim = 1 << d
    words = [tuple(i for i in range(d) if mask >> i & 1) for mask in range(dim)]
    dot = {}
    for a in range(dim):
        for b in range(dim):
            out = dict(normal(words[a] + words[b]))
            if out:
                dot[a, b] = out
    labels = ["1" if m == 0 else "".join(f"{labels_prefix}{i + 1}" for i in words[m]) for m in range(dim)]
    alg = SuperAlgebra(parity=[popcount(m) % 2 for m in range(dim)], dot=dot, unit={0: scalar(1)}, labels=labels)
    bad = clifford_relation_defect(alg, spec)
    if bad is not None:
        raise AssertionError(f"generator relation fails at {bad}")
    return alg


def clifford_relation_defect(alg: SuperAlgebra, spec: CliffordSpec):
    for i in range(spec.d):
        for j in range(spec.d):
            u, w = {1 << i: 1}, {1 << j: 1}
            lhs = alg.mul(u, w)
            axpy(lhs, 1, alg.mul(w, u))
            lhs = {k: x for k, x in lhs.items() if x}
            rhs = {0: spec.form[i][j]} if spec.form[i][j] else {}
            if lhs != rhs:
                return (i + 1, j + 1)
    return None


def poisson_gn_form(n: int) -> CliffordSpec:
    d = 2 * n
    form = [[0] * d for _ in range(d)]
    for i in range(n):
        form[i][n + i] = form[n + i][i] = -1
    return CliffordSpec(d, tuple(tuple(r) for r in form))


@dataclass
class PoissonEnvelope:
    algebra: SuperAlgebra
    n: int
    M: dict  # i (1-based) -> basis index of M(e_i)
    H: dict


def u_poisson_gn(n: int) -> PoissonEnvelope:
    """U(G_n) as Cl(W), dim W = 2n: v_i = M(e_i), v_{n+i} = H(e_i)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    alg = clifford(poisson_gn_form(n))
    M = {i: 1 << (i - 1) for i in range(1, n + 1)}
    H = {i: 1 << (n + i - 1) for i in range(1, n + 1)}
    return PoissonEnvelope(alg, n, M, H)


def generator_relations(env: PoissonEnvelope) -> dict:
    """The three anticommutator families: MM + MM = 0, MH + HM = -delta, HH + HH = 0."""
    a = env.algebra
    n = env.n

    def anti(x, y):
        out = a.mul({x: 1}, {y: 1})
        axpy(out, 1, a.mul({y: 1}, {x: 1}))
        return {k: v for k, v in out.items() if v}

    res = {"MM": True, "MH": True, "HH": True}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            res["MM"] &= anti(env.M[i], env.M[j]) == {}
            res["HH"] &= anti(env.H[i], env.H[j]) == {}
            res["MH"] &= anti(env.M[i], env.H[j]) == ({0: scalar(-1)} if i == j else {})
    return res


@dataclass
class MatrixAlgebraReport:
    verdict: str  # true | false | inconclusive
    k: int | None
    center_dim: int
    simple: bool
    representation: list | None = None  # k x k matrices of left multiplication by basis elements
    graded_split: tuple | None = None  # (even, odd) dims of the minimal left ideal
    notes: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict == "true"


def center(a: SuperAlgebra) -> list[dict]:
    """Ungraded center: x with x z = z x for every basis z."""
    d = a.dim
    rows = []
    for z in range(d):
        # sum_x c_x (b_x b_z - b_z b_x)
        per_out: dict = {}
        for x in range(d):
            diff = dict(a.dot.get((x, z), {}))
            axpy(diff, -1, a.dot.get((z, x), {}))
            for k, v in diff.items():
                if v:
                    per_out.setdefault(k, {})[x] = v
        rows.extend(per_out.values())
    return solve_rows(rows, d).nullspace


def _isqrt(d: int) -> int | None:
    k = int(round(d ** 0.5))
    return k if k * k == d else None


def verify_matrix_algebra(a: SuperAlgebra, representation: bool = True) -> MatrixAlgebraReport:
    """Decide whether an associative unital algebra is a full matrix algebra M_k."""
    if not check_identity(a, "associativity").passed:
        raise ValueError("algebra is not associative")
    if find_unit(a) is None:
        raise ValueError("algebra has no unit")
    d = a.dim
    zdim = len(center(a))
    k = _isqrt(d)
    left = [a.left_operator(i) for i in range(d)]
    right = [a.right_operator(i) for i in range(d)]
    two_sided = left + right
    simple = all(len(subspace_closure([{i: scalar(1)}], two_sided)) == d for i in range(d))
    rep = MatrixAlgebraReport("false", k, zdim, simple)
    if k is None or zdim != 1 or not simple:
        if k is None:
            rep.notes.append("dimension is not a perfect square")
        return rep
    rep.verdict = "true"
    if representation:
        best = None
        for i in range(d):
            ideal = subspace_closure([{i: scalar(1)}], left)
            if best is None or len(ideal) < len(best):
                best = ideal
            if len(best) == k:
                break
        if len(best) != k:
            rep.notes.append("no basis element generates a minimal left ideal; representation skipped")
            return rep
        mats = _restrict_ops(left, best)
        if len(span_closure(mats)) != k * k:
            rep.verdict = "inconclusive"
            rep.notes.append("left-ideal representation is not dense")
            return rep
        rep.representation = mats
        even = sum(1 for b in best if all(a.parity[j] == 0 for j in b))
        odd = sum(1 for b in best if all(a.parity[j] == 1 for j in b))
        if even + odd == k:
            rep.graded_split = (even, odd)
        else:
            rep.notes.append("minimal left ideal basis is not homogeneous; graded type unverified")
    return rep


def _restrict_ops(ops: list[SparseMatrix], basis: list[dict]) -> list[SparseMatrix]:
    ech = Echelon()
    for b in basis:
        ech.add(b)
    piv = sorted(ech.rows)
    # coordinates in the RREF basis read off pivot entries
    rref = [ech.rows[p] for p in piv]
    out = []
    for op in ops:
        cols = []
        for b in rref:
            img = op.apply(b)
            cols.append({r: img[p] for r, p in enumerate(piv) if img.get(p)})
        out.append(SparseMatrix.from_columns(len(rref), cols))
    return out


@dataclass
class ActionHomomorphism:
    images: list  # per Clifford basis index, an operator on V
    image_dim: int
    commutant_dim: int
    multiplicative: bool


def commutant(mats: list[SparseMatrix], d: int) -> list[SparseMatrix]:
    """All d x d matrices commuting with every matrix in ``mats``."""
    rows = []
    for g in mats:
        local: dict = {}
        for k, c, x in g.entries():  # (X g)[r, c] += X[r, k] g[k, c]
            for r in range(d):
                local.setdefault((r, c), {})
                u = r * d + k
                local[r, c][u] = local[r, c].get(u, 0) + x
        for r, k, x in g.entries():  # (g X)[r, c] -= g[r, k] X[k, c]
            for c in range(d):
                local.setdefault((r, c), {})
                u = k * d + c
                local[r, c][u] = local[r, c].get(u, 0) - x
        for row in local.values():
            row = {u: x for u, x in row.items() if x}
            if row:
                rows.append(row)
    return [SparseMatrix.unflatten(d, d, v) for v in solve_rows(rows, d * d).nullspace]


def action_homomorphism(n: int, v) -> ActionHomomorphism:
    """phi: U(G_n) -> End V from (m, h), extended along ordered generator products.

    In the column convention the module acts on the right, so a basis blade
    v_{i1}...v_{ik} goes to h/m(i_k) @ ... @ h/m(i_1) and phi(xy) = phi(y) @ phi(x).
    """
    from .modules import check_module

    if v.kind != "poisson":
        raise ValueError("expected a Poisson module over G_n")
    rep = check_module(v)
    if not rep.passed:
        raise ValueError(f"module check fails: {rep.name} at {rep.counterexample}")
    env = u_poisson_gn(n)
    a = env.algebra
    d = v.dim
    gens = [v.m[1 << i] for i in range(n)] + [v.h[1 << i] for i in range(n)]
    images = []
    for mask in range(a.dim):
        mat = SparseMatrix.identity(d)
        for i in mask_indices(mask):
            mat = gens[i - 1] @ mat
        images.append(mat)

    def phi(vec):
        out = SparseMatrix.zero(d)
        for k, c in vec.items():
            out = out + images[k].scale(c)
        return out

    mult = all(
        phi(a.dot.get((x, y), {})) == images[y] @ images[x] for x in range(a.dim) for y in range(a.dim)
    )
    if not mult:
        raise ValueError("action map is not multiplicative: inconsistent module")
    ech = Echelon()
    for mat in images:
        ech.add(mat.flatten())
    return ActionHomomorphism(images, ech.rank, len(commutant(gens, d)), mult)
