"""Splitting a Poisson superalgebra containing G_n as A (x) G_n, with A the bracket-centralizer."""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linear import (
    Echelon,
    SparseMatrix,
    coordinates,
    format_scalar,
    parse_scalar,
    scalar,
    solve_rows,
)
from .grassmann import gn_structure_constants, mask_indices
from .superalgebra import IdentityReport, SuperAlgebra, check_homomorphism, find_unit, tensor_product


@dataclass
class Embedding:
    n: int
    images: list  # vector in P per generator e_i
    unit: dict

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "images": [{str(k): format_scalar(v) for k, v in sorted(x.items())} for x in self.images],
            "unit": {str(k): format_scalar(v) for k, v in sorted(self.unit.items())},
        }

    @classmethod
    def from_json(cls, data: dict, dim: int | None = None) -> "Embedding":
        try:
            n = int(data["n"])
            images = [_vec(x) for x in data["images"]]
            unit = _vec(data["unit"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed embedding JSON: {exc}") from exc
        if len(images) != n:
            raise ValueError("embedding needs one image per generator")
        if dim is not None:
            for v in images + [unit]:
                if any(k < 0 or k >= dim for k in v):
                    raise ValueError("embedding vector index out of range")
        return cls(n, images, unit)


def _vec(x) -> dict:
    if isinstance(x, dict):
        out = {int(k): parse_scalar(v) for k, v in x.items()}
    elif isinstance(x, list):
        out = {i: parse_scalar(v) for i, v in enumerate(x)}
    else:
        raise ValueError("vector must be a dense list or an index map")
    return {k: v for k, v in out.items() if v}


def right_embedding(q: SuperAlgebra, n: int) -> Embedding:
    """1 (x) e_i inside tensor_product(q, G_n)."""
    u = find_unit(q)
    if u is None:
        raise ValueError("left factor has no unit")
    db = 1 << n
    images = [{i * db + (1 << (k - 1)): c for i, c in u.items()} for k in range(1, n + 1)]
    return Embedding(n, images, {i * db: c for i, c in u.items()})


def _parity_of(p: SuperAlgebra, v: dict):
    ps = {p.parity[k] for k in v}
    return ps.pop() if len(ps) == 1 else None


def check_embedding(p: SuperAlgebra, emb: Embedding) -> IdentityReport:
    """Odd images, e_i e_j + e_j e_i = 0, {e_i, e_j} = -delta_ij 1, shared unit."""
    rep = IdentityReport("embedding")
    if p.bracket is None:
        raise ValueError("algebra has no bracket")
    u = find_unit(p)
    rep.tuples_checked += 1
    if u is None or {k: v for k, v in u.items() if v} != emb.unit:
        rep.name, rep.counterexample, rep.defect = "unit", (), dict(emb.unit)
        return rep
    for i, x in enumerate(emb.images, 1):
        rep.tuples_checked += 1
        if _parity_of(p, x) != 1:
            rep.name, rep.counterexample, rep.defect = "odd-image", (i,), dict(x)
            return rep
    for i, x in enumerate(emb.images, 1):
        for j, y in enumerate(emb.images, 1):
            rep.tuples_checked += 2
            s = p.mul(x, y)
            for k, c in p.mul(y, x).items():
                s[k] = s.get(k, 0) + c
            s = {k: c for k, c in s.items() if c}
            if s:
                rep.name = "square-zero" if i == j else "anticommutation"
                rep.counterexample, rep.defect = (i, j), s
                return rep
            b = p.br(x, y)
            want = {k: -c for k, c in emb.unit.items()} if i == j else {}
            diff = dict(b)
            for k, c in want.items():
                diff[k] = diff.get(k, 0) - c
            diff = {k: c for k, c in diff.items() if c}
            if diff:
                rep.name, rep.counterexample, rep.defect = "bracket", (i, j), diff
                return rep
    return rep


def grassmann_images(p: SuperAlgebra, emb: Embedding) -> list[dict]:
    """e_I images for every mask I, products taken in increasing index order."""
    out = []
    for mask in range(1 << emb.n):
        v = dict(emb.unit)
        for i in mask_indices(mask):
            v = p.mul(v, emb.images[i - 1])
        out.append(v)
    return out


def centralizer(p: SuperAlgebra, emb: Embedding) -> list[dict]:
    """Homogeneous basis of {a : {a, e_i} = 0 for all i}, verified to be a bracket-central subalgebra."""
    d = p.dim
    basis = []
    for par in (0, 1):
        idx = [k for k in range(d) if p.parity[k] == par]
        rows: dict = {}
        for c, k in enumerate(idx):
            for i, x in enumerate(emb.images):
                for out, val in p.br({k: 1}, x).items():
                    if val:
                        row = rows.setdefault((i, out), {})
                        row[c] = row.get(c, 0) + val
        for vec in solve_rows([r for r in rows.values() if any(r.values())], len(idx)).nullspace:
            basis.append({idx[c]: x for c, x in vec.items()})
    for x in basis:
        for y in basis:
            for prod in (p.mul(x, y), p.br(x, y)):
                if coordinates(basis, prod) is None:
                    raise ValueError("centralizer is not closed: input is not a valid Poisson superalgebra")
        for g in grassmann_images(p, emb):
            if any(p.br(x, g).values()):
                raise ValueError("centralizer element fails to commute with an e_I image")
    return basis


def subalgebra_on(p: SuperAlgebra, basis: list[dict]) -> SuperAlgebra:
    """Structure constants of a closed subspace in the given basis."""
    d = len(basis)
    dot, bra = {}, {}
    for i in range(d):
        for j in range(d):
            dot[i, j] = coordinates(basis, p.mul(basis[i], basis[j]))
            if p.bracket is not None:
                bra[i, j] = coordinates(basis, p.br(basis[i], basis[j]))
    parity = [_parity_of(p, b) for b in basis]
    u = find_unit(p)
    unit = coordinates(basis, u) if u is not None else None
    return SuperAlgebra(
        parity=parity,
        dot={k: v for k, v in dot.items() if v},
        bracket={k: v for k, v in bra.items() if v} if p.bracket is not None else None,
        unit=unit,
    )


@dataclass
class Coordinatization:
    a: SuperAlgebra
    a_basis: list  # vectors in P
    witness: SparseMatrix  # A (x) G_n -> P, column (i * 2^n + I) = a_i e_I
    report: IdentityReport


class CoordinatizationError(ValueError):
    def __init__(self, message: str, trace: list | None = None):
        super().__init__(message)
        self.trace = trace or []


def elimination_trace(p: SuperAlgebra, a_basis: list[dict], emb: Embedding, witness: SparseMatrix) -> list[str]:
    """Readable account of a linear dependency among the products a_i e_I."""
    cols = [witness.column(c) for c in range(witness.cols)]
    rows: list[dict] = [dict() for _ in range(witness.rows)]
    for c, col in enumerate(cols):
        for r, x in col.items():
            rows[r][c] = x
    null = solve_rows([r for r in rows if r], witness.cols).nullspace
    size = 1 << emb.n
    lines = []
    for vec in null[:3]:
        terms = [f"{format_scalar(x)} * a{c // size} e{mask_indices(c % size)}" for c, x in sorted(vec.items())]
        lines.append(" + ".join(terms) + " = 0")
    return lines


def coordinatization(p: SuperAlgebra, emb: Embedding) -> Coordinatization:
    rep = check_embedding(p, emb)
    if not rep.passed:
        raise ValueError(f"embedding fails: {rep.name} at {rep.counterexample}")
    a_basis = centralizer(p, emb)
    a = subalgebra_on(p, a_basis)
    eis = grassmann_images(p, emb)
    size = 1 << emb.n
    cols = []
    for ai in a_basis:
        for mask in range(size):
            cols.append(p.mul(ai, eis[mask]))
    witness = SparseMatrix.from_columns(p.dim, cols)
    ech = Echelon()
    for c in cols:
        ech.add(c)
    if ech.rank != p.dim or len(cols) != p.dim:
        raise CoordinatizationError(
            f"a_i e_I span has rank {ech.rank} with {len(cols)} products, dim P = {p.dim}",
            elimination_trace(p, a_basis, emb, witness),
        )
    tens = tensor_product(a, gn_structure_constants(emb.n))
    hom = check_homomorphism(tens, p, witness)
    if not hom.passed:
        raise CoordinatizationError(f"structure constants disagree at {hom.counterexample}")
    return Coordinatization(a, a_basis, witness, hom)
