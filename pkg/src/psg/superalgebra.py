"""Dot-bracket superalgebras given by structure constants.

A table maps ``(i, j)`` to the sparse vector ``b_i * b_j``. Identities are
checked on every tuple of basis elements (all basis elements are
homogeneous), which is complete for multilinear identities and yields the
lexicographically first counterexample.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .exact_linear import (
    Echelon,
    SparseMatrix,
    axpy,
    format_scalar,
    parse_scalar,
    scalar,
    solve_rows,
    span_closure,
    subspace_closure,
    vlin,
)


def _clean_table(table: dict | None, dim: int, name: str) -> dict | None:
    if table is None:
        return None
    out = {}
    for (i, j), vec in table.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"{name} entry ({i},{j}) outside dimension {dim}")
        clean = {}
        for k, c in vec.items():
            if not 0 <= k < dim:
                raise ValueError(f"{name} output index {k} outside dimension {dim}")
            if c:
                clean[k] = c
        if clean:
            out[i, j] = clean
    return out


@dataclass(frozen=True, eq=False)
class SuperAlgebra:
    parity: tuple
    dot: dict
    bracket: dict | None = None
    unit: dict | None = None
    labels: tuple | None = None

    def __post_init__(self):
        parity = tuple(int(p) for p in self.parity)
        if any(p not in (0, 1) for p in parity):
            raise ValueError("parity entries must be 0 or 1")
        d = len(parity)
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "dot", _clean_table(self.dot, d, "dot"))
        object.__setattr__(self, "bracket", _clean_table(self.bracket, d, "bracket"))
        if self.unit is not None:
            unit = {k: c for k, c in self.unit.items() if c}
            if any(not 0 <= k < d for k in unit):
                raise ValueError("unit vector index out of range")
            object.__setattr__(self, "unit", unit)
        if self.labels is not None:
            if len(self.labels) != d:
                raise ValueError("basis_labels length must equal dim")
            object.__setattr__(self, "labels", tuple(self.labels))
        for name, table in (("dot", self.dot), ("bracket", self.bracket)):
            for (i, j), vec in (table or {}).items():
                want = parity[i] ^ parity[j]
                for k in vec:
                    if parity[k] != want:
                        raise ValueError(
                            f"{name} is not parity-homogeneous: b{i}*b{j} has a b{k} component"
                        )
        if self.unit is not None:
            for i in range(d):
                e = {i: scalar(1)}
                if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                    raise ValueError(f"declared unit does not act as identity on b{i}")

    @property
    def dim(self) -> int:
        return len(self.parity)

    @property
    def has_bracket(self) -> bool:
        return self.bracket is not None

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"

    def _apply(self, table: dict, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                v = table.get((i, j))
                if v:
                    axpy(out, a * b, v)
        return out

    def mul(self, x: dict, y: dict) -> dict:
        self._check_vec(x)
        self._check_vec(y)
        return self._apply(self.dot, x, y)

    def br(self, x: dict, y: dict) -> dict:
        if self.bracket is None:
            raise ValueError("algebra has no bracket table")
        self._check_vec(x)
        self._check_vec(y)
        return self._apply(self.bracket, x, y)

    def _check_vec(self, x: dict) -> None:
        if x and (max(x) >= self.dim or min(x) < 0):
            raise ValueError(f"vector index outside dimension {self.dim}")

    def basis(self, i: int) -> dict:
        return {i: scalar(1)}

    def replace(self, **kw) -> "SuperAlgebra":
        args = dict(parity=self.parity, dot=self.dot, bracket=self.bracket, unit=self.unit, labels=self.labels)
        args.update(kw)
        return SuperAlgebra(**args)

    def left_operator(self, i: int, bracket: bool = False) -> SparseMatrix:
        """Matrix of x -> b_i * x (or {b_i, x})."""
        table = self.bracket if bracket else self.dot
        return SparseMatrix.from_columns(self.dim, [table.get((i, j), {}) for j in range(self.dim)])

    def right_operator(self, i: int, bracket: bool = False) -> SparseMatrix:
        """Matrix of x -> x * b_i (or {x, b_i})."""
        table = self.bracket if bracket else self.dot
        return SparseMatrix.from_columns(self.dim, [table.get((j, i), {}) for j in range(self.dim)])

    def same_constants(self, other: "SuperAlgebra") -> bool:
        return (
            self.parity == other.parity
            and self.dot == other.dot
            and (self.bracket or {}) == (other.bracket or {})
            and (self.bracket is None) == (other.bracket is None)
        )

    # -- json ------------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "parity": list(self.parity),
            "dot": _table_json(self.dot),
        }
        if self.bracket is not None:
            out["bracket"] = _table_json(self.bracket)
        if self.unit is not None:
            out["unit"] = [format_scalar(self.unit.get(k, scalar(0))) for k in range(self.dim)]
        if self.labels is not None:
            out["basis_labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SuperAlgebra":
        if not isinstance(data, dict):
            raise ValueError("algebra JSON must be an object")
        try:
            dim = int(data["dim"])
            parity = [int(p) for p in data["parity"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"algebra JSON needs integer 'dim' and 'parity': {exc}") from exc
        if len(parity) != dim:
            raise ValueError("parity vector length must equal dim")
        dot = _table_from_json(data.get("dot", []), "dot")
        bracket = _table_from_json(data["bracket"], "bracket") if "bracket" in data else None
        unit = None
        if data.get("unit") is not None:
            vals = data["unit"]
            if len(vals) != dim:
                raise ValueError("unit vector length must equal dim")
            unit = {k: parse_scalar(v) for k, v in enumerate(vals)}
        return cls(parity=parity, dot=dot, bracket=bracket, unit=unit, labels=data.get("basis_labels"))


def _table_json(table: dict) -> list:
    return [[i, j, k, format_scalar(c)] for (i, j), vec in sorted(table.items()) for k, c in sorted(vec.items())]


def _table_from_json(rows, name: str) -> dict:
    out: dict = {}
    try:
        for i, j, k, c in rows:
            vec = out.setdefault((int(i), int(j)), {})
            vec[int(k)] = vec.get(int(k), 0) + parse_scalar(c)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed {name} entry: {exc}") from exc
    return out


def find_unit(a: SuperAlgebra) -> dict | None:
    """Solve u*b_i = b_i = b_i*u for all i; None if the algebra is unitless."""
    d = a.dim
    rows, rhs = [], []
    for i in range(d):
        for side in (0, 1):
            eqs = [dict() for _ in range(d)]  # component r of u*b_i (or b_i*u)
            for k in range(d):
                vec = a.dot.get((k, i) if side == 0 else (i, k), {})
                for r, c in vec.items():
                    eqs[r][k] = c
            for r in range(d):
                rows.append(eqs[r])
                rhs.append(1 if r == i else 0)
    sol = solve_rows(rows, d, rhs)
    return sol.particular


def with_unit(a: SuperAlgebra) -> SuperAlgebra:
    if a.unit is not None:
        return a
    u = find_unit(a)
    return a if u is None else a.replace(unit=u)


# --------------------------------------------------------------------------
# identity checking


@dataclass
class IdentityReport:
    name: str
    tuples_checked: int = 0
    counterexample: tuple | None = None
    defect: dict | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": "pass" if self.passed else "counterexample", "tuples": self.tuples_checked}
        if not self.passed:
            out["tuple"] = list(self.counterexample)
            out["defect"] = {str(k): format_scalar(v) for k, v in sorted(self.defect.items())}
        if self.note:
            out["note"] = self.note
        return out


class UnknownIdentity(ValueError):
    pass


def _sgn(p: tuple, i: int, j: int) -> int:
    return -1 if p[i] and p[j] else 1


def _need_unit(a: SuperAlgebra, name: str) -> dict:
    u = a.unit if a.unit is not None else find_unit(a)
    if u is None:
        raise ValueError(f"identity {name!r} needs a unit, algebra is unitless")
    return u


def _need_bracket(a: SuperAlgebra, name: str) -> None:
    if a.bracket is None:
        raise ValueError(f"identity {name!r} needs a bracket table")


def _ops(a: SuperAlgebra):
    dot, bra = a.dot, a.bracket

    def mul(x, y):
        return a._apply(dot, x, y)

    def br(x, y):
        return a._apply(bra, x, y)

    return mul, br


def _e(i: int) -> dict:
    return {i: 1}


def _supercommutativity(a):
    mul, _ = _ops(a)
    p = a.parity
    return 2, lambda x, y: vlin((1, mul(_e(x), _e(y))), (-_sgn(p, x, y), mul(_e(y), _e(x))))


def _associativity(a):
    mul, _ = _ops(a)
    return 3, lambda x, y, z: vlin(
        (1, mul(mul(_e(x), _e(y)), _e(z))), (-1, mul(_e(x), mul(_e(y), _e(z))))
    )


def _anticommutativity(a):
    _need_bracket(a, "super-anticommutativity")
    _, br = _ops(a)
    p = a.parity
    return 2, lambda x, y: vlin((1, br(_e(x), _e(y))), (_sgn(p, x, y), br(_e(y), _e(x))))


def _jacobi(a):
    _need_bracket(a, "super-jacobi")
    _, br = _ops(a)
    p = a.parity

    def f(x, y, z):
        X, Y, Z = _e(x), _e(y), _e(z)
        return vlin((1, br(X, br(Y, Z))), (-1, br(br(X, Y), Z)), (-_sgn(p, x, y), br(Y, br(X, Z))))

    return 3, f


def _leibniz_family(a, name: str, d_of: Callable | None, d_sign: int):
    _need_bracket(a, name)
    mul, br = _ops(a)
    p = a.parity

    def f(x, y, z):
        X, Y, Z = _e(x), _e(y), _e(z)
        terms = [(1, br(X, mul(Y, Z))), (-1, mul(br(X, Y), Z)), (-_sgn(p, x, y), mul(Y, br(X, Z)))]
        if d_of is not None:
            terms.append((-d_sign, mul(mul(d_of(X), Y), Z)))
        return vlin(*terms)

    return 3, f


def _leibniz(a):
    return _leibniz_family(a, "leibniz", None, 0)


def _contact_leibniz(a):
    u = _need_unit(a, "contact-leibniz")
    _, br = _ops(a)
    return _leibniz_family(a, "contact-leibniz", lambda X: br(u, X), +1)


def _km_leibniz(a):
    u = _need_unit(a, "km-leibniz")
    _, br = _ops(a)
    return _leibniz_family(a, "km-leibniz", lambda X: br(X, u), -1)


def _contact_derivation(a):
    _need_bracket(a, "contact-derivation")
    u = _need_unit(a, "contact-derivation")
    mul, br = _ops(a)

    def D(x):
        return br(u, x)

    def f(x, y):
        X, Y = _e(x), _e(y)
        prod = vlin((1, D(mul(X, Y))), (-1, mul(D(X), Y)), (-1, mul(X, D(Y))))
        brk = vlin((1, D(br(X, Y))), (-1, br(D(X), Y)), (-1, br(X, D(Y))))
        # report both defects in one vector: product part then bracket part (offset by dim)
        out = dict(prod)
        for k, v in brk.items():
            out[k + a.dim] = v
        return out

    return 2, f


def _km_jacobi(a):
    _need_bracket(a, "km-jacobi")
    u = _need_unit(a, "km-jacobi")
    mul, br = _ops(a)
    p = a.parity

    def f(x, y, z):
        X, Y, Z = _e(x), _e(y), _e(z)
        s_ab_ac = _sgn(p, x, y) * _sgn(p, x, z)
        s_ac_bc = _sgn(p, x, z) * _sgn(p, y, z)
        xy, yz, zx = br(X, Y), br(Y, Z), br(Z, X)
        return vlin(
            (1, br(xy, Z)),
            (s_ab_ac, br(yz, X)),
            (s_ac_bc, br(zx, Y)),
            (1, mul(xy, br(Z, u))),
            (s_ab_ac, mul(yz, br(X, u))),
            (s_ac_bc, mul(zx, br(Y, u))),
        )

    return 3, f


JORDAN_TERMS = None  # filled lazily: list of (sign, kind, order)


def _jordan_terms():
    # sum over permutations s of the slots (0, 1, 3) [x, y, w] with z = slot 2:
    #   ((a_s1 a_s2) z) a_s3  -  (a_s1 a_s2)(z a_s3)
    global JORDAN_TERMS
    if JORDAN_TERMS is None:
        terms = []
        for s1, s2, s3 in itertools.permutations((0, 1, 3)):
            terms.append((1, "left", (s1, s2, 2, s3)))
            terms.append((-1, "split", (s1, s2, 2, s3)))
        JORDAN_TERMS = terms
    return JORDAN_TERMS


def koszul_sign(order: Sequence[int], odd: Sequence[bool]) -> int:
    """Sign of moving variables from slot order 0..k-1 into ``order``."""
    s = 1
    for i in range(len(order)):
        if not odd[order[i]]:
            continue
        for j in range(i + 1, len(order)):
            if odd[order[j]] and order[j] < order[i]:
                s = -s
    return s


def _jordan(a):
    mul, _ = _ops(a)
    p = a.parity
    terms = _jordan_terms()

    def f(x, y, z, w):
        slots = (x, y, z, w)
        odd = [bool(p[i]) for i in slots]
        pair = {}

        def pm(i, j):
            key = (i, j)
            if key not in pair:
                pair[key] = mul(_e(i), _e(j))
            return pair[key]

        out: dict = {}
        for coef, kind, order in terms:
            sign = coef * koszul_sign(order, odd)
            b1, b2, bz, b3 = (slots[k] for k in order)
            if kind == "left":
                val = mul(mul(pm(b1, b2), _e(bz)), _e(b3))
            else:
                val = mul(pm(b1, b2), pm(bz, b3))
            axpy(out, sign, val)
        return out

    return 4, f


IDENTITIES = {
    "supercommutativity": _supercommutativity,
    "associativity": _associativity,
    "super-anticommutativity": _anticommutativity,
    "super-jacobi": _jacobi,
    "leibniz": _leibniz,
    "contact-leibniz": _contact_leibniz,
    "contact-derivation": _contact_derivation,
    "km-leibniz": _km_leibniz,
    "km-jacobi": _km_jacobi,
    "km-odd-cube": None,  # handled separately (not multilinear)
    "jordan": _jordan,
}

SUITES = {
    "poisson": ["supercommutativity", "associativity", "super-anticommutativity", "super-jacobi", "leibniz"],
    "contact": [
        "supercommutativity",
        "associativity",
        "super-anticommutativity",
        "super-jacobi",
        "contact-leibniz",
        "contact-derivation",
    ],
    "jordan-bracket": [
        "supercommutativity",
        "associativity",
        "super-anticommutativity",
        "km-leibniz",
        "km-jacobi",
        "km-odd-cube",
    ],
    "jordan": ["supercommutativity", "jordan"],
    "commutative": ["supercommutativity", "associativity"],
}

# the symmetrised Jordan defect is super-symmetric in slots (0, 1, 3)
_SYMMETRIC_SLOTS = {"jordan": (0, 1, 3)}


def _tuples(dim: int, arity: int, symmetric: tuple | None):
    if symmetric is None:
        yield from itertools.product(range(dim), repeat=arity)
        return
    for t in itertools.product(range(dim), repeat=arity):
        vals = [t[k] for k in symmetric]
        if vals == sorted(vals):
            yield t


def check_identity(
    a: SuperAlgebra,
    which: str,
    only: Callable[[tuple], bool] | None = None,
) -> IdentityReport:
    """Check one named identity on every basis tuple (optionally filtered)."""
    if which not in IDENTITIES:
        raise UnknownIdentity(f"unknown identity {which!r}; known: {', '.join(IDENTITIES)}")
    if which == "km-odd-cube":
        return _check_odd_cube(a, only)
    arity, f = IDENTITIES[which](a)
    report = IdentityReport(which)
    for t in _tuples(a.dim, arity, _SYMMETRIC_SLOTS.get(which)):
        if only is not None and not only(t):
            continue
        report.tuples_checked += 1
        d = f(*t)
        if d:
            report.counterexample = t
            report.defect = d
            return report
    return report


def _check_odd_cube(a: SuperAlgebra, only) -> IdentityReport:
    """{{x,x},x} = -{x,x} D(x) for every odd x, D(x) = {x,1}.

    The cubic map vanishes iff every coefficient of its monomial expansion
    does; the coefficient of x_i x_j x_k is the sum over the distinct
    orderings of the multiset {i, j, k}.
    """
    _need_bracket(a, "km-odd-cube")
    u = _need_unit(a, "km-odd-cube")
    mul, br = _ops(a)
    odd = [i for i in range(a.dim) if a.parity[i]]
    report = IdentityReport("km-odd-cube")
    for t in itertools.combinations_with_replacement(odd, 3):
        if only is not None and not only(t):
            continue
        report.tuples_checked += 1
        out: dict = {}
        for x, y, z in sorted(set(itertools.permutations(t))):
            xy = br(_e(x), _e(y))
            axpy(out, 1, br(xy, _e(z)))
            axpy(out, 1, mul(xy, br(_e(z), u)))
        if out:
            report.counterexample = t
            report.defect = out
            return report
    return report


def check_suite(a: SuperAlgebra, suite: str, only=None) -> list[IdentityReport]:
    if suite not in SUITES:
        raise UnknownIdentity(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    return [check_identity(a, name, only) for name in SUITES[suite]]


def suite_passes(a: SuperAlgebra, suite: str, only=None) -> bool:
    return all(r.passed for r in check_suite(a, suite, only))


# --------------------------------------------------------------------------
# Grassmann envelope oracle for the Jordan identity


def grassmann_envelope_jordan_oracle(a: SuperAlgebra, m: int = 4) -> IdentityReport:
    """Check the ordinary linearised Jordan identity in the Grassmann envelope.

    The envelope is A_0 (x) G_m,even + A_1 (x) G_m,odd with the tensor
    product sign. Odd basis elements in slot k are tagged with the
    auxiliary generator e_k, so each 4-linear evaluation is nonzero exactly
    when the graded identity fails on that tuple.
    """
    if m < 4:
        raise ValueError("envelope oracle needs m >= 4 auxiliary generators")
    from .grassmann import merge_sign

    p = a.parity

    def emul(x: dict, y: dict) -> dict:
        out: dict = {}
        for (i, g), c in x.items():
            for (j, h), d in y.items():
                if g & h:
                    continue
                vec = a.dot.get((i, j))
                if not vec:
                    continue
                s = merge_sign(g, h)
                if (bin(g).count("1") & 1) and p[j]:
                    s = -s
                for k, v in vec.items():
                    key = (k, g | h)
                    val = out.get(key, 0) + s * c * d * v
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        return out

    report = IdentityReport("jordan-envelope")
    for t in _tuples(a.dim, 4, (0, 1, 3)):
        report.tuples_checked += 1
        el = [{(b, (1 << k) if p[b] else 0): 1} for k, b in enumerate(t)]
        x, y, z, w = el
        out: dict = {}
        for s1, s2, s3 in itertools.permutations((x, y, w)):
            axpy(out, 1, emul(emul(emul(s1, s2), z), s3))
            axpy(out, -1, emul(emul(s1, s2), emul(z, s3)))
        if out:
            report.counterexample = t
            report.defect = {k: c for (k, _), c in out.items()}
            return report
    return report


# --------------------------------------------------------------------------
# tensor products


def tensor_product(a: SuperAlgebra, b: SuperAlgebra) -> SuperAlgebra:
    """Graded tensor product; basis pair (i, j) has index i * dim(b) + j."""
    da, db = a.dim, b.dim
    pa, pb = a.parity, b.parity
    idx = lambda i, j: i * db + j  # noqa: E731
    parity = [pa[i] ^ pb[j] for i in range(da) for j in range(db)]

    def tens(u: dict, v: dict, c) -> dict:
        return {idx(i, j): c * x * y for i, x in u.items() for j, y in v.items()}

    dot: dict = {}
    bracket: dict | None = {} if (a.bracket is not None and b.bracket is not None) else None
    for (i, k), va in a.dot.items():
        for (j, l), vb in b.dot.items():
            s = -1 if pb[j] and pa[k] else 1
            dot[idx(i, j), idx(k, l)] = tens(va, vb, s)
    if bracket is not None:
        for i in range(da):
            for k in range(da):
                da_ik = a.dot.get((i, k), {})
                ba_ik = a.bracket.get((i, k), {})
                if not da_ik and not ba_ik:
                    continue
                for j in range(db):
                    for l in range(db):
                        s = -1 if pb[j] and pa[k] else 1
                        acc: dict = {}
                        if da_ik:
                            vb = b.bracket.get((j, l))
                            if vb:
                                axpy(acc, 1, tens(da_ik, vb, s))
                        if ba_ik:
                            vb = b.dot.get((j, l))
                            if vb:
                                axpy(acc, 1, tens(ba_ik, vb, s))
                        if acc:
                            bracket[idx(i, j), idx(k, l)] = acc
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = tens(a.unit, b.unit, 1)
    labels = None
    if a.labels or b.labels:
        labels = [f"{a.label(i)}*{b.label(j)}" for i in range(da) for j in range(db)]
    return SuperAlgebra(parity=parity, dot=dot, bracket=bracket, unit=unit, labels=labels)


def reindex(a: SuperAlgebra, perm: Sequence[int]) -> SuperAlgebra:
    """Relabel basis: old index i becomes perm[i]."""
    d = a.dim
    inv_parity = [0] * d
    for i, j in enumerate(perm):
        inv_parity[j] = a.parity[i]

    def move(table):
        if table is None:
            return None
        return {(perm[i], perm[j]): {perm[k]: c for k, c in v.items()} for (i, j), v in table.items()}

    unit = None if a.unit is None else {perm[k]: c for k, c in a.unit.items()}
    return SuperAlgebra(parity=inv_parity, dot=move(a.dot), bracket=move(a.bracket), unit=unit)


def transport(a: SuperAlgebra, phi: SparseMatrix) -> SuperAlgebra:
    """Structure constants of ``a`` in the basis given by the columns of phi^-1.

    Equivalently: ``phi`` is an isomorphism from ``a`` onto the result.
    ``phi`` must be invertible and parity preserving.
    """
    from .exact_linear import inverse

    inv = inverse(phi)
    d = a.dim
    old = [inv.column(r) for r in range(d)]
    new_parity = []
    for r in range(d):
        ps = {a.parity[k] for k in old[r]}
        if len(ps) > 1:
            raise ValueError("basis change is not parity preserving")
        new_parity.append(ps.pop() if ps else 0)

    def move(table):
        if table is None:
            return None
        out = {}
        for i in range(d):
            for j in range(d):
                prod = a._apply(table, old[i], old[j])
                if prod:
                    out[i, j] = phi.apply(prod)
        return out

    unit = None if a.unit is None else phi.apply(a.unit)
    return SuperAlgebra(parity=new_parity, dot=move(a.dot), bracket=move(a.bracket), unit=unit)


# --------------------------------------------------------------------------
# homomorphism checks


def check_homomorphism(a: SuperAlgebra, b: SuperAlgebra, phi: SparseMatrix, brackets: bool = True) -> IdentityReport:
    """Is ``phi`` (dim b x dim a) an even map respecting dot (and bracket)?"""
    report = IdentityReport("homomorphism")
    if phi.shape != (b.dim, a.dim):
        raise ValueError(f"map shape {phi.shape} does not match {b.dim}x{a.dim}")
    for c in range(a.dim):
        for r in phi.column(c):
            if b.parity[r] != a.parity[c]:
                report.counterexample = ("parity", c)
                report.defect = dict(phi.column(c))
                return report
    img = [phi.column(i) for i in range(a.dim)]
    tables = [("dot", a.dot, b.dot)]
    if brackets and a.bracket is not None:
        if b.bracket is None:
            raise ValueError("target algebra lacks a bracket")
        tables.append(("bracket", a.bracket, b.bracket))
    for name, ta, tb in tables:
        for i in range(a.dim):
            for j in range(a.dim):
                report.tuples_checked += 1
                lhs = phi.apply(ta.get((i, j), {}))
                rhs = b._apply(tb, img[i], img[j])
                d = vlin((1, lhs), (-1, rhs))
                if d:
                    report.counterexample = (name, i, j)
                    report.defect = d
                    return report
    return report


def is_isomorphism(a: SuperAlgebra, b: SuperAlgebra, phi: SparseMatrix) -> bool:
    from .exact_linear import is_invertible

    return a.dim == b.dim and is_invertible(phi) and check_homomorphism(a, b, phi).passed


# --------------------------------------------------------------------------
# simplicity


def multiplication_operators(a: SuperAlgebra) -> list[SparseMatrix]:
    ops = [a.left_operator(i) for i in range(a.dim)]
    if a.bracket is not None:
        ops += [a.left_operator(i, bracket=True) for i in range(a.dim)]
    return [op for op in ops if not op.is_zero()]


def operator_closure_dim(a: SuperAlgebra) -> int:
    ops = multiplication_operators(a)
    if not ops:
        return 1
    return len(span_closure(ops))


def is_simple(a: SuperAlgebra) -> bool:
    """Density test: left dot and bracket operators span End(A)."""
    if a.dim == 0:
        raise ValueError("zero-dimensional algebra")
    return operator_closure_dim(a) == a.dim**2


def find_ideal(a: SuperAlgebra) -> list[dict] | None:
    """A proper nonzero ideal generated by a basis vector or a sum of two, if any."""
    if a.dim == 0:
        raise ValueError("zero-dimensional algebra")
    ops = multiplication_operators(a)
    seeds: list[dict] = [{i: scalar(1)} for i in range(a.dim)]
    seeds += [{i: scalar(1), j: scalar(1)} for i, j in itertools.combinations(range(a.dim), 2)]
    for s in seeds:
        sub = subspace_closure([s], ops)
        if 0 < len(sub) < a.dim:
            return sub
    return None


def is_ideal(a: SuperAlgebra, basis: Iterable[dict]) -> bool:
    e = Echelon()
    basis = list(basis)
    for v in basis:
        e.add(v)
    for op in multiplication_operators(a):
        for v in basis:
            if op.apply(v) not in e:
                return False
    return True
