"""The D operator, Jordan <-> contact bracket conversions and the Kantor double."""

from __future__ import annotations

from .exact_linear import SparseMatrix, scalar, vlin
from .superalgebra import IdentityReport, SuperAlgebra, check_identity, find_unit

BRACKET_KINDS = ("poisson", "contact", "jordan")


class PreconditionError(ValueError):
    def __init__(self, message: str, report: IdentityReport | None = None):
        super().__init__(message)
        self.report = report


def _unit(a: SuperAlgebra) -> dict:
    u = a.unit if a.unit is not None else find_unit(a)
    if u is None:
        raise ValueError("algebra has no unit")
    return u


def d_operator(a: SuperAlgebra, kind: str, x: dict) -> dict:
    """D(x) = {x, 1} for Jordan (and Poisson) brackets, {1, x} for contact brackets.

    The two conventions are kept verbatim; they differ by a sign.
    """
    if kind not in BRACKET_KINDS:
        raise ValueError(f"unknown bracket kind {kind!r}")
    if a.bracket is None:
        raise ValueError("algebra has no bracket")
    u = _unit(a)
    return a.br(u, x) if kind == "contact" else a.br(x, u)


def _require(a: SuperAlgebra, names) -> None:
    for name in names:
        r = check_identity(a, name)
        if not r.passed:
            raise PreconditionError(f"precondition failed: {name} at tuple {r.counterexample}", r)


def _rebuild_bracket(a: SuperAlgebra, entry) -> SuperAlgebra:
    d = a.dim
    table = {}
    for i in range(d):
        for j in range(d):
            v = entry(i, j)
            if v:
                table[i, j] = v
    return a.replace(bracket=table)


def jordan_from_contact(a: SuperAlgebra, check: bool = True) -> SuperAlgebra:
    """<a,b> = {a,b} - 1/2 (a{1,b} - {1,a}b)."""
    if a.bracket is None:
        raise ValueError("algebra has no bracket")
    u = _unit(a)
    if check:
        _require(a, ("super-anticommutativity", "super-jacobi", "contact-leibniz"))
    half = scalar(1) / 2
    d1 = [a.br(u, {i: 1}) for i in range(a.dim)]  # {1, b_i}

    def entry(i, j):
        return vlin(
            (1, a.bracket.get((i, j), {})),
            (-half, a.mul({i: 1}, d1[j])),
            (half, a.mul(d1[i], {j: 1})),
        )

    return _rebuild_bracket(a, entry)


def contact_from_jordan(a: SuperAlgebra, check: bool = True) -> SuperAlgebra:
    """{a,b} = <a,b> + (a<1,b> - <1,a>b)."""
    if a.bracket is None:
        raise ValueError("algebra has no bracket")
    u = _unit(a)
    if check:
        _require(a, ("super-anticommutativity", "km-leibniz", "km-jacobi", "km-odd-cube"))
    d1 = [a.br(u, {i: 1}) for i in range(a.dim)]  # <1, b_i>

    def entry(i, j):
        return vlin(
            (1, a.bracket.get((i, j), {})),
            (1, a.mul({i: 1}, d1[j])),
            (-1, a.mul(d1[i], {j: 1})),
        )

    return _rebuild_bracket(a, entry)


def bar_labels(a: SuperAlgebra) -> list[str]:
    return [a.label(i) for i in range(a.dim)] + [a.label(i) + "~" for i in range(a.dim)]


def kantor_double(a: SuperAlgebra, check: bool = False) -> SuperAlgebra:
    """Kan(A) = A + bar(A), bar(b_i) at index dim + i, with parity flipped.

    a.b = ab, a.bar(b) = bar(ab), bar(a).b = (-1)^|b| bar(ab),
    bar(a).bar(b) = (-1)^|b| {a,b}.
    """
    if a.bracket is None:
        raise ValueError("Kantor double needs a bracket")
    if check:
        _require(a, ("supercommutativity", "associativity"))
    d = a.dim
    p = a.parity

    def bar(v: dict) -> dict:
        return {k + d: c for k, c in v.items()}

    dot: dict = {}
    for (i, j), v in a.dot.items():
        dot[i, j] = dict(v)
        dot[i, d + j] = bar(v)
        dot[d + i, j] = bar(v) if not p[j] else {k: -c for k, c in bar(v).items()}
    for (i, j), v in a.bracket.items():
        dot[d + i, d + j] = dict(v) if not p[j] else {k: -c for k, c in v.items()}
    parity = list(p) + [1 - x for x in p]
    return SuperAlgebra(
        parity=parity,
        dot=dot,
        bracket=None,
        unit=None if a.unit is None else dict(a.unit),
        labels=bar_labels(a) if a.labels else None,
    )


def kantor_module(a: SuperAlgebra, v):
    """Kan(V) over Kan(A), read off from Kan(E(A, V)).

    The module basis is V followed by bar(V); the acting algebra is
    ``kantor_double(a)`` with its basis A followed by bar(A).
    """
    from .modules import SuperModule, check_module, split_null_extension

    if v.algebra is not a and not v.algebra.same_constants(a):
        raise ValueError("module is over a different algebra")
    if v.kind == "plain-jordan":
        raise ValueError("Kan needs a module with a bracket action")
    rep = check_module(v)
    if not rep.passed:
        raise PreconditionError(f"input module fails its {v.kind} check: {rep.name} at {rep.counterexample}", rep)
    da, dv = a.dim, v.dim
    e = split_null_extension(a, v)
    k = kantor_double(e)
    de = e.dim
    # positions inside Kan(E)
    mod_pos = list(range(da, da + dv)) + list(range(de + da, de + da + dv))
    alg_pos = list(range(da)) + list(range(de, de + da))
    back = {pos: i for i, pos in enumerate(mod_pos)}
    mats = []
    for y in alg_pos:
        cols = []
        for x in mod_pos:
            out = k.dot.get((x, y), {})
            col = {}
            for idx, c in out.items():
                if idx not in back:
                    raise AssertionError("V + bar(V) is not an ideal of Kan(E)")
                col[back[idx]] = c
            cols.append(col)
        mats.append(SparseMatrix.from_columns(2 * dv, cols))
    parity = [k.parity[x] for x in mod_pos]
    labels = None
    if v.labels:
        labels = list(v.labels) + [lab + "~" for lab in v.labels]
    return SuperModule(
        algebra=kantor_double(a),
        parity=parity,
        m=mats,
        h=None,
        kind="plain-jordan",
        labels=labels,
    )

