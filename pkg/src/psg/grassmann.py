"""Grassmann algebra G_n on bitmask monomials, and P_m (x) G_n elements.

Monomial ``e_I`` is the integer mask with bit ``i-1`` set for each ``i`` in
``I``; the stored order is always increasing, so every sign is computed
when two monomials are merged.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .exact_linear import axpy, format_scalar, scalar
from .superalgebra import SuperAlgebra

MAX_GENERATORS = 62
MAX_EXPORT = 10


def popcount(x: int) -> int:
    return bin(x).count("1")


def merge_sign(a: int, b: int) -> int:
    """Sign of e_A e_B -> e_{A|B} for disjoint masks (inversions across the cut)."""
    inv = 0
    while b:
        low = b & -b
        inv += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if inv & 1 else 1


def mask_indices(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def mask_label(mask: int) -> str:
    if not mask:
        return "1"
    return "e{" + ",".join(str(i) for i in mask_indices(mask)) + "}"


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_GENERATORS:
        raise ValueError(f"n={n} outside supported range 0..{MAX_GENERATORS}")


@dataclass(frozen=True, eq=False)
class GrassmannElement:
    n: int
    terms: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        _check_n(self.n)
        top = 1 << self.n
        for k in self.terms:
            if not 0 <= k < top:
                raise ValueError(f"mask {k} outside G_{self.n}")
        object.__setattr__(self, "terms", {k: v for k, v in self.terms.items() if v})

    @classmethod
    def one(cls, n: int) -> "GrassmannElement":
        return cls(n, {0: scalar(1)})

    @classmethod
    def monomial(cls, n: int, indices=(), coeff=1) -> "GrassmannElement":
        """e_{i_1} ... e_{i_k} in the given order (sign applied)."""
        out = cls(n, {0: scalar(coeff)})
        for i in indices:
            if not 1 <= i <= n:
                raise ValueError(f"generator e{i} outside G_{n}")
            out = g_mul(out, cls(n, {1 << (i - 1): scalar(1)}))
        return out

    @classmethod
    def gen(cls, n: int, i: int) -> "GrassmannElement":
        return cls.monomial(n, (i,))

    def __add__(self, other):
        _same(self, other)
        t = dict(self.terms)
        axpy(t, 1, other.terms)
        return GrassmannElement(self.n, t)

    def __sub__(self, other):
        _same(self, other)
        t = dict(self.terms)
        axpy(t, -1, other.terms)
        return GrassmannElement(self.n, t)

    def __neg__(self):
        return GrassmannElement(self.n, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return g_mul(self, other)
        c = scalar(other)
        return GrassmannElement(self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self * c

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def parity_part(self, p: int) -> "GrassmannElement":
        return GrassmannElement(self.n, {k: v for k, v in self.terms.items() if popcount(k) % 2 == p})

    def parity(self) -> int | None:
        ps = {popcount(k) % 2 for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def __str__(self):
        return format_terms((mask_label(k), v) for k, v in sorted(self.terms.items()))

    __repr__ = __str__


def _same(f, g) -> None:
    if f.n != g.n:
        raise ValueError(f"mismatched Grassmann algebras G_{f.n} and G_{g.n}")


def format_terms(items) -> str:
    parts = []
    for mono, c in items:
        if mono == "1":
            body = format_scalar(c)
        elif c == 1:
            body = mono
        elif c == -1:
            body = "-" + mono
        else:
            body = f"{format_scalar(c)} {mono}"
        parts.append(body)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def g_mul(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    _same(f, g)
    out: dict = {}
    for a, x in f.terms.items():
        for b, y in g.terms.items():
            if a & b:
                continue
            k = a | b
            v = out.get(k, 0) + merge_sign(a, b) * x * y
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return GrassmannElement(f.n, out)


def partial_mask(i: int, mask: int) -> tuple[int, int]:
    """d/de_i of e_mask as (sign, mask); sign 0 when e_i is absent."""
    bit = 1 << (i - 1)
    if not mask & bit:
        return 0, 0
    below = popcount(mask & (bit - 1))
    return (-1 if below & 1 else 1), mask ^ bit


def g_partial(i: int, f: GrassmannElement) -> GrassmannElement:
    if not 1 <= i <= f.n:
        raise ValueError(f"partial index {i} outside 1..{f.n}")
    out: dict = {}
    for k, v in f.terms.items():
        s, m = partial_mask(i, k)
        if s:
            out[m] = out.get(m, 0) + s * v
    return GrassmannElement(f.n, out)


def g_bracket(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    """{f,g} = (-1)^|f| sum_i df/de_i dg/de_i, extended linearly over parity parts of f."""
    _same(f, g)
    total = GrassmannElement(f.n)
    for p in (0, 1):
        fp = f.parity_part(p)
        if fp.is_zero():
            continue
        acc = GrassmannElement(f.n)
        for i in range(1, f.n + 1):
            acc = acc + g_mul(g_partial(i, fp), g_partial(i, g))
        total = total + (-acc if p else acc)
    return total


def gn_structure_constants(n: int) -> SuperAlgebra:
    """G_n with its Poisson bracket as structure constants (basis index = mask)."""
    _check_n(n)
    if n > MAX_EXPORT:
        raise ValueError(f"dense export of G_{n} (dim 2^{n}) is not supported")
    dim = 1 << n
    parity = [popcount(k) % 2 for k in range(dim)]
    one = scalar(1)
    dot: dict = {}
    for a in range(dim):
        for b in range(dim):
            if not a & b:
                dot[a, b] = {a | b: one * merge_sign(a, b)}
    bracket: dict = {}
    for a in range(dim):
        pa = -1 if parity[a] else 1
        for b in range(dim):
            acc: dict = {}
            for i in range(1, n + 1):
                sa, ma = partial_mask(i, a)
                sb, mb = partial_mask(i, b)
                if sa and sb and not ma & mb:
                    k = ma | mb
                    axpy(acc, one, {k: pa * sa * sb * merge_sign(ma, mb)})
            if acc:
                bracket[a, b] = acc
    return SuperAlgebra(
        parity=parity,
        dot=dot,
        bracket=bracket,
        unit={0: one},
        labels=[mask_label(k) for k in range(dim)],
    )


def tensor_generator_map(p: int, q: int):
    """Matrix of G_p (x) G_q -> G_{p+q}, e_i (x) 1 -> e_i, 1 (x) e_j -> e_{p+j}.

    Column index follows the tensor layout I * 2^q + J; e_I e_{J+p} needs no
    reordering, so every coefficient is +1.
    """
    from .exact_linear import SparseMatrix

    dq = 1 << q
    entries = [(i | (j << p), i * dq + j, 1) for i in range(1 << p) for j in range(dq)]
    return SparseMatrix.from_entries(1 << (p + q), (1 << p) * dq, entries)


def to_vector(f: GrassmannElement) -> dict:
    return dict(f.terms)


def from_vector(n: int, v: dict) -> GrassmannElement:
    return GrassmannElement(n, dict(v))


# --------------------------------------------------------------------------
# P_m (x) G_n


@dataclass(frozen=True, eq=False)
class PolyGrassmannElement:
    """Element of F[x_1..x_m, y_1..y_m] (x) G_n.

    Term keys are ``(exponents, mask)`` with ``exponents`` of length 2m
    (x's first, then y's).
    """

    m: int
    n: int
    terms: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        _check_n(self.n)
        clean = {}
        for (exps, mask), v in self.terms.items():
            if len(exps) != 2 * self.m or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for m={self.m}")
            if mask >> self.n:
                raise ValueError(f"mask {mask} outside G_{self.n}")
            if v:
                clean[(tuple(exps), mask)] = v
        object.__setattr__(self, "terms", clean)

    @classmethod
    def const(cls, m: int, n: int, c=1) -> "PolyGrassmannElement":
        return cls(m, n, {((0,) * (2 * m), 0): scalar(c)})

    def _shape(self, other) -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError(f"shape mismatch ({self.m},{self.n}) vs ({other.m},{other.n})")

    def __add__(self, other):
        self._shape(other)
        t = dict(self.terms)
        axpy(t, 1, other.terms)
        return PolyGrassmannElement(self.m, self.n, t)

    def __sub__(self, other):
        self._shape(other)
        t = dict(self.terms)
        axpy(t, -1, other.terms)
        return PolyGrassmannElement(self.m, self.n, t)

    def __neg__(self):
        return PolyGrassmannElement(self.m, self.n, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PolyGrassmannElement):
            return pg_mul(self, other)
        c = scalar(other)
        return PolyGrassmannElement(self.m, self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self * c

    def __eq__(self, other):
        if not isinstance(other, PolyGrassmannElement):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.n, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def parity_part(self, p: int) -> "PolyGrassmannElement":
        return PolyGrassmannElement(
            self.m, self.n, {k: v for k, v in self.terms.items() if popcount(k[1]) % 2 == p}
        )

    def __str__(self):
        items = []
        for (exps, mask), v in sorted(self.terms.items(), key=lambda kv: (sum(kv[0][0]), kv[0][1], kv[0][0])):
            items.append((_mono_label(self.m, exps, mask), v))
        return format_terms(items)

    __repr__ = __str__


def _mono_label(m: int, exps, mask: int) -> str:
    parts = []
    for idx, e in enumerate(exps):
        if e:
            name = f"x{idx + 1}" if idx < m else f"y{idx - m + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
    if mask:
        parts.append(mask_label(mask))
    return " ".join(parts) if parts else "1"


def pg_mul(f: PolyGrassmannElement, g: PolyGrassmannElement) -> PolyGrassmannElement:
    f._shape(g)
    out: dict = {}
    for (ea, a), x in f.terms.items():
        for (eb, b), y in g.terms.items():
            if a & b:
                continue
            key = (tuple(p + q for p, q in zip(ea, eb)), a | b)
            v = out.get(key, 0) + merge_sign(a, b) * x * y
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return PolyGrassmannElement(f.m, f.n, out)


def pg_partial_var(idx: int, f: PolyGrassmannElement) -> PolyGrassmannElement:
    """Ordinary partial in the even variable at exponent slot ``idx``."""
    out: dict = {}
    for (exps, mask), v in f.terms.items():
        e = exps[idx]
        if e:
            new = list(exps)
            new[idx] = e - 1
            key = (tuple(new), mask)
            out[key] = out.get(key, 0) + e * v
    return PolyGrassmannElement(f.m, f.n, out)


def pg_partial_odd(i: int, f: PolyGrassmannElement) -> PolyGrassmannElement:
    if not 1 <= i <= f.n:
        raise ValueError(f"partial index {i} outside 1..{f.n}")
    out: dict = {}
    for (exps, mask), v in f.terms.items():
        s, mm = partial_mask(i, mask)
        if s:
            key = (exps, mm)
            out[key] = out.get(key, 0) + s * v
    return PolyGrassmannElement(f.m, f.n, out)


def pg_bracket(f: PolyGrassmannElement, g: PolyGrassmannElement) -> PolyGrassmannElement:
    """Symplectic bracket in (x, y) plus the Grassmann bracket in e."""
    f._shape(g)
    m = f.m
    zero = PolyGrassmannElement(m, f.n)
    total = zero
    for i in range(m):
        total = total + pg_mul(pg_partial_var(i, f), pg_partial_var(m + i, g))
        total = total - pg_mul(pg_partial_var(m + i, f), pg_partial_var(i, g))
    for p in (0, 1):
        fp = f.parity_part(p)
        if fp.is_zero():
            continue
        acc = zero
        for i in range(1, f.n + 1):
            acc = acc + pg_mul(pg_partial_odd(i, fp), pg_partial_odd(i, g))
        total = total + (-acc if p else acc)
    return total


# --------------------------------------------------------------------------
# text syntax:  "3/2 * x1^2 y1 e1 e3 - e{2,3} + 5"

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^(?:(x|y)(\d+)(?:\^(\d+))?|e(\d+)|e\{([\d,\s]*)\}|1)$")
_COEF = re.compile(r"^\d+(?:/\d+)?$")


def parse_element(text: str, m: int = 0, n: int = 0) -> PolyGrassmannElement:
    """Parse the CLI element syntax into a P_m (x) G_n element.

    Odd factors are multiplied in the order written, so ``e2 e1`` is ``-e{1,2}``.
    """
    s = text.replace("−", "-").strip()
    if not s:
        raise ValueError("empty element")
    if s[0] not in "+-":
        s = "+" + s
    pieces = _TERM_SPLIT.split(s)[1:]
    if len(pieces) % 2:
        raise ValueError(f"cannot parse element {text!r}")
    total = PolyGrassmannElement(m, n)
    for sign, body in zip(pieces[::2], pieces[1::2]):
        total = total + _parse_term(body, m, n) * (-1 if sign == "-" else 1)
    return total


def _parse_term(body: str, m: int, n: int) -> PolyGrassmannElement:
    tokens = [t for t in re.split(r"[\s*]+", body.strip()) if t]
    if not tokens:
        raise ValueError("empty term")
    coeff = scalar(1)
    if _COEF.match(tokens[0]):
        coeff = scalar(tokens.pop(0))
    exps = [0] * (2 * m)
    term = PolyGrassmannElement(m, n, {((0,) * (2 * m), 0): coeff})
    odd = []
    for tok in tokens:
        mt = _FACTOR.match(tok)
        if not mt:
            raise ValueError(f"unknown factor {tok!r}")
        var, idx, power, eidx, eset = mt.groups()
        if var:
            i = int(idx)
            if not 1 <= i <= m:
                raise ValueError(f"{var}{i} outside m={m}")
            exps[(i - 1) + (m if var == "y" else 0)] += int(power) if power else 1
        elif eidx:
            odd.append(int(eidx))
        elif eset is not None:
            odd.extend(int(x) for x in eset.split(",") if x.strip())
    for i in odd:
        if not 1 <= i <= n:
            raise ValueError(f"e{i} outside n={n}")
        term = pg_mul(term, PolyGrassmannElement(m, n, {((0,) * (2 * m), 1 << (i - 1)): scalar(1)}))
    shift = PolyGrassmannElement(m, n, {(tuple(exps), 0): scalar(1)})
    return pg_mul(shift, term)


def as_grassmann(f: PolyGrassmannElement) -> GrassmannElement:
    if f.m:
        raise ValueError("element has even variables")
    return GrassmannElement(f.n, {mask: v for (_, mask), v in f.terms.items()})
