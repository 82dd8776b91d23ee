"""Exact scalars, sparse vectors/matrices and incremental row reduction.

Vectors are plain ``dict[int, scalar]`` with no stored zeros. Matrices are
stored column-wise so that ``M.apply(v)`` is a sum of scaled columns.
Everything is exact: the rationals (``gmpy2.mpq``) by default, or a prime
field of odd characteristic selected per session.
"""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from gmpy2 import is_prime, mpq


class DimensionError(ValueError):
    pass


# --------------------------------------------------------------------------
# fields


class RationalField:
    name = "rational"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, str):
            return _parse_fraction(x)
        return mpq(x)

    def __repr__(self):
        return "RationalField()"


def _parse_fraction(s: str):
    s = s.strip().replace("−", "-")
    if not s:
        raise ValueError("empty scalar")
    try:
        return mpq(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed scalar {s!r}") from exc


class Mod:
    """Residue modulo an odd prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError("mixing residues of different characteristic")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, type(mpq(0))):
            return int(other.numerator) * pow(int(other.denominator), -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero residue")
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __str__(self):
        # symmetric representative reads better in reports
        return str(self.v if self.v <= self.p // 2 else self.v - self.p)

    __repr__ = __str__


class PrimeField:
    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"need an odd prime characteristic, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"

    def __call__(self, x):
        if isinstance(x, Mod):
            return x
        if isinstance(x, str):
            x = _parse_fraction(x)
        if isinstance(x, int):
            return Mod(x, self.p)
        q = mpq(x)
        den = int(q.denominator)
        if den % self.p == 0:
            raise ZeroDivisionError(f"{x} has no residue mod {self.p}")
        return Mod(int(q.numerator) * pow(den, -1, self.p), self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


_FIELD = RationalField()


def field():
    """The session field."""
    return _FIELD


def set_field(f) -> None:
    global _FIELD
    _FIELD = parse_field(f) if isinstance(f, str) else f


def parse_field(spec: str):
    spec = spec.strip()
    if spec in ("", "rational", "q", "Q"):
        return RationalField()
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError as exc:
            raise ValueError(f"bad field spec {spec!r}") from exc
        return PrimeField(p)
    raise ValueError(f"bad field spec {spec!r} (want rational or fp:<p>)")


def field_from_env():
    return parse_field(os.environ.get("PSG_FIELD", "rational"))


@contextlib.contextmanager
def using_field(f):
    old = _FIELD
    set_field(f)
    try:
        yield field()
    finally:
        set_field(old)


def scalar(x):
    return _FIELD(x)


def format_scalar(x) -> str:
    return str(x)


def parse_scalar(s) -> object:
    if isinstance(s, int):
        return scalar(s)
    if not isinstance(s, str):
        raise ValueError(f"scalars must be strings 'p/q', got {s!r}")
    return scalar(s)


# --------------------------------------------------------------------------
# sparse vectors


def axpy(acc: dict, c, v: dict) -> None:
    """acc += c * v, in place, dropping zeros."""
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def vlin(*pairs) -> dict:
    """Linear combination of ``(coefficient, vector)`` pairs."""
    out: dict = {}
    for c, v in pairs:
        if c:
            axpy(out, c, v)
    return out


def vscale(c, v: dict) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vneg(v: dict) -> dict:
    return {k: -x for k, x in v.items()}


def unit_vector(i: int) -> dict:
    return {i: scalar(1)}


def dense(v: dict, n: int) -> list:
    z = scalar(0)
    return [v.get(i, z) for i in range(n)]


def sparse(values: Sequence) -> dict:
    return {i: scalar(x) for i, x in enumerate(values) if x}


# --------------------------------------------------------------------------
# matrices


class SparseMatrix:
    """Immutable sparse matrix, stored as ``{col: {row: value}}``."""

    __slots__ = ("rows", "cols", "_c")

    def __init__(self, rows: int, cols: int, columns: dict | None = None):
        self.rows = rows
        self.cols = cols
        self._c = {c: col for c, col in (columns or {}).items() if col}

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable) -> "SparseMatrix":
        columns: dict = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionError(f"entry ({r},{c}) outside {rows}x{cols}")
            v = scalar(v)
            col = columns.setdefault(c, {})
            w = col.get(r, 0) + v
            if w:
                col[r] = w
            else:
                col.pop(r, None)
        return cls(rows, cols, columns)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict]) -> "SparseMatrix":
        return cls(rows, len(columns), {c: dict(col) for c, col in enumerate(columns)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((r, c, x) for r, row in enumerate(data) for c, x in enumerate(row) if x)
        )

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        one = scalar(1)
        return cls(n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "SparseMatrix":
        return cls(rows, rows if cols is None else cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self._c.values())

    def column(self, c: int) -> dict:
        return self._c.get(c, {})

    def __getitem__(self, rc):
        r, c = rc
        return self._c.get(c, {}).get(r, scalar(0))

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for c in sorted(self._c):
            col = self._c[c]
            for r in sorted(col):
                yield r, c, col[r]

    def row_entries(self) -> list[tuple[int, int, object]]:
        return sorted(self.entries())

    def apply(self, v: dict) -> dict:
        if v and max(v) >= self.cols:
            raise DimensionError("vector longer than matrix width")
        out: dict = {}
        for c, x in v.items():
            col = self._c.get(c)
            if col:
                axpy(out, x, col)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return SparseMatrix(self.rows, other.cols, {c: self.apply(col) for c, col in other._c.items()})

    def _combine(self, other: "SparseMatrix", c) -> "SparseMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        cols = {k: dict(col) for k, col in self._c.items()}
        for k, col in other._c.items():
            acc = cols.setdefault(k, {})
            axpy(acc, c, col)
        return SparseMatrix(self.rows, self.cols, cols)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SparseMatrix":
        if not c:
            return SparseMatrix(self.rows, self.cols)
        return SparseMatrix(self.rows, self.cols, {k: vscale(c, col) for k, col in self._c.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._c == other._c

    def __hash__(self):
        return hash((self.shape, tuple(self.entries())))

    def is_zero(self) -> bool:
        return not self._c

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_entries(self.cols, self.rows, ((c, r, v) for r, c, v in self.entries()))

    def to_dense(self) -> list[list]:
        z = scalar(0)
        out = [[z] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def flatten(self) -> dict:
        """Row-major vectorisation (index ``r * cols + c``)."""
        n = self.cols
        return {r * n + c: v for c, col in self._c.items() for r, v in col.items()}

    @classmethod
    def unflatten(cls, rows: int, cols: int, v: dict) -> "SparseMatrix":
        return cls.from_entries(rows, cols, ((k // cols, k % cols, x) for k, x in v.items()))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "SparseMatrix":
        rpos = {r: i for i, r in enumerate(row_idx)}
        cols = {}
        for j, c in enumerate(col_idx):
            col = {rpos[r]: v for r, v in self._c.get(c, {}).items() if r in rpos}
            if col:
                cols[j] = col
        return SparseMatrix(len(row_idx), len(col_idx), cols)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_json(self) -> list:
        return [[r, c, format_scalar(v)] for r, c, v in self.row_entries()]

    @classmethod
    def from_json(cls, rows: int, cols: int, triples) -> "SparseMatrix":
        try:
            return cls.from_entries(rows, cols, ((int(r), int(c), parse_scalar(v)) for r, c, v in triples))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"malformed matrix triples: {exc}") from exc


def block_diag(*ms: SparseMatrix) -> SparseMatrix:
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out: dict = {}
    r0 = c0 = 0
    for m in ms:
        for c, col in m._c.items():
            out[c0 + c] = {r0 + r: v for r, v in col.items()}
        r0 += m.rows
        c0 += m.cols
    return SparseMatrix(rows, cols, out)


# --------------------------------------------------------------------------
# row reduction


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Pivots are the smallest index of each stored row; every stored row has
    a 1 at its pivot and zeros at every other pivot.
    """

    def __init__(self):
        self.rows: dict[int, dict] = {}
        self.vectors: list[dict] = []  # accepted inputs, in order

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        out = dict(v)
        for p in [k for k in v if k in self.rows]:
            c = out.get(p)
            if c:
                axpy(out, -c, self.rows[p])
        return out

    def add(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        self.vectors.append(v)
        return True

    def __contains__(self, v: dict) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def rank(vectors: Iterable[dict]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def matrix_rank(m: SparseMatrix) -> int:
    return rank(m.column(c) for c in range(m.cols))


@dataclass(frozen=True)
class LinearSolution:
    particular: dict | None
    nullspace: list[dict]


def _row_dicts(a: SparseMatrix) -> list[dict]:
    rows: list[dict] = [dict() for _ in range(a.rows)]
    for r, c, v in a.entries():
        rows[r][c] = v
    return rows


def solve_rows(rows: Iterable[dict], ncols: int, rhs: Sequence | None = None) -> LinearSolution:
    """Solve ``sum_c row[c] x[c] = rhs[i]`` for every row.

    Free variables are set to zero in the particular solution; the
    nullspace has one vector per free column, in increasing order.
    """
    e = Echelon()
    aug = ncols
    for i, row in enumerate(rows):
        if row and max(row) >= ncols:
            raise DimensionError("row index beyond column count")
        if rhs is not None and rhs[i]:
            row = dict(row)
            row[aug] = scalar(rhs[i])
        e.add(row)
    if aug in e.rows:
        particular = None
    else:
        particular = {p: row[aug] for p, row in e.rows.items() if row.get(aug)}
    free = [c for c in range(ncols) if c not in e.rows]
    one = scalar(1)
    null = []
    for f in free:
        v = {f: one}
        for p, row in e.rows.items():
            x = row.get(f)
            if x:
                v[p] = -x
        null.append(v)
    return LinearSolution(particular, null)


def solve_linear(a: SparseMatrix, b: Sequence | dict | None = None) -> LinearSolution:
    """Particular solution (or None) and nullspace basis of ``a x = b``."""
    if isinstance(b, dict):
        if b and max(b) >= a.rows:
            raise DimensionError("right-hand side longer than row count")
        b = dense(b, a.rows)
    if b is not None and len(b) != a.rows:
        raise DimensionError(f"rhs has length {len(b)}, matrix has {a.rows} rows")
    return solve_rows(_row_dicts(a), a.cols, b)


def nullspace(a: SparseMatrix) -> list[dict]:
    return solve_linear(a).nullspace


def inverse(m: SparseMatrix) -> SparseMatrix:
    if m.rows != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    n = m.rows
    # Gauss-Jordan on [M | I]; columns n.. carry the inverse
    e = Echelon()
    one = scalar(1)
    for r, row in enumerate(_row_dicts(m)):
        row = dict(row)
        row[n + r] = one
        e.add(row)
    if any(p >= n for p in e.rows) or e.rank < n:
        raise ZeroDivisionError("matrix is singular")
    return SparseMatrix.from_entries(n, n, ((p, c - n, v) for p, row in e.rows.items() for c, v in row.items() if c >= n))


def is_invertible(m: SparseMatrix) -> bool:
    return m.rows == m.cols and matrix_rank(m) == m.rows


def coordinates(basis: Sequence[dict], v: dict) -> dict | None:
    """Coefficients of ``v`` in the (independent) ``basis``, or None."""
    dim = max([max(b) for b in basis if b] + [max(v) if v else -1]) + 1 if basis else 0
    if not basis:
        return {} if not v else None
    a = SparseMatrix.from_columns(dim, list(basis))
    sol = solve_linear(a, v)
    return sol.particular


# --------------------------------------------------------------------------
# closures


def span_closure(seed: Sequence[SparseMatrix], limit: int | None = None) -> list[SparseMatrix]:
    """Basis of the unital matrix algebra generated by ``seed``.

    Starts from the identity and closes under right multiplication by every
    seed matrix. ``limit`` stops early once that dimension is reached.
    """
    if not seed:
        raise DimensionError("span_closure needs at least one matrix to fix the size")
    d = seed[0].rows
    for s in seed:
        if s.shape != (d, d):
            raise DimensionError("span_closure seeds must be square of equal size")
    e = Echelon()
    ident = SparseMatrix.identity(d)
    e.add(ident.flatten())
    basis = [ident]
    i = 0
    while i < len(basis):
        x = basis[i]
        i += 1
        for s in seed:
            y = x @ s
            if e.add(y.flatten()):
                basis.append(y)
                if limit is not None and len(basis) >= limit:
                    return basis
    return basis


def subspace_closure(seeds: Iterable[dict], operators: Sequence[SparseMatrix]) -> list[dict]:
    """Smallest subspace containing ``seeds`` and invariant under ``operators``."""
    e = Echelon()
    queue = []
    for v in seeds:
        if e.add(v):
            queue.append(v)
    i = 0
    while i < len(queue):
        u = queue[i]
        i += 1
        for op in operators:
            w = op.apply(u)
            if w and e.add(w):
                queue.append(w)
    return e.basis()
