"""Exact scalars and dense linear algebra over exact fields.

Everything downstream (barcodes, cohomology, distances) runs on the types
in this module: arbitrary-precision rationals, prime fields, and dense
matrices with exact row reduction.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

Rational = Fraction


class FieldError(ValueError):
    """Raised on mixed field tags or invalid field data."""


class _Infinity:
    """The value +inf.  Compares above every rational and absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("cohint-inf")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _Infinity):
            raise ArithmeticError("inf - inf is undefined")
        return self

    def __neg__(self):
        raise ArithmeticError("-inf is not representable")


INF = _Infinity()

ExtRational = Union[Fraction, _Infinity]


def normalize(p: int, q: int) -> Fraction:
    """Canonical reduced fraction p/q with positive denominator."""
    if q == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    return str(x)


def format_ext(x: ExtRational) -> str:
    return "inf" if x is INF or isinstance(x, _Infinity) else str(x)


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def parse_ext(s: str) -> ExtRational:
    s = s.strip()
    if s in ("inf", "+inf", "Inf", "oo"):
        return INF
    return Fraction(s)


def is_inf(x: ExtRational) -> bool:
    return isinstance(x, _Infinity)


def ext_half(x: ExtRational) -> ExtRational:
    return x if is_inf(x) else x / 2


class RationalField:
    """The field of rationals; elements are Fraction."""

    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The prime field F_p; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in GF({self.p})")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        raise FieldError(f"cannot coerce {x!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def field_from_tag(tag: str) -> Field:
    """Parse a field tag: "q" or "fp:<p>"."""
    tag = tag.strip().lower()
    if tag in ("q", "qq", "rational"):
        return QQ
    if tag.startswith("fp:"):
        return PrimeField(int(tag[3:]))
    raise FieldError(f"unknown field tag {tag!r}")


def _same_field(a: "Matrix", b: "Matrix"):
    if a.field != b.field:
        raise FieldError(f"mixed field tags: {a.field} vs {b.field}")


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix over one exact field."""

    field: Field
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry shape does not match rows x cols")

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence]) -> "Matrix":
        data = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return Matrix(field, nrows, ncols, data)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return Matrix(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return Matrix(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @staticmethod
    def from_columns(field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        data = tuple(tuple(field.coerce(c[i]) for c in cols) for i in range(nrows))
        return Matrix(field, nrows, len(cols), data)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i) -> tuple:
        return self.entries[i]

    def col(self, j) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.col(j) for j in range(self.cols)))

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for row in self.entries for x in row)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      tuple(tuple(f.neg(x) for x in row) for row in self.entries))

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      tuple(tuple(f.add(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        zero = f.zero
        ot = other.transpose().entries
        out = []
        for r in self.entries:
            out_row = []
            for c in ot:
                acc = zero
                for a, b in zip(r, c):
                    if not f.is_zero(a) and not f.is_zero(b):
                        acc = f.add(acc, f.mul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return Matrix(f, self.rows, other.cols, tuple(out))

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(f, self.rows, self.cols,
                      tuple(tuple(f.mul(c, x) for x in row) for row in self.entries))

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero
            for a, b in zip(row, v):
                if not f.is_zero(a) and not f.is_zero(b):
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def hstack(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries)))


class RrefResult(NamedTuple):
    rank: int
    pivots: tuple
    reduced: Matrix


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form; returns (rank, pivot columns, reduced matrix)."""
    f = m.field
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not f.is_zero(a[i][c]):
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) for x in a[r]]
        for i in range(nrows):
            if i != r and not f.is_zero(a[i][c]):
                factor = a[i][c]
                a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced = Matrix(f, nrows, ncols, tuple(tuple(row) for row in a))
    return RrefResult(r, tuple(pivots), reduced)


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel_basis(m: Matrix) -> list:
    """Basis (as column vectors) of the null space of m."""
    f = m.field
    nrank, pivots, red = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(red.entries[i][fc])
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> Optional[tuple]:
    """Some x with m @ x = b, or None if b is not in the column space."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    f = m.field
    b = tuple(f.coerce(x) for x in b)
    aug = m.hstack(Matrix.from_columns(f, [b], m.rows))
    nrank, pivots, red = rref(aug)
    if m.cols in pivots:
        return None
    x = [f.zero] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = red.entries[i][m.cols]
    return tuple(x)


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def column_space_contains(cols: Matrix, v: Sequence) -> bool:
    return solve(cols, v) is not None


def vec_add(f: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(f.add(a, b) for a, b in zip(u, v))


def vec_scale(f: Field, c, v: Sequence) -> tuple:
    c = f.coerce(c)
    return tuple(f.mul(c, x) for x in v)


def zero_vec(f: Field, n: int) -> tuple:
    return tuple(f.zero for _ in range(n))


class Quotient:
    """A subquotient span(space)/span(sub) with chosen representatives.

    `space` columns must be linearly independent; `sub` vectors must lie in
    their span.  Representatives are the space columns that extend a basis
    of span(sub).
    """

    def __init__(self, field: Field, ambient_dim: int, space: Sequence[Sequence], sub: Sequence[Sequence]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.space = [tuple(v) for v in space]
        sel = _independent_subset(field, ambient_dim, sub)
        self.sub_basis = sel
        reps = []
        current = list(sel)
        base_rank = _rank_of(field, ambient_dim, current)
        for v in self.space:
            cand = current + [tuple(v)]
            r = _rank_of(field, ambient_dim, cand)
            if r > base_rank:
                reps.append(tuple(v))
                current = cand
                base_rank = r
        self.reps = reps
        # columns [sub_basis | reps] are independent and span span(space)
        self._mix = Matrix.from_columns(field, self.sub_basis + self.reps, ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: Sequence) -> tuple:
        """Coordinates of [v] in the representative basis."""
        x = solve(self._mix, v)
        if x is None:
            raise ValueError("vector is not in the subquotient's ambient span")
        return tuple(x[len(self.sub_basis):])


def _rank_of(field: Field, ambient_dim: int, vectors) -> int:
    if not vectors:
        return 0
    return rank(Matrix.from_columns(field, vectors, ambient_dim))


def _independent_subset(field: Field, ambient_dim: int, vectors) -> list:
    out = []
    r = 0
    for v in vectors:
        cand = out + [tuple(v)]
        rr = _rank_of(field, ambient_dim, cand)
        if rr > r:
            out = cand
            r = rr
    return out


def induced_matrix(f_cols, source: Quotient, target: Quotient, field: Field) -> Matrix:
    """Matrix of the map induced on subquotients by v -> f_cols(v).

    `f_cols` is a callable sending an ambient source vector to an ambient
    target vector.
    """
    cols = [target.coords(f_cols(rep)) for rep in source.reps]
    return Matrix.from_columns(field, cols, target.dim) if cols else Matrix.zeros(field, target.dim, 0)
