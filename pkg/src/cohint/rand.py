"""Seeded random instances for the property suites.

Verification needs reproducible streams, so everything takes an explicit
random.Random.  Chain-level objects are built from known direct sums of
intervals and acyclic cones, then conjugated by random invertible basis
changes; the identities d o d = 0 and the commutation with structure maps
are preserved by construction.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .barcode import Bar, Barcode
from .dgku import DgKuModule, FilteredKtModule, Tail
from .dgmodule import PersistenceDgModule
from .exact import INF, Field, Matrix, QQ, is_invertible
from .persistence import PersistenceModule, realize


def random_fraction(rng: random.Random, span: int = 6, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_matrix(rng: random.Random, fld: Field, rows: int, cols: int,
                  span: int = 3) -> Matrix:
    return Matrix.from_rows(fld, [[fld.coerce(rng.randint(-span, span))
                                   for _ in range(cols)] for _ in range(rows)]) \
        if rows and cols else Matrix.zeros(fld, rows, cols)


def random_invertible(rng: random.Random, fld: Field, n: int) -> Matrix:
    if n == 0:
        return Matrix.zeros(fld, 0, 0)
    while True:
        m = random_matrix(rng, fld, n, n)
        if is_invertible(m):
            return m


def _inverse(m: Matrix) -> Matrix:
    from .exact import rref
    fld = m.field
    aug = m.hstack(Matrix.identity(fld, m.rows))
    _, _, red = rref(aug)
    rows = [row[m.rows:] for row in red.entries]
    return Matrix(fld, m.rows, m.rows, tuple(tuple(r) for r in rows))


def random_bar(rng: random.Random, allow_infinite: bool = True) -> Bar:
    left = Fraction(rng.randint(-4, 6))
    if allow_infinite and rng.random() < 0.25:
        return Bar(left, INF)
    return Bar(left, left + Fraction(rng.randint(1, 6)))


def random_barcode(rng: random.Random, max_bars: int = 4,
                   allow_infinite: bool = True) -> Barcode:
    return Barcode(random_bar(rng, allow_infinite)
                   for _ in range(rng.randint(0, max_bars)))


def random_integer_barcode(rng: random.Random, max_bars: int = 4,
                           allow_infinite: bool = False, lo: int = 0) -> Barcode:
    bars = []
    for _ in range(rng.randint(0, max_bars)):
        left = rng.randint(lo, lo + 5)
        if allow_infinite and rng.random() < 0.2:
            bars.append(Bar(Fraction(left), INF))
        else:
            bars.append(Bar(Fraction(left), Fraction(left + rng.randint(1, 5))))
    return Barcode(bars)


def conjugate_module(rng: random.Random, m: PersistenceModule) -> PersistenceModule:
    """Random change of basis at every index; barcode is unchanged."""
    ps = [random_invertible(rng, m.field, d) for d in m.dims]
    maps = []
    for j, step in enumerate(m.maps):
        maps.append(ps[j + 1] @ step @ _inverse(ps[j]))
    return PersistenceModule(m.lo, m.hi, m.dims, tuple(maps), m.right_tail, m.field)


def random_module(rng: random.Random, fld: Field = QQ, max_bars: int = 4,
                  allow_infinite: bool = False, lo: int = 0) -> PersistenceModule:
    bc = random_integer_barcode(rng, max_bars, allow_infinite, lo)
    return conjugate_module(rng, realize(bc, fld))


def random_pdg(rng: random.Random, fld: Field = QQ, width: int = 5,
               degrees: int = 5, max_pieces: int = 4) -> PersistenceDgModule:
    """Direct sum of interval classes and interval cones, then conjugated."""
    ilo, nlo = 0, 0
    ihi, nhi = width - 1, degrees - 1
    dims: Dict[Tuple[int, int], int] = {}
    d_ones: List[Tuple[int, int, int, int]] = []   # (i, n, src slot, tgt slot)
    t_ones: List[Tuple[int, int, int, int]] = []

    def slot(i: int, n: int) -> int:
        dims[(i, n)] = dims.get((i, n), 0) + 1
        return dims[(i, n)] - 1

    for _ in range(rng.randint(1, max_pieces)):
        b = rng.randint(ilo, ihi)
        e = rng.randint(b + 1, ihi + 1)
        n = rng.randint(nlo, nhi)
        is_cone = rng.random() < 0.5 and n + 1 <= nhi
        lower = {}
        upper = {}
        for i in range(b, e):
            lower[i] = slot(i, n)
            if is_cone:
                upper[i] = slot(i, n + 1)
        for i in range(b, e - 1):
            t_ones.append((i, n, lower[i], lower[i + 1]))
            if is_cone:
                t_ones.append((i, n + 1, upper[i], upper[i + 1]))
        if is_cone:
            for i in range(b, e):
                d_ones.append((i, n, lower[i], upper[i]))

    def build(ones, shape_of):
        out: Dict[Tuple[int, int], Matrix] = {}
        acc: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        for i, n, s, t in ones:
            acc.setdefault((i, n), []).append((s, t))
        for (i, n), pairs in acc.items():
            rows, cols = shape_of(i, n)
            data = [[fld.zero] * cols for _ in range(rows)]
            for s, t in pairs:
                data[t][s] = fld.one
            out[(i, n)] = Matrix(fld, rows, cols, tuple(map(tuple, data)))
        return out

    d = build(d_ones, lambda i, n: (dims.get((i, n + 1), 0), dims.get((i, n), 0)))
    t = build(t_ones, lambda i, n: (dims.get((i + 1, n), 0), dims.get((i, n), 0)))
    x = PersistenceDgModule(ilo, ihi, nlo, nhi, dims, d, t, fld)

    ps = {key: random_invertible(rng, fld, dim) for key, dim in dims.items()}

    def p_at(i, n):
        return ps.get((i, n), Matrix.zeros(fld, dims.get((i, n), 0), dims.get((i, n), 0)))

    new_d = {}
    for (i, n), m in x.d.items():
        new_d[(i, n)] = p_at(i, n + 1) @ m @ _inverse(p_at(i, n))
    new_t = {}
    for (i, n), m in x.t.items():
        new_t[(i, n)] = p_at(i + 1, n) @ m @ _inverse(p_at(i, n))
    return PersistenceDgModule(ilo, ihi, nlo, nhi, dims, new_d, new_t, fld).validate()


def random_dgku_zero_diff(rng: random.Random, fld: Field = QQ, top: int = 6,
                          max_dim: int = 3) -> DgKuModule:
    """Zero differential, random u-action, finite (zero tail)."""
    N = rng.randint(0, top)
    D = N + 2
    dims = tuple(rng.randint(0, max_dim) if n <= N else 0 for n in range(D + 1))
    d = tuple(Matrix.zeros(fld, dims[n + 1], dims[n]) for n in range(D))
    u = tuple(random_matrix(rng, fld, dims[n + 2], dims[n]) for n in range(D - 1))
    return DgKuModule(D, dims, d, u, Tail("zero", N), fld)


def _block_diag(fld: Field, a: Matrix, b: Matrix) -> Matrix:
    rows = a.rows + b.rows
    cols = a.cols + b.cols
    data = [[fld.zero] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            data[i][j] = a.entries[i][j]
    for i in range(b.rows):
        for j in range(b.cols):
            data[a.rows + i][a.cols + j] = b.entries[i][j]
    return Matrix(fld, rows, cols, tuple(map(tuple, data)))


def random_dgku(rng: random.Random, fld: Field = QQ, top: int = 6,
                max_dim: int = 2, h_seed: Optional[DgKuModule] = None) -> DgKuModule:
    """Random module: a zero-differential core plus acyclic cones, conjugated.

    Its cohomology with induced u-action is exactly the core, which makes
    ground-truth assertions cheap.
    """
    core = h_seed if h_seed is not None else \
        random_dgku_zero_diff(rng, fld, top, max_dim)
    D = core.D
    cone_dims = [0] * (D + 1)
    for n in range(0, core.tail.above):
        cone_dims[n] += rng.randint(0, 1)
    # a cone at n occupies degrees n and n+1 with identity differential
    dims = tuple(core.dims[n] + cone_dims[n] + (cone_dims[n - 1] if n >= 1 else 0)
                 for n in range(D + 1))
    d = []
    for n in range(D):
        rows, cols = dims[n + 1], dims[n]
        data = [[fld.zero] * cols for _ in range(rows)]
        # cone bottoms at n map identically onto cone tops at n+1
        row0 = core.dims[n + 1] + cone_dims[n + 1]
        col0 = core.dims[n]
        for j in range(cone_dims[n]):
            data[row0 + j][col0 + j] = fld.one
        d.append(Matrix(fld, rows, cols, tuple(map(tuple, data))))
    u = []
    for n in range(D - 1):
        base = core.u[n]
        pad_rows = dims[n + 2] - base.rows
        pad_cols = dims[n] - base.cols
        u.append(_block_diag(fld, base, Matrix.zeros(fld, pad_rows, pad_cols)))
    mod = DgKuModule(D, dims, tuple(d), tuple(u), core.tail, fld)

    ps = [random_invertible(rng, fld, dim) for dim in dims]
    d2 = tuple(ps[n + 1] @ mod.d[n] @ _inverse(ps[n]) for n in range(D))
    u2 = tuple(ps[n + 2] @ mod.u[n] @ _inverse(ps[n]) for n in range(D - 1))
    return DgKuModule(D, dims, d2, u2, core.tail, fld)


def random_filtered(rng: random.Random, fld: Field = QQ) -> FilteredKtModule:
    """Random compatible filtration: interval weights, then a basis change."""
    bars = []
    for _ in range(rng.randint(1, 4)):
        b = rng.randint(0, 4)
        bars.append((b, b + rng.randint(1, 4), rng.randint(0, b)))
    hi = max(e for _, e, _ in bars) - 1
    lo = 0
    dims = []
    order = []   # per index, list of (bar id, weight at that index)
    for i in range(lo, hi + 1):
        alive = [(bid, w + (i - b)) for bid, (b, e, w) in enumerate(bars) if b <= i < e]
        order.append(alive)
        dims.append(len(alive))
    maps = []
    for i in range(lo, hi):
        src, tgt = order[i - lo], order[i + 1 - lo]
        data = [[fld.zero] * len(src) for _ in range(len(tgt))]
        for cj, (bid, _) in enumerate(src):
            for rj, (bid2, _) in enumerate(tgt):
                if bid2 == bid:
                    data[rj][cj] = fld.one
        maps.append(Matrix(fld, len(tgt), len(src), tuple(map(tuple, data))))
    mod = PersistenceModule(lo, hi, tuple(dims), tuple(maps), "zero", fld)

    ps = [random_invertible(rng, fld, d) for d in dims]
    maps2 = tuple(ps[j + 1] @ mod.maps[j] @ _inverse(ps[j]) for j in range(len(maps)))
    mod2 = PersistenceModule(lo, hi, tuple(dims), maps2, "zero", fld)

    filtration = {}
    for i in range(lo, hi + 1):
        alive = order[i - lo]
        levels = []
        for p in range(1, i + 1):
            vecs = []
            for slot, (_, w) in enumerate(alive):
                if w >= p:
                    e = [fld.zero] * len(alive)
                    e[slot] = fld.one
                    vecs.append(ps[i - lo].apply(tuple(e)))
            levels.append(vecs)
        filtration[i] = levels
    return FilteredKtModule(mod2, filtration)
