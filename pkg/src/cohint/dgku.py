"""dg K[u]-modules (deg u = 2): cohomology, even/odd splits, distances.

A module lives on degrees [0, D] with differential d (degree +1) and a
degree-2 operator u commuting with d.  The tail declares what the window
truncates: "zero" promises the represented object's cohomology vanishes
above N (verified in-window up to D-1), "u_periodic" promises the chain
maps u_n are invertible for n >= N (so cohomology stabilizes above N+1
and the even/odd splits acquire infinite bars).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .barcode import Bar, Barcode, bottleneck_distance
from .exact import (INF, ExtRational, Field, Matrix, QQ, Quotient,
                    induced_matrix, is_invertible, kernel_basis)
from .persistence import PersistenceModule, decompose


@dataclass(frozen=True)
class Tail:
    kind: str   # "zero" | "u_periodic"
    above: int

    def __post_init__(self):
        if self.kind not in ("zero", "u_periodic"):
            raise ValueError("tail kind must be 'zero' or 'u_periodic'")


@dataclass(frozen=True)
class DgKuModule:
    """Chain window [0, D]: dims per degree, d: n -> n+1, u: n -> n+2."""

    D: int
    dims: tuple
    d: tuple   # d[n]: degree n -> n+1, for n in [0, D-1]
    u: tuple   # u[n]: degree n -> n+2, for n in [0, D-2]
    tail: Tail
    field: Field = QQ

    def __post_init__(self):
        if len(self.dims) != self.D + 1:
            raise ValueError("dims must cover degrees 0..D")
        if len(self.d) != self.D or len(self.u) != self.D - 1:
            raise ValueError("d must have D maps and u must have D-1 maps")
        if not (0 <= self.tail.above <= self.D - 2):
            raise ValueError("tail bound must satisfy 0 <= N <= D-2")
        for n, m in enumerate(self.d):
            if (m.rows, m.cols) != (self.dims[n + 1], self.dims[n]):
                raise ValueError(f"differential shape mismatch at degree {n}")
        for n, m in enumerate(self.u):
            if (m.rows, m.cols) != (self.dims[n + 2], self.dims[n]):
                raise ValueError(f"u-action shape mismatch at degree {n}")
        for n in range(self.D - 1):
            if not (self.d[n + 1] @ self.d[n]).is_zero():
                raise ValueError(f"d o d != 0 at degree {n}")
        for n in range(self.D - 2):
            if self.u[n + 1] @ self.d[n] != self.d[n + 2] @ self.u[n]:
                raise ValueError(f"u o d != d o u at degree {n}")
        if self.tail.kind == "u_periodic":
            for n in range(self.tail.above, self.D - 1):
                if not is_invertible(self.u[n]):
                    raise ValueError(f"u-periodic tail declared but u at degree {n} is not invertible")

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.D else 0

    def d_at(self, n: int) -> Matrix:
        if 0 <= n < self.D:
            return self.d[n]
        return Matrix.zeros(self.field, self.dim(n + 1), self.dim(n))

    def u_at(self, n: int) -> Matrix:
        if 0 <= n <= self.D - 2:
            return self.u[n]
        return Matrix.zeros(self.field, self.dim(n + 2), self.dim(n))


def regrade(m: DgKuModule, shift: int) -> DgKuModule:
    """Regrade upward: new degree n holds the old degree n - shift."""
    if shift < 0:
        raise ValueError("regrade only shifts upward")
    if shift == 0:
        return m
    fld = m.field
    D = m.D + shift
    dims = (0,) * shift + m.dims
    d = []
    u = []
    for n in range(D):
        old = n - shift
        d.append(m.d[old] if 0 <= old < m.D else Matrix.zeros(fld, dims[n + 1], dims[n]))
    for n in range(D - 1):
        old = n - shift
        u.append(m.u[old] if 0 <= old <= m.D - 2 else Matrix.zeros(fld, dims[n + 2], dims[n]))
    return DgKuModule(D, dims, tuple(d), tuple(u), Tail(m.tail.kind, m.tail.above + shift), fld)


class KuCohomology:
    """H*(M) with the induced u-action on chosen cocycle representatives."""

    def __init__(self, module: DgKuModule):
        module_field = module.field
        self.module = module
        self.field = module_field
        self.top = module.D - 1   # degrees with both in- and out-differential known
        self.quotients: List[Quotient] = []
        for n in range(self.top + 1):
            dim = module.dim(n)
            ker = kernel_basis(module.d_at(n)) if dim else []
            prev = module.d_at(n - 1)
            im = [prev.col(j) for j in range(prev.cols)] if prev.rows else []
            self.quotients.append(Quotient(module_field, dim, ker, im))
        self.umaps: List[Matrix] = []
        for n in range(self.top - 1):
            self.umaps.append(induced_matrix(module.u_at(n).apply,
                                             self.quotients[n], self.quotients[n + 2],
                                             module_field))
        if module.tail.kind == "zero":
            n0 = module.tail.above
            for n in range(n0 + 1, self.top + 1):
                if self.quotients[n].dim != 0:
                    raise ValueError(f"zero tail declared above {n0} but H^{n} != 0; "
                                     "raise the truncation degree or fix the tail")
            self.h_stable_from: Optional[int] = None
            self.h_top = n0
        else:
            s = module.tail.above + 1
            for n in range(s, self.top - 1):
                if self.quotients[n].dim != self.quotients[n + 2].dim or \
                        not is_invertible(self.umaps[n]):
                    raise ValueError(f"u-periodic tail declared but induced u at degree {n} "
                                     "is not an isomorphism")
            self.h_stable_from = s
            self.h_top = self.top

    def dim(self, n: int) -> int:
        if 0 <= n <= self.top:
            return self.quotients[n].dim
        return 0

    def u_matrix(self, n: int) -> Matrix:
        if 0 <= n <= self.top - 2:
            return self.umaps[n]
        return Matrix.zeros(self.field, self.dim(n + 2), self.dim(n))


def cohomology_ku(m: DgKuModule) -> KuCohomology:
    """Cohomology of a dg K[u]-module with induced u-action."""
    return KuCohomology(m)


def split_even_odd(h: KuCohomology, k: int) -> PersistenceModule:
    """The persistence module i -> H^{2i+k} with t acting as u."""
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    if h.h_stable_from is None:
        hi = max((h.h_top - k) // 2, 0)
        tail = "zero"
    else:
        hi = (h.top - k) // 2
        tail = "iso"
    dims = tuple(h.dim(2 * i + k) for i in range(hi + 1))
    maps = tuple(h.u_matrix(2 * i + k) for i in range(hi))
    try:
        return PersistenceModule(0, hi, dims, maps, tail, h.field)
    except ValueError as exc:
        raise ValueError(f"split window too small to certify the tail: {exc}") from exc


def split_barcode(m: DgKuModule, k: int) -> Barcode:
    return decompose(split_even_odd(cohomology_ku(m), k))


def cup_k(h: KuCohomology, k: int) -> int:
    """Greatest n with u^n nonzero on the k-split; -1 when the split is zero."""
    if h.h_stable_from is not None:
        raise ValueError("cup undefined for infinite bars")
    bc = decompose(split_even_odd(h, k))
    longest = max((b.length for b in bc), default=Fraction(0))
    return int(longest) - 1


def d_cohI_k(m: DgKuModule, n: DgKuModule, k: int) -> ExtRational:
    """Even (k=0) or odd (k=1) cohomology interleaving distance."""
    return bottleneck_distance(split_barcode(m, k), split_barcode(n, k))


def d_cohI(m: DgKuModule, n: DgKuModule) -> ExtRational:
    """Cohomology interleaving distance: max over the even and odd splits."""
    return max(d_cohI_k(m, n, 0), d_cohI_k(m, n, 1))


def _is_ground(h: KuCohomology) -> bool:
    return h.h_stable_from is None and h.dim(0) == 1 and \
        all(h.dim(n) == 0 for n in range(1, h.h_top + 1))


def ground_module(fld: Field = QQ) -> DgKuModule:
    """The ground field K as a dg K[u]-module concentrated in degree 0."""
    dims = (1, 0, 0)
    d = (Matrix.zeros(fld, 0, 1), Matrix.zeros(fld, 0, 0))
    u = (Matrix.zeros(fld, 0, 1),)
    return DgKuModule(2, dims, d, u, Tail("zero", 0), fld)


def ku_mod_u2_module(fld: Field = QQ) -> DgKuModule:
    """K[u]/(u^2) with zero differential."""
    dims = (1, 0, 1, 0, 0)
    d = tuple(Matrix.zeros(fld, dims[n + 1], dims[n]) for n in range(4))
    u = tuple(Matrix.zeros(fld, dims[n + 2], dims[n]) for n in range(3))
    u = (Matrix.from_rows(fld, [[1]]),) + u[1:]
    return DgKuModule(4, dims, d, u, Tail("zero", 2), fld)


def distance_to_ground(m: DgKuModule, k: int) -> ExtRational:
    """Closed-form d^k_CohI(M, K) from the k-split barcode (no matching)."""
    h = cohomology_ku(m)
    if h.h_stable_from is not None:
        raise ValueError("distance_to_ground requires finite cohomology")
    bc = decompose(split_even_odd(h, k))
    lengths = sorted((int(b.length) for b in bc), reverse=True)
    if k == 1:
        return Fraction(lengths[0], 2) if lengths else Fraction(0)
    if len(bc) == 1 and bc.bars[0] == Bar(Fraction(0), Fraction(1)):
        return Fraction(0)
    if not lengths:
        return Fraction(1, 2)
    return max(Fraction(1, 2), Fraction(lengths[0], 2))


def distance_to_ku_mod_u2(m: DgKuModule, k: int) -> ExtRational:
    """Closed-form d^k_CohI(M, K[u]/(u^2)) from the k-split barcode."""
    h = cohomology_ku(m)
    if h.h_stable_from is not None:
        raise ValueError("distance_to_ku_mod_u2 requires finite cohomology")
    bc = decompose(split_even_odd(h, k))
    lengths = sorted((int(b.length) for b in bc), reverse=True)
    if k == 1:
        return Fraction(lengths[0], 2) if lengths else Fraction(0)
    if not lengths or lengths[0] == 1:
        return Fraction(1)
    cstar = lengths[0]
    l0 = cstar - 1
    longest = [b for b in bc if b.length == cstar]
    if l0 in (1, 2) and len(longest) == 1 and longest[0].left == 0:
        second = lengths[1] if len(lengths) > 1 else 0
        return max(Fraction(l0 - 1), Fraction(second, 2))
    return Fraction(l0 + 1, 2)


def cup_bounds(m: DgKuModule, n: DgKuModule, k: int):
    """(lower, upper) bracketing d^k_CohI; lower is None when a side is K."""
    hm, hn = cohomology_ku(m), cohomology_ku(n)
    cm, cn = cup_k(hm, k), cup_k(hn, k)
    upper = Fraction(max(cm + 1, cn + 1), 2)
    if _is_ground(hm) or _is_ground(hn):
        return None, upper
    lower = Fraction(abs(cm - cn), 2)
    return lower, upper


@dataclass(frozen=True)
class FilteredKtModule:
    """Graded K[t]-module with a compatible decreasing filtration.

    `module` is the underlying graded module as a persistence module
    (index = degree).  `filtration[i]` lists, for p = 1, 2, ..., the
    spanning vectors of F^p at degree i; F^0 is the whole space, levels
    beyond the list are zero, and the chain must reach 0 by p = i + 1.
    Degrees absent from the dict carry the degree filtration
    F^p H^i = H^i for p <= i (the compatible filtration with Tot = H).
    """

    module: PersistenceModule
    filtration: Dict[int, List[List[tuple]]]

    def levels(self, i: int) -> List[List[tuple]]:
        if i in self.filtration:
            return self.filtration[i]
        dim = self.module.dim(i)
        fld = self.module.field
        full = [tuple(Matrix.identity(fld, dim).col(j)) for j in range(dim)]
        return [full] * max(i, 0)


def _in_span(fld: Field, ambient: int, vectors: List[tuple], v: tuple) -> bool:
    if all(fld.is_zero(c) for c in v):
        return True
    if not vectors:
        return False
    from .exact import solve as _solve
    return _solve(Matrix.from_columns(fld, vectors, ambient), v) is not None


def totalize(f: FilteredKtModule) -> PersistenceModule:
    """Associated-graded total module; barcode equals the input's."""
    mod = f.module
    fld = mod.field
    if mod.right_tail != "zero":
        raise ValueError("totalize requires a finitely supported module")
    if mod.lo < 0:
        raise ValueError("totalize requires a non-negatively graded module")

    # per degree: the chain F^0 = everything > F^1 > ... > 0 as spanning lists
    spans: Dict[int, List[List[tuple]]] = {}
    for i in range(mod.lo, mod.hi + 1):
        dim = mod.dim(i)
        full = [tuple(Matrix.identity(fld, dim).col(j)) for j in range(dim)]
        chain = [full] + [list(map(tuple, level)) for level in f.levels(i)]
        chain.append([])
        for p, level in enumerate(chain):
            if p > i and any(any(not fld.is_zero(c) for c in v) for v in level):
                raise ValueError(f"filtration at degree {i} fails F^{i + 1} = 0")
        for p in range(len(chain) - 1):
            for v in chain[p + 1]:
                if not _in_span(fld, dim, chain[p], v):
                    raise ValueError("filtration levels are not nested subspaces")
        spans[i] = chain

    # t must raise the filtration level, including F^0 -> F^1
    for i in range(mod.lo, mod.hi + 1):
        chain = spans[i]
        nxt = spans.get(i + 1, [[], []])
        tm = mod.step(i)
        for p in range(len(chain) - 1):
            target = nxt[p + 1] if p + 1 < len(nxt) else []
            for v in chain[p]:
                if not _in_span(fld, mod.dim(i + 1), target, tm.apply(v)):
                    raise ValueError("t does not raise the filtration level")

    gr: Dict[int, List[Quotient]] = {}
    for i in range(mod.lo, mod.hi + 1):
        chain = spans[i]
        gr[i] = [Quotient(fld, mod.dim(i), chain[p], chain[p + 1])
                 for p in range(len(chain) - 1)]

    dims = []
    for i in range(mod.lo, mod.hi + 1):
        dims.append(sum(q.dim for q in gr[i]))
    maps = []
    for i in range(mod.lo, mod.hi):
        tm = mod.step(i)
        src_pieces = gr[i]
        tgt_pieces = gr[i + 1]
        rows = dims[i + 1 - mod.lo]
        cols = dims[i - mod.lo]
        data = [[fld.zero] * cols for _ in range(rows)]
        col0 = 0
        for p, piece in enumerate(src_pieces):
            row_offset = sum(q.dim for q in tgt_pieces[:p + 1])
            tgt = tgt_pieces[p + 1] if p + 1 < len(tgt_pieces) else None
            for cj, rep in enumerate(piece.reps):
                if tgt is not None and tgt.dim:
                    coords = tgt.coords(tm.apply(rep))
                    for rj, c in enumerate(coords):
                        data[row_offset + rj][col0 + cj] = c
            col0 += piece.dim
        maps.append(Matrix(fld, rows, cols, tuple(map(tuple, data))))
    tot = PersistenceModule(mod.lo, mod.hi, tuple(dims), tuple(maps), "zero", fld)
    if decompose(tot) != decompose(mod):
        raise ValueError("totalization failed to reproduce the module's barcode")
    return tot


@dataclass(frozen=True)
class FiberSignature:
    """Betti numbers of a fiber: dims[l] = dim H^l(F); zero above the bound."""

    dims: tuple

    def multiset(self, k: int) -> List[int]:
        out = []
        for l, d in enumerate(self.dims):
            if l % 2 == k and d:
                out.extend([l // 2] * d)
        return out


def e2_collapse_distance(f1: FiberSignature, f2: FiberSignature, k: int) -> ExtRational:
    """d^k_CohI of total spaces with E2-collapsing spectral sequences."""
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    a = f1.multiset(k)
    b = f2.multiset(k)
    if len(a) != len(b):
        return INF
    a.sort()
    b.sort()
    best = Fraction(0)
    for x, y in zip(a, b):
        dxy = Fraction(abs(x - y))
        if dxy > best:
            best = dxy
    return best


def loop_shape_distance(h1: KuCohomology, h2: KuCohomology) -> ExtRational:
    """Borel-construction dichotomy for free loop spaces: 0 or 1/2 per split."""
    best = Fraction(0)
    for k in (0, 1):
        bcs = []
        for h in (h1, h2):
            bc = decompose(split_even_odd(h, k))
            inf_bars = bc.infinite_bars()
            if k == 0:
                if len(inf_bars) != 1 or inf_bars[0].left != 0:
                    raise ValueError("not of BV-exact shape")
            else:
                if inf_bars:
                    raise ValueError("not of BV-exact shape")
            if any(b.length != 1 for b in bc.finite_bars()):
                raise ValueError("not of BV-exact shape")
            bcs.append(bc)
        d = Fraction(0) if bcs[0] == bcs[1] else Fraction(1, 2)
        if d > best:
            best = d
    return best


def loop_shape_module(unit_bars: Sequence[Tuple[int, int]], fld: Field = QQ) -> DgKuModule:
    """Zero-differential module with H = K[u]{1} plus unit bars.

    `unit_bars` lists (k, i) pairs: a class in the k-split at index i that
    u kills immediately, i.e. a one-dimensional piece in degree 2i + k.
    """
    degrees = [2 * i + k for (k, i) in unit_bars]
    if any(d < 0 for d in degrees):
        raise ValueError("unit bars must sit in non-negative degrees")
    N = max([0] + degrees) + 1
    D = N + 4
    dims = []
    for n in range(D + 1):
        d = degrees.count(n)
        if n % 2 == 0:
            d += 1   # the infinite u-tower of the unit
        dims.append(d)
    d_maps = tuple(Matrix.zeros(fld, dims[n + 1], dims[n]) for n in range(D))
    u_maps = []
    for n in range(D - 1):
        rows, cols = dims[n + 2], dims[n]
        data = [[fld.zero] * cols for _ in range(rows)]
        if n % 2 == 0:
            data[0][0] = fld.one   # tower basis element comes first
        u_maps.append(Matrix(fld, rows, cols, tuple(map(tuple, data))))
    return DgKuModule(D, tuple(dims), d_maps, tuple(u_maps), Tail("u_periodic", N), fld)
