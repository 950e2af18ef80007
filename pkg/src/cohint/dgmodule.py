"""Persistence differential graded modules and constructive formality.

A persistence dg module is a finite bigraded window of vector spaces
X(i)^n with a differential d: (i,n) -> (i,n+1) and structure maps
t: (i,n) -> (i+1,n) satisfying d o d = 0 and t o d = d o t exactly.
The formality witness is a two-step free resolution Q = F0 + F1 with
quasi-isomorphisms Q -> X and Q -> H(X).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .barcode import Barcode
from .exact import (Field, Matrix, QQ, Quotient, induced_matrix, kernel_basis,
                    solve, zero_vec)
from .persistence import PersistenceModule, decompose
from .barcode import Bar
from .exact import INF, ExtRational


@dataclass(frozen=True)
class PersistenceDgModule:
    """Bigraded window: persistence indices [ilo, ihi], degrees [nlo, nhi]."""

    ilo: int
    ihi: int
    nlo: int
    nhi: int
    dims: Dict[Tuple[int, int], int]
    d: Dict[Tuple[int, int], Matrix]   # (i,n) -> (i,n+1)
    t: Dict[Tuple[int, int], Matrix]   # (i,n) -> (i+1,n)
    field: Field = QQ

    def dim(self, i: int, n: int) -> int:
        return self.dims.get((i, n), 0)

    def d_at(self, i: int, n: int) -> Matrix:
        m = self.d.get((i, n))
        if m is None:
            return Matrix.zeros(self.field, self.dim(i, n + 1), self.dim(i, n))
        return m

    def t_at(self, i: int, n: int) -> Matrix:
        m = self.t.get((i, n))
        if m is None:
            return Matrix.zeros(self.field, self.dim(i + 1, n), self.dim(i, n))
        return m

    def validate(self):
        for i in range(self.ilo, self.ihi + 1):
            for n in range(self.nlo, self.nhi + 1):
                dm = self.d_at(i, n)
                if (dm.rows, dm.cols) != (self.dim(i, n + 1), self.dim(i, n)):
                    raise ValueError(f"differential shape mismatch at {(i, n)}")
                tm = self.t_at(i, n)
                if (tm.rows, tm.cols) != (self.dim(i + 1, n), self.dim(i, n)):
                    raise ValueError(f"structure map shape mismatch at {(i, n)}")
                if not (self.d_at(i, n + 1) @ dm).is_zero():
                    raise ValueError(f"d o d != 0 at {(i, n)}")
                if self.t_at(i, n + 1) @ dm != self.d_at(i + 1, n) @ tm:
                    raise ValueError(f"t o d != d o t at {(i, n)}")
        return self


def _degree_quotients(x: PersistenceDgModule, n: int, ilo: int, ihi: int) -> List[Quotient]:
    """Quotient ker d / im d at degree n for each index in [ilo, ihi]."""
    out = []
    for i in range(ilo, ihi + 1):
        dim = x.dim(i, n)
        ker = kernel_basis(x.d_at(i, n)) if dim else []
        prev = x.d_at(i, n - 1)
        im = [prev.col(j) for j in range(prev.cols)] if prev.rows else []
        out.append(Quotient(x.field, dim, ker, im))
    return out


def homology(x: PersistenceDgModule) -> Dict[int, PersistenceModule]:
    """Per cohomological degree, the persistence module i -> H^n(X(i))."""
    x.validate()
    out: Dict[int, PersistenceModule] = {}
    for n in range(x.nlo, x.nhi + 1):
        quots = _degree_quotients(x, n, x.ilo, x.ihi)
        dims = tuple(q.dim for q in quots)
        maps = []
        for idx, i in enumerate(range(x.ilo, x.ihi)):
            tm = x.t_at(i, n)
            maps.append(induced_matrix(tm.apply, quots[idx], quots[idx + 1], x.field))
        out[n] = PersistenceModule(x.ilo, x.ihi, dims, tuple(maps), "zero", x.field)
    return out


def homology_barcodes(x: PersistenceDgModule) -> Dict[int, Barcode]:
    return {n: decompose(m) for n, m in homology(x).items()}


def as_zero_differential(x: PersistenceDgModule) -> PersistenceDgModule:
    """The persistence dg module (H(X), 0) on the same window."""
    hs = homology(x)
    dims = {}
    t = {}
    for n, mod in hs.items():
        for i in range(x.ilo, x.ihi + 1):
            dims[(i, n)] = mod.dim(i)
        for i in range(x.ilo, x.ihi):
            t[(i, n)] = mod.step(i)
    return PersistenceDgModule(x.ilo, x.ihi, x.nlo, x.nhi, dims, {}, t, x.field)


def d_cohI_persistence(x: PersistenceDgModule, y: PersistenceDgModule) -> ExtRational:
    """Sup over degrees of the bottleneck distance of homology barcodes."""
    from .barcode import bottleneck_distance
    bx = homology_barcodes(x)
    by = homology_barcodes(y)
    best: ExtRational = Fraction(0)
    for n in set(bx) | set(by):
        d = bottleneck_distance(bx.get(n, Barcode()), by.get(n, Barcode()))
        if d > best:
            best = d
    return best


def from_dgku_window(m, ilo: int, ihi: int, nlo: int, nhi: int) -> PersistenceDgModule:
    """Persistence dg module with X(i)^n = M^{n+2i}, t acting by u.

    Finite window over the regrading functor: degree-n homology row at
    index i is H^{n+2i}(M), so the n = 0 row is the even split and n = 1
    the odd split (wherever the window covers them).
    """
    dims = {}
    d = {}
    t = {}
    for i in range(ilo, ihi + 1):
        for n in range(nlo, nhi + 1):
            deg = n + 2 * i
            dim = m.dim(deg)
            if dim:
                dims[(i, n)] = dim
            d[(i, n)] = m.d_at(deg)
            t[(i, n)] = m.u_at(deg)
    # maps whose target leaves the window are forced to zero by truncation
    d = {k: v for k, v in d.items() if k[1] < nhi and v.rows and v.cols}
    t = {k: v for k, v in t.items() if k[0] < ihi and v.rows and v.cols}
    return PersistenceDgModule(ilo, ihi, nlo, nhi, dims, d, t, m.field)


@dataclass(frozen=True)
class DgMap:
    """Map of persistence dg modules: matrices per bidegree, same (i, n)."""

    source: PersistenceDgModule
    target: PersistenceDgModule
    comps: Dict[Tuple[int, int], Matrix]

    def at(self, i: int, n: int) -> Matrix:
        m = self.comps.get((i, n))
        if m is None:
            return Matrix.zeros(self.source.field,
                                self.target.dim(i, n), self.source.dim(i, n))
        return m

    def is_chain_map(self, ilo: int, ihi: int, nlo: int, nhi: int) -> bool:
        for i in range(ilo, ihi + 1):
            for n in range(nlo, nhi + 1):
                if self.target.d_at(i, n) @ self.at(i, n) != self.at(i, n + 1) @ self.source.d_at(i, n):
                    return False
                if self.target.t_at(i, n) @ self.at(i, n) != self.at(i + 1, n) @ self.source.t_at(i, n):
                    return False
        return True

    def induces_homology_iso(self, ilo: int, ihi: int, nlo: int, nhi: int) -> bool:
        for n in range(nlo, nhi + 1):
            src_q = _degree_quotients(self.source, n, ilo, ihi)
            tgt_q = _degree_quotients(self.target, n, ilo, ihi)
            for idx, i in enumerate(range(ilo, ihi + 1)):
                if src_q[idx].dim != tgt_q[idx].dim:
                    return False
                ind = induced_matrix(self.at(i, n).apply, src_q[idx], tgt_q[idx], self.source.field)
                from .exact import is_invertible
                if not is_invertible(ind):
                    return False
        return True


@dataclass(frozen=True)
class FormalityWitness:
    """Q = (F0 + F1, D) with quasi-isomorphisms psi: Q -> X and g: Q -> H(X)."""

    q: PersistenceDgModule
    psi: DgMap
    g: DgMap

    def verify(self) -> bool:
        x = self.psi.target
        hx = self.g.target
        ilo, ihi = self.q.ilo, self.q.ihi
        nlo, nhi = self.q.nlo, self.q.nhi
        if not self.psi.is_chain_map(ilo, ihi, nlo, nhi):
            return False
        if not self.g.is_chain_map(ilo, ihi, nlo, nhi):
            return False
        if not self.psi.induces_homology_iso(ilo, ihi, nlo - 1, nhi + 1):
            return False
        if not self.g.induces_homology_iso(ilo, ihi, nlo - 1, nhi + 1):
            return False
        return True


class _FreeGen:
    """A free K[t]-module generator with a birth index."""

    __slots__ = ("birth", "degree", "payload")

    def __init__(self, birth: int, degree: int, payload):
        self.birth = birth
        self.degree = degree
        self.payload = payload


def _extend_by_zero(x: PersistenceDgModule, ihi: int, nlo: int, nhi: int) -> PersistenceDgModule:
    return PersistenceDgModule(x.ilo, ihi, nlo, nhi, x.dims, x.d, x.t, x.field)


def formality_witness(x: PersistenceDgModule) -> FormalityWitness:
    """Constructive formality: free generators of H(X), one relation layer.

    F0 is free on chosen cocycle representatives of K[t]-module generators
    of H(X); the kernel of F0 -> H(X) is free with a homogeneous basis
    picked per degree, and F1 kills it.  psi sends each relation generator
    to a primitive of its image cocycle; g projects F0 to homology.
    """
    x.validate()
    fld = x.field
    ilo, ihi = x.ilo, x.ihi + 1       # one extra column catches late relations
    nlo, nhi = x.nlo - 1, x.nhi        # F1 generators can sit one degree below
    xe = _extend_by_zero(x, ihi, nlo, nhi)

    # homology quotients with representatives, per degree and index
    quots: Dict[int, List[Quotient]] = {}
    for n in range(x.nlo, x.nhi + 1):
        quots[n] = _degree_quotients(xe, n, ilo, ihi)

    def hq(i: int, n: int) -> Optional[Quotient]:
        if n not in quots or not (ilo <= i <= ihi):
            return None
        return quots[n][i - ilo]

    def h_dim(i, n):
        q = hq(i, n)
        return q.dim if q is not None else 0

    def h_step(i, n) -> Matrix:
        src, tgt = hq(i, n), hq(i + 1, n)
        if src is None or tgt is None or src.dim == 0 or tgt.dim == 0:
            return Matrix.zeros(fld, tgt.dim if tgt else 0, src.dim if src else 0)
        return induced_matrix(xe.t_at(i, n).apply, src, tgt, fld)

    # K[t]-module generators of H(X): classes completing im(t) at each index
    f0_gens: List[_FreeGen] = []
    for n in range(x.nlo, x.nhi + 1):
        prev_classes: List[tuple] = []   # classes at index i-1, as coordinate vectors
        for i in range(ilo, ihi + 1):
            q = hq(i, n)
            step = h_step(i - 1, n) if i > ilo else None
            pushed = [step.apply(c) for c in prev_classes] if step is not None else []
            quo = Quotient(fld, q.dim, [tuple(Matrix.identity(fld, q.dim).col(j))
                                        for j in range(q.dim)], pushed)
            for repv in quo.reps:
                f0_gens.append(_FreeGen(i, n, repv))   # payload: class coords at birth
            # classes at index i: pushed old ones plus the new generators
            prev_classes = pushed + list(quo.reps)

    # F0 basis bookkeeping: at (i, n), one basis element per generator born <= i
    def f0_basis(i: int, n: int) -> List[int]:
        return [g_idx for g_idx, g in enumerate(f0_gens)
                if g.degree == n and g.birth <= i]

    # class coordinates of each F0 basis element, pushed from birth to i
    class_coords: Dict[Tuple[int, int], Dict[int, tuple]] = {}
    for n in range(x.nlo, x.nhi + 1):
        carried: Dict[int, tuple] = {}
        for i in range(ilo, ihi + 1):
            step = h_step(i - 1, n) if i > ilo else None
            if step is not None:
                carried = {g: step.apply(v) for g, v in carried.items()}
            for g_idx, g in enumerate(f0_gens):
                if g.degree == n and g.birth == i:
                    carried[g_idx] = g.payload
            class_coords[(i, n)] = dict(carried)

    # cocycle representative vectors in X, pushed from birth to i
    rep_coords: Dict[Tuple[int, int], Dict[int, tuple]] = {}
    for n in range(x.nlo, x.nhi + 1):
        carried: Dict[int, tuple] = {}
        for i in range(ilo, ihi + 1):
            if i > ilo:
                tm = xe.t_at(i - 1, n)
                carried = {g: tm.apply(v) for g, v in carried.items()}
            q = hq(i, n)
            for g_idx, g in enumerate(f0_gens):
                if g.degree == n and g.birth == i:
                    vec = zero_vec(fld, xe.dim(i, n))
                    for coeff, rep in zip(g.payload, q.reps):
                        if not fld.is_zero(coeff):
                            vec = tuple(fld.add(a, fld.mul(coeff, b)) for a, b in zip(vec, rep))
                    carried[g_idx] = vec
            rep_coords[(i, n)] = dict(carried)

    # kernel of F0 -> H(X): new free generators per index (greedy per degree)
    f1_gens: List[_FreeGen] = []   # payload: coordinate vector over f0_basis(birth, n)
    for n in range(x.nlo, x.nhi + 1):
        prev_kernel: List[Dict[int, object]] = []  # vectors as {gen: coeff} at i-1
        for i in range(ilo, ihi + 1):
            basis = f0_basis(i, n)
            if not basis:
                prev_kernel = []
                continue
            q = hq(i, n)
            cols = [class_coords[(i, n)][g] for g in basis]
            a = Matrix.from_columns(fld, cols, q.dim) if q.dim else Matrix.zeros(fld, 0, len(basis))
            ker = kernel_basis(a)
            pushed = []
            for kv in prev_kernel:
                pushed.append(tuple(kv.get(g, fld.zero) for g in basis))
            quo = Quotient(fld, len(basis), ker, pushed)
            for new in quo.reps:
                f1_gens.append(_FreeGen(i, n, tuple(new)))
            prev_kernel = [dict(zip(basis, v)) for v in pushed] + \
                          [dict(zip(basis, v)) for v in quo.reps]

    def f1_basis(i: int, n: int) -> List[int]:
        # alpha for a relation in degree n sits in cohomological degree n - 1
        return [g_idx for g_idx, g in enumerate(f1_gens)
                if g.degree - 1 == n and g.birth <= i]

    # assemble Q
    q_dims: Dict[Tuple[int, int], int] = {}
    q_d: Dict[Tuple[int, int], Matrix] = {}
    q_t: Dict[Tuple[int, int], Matrix] = {}
    for n in range(nlo, nhi + 1):
        for i in range(ilo, ihi + 1):
            q_dims[(i, n)] = len(f0_basis(i, n)) + len(f1_basis(i, n))
    for n in range(nlo, nhi + 1):
        for i in range(ilo, ihi + 1):
            src_f0, src_f1 = f0_basis(i, n), f1_basis(i, n)
            # differential: F1 part lands in F0 at degree n+1
            tgt_f0 = f0_basis(i, n + 1)
            rows = len(tgt_f0) + len(f1_basis(i, n + 1))
            cols = len(src_f0) + len(src_f1)
            if rows and cols:
                data = [[fld.zero] * cols for _ in range(rows)]
                for cj, g_idx in enumerate(src_f1):
                    g = f1_gens[g_idx]
                    base_at_birth = f0_basis(g.birth, n + 1)
                    for coeff, f0_idx in zip(g.payload, base_at_birth):
                        data[tgt_f0.index(f0_idx)][len(src_f0) + cj] = coeff
                q_d[(i, n)] = Matrix(fld, rows, cols, tuple(map(tuple, data)))
            if i < ihi:
                nxt_f0, nxt_f1 = f0_basis(i + 1, n), f1_basis(i + 1, n)
                rows = len(nxt_f0) + len(nxt_f1)
                if rows and cols:
                    data = [[fld.zero] * cols for _ in range(rows)]
                    for cj, g_idx in enumerate(src_f0):
                        data[nxt_f0.index(g_idx)][cj] = fld.one
                    for cj, g_idx in enumerate(src_f1):
                        data[len(nxt_f0) + nxt_f1.index(g_idx)][len(src_f0) + cj] = fld.one
                    q_t[(i, n)] = Matrix(fld, rows, cols, tuple(map(tuple, data)))
    q = PersistenceDgModule(ilo, ihi, nlo, nhi, q_dims, q_d, q_t, fld)

    # psi: Q -> X.  F0 generator -> pushed representative; F1 generator -> primitive z.
    z_coords: Dict[int, tuple] = {}
    for g_idx, g in enumerate(f1_gens):
        i, n = g.birth, g.degree
        basis = f0_basis(i, n)
        target_vec = zero_vec(fld, xe.dim(i, n))
        for coeff, f0_idx in zip(g.payload, basis):
            if not fld.is_zero(coeff):
                rep = rep_coords[(i, n)][f0_idx]
                target_vec = tuple(fld.add(a, fld.mul(coeff, b)) for a, b in zip(target_vec, rep))
        z = solve(xe.d_at(i, n - 1), target_vec)
        if z is None:
            raise ValueError("formality construction failed: cocycle is not a coboundary")
        z_coords[g_idx] = z

    # push z through t to later indices
    z_at: Dict[Tuple[int, int], tuple] = {}
    for g_idx, g in enumerate(f1_gens):
        vec = z_coords[g_idx]
        n = g.degree - 1
        for i in range(g.birth, ihi + 1):
            if i > g.birth:
                vec = xe.t_at(i - 1, n).apply(vec)
            z_at[(g_idx, i)] = vec

    psi_comps: Dict[Tuple[int, int], Matrix] = {}
    g_comps: Dict[Tuple[int, int], Matrix] = {}
    hx_dims: Dict[Tuple[int, int], int] = {}
    hx_t: Dict[Tuple[int, int], Matrix] = {}
    for n in range(x.nlo, x.nhi + 1):
        for i in range(ilo, ihi + 1):
            hx_dims[(i, n)] = h_dim(i, n)
        for i in range(ilo, ihi):
            hx_t[(i, n)] = h_step(i, n)
    hx = PersistenceDgModule(ilo, ihi, nlo, nhi, hx_dims, {}, hx_t, fld)

    for n in range(nlo, nhi + 1):
        for i in range(ilo, ihi + 1):
            src_f0, src_f1 = f0_basis(i, n), f1_basis(i, n)
            cols = []
            gcols = []
            hdim = h_dim(i, n)
            for g_idx in src_f0:
                cols.append(rep_coords[(i, n)][g_idx])
                gcols.append(class_coords[(i, n)][g_idx])
            for g_idx in src_f1:
                cols.append(z_at[(g_idx, i)])
                gcols.append(zero_vec(fld, hdim))
            if cols:
                psi_comps[(i, n)] = Matrix.from_columns(fld, cols, xe.dim(i, n))
                g_comps[(i, n)] = Matrix.from_columns(fld, gcols, hdim)

    psi = DgMap(q, xe, psi_comps)
    gmap = DgMap(q, hx, g_comps)
    return FormalityWitness(q, psi, gmap)
