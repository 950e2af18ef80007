"""Pointwise finite-dimensional persistence modules over (Z, <=).

A module is stored on a finite window [lo, hi] with declared tail
behavior: zero below lo, and either zero or stationary (all maps
identities) above hi.  Barcodes come from corner inclusion-exclusion of
the rank invariant, which keeps every step auditable at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .barcode import Bar, Barcode
from .exact import INF, Field, Matrix, QQ, is_invertible, rank


@dataclass(frozen=True)
class PersistenceModule:
    """Functor (Z, <=) -> Vect on [lo, hi]; right_tail is "zero" or "iso"."""

    lo: int
    hi: int
    dims: tuple
    maps: tuple  # maps[j]: index lo+j -> lo+j+1
    right_tail: str = "zero"
    field: Field = QQ

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("empty window")
        if len(self.dims) != self.hi - self.lo + 1:
            raise ValueError("dims length does not match window")
        if len(self.maps) != self.hi - self.lo:
            raise ValueError("maps length does not match window")
        for j, m in enumerate(self.maps):
            if (m.rows, m.cols) != (self.dims[j + 1], self.dims[j]):
                raise ValueError(f"map at index {self.lo + j} has shape "
                                 f"{m.rows}x{m.cols}, expected {self.dims[j+1]}x{self.dims[j]}")
            if m.field != self.field:
                raise ValueError("mixed field tags in module maps")
        if self.right_tail not in ("zero", "iso"):
            raise ValueError("right_tail must be 'zero' or 'iso'")
        if self.right_tail == "iso" and self.maps:
            if not is_invertible(self.maps[-1]):
                raise ValueError("iso tail declared but the last window map is not invertible")

    def dim(self, i: int) -> int:
        if i < self.lo:
            return 0
        if i > self.hi:
            return self.dims[-1] if self.right_tail == "iso" else 0
        return self.dims[i - self.lo]

    def step(self, i: int) -> Matrix:
        """Structure map at index i -> i+1, extended by the declared tails."""
        if self.lo <= i < self.hi:
            return self.maps[i - self.lo]
        di, dj = self.dim(i), self.dim(i + 1)
        if i >= self.hi and self.right_tail == "iso":
            return Matrix.identity(self.field, di)
        return Matrix.zeros(self.field, dj, di)

    def map_between(self, i: int, j: int) -> Matrix:
        if j < i:
            raise ValueError("map_between requires i <= j")
        m = Matrix.identity(self.field, self.dim(i))
        for k in range(i, j):
            m = self.step(k) @ m
        return m

    def barcode(self) -> Barcode:
        return decompose(self)


def rank_invariant(module: PersistenceModule, i: int, j: int) -> int:
    """Rank of the composite structure map M(i) -> M(j)."""
    if i > j:
        raise ValueError("rank invariant requires i <= j")
    if module.dim(i) == 0 or module.dim(j) == 0:
        return 0
    # stationary tails let us clamp the endpoints into the window
    i_eff = max(i, module.lo)
    j_eff = j
    if module.right_tail == "iso":
        j_eff = min(j, module.hi)
        i_eff = min(i_eff, module.hi)
        if i_eff > j_eff:
            i_eff = j_eff
    return rank(module.map_between(i_eff, j_eff))


def decompose(module: PersistenceModule) -> Barcode:
    """Barcode of the module via inclusion-exclusion of the rank invariant."""
    lo, hi = module.lo, module.hi
    bars = []

    def r(i: int, j: int) -> int:
        if i < lo or module.dim(i) == 0 or module.dim(j) == 0 or j > hi + 1:
            return 0
        return rank_invariant(module, i, j)

    if module.right_tail == "iso":
        inf_rank = {i: r(i, hi) for i in range(lo - 1, hi + 1)}
        for b in range(lo, hi + 1):
            mult = inf_rank[b] - inf_rank[b - 1]
            bars.extend([Bar(Fraction(b), INF)] * mult)
        death_hi = hi
    else:
        inf_rank = {i: 0 for i in range(lo - 1, hi + 1)}
        death_hi = hi + 1

    for b in range(lo, hi + 1):
        for d in range(b + 1, death_hi + 1):
            mult = r(b, d - 1) - r(b - 1, d - 1) - r(b, d) + r(b - 1, d)
            if mult < 0:
                raise ValueError("inconsistent rank invariant (negative multiplicity)")
            bars.extend([Bar(Fraction(b), Fraction(d))] * mult)

    bc = Barcode(bars)
    for i in range(lo, hi + 1):
        cover = sum(1 for bar in bc
                    if bar.left <= i and (not bar.finite or i < bar.right))
        if cover != module.dim(i):
            raise ValueError(f"inconsistent tail declaration: dimension mismatch at index {i}")
    return bc


def realize(bc: Barcode, fld: Field = QQ) -> PersistenceModule:
    """Interval-module direct sum realizing a barcode with integer endpoints."""
    for bar in bc:
        if bar.left.denominator != 1 or (bar.finite and bar.right.denominator != 1):
            raise ValueError("realize requires integer bar endpoints")
    if not len(bc):
        return PersistenceModule(0, 0, (0,), (), "zero", fld)
    births = [int(b.left) for b in bc]
    fin_deaths = [int(b.right) for b in bc if b.finite]
    has_inf = any(not b.finite for b in bc)
    lo = min(births)
    if has_inf:
        hi = max(fin_deaths + births) + 1
        tail = "iso"
    else:
        hi = max(fin_deaths) - 1
        tail = "zero"
    hi = max(hi, lo)

    def alive(bar: Bar, i: int) -> bool:
        return bar.left <= i and (not bar.finite or i < bar.right)

    dims = []
    for i in range(lo, hi + 1):
        dims.append(sum(1 for bar in bc if alive(bar, i)))
    maps = []
    for i in range(lo, hi):
        src = [bar for bar in bc if alive(bar, i)]
        tgt = [bar for bar in bc if alive(bar, i + 1)]
        rows = []
        for tb in tgt:
            row = [fld.one if sb is tb else fld.zero for sb in src]
            rows.append(tuple(row))
        maps.append(Matrix(fld, len(tgt), len(src), tuple(rows)))
    return PersistenceModule(lo, hi, tuple(dims), tuple(maps), tail, fld)


def shift(module: PersistenceModule, eps: int) -> PersistenceModule:
    """The shifted module M o T_eps; barcodes translate left by eps."""
    if eps < 0:
        raise ValueError("shift requires eps >= 0")
    return PersistenceModule(module.lo - eps, module.hi - eps, module.dims,
                             module.maps, module.right_tail, module.field)


@dataclass(frozen=True)
class NatTransformation:
    """Components phi(i): source(i) -> target(i + eps) for an integer eps >= 0."""

    source: PersistenceModule
    target: PersistenceModule
    eps: int
    comps: Dict[int, Matrix] = dc_field(default_factory=dict)

    def component(self, i: int) -> Matrix:
        src_dim = self.source.dim(i)
        tgt_dim = self.target.dim(i + self.eps)
        if i in self.comps:
            m = self.comps[i]
            if (m.rows, m.cols) != (tgt_dim, src_dim):
                raise ValueError(f"component at {i} has shape {m.rows}x{m.cols}, "
                                 f"expected {tgt_dim}x{src_dim}")
            return m
        if src_dim == 0 or tgt_dim == 0:
            return Matrix.zeros(self.source.field, tgt_dim, src_dim)
        if self.comps and i > max(self.comps):
            if self.source.right_tail == "iso" and self.target.right_tail == "iso":
                # stationary range: reuse the last provided component
                return self.component(max(self.comps))
        raise ValueError(f"missing component at index {i}")


def verify_interleaving(m: PersistenceModule, n: PersistenceModule,
                        phi: NatTransformation, psi: NatTransformation,
                        eps: int) -> bool:
    """Check naturality and both interleaving triangles at shift eps."""
    if eps < 0:
        raise ValueError("eps must be a non-negative integer")
    if phi.source is not m and phi.source != m:
        raise ValueError("phi source mismatch")
    if psi.source is not n and psi.source != n:
        raise ValueError("psi source mismatch")
    if phi.eps != eps or psi.eps != eps:
        raise ValueError("transformation shift does not match eps")
    lo = min(m.lo, n.lo) - 1
    hi = max(m.hi, n.hi) + 2 * eps + 1

    for i in range(lo, hi):
        # naturality: target(i+eps -> i+1+eps) o phi(i) = phi(i+1) o source(i -> i+1)
        for f in (phi, psi):
            left = f.target.step(i + eps) @ f.component(i)
            right = f.component(i + 1) @ f.source.step(i)
            if left != right:
                return False
    for i in range(lo, hi - 2 * eps + 1):
        if psi.component(i + eps) @ phi.component(i) != m.map_between(i, i + 2 * eps):
            return False
        if phi.component(i + eps) @ psi.component(i) != n.map_between(i, i + 2 * eps):
            return False
    return True


def interval_transformations(src: PersistenceModule, tgt: PersistenceModule,
                             eps: int, entries: Dict[int, Sequence[Sequence]]) -> NatTransformation:
    """Convenience constructor: entries[i] is the matrix of phi(i)."""
    comps = {i: Matrix.from_rows(src.field, rows) for i, rows in entries.items()}
    return NatTransformation(src, tgt, eps, comps)
