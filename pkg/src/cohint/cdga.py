"""Free graded-commutative DGAs over an exact field, truncated by degree.

Monomials are exponent vectors over the declared generators (odd
exponents at most 1), differentials extend the generator data as a
degree +1 derivation with Koszul signs, and `to_dgku` packages the
truncation as a dg K[u]-module acting by a chosen degree-2 cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .dgku import DgKuModule, Tail
from .exact import Field, FieldError, Matrix, QQ

Monomial = Tuple[int, ...]          # exponent per generator, declaration order
Poly = Dict[Monomial, Fraction]     # monomial -> coefficient


@dataclass(frozen=True)
class FreeCdga:
    """Free graded-commutative algebra with a derivation differential.

    `differential` maps generator names to polynomials; omitted names have
    zero differential.  `u_generator` names the degree-2 cocycle whose
    multiplication gives the K[u]-module structure (None: u acts by 0).
    """

    generators: Tuple[Tuple[str, int], ...]
    differential: Dict[str, Poly]
    u_generator: Optional[str]
    default_trunc: int = 12

    def __post_init__(self):
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for n, deg in self.generators:
            if deg <= 0:
                raise ValueError(f"generator {n} must have positive degree")
        for n in self.differential:
            if n not in names:
                raise ValueError(f"differential given for unknown generator {n}")
        if self.u_generator is not None:
            if self.u_generator not in names:
                raise ValueError("u_generator is not a declared generator")
            if self.degree_of(self.u_generator) != 2:
                raise ValueError("u_generator must have degree 2")

    def index_of(self, name: str) -> int:
        for i, (n, _) in enumerate(self.generators):
            if n == name:
                return i
        raise KeyError(name)

    def degree_of(self, name: str) -> int:
        return self.generators[self.index_of(name)][1]

    def mono_degree(self, m: Monomial) -> int:
        return sum(e * deg for e, (_, deg) in zip(m, self.generators))

    def parse_poly(self, terms: Sequence[Tuple[Fraction, Dict[str, int]]]) -> Poly:
        poly: Poly = {}
        for coeff, expo in terms:
            m = [0] * len(self.generators)
            for name, e in expo.items():
                m[self.index_of(name)] = e
            _poly_add(poly, tuple(m), Fraction(coeff))
        return poly


def _poly_add(poly: Poly, m: Monomial, c: Fraction):
    if c == 0:
        return
    cur = poly.get(m, Fraction(0)) + c
    if cur == 0:
        poly.pop(m, None)
    else:
        poly[m] = cur


def mono_mul(algebra: FreeCdga, m1: Monomial, m2: Monomial) -> Optional[Tuple[Monomial, int]]:
    """Product with Koszul sign; None if an odd generator squares."""
    sign = 1
    odd_left = []
    for i, (name_deg, e) in enumerate(zip(algebra.generators, m1)):
        if name_deg[1] % 2 == 1 and e:
            odd_left.append(i)
    for i, (name_deg, e) in enumerate(zip(algebra.generators, m2)):
        if name_deg[1] % 2 == 1 and e:
            if m1[i]:
                return None
            # move past every odd generator in m1 with larger index
            sign *= (-1) ** sum(1 for j in odd_left if j > i)
    out = tuple(a + b for a, b in zip(m1, m2))
    return out, sign


def poly_mul(algebra: FreeCdga, p1: Poly, p2: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p1.items():
        for m2, c2 in p2.items():
            r = mono_mul(algebra, m1, m2)
            if r is None:
                continue
            m, s = r
            _poly_add(out, m, c1 * c2 * s)
    return out


def mono_differential(algebra: FreeCdga, m: Monomial) -> Poly:
    """Derivation extension: d(xy) = d(x)y + (-1)^|x| x d(y)."""
    out: Poly = {}
    word: List[int] = []
    for i, e in enumerate(m):
        word.extend([i] * e)
    for pos, gen_idx in enumerate(word):
        name, deg = algebra.generators[gen_idx]
        dgen = algebra.differential.get(name)
        if not dgen:
            continue
        prefix_deg = sum(algebra.generators[g][1] for g in word[:pos])
        sign = (-1) ** prefix_deg
        prefix = [0] * len(m)
        for g in word[:pos]:
            prefix[g] += 1
        suffix = [0] * len(m)
        for g in word[pos + 1:]:
            suffix[g] += 1
        left: Poly = {tuple(prefix): Fraction(sign)}
        mid = poly_mul(algebra, left, dgen)
        term = poly_mul(algebra, mid, {tuple(suffix): Fraction(1)})
        for mm, cc in term.items():
            _poly_add(out, mm, cc)
    return out


def basis(algebra: FreeCdga, top: int) -> List[List[Monomial]]:
    """Canonical monomial basis per degree 0..top, deterministic order."""
    degrees = [deg for _, deg in algebra.generators]
    out: List[List[Monomial]] = [[] for _ in range(top + 1)]

    def rec(i: int, deg: int, expo: List[int]):
        if deg > top:
            return
        if i == len(degrees):
            out[deg].append(tuple(expo))
            return
        cap = 1 if degrees[i] % 2 == 1 else (top - deg) // degrees[i]
        for e in range(cap + 1):
            rec(i + 1, deg + e * degrees[i], expo + [e])

    rec(0, 0, [])
    for row in out:
        row.sort()
    return out


def differential_matrix(algebra: FreeCdga, n: int, top: int, fld: Field = QQ,
                        _basis=None) -> Matrix:
    """Matrix of d: degree n -> n+1 in the canonical monomial bases."""
    if n >= top:
        raise ValueError("differential_matrix requires n < truncation degree")
    bases = _basis if _basis is not None else basis(algebra, top)
    src = bases[n]
    tgt = bases[n + 1]
    tgt_index = {m: j for j, m in enumerate(tgt)}
    rows = [[fld.zero] * len(src) for _ in range(len(tgt))]
    for cj, m in enumerate(src):
        for mm, cc in mono_differential(algebra, m).items():
            rows[tgt_index[mm]][cj] = fld.coerce(cc)
    return Matrix(fld, len(tgt), len(src), tuple(map(tuple, rows)))


def _check_d_squared(algebra: FreeCdga):
    # d^2 is itself a derivation, so generator vanishing settles the algebra
    for name, _ in algebra.generators:
        dgen = algebra.differential.get(name)
        if not dgen:
            continue
        out: Poly = {}
        for mm, cc in dgen.items():
            for mmm, ccc in mono_differential(algebra, mm).items():
                _poly_add(out, mmm, cc * ccc)
        if out:
            raise ValueError(f"d o d != 0 on monomial {name}")


def mono_str(algebra: FreeCdga, m: Monomial) -> str:
    parts = []
    for (name, _), e in zip(algebra.generators, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def multiplication_matrix(algebra: FreeCdga, factor: Poly, n: int, top: int,
                          fld: Field, bases) -> Matrix:
    """Left multiplication by `factor` from degree n to n + deg(factor)."""
    shift = {algebra.mono_degree(m) for m in factor}
    if len(shift) > 1:
        raise ValueError("factor must be homogeneous")
    dshift = shift.pop() if shift else 0
    src = bases[n]
    tgt = bases[n + dshift] if n + dshift <= top else []
    tgt_index = {m: j for j, m in enumerate(tgt)}
    rows = [[fld.zero] * len(src) for _ in range(len(tgt))]
    for cj, m in enumerate(src):
        prod = poly_mul(algebra, factor, {m: Fraction(1)})
        for mm, cc in prod.items():
            rows[tgt_index[mm]][cj] = fld.coerce(cc)
    return Matrix(fld, len(tgt), len(src), tuple(map(tuple, rows)))


def to_dgku(algebra: FreeCdga, top: Optional[int] = None, fld: Field = QQ) -> DgKuModule:
    """Truncate at `top` and package as a dg K[u]-module.

    The u-action is multiplication by the designated degree-2 cocycle (or
    zero).  The zero tail bound is detected from the cohomology, which is
    computed one degree past the emitted window (the algebra is symbolic,
    so the extra differential is available); models whose cohomology
    persists into the guard band are rejected so the emitted barcodes stay
    authoritative.
    """
    top = algebra.default_trunc if top is None else top
    if top < 2:
        raise ValueError("truncation degree must be at least 2")
    _check_d_squared(algebra)
    if algebra.u_generator is not None:
        dgen = algebra.differential.get(algebra.u_generator)
        if dgen:
            raise ValueError("u_generator must be a cocycle")
    ext = top + 1
    bases = basis(algebra, ext)
    dims = tuple(len(bases[n]) for n in range(ext + 1))
    d = tuple(differential_matrix(algebra, n, ext, fld, bases) for n in range(ext))
    if algebra.u_generator is None:
        u = tuple(Matrix.zeros(fld, dims[n + 2], dims[n]) for n in range(ext - 1))
    else:
        idx = algebra.index_of(algebra.u_generator)
        factor_mono = tuple(1 if i == idx else 0 for i in range(len(algebra.generators)))
        factor = {factor_mono: Fraction(1)}
        u = tuple(multiplication_matrix(algebra, factor, n, ext, fld, bases)
                  for n in range(ext - 1))
    internal = DgKuModule(ext, dims, d, u, Tail("zero", ext - 2), fld)
    from .dgku import cohomology_ku
    try:
        h = cohomology_ku(internal)
    except ValueError as exc:
        raise ValueError(f"truncation degree {top} too small: {exc}") from exc
    h_top = 0
    for n in range(ext):
        if h.dim(n):
            h_top = n
    if h_top > top - 2:
        raise ValueError(f"truncation degree {top} too small: cohomology persists "
                         f"to degree {h_top}")
    return DgKuModule(top, dims[:top + 1], d[:top], u[:top - 1], Tail("zero", h_top), fld)


def builtin(name: str, n: Optional[int] = None, j: Optional[int] = None,
            a: Optional[Fraction] = None) -> FreeCdga:
    """Model catalogue: pt, cp (n, j), m (j), x_a (a)."""
    if name == "pt":
        return FreeCdga((), {}, None, default_trunc=4)
    if name == "cp":
        if n is None or n < 1 or j not in (0, 1):
            raise ValueError("cp model needs n >= 1 and j in {0, 1}")
        if j == 1:
            gens = (("u", 2), ("w", 2 * n + 1))
            alg = FreeCdga(gens, {}, "u", default_trunc=2 * n + 2)
            diff = {"w": alg.parse_poly([(Fraction(1), {"u": n + 1})])}
            return FreeCdga(gens, diff, "u", default_trunc=2 * n + 2)
        gens = (("x", 2), ("w", 2 * n + 1))
        alg = FreeCdga(gens, {}, None, default_trunc=2 * n + 2)
        diff = {"w": alg.parse_poly([(Fraction(1), {"x": n + 1})])}
        return FreeCdga(gens, diff, None, default_trunc=2 * n + 2)
    if name == "m":
        if j not in (0, 1):
            raise ValueError("m model needs j in {0, 1}")
        gens = (("x", 3), ("y", 3), ("z", 7), ("u", 2))
        alg = FreeCdga(gens, {}, "u", default_trunc=16)
        terms = [(Fraction(1), {"u": 4})]
        if j == 1:
            terms.insert(0, (Fraction(1), {"x": 1, "y": 1, "u": 1}))
        diff = {"z": alg.parse_poly(terms)}
        return FreeCdga(gens, diff, "u", default_trunc=16)
    if name == "x_a":
        if a is None or a == 0:
            raise ValueError("x_a model needs a nonzero rational a")
        a = Fraction(a)
        gens = (("u", 2), ("x", 2), ("y", 3), ("z", 3))
        alg = FreeCdga(gens, {}, "u", default_trunc=10)
        diff = {
            "y": alg.parse_poly([(Fraction(1), {"u": 1, "x": 1})]),
            "z": alg.parse_poly([(Fraction(1), {"x": 2}), (a, {"u": 2})]),
        }
        return FreeCdga(gens, diff, "u", default_trunc=10)
    raise ValueError(f"unknown model {name!r}")
