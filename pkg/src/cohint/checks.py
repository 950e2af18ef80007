"""Named invariant checks behind `verify` and the acceptance suite.

Each check takes (rng, n) and raises AssertionError naming the violated
proposition.  The registry maps check names to (function, fast_n, full_n).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import barcode as bc_mod
from . import cdga as cdga_mod
from . import dgku as dgku_mod
from . import dgmodule as dgm_mod
from . import persistence as per_mod
from . import rand as rand_mod
from .barcode import Bar, Barcode
from .exact import INF, Matrix, PrimeField, QQ, is_inf, kernel_basis, rank, solve


def check_rational_laws(rng: random.Random, n: int):
    for _ in range(n):
        a, b, c = (rand_mod.random_fraction(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c), "rational addition is not associative"
        assert a * (b + c) == a * b + a * c, "rational arithmetic is not distributive"
        assert a * b == b * a and a + b == b + a, "rational arithmetic is not commutative"


def check_linear_algebra(rng: random.Random, n: int):
    fields = [QQ, PrimeField(2), PrimeField(5)]
    for _ in range(n):
        fld = rng.choice(fields)
        rows, cols = rng.randint(0, 4), rng.randint(0, 4)
        m = rand_mod.random_matrix(rng, fld, rows, cols)
        assert rank(m) == rank(m.transpose()), "rank(m) != rank(m^T)"
        assert len(kernel_basis(m)) + rank(m) == cols, "rank-nullity fails"
        if rows and cols:
            x = tuple(fld.coerce(rng.randint(-3, 3)) for _ in range(cols))
            b = m.apply(x)
            y = solve(m, b)
            assert y is not None and m.apply(y) == b, "solve is not exact"


def check_interval_cases(rng: random.Random, n: int):
    F = Fraction
    cases = [
        ((Bar(F(0), F(4)), None), F(2)),
        ((Bar(F(3), F(7)), Bar(F(0), F(7))), F(3)),
        ((Bar(F(2), INF), Bar(F(5), INF)), F(3)),
        ((Bar(F(0), INF), Bar(F(1), F(2))), INF),
        ((None, None), F(0)),
    ]
    for (a, b), want in cases:
        got = bc_mod.interval_distance(a, b)
        assert got == want, f"interval distance {a} vs {b}: got {got}, want {want}"
        got = bc_mod.interval_distance(b, a)
        assert got == want, "interval distance is not symmetric"
    for _ in range(n):
        bar = rand_mod.random_bar(rng)
        assert bc_mod.interval_distance(bar, bar) == 0, "d(J, J) != 0"


def check_bottleneck_oracle(rng: random.Random, n: int):
    for _ in range(n):
        s = rand_mod.random_barcode(rng, max_bars=3)
        t = rand_mod.random_barcode(rng, max_bars=3)
        fast = bc_mod.bottleneck_distance(s, t)
        slow = bc_mod.bottleneck_bruteforce(s, t)
        assert fast == slow, f"bottleneck engine {fast} != brute force {slow} on {s} vs {t}"


def check_pseudometric(rng: random.Random, n: int):
    for _ in range(n):
        s = rand_mod.random_barcode(rng, max_bars=3)
        t = rand_mod.random_barcode(rng, max_bars=3)
        u = rand_mod.random_barcode(rng, max_bars=3)
        assert bc_mod.bottleneck_distance(s, s) == 0, "d_B(S, S) != 0"
        assert bc_mod.bottleneck_distance(s, t) == bc_mod.bottleneck_distance(t, s), \
            "d_B is not symmetric"
        dst, dtu, dsu = (bc_mod.bottleneck_distance(s, t), bc_mod.bottleneck_distance(t, u),
                         bc_mod.bottleneck_distance(s, u))
        if not (is_inf(dst) or is_inf(dtu)):
            assert dsu <= dst + dtu, "d_B violates the triangle inequality"


def check_interleaving_monotone(rng: random.Random, n: int):
    for _ in range(n):
        s = rand_mod.random_barcode(rng, max_bars=3)
        t = rand_mod.random_barcode(rng, max_bars=3)
        e1 = abs(rand_mod.random_fraction(rng))
        e2 = e1 + abs(rand_mod.random_fraction(rng))
        if bc_mod.is_interleaved(s, t, e1):
            assert bc_mod.is_interleaved(s, t, e2), "interleaving feasibility is not monotone"


def check_decompose_roundtrip(rng: random.Random, n: int):
    for _ in range(n):
        bc = rand_mod.random_integer_barcode(rng, max_bars=5, allow_infinite=True)
        mod = per_mod.realize(bc)
        assert per_mod.decompose(mod) == bc, "decompose o realize is not the identity"
        shuffled = rand_mod.conjugate_module(rng, mod)
        assert per_mod.decompose(shuffled) == bc, \
            "barcode is not invariant under change of basis"


def check_shift(rng: random.Random, n: int):
    for _ in range(n):
        bc = rand_mod.random_integer_barcode(rng, max_bars=4, allow_infinite=True)
        mod = per_mod.realize(bc)
        eps = rng.randint(0, 3)
        shifted = per_mod.shift(mod, eps)
        assert per_mod.decompose(shifted) == bc.translate(-eps), \
            "shift does not translate the barcode"


def check_explicit_interleavings(rng: random.Random, n: int):
    for _ in range(n):
        mod = rand_mod.random_module(rng, max_bars=3)
        s = rng.randint(0, 2)
        shifted = per_mod.shift(mod, s)
        lo = min(mod.lo, shifted.lo) - 1
        hi = max(mod.hi, shifted.hi) + 1
        phi = per_mod.NatTransformation(mod, shifted, s, {
            i: mod.map_between(i, i + 2 * s) for i in range(lo, hi + 1)})
        psi = per_mod.NatTransformation(shifted, mod, s, {
            i: Matrix.identity(mod.field, shifted.dim(i)) for i in range(lo, hi + 1)})
        assert per_mod.verify_interleaving(mod, shifted, phi, psi, s), \
            "structure maps fail to interleave M with its shift"
        d = bc_mod.bottleneck_distance(per_mod.decompose(mod), per_mod.decompose(shifted))
        assert d <= s, "verified interleaving does not bound the bottleneck distance"


def check_formality(rng: random.Random, n: int):
    for _ in range(n):
        x = rand_mod.random_pdg(rng, width=rng.randint(2, 5),
                                degrees=rng.randint(2, 5))
        w = dgm_mod.formality_witness(x)
        assert w.verify(), "formality witness maps are not quasi-isomorphisms"


def check_cohI_homology_invariance(rng: random.Random, n: int):
    for _ in range(n):
        x = rand_mod.random_pdg(rng, width=3, degrees=3)
        y = rand_mod.random_pdg(rng, width=3, degrees=3)
        d1 = dgm_mod.d_cohI_persistence(x, y)
        d2 = dgm_mod.d_cohI_persistence(dgm_mod.as_zero_differential(x),
                                        dgm_mod.as_zero_differential(y))
        assert d1 == d2, "d_CohI differs between a module and its homology"


def check_closed_form_ground(rng: random.Random, n: int):
    k_mod = dgku_mod.ground_module()
    for _ in range(n):
        m = rand_mod.random_dgku_zero_diff(rng)
        for k in (0, 1):
            closed = dgku_mod.distance_to_ground(m, k)
            engine = dgku_mod.d_cohI_k(m, k_mod, k)
            assert closed == engine, \
                f"distance-to-ground closed form {closed} != engine {engine} (k={k})"


def check_closed_form_u2(rng: random.Random, n: int):
    u2 = dgku_mod.ku_mod_u2_module()
    for _ in range(n):
        m = rand_mod.random_dgku_zero_diff(rng)
        for k in (0, 1):
            closed = dgku_mod.distance_to_ku_mod_u2(m, k)
            engine = dgku_mod.d_cohI_k(m, u2, k)
            assert closed == engine, \
                f"distance-to-K[u]/(u^2) closed form {closed} != engine {engine} (k={k})"


def check_degree_shift(rng: random.Random, n: int):
    for _ in range(n):
        m = rand_mod.random_dgku(rng, top=4)
        other = rand_mod.random_dgku(rng, top=4)
        d0 = dgku_mod.d_cohI_k(m, other, 0)
        d1 = dgku_mod.d_cohI_k(m, other, 1)
        even = (dgku_mod.regrade(m, 2), dgku_mod.regrade(other, 2))
        assert (dgku_mod.d_cohI_k(*even, 0), dgku_mod.d_cohI_k(*even, 1)) == (d0, d1), \
            "even regrade changed the split distances"
        odd = (dgku_mod.regrade(m, 1), dgku_mod.regrade(other, 1))
        assert (dgku_mod.d_cohI_k(*odd, 0), dgku_mod.d_cohI_k(*odd, 1)) == (d1, d0), \
            "odd regrade failed to swap the split distances"


def check_sub_half(rng: random.Random, n: int):
    for _ in range(n):
        core = rand_mod.random_dgku_zero_diff(rng, top=4)
        m = rand_mod.random_dgku(rng, h_seed=core)
        if rng.random() < 0.5:
            other = rand_mod.random_dgku(rng, h_seed=core)
        else:
            other = rand_mod.random_dgku(rng, top=4)
        for k in (0, 1):
            d = dgku_mod.d_cohI_k(m, other, k)
            if d < Fraction(1, 2):
                bm = dgku_mod.split_barcode(m, k)
                bo = dgku_mod.split_barcode(other, k)
                assert bm == bo, \
                    f"d^{k} = {d} < 1/2 but split barcodes differ: {bm} vs {bo}"


def check_cup_sandwich(rng: random.Random, n: int):
    for _ in range(n):
        m = rand_mod.random_dgku(rng, top=4)
        other = rand_mod.random_dgku(rng, top=4)
        for k in (0, 1):
            lower, upper = dgku_mod.cup_bounds(m, other, k)
            d = dgku_mod.d_cohI_k(m, other, k)
            assert d <= upper, f"d^{k} = {d} exceeds the cup upper bound {upper}"
            if lower is not None:
                assert lower <= d, f"d^{k} = {d} is below the cup lower bound {lower}"


def check_totalize(rng: random.Random, n: int):
    for _ in range(n):
        filtered = rand_mod.random_filtered(rng)
        tot = dgku_mod.totalize(filtered)
        assert per_mod.decompose(tot) == per_mod.decompose(filtered.module), \
            "totalization changed the barcode"


def check_e2_oracle(rng: random.Random, n: int):
    import itertools
    for _ in range(n):
        f1 = dgku_mod.FiberSignature(tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 5))))
        f2 = dgku_mod.FiberSignature(tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 5))))
        for k in (0, 1):
            fast = dgku_mod.e2_collapse_distance(f1, f2, k)
            a, b = f1.multiset(k), f2.multiset(k)
            if len(a) != len(b):
                assert is_inf(fast), "cardinality mismatch must give +inf"
                continue
            if not a:
                assert fast == 0
                continue
            slow = min(max(abs(x - y) for x, y in zip(a, perm))
                       for perm in itertools.permutations(b))
            assert fast == Fraction(slow), \
                f"sorted pairing {fast} != brute-force assignment {slow}"


_EXPECTED_BARCODES = {
    ("m", 0, 0): "{[0,4), [3,7)}",
    ("m", 0, 1): "{[1,5), [1,5)}",
    ("m", 1, 0): "{[0,7), [3,4)}",
    ("m", 1, 1): "{[1,5), [1,5)}",
}


def _split(model, k, trunc=None):
    return dgku_mod.split_barcode(cdga_mod.to_dgku(model, trunc), k)


def check_catalogue(rng: random.Random, n: int):
    F = Fraction
    for j in (0, 1):
        for k in (0, 1):
            got = _split(cdga_mod.builtin("m", j=j), k)
            want = _EXPECTED_BARCODES[("m", j, k)]
            assert repr(got) == want, f"m({j}) split {k}: got {got}, want {want}"
    for nn in (1, 3, 4):
        got = _split(cdga_mod.builtin("cp", n=nn, j=1), 0)
        assert got == Barcode([Bar(F(0), F(nn + 1))]), f"cp({nn},1) barcode wrong: {got}"
        got = _split(cdga_mod.builtin("cp", n=nn, j=0), 0)
        assert got == Barcode([Bar(F(i), F(i + 1)) for i in range(nn + 1)]), \
            f"cp({nn},0) barcode wrong: {got}"
        assert _split(cdga_mod.builtin("cp", n=nn, j=1), 1) == Barcode(), \
            "cp odd split should be empty"
    assert _split(cdga_mod.builtin("pt"), 0) == Barcode([Bar(F(0), F(1))])
    assert _split(cdga_mod.builtin("pt"), 1) == Barcode()
    first = _split(cdga_mod.builtin("x_a", a=F(1)), 0)
    for a in (F(-1), F(2), F(1, 3)):
        assert _split(cdga_mod.builtin("x_a", a=a), 0) == first, \
            "x_a even barcode depends on a"
    h0 = dgku_mod.cohomology_ku(cdga_mod.to_dgku(cdga_mod.builtin("m", j=0)))
    h1 = dgku_mod.cohomology_ku(cdga_mod.to_dgku(cdga_mod.builtin("m", j=1)))
    assert dgku_mod.cup_k(h0, 0) == 3, "cup^0(m(0)) != 3"
    assert dgku_mod.cup_k(h1, 0) == 6, "cup^0(m(1)) != 6"
    # torsion orders of m(1): S^0 gives (7, 1), S^1 gives (4, 4)
    s0 = sorted((int(b.length) for b in _split(cdga_mod.builtin("m", j=1), 0)), reverse=True)
    s1 = sorted((int(b.length) for b in _split(cdga_mod.builtin("m", j=1), 1)), reverse=True)
    assert s0 == [7, 1], f"m(1) even torsion orders {s0} != [7, 1]"
    assert s1 == [4, 4], f"m(1) odd torsion orders {s1} != [4, 4]"


def _model_dgku(name, **kw):
    return cdga_mod.to_dgku(cdga_mod.builtin(name, **kw))


def check_tetrahedron(rng: random.Random, n: int):
    F = Fraction
    pt = _model_dgku("pt")
    cp1 = _model_dgku("cp", n=1, j=1)
    m0 = _model_dgku("m", j=0)
    m1 = _model_dgku("m", j=1)
    want = {
        ("pt", "cp1"): F(1), ("pt", "m0"): F(2), ("pt", "m1"): F(7, 2),
        ("cp1", "m0"): F(2), ("cp1", "m1"): F(7, 2), ("m0", "m1"): F(3),
    }
    mods = {"pt": pt, "cp1": cp1, "m0": m0, "m1": m1}
    for (a, b), expect in want.items():
        got = dgku_mod.d_cohI(mods[a], mods[b])
        assert got == expect, f"tetrahedron edge d({a},{b}) = {got}, want {expect}"


def check_cp_tables(rng: random.Random, n: int):
    F = Fraction
    top = max(2, n)
    b1 = {m: dgku_mod.split_barcode(_model_dgku("cp", n=m, j=1), 0)
          for m in range(1, top + 1)}
    b0 = {m: dgku_mod.split_barcode(_model_dgku("cp", n=m, j=0), 0)
          for m in range(1, top + 1)}
    for nn in range(1, top + 1):
        for mm in range(1, top + 1):
            got = bc_mod.bottleneck_distance(b1[nn], b1[mm])
            want = min(F(abs(nn - mm)), max(F(mm + 1, 2), F(nn + 1, 2)))
            assert got == want, f"CP f1 table ({nn},{mm}): {got} != {want}"
            got = bc_mod.bottleneck_distance(b0[nn], b0[mm])
            want = F(0) if nn == mm else F(1, 2)
            assert got == want, f"CP f0 table ({nn},{mm}): {got} != {want}"
        got = bc_mod.bottleneck_distance(b0[nn], b1[nn])
        want = F(-(-nn // 2))
        assert got == want, f"CP f0-vs-f1 at n={nn}: {got} != ceil(n/2) = {want}"


def _mcp_expected(j: int, n: int) -> Fraction:
    F = Fraction
    if j == 0:
        if n <= 5:
            return F(2)
        if n <= 9:
            return F(3)
        if n <= 13:
            return F(n - 6)
        return F(n + 1, 2)
    if n <= 2:
        return F(7, 2)
    if n <= 5:
        return F(6 - n)
    if n == 6:
        return F(1, 2)
    if n <= 13:
        return F(n - 6)
    return F(n + 1, 2)


def check_mcp_tables(rng: random.Random, n: int):
    top = max(1, n)
    bm = {j: dgku_mod.split_barcode(_model_dgku("m", j=j), 0) for j in (0, 1)}
    bm1 = {j: dgku_mod.split_barcode(_model_dgku("m", j=j), 1) for j in (0, 1)}
    for nn in range(1, top + 1):
        cp = _model_dgku("cp", n=nn, j=1)
        b_cp0 = dgku_mod.split_barcode(cp, 0)
        b_cp1 = dgku_mod.split_barcode(cp, 1)
        for j in (0, 1):
            got = bc_mod.bottleneck_distance(bm[j], b_cp0)
            want = _mcp_expected(j, nn)
            assert got == want, f"M{j} vs CP^{nn}: d0 = {got}, want {want}"
            got1 = bc_mod.bottleneck_distance(bm1[j], b_cp1)
            assert got1 == 2, f"M{j} vs CP^{nn}: d1 = {got1}, want 2"


def check_x_a_family(rng: random.Random, n: int):
    F = Fraction
    mods = [_model_dgku("x_a", a=a) for a in (F(1), F(-1), F(2), F(1, 3))]
    for i, a in enumerate(mods):
        for b in mods[i:]:
            assert dgku_mod.d_cohI(a, b) == 0, "x_a family is not at distance zero"


def check_infinite_separation(rng: random.Random, n: int):
    loop = dgku_mod.loop_shape_module([(0, 2)])
    xa = _model_dgku("x_a", a=Fraction(1))
    assert is_inf(dgku_mod.d_cohI(xa, loop)), \
        "distance between a finite model and an infinite-bar module must be +inf"
    for _ in range(max(1, n // 4)):
        fin = rand_mod.random_dgku(rng, top=4)
        assert is_inf(dgku_mod.d_cohI_k(fin, loop, 0)), \
            "even split with unmatched infinite bar must be +inf"


def check_loop_shape(rng: random.Random, n: int):
    h1 = dgku_mod.cohomology_ku(dgku_mod.loop_shape_module([(0, 2)]))
    h2 = dgku_mod.cohomology_ku(dgku_mod.loop_shape_module([(0, 5)]))
    h3 = dgku_mod.cohomology_ku(dgku_mod.loop_shape_module([(0, 2)]))
    assert dgku_mod.loop_shape_distance(h1, h2) == Fraction(1, 2)
    assert dgku_mod.loop_shape_distance(h1, h3) == 0
    bad = dgku_mod.cohomology_ku(rand_mod.random_dgku_zero_diff(rng, top=3))
    try:
        dgku_mod.loop_shape_distance(h1, bad)
    except ValueError as exc:
        assert "BV-exact" in str(exc)
    else:
        raise AssertionError("loop shape gate accepted a non-BV-exact module")


CHECKS: Dict[str, Tuple[Callable, int, int]] = {
    "rational-laws": (check_rational_laws, 50, 200),
    "linear-algebra": (check_linear_algebra, 30, 120),
    "interval-distance": (check_interval_cases, 20, 50),
    "bottleneck-oracle": (check_bottleneck_oracle, 60, 300),
    "pseudometric": (check_pseudometric, 40, 150),
    "interleaving-monotone": (check_interleaving_monotone, 40, 150),
    "decompose-roundtrip": (check_decompose_roundtrip, 20, 60),
    "shift": (check_shift, 20, 60),
    "explicit-interleavings": (check_explicit_interleavings, 10, 30),
    "formality": (check_formality, 20, 100),
    "cohI-homology-invariance": (check_cohI_homology_invariance, 10, 40),
    "closed-form-ground": (check_closed_form_ground, 60, 200),
    "closed-form-u2": (check_closed_form_u2, 60, 200),
    "degree-shift": (check_degree_shift, 10, 40),
    "sub-half": (check_sub_half, 15, 60),
    "cup-sandwich": (check_cup_sandwich, 15, 60),
    "totalize": (check_totalize, 20, 100),
    "e2-collapse-oracle": (check_e2_oracle, 30, 120),
    "catalogue": (check_catalogue, 1, 1),
    "tetrahedron": (check_tetrahedron, 1, 1),
    "cp-tables": (check_cp_tables, 6, 12),
    "mcp-tables": (check_mcp_tables, 8, 20),
    "x-a-family": (check_x_a_family, 1, 1),
    "infinite-separation": (check_infinite_separation, 4, 12),
    "loop-shape": (check_loop_shape, 1, 1),
}


def run_suite(suite: str, seed: int = 0) -> List[Tuple[str, bool, str]]:
    if suite not in ("fast", "full"):
        raise ValueError("suite must be 'fast' or 'full'")
    results = []
    for name, (func, fast_n, full_n) in CHECKS.items():
        n = fast_n if suite == "fast" else full_n
        rng = random.Random(f"{seed}:{name}")
        try:
            func(rng, n)
            results.append((name, True, ""))
        except AssertionError as exc:
            results.append((name, False, str(exc)))
    return results
