"""Acceptance suite: one test per criterion, exact equality throughout.

Arithmetic is exact rational, so every tolerance is zero.  Each test
prints a single PASS/FAIL line naming its criterion.
"""

import io
import itertools
import json
import random
from fractions import Fraction as F

import pytest

from cohint import checks
from cohint.barcode import Bar, Barcode, bottleneck_bruteforce, bottleneck_distance
from cohint.cdga import builtin, to_dgku
from cohint.cli import main as cli_main
from cohint.dgku import (FilteredKtModule, cup_bounds, cup_k, cohomology_ku,
                         d_cohI, d_cohI_k, distance_to_ground,
                         distance_to_ku_mod_u2, ground_module,
                         ku_mod_u2_module, loop_shape_distance,
                         loop_shape_module, regrade, split_barcode,
                         split_even_odd, totalize)
from cohint.dgmodule import formality_witness
from cohint.exact import Matrix, QQ, is_inf
from cohint.jsonio import dgku_to_json
from cohint.persistence import PersistenceModule, decompose
from cohint.rand import (random_barcode, random_dgku, random_dgku_zero_diff,
                         random_filtered, random_pdg)


def report(name):
    def deco(fn):
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"FAIL {name}")
                raise
            print(f"PASS {name}")
        wrapper.__name__ = fn.__name__
        return wrapper
    return deco


def run_cli(*argv):
    out = io.StringIO()
    code = cli_main(list(argv), out)
    return code, out.getvalue()


@report("criterion-01 tetrahedron distances")
def test_criterion_01_tetrahedron():
    expected = {
        ("pt", "cp:1:1"): "1",
        ("pt", "m:0"): "2",
        ("pt", "m:1"): "7/2",
        ("cp:1:1", "m:0"): "2",
        ("cp:1:1", "m:1"): "7/2",
        ("m:0", "m:1"): "3",
    }
    for (a, b), want in expected.items():
        code, text = run_cli("dist", a, b)
        assert code == 0
        got = text.strip().split("d=")[1]
        assert got == want, f"dist {a} {b}: got {got}, want {want}"


@report("criterion-02 CP tables, 1 <= n, m <= 12")
def test_criterion_02_cp_tables():
    top = 12
    b1 = {n: split_barcode(to_dgku(builtin("cp", n=n, j=1)), 0) for n in range(1, top + 1)}
    b0 = {n: split_barcode(to_dgku(builtin("cp", n=n, j=0)), 0) for n in range(1, top + 1)}
    for n in range(1, top + 1):
        for m in range(1, top + 1):
            want = min(F(abs(n - m)), max(F(m + 1, 2), F(n + 1, 2)))
            assert bottleneck_distance(b1[n], b1[m]) == want
            want = F(0) if n == m else F(1, 2)
            assert bottleneck_distance(b0[n], b0[m]) == want
        assert bottleneck_distance(b0[n], b1[n]) == F(-(-n // 2))


@report("criterion-03 M-vs-CP case tables, 1 <= n <= 20, d1 = 2")
def test_criterion_03_mcp_tables():
    def expected(j, n):
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

    even = {j: split_barcode(to_dgku(builtin("m", j=j)), 0) for j in (0, 1)}
    odd = {j: split_barcode(to_dgku(builtin("m", j=j)), 1) for j in (0, 1)}
    for n in range(1, 21):
        cp = to_dgku(builtin("cp", n=n, j=1))
        cp_even = split_barcode(cp, 0)
        cp_odd = split_barcode(cp, 1)
        for j in (0, 1):
            assert bottleneck_distance(even[j], cp_even) == expected(j, n), (j, n)
            assert bottleneck_distance(odd[j], cp_odd) == F(2), (j, n)


@report("criterion-04 model cohomology regression")
def test_criterion_04_model_regression():
    m1 = to_dgku(builtin("m", j=1))   # shipped truncation degree is 16
    assert m1.D == 16
    s0 = sorted((int(b.length) for b in split_barcode(m1, 0)), reverse=True)
    s1 = sorted((int(b.length) for b in split_barcode(m1, 1)), reverse=True)
    assert s0 == [7, 1], f"S0 torsion orders {s0} != (7, 1)"
    assert s1 == [4, 4], f"S1 torsion orders {s1} != (4, 4)"
    assert cup_k(cohomology_ku(to_dgku(builtin("m", j=0))), 0) == 3
    assert cup_k(cohomology_ku(m1), 0) == 6


@report("criterion-05 closed forms equal engine on 200 random modules")
def test_criterion_05_closed_forms():
    rng = random.Random(505)
    k_mod = ground_module()
    u2 = ku_mod_u2_module()
    for _ in range(200):
        m = random_dgku_zero_diff(rng)
        for k in (0, 1):
            assert distance_to_ground(m, k) == d_cohI_k(m, k_mod, k)
            assert distance_to_ku_mod_u2(m, k) == d_cohI_k(m, u2, k)


@report("criterion-06 isometry oracle on 300 random barcode pairs")
def test_criterion_06_bottleneck_oracle():
    rng = random.Random(606)
    for _ in range(300):
        s = random_barcode(rng, max_bars=3)
        t = random_barcode(rng, max_bars=3)
        assert len(s) + len(t) <= 6
        assert bottleneck_distance(s, t) == bottleneck_bruteforce(s, t)


@report("criterion-07 formality witness on 100 random persistence dg modules")
def test_criterion_07_formality():
    rng = random.Random(707)
    for _ in range(100):
        x = random_pdg(rng, width=rng.randint(2, 5), degrees=rng.randint(2, 5),
                       max_pieces=4)
        assert formality_witness(x).verify()


@report("criterion-08 totalization on 100 random filtrations plus M1 E-infinity")
def test_criterion_08_totalize():
    rng = random.Random(808)
    for _ in range(100):
        filtered = random_filtered(rng)
        assert decompose(totalize(filtered)) == decompose(filtered.module)

    # the collapsed weight spectral sequence of the second m-model:
    # even part Q[u]/(u^7){1} + Q[u]/(u){xy}, odd part Q[u]/(u^4){x, y},
    # filtered by u-weight
    def filtered_split(dim_list, alive_slots):
        maps = []
        for i in range(len(dim_list) - 1):
            data = [[F(0)] * dim_list[i] for _ in range(dim_list[i + 1])]
            nxt = [s for s, _ in alive_slots[i + 1]]
            for col, (slot, _) in enumerate(alive_slots[i]):
                if slot in nxt:
                    data[nxt.index(slot)][col] = F(1)
            maps.append(Matrix(QQ, dim_list[i + 1], dim_list[i], tuple(map(tuple, data))))
        mod = PersistenceModule(0, len(dim_list) - 1, tuple(dim_list), tuple(maps),
                                "zero", QQ)
        filtration = {}
        for i, alive in enumerate(alive_slots):
            levels = []
            for p in range(1, i + 1):
                vecs = []
                for pos, (_, w) in enumerate(alive):
                    if w >= p:
                        e = [F(0)] * len(alive)
                        e[pos] = F(1)
                        vecs.append(tuple(e))
                levels.append(vecs)
            filtration[i] = levels
        return FilteredKtModule(mod, filtration)

    m1 = to_dgku(builtin("m", j=1))
    even = filtered_split(
        [1, 1, 1, 2, 1, 1, 1],
        [[(0, 0)], [(0, 1)], [(0, 2)], [(0, 3), (1, 0)], [(0, 4)], [(0, 5)], [(0, 6)]])
    odd = filtered_split(
        [0, 2, 2, 2, 2],
        [[], [(0, 0), (1, 0)], [(0, 1), (1, 1)], [(0, 2), (1, 2)], [(0, 3), (1, 3)]])
    assert decompose(totalize(even)) == split_barcode(m1, 0)
    assert decompose(totalize(odd)) == split_barcode(m1, 1)


@report("criterion-09 sub-half criterion on random pairs")
def test_criterion_09_sub_half():
    rng = random.Random(909)
    hits = 0
    for _ in range(60):
        core = random_dgku_zero_diff(rng, top=4)
        m = random_dgku(rng, h_seed=core)
        other = random_dgku(rng, h_seed=core) if rng.random() < 0.5 \
            else random_dgku(rng, top=4)
        for k in (0, 1):
            d = d_cohI_k(m, other, k)
            if d < F(1, 2):
                hits += 1
                assert split_barcode(m, k) == split_barcode(other, k)
    assert hits > 0, "no sub-half pairs sampled; criterion not exercised"


@report("criterion-10 cup bounds sandwich plus the appendix chain")
def test_criterion_10_cup_bounds():
    rng = random.Random(1010)
    checked = 0
    for _ in range(60):
        m = random_dgku(rng, top=4)
        other = random_dgku(rng, top=4)
        for k in (0, 1):
            lower, upper = cup_bounds(m, other, k)
            d = d_cohI_k(m, other, k)
            assert d <= upper
            if lower is not None:
                assert lower <= d
                checked += 1
    assert checked > 0

    m0 = to_dgku(builtin("m", j=0))
    m1 = to_dgku(builtin("m", j=1))
    cp6 = to_dgku(builtin("cp", n=6, j=1))
    # |d(M0, CP^6) - d(M1, CP^6)| = 3 - 1/2 < d(M0, M1) = 3 < 7/2 = cup bound
    gap = abs(d_cohI_k(m0, cp6, 0) - d_cohI_k(m1, cp6, 0))
    assert gap == F(3) - F(1, 2)
    d01 = d_cohI_k(m0, m1, 0)
    lower, upper = cup_bounds(m0, m1, 0)
    assert (lower, upper) == (F(3, 2), F(7, 2))
    assert gap < d01 < upper
    assert d01 == F(3)


@report("criterion-11 infinite separation and loop-shape dichotomy")
def test_criterion_11_infinite(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("loop")
    loop = loop_shape_module([(0, 2)])
    path = tmp / "loop.json"
    path.write_text(json.dumps(dgku_to_json(loop)))
    code, text = run_cli("dist", f"@{path}", "x_a:1")
    assert code == 0 and text.strip().endswith("d=inf")
    for a in ("1", "-1", "2", "1/3"):
        xa = to_dgku(builtin("x_a", a=F(a)))
        assert is_inf(d_cohI(xa, loop))
    shapes = [loop_shape_module([(0, 2)]), loop_shape_module([(0, 5)]),
              loop_shape_module([(0, 2), (1, 1)]), loop_shape_module([])]
    for s1 in shapes:
        for s2 in shapes:
            d = loop_shape_distance(cohomology_ku(s1), cohomology_ku(s2))
            assert d in (F(0), F(1, 2))
            assert (d == 0) == (s1.dims == s2.dims and s1.u == s2.u)


@report("criterion-12 x_a family is pairwise at distance zero")
def test_criterion_12_x_a_family():
    mods = [to_dgku(builtin("x_a", a=a)) for a in (F(1), F(-1), F(2), F(1, 3))]
    for a, b in itertools.combinations_with_replacement(mods, 2):
        assert d_cohI(a, b) == 0


@report("criterion-13 degree-shift invariance on random modules")
def test_criterion_13_degree_shift():
    rng = random.Random(1313)
    for _ in range(25):
        m = random_dgku(rng, top=4)
        n = random_dgku(rng, top=4)
        d0, d1 = d_cohI_k(m, n, 0), d_cohI_k(m, n, 1)
        for shift in (2, 4):
            a, b = regrade(m, shift), regrade(n, shift)
            assert (d_cohI_k(a, b, 0), d_cohI_k(a, b, 1)) == (d0, d1)
        for shift in (1, 3):
            a, b = regrade(m, shift), regrade(n, shift)
            assert (d_cohI_k(a, b, 0), d_cohI_k(a, b, 1)) == (d1, d0)
