"""Persistence module tests: rank invariant, decomposition, interleavings."""

import random
from fractions import Fraction as F

import pytest

from cohint.barcode import Bar, Barcode, bottleneck_distance
from cohint.exact import INF, Matrix, QQ
from cohint.persistence import (NatTransformation, PersistenceModule,
                                decompose, rank_invariant, realize, shift,
                                verify_interleaving)
from cohint.rand import conjugate_module, random_integer_barcode, random_matrix


def interval(left, right):
    return realize(Barcode([Bar(F(left), right if right is INF else F(right))]))


def test_rank_invariant_interval():
    m = interval(0, 3)
    assert rank_invariant(m, 0, 2) == 1
    assert rank_invariant(m, 0, 3) == 0
    assert rank_invariant(m, 1, 1) == 1
    with pytest.raises(ValueError):
        rank_invariant(m, 2, 1)


def test_rank_invariant_iso_tail():
    m = interval(2, INF)
    assert m.right_tail == "iso"
    assert rank_invariant(m, 2, 100) == 1
    assert rank_invariant(m, 1, 100) == 0


def test_decompose_round_trip():
    bc = Barcode([Bar(F(0), F(4)), Bar(F(3), F(7))])
    assert decompose(realize(bc)) == bc


def test_decompose_paper_module():
    # Q[t]/(t^4) + shifted copy born at 3, written down directly
    dims = (1, 1, 1, 2, 1, 1, 1)
    maps = []
    for i in range(6):
        rows = dims[i + 1]
        cols = dims[i]
        data = [[F(0)] * cols for _ in range(rows)]
        if i < 3:
            data[0][0] = F(1)
        if i == 3:
            data[0][1] = F(1)
        if i > 3:
            data[0][0] = F(1)
        maps.append(Matrix(QQ, rows, cols, tuple(map(tuple, data))))
    m = PersistenceModule(0, 6, dims, tuple(maps), "zero", QQ)
    assert decompose(m) == Barcode([Bar(F(0), F(4)), Bar(F(3), F(7))])


def test_decompose_random_conjugated():
    rng = random.Random(99)
    for _ in range(30):
        bc = random_integer_barcode(rng, max_bars=5, allow_infinite=True)
        mod = conjugate_module(rng, realize(bc))
        assert decompose(mod) == bc


def test_shift_examples():
    m = interval(3, 7)
    assert decompose(shift(m, 3)) == Barcode([Bar(F(0), F(4))])
    assert shift(m, 0) == m
    m2 = interval(2, INF)
    assert decompose(shift(m2, 5)) == Barcode([Bar(F(-3), INF)])
    with pytest.raises(ValueError):
        shift(m, -1)


def test_iso_tail_requires_invertible_edge():
    with pytest.raises(ValueError, match="invertible"):
        PersistenceModule(0, 1, (2, 1), (Matrix.from_rows(QQ, [[1, 0]]),), "iso", QQ)


def test_verify_identity_interleaving():
    m = realize(Barcode([Bar(F(0), F(4)), Bar(F(3), F(7))]))
    ident = {i: Matrix.identity(QQ, m.dim(i)) for i in range(m.lo - 1, m.hi + 2)}
    phi = NatTransformation(m, m, 0, ident)
    assert verify_interleaving(m, m, phi, phi, 0)


def _m0_m1_modules():
    m0 = realize(Barcode([Bar(F(0), F(4)), Bar(F(3), F(7))]))
    m1 = realize(Barcode([Bar(F(0), F(7)), Bar(F(3), F(4))]))
    return m0, m1


def _basis_order(bc):
    # realize() lists bars in sorted order; map each index to its alive bars
    return sorted(bc, key=Bar.sort_key)


def test_explicit_three_interleaving():
    # phi sends [0,4) identically into [0,7); psi projects [0,7) onto [0,4)
    # at the single index where the target is alive; all else is zero.
    m0, m1 = _m0_m1_modules()
    phi_comps = {}
    psi_comps = {}
    bars0 = _basis_order(decompose(m0))
    bars1 = _basis_order(decompose(m1))

    def alive(bar, i):
        return bar.left <= i and (not bar.finite or i < bar.right)

    for i in range(-1, 9):
        src = [b for b in bars0 if alive(b, i)]
        tgt = [b for b in bars1 if alive(b, i + 3)]
        data = [[F(1) if (s.left == 0 and t.left == 0) else F(0) for s in src]
                for t in tgt]
        phi_comps[i] = Matrix(QQ, len(tgt), len(src), tuple(map(tuple, data)))
        src = [b for b in bars1 if alive(b, i)]
        tgt = [b for b in bars0 if alive(b, i + 3)]
        data = [[F(1) if (s.left == 0 and t.left == 0) else F(0) for s in src]
                for t in tgt]
        psi_comps[i] = Matrix(QQ, len(tgt), len(src), tuple(map(tuple, data)))

    phi = NatTransformation(m0, m1, 3, phi_comps)
    psi = NatTransformation(m1, m0, 3, psi_comps)
    assert verify_interleaving(m0, m1, phi, psi, 3)
    assert bottleneck_distance(decompose(m0), decompose(m1)) <= 3


def test_no_two_interleaving_random_search():
    m0, m1 = _m0_m1_modules()
    rng = random.Random(424242)
    for _ in range(200):
        phi_comps = {}
        psi_comps = {}
        for i in range(-1, 9):
            phi_comps[i] = random_matrix(rng, QQ, m1.dim(i + 2), m0.dim(i), span=2)
            psi_comps[i] = random_matrix(rng, QQ, m0.dim(i + 2), m1.dim(i), span=2)
        phi = NatTransformation(m0, m1, 2, phi_comps)
        psi = NatTransformation(m1, m0, 2, psi_comps)
        assert not verify_interleaving(m0, m1, phi, psi, 2)


def test_interleaving_bounds_bottleneck():
    rng = random.Random(5)
    from cohint.rand import random_module
    for _ in range(25):
        m = random_module(rng, max_bars=3)
        s = rng.randint(0, 2)
        shifted = shift(m, s)
        lo, hi = min(m.lo, shifted.lo) - 1, max(m.hi, shifted.hi) + 1
        phi = NatTransformation(m, shifted, s,
                                {i: m.map_between(i, i + 2 * s) for i in range(lo, hi + 1)})
        psi = NatTransformation(shifted, m, s,
                                {i: Matrix.identity(QQ, shifted.dim(i)) for i in range(lo, hi + 1)})
        assert verify_interleaving(m, shifted, phi, psi, s)
        assert bottleneck_distance(decompose(m), decompose(shifted)) <= s


def test_realize_requires_integer_endpoints():
    with pytest.raises(ValueError, match="integer"):
        realize(Barcode([Bar(F(1, 2), F(3, 2))]))
