"""Persistence dg module tests: homology, d_CohI, constructive formality."""

import random
from fractions import Fraction as F

import pytest

from cohint.barcode import Bar, Barcode
from cohint.cdga import builtin, to_dgku
from cohint.dgmodule import (PersistenceDgModule, as_zero_differential,
                             d_cohI_persistence, formality_witness,
                             from_dgku_window, homology, homology_barcodes)
from cohint.exact import Matrix, QQ
from cohint.persistence import decompose
from cohint.rand import random_pdg


def _interval_pdg(degree, b, e, width):
    """chi_[b, e) concentrated in one cohomological degree."""
    dims = {(i, degree): 1 for i in range(b, e)}
    t = {(i, degree): Matrix.identity(QQ, 1) for i in range(b, e - 1)}
    return PersistenceDgModule(0, width - 1, 0, max(degree, 1), dims, {}, t, QQ)


def test_homology_zero_differential():
    x = _interval_pdg(0, 1, 3, 4)
    hs = homology(x)
    assert decompose(hs[0]) == Barcode([Bar(F(1), F(3))])
    assert decompose(hs[1]) == Barcode()


def test_homology_acyclic_cone():
    dims = {(0, 0): 1, (0, 1): 1}
    d = {(0, 0): Matrix.identity(QQ, 1)}
    x = PersistenceDgModule(0, 0, 0, 1, dims, d, {}, QQ)
    hs = homology(x)
    assert all(decompose(m) == Barcode() for m in hs.values())


def test_validate_rejects_bad_differential():
    dims = {(0, 0): 1, (0, 1): 1, (0, 2): 1}
    d = {(0, 0): Matrix.identity(QQ, 1), (0, 1): Matrix.identity(QQ, 1)}
    x = PersistenceDgModule(0, 0, 0, 2, dims, d, {}, QQ)
    with pytest.raises(ValueError, match="d o d"):
        x.validate()


def test_validate_rejects_noncommuting_structure():
    dims = {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    d = {(0, 0): Matrix.identity(QQ, 1), (1, 0): Matrix.identity(QQ, 1)}
    t = {(0, 0): Matrix.identity(QQ, 1), (0, 1): Matrix.zeros(QQ, 1, 1)}
    x = PersistenceDgModule(0, 1, 0, 1, dims, d, t, QQ)
    with pytest.raises(ValueError, match="t o d"):
        x.validate()


def test_m_model_rows_through_functor():
    # even row of C(M_j) reproduces the even split barcode
    m0 = to_dgku(builtin("m", j=0))
    m1 = to_dgku(builtin("m", j=1))
    x0 = from_dgku_window(m0, 0, 7, -1, 1).validate()
    x1 = from_dgku_window(m1, 0, 7, -1, 1).validate()
    assert homology_barcodes(x0)[0] == Barcode([Bar(F(0), F(4)), Bar(F(3), F(7))])
    assert homology_barcodes(x1)[0] == Barcode([Bar(F(0), F(7)), Bar(F(3), F(4))])
    assert d_cohI_persistence(x0, x1) == F(3)


def test_d_cohI_persistence_trivial_cases():
    x = _interval_pdg(0, 0, 3, 4)
    assert d_cohI_persistence(x, x) == 0
    y = _interval_pdg(0, 1, 3, 4)
    assert d_cohI_persistence(x, y) == 1


def test_d_cohI_equals_zero_differential_form():
    rng = random.Random(31337)
    for _ in range(20):
        x = random_pdg(rng, width=3, degrees=3)
        y = random_pdg(rng, width=3, degrees=3)
        assert d_cohI_persistence(x, y) == \
            d_cohI_persistence(as_zero_differential(x), as_zero_differential(y))


def test_formality_zero_differential():
    x = _interval_pdg(0, 0, 3, 4)
    w = formality_witness(x)
    assert w.verify()
    # no relations are needed: F1 is empty, so Q has no extra cells
    assert all(w.q.dim(i, n) == x.dim(i, n) or x.dim(i, n) == 0
               for i in range(x.ilo, x.ihi + 1)
               for n in range(x.nlo, x.nhi + 1))


def test_formality_acyclic_column():
    dims = {(0, 0): 1, (0, 1): 1}
    d = {(0, 0): Matrix.identity(QQ, 1)}
    x = PersistenceDgModule(0, 0, 0, 1, dims, d, {}, QQ)
    w = formality_witness(x)
    assert w.verify()


def test_formality_random():
    rng = random.Random(2718281)
    for _ in range(30):
        x = random_pdg(rng, width=rng.randint(2, 4), degrees=rng.randint(2, 4))
        assert formality_witness(x).verify()


def test_formality_witness_f1_kills_kernel():
    # interval that dies inside the window forces a relation generator
    x = _interval_pdg(0, 0, 2, 4)
    w = formality_witness(x)
    assert w.verify()
    total_q = sum(w.q.dim(i, n) for i in range(w.q.ilo, w.q.ihi + 1)
                  for n in range(w.q.nlo, w.q.nhi + 1))
    total_x = sum(x.dim(i, n) for i in range(x.ilo, x.ihi + 1)
                  for n in range(x.nlo, x.nhi + 1))
    assert total_q > total_x
