"""JSON serialization for barcodes, modules, and models.

Rationals travel as strings "p/q" (or "p"); +inf as "inf".  Matrices are
nested row-major arrays whose shapes are recovered from the surrounding
dimension data.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional

from .barcode import Bar, Barcode
from .cdga import FreeCdga
from .dgku import DgKuModule, FilteredKtModule, Tail
from .dgmodule import PersistenceDgModule
from .exact import (Field, Matrix, QQ, format_ext, format_rational, is_inf,
                    parse_ext, parse_rational)
from .persistence import PersistenceModule


def barcode_to_json(bc: Barcode) -> list:
    return [[format_rational(b.left), format_ext(b.right)] for b in bc]


def barcode_from_json(data) -> Barcode:
    bars = []
    for item in data:
        if len(item) != 2:
            raise ValueError("a bar is a two-element array [left, right]")
        left, right = item
        if str(left).strip() in ("inf", "+inf"):
            raise ValueError("bars must have a finite left endpoint")
        bars.append(Bar(parse_rational(str(left)), parse_ext(str(right))))
    return Barcode(bars)


def _mat_to_json(m: Matrix) -> list:
    return [[format_rational(Fraction(x)) if m.field == QQ else str(x) for x in row]
            for row in m.entries]


def _mat_from_json(fld: Field, rows, nrows: int, ncols: int) -> Matrix:
    if not rows:
        return Matrix.zeros(fld, nrows, ncols)
    m = Matrix.from_rows(fld, [[fld.coerce(Fraction(str(x))) for x in row] for row in rows])
    if (m.rows, m.cols) != (nrows, ncols):
        raise ValueError(f"matrix shape {m.rows}x{m.cols} does not match expected {nrows}x{ncols}")
    return m


def module_to_json(m: PersistenceModule) -> dict:
    return {
        "window": [m.lo, m.hi],
        "dims": list(m.dims),
        "maps": [_mat_to_json(x) for x in m.maps],
        "tail": m.right_tail,
    }


def module_from_json(data: dict, fld: Field = QQ) -> PersistenceModule:
    lo, hi = data["window"]
    dims = tuple(int(x) for x in data["dims"])
    maps = []
    for idx, rows in enumerate(data.get("maps", [])):
        maps.append(_mat_from_json(fld, rows, dims[idx + 1], dims[idx]))
    return PersistenceModule(lo, hi, dims, tuple(maps), data.get("tail", "zero"), fld)


def pdg_to_json(x: PersistenceDgModule) -> dict:
    dims = [[x.dim(i, n) for n in range(x.nlo, x.nhi + 1)]
            for i in range(x.ilo, x.ihi + 1)]
    d = {f"{i},{n}": _mat_to_json(m) for (i, n), m in x.d.items() if not m.is_zero()}
    t = {f"{i},{n}": _mat_to_json(m) for (i, n), m in x.t.items() if not m.is_zero()}
    return {"window": [x.ilo, x.ihi], "degrees": [x.nlo, x.nhi],
            "dims": dims, "differential": d, "maps": t}


def pdg_from_json(data: dict, fld: Field = QQ) -> PersistenceDgModule:
    ilo, ihi = data["window"]
    nlo, nhi = data["degrees"]
    dims = {}
    for i0, row in enumerate(data["dims"]):
        for n0, dim in enumerate(row):
            if dim:
                dims[(ilo + i0, nlo + n0)] = int(dim)

    def get(d, i, n):
        return d.get((i, n), 0)

    d = {}
    for key, rows in data.get("differential", {}).items():
        i, n = (int(v) for v in key.split(","))
        d[(i, n)] = _mat_from_json(fld, rows, get(dims, i, n + 1), get(dims, i, n))
    t = {}
    for key, rows in data.get("maps", {}).items():
        i, n = (int(v) for v in key.split(","))
        t[(i, n)] = _mat_from_json(fld, rows, get(dims, i + 1, n), get(dims, i, n))
    return PersistenceDgModule(ilo, ihi, nlo, nhi, dims, d, t, fld).validate()


def dgku_to_json(m: DgKuModule) -> dict:
    return {
        "window": [0, m.D],
        "dims": list(m.dims),
        "d": [_mat_to_json(x) for x in m.d],
        "u": [_mat_to_json(x) for x in m.u],
        "tail": {"kind": m.tail.kind, "above": m.tail.above},
    }


def dgku_from_json(data: dict, fld: Field = QQ) -> DgKuModule:
    D = data["window"][1]
    dims = tuple(int(x) for x in data["dims"])
    d = tuple(_mat_from_json(fld, rows, dims[n + 1], dims[n])
              for n, rows in enumerate(data["d"]))
    u = tuple(_mat_from_json(fld, rows, dims[n + 2], dims[n])
              for n, rows in enumerate(data["u"]))
    tail = data["tail"]
    return DgKuModule(D, dims, d, u, Tail(tail["kind"], int(tail["above"])), fld)


def filtered_to_json(f: FilteredKtModule) -> dict:
    filt = {}
    for i, levels in f.filtration.items():
        filt[str(i)] = [[[format_rational(Fraction(c)) for c in v] for v in level]
                        for level in levels]
    return {"module": module_to_json(f.module), "filtration": filt}


def filtered_from_json(data: dict, fld: Field = QQ) -> FilteredKtModule:
    mod = module_from_json(data["module"], fld)
    filt = {}
    for key, levels in data.get("filtration", {}).items():
        filt[int(key)] = [[tuple(fld.coerce(Fraction(str(c))) for c in v) for v in level]
                          for level in levels]
    return FilteredKtModule(mod, filt)


def model_to_json(a: FreeCdga) -> dict:
    diff = {}
    for name, poly in a.differential.items():
        terms = []
        for mono, coeff in sorted(poly.items()):
            expo = {a.generators[i][0]: e for i, e in enumerate(mono) if e}
            terms.append([format_rational(coeff), expo])
        diff[name] = terms
    return {
        "generators": [{"name": n, "degree": d} for n, d in a.generators],
        "differential": diff,
        "u_generator": a.u_generator,
        "truncation": a.default_trunc,
    }


def model_from_json(data: dict) -> FreeCdga:
    gens = tuple((g["name"], int(g["degree"])) for g in data["generators"])
    shell = FreeCdga(gens, {}, None, default_trunc=int(data.get("truncation", 12)))
    diff = {}
    for name, terms in data.get("differential", {}).items():
        diff[name] = shell.parse_poly([(Fraction(str(c)), {k: int(v) for k, v in expo.items()})
                                       for c, expo in terms])
    return FreeCdga(gens, diff, data.get("u_generator"),
                    default_trunc=int(data.get("truncation", 12)))
