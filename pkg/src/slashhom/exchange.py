"""Plain-JSON exchange documents for matrices, complexes, reports and bases.

A matrix document is ``{"p", "rows", "cols", "entries"}`` with ``entries`` a
flat row-major list of residues.  A complex document bundles one matrix
document per differential so the complex can be rebuilt exactly.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import AmbientMismatch
from .gf_linalg import FpMatrix, check_modulus
from .pcomplex import HomologyReport, PComplex
from .specht import H0Basis


def matrix_to_doc(m: FpMatrix) -> dict[str, Any]:
    return {
        "p": int(m.modulus),
        "rows": int(m.rows),
        "cols": int(m.cols),
        "entries": [int(v) for v in m.array.reshape(-1)],
    }


def matrix_from_doc(doc: dict) -> FpMatrix:
    p = check_modulus(int(doc["p"]))
    rows, cols = int(doc["rows"]), int(doc["cols"])
    entries = doc["entries"]
    if len(entries) != rows * cols:
        raise AmbientMismatch(f"{len(entries)} entries for a {rows} x {cols} matrix")
    arr = np.asarray(entries, dtype=np.int64).reshape(rows, cols) % p
    return FpMatrix._wrap(arr, p)


def complex_to_doc(c: PComplex, n: int | None = None) -> dict[str, Any]:
    """Every differential of ``c`` as a matrix document, keyed by source degree."""
    maps = []
    for k in range(c.lo + 1, c.hi + 1):
        maps.append({"k": k, "matrix": matrix_to_doc(c.diff(k))})
    return {
        "n": n,
        "p": int(c.modulus),
        "dims": [[k, c.dim(k)] for k in c.degrees],
        "maps": maps,
    }


def complex_from_doc(doc: dict, check: bool = True) -> PComplex:
    p = check_modulus(int(doc["p"]))
    dims = {int(k): int(d) for k, d in doc["dims"]}
    diffs = {int(entry["k"]): matrix_from_doc(entry["matrix"]) for entry in doc["maps"]}
    return PComplex(p, dims, diffs, check=check)


def report_to_doc(r: HomologyReport) -> dict[str, Any]:
    return r.to_dict()


def report_from_doc(doc: dict) -> HomologyReport:
    return HomologyReport.from_dict(doc)


def basis_to_doc(b: H0Basis) -> dict[str, Any]:
    return {
        "n": b.n,
        "k": b.k,
        "p": b.p,
        "tableaux": [[list(t.row1), list(t.row2)] for t in b.tableaux],
        "representatives": matrix_to_doc(b.representatives),
    }


def dumps(doc: dict) -> str:
    """Canonical text form: sorted keys, compact separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
