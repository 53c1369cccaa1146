"""Slash homology of the subset p-complex over GF(p), with the Specht-module toolkit behind it."""

from __future__ import annotations

from .errors import *  # noqa: F401,F403
from .gf_linalg import FpMatrix, FpScalar, Subspace, nullspace, rank, rref, solve
from .pcomplex import HomologyReport, OmegaComplex, PComplex, omega_complex
from .subsets import KSubset, OmegaBasis, OmegaVector, Permutation, boundary, boundary_matrix
from .tableaux import (
    INF,
    LatticePath,
    TwoRowTableau,
    count_paths,
    count_paths_formula,
    in_window,
    is_p_standard,
    p_standard_tableaux,
)
from .specht import h0_basis, polytabloid, straighten, verify_james
from .verify import SUITES, SuiteConfig, run_suite

__version__ = "0.1.0"
