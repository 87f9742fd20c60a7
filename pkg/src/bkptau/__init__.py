"""Exact Pfaffian tau-functions of the KP/BKP hierarchies and their checks."""

from .ring import (
    Bank,
    GaussRat,
    Monomial,
    Poly,
    TimeArgument,
    Var,
    apply_schur_diff,
    canonical_string,
    miwa_coeffs,
    parse_poly,
    qify,
    restrict_even_zero,
    substitute,
    t,
    y,
)
from .schur import (
    ExtendedStrictPartition,
    FrobeniusCoords,
    Partition,
    character_check,
    elem_schur,
    elem_schur_seq,
    frobenius_convert,
    frobenius_coords,
    q_schur,
    schur_lambda,
)
from .pfaffian import (
    RectMatrix,
    UpperTriMatrix,
    assemble_block,
    caianiello_expand,
    determinant,
    pfaffian,
    skew_extension,
    submatrix,
)
from .tau import (
    CoeffSeries,
    InternalInconsistencyError,
    TauSpec,
    chi_bar,
    chi_pm,
    constants_to_series,
    kdv_half,
    kdv_tau,
    series_to_constants,
    tau_bkp,
    tau_kp_square,
)
from .hierarchy import DefectReport, MiwaExpansion, bkp_defect, kp_defect, miwa_expand
from . import fock

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
