"""Exact-arithmetic toolkit for rank-2 semi-Lie orbital integrals, their
derivatives, Gross-Keating intersection numbers, Satake/base-change tables,
and enumeration oracles over truncated p-adic rings."""

from .exactpoly import LaurentSeries, QPolynomial
from .intersection import (
    GeometricParams,
    GKPair,
    PartialOrbitalParams,
    geom_to_orbital,
    gk_from_params,
    gross_keating,
    int_circ,
    int_circ_kr_closed,
    int_total,
    verify_miracle,
)
from .kernel import DerivMatrix, build_matrix, certify_full_rank, row_reduce
from .orbital import (
    INFINITY,
    HeckeVector,
    InvalidParamsError,
    OrbitalParams,
    derivative_closed_form,
    derivative_combo,
    derivative_of_vector,
    orbital_closed_form,
    orbital_support_sum,
    transfer_factor,
    validate,
)
from .padiclab import QuadExtRing, count_one_disk, count_two_disk, quaternion_invariants
from .satake import (
    SatakeGL,
    SatakeY,
    bc_gl3_to_u3,
    bc_s2_combo_image,
    bc_s2_on_basis,
    bc_s3_on_basis,
    p_r_polynomial,
    proj_fiber_gl3,
    satake_gl_det,
    satake_u3_indicator,
)
from .verify import SweepConfig, run_suite

__all__ = [
    "LaurentSeries",
    "QPolynomial",
    "GeometricParams",
    "GKPair",
    "PartialOrbitalParams",
    "geom_to_orbital",
    "gk_from_params",
    "gross_keating",
    "int_circ",
    "int_circ_kr_closed",
    "int_total",
    "verify_miracle",
    "DerivMatrix",
    "build_matrix",
    "certify_full_rank",
    "row_reduce",
    "INFINITY",
    "HeckeVector",
    "InvalidParamsError",
    "OrbitalParams",
    "derivative_closed_form",
    "derivative_combo",
    "derivative_of_vector",
    "orbital_closed_form",
    "orbital_support_sum",
    "transfer_factor",
    "validate",
    "QuadExtRing",
    "count_one_disk",
    "count_two_disk",
    "quaternion_invariants",
    "SatakeGL",
    "SatakeY",
    "bc_gl3_to_u3",
    "bc_s2_combo_image",
    "bc_s2_on_basis",
    "bc_s3_on_basis",
    "p_r_polynomial",
    "proj_fiber_gl3",
    "satake_gl_det",
    "satake_u3_indicator",
    "SweepConfig",
    "run_suite",
]
