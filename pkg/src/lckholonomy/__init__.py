"""Exact verification toolkit for locally conformally Kähler frame geometries."""

from .catalog import (
    CatalogEntry,
    make_abelian,
    make_entry,
    make_heisenberg,
    make_hopf,
    make_inoue,
    make_ot,
    oracle_tables,
)
from .connections import bismut, curvature, eps_rho_family, levi_civita, ricci
from .frames import FrameAlgebra, HermitianStructure, KForm, lee_data, solve_lee_form, verify_lck
from .holonomy import ambrose_singer_closure, curvature_span_at_point
from .rings import QuadraticNumber, SpherePolynomial
from .suites import SuiteReport, run_custom, run_suite

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry", "FrameAlgebra", "HermitianStructure", "KForm", "QuadraticNumber",
    "SpherePolynomial", "SuiteReport", "ambrose_singer_closure", "bismut", "curvature",
    "curvature_span_at_point", "eps_rho_family", "lee_data", "levi_civita", "make_abelian",
    "make_entry", "make_heisenberg", "make_hopf", "make_inoue", "make_ot", "oracle_tables",
    "ricci", "run_custom", "run_suite", "solve_lee_form", "verify_lck",
]
