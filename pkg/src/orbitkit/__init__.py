"""Exact coadjoint-orbit computations and wavelet-representation analysis for rational nilpotent Lie groups."""

from .algebra import GroupElement, LieAlgebra, ValidationReport, validate_algebra
from .coadjoint import Functional, OrbitData, orbit_data, pfaffian, radical, skew_form, vergne_polarization
from .decomposition import bekka_driutti_check, classify, fiber_irreducibility
from .dilation import (
    DilationSpec,
    approximate_in_gamma_alpha,
    density_profile,
    dual_action,
    lemma_detone_check,
    modular_factor,
    validate_dilation,
)
from .errors import OrbitkitError
from .parser import parse_spec
from .poly import Poly
from .tiling import make_shannon_tiling, tile_index, verify_tiling

__all__ = [
    "GroupElement",
    "LieAlgebra",
    "ValidationReport",
    "validate_algebra",
    "Functional",
    "OrbitData",
    "orbit_data",
    "pfaffian",
    "radical",
    "skew_form",
    "vergne_polarization",
    "bekka_driutti_check",
    "classify",
    "fiber_irreducibility",
    "DilationSpec",
    "approximate_in_gamma_alpha",
    "density_profile",
    "dual_action",
    "lemma_detone_check",
    "modular_factor",
    "validate_dilation",
    "OrbitkitError",
    "parse_spec",
    "Poly",
    "make_shannon_tiling",
    "tile_index",
    "verify_tiling",
]
