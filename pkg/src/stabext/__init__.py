"""Stable cohomology, extension degrees and Auslander-Reiten structure for symmetric algebras."""

from .algebra import AlgebraPresentation, find_symmetrizing_form, validate_algebra
from .arquiver import ar_sequence, build_component, certify_quasi_length, tau
from .decomp import decompose, is_iso
from .extdeg import ExtDegResult, cone_layers, ext_deg, fed_estimate, perp, two_of_three_check
from .modcat import FDModule, Morphism, hom_basis, projective_cover, stable_dim, stable_hom
from .resolve import detect_syzygy_period, ext_hat, omega
from .xfield import GF, QQ, Matrix

__version__ = "0.1.0"

__all__ = [
    "AlgebraPresentation", "ExtDegResult", "FDModule", "GF", "Matrix", "Morphism", "QQ",
    "ar_sequence", "build_component", "certify_quasi_length", "cone_layers", "decompose",
    "detect_syzygy_period", "ext_deg", "ext_hat", "fed_estimate", "find_symmetrizing_form",
    "hom_basis", "is_iso", "omega", "perp", "projective_cover", "stable_dim", "stable_hom",
    "tau", "two_of_three_check", "validate_algebra",
]
