"""Exact symbolic engine for separatrices of holomorphic foliation germs in the plane."""

from .blowup import Chart, Intersection, Scene, blow_up_branch, blow_up_field, blow_up_scene, classify_scene
from .certify import Certificate, certify, replay_certificate
from .errors import SeparatrixError
from .gaussian import GaussRational
from .germ import BranchGerm, VectorFieldGerm, cofactor, is_invariant
from .index import IndexValue, cs_index_smooth, css_index_branch, divisor_index_sum_first_blowup
from .parser import format_poly, parse_poly
from .polynomial import BiPoly, UniPoly
from .proctrack import CoeffQuad, dual_relations, simulate, verify_estimates
from .resolution import Process, export_dot, extract_process, parse_process, resolve

__version__ = "0.1.0"

__all__ = [
    "BiPoly", "BranchGerm", "Certificate", "Chart", "CoeffQuad", "GaussRational", "IndexValue",
    "Intersection", "Process", "Scene", "SeparatrixError", "UniPoly", "VectorFieldGerm",
    "blow_up_branch", "blow_up_field", "blow_up_scene", "certify", "classify_scene", "cofactor",
    "cs_index_smooth", "css_index_branch", "divisor_index_sum_first_blowup", "dual_relations",
    "export_dot", "extract_process", "format_poly", "is_invariant", "parse_poly", "parse_process",
    "replay_certificate", "resolve", "simulate", "verify_estimates",
]
