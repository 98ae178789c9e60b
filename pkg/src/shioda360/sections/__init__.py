"""Ansatze, elimination to fundamental polynomials, and explicit sections."""

from .ansatz import Ansatz, AnsatzError, CoefficientSystem, build_system
from .eliminate import (
    Elimination,
    EliminationError,
    FundamentalPolynomial,
    UndecidedFactor,
    fundamental_polynomial,
    run_elimination,
)
from .io import SCHEMA_VERSION, SectionDataError, load_sections, save_sections, sections_from_json, sections_to_json
from .section import (
    BranchError,
    DegenerateRoot,
    Section,
    all_extensions,
    apply_partner_map,
    back_substitute,
    make_section,
    section_from_root,
    section_from_values,
    sections_from_root,
    verify_section,
)

__all__ = [
    "Ansatz",
    "AnsatzError",
    "BranchError",
    "CoefficientSystem",
    "DegenerateRoot",
    "Elimination",
    "EliminationError",
    "FundamentalPolynomial",
    "SCHEMA_VERSION",
    "Section",
    "SectionDataError",
    "UndecidedFactor",
    "all_extensions",
    "apply_partner_map",
    "back_substitute",
    "build_system",
    "fundamental_polynomial",
    "load_sections",
    "make_section",
    "run_elimination",
    "save_sections",
    "section_from_root",
    "section_from_values",
    "sections_from_json",
    "sections_from_root",
    "sections_to_json",
    "verify_section",
]
