"""Dihedral Artin groups, modified Deligne complexes and weak-malnormality certificates."""

from .deligne import DefiningGraph, graph_from_dict, load_graph
from .dihedral import DihedralArtinGroup, SearchCaps, classify_element, growth_table, syllabic_bounds
from .freeword import Word, format_word, parse
from .garside import GarsideForm, normal_form
from .witness import CaseResult, classify_cases, emit_certificate

__all__ = [
    "CaseResult",
    "DefiningGraph",
    "DihedralArtinGroup",
    "GarsideForm",
    "SearchCaps",
    "Word",
    "classify_cases",
    "classify_element",
    "emit_certificate",
    "format_word",
    "graph_from_dict",
    "growth_table",
    "load_graph",
    "normal_form",
    "parse",
    "syllabic_bounds",
]
