"""Exact combinatorics of T-conic bundle fiber graphs."""
from .hj import HJFraction, conjugate, hj_eval, hj_expand, invariants, is_t_fraction
from .tchain import certify, enumerate_tchains, is_t_chain, t_step_a, t_step_b
from .graph import WeightedGraph, canonical_form, classify_form, kernel_vector
from .lcb import analyze, family_match
from .classify import SearchBounds, classify_index2, enumerate_fibers, realize_tchain

__all__ = [
    "HJFraction", "conjugate", "hj_eval", "hj_expand", "invariants", "is_t_fraction",
    "certify", "enumerate_tchains", "is_t_chain", "t_step_a", "t_step_b",
    "WeightedGraph", "canonical_form", "classify_form", "kernel_vector",
    "analyze", "family_match",
    "SearchBounds", "classify_index2", "enumerate_fibers", "realize_tchain",
]
