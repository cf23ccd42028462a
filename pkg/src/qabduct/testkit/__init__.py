"""Oracles, hardness gadgets and random instances for testing the engine."""

from .fuzz import Profile, random_qap
from .gadgets import gadget_homomorphism, gadget_hp_nohp, gadget_odd_min_vertex_cover, up
from .graphs import (
    DirectedGraph, connected_digraphs, digraphs, has_hamiltonian_path, has_homomorphism, min_vertex_cover,
)
from .oracles import (
    Null, bounded_chase, bounded_model_consistency, brute_force_explanations, chase_answers, is_explanation,
)

__all__ = [
    "DirectedGraph", "Null", "Profile", "bounded_chase", "bounded_model_consistency",
    "brute_force_explanations", "chase_answers", "connected_digraphs", "digraphs", "gadget_homomorphism",
    "gadget_hp_nohp", "gadget_odd_min_vertex_cover", "has_hamiltonian_path", "has_homomorphism",
    "is_explanation", "min_vertex_cover", "random_qap", "up",
]
