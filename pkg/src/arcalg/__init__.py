"""Exact computations with Khovanov arc algebras H^m_n and their extended
versions K^m_n: Dyck combinatorics, the surgery product, a quiver
presentation checked through an explicit isomorphism, and Ext-quivers."""

from .combinatorics import Partition, Rect, Weight, enumerate_partitions, regular_partitions
from .dyck import DyckPath, dyck_tiling, regularise
from .arc_algebra import AlgebraElement, BasisDiagram, basis_H, basis_K, dim_H, dim_K, multiply
from .presentation import verify_isomorphism, verify_lemma_identities, verify_relations
from .rep_theory import cell_module, expected_quiver, ext_quiver, simple_head

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "BasisDiagram", "DyckPath", "Partition", "Rect", "Weight",
    "basis_H", "basis_K", "cell_module", "dim_H", "dim_K", "dyck_tiling",
    "enumerate_partitions", "expected_quiver", "ext_quiver", "multiply",
    "regular_partitions", "regularise", "simple_head", "verify_isomorphism",
    "verify_lemma_identities", "verify_relations",
]
