"""Graph moves, graph monoids and corners of Leavitt path algebras of finite graphs."""

from .algebra import GF, QQ, AlgebraElement, LeavittPathAlgebra, Monomial, PathTerm, verify_generator_map
from .errors import LPAError
from .graph import E_TRIV, Edge, Graph, classify_vertex, hereditary_closure, is_isomorphic, is_totally_looped
from .monoid import MonoidElement, Status, congruent_within
from .moves import HairSpec, MoveRecord, Partition, collapse, hair_extend, in_split, line_graph, move_r, out_split, sf_reduce
from .pipeline import CornerReport, DecompositionReport, corner_graph, decompose, vertex_sum_class
from .projective import HairExtension, ProjectiveClass, end_graph, normalize

__all__ = [
    "AlgebraElement", "CornerReport", "DecompositionReport", "E_TRIV", "Edge", "GF", "Graph",
    "HairExtension", "HairSpec", "LPAError", "LeavittPathAlgebra", "Monomial", "MonoidElement",
    "MoveRecord", "Partition", "PathTerm", "ProjectiveClass", "QQ", "Status", "classify_vertex",
    "collapse", "congruent_within", "corner_graph", "decompose", "end_graph", "hair_extend",
    "hereditary_closure", "in_split", "is_isomorphic", "is_totally_looped", "line_graph", "move_r",
    "normalize", "out_split", "sf_reduce", "verify_generator_map", "vertex_sum_class",
]
