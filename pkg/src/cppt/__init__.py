"""Combinatorial pointed pseudo-triangulations with faces of size at most four."""

from .canonical import (
    FlipSequence,
    SequenceError,
    canonical_to_spinal,
    canonicalize_triangular,
    clear_tip,
    move_triangle_to_edge,
    sort_labels,
    spinal_to_canonical,
    swap_neighbors,
    verify_sequence,
)
from .core import Cppt, PreconditionError, StructureError, build, from_faces, validate
from .flips import FlipCase, FlipError, FlipMove, apply_flip, find_move, flip, flip_candidates, flippable_edges
from .forms import CanonicalProfile, classify
from .general import (
    canonicalize_cells,
    canonicalize_general,
    cut_ear,
    fan_outer_face,
    flip_sequence,
    merge_cells,
    rotate_canonical,
)
from .induced import double_wheel, emulate_flip, induced_triangulation, lower_bound_instance, tri_flip

__all__ = [
    "CanonicalProfile",
    "Cppt",
    "FlipCase",
    "FlipError",
    "FlipMove",
    "FlipSequence",
    "PreconditionError",
    "SequenceError",
    "StructureError",
    "apply_flip",
    "build",
    "canonical_to_spinal",
    "canonicalize_cells",
    "canonicalize_general",
    "canonicalize_triangular",
    "classify",
    "clear_tip",
    "cut_ear",
    "double_wheel",
    "emulate_flip",
    "fan_outer_face",
    "find_move",
    "flip",
    "flip_candidates",
    "flip_sequence",
    "flippable_edges",
    "from_faces",
    "induced_triangulation",
    "lower_bound_instance",
    "merge_cells",
    "move_triangle_to_edge",
    "rotate_canonical",
    "sort_labels",
    "spinal_to_canonical",
    "swap_neighbors",
    "tri_flip",
    "validate",
    "verify_sequence",
]
