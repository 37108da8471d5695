"""Tree decompositions of planar graphs with width linear in the treewidth."""

from .decompose import decompose, decompose_fixed_k, merge_high_regions
from .embed import EmbeddedGraph
from .outer_td import TreeDecomposition, component_td
from .verify import exact_treewidth, validate_td

__version__ = "0.1.0"

__all__ = [
    "EmbeddedGraph",
    "TreeDecomposition",
    "component_td",
    "decompose",
    "decompose_fixed_k",
    "exact_treewidth",
    "merge_high_regions",
    "validate_td",
]
