"""
Exact symbolic algebra over planar rooted trees.
"""

from plmagnus.algebra.element import AlgebraMode, DomainError, Element, ModeMismatchError
from plmagnus.algebra.engine import PostLieAlgebra
from plmagnus.algebra.exact import SizeLimitError
from plmagnus.algebra.trees import PlanarTree, TreeParseError, parse_tree

__all__ = [
    "AlgebraMode",
    "DomainError",
    "Element",
    "ModeMismatchError",
    "PlanarTree",
    "PostLieAlgebra",
    "SizeLimitError",
    "TreeParseError",
    "parse_tree",
]
