"""
Planar rooted trees in bracket encoding.

A tree is written as its root's bracket pair enclosing the encodings of its
children from left to right: ``[]`` is a single vertex, ``[[]]`` a chain of
two, ``[[][]]`` a root with two leaves. The encoding is canonical for planar
trees and doubles as the ordering key.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from plmagnus.algebra.exact import SizeLimitError

DEFAULT_TREE_CAP = 9


class TreeParseError(ValueError):
    """Raised on malformed bracket encodings; ``position`` points at the offending character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class PlanarTree:
    """
    Planar rooted tree.

    Ordered by degree first, then lexicographically on the encoding. Build
    from untrusted text with :func:`parse_tree`.
    """

    encoding: str
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree", len(self.encoding) // 2)

    @property
    def sort_key(self) -> Tuple[int, str]:
        return (self.degree, self.encoding)

    def __lt__(self, other: "PlanarTree") -> bool:
        return self.sort_key < other.sort_key

    def __le__(self, other: "PlanarTree") -> bool:
        return self.sort_key <= other.sort_key

    def __gt__(self, other: "PlanarTree") -> bool:
        return self.sort_key > other.sort_key

    def __ge__(self, other: "PlanarTree") -> bool:
        return self.sort_key >= other.sort_key

    def __str__(self) -> str:
        return self.encoding

    @property
    def children(self) -> Tuple["PlanarTree", ...]:
        return tuple(PlanarTree(enc) for enc in _split_children(self.encoding))


LEAF = PlanarTree("[]")


def parse_tree(text: str, offset: int = 0) -> PlanarTree:
    """
    Validate a bracket encoding and build the tree.

    Args:
        text: Encoding such as ``[[][]]``
        offset: Added to reported error positions (for operands embedded in
            a longer command line)

    Returns:
        The parsed PlanarTree

    Raises:
        TreeParseError: On empty input, stray characters, unbalanced brackets
            or more than one root
    """
    if not text:
        raise TreeParseError("Empty tree encoding", offset)

    depth = 0
    for index, char in enumerate(text):
        if char == "[":
            if depth == 0 and index > 0:
                raise TreeParseError("More than one root in tree encoding", offset + index)
            depth += 1
        elif char == "]":
            depth -= 1
            if depth < 0:
                raise TreeParseError("Unmatched ']' in tree encoding", offset + index)
        else:
            raise TreeParseError(f"Unexpected character {char!r} in tree encoding", offset + index)

    if depth != 0:
        raise TreeParseError("Unclosed '[' in tree encoding", offset + len(text))

    return PlanarTree(text)


@lru_cache(maxsize=4096)
def _split_children(encoding: str) -> Tuple[str, ...]:
    children: List[str] = []
    depth = 0
    start = 1
    for index in range(1, len(encoding) - 1):
        char = encoding[index]
        if char == "[":
            if depth == 0:
                start = index
            depth += 1
        else:
            depth -= 1
            if depth == 0:
                children.append(encoding[start:index + 1])
    return tuple(children)


def children(t: PlanarTree) -> Tuple[PlanarTree, ...]:
    """Children of the root, left to right."""
    return t.children


def left_graft_sum(t1: PlanarTree, t2: PlanarTree) -> Dict[PlanarTree, int]:
    """
    Graft ``t1`` onto every vertex of ``t2``.

    At each vertex the grafted copy becomes the leftmost child. In the
    encoding that is an insertion right after the vertex's opening bracket.
    Distinct vertices can yield the same planar tree, so multiplicities are
    kept.

    Args:
        t1: Tree being grafted
        t2: Tree receiving the graft

    Returns:
        Mapping of resulting trees to multiplicities; total multiplicity is
        deg(t2) and every tree has degree deg(t1) + deg(t2)
    """
    result: Dict[PlanarTree, int] = {}
    host = t2.encoding
    for index, char in enumerate(host):
        if char == "[":
            tree = PlanarTree(host[:index + 1] + t1.encoding + host[index + 1:])
            result[tree] = result.get(tree, 0) + 1
    return result


@lru_cache(maxsize=4096)
def _abelianize_encoding(encoding: str) -> str:
    subtrees = sorted(
        (_abelianize_encoding(child) for child in _split_children(encoding)),
        key=lambda enc: (len(enc), enc),
    )
    return "[" + "".join(subtrees) + "]"


def abelianize(t: PlanarTree) -> PlanarTree:
    """
    Canonical non-planar representative: children sorted recursively by tree order.

    Idempotent, and constant on each class of planar trees that differ only
    by reordering children.
    """
    return PlanarTree(_abelianize_encoding(t.encoding))


def enumerate_trees(n: int, cap: int = DEFAULT_TREE_CAP) -> List[PlanarTree]:
    """
    All planar rooted trees with n vertices, in tree order.

    Args:
        n: Number of vertices, n >= 1
        cap: Largest admissible n

    Returns:
        Catalan(n-1) trees sorted by encoding

    Raises:
        SizeLimitError: If n exceeds cap
    """
    if n < 1:
        raise ValueError(f"Tree degree must be positive, got {n}")
    if n > cap:
        raise SizeLimitError(f"Tree degree {n} exceeds cap {cap}")
    return [PlanarTree(enc) for enc in sorted(_forests(n - 1))]


def enumerate_nonplanar_trees(n: int, cap: int = DEFAULT_TREE_CAP) -> List[PlanarTree]:
    """Canonical representatives of non-planar rooted trees with n vertices, in tree order."""
    return sorted({abelianize(t) for t in enumerate_trees(n, cap)})


@lru_cache(maxsize=None)
def _forests(n: int) -> Tuple[str, ...]:
    # Root encodings of trees with n + 1 vertices, i.e. "[" + forest + "]".
    if n == 0:
        return ("[]",)
    trees = []
    for forest in _forest_bodies(n):
        trees.append("[" + forest + "]")
    return tuple(trees)


@lru_cache(maxsize=None)
def _forest_bodies(n: int) -> Tuple[str, ...]:
    # Concatenated encodings of ordered forests with n vertices in total.
    if n == 0:
        return ("",)
    bodies = []
    for first in range(1, n + 1):
        for head in _forests(first - 1):
            for tail in _forest_bodies(n - first):
                bodies.append(head + tail)
    return tuple(bodies)


def catalan(n: int) -> int:
    """Catalan number by the convolution recurrence C_{m+1} = sum C_i C_{m-i}."""
    values = [1]
    for m in range(n):
        values.append(sum(values[i] * values[m - i] for i in range(m + 1)))
    return values[n]

