"""
Elements of the truncated enveloping algebra over planar trees.

A monomial is a word of trees (a tuple of :class:`PlanarTree`); the empty
word is the unit. An :class:`Element` is a finite rational combination of
monomials of degree at most its truncation order. In pre-Lie mode words are
commutative and stored sorted, trees are stored abelianized.
"""

from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from plmagnus.algebra.exact import format_rational
from plmagnus.algebra.trees import PlanarTree, abelianize

Monomial = Tuple[PlanarTree, ...]
Scalar = Union[int, Fraction]

UNIT: Monomial = ()


class AlgebraMode(Enum):
    """Which algebra the words live in."""

    POSTLIE = "postlie"
    PRELIE = "prelie"


class DomainError(ValueError):
    """Raised when an operation's input lies outside its domain."""


class ModeMismatchError(ValueError):
    """Raised when pre-Lie and post-Lie elements are combined."""


def monomial_degree(word: Monomial) -> int:
    """Total number of vertices in the word."""
    return sum(t.degree for t in word)


def monomial_key(word: Monomial) -> Tuple:
    """Canonical monomial order: degree, then length, then letters in tree order."""
    return (monomial_degree(word), len(word), tuple(t.sort_key for t in word))


def format_monomial(word: Monomial) -> str:
    """Space-separated encodings, ``1`` for the unit."""
    if not word:
        return "1"
    return " ".join(t.encoding for t in word)


def deshuffle(word: Monomial) -> List[Tuple[Monomial, Monomial]]:
    """
    Unshuffle coproduct of a word.

    Every subset of positions goes left (in order), the complement right, so
    the result has 2**len(word) pairs, listed from (word, 1) down to
    (1, word). A sorted word splits into sorted words, so the same routine
    serves the commutative mode.
    """
    n = len(word)
    pairs = []
    for mask in range((1 << n) - 1, -1, -1):
        left = tuple(word[i] for i in range(n) if mask >> (n - 1 - i) & 1)
        right = tuple(word[i] for i in range(n) if not mask >> (n - 1 - i) & 1)
        pairs.append((left, right))
    return pairs


def normalize_tree(t: PlanarTree, mode: AlgebraMode) -> PlanarTree:
    return abelianize(t) if mode is AlgebraMode.PRELIE else t


def normalize_word(word: Monomial, mode: AlgebraMode) -> Monomial:
    if mode is AlgebraMode.PRELIE:
        return tuple(sorted(abelianize(t) for t in word))
    return word


def _add_into(target: Dict[Monomial, Fraction], word: Monomial, coefficient: Fraction) -> None:
    value = target.get(word, 0) + coefficient
    if value:
        target[word] = value
    else:
        target.pop(word, None)


class Element:
    """
    Truncated linear combination of tree words with exact coefficients.

    Elements are immutable values. Arithmetic between two elements keeps
    the smaller truncation order; mixing modes raises
    :class:`ModeMismatchError`.
    """

    __slots__ = ("_terms", "order", "mode")

    def __init__(
        self,
        terms: Optional[Mapping[Monomial, Scalar]] = None,
        order: int = 6,
        mode: AlgebraMode = AlgebraMode.POSTLIE,
    ):
        if order < 0:
            raise ValueError(f"Truncation order must be non-negative, got {order}")
        clean: Dict[Monomial, Fraction] = {}
        for word, coefficient in (terms or {}).items():
            word = normalize_word(tuple(word), mode)
            if monomial_degree(word) <= order:
                _add_into(clean, word, Fraction(coefficient))
        self._terms = clean
        self.order = order
        self.mode = mode

    @classmethod
    def zero(cls, order: int = 6, mode: AlgebraMode = AlgebraMode.POSTLIE) -> "Element":
        return cls({}, order, mode)

    @classmethod
    def one(cls, order: int = 6, mode: AlgebraMode = AlgebraMode.POSTLIE) -> "Element":
        return cls({UNIT: 1}, order, mode)

    @classmethod
    def _trusted(cls, terms: Dict[Monomial, Fraction], order: int, mode: AlgebraMode) -> "Element":
        # Terms already normalized, truncated and free of zeros.
        element = cls.__new__(cls)
        element._terms = terms
        element.order = order
        element.mode = mode
        return element

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        """Terms in canonical monomial order."""
        for word in sorted(self._terms, key=monomial_key):
            yield word, self._terms[word]

    def coefficient(self, word: Iterable[PlanarTree]) -> Fraction:
        return self._terms.get(normalize_word(tuple(word), self.mode), Fraction(0))

    def augmentation(self) -> Fraction:
        """Coefficient of the unit word (the counit)."""
        return self._terms.get(UNIT, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def max_length(self) -> int:
        return max((len(word) for word in self._terms), default=0)

    def degrees(self) -> List[int]:
        return sorted({monomial_degree(word) for word in self._terms})

    def homogeneous(self, degree: int) -> "Element":
        """Part of exact degree ``degree``."""
        terms = {w: c for w, c in self._terms.items() if monomial_degree(w) == degree}
        return Element._trusted(terms, self.order, self.mode)

    def truncate(self, order: int) -> "Element":
        order = min(order, self.order)
        terms = {w: c for w, c in self._terms.items() if monomial_degree(w) <= order}
        return Element._trusted(terms, order, self.mode)

    def _check_compatible(self, other: "Element") -> int:
        if not isinstance(other, Element):
            raise TypeError(f"Expected Element, got {type(other).__name__}")
        if other.mode is not self.mode:
            raise ModeMismatchError(
                f"Cannot combine {self.mode.value} and {other.mode.value} elements"
            )
        return min(self.order, other.order)

    def __add__(self, other: "Element") -> "Element":
        order = self._check_compatible(other)
        terms = {w: c for w, c in self._terms.items() if monomial_degree(w) <= order}
        for word, coefficient in other._terms.items():
            if monomial_degree(word) <= order:
                _add_into(terms, word, coefficient)
        return Element._trusted(terms, order, self.mode)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element._trusted({w: -c for w, c in self._terms.items()}, self.order, self.mode)

    def __mul__(self, scalar: Scalar) -> "Element":
        if isinstance(scalar, Element):
            raise TypeError("Use the algebra's products to multiply elements")
        scalar = Fraction(scalar)
        if not scalar:
            return Element.zero(self.order, self.mode)
        return Element._trusted(
            {w: c * scalar for w, c in self._terms.items()}, self.order, self.mode
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "Element":
        return self * (1 / Fraction(scalar))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        order = self._check_compatible(other)
        return self.truncate(order)._terms == other.truncate(order)._terms

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None  # type: ignore[assignment]

    def format(self) -> str:
        """One ``coefficient<TAB>word`` line per term, canonical order."""
        return "\n".join(f"{format_rational(c)}\t{format_monomial(w)}" for w, c in self.items())

    def __repr__(self) -> str:
        body = " + ".join(f"{format_rational(c)}*({format_monomial(w)})" for w, c in self.items())
        return f"Element[{self.mode.value}, N={self.order}]({body or '0'})"

    def __len__(self) -> int:
        return len(self._terms)
