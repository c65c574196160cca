"""
Exact combinatorial primitives: Bernoulli numbers, set partitions,
permutation descents and the Chen-Strichartz coefficients.

All rational values are ``fractions.Fraction``; nothing here touches floats.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, List, Tuple, Union

DEFAULT_PARTITION_CAP = 10
DEFAULT_PERMUTATION_CAP = 8


class SizeLimitError(ValueError):
    """Raised when an enumeration would exceed its configured cap."""


def _check_size(n: int, cap: int, what: str) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{what} size must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"{what} size must be non-negative, got {n}")
    if n > cap:
        raise SizeLimitError(f"{what} size {n} exceeds cap {cap}")


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """
    Bernoulli number B_n with the convention B_1 = -1/2.

    Uses the recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1.

    Args:
        n: Index, n >= 0

    Returns:
        B_n as an exact rational

    Raises:
        ValueError: If n is negative
    """
    if n < 0:
        raise ValueError(f"Bernoulli index must be non-negative, got {n}")
    if n == 0:
        return Fraction(1)
    total = sum((comb(n + 1, k) * bernoulli(k) for k in range(n)), Fraction(0))
    return -total / (n + 1)


@dataclass(frozen=True)
class SetPartition:
    """
    Partition of {1..n} into blocks.

    Blocks hold their elements in increasing order and are themselves ordered
    by increasing maximum element.
    """

    blocks: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return sum(len(block) for block in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


def enumerate_set_partitions(n: int, cap: int = DEFAULT_PARTITION_CAP) -> List[SetPartition]:
    """
    All set partitions of {1..n}, each in canonical block order.

    Elements are placed from n down to 1; a block is opened by its maximum,
    so reversing the opening order yields blocks sorted by increasing maximum
    without a separate sort.

    Args:
        n: Ground set size
        cap: Largest admissible n

    Returns:
        List of Bell(n) partitions (one empty partition for n = 0)

    Raises:
        SizeLimitError: If n exceeds cap
    """
    _check_size(n, cap, "Set partition")

    result: List[SetPartition] = []

    def place(element: int, opened: List[List[int]]) -> None:
        if element == 0:
            result.append(
                SetPartition(tuple(tuple(reversed(block)) for block in reversed(opened)))
            )
            return
        for block in opened:
            block.append(element)
            place(element - 1, opened)
            block.pop()
        opened.append([element])
        place(element - 1, opened)
        opened.pop()

    place(n, [])
    return result


def bell_number(n: int) -> int:
    """
    Bell number via the Bell triangle (independent of the enumeration).

    Args:
        n: Ground set size, n >= 0

    Returns:
        Number of set partitions of an n-element set
    """
    if n < 0:
        raise ValueError(f"Bell index must be non-negative, got {n}")
    row = [1]
    for _ in range(n):
        next_row = [row[-1]]
        for value in row:
            next_row.append(next_row[-1] + value)
        row = next_row
    return row[0]


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n} in one-line notation."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"Not a permutation of 1..{len(self.images)}: {self.images}")

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, index: int) -> int:
        return self.images[index]

    def reversed(self) -> "Permutation":
        return Permutation(tuple(reversed(self.images)))


PermutationLike = Union[Permutation, Tuple[int, ...], List[int]]


def descent_number(p: PermutationLike) -> int:
    """
    Count the positions i with p(i) > p(i+1).

    Args:
        p: Permutation or its one-line notation

    Returns:
        Number of descents, in [0, n-1]

    Raises:
        ValueError: If p is not a permutation
    """
    images = p.images if isinstance(p, Permutation) else Permutation(tuple(p)).images
    return sum(1 for a, b in zip(images, images[1:]) if a > b)


def enumerate_permutations(n: int, cap: int = DEFAULT_PERMUTATION_CAP) -> List[Permutation]:
    """
    All permutations of {1..n} in lexicographic order.

    Raises:
        SizeLimitError: If n exceeds cap
    """
    _check_size(n, cap, "Permutation")
    return [Permutation(images) for images in itertools.permutations(range(1, n + 1))]


def chen_strichartz_coeff(n: int, d: int) -> Fraction:
    """
    Coefficient (-1)^d / (n^2 * C(n-1, d)) of a permutation with d descents.

    Args:
        n: Number of letters, n >= 1
        d: Descent count, 0 <= d <= n-1

    Returns:
        Exact coefficient

    Raises:
        ValueError: If n or d is out of range
    """
    if n < 1:
        raise ValueError(f"Chen-Strichartz order must be positive, got {n}")
    if not 0 <= d <= n - 1:
        raise ValueError(f"Descent count {d} outside [0, {n - 1}]")
    return Fraction((-1) ** d, n * n * comb(n - 1, d))


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """
    Ordered tuples of ``parts`` positive integers summing to ``total``.

    Yields them in lexicographic order; no tuples when parts > total.
    """
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def format_rational(q: Fraction) -> str:
    """Render as ``p/q``, or ``p`` when the denominator is one."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """
    Parse ``p`` or ``p/q`` (optionally signed) into a Fraction.

    Raises:
        ValueError: If the text is not an exact rational
    """
    stripped = text.strip()
    if not stripped or any(c not in "+-/0123456789" for c in stripped):
        raise ValueError(f"Not an exact rational: {text!r}")
    try:
        return Fraction(stripped)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not an exact rational: {text!r}") from e
