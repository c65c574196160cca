"""
Post-Lie (and pre-Lie) engine over planar trees.

The post-Lie product is extended from trees to words by the rules

    1 > Y = Y,      X > 1 = eps(X),
    X > (Y Z) = sum (X1 > Y)(X2 > Z)        over the unshuffle of X,
    (x X) > y = x > (X > y) - (x > X) > y,
    x > y = left grafting sum,              for trees x, y,

and the Grossman-Larson product is A * B = sum A1 (A2 > B). Word-level
results are memoized per algebra instance.
"""

from collections import Counter
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Mapping, Optional, Tuple, TypeVar, Union

import numpy as np

from plmagnus.algebra.element import (
    UNIT,
    AlgebraMode,
    DomainError,
    Element,
    ModeMismatchError,
    Monomial,
    _add_into,
    deshuffle,
    monomial_degree,
    monomial_key,
    normalize_tree,
    normalize_word,
)
from plmagnus.algebra.exact import (
    DEFAULT_PARTITION_CAP,
    SizeLimitError,
    bernoulli,
    compositions,
    enumerate_set_partitions,
)
from plmagnus.algebra.trees import (
    DEFAULT_TREE_CAP,
    PlanarTree,
    _split_children,
    abelianize,
    enumerate_trees,
    left_graft_sum,
    parse_tree,
)
from plmagnus.utils.logger import TRACE_LEVEL, logger

DEFAULT_ORDER = 6
DEFAULT_MAX_ORDER = 9

WordTerms = Dict[Monomial, Fraction]
V = TypeVar("V")


class PostLieAlgebra:
    """
    Truncated free post-Lie algebra on one generator, or its pre-Lie quotient.

    All operations take and return :class:`Element` values of this
    algebra's mode; results are truncated at the smaller of the inputs'
    orders and the algebra's order.
    """

    def __init__(
        self,
        mode: Union[AlgebraMode, str] = AlgebraMode.POSTLIE,
        order: int = DEFAULT_ORDER,
        max_order: int = DEFAULT_MAX_ORDER,
        partition_cap: int = DEFAULT_PARTITION_CAP,
        tree_cap: int = DEFAULT_TREE_CAP,
    ):
        """
        Initialize the algebra.

        Args:
            mode: ``postlie`` or ``prelie``
            order: Truncation order N
            max_order: Largest admissible N
            partition_cap: Largest word length expanded over set partitions
            tree_cap: Largest tree degree enumerated

        Raises:
            SizeLimitError: If order exceeds max_order
        """
        self.mode = AlgebraMode(mode)
        if order < 1:
            raise ValueError(f"Truncation order must be positive, got {order}")
        if order > max_order:
            raise SizeLimitError(f"Truncation order {order} exceeds cap {max_order}")
        self.order = order
        self.partition_cap = partition_cap
        self.tree_cap = tree_cap

        self._prod_cache: Dict[Tuple[Monomial, Monomial], WordTerms] = {}
        self._gl_cache: Dict[Tuple[Monomial, Monomial], WordTerms] = {}
        self._theta_cache: Dict[Monomial, WordTerms] = {}

    @classmethod
    def from_config(cls, run_config) -> "PostLieAlgebra":
        """Build from a :class:`plmagnus.utils.config.RunConfig`."""
        return cls(
            mode=run_config.mode,
            order=run_config.truncation_order,
            max_order=run_config.max_order,
            partition_cap=run_config.partition_cap,
            tree_cap=run_config.tree_cap,
        )

    def __repr__(self) -> str:
        return f"PostLieAlgebra(mode={self.mode.value!r}, order={self.order})"

    # Constructors

    def element(self, terms: Optional[Mapping[Monomial, Union[int, Fraction]]] = None) -> Element:
        return Element(terms or {}, self.order, self.mode)

    def zero(self) -> Element:
        return Element.zero(self.order, self.mode)

    def one(self) -> Element:
        return Element.one(self.order, self.mode)

    def tree(self, encoding: str) -> Element:
        """Single-tree element, e.g. ``tree("[[]]")``."""
        return self.element({(parse_tree(encoding),): 1})

    def word(self, *encodings: str) -> Element:
        """Single-word element, e.g. ``word("[]", "[[]]")``."""
        return self.element({tuple(parse_tree(enc) for enc in encodings): 1})

    def generator(self) -> Element:
        return self.tree("[]")

    def basis(self, degree: int) -> List[Monomial]:
        """
        All monomials of one degree in canonical order.

        Planar mode yields Catalan(degree) words; pre-Lie mode yields
        commutative words over non-planar trees.
        """
        if degree == 0:
            return [UNIT]
        words = set()
        for length in range(1, degree + 1):
            for parts in compositions(degree, length):
                self._extend_words(words, parts)
        return sorted(words, key=monomial_key)

    def _extend_words(self, words: set, parts: Tuple[int, ...]) -> None:
        partial: List[Monomial] = [UNIT]
        for part in parts:
            letters = [normalize_tree(t, self.mode) for t in enumerate_trees(part, self.tree_cap)]
            partial = [w + (t,) for w in partial for t in dict.fromkeys(letters)]
        for w in partial:
            words.add(normalize_word(w, self.mode))

    # Word-level kernels

    def _check(self, *elements: Element) -> int:
        order = self.order
        for element in elements:
            if not isinstance(element, Element):
                raise TypeError(f"Expected Element, got {type(element).__name__}")
            if element.mode is not self.mode:
                raise ModeMismatchError(
                    f"{element.mode.value} element passed to a {self.mode.value} algebra"
                )
            order = min(order, element.order)
        return order

    def _concat(self, left: Monomial, right: Monomial) -> Monomial:
        if self.mode is AlgebraMode.PRELIE:
            return tuple(sorted(left + right))
        return left + right

    def _graft(self, t1: PlanarTree, t2: PlanarTree) -> WordTerms:
        result: WordTerms = {}
        for tree, multiplicity in left_graft_sum(t1, t2).items():
            _add_into(result, (normalize_tree(tree, self.mode),), Fraction(multiplicity))
        return result

    def _prod_words(self, left: Monomial, right: Monomial) -> WordTerms:
        key = (left, right)
        cached = self._prod_cache.get(key)
        if cached is not None:
            return cached

        result: WordTerms = {}
        if not left:
            result = {right: Fraction(1)}
        elif not right:
            pass
        elif len(right) > 1:
            head, tail = right[:1], right[1:]
            for left1, left2 in deshuffle(left):
                first = self._prod_words(left1, head)
                if not first:
                    continue
                second = self._prod_words(left2, tail)
                for w1, c1 in first.items():
                    for w2, c2 in second.items():
                        _add_into(result, self._concat(w1, w2), c1 * c2)
        elif len(left) == 1:
            result = self._graft(left[0], right[0])
        else:
            x, rest = left[:1], left[1:]
            for w, c in self._prod_words(rest, right).items():
                for w2, c2 in self._prod_words(x, w).items():
                    _add_into(result, w2, c * c2)
            for w, c in self._prod_words(x, rest).items():
                for w2, c2 in self._prod_words(w, right).items():
                    _add_into(result, w2, -c * c2)

        self._prod_cache[key] = result
        return result

    def _gl_words(self, left: Monomial, right: Monomial) -> WordTerms:
        key = (left, right)
        cached = self._gl_cache.get(key)
        if cached is not None:
            return cached

        result: WordTerms = {}
        for left1, left2 in deshuffle(left):
            for w, c in self._prod_words(left2, right).items():
                _add_into(result, self._concat(left1, w), c)

        self._gl_cache[key] = result
        return result

    def _bilinear(
        self,
        a: Element,
        b: Element,
        kernel: Callable[[Monomial, Monomial], WordTerms],
    ) -> Element:
        order = self._check(a, b)
        terms: WordTerms = {}
        for wa, ca in a._terms.items():
            da = monomial_degree(wa)
            for wb, cb in b._terms.items():
                if da + monomial_degree(wb) > order:
                    continue
                for w, c in kernel(wa, wb).items():
                    _add_into(terms, w, ca * cb * c)
        return Element._trusted(terms, order, self.mode)

    # Products

    def concat_mul(self, a: Element, b: Element) -> Element:
        """Concatenation product of U(h) (commutative in pre-Lie mode)."""
        return self._bilinear(a, b, lambda wa, wb: {self._concat(wa, wb): Fraction(1)})

    def hbracket(self, a: Element, b: Element) -> Element:
        """Commutator [a, b] = ab - ba; identically zero in pre-Lie mode."""
        return self.concat_mul(a, b) - self.concat_mul(b, a)

    def post_lie_prod(self, a: Element, b: Element) -> Element:
        """Post-Lie product a > b extended to U(h)."""
        return self._bilinear(a, b, self._prod_words)

    def gl_mul(self, a: Element, b: Element) -> Element:
        """Grossman-Larson product a * b = sum a1 (a2 > b)."""
        return self._bilinear(a, b, self._gl_words)

    def gbracket(self, a: Element, b: Element) -> Element:
        """Lie bracket of the second structure: a > b - b > a + [a, b]."""
        return self.post_lie_prod(a, b) - self.post_lie_prod(b, a) + self.hbracket(a, b)

    # Coalgebra

    def coproduct(self, a: Element) -> Dict[Tuple[Monomial, Monomial], Fraction]:
        """Unshuffle coproduct as a sparse tensor keyed by word pairs."""
        self._check(a)
        tensor: Dict[Tuple[Monomial, Monomial], Fraction] = {}
        for word, coefficient in a._terms.items():
            for pair in deshuffle(word):
                value = tensor.get(pair, 0) + coefficient
                if value:
                    tensor[pair] = value
                else:
                    tensor.pop(pair, None)
        return tensor

    def is_primitive(self, a: Element) -> bool:
        """True when Delta(a) = a (x) 1 + 1 (x) a."""
        if a.augmentation() != 0:
            return False
        expected: Dict[Tuple[Monomial, Monomial], Fraction] = {}
        for word, coefficient in a._terms.items():
            for pair in ((word, UNIT), (UNIT, word)):
                expected[pair] = expected.get(pair, 0) + coefficient
        return self.coproduct(a) == {k: v for k, v in expected.items() if v}

    def is_grouplike(self, a: Element) -> bool:
        """True when eps(a) = 1 and Delta(a) = a (x) a through the truncation order."""
        order = self._check(a)
        if a.augmentation() != 1:
            return False
        expected: Dict[Tuple[Monomial, Monomial], Fraction] = {}
        for w1, c1 in a._terms.items():
            for w2, c2 in a._terms.items():
                if monomial_degree(w1) + monomial_degree(w2) <= order:
                    expected[(w1, w2)] = c1 * c2
        actual = {
            k: v for k, v in self.coproduct(a).items()
            if monomial_degree(k[0]) + monomial_degree(k[1]) <= order
        }
        return actual == expected

    def _require_primitive(self, a: Element, name: str) -> None:
        if a.augmentation() != 0:
            raise DomainError(f"{name} requires zero augmentation, got {a.augmentation()}")
        if not self.is_primitive(a):
            raise DomainError(f"{name} requires a primitive (Lie) element")

    # Exponentials and logarithms

    def _exp_series(self, p: Element, mul: Callable[[Element, Element], Element]) -> Element:
        order = self._check(p)
        if p.augmentation() != 0:
            raise DomainError(f"exp requires zero augmentation, got {p.augmentation()}")
        p = p.truncate(order)
        result = Element.one(order, self.mode)
        power = Element.one(order, self.mode)
        for n in range(1, order + 1):
            power = mul(power, p) / n
            if power.is_zero():
                break
            result = result + power
        return result

    def _log_series(self, g: Element, mul: Callable[[Element, Element], Element]) -> Element:
        order = self._check(g)
        if g.augmentation() != 1:
            raise DomainError(f"log requires augmentation 1, got {g.augmentation()}")
        u = g.truncate(order) - Element.one(order, self.mode)
        result = Element.zero(order, self.mode)
        power = Element.one(order, self.mode)
        for n in range(1, order + 1):
            power = mul(power, u)
            if power.is_zero():
                break
            result = result + power * Fraction((-1) ** (n + 1), n)
        return result

    def exp_concat(self, p: Element) -> Element:
        return self._exp_series(p, self.concat_mul)

    def log_concat(self, g: Element) -> Element:
        return self._log_series(g, self.concat_mul)

    def exp_gl(self, p: Element) -> Element:
        return self._exp_series(p, self.gl_mul)

    def log_gl(self, g: Element) -> Element:
        return self._log_series(g, self.gl_mul)

    # Theta: U(g) -> U(h)

    def _theta_word(self, word: Monomial) -> WordTerms:
        cached = self._theta_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            result: WordTerms = {UNIT: Fraction(1)}
        else:
            result = {}
            for w, c in self._theta_word(word[1:]).items():
                for w2, c2 in self._gl_words(word[:1], w).items():
                    _add_into(result, w2, c * c2)
        self._theta_cache[word] = result
        return result

    def theta(self, a: Element) -> Element:
        """
        Theta(x1 ... xn) = x1 * ... * xn, extended linearly.

        In pre-Lie mode the letters are taken in their stored (sorted) order.
        """
        order = self._check(a)
        terms: WordTerms = {}
        for word, coefficient in a._terms.items():
            for w, c in self._theta_word(word).items():
                _add_into(terms, w, coefficient * c)
        return Element._trusted(terms, order, self.mode)

    def _nested_prod(self, letters: List[Element]) -> Element:
        # letters[0] > (letters[1] > (... > letters[-1]))
        value = letters[-1]
        for letter in reversed(letters[:-1]):
            value = self.post_lie_prod(letter, value)
        return value

    def _partition_expand(self, letters: List[Element]) -> Element:
        order = self._check(*letters)
        total = Element.zero(order, self.mode)
        for partition in enumerate_set_partitions(len(letters), self.partition_cap):
            term = Element.one(order, self.mode)
            for block in partition.blocks:
                term = self.concat_mul(term, self._nested_prod([letters[i - 1] for i in block]))
                if term.is_zero():
                    break
            total = total + term
        return total

    def theta_via_partitions(self, a: Element) -> Element:
        """
        Theta expanded over set partitions of the letter positions.

        Each partition contributes the concatenation, in canonical block
        order, of right-nested products x_b1 > (x_b2 > (... x_bl)).
        """
        order = self._check(a)
        total = Element.zero(order, self.mode)
        for word, coefficient in a._terms.items():
            if not word:
                total = total + Element.one(order, self.mode) * coefficient
                continue
            letters = [Element._trusted({(t,): Fraction(1)}, order, self.mode) for t in word]
            total = total + self._partition_expand(letters) * coefficient
        return total

    def theta_inverse(self, b: Element) -> Element:
        """
        Inverse of Theta by triangular elimination on word length.

        Theta(w) is w plus strictly shorter words, so the longest words of
        the residual determine the next part of the preimage.
        """
        order = self._check(b)
        residual: WordTerms = {w: c for w, c in b._terms.items() if monomial_degree(w) <= order}
        result: WordTerms = {}
        while residual:
            longest = max(len(w) for w in residual)
            for word, coefficient in [(w, c) for w, c in residual.items() if len(w) == longest]:
                _add_into(result, word, coefficient)
                for w, c in self._theta_word(word).items():
                    _add_into(residual, w, -coefficient * c)
        return Element._trusted(result, order, self.mode)

    # Magnus maps

    def post_lie_magnus(self, x: Element) -> Element:
        """chi(x) = log_*(exp(x)): the primitive element whose GL exponential is exp(x)."""
        self._require_primitive(x, "post_lie_magnus")
        logger.debug(f"chi to order {min(x.order, self.order)} in {self.mode.value} mode")
        return self.log_gl(self.exp_concat(x))

    def post_lie_magnus_recursive(self, x: Element) -> Element:
        """
        chi by the graded recursion

            chi_n = x^n/n! - sum_{k>=2} (1/k!) sum_{p1+..+pk=n} chi_p1 * ... * chi_pk.
        """
        self._require_primitive(x, "post_lie_magnus_recursive")
        order = self._check(x)
        powers = {0: Element.one(order, self.mode)}
        for n in range(1, order + 1):
            powers[n] = self.concat_mul(powers[n - 1], x) / n

        components: Dict[int, Element] = {}
        for n in range(1, order + 1):
            value = powers[n]
            for k in range(2, n + 1):
                for parts in compositions(n, k):
                    product = components[parts[0]]
                    for part in parts[1:]:
                        product = self.gl_mul(product, components[part])
                    value = value - product / factorial(k)
            components[n] = value
            if logger.is_enabled_for(TRACE_LEVEL):
                logger.trace(f"chi_{n} has {len(value)} terms")

        total = Element.zero(order, self.mode)
        for value in components.values():
            total = total + value
        return total

    def post_lie_magnus_fixed_point(self, x: Element) -> Element:
        """
        chi as the fixed point of

            chi = sum_{j>=1} x^j/j! - sum_{n>=2} (1/n!) sum_pi (chi^n)^pi,

        where (chi^n)^pi concatenates, in block order, right-nested post-Lie
        powers of chi of the block sizes. Each sweep fixes one more degree.
        """
        self._require_primitive(x, "post_lie_magnus_fixed_point")
        order = self._check(x)
        one = Element.one(order, self.mode)
        exp_part = self.exp_concat(x) - one

        shapes: Dict[int, Counter] = {}
        for n in range(2, order + 1):
            shapes[n] = Counter(
                tuple(len(block) for block in partition.blocks)
                for partition in enumerate_set_partitions(n, self.partition_cap)
            )

        chi = x.truncate(order)
        for sweep in range(order):
            nested = {1: chi}
            for length in range(2, order + 1):
                nested[length] = self.post_lie_prod(chi, nested[length - 1])

            total = exp_part
            for n, counts in shapes.items():
                for sizes, count in sorted(counts.items()):
                    term = one
                    for size in sizes:
                        term = self.concat_mul(term, nested[size])
                    total = total - term * Fraction(count, factorial(n))
            if total == chi:
                logger.debug(f"chi fixed point reached after {sweep + 1} sweeps")
                break
            chi = total
        return chi

    def inverse_magnus(self, x: Element) -> Element:
        """Phi(x) = log(exp_*(x)), the inverse of chi."""
        self._require_primitive(x, "inverse_magnus")
        return self.log_concat(self.exp_gl(x))

    def upsilon(self, x: Element, y: Element) -> Element:
        """Upsilon_x(y) = y + sum_{n>=1} (x >)^n (y) / n!."""
        self._require_primitive(x, "upsilon")
        order = self._check(x, y)
        total = y.truncate(order)
        term = total
        for n in range(1, order + 1):
            term = self.post_lie_prod(x, term) / n
            if term.is_zero():
                break
            total = total + term
        return total

    def star_group(self, a: Element, b: Element) -> Element:
        """a star b = log(exp(a) * exp(b)), the BCH of the second structure read in h."""
        self._require_primitive(a, "star_group")
        self._require_primitive(b, "star_group")
        return self.log_concat(self.gl_mul(self.exp_concat(a), self.exp_concat(b)))

    def bch_h(self, a: Element, b: Element) -> Element:
        """log(exp(a) exp(b)) under concatenation."""
        self._require_primitive(a, "bch_h")
        self._require_primitive(b, "bch_h")
        return self.log_concat(self.concat_mul(self.exp_concat(a), self.exp_concat(b)))

    def bch_g(self, a: Element, b: Element) -> Element:
        """log_*(exp_*(a) * exp_*(b)) under the Grossman-Larson product."""
        self._require_primitive(a, "bch_g")
        self._require_primitive(b, "bch_g")
        return self.log_gl(self.gl_mul(self.exp_gl(a), self.exp_gl(b)))

    def iterated_post_lie(self, x: Element, n: int) -> Element:
        """Right-nested power x > (x > (... > x)) with n factors."""
        if n < 1:
            raise ValueError(f"Iterated product needs n >= 1, got {n}")
        return self._nested_prod([x] * n)

    def prelie_magnus(self, x: Element) -> Element:
        """
        Pre-Lie Magnus expansion: the fixed point of

            chi = sum_{n>=0} (B_n / n!) L_{chi >}^n (x).

        Raises:
            DomainError: Outside pre-Lie mode or for non-primitive x
        """
        if self.mode is not AlgebraMode.PRELIE:
            raise DomainError("prelie_magnus requires an algebra in prelie mode")
        self._require_primitive(x, "prelie_magnus")
        order = self._check(x)
        x = x.truncate(order)

        chi = x
        for _ in range(order):
            total = x
            term = x
            for n in range(1, order + 1):
                term = self.post_lie_prod(chi, term)
                if term.is_zero():
                    break
                coefficient = bernoulli(n) / factorial(n)
                if coefficient:
                    total = total + term * coefficient
            if total == chi:
                break
            chi = total
        return chi


def abelianize_element(a: Element) -> Element:
    """Image of a planar element in the pre-Lie quotient (trees abelianized, words sorted)."""
    terms: WordTerms = {}
    for word, coefficient in a.terms.items():
        _add_into(terms, normalize_word(word, AlgebraMode.PRELIE), coefficient)
    return Element(terms, a.order, AlgebraMode.PRELIE)


def evaluate_words(a: Element, substitution: Mapping[PlanarTree, np.ndarray]) -> np.ndarray:
    """
    Substitute square matrices for tree letters and sum the words.

    Args:
        a: Element whose letters all appear in ``substitution``
        substitution: Matrix per tree letter

    Returns:
        The resulting matrix (the unit word maps to the identity)

    Raises:
        KeyError: If a letter has no matrix
    """
    dim = next(iter(substitution.values())).shape[0]
    total = np.zeros((dim, dim))
    for word, coefficient in a.items():
        product = np.eye(dim)
        for letter in word:
            product = product @ substitution[letter]
        total = total + float(coefficient) * product
    return total


def evaluate_prelie_tree(tree: PlanarTree, generator: V, product: Callable[[V, V], V]) -> V:
    """
    Evaluate a non-planar tree in a pre-Lie algebra generated by one element.

    Uses B(T1, ..., Tm) = T1 > B(T2, ..., Tm) - sum_i B(T2, .., T1 > Ti, .., Tm),
    which lowers the number of root children at each step. ``V`` needs
    ``+``, ``-`` and multiplication by ints.
    """
    memo: Dict[str, V] = {}

    def value(encoding: str) -> V:
        if encoding in memo:
            return memo[encoding]
        if encoding == "[]":
            result = generator
        else:
            kids = list(_split_children(encoding))
            first, rest = kids[0], kids[1:]
            result = product(value(first), value("[" + "".join(rest) + "]"))
            for i, kid in enumerate(rest):
                grafted = left_graft_sum(PlanarTree(first), PlanarTree(kid))
                for tree_, multiplicity in sorted(grafted.items()):
                    siblings = rest[:i] + [tree_.encoding] + rest[i + 1:]
                    canonical = abelianize(PlanarTree("[" + "".join(siblings) + "]"))
                    result = result - value(canonical.encoding) * multiplicity
        memo[encoding] = result
        return result

    return value(abelianize(tree).encoding)


def evaluate_prelie(
    a: Element,
    generator: V,
    product: Callable[[V, V], V],
    zero: V,
) -> V:
    """
    Evaluate a pre-Lie element made of single trees.

    Raises:
        DomainError: If a term is not a single tree or the element is post-Lie
    """
    if a.mode is not AlgebraMode.PRELIE:
        raise DomainError("evaluate_prelie needs a prelie element")
    total = zero
    for word, coefficient in a.items():
        if len(word) != 1:
            raise DomainError(f"Cannot evaluate word of length {len(word)} in a pre-Lie algebra")
        total = total + evaluate_prelie_tree(word[0], generator, product) * float(coefficient)
    return total
