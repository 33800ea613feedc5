"""Weyl group elements, enumeration and coset representatives."""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Iterator, Sequence

from app.config import analyzer_config
from app.exactla.linalg import to_ints
from app.rootsys.datum import ParabolicIndex, RootDatum
from app.utils.errors import WeylGroupTooLarge
from app.utils.types import IntVector, Numeric, Vector

lgr = logging.getLogger(__name__)


def _pair(u: IntVector, v: IntVector) -> int:
    return sum(a * b for a, b in zip(u, v))


def _reflect_key(datum: RootDatum, i: int, key: IntVector) -> IntVector:
    c = _pair(key, datum.int_simple_coroots[i])
    return tuple(a - c * b for a, b in zip(key, datum.int_simple_roots[i]))


@dataclass(frozen=True)
class WeylElement:
    """
    Element w of the Weyl group.

    Elements are identified by `key` = w(delta_0), which is regular, so two
    elements are equal iff their keys are. `word` is a reduced expression
    w = s_{word[0]} ... s_{word[-1]}.
    """

    datum: RootDatum = field(compare=False, repr=False)
    word: tuple[int, ...] = field(compare=False)
    key: IntVector

    @classmethod
    def identity(cls, datum: RootDatum) -> "WeylElement":
        return cls(datum, (), to_ints(datum.delta0))

    @classmethod
    def from_key(cls, datum: RootDatum, key: IntVector) -> "WeylElement":
        """Recover a reduced word from w(delta_0) by left descents."""
        word = []
        current = key
        while True:
            descent = next(
                (
                    i
                    for i, c in enumerate(datum.int_simple_coroots)
                    if _pair(current, c) < 0
                ),
                None,
            )
            if descent is None:
                break
            word.append(descent)
            current = _reflect_key(datum, descent, current)
        return cls(datum, tuple(word), key)

    @classmethod
    def from_word(
        cls, datum: RootDatum, word: Sequence[int]
    ) -> "WeylElement":
        """Element of an arbitrary (possibly non-reduced) word."""
        key = to_ints(datum.delta0)
        for i in reversed(word):
            key = _reflect_key(datum, i, key)
        return cls.from_key(datum, key)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    @cached_property
    def matrix(self) -> tuple[Vector, ...]:
        """Rows of the matrix of w acting on characters."""
        dim = self.datum.ambient_dim
        columns = [
            act(self, tuple(Fraction(int(i == j)) for j in range(dim)))
            for i in range(dim)
        ]
        return tuple(
            tuple(columns[j][i] for j in range(dim)) for i in range(dim)
        )

    def inverse(self) -> "WeylElement":
        return WeylElement.from_word(self.datum, self.word[::-1])

    def multiply(self, other: "WeylElement") -> "WeylElement":
        """Product self * other."""
        return WeylElement.from_word(self.datum, self.word + other.word)

    def one_based_word(self) -> list[int]:
        return [i + 1 for i in self.word]


def act(w: WeylElement, v: Sequence[Numeric]) -> Vector:
    """
    Apply w to a character.

    Args:
        w (WeylElement): Weyl group element.
        v (Sequence[Numeric]): Character in ambient coordinates.

    Returns:
        Vector: w(v).
    """
    out = tuple(Fraction(a) for a in v)
    for i in reversed(w.word):
        out = w.datum.reflect(i, out)
    return out


def act_cocharacter(w: WeylElement, y: Sequence[Numeric]) -> Vector:
    """Apply w to a cocharacter."""
    out = tuple(Fraction(a) for a in y)
    for i in reversed(w.word):
        out = w.datum.coreflect(i, out)
    return out


def inversions(w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    return sum(
        1
        for root in w.datum.positive_roots
        if not w.datum.is_positive_root(act(w, root))
    )


def weyl_order(datum: RootDatum) -> int:
    """Order of W from the factor formulas."""
    return prod(f.weyl_order for f in datum.factors)


def weyl_group(
    datum: RootDatum, limit: int | None = None
) -> Iterator[WeylElement]:
    """
    Stream all Weyl group elements by increasing length.

    Only two length layers are kept in memory at a time. Both the rank and
    the order of W are bounded.

    Args:
        datum (RootDatum): Root datum.
        limit (int | None): Refuse groups of larger order. Defaults to
            `WEYL_ORDER_LIMIT` of the config.

    Yields:
        WeylElement: Each element exactly once.

    Raises:
        WeylGroupTooLarge: If |W| exceeds the limit or the rank exceeds
            `WEYL_RANK_LIMIT`.
    """
    if datum.rank > analyzer_config.WEYL_RANK_LIMIT:
        raise WeylGroupTooLarge(
            f"{datum.type_label} has rank {datum.rank}, enumeration stops "
            f"at {analyzer_config.WEYL_RANK_LIMIT}"
        )
    limit = analyzer_config.WEYL_ORDER_LIMIT if limit is None else limit
    order = weyl_order(datum)
    if order > limit:
        raise WeylGroupTooLarge(
            f"|W({datum.type_label})| = {order} exceeds limit {limit}"
        )
    lgr.info(f"Enumerating {order} elements of W({datum.type_label})")

    layer: dict[IntVector, tuple[int, ...]] = {to_ints(datum.delta0): ()}
    count = 0
    while layer:
        following: dict[IntVector, tuple[int, ...]] = {}
        for key, word in layer.items():
            count += 1
            yield WeylElement(datum, word, key)
            for i, coroot in enumerate(datum.int_simple_coroots):
                if _pair(key, coroot) > 0:
                    image = _reflect_key(datum, i, key)
                    if image not in following:
                        following[image] = (i, *word)
        layer = following
    lgr.debug(f"W({datum.type_label}): {count} elements enumerated")


def _right_descent(w: WeylElement, i: int) -> IntVector | None:
    """Key of w*s_i when it is shorter than w."""
    image = act(w, w.datum.simple_roots[i])
    if w.datum.is_positive_root(image):
        return None
    # s_i(delta_0) = delta_0 - 2 alpha_i
    return tuple(k - 2 * int(a) for k, a in zip(w.key, image))


def min_double_coset_rep(
    w: WeylElement, left: ParabolicIndex, right: ParabolicIndex
) -> WeylElement:
    """
    Minimal length element of W_left * w * W_right.

    Descends greedily; the unique element without left descents in `left`
    and right descents in `right` is the minimal one.

    Args:
        w (WeylElement): Any element of the double coset.
        left (ParabolicIndex): Left parabolic.
        right (ParabolicIndex): Right parabolic.

    Returns:
        WeylElement: Minimal representative.
    """
    datum = w.datum
    current = w
    changed = True
    while changed:
        changed = False
        for i in left:
            coroot = datum.int_simple_coroots[i]
            if _pair(current.key, coroot) < 0:
                key = _reflect_key(datum, i, current.key)
                current = WeylElement.from_key(datum, key)
                changed = True
        for i in right:
            key = _right_descent(current, i)
            if key is not None:
                current = WeylElement.from_key(datum, key)
                changed = True
    return current


def weyl_orbit(
    datum: RootDatum, y: Sequence[Numeric]
) -> dict[Vector, WeylElement]:
    """
    W-orbit of a cocharacter.

    Breadth-first search over simple reflections, generators in increasing
    order; each point is mapped to the element first reaching it.

    Args:
        datum (RootDatum): Root datum.
        y (Sequence[Numeric]): Cocharacter.

    Returns:
        dict[Vector, WeylElement]: Orbit point -> element w with w(y) = point.
    """
    start = tuple(Fraction(a) for a in y)
    words: dict[Vector, tuple[int, ...]] = {start: ()}
    queue = deque([start])
    while queue:
        point = queue.popleft()
        for i in range(datum.rank):
            image = datum.coreflect(i, point)
            if image not in words:
                words[image] = (i, *words[point])
                queue.append(image)
    lgr.debug(f"Orbit of {y}: {len(words)} points")
    return {p: WeylElement.from_word(datum, w) for p, w in words.items()}
