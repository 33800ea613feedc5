"""Tests of root data and Weyl groups."""

import random

import pytest

from app.exactla.linalg import as_vector, dot, neg
from app.rootsys.datum import (
    ParabolicIndex,
    RootDatum,
    build_root_datum,
    positive_roots_of,
)
from app.rootsys.weyl import (
    WeylElement,
    act,
    inversions,
    min_double_coset_rep,
    weyl_group,
    weyl_order,
    weyl_orbit,
)
from app.utils.errors import UnsupportedType, WeylGroupTooLarge


@pytest.mark.parametrize(
    "spec, positive, dim",
    [
        ("GL2", 1, 2),
        ("A3", 6, 3),
        ("B3", 9, 3),
        ("C4", 16, 4),
        ("D4", 12, 4),
        ("G2", 6, 2),
        ("F4", 24, 4),
        ("E6", 36, 6),
        ("E7", 63, 7),
        ("GL2 x GL3", 4, 5),
        ("E6 x T1", 36, 7),
    ],
)
def test_positive_root_counts(spec: str, positive: int, dim: int) -> None:
    """
    Test the number of positive roots and the ambient dimension.

    Args:
        spec (str): Root datum spec.
        positive (int): Expected number of positive roots.
        dim (int): Expected ambient dimension.
    """
    datum = build_root_datum(spec)
    assert len(datum.positive_roots) == positive
    assert datum.ambient_dim == dim


def test_gl2() -> None:
    """Test the smallest GL datum."""
    datum = build_root_datum("GL2")
    assert datum.simple_roots == (as_vector((1, -1)),)
    assert datum.positive_roots == (as_vector((1, -1)),)


@pytest.mark.parametrize("spec", ["E8", "Q3", "B1", "GL0", ""])
def test_unsupported_types(spec: str) -> None:
    """
    Test that unknown or excluded types are refused.

    Args:
        spec (str): Invalid spec.
    """
    with pytest.raises(UnsupportedType):
        build_root_datum(spec)


@pytest.mark.parametrize("spec", ["B3", "C3", "D4", "G2", "F4", "E6"])
def test_cartan_pairing_and_closure(spec: str) -> None:
    """
    Test <alpha_i, alpha_j^vee> and stability of roots under reflections.

    Args:
        spec (str): Root datum spec.
    """
    datum = build_root_datum(spec)
    for i, a in enumerate(datum.simple_roots):
        for j, c in enumerate(datum.simple_coroots):
            assert dot(a, c) == datum.cartan[i][j]
    roots = set(datum.roots)
    for i in range(datum.rank):
        assert {datum.reflect(i, r) for r in roots} == roots


@pytest.mark.parametrize("spec", ["A2", "B2", "G2", "F4", "E6", "C3"])
def test_delta0_pairs_positively(spec: str) -> None:
    """
    Test that delta_0 pairs to 2 with every simple coroot.

    Args:
        spec (str): Root datum spec.
    """
    datum = build_root_datum(spec)
    for coroot in datum.simple_coroots:
        assert dot(datum.delta0, coroot) == 2


def test_positive_roots_of_f4() -> None:
    """Test Borel, full and (00*0) parabolics of F4."""
    datum = build_root_datum("F4")
    full = positive_roots_of(datum.all_simple, datum)
    assert len(full.levi) == 24 and not full.nilradical
    borel = positive_roots_of(ParabolicIndex(), datum)
    assert not borel.levi and len(borel.nilradical) == 24
    levi3 = positive_roots_of(ParabolicIndex.of({2}), datum)
    assert levi3.levi == (datum.simple_roots[2],)
    assert len(levi3.nilradical) == 23
    assert levi3.delta0_levi == datum.simple_roots[2]


def test_parabolic_pattern() -> None:
    """Test the star pattern rendering."""
    assert ParabolicIndex.of({2}).pattern(range(4)) == "(00*0)"


@pytest.mark.parametrize(
    "spec, order", [("GL2", 2), ("G2", 12), ("B3", 48), ("D4", 192)]
)
def test_weyl_group_small(spec: str, order: int) -> None:
    """
    Test enumeration counts and reduced words of small groups.

    Args:
        spec (str): Root datum spec.
        order (int): Expected group order.
    """
    datum = build_root_datum(spec)
    elements = list(weyl_group(datum))
    assert len(elements) == order == weyl_order(datum)
    assert len(set(elements)) == order
    for w in elements:
        assert w.length == inversions(w)


@pytest.mark.slow
@pytest.mark.parametrize("spec, order", [("F4", 1152), ("E6", 51840)])
def test_weyl_group_exceptional(spec: str, order: int) -> None:
    """
    Test |W(F4)| and |W(E6)| by enumeration.

    Args:
        spec (str): Root datum spec.
        order (int): Expected group order.
    """
    datum = build_root_datum(spec)
    assert sum(1 for _ in weyl_group(datum)) == order


def test_weyl_group_limit() -> None:
    """Test that the enumeration bound is enforced."""
    datum = build_root_datum("E7")
    with pytest.raises(WeylGroupTooLarge):
        next(weyl_group(datum, limit=1000))


def test_weyl_group_rank_limit() -> None:
    """Test that rank 8 is refused whatever the order bound."""
    datum = build_root_datum("A8")
    assert datum.rank == 8
    with pytest.raises(WeylGroupTooLarge, match="rank 8"):
        next(weyl_group(datum, limit=10**9))
    # ранг 7 ещё допустим
    assert next(weyl_group(build_root_datum("A7"), limit=10**9)).length == 0


def test_act_examples() -> None:
    """Test identity, s_alpha(alpha) and s_alpha(beta)."""
    datum = build_root_datum("A2")
    e = WeylElement.identity(datum)
    assert act(e, (3, 5)) == as_vector((3, 5))
    s1 = WeylElement.from_word(datum, [0])
    alpha, beta = datum.simple_roots
    assert act(s1, alpha) == neg(alpha)
    # <beta, alpha^vee> = -1 in A2, so s_alpha(beta) = alpha + beta
    assert act(s1, beta) == tuple(a + b for a, b in zip(alpha, beta))


def test_from_word_reduces() -> None:
    """Test that s_i s_i collapses to the identity."""
    datum = build_root_datum("B2")
    assert WeylElement.from_word(datum, [1, 1]).is_identity
    w = WeylElement.from_word(datum, [0, 1, 0])
    assert w.length == 3
    assert act(w.inverse(), act(w, (1, 2))) == as_vector((1, 2))


def _double_coset_sample(
    datum: RootDatum,
    w: WeylElement,
    left: ParabolicIndex,
    right: ParabolicIndex,
    rng: random.Random,
) -> WeylElement:
    word = list(w.word)
    for _ in range(rng.randint(0, 4)):
        if left and rng.random() < 0.5:
            word.insert(0, rng.choice(sorted(left.subset)))
        elif right:
            word.append(rng.choice(sorted(right.subset)))
    return WeylElement.from_word(datum, word)


def test_min_double_coset_rep() -> None:
    """Test trivial cases and minimality against random coset members."""
    datum = build_root_datum("F4")
    e = WeylElement.identity(datum)
    some = ParabolicIndex.of({0, 2})
    assert min_double_coset_rep(e, some, ParabolicIndex()).is_identity
    w = WeylElement.from_word(datum, [0, 1, 2, 3, 2, 1])
    full = datum.all_simple
    assert min_double_coset_rep(w, full, full).is_identity

    rng = random.Random(5)
    left, right = ParabolicIndex.of({0, 1}), ParabolicIndex.of({3})
    for _ in range(30):
        word = [rng.randrange(4) for _ in range(rng.randint(0, 10))]
        w = WeylElement.from_word(datum, word)
        rep = min_double_coset_rep(w, left, right)
        for _ in range(10):
            other = _double_coset_sample(datum, w, left, right, rng)
            assert rep.length <= other.length
            assert min_double_coset_rep(other, left, right) == rep


def test_min_double_coset_rep_e6_reflection() -> None:
    """Test that s_4 is minimal in W_P s_4 W_Q for the E6 filtration."""
    datum = build_root_datum("E6")
    s4 = WeylElement.from_word(datum, [3])
    levi_g = ParabolicIndex.of({0, 1, 2, 4, 5})
    stab = ParabolicIndex.of({1, 2, 4})
    assert min_double_coset_rep(s4, levi_g, stab) == s4


def test_weyl_orbit() -> None:
    """Test the orbit of a cocharacter of A2 and the stored elements."""
    datum = build_root_datum("A2")
    orbit = weyl_orbit(datum, (1, 0))
    assert len(orbit) == 3
    for point, w in orbit.items():
        image = (1, 0)
        for i in reversed(w.word):
            image = datum.coreflect(i, image)
        assert image == point
