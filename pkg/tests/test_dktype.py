"""Tests of gradings, DK-type instances and induced filtrations."""

import logging
from fractions import Fraction

import pytest
from pytest_mock import MockerFixture

from app.catalog.instances import (
    IFD_CATALOG,
    dk_instance,
    e6_parabolic,
    e6_prime_ifds,
    f4_prime_ifds,
    gl_chain,
    gl_prime_ifds,
    gl_type_parabolic,
    members_of,
)
from app.dktype import grading as grading_module
from app.dktype.grading import (
    AmbientGroup,
    Filtration,
    GradingElement,
    IfdSpec,
    build_dk_pvs,
    ifd_to_grading,
    ifiltration_pieces,
)
from app.dktype.standardize import (
    ifd_special,
    richardson_special,
    standardize_ifiltration,
)
from app.pvscore.instance import PvsInstance
from app.pvscore.regularity import SamplingPlan
from app.rootsys.datum import ParabolicIndex
from app.utils.errors import GradingError, NotFound
from app.utils.types import IndexSet
from tests.utils import e6_named_subspaces, f4_named

lgr = logging.getLogger(__name__)

F4_WEIGHTS = {
    (0, 1, 0, 0),
    (1, 1, 0, 0),
    (0, 1, 1, 0),
    (1, 1, 1, 0),
    (0, 1, 2, 0),
    (1, 1, 2, 0),
    (0, 1, 1, 1),
    (1, 1, 1, 1),
    (0, 1, 2, 1),
    (1, 1, 2, 1),
    (0, 1, 2, 2),
    (1, 1, 2, 2),
}


def _gl_cut(inst: PvsInstance, pairs: list[tuple[int, int]]) -> IndexSet:
    roots = []
    for a, b in pairs:
        root = [Fraction(0)] * inst.dim
        root[a], root[b] = Fraction(1), Fraction(-1)
        roots.append(tuple(root))
    return frozenset(range(inst.n_weights)) - members_of(inst, roots)


def test_f4_dk_weights(f4: PvsInstance) -> None:
    """Test Psi_V and G for the labels (0,2,0,0)."""
    coeffs = f4.datum.coeffs_by_root
    assert {coeffs[beta] for beta in f4.psi_v} == F4_WEIGHTS
    heights = [sum(coeffs[beta]) for beta in f4.psi_v]
    assert heights == sorted(heights)
    assert f4.g_simple == ParabolicIndex.of((0, 2, 3))
    assert f4.grading == (0, 2, 0, 0)
    assert f4.multiplicities == (1,) * 12


def test_e6_dk_weights(e6: PvsInstance) -> None:
    """Test that V is spanned by the roots with alpha_4 coefficient 1."""
    coeffs = e6.datum.coeffs_by_root
    expected = {
        r for r in e6.datum.positive_roots if coeffs[r][3] == 1
    }
    assert set(e6.psi_v) == expected
    assert e6.n_weights == 18
    assert e6.g_simple == ParabolicIndex.of((0, 1, 2, 4, 5))


def test_zero_grading_gives_empty_space(mocker: MockerFixture) -> None:
    """Test the warning on an all-zero weighted diagram."""
    spy = mocker.spy(grading_module.lgr, "warning")
    inst = dk_instance("A2", (0, 0))
    assert inst.n_weights == 0
    assert inst.g_simple == ParabolicIndex.of((0, 1))
    spy.assert_called_once()


def test_grading_errors() -> None:
    """Test rejected labels, gradings and filtration data."""
    datum = AmbientGroup.of("A2").datum
    with pytest.raises(GradingError):
        GradingElement.from_labels(datum, (2,))
    with pytest.raises(GradingError):
        GradingElement.from_labels(datum, (Fraction(1, 2), 0))
    with pytest.raises(GradingError):
        dk_instance("A2", (2, -2))
    with pytest.raises(GradingError):
        half = (Fraction(1, 2),) + (Fraction(0),) * (datum.ambient_dim - 1)
        GradingElement(half).labels(datum)
    with pytest.raises(GradingError):
        IfdSpec(ParabolicIndex.of((0,)), (1, 1))
    with pytest.raises(GradingError):
        IfdSpec(ParabolicIndex.of((0,)), (-1,))
    with pytest.raises(GradingError):
        ifd_to_grading(AmbientGroup.of("A2"), IfdSpec(ParabolicIndex.of((5,))))


def test_filtration_pieces(f4: PvsInstance) -> None:
    """Test the root filtration of the F4 grading."""
    group = AmbientGroup.of("F4")
    h = GradingElement.from_labels(group.datum, (0, 2, 0, 0))
    filtration = ifiltration_pieces(group.datum, h)
    assert filtration.odd_part_empty
    assert filtration.brackets_closed()
    assert filtration.graded(2) == frozenset(f4.psi_v)
    coeffs = group.datum.coeffs_by_root
    assert {coeffs[r][1] for r in filtration.piece(4)} == {2, 3}
    assert filtration.piece(-100) == frozenset(group.datum.roots)


def test_filtration_with_odd_part() -> None:
    """Test that label 1 leaves roots of odd degree."""
    datum = AmbientGroup.of("A2").datum
    filtration = Filtration(datum, GradingElement.from_labels(datum, (1, 0)))
    assert not filtration.odd_part_empty
    assert len(filtration.graded(1)) == 2


def test_ifd_labels() -> None:
    """Test h_L on Q and 2 off Q."""
    ifd = IfdSpec(ParabolicIndex.of((1, 2, 3)), (0, 1, 0))
    assert ifd.labels(4) == [2, 0, 1, 0]
    assert IfdSpec(ParabolicIndex.of((1, 2))).labels(4) == [2, 0, 0, 2]


def test_gl_type_parabolic() -> None:
    """Test block parabolics of GL_n."""
    assert gl_type_parabolic((3, 2, 2, 1, 1)) == ParabolicIndex.of(
        (0, 1, 3, 5)
    )
    assert gl_type_parabolic((2, 1, 1)) == ParabolicIndex.of((0,))


@pytest.mark.parametrize("name", ["g2", "binary-quadratics"])
def test_rank_two_richardson(
    name: str,
    quadratics: PvsInstance,
    cubics: PvsInstance,
    plan: SamplingPlan,
) -> None:
    """Test that the Richardson datum of beta gives U = V minus beta."""
    target = cubics if name == "g2" else quadratics
    (ifd,) = IFD_CATALOG[name]()
    result = ifd_special(target, ifd, plan)
    assert result.subspace.members == frozenset(
        range(1, target.n_weights)
    )
    assert result.report.special
    assert result.report.stab == ParabolicIndex()


def test_f4_ifds(f4: PvsInstance, plan: SamplingPlan) -> None:
    """Test the four F4 filtration data against the pictures."""
    named = f4_named(f4)
    expected = ["U1", "U2", "U3", "U2"]
    for ifd, name in zip(f4_prime_ifds(), expected):
        result = ifd_special(f4, ifd, plan)
        lgr.debug(f"{ifd.label}: w = {result.w.one_based_word()}")
        assert result.subspace.members == named[name], ifd.label


@pytest.mark.slow
def test_e6_ifds(e6: PvsInstance, plan: SamplingPlan) -> None:
    """Test the E6 filtration data, their mirrors and the spin8 datum."""
    named = e6_named_subspaces(e6)
    expected = [
        "U1",
        "U2",
        "U12",
        "U2''",
        "U1",
        "U1'",
        "U2'",
        "U1'2'",
        "U3''",
    ]
    ifds = e6_prime_ifds()
    assert len(ifds) == len(expected)
    for ifd, name in zip(ifds, expected):
        result = ifd_special(e6, ifd, plan)
        assert result.subspace.members == named[name], ifd.label
    spin8 = ifd_special(e6, ifds[-1], plan)
    assert spin8.w.one_based_word() == [4]
    assert ifds[-1].q_subset == e6_parabolic("0***0", "*")


@pytest.mark.parametrize(
    "sizes, v1, v2",
    [
        ((1, 2, 1), [(0, 1)], [(2, 3)]),
        ((2, 3, 2), [(0, 2), (1, 2)], [(4, 5), (4, 6)]),
    ],
)
def test_gl_prime_ifds(
    sizes: tuple[int, int, int],
    v1: list[tuple[int, int]],
    v2: list[tuple[int, int]],
    plan: SamplingPlan,
) -> None:
    """Test Q(n2,n1,n1) -> V1 and Q(n1,n1,n2) -> V2 one by one."""
    target = gl_chain(sizes)
    n1, n2 = sizes[0], sizes[1]
    for q_sizes, cut in (((n2, n1, n1), v1), ((n1, n1, n2), v2)):
        q = gl_type_parabolic(q_sizes)
        expected = _gl_cut(target, cut)
        result = richardson_special(target, q, plan)
        assert result.subspace.members == expected, q_sizes
        naive = richardson_special(target, q, plan, standardize=False)
        assert naive.subspace.members == expected, q_sizes
    first, second = gl_prime_ifds(n1, n2)
    assert first.q_subset == gl_type_parabolic((n2, n1, n1))
    assert second.q_subset == gl_type_parabolic((n1, n1, n2))


def test_richardson_without_conjugation_misses(plan: SamplingPlan) -> None:
    """Test NotFound for V meet n_Q of the chain (1,2,3,2,1)."""
    target = gl_chain((1, 2, 3, 2, 1))
    q = gl_type_parabolic((3, 2, 2, 1, 1))
    with pytest.raises(NotFound):
        richardson_special(target, q, plan, standardize=False)


def test_richardson_with_conjugation_is_special(plan: SamplingPlan) -> None:
    """Test that the standardized chain (1,2,3,2,1) datum gives a special U."""
    target = gl_chain((1, 2, 3, 2, 1))
    q = gl_type_parabolic((3, 2, 2, 1, 1))
    result = richardson_special(target, q, plan)
    assert result.report.special
    assert result.report.stab == ParabolicIndex()
    assert result.subspace.codim == 5
    assert result.subspace.one_based() == [
        1, 5, 6, 7, 10, 11, 12, 13, 14, 15, 16
    ]
    assert result.w.length > 0


def test_build_dk_pvs_g2(cubics: PvsInstance, plan: SamplingPlan) -> None:
    """Test binary cubics from G2 (0,2) and the conjugated Richardson U."""
    group = AmbientGroup.of("G2")
    grading = GradingElement.from_labels(group.datum, (0, 2))
    inst = build_dk_pvs(group, grading, "cubics")
    assert inst.psi_v == cubics.psi_v
    assert inst.g_simple == ParabolicIndex.of((0,))
    assert inst.grading == (0, 2)

    ifd_grading = ifd_to_grading(group, IfdSpec(ParabolicIndex.of((1,))))
    result = standardize_ifiltration(cubics, ifd_grading, plan)
    assert result.subspace.members == frozenset(range(1, 4))
    assert result.report.stab == ParabolicIndex()
