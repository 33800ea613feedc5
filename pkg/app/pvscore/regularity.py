"""Minset certification by sampling and the fundamental cone check."""

import hashlib
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from app.config import analyzer_config
from app.exactla.cones import cone_membership, positive_envelope
from app.exactla.linalg import add, as_vector
from app.pvscore.instance import WeightSubspace
from app.relinv.oracle import (
    SamplePoint,
    evaluate_frips,
    frip_degree,
    frip_plan,
    sample_point,
)
from app.utils.errors import InstanceError, NotInCone
from app.utils.types import IndexSet, Vector

lgr = logging.getLogger(__name__)

# предел числа состояний при поиске целой комбинации
INTEGRAL_STATE_CAP = 50_000


class MinsetStatus(str, Enum):
    """Answer of the regularity oracle on a subspace."""

    CERTIFIED = "certified"
    REFUTED_LIKELY = "refuted_likely"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SamplingPlan:
    """Number of trials, growing heights and the base seed."""

    trials: int = field(default_factory=lambda: analyzer_config.TRIALS)
    heights: tuple[int, ...] = field(
        default_factory=lambda: tuple(analyzer_config.HEIGHTS)
    )
    seed: int = field(default_factory=lambda: analyzer_config.SEED)

    def __post_init__(self) -> None:
        if self.trials < 1 or not self.heights:
            raise ValueError("Sampling needs trials and heights")
        if any(h < 1 for h in self.heights):
            raise ValueError("Sampling heights must be positive")

    def height_at(self, trial: int) -> int:
        return self.heights[trial * len(self.heights) // self.trials]


@dataclass(frozen=True)
class RegularityResult:
    status: MinsetStatus
    point: SamplePoint | None = None
    trials_used: int = 0


def trial_seed(seed: int, members: IndexSet, trial: int) -> int:
    """Seed of one trial, independent of evaluation order."""
    payload = f"{seed}|{sorted(members)}|{trial}".encode()
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "big")


def certify_regularity(
    subspace: WeightSubspace, plan: SamplingPlan | None = None
) -> RegularityResult:
    """
    Look for a point of U where every FRIP is nonzero.

    A hit is a proof of U in Minset(V). Missing every trial only makes the
    refutation likely.

    Args:
        subspace (WeightSubspace): Subspace to test.
        plan (SamplingPlan | None): Sampling knobs; config defaults if None.

    Returns:
        RegularityResult: Status with the certifying point, if any.
    """
    plan = plan or SamplingPlan()
    if subspace.is_whole and subspace.instance.n_weights:
        return RegularityResult(MinsetStatus.CERTIFIED)
    oracle = subspace.instance.oracle
    if oracle is None:
        lgr.warning(
            f"{subspace.instance.name}: no oracle, regularity of "
            f"{subspace.one_based()} unknown"
        )
        return RegularityResult(MinsetStatus.UNKNOWN)

    for trial in range(plan.trials):
        point = sample_point(
            subspace.members,
            oracle,
            plan.height_at(trial),
            trial_seed(plan.seed, subspace.members, trial),
        )
        if all(evaluate_frips(oracle, point)):
            lgr.debug(
                f"{subspace.one_based()} certified at trial {trial}"
            )
            return RegularityResult(MinsetStatus.CERTIFIED, point, trial + 1)
    return RegularityResult(MinsetStatus.REFUTED_LIKELY, None, plan.trials)


def minset_certify(
    subspace: WeightSubspace, plan: SamplingPlan | None = None
) -> MinsetStatus:
    return certify_regularity(subspace, plan).status


@dataclass(frozen=True)
class CharacterCheck:
    """
    Position of one fundamental character relative to Psi_U.

    Attributes:
        character (Vector): chi in Sigma.
        rational_ok (bool): chi is in the rational cone of Psi_U.
        rational_witness (Vector | None): Nonnegative coefficients.
        integral_ok (bool | None): chi is a nonnegative integral
            combination; None when the search gave up.
        integral_witness (tuple[int, ...] | None): Integral coefficients.
        support (IndexSet): Weight indices U' with chi in R>0 Psi_U'.
    """

    character: Vector
    rational_ok: bool
    rational_witness: Vector | None = None
    integral_ok: bool | None = None
    integral_witness: tuple[int, ...] | None = None
    support: IndexSet = frozenset()


@dataclass(frozen=True)
class FundamentalConeReport:
    checks: tuple[CharacterCheck, ...]

    @property
    def rational_ok(self) -> bool:
        return all(c.rational_ok for c in self.checks)


def _integral_combination(
    target: Vector, generators: list[Vector], bound: int
) -> tuple[bool | None, tuple[int, ...] | None]:
    """Breadth-first search over sums of at most `bound` generators."""
    zero_counts = (0,) * len(generators)
    layer: dict[Vector, tuple[int, ...]] = {
        tuple(Fraction(0) for _ in target): zero_counts
    }
    if target in layer:
        return True, zero_counts
    seen = set(layer)
    for _ in range(bound):
        following: dict[Vector, tuple[int, ...]] = {}
        for partial, counts in layer.items():
            for i, g in enumerate(generators):
                total = add(partial, g)
                if total in seen:
                    continue
                seen.add(total)
                bumped = counts[:i] + (counts[i] + 1,) + counts[i + 1:]
                if total == target:
                    return True, bumped
                following[total] = bumped
        if len(seen) > INTEGRAL_STATE_CAP:
            lgr.debug(f"Integral search for {target} stopped at cap")
            return None, None
        layer = following
        if not layer:
            break
    return False, None


def _degree_bound(
    subspace: WeightSubspace, index: int, rational: Vector
) -> int:
    inst = subspace.instance
    oracle = inst.oracle
    if oracle is not None and len(frip_plan(oracle)) == len(inst.fund_chars):
        try:
            return frip_degree(oracle, index)
        except InstanceError as e:
            lgr.debug(f"No FRIP degree for character {index}: {e}")
    return 2 * math.ceil(sum(rational))


def fundamental_cone_check(
    subspace: WeightSubspace, integral: bool = True
) -> FundamentalConeReport:
    """
    Check that every fundamental character lies in the cone of Psi_U.

    The integral search is bounded by the FRIP degree when the oracle
    knows it, otherwise by twice the rational coefficient sum.

    Args:
        subspace (WeightSubspace): Subspace U.
        integral (bool): Also search integral combinations.

    Returns:
        FundamentalConeReport: One check per character of Sigma.
    """
    weights = list(subspace.weights)
    members = sorted(subspace.members)
    checks = []
    for index, chi in enumerate(subspace.instance.fund_chars):
        if not weights:
            checks.append(CharacterCheck(chi, False, integral_ok=False))
            continue
        membership = cone_membership(chi, weights)
        if not membership.member or membership.witness is None:
            checks.append(CharacterCheck(chi, False, integral_ok=False))
            continue
        try:
            support = frozenset(
                members[i] for i in positive_envelope(chi, weights)
            )
        except NotInCone:
            support = frozenset()
        found: bool | None = None
        witness = None
        if integral:
            bound = _degree_bound(subspace, index, membership.witness)
            found, witness = _integral_combination(
                as_vector(chi), [as_vector(w) for w in weights], bound
            )
        checks.append(
            CharacterCheck(
                chi, True, membership.witness, found, witness, support
            )
        )
    return FundamentalConeReport(tuple(checks))
