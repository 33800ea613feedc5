"""Matchings, the special subspace test and the enumeration of Spcl(V)."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import TYPE_CHECKING, Hashable

import networkx as nx
from networkx.algorithms.bipartite import hopcroft_karp_matching

from app.config import analyzer_config
from app.exactla.linalg import add, vector_sum
from app.pvscore.closure import p0_stable_sets, stabilizer_of
from app.pvscore.gauge import env_of, lambda_of
from app.pvscore.instance import PvsInstance, WeightSubspace
from app.pvscore.regularity import MinsetStatus, SamplingPlan, minset_certify
from app.rootsys.datum import ParabolicIndex
from app.utils.errors import CapExceeded, InvariantViolation, NotInCone
from app.utils.types import Vector

if TYPE_CHECKING:
    from app.pvscore.convergence import ConvergenceCertificate
    from app.pvscore.exceptional import ExceptionalWitness

lgr = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatchingWitness:
    """
    Injective assignment of weight slots to root slots.

    `pairs` holds (weight index, root) with beta_j + alpha in Psi_U; a
    weight of multiplicity n appears n times, the zero root stands for a
    slot of the torus.
    """

    pairs: tuple[tuple[int, Vector], ...]

    def weight_sums(self, inst: PvsInstance) -> list[Vector]:
        return [add(inst.psi_v[j], alpha) for j, alpha in self.pairs]


def _match(
    subspace: WeightSubspace,
    weight_slots: list[tuple[int, int]],
    root_slots: list[tuple[Vector, int]],
) -> MatchingWitness | None:
    """Perfect matching of the weight side, if there is one."""
    if not weight_slots:
        return MatchingWitness(())
    inst = subspace.instance
    targets = subspace.weight_set
    graph = nx.Graph()
    left: list[Hashable] = [("w", j, c) for j, c in weight_slots]
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from((("r", a, c) for a, c in root_slots), bipartite=1)
    for j, c in weight_slots:
        for alpha, rc in root_slots:
            if add(inst.psi_v[j], alpha) in targets:
                graph.add_edge(("w", j, c), ("r", alpha, rc))
    matching = hopcroft_karp_matching(graph, top_nodes=left)
    if any(node not in matching for node in left):
        return None
    pairs = tuple(
        (j, matching[("w", j, c)][1]) for j, c in sorted(weight_slots)
    )
    return MatchingWitness(pairs)


def matching_iota(subspace: WeightSubspace) -> MatchingWitness | None:
    """
    Injection of all weight slots of V into Phi_G and torus slots.

    Exists for every U in Minset(V).
    """
    inst = subspace.instance
    weight_slots = [
        (j, c) for j, n in enumerate(inst.multiplicities) for c in range(n)
    ]
    zero = tuple(0 * a for a in inst.delta0)
    root_slots = [(alpha, 0) for alpha in inst.phi_g]
    root_slots += [(zero, c) for c in range(inst.dim)]
    return _match(subspace, weight_slots, root_slots)


def parabolic_matching(
    subspace: WeightSubspace, stab: ParabolicIndex
) -> MatchingWitness | None:
    """Injection of J_{V/U} into the nilradical roots of P_S."""
    inst = subspace.instance
    weight_slots = [
        (j, c)
        for j in sorted(subspace.complement)
        for c in range(inst.multiplicities[j])
    ]
    root_slots = [(alpha, 0) for alpha in inst.nilradical_in_g(stab)]
    return _match(subspace, weight_slots, root_slots)


@dataclass(frozen=True)
class SpecialReport:
    """
    Outcome of the special subspace pipeline on one subspace.

    `special` is None when the regularity oracle could not decide.
    """

    subspace: WeightSubspace
    p0_stable: bool
    stab: ParabolicIndex | None = None
    env: ParabolicIndex | None = None
    matching: MatchingWitness | None = None
    minset_status: MinsetStatus | None = None
    special: bool | None = False
    lambda_identity_checked: bool = False
    reason: str = ""
    exceptional: "ExceptionalWitness | None" = None
    convergence: "ConvergenceCertificate | None" = None


def _check_lambda_identity(
    subspace: WeightSubspace, stab: ParabolicIndex, iota: MatchingWitness
) -> None:
    inst = subspace.instance
    levi_delta0 = inst.levi_roots(stab).delta0_levi
    total = add(vector_sum(iota.weight_sums(inst), inst.dim), levi_delta0)
    if total != lambda_of(subspace):
        raise InvariantViolation(
            f"lambda identity fails on {subspace.one_based()}"
        )


def is_special(
    subspace: WeightSubspace, plan: SamplingPlan | None = None
) -> SpecialReport:
    """
    Decide whether U is special.

    Combinatorial conditions are checked first; the oracle is only asked
    about subspaces that pass them.

    Args:
        subspace (WeightSubspace): Candidate U.
        plan (SamplingPlan | None): Regularity sampling knobs.

    Returns:
        SpecialReport: Verdict with stabilizer, matching and Env(U).

    Raises:
        InvariantViolation: If a special U breaks the lambda identity or
            has Stab(U) outside Env(U).
    """
    inst = subspace.instance
    stab = stabilizer_of(subspace)
    if stab is None:
        return SpecialReport(subspace, False, reason="not P0-stable")
    nilradical = inst.nilradical_in_g(stab)
    if subspace.codim != len(nilradical):
        return SpecialReport(
            subspace,
            True,
            stab,
            reason=f"dim V/U = {subspace.codim} != {len(nilradical)}",
        )
    iota = parabolic_matching(subspace, stab)
    if iota is None:
        return SpecialReport(subspace, True, stab, reason="no matching")

    status = minset_certify(subspace, plan)
    if status is MinsetStatus.REFUTED_LIKELY:
        return SpecialReport(
            subspace, True, stab, None, iota, status, reason="not in Minset"
        )
    if status is MinsetStatus.UNKNOWN:
        return SpecialReport(
            subspace, True, stab, None, iota, status, None, reason="oracle"
        )

    _check_lambda_identity(subspace, stab, iota)
    try:
        env = env_of(subspace)
    except NotInCone as e:
        raise InvariantViolation(
            f"Certified {subspace.one_based()} has lambda outside the cone"
        ) from e
    if not stab.issubset(env):
        raise InvariantViolation(
            f"Stab {stab.one_based()} not inside Env {env.one_based()}"
        )
    return SpecialReport(subspace, True, stab, env, iota, status, True, True)


def _special_task(
    members: frozenset[int], inst: PvsInstance, plan: SamplingPlan
) -> SpecialReport:
    return is_special(WeightSubspace(inst, members), plan)


def enumerate_spcl(
    inst: PvsInstance,
    plan: SamplingPlan | None = None,
    jobs: int | None = None,
    max_weights: int | None = None,
    include_unknown: bool = False,
) -> list[SpecialReport]:
    """
    All special subspaces of V.

    Candidates are the P0-stable subspaces; results are ordered by size,
    largest first, then lexicographically by members.

    Args:
        inst (PvsInstance): Instance.
        plan (SamplingPlan | None): Regularity sampling knobs.
        jobs (int | None): Worker processes; 1 runs serially.
        max_weights (int | None): Refuse larger weight sets.
        include_unknown (bool): Keep subspaces the oracle left undecided.

    Returns:
        list[SpecialReport]: Reports of special (or undecided) subspaces.

    Raises:
        CapExceeded: If |Psi_V| exceeds the cap.
    """
    plan = plan or SamplingPlan()
    jobs = analyzer_config.JOBS if jobs is None else jobs
    cap = analyzer_config.MAX_WEIGHTS if max_weights is None else max_weights
    if inst.n_weights > cap:
        raise CapExceeded(f"{inst.n_weights} weights exceed the cap {cap}")
    if not inst.n_weights:
        lgr.warning(f"{inst.name}: V is empty")

    candidates = sorted(
        (m for m in p0_stable_sets(inst) if m or not inst.n_weights),
        key=lambda m: (-len(m), sorted(m)),
    )
    task = partial(_special_task, inst=inst, plan=plan)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            reports = list(executor.map(task, candidates))
    else:
        reports = [task(m) for m in candidates]

    kept = [
        r
        for r in reports
        if r.special or (include_unknown and r.special is None)
    ]
    lgr.info(
        f"{inst.name}: {len(candidates)} P0-stable subspaces, "
        f"{sum(1 for r in kept if r.special)} special"
    )
    return kept


def hasse_edges(
    subspaces: list[WeightSubspace],
) -> list[tuple[int, int]]:
    """
    Covering relations of inclusion among the given subspaces.

    Returns:
        list[tuple[int, int]]: Pairs (i, j) of list positions with the i-th
        subspace covered by the j-th, sorted.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(subspaces)))
    for i, small in enumerate(subspaces):
        for j, big in enumerate(subspaces):
            if i != j and small.members < big.members:
                graph.add_edge(i, j)
    return sorted(nx.transitive_reduction(graph).edges())
