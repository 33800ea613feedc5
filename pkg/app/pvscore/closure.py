"""Root closures of subspaces, stabilizers and P0-stable subspaces."""

import logging
from collections import deque
from typing import Iterable, Iterator

import networkx as nx

from app.exactla.linalg import add, neg
from app.pvscore.instance import PvsInstance, WeightSubspace
from app.rootsys.datum import ParabolicIndex
from app.utils.types import IndexSet, Vector

lgr = logging.getLogger(__name__)


def star_closure(
    subspace: WeightSubspace, roots: Iterable[Vector]
) -> WeightSubspace:
    """
    Smallest subspace stable under the given roots containing `subspace`.

    A weight beta + alpha of V is added whenever beta is already present and
    alpha is one of the roots.

    Args:
        subspace (WeightSubspace): Starting subspace U.
        roots (Iterable[Vector]): Root subset R.

    Returns:
        WeightSubspace: R * U.
    """
    inst = subspace.instance
    roots = tuple(roots)
    members = set(subspace.members)
    queue = deque(members)
    while queue:
        j = queue.popleft()
        for alpha in roots:
            k = inst.weight_index.get(add(inst.psi_v[j], alpha))
            if k is not None and k not in members:
                members.add(k)
                queue.append(k)
    return WeightSubspace(inst, frozenset(members))


def parabolic_roots(
    inst: PvsInstance, stab: ParabolicIndex
) -> tuple[Vector, ...]:
    """Roots of the parabolic P_S: Phi_G^+ and the negative Levi roots."""
    levi = inst.levi_roots(stab).levi
    return inst.phi_g_plus + tuple(neg(r) for r in levi)


def is_p0_stable(subspace: WeightSubspace) -> bool:
    return star_closure(subspace, subspace.instance.phi_g_plus) == subspace


def stabilizer_of(subspace: WeightSubspace) -> ParabolicIndex | None:
    """
    Largest standard parabolic of G stabilizing a P0-stable subspace.

    Candidates are the simple roots alpha_i of G under whose negative the
    weight set is closed. For the weights of a G-module this already gives
    closure under every negative Levi root; on other weight sets the
    candidates whose Levi roots leave U are dropped until it holds.

    Returns:
        ParabolicIndex | None: Stab(U), or None if U is not P0-stable.
    """
    if not is_p0_stable(subspace):
        return None
    inst = subspace.instance
    datum = inst.datum
    stab = {
        i
        for i in inst.g_simple
        if star_closure(subspace, [neg(datum.simple_roots[i])]) == subspace
    }
    while True:
        leaving = {
            i
            for r in inst.levi_roots(ParabolicIndex.of(stab)).levi
            if star_closure(subspace, [neg(r)]) != subspace
            for i in datum.support(r)
        }
        if not leaving:
            return ParabolicIndex.of(stab)
        lgr.debug(
            f"Levi roots over {sorted(leaving)} move {subspace.one_based()}"
        )
        stab -= leaving


def weight_poset(inst: PvsInstance) -> nx.DiGraph:
    """DAG on weight indices with j -> k when beta_k = beta_j + alpha."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(inst.n_weights))
    for j, beta in enumerate(inst.psi_v):
        for alpha in inst.phi_g_plus:
            k = inst.weight_index.get(add(beta, alpha))
            if k is not None:
                graph.add_edge(j, k)
    return graph


def p0_stable_sets(inst: PvsInstance) -> Iterator[IndexSet]:
    """
    All P0-stable weight sets, as upper sets of the weight poset.

    Upper sets are in bijection with antichains: each antichain generates
    the set of its elements and their descendants.

    Yields:
        IndexSet: Weight index sets, the empty one included.
    """
    graph = weight_poset(inst)
    count = 0
    for antichain in nx.antichains(graph):
        upper = set(antichain)
        for j in antichain:
            upper |= nx.descendants(graph, j)
        count += 1
        yield frozenset(upper)
    lgr.debug(f"{inst.name}: {count} P0-stable subspaces")


def weight_components(inst: PvsInstance) -> list[IndexSet]:
    """
    Connected blocks of weights under beta ~ beta +- alpha.

    Returns:
        list[IndexSet]: Components sorted by their least index.
    """
    graph = weight_poset(inst).to_undirected()
    components = [frozenset(c) for c in nx.connected_components(graph)]
    return sorted(components, key=min)
