"""Gauge lambda(U) and the enveloping parabolic Env(U)."""

import logging

from app.exactla.cones import (
    MembershipResult,
    cone_membership,
    positive_envelope,
)
from app.exactla.linalg import add, scale, vector_sum
from app.pvscore.closure import parabolic_roots, star_closure
from app.pvscore.instance import WeightSubspace
from app.rootsys.datum import ParabolicIndex
from app.utils.types import Vector

lgr = logging.getLogger(__name__)


def lambda_of(subspace: WeightSubspace) -> Vector:
    """delta_0 + sum of n_beta beta over the weights outside U."""
    inst = subspace.instance
    outside = vector_sum(
        (
            scale(inst.multiplicities[j], inst.psi_v[j])
            for j in subspace.complement
        ),
        inst.dim,
    )
    return add(inst.delta0, outside)


def gauge_generators(subspace: WeightSubspace) -> list[Vector]:
    """Delta_0^G slots first, then the weights of U in index order."""
    return [*subspace.instance.simple_g, *subspace.weights]


def gauge_membership(subspace: WeightSubspace) -> MembershipResult:
    """Whether lambda(U) lies in the cone of Delta_0^G and Psi_U."""
    return cone_membership(lambda_of(subspace), gauge_generators(subspace))


def env_of(subspace: WeightSubspace) -> ParabolicIndex:
    """
    Enveloping parabolic of U.

    Generators equal to both a simple root and a weight are kept as distinct
    slots; only the Delta_0^G slots of the envelope define Env(U).

    Returns:
        ParabolicIndex: Env(U) in ambient simple root indices.

    Raises:
        NotInCone: If lambda(U) is outside the cone (U is not in Minset).
    """
    inst = subspace.instance
    envelope = positive_envelope(
        lambda_of(subspace), gauge_generators(subspace)
    )
    g_simple = list(inst.g_simple)
    env = ParabolicIndex.of(
        g_simple[slot] for slot in envelope if slot < len(g_simple)
    )
    lgr.debug(f"Env of {subspace.one_based()}: {env.one_based()}")
    return env


def env_star(
    subspace: WeightSubspace, env: ParabolicIndex | None = None
) -> WeightSubspace:
    """
    Env(U) * U: the smallest Env(U)-stable subspace containing U.

    Raises:
        NotInCone: If Env(U) is needed and U is not in Minset.
    """
    env = env_of(subspace) if env is None else env
    return star_closure(subspace, parabolic_roots(subspace.instance, env))
