"""Positivity of lambda(U) + mu on the cone C_U."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from app.exactla.cones import (
    ConeDescription,
    PositivityCertificate,
    positive_envelope,
    positive_on_cone,
)
from app.exactla.linalg import add, combine, dot, kernel_basis
from app.pvscore.gauge import lambda_of
from app.pvscore.instance import PvsInstance, WeightSubspace
from app.utils.errors import InvalidMu, NotInCone
from app.utils.types import Numeric, Vector

lgr = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConvergenceCertificate:
    """
    Values of lambda(U) + mu on the rays of C_U, or a failing ray.

    Attributes:
        mu (Vector): Character in R>0 Sigma.
        functional (Vector): lambda(U) + mu.
        ell (tuple[Vector, ...]): Chosen complement of ker q in a_G.
        result (PositivityCertificate): Outcome on C_U.
    """

    mu: Vector
    functional: Vector
    ell: tuple[Vector, ...]
    result: PositivityCertificate

    @property
    def positive(self) -> bool:
        return self.result.positive

    @property
    def witness(self) -> Vector | None:
        return self.result.witness


def validate_mu(inst: PvsInstance, mu: Sequence[Numeric]) -> Vector:
    """
    Check that mu is a strictly positive combination of Sigma.

    Raises:
        InvalidMu: Otherwise.
    """
    chars = list(inst.fund_chars)
    if not chars:
        raise InvalidMu("Instance has no fundamental characters")
    if len(mu) != inst.dim:
        raise InvalidMu(f"mu has length {len(mu)}, expected {inst.dim}")
    try:
        envelope = positive_envelope(mu, chars)
    except NotInCone as e:
        raise InvalidMu(f"mu = {list(mu)} is outside the cone of Sigma") from e
    if len(envelope) != len(chars):
        raise InvalidMu(f"mu = {list(mu)} is on the boundary of the cone")
    return tuple(Fraction(a) for a in mu)


def mu_from_coefficients(
    inst: PvsInstance, coefficients: Sequence[Numeric] | None = None
) -> Vector:
    """
    mu = sum of c_i chi_i; all c_i = 1 when no coefficients are given.

    Raises:
        InvalidMu: If a coefficient is not positive or the count differs.
    """
    chars = list(inst.fund_chars)
    if not chars:
        raise InvalidMu("Instance has no fundamental characters")
    coeffs = [Fraction(c) for c in (coefficients or [1] * len(chars))]
    if len(coeffs) != len(chars) or any(c <= 0 for c in coeffs):
        raise InvalidMu(f"Need {len(chars)} positive coefficients for mu")
    return combine(coeffs, chars)


def certificate_subspace(
    inst: PvsInstance,
) -> tuple[list[Vector], tuple[Vector, ...]]:
    """
    Basis of W = span of the coroots of Delta_0^G plus ell.

    a_G is cut out by Delta_0^G, ker q by Delta_0^G and Sigma; ell is the
    dot-orthogonal complement of ker q inside a_G.

    Returns:
        tuple: (basis of W, basis of ell).
    """
    simple = list(inst.simple_g)
    ker_q = kernel_basis([*simple, *inst.fund_chars], inst.dim)
    ell = tuple(kernel_basis([*simple, *ker_q], inst.dim))
    coroots = [inst.datum.simple_coroots[i] for i in inst.g_simple]
    return [*coroots, *ell], ell


def convergence_cone(
    subspace: WeightSubspace, basis: Sequence[Vector] | None = None
) -> ConeDescription:
    """C_U: nonnegative on Delta_0^G and Psi_U, optionally inside W."""
    inst = subspace.instance
    return ConeDescription.from_rows(
        [*inst.simple_g, *subspace.weights], inst.dim, basis
    )


def convergence_certificate(
    subspace: WeightSubspace, mu: Sequence[Numeric]
) -> ConvergenceCertificate:
    """
    Test positivity of lambda(U) + mu on C_U restricted to W.

    Args:
        subspace (WeightSubspace): Subspace U.
        mu (Sequence[Numeric]): Character in R>0 Sigma.

    Returns:
        ConvergenceCertificate: Ray values, or a ray where the form fails.

    Raises:
        InvalidMu: If mu is not strictly inside the cone of Sigma.
    """
    inst = subspace.instance
    mu_vec = validate_mu(inst, mu)
    basis, ell = certificate_subspace(inst)
    functional = add(lambda_of(subspace), mu_vec)
    if not basis:
        # W = 0: утверждение тривиально
        result = PositivityCertificate(True)
    else:
        result = positive_on_cone(
            functional, convergence_cone(subspace, basis)
        )
    lgr.debug(
        f"Convergence on {subspace.one_based()}: "
        f"{'positive' if result.positive else 'fails'}"
    )
    return ConvergenceCertificate(mu_vec, functional, ell, result)


def face_of_cone(subspace: WeightSubspace) -> list[Vector]:
    """Extreme rays of C_U on which lambda(U) vanishes."""
    lam = lambda_of(subspace)
    return [
        ray
        for ray in convergence_cone(subspace).rays
        if dot(lam, ray) == 0
    ]
