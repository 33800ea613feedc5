"""Regularity oracle: fundamental relative invariants on weight slots."""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from tokenize import TokenError
from typing import Iterable, Sequence

import sympy
from sympy.parsing.sympy_parser import parse_expr

from app.relinv.polys import (
    Matrix,
    antidiagonal,
    bareiss_det,
    binary_cubic_discriminant,
    chain_product,
    cubic_coefficients,
    matmul,
    pfaffian,
    transpose,
    zeros,
)
from app.utils.errors import InstanceError, ShapeMismatch
from app.utils.types import Vector

lgr = logging.getLogger(__name__)

Position = tuple[int, ...]

# высоты и число попыток при поиске регулярной точки
REGULAR_SEARCH_HEIGHTS = (3, 10, 100, 1000)
REGULAR_SEARCH_TRIALS = 16


class OracleKind(str, Enum):
    """Built-in families of fundamental relative invariants."""

    GL_CHAIN = "gl_chain"
    SP_CHAIN = "sp_chain"
    SYM_CHAIN = "sym_chain"
    SO_CHAIN = "so_chain"
    SKEW_CHAIN = "skew_chain"
    BINARY_CUBIC_DISC = "binary_cubic_disc"
    BINARY_CUBIC_DISC_SYM3 = "binary_cubic_disc_sym3"
    BINARY_CUBIC_DISC_MAT3 = "binary_cubic_disc_mat3"
    CUSTOM_POLYNOMIAL = "custom_polynomial"


class Symmetry(str, Enum):
    FULL = "full"
    SYM = "sym"
    SKEW = "skew"


VECTOR_KINDS = (OracleKind.BINARY_CUBIC_DISC, OracleKind.CUSTOM_POLYNOMIAL)


@dataclass(frozen=True)
class BlockShape:
    rows: int
    cols: int
    symmetry: Symmetry = Symmetry.FULL

    @property
    def free_entries(self) -> int:
        if self.symmetry is Symmetry.SYM:
            return self.rows * (self.rows + 1) // 2
        if self.symmetry is Symmetry.SKEW:
            return self.rows * (self.rows - 1) // 2
        return self.rows * self.cols

    def accepts(self, r: int, c: int) -> bool:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            return False
        if self.symmetry is Symmetry.SYM:
            return r <= c
        if self.symmetry is Symmetry.SKEW:
            return r < c
        return True


@dataclass(frozen=True)
class FripTerm:
    """
    One fundamental relative invariant as a recipe over the blocks.

    Attributes:
        label (str): Human readable formula.
        op (str): One of "det", "chain", "congruence", "form", "cubic",
            "pencil", "custom".
        first (int): First block of a product.
        last (int): Last block of a product.
        pfaffian (bool): Take the Pfaffian instead of the determinant.
    """

    label: str
    op: str
    first: int = 0
    last: int = 0
    pfaffian: bool = False


@dataclass(frozen=True)
class SamplePoint:
    """Exact values per weight slot; one value per unit of multiplicity."""

    values: tuple[tuple[Fraction, ...], ...]

    def support(self) -> frozenset[int]:
        return frozenset(
            i for i, vals in enumerate(self.values) if any(vals)
        )


@dataclass(frozen=True)
class OracleSpec:
    """
    Fundamental relative invariants of a PVS and the layout of its slots.

    `positions[i]` lists where the coordinates of the i-th weight slot sit:
    (block, row, col) for matrix kinds, (index,) for the binary cubic and
    for custom polynomials (variable w<index>). `weights[i]` is the torus
    weight of slot i.

    Raises:
        ShapeMismatch: If the layout does not fit the kind and shape.
    """

    kind: OracleKind
    shape: tuple[int, ...] = ()
    positions: tuple[tuple[Position, ...], ...] = ()
    weights: tuple[Vector, ...] = field(default=(), repr=False)
    polynomials: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _validate_layout(self)

    @property
    def n_slots(self) -> int:
        return len(self.positions)

    @property
    def n_coordinates(self) -> int:
        return sum(len(p) for p in self.positions)

    def bind(self, weights: Sequence[Vector]) -> "OracleSpec":
        """Copy of the spec attached to the weights of an instance."""
        if len(weights) != self.n_slots:
            raise ShapeMismatch(
                f"Oracle has {self.n_slots} slots, instance "
                f"{len(weights)} weights"
            )
        return OracleSpec(
            self.kind,
            self.shape,
            self.positions,
            tuple(tuple(Fraction(a) for a in w) for w in weights),
            self.polynomials,
        )

    def frip_labels(self) -> list[str]:
        return [term.label for term in frip_plan(self)]


def block_shapes(kind: OracleKind, shape: Sequence[int]) -> list[BlockShape]:
    """
    Matrix blocks carrying the coordinates of the given kind.

    Raises:
        ShapeMismatch: On shapes the kind cannot use.
    """
    n = list(shape)
    if kind in VECTOR_KINDS:
        return []
    if kind is OracleKind.BINARY_CUBIC_DISC_SYM3:
        return [BlockShape(3, 3, Symmetry.SYM)] * 2
    if kind is OracleKind.BINARY_CUBIC_DISC_MAT3:
        return [BlockShape(3, 3)] * 2
    if any(x < 1 for x in n):
        raise ShapeMismatch(f"Chain sizes must be positive: {n}")
    if kind in (OracleKind.SYM_CHAIN, OracleKind.SKEW_CHAIN):
        if not n:
            raise ShapeMismatch(f"{kind.value} needs at least one size")
        symmetry = (
            Symmetry.SYM if kind is OracleKind.SYM_CHAIN else Symmetry.SKEW
        )
        chain = [BlockShape(a, b) for a, b in zip(n, n[1:])]
        return [*chain, BlockShape(n[-1], n[-1], symmetry)]
    if len(n) < 2:
        raise ShapeMismatch(f"{kind.value} needs at least two sizes")
    if kind is OracleKind.SP_CHAIN and n[-1] % 2:
        raise ShapeMismatch("Symplectic form needs an even size")
    return [BlockShape(a, b) for a, b in zip(n, n[1:])]


def _validate_layout(spec: OracleSpec) -> None:
    blocks = block_shapes(spec.kind, spec.shape)
    flat = [pos for slot in spec.positions for pos in slot]
    if len(set(flat)) != len(flat):
        raise ShapeMismatch("Two coordinates share one position")

    if spec.kind in VECTOR_KINDS:
        size = 4 if spec.kind is OracleKind.BINARY_CUBIC_DISC else len(flat)
        expected = {(i,) for i in range(size)}
        if set(flat) != expected:
            raise ShapeMismatch(
                f"{spec.kind.value} needs positions (0,)..({size - 1},)"
            )
        if spec.kind is OracleKind.CUSTOM_POLYNOMIAL and not spec.polynomials:
            raise ShapeMismatch("custom_polynomial without polynomials")
        return

    for pos in flat:
        if len(pos) != 3 or not 0 <= pos[0] < len(blocks):
            raise ShapeMismatch(f"Bad position {pos} for {spec.kind.value}")
        if not blocks[pos[0]].accepts(pos[1], pos[2]):
            raise ShapeMismatch(f"Position {pos} outside its block")
    free = sum(b.free_entries for b in blocks)
    if len(flat) != free:
        raise ShapeMismatch(
            f"{spec.kind.value}{tuple(spec.shape)} has {free} coordinates, "
            f"layout gives {len(flat)}"
        )


def _gl_plan(n: Sequence[int]) -> list[FripTerm]:
    k = len(n)
    plan = []
    for i in range(k - 1):
        if n[i] == n[i + 1]:
            plan.append(FripTerm(f"det x{i + 1}", "det", i, i))
        elif n[i] < n[i + 1]:
            last = k - 2 - i
            if last < i:
                raise ShapeMismatch(f"gl_chain {tuple(n)} is not palindromic")
            plan.append(
                FripTerm(f"det(x{i + 1}...x{last + 1})", "chain", i, last)
            )
    return plan


def _congruence_plan(n: Sequence[int], skew: bool) -> list[FripTerm]:
    k = len(n)
    name = "Pf" if skew else "det"
    plan = []
    for i in range(k):
        if i == k - 1:
            plan.append(FripTerm(f"{name} x{k}", "det", i, i, skew))
        elif n[i] == n[i + 1]:
            plan.append(FripTerm(f"det x{i + 1}", "det", i, i))
        else:
            plan.append(
                FripTerm(
                    f"{name}(x{i + 1}...x{k}...x{i + 1}^t)",
                    "congruence",
                    i,
                    k - 1,
                    skew,
                )
            )
    return plan


def _form_plan(n: Sequence[int], skew: bool) -> list[FripTerm]:
    k = len(n) - 1
    name = "Pf" if skew else "det"
    plan = []
    for i in range(k):
        if n[i] == n[i + 1]:
            plan.append(FripTerm(f"det x{i + 1}", "det", i, i))
        else:
            plan.append(
                FripTerm(
                    f"{name}(x{i + 1}...x{k} J x{k}^t...x{i + 1}^t)",
                    "form",
                    i,
                    k - 1,
                    skew,
                )
            )
    return plan


def frip_plan(spec: OracleSpec) -> list[FripTerm]:
    """Recipes of the fundamental relative invariants of the spec."""
    kind, n = spec.kind, spec.shape
    if kind is OracleKind.GL_CHAIN:
        return _gl_plan(n)
    if kind is OracleKind.SYM_CHAIN:
        return _congruence_plan(n, skew=False)
    if kind is OracleKind.SKEW_CHAIN:
        return _congruence_plan(n, skew=True)
    if kind is OracleKind.SP_CHAIN:
        return _form_plan(n, skew=True)
    if kind is OracleKind.SO_CHAIN:
        return _form_plan(n, skew=False)
    if kind is OracleKind.BINARY_CUBIC_DISC:
        return [FripTerm("disc(a, b, c, d)", "cubic")]
    if kind is OracleKind.CUSTOM_POLYNOMIAL:
        return [
            FripTerm(text, "custom", i, i)
            for i, text in enumerate(spec.polynomials)
        ]
    return [FripTerm("disc det(x A + y B)", "pencil")]


@lru_cache(maxsize=64)
def _parse_polynomial(
    text: str, n_vars: int
) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """Terms (exponents, coefficient) of a polynomial in w0..w{n-1}."""
    symbols = sympy.symbols(f"w0:{n_vars}") if n_vars else ()
    local = {str(s): s for s in symbols}
    try:
        expr = parse_expr(text, local_dict=local)
        poly = sympy.Poly(expr, *symbols) if symbols else None
    except (
        sympy.SympifyError,
        sympy.PolynomialError,
        SyntaxError,
        TokenError,
        TypeError,
    ) as e:
        raise ShapeMismatch(f"Bad polynomial {text!r}: {e}") from e
    if poly is None:
        return (((), Fraction(str(expr))),)
    terms = []
    for monom, coeff in poly.terms():
        if not coeff.is_Rational:
            raise ShapeMismatch(f"Non-rational coefficient in {text!r}")
        terms.append((monom, Fraction(int(coeff.p), int(coeff.q))))
    return tuple(terms)


def _blocks(spec: OracleSpec, point: SamplePoint) -> list[Matrix]:
    shapes = block_shapes(spec.kind, spec.shape)
    blocks = [zeros(b.rows, b.cols) for b in shapes]
    for slot, values in zip(spec.positions, point.values):
        for pos, value in zip(slot, values):
            b, r, c = pos
            blocks[b][r][c] += value
            if r != c and shapes[b].symmetry is Symmetry.SYM:
                blocks[b][c][r] += value
            elif shapes[b].symmetry is Symmetry.SKEW:
                blocks[b][c][r] -= value
    return blocks


def _flat(spec: OracleSpec, point: SamplePoint) -> list[Fraction]:
    out = [Fraction(0)] * spec.n_coordinates
    for slot, values in zip(spec.positions, point.values):
        for pos, value in zip(slot, values):
            out[pos[0]] += value
    return out


def _square_value(m: Matrix, use_pfaffian: bool) -> Fraction:
    return pfaffian(m) if use_pfaffian else bareiss_det(m)


def _evaluate_term(
    spec: OracleSpec,
    term: FripTerm,
    blocks: list[Matrix],
    flat: list[Fraction],
) -> Fraction:
    if term.op == "det":
        return _square_value(blocks[term.first], term.pfaffian)
    if term.op == "chain":
        return bareiss_det(chain_product(blocks[term.first : term.last + 1]))
    if term.op == "congruence":
        p = chain_product(blocks[term.first : term.last])
        m = matmul(matmul(p, blocks[term.last]), transpose(p))
        return _square_value(m, term.pfaffian)
    if term.op == "form":
        p = chain_product(blocks[term.first : term.last + 1])
        j = antidiagonal(spec.shape[-1], skew=term.pfaffian)
        m = matmul(matmul(p, j), transpose(p))
        return _square_value(m, term.pfaffian)
    if term.op == "cubic":
        return binary_cubic_discriminant(*flat)
    if term.op == "pencil":
        return binary_cubic_discriminant(*cubic_coefficients(*blocks))
    total = Fraction(0)
    for monom, coeff in _parse_polynomial(
        spec.polynomials[term.first], len(flat)
    ):
        value = coeff
        for x, e in zip(flat, monom):
            if e:
                value *= x**e
        total += value
    return total


def evaluate_frips(spec: OracleSpec, point: SamplePoint) -> list[Fraction]:
    """
    Exact values of the fundamental relative invariants at a point.

    Args:
        spec (OracleSpec): Oracle.
        point (SamplePoint): Values per weight slot.

    Returns:
        list[Fraction]: One value per FRIP, in plan order.

    Raises:
        ShapeMismatch: If the point does not match the slot layout.
    """
    if len(point.values) != spec.n_slots or any(
        len(v) != len(p) for v, p in zip(point.values, spec.positions)
    ):
        raise ShapeMismatch("Sample point does not match the oracle layout")
    blocks = [] if spec.kind in VECTOR_KINDS else _blocks(spec, point)
    flat = _flat(spec, point) if spec.kind in VECTOR_KINDS else []
    return [
        _evaluate_term(spec, term, blocks, flat) for term in frip_plan(spec)
    ]


def sample_point(
    members: Iterable[int],
    spec: OracleSpec,
    height: int,
    seed: int | random.Random,
) -> SamplePoint:
    """
    Random integral point supported on the given weight slots.

    Args:
        members (Iterable[int]): Weight slots of the subspace.
        spec (OracleSpec): Oracle fixing the slot multiplicities.
        height (int): Coordinates are uniform in [-height, height].
        seed (int | random.Random): Seed or generator.

    Returns:
        SamplePoint: Deterministic under the seed.
    """
    if height < 1:
        raise ValueError("Sampling height must be positive")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    chosen = set(members)
    values = []
    for i, slot in enumerate(spec.positions):
        if i in chosen:
            values.append(
                tuple(Fraction(rng.randint(-height, height)) for _ in slot)
            )
        else:
            values.append((Fraction(0),) * len(slot))
    return SamplePoint(tuple(values))


def regular_point(spec: OracleSpec, seed: int = 0) -> SamplePoint:
    """
    Point of V with every FRIP nonzero.

    Raises:
        InstanceError: If sampling finds none (FRIPs vanish on V).
    """
    rng = random.Random(seed)
    everything = range(spec.n_slots)
    for height in REGULAR_SEARCH_HEIGHTS:
        for _ in range(REGULAR_SEARCH_TRIALS):
            point = sample_point(everything, spec, height, rng)
            if all(evaluate_frips(spec, point)):
                return point
    raise InstanceError(f"No regular point found for {spec.kind.value}")


def _log2_exact(ratio: Fraction) -> int:
    num, den = ratio.numerator, ratio.denominator
    if num <= 0 or num & (num - 1) or den & (den - 1):
        raise InstanceError(f"Scaling ratio {ratio} is not a power of two")
    return (num.bit_length() - 1) - (den.bit_length() - 1)


def _scaled(point: SamplePoint, factors: Sequence[Fraction]) -> SamplePoint:
    return SamplePoint(
        tuple(
            tuple(f * v for v in vals)
            for f, vals in zip(factors, point.values)
        )
    )


def frip_weight(spec: OracleSpec, index: int) -> Vector:
    """
    Character of a FRIP read off from torus scaling at a regular point.

    Scaling slot beta by 2^(D beta_k) multiplies the FRIP by 2^(D chi_k),
    where D clears the denominators of coordinate k.

    Args:
        spec (OracleSpec): Oracle bound to instance weights.
        index (int): FRIP index.

    Returns:
        Vector: chi in ambient coordinates.

    Raises:
        ShapeMismatch: If the oracle carries no weights or index is out
            of range.
        InstanceError: If the polynomial is not relatively invariant.
    """
    plan = frip_plan(spec)
    if not 0 <= index < len(plan):
        raise ShapeMismatch(f"FRIP index {index} out of range")
    if not spec.weights:
        raise ShapeMismatch("Oracle is not bound to instance weights")
    point = regular_point(spec)
    base = evaluate_frips(spec, point)[index]
    dim = len(spec.weights[0])
    chi = []
    for k in range(dim):
        den = reduce(lcm, (w[k].denominator for w in spec.weights), 1)
        factors = [Fraction(2) ** int(den * w[k]) for w in spec.weights]
        value = evaluate_frips(spec, _scaled(point, factors))[index]
        chi.append(Fraction(_log2_exact(value / base), den))
    return tuple(chi)


def frip_degree(spec: OracleSpec, index: int) -> int:
    """Total degree of a FRIP in the slot coordinates."""
    plan = frip_plan(spec)
    if not 0 <= index < len(plan):
        raise ShapeMismatch(f"FRIP index {index} out of range")
    point = regular_point(spec)
    base = evaluate_frips(spec, point)[index]
    doubled = _scaled(point, [Fraction(2)] * spec.n_slots)
    return _log2_exact(evaluate_frips(spec, doubled)[index] / base)
