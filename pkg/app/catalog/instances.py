"""Worked-example instances with their oracles and induced filtrations."""

import logging
from dataclasses import replace
from fractions import Fraction
from typing import Callable, Sequence

from app.dktype.grading import (
    AmbientGroup,
    GradingElement,
    IfdSpec,
    build_dk_pvs,
)
from app.pvscore.instance import PvsInstance, with_oracle_characters
from app.relinv.oracle import OracleKind, OracleSpec, Position
from app.rootsys.datum import ParabolicIndex, RootDatum
from app.utils.errors import InstanceError
from app.utils.types import IndexSet, Vector

lgr = logging.getLogger(__name__)

# узлы цепи a-b-c-d-e и ветви f для E6 (нумерация Бурбаки, с нуля)
E6_CHAIN = (0, 2, 3, 4, 5)
E6_BRANCH = 1

# диаграммная инволюция E6: alpha_1 <-> alpha_6, alpha_3 <-> alpha_5
E6_THETA = (5, 1, 4, 3, 2, 0)

# (i3, i4) -> клетка симметрической 3x3 матрицы для F4
SYM3_CELLS = {
    (0, 0): (0, 0),
    (1, 0): (0, 1),
    (1, 1): (0, 2),
    (2, 0): (1, 1),
    (2, 1): (1, 2),
    (2, 2): (2, 2),
}
MAT3_ROWS = {(1, 1): 0, (0, 1): 1, (0, 0): 2}
MAT3_COLS = {(0, 0): 0, (1, 0): 1, (1, 1): 2}

Locator = Callable[[Vector], Position]


def _entries(beta: Vector) -> list[tuple[int, int]]:
    """Nonzero coordinates of a root as (index, value)."""
    return [(k, int(a)) for k, a in enumerate(beta) if a]


def _coordinate_blocks(sizes: Sequence[int]) -> list[tuple[int, int]]:
    """(block, local index) of every coordinate of a block chain."""
    return [(i, r) for i, n in enumerate(sizes) for r in range(n)]


def _attach(
    inst: PvsInstance,
    kind: OracleKind,
    shape: Sequence[int],
    locate: Locator,
) -> PvsInstance:
    """Attach an oracle with one position per weight and fill Sigma."""
    positions = tuple((locate(beta),) for beta in inst.psi_v)
    oracle = OracleSpec(kind, tuple(shape), positions)
    return with_oracle_characters(replace(inst, oracle=oracle))


def _check_sizes(sizes: Sequence[int], least: int) -> None:
    if len(sizes) < least or any(n < 1 for n in sizes):
        raise InstanceError(f"Bad block sizes {list(sizes)}")


def dk_instance(
    spec: str, labels: Sequence[int], name: str = ""
) -> PvsInstance:
    """DK-type instance of a weighted Dynkin diagram, without oracle."""
    group = AmbientGroup.of(spec)
    grading = GradingElement.from_labels(group.datum, labels)
    return build_dk_pvs(group, grading, name)


def root_from_digits(datum: RootDatum, digits: Sequence[int]) -> Vector:
    """Root with the given simple root coefficients."""
    if len(digits) != datum.rank:
        raise InstanceError(f"{len(digits)} coefficients for {datum.rank}")
    out = [Fraction(0)] * datum.ambient_dim
    for c, root in zip(digits, datum.simple_roots):
        for k, a in enumerate(root):
            out[k] += c * a
    return tuple(out)


def members_of(inst: PvsInstance, roots: Sequence[Vector]) -> IndexSet:
    """
    Weight indices of the given roots.

    Raises:
        InstanceError: If a root is not a weight of V.
    """
    missing = [r for r in roots if r not in inst.weight_index]
    if missing:
        raise InstanceError(f"{len(missing)} roots are not weights of V")
    return frozenset(inst.weight_index[r] for r in roots)


def gl_chain(sizes: Sequence[int], name: str = "") -> PvsInstance:
    """
    GL_{n_1} x ... x GL_{n_k} on Mat_{n_1,n_2} + ... + Mat_{n_{k-1},n_k}.

    Args:
        sizes (Sequence[int]): Block sizes n_i; the FRIP table expects a
            palindromic sequence.
        name (str): Instance name.

    Returns:
        PvsInstance: DK instance inside GL_{sum n_i} with a gl_chain oracle.
    """
    _check_sizes(sizes, 2)
    k = len(sizes)
    where = _coordinate_blocks(sizes)
    group = AmbientGroup.of(f"GL{len(where)}")
    h = tuple(Fraction(2 * (k - 1 - i)) for i, _ in where)
    inst = build_dk_pvs(
        group, GradingElement(h), name or f"GL chain {tuple(sizes)}"
    )

    def locate(beta: Vector) -> Position:
        (a, _), (b, _) = sorted(_entries(beta), key=lambda e: -e[1])
        (i, r), (_, c) = where[a], where[b]
        return i, r, c

    return _attach(inst, OracleKind.GL_CHAIN, sizes, locate)


def gl_type_parabolic(sizes: Sequence[int]) -> ParabolicIndex:
    """Standard parabolic of GL_{sum n_i} with blocks of the given sizes."""
    _check_sizes(sizes, 1)
    cuts: set[int] = set()
    total = 0
    for n in sizes[:-1]:
        total += n
        cuts.add(total - 1)
    return ParabolicIndex.of(i for i in range(sum(sizes) - 1) if i not in cuts)


def _congruence_chain(
    sizes: Sequence[int], family: str, kind: OracleKind, name: str
) -> PvsInstance:
    k = len(sizes)
    where = _coordinate_blocks(sizes)
    group = AmbientGroup.of(f"{family}{len(where)}")
    h = tuple(Fraction(2 * (k - 1 - i) + 1) for i, _ in where)
    inst = build_dk_pvs(group, GradingElement(h), name)

    def locate(beta: Vector) -> Position:
        entries = _entries(beta)
        if len(entries) == 1:
            _, r = where[entries[0][0]]
            return k - 1, r, r
        (a, va), (b, vb) = entries
        (i, r), (_, c) = where[a], where[b]
        if va == vb:
            return k - 1, min(r, c), max(r, c)
        return i, r, c

    return _attach(inst, kind, sizes, locate)


def sym_chain(sizes: Sequence[int], name: str = "") -> PvsInstance:
    """GL blocks on Mat_{n_1,n_2} + ... + Sym_{n_k} inside Sp."""
    _check_sizes(sizes, 1)
    return _congruence_chain(
        sizes,
        "C",
        OracleKind.SYM_CHAIN,
        name or f"Sp sym chain {tuple(sizes)}",
    )


def skew_chain(sizes: Sequence[int], name: str = "") -> PvsInstance:
    """GL blocks on Mat_{n_1,n_2} + ... + Skew_{n_k} inside SO_even."""
    _check_sizes(sizes, 1)
    if sizes[-1] % 2:
        raise InstanceError("Skew block needs an even size")
    return _congruence_chain(
        sizes,
        "D",
        OracleKind.SKEW_CHAIN,
        name or f"SO skew chain {tuple(sizes)}",
    )


def _form_chain(
    sizes: Sequence[int], family: str, kind: OracleKind, name: str
) -> PvsInstance:
    """
    GL blocks followed by a classical group acting on its standard space.

    The last factor's standard basis is ordered eps_1, .., eps_m, [0],
    -eps_m, .., -eps_1, so the antidiagonal form is torus invariant.
    """
    _check_sizes(sizes, 2)
    gl_sizes, n = list(sizes[:-1]), sizes[-1]
    k = len(gl_sizes)
    where = _coordinate_blocks(gl_sizes)
    m = n // 2
    group = AmbientGroup.of(f"{family}{len(where) + m}")
    h = tuple(Fraction(2 * (k - i)) for i, _ in where) + (Fraction(0),) * m
    inst = build_dk_pvs(group, GradingElement(h), name)

    def locate(beta: Vector) -> Position:
        entries = _entries(beta)
        a, _ = entries[0]
        i, r = where[a]
        if len(entries) == 1:
            return i, r, m
        b, vb = entries[1]
        if b < len(where):
            return i, r, where[b][1]
        j = b - len(where)
        return i, r, j if vb < 0 else n - 1 - j

    return _attach(inst, kind, sizes, locate)


def sp_chain(sizes: Sequence[int], name: str = "") -> PvsInstance:
    """
    GL_{n_1} x ... x GL_{n_k} x Sp_{n_{k+1}} on a chain of matrices.

    Raises:
        InstanceError: If the symplectic size is odd.
    """
    if sizes and sizes[-1] % 2:
        raise InstanceError("Symplectic block needs an even size")
    return _form_chain(
        sizes, "C", OracleKind.SP_CHAIN, name or f"Sp chain {tuple(sizes)}"
    )


def so_chain(sizes: Sequence[int], name: str = "") -> PvsInstance:
    """GL blocks times SO_{n_{k+1}}; type B for odd, D for even size."""
    family = "B" if sizes and sizes[-1] % 2 else "D"
    return _form_chain(
        sizes,
        family,
        OracleKind.SO_CHAIN,
        name or f"SO chain {tuple(sizes)}",
    )


def binary_quadratics() -> PvsInstance:
    """GL2 on binary quadratic forms, the symmetric square."""
    return sym_chain((2,), name="binary quadratics")


def binary_quadratics_custom() -> PvsInstance:
    """Binary quadratics with the discriminant given as a polynomial."""
    inst = sym_chain((2,), name="binary quadratics (custom)")
    oracle = OracleSpec(
        OracleKind.CUSTOM_POLYNOMIAL,
        positions=tuple(((j,),) for j in range(inst.n_weights)),
        polynomials=("w1**2 - w0*w2",),
    )
    return with_oracle_characters(
        replace(inst, oracle=oracle, fund_chars=())
    )


def g2_binary_cubics() -> PvsInstance:
    """Subregular G2 grading: GL2 on binary cubic forms."""
    inst = dk_instance("G2", (0, 2), name="G2 binary cubics")
    coeffs = inst.datum.coeffs_by_root

    def locate(beta: Vector) -> Position:
        return (coeffs[beta][0],)

    return _attach(inst, OracleKind.BINARY_CUBIC_DISC, (), locate)


def f4_prime() -> PvsInstance:
    """F4 with labels (0,2,0,0): pairs of symmetric 3x3 matrices."""
    inst = dk_instance("F4", (0, 2, 0, 0), name="F4 (0,2,0,0)")
    coeffs = inst.datum.coeffs_by_root

    def locate(beta: Vector) -> Position:
        c = coeffs[beta]
        r, col = SYM3_CELLS[(c[2], c[3])]
        return c[0], r, col

    return _attach(inst, OracleKind.BINARY_CUBIC_DISC_SYM3, (), locate)


def e6_prime() -> PvsInstance:
    """E6 with label 2 on alpha_4: pairs of 3x3 matrices."""
    inst = dk_instance("E6", (0, 0, 0, 2, 0, 0), name="E6 (0,0,0,2,0,0)")
    coeffs = inst.datum.coeffs_by_root

    def locate(beta: Vector) -> Position:
        c = coeffs[beta]
        return c[1], MAT3_ROWS[(c[0], c[2])], MAT3_COLS[(c[4], c[5])]

    return _attach(inst, OracleKind.BINARY_CUBIC_DISC_MAT3, (), locate)


def e6_parabolic(chain: str, branch: str) -> ParabolicIndex:
    """
    Standard parabolic of E6 from marks on the chain and the branch node.

    Args:
        chain (str): Five marks for alpha_1, alpha_3, .., alpha_6; "*"
            puts the root into the Levi.
        branch (str): Mark of alpha_2.
    """
    if len(chain) != 5 or len(branch) != 1:
        raise InstanceError(f"Bad E6 pattern {chain!r}/{branch!r}")
    marks = dict(zip(E6_CHAIN, chain))
    marks[E6_BRANCH] = branch
    return ParabolicIndex.of(i for i, m in marks.items() if m == "*")


def e6_root(chain: Sequence[int], branch: int) -> Vector:
    """E6 root from its coefficients on the chain and on alpha_2."""
    digits = [0] * 6
    for i, c in zip(E6_CHAIN, chain):
        digits[i] = c
    digits[E6_BRANCH] = branch
    return tuple(Fraction(c) for c in digits)


def _check_e6(inst: PvsInstance) -> None:
    if inst.datum.type_label != "E6":
        raise InstanceError(f"{inst.datum.type_label} is not E6")


def e6_theta(inst: PvsInstance, members: IndexSet) -> IndexSet:
    """Image of a weight subspace under the diagram involution."""
    _check_e6(inst)
    image = (
        tuple(inst.psi_v[j][E6_THETA[i]] for i in range(6)) for j in members
    )
    return members_of(inst, list(image))


def e6_theta_ifd(ifd: IfdSpec) -> IfdSpec:
    """Induced filtration datum moved by the diagram involution."""
    levi = dict(zip(ifd.q_subset, ifd.levi_labels))
    q_subset = ParabolicIndex.of(E6_THETA[i] for i in ifd.q_subset)
    labels = tuple(levi[E6_THETA[i]] for i in q_subset) if levi else ()
    return IfdSpec(q_subset, labels, f"theta {ifd.label}".strip())


def f4_prime_ifds() -> list[IfdSpec]:
    """Richardson and induced data of the F4 (0,2,0,0) orbit."""
    return [
        IfdSpec(ParabolicIndex.of((0, 1, 3)), label="Rich (**0*)"),
        IfdSpec(ParabolicIndex.of((1, 2)), label="Rich (0**0)"),
        IfdSpec(ParabolicIndex.of((1, 2, 3)), (0, 1, 0), "Ind (0***)"),
        IfdSpec(ParabolicIndex.of((0, 1, 2)), (2, 0, 0), "Ind (***0)"),
    ]


def e6_prime_ifds() -> list[IfdSpec]:
    """Richardson and induced data of the E6 (0,0,0,2,0,0) orbit."""
    base = [
        IfdSpec(e6_parabolic("0**0*", "*"), label="Rich 0**0*/*"),
        IfdSpec(e6_parabolic("***0*", "0"), label="Rich ***0*/0"),
        IfdSpec(e6_parabolic("***0*", "*"), (1, 1, 0, 0, 0), "Ind ***0*/*"),
        IfdSpec(e6_parabolic("*****", "0"), (0, 1, 0, 1, 0), "Ind *****/0"),
        IfdSpec(e6_parabolic("0****", "*"), (0, 0, 0, 2, 0), "Ind 0****/*"),
    ]
    mirrored = [e6_theta_ifd(ifd) for ifd in base[:3]]
    spin8 = IfdSpec(e6_parabolic("0***0", "*"), (0, 0, 1, 0), "Ind 0***0/*")
    return [*base, *mirrored, spin8]


def gl_prime_ifds(n1: int, n2: int) -> list[IfdSpec]:
    """Richardson data of the GL chain (n1, n2, n1)."""
    return [
        IfdSpec(gl_type_parabolic(sizes), label=f"Rich {sizes}")
        for sizes in ((n2, n1, n1), (n1, n1, n2))
    ]


CATALOG: dict[str, Callable[[], PvsInstance]] = {
    "binary-quadratics": binary_quadratics,
    "binary-quadratics-custom": binary_quadratics_custom,
    "g2": g2_binary_cubics,
    "gl-1-2-1": lambda: gl_chain((1, 2, 1)),
    "gl-2-3-2": lambda: gl_chain((2, 3, 2)),
    "gl-1-2-3-2-1": lambda: gl_chain((1, 2, 3, 2, 1)),
    "f4": f4_prime,
    "e6": e6_prime,
    "d4-skew": lambda: skew_chain((4,)),
    "c4-sp": lambda: sp_chain((2, 4)),
    "b2-so": lambda: so_chain((1, 3)),
}

IFD_CATALOG: dict[str, Callable[[], list[IfdSpec]]] = {
    "g2": lambda: [IfdSpec(ParabolicIndex.of((1,)), label="Rich beta")],
    "binary-quadratics": lambda: [
        IfdSpec(ParabolicIndex.of((1,)), label="Rich beta")
    ],
    "gl-1-2-1": lambda: gl_prime_ifds(1, 2),
    "gl-2-3-2": lambda: gl_prime_ifds(2, 3),
    "f4": f4_prime_ifds,
    "e6": e6_prime_ifds,
}


def build_example(name: str) -> PvsInstance:
    """
    Build a catalog instance by name.

    Raises:
        InstanceError: On unknown names.
    """
    try:
        builder = CATALOG[name]
    except KeyError as e:
        raise InstanceError(
            f"Unknown example {name!r}; known: {', '.join(CATALOG)}"
        ) from e
    inst = builder()
    lgr.debug(f"Example {name}: {inst.n_weights} weights")
    return inst
