"""Some test tools."""

import logging
import random
from typing import Sequence

from app.catalog.instances import members_of, root_from_digits
from app.dktype.grading import AmbientGroup, GradingElement, build_dk_pvs
from app.pvscore.instance import PvsInstance
from app.utils.types import IndexSet

lgr = logging.getLogger(__name__)

# маленькие группы для случайных градуировок
SMALL_TYPES = ("A2", "A3", "A4", "B2", "B3", "C2", "C3", "G2", "D4")


def configure_logging(level: int = logging.INFO) -> None:
    """
    Configurate a simple logger to fast use.

    Args:
        level (int, optional): Set a level of logging. Defaults to INFO.
    """
    logging.basicConfig(
        level=level,
        datefmt="%Y-%m-%d_%H:%M:%S",
        format=(
            "%(name)s %(levelname)s [%(asctime)s.%(msecs)02d] "
            "| %(module)s:%(lineno)d (%(funcName)10s) | %(message)s"
        ),
    )


def random_cone_generators(
    rng: random.Random, dim: int, count: int
) -> list[tuple[int, ...]]:
    """
    Generate nonzero integer vectors with entries in [-3, 3].

    Args:
        rng (random.Random): Seeded generator.
        dim (int): Length of the vectors.
        count (int): Number of vectors.

    Returns:
        list[tuple[int, ...]]: Generators, repetitions allowed.
    """
    out: list[tuple[int, ...]] = []
    while len(out) < count:
        v = tuple(rng.randint(-3, 3) for _ in range(dim))
        if any(v):
            out.append(v)
    return out


def random_dk_instance(
    rng: random.Random, max_weights: int = 12
) -> PvsInstance:
    """
    Generate a DK-type instance from random labels in {0, 1, 2}.

    Args:
        rng (random.Random): Seeded generator.
        max_weights (int, optional): Largest allowed |Psi_V|.

    Returns:
        PvsInstance: Instance with a nonempty V and no oracle.
    """
    while True:
        group = AmbientGroup.of(rng.choice(SMALL_TYPES))
        labels = [rng.choice((0, 0, 1, 2)) for _ in range(group.datum.rank)]
        if 2 not in labels and labels.count(1) < 2:
            continue
        grading = GradingElement.from_labels(group.datum, labels)
        inst = build_dk_pvs(group, grading)
        if 0 < inst.n_weights <= max_weights:
            return inst


def picture_members(inst: PvsInstance, *blocks: Sequence[str]) -> IndexSet:
    """
    Weight indices marked "*" in matrix pictures of the oracle layout.

    Args:
        inst (PvsInstance): Instance with a (block, row, col) layout.
        blocks (Sequence[str]): One picture per block, rows as strings.

    Returns:
        IndexSet: Members of the pictured subspace.
    """
    assert inst.oracle is not None
    members = set()
    for j, slots in enumerate(inst.oracle.positions):
        block, row, col = slots[0]
        if blocks[block][row][col] == "*":
            members.add(j)
    return frozenset(members)


FULL = ("***", "***", "***")

# картинки из нулей и звёздочек для блоков A и B пары матриц
E6_PICTURES = {
    "V": (FULL, FULL),
    "U1": (("***", "0**", "0**"), ("***", "0**", "0**")),
    "U2": (("0**", "0**", "0**"), FULL),
    "U3": (("***", "00*", "00*"), ("***", "0**", "0**")),
    "U1'": (("***", "***", "00*"), ("***", "***", "00*")),
    "U2'": (("***", "***", "000"), FULL),
    "U3'": (("***", "00*", "00*"), ("***", "***", "00*")),
    "U1''": (("***", "0**", "00*"), ("***", "0**", "00*")),
    "U2''": (("0**", "0**", "000"), FULL),
    "U3''": (("***", "00*", "00*"), ("***", "0**", "00*")),
}

E6_MEETS = {
    "U12": ("U1", "U2"),
    "U1'2": ("U1'", "U2"),
    "U12'": ("U1", "U2'"),
    "U1'2'": ("U1'", "U2'"),
    "U3'2": ("U3'", "U2"),
    "U32'": ("U3", "U2'"),
    "U1''2": ("U1''", "U2"),
    "U1''2'": ("U1''", "U2'"),
}


def e6_named_subspaces(inst: PvsInstance) -> dict[str, IndexSet]:
    """The eighteen special subspaces of E6 (0,0,0,2,0,0) by name."""
    named = {
        name: picture_members(inst, *blocks)
        for name, blocks in E6_PICTURES.items()
    }
    for name, (a, b) in E6_MEETS.items():
        named[name] = named[a] & named[b]
    return named


def f4_named(inst: PvsInstance) -> dict[str, IndexSet]:
    """The six special subspaces of F4 (0,2,0,0), cut out by roots."""
    everything = frozenset(range(inst.n_weights))

    def cut(*digits: tuple[int, ...]) -> IndexSet:
        roots = [root_from_digits(inst.datum, d) for d in digits]
        return everything - members_of(inst, roots)

    u1 = cut((0, 1, 0, 0), (1, 1, 0, 0))
    u2 = cut((0, 1, 0, 0), (0, 1, 1, 0), (0, 1, 2, 0))
    u3 = cut((0, 1, 0, 0), (0, 1, 1, 0), (0, 1, 1, 1))
    return {
        "V": everything,
        "U1": u1,
        "U2": u2,
        "U3": u3,
        "U4": u1 & u2,
        "U5": u2 & u3,
    }
