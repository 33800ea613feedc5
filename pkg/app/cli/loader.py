"""Instance files to instances and back."""

import logging
from dataclasses import replace
from pathlib import Path
from typing import Any

from app.cli.schemas import (
    IfdBlock,
    InstanceFile,
    OracleBlock,
    SlotEntry,
    WeightEntry,
)
from app.config import analyzer_config
from app.dktype.grading import (
    AmbientGroup,
    GradingElement,
    IfdSpec,
    build_dk_pvs,
)
from app.pvscore.instance import (
    PvsInstance,
    bind_oracle,
    with_oracle_characters,
    x_star_of,
)
from app.pvscore.regularity import SamplingPlan
from app.relinv.oracle import OracleSpec
from app.rootsys.datum import ParabolicIndex, build_root_datum
from app.utils.errors import InstanceError
from app.utils.serialization import deserialize, serialize
from app.utils.types import Vector

lgr = logging.getLogger(__name__)


def read_instance_file(path: Path) -> InstanceFile:
    """
    Parse an instance file.

    Raises:
        orjson.JSONDecodeError: If the file is not json.
        pydantic.ValidationError: If the document breaks the schema.
    """
    lgr.debug(f"Reading {path}")
    return InstanceFile.model_validate(deserialize(path.read_bytes()))


def _zero_based(indices: list[int], rank: int, field: str) -> ParabolicIndex:
    if any(i > rank for i in indices):
        raise InstanceError(f"{field}: index beyond rank {rank}")
    return ParabolicIndex.of(i - 1 for i in indices)


def _oracle_spec(block: OracleBlock, psi_v: tuple[Vector, ...]) -> OracleSpec:
    """Order the oracle slots like psi_v."""
    by_weight = {tuple(s.weight): s.cells for s in block.positions}
    if len(by_weight) != len(block.positions):
        raise InstanceError("oracle.positions: repeated weight")
    missing = [list(beta) for beta in psi_v if beta not in by_weight]
    if missing or len(by_weight) != len(psi_v):
        raise InstanceError(
            f"oracle.positions: {len(missing)} weights of V without cells, "
            f"{len(by_weight)} entries for {len(psi_v)} weights"
        )
    positions = tuple(
        tuple(tuple(cell) for cell in by_weight[beta]) for beta in psi_v
    )
    return OracleSpec(
        block.kind,
        tuple(block.shape),
        positions,
        polynomials=tuple(block.polynomials),
    )


def build_instance(spec: InstanceFile) -> PvsInstance:
    """
    Build the instance described by a parsed file.

    Args:
        spec (InstanceFile): Validated file.

    Returns:
        PvsInstance: Instance with the oracle bound to its weights and the
        fundamental characters filled from it when the file has none.

    Raises:
        InstanceError: On inconsistent data.
        GradingError: On a bad DK block.
        UnsupportedType: On an unknown root datum.
    """
    if spec.dk is not None:
        group = AmbientGroup.of(spec.dk.ambient)
        if spec.dk.h is not None:
            if len(spec.dk.h) != group.datum.ambient_dim:
                raise InstanceError(
                    f"dk.h has length {len(spec.dk.h)}, expected "
                    f"{group.datum.ambient_dim}"
                )
            grading = GradingElement(tuple(spec.dk.h))
        else:
            grading = GradingElement.from_labels(
                group.datum, spec.dk.labels or []
            )
        inst = build_dk_pvs(group, grading, spec.name)
    else:
        assert spec.root_datum is not None and spec.psi_v is not None
        datum = build_root_datum(spec.root_datum)
        g_simple = _zero_based(spec.g_simple or [], datum.rank, "g_simple")
        inst = PvsInstance(
            datum=datum,
            g_simple=g_simple,
            psi_v=tuple(tuple(e.weight) for e in spec.psi_v),
            multiplicities=tuple(e.multiplicity for e in spec.psi_v),
            xstar_g=x_star_of(datum, g_simple),
            name=spec.name or datum.type_label,
        )

    extras: dict[str, Any] = {
        "fund_chars": tuple(tuple(c) for c in spec.fund_chars)
    }
    if spec.xstar_g is not None:
        extras["xstar_g"] = tuple(tuple(x) for x in spec.xstar_g)
    if spec.components is not None:
        extras["components"] = tuple(
            frozenset(j - 1 for j in comp) for comp in spec.components
        )
    if spec.oracle is not None:
        extras["oracle"] = _oracle_spec(spec.oracle, inst.psi_v)
    inst = replace(inst, **extras)
    return bind_oracle(with_oracle_characters(inst))


def ifd_specs(spec: InstanceFile, rank: int) -> list[IfdSpec]:
    """IFD blocks of a file with 0-based Q."""
    return [
        IfdSpec(
            _zero_based(block.q, rank, "ifd.q"),
            tuple(block.levi_labels),
            block.label,
        )
        for block in spec.ifd
    ]


def sampling_plan(
    spec: InstanceFile,
    seed: int | None = None,
    trials: int | None = None,
    heights: list[int] | None = None,
) -> SamplingPlan:
    """Flags override the file, the file overrides the config."""
    default_trials, default_heights, default_seed = analyzer_config.sampling
    if seed is None:
        seed = spec.seed if spec.seed is not None else default_seed
    return SamplingPlan(
        trials=trials or spec.caps.trials or default_trials,
        heights=tuple(heights or spec.caps.heights or default_heights),
        seed=seed,
    )


def instance_to_file(
    inst: PvsInstance, ifds: list[IfdSpec] | None = None
) -> InstanceFile:
    """
    Instance as an explicit-weights file that rebuilds the same instance.

    Args:
        inst (PvsInstance): Instance.
        ifds (list[IfdSpec] | None): Filtration data to attach.

    Returns:
        InstanceFile: File model; dump it with `dump_instance_file`.
    """
    oracle = None
    if inst.oracle is not None:
        oracle = OracleBlock(
            kind=inst.oracle.kind,
            shape=list(inst.oracle.shape),
            positions=[
                SlotEntry(weight=list(beta), cells=[list(c) for c in cells])
                for beta, cells in zip(inst.psi_v, inst.oracle.positions)
            ],
            polynomials=list(inst.oracle.polynomials),
        )
    components = None
    if inst.components is not None:
        components = [sorted(j + 1 for j in c) for c in inst.components]
    return InstanceFile(
        name=inst.name,
        root_datum=inst.datum.type_label,
        g_simple=inst.g_simple.one_based(),
        psi_v=[
            WeightEntry(weight=list(beta), multiplicity=n)
            for beta, n in zip(inst.psi_v, inst.multiplicities)
        ],
        ifd=[
            IfdBlock(
                q=ifd.q_subset.one_based(),
                levi_labels=list(ifd.levi_labels),
                label=ifd.label,
            )
            for ifd in ifds or []
        ],
        xstar_g=[list(x) for x in inst.xstar_g],
        fund_chars=[list(c) for c in inst.fund_chars],
        components=components,
        oracle=oracle,
        seed=analyzer_config.SEED if oracle is not None else None,
    )


def dump_instance_file(spec: InstanceFile) -> bytes:
    return serialize(spec.model_dump(mode="json", exclude_defaults=True))
