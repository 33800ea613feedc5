"""Pydantic schemas of instance files and analysis reports."""

from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.relinv.oracle import OracleKind
from app.utils.types import Rational

RationalVector = list[Rational]
OneBased = Annotated[int, Field(ge=1)]


class WeightEntry(BaseModel):
    """One weight of V with its multiplicity."""

    model_config = ConfigDict(extra="forbid")

    weight: RationalVector
    multiplicity: Annotated[int, Field(ge=1)] = 1


class DkBlock(BaseModel):
    """Ambient group G' and a grading given by labels or by h."""

    model_config = ConfigDict(extra="forbid")

    ambient: str
    labels: list[int] | None = None
    h: RationalVector | None = None

    @model_validator(mode="after")
    def check_grading(self) -> "DkBlock":
        if (self.labels is None) == (self.h is None):
            raise ValueError("Give exactly one of 'labels' and 'h'")
        return self


class IfdBlock(BaseModel):
    """Induced filtration datum with 1-based simple root indices."""

    model_config = ConfigDict(extra="forbid")

    q: list[OneBased]
    levi_labels: list[Annotated[int, Field(ge=0)]] = []
    label: str = ""


class SlotEntry(BaseModel):
    """Oracle positions of the coordinates of one weight."""

    model_config = ConfigDict(extra="forbid")

    weight: RationalVector
    cells: list[list[Annotated[int, Field(ge=0)]]]


class OracleBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: OracleKind
    shape: list[Annotated[int, Field(ge=1)]] = []
    positions: list[SlotEntry]
    polynomials: list[str] = []


class CapsBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_weights: Annotated[int, Field(ge=0)] | None = None
    trials: Annotated[int, Field(ge=1)] | None = None
    heights: list[Annotated[int, Field(ge=1)]] | None = None


class InstanceFile(BaseModel):
    """
    Instance file: explicit weights or a DK block, plus optional extras.

    Simple root indices are 1-based. `xstar_g` is computed from the
    coroots of G when omitted, `fund_chars` from the oracle.
    """

    model_config = ConfigDict(extra="forbid")

    name: str = ""
    root_datum: str | None = None
    g_simple: list[OneBased] | None = None
    psi_v: list[WeightEntry] | None = None
    dk: DkBlock | None = None
    ifd: list[IfdBlock] = []
    xstar_g: list[RationalVector] | None = None
    fund_chars: list[RationalVector] = []
    components: list[list[OneBased]] | None = None
    oracle: OracleBlock | None = None
    seed: int | None = None
    caps: CapsBlock = CapsBlock()

    @model_validator(mode="after")
    def check_source(self) -> "InstanceFile":
        if (self.psi_v is None) == (self.dk is None):
            raise ValueError("Give exactly one of 'psi_v' and 'dk'")
        if self.psi_v is not None:
            if self.root_datum is None or self.g_simple is None:
                raise ValueError("'psi_v' needs 'root_datum' and 'g_simple'")
        elif self.root_datum is not None or self.g_simple is not None:
            raise ValueError("'dk' fixes 'root_datum' and 'g_simple'")
        if self.oracle is not None and self.seed is None:
            raise ValueError("'seed' is mandatory when an oracle is given")
        groups = {
            "psi_v": [e.weight for e in self.psi_v or []],
            "xstar_g": self.xstar_g or [],
            "fund_chars": self.fund_chars,
            "oracle.positions": (
                [s.weight for s in self.oracle.positions]
                if self.oracle
                else []
            ),
        }
        expected = None
        for field_name, vectors in groups.items():
            for i, v in enumerate(vectors):
                if expected is None:
                    expected = len(v)
                elif len(v) != expected:
                    raise ValueError(
                        f"{field_name}[{i}] has length {len(v)}, "
                        f"expected {expected}"
                    )
        return self


class InstanceEcho(BaseModel):
    name: str
    root_datum: str
    g_simple: list[int]
    grading: list[int] | None = None
    psi_v: list[RationalVector]
    multiplicities: list[int]
    fund_chars: list[RationalVector]
    oracle: OracleKind | None = None


class SubspaceEntry(BaseModel):
    """
    One special (or undecided) subspace.

    `members` are 1-based weight indices; parabolics are 1-based simple
    root indices with a star pattern over the simple roots of G.
    """

    members: list[int]
    codim: int
    special: bool | None
    minset: str | None = None
    stab: list[int] | None = None
    stab_pattern: str = "-"
    env: list[int] | None = None
    env_pattern: str = "-"
    env_star: list[int] | None = None
    lam: RationalVector
    matching: list[tuple[int, RationalVector]] = []
    lambda_identity: bool = False
    reason: str = ""


class ExceptionalEntry(BaseModel):
    subspace: int
    status: str
    partner: list[int] | None = None
    kernel_vector: RationalVector | None = None


class ConvergenceEntry(BaseModel):
    subspace: int
    mu: RationalVector
    functional: RationalVector
    positive: bool
    witness: RationalVector | None = None
    ell: list[RationalVector] = []


class ComponentEntry(BaseModel):
    members: list[int]
    central_character: RationalVector


class IfdEntry(BaseModel):
    """Standardization verdict of one induced filtration datum."""

    label: str
    q: list[int]
    levi_labels: list[int]
    verdict: str
    w: list[int] | None = None
    point: RationalVector | None = None
    subspace: list[int] | None = None
    stab: list[int] | None = None
    message: str = ""


class Report(BaseModel):
    """
    Analysis report.

    `hasse` holds 1-based positions in `spcl`: (covered, covering).
    """

    tool_version: str
    seed: int
    instance: InstanceEcho
    components: list[ComponentEntry] = []
    characters_independent: bool | None = None
    simple_case: bool | None = None
    spcl: list[SubspaceEntry] = []
    hasse: list[tuple[int, int]] = []
    exceptional: list[ExceptionalEntry] = []
    convergence: list[ConvergenceEntry] = []
    ifd: list[IfdEntry] = []
    timings: dict[str, float] | None = None
