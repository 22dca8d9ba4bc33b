from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Optional
from enum import Enum

from algebra.torsion import TorsionElement, TorsionGroup
from errors import DomainError


class Series(str, Enum):
    AI = "AI"
    AII = "AII"
    B = "B"
    C = "C"
    D = "D"
    RAW_M = "RAW_M"          # Gamma_M(T, k), no anti-automorphism
    RAW_MPHI = "RAW_MPHI"    # Gamma_M(T, q, s, tau) with arbitrary mu


PHI_SERIES = {Series.AII, Series.B, Series.C, Series.D, Series.RAW_MPHI}
INVOLUTION_SIGN = {Series.B: 1, Series.D: 1, Series.C: -1}


class InvolutionType(str, Enum):
    NOT_INVOLUTION = "not_involution"
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"


class GradingSpec(BaseModel):
    """Discrete datum naming one grading; serializes to the canonical spec JSON."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    series: Series
    pairs: Optional[list[int]] = Field(default=None, alias="T")  # cyclic orders, AI / RAW_M
    r: Optional[int] = None      # T = Z2^(2r), phi-series
    k: Optional[int] = None
    q: Optional[int] = None
    s: Optional[int] = None
    tau: Optional[list[str]] = None   # exponent strings, see TorsionGroup.format
    mu: Optional[list[int]] = None    # RAW_MPHI only
    delta: Optional[int] = None       # B, C, D

    @model_validator(mode="after")
    def _check(self):
        validate_spec(self)
        return self

    # ── Derived data ──

    @property
    def is_phi(self) -> bool:
        return self.series in PHI_SERIES

    @property
    def group(self) -> TorsionGroup:
        if self.is_phi:
            return TorsionGroup.elementary(self.r)
        return TorsionGroup(tuple(self.pairs or ()))

    @property
    def tau_elements(self) -> list[TorsionElement]:
        group = self.group
        return [group.parse(t) for t in (self.tau or [])]

    @property
    def blocks(self) -> int:
        """Number of diagonal blocks: k, or q + 2s."""
        return self.k if not self.is_phi else self.q + 2 * self.s

    @property
    def n(self) -> int:
        return self.blocks * self.group.degree

    @property
    def mu_values(self) -> list[int]:
        if self.series == Series.RAW_MPHI:
            return list(self.mu)
        if self.series == Series.AII:
            return [1] * self.s
        return [self.delta] * self.s

    def canonical_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True)

    def label(self) -> str:
        if not self.is_phi:
            return f"{self.series.value}({self.group.describe()}, k={self.k})"
        tau = ",".join(self.tau or []) or "-"
        return f"{self.series.value}(r={self.r}, q={self.q}, s={self.s}, tau={tau})"


def validate_spec(spec: GradingSpec):
    """Enforce the parameter conditions of each series."""
    if spec.is_phi:
        _validate_phi(spec)
        return
    if spec.k is None or spec.k < 1:
        raise DomainError(f"{spec.series.value} needs k >= 1")
    if spec.r is not None or spec.q is not None or spec.s is not None or spec.tau:
        raise DomainError(f"{spec.series.value} takes T and k only")
    group = TorsionGroup(tuple(spec.pairs or ()))
    if spec.series == Series.AI and group.is_elementary_two and spec.k < 3:
        raise DomainError("AI with an elementary 2-group T needs k >= 3")


def _validate_phi(spec: GradingSpec):
    if spec.r is None or spec.r < 0:
        raise DomainError(f"{spec.series.value} needs r >= 0")
    if spec.pairs:
        raise DomainError(f"{spec.series.value} takes T as r (T = Z2^(2r))")
    if spec.q is None or spec.s is None or spec.q < 0 or spec.s < 0:
        raise DomainError("q and s must be non-negative")
    if spec.q + 2 * spec.s < 1:
        raise DomainError("q + 2s must be at least 1")
    tau = spec.tau or []
    if len(tau) != spec.q:
        raise DomainError(f"tau has {len(tau)} entries, expected q = {spec.q}")
    group = TorsionGroup.elementary(spec.r)
    elements = [group.parse(t) for t in tau]
    for t, text in zip(elements, tau):
        if group.format(t) != text:
            raise DomainError(f"tau entry {text!r} is not in canonical form {group.format(t)!r}")

    if spec.series == Series.RAW_MPHI:
        if spec.mu is None or len(spec.mu) != spec.s or any(m == 0 for m in spec.mu):
            raise DomainError("RAW_MPHI needs s nonzero mu values")
    elif spec.mu is not None:
        raise DomainError("mu is only given for RAW_MPHI")

    if spec.series != Series.RAW_MPHI and spec.q == 2 and spec.s == 0 and elements[0] == elements[1]:
        raise DomainError("q = 2, s = 0, t1 = t2 does not give a fine grading")

    if spec.series in INVOLUTION_SIGN:
        sign = INVOLUTION_SIGN[spec.series]
        if spec.delta != sign:
            raise DomainError(f"series {spec.series.value} has delta = {sign}")
        if spec.series == Series.B and (spec.r != 0):
            raise DomainError("series B has trivial T")
        for t in elements:
            if group.quad_sign(t) != sign:
                raise DomainError(
                    f"series {spec.series.value} needs every t_i with quadratic sign {sign}"
                )
    elif spec.delta is not None:
        raise DomainError(f"delta is not given for {spec.series.value}")


# ── Results ──


class SupportRow(BaseModel):
    i: int
    j: int
    t: str
    dim: int


class PresentationModel(BaseModel):
    Z2: int
    Z4: int
    Z: int
    invariants: list[int] = []   # torsion invariant factors when not all 2 or 4


class ExtensionModel(BaseModel):
    split: bool
    t_criterion: bool           # some t with every t_i t of one quadratic sign
    invariants: list[int]        # torsion invariant factors of G
    free_rank: int
    lambda_on_generators: list[int] = []


class GroupTerm(BaseModel):
    op: str                      # "named", "direct", "semidirect", "wreath", "extension"
    name: Optional[str] = None
    parts: list["GroupTerm"] = []
    order: str                   # exact decimal


GroupTerm.model_rebuild()


class WeylResult(BaseModel):
    term: GroupTerm
    order: str
    parts: dict[str, str] = {}   # named subobject -> order
    brute_force_order: Optional[str] = None
    kernel_rank: Optional[int] = None
    complement_order: Optional[str] = None          # AII: subgroup meeting N trivially
    brute_force_complement_order: Optional[str] = None
    verdict: Optional[str] = None    # "ok", "mismatch"


class EquivalenceResult(BaseModel):
    equivalent: bool
    kind: str                    # "weak", "involution", "grading"
    witness: Optional[dict] = None


class SweepItem(BaseModel):
    spec: GradingSpec
    weyl: Optional[WeylResult] = None
    errors: list[str] = []
    exit_code: int = 0


class SweepResult(BaseModel):
    total: int
    verified: int
    mismatches: int
    failures: int
    items: list[SweepItem]


class Report(BaseModel):
    command: list[str]
    specs: list[GradingSpec] = []
    count: Optional[int] = None
    presentation: Optional[PresentationModel] = None
    support: list[SupportRow] = []
    extension: Optional[ExtensionModel] = None
    refinement: Optional[GradingSpec] = None   # division grading refining a non-fine spec
    weyl: Optional[WeylResult] = None
    equivalence: Optional[EquivalenceResult] = None
    sweep: Optional[SweepResult] = None
