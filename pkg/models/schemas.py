"""
Result schemas for invariant computations.
"""
from typing import Dict, List, Optional
from datetime import datetime
from enum import Enum

from pydantic import BaseModel, Field


class Certificate(str, Enum):
    """How a BEL-rank value is known."""
    EXHAUSTIVE = "EXHAUSTIVE"
    UPPER_BOUND = "UPPER_BOUND"
    LOWER_BOUND_NUCLEI = "LOWER_BOUND_NUCLEI"


class RecordStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"


class BelRankResult(BaseModel):
    """Minimum matrix rank over an isotopy class, with the H that attains it."""
    value: int
    witness_H: List[int]
    certificate: List[Certificate]
    candidates_examined: int
    elapsed: Optional[float] = None  # milliseconds

    @property
    def witness_text(self) -> str:
        return " ".join(str(w) for w in self.witness_H)

    @property
    def certificate_text(self) -> str:
        return "+".join(c.value for c in self.certificate)

    @property
    def exhaustive(self) -> bool:
        return Certificate.EXHAUSTIVE in self.certificate

    @property
    def certified(self) -> bool:
        return self.exhaustive or Certificate.LOWER_BOUND_NUCLEI in self.certificate


class BelTriple(BaseModel):
    """brk of S, of its dual and of the transpose of its dual."""
    brk: BelRankResult
    brk_d: BelRankResult
    brk_dt: BelRankResult

    @property
    def values(self) -> List[int]:
        return [self.brk.value, self.brk_d.value, self.brk_dt.value]

    @property
    def d_dt_mismatch(self) -> bool:
        return self.brk_d.value != self.brk_dt.value


class NucleiReport(BaseModel):
    """Nucleus and centre sizes; l, m, r are dimensions over each nucleus."""
    left: int
    middle: int
    right: int
    centre: int
    l: int
    m: int
    r: int

    @property
    def sizes(self) -> List[int]:
        return [self.left, self.middle, self.right, self.centre]


class KnuthProfile(BaseModel):
    """brk over the six Knuth images, keyed by word."""
    values: Dict[str, int]
    certificates: Dict[str, str]
    violations: List[str] = Field(default_factory=list)


class SpreadStatistics(BaseModel):
    elements: int = 0
    meet_u: int = 0
    meet_w: int = 0
    meet_both: int = 0


class ConfigurationReport(BaseModel):
    """Outcome of the spread disjointness check of a BEL configuration."""
    ok: bool
    r: int
    dim_u: int
    dim_w: int
    violating_element: Optional[List[int]] = None
    statistics: SpreadStatistics = Field(default_factory=SpreadStatistics)


class InvariantRecord(BaseModel):
    """One output row per input algebra."""
    id: str
    p: Optional[int] = None
    e: Optional[int] = None
    n: Optional[int] = None
    mrk: Optional[int] = None
    brk: Optional[int] = None
    brk_d: Optional[int] = None
    brk_dt: Optional[int] = None
    nuclei: Optional[List[int]] = None
    certificate: Optional[str] = None
    witness: Optional[str] = None
    candidates: Optional[int] = None
    millis: Optional[float] = None
    label: Optional[str] = None
    flags: List[str] = Field(default_factory=list)
    status: RecordStatus = RecordStatus.OK
    error: Optional[str] = None


class BatchReport(BaseModel):
    """Records of a directory run plus brk histograms."""
    source: str
    records: List[InvariantRecord]
    histogram: Dict[str, int]
    label_histograms: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    failed: int = 0
    generated_at: datetime = Field(default_factory=datetime.now)
