# koszul_derham/pipeline/report.py
import logging
from typing import Dict, List, Optional, Union

import pandas as pd
from pydantic import BaseModel, Field

from koszul_derham.errors import InputError

logger = logging.getLogger(__name__)


# Report models
class InputBlock(BaseModel):
    f: str
    vars: List[str]
    weights: List[int]
    n: int
    d: int
    omega: int


class ChecksBlock(BaseModel):
    quasi_homogeneous: bool
    euler_identity: bool
    smooth_isolated: bool
    milnor_scan_bound: int
    eta_cutoff: Optional[int] = None
    degree_cap: Optional[int] = None
    complete_intersection_series: Optional[bool] = None
    euler_consequence: Optional[bool] = None
    vanishing_threshold: Optional[int] = None


class MilnorBlock(BaseModel):
    hilbert: List[int]
    is_artinian: bool
    top_degree: Optional[int] = None
    expected_top_degree: int


class EtaStepBlock(BaseModel):
    nu: int
    target_degree: int
    target_dim: int
    filtration_dim: int
    quotient_dim: int
    eta_rank: int
    injective: bool


class FiltrationBlock(BaseModel):
    computed: bool = True
    note: Optional[str] = None
    steps: List[EtaStepBlock] = Field(default_factory=list)
    saturation_index: Optional[int] = None
    kernel_cycle_generates: Optional[bool] = None
    assertions: Dict[str, bool] = Field(default_factory=dict)


class DerhamEntry(BaseModel):
    p: int
    internal_degree: int
    status: str  # stabilized | not_stabilized | skipped | error
    pole_cap: Optional[int] = None
    certificate_bound: Optional[int] = None
    transition_ranks: List[int] = Field(default_factory=list)
    level_dims: List[int] = Field(default_factory=list)
    dim: Optional[int] = None
    asserted: bool = False
    expected: Optional[int] = None
    filtration: Optional[FiltrationBlock] = None
    note: Optional[str] = None


class AssertionOutcome(BaseModel):
    name: str
    p: Optional[int] = None
    expected: Optional[int] = None
    observed: Optional[int] = None
    passed: Optional[bool] = None


class TheoremBlock(BaseModel):
    status: str  # verified | failed | hypothesis_not_met | inconclusive
    assertions: List[AssertionOutcome] = Field(default_factory=list)
    cited_context: List[str] = Field(default_factory=list)
    prediction: Optional[str] = None


class CorollaryBlock(BaseModel):
    alpha: int
    prediction: Optional[str] = None
    assertions: List[AssertionOutcome] = Field(default_factory=list)
    status: str = "not_applicable"  # verified | failed | inconclusive | not_applicable


class TimingBlock(BaseModel):
    enabled: bool = False
    stages: Dict[str, float] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    input: InputBlock
    checks: ChecksBlock
    milnor: Optional[MilnorBlock] = None
    jacobian: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    derham: List[DerhamEntry] = Field(default_factory=list)
    theorem: TheoremBlock
    corollary: Optional[CorollaryBlock] = None
    timing: TimingBlock = Field(default_factory=TimingBlock)


class PropertyBlock(BaseModel):
    name: str
    checked: int = 0
    failures: int = 0
    skipped: int = 0
    passed: Optional[bool] = None
    note: Optional[str] = None


class SelftestReport(BaseModel):
    input: InputBlock
    seed: int
    samples: int
    properties: List[PropertyBlock] = Field(default_factory=list)
    status: str = "passed"  # passed | failed


class CheckReport(BaseModel):
    input: InputBlock
    checks: ChecksBlock
    milnor: MilnorBlock


class MilnorReport(BaseModel):
    input: InputBlock
    milnor: MilnorBlock


class JacobianReport(BaseModel):
    input: InputBlock
    p: int
    dims: Dict[str, int]


class DerhamReport(BaseModel):
    input: InputBlock
    derham: DerhamEntry


Report = Union[VerificationReport, CheckReport, MilnorReport, JacobianReport, DerhamReport, SelftestReport]


# -- rendering ------------------------------------------------------------

def homology_label(p: int, n: int) -> str:
    return "H_{n-1}(∂;R_f)" if p == n - 1 else f"H_{p}(∂;R_f)"


def _frame(rows: List[Dict[str, object]]) -> str:
    if not rows:
        return "(empty)"
    # object dtype keeps ints from turning into floats next to missing values
    cleaned = [{key: "-" if value is None else value for key, value in row.items()} for row in rows]
    return pd.DataFrame(cleaned, dtype=object).to_string(index=False)


def _input_rows(block: InputBlock) -> List[Dict[str, object]]:
    return [
        {"quantity": "f", "value": block.f},
        {"quantity": "vars", "value": ",".join(block.vars)},
        {"quantity": "weights", "value": ",".join(str(w) for w in block.weights)},
        {"quantity": "n", "value": block.n},
        {"quantity": "d", "value": block.d},
        {"quantity": "omega", "value": block.omega},
    ]


def _milnor_table(block: MilnorBlock) -> str:
    return _frame([{"t": t, "dim M_t": dim} for t, dim in enumerate(block.hilbert)])


def _derham_table(entries: List[DerhamEntry], n: int) -> str:
    rows = []
    for entry in entries:
        rows.append({
            "homology": homology_label(entry.p, n),
            "dim": "-" if entry.dim is None else entry.dim,
            "j": entry.internal_degree,
            "pole cap": "-" if entry.pole_cap is None else entry.pole_cap,
            "ranks": " ".join(str(r) for r in entry.transition_ranks),
            "status": entry.status,
            "expected": "-" if entry.expected is None else entry.expected,
        })
    return _frame(rows)


def _filtration_tables(entries: List[DerhamEntry], n: int) -> List[str]:
    out = []
    for entry in entries:
        if entry.filtration is None or not entry.filtration.steps:
            continue
        rows = [step.model_dump() for step in entry.filtration.steps]
        out.append(f"filtration of {homology_label(entry.p, n)}\n{_frame(rows)}")
    return out


def render_table(report: Report) -> str:
    """Human-readable aligned tables, one block per section."""
    sections: List[str] = [_frame(_input_rows(report.input))]
    n = report.input.n

    if isinstance(report, (VerificationReport, CheckReport)):
        checks = [{"check": k, "value": v} for k, v in report.checks.model_dump().items()]
        sections.append(_frame(checks))
    if isinstance(report, (VerificationReport, CheckReport, MilnorReport)) and report.milnor is not None:
        sections.append(_milnor_table(report.milnor))
    if isinstance(report, JacobianReport):
        sections.append(_frame([{"t": int(t), f"dim H_{report.p}(∂f;A)_t": dim} for t, dim in report.dims.items()]))
    if isinstance(report, DerhamReport):
        sections.append(_derham_table([report.derham], n))
        sections.extend(_filtration_tables([report.derham], n))
    if isinstance(report, SelftestReport):
        sections.append(_frame([block.model_dump() for block in report.properties]))
        sections.append(f"selftest status: {report.status} (seed {report.seed}, {report.samples} samples)")
    if isinstance(report, VerificationReport):
        jacobian_rows = [
            {"p": int(p), "t": int(t), "dim H_p(∂f;A)_t": dim}
            for p, dims in report.jacobian.items()
            for t, dim in dims.items()
        ]
        sections.append(_frame(jacobian_rows))
        sections.append(_derham_table(report.derham, n))
        sections.extend(_filtration_tables(report.derham, n))
        sections.append(_frame([a.model_dump() for a in report.theorem.assertions]))
        sections.append(f"theorem status: {report.theorem.status}")
        if report.corollary is not None:
            sections.append(_frame([a.model_dump() for a in report.corollary.assertions]))
            sections.append(f"vanishing corollary (alpha={report.corollary.alpha}): {report.corollary.status}")
        if report.timing.enabled:
            sections.append(_frame([{"stage": k, "seconds": round(v, 4)} for k, v in report.timing.stages.items()]))
    return "\n\n".join(sections) + "\n"


def emit_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    if fmt == "table":
        return render_table(report)
    raise InputError(f"unknown report format {fmt!r}", reason="bad_format")


def parse_report(text: str) -> VerificationReport:
    return VerificationReport.model_validate_json(text)
