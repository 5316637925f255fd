"""Shared domain types for the candidate-ranking pipeline.

All types are immutable value objects; pipeline stages communicate only
through these and their JSON forms. Serialization is canonical (sorted keys,
two-space indent, trailing newline) so persisted reports are byte-stable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

Score = Union[int, Fraction]


class TraceStatus(str, Enum):
    OK = "ok"
    COMPILE_ERROR = "compile_error"
    RUNTIME_ERROR = "runtime_error"
    TIMEOUT = "timeout"
    MALFORMED_OUTPUT = "malformed_output"


@dataclass(frozen=True)
class Provenance:
    """Where a candidate came from: sampled from a model or injected by hand."""

    kind: str  # "llm" | "injected"
    provider: Optional[str] = None
    model: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in ("llm", "injected"):
            raise ValueError(f"unknown provenance kind: {self.kind!r}")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "provider": self.provider, "model": self.model}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Provenance":
        return cls(kind=d["kind"], provider=d.get("provider"), model=d.get("model"))


@dataclass(frozen=True)
class Problem:
    """One generation task: a natural-language spec plus the module interface.

    reference_testbench is the ground-truth checker and is used only for
    evaluation, never by the ranking pipeline itself.
    """

    id: str
    spec_text: str
    module_interface: str
    reference_testbench: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("problem id must be non-empty")
        if not self.module_interface:
            raise ValueError("module_interface must be non-empty")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "spec_text": self.spec_text,
            "module_interface": self.module_interface,
            "reference_testbench": self.reference_testbench,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Problem":
        return cls(
            id=d["id"],
            spec_text=d.get("spec_text", ""),
            module_interface=d["module_interface"],
            reference_testbench=d.get("reference_testbench"),
        )


@dataclass(frozen=True)
class Candidate:
    """One generated HDL module. Identity is the generation index, never a
    content hash: duplicated sources are legal and counted separately."""

    index: int
    source: str
    provenance: Provenance

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("candidate index must be >= 0")
        if not self.source:
            raise ValueError("candidate source must be non-empty")

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "source": self.source,
            "provenance": self.provenance.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Candidate":
        return cls(
            index=d["index"],
            source=d["source"],
            provenance=Provenance.from_dict(d["provenance"]),
        )


@dataclass(frozen=True)
class TestCase:
    """Stimulus statements driving the module inputs for one test case."""

    index: int
    stimulus: str
    description: Optional[str] = None

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("test case index must be >= 0")

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "stimulus": self.stimulus,
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "TestCase":
        return cls(
            index=d["index"],
            stimulus=d["stimulus"],
            description=d.get("description"),
        )


@dataclass(frozen=True)
class Testbench:
    """Assembled printing-only testbench: drives every case and prints one
    marker record per case, asserting nothing."""

    source: str
    case_count: int
    marker_prefix: str

    def __post_init__(self) -> None:
        if self.case_count < 1:
            raise ValueError("case_count must be >= 1")
        if not self.marker_prefix:
            raise ValueError("marker_prefix must be non-empty")

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "case_count": self.case_count,
            "marker_prefix": self.marker_prefix,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Testbench":
        return cls(
            source=d["source"],
            case_count=d["case_count"],
            marker_prefix=d["marker_prefix"],
        )


@dataclass(frozen=True)
class ExecutionTrace:
    """Per-candidate simulation outcome: either one normalized marker record
    per test case (status ok) or a failure classification with no records."""

    status: TraceStatus
    records: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "status", TraceStatus(self.status))
        if self.status is not TraceStatus.OK and self.records:
            raise ValueError("records must be empty unless status is ok")
        if self.status is TraceStatus.OK and not self.records:
            raise ValueError("ok trace must carry at least one record")

    @property
    def ok(self) -> bool:
        return self.status is TraceStatus.OK

    def to_dict(self) -> dict[str, Any]:
        return {"status": self.status.value, "records": list(self.records)}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ExecutionTrace":
        return cls(status=TraceStatus(d["status"]), records=tuple(d["records"]))


@dataclass(frozen=True)
class Cluster:
    """A maximal set of candidates with identical traces. Failed candidates
    never merge: each is its own singleton cluster with failed=True."""

    members: frozenset[int]
    canonical_trace: ExecutionTrace
    failed: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.members:
            raise ValueError("cluster members must be non-empty")
        if self.failed:
            if len(self.members) != 1:
                raise ValueError("failed cluster must be a singleton")
            if self.canonical_trace.ok:
                raise ValueError("failed cluster cannot hold an ok trace")
        elif not self.canonical_trace.ok:
            raise ValueError("ok cluster must hold an ok canonical trace")

    @property
    def min_member(self) -> int:
        return min(self.members)

    def to_dict(self) -> dict[str, Any]:
        return {"members": sorted(self.members), "failed": self.failed}


@dataclass(frozen=True)
class ScoredCluster:
    """Cluster plus its consistency score. Strict scores are integers equal to
    the member count for ok clusters (0 for failed); case-wise scores are
    rationals in [0, n]."""

    cluster: Cluster
    score: Score

    def to_dict(self) -> dict[str, Any]:
        d = self.cluster.to_dict()
        d["score"] = encode_score(self.score)
        return d

    @classmethod
    def from_dict(cls, d: Mapping[str, Any], traces: tuple[ExecutionTrace, ...]) -> "ScoredCluster":
        members = frozenset(d["members"])
        cluster = Cluster(
            members=members,
            canonical_trace=traces[min(members)],
            failed=d["failed"],
        )
        return cls(cluster=cluster, score=decode_score(d["score"]))


@dataclass(frozen=True)
class ReferencePrediction:
    """One reason-then-summarize exchange predicting the reference output of a
    test case. parsed is None when the summary JSON could not be interpreted."""

    attempt: int
    parsed: Optional[Mapping[str, Any]]
    raw_reasoning: str

    def __post_init__(self) -> None:
        if self.attempt < 0:
            raise ValueError("attempt must be >= 0")

    def to_dict(self) -> dict[str, Any]:
        return {
            "attempt": self.attempt,
            "parsed": dict(self.parsed) if self.parsed is not None else None,
            "raw_reasoning": self.raw_reasoning,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ReferencePrediction":
        return cls(
            attempt=d["attempt"],
            parsed=d.get("parsed"),
            raw_reasoning=d.get("raw_reasoning", ""),
        )


@dataclass(frozen=True)
class CotDecision:
    """Audit record of one top-vs-challenger arbitration."""

    top_members: tuple[int, ...]
    challenger_members: tuple[int, ...]
    case_index: int
    predictions: tuple[ReferencePrediction, ...]
    matches: int
    threshold: int
    swap: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "top_members": list(self.top_members),
            "challenger_members": list(self.challenger_members),
            "case_index": self.case_index,
            "predictions": [p.to_dict() for p in self.predictions],
            "matches": self.matches,
            "threshold": self.threshold,
            "swap": self.swap,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "CotDecision":
        return cls(
            top_members=tuple(d["top_members"]),
            challenger_members=tuple(d["challenger_members"]),
            case_index=d["case_index"],
            predictions=tuple(ReferencePrediction.from_dict(p) for p in d["predictions"]),
            matches=d["matches"],
            threshold=d["threshold"],
            swap=d["swap"],
        )


@dataclass(frozen=True)
class RunReport:
    """The persisted outcome of one pipeline run.

    scored_clusters hold the consistency ranking before arbitration;
    cot_decisions record every comparison made afterwards; final_ranking is
    one representative per cluster in final (post-arbitration) order.
    """

    problem_id: str
    config: Mapping[str, Any]
    candidates: tuple[Candidate, ...]
    test_cases: tuple[TestCase, ...]
    testbench: Testbench
    traces: tuple[ExecutionTrace, ...]
    scored_clusters: tuple[ScoredCluster, ...]
    cot_decisions: tuple[CotDecision, ...]
    final_ranking: tuple[int, ...]
    timings: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.final_ranking) > len(self.scored_clusters):
            raise ValueError("final_ranking cannot exceed one representative per cluster")

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": 1,
            "problem_id": self.problem_id,
            "config": dict(self.config),
            "candidates": [c.to_dict() for c in self.candidates],
            "test_cases": [t.to_dict() for t in self.test_cases],
            "testbench": self.testbench.to_dict(),
            "traces": [t.to_dict() for t in self.traces],
            "scored_clusters": [sc.to_dict() for sc in self.scored_clusters],
            "cot_decisions": [d.to_dict() for d in self.cot_decisions],
            "final_ranking": list(self.final_ranking),
            "timings": dict(self.timings),
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "RunReport":
        traces = tuple(ExecutionTrace.from_dict(t) for t in d["traces"])
        return cls(
            problem_id=d["problem_id"],
            config=d.get("config", {}),
            candidates=tuple(Candidate.from_dict(c) for c in d["candidates"]),
            test_cases=tuple(TestCase.from_dict(t) for t in d.get("test_cases", [])),
            testbench=Testbench.from_dict(d["testbench"]),
            traces=traces,
            scored_clusters=tuple(
                ScoredCluster.from_dict(sc, traces) for sc in d["scored_clusters"]
            ),
            cot_decisions=tuple(CotDecision.from_dict(c) for c in d.get("cot_decisions", [])),
            final_ranking=tuple(d["final_ranking"]),
            timings=d.get("timings", {}),
        )

    def dumps(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))


def encode_score(score: Score) -> Union[int, str]:
    """Integers stay JSON numbers; rationals become "num/den" strings."""
    if isinstance(score, Fraction):
        return str(score)
    return int(score)


def decode_score(value: Union[int, str]) -> Score:
    if isinstance(value, str):
        return Fraction(value)
    return int(value)


def canonical_json(data: Any) -> str:
    """Byte-stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
