"""Compile and run candidates against the assembled testbench.

Each candidate gets an isolated scratch directory and two subprocess phases
(compile, run), both bounded by the configured timeout. stdout is reduced to
normalized marker records; every failure mode is data (a trace status), never
an exception, because failed simulations still participate in scoring.
"""
from __future__ import annotations

import shlex
import shutil
import subprocess
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .model import Candidate, ExecutionTrace, Testbench, TraceStatus

DEFAULT_TIMEOUT = 10.0


@dataclass(frozen=True)
class SimulatorConfig:
    """Generic command-template simulator front end.

    compile_command must contain {candidate}, {testbench} and {output}
    placeholders; run_command must contain {output}. Templates are split with
    shlex first and placeholders substituted per token, so substituted paths
    may contain spaces.
    """

    compile_command: str
    run_command: str
    timeout: float = DEFAULT_TIMEOUT
    max_parallel_simulations: int = 1
    keep_failed_workdirs: bool = False
    workdir_root: str | None = None
    failure_pattern: str = r"Mismatch|FAIL"  # used when judging against a reference bench

    def __post_init__(self) -> None:
        for placeholder in ("{candidate}", "{testbench}", "{output}"):
            if placeholder not in self.compile_command:
                raise ValueError(f"compile_command must contain {placeholder}")
        if "{output}" not in self.run_command:
            raise ValueError("run_command must contain {output}")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_parallel_simulations < 1:
            raise ValueError("max_parallel_simulations must be >= 1")


def iverilog_config(**overrides) -> SimulatorConfig:
    """Config for Icarus Verilog (iverilog/vvp on PATH)."""
    return SimulatorConfig(
        compile_command="iverilog -g2012 -o {output} {candidate} {testbench}",
        run_command="vvp {output}",
        **overrides,
    )


def normalize_record(line: str) -> str:
    """Canonical marker-record form: trimmed, single spaces, lowercased.

    Lowercasing the whole line covers hex digits and x/z unknown tokens in one
    idempotent step; signal names ride along into the canonical form.
    """
    return " ".join(line.split()).lower()


def parse_marker_records(stdout: str, marker_prefix: str, case_count: int) -> tuple[str, ...] | None:
    """Extract exactly one normalized record per case index 0..m-1.

    Returns None when any marker line is unparseable, duplicated, out of
    range, or missing - the caller classifies that as malformed output.
    """
    prefix = marker_prefix.lower()
    seen: dict[int, str] = {}
    for raw in stdout.splitlines():
        norm = normalize_record(raw)
        if not norm.startswith(prefix + " "):
            continue
        tokens = norm.split(" ")
        try:
            index = int(tokens[1])
        except (IndexError, ValueError):
            return None
        if index < 0 or index >= case_count or index in seen:
            return None
        seen[index] = norm
    if len(seen) != case_count:
        return None
    return tuple(seen[i] for i in range(case_count))


def _format_command(template: str, **paths: str) -> list[str]:
    return [token.format(**paths) for token in shlex.split(template)]


def compile_and_run(
    source: str, bench_source: str, cfg: SimulatorConfig, tag: str = "cand"
) -> tuple[str, str]:
    """Run the compile+run phases for one (candidate, bench) pair.

    Returns (phase, stdout) where phase is "ok", "compile", "run" or
    "timeout". A hang in either phase counts as timeout; "compile" and "run"
    mean the phase completed with a nonzero exit.
    """
    workdir = Path(tempfile.mkdtemp(prefix=f"vrank-{tag}-", dir=cfg.workdir_root))
    failed = True
    try:
        cand_path = workdir / "candidate.v"
        bench_path = workdir / "testbench.v"
        out_path = workdir / "sim.out"
        cand_path.write_text(source)
        bench_path.write_text(bench_source)

        paths = {
            "candidate": str(cand_path),
            "testbench": str(bench_path),
            "output": str(out_path),
        }
        try:
            compiled = subprocess.run(
                _format_command(cfg.compile_command, **paths),
                capture_output=True,
                text=True,
                timeout=cfg.timeout,
                cwd=workdir,
            )
        except subprocess.TimeoutExpired:
            return "timeout", ""
        if compiled.returncode != 0:
            return "compile", compiled.stdout + compiled.stderr

        try:
            ran = subprocess.run(
                _format_command(cfg.run_command, **paths),
                capture_output=True,
                text=True,
                timeout=cfg.timeout,
                cwd=workdir,
            )
        except subprocess.TimeoutExpired:
            return "timeout", ""
        if ran.returncode != 0:
            return "run", ran.stdout + ran.stderr
        failed = False
        return "ok", ran.stdout
    finally:
        if not failed or not cfg.keep_failed_workdirs:
            shutil.rmtree(workdir, ignore_errors=True)


def run_candidate(candidate: Candidate, testbench: Testbench, cfg: SimulatorConfig) -> ExecutionTrace:
    """Simulate one candidate; classify any failure into the trace status."""
    phase, stdout = compile_and_run(
        candidate.source, testbench.source, cfg, tag=f"sim{candidate.index}"
    )
    if phase == "compile":
        return ExecutionTrace(status=TraceStatus.COMPILE_ERROR)
    if phase == "run":
        return ExecutionTrace(status=TraceStatus.RUNTIME_ERROR)
    if phase == "timeout":
        return ExecutionTrace(status=TraceStatus.TIMEOUT)
    records = parse_marker_records(stdout, testbench.marker_prefix, testbench.case_count)
    if records is None:
        return ExecutionTrace(status=TraceStatus.MALFORMED_OUTPUT)
    return ExecutionTrace(status=TraceStatus.OK, records=records)


def run_all(
    candidates: list[Candidate], testbench: Testbench, cfg: SimulatorConfig
) -> list[ExecutionTrace]:
    """Simulate every candidate; traces align with candidate indices.

    Fans out to a bounded worker pool; the result is independent of worker
    count and completion order.
    """
    if not candidates:
        raise ValueError("candidates must be non-empty")
    if cfg.max_parallel_simulations == 1 or len(candidates) == 1:
        return [run_candidate(c, testbench, cfg) for c in candidates]
    with ThreadPoolExecutor(max_workers=cfg.max_parallel_simulations) as pool:
        return list(pool.map(lambda c: run_candidate(c, testbench, cfg), candidates))
