"""Table-driven stand-in for an HDL simulator.

Lets the whole pipeline run as real subprocesses without any HDL toolchain:
behavior is looked up by the sha256 digest of the candidate source, optionally
refined by the testbench digest.

Table format (JSON object):

    {
      "<candidate-digest>": {
        "compile_exit": 0,     # nonzero -> compile fails
        "run_exit": 0,         # nonzero -> runtime error
        "stdout": "...",       # printed by the run phase
        "stderr": "",
        "sleep": 0             # seconds the run phase blocks (timeout tests)
      },
      "<candidate-digest>:<testbench-digest>": { ... }   # bench-specific override
    }

The composite key wins over the plain one, which is how reference-testbench
judging is scripted alongside the printing-bench run for the same candidate.
Unknown digests fail compilation.

Invoked by the harness via command templates:

    python -m vrank.mock_sim compile --table T {candidate} {testbench} {output}
    python -m vrank.mock_sim run --table T {output}

Keep imports minimal: one interpreter start per phase is the whole cost model.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import shlex
import sys
import time


def digest_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _load_table(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _lookup(table: dict, cand_digest: str, tb_digest: str) -> dict | None:
    entry = table.get(f"{cand_digest}:{tb_digest}")
    if entry is None:
        entry = table.get(cand_digest)
    return entry


def _cmd_compile(args: argparse.Namespace) -> int:
    table = _load_table(args.table)
    with open(args.candidate, "r", encoding="utf-8") as fh:
        cand_digest = digest_text(fh.read())
    with open(args.testbench, "r", encoding="utf-8") as fh:
        tb_digest = digest_text(fh.read())
    entry = _lookup(table, cand_digest, tb_digest)
    if entry is None:
        sys.stderr.write(f"mock_sim: unknown candidate digest {cand_digest}\n")
        return 1
    if entry.get("compile_exit", 0) != 0:
        sys.stderr.write(entry.get("stderr", "mock_sim: scripted compile failure\n"))
        return int(entry["compile_exit"])
    with open(args.output, "w", encoding="utf-8") as fh:
        json.dump({"candidate": cand_digest, "testbench": tb_digest}, fh)
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    table = _load_table(args.table)
    with open(args.output, "r", encoding="utf-8") as fh:
        digests = json.load(fh)
    entry = _lookup(table, digests["candidate"], digests["testbench"])
    if entry is None:
        sys.stderr.write("mock_sim: stale output binary\n")
        return 1
    sleep = entry.get("sleep", 0)
    if sleep:
        time.sleep(sleep)
    sys.stdout.write(entry.get("stdout", ""))
    sys.stderr.write(entry.get("stderr", ""))
    return int(entry.get("run_exit", 0))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="vrank.mock_sim")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compile = sub.add_parser("compile")
    p_compile.add_argument("--table", required=True)
    p_compile.add_argument("candidate")
    p_compile.add_argument("testbench")
    p_compile.add_argument("output")
    p_compile.set_defaults(func=_cmd_compile)

    p_run = sub.add_parser("run")
    p_run.add_argument("--table", required=True)
    p_run.add_argument("output")
    p_run.set_defaults(func=_cmd_run)

    args = parser.parse_args(argv)
    return args.func(args)


def mock_simulator_config(table_path: str, **overrides):
    """SimulatorConfig whose compile/run commands call this module."""
    from .simulate import SimulatorConfig

    base = f"{shlex.quote(sys.executable)} -m vrank.mock_sim"
    table = shlex.quote(str(table_path))
    return SimulatorConfig(
        compile_command=f"{base} compile --table {table} {{candidate}} {{testbench}} {{output}}",
        run_command=f"{base} run --table {table} {{output}}",
        **overrides,
    )


if __name__ == "__main__":
    sys.exit(main())
