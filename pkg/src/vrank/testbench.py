"""Assemble test cases into a single printing-only testbench.

The testbench instantiates the device under test once, applies each case's
stimulus in index order, waits a fixed settle delay, and prints exactly one
marker record per case: ``<prefix> <case_index> <in=val> ... <out=val>`` with
values in hexadecimal. It contains no reference model and no assertions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InterfaceParseError
from .model import TestCase, Testbench

DEFAULT_MARKER_PREFIX = "VRANK"
DEFAULT_SETTLE_DELAY = 10

_TYPE_KEYWORDS = {"wire", "reg", "logic", "bit", "var", "signed", "unsigned", "integer"}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_$]*")


@dataclass(frozen=True)
class Port:
    name: str
    direction: str  # "input" | "output"
    range_text: str | None = None  # e.g. "[3:0]"; None for a scalar


def _strip_comments(text: str) -> str:
    text = re.sub(r"/\*.*?\*/", " ", text, flags=re.S)
    text = re.sub(r"//[^\n]*", " ", text)
    text = re.sub(r"\(\*.*?\*\)", " ", text, flags=re.S)  # attributes
    return text


def parse_module_name(module_interface: str) -> str:
    m = re.search(r"\bmodule\s+([A-Za-z_][A-Za-z0-9_$]*)", _strip_comments(module_interface))
    if not m:
        raise InterfaceParseError("no module declaration found in interface header")
    return m.group(1)


def parse_ports(module_interface: str) -> list[Port]:
    """Scan the interface header for input/output declarations.

    Handles ANSI headers (directions inline in the port list, with Verilog's
    inheritance of direction and range across comma-separated names) as well
    as trailing ``input ...;`` declarations. This is a lightweight scan, not
    an HDL parse.
    """
    text = _strip_comments(module_interface)
    ports: list[Port] = []
    seen: set[str] = set()
    # Split into segments, each starting at a direction keyword.
    pieces = re.split(r"\b(input|output|inout)\b", text)
    for i in range(1, len(pieces), 2):
        direction = pieces[i]
        if direction == "inout":
            raise InterfaceParseError("inout ports are not supported")
        segment = pieces[i + 1]
        # Names stop at the end of the declaration or of the port list.
        segment = re.split(r"[;)]", segment, maxsplit=1)[0]
        ranges = re.findall(r"\[[^\]]*\]", segment)
        names_part = re.sub(r"\[[^\]]*\]", " ", segment)
        range_text = ranges[0] if ranges else None
        for name in _IDENT.findall(names_part):
            if name in _TYPE_KEYWORDS or name in seen:
                continue
            seen.add(name)
            ports.append(Port(name=name, direction=direction, range_text=range_text))
    if not ports:
        raise InterfaceParseError("no input/output ports found in interface header")
    return ports


def _stimulus_toggles(name: str, cases: list[TestCase]) -> bool:
    pattern = re.compile(rf"\b{re.escape(name)}\b\s*<?=")
    return any(pattern.search(case.stimulus) for case in cases)


def assemble_testbench(
    cases: list[TestCase],
    module_interface: str,
    marker_prefix: str = DEFAULT_MARKER_PREFIX,
    settle_delay: int = DEFAULT_SETTLE_DELAY,
) -> Testbench:
    """Build the printing-only testbench for the given cases.

    Cases must carry the contiguous indices 0..m-1; stimuli are applied in
    that order. A free-running clock is added only when the interface declares
    a port named clk and no case stimulus assigns it. Assembly is
    deterministic: identical inputs yield byte-identical source.
    """
    if not cases:
        raise ValueError("cases must be non-empty")
    if settle_delay < 0:
        raise ValueError("settle_delay must be >= 0")
    ordered = sorted(cases, key=lambda c: c.index)
    if [c.index for c in ordered] != list(range(len(ordered))):
        raise ValueError("test case indices must be exactly 0..m-1")

    module_name = parse_module_name(module_interface)
    ports = parse_ports(module_interface)
    inputs = [p for p in ports if p.direction == "input"]
    outputs = [p for p in ports if p.direction == "output"]
    if not inputs or not outputs:
        raise InterfaceParseError("interface must declare at least one input and one output")

    lines: list[str] = ["`timescale 1ns / 1ps", "", "module vrank_tb;"]
    for p in inputs:
        rng = f" {p.range_text}" if p.range_text else ""
        lines.append(f"  reg{rng} {p.name};")
    for p in outputs:
        rng = f" {p.range_text}" if p.range_text else ""
        lines.append(f"  wire{rng} {p.name};")
    lines.append("")
    conns = ", ".join(f".{p.name}({p.name})" for p in ports)
    lines.append(f"  {module_name} dut({conns});")

    has_clk = any(p.name == "clk" for p in inputs)
    if has_clk and not _stimulus_toggles("clk", ordered):
        lines.append("")
        lines.append("  initial clk = 1'b0;")
        lines.append("  always #5 clk = ~clk;")

    fmt = " ".join(f"{p.name}=%0h" for p in inputs + outputs)
    args = ", ".join(p.name for p in inputs + outputs)

    lines.append("")
    lines.append("  initial begin")
    for case in ordered:
        lines.append(f"    // case {case.index}")
        for stim_line in case.stimulus.splitlines():
            if stim_line.strip():
                lines.append(f"    {stim_line.strip()}")
        lines.append(f"    #{settle_delay};")
        lines.append(
            f'    $display("{marker_prefix} %0d {fmt}", {case.index}, {args});'
        )
    lines.append("    $finish;")
    lines.append("  end")
    lines.append("endmodule")

    return Testbench(
        source="\n".join(lines) + "\n",
        case_count=len(ordered),
        marker_prefix=marker_prefix,
    )
