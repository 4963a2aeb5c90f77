"""Text, JSON, and DOT renderings plus seed/equation/b-file parsing.

All output is byte-deterministic: edges, labels, and JSON keys are sorted
before rendering.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Sequence

from .digits import (
    DigitString,
    Permutation,
    PermutipleRecord,
    canonical_sigma,
    verify_permutiple,
)
from .errors import BFileError, ParameterError, SeedError
from .graphs import DigitGraph, graph_of_permutiple
from .machine import StateGraph, StateMultigraph

Pair = tuple[int, int]

__all__ = [
    "digit_graph_to_dot",
    "digit_graph_to_json",
    "digit_graph_to_text",
    "format_equation",
    "format_pair",
    "parse_bfile",
    "parse_seed",
    "record_from_json",
    "record_to_json",
    "record_to_text",
    "seed_to_record",
    "state_graph_to_dot",
    "state_graph_to_json",
    "state_graph_to_text",
    "state_multigraph_to_dot",
    "state_multigraph_to_json",
    "state_multigraph_to_text",
]


def format_pair(pair: Pair) -> str:
    return f"({pair[0]},{pair[1]})"


def _format_digits(display: Sequence[int], base: int) -> str:
    if base <= 10:
        return "".join(str(d) for d in display)
    return ",".join(str(d) for d in display)


def format_equation(record: PermutipleRecord) -> str:
    """Seed-syntax equation, e.g. ``4x10:87912=4*21978``."""
    n, b = record.multiplier, record.base
    lhs = _format_digits(record.digits.display, b)
    rhs = _format_digits(record.preimage.display, b)
    return f"{n}x{b}:{lhs}={n}*{rhs}"


def record_to_text(record: PermutipleRecord) -> str:
    digits = ",".join(str(d) for d in record.digits.display)
    preimage = ",".join(str(d) for d in record.preimage.display)
    carries = ",".join(str(c) for c in reversed(record.carries[:-1]))
    return (
        f"({digits})_{record.base} = {record.multiplier} * ({preimage})_{record.base}"
        f"  [carries {carries}]"
    )


def record_to_json(record: PermutipleRecord) -> str:
    """One compact JSON object per record; digits most-significant first.

    ``carries`` lists c_k..c_0 (the final always-zero carry is omitted);
    ``sigma`` lists sigma(0)..sigma(k) over least-significant-first
    positions.
    """
    payload = {
        "base": record.base,
        "canonical": record.canonical,
        "carries": list(reversed(record.carries[:-1])),
        "class_edges": [format_pair(e) for e in graph_of_permutiple(record).sorted_edges],
        "digits": list(record.digits.display),
        "multiplier": record.multiplier,
        "preimage": list(record.preimage.display),
        "sigma": list(record.sigma.mapping),
        "value": record.value(),
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def record_from_json(text: str) -> PermutipleRecord:
    payload = json.loads(text)
    digits = DigitString.from_display(payload["base"], payload["digits"])
    record = verify_permutiple(digits, Permutation(tuple(payload["sigma"])), payload["multiplier"])
    if record is None:
        raise ParameterError("JSON record does not verify as a permutiple")
    expected = list(reversed(record.carries[:-1]))
    if payload.get("carries") not in (None, expected):
        raise ParameterError("JSON carries disagree with the carry recurrence")
    return record


_SEED_RE = re.compile(
    r"^\s*(?:(?P<n1>\d+)\s*x\s*(?P<b>\d+)\s*:)?\s*(?P<lhs>[0-9,]+)\s*=\s*(?P<n2>\d+)\s*\*\s*(?P<rhs>[0-9,]+)\s*$"
)


def _parse_digit_block(text: str, base: int, what: str) -> tuple[int, ...]:
    text = text.strip()
    if "," in text:
        try:
            display = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise SeedError(f"bad {what} digits: {text!r}") from exc
    else:
        if base > 10:
            raise SeedError(f"base {base} needs comma-separated {what} digits")
        if not text.isdigit():
            raise SeedError(f"bad {what} digits: {text!r}")
        display = tuple(int(ch) for ch in text)
    for d in display:
        if not 0 <= d < base:
            raise SeedError(f"{what} digit {d} out of range for base {base}")
    return display


def parse_seed(
    text: str, default_base: int | None = None
) -> tuple[int, int, tuple[int, ...], tuple[int, ...]]:
    """Parse ``NxB:digits=n*digits`` (or ``digits=n*digits`` plus a base).

    Digits are bare symbols for bases up to 10 and comma-separated integers
    beyond.  Returns (multiplier, base, display digits, display preimage).
    """
    match = _SEED_RE.match(text)
    if not match:
        raise SeedError(f"cannot parse seed {text!r}")
    n2 = int(match.group("n2"))
    if match.group("n1") is not None:
        if int(match.group("n1")) != n2:
            raise SeedError("seed multiplier and equation multiplier disagree")
        base = int(match.group("b"))
    elif default_base is not None:
        base = default_base
    else:
        raise SeedError("seed carries no base; use the NxB: prefix or pass a base")
    lhs = _parse_digit_block(match.group("lhs"), base, "left")
    rhs = _parse_digit_block(match.group("rhs"), base, "right")
    if len(lhs) != len(rhs):
        raise SeedError("both sides of a seed must have the same digit count")
    return n2, base, lhs, rhs


def seed_to_record(text: str, default_base: int | None = None) -> PermutipleRecord | None:
    """Parse a seed and verify it; None when the equation fails to verify."""
    n, base, lhs, rhs = parse_seed(text, default_base)
    digits = DigitString.from_display(base, lhs)
    preimage = DigitString.from_display(base, rhs)
    sigma = canonical_sigma(digits, preimage)
    if sigma is None:
        return None
    return verify_permutiple(digits, sigma, n)


def _dot_lines(name: str, nodes: Iterable[str], arcs: Iterable[str]) -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    lines.extend(f"  {node};" for node in nodes)
    lines.extend(f"  {arc};" for arc in arcs)
    lines.append("}")
    return "\n".join(lines) + "\n"


def digit_graph_to_dot(graph: DigitGraph, name: str = "mother") -> str:
    nodes = [str(v) for v in graph.vertices]
    arcs = [f"{d1} -> {d2}" for d1, d2 in graph.sorted_edges]
    return _dot_lines(name, nodes, arcs)


def state_graph_to_dot(graph: StateGraph, name: str = "machine") -> str:
    nodes = [str(c) for c in sorted(graph.states)]
    arcs = [
        f'{c1} -> {c2} [label="{",".join(format_pair(p) for p in labels)}"]'
        for (c1, c2), labels in graph.edges
    ]
    return _dot_lines(name, nodes, arcs)


def state_multigraph_to_dot(graph: StateMultigraph, name: str = "machine") -> str:
    nodes = [str(c) for c in sorted(graph.states())]
    arcs = [f'{c1} -> {c2} [label="{format_pair(label)}"]' for c1, c2, label in graph.edges]
    return _dot_lines(name, nodes, arcs)


def _json_dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def digit_graph_to_json(graph: DigitGraph, kind: str = "mother-graph") -> str:
    return _json_dump(
        {
            "kind": kind,
            "base": graph.base,
            "vertices": list(graph.vertices),
            "edges": [f"{d1}->{d2}" for d1, d2 in graph.sorted_edges],
        }
    )


def state_graph_to_json(graph: StateGraph, kind: str = "hs-graph") -> str:
    return _json_dump(
        {
            "kind": kind,
            "multiplier": graph.multiplier,
            "base": graph.base,
            "states": sorted(graph.states),
            "edges": {
                f"{c1}->{c2}": [format_pair(p) for p in labels]
                for (c1, c2), labels in graph.edges
            },
        }
    )


def state_multigraph_to_json(graph: StateMultigraph, kind: str = "hs-multigraph") -> str:
    return _json_dump(
        {
            "kind": kind,
            "multiplier": graph.multiplier,
            "base": graph.base,
            "states": sorted(graph.states()),
            "edges": [f"{c1}->{c2}:{format_pair(label)}" for c1, c2, label in graph.edges],
        }
    )


def digit_graph_to_text(graph: DigitGraph) -> str:
    lines = [f"vertices: {' '.join(str(v) for v in graph.vertices)}"]
    lines.extend(f"{d1} -> {d2}" for d1, d2 in graph.sorted_edges)
    return "\n".join(lines) + "\n"


def state_graph_to_text(graph: StateGraph) -> str:
    lines = [f"states: {' '.join(str(c) for c in sorted(graph.states))}"]
    for (c1, c2), labels in graph.edges:
        lines.append(f"{c1} -> {c2}  {','.join(format_pair(p) for p in labels)}")
    return "\n".join(lines) + "\n"


def state_multigraph_to_text(graph: StateMultigraph) -> str:
    lines = [f"states: {' '.join(str(c) for c in sorted(graph.states()))}"]
    lines.extend(f"{c1} -> {c2}  {format_pair(label)}" for c1, c2, label in graph.edges)
    return "\n".join(lines) + "\n"


def parse_bfile(lines: Iterable[str]) -> list[tuple[int, int]]:
    """Parse OEIS b-file lines: ``index value`` pairs, ``#`` comments.

    Indices must be strictly increasing; malformed lines raise
    :class:`BFileError` with their 1-based line number.
    """
    entries: list[tuple[int, int]] = []
    last_index: int | None = None
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(line_no, f"expected 'index value', got {raw.strip()!r}")
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(line_no, f"non-integer entry in {raw.strip()!r}") from None
        if value < 0:
            raise BFileError(line_no, f"negative value {value}")
        if last_index is not None and index <= last_index:
            raise BFileError(line_no, f"index {index} does not increase past {last_index}")
        last_index = index
        entries.append((index, value))
    return entries
