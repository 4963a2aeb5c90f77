"""The Hoey-Sloane carry machine for single-digit multiplication.

States are the carries 0..n-1; an input pair (d1, d2) drives the transition
``c2 = (n*d2 - d1 + c1) / b`` where ``c1`` is forced by the input.  The
machine has two equivalent presentations: a state graph whose edges carry
label sets, and a multigraph with one labeled multi-edge per input.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .digits import lambda_residue
from .errors import ParameterError, WalkError
from .graphs import DigitCycle, build_mother_graph, strongly_connected_components

__all__ = [
    "StateGraph",
    "StateMultigraph",
    "build_state_graph",
    "build_state_multigraph",
    "cycle_image",
    "empty_state_graph",
    "empty_state_multigraph",
    "multi_image",
    "multiset_union",
    "reflect_state_graph",
    "reflect_state_multigraph",
    "transition",
    "union_images",
    "walk_states",
]

Pair = tuple[int, int]


def transition(edge: Pair, multiplier: int, base: int) -> Pair:
    """The unique state pair (c1, c2) enabled by a mother-graph input.

    ``c1 = lambda_residue(d1 + (b-n)*d2, b)`` and ``c2 = (n*d2 - d1 + c1)/b``
    with exact divisibility; both carries land in 0..n-1.  Raises
    :class:`ParameterError` when the edge fails the mother-graph inequality.
    """
    n, b = multiplier, base
    if not 1 < n < b:
        raise ParameterError(f"multiplier must satisfy 1 < n < base; got n={n}, base={b}")
    d1, d2 = edge
    if not (0 <= d1 < b and 0 <= d2 < b):
        raise ParameterError(f"edge ({d1},{d2}) out of range for base {b}")
    c1 = lambda_residue(d1 + (b - n) * d2, b)
    if c1 > n - 1:
        raise ParameterError(f"({d1},{d2}) is not a mother-graph edge for n={n}, b={b}")
    numerator = n * d2 - d1 + c1
    if numerator % b != 0:
        raise RuntimeError(f"carry transition for ({d1},{d2}) is not divisible by {b}")
    c2 = numerator // b
    if not 0 <= c2 <= n - 1:
        raise RuntimeError(f"carry transition for ({d1},{d2}) left 0..{n - 1}")
    return c1, c2


@dataclass(frozen=True)
class StateGraph:
    """Edge-labeled state graph; each edge holds a sorted set of input pairs.

    ``edges`` is a canonical tuple of ((c1, c2), labels) items sorted by
    state pair, which makes structural equality the graph equality used by
    the symmetry results.  A digit-pair label never appears on two distinct
    edges.
    """

    multiplier: int
    base: int
    states: frozenset[int]
    edges: tuple[tuple[Pair, tuple[Pair, ...]], ...]

    @classmethod
    def make(
        cls,
        multiplier: int,
        base: int,
        states: Iterable[int],
        edge_labels: Mapping[Pair, Iterable[Pair]],
    ) -> "StateGraph":
        n, b = multiplier, base
        if not 1 < n < b:
            raise ParameterError(f"multiplier must satisfy 1 < n < base; got n={n}, base={b}")
        state_set = frozenset(states)
        for c in state_set:
            if not 0 <= c <= n - 1:
                raise ParameterError(f"state {c} out of range 0..{n - 1}")
        items = []
        seen_labels: set[Pair] = set()
        for (c1, c2), labels in edge_labels.items():
            label_tuple = tuple(sorted(set(labels)))
            if not label_tuple:
                continue
            if c1 not in state_set or c2 not in state_set:
                raise ParameterError(f"edge ({c1},{c2}) uses a state outside the graph")
            for lab in label_tuple:
                if lab in seen_labels:
                    raise ParameterError(f"label {lab} appears on more than one edge")
                seen_labels.add(lab)
            items.append(((c1, c2), label_tuple))
        return cls(n, b, state_set, tuple(sorted(items)))

    def label_map(self) -> dict[Pair, tuple[Pair, ...]]:
        return dict(self.edges)

    def labels(self, c1: int, c2: int) -> tuple[Pair, ...]:
        return self.label_map().get((c1, c2), ())

    def all_labels(self) -> tuple[Pair, ...]:
        out: list[Pair] = []
        for _, labels in self.edges:
            out.extend(labels)
        return tuple(sorted(out))

    def reflect(self) -> "StateGraph":
        """States map to n-1-c, labels to (b-1-d1, b-1-d2); an involution."""
        n, b = self.multiplier, self.base
        edge_labels = {
            (n - 1 - c1, n - 1 - c2): [(b - 1 - d1, b - 1 - d2) for d1, d2 in labels]
            for (c1, c2), labels in self.edges
        }
        return StateGraph.make(n, b, (n - 1 - c for c in self.states), edge_labels)

    def is_strongly_connected(self) -> bool:
        nodes = sorted(self.states)
        if not nodes:
            return False
        succ: dict[int, set[int]] = {c: set() for c in nodes}
        for (c1, c2), _ in self.edges:
            succ[c1].add(c2)
        components = strongly_connected_components(nodes, lambda c: sorted(succ[c]))
        return len(components) == 1


@dataclass(frozen=True)
class StateMultigraph:
    """One labeled multi-edge per input pair; ``edges`` is a sorted multiset
    of (c1, c2, label) triples.  Vertices are the incident states only."""

    multiplier: int
    base: int
    edges: tuple[tuple[int, int, Pair], ...]

    @classmethod
    def make(
        cls, multiplier: int, base: int, triples: Iterable[tuple[int, int, Pair]]
    ) -> "StateMultigraph":
        n, b = multiplier, base
        if not 1 < n < b:
            raise ParameterError(f"multiplier must satisfy 1 < n < base; got n={n}, base={b}")
        normalized = []
        for c1, c2, (d1, d2) in triples:
            if b * c2 != n * d2 - d1 + c1:
                raise ParameterError(f"triple ({c1},{c2},({d1},{d2})) violates the transition equation")
            normalized.append((c1, c2, (d1, d2)))
        return cls(n, b, tuple(sorted(normalized)))

    def counter(self) -> Counter:
        return Counter(self.edges)

    def states(self) -> frozenset[int]:
        incident = set()
        for c1, c2, _ in self.edges:
            incident.add(c1)
            incident.add(c2)
        return frozenset(incident)

    def out_degree(self, state: int) -> int:
        return sum(1 for c1, _, _ in self.edges if c1 == state)

    def in_degree(self, state: int) -> int:
        return sum(1 for _, c2, _ in self.edges if c2 == state)

    def reflect(self) -> "StateMultigraph":
        n, b = self.multiplier, self.base
        return StateMultigraph.make(
            n,
            b,
            (
                (n - 1 - c1, n - 1 - c2, (b - 1 - d1, b - 1 - d2))
                for c1, c2, (d1, d2) in self.edges
            ),
        )

    def is_strongly_connected(self) -> bool:
        nodes = sorted(self.states())
        if not nodes:
            return False
        succ: dict[int, set[int]] = {c: set() for c in nodes}
        for c1, c2, _ in self.edges:
            succ[c1].add(c2)
        components = strongly_connected_components(nodes, lambda c: sorted(succ[c]))
        return len(components) == 1


def empty_state_graph(multiplier: int, base: int) -> StateGraph:
    return StateGraph.make(multiplier, base, (), {})


def empty_state_multigraph(multiplier: int, base: int) -> StateMultigraph:
    return StateMultigraph.make(multiplier, base, ())


def build_state_graph(multiplier: int, base: int) -> StateGraph:
    """The full machine graph: every mother edge grouped under its state pair.

    All states 0..n-1 are retained even if some end up isolated.
    """
    mother = build_mother_graph(multiplier, base)
    grouped: dict[Pair, list[Pair]] = {}
    for edge in mother.sorted_edges:
        grouped.setdefault(transition(edge, multiplier, base), []).append(edge)
    return StateGraph.make(multiplier, base, range(multiplier), grouped)


def build_state_multigraph(multiplier: int, base: int) -> StateMultigraph:
    """One triple per mother-graph edge."""
    mother = build_mother_graph(multiplier, base)
    triples = []
    for edge in mother.sorted_edges:
        c1, c2 = transition(edge, multiplier, base)
        triples.append((c1, c2, edge))
    return StateMultigraph.make(multiplier, base, triples)


def cycle_image(cycle: DigitCycle, multiplier: int, base: int) -> StateGraph:
    """The labeled subgraph traced by one mother-graph cycle.

    States with neither in- nor out-edges are dropped.
    """
    grouped: dict[Pair, list[Pair]] = {}
    incident: set[int] = set()
    for edge in cycle.edges:
        c1, c2 = transition(edge, multiplier, base)
        grouped.setdefault((c1, c2), []).append(edge)
        incident.add(c1)
        incident.add(c2)
    return StateGraph.make(multiplier, base, incident, grouped)


def multi_image(cycle: DigitCycle, multiplier: int, base: int) -> StateMultigraph:
    """As :func:`cycle_image` but with one multi-edge per cycle edge."""
    triples = []
    for edge in cycle.edges:
        c1, c2 = transition(edge, multiplier, base)
        triples.append((c1, c2, edge))
    return StateMultigraph.make(multiplier, base, triples)


def _check_same_parameters(parts: Sequence) -> tuple[int, int]:
    if not parts:
        raise ParameterError("need at least one graph to union")
    n, b = parts[0].multiplier, parts[0].base
    for part in parts[1:]:
        if (part.multiplier, part.base) != (n, b):
            raise ParameterError("cannot union graphs with mixed multiplier/base")
    return n, b


def union_images(parts: Sequence[StateGraph]) -> StateGraph:
    """Set-union of labeled subgraphs: states, edges, and label sets unite."""
    n, b = _check_same_parameters(parts)
    states: set[int] = set()
    merged: dict[Pair, set[Pair]] = {}
    for part in parts:
        states |= part.states
        for edge, labels in part.edges:
            merged.setdefault(edge, set()).update(labels)
    return StateGraph.make(n, b, states, {e: sorted(ls) for e, ls in merged.items()})


def multiset_union(parts: Sequence[StateMultigraph]) -> StateMultigraph:
    """Multiset sum of multigraphs: parallel copies accumulate."""
    n, b = _check_same_parameters(parts)
    triples: list[tuple[int, int, Pair]] = []
    for part in parts:
        triples.extend(part.edges)
    return StateMultigraph.make(n, b, triples)


def reflect_state_graph(graph: StateGraph) -> StateGraph:
    return graph.reflect()


def reflect_state_multigraph(graph: StateMultigraph) -> StateMultigraph:
    return graph.reflect()


def walk_states(
    inputs: Sequence[Pair], multiplier: int, base: int
) -> tuple[int, ...]:
    """Drive the machine from state 0 and return the visited state sequence.

    Succeeds (the string is accepted) iff each input's forced source carry
    matches the current state and the final state is 0; the returned tuple
    is the full carry sequence c_0 .. c_{k+1}.  A mismatch raises
    :class:`WalkError` carrying the index of the first inconsistent
    transition (``len(inputs)`` for a nonzero final state); inputs outside
    the mother graph raise :class:`ParameterError`.
    """
    state = 0
    states = [0]
    for idx, edge in enumerate(inputs):
        c1, c2 = transition(edge, multiplier, base)
        if c1 != state:
            raise WalkError(idx, f"input {edge} at position {idx} needs state {c1}, walk is at {state}")
        state = c2
        states.append(state)
    if state != 0:
        raise WalkError(len(inputs), f"walk ends in state {state}, not 0")
    return tuple(states)
