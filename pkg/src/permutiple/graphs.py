"""Directed graphs on base-b digits.

Houses the mother graph (the superset of all permutiple-graph edges for a
multiplier/base pair), the graph of a single permutiple, simple-cycle
enumeration, reflections, and the cycle-union test.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Callable, Hashable, Iterable

from .digits import PermutipleRecord, lambda_residue
from .errors import ParameterError

__all__ = [
    "DigitCycle",
    "DigitGraph",
    "build_mother_graph",
    "enumerate_cycles",
    "graph_of_permutiple",
    "is_cycle_union",
    "reflect_digit_graph",
    "strongly_connected_components",
]


@dataclass(frozen=True)
class DigitGraph:
    """A directed graph whose vertices are the digits 0..base-1."""

    base: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(self.edges))
        if self.base < 2:
            raise ParameterError(f"base must be at least 2, got {self.base}")
        for d1, d2 in self.edges:
            if not (0 <= d1 < self.base and 0 <= d2 < self.base):
                raise ParameterError(f"edge ({d1},{d2}) out of range for base {self.base}")

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(self.base))

    @property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def incident_vertices(self) -> tuple[int, ...]:
        """Vertices with at least one incident edge, ascending."""
        seen = set()
        for d1, d2 in self.edges:
            seen.add(d1)
            seen.add(d2)
        return tuple(sorted(seen))

    def successors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(d2 for d1, d2 in self.edges if d1 == v))

    def reflect(self) -> "DigitGraph":
        """Map every edge (d1, d2) to (base-1-d1, base-1-d2); an involution."""
        m = self.base - 1
        return DigitGraph(self.base, frozenset((m - d1, m - d2) for d1, d2 in self.edges))

    def union(self, other: "DigitGraph") -> "DigitGraph":
        if self.base != other.base:
            raise ParameterError("cannot union digit graphs over different bases")
        return DigitGraph(self.base, self.edges | other.edges)

    def issubgraph(self, other: "DigitGraph") -> bool:
        return self.base == other.base and self.edges <= other.edges


@dataclass(frozen=True)
class DigitCycle:
    """A simple directed cycle, stored as its vertex sequence.

    The stored rotation is canonical: the minimum vertex comes first.  A
    single vertex denotes a loop.
    """

    base: int
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        if not vs:
            raise ParameterError("a cycle needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise ParameterError(f"cycle vertices must be distinct: {vs}")
        for v in vs:
            if not 0 <= v < self.base:
                raise ParameterError(f"vertex {v} out of range for base {self.base}")
        pivot = vs.index(min(vs))
        object.__setattr__(self, "vertices", vs[pivot:] + vs[:pivot])

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def reflect(self) -> "DigitCycle":
        m = self.base - 1
        return DigitCycle(self.base, tuple(m - v for v in self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)


def build_mother_graph(multiplier: int, base: int) -> DigitGraph:
    """The graph of all digit pairs that can occur in a digit-preserving
    multiplication: edge (d1, d2) is present iff
    ``lambda_residue(d1 + (base-multiplier)*d2, base) <= multiplier - 1``.
    """
    n, b = multiplier, base
    if not 1 < n < b:
        raise ParameterError(f"multiplier must satisfy 1 < n < base; got n={n}, base={b}")
    edges = frozenset(
        (d1, d2)
        for d1 in range(b)
        for d2 in range(b)
        if lambda_residue(d1 + (b - n) * d2, b) <= n - 1
    )
    return DigitGraph(b, edges)


def graph_of_permutiple(record: PermutipleRecord) -> DigitGraph:
    """The edge set {(d_j, d_sigma(j))} of a verified record.

    Depends only on the equation (digit and preimage sequences), not on the
    particular permutation chosen for repeated digits.
    """
    return DigitGraph(record.base, frozenset(record.string))


def reflect_digit_graph(graph: DigitGraph) -> DigitGraph:
    return graph.reflect()


def enumerate_cycles(graph: DigitGraph, max_length: int | None = None) -> list[DigitCycle]:
    """All simple directed cycles of ``graph``, canonically rotated and sorted.

    Anchored depth-first search: for each root in ascending order, grow
    simple paths through vertices greater than the root and record a cycle
    whenever an edge returns to the root.  Every cycle is found exactly once
    (at its minimum vertex), loops count as length-1 cycles, and the output
    is sorted by vertex tuple, so the inventory order is deterministic.
    """
    adj: dict[int, tuple[int, ...]] = {}
    for d1, d2 in graph.edges:
        adj.setdefault(d1, ())
    for v in list(adj):
        adj[v] = graph.successors(v)

    found: list[DigitCycle] = []
    path: list[int] = []
    on_path: set[int] = set()

    def grow(root: int, u: int) -> None:
        for w in adj.get(u, ()):
            if w == root:
                found.append(DigitCycle(graph.base, tuple(path)))
            elif w > root and w not in on_path:
                if max_length is not None and len(path) >= max_length:
                    continue
                path.append(w)
                on_path.add(w)
                grow(root, w)
                on_path.discard(w)
                path.pop()

    for root in sorted(adj):
        path = [root]
        on_path = {root}
        grow(root, root)

    found.sort(key=lambda c: c.vertices)
    return found


def strongly_connected_components(
    nodes: Iterable[Hashable], successors: Callable[[Hashable], Iterable[Hashable]]
) -> list[frozenset]:
    """Tarjan's algorithm, iterative to keep recursion depth flat."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    components: list[frozenset] = []
    counter = count()

    for start in nodes:
        if start in index:
            continue
        index[start] = low[start] = next(counter)
        stack.append(start)
        on_stack.add(start)
        work = [(start, iter(successors(start)))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                component = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.add(w)
                    if w == v:
                        break
                components.append(frozenset(component))
    return components


def is_cycle_union(graph: DigitGraph) -> bool:
    """True iff every edge lies on at least one simple cycle of ``graph``.

    An edge (u, v) lies on a simple cycle exactly when it is a loop or u and
    v share a strongly connected component.
    """
    vertices = graph.incident_vertices()
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(strongly_connected_components(vertices, graph.successors)):
        for v in comp:
            comp_of[v] = i
    return all(u == v or comp_of[u] == comp_of[v] for u, v in graph.edges)
