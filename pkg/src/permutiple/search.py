"""Permutiple discovery.

A permutiple string is an accepted machine input whose left and right digit
components form the same multiset; its inputs always decompose into
mother-graph cycles.  The search therefore walks multiset combinations of
cycles, keeps the ones whose multigraph union supports an Eulerian circuit
through the zero state, and reads permutiples off the circuits.  An
independent integer-scan oracle cross-checks the whole pipeline.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterable, Iterator, Sequence

from .digits import (
    DigitString,
    PermutipleRecord,
    canonical_sigma,
    verify_permutiple,
)
from .errors import (
    InfeasibleUnionError,
    MultisetMismatchError,
    ParameterError,
    ScanLimitError,
)
from .graphs import DigitCycle, build_mother_graph, enumerate_cycles
from .machine import StateMultigraph, transition, walk_states

__all__ = [
    "CycleMultiset",
    "DEFAULT_SCAN_LIMIT",
    "SearchResult",
    "brute_force_oracle",
    "check_feasible",
    "count_eulerian_circuits",
    "decompose_into_cycles",
    "duplicate_label_factor",
    "eulerian_strings",
    "feasible_unions",
    "find_permutiples",
    "string_to_permutiple",
]

Pair = tuple[int, int]
InputString = tuple[Pair, ...]

DEFAULT_SCAN_LIMIT = 10**8


@dataclass(frozen=True)
class CycleMultiset:
    """A multiset of simple cycles: the support plus a positive count each.

    ``cycles`` is sorted by vertex tuple and duplicate-free, so equal
    multisets compare equal structurally.
    """

    cycles: tuple[DigitCycle, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycles", tuple(self.cycles))
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if len(self.cycles) != len(self.multiplicities):
            raise ParameterError("cycles and multiplicities must align")
        if any(m < 1 for m in self.multiplicities):
            raise ParameterError("multiplicities must be positive")
        keys = [c.vertices for c in self.cycles]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise ParameterError("support must be sorted and duplicate-free")

    @classmethod
    def from_counts(cls, counts: Counter) -> "CycleMultiset":
        support = sorted((c for c, m in counts.items() if m), key=lambda c: c.vertices)
        return cls(tuple(support), tuple(counts[c] for c in support))

    @property
    def total_edges(self) -> int:
        return sum(m * len(c) for c, m in zip(self.cycles, self.multiplicities))

    def edge_counter(self) -> Counter:
        counts: Counter = Counter()
        for cycle, mult in zip(self.cycles, self.multiplicities):
            for edge in cycle.edges:
                counts[edge] += mult
        return counts

    def left_digit_counter(self) -> Counter:
        """Multiset of left components, which is also the vertex multiset."""
        counts: Counter = Counter()
        for cycle, mult in zip(self.cycles, self.multiplicities):
            for v in cycle.vertices:
                counts[v] += mult
        return counts

    def multigraph(self, multiplier: int, base: int) -> StateMultigraph:
        """The multiset union of the multi-images of the member cycles."""
        triples = []
        for cycle, mult in zip(self.cycles, self.multiplicities):
            for edge in cycle.edges:
                c1, c2 = transition(edge, multiplier, base)
                triples.extend([(c1, c2, edge)] * mult)
        return StateMultigraph.make(multiplier, base, triples)


@dataclass(frozen=True)
class SearchResult:
    """A found permutiple together with its input string and cycle origin."""

    record: PermutipleRecord
    string: InputString
    cycle_multiset: CycleMultiset

    def __post_init__(self) -> None:
        if Counter(self.string) != self.cycle_multiset.edge_counter():
            raise ParameterError("input string does not match the cycle multiset")


def check_feasible(delta: StateMultigraph) -> bool:
    """Whether a multigraph union can be ordered into a permutiple string.

    Requires the zero state with positive degree, strong connectivity on the
    incident states, and in-degree equal to out-degree everywhere.
    """
    states = delta.states()
    if 0 not in states:
        return False
    ins: Counter = Counter()
    outs: Counter = Counter()
    for c1, c2, _ in delta.edges:
        outs[c1] += 1
        ins[c2] += 1
    if any(ins[c] != outs[c] for c in states):
        return False
    return delta.is_strongly_connected()


def eulerian_strings(delta: StateMultigraph) -> list[InputString]:
    """All distinct label sequences of Eulerian circuits anchored at state 0.

    Backtracking over the remaining edge multiset; identical parallel edges
    are merged in a counter, so each distinct label sequence comes out
    exactly once.  The result is sorted lexicographically.
    """
    if not check_feasible(delta):
        raise InfeasibleUnionError("multigraph union admits no zero-anchored Eulerian circuit")
    remaining = Counter(delta.edges)
    total = sum(remaining.values())
    by_source: dict[int, list[tuple[int, int, Pair]]] = {}
    for triple in sorted(remaining):
        by_source.setdefault(triple[0], []).append(triple)

    out: list[InputString] = []
    labels: list[Pair] = []

    def extend(state: int, left: int) -> None:
        if left == 0:
            if state == 0:
                out.append(tuple(labels))
            return
        for triple in by_source.get(state, ()):
            if remaining[triple] == 0:
                continue
            remaining[triple] -= 1
            labels.append(triple[2])
            extend(triple[1], left - 1)
            labels.pop()
            remaining[triple] += 1

    extend(0, total)
    out.sort()
    return out


def duplicate_label_factor(delta: StateMultigraph) -> int:
    """Product of factorials of identical-triple multiplicities.

    Swapping identical parallel edges permutes an Eulerian circuit's edge
    sequence without changing its label sequence, so this factor converts
    between raw circuit counts and distinct label-sequence counts.
    """
    factor = 1
    for mult in Counter(delta.edges).values():
        factor *= factorial(mult)
    return factor


def _integer_determinant(matrix: list[list[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = [row[:] for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def count_eulerian_circuits(delta: StateMultigraph) -> int:
    """Eulerian circuits through a fixed outgoing edge of state 0.

    Arborescence count times the product of (out-degree - 1)! over the
    incident states; the arborescences toward state 0 come from a principal
    minor of the out-degree Laplacian (loops cancel).  Multiplying by the
    out-degree of state 0 gives the number of circuits as edge sequences
    from state 0; dividing that by :func:`duplicate_label_factor` gives the
    distinct label-sequence count of :func:`eulerian_strings`.
    """
    if not check_feasible(delta):
        raise InfeasibleUnionError("multigraph union admits no zero-anchored Eulerian circuit")
    states = sorted(delta.states())
    index = {c: i for i, c in enumerate(states)}
    size = len(states)
    adjacency = [[0] * size for _ in range(size)]
    out_deg = [0] * size
    for c1, c2, _ in delta.edges:
        adjacency[index[c1]][index[c2]] += 1
        out_deg[index[c1]] += 1
    laplacian = [
        [(out_deg[i] if i == j else 0) - adjacency[i][j] for j in range(size)]
        for i in range(size)
    ]
    root = index[0]
    minor = [
        [laplacian[i][j] for j in range(size) if j != root]
        for i in range(size)
        if i != root
    ]
    arborescences = _integer_determinant(minor)
    count = arborescences
    for degree in out_deg:
        count *= factorial(degree - 1)
    return count


def decompose_into_cycles(edges: Iterable[Pair], base: int) -> CycleMultiset:
    """Split a balanced edge multiset into simple cycles.

    Repeatedly walks from the smallest vertex along smallest available
    successors until a vertex repeats, peels off the simple cycle found, and
    restarts.  Balanced in/out degrees guarantee the walk never sticks
    before a repeat, so the decomposition is total and deterministic.
    """
    remaining: Counter = Counter(edges)
    ins: Counter = Counter()
    outs: Counter = Counter()
    for d1, d2 in remaining.elements():
        outs[d1] += 1
        ins[d2] += 1
    if ins != outs:
        raise ParameterError("edge multiset is not balanced; no cycle decomposition exists")

    found: Counter = Counter()
    while remaining:
        start = min(d1 for d1, _ in remaining)
        path = [start]
        position = {start: 0}
        while True:
            u = path[-1]
            w = min(d2 for d1, d2 in remaining if d1 == u)
            if w in position:
                cycle = DigitCycle(base, tuple(path[position[w]:]))
                for edge in cycle.edges:
                    remaining[edge] -= 1
                    if remaining[edge] == 0:
                        del remaining[edge]
                found[cycle] += 1
                break
            position[w] = len(path)
            path.append(w)

    return CycleMultiset.from_counts(found)


def string_to_permutiple(inputs: Sequence[Pair], multiplier: int, base: int) -> SearchResult:
    """Convert an accepted input string into a verified permutiple.

    The left components become the digits, the right components the
    preimage; the permutation is the lexicographically smallest bijection
    matching them.  Raises :class:`WalkError` when the string is not
    accepted and :class:`MultisetMismatchError` when the two component
    multisets differ.
    """
    inputs = tuple(inputs)
    walk_states(inputs, multiplier, base)
    digits = DigitString(base, tuple(d1 for d1, _ in inputs))
    preimage = DigitString(base, tuple(d2 for _, d2 in inputs))
    sigma = canonical_sigma(digits, preimage)
    if sigma is None:
        raise MultisetMismatchError(
            "left and right digit multisets differ; accepted string is not a permutiple string"
        )
    record = verify_permutiple(digits, sigma, multiplier)
    if record is None:
        raise RuntimeError("accepted balanced string failed digit verification")
    return SearchResult(record, inputs, decompose_into_cycles(inputs, base))


def _cycle_combinations(
    inventory: Sequence[DigitCycle], total: int
) -> Iterator[Counter]:
    """All cycle multisets over ``inventory`` with edge total ``total``.

    Cycles are grouped by length; for each way of splitting the budget
    across lengths, cycles within a length bucket are chosen as multisets.
    Yields sparse counters in a deterministic order.
    """
    by_length: dict[int, list[DigitCycle]] = {}
    for cycle in inventory:
        by_length.setdefault(len(cycle), []).append(cycle)
    lengths = sorted(by_length)

    def split(level: int, budget: int, chosen: list[DigitCycle]) -> Iterator[Counter]:
        if budget == 0:
            yield Counter(chosen)
            return
        if level == len(lengths):
            return
        length = lengths[level]
        bucket = by_length[length]
        for take in range(budget // length + 1):
            if take == 0:
                yield from split(level + 1, budget, chosen)
            else:
                for combo in combinations_with_replacement(bucket, take):
                    chosen.extend(combo)
                    yield from split(level + 1, budget - take * length, chosen)
                    del chosen[-take:]

    yield from split(0, total, [])


@lru_cache(maxsize=None)
def feasible_unions(
    multiplier: int, base: int, length: int
) -> tuple[tuple[CycleMultiset, StateMultigraph], ...]:
    """Every feasible cycle multiset with ``length`` edges, with its union.

    Combinations that repeat an already-seen edge multiset are skipped;
    distinct decompositions of one multiset would only replay the same
    strings.
    """
    n, b = multiplier, base
    if not 1 < n < b:
        raise ParameterError(f"multiplier must satisfy 1 < n < base; got n={n}, base={b}")
    if length < 1:
        raise ParameterError("length must be at least 1")
    mother = build_mother_graph(n, b)
    inventory = enumerate_cycles(mother, max_length=length)
    seen: set[tuple[Pair, ...]] = set()
    out = []
    for counts in _cycle_combinations(inventory, length):
        multiset = CycleMultiset.from_counts(counts)
        key = tuple(sorted(multiset.edge_counter().elements()))
        if key in seen:
            continue
        seen.add(key)
        delta = multiset.multigraph(n, b)
        if check_feasible(delta):
            out.append((multiset, delta))
    return tuple(out)


@lru_cache(maxsize=None)
def _search_all(multiplier: int, base: int, length: int) -> tuple[SearchResult, ...]:
    results = []
    for multiset, delta in feasible_unions(multiplier, base, length):
        for string in eulerian_strings(delta):
            found = string_to_permutiple(string, multiplier, base)
            results.append(SearchResult(found.record, string, multiset))
    results.sort(key=lambda r: r.record.key)
    return tuple(results)


def find_permutiples(
    multiplier: int, base: int, length: int, allow_leading_zero: bool = False
) -> list[SearchResult]:
    """All permutiples with ``length`` digits for the multiplier/base pair.

    Complete: every permutiple string is an ordering of a cycle multiset
    whose multigraph union is feasible, and every feasible union is
    expanded.  Results are deduplicated by digit/preimage sequences and
    sorted by display digits.
    """
    results = _search_all(multiplier, base, length)
    if allow_leading_zero:
        return list(results)
    return [r for r in results if r.record.canonical]


@lru_cache(maxsize=None)
def _oracle_all(
    multiplier: int, base: int, length: int, scan_limit: int
) -> tuple[PermutipleRecord, ...]:
    n, b = multiplier, base
    if not 1 < n < b:
        raise ParameterError(f"multiplier must satisfy 1 < n < base; got n={n}, base={b}")
    if length < 1:
        raise ParameterError("length must be at least 1")
    if b**length > scan_limit:
        raise ScanLimitError(
            f"scan of {b}**{length} digit strings exceeds the limit {scan_limit}"
        )
    records = []
    top = b**length - 1
    for q in range(top // n + 1):
        v = n * q
        digits = DigitString.from_int(b, v, width=length)
        preimage = DigitString.from_int(b, q, width=length)
        if digits.multiset() != preimage.multiset():
            continue
        sigma = canonical_sigma(digits, preimage)
        assert sigma is not None
        record = verify_permutiple(digits, sigma, n)
        if record is None:
            raise RuntimeError(f"oracle hit {v} = {n} * {q} but verification failed")
        records.append(record)
    return tuple(records)


def brute_force_oracle(
    multiplier: int,
    base: int,
    length: int,
    allow_leading_zero: bool = False,
    scan_limit: int = DEFAULT_SCAN_LIMIT,
) -> list[PermutipleRecord]:
    """Exhaustive integer scan, independent of the graph machinery.

    Walks every multiple ``n*q`` below ``base**length`` and keeps those
    whose zero-padded digits are a permutation of the digits of ``q``.
    Refuses scans beyond ``scan_limit`` candidate strings.
    """
    records = _oracle_all(multiplier, base, length, scan_limit)
    if allow_leading_zero:
        return list(records)
    return [r for r in records if r.canonical]
