"""The symmetry calculus on permutiples.

Reflection (digit d to b-1-d, carry c to n-1-c) and rotation of input
strings generate new permutiples from known ones: carries equal to n-1 mark
reflective siblings, zero carries mark rotational siblings, and together
these are the dihedral siblings.  Class-level reflection, symmetric
closures, string symmetries that fix the state-transition sequence, and
coarse conjugacy complete the picture.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .digits import DigitString, Permutation, PermutipleRecord, verify_permutiple
from .errors import MultisetMismatchError, NoReflectionError, ParameterError, WalkError
from .graphs import (
    DigitGraph,
    build_mother_graph,
    enumerate_cycles,
    graph_of_permutiple,
    is_cycle_union,
)
from .machine import StateGraph, StateMultigraph, cycle_image, union_images
from .search import (
    CycleMultiset,
    check_feasible,
    eulerian_strings,
    string_to_permutiple,
)

__all__ = [
    "ClassSpec",
    "StateSequence",
    "apply_symmetry",
    "check_sym_rev",
    "class_reflection_exists",
    "class_unions",
    "coarse_conjugate",
    "dihedral_siblings",
    "enumerate_class_members",
    "fine_conjugate",
    "is_symmetric_class",
    "reflect_class",
    "reflected_class_witness",
    "reflective_siblings",
    "rotational_siblings",
    "state_sequence",
    "symmetric_closure",
    "symmetries_fixing_sequence",
]

Pair = tuple[int, int]


@dataclass(frozen=True)
class StateSequence:
    """The cyclic chain of state transitions traced by a closed walk."""

    transitions: tuple[Pair, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "transitions", tuple(self.transitions))
        ts = self.transitions
        if not ts:
            raise ParameterError("a state sequence needs at least one transition")
        for i, (_, target) in enumerate(ts):
            source_next = ts[(i + 1) % len(ts)][0]
            if target != source_next:
                raise ParameterError(f"transitions do not chain at position {i}")

    def __len__(self) -> int:
        return len(self.transitions)


def state_sequence(record: PermutipleRecord) -> StateSequence:
    """The transition sequence of the record's accepting walk."""
    c = record.carries
    return StateSequence(tuple((c[j], c[j + 1]) for j in range(len(record))))


def _shifted_record(record: PermutipleRecord, shift: int, reflect: bool) -> PermutipleRecord:
    """Rotate the digit indexing by ``shift`` and optionally reflect digits.

    The new permutation is the rotation-conjugate of the old one; the result
    is re-verified rather than trusted.
    """
    size = len(record)
    b = record.base
    d = record.digits.digits
    rho = Permutation.rotation(size, shift)
    if reflect:
        new_digits = tuple(b - 1 - d[rho(i)] for i in range(size))
    else:
        new_digits = tuple(d[rho(i)] for i in range(size))
    new_sigma = Permutation.rotation(size, -shift).compose(record.sigma).compose(rho)
    result = verify_permutiple(DigitString(b, new_digits), new_sigma, record.multiplier)
    if result is None:
        raise RuntimeError(f"sibling at shift {shift} failed verification")
    return result


def reflective_siblings(record: PermutipleRecord) -> list[tuple[int, PermutipleRecord]]:
    """One sibling for every position 0 < j <= k whose carry equals n-1.

    The sibling reflects all digits and rotates the indexing by j; its
    carries are the reflected, rotated carries of the original.
    """
    n = record.multiplier
    out = []
    for j in range(1, len(record)):
        if record.carries[j] == n - 1:
            out.append((j, _shifted_record(record, j, reflect=True)))
    return out


def rotational_siblings(record: PermutipleRecord) -> list[tuple[int, PermutipleRecord]]:
    """One sibling for every position 0 <= j <= k whose carry is zero.

    j = 0 always qualifies and reproduces the record itself.
    """
    out = []
    for j in range(len(record)):
        if record.carries[j] == 0:
            out.append((j, _shifted_record(record, j, reflect=False)))
    return out


def dihedral_siblings(record: PermutipleRecord) -> list[PermutipleRecord]:
    """Reflective and rotational siblings together, one record per equation."""
    seen = {}
    for _, sibling in rotational_siblings(record) + reflective_siblings(record):
        seen.setdefault(sibling.key, sibling)
    return [seen[key] for key in sorted(seen)]


@dataclass(frozen=True)
class ClassSpec:
    """A permutiple class: its digit graph plus the union of cycle images.

    The graph must be a union of simple mother-graph cycles; ``images`` is
    the labeled state subgraph traced by all of its cycles.
    """

    multiplier: int
    base: int
    graph: DigitGraph
    images: StateGraph

    @classmethod
    def from_graph(cls, multiplier: int, graph: DigitGraph) -> "ClassSpec":
        n, b = multiplier, graph.base
        mother = build_mother_graph(n, b)
        if not graph.issubgraph(mother):
            raise ParameterError("class graph must be a subgraph of the mother graph")
        if not is_cycle_union(graph):
            raise ParameterError("class graph must be a union of simple cycles")
        cycles = enumerate_cycles(graph)
        images = union_images([cycle_image(c, n, b) for c in cycles])
        return cls(n, b, graph, images)

    @classmethod
    def from_record(cls, record: PermutipleRecord) -> "ClassSpec":
        return cls.from_graph(record.multiplier, graph_of_permutiple(record))


def class_reflection_exists(spec: ClassSpec) -> bool:
    """Whether the reflected class graph is again a permutiple class graph.

    Decided by the vertex test: state n-1 belongs to the image union
    (equivalently, state 0 belongs to the reflected image union).
    """
    return (spec.multiplier - 1) in spec.images.states


def reflect_class(spec: ClassSpec) -> ClassSpec:
    if not class_reflection_exists(spec):
        raise NoReflectionError(
            f"state {spec.multiplier - 1} is not an image vertex; the reflected graph is not a class graph"
        )
    return ClassSpec.from_graph(spec.multiplier, spec.graph.reflect())


def symmetric_closure(spec: ClassSpec) -> ClassSpec:
    """The class over the union of the graph with its reflection."""
    if not class_reflection_exists(spec):
        raise NoReflectionError(
            f"state {spec.multiplier - 1} is not an image vertex; the reflected graph is not a class graph"
        )
    return ClassSpec.from_graph(spec.multiplier, spec.graph.union(spec.graph.reflect()))


def is_symmetric_class(spec: ClassSpec) -> bool:
    return spec.graph == spec.graph.reflect()


def reflected_class_witness(record: PermutipleRecord) -> PermutipleRecord | None:
    """A permutiple whose graph is the reflection of the record's graph.

    The record's walk visits every image vertex of its own class, so when
    state n-1 is an image vertex some carry equals n-1 and the reflective
    sibling there realizes the reflected graph.  Returns None when no carry
    qualifies.
    """
    n = record.multiplier
    for j in range(1, len(record) + 1):
        if record.carries[j] == n - 1:
            return _shifted_record(record, j, reflect=True)
    return None


def apply_symmetry(
    record: PermutipleRecord, phi: Permutation, reflect: bool = False
) -> PermutipleRecord | None:
    """Permute the record's input pairs by ``phi``; optionally reflect them.

    Position i of the new string holds input ``phi(i)`` of the old one (so
    the new digits are d[phi(i)]).  Returns the verified record when the
    permuted string is accepted, None when it leaves the language.
    """
    if phi.size != len(record):
        raise ParameterError("permutation size must match the digit count")
    s = record.string
    permuted = tuple(s[phi(i)] for i in range(len(s)))
    if reflect:
        m = record.base - 1
        permuted = tuple((m - d1, m - d2) for d1, d2 in permuted)
    try:
        return string_to_permutiple(permuted, record.multiplier, record.base).record
    except (WalkError, MultisetMismatchError):
        return None


def _distinct_arrangements(items: Sequence[Pair]) -> Iterator[tuple[Pair, ...]]:
    """Distinct permutations of a multiset, in lexicographic order."""
    counts = Counter(items)
    arrangement: list[Pair] = []

    def grow() -> Iterator[tuple[Pair, ...]]:
        if len(arrangement) == len(items):
            yield tuple(arrangement)
            return
        for value in sorted(counts):
            if counts[value] == 0:
                continue
            counts[value] -= 1
            arrangement.append(value)
            yield from grow()
            arrangement.pop()
            counts[value] += 1

    yield from grow()


def symmetries_fixing_sequence(record: PermutipleRecord) -> list[Permutation]:
    """Nontrivial input permutations that keep every state transition fixed.

    Positions sharing a transition may trade inputs; each rearrangement of
    the string that differs from the original is reported once, represented
    by the permutation that fixes the most positions (ties broken by
    smallest mapping).  Every representative is validated to produce a
    permutiple.
    """
    s = record.string
    transitions = state_sequence(record).transitions
    groups: dict[Pair, list[int]] = {}
    for i, t in enumerate(transitions):
        groups.setdefault(t, []).append(i)
    group_list = sorted(groups.values())

    per_group = [list(_distinct_arrangements([s[i] for i in g])) for g in group_list]

    out = []
    for assignment in product(*per_group):
        target = list(s)
        for g, arranged in zip(group_list, assignment):
            for pos, value in zip(g, arranged):
                target[pos] = value
        if tuple(target) == s:
            continue
        mapping: list[int | None] = [None] * len(s)
        used = [False] * len(s)
        for i in range(len(s)):
            if target[i] == s[i]:
                mapping[i] = i
                used[i] = True
        for g in group_list:
            for i in g:
                if mapping[i] is not None:
                    continue
                for j in g:
                    if not used[j] and s[j] == target[i]:
                        mapping[i] = j
                        used[j] = True
                        break
        phi = Permutation(tuple(mapping))  # type: ignore[arg-type]
        applied = apply_symmetry(record, phi)
        if applied is None:
            raise RuntimeError("transition-fixing permutation failed to produce a permutiple")
        out.append(phi)
    out.sort(key=lambda p: p.mapping)
    return out


def coarse_conjugate(first: PermutipleRecord, second: PermutipleRecord) -> bool:
    """Equality of permutiple graphs, the digit-level conjugacy relation.

    Both records must share multiplier, base, and digit multiset.
    """
    if (first.multiplier, first.base) != (second.multiplier, second.base):
        raise ParameterError("records must share multiplier and base")
    if first.digits.multiset() != second.digits.multiset():
        raise ParameterError("records must share their digit multiset")
    return graph_of_permutiple(first) == graph_of_permutiple(second)


def fine_conjugate(first: PermutipleRecord, second: PermutipleRecord) -> bool:
    """Conjugacy of the underlying permutations, for distinct digits only.

    With repeated digits the relation depends on which repeated digit a
    permutation moves, so this predicate refuses them; on distinct digits it
    coincides with :func:`coarse_conjugate`.
    """
    if (first.multiplier, first.base) != (second.multiplier, second.base):
        raise ParameterError("records must share multiplier and base")
    if first.digits.multiset() != second.digits.multiset():
        raise ParameterError("records must share their digit multiset")
    if len(set(first.digits.digits)) != len(first):
        raise ParameterError("fine conjugacy is only defined here for all-distinct digits")
    # pi maps positions of `second` to positions of `first` holding the same digit
    lookup = {d: i for i, d in enumerate(first.digits.digits)}
    pi = Permutation(tuple(lookup[d] for d in second.digits.digits))
    conjugated = pi.compose(second.sigma).compose(pi.inverse())
    return conjugated == first.sigma


def class_unions(
    record: PermutipleRecord,
) -> list[tuple[CycleMultiset, StateMultigraph]]:
    """Feasible cycle multisets of the record's class graph whose left
    components reproduce the record's digit multiset."""
    n, b = record.multiplier, record.base
    graph = graph_of_permutiple(record)
    cycles = enumerate_cycles(graph)
    target = Counter(record.digits.digits)

    solutions: list[Counter] = []
    chosen: Counter = Counter()

    def solve(idx: int, remaining: Counter) -> None:
        if not remaining:
            solutions.append(Counter(chosen))
            return
        if idx == len(cycles):
            return
        cycle = cycles[idx]
        need = Counter(cycle.vertices)
        max_mult = min(remaining[v] // need[v] for v in need)
        for mult in range(max_mult + 1):
            if mult:
                chosen[cycle] = mult
            rest = remaining - Counter({v: c * mult for v, c in need.items()})
            rest = +rest
            solve(idx + 1, rest)
        chosen.pop(cycle, None)

    solve(0, target)

    seen: set[tuple[Pair, ...]] = set()
    out = []
    for counts in solutions:
        multiset = CycleMultiset.from_counts(counts)
        key = tuple(sorted(multiset.edge_counter().elements()))
        if key in seen:
            continue
        seen.add(key)
        delta = multiset.multigraph(n, b)
        if check_feasible(delta):
            out.append((multiset, delta))
    return out


def enumerate_class_members(
    record: PermutipleRecord, allow_leading_zero: bool = True
) -> list[PermutipleRecord]:
    """All permutiples sharing the record's digit multiset whose graph is a
    subgraph of the record's class graph.

    Complete: a member's input string is an ordering of a cycle multiset of
    the class graph whose left components are exactly the digit multiset,
    and every feasible such multiset is expanded into all of its strings.
    """
    n, b = record.multiplier, record.base
    found: dict[tuple, PermutipleRecord] = {}
    for _, delta in class_unions(record):
        for string in eulerian_strings(delta):
            member = string_to_permutiple(string, n, b).record
            found.setdefault(member.key, member)
    members = [found[key] for key in sorted(found)]
    if allow_leading_zero:
        return members
    return [m for m in members if m.canonical]


def check_sym_rev(record: PermutipleRecord, j: int) -> bool:
    """Cross-check the sorted-digit representation of a reflective sibling.

    Requires carry j equal to n-1 and a reflection-closed digit multiset.
    With digits sorted ascending as a reference list, reflecting equals
    reversing, so the sibling must also be the reversal-composed reindexing
    of the reference list; both representations are compared numerically.
    """
    n, b = record.multiplier, record.base
    size = len(record)
    if not 0 < j < size:
        raise ParameterError(f"index {j} out of range 1..{size - 1}")
    if record.carries[j] != n - 1:
        raise ParameterError(f"carry at position {j} must equal {n - 1}")
    reference = sorted(record.digits.digits)
    reflected = sorted(b - 1 - d for d in reference)
    if reference != reflected:
        raise ParameterError("digit multiset is not reflection-closed")

    # pi: position -> reference index, smallest assignment
    available: dict[int, list[int]] = {}
    for idx in reversed(range(size)):
        available.setdefault(reference[idx], []).append(idx)
    pi = Permutation(tuple(available[d].pop() for d in record.digits.digits))

    sibling = _shifted_record(record, j, reflect=True)
    rho = Permutation.reversal(size)
    shift = Permutation.rotation(size, j)
    lhs_digits = rho.compose(pi).compose(shift)
    lhs_preimage = rho.compose(pi).compose(record.sigma).compose(shift)
    digits_match = all(
        sibling.digits.digits[i] == reference[lhs_digits(i)] for i in range(size)
    )
    preimage_match = all(
        sibling.preimage.digits[i] == reference[lhs_preimage(i)] for i in range(size)
    )
    return digits_match and preimage_match
