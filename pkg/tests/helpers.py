"""Shared test helpers and frozen known-equation tables.

Equations are stored display-first (most significant digit first) as
(multiplier, base, digits, preimage) tuples.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations

from permutiple import (
    DigitString,
    PermutipleRecord,
    canonical_sigma,
    verify_permutiple,
    walk_states,
)
from permutiple.errors import WalkError


def make_record(
    multiplier: int, base: int, digits: tuple[int, ...], preimage: tuple[int, ...]
) -> PermutipleRecord:
    """Build a verified record from display-order digit tuples."""
    digit_string = DigitString.from_display(base, digits)
    preimage_string = DigitString.from_display(base, preimage)
    sigma = canonical_sigma(digit_string, preimage_string)
    assert sigma is not None, f"digit multisets differ: {digits} vs {preimage}"
    record = verify_permutiple(digit_string, sigma, multiplier)
    assert record is not None, f"{digits} != {multiplier} * {preimage} in base {base}"
    return record


def carries_by_value(
    multiplier: int, base: int, digits: tuple[int, ...], preimage: tuple[int, ...]
) -> tuple[int, ...]:
    """Carry sequence derived from prefix values alone.

    Telescoping the carry recurrence gives
    ``carry[j] * base**j == multiplier * value(preimage[:j]) - value(digits[:j])``
    over least-significant prefixes, so the carries follow from whole-number
    arithmetic with no positionwise multiplication.
    """
    lsb_digits = tuple(reversed(digits))
    lsb_preimage = tuple(reversed(preimage))
    carries = []
    for j in range(len(lsb_digits) + 1):
        digit_value = sum(d * base**i for i, d in enumerate(lsb_digits[:j]))
        preimage_value = sum(d * base**i for i, d in enumerate(lsb_preimage[:j]))
        numerator = multiplier * preimage_value - digit_value
        assert numerator % base**j == 0, "prefix identity failed"
        carries.append(numerator // base**j)
    return tuple(carries)


def distinct_orderings(items):
    """All distinct orderings of a small multiset."""
    return sorted(set(permutations(items)))


def is_permutiple_string(inputs, multiplier: int, base: int) -> bool:
    """Accepted by the machine and balanced between left/right components."""
    try:
        walk_states(inputs, multiplier, base)
    except WalkError:
        return False
    return Counter(d1 for d1, _ in inputs) == Counter(d2 for _, d2 in inputs)


# ---------------------------------------------------------------------------
# Known digit-preserving multiplications.

CLASSIC_EQUATIONS = [
    (4, 10, (8, 7, 9, 1, 2), (2, 1, 9, 7, 8)),
    (9, 10, (9, 8, 9, 0, 1), (1, 0, 9, 8, 9)),
    (5, 10, (7, 1, 4, 2, 8, 5), (1, 4, 2, 8, 5, 7)),
    (4, 10, (4, 9, 3, 8, 2, 7, 1, 5, 6), (1, 2, 3, 4, 5, 6, 7, 8, 9)),
    (4, 10, (7, 9, 1, 2, 8), (1, 9, 7, 8, 2)),
    (4, 10, (7, 8, 9, 1, 2), (1, 9, 7, 2, 8)),
    (2, 6, (4, 3, 5, 1, 2), (2, 1, 5, 3, 4)),
]

# The four conjugate arrangements of the digits {1, 2, 7, 8, 9}.
CONJUGATE_ROWS = [
    (4, 10, (8, 7, 9, 1, 2), (2, 1, 9, 7, 8)),
    (4, 10, (8, 7, 1, 9, 2), (2, 1, 7, 9, 8)),
    (4, 10, (7, 9, 1, 2, 8), (1, 9, 7, 8, 2)),
    (4, 10, (7, 1, 9, 2, 8), (1, 7, 9, 8, 2)),
]

# A same-digit arrangement outside that conjugate family.
OUTSIDE_ROW = (4, 10, (7, 8, 9, 1, 2), (1, 9, 7, 2, 8))

NINE_DIGIT_EQUATIONS = [
    (4, 10, (7, 2, 7, 1, 1, 9, 2, 8, 8), (1, 8, 1, 7, 7, 9, 8, 2, 2)),
    (4, 10, (8, 7, 1, 9, 2, 7, 1, 2, 8), (2, 1, 7, 9, 8, 1, 7, 8, 2)),
]

FAMILY_86712 = [
    (4, 10, (8, 6, 7, 1, 2), (2, 1, 6, 7, 8)),
    (4, 10, (7, 1, 3, 2, 8), (1, 7, 8, 3, 2)),
    (4, 10, (8, 7, 1, 3, 2), (2, 1, 7, 8, 3)),
    (4, 10, (6, 7, 1, 2, 8), (1, 6, 7, 8, 2)),
]

FAMILY_BASE4 = [
    (3, 4, (3, 1, 1, 0, 2, 2), (1, 0, 1, 2, 3, 2)),
    (3, 4, (1, 1, 0, 2, 2, 3), (0, 1, 2, 3, 2, 1)),
]

TEN_DIGIT_EQUATIONS = [
    (4, 10, (8, 6, 7, 1, 2, 8, 7, 1, 3, 2), (2, 1, 6, 7, 8, 2, 1, 7, 8, 3)),
    (4, 10, (7, 2, 8, 8, 6, 7, 1, 1, 3, 2), (1, 8, 2, 2, 1, 6, 7, 7, 8, 3)),
    (4, 10, (6, 7, 2, 7, 1, 1, 3, 2, 8, 8), (1, 6, 8, 1, 7, 7, 8, 3, 2, 2)),
]

# The nine-digit class with digits {1,1,2,2,7,7,8,8,9}: the seed, its two
# transposition variants, rotations, reflected relatives, and one
# non-cyclic rearrangement.
NINE_DIGIT_CLASS = {
    "seed": (4, 10, (7, 2, 7, 1, 1, 9, 2, 8, 8), (1, 8, 1, 7, 7, 9, 8, 2, 2)),
    "transposed": [
        (4, 10, (7, 2, 7, 1, 9, 1, 2, 8, 8), (1, 8, 1, 7, 9, 7, 8, 2, 2)),
        (4, 10, (7, 2, 7, 9, 1, 1, 2, 8, 8), (1, 8, 1, 9, 7, 7, 8, 2, 2)),
    ],
    "rotations": [
        (4, 10, (8, 7, 2, 7, 1, 1, 9, 2, 8), (2, 1, 8, 1, 7, 7, 9, 8, 2)),
        (4, 10, (8, 8, 7, 2, 7, 1, 1, 9, 2), (2, 2, 1, 8, 1, 7, 7, 9, 8)),
        (4, 10, (7, 1, 1, 9, 2, 8, 8, 7, 2), (1, 7, 7, 9, 8, 2, 2, 1, 8)),
    ],
    "transposed_rotations": [
        (4, 10, (8, 7, 2, 7, 1, 9, 1, 2, 8), (2, 1, 8, 1, 7, 9, 7, 8, 2)),
        (4, 10, (8, 8, 7, 2, 7, 1, 9, 1, 2), (2, 2, 1, 8, 1, 7, 9, 7, 8)),
        (4, 10, (7, 1, 9, 1, 2, 8, 8, 7, 2), (1, 7, 9, 7, 8, 2, 2, 1, 8)),
        (4, 10, (8, 7, 2, 7, 9, 1, 1, 2, 8), (2, 1, 8, 1, 9, 7, 7, 8, 2)),
        (4, 10, (8, 8, 7, 2, 7, 9, 1, 1, 2), (2, 2, 1, 8, 1, 9, 7, 7, 8)),
        (4, 10, (7, 9, 1, 1, 2, 8, 8, 7, 2), (1, 9, 7, 7, 8, 2, 2, 1, 8)),
    ],
    "noncyclic": [
        (4, 10, (7, 2, 8, 7, 1, 1, 9, 2, 8), (1, 8, 2, 1, 7, 7, 9, 8, 2)),
    ],
    "reflected": [
        (4, 10, (7, 1, 1, 2, 7, 2, 8, 8, 0), (1, 7, 7, 8, 1, 8, 2, 2, 0)),
        (4, 10, (0, 7, 1, 1, 2, 7, 2, 8, 8), (0, 1, 7, 7, 8, 1, 8, 2, 2)),
        (4, 10, (8, 0, 7, 1, 1, 2, 7, 2, 8), (2, 0, 1, 7, 7, 8, 1, 8, 2)),
        (4, 10, (8, 8, 0, 7, 1, 1, 2, 7, 2), (2, 2, 0, 1, 7, 7, 8, 1, 8)),
    ],
    "reflected_transposed": [
        (4, 10, (7, 1, 1, 2, 7, 2, 8, 0, 8), (1, 7, 7, 8, 1, 8, 2, 0, 2)),
        (4, 10, (8, 7, 1, 1, 2, 7, 2, 8, 0), (2, 1, 7, 7, 8, 1, 8, 2, 0)),
        (4, 10, (0, 8, 7, 1, 1, 2, 7, 2, 8), (0, 2, 1, 7, 7, 8, 1, 8, 2)),
        (4, 10, (8, 0, 8, 7, 1, 1, 2, 7, 2), (2, 0, 2, 1, 7, 7, 8, 1, 8)),
        (4, 10, (7, 1, 1, 2, 7, 2, 0, 8, 8), (1, 7, 7, 8, 1, 8, 0, 2, 2)),
        (4, 10, (8, 7, 1, 1, 2, 7, 2, 0, 8), (2, 1, 7, 7, 8, 1, 8, 0, 2)),
        (4, 10, (8, 8, 7, 1, 1, 2, 7, 2, 0), (2, 2, 1, 7, 7, 8, 1, 8, 0)),
        (4, 10, (0, 8, 8, 7, 1, 1, 2, 7, 2), (0, 2, 2, 1, 7, 7, 8, 1, 8)),
    ],
}


def nine_digit_class_equations() -> list[tuple]:
    out = [NINE_DIGIT_CLASS["seed"]]
    for group in (
        "transposed",
        "rotations",
        "transposed_rotations",
        "noncyclic",
        "reflected",
        "reflected_transposed",
    ):
        out.extend(NINE_DIGIT_CLASS[group])
    return out


ALL_KNOWN_EQUATIONS = (
    CLASSIC_EQUATIONS
    + CONJUGATE_ROWS
    + [OUTSIDE_ROW]
    + NINE_DIGIT_EQUATIONS
    + FAMILY_86712
    + FAMILY_BASE4
    + TEN_DIGIT_EQUATIONS
    + nine_digit_class_equations()
)


# ---------------------------------------------------------------------------
# Frozen machine data for (4, 10) and (3, 4).

MACHINE_EDGES_4_10 = {
    (0, 0): ((0, 0), (4, 1), (8, 2)),
    (0, 1): ((2, 3), (6, 4)),
    (0, 2): ((0, 5), (4, 6), (8, 7)),
    (0, 3): ((2, 8), (6, 9)),
    (1, 0): ((1, 0), (5, 1), (9, 2)),
    (1, 1): ((3, 3), (7, 4)),
    (1, 2): ((1, 5), (5, 6), (9, 7)),
    (1, 3): ((3, 8), (7, 9)),
    (2, 0): ((2, 0), (6, 1)),
    (2, 1): ((0, 2), (4, 3), (8, 4)),
    (2, 2): ((2, 5), (6, 6)),
    (2, 3): ((0, 7), (4, 8), (8, 9)),
    (3, 0): ((3, 0), (7, 1)),
    (3, 1): ((1, 2), (5, 3), (9, 4)),
    (3, 2): ((3, 5), (7, 6)),
    (3, 3): ((1, 7), (5, 8), (9, 9)),
}

MACHINE_EDGES_3_4 = {
    (0, 0): ((0, 0), (3, 1)),
    (0, 1): ((2, 2),),
    (0, 2): ((1, 3),),
    (1, 0): ((1, 0),),
    (1, 1): ((0, 1), (3, 2)),
    (1, 2): ((2, 3),),
    (2, 0): ((2, 0),),
    (2, 1): ((1, 1),),
    (2, 2): ((0, 2), (3, 3)),
}

MOTHER_EDGES_3_4 = {
    (0, 0), (0, 1), (0, 2),
    (1, 0), (1, 1), (1, 3),
    (2, 0), (2, 2), (2, 3),
    (3, 1), (3, 2), (3, 3),
}
