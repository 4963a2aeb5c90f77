"""Exact base-b digit arithmetic and digit-preserving multiplication.

Digit sequences are stored least-significant-first, so ``digits[j]`` is the
coefficient of ``base**j``.  Display order (most-significant first) appears
only at formatting boundaries.  All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ParameterError

__all__ = [
    "DigitString",
    "Permutation",
    "PermutipleRecord",
    "canonical_sigma",
    "lambda_residue",
    "verify_permutiple",
]


def lambda_residue(x: int, base: int) -> int:
    """Least non-negative residue of ``x`` modulo ``base``, exact for negative ``x``."""
    if base < 2:
        raise ParameterError(f"base must be at least 2, got {base}")
    return x % base


@dataclass(frozen=True)
class DigitString:
    """A base-b digit sequence, least-significant digit first.

    Leading zeros (at the high-index end) are permitted; ``canonical`` is
    true when the most significant digit is nonzero.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(self.digits))
        if self.base < 2:
            raise ParameterError(f"base must be at least 2, got {self.base}")
        if not self.digits:
            raise ParameterError("a digit string needs at least one digit")
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ParameterError(f"digit {d} out of range for base {self.base}")

    @classmethod
    def from_display(cls, base: int, display: Iterable[int]) -> "DigitString":
        """Build from most-significant-first digit order."""
        return cls(base, tuple(reversed(tuple(display))))

    @classmethod
    def from_int(cls, base: int, value: int, width: int | None = None) -> "DigitString":
        """Digit expansion of ``value`` >= 0, zero-padded up to ``width`` digits."""
        if base < 2:
            raise ParameterError(f"base must be at least 2, got {base}")
        if value < 0:
            raise ParameterError("negative values have no digit string")
        digits = []
        v = value
        while v:
            v, d = divmod(v, base)
            digits.append(d)
        if not digits:
            digits.append(0)
        if width is not None:
            if len(digits) > width:
                raise ParameterError(
                    f"{value} does not fit in {width} base-{base} digits"
                )
            digits.extend([0] * (width - len(digits)))
        return cls(base, tuple(digits))

    @property
    def display(self) -> tuple[int, ...]:
        """Digits in most-significant-first order."""
        return tuple(reversed(self.digits))

    @property
    def canonical(self) -> bool:
        return self.digits[-1] != 0

    def value(self) -> int:
        total = 0
        for d in reversed(self.digits):
            total = total * self.base + d
        return total

    def reflect(self) -> "DigitString":
        """Replace every digit d by base-1-d (an involution)."""
        m = self.base - 1
        return DigitString(self.base, tuple(m - d for d in self.digits))

    def multiset(self) -> tuple[int, ...]:
        """The digit multiset in sorted form."""
        return tuple(sorted(self.digits))

    def __len__(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0, ..., size-1}; ``mapping[i]`` is the image of ``i``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ParameterError(f"not a bijection on 0..{len(self.mapping) - 1}: {self.mapping}")

    @property
    def size(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))

    @classmethod
    def rotation(cls, size: int, shift: int) -> "Permutation":
        """The ``shift``-th power of the full cycle 0 -> 1 -> ... -> size-1 -> 0."""
        return cls(tuple((i + shift) % size for i in range(size)))

    @classmethod
    def reversal(cls, size: int) -> "Permutation":
        return cls(tuple(size - 1 - i for i in range(size)))

    @classmethod
    def transposition(cls, size: int, i: int, j: int) -> "Permutation":
        mapping = list(range(size))
        mapping[i], mapping[j] = mapping[j], mapping[i]
        return cls(tuple(mapping))

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """Function composition: ``self.compose(other)(i) == self(other(i))``."""
        if self.size != other.size:
            raise ParameterError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.mapping[other.mapping[i]] for i in range(self.size)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, m in enumerate(self.mapping):
            inv[m] = i
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class PermutipleRecord:
    """A verified digit-preserving multiplication digits = multiplier * permuted digits.

    ``carries[j]`` is the carry entering position j of the single-digit
    multiplication; ``carries[0]`` and ``carries[-1]`` are zero and every
    carry is below the multiplier.
    """

    multiplier: int
    digits: DigitString
    sigma: Permutation
    carries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "carries", tuple(self.carries))
        n = self.multiplier
        b = self.digits.base
        d = self.digits.digits
        if not 1 < n < b:
            raise ParameterError(f"multiplier must satisfy 1 < n < base; got n={n}, base={b}")
        if self.sigma.size != len(d):
            raise ParameterError("permutation size must match the digit count")
        c = self.carries
        if len(c) != len(d) + 1:
            raise ParameterError("carry sequence must have one more entry than the digits")
        if c[0] != 0 or c[-1] != 0:
            raise ParameterError("first and last carries must be zero")
        for j in range(len(d)):
            if not 0 <= c[j] <= n - 1:
                raise ParameterError(f"carry {c[j]} at position {j} exceeds multiplier-1")
            if b * c[j + 1] - c[j] != n * d[self.sigma(j)] - d[j]:
                raise ParameterError(f"carry recurrence violated at position {j}")

    @property
    def base(self) -> int:
        return self.digits.base

    @property
    def preimage(self) -> DigitString:
        """The multiplicand: the digits of the record permuted by sigma."""
        d = self.digits.digits
        return DigitString(self.base, tuple(d[self.sigma(j)] for j in range(len(d))))

    @property
    def string(self) -> tuple[tuple[int, int], ...]:
        """Input pairs (d_j, d_sigma(j)) in position order."""
        d = self.digits.digits
        return tuple((d[j], d[self.sigma(j)]) for j in range(len(d)))

    @property
    def canonical(self) -> bool:
        return self.digits.canonical

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Dedup/sort key: display digits plus display preimage."""
        return (self.digits.display, self.preimage.display)

    def value(self) -> int:
        return self.digits.value()

    def preimage_value(self) -> int:
        return self.preimage.value()

    def __len__(self) -> int:
        return len(self.digits)


def verify_permutiple(
    digits: DigitString, sigma: Permutation, multiplier: int
) -> PermutipleRecord | None:
    """Run the single-digit multiplication and check it reproduces ``digits``.

    Position j computes ``t = multiplier * digits[sigma(j)] + carry``; the
    produced digit is ``t % base`` and the next carry ``t // base``.  Succeeds
    iff every produced digit matches and the final carry is zero.  Returns
    None when the multiplication is not digit-preserving; parameter-domain
    problems raise :class:`ParameterError`.
    """
    b = digits.base
    n = multiplier
    if not 1 < n < b:
        raise ParameterError(f"multiplier must satisfy 1 < n < base; got n={n}, base={b}")
    if sigma.size != len(digits):
        raise ParameterError("permutation size must match the digit count")
    d = digits.digits
    carries = [0]
    carry = 0
    for j in range(len(d)):
        t = n * d[sigma(j)] + carry
        if t % b != d[j]:
            return None
        carry = t // b
        carries.append(carry)
    if carry != 0:
        return None
    return PermutipleRecord(n, digits, sigma, tuple(carries))


def canonical_sigma(digits: DigitString, preimage: DigitString) -> Permutation | None:
    """Lexicographically smallest bijection with ``digits[sigma(j)] == preimage[j]``.

    Returns None when the two digit multisets differ (no such bijection).
    """
    if digits.base != preimage.base:
        raise ParameterError("digit strings must share a base")
    if len(digits) != len(preimage):
        raise ParameterError("digit strings must share a length")
    if digits.multiset() != preimage.multiset():
        return None
    available: dict[int, list[int]] = {}
    for i in reversed(range(len(digits))):
        available.setdefault(digits.digits[i], []).append(i)
    mapping = []
    for value in preimage.digits:
        mapping.append(available[value].pop())
    return Permutation(tuple(mapping))
