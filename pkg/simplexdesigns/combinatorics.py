"""Subsets of a ground set ``[n] = {1, ..., n}`` and permutations acting on them.

A subset is stored as an integer bitmask in which element ``i`` sits at bit position ``i``; bit 0 is
never set. Permutations compose left to right: ``p.then(q)`` applies ``p`` first and ``q`` second, so
the image tuple of the product is ``[q[i] for i in p]``. The group code uses the same order.
"""

from __future__ import annotations

import random as _random
import re as _re
from dataclasses import dataclass as _dataclass
from typing import Iterable as _Iterable, Iterator as _Iterator, Sequence as _Sequence

from simplexdesigns.exceptions import GroundSetError as _GroundSetError

MAX_GROUND_SIZE = 63

_SET_PATTERN = _re.compile(r"^\{\s*(\d+(\s*,\s*\d+)*)?\s*\}$")


def full_mask(n: int) -> int:
    return ((1 << n) - 1) << 1


def mask_of(elements: _Iterable[int]) -> int:
    mask = 0
    for element in elements:
        mask |= 1 << element
    return mask


def elements_of(mask: int) -> list[int]:
    elements = []
    while mask:
        low = mask & -mask
        elements.append(low.bit_length() - 1)
        mask ^= low
    return elements


def iter_bits(mask: int) -> _Iterator[int]:
    """Positions of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def apply_mask(images: _Sequence[int], mask: int) -> int:
    """Image of a subset mask under a permutation given by its 1-based image tuple."""
    image = 0
    for element in iter_bits(mask):
        image |= 1 << images[element - 1]
    return image


def _check_ground_size(n: int) -> None:
    if not 0 < n <= MAX_GROUND_SIZE:
        raise _GroundSetError(f"ground size {n} outside 1..{MAX_GROUND_SIZE}")


@_dataclass(frozen=True, order=True)
class ElementSet:
    bits: int
    ground_size: int

    def __post_init__(self):
        _check_ground_size(self.ground_size)
        if self.bits < 0 or self.bits & ~full_mask(self.ground_size):
            raise _GroundSetError(f"mask {self.bits:#x} has elements outside [1, {self.ground_size}]")

    @classmethod
    def of(cls, elements: _Iterable[int], ground_size: int) -> ElementSet:
        elements = list(elements)
        bad = [i for i in elements if not 1 <= i <= ground_size]
        if bad:
            raise _GroundSetError(f"elements {bad} are not in [1, {ground_size}]")
        return cls(mask_of(elements), ground_size)

    @classmethod
    def empty(cls, ground_size: int) -> ElementSet:
        return cls(0, ground_size)

    @classmethod
    def universe(cls, ground_size: int) -> ElementSet:
        return cls(full_mask(ground_size), ground_size)

    @classmethod
    def parse(cls, text: str, ground_size: int) -> ElementSet:
        match = _SET_PATTERN.match(text.strip())
        if not match:
            raise _GroundSetError(f"{text!r} is not in set notation, e.g. '{{1,3,5}}'")
        body = match.group(1)
        elements = [int(i) for i in body.split(",")] if body else []
        return cls.of(elements, ground_size)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> _Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, element: object) -> bool:
        return isinstance(element, int) and element > 0 and bool(self.bits >> element & 1)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self) + "}"

    def issubset(self, other: ElementSet) -> bool:
        _check_same_ground(self, other)
        return self.bits & ~other.bits == 0

    def as_row(self) -> str:
        """0/1 characters for elements 1..n, the incidence-row rendering."""
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(1, self.ground_size + 1))


def _check_same_ground(a: ElementSet, b: ElementSet) -> None:
    if a.ground_size != b.ground_size:
        raise _GroundSetError(f"ground sizes differ: {a.ground_size} != {b.ground_size}")


def symdiff(a: ElementSet, b: ElementSet) -> ElementSet:
    _check_same_ground(a, b)
    return ElementSet(a.bits ^ b.bits, a.ground_size)


def intersection(a: ElementSet, b: ElementSet) -> ElementSet:
    _check_same_ground(a, b)
    return ElementSet(a.bits & b.bits, a.ground_size)


def union(a: ElementSet, b: ElementSet) -> ElementSet:
    _check_same_ground(a, b)
    return ElementSet(a.bits | b.bits, a.ground_size)


def intersection_size(a: ElementSet, b: ElementSet) -> int:
    _check_same_ground(a, b)
    return (a.bits & b.bits).bit_count()


def complement_in(a: ElementSet, universe: ElementSet) -> ElementSet:
    if not a.issubset(universe):
        raise _GroundSetError(f"{a} is not a subset of {universe}")
    return ElementSet(universe.bits & ~a.bits, a.ground_size)


@_dataclass(frozen=True)
class Permutation:
    """A bijection of ``[n]``; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise _GroundSetError(f"{self.images} is not a permutation of [1, {len(self.images)}]")

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def zero_based(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self.images)

    @classmethod
    def from_zero_based(cls, images: _Sequence[int]) -> Permutation:
        return cls(tuple(i + 1 for i in images))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, cycles: _Iterable[_Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        for cycle in cycles:
            for position, element in enumerate(cycle):
                images[element - 1] = cycle[(position + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def random(cls, n: int, rng: _random.Random) -> Permutation:
        images = list(range(1, n + 1))
        rng.shuffle(images)
        return cls(tuple(images))

    def __call__(self, element: int) -> int:
        return self.images[element - 1]

    def then(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise _GroundSetError(f"cannot compose degrees {self.degree} and {other.degree}")
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> Permutation:
        images = [0] * self.degree
        for i, image in enumerate(self.images, start=1):
            images[image - 1] = i
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(image == i for i, image in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        cycles = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            current = self(start)
            while current != start:
                cycle.append(current)
                seen.add(current)
                current = self(current)
            cycles.append(tuple(cycle))
        return cycles

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i) for i in cycle) + ")" for cycle in cycles)


def apply(p: Permutation, a: ElementSet) -> ElementSet:
    if p.degree != a.ground_size:
        raise _GroundSetError(f"permutation of degree {p.degree} applied to a subset of [{a.ground_size}]")
    return ElementSet(apply_mask(p.images, a.bits), a.ground_size)
