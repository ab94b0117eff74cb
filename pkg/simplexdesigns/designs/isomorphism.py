"""Isomorphisms between designs: invariant colouring, refinement and backtracking.

Points are first coloured by how they meet pairs of other points in common blocks (triple
intersection counts), blocks likewise, and the colouring is refined on the point/block incidence
graph until it is stable. Both designs are coloured jointly, so equal colours mean equal invariants.
The search then assigns points of the first design to same-coloured points of the second, keeping for
every block the set of blocks it can still go to. Once every block has a single candidate the
remaining point images are forced and the permutation is checked against the block lists.
"""

from __future__ import annotations

from collections import Counter as _Counter
from itertools import combinations as _combinations
from typing import Iterator as _Iterator, Optional as _Optional

from more_itertools import first as _first

from simplexdesigns.combinatorics import Permutation, apply_mask as _apply_mask, iter_bits as _iter_bits
from simplexdesigns.designs.design import Design
from simplexdesigns.logger import logger as _logger


class _Incidence:
    def __init__(self, design: Design):
        v = design.v
        self.v = v
        self.blocks = [block.bits >> 1 for block in design.blocks]
        self.point_blocks = [sum(1 << b for b, block in enumerate(self.blocks) if block >> p & 1) for p in range(v)]
        self.block_set = frozenset(block.bits for block in design.blocks)

    def point_signature(self, p: int) -> tuple:
        own = self.point_blocks[p]
        others = [q for q in range(self.v) if q != p]
        blocks = self.point_blocks
        counts = _Counter((own & blocks[q] & blocks[r]).bit_count() for q, r in _combinations(others, 2))
        return tuple(sorted(counts.items()))

    def block_signature(self, b: int) -> tuple:
        own = self.blocks[b]
        others = [c for c in range(self.v) if c != b]
        counts = _Counter((own & self.blocks[c] & self.blocks[d]).bit_count() for c, d in _combinations(others, 2))
        return tuple(sorted(counts.items()))


def _compress(first: list, second: list) -> tuple[list[int], list[int]]:
    palette = {signature: colour for colour, signature in enumerate(sorted(set(first) | set(second)))}
    return [palette[s] for s in first], [palette[s] for s in second]


def _block_profiles(incidence: _Incidence, points: list[int], blocks: list[int]) -> list[tuple]:
    return [(blocks[b], tuple(sorted(points[p] for p in _iter_bits(mask)))) for b, mask in enumerate(incidence.blocks)]


def _point_profiles(incidence: _Incidence, points: list[int], blocks: list[int]) -> list[tuple]:
    return [
        (points[p], tuple(sorted(blocks[b] for b in _iter_bits(mask)))) for p, mask in enumerate(incidence.point_blocks)
    ]


def _refine(one: _Incidence, two: _Incidence) -> tuple[list[int], list[int], list[int], list[int]]:
    points1, points2 = _compress(
        [one.point_signature(p) for p in range(one.v)], [two.point_signature(p) for p in range(two.v)]
    )
    blocks1, blocks2 = _compress(
        [one.block_signature(b) for b in range(one.v)], [two.block_signature(b) for b in range(two.v)]
    )

    classes = -1
    while True:
        blocks1, blocks2 = _compress(
            _block_profiles(one, points1, blocks1), _block_profiles(two, points2, blocks2)
        )
        points1, points2 = _compress(
            _point_profiles(one, points1, blocks1), _point_profiles(two, points2, blocks2)
        )
        # classes only ever split, so an unchanged count is a stable colouring
        current = len(set(points1) | set(points2)) + len(set(blocks1) | set(blocks2))
        if current == classes:
            return points1, blocks1, points2, blocks2
        classes = current


def refine_colours(d1: Design, d2: Design) -> tuple[list[int], list[int], list[int], list[int]]:
    """Stable joint colouring: point and block colours of ``d1``, then of ``d2``."""
    return _refine(_Incidence(d1), _Incidence(d2))


class _Search:
    def __init__(self, d1: Design, d2: Design):
        self.one, self.two = _Incidence(d1), _Incidence(d2)
        self.v = d1.v
        self.points1, self.blocks1, self.points2, self.blocks2 = _refine(self.one, self.two)
        self.full = (1 << self.v) - 1
        self.by_incidence = {mask: q for q, mask in enumerate(self.two.point_blocks)}
        sizes = _Counter(self.points1)
        self.order = sorted(range(self.v), key=lambda p: (sizes[self.points1[p]], self.points1[p], p))
        self.nodes = 0

    def compatible(self) -> bool:
        return sorted(self.points1) == sorted(self.points2) and sorted(self.blocks1) == sorted(self.blocks2)

    def run(self) -> _Iterator[tuple[int, ...]]:
        candidates = [
            sum(1 << c for c in range(self.v) if self.blocks2[c] == self.blocks1[b]) for b in range(self.v)
        ]
        yield from self._extend(0, [-1] * self.v, 0, candidates)
        _logger.debug(f"isomorphism search visited {self.nodes} nodes")

    def _extend(self, depth: int, images: list[int], used: int, candidates: list[int]) -> _Iterator[tuple[int, ...]]:
        self.nodes += 1
        if all(c & (c - 1) == 0 for c in candidates):
            forced = self._forced(candidates)
            if forced is not None:
                yield forced
            return

        p = self.order[depth]
        incidence = self.one.point_blocks[p]
        for q in range(self.v):
            if used >> q & 1 or self.points2[q] != self.points1[p]:
                continue
            image = self.two.point_blocks[q]
            narrowed = []
            for b, candidate in enumerate(candidates):
                candidate &= image if incidence >> b & 1 else self.full & ~image
                if not candidate:
                    break
                narrowed.append(candidate)
            else:
                images[p] = q
                yield from self._extend(depth + 1, images, used | 1 << q, narrowed)
                images[p] = -1

    def _forced(self, candidates: list[int]) -> _Optional[tuple[int, ...]]:
        block_images = [c.bit_length() - 1 for c in candidates]
        if len(set(block_images)) != self.v:
            return None
        images = []
        for p in range(self.v):
            target = 0
            for b in range(self.v):
                if self.one.point_blocks[p] >> b & 1:
                    target |= 1 << block_images[b]
            q = self.by_incidence.get(target)
            if q is None or self.points2[q] != self.points1[p]:
                return None
            images.append(q)
        if len(set(images)) != self.v:
            return None
        one_based = tuple(q + 1 for q in images)
        if any(_apply_mask(one_based, block << 1) not in self.two.block_set for block in self.one.blocks):
            return None
        return tuple(images)


def iter_isomorphisms(d1: Design, d2: Design) -> _Iterator[Permutation]:
    """Every permutation of the points carrying the blocks of ``d1`` onto those of ``d2``."""
    if d1.parameters != d2.parameters:
        return
    search = _Search(d1, d2)
    if not search.compatible():
        _logger.debug("colour classes differ, designs are not isomorphic")
        return
    for images in search.run():
        yield Permutation.from_zero_based(images)


def find_isomorphism(d1: Design, d2: Design) -> _Optional[Permutation]:
    return _first(iter_isomorphisms(d1, d2), None)


def is_isomorphic(d1: Design, d2: Design) -> bool:
    return find_isomorphism(d1, d2) is not None
