"""Fano planes realised as 7-cliques of 4-subsets of a 7-element set, and bijections between them.

The index of a bijection ``d: F1 -> F2`` is the number of lines of ``F1`` that ``d`` maps onto lines of
``F2``; it is always one of 0, 1, 3 or 7, and two bijections are equivalent (``d2 = g2 . d1 . g1`` for
plane automorphisms ``g1``, ``g2``) exactly when their indices agree.

Points of a plane are addressed by their position in ``FanoPlane.points``. A bijection is stored as
``mapping[i] = j``: the ``i``-th source point goes to the ``j``-th target point.
"""

from __future__ import annotations

import functools as _functools
from collections import Counter as _Counter
from dataclasses import dataclass as _dataclass
from itertools import combinations as _combinations, permutations as _permutations
from typing import Iterable as _Iterable, Iterator as _Iterator, Sequence as _Sequence

from more_itertools import first as _first
from tqdm import tqdm as _tqdm  # type: ignore

from simplexdesigns.cliques.graph import maximal_cliques as _maximal_cliques
from simplexdesigns.combinatorics import ElementSet, mask_of as _mask_of
from simplexdesigns.exceptions import (
    AssumptionError as _AssumptionError,
    GeometryError as _GeometryError,
    ParameterError as _ParameterError,
)
from simplexdesigns.logger import logger as _logger

# Labels of the canonical frame, named by the generators each point is the symmetric difference of.
FRAME_LABELS = ("1", "2", "3", "12", "13", "23", "123")
_LABEL_COORDINATES = {"1": 1, "2": 2, "12": 3, "3": 4, "13": 5, "23": 6, "123": 7}

# Label moves of one representative bijection per index, read in the canonical frame.
_LABEL_MOVES: dict[int, dict[str, str]] = {
    7: {},
    3: {"12": "13", "13": "12"},
    1: {"12": "13", "13": "23", "23": "12"},
    0: {"123": "23", "23": "12", "12": "13", "13": "123"},
}
INDICES = (0, 1, 3, 7)

Mapping = tuple[int, ...]


def _compose(first: Mapping, second: Mapping) -> Mapping:
    return tuple(second[i] for i in first)


def _invert(mapping: Mapping) -> Mapping:
    inverse = [0] * len(mapping)
    for i, j in enumerate(mapping):
        inverse[j] = i
    return tuple(inverse)


@_dataclass(frozen=True)
class FanoPlane:
    points: tuple[ElementSet, ...]

    def __post_init__(self):
        if len(self.points) != 7 or len(set(self.points)) != 7:
            raise _GeometryError(f"a Fano plane has 7 distinct points, got {len(set(self.points))}")
        sizes = {len(p) for p in self.points}
        grounds = {p.ground_size for p in self.points}
        if sizes != {4} or len(grounds) != 1:
            raise _GeometryError("Fano plane points must be 4-subsets of one ground set")
        masks = {p.bits for p in self.points}
        for a, b in _combinations(masks, 2):
            if (a & b).bit_count() != 2 or a ^ b not in masks:
                raise _GeometryError("points are not a singular plane: a pair is not collinear or not closed")

    @classmethod
    def from_points(cls, points: _Iterable[ElementSet]) -> FanoPlane:
        return cls(tuple(points))

    @property
    def ground(self) -> ElementSet:
        bits = 0
        for p in self.points:
            bits |= p.bits
        return ElementSet(bits, self.points[0].ground_size)

    @_functools.cached_property
    def _position(self) -> dict[int, int]:
        return {p.bits: i for i, p in enumerate(self.points)}

    def index_of(self, point: ElementSet) -> int:
        try:
            return self._position[point.bits]
        except KeyError:
            raise _GeometryError(f"{point} is not a point of this plane") from None

    def third(self, i: int, j: int) -> int:
        """Position of the third point on the line through points ``i`` and ``j``."""
        return self._position[self.points[i].bits ^ self.points[j].bits]

    @_functools.cached_property
    def lines(self) -> tuple[tuple[int, int, int], ...]:
        found = set()
        for i, j in _combinations(range(7), 2):
            found.add(tuple(sorted((i, j, self.third(i, j)))))
        return tuple(sorted(found))

    @_functools.cached_property
    def _line_set(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(self.lines)

    def is_line(self, i: int, j: int, k: int) -> bool:
        return tuple(sorted((i, j, k))) in self._line_set

    def frame(self) -> dict[str, int]:
        """Canonical labeling: the first two points, then the first point off their line."""
        p1, p2 = 0, 1
        p3 = _first(i for i in range(7) if i not in (p1, p2, self.third(p1, p2)))
        return self._frame_from(p1, p2, p3)

    def _frame_from(self, p1: int, p2: int, p3: int) -> dict[str, int]:
        generators = (self.points[p1].bits, self.points[p2].bits, self.points[p3].bits)
        frame = {}
        for label, coordinates in _LABEL_COORDINATES.items():
            mask = 0
            for bit, generator in enumerate(generators):
                if coordinates >> bit & 1:
                    mask ^= generator
            frame[label] = self._position[mask]
        return frame

    @_functools.cached_property
    def automorphisms(self) -> tuple[Mapping, ...]:
        """All 168 collineations, one per ordered simplex (equivalently, per ordered non-collinear triple)."""
        base = self.frame()
        autos = []
        for a in range(7):
            for b in range(7):
                if b == a:
                    continue
                for c in range(7):
                    if c in (a, b, self.third(a, b)):
                        continue
                    target = self._frame_from(a, b, c)
                    mapping = [0] * 7
                    for label, i in base.items():
                        mapping[i] = target[label]
                    autos.append(tuple(mapping))
        return tuple(sorted(autos))

    @_functools.cached_property
    def _automorphism_set(self) -> frozenset[Mapping]:
        return frozenset(self.automorphisms)

    def is_automorphism(self, mapping: Mapping) -> bool:
        return tuple(mapping) in self._automorphism_set

    @_functools.cached_property
    def generators(self) -> tuple[Mapping, ...]:
        """A small generating set of the automorphism group, chosen greedily."""
        identity = tuple(range(7))
        generators: list[Mapping] = []
        closure = {identity}
        for candidate in self.automorphisms:
            if candidate in closure:
                continue
            generators.append(candidate)
            closure = _closure(generators, identity)
            if len(closure) == 168:
                break
        return tuple(generators)


def _closure(generators: _Sequence[Mapping], identity: Mapping) -> set[Mapping]:
    elements = {identity}
    queue = [identity]
    for element in queue:
        for g in generators:
            product = _compose(element, g)
            if product not in elements:
                elements.add(product)
                queue.append(product)
    return elements


def simplices(plane: FanoPlane) -> list[frozenset[int]]:
    """Four-point sets with no three collinear; each is the complement of a line."""
    return [frozenset(range(7)) - frozenset(line) for line in plane.lines]


def is_simplex(plane: FanoPlane, points: _Iterable[int]) -> bool:
    points = frozenset(points)
    if len(points) != 4:
        return False
    return not any(plane.is_line(*triple) for triple in _combinations(sorted(points), 3))


def canonical_plane(ground: ElementSet) -> FanoPlane:
    """Points ``x_r = {g_c : <r, c> odd}`` for ``r = 1..7``, where ``g_1 < ... < g_7`` is the ground set.

    These are the complements of the hyperplanes of the 3-dimensional binary space whose nonzero
    vectors are the ground elements; the frame labels of ``x_1 .. x_7`` are 1, 2, 12, 3, 13, 23, 123.
    """
    elements = list(ground)
    if len(elements) != 7:
        raise _ParameterError(f"a canonical Fano plane needs a 7-element ground set, got {ground}")
    points = []
    for r in range(1, 8):
        chosen = [g for c, g in enumerate(elements, start=1) if (r & c).bit_count() % 2 == 1]
        points.append(ElementSet(_mask_of(chosen), ground.ground_size))
    return FanoPlane(tuple(points))


def fano_planes_on(ground: ElementSet) -> list[FanoPlane]:
    """All 30 Fano planes whose points are 4-subsets of a 7-element ground set."""
    elements = list(ground)
    if len(elements) != 7:
        raise _ParameterError(f"Fano planes live on a 7-element set, got {ground}")
    candidates = sorted(_mask_of(c) for c in _combinations(elements, 4))
    adjacency = [
        _mask_of(j for j, b in enumerate(candidates) if (a & b).bit_count() == 2) for a in candidates
    ]
    planes = []
    for clique in _maximal_cliques(adjacency, min_size=7):
        if len(clique) != 7:
            continue
        planes.append(FanoPlane(tuple(ElementSet(candidates[v], ground.ground_size) for v in clique)))
    if len(planes) != 30:
        raise _AssumptionError(f"found {len(planes)} Fano planes on {ground}, expected 30")
    return planes


@_dataclass(frozen=True)
class FanoBijection:
    source: FanoPlane
    target: FanoPlane
    mapping: Mapping

    def __post_init__(self):
        if sorted(self.mapping) != list(range(7)):
            raise _ParameterError(f"{self.mapping} is not a bijection of 7 points")

    def __call__(self, point: ElementSet) -> ElementSet:
        return self.target.points[self.mapping[self.source.index_of(point)]]

    def pairs(self) -> list[tuple[ElementSet, ElementSet]]:
        return [(x, self.target.points[j]) for x, j in zip(self.source.points, self.mapping)]

    def inverse(self) -> FanoBijection:
        return FanoBijection(self.target, self.source, _invert(self.mapping))


def bijection_index(d: FanoBijection) -> int:
    return sum(1 for a, b, c in d.source.lines if d.target.is_line(d.mapping[a], d.mapping[b], d.mapping[c]))


def sends_simplex_to_simplex(d: FanoBijection) -> bool:
    return all(is_simplex(d.target, (d.mapping[i] for i in s)) for s in simplices(d.source))


def sends_some_simplex_to_simplex(d: FanoBijection) -> bool:
    """True when at least one simplex of the source lands on a simplex; such a bijection never has index 0."""
    return any(is_simplex(d.target, (d.mapping[i] for i in s)) for s in simplices(d.source))


def _plane_isomorphism(source: FanoPlane, target: FanoPlane) -> Mapping:
    """Frame-matching collineation from ``source`` onto ``target``."""
    source_frame, target_frame = source.frame(), target.frame()
    mapping = [0] * 7
    for label, i in source_frame.items():
        mapping[i] = target_frame[label]
    return tuple(mapping)


def are_equivalent(d1: FanoBijection, d2: FanoBijection) -> bool:
    """Whether ``d2 = g2 . d1 . g1`` for collineations ``g1`` of the sources and ``g2`` of the targets.

    ``d2`` is first transported onto the planes of ``d1``. Then for each of the 168 choices of ``g1``
    the only candidate ``g2 = d2 . g1^-1 . d1^-1`` is tested for being a collineation of the target.
    """
    into_source = _plane_isomorphism(d1.source, d2.source)
    out_of_target = _invert(_plane_isomorphism(d1.target, d2.target))
    transported = _compose(_compose(into_source, d2.mapping), out_of_target)

    d1_inverse = _invert(d1.mapping)
    for g1 in d1.source.automorphisms:
        g1_inverse = _invert(g1)
        g2 = _compose(_compose(d1_inverse, g1_inverse), transported)
        if d1.target.is_automorphism(g2):
            return True
    return False


def all_bijections(source: FanoPlane, target: FanoPlane) -> _Iterator[FanoBijection]:
    for mapping in _permutations(range(7)):
        yield FanoBijection(source, target, mapping)


def index_spectrum(source: FanoPlane, target: FanoPlane) -> dict[int, int]:
    counts = _Counter(
        bijection_index(d)
        for d in _tqdm(all_bijections(source, target), total=5040, leave=False, desc="Bijection indices")
    )
    return dict(sorted(counts.items()))


def equivalence_classes(source: FanoPlane, target: FanoPlane) -> list[list[FanoBijection]]:
    """Orbits of all 5040 bijections under the automorphism groups of both planes.

    Orbits are found by breadth-first search along the generators of each group and returned ordered by
    the index of their members.
    """
    unseen = set(_permutations(range(7)))
    source_moves = [_invert(g) for g in source.generators]
    target_moves = list(target.generators)
    classes = []
    while unseen:
        start = min(unseen)
        unseen.discard(start)
        orbit = [start]
        for mapping in orbit:
            neighbours = [_compose(g, mapping) for g in source_moves]
            neighbours += [_compose(mapping, g) for g in target_moves]
            for neighbour in neighbours:
                if neighbour in unseen:
                    unseen.discard(neighbour)
                    orbit.append(neighbour)
        classes.append([FanoBijection(source, target, mapping) for mapping in sorted(orbit)])

    classes.sort(key=lambda members: bijection_index(members[0]))
    _logger.debug(f"bijection classes by size: {[len(c) for c in classes]}")
    return classes


def representative_of_index(source: FanoPlane, target: FanoPlane, index: int) -> FanoBijection:
    """The fixed representative of an index class, written in the canonical frames of both planes."""
    if index not in _LABEL_MOVES:
        raise _ParameterError(f"index {index} is not one of {INDICES}")
    moves = _LABEL_MOVES[index]
    source_frame, target_frame = source.frame(), target.frame()
    mapping = [0] * 7
    for label, i in source_frame.items():
        mapping[i] = target_frame[moves.get(label, label)]
    return FanoBijection(source, target, tuple(mapping))
