"""Explicit maximal cliques: products over a center point, hyperplane complements, the non-centered clique.

A centered product takes a center ``O`` (a ``2m``-subset), a singular clique ``X`` of ``m``-subsets of
``[n] \\ O``, a singular clique ``Y`` of ``m``-subsets of a ``(2m - 1)``-subset ``Z`` of ``O`` and a
bijection ``delta: X -> Y``. Its points are ``O``, ``x | delta(x)`` and ``x | (O \\ delta(x))``. Every
maximal clique with a center point arises this way, and ``decompose`` recovers the four ingredients.
"""

from __future__ import annotations

import random as _random
from collections import Counter as _Counter
from dataclasses import dataclass as _dataclass
from itertools import combinations as _combinations, permutations as _permutations
from typing import Iterable as _Iterable, Optional as _Optional, Sequence as _Sequence

from tqdm import tqdm as _tqdm  # type: ignore

from simplexdesigns.cliques.clique import Clique, center_points as _center_points, is_center as _is_center
from simplexdesigns.combinatorics import ElementSet, mask_of as _mask_of
from simplexdesigns.exceptions import (
    AssumptionError as _AssumptionError,
    CliqueError as _CliqueError,
    ParameterError as _ParameterError,
)
from simplexdesigns.fano import (
    FanoBijection,
    FanoPlane,
    bijection_index as _bijection_index,
    canonical_plane as _canonical_plane,
    fano_planes_on as _fano_planes_on,
    representative_of_index as _representative_of_index,
)
from simplexdesigns.geometry import (
    Geometry,
    geometry_for as _geometry_for,
    is_singular_subspace as _is_singular_subspace,
    singular_span as _singular_span,
)
from simplexdesigns.logger import logger as _logger

CANONICAL_CENTER = tuple(range(8, 16))
CANONICAL_RESIDUE = tuple(range(9, 16))
CANONICAL_COMPLEMENT = tuple(range(1, 8))


@_dataclass(frozen=True)
class CenteredDecomposition:
    """The ingredients of a clique around one of its center points.

    ``mapping[i]`` is the position in ``y_points`` of ``delta(x_points[i])``; ``plus_half[i]`` is
    ``x_points[i] | delta(x_points[i])`` and ``minus_half[i]`` is ``x_points[i] | (O \\ delta(x_points[i]))``.
    """

    center: ElementSet
    residue_set: ElementSet
    x_points: tuple[ElementSet, ...]
    y_points: tuple[ElementSet, ...]
    mapping: tuple[int, ...]
    plus_half: tuple[ElementSet, ...]
    minus_half: tuple[ElementSet, ...]

    @property
    def residue_element(self) -> int:
        (element,) = tuple(ElementSet(self.center.bits & ~self.residue_set.bits, self.center.ground_size))
        return element

    def pairs(self) -> dict[ElementSet, ElementSet]:
        return {x: self.y_points[j] for x, j in zip(self.x_points, self.mapping)}

    @property
    def delta(self) -> FanoBijection:
        if len(self.x_points) != 7:
            raise _ParameterError("bijection classes are defined for 7-point planes only")
        return FanoBijection(FanoPlane(self.x_points), FanoPlane(self.y_points), self.mapping)


def _check_half_clique(points: _Sequence[ElementSet], m: int, size: int, within: int, name: str) -> None:
    if len(points) != size:
        raise _CliqueError(f"{name} must have {size} points, got {len(points)}")
    for p in points:
        if len(p) != m:
            raise _CliqueError(f"{name} point {p} does not have {m} elements")
        if p.bits & ~within:
            raise _CliqueError(f"{name} point {p} leaves its ground set")
    for a, b in _combinations(points, 2):
        if (a.bits & b.bits).bit_count() != m // 2:
            raise _CliqueError(f"{name} points {a} and {b} do not meet in {m // 2} elements")


def product_clique(
    geometry: Geometry,
    center: ElementSet,
    x_points: _Sequence[ElementSet],
    y_points: _Sequence[ElementSet],
    mapping: _Sequence[int],
) -> Clique:
    """The product clique ``{O} | {x | delta(x)} | {x | (O \\ delta(x))}``, ``delta(x_i) = y_points[mapping[i]]``.

    Points come out as the plus half in ``x_points`` order, then ``O``, then the minus half.
    """
    m, n = geometry.m, geometry.n
    if m < 2:
        raise _ParameterError("products need m >= 2")
    geometry.check_point(center)
    size = 2 * m - 1
    outside = ((1 << n) - 1) << 1 & ~center.bits

    _check_half_clique(x_points, m, size, outside, "X")
    _check_half_clique(y_points, m, size, center.bits, "Y")
    y_union = 0
    for y in y_points:
        y_union |= y.bits
    if y_union.bit_count() > size:
        raise _CliqueError(f"Y spans {y_union.bit_count()} elements of O, more than {size}")
    if sorted(mapping) != list(range(size)):
        raise _ParameterError(f"{tuple(mapping)} is not a bijection of {size} points")

    plus = [ElementSet(x.bits | y_points[j].bits, n) for x, j in zip(x_points, mapping)]
    minus = [ElementSet(x.bits | (center.bits & ~y_points[j].bits), n) for x, j in zip(x_points, mapping)]
    clique = Clique(geometry, [*plus, center, *minus])

    if not _is_center(clique, center):
        raise _AssumptionError(f"{center} is not a center point of its own product")
    return clique


def product_from_bijection(geometry: Geometry, center: ElementSet, delta: FanoBijection) -> Clique:
    return product_clique(geometry, center, delta.source.points, delta.target.points, delta.mapping)


def default_residue_set(center: ElementSet) -> ElementSet:
    """``O`` minus its largest element."""
    largest = max(center)
    return ElementSet(center.bits & ~(1 << largest), center.ground_size)


def decompose(
    clique: Clique, center: ElementSet, residue_set: _Optional[ElementSet] = None
) -> CenteredDecomposition:
    geometry = clique.geometry
    m, n = geometry.m, geometry.n
    if len(clique) != n:
        raise _CliqueError(f"only maximal cliques of size {n} decompose, got {len(clique)} points")
    if not _is_center(clique, center):
        raise _CliqueError(f"{center} is not a center point of the clique")
    residue_set = residue_set if residue_set is not None else default_residue_set(center)
    if not residue_set.issubset(center) or len(residue_set) != 2 * m - 1:
        raise _ParameterError(f"{residue_set} is not a {2 * m - 1}-subset of {center}")

    containing: dict[int, list[int]] = {}
    for point in clique.masks:
        if point == center.bits:
            continue
        containing.setdefault(point & ~center.bits, []).append(point)
    if len(containing) != 2 * m - 1 or any(len(v) != 2 for v in containing.values()):
        raise _AssumptionError("points off the center do not pair up over 2m - 1 outside parts")

    x_masks = sorted(containing)
    plus, minus, deltas = [], [], []
    for x in x_masks:
        first, second = containing[x]
        if (first & center.bits) & ~residue_set.bits:
            first, second = second, first
        if (first & center.bits) & ~residue_set.bits:
            raise _AssumptionError(f"neither point over {ElementSet(x, n)} has its O part inside Z")
        plus.append(ElementSet(first, n))
        minus.append(ElementSet(second, n))
        deltas.append(first & center.bits)

    y_masks = sorted(deltas)
    mapping = tuple(y_masks.index(d) for d in deltas)
    return CenteredDecomposition(
        center=center,
        residue_set=residue_set,
        x_points=tuple(ElementSet(x, n) for x in x_masks),
        y_points=tuple(ElementSet(y, n) for y in y_masks),
        mapping=mapping,
        plus_half=tuple(plus),
        minus_half=tuple(minus),
    )


def switch_residue(decomposition: CenteredDecomposition, residue_set: ElementSet) -> CenteredDecomposition:
    """The same clique decomposed against another ``Z``: each ``Y`` containing ``O \\ Z`` becomes ``O \\ Y``.

    The plus and minus points over such a ``Y`` trade places.
    """
    center = decomposition.center
    if not residue_set.issubset(center) or len(residue_set) != len(decomposition.residue_set):
        raise _ParameterError(f"{residue_set} is not a {len(decomposition.residue_set)}-subset of {center}")
    dropped = center.bits & ~residue_set.bits
    n = center.ground_size

    deltas, plus, minus = [], [], []
    for x, j, p, q in zip(
        decomposition.x_points, decomposition.mapping, decomposition.plus_half, decomposition.minus_half
    ):
        y = decomposition.y_points[j].bits
        if y & dropped:
            y, p, q = center.bits & ~y, q, p
        deltas.append(y)
        plus.append(p)
        minus.append(q)

    y_masks = sorted(deltas)
    return CenteredDecomposition(
        center=center,
        residue_set=residue_set,
        x_points=decomposition.x_points,
        y_points=tuple(ElementSet(y, n) for y in y_masks),
        mapping=tuple(y_masks.index(d) for d in deltas),
        plus_half=tuple(plus),
        minus_half=tuple(minus),
    )


def hyperplane_complement_clique(k: int) -> Clique:
    """Complements of the hyperplanes of the binary space of dimension ``k``, ground elements read as vectors.

    Block ``a`` (for ``a = 1 .. 2^k - 1``) is ``{c : <a, c> odd}``; the result is a singular subspace.
    The clique carries the full point roster of its geometry, so ``k`` is capped by ``geometry.max_points``:
    the default cap admits ``k <= 4`` and ``k = 5`` (``C(31, 16)`` points) raises ``ParameterError``.
    """
    if k < 3:
        raise _ParameterError(f"hyperplane complements need k >= 3, got {k}")
    geometry = _geometry_for(k)
    n = geometry.n
    points = []
    for a in range(1, n + 1):
        points.append(ElementSet(_mask_of(c for c in range(1, n + 1) if (a & c).bit_count() % 2), n))
    return Clique(geometry, points)


# Signed labels -7..7 name the elements of [15]: -i -> 8 - i, 0 -> 8, i -> 8 + i.
def signed_element(label: int) -> int:
    if not -7 <= label <= 7:
        raise _ParameterError(f"signed label {label} outside -7..7")
    return 8 + label


def signed_set(labels: _Iterable[int]) -> ElementSet:
    return ElementSet(_mask_of(signed_element(i) for i in labels), 15)


def pair_point(i: int, j: int) -> ElementSet:
    """``{0, i, j, 7}`` together with the negatives ``-1 .. -6`` other than ``-i, -j``."""
    return signed_set([0, i, j, 7, *(-s for s in range(1, 7) if s not in (i, j))])


def triple_point(i: int, j: int, t: int) -> ElementSet:
    """``{-7, 0, i, j, t}`` together with the negatives ``-1 .. -6`` other than ``-i, -j, -t``."""
    return signed_set([-7, 0, i, j, t, *(-s for s in range(1, 7) if s not in (i, j, t))])


def _paired(*labels: int) -> ElementSet:
    return signed_set([sign * i for i in labels for sign in (1, -1)])


@_dataclass(frozen=True)
class NonCenteredParts:
    plane: tuple[ElementSet, ...]
    y_point: ElementSet
    switched_plane: tuple[ElementSet, ...]
    span: tuple[ElementSet, ...]


def non_centered_parts() -> NonCenteredParts:
    """The pieces the non-centered clique is assembled from.

    ``plane`` is spanned by the line ``{+-1..4}, {+-1,2,5,6}, {+-3..6}`` and the point ``{+-1,3,5,7}``.
    ``y_point`` is ``{0, 1, ..., 7}``. ``switched_plane`` collects ``y_point △ P`` over the three pair points
    and four triple points, and ``span`` is the 15-point singular subspace generated by ``switched_plane``
    and ``y_point``.
    """
    geometry = _geometry_for(4)
    line = (_paired(1, 2, 3, 4), _paired(1, 2, 5, 6), _paired(3, 4, 5, 6))
    apex = _paired(1, 3, 5, 7)
    plane = (*line, apex, *(ElementSet(apex.bits ^ p.bits, 15) for p in line))
    y_point = signed_set(range(0, 8))
    others = (pair_point(1, 3), pair_point(2, 5), pair_point(4, 6))
    others += (triple_point(1, 2, 4), triple_point(1, 5, 6), triple_point(2, 3, 6), triple_point(3, 4, 5))
    switched = tuple(ElementSet(y_point.bits ^ p.bits, 15) for p in others)
    span = tuple(_singular_span(geometry, [*switched, y_point]))
    return NonCenteredParts(plane=plane, y_point=y_point, switched_plane=switched, span=span)


def non_centered_clique() -> Clique:
    """The maximal clique of P_4(15) without a center point: ``(S \\ F') | F``."""
    parts = non_centered_parts()
    switched = {p.bits for p in parts.switched_plane}
    rest = [p for p in parts.span if p.bits not in switched]
    rest.sort(key=lambda p: (p != parts.y_point, p.bits))

    clique = Clique(_geometry_for(4), [*parts.plane, *rest])
    if len(clique) != 15:
        raise _AssumptionError(f"non-centered clique has {len(clique)} points, expected 15")
    if _center_points(clique):
        raise _AssumptionError("non-centered clique has a center point")
    return clique


def canonical_planes() -> tuple[FanoPlane, FanoPlane]:
    return (
        _canonical_plane(ElementSet.of(CANONICAL_COMPLEMENT, 15)),
        _canonical_plane(ElementSet.of(CANONICAL_RESIDUE, 15)),
    )


def canonical_product(index: int) -> Clique:
    """Product over ``O = {8..15}`` with ``Z = {9..15}``, canonical planes and the index representative."""
    x_plane, y_plane = canonical_planes()
    delta = _representative_of_index(x_plane, y_plane, index)
    return product_from_bijection(_geometry_for(4), ElementSet.of(CANONICAL_CENTER, 15), delta)


@_dataclass(frozen=True)
class RandomProduct:
    clique: Clique
    center: ElementSet
    residue_set: ElementSet
    delta: FanoBijection


def random_product(rng: _random.Random) -> RandomProduct:
    """A product clique of P_4(15) over a random center, ``Z``, pair of planes and bijection."""
    geometry = _geometry_for(4)
    center = ElementSet.of(rng.sample(range(1, 16), 8), 15)
    dropped = rng.choice(list(center))
    residue = ElementSet(center.bits & ~(1 << dropped), 15)
    outside = ElementSet(((1 << 16) - 2) & ~center.bits, 15)
    x_plane = rng.choice(_fano_planes_on(outside))
    y_plane = rng.choice(_fano_planes_on(residue))
    images = list(range(7))
    rng.shuffle(images)
    delta = FanoBijection(x_plane, y_plane, tuple(images))
    return RandomProduct(product_from_bijection(geometry, center, delta), center, residue, delta)


@_dataclass(frozen=True)
class ProductCensus:
    center: ElementSet
    residue_set: ElementSet
    plane_pairs: int
    bijections: int
    distinct_products: int
    index_tally: dict[int, int]
    singular_full_index: int


def product_census(
    center: _Optional[ElementSet] = None,
    residue_set: _Optional[ElementSet] = None,
    all_planes: bool = False,
    limit: _Optional[int] = None,
) -> ProductCensus:
    """Every product over one center and one ``Z``, tallied by bijection index.

    With ``all_planes`` every pair of planes on ``[15] \\ O`` and ``Z`` is used (30 x 30 pairs),
    otherwise only the canonical pair. ``limit`` caps the bijections per pair. ``Z`` defaults to
    ``default_residue_set(center)``, the same choice ``decompose`` makes.
    """
    geometry = _geometry_for(4)
    center = center if center is not None else ElementSet.of(CANONICAL_CENTER, 15)
    geometry.check_point(center)
    residue_set = residue_set if residue_set is not None else default_residue_set(center)
    if not residue_set.issubset(center) or len(residue_set) != 7:
        raise _ParameterError(f"{residue_set} is not a 7-subset of {center}")
    outside = ElementSet(((1 << 16) - 2) & ~center.bits, 15)

    if all_planes:
        pairs = [(x, y) for x in _fano_planes_on(outside) for y in _fano_planes_on(residue_set)]
    else:
        pairs = [(_canonical_plane(outside), _canonical_plane(residue_set))]

    seen: set[Clique] = set()
    tally: _Counter = _Counter()
    bijections = 0
    singular = 0
    for x_plane, y_plane in _tqdm(pairs, leave=False, desc="Plane pairs"):
        for count, mapping in enumerate(_permutations(range(7))):
            if limit is not None and count >= limit:
                break
            delta = FanoBijection(x_plane, y_plane, mapping)
            clique = product_from_bijection(geometry, center, delta)
            index = _bijection_index(delta)
            tally[index] += 1
            bijections += 1
            seen.add(clique)
            if index == 7:
                if not _is_singular_subspace(geometry, clique):
                    raise _AssumptionError(f"index-7 product over {delta.mapping} is not singular")
                singular += 1

    if len(seen) != bijections:
        raise _AssumptionError(f"{bijections} bijections gave only {len(seen)} distinct products")
    _logger.debug(f"census over {len(pairs)} plane pairs: {bijections} bijections, {len(seen)} products")
    return ProductCensus(
        center=center,
        residue_set=residue_set,
        plane_pairs=len(pairs),
        bijections=bijections,
        distinct_products=len(seen),
        index_tally=dict(sorted(tally.items())),
        singular_full_index=singular,
    )
