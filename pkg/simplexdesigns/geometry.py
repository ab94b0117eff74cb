"""The geometry of ``2m``-subsets of ``[n]`` with ``m = 2^(k-2)`` and ``n = 2^k - 1``.

Two points are collinear when they meet in exactly ``m`` elements; the line through them is
``{X, Y, X △ Y}``. Points are held as ascending bitmasks so that roster order, vertex index and mask
order all agree.
"""

from __future__ import annotations

import functools as _functools
import math as _math
from dataclasses import dataclass as _dataclass
from itertools import combinations as _combinations
from typing import Iterable as _Iterable, Iterator as _Iterator

from pydantic import BaseModel as _BaseModel, validator as _validator

from simplexdesigns import setting as _setting
from simplexdesigns.combinatorics import (
    ElementSet,
    MAX_GROUND_SIZE as _MAX_GROUND_SIZE,
    mask_of as _mask_of,
)
from simplexdesigns.exceptions import (
    GeometryError as _GeometryError,
    ParameterError as _ParameterError,
    SpanError as _SpanError,
)
from simplexdesigns.logger import logger as _logger


class GeometryParams(_BaseModel):
    k: int
    m: int
    n: int

    class Config:
        frozen = True

    @_validator("k")
    def k_in_range(cls, v):
        if v < 2 or 2**v - 1 > _MAX_GROUND_SIZE:
            raise ValueError(f"k={v} gives a ground set outside [3, {_MAX_GROUND_SIZE}]")
        return v

    @_validator("m")
    def m_is_power_of_two(cls, v, values):
        if "k" in values and v != 2 ** (values["k"] - 2):
            raise ValueError(f"m={v} is not 2^(k-2) for k={values['k']}")
        return v

    @_validator("n")
    def n_matches_m(cls, v, values):
        if "m" in values and v != 4 * values["m"] - 1:
            raise ValueError(f"n={v} is not 4m-1 for m={values['m']}")
        return v

    @classmethod
    def from_k(cls, k: int) -> GeometryParams:
        try:
            return cls(k=k, m=2 ** (k - 2) if k >= 2 else 0, n=2**k - 1)
        except ValueError as exc:
            raise _ParameterError(str(exc)) from exc


class Geometry:
    def __init__(self, params: GeometryParams, points: tuple[int, ...]):
        self.params = params
        self.points = points
        self.index = {mask: i for i, mask in enumerate(points)}

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def n(self) -> int:
        return self.params.n

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> _Iterator[ElementSet]:
        return (ElementSet(mask, self.n) for mask in self.points)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, ElementSet) and x.ground_size == self.n and x.bits in self.index

    def __repr__(self) -> str:
        return f"Geometry(k={self.k}, m={self.m}, n={self.n}, points={len(self)})"

    def point(self, i: int) -> ElementSet:
        return ElementSet(self.points[i], self.n)

    def position(self, x: ElementSet) -> int:
        self.check_point(x)
        return self.index[x.bits]

    def check_point(self, x: ElementSet) -> None:
        if x.ground_size != self.n:
            raise _GeometryError(f"{x} lives in [{x.ground_size}], not [{self.n}]")
        if x.bits not in self.index:
            raise _GeometryError(f"{x} is not a {2 * self.m}-subset of [{self.n}]")


def build_geometry(params: GeometryParams) -> Geometry:
    n, size = params.n, 2 * params.m
    count = _math.comb(n, size)
    max_points = _setting("geometry.max_points", 100_000)
    if count > max_points:
        raise _ParameterError(f"P_{params.m}({n}) has {count} points, above geometry.max_points={max_points}")

    points = tuple(sorted(_mask_of(c) for c in _combinations(range(1, n + 1), size)))
    _logger.debug(f"built roster of P_{params.m}({n}) with {len(points)} points")
    return Geometry(params, points)


@_functools.lru_cache(maxsize=None)
def geometry_for(k: int) -> Geometry:
    return build_geometry(GeometryParams.from_k(k))


@_dataclass(frozen=True)
class Line:
    points: tuple[ElementSet, ElementSet, ElementSet]

    def __iter__(self) -> _Iterator[ElementSet]:
        return iter(self.points)

    def __contains__(self, x: object) -> bool:
        return x in self.points

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.points) + "}"

    @property
    def masks(self) -> tuple[int, int, int]:
        a, b, c = self.points
        return a.bits, b.bits, c.bits


def line_from_masks(a: int, b: int, n: int) -> Line:
    first, second, third = sorted((a, b, a ^ b))
    return Line((ElementSet(first, n), ElementSet(second, n), ElementSet(third, n)))


def _masks_collinear(a: int, b: int, m: int) -> bool:
    return (a & b).bit_count() == m


def is_collinear(g: Geometry, x: ElementSet, y: ElementSet) -> bool:
    g.check_point(x)
    g.check_point(y)
    if x == y:
        raise _GeometryError(f"collinearity is defined for distinct points, got {x} twice")
    return _masks_collinear(x.bits, y.bits, g.m)


def line_through(g: Geometry, x: ElementSet, y: ElementSet) -> Line:
    if not is_collinear(g, x, y):
        raise _GeometryError(f"{x} and {y} meet in {(x.bits & y.bits).bit_count()} elements, not {g.m}")
    return line_from_masks(x.bits, y.bits, g.n)


def _checked_masks(g: Geometry, points: _Iterable[ElementSet]) -> set[int]:
    masks = set()
    for x in points:
        g.check_point(x)
        masks.add(x.bits)
    return masks


def _closed(masks: set[int], m: int) -> bool:
    ordered = sorted(masks)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            if _masks_collinear(a, b, m) and a ^ b not in masks:
                return False
    return True


def _pairwise_collinear(masks: set[int], m: int) -> bool:
    ordered = sorted(masks)
    return all(_masks_collinear(a, b, m) for i, a in enumerate(ordered) for b in ordered[i + 1 :])


def is_subspace(g: Geometry, points: _Iterable[ElementSet]) -> bool:
    return _closed(_checked_masks(g, points), g.m)


def is_singular_subspace(g: Geometry, points: _Iterable[ElementSet]) -> bool:
    masks = _checked_masks(g, points)
    return _pairwise_collinear(masks, g.m) and _closed(masks, g.m)


def singular_span(g: Geometry, points: _Iterable[ElementSet]) -> list[ElementSet]:
    """Smallest singular subspace containing ``points``, as points in ascending roster order.

    Raises ``SpanError`` when the points are not pairwise collinear or the closure produces a
    non-collinear pair.
    """
    masks = _checked_masks(g, points)
    if not _pairwise_collinear(masks, g.m):
        raise _SpanError("the given points are not pairwise collinear")

    span = set(masks)
    worklist = sorted(masks)
    while worklist:
        a = worklist.pop()
        for b in list(span):
            if a == b:
                continue
            if not _masks_collinear(a, b, g.m):
                raise _SpanError(f"closure contains non-collinear points {ElementSet(a, g.n)}, {ElementSet(b, g.n)}")
            c = a ^ b
            if c not in span:
                span.add(c)
                worklist.append(c)

    return [ElementSet(mask, g.n) for mask in sorted(span)]
