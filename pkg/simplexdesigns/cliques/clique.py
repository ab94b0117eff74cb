from __future__ import annotations

from typing import Iterable as _Iterable, Iterator as _Iterator, Sequence as _Sequence

from simplexdesigns.combinatorics import ElementSet, Permutation, apply as _apply
from simplexdesigns.exceptions import CliqueError as _CliqueError, GeometryError as _GeometryError
from simplexdesigns.geometry import Geometry, Line, line_from_masks


class Clique:
    """Mutually collinear points of a geometry, kept in the order they were given.

    Equality and hashing ignore that order.
    """

    def __init__(self, geometry: Geometry, points: _Iterable[ElementSet]):
        self.geometry = geometry
        self.points = tuple(points)

        try:
            for x in self.points:
                geometry.check_point(x)
        except _GeometryError as exc:
            raise _CliqueError(str(exc)) from exc

        self.masks = tuple(x.bits for x in self.points)
        if len(set(self.masks)) != len(self.masks):
            raise _CliqueError("clique lists a point twice")
        for i, a in enumerate(self.masks):
            for b in self.masks[i + 1 :]:
                if (a & b).bit_count() != geometry.m:
                    raise _CliqueError(
                        f"{ElementSet(a, geometry.n)} and {ElementSet(b, geometry.n)} are not collinear"
                    )
        if len(self.points) > geometry.n:
            raise _CliqueError(f"{len(self.points)} mutually collinear points exceed n={geometry.n}")

        self._mask_set = frozenset(self.masks)

    @classmethod
    def from_vertices(cls, geometry: Geometry, vertices: _Sequence[int]) -> Clique:
        return cls(geometry, (geometry.point(v) for v in vertices))

    @property
    def vertices(self) -> list[int]:
        return sorted(self.geometry.index[mask] for mask in self.masks)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> _Iterator[ElementSet]:
        return iter(self.points)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, ElementSet) and x.bits in self._mask_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clique):
            return NotImplemented
        return self.geometry.n == other.geometry.n and self._mask_set == other._mask_set

    def __hash__(self) -> int:
        return hash((self.geometry.n, self._mask_set))

    def __repr__(self) -> str:
        return f"Clique({len(self)} points of P_{self.geometry.m}({self.geometry.n}))"

    def is_maximal(self) -> bool:
        if len(self) == self.geometry.n:
            return True
        m = self.geometry.m
        for candidate in self.geometry.points:
            if candidate in self._mask_set:
                continue
            if all((candidate & a).bit_count() == m for a in self.masks):
                return False
        return True

    def relabel(self, p: Permutation) -> Clique:
        return Clique(self.geometry, (_apply(p, x) for x in self.points))


def _is_center(clique: Clique, x: int) -> bool:
    masks = clique._mask_set
    return all(x ^ y in masks for y in clique.masks if y != x)


def center_points(clique: Clique) -> list[ElementSet]:
    """Points ``X`` of the clique with ``X △ Y`` in the clique for every other member ``Y``."""
    n = clique.geometry.n
    return [ElementSet(x, n) for x in sorted(clique.masks) if _is_center(clique, x)]


def is_center(clique: Clique, x: ElementSet) -> bool:
    return x in clique and _is_center(clique, x.bits)


def lines_inside(clique: Clique) -> list[Line]:
    masks = clique._mask_set
    ordered = sorted(masks)
    lines = []
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            c = a ^ b
            if c > b and c in masks:
                lines.append(line_from_masks(a, b, clique.geometry.n))
    return lines


def planes_inside(clique: Clique) -> list[frozenset[ElementSet]]:
    """Seven-point singular subspaces contained in the clique, sorted by their smallest masks."""
    masks = clique._mask_set
    n = clique.geometry.n
    planes = set()
    for line in lines_inside(clique):
        a, b, c = line.masks
        for p in clique.masks:
            if p in (a, b, c):
                continue
            if p ^ a in masks and p ^ b in masks and p ^ c in masks:
                planes.add(frozenset((a, b, c, p, p ^ a, p ^ b, p ^ c)))
    return [frozenset(ElementSet(x, n) for x in plane) for plane in sorted(planes, key=sorted)]
