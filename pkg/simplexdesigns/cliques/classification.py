from __future__ import annotations

from dataclasses import dataclass as _dataclass
from enum import Enum as _Enum
from typing import Optional as _Optional

from simplexdesigns.cliques.clique import (
    Clique,
    center_points as _center_points,
    lines_inside as _lines_inside,
    planes_inside as _planes_inside,
)
from simplexdesigns.combinatorics import ElementSet
from simplexdesigns.constructions import decompose as _decompose
from simplexdesigns.exceptions import ClassificationError as _ClassificationError, CliqueError as _CliqueError
from simplexdesigns.fano import bijection_index as _bijection_index
from simplexdesigns.geometry import is_singular_subspace as _is_singular_subspace
from simplexdesigns.logger import logger as _logger


class CliqueType(str, _Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    NON_CENTERED = "NON_CENTERED"


TYPE_BY_INDEX = {7: CliqueType.C1, 3: CliqueType.C2, 1: CliqueType.C3, 0: CliqueType.C4}


@_dataclass(frozen=True)
class CliqueClass:
    tag: CliqueType
    centers: tuple[ElementSet, ...]
    lines: int
    planes: int
    center: _Optional[ElementSet] = None
    index: _Optional[int] = None


def classify_clique(clique: Clique) -> CliqueClass:
    """Type of a maximal clique of P_4(15).

    The tag comes from the index of the bijection obtained by decomposing at the smallest center point.
    It is then checked against the structure of the clique itself: its center points, the lines it
    contains (always ``7 + 4 * index``) and the planes it contains.
    """
    geometry = clique.geometry
    if geometry.k != 4 or len(clique) != geometry.n:
        raise _CliqueError(f"classification needs a 15-point maximal clique of P_4(15), got {clique!r}")

    centers = tuple(_center_points(clique))
    lines = _lines_inside(clique)
    planes = _planes_inside(clique)

    if not centers:
        result = CliqueClass(CliqueType.NON_CENTERED, centers, len(lines), len(planes))
        _logger.debug(f"clique without center points: {len(lines)} lines, {len(planes)} planes")
        return result

    center = centers[0]
    decomposition = _decompose(clique, center)
    index = _bijection_index(decomposition.delta)
    if index not in TYPE_BY_INDEX:
        raise _ClassificationError(f"bijection index {index} is not one of {sorted(TYPE_BY_INDEX)}")
    tag = TYPE_BY_INDEX[index]
    result = CliqueClass(tag, centers, len(lines), len(planes), center=center, index=index)

    _check_structure(clique, result, lines, planes)
    return result


def _check_structure(clique: Clique, result: CliqueClass, lines, planes) -> None:
    def fail(reason: str):
        raise _ClassificationError(f"index route says {result.tag.value} but {reason}")

    if result.lines != 7 + 4 * result.index:
        fail(f"the clique contains {result.lines} lines")

    expected = {CliqueType.C1: (15, 15), CliqueType.C2: (3, 3), CliqueType.C3: (1, 1), CliqueType.C4: (1, 0)}
    centers, plane_count = expected[result.tag]
    if len(result.centers) != centers:
        fail(f"it has {len(result.centers)} center points")
    if len(planes) != plane_count:
        fail(f"it contains {len(planes)} planes")

    center_masks = {c.bits for c in result.centers}
    if result.tag is CliqueType.C1:
        if not _is_singular_subspace(clique.geometry, clique):
            fail("it is not a singular subspace")
    elif result.tag is CliqueType.C2:
        common = frozenset.intersection(*planes)
        if {p.bits for p in common} != center_masks:
            fail("its three planes do not meet in the line of center points")
        if any(not any(set(line) <= plane for plane in planes) for line in lines):
            fail("a line lies outside its three planes")
    elif result.tag is CliqueType.C3:
        (plane,) = planes
        if result.center not in plane:
            fail("the center point is off its plane")
        if any(not (set(line) <= plane or result.center in line) for line in lines):
            fail("a line misses both the plane and the center point")
    else:
        if any(result.center not in line for line in lines):
            fail("a line misses the center point")
