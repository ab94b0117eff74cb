"""Collinearity graph of a geometry and maximal-clique enumeration over it.

Adjacency rows are Python integers used as bitsets over vertex indices, which keeps the
Bron–Kerbosch recursion to a handful of ``&``/``|`` operations per call.
"""

from __future__ import annotations

from dataclasses import dataclass as _dataclass
from itertools import islice as _islice
from typing import Iterator as _Iterator, Optional as _Optional, Sequence as _Sequence

import numpy as _np
from more_itertools import chunked as _chunked
from tqdm import tqdm as _tqdm  # type: ignore

from simplexdesigns import setting as _setting
from simplexdesigns.combinatorics import iter_bits as _iter_bits
from simplexdesigns.exceptions import AssumptionError as _AssumptionError, GeometryError as _GeometryError
from simplexdesigns.geometry import Geometry
from simplexdesigns.logger import logger as _logger


@_dataclass(frozen=True)
class CollinearityGraph:
    geometry: Geometry
    adjacency: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.adjacency)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return list(_iter_bits(self.adjacency[v]))


def incidence_array(masks: _Sequence[int], n: int) -> _np.ndarray:
    """Rows are subsets, columns are elements 1..n."""
    packed = _np.array(masks, dtype=_np.int64)
    return ((packed[:, None] >> _np.arange(1, n + 1)) & 1).astype(_np.float32)


def build_graph(g: Geometry, chunk_size: _Optional[int] = None) -> CollinearityGraph:
    chunk_size = chunk_size or _setting("graph.chunk_size", 512)
    incidence = incidence_array(g.points, g.n)

    rows: list[int] = []
    for chunk in _tqdm(
        list(_chunked(range(len(g)), chunk_size)), leave=False, desc=f"Adjacency of P_{g.m}({g.n})"
    ):
        start, stop = chunk[0], chunk[-1] + 1
        # float32 products are exact here: intersections never exceed 2m <= 32
        block = incidence[start:stop] @ incidence.T
        packed = _np.packbits(block == g.m, axis=1, bitorder="little")
        rows.extend(int.from_bytes(row.tobytes(), "little") for row in packed)

    _logger.debug(f"collinearity graph of P_{g.m}({g.n}): {len(rows)} vertices")
    return CollinearityGraph(geometry=g, adjacency=tuple(rows))


def degeneracy_order(adjacency: _Sequence[int], candidates: int) -> list[int]:
    """Vertices of ``candidates`` in smallest-last order."""
    remaining = candidates
    order = []
    degrees = {v: (adjacency[v] & candidates).bit_count() for v in _iter_bits(candidates)}
    while remaining:
        v = min(degrees, key=lambda u: (degrees[u], u))
        order.append(v)
        del degrees[v]
        remaining &= ~(1 << v)
        for u in _iter_bits(adjacency[v] & remaining):
            degrees[u] -= 1
    return order


def _pivot(adjacency: _Sequence[int], p: int, x: int) -> int:
    best, best_count = -1, -1
    for u in _iter_bits(p | x):
        count = (p & adjacency[u]).bit_count()
        if count > best_count:
            best, best_count = u, count
    return best


def _expand(adjacency: _Sequence[int], r: list[int], p: int, x: int, min_size: int) -> _Iterator[list[int]]:
    if not p and not x:
        yield r
        return
    if len(r) + p.bit_count() < min_size:
        return

    pivot = _pivot(adjacency, p, x)
    for v in _iter_bits(p & ~adjacency[pivot]):
        neighbours = adjacency[v]
        yield from _expand(adjacency, r + [v], p & neighbours, x & neighbours, min_size)
        p &= ~(1 << v)
        x |= 1 << v


def maximal_cliques(
    adjacency: _Sequence[int],
    *,
    through: _Optional[int] = None,
    limit: _Optional[int] = None,
    min_size: int = 0,
) -> _Iterator[list[int]]:
    """Maximal cliques as ascending vertex-index lists, by Bron–Kerbosch with pivoting.

    The outer level walks a degeneracy ordering. ``through`` restricts the search to cliques
    containing that vertex; ``min_size`` prunes branches that cannot reach the size.
    """
    everything = (1 << len(adjacency)) - 1

    def outer() -> _Iterator[list[int]]:
        if through is not None:
            if not 0 <= through < len(adjacency):
                raise _GeometryError(f"vertex {through} is not in the graph")
            yield from _expand(adjacency, [through], adjacency[through], 0, min_size)
            return

        if len(adjacency) > 5_000:
            _logger.warning(f"computing a degeneracy order over {len(adjacency)} vertices")
        p, x = everything, 0
        for v in degeneracy_order(adjacency, everything):
            neighbours = adjacency[v]
            yield from _expand(adjacency, [v], p & neighbours, x & neighbours, min_size)
            p &= ~(1 << v)
            x |= 1 << v

    cliques = (sorted(clique) for clique in outer())
    return cliques if limit is None else _islice(cliques, limit)


def enumerate_maximal_cliques(
    graph: CollinearityGraph,
    *,
    limit: _Optional[int] = None,
    through: _Optional[int] = None,
    sorted_output: bool = False,
) -> _Iterator[list[int]]:
    """Maximal cliques of a collinearity graph.

    Every clique is checked against the Ryser bound ``|C| <= n``. With ``sorted_output`` the
    stream is collected and emitted in lexicographic order of the vertex lists.
    """
    n = graph.geometry.n

    def checked() -> _Iterator[list[int]]:
        emitted = 0
        for clique in maximal_cliques(graph.adjacency, through=through, limit=limit):
            if len(clique) > n:
                raise _AssumptionError(f"clique of size {len(clique)} exceeds the bound n={n}")
            emitted += 1
            yield clique
        _logger.debug(f"emitted {emitted} maximal cliques of P_{graph.geometry.m}({n})")

    if sorted_output:
        return iter(sorted(checked()))
    return checked()
