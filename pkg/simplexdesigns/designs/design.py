"""Symmetric designs with parameters ``(v, (v + 1) / 2, (v + 1) / 4)`` and their text form.

A design is stored block by block; block ``i`` is row ``i`` of the incidence matrix and point ``j`` is
column ``j``. The text form is one row per line of ``0``/``1`` characters. A ``(v + 1)``-square matrix
with an all-zero first row and column is read as the 0/1 rendering of a normalized Hadamard matrix and
its border is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass as _dataclass
from itertools import combinations as _combinations
from pathlib import Path as _Path
from typing import Union as _Union

import numpy as _np

from simplexdesigns.cliques.clique import Clique
from simplexdesigns.combinatorics import ElementSet, Permutation, apply as _apply, mask_of as _mask_of
from simplexdesigns.exceptions import (
    CliqueError as _CliqueError,
    DesignError as _DesignError,
    ParseError as _ParseError,
)
from simplexdesigns.geometry import geometry_for as _geometry_for


@_dataclass(frozen=True)
class Design:
    v: int
    blocks: tuple[ElementSet, ...]

    def __post_init__(self):
        if self.v < 3 or (self.v + 1) % 4:
            raise _DesignError(f"v={self.v} is not of the form 4t - 1")
        if len(self.blocks) != self.v:
            raise _DesignError(f"a symmetric design on {self.v} points has {self.v} blocks, got {len(self.blocks)}")
        for i, block in enumerate(self.blocks, start=1):
            if block.ground_size != self.v:
                raise _DesignError(f"block {i} lives in [{block.ground_size}], not [{self.v}]")
            if len(block) != self.block_size:
                raise _DesignError(f"block {i} has {len(block)} points, expected {self.block_size}")
        for (i, a), (j, b) in _combinations(enumerate(self.blocks, start=1), 2):
            common = (a.bits & b.bits).bit_count()
            if common != self.lam:
                raise _DesignError(f"blocks {i} and {j} meet in {common} points, expected {self.lam}")

    @property
    def block_size(self) -> int:
        return (self.v + 1) // 2

    @property
    def lam(self) -> int:
        return (self.v + 1) // 4

    @property
    def parameters(self) -> tuple[int, int, int]:
        return self.v, self.block_size, self.lam

    def incidence_matrix(self) -> _np.ndarray:
        matrix = _np.zeros((self.v, self.v), dtype=_np.int8)
        for i, block in enumerate(self.blocks):
            for point in block:
                matrix[i, point - 1] = 1
        return matrix

    @classmethod
    def from_incidence(cls, matrix: _np.ndarray) -> Design:
        matrix = _np.asarray(matrix)
        v = matrix.shape[0]
        if matrix.ndim != 2 or matrix.shape[1] != v:
            raise _DesignError(f"incidence matrix must be square, got shape {matrix.shape}")
        blocks = tuple(ElementSet(_mask_of(int(j) + 1 for j in _np.flatnonzero(row)), v) for row in matrix)
        return cls(v, blocks)

    def relabel(self, p: Permutation) -> Design:
        return Design(self.v, tuple(_apply(p, block) for block in self.blocks))

    def same_blocks(self, other: Design) -> bool:
        return self.v == other.v and set(self.blocks) == set(other.blocks)


def design_from_clique(clique: Clique) -> Design:
    """Blocks are the clique's points in clique order."""
    n = clique.geometry.n
    if len(clique) != n:
        raise _CliqueError(f"a design needs {n} points of the clique, got {len(clique)}")
    return Design(n, tuple(clique.points))


def clique_from_design(design: Design) -> Clique:
    k = (design.v + 1).bit_length() - 1
    if 2**k - 1 != design.v:
        raise _DesignError(f"v={design.v} is not 2^k - 1, so the blocks are not points of a subset geometry")
    return Clique(_geometry_for(k), design.blocks)


def parse_incidence(text: str) -> _np.ndarray:
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = "".join(line.split())
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise _ParseError(f"line {number} contains characters other than 0 and 1: {line!r}")
        rows.append([int(c) for c in line])

    if not rows:
        raise _ParseError("no matrix rows found")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise _ParseError(f"rows have differing lengths {sorted({len(row) for row in rows})}")
    if width != len(rows):
        raise _ParseError(f"matrix is {len(rows)} x {width}, not square")

    matrix = _np.array(rows, dtype=_np.int8)
    if width % 2 == 0 and not matrix[0].any() and not matrix[:, 0].any():
        matrix = matrix[1:, 1:]
    return matrix


def render_incidence(design: Design) -> str:
    return "\n".join(block.as_row() for block in design.blocks) + "\n"


def load_design(path: _Union[str, _Path]) -> Design:
    path = _Path(path)
    try:
        text = path.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise _ParseError(f"cannot read {path}: {exc}") from exc
    return Design.from_incidence(parse_incidence(text))


def write_design(design: Design, path: _Union[str, _Path]) -> None:
    _Path(path).write_text(render_incidence(design))
