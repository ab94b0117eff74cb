from __future__ import annotations

import numpy as _np

from simplexdesigns.combinatorics import ElementSet, mask_of as _mask_of
from simplexdesigns.designs.design import Design
from simplexdesigns.exceptions import HadamardError as _HadamardError, ParameterError as _ParameterError


class HadamardMatrix:
    """A ``+1``/``-1`` matrix with ``H @ H.T == order * I``."""

    def __init__(self, entries):
        self.entries = _np.array(entries, dtype=_np.int64)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise _HadamardError(f"matrix must be square, got shape {self.entries.shape}")
        if not _np.isin(self.entries, (-1, 1)).all():
            raise _HadamardError("entries must be +1 or -1")

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HadamardMatrix):
            return NotImplemented
        return _np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"HadamardMatrix(order={self.order})"

    def is_hadamard(self) -> bool:
        return _np.array_equal(self.entries @ self.entries.T, self.order * _np.eye(self.order, dtype=_np.int64))

    def is_normalized(self) -> bool:
        return bool((self.entries[0] == 1).all() and (self.entries[:, 0] == 1).all())

    def render(self, style: str = "sign") -> str:
        """``sign`` writes ``+``/``-``; ``binary`` writes ``0`` for +1 and ``1`` for -1."""
        if style == "sign":
            symbols = {1: "+", -1: "-"}
        elif style == "binary":
            symbols = {1: "0", -1: "1"}
        else:
            raise _ParameterError(f"unknown Hadamard rendering {style!r}")
        return "\n".join("".join(symbols[int(x)] for x in row) for row in self.entries) + "\n"


def to_hadamard(design: Design) -> HadamardMatrix:
    """Border of +1; block ``i`` contributes row ``i + 1`` with -1 at its points."""
    order = design.v + 1
    entries = _np.ones((order, order), dtype=_np.int64)
    entries[1:, 1:] = 1 - 2 * design.incidence_matrix().astype(_np.int64)
    matrix = HadamardMatrix(entries)
    if not matrix.is_hadamard():
        raise _HadamardError("design did not produce an orthogonal matrix")
    return matrix


def from_hadamard(matrix: HadamardMatrix) -> Design:
    if not matrix.is_hadamard():
        raise _HadamardError("rows are not pairwise orthogonal")
    if not matrix.is_normalized():
        raise _HadamardError("first row and column must be all +1")
    v = matrix.order - 1
    blocks = tuple(
        ElementSet(_mask_of(int(j) + 1 for j in _np.flatnonzero(row == -1)), v) for row in matrix.entries[1:, 1:]
    )
    return Design(v, blocks)


def sylvester_hadamard(order: int) -> HadamardMatrix:
    """Sylvester doubling ``[[H, H], [H, -H]]`` from ``[[1]]``."""
    if order < 1 or order & (order - 1):
        raise _ParameterError(f"Sylvester matrices exist for powers of two, not {order}")
    entries = _np.array([[1]], dtype=_np.int64)
    while entries.shape[0] < order:
        entries = _np.block([[entries, entries], [entries, -entries]])
    return HadamardMatrix(entries)
