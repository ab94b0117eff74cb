"""Automorphism groups of designs and their orbits.

Permutations here are 0-based image tuples composed left to right: ``_mul(p, q)`` applies ``p`` and
then ``q``. The public surface takes and returns ``Permutation`` objects on ``1..v``.
"""

from __future__ import annotations

import math as _math
from dataclasses import dataclass as _dataclass, field as _field
from typing import Optional as _Optional, Sequence as _Sequence

from simplexdesigns.combinatorics import Permutation, apply_mask as _apply_mask
from simplexdesigns.designs.design import Design
from simplexdesigns.designs.isomorphism import iter_isomorphisms as _iter_isomorphisms
from simplexdesigns.exceptions import AssumptionError as _AssumptionError, GroupError as _GroupError
from simplexdesigns.logger import logger as _logger

Perm = tuple[int, ...]


def _mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def _inv(p: Perm) -> Perm:
    inverse = [0] * len(p)
    for i, image in enumerate(p):
        inverse[image] = i
    return tuple(inverse)


def _first_moved(p: Perm) -> _Optional[int]:
    for i, image in enumerate(p):
        if image != i:
            return i
    return None


def _orbit_transversal(point: int, generators: _Sequence[Perm], identity: Perm) -> dict[int, Perm]:
    """Maps each point ``q`` of the orbit of ``point`` to an element sending ``point`` to ``q``."""
    reps = {point: identity}
    queue = [point]
    for p in queue:
        for g in generators:
            q = g[p]
            if q not in reps:
                reps[q] = _mul(reps[p], g)
                queue.append(q)
    return reps


@_dataclass
class StabilizerChain:
    degree: int
    base: list[int] = _field(default_factory=list)
    strong_generators: list[Perm] = _field(default_factory=list)
    _transversals: dict[int, dict[int, Perm]] = _field(default_factory=dict, repr=False)

    def add_generator(self, g: Perm) -> None:
        self.strong_generators.append(g)
        self._transversals.clear()

    def add_base_point(self, point: int) -> None:
        self.base.append(point)
        self._transversals.clear()

    def generators_at(self, level: int) -> list[Perm]:
        fixed = self.base[:level]
        return [g for g in self.strong_generators if all(g[b] == b for b in fixed)]

    def transversal(self, level: int) -> dict[int, Perm]:
        if level not in self._transversals:
            self._transversals[level] = _orbit_transversal(
                self.base[level], self.generators_at(level), tuple(range(self.degree))
            )
        return self._transversals[level]

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Sift ``g`` from level ``start``; returns the residue and the level where sifting stopped."""
        for level in range(start, len(self.base)):
            image = g[self.base[level]]
            transversal = self.transversal(level)
            if image not in transversal:
                return g, level
            g = _mul(g, _inv(transversal[image]))
        return g, len(self.base)

    @property
    def order(self) -> int:
        return _math.prod(len(self.transversal(level)) for level in range(len(self.base)))


def schreier_sims(generators: _Sequence[Perm], degree: int) -> StabilizerChain:
    """Deterministic Schreier–Sims: a base and strong generating set for the group ``generators`` generate."""
    identity = tuple(range(degree))
    chain = StabilizerChain(degree)
    for g in generators:
        if g == identity:
            continue
        chain.add_generator(g)
        if all(g[b] == b for b in chain.base):
            chain.add_base_point(_first_moved(g))

    level = len(chain.base) - 1
    while level >= 0:
        transversal = chain.transversal(level)
        raised = None
        for point, u in list(transversal.items()):
            for s in chain.generators_at(level):
                schreier = _mul(_mul(u, s), _inv(transversal[s[point]]))
                residue, stopped = chain.strip(schreier, level + 1)
                if residue != identity:
                    if stopped == len(chain.base):
                        chain.add_base_point(_first_moved(residue))
                    chain.add_generator(residue)
                    raised = stopped
                    break
            if raised is not None:
                break
        level = raised if raised is not None else level - 1
    return chain


@_dataclass
class PermGroup:
    degree: int
    generators: list[Permutation]
    order: int
    elements: _Optional[list[Permutation]] = None

    def point_orbits(self) -> list[list[int]]:
        return _orbits(self.degree, [g.zero_based for g in self.generators], lambda x, g: g[x], offset=1)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [], 1, [Permutation.identity(degree)])


def _chain_from_elements(elements: list[Perm], degree: int) -> tuple[list[Perm], int]:
    """Generators and order read off a stabilizer chain of an explicit element list."""
    generators: list[Perm] = []
    order = 1
    current = elements
    while len(current) > 1:
        base = min(p for p in (_first_moved(e) for e in current) if p is not None)
        reps: dict[int, Perm] = {}
        for e in current:
            reps.setdefault(e[base], e)
        generators.extend(g for image, g in reps.items() if image != base)
        order *= len(reps)
        current = [e for e in current if e[base] == base]
    return generators, order


def automorphism_group(design: Design, materialize: bool = True) -> PermGroup:
    """All automorphisms by exhaustive isomorphism search from the design to itself.

    Generators come from a stabilizer chain of the element list. The order is confirmed three ways: the
    element count, the chain read off the elements and a Schreier–Sims run on the generators alone.
    """
    elements = [p.zero_based for p in _iter_isomorphisms(design, design)]
    identity = tuple(range(design.v))
    if identity not in elements:
        raise _AssumptionError("the identity is missing from the automorphisms found")

    generators, chain_order = _chain_from_elements(elements, design.v)
    sims_order = schreier_sims(generators, design.v).order
    if not len(elements) == chain_order == sims_order:
        raise _AssumptionError(
            f"group order disagrees: {len(elements)} elements, chain {chain_order}, Schreier-Sims {sims_order}"
        )
    _logger.debug(f"automorphism group of order {len(elements)} with {len(generators)} generators")

    return PermGroup(
        degree=design.v,
        generators=[Permutation.from_zero_based(g) for g in generators],
        order=len(elements),
        elements=[Permutation.from_zero_based(e) for e in elements] if materialize else None,
    )


def _orbits(size: int, generators: _Sequence[Perm], act, offset: int = 0) -> list[list[int]]:
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for x in range(size):
            a, b = find(x), find(act(x, g))
            if a != b:
                parent[max(a, b)] = min(a, b)

    orbits: dict[int, list[int]] = {}
    for x in range(size):
        orbits.setdefault(find(x), []).append(x + offset)
    return sorted(orbits.values())


def _block_images(design: Design, group: PermGroup) -> list[list[int]]:
    """For each generator, the index of the image of each block."""
    position = {block.bits: i for i, block in enumerate(design.blocks)}
    images = []
    for g in group.generators:
        row = []
        for block in design.blocks:
            image = _apply_mask(g.images, block.bits)
            if image not in position:
                raise _GroupError(f"{g} does not preserve the design")
            row.append(position[image])
        images.append(row)
    return images


def _check_degree(design: Design, group: PermGroup) -> None:
    if group.degree != design.v:
        raise _GroupError(f"group acts on {group.degree} points, design has {design.v}")


def point_orbit_count(design: Design, group: PermGroup) -> int:
    _check_degree(design, group)
    _block_images(design, group)
    return len(group.point_orbits())


def block_orbit_count(design: Design, group: PermGroup) -> int:
    _check_degree(design, group)
    tables = _block_images(design, group)
    return len(_orbits(design.v, [tuple(t) for t in tables], lambda x, t: t[x]))


def flag_orbit_count(design: Design, group: PermGroup) -> int:
    """Orbits on incident (point, block) pairs."""
    _check_degree(design, group)
    tables = _block_images(design, group)
    flags = [(p, b) for b, block in enumerate(design.blocks) for p in block]
    position = {flag: i for i, flag in enumerate(flags)}
    actions = [
        tuple(position[(g(p), table[b])] for p, b in flags) for g, table in zip(group.generators, tables)
    ]
    return len(_orbits(len(flags), actions, lambda x, t: t[x]))


def _minimal_block_system(generators: _Sequence[Perm], degree: int, a: int, b: int) -> list[list[int]]:
    """Finest partition invariant under the generators with ``a`` and ``b`` in one class."""
    parent = list(range(degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for g in generators:
            gx, gy = find(g[x]), find(g[y])
            if gx != gy:
                parent[gy] = gx
                queue.append((g[x], g[y]))

    classes: dict[int, list[int]] = {}
    for x in range(degree):
        classes.setdefault(find(x), []).append(x + 1)
    return sorted(classes.values())


def block_systems(group: PermGroup) -> list[list[list[int]]]:
    """Nontrivial systems of imprimitivity of a point-transitive group, as partitions of ``1..v``."""
    if len(group.point_orbits()) != 1:
        raise _GroupError("systems of imprimitivity are defined for transitive groups")
    generators = [g.zero_based for g in group.generators]
    systems = []
    for b in range(1, group.degree):
        partition = _minimal_block_system(generators, group.degree, 0, b)
        if len(partition) > 1 and partition not in systems:
            systems.append(partition)
    return systems


def is_point_primitive(group: PermGroup) -> _Optional[bool]:
    """``None`` for intransitive groups."""
    if len(group.point_orbits()) != 1:
        return None
    return not block_systems(group)
