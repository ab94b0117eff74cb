import random

import pytest

from simplexdesigns.combinatorics import ElementSet
from simplexdesigns.constructions import canonical_planes
from simplexdesigns.exceptions import GeometryError, ParameterError
from simplexdesigns.fano import (
    FRAME_LABELS,
    INDICES,
    FanoBijection,
    FanoPlane,
    all_bijections,
    are_equivalent,
    bijection_index,
    canonical_plane,
    equivalence_classes,
    fano_planes_on,
    index_spectrum,
    is_simplex,
    representative_of_index,
    sends_simplex_to_simplex,
    sends_some_simplex_to_simplex,
    simplices,
)

SPECTRUM = {0: 1344, 1: 2352, 3: 1176, 7: 168}


@pytest.fixture(scope="module")
def planes():
    return canonical_planes()


@pytest.fixture(scope="module")
def classes(planes):
    return equivalence_classes(*planes)


class TestFanoPlane:
    def test_canonical_plane(self):
        plane = canonical_plane(ElementSet.universe(7))
        assert plane.points[0] == ElementSet.of([1, 3, 5, 7], 7)
        assert len(plane.lines) == 7
        assert all(len(line) == 3 for line in plane.lines)

    def test_rejects_non_planes(self):
        with pytest.raises(GeometryError):
            FanoPlane(tuple(ElementSet.of([i, i + 1, i + 2, i + 3], 10) for i in range(1, 8)))

    def test_every_pair_lies_on_one_line(self, planes):
        plane, _ = planes
        for i in range(7):
            for j in range(i + 1, 7):
                assert sum(1 for line in plane.lines if i in line and j in line) == 1

    def test_frame_covers_all_labels(self, planes):
        plane, _ = planes
        frame = plane.frame()
        assert set(frame) == set(FRAME_LABELS)
        assert sorted(frame.values()) == list(range(7))
        assert plane.is_line(frame["1"], frame["2"], frame["12"])
        assert plane.is_line(frame["12"], frame["3"], frame["123"])

    def test_automorphisms(self, planes):
        plane, _ = planes
        assert len(plane.automorphisms) == 168
        assert all(
            all(plane.is_line(g[a], g[b], g[c]) for a, b, c in plane.lines) for g in plane.automorphisms[::7]
        )

    def test_generators_generate(self, planes):
        plane, _ = planes
        assert 1 <= len(plane.generators) <= 5
        assert all(plane.is_automorphism(g) for g in plane.generators)

    def test_simplices(self, planes):
        plane, _ = planes
        found = simplices(plane)
        assert len(found) == 7
        assert all(is_simplex(plane, s) for s in found)
        line = plane.lines[0]
        assert not is_simplex(plane, (*line, next(i for i in range(7) if i not in line)))
        assert not is_simplex(plane, line)

    def test_thirty_planes_on_seven_elements(self):
        ground = ElementSet.universe(7)
        planes = fano_planes_on(ground)
        assert len(planes) == 30
        assert len({frozenset(p.points) for p in planes}) == 30
        assert frozenset(canonical_plane(ground).points) in {frozenset(p.points) for p in planes}

    def test_wrong_ground_size(self):
        with pytest.raises(ParameterError):
            fano_planes_on(ElementSet.of([1, 2, 3], 7))


class TestBijections:
    def test_identity_has_full_index(self, planes):
        d = FanoBijection(*planes, tuple(range(7)))
        assert bijection_index(d) == 7
        assert d(planes[0].points[2]) == planes[1].points[2]
        assert d.inverse().inverse() == d

    def test_rejects_non_bijections(self, planes):
        with pytest.raises(ParameterError):
            FanoBijection(*planes, (0, 0, 1, 2, 3, 4, 5))

    def test_index_spectrum(self, planes):
        assert index_spectrum(*planes) == SPECTRUM
        assert set(SPECTRUM) == set(INDICES)

    @pytest.mark.parametrize("index", INDICES)
    def test_representatives(self, planes, index):
        d = representative_of_index(*planes, index)
        assert bijection_index(d) == index
        assert bijection_index(d.inverse()) == index

    def test_unknown_index(self, planes):
        with pytest.raises(ParameterError):
            representative_of_index(*planes, 2)

    def test_equivalence_classes_follow_the_index(self, classes):
        assert len(classes) == 4
        assert [bijection_index(c[0]) for c in classes] == [0, 1, 3, 7]
        for members in classes:
            assert len({bijection_index(d) for d in members}) == 1
        assert {bijection_index(c[0]): len(c) for c in classes} == SPECTRUM

    def test_are_equivalent_agrees_with_the_index(self, planes):
        representatives = {index: representative_of_index(*planes, index) for index in INDICES}
        for d in all_bijections(*planes):
            index = bijection_index(d)
            for other, representative in representatives.items():
                assert are_equivalent(d, representative) == (index == other)

    def test_some_simplex_preserved_forces_positive_index(self, planes):
        for d in all_bijections(*planes):
            if sends_some_simplex_to_simplex(d):
                assert bijection_index(d) in (1, 3, 7)
        assert sends_some_simplex_to_simplex(representative_of_index(*planes, 7))

    def test_are_equivalent_across_plane_pairs(self):
        ground_x, ground_y = ElementSet.of(range(1, 8), 15), ElementSet.of(range(9, 16), 15)
        rng = random.Random(8)
        x1, x2 = rng.sample(fano_planes_on(ground_x), 2)
        y1, y2 = rng.sample(fano_planes_on(ground_y), 2)
        for index in INDICES:
            d1 = representative_of_index(x1, y1, index)
            d2 = representative_of_index(x2, y2, index)
            assert are_equivalent(d1, d2)
            assert not are_equivalent(d1, representative_of_index(x2, y2, 7 if index != 7 else 0))

    def test_simplex_preservation_characterises_full_index(self, planes):
        for members in equivalence_classes(*planes):
            d = members[0]
            assert sends_simplex_to_simplex(d) == (bijection_index(d) == 7)
