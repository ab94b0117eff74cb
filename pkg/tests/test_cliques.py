import random
from itertools import combinations

import pytest

from simplexdesigns.cliques.classification import CliqueType, classify_clique
from simplexdesigns.cliques.clique import Clique, center_points, lines_inside, planes_inside
from simplexdesigns.cliques.graph import enumerate_maximal_cliques, maximal_cliques
from simplexdesigns.combinatorics import ElementSet, Permutation
from simplexdesigns.constructions import decompose
from simplexdesigns.designs.design import clique_from_design
from simplexdesigns.exceptions import CliqueError
from simplexdesigns.fano import bijection_index
from simplexdesigns.geometry import is_singular_subspace


class TestCollinearityGraph:
    def test_sizes_and_degrees(self, graph7, graph15):
        assert len(graph7) == 35
        assert {graph7.degree(v) for v in range(35)} == {18}
        assert len(graph15) == 6435
        assert graph15.degree(0) == 2450

    def test_symmetric_and_irreflexive(self, graph7):
        for u in range(35):
            assert not graph7.adjacent(u, u)
            for v in range(35):
                assert graph7.adjacent(u, v) == graph7.adjacent(v, u)

    def test_matches_intersection_rule(self, graph7, graph15):
        g7 = graph7.geometry
        for u, v in combinations(range(35), 2):
            assert graph7.adjacent(u, v) == ((g7.points[u] & g7.points[v]).bit_count() == 2)

        rng = random.Random(3)
        g15 = graph15.geometry
        for _ in range(500):
            u, v = rng.sample(range(6435), 2)
            assert graph15.adjacent(u, v) == ((g15.points[u] & g15.points[v]).bit_count() == 4)


class TestEnumeration:
    def test_all_maximal_cliques_of_the_seven_point_geometry(self, graph7):
        cliques = list(enumerate_maximal_cliques(graph7))
        assert len(cliques) == 30
        assert len({tuple(c) for c in cliques}) == 30
        for vertices in cliques:
            clique = Clique.from_vertices(graph7.geometry, vertices)
            assert len(clique) == 7
            assert is_singular_subspace(graph7.geometry, clique)

    def test_sorted_output_is_deterministic(self, graph7):
        first = list(enumerate_maximal_cliques(graph7, sorted_output=True))
        assert first == sorted(first)
        assert first == list(enumerate_maximal_cliques(graph7, sorted_output=True))

    def test_limit(self, graph7):
        assert len(list(enumerate_maximal_cliques(graph7, limit=4))) == 4

    def test_through_a_vertex_of_the_fifteen_point_geometry(self, graph15):
        cliques = list(enumerate_maximal_cliques(graph15, through=0, limit=20))
        assert len(cliques) == 20
        for vertices in cliques:
            assert 0 in vertices
            assert len(vertices) <= 15
            assert all(graph15.adjacent(u, v) for u, v in combinations(vertices, 2))

    def test_core_on_a_small_graph(self):
        # a 4-cycle 0-1-2-3 with chord 0-2
        adjacency = [0b0110 | 0b1000, 0b0101, 0b1011, 0b0101]
        assert sorted(maximal_cliques(adjacency)) == [[0, 1, 2], [0, 2, 3]]


class TestClique:
    def test_rejects_non_collinear_points(self, geometry7):
        with pytest.raises(CliqueError):
            Clique(geometry7, [ElementSet.of([1, 2, 3, 4], 7), ElementSet.of([1, 5, 6, 7], 7)])

    def test_equality_ignores_order(self, constructed_cliques):
        clique = constructed_cliques["c2"]
        assert Clique(clique.geometry, reversed(clique.points)) == clique

    def test_maximality(self, geometry7, constructed_cliques):
        line = [ElementSet.of([1, 2, 3, 4], 7), ElementSet.of([1, 2, 5, 6], 7), ElementSet.of([3, 4, 5, 6], 7)]
        assert not Clique(geometry7, line).is_maximal()
        assert constructed_cliques["non_centered"].is_maximal()

    def test_single_line(self, geometry7):
        line = [ElementSet.of([1, 2, 3, 4], 7), ElementSet.of([1, 2, 5, 6], 7), ElementSet.of([3, 4, 5, 6], 7)]
        assert len(lines_inside(Clique(geometry7, line))) == 1


FIXTURE_FACTS = {
    # kind: (tag, center count, lines inside, planes inside)
    "c1": (CliqueType.C1, 15, 35, 15),
    "c2": (CliqueType.C2, 3, 19, 3),
    "c3": (CliqueType.C3, 1, 11, 1),
    "c4": (CliqueType.C4, 1, 7, 0),
    "non_centered": (CliqueType.NON_CENTERED, 0, 7, 1),
}


class TestClassification:
    @pytest.mark.parametrize("kind", sorted(FIXTURE_FACTS))
    def test_fixtures(self, fixture_designs, kind):
        clique = clique_from_design(fixture_designs[kind])
        tag, centers, lines, planes = FIXTURE_FACTS[kind]
        result = classify_clique(clique)
        assert result.tag is tag
        assert len(result.centers) == centers == len(center_points(clique))
        assert result.lines == lines == len(lines_inside(clique))
        assert result.planes == planes == len(planes_inside(clique))

    @pytest.mark.parametrize("kind", sorted(FIXTURE_FACTS))
    def test_constructions(self, constructed_cliques, kind):
        tag, centers, lines, planes = FIXTURE_FACTS[kind]
        result = classify_clique(constructed_cliques[kind])
        assert (result.tag, len(result.centers), result.lines, result.planes) == (tag, centers, lines, planes)

    def test_index_evidence(self, constructed_cliques):
        assert classify_clique(constructed_cliques["c1"]).index == 7
        assert classify_clique(constructed_cliques["c2"]).index == 3
        assert classify_clique(constructed_cliques["c3"]).index == 1
        assert classify_clique(constructed_cliques["c4"]).index == 0
        assert classify_clique(constructed_cliques["non_centered"]).index is None

    def test_c2_planes_share_the_line_of_centers(self, fixture_designs):
        clique = clique_from_design(fixture_designs["c2"])
        planes = planes_inside(clique)
        assert frozenset.intersection(*planes) == frozenset(center_points(clique))

    def test_c4_lines_pass_through_the_center(self, fixture_designs):
        clique = clique_from_design(fixture_designs["c4"])
        (center,) = center_points(clique)
        assert all(center in line for line in lines_inside(clique))

    def test_c1_fixture_is_singular(self, fixture_designs):
        clique = clique_from_design(fixture_designs["c1"])
        assert is_singular_subspace(clique.geometry, clique)

    @pytest.mark.parametrize("kind", ["c2", "c3", "c4", "non_centered"])
    def test_invariant_under_relabeling(self, constructed_cliques, kind):
        rng = random.Random(11)
        clique = constructed_cliques[kind]
        expected = classify_clique(clique)
        for _ in range(5):
            relabeled = classify_clique(clique.relabel(Permutation.random(15, rng)))
            assert (relabeled.tag, relabeled.index, relabeled.lines) == (expected.tag, expected.index, expected.lines)

    def test_every_center_gives_the_same_tag(self, constructed_cliques):
        clique = constructed_cliques["c2"]
        assert {bijection_index(decompose(clique, center).delta) for center in center_points(clique)} == {3}

    def test_rejects_small_cliques(self, geometry7):
        with pytest.raises(CliqueError):
            classify_clique(Clique(geometry7, [ElementSet.of([1, 2, 3, 4], 7)]))
