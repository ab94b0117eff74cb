import random
from itertools import combinations

import pytest

from simplexdesigns.cliques.classification import TYPE_BY_INDEX, CliqueType, classify_clique
from simplexdesigns.cliques.clique import center_points, lines_inside, planes_inside
from simplexdesigns.combinatorics import ElementSet, intersection_size, symdiff
from simplexdesigns.constructions import (
    CANONICAL_CENTER,
    canonical_product,
    decompose,
    default_residue_set,
    hyperplane_complement_clique,
    non_centered_clique,
    non_centered_parts,
    pair_point,
    product_census,
    product_clique,
    random_product,
    signed_element,
    signed_set,
    switch_residue,
    triple_point,
)
from simplexdesigns.designs.design import design_from_clique
from simplexdesigns.designs.isomorphism import find_isomorphism
from simplexdesigns.exceptions import CliqueError, ParameterError
from simplexdesigns.fano import FanoPlane, bijection_index
from simplexdesigns.geometry import geometry_for, is_collinear, is_singular_subspace

CENTER = ElementSet.of(CANONICAL_CENTER, 15)


class TestProducts:
    def test_full_index_product_matches_the_fixture(self, constructed_cliques, fixture_designs):
        assert design_from_clique(constructed_cliques["c1"]).blocks == fixture_designs["c1"].blocks

    def test_point_order(self):
        clique = canonical_product(3)
        assert clique.points[7] == CENTER
        assert all(intersection_size(p, CENTER) == 4 for p in clique.points[:7] + clique.points[8:])

    @pytest.mark.parametrize("index", [0, 1, 3, 7])
    def test_decompose_recovers_the_ingredients(self, index):
        clique = canonical_product(index)
        decomposition = decompose(clique, CENTER)
        assert decomposition.residue_set == default_residue_set(CENTER)
        assert decomposition.residue_element == 15
        assert bijection_index(decomposition.delta) == index
        rebuilt = product_clique(
            clique.geometry, CENTER, decomposition.x_points, decomposition.y_points, decomposition.mapping
        )
        assert rebuilt == clique

    def test_switch_residue_matches_a_fresh_decomposition(self):
        clique = canonical_product(1)
        first = decompose(clique, CENTER)
        for dropped in CANONICAL_CENTER:
            residue = ElementSet(CENTER.bits & ~(1 << dropped), 15)
            switched = switch_residue(first, residue)
            assert switched == decompose(clique, CENTER, residue)
            assert bijection_index(switched.delta) == 1

    def test_decompose_needs_a_center(self, constructed_cliques):
        clique = constructed_cliques["non_centered"]
        with pytest.raises(CliqueError):
            decompose(clique, clique.points[0])

    def test_bad_residue_set(self):
        with pytest.raises(ParameterError):
            decompose(canonical_product(7), CENTER, ElementSet.of(range(1, 8), 15))

    def test_product_validation(self):
        clique = canonical_product(7)
        decomposition = decompose(clique, CENTER)
        with pytest.raises(ParameterError):
            product_clique(clique.geometry, CENTER, decomposition.x_points, decomposition.y_points, (0,) * 7)
        with pytest.raises(CliqueError):
            product_clique(clique.geometry, CENTER, decomposition.y_points, decomposition.y_points, tuple(range(7)))

    def test_random_products_round_trip(self):
        rng = random.Random(0)
        for _ in range(100):
            product = random_product(rng)
            assert product.center in center_points(product.clique)
            decomposition = decompose(product.clique, product.center, product.residue_set)
            assert decomposition.pairs() == dict(product.delta.pairs())
            index = bijection_index(product.delta)
            assert bijection_index(decomposition.delta) == index
            assert classify_clique(product.clique).tag is TYPE_BY_INDEX[index]

    def test_products_with_equal_index_are_isomorphic(self):
        rng = random.Random(11)
        references = {index: design_from_clique(canonical_product(index)) for index in (0, 1, 3, 7)}
        for _ in range(12):
            product = random_product(rng)
            reference = references[bijection_index(product.delta)]
            assert find_isomorphism(design_from_clique(product.clique), reference) is not None


class TestHyperplaneComplements:
    def test_small_case_is_a_singular_plane(self):
        clique = hyperplane_complement_clique(3)
        assert len(clique) == 7
        assert is_singular_subspace(clique.geometry, clique)
        FanoPlane(clique.points)

    def test_fifteen_point_case_matches_the_full_index_product(self, constructed_cliques, fixture_designs):
        clique = constructed_cliques["hyperplane"]
        assert clique == constructed_cliques["c1"]
        assert design_from_clique(clique).blocks == fixture_designs["c1"].blocks

    def test_larger_case_exceeds_the_roster_limit(self):
        with pytest.raises(ParameterError):
            hyperplane_complement_clique(5)

    def test_too_small(self):
        with pytest.raises(ParameterError):
            hyperplane_complement_clique(2)


class TestNonCentered:
    def test_signed_labels(self):
        assert [signed_element(i) for i in (-7, 0, 7)] == [1, 8, 15]
        with pytest.raises(ParameterError):
            signed_element(8)

    def test_auxiliary_points(self):
        assert pair_point(1, 3) == ElementSet.of([8, 9, 11, 15, 2, 3, 4, 6], 15)
        assert triple_point(1, 2, 4) == ElementSet.of([1, 2, 3, 5, 8, 9, 10, 12], 15)

    def test_parts(self):
        parts = non_centered_parts()
        geometry = geometry_for(4)
        for plane in (parts.plane, parts.switched_plane):
            assert len(set(plane)) == 7
            assert is_singular_subspace(geometry, plane)
        assert parts.y_point == ElementSet.of(range(8, 16), 15)
        assert len(parts.span) == 15
        assert is_singular_subspace(geometry, parts.span)
        assert set(parts.switched_plane) <= set(parts.span)
        assert not set(parts.plane) & set(parts.span)

    def test_pair_points_collinear_iff_disjoint(self):
        geometry = geometry_for(4)
        pairs = list(combinations(range(1, 7), 2))
        for p, q in combinations(pairs, 2):
            expected = not set(p) & set(q)
            assert is_collinear(geometry, pair_point(*p), pair_point(*q)) is expected

    def test_triple_points_collinear_iff_meeting_once(self):
        geometry = geometry_for(4)
        triples = list(combinations(range(1, 7), 3))
        for s, t in combinations(triples, 2):
            expected = len(set(s) & set(t)) == 1
            assert is_collinear(geometry, triple_point(*s), triple_point(*t)) is expected

    def test_pair_and_triple_collinear_iff_meeting_once(self):
        geometry = geometry_for(4)
        for p in combinations(range(1, 7), 2):
            for t in combinations(range(1, 7), 3):
                expected = len(set(p) & set(t)) == 1
                assert is_collinear(geometry, pair_point(*p), triple_point(*t)) is expected

    def test_symmetric_difference_chain(self):
        y = signed_set(range(0, 8))
        target = signed_set([2, 4, 5, 6, -2, -4, -5, -6])
        assert symdiff(y, pair_point(1, 3)) == target
        assert symdiff(pair_point(2, 5), pair_point(4, 6)) == target
        assert symdiff(triple_point(1, 2, 4), triple_point(1, 5, 6)) == target
        assert symdiff(triple_point(2, 3, 6), triple_point(3, 4, 5)) == target

    def test_clique(self, constructed_cliques):
        clique = constructed_cliques["non_centered"]
        parts = non_centered_parts()
        assert clique == non_centered_clique()
        assert clique.is_maximal()
        assert parts.y_point in clique
        assert not center_points(clique)
        assert len(lines_inside(clique)) == 7
        assert planes_inside(clique) == [frozenset(parts.plane)]
        assert classify_clique(clique).tag is CliqueType.NON_CENTERED


class TestCensus:
    def test_limited(self):
        census = product_census(limit=60)
        assert census.plane_pairs == 1
        assert census.bijections == census.distinct_products == 60
        assert sum(census.index_tally.values()) == 60

    def test_canonical_pair(self):
        census = product_census()
        assert census.bijections == census.distinct_products == 5040
        assert census.index_tally == {0: 1344, 1: 2352, 3: 1176, 7: 168}
        assert census.singular_full_index == 168

    def test_default_residue_matches_decompose(self):
        census = product_census(limit=1)
        assert census.residue_set == default_residue_set(CENTER)
        assert census.residue_set == decompose(canonical_product(3), CENTER).residue_set

    def test_rejects_residue_outside_the_center(self):
        with pytest.raises(ParameterError):
            product_census(residue_set=ElementSet.of(range(1, 8), 15))
