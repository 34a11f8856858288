import itertools

import pytest

from synchrolab.catalog import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    grid_group,
    projective_linear_group,
    symmetric_group,
)
from synchrolab.groups import (
    BlockSystem,
    GroupTooLargeError,
    PermutationGroup,
    format_group_text,
    parse_group_text,
)
from synchrolab.transformations import Transformation, parse_cycles


def brute_force_elements(group):
    """Independent oracle: close the generator set under products."""
    seen = {g.images for g in group.generators}
    frontier = list(seen)
    while frontier:
        new = []
        for w in frontier:
            for g in group.generators:
                prod = tuple(g.images[x] for x in w)
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
        frontier = new
    return seen


class TestOrbits:
    def test_single_cycle_transitive(self):
        g = cyclic_group(5)
        assert g.is_transitive()
        assert len(g.orbits()) == 1

    def test_small_support(self):
        g = PermutationGroup([parse_cycles("(1 2)", 3)], 3)
        assert g.orbits().blocks == ((0, 1), (2,))
        assert not g.is_transitive()

    def test_grid_transitive(self):
        assert grid_group(3).is_transitive()


class TestMinimalBlock:
    def test_c4_block(self):
        g = cyclic_group(4)
        assert g.minimal_block(0, 2) == frozenset({0, 2})
        # direct verification it really is a block system
        translates = g.set_orbit(frozenset({0, 2}))
        assert sorted(map(sorted, translates)) == [[0, 2], [1, 3]]

    def test_symmetric_group_no_blocks(self):
        g = symmetric_group(5)
        for b in range(1, 5):
            assert g.minimal_block(0, b) == frozenset(range(5))

    def test_grid_full(self):
        g = grid_group(3)
        for b in range(1, 9):
            assert g.minimal_block(0, b) == frozenset(range(9))

    def test_requires_transitive(self):
        g = PermutationGroup([parse_cycles("(1 2)", 3)], 3)
        with pytest.raises(ValueError):
            g.minimal_block(0, 1)


class TestPrimitivity:
    def test_prime_cyclic_primitive(self):
        assert cyclic_group(5).is_primitive()

    def test_c4_imprimitive(self):
        assert not cyclic_group(4).is_primitive()

    def test_grid_primitive(self):
        assert grid_group(3).is_primitive()

    def test_grid2_imprimitive(self):
        assert not grid_group(2).is_primitive()

    def test_implications_over_catalog(self):
        for g in [cyclic_group(6), dihedral_group(5), symmetric_group(4), grid_group(3)]:
            if g.is_primitive():
                assert g.is_transitive()
            if g.is_2_transitive():
                assert g.is_primitive()


class TestOrder:
    def test_s3(self):
        g = PermutationGroup([parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)])
        assert g.order() == 6

    def test_grid_order(self):
        assert grid_group(3).order() == 72

    def test_chain_orbit_product(self):
        for g in [symmetric_group(6), alternating_group(6), dihedral_group(7)]:
            sizes = g._chain.orbit_sizes()
            prod = 1
            for s in sizes:
                prod *= s
            assert prod == g.order()

    def test_order_matches_brute_force(self):
        for g in [
            cyclic_group(6),
            dihedral_group(5),
            symmetric_group(5),
            alternating_group(5),
            grid_group(2),
            projective_linear_group(4),
        ]:
            assert g.order() == len(brute_force_elements(g))

    def test_s12_order(self):
        import math

        assert symmetric_group(12).order() == math.factorial(12)


class TestMembership:
    def test_s3_contains_transposition(self):
        g = symmetric_group(3)
        assert g.contains(parse_cycles("(1 3)", 3))

    def test_alternating_excludes_odd(self):
        g = alternating_group(4)
        assert g.contains(parse_cycles("(1 2 3)", 4))
        assert not g.contains(parse_cycles("(1 2)", 4))

    def test_non_permutation(self):
        assert not symmetric_group(3).contains(Transformation((0, 0, 2)))


class TestElements:
    def test_matches_brute_force(self):
        g = dihedral_group(5)
        mine = {e.images for e in g.elements()}
        assert mine == brute_force_elements(g)
        assert len(mine) == 10

    def test_cap_refusal(self):
        with pytest.raises(GroupTooLargeError):
            symmetric_group(8).elements(cap=1000)

    def test_deterministic_order(self):
        g = alternating_group(4)
        first = [e.images for e in g.elements()]
        second = [e.images for e in g.elements()]
        assert first == second


class TestPairOrbits:
    def test_s4_single(self):
        g = symmetric_group(4)
        assert g.is_2_transitive()
        assert len(g.pair_orbits()) == 1

    def test_c5_two_by_distance(self):
        g = cyclic_group(5)
        assert not g.is_2_transitive()
        cells = g.pair_orbits()
        assert len(cells) == 2
        # oracle: distance classes on the 5-cycle
        by_distance = {1: set(), 2: set()}
        for v, w in itertools.combinations(range(5), 2):
            d = min((w - v) % 5, (v - w) % 5)
            by_distance[d].add((v, w))
        assert {frozenset(c) for c in cells} == {
            frozenset(by_distance[1]),
            frozenset(by_distance[2]),
        }

    def test_grid_two_orbits(self):
        cells = grid_group(3).pair_orbits()
        assert len(cells) == 2
        aligned = {
            (v, w)
            for v, w in itertools.combinations(range(9), 2)
            if v // 3 == w // 3 or v % 3 == w % 3
        }
        assert {frozenset(c) for c in cells} == {
            frozenset(aligned),
            frozenset(set(itertools.combinations(range(9), 2)) - aligned),
        }

    def test_cells_cover_all_pairs_once(self):
        for g in [cyclic_group(6), grid_group(2), dihedral_group(7)]:
            cells = g.pair_orbits()
            everything = [p for c in cells for p in c]
            assert len(everything) == len(set(everything))
            assert len(everything) == g.degree * (g.degree - 1) // 2


class TestBlockSystems:
    def test_c6_systems(self):
        systems = cyclic_group(6).block_systems()
        sizes = sorted(s.block_size for s in systems)
        assert sizes == [2, 3]

    def test_c8_includes_non_minimal(self):
        # blocks {0,4} and {0,2,4,6}: the big one is not a join of minimal ones
        sizes = sorted(s.block_size for s in cyclic_group(8).block_systems())
        assert sizes == [2, 4]

    def test_verified_under_generators(self):
        for g in [cyclic_group(6), cyclic_group(12), grid_group(2)]:
            for system in g.block_systems():
                system.verify(g)  # raises on failure

    def test_primitive_group_has_none(self):
        assert symmetric_group(5).block_systems() == []

    def test_grid2_diagonal_blocks(self):
        systems = grid_group(2).block_systems()
        assert any(
            {tuple(b) for b in s.partition.blocks} == {(0, 3), (1, 2)}
            for s in systems
        )


class TestTranspositionScans:
    def test_symmetric_has_transposition(self):
        assert symmetric_group(5).contains_transposition()

    def test_alternating_has_double_but_not_single(self):
        g = alternating_group(6)
        assert not g.contains_transposition()
        assert g.contains_double_transposition()

    def test_primitive_with_transposition_is_symmetric(self):
        # scan the small catalog groups: the implication must hold
        import math

        for g in [
            symmetric_group(5),
            alternating_group(5),
            cyclic_group(7),
            dihedral_group(7),
            grid_group(3),
            projective_linear_group(5),
        ]:
            if g.is_primitive() and g.contains_transposition():
                assert g.order() == math.factorial(g.degree)

    def test_double_transposition_implication(self):
        for g in [
            symmetric_group(7),
            alternating_group(7),
            dihedral_group(7),
            grid_group(3),
            projective_linear_group(7),
        ]:
            if (
                g.degree > 5
                and g.is_primitive()
                and g.contains_double_transposition()
            ):
                assert g.is_2_transitive()


class TestGroupFiles:
    GRID = "\n".join(
        [
            "degree 9",
            "name: grid-3",
            "(1 2 3)(4 5 6)(7 8 9)",
            "(1 2)(4 5)(7 8)",
            "(2 4)(3 7)(6 8)",
        ]
    )

    def test_parse(self):
        name, g = parse_group_text(self.GRID)
        assert name == "grid-3"
        assert g.degree == 9
        assert len(g.generators) == 3

    def test_roundtrip(self):
        name, g = parse_group_text(self.GRID)
        again_name, again = parse_group_text(format_group_text(g, name))
        assert again_name == name
        assert again.generators == g.generators

    def test_missing_degree(self):
        with pytest.raises(ValueError):
            parse_group_text("(1 2 3)")

    def test_comments_and_blanks(self):
        text = "# a comment\n\ndegree 3\n(1 2)\n"
        _, g = parse_group_text(text)
        assert g.order() == 2


class TestStabilizers:
    def test_stabilizer_order(self):
        g = symmetric_group(5)
        assert g.stabilizer_order(1) == 24
        assert g.stabilizer_order(2) == 6

    def test_stabilizer_elements_fix_prefix(self):
        g = dihedral_group(7)
        elems = g.stabilizer_elements(1)
        assert len(elems) == 2
        assert all(e[0] == 0 for e in elems)

    def test_transitivity_degree(self):
        assert symmetric_group(5).transitivity_degree() == 5
        assert alternating_group(5).transitivity_degree() == 3
        assert projective_linear_group(5).transitivity_degree() == 3
        assert cyclic_group(5).transitivity_degree() == 1
