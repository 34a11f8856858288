import itertools
import random

import pytest

from synchrolab.catalog import (
    cyclic_group,
    dihedral_group,
    grid_group,
    symmetric_group,
)
from synchrolab.groups import GroupTooLargeError, PermutationGroup
from synchrolab.semigroups import (
    SemigroupClosure,
    TruncatedClosureError,
    closure,
    coblock_graph,
    contains_constant,
    depth,
    find_rank_preserving_g,
    group_and_map_closure,
    idempotent_same_kernel,
    is_group_section,
    min_rank,
    regular_partition_sizes,
    regular_partition_witnesses,
)
from synchrolab.sync import obstruction_graph
from synchrolab.transformations import (
    Partition,
    Transformation,
    compose,
    constant,
    identity,
    parse_cycles,
)


def t(*images_1based):
    return Transformation(tuple(x - 1 for x in images_1based))


GRID = grid_group(3)
GRID_PROJECTION = Transformation(tuple((x // 3) * 4 for x in range(9)))
ROWS = Partition.from_blocks(9, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])


class TestClosure:
    def test_single_constant(self):
        c = closure([constant(4, 2)])
        assert len(c) == 1
        assert c.min_rank == 1

    def test_s3_with_collapse(self):
        c = group_and_map_closure(symmetric_group(3), t(1, 1, 3))
        assert c.contains_constant()
        assert c.min_rank == 1
        # S3 plus a rank-2 map generates everything except nothing: 3^3 maps
        assert len(c) == 27

    def test_grid_instance(self):
        c = group_and_map_closure(GRID, GRID_PROJECTION)
        assert not c.truncated
        assert c.min_rank == 3
        assert not c.contains_constant()
        assert c.rank_spectrum == (3, 9)

    def test_truncation_flag_and_errors(self):
        c = group_and_map_closure(symmetric_group(5), t(1, 1, 3, 4, 5), cap=50)
        assert c.truncated
        with pytest.raises(TruncatedClosureError):
            c.min_rank
        with pytest.raises(TruncatedClosureError):
            c.contains_constant()
        with pytest.raises(TruncatedClosureError):
            min_rank(c)

    def test_discovery_order_deterministic(self):
        a = group_and_map_closure(cyclic_group(4), t(1, 1, 3, 4))
        b = group_and_map_closure(cyclic_group(4), t(1, 1, 3, 4))
        assert a.dump() == b.dump()

    def test_dump_format(self):
        c = closure([constant(3, 0)])
        assert c.dump() == "[1,1,1]\n"

    def test_closed_under_composition(self):
        c = group_and_map_closure(cyclic_group(4), t(1, 1, 3, 4))
        elements = {e.images for e in c.iter_elements()}
        for a, b in itertools.product(list(elements)[:50], repeat=2):
            prod = tuple(b[x] for x in a)
            assert prod in elements

    def test_contains(self):
        c = group_and_map_closure(symmetric_group(3), t(1, 1, 3))
        assert c.contains(constant(3, 0))
        assert c.contains(identity(3))


class TestFindRankPreserving:
    def test_idempotent_identity_qualifies(self):
        f = t(1, 1, 3, 4)
        g = find_rank_preserving_g(symmetric_group(4), f)
        assert g is not None
        assert compose(compose(f, g), f).rank() == f.rank()

    def test_grid_projection_has_one(self):
        g = find_rank_preserving_g(GRID, GRID_PROJECTION)
        assert g is not None
        assert GRID.contains(g)
        assert compose(compose(GRID_PROJECTION, g), GRID_PROJECTION).rank() == 3

    def test_matches_exhaustive_sweep(self):
        rng = random.Random(51)
        for group in [cyclic_group(5), cyclic_group(7), dihedral_group(5)]:
            n = group.degree
            elements = group.elements()
            for _ in range(30):
                f = Transformation(tuple(rng.randrange(n) for _ in range(n)))
                mine = find_rank_preserving_g(group, f)
                exhaustive = [
                    g
                    for g in elements
                    if compose(compose(f, g), f).rank() == f.rank()
                ]
                assert (mine is not None) == bool(exhaustive)
                if mine is not None:
                    assert group.contains(mine)

    def test_none_when_impossible(self):
        # trivial group; the image {2,3} lands twice in the kernel block {2,3},
        # and no group element can move it onto a transversal
        group = PermutationGroup([identity(4)], 4)
        f = t(3, 3, 4, 4)
        assert find_rank_preserving_g(group, f) is None

    def test_c5_specific_instance(self):
        # verdict determined here by the 5-element exhaustive sweep itself
        group = cyclic_group(5)
        f = t(1, 1, 3, 4, 5)
        exhaustive = [
            g
            for g in group.elements()
            if compose(compose(f, g), f).rank() == f.rank()
        ]
        mine = find_rank_preserving_g(group, f)
        assert (mine is not None) == bool(exhaustive)
        if mine is not None:
            assert compose(compose(f, mine), f).rank() == f.rank()


class TestIdempotentSameKernel:
    def test_idempotent_with_identity(self):
        f = t(1, 1, 3)
        e, exponent = idempotent_same_kernel(f, identity(3))
        assert e == f
        assert exponent == 1

    def test_permutation_with_inverse(self):
        p = t(2, 3, 1)
        e, exponent = idempotent_same_kernel(p, p.inverse())
        assert e == identity(3)
        assert exponent == 1

    def test_grid_instance(self):
        g = find_rank_preserving_g(GRID, GRID_PROJECTION)
        e, _ = idempotent_same_kernel(GRID_PROJECTION, g)
        assert e.is_idempotent()
        assert e.kernel() == ROWS

    def test_precondition_enforced(self):
        # g collapsing the image onto one kernel block breaks the hypothesis
        f = t(1, 1, 3, 4)
        bad_g = t(2, 1, 2, 1)  # not even a permutation, still composes
        with pytest.raises(ValueError):
            idempotent_same_kernel(f, bad_g)

    def test_random_pairs_postconditions(self):
        rng = random.Random(52)
        done = 0
        while done < 200:
            n = rng.randint(2, 8)
            group = symmetric_group(n)
            f = Transformation(tuple(rng.randrange(n) for _ in range(n)))
            g = find_rank_preserving_g(group, f)
            if g is None:
                continue
            e, _ = idempotent_same_kernel(f, g)
            assert e.is_idempotent()
            assert e.kernel() == f.kernel()
            done += 1


class TestCoblockGraph:
    def test_singletons_null(self):
        g = coblock_graph(GRID, Partition.singletons(9))
        assert g.is_null()

    def test_grid_rows_give_aligned_pairs(self):
        delta = coblock_graph(GRID, ROWS)
        aligned = {
            (v, w)
            for v, w in itertools.combinations(range(9), 2)
            if v // 3 == w // 3 or v % 3 == w % 3
        }
        assert set(delta.edges()) == aligned
        # subgraph of the complement of the obstruction graph
        comp = obstruction_graph(GRID, GRID_PROJECTION).complement()
        assert all(comp.is_edge(v, w) for v, w in delta.edges())

    def test_symmetric_group_complete(self):
        delta = coblock_graph(
            symmetric_group(5), Partition.from_blocks(5, [[0, 1], [2], [3], [4]])
        )
        assert delta.is_complete()


class TestGroupSections:
    def test_trivial_group(self):
        group = PermutationGroup([identity(4)], 4)
        blocks = Partition.from_blocks(4, [[0, 1], [2, 3]])
        assert is_group_section(group, [0, 2], blocks)

    def test_grid_diagonal_is_section(self):
        assert is_group_section(GRID, [0, 4, 8], ROWS)

    def test_row_is_not_even_a_transversal(self):
        assert not is_group_section(GRID, [0, 1, 2], ROWS)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            is_group_section(GRID, [0, 4], ROWS)

    def test_matches_elementwise_definition(self):
        rng = random.Random(53)
        for group in [cyclic_group(6), dihedral_group(5)]:
            n = group.degree
            elements = group.elements()
            for _ in range(20):
                parts = 2 if n % 2 == 0 else n
                if n % 2:
                    continue
                blocks = Partition.from_blocks(
                    n, [range(n // 2), range(n // 2, n)]
                )
                section = tuple(
                    sorted(rng.sample(range(n), len(blocks)))
                )
                mine = is_group_section(group, section, blocks)
                direct = all(
                    len(
                        {
                            blocks.block_index[g.images[x]]
                            for x in section
                        }
                    )
                    == len(blocks)
                    for g in elements
                )
                assert mine == direct


class TestRegularPartitions:
    def test_grid_contains_three(self):
        witnesses = regular_partition_witnesses(GRID)
        assert [w.size for w in witnesses] == [3]
        w = witnesses[0]
        assert is_group_section(GRID, w.section, w.partition)

    def test_c5_empty(self):
        assert regular_partition_sizes(cyclic_group(5)) == []
        assert depth(cyclic_group(5)) is None

    def test_s5_s6_empty(self):
        assert regular_partition_sizes(symmetric_group(5)) == []
        assert regular_partition_sizes(symmetric_group(6)) == []

    def test_c6_depth(self):
        assert regular_partition_sizes(cyclic_group(6)) == [2, 3]
        assert depth(cyclic_group(6)) == 1

    def test_exhaustive_cross_check_small(self):
        # independent oracle at degree 6: try every uniform partition and
        # every candidate section directly
        group = cyclic_group(6)
        n = 6
        elements = group.elements()
        expected = set()
        for s in (2, 3):
            size = n // s
            for blocks in _set_partitions_uniform(n, s, size):
                partition = Partition.from_blocks(n, blocks)
                for section in itertools.combinations(range(n), s):
                    ok = all(
                        len({partition.block_index[g.images[x]] for x in section}) == s
                        for g in elements
                    )
                    if ok:
                        expected.add(s)
                        break
                if s in expected:
                    break
        assert sorted(expected) == regular_partition_sizes(group)

    def test_degree_guard(self):
        with pytest.raises(ValueError):
            regular_partition_sizes(cyclic_group(14))

    def test_nonuniform_escape_hatch(self):
        # uniform and nonuniform searches agree on the uniform sizes
        uniform = set(regular_partition_sizes(cyclic_group(6)))
        both = set(regular_partition_sizes(cyclic_group(6), allow_nonuniform=True))
        assert uniform <= both


def _set_partitions_uniform(n, parts, size):
    def rec(remaining):
        if not remaining:
            yield []
            return
        anchor = min(remaining)
        rest = sorted(remaining - {anchor})
        for extra in itertools.combinations(rest, size - 1):
            block = (anchor, *extra)
            for tail in rec(remaining - set(block)):
                yield [block] + tail

    yield from rec(frozenset(range(n)))


class TestSpectrumFacts:
    def test_grid_spectrum_skips_four(self):
        c = group_and_map_closure(GRID, GRID_PROJECTION)
        r = c.min_rank
        assert r == 3
        assert (r + 1) not in c.rank_spectrum

    def test_min_rank_elements_uniform_with_sections(self):
        c = group_and_map_closure(GRID, GRID_PROJECTION)
        for f in c.min_rank_elements():
            assert f.is_uniform()
            assert is_group_section(GRID, f.image(), f.kernel())
