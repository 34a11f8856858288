#!/usr/bin/env python3
"""Walk through the 3x3 grid example end to end.

The row/column symmetry group of the grid is primitive of order 72, yet it
fails to synchronize the rank-3 projection that collapses each row onto
its diagonal cell. This script builds the instance, prints the obstruction
graph facts, and cross-checks everything against the brute-force closure.
"""
from synchrolab.catalog import grid_group
from synchrolab.experiments import grid_projection
from synchrolab.semigroups import coblock_graph, group_and_map_closure
from synchrolab.sync import synchronizes
from synchrolab.transformations import format_transformation


def main():
    group = grid_group(3)
    f = grid_projection(3)
    print(f"group: order {group.order()}, primitive: {group.is_primitive()}")
    print(f"map:   {format_transformation(f)}  kernel type {f.kernel_type()}")

    verdict = synchronizes(group, f)
    graph = verdict.obstruction
    print(f"synchronizes: {verdict.synchronizes}")
    print(
        f"obstruction graph: {graph.edge_count} edges, "
        f"valency {graph.regular_valency()}, "
        f"clique {graph.clique_number()}, chromatic {graph.chromatic_number()}"
    )

    closure = group_and_map_closure(group, f)
    print(
        f"closure: {len(closure)} elements, min rank {closure.min_rank}, "
        f"rank spectrum {closure.rank_spectrum}"
    )

    delta = coblock_graph(group, f.kernel())
    complement = graph.complement()
    inside = all(complement.is_edge(v, w) for v, w in delta.edges())
    print(f"row-pair orbit graph sits inside the obstruction complement: {inside}")
    print()
    print(graph.to_dot())


if __name__ == "__main__":
    main()
