"""Brute-force semigroup closures and the section/partition machinery.

The closure enumerator is the package's testing oracle: it is exponential
and proud of it. It refuses silently approximate answers: hitting the
element cap sets a ``truncated`` flag and the analytic accessors raise
instead of guessing.

Elements are enumerated breadth-first with the generators in input order,
so discovery indices are stable across runs and usable in reports.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .graphs import Graph
from .groups import GroupTooLargeError, PermutationGroup
from .sync import InconsistencyError
from .transformations import Partition, Transformation, compose, identity

DEFAULT_CLOSURE_CAP = 1_000_000


class TruncatedClosureError(Exception):
    """The closure hit its cap, so exact answers are unavailable."""


@dataclass
class SemigroupClosure:
    """All products of the generators, deduplicated, in discovery order."""

    degree: int
    generators: tuple[Transformation, ...]
    matrix: np.ndarray  # shape (count, degree), dtype uint8
    truncated: bool
    cap: int

    def __len__(self) -> int:
        return int(self.matrix.shape[0])

    def element(self, i: int) -> Transformation:
        return Transformation(tuple(int(x) for x in self.matrix[i]))

    def iter_elements(self):
        for row in self.matrix:
            yield Transformation(tuple(int(x) for x in row))

    @cached_property
    def ranks(self) -> np.ndarray:
        s = np.sort(self.matrix, axis=1)
        return (s[:, 1:] != s[:, :-1]).sum(axis=1).astype(np.int64) + 1

    @cached_property
    def rank_spectrum(self) -> tuple[int, ...]:
        self._require_complete()
        return tuple(sorted({int(r) for r in self.ranks}))

    @property
    def min_rank(self) -> int:
        self._require_complete()
        return int(self.ranks.min())

    def contains_constant(self) -> bool:
        self._require_complete()
        return bool((self.ranks == 1).any())

    def _require_complete(self):
        if self.truncated:
            raise TruncatedClosureError(
                f"closure truncated at cap {self.cap}; oracle unavailable"
            )

    def collapsed_pairs(self) -> frozenset[tuple[int, int]]:
        """All pairs {v,w} merged by at least one element."""
        self._require_complete()
        n = self.degree
        out = set()
        m = self.matrix
        for v in range(n):
            for w in range(v + 1, n):
                if bool((m[:, v] == m[:, w]).any()):
                    out.add((v, w))
        return frozenset(out)

    def contains(self, f: Transformation) -> bool:
        self._require_complete()
        target = np.array(f.images, dtype=np.uint8)
        return bool((self.matrix == target).all(axis=1).any())

    def min_rank_elements(self) -> list[Transformation]:
        self._require_complete()
        r = self.min_rank
        return [
            self.element(i) for i in np.nonzero(self.ranks == r)[0]
        ]

    def dump(self) -> str:
        """One transformation per line, discovery-ordered, 1-based."""
        lines = [
            "[" + ",".join(str(int(x) + 1) for x in row) + "]"
            for row in self.matrix
        ]
        return "\n".join(lines) + "\n"


def closure(generators, cap: int = DEFAULT_CLOSURE_CAP) -> SemigroupClosure:
    """Breadth-first product closure of the generators.

    Composition uses bytes.translate, so elements live as byte strings
    until the final matrix is assembled.
    """
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError("generator degree mismatch")
    # translate tables must cover all 256 byte values
    tables = [bytes(g.images) + bytes(range(degree, 256)) for g in gens]
    seen: dict[bytes, int] = {}
    order: list[bytes] = []
    truncated = False
    for g in gens:
        b = bytes(g.images)
        if b not in seen:
            seen[b] = len(order)
            order.append(b)
    frontier = list(order)
    while frontier and not truncated:
        new_frontier = []
        for w in frontier:
            for t in tables:
                prod = w.translate(t)
                if prod not in seen:
                    if len(order) >= cap:
                        truncated = True
                        break
                    seen[prod] = len(order)
                    order.append(prod)
                    new_frontier.append(prod)
            if truncated:
                break
        frontier = new_frontier
    matrix = np.frombuffer(b"".join(order), dtype=np.uint8).reshape(
        len(order), degree
    )
    return SemigroupClosure(
        degree=degree,
        generators=gens,
        matrix=matrix,
        truncated=truncated,
        cap=cap,
    )


def group_and_map_closure(
    group: PermutationGroup, f: Transformation, cap: int = DEFAULT_CLOSURE_CAP
) -> SemigroupClosure:
    return closure(list(group.generators) + [f], cap=cap)


def min_rank(c: SemigroupClosure) -> int:
    return c.min_rank


def contains_constant(c: SemigroupClosure) -> bool:
    return c.contains_constant()


def find_rank_preserving_g(
    group: PermutationGroup, f: Transformation, cap: int = DEFAULT_CLOSURE_CAP
) -> Transformation | None:
    """Some g in the group with rank(f g f) = rank(f), or None.

    rank(f g f) = rank(f) holds exactly when g carries the image of f onto
    a transversal of the kernel of f, so the search walks the orbit of the
    image set and keeps the word of generators reaching each set. The cap
    bounds the number of visited sets (at most one per image of the set).
    """
    if f.degree != group.degree:
        raise ValueError("degree mismatch")
    kernel = f.kernel()
    image = frozenset(f.image())
    rank = len(image)

    def is_transversal(points) -> bool:
        hit = set()
        for x in points:
            b = kernel.block_index[x]
            if b in hit:
                return False
            hit.add(b)
        return len(hit) == rank

    gens = [g.images for g in group.generators]
    words: dict[frozenset[int], tuple[int, ...]] = {image: ()}
    queue = [image]
    while queue:
        s = queue.pop(0)
        if is_transversal(s):
            g = identity(group.degree)
            for gi in words[s]:
                g = compose(g, group.generators[gi])
            if compose(compose(f, g), f).rank() != rank:
                raise InconsistencyError("transversal image did not preserve rank")
            return g
        for gi, gmap in enumerate(gens):
            t = frozenset(gmap[x] for x in s)
            if t not in words:
                if len(words) >= cap:
                    raise GroupTooLargeError(
                        f"image-set orbit exceeded cap {cap}"
                    )
                words[t] = words[s] + (gi,)
                queue.append(t)
    return None


def idempotent_same_kernel(
    f: Transformation, g: Transformation
) -> tuple[Transformation, int]:
    """The idempotent power of f*g, which shares its kernel with f.

    Requires rank(f g f) = rank(f). Returns (e, k) with e = (f g)^k,
    e idempotent and kernel(e) = kernel(f); both postconditions are
    verified before returning.
    """
    if compose(compose(f, g), f).rank() != f.rank():
        raise ValueError("precondition failed: rank(f g f) != rank(f)")
    h = compose(f, g)
    seen: dict[Transformation, int] = {}
    power = h
    k = 1
    while power not in seen:
        seen[power] = k
        power = compose(power, h)
        k += 1
    m = seen[power]  # h^k == h^m with m < k
    exponent = k - m
    e = h
    for _ in range(exponent - 1):
        e = compose(e, h)
    if compose(e, e) != e:
        raise InconsistencyError("constructed element is not idempotent")
    if e.kernel() != f.kernel():
        raise InconsistencyError("idempotent kernel differs from kernel(f)")
    return e, exponent


def coblock_graph(group: PermutationGroup, blocks: Partition) -> Graph:
    """Edges: all group images of the pairs lying inside one block.

    An independent set of size len(blocks) in this graph is a common
    section for every group translate of the partition.
    """
    if blocks.degree != group.degree:
        raise ValueError("degree mismatch")
    n = group.degree
    ids, count = group._pair_orbit_ids
    wanted = [False] * count
    for block in blocks.blocks:
        for i, v in enumerate(block):
            for w in block[i + 1 :]:
                wanted[ids[v * n + w]] = True
    edges = [
        (v, w)
        for v in range(n)
        for w in range(v + 1, n)
        if wanted[ids[v * n + w]]
    ]
    return Graph.from_edges(n, edges)


def is_group_section(
    group: PermutationGroup,
    section,
    blocks: Partition,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> bool:
    """True iff every group translate of the section hits each block once.

    Walks the orbit of the section as a set; the cap bounds the orbit size
    rather than the group order, which is what the work depends on.
    """
    pts = frozenset(section)
    if len(pts) != len(blocks):
        raise ValueError("section size must equal the number of blocks")

    def is_transversal(points) -> bool:
        hit = set()
        for x in points:
            b = blocks.block_index[x]
            if b in hit:
                return False
            hit.add(b)
        return True

    gens = [g.images for g in group.generators]
    seen = {pts}
    queue = [pts]
    while queue:
        s = queue.pop(0)
        if not is_transversal(s):
            return False
        for gmap in gens:
            t = frozenset(gmap[x] for x in s)
            if t not in seen:
                if len(seen) >= cap:
                    raise GroupTooLargeError(f"section orbit exceeded cap {cap}")
                seen.add(t)
                queue.append(t)
    return True


@dataclass(frozen=True)
class SectionWitness:
    """A partition size admitting a section stable under the whole group."""

    size: int
    partition: Partition
    section: tuple[int, ...]


MAX_EXHAUSTIVE_DEGREE = 12
MAX_NONUNIFORM_DEGREE = 10


def _uniform_partitions(n: int, parts: int):
    """All partitions of range(n) into ``parts`` blocks of equal size."""
    size = n // parts

    def rec(remaining: frozenset[int]):
        if not remaining:
            yield []
            return
        anchor = min(remaining)
        rest = sorted(remaining - {anchor})
        for extra in combinations(rest, size - 1):
            block = (anchor, *extra)
            for tail in rec(remaining - set(block)):
                yield [block] + tail

    yield from rec(frozenset(range(n)))


def _all_partitions(n: int, parts: int):
    """All partitions of range(n) into exactly ``parts`` blocks."""

    def rec(x: int, blocks: list[list[int]]):
        if x == n:
            if len(blocks) == parts:
                yield [tuple(b) for b in blocks]
            return
        if len(blocks) + (n - x) < parts:
            return
        for b in blocks:
            b.append(x)
            yield from rec(x + 1, blocks)
            b.pop()
        if len(blocks) < parts:
            blocks.append([x])
            yield from rec(x + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def regular_partition_witnesses(
    group: PermutationGroup, allow_nonuniform: bool = False
) -> list[SectionWitness]:
    """Nontrivial partition sizes with a section stable under the group.

    For each candidate partition the stable-section test is a clique search
    in the complement of coblock_graph: a section working for every group
    translate is exactly an independent set of full size there. The search
    is exhaustive over uniform partitions (sizes dividing the degree);
    allow_nonuniform extends it to all partitions at smaller degrees.
    """
    n = group.degree
    if not group.is_transitive():
        raise ValueError("section search requires a transitive group")
    limit = MAX_NONUNIFORM_DEGREE if allow_nonuniform else MAX_EXHAUSTIVE_DEGREE
    if n > limit:
        raise ValueError(
            f"degree {n} beyond the exhaustive regime (limit {limit})"
        )
    witnesses: list[SectionWitness] = []
    for s in range(2, n):
        if allow_nonuniform:
            candidates = _all_partitions(n, s)
        else:
            if n % s != 0:
                continue
            candidates = _uniform_partitions(n, s)
        found = None
        for blocks in candidates:
            partition = Partition(n, tuple(blocks))
            delta = coblock_graph(group, partition)
            section = delta.independent_set_of_size(s)
            if section is not None:
                section = tuple(sorted(section[:s]))
                if not is_group_section(group, section, partition):
                    raise InconsistencyError(
                        "independent set is not a stable section"
                    )
                found = SectionWitness(s, partition, section)
                break
        if found:
            witnesses.append(found)
    return witnesses


def regular_partition_sizes(
    group: PermutationGroup, allow_nonuniform: bool = False
) -> list[int]:
    return [w.size for w in regular_partition_witnesses(group, allow_nonuniform)]


def depth(group: PermutationGroup, allow_nonuniform: bool = False) -> int | None:
    """Gap between the two smallest stable-section partition sizes.

    None encodes infinity: fewer than two such sizes exist.
    """
    sizes = regular_partition_sizes(group, allow_nonuniform)
    if len(sizes) < 2:
        return None
    return sizes[1] - sizes[0]
