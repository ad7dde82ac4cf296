"""Finite reflexive graphs, the discrete pre-spaces everything is built on.

Vertices are ``0 .. vertex_count - 1``.  Only non-loop edges are stored, as
pairs ``(i, j)`` with ``i < j``; every vertex implicitly carries a reflexive
loop, so ``adjacent(v, v)`` is always true.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Sequence


class GraphFormatError(ValueError):
    """A graph description (JSON or edge list) is malformed."""


@dataclass(frozen=True)
class FiniteGraph:
    """A finite graph with implicit reflexive loops at every vertex."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphFormatError(f"negative vertex count {self.vertex_count}")
        for edge in self.edges:
            i, j = edge
            if not 0 <= i < j < self.vertex_count:
                raise GraphFormatError(
                    f"edge {edge} is not a pair i < j of vertices below "
                    f"{self.vertex_count}"
                )

    @staticmethod
    def from_edges(vertex_count: int, edges: Iterable[Sequence[int]]) -> "FiniteGraph":
        """Build a graph, normalising each pair to (min, max); loops rejected."""
        normal = set()
        for edge in edges:
            i, j = edge
            if i == j:
                raise GraphFormatError(
                    f"loop ({i}, {j}) rejected: reflexive edges are implicit"
                )
            normal.add((min(i, j), max(i, j)))
        return FiniteGraph(vertex_count, frozenset(normal))

    def adjacent(self, i: int, j: int) -> bool:
        if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
            raise ValueError(f"vertex out of range: ({i}, {j})")
        return i == j or (min(i, j), max(i, j)) in self.edges

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex adjacency bitmask, loop bit included."""
        masks = [1 << v for v in range(self.vertex_count)]
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_linear(self) -> bool:
        """True when the non-loop edges are exactly the consecutive pairs."""
        return self == linear_graph(self.vertex_count) if self.vertex_count else False

    def is_equivalence(self) -> bool:
        """Whether the (reflexive, symmetric) edge relation is also transitive."""
        for i, j in self.edges:
            for k in range(self.vertex_count):
                if k in (i, j):
                    continue
                if self.adjacent(j, k) and not self.adjacent(i, k):
                    return False
                if self.adjacent(i, k) and not self.adjacent(j, k):
                    return False
        return True

    def relabel(self, perm: Sequence[int]) -> "FiniteGraph":
        """Image under the vertex bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.vertex_count)):
            raise ValueError("relabel requires a permutation of the vertex set")
        return FiniteGraph.from_edges(
            self.vertex_count, ((perm[i], perm[j]) for i, j in self.edges)
        )

    def automorphisms(self) -> list[tuple[int, ...]]:
        """All vertex permutations preserving the edge set, in lexicographic order."""
        return [
            perm
            for perm in permutations(range(self.vertex_count))
            if self.relabel(perm) == self
        ]

    def is_isomorphic(self, other: "FiniteGraph") -> bool:
        if self.vertex_count != other.vertex_count:
            return False
        if len(self.edges) != len(other.edges):
            return False
        return any(
            self.relabel(perm) == other
            for perm in permutations(range(self.vertex_count))
        )

    def to_json_dict(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edge_list()]}

    @staticmethod
    def from_json_dict(data: object) -> "FiniteGraph":
        """Parse ``{"vertices": n, "edges": [[i, j], ...]}`` with i < j.

        Duplicate edges, loops, reversed pairs and out-of-range indices are
        all rejected.
        """
        if not isinstance(data, dict):
            raise GraphFormatError("graph document must be a JSON object")
        extra = set(data) - {"vertices", "edges"}
        if extra:
            raise GraphFormatError(f"unexpected keys {sorted(extra)}")
        vertices = data.get("vertices")
        if not isinstance(vertices, int) or isinstance(vertices, bool) or vertices < 0:
            raise GraphFormatError("'vertices' must be a non-negative integer")
        raw_edges = data.get("edges", [])
        if not isinstance(raw_edges, list):
            raise GraphFormatError("'edges' must be a list of pairs")
        seen: set[tuple[int, int]] = set()
        for pos, raw in enumerate(raw_edges):
            if (
                not isinstance(raw, (list, tuple))
                or len(raw) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)
            ):
                raise GraphFormatError(f"edge #{pos} must be a pair of integers")
            i, j = raw
            if not 0 <= i < j < vertices:
                raise GraphFormatError(
                    f"edge #{pos} = [{i}, {j}] must satisfy 0 <= i < j < {vertices}"
                )
            if (i, j) in seen:
                raise GraphFormatError(f"edge #{pos} = [{i}, {j}] is a duplicate")
            seen.add((i, j))
        return FiniteGraph(vertices, frozenset(seen))


def linear_graph(length: int) -> FiniteGraph:
    """The linear graph on ``length`` vertices: edges exactly at |i - j| = 1."""
    if length < 1:
        raise ValueError(f"linear graph needs at least one vertex, got {length}")
    return FiniteGraph(length, frozenset((i, i + 1) for i in range(length - 1)))


def complete_graph(n: int) -> FiniteGraph:
    return FiniteGraph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def all_vertex_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def enumerate_graphs(n: int) -> Iterator[FiniteGraph]:
    """All labeled graphs on n vertices, ordered by their sorted edge tuple.

    The order is lexicographic on edge tuples, so the edgeless graph comes
    first and each graph precedes its proper supersets-by-prefix; this is the
    search order used by the model finder.
    """
    pairs = all_vertex_pairs(n)

    def rec(prefix: list[tuple[int, int]], start: int) -> Iterator[FiniteGraph]:
        yield FiniteGraph(n, frozenset(prefix))
        for k in range(start, len(pairs)):
            prefix.append(pairs[k])
            yield from rec(prefix, k + 1)
            prefix.pop()

    yield from rec([], 0)


def enumerate_graphs_upto_iso(n: int) -> list[FiniteGraph]:
    """One representative per isomorphism class of graphs on n vertices.

    The representative is the class member whose edge bitmask (bits indexed
    by the lexicographic pair order) is numerically least.
    """
    pairs = all_vertex_pairs(n)
    index = {pair: k for k, pair in enumerate(pairs)}
    perm_tables = []
    for perm in permutations(range(n)):
        table = []
        for i, j in pairs:
            a, b = perm[i], perm[j]
            table.append(index[(min(a, b), max(a, b))])
        perm_tables.append(table)

    reps = []
    seen = bytearray(1 << len(pairs))
    for mask in range(1 << len(pairs)):
        if seen[mask]:
            continue
        bits = [k for k in range(len(pairs)) if mask >> k & 1]
        reps.append(FiniteGraph(n, frozenset(pairs[k] for k in bits)))
        for table in perm_tables:
            image = 0
            for k in bits:
                image |= 1 << table[k]
            seen[image] = 1
    return reps
