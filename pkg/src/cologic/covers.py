"""Good tuples, nerves, arrangements, consolidation and covering walks.

A good tuple over a finite powerset contact algebra is an ordered partition
of the atom set into nonempty blocks: a non-repeating enumeration of a
finite minimal cover whose distinct members only touch (all pairwise meets
are zero).  Refinement between good tuples is mediated by arrangements,
surjections between the index sets, and consolidation glues a fine tuple
back along the fibers of an arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from cologic import _core
from cologic.algebra import ContactAlgebra, Element
from cologic.graphs import FiniteGraph, linear_graph

GoodTuple = tuple[Element, ...]


class CoveringWalkError(ValueError):
    """A vertex sequence fails to be a covering walk of its graph."""


@dataclass(frozen=True)
class Arrangement:
    """A surjection between index contexts, written as its image tuple.

    `images[j]` is the coarse index that fine index j maps to.  The source
    context is `len(images)`; surjectivity onto `range(target)` is enforced
    at construction.
    """

    images: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if self.target < 1:
            raise ValueError(f"arrangement target must be positive, got {self.target}")
        hit = set(self.images)
        if not hit <= set(range(self.target)):
            raise ValueError(
                f"arrangement images {self.images} stray outside 0..{self.target - 1}"
            )
        if len(hit) != self.target:
            missing = sorted(set(range(self.target)) - hit)
            raise ValueError(
                f"arrangement {self.images} is not surjective: {missing} never hit"
            )

    @property
    def source(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Arrangement":
        return Arrangement(tuple(range(n)), n)

    @property
    def is_pattern(self) -> bool:
        """Steps between consecutive indices never exceed one."""
        return all(
            abs(self.images[i + 1] - self.images[i]) <= 1
            for i in range(len(self.images) - 1)
        )

    def fiber(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, v in enumerate(self.images) if v == i)

    def compose(self, inner: "Arrangement") -> "Arrangement":
        """The composite j -> self(inner(j)); inner feeds into self."""
        if inner.target != self.source:
            raise ValueError(
                f"cannot compose: inner target {inner.target} != outer source {self.source}"
            )
        return Arrangement(_core.compose_images(self.images, inner.images), self.target)


def is_good_tuple(algebra: ContactAlgebra, entries: Sequence[Iterable[int]]) -> bool:
    """Whether `entries` is an ordered partition of the atoms into nonempty blocks.

    Nonzero entries with pairwise zero meets that join to 1 are automatically
    minimal (no entry sits below another) and repetition-free.
    """
    union = 0
    for entry in entries:
        mask = algebra.mask_of(entry)
        if mask == 0 or union & mask:
            return False
        union |= mask
    return union == algebra.full_mask


def _require_good(algebra: ContactAlgebra, entries: Sequence[Iterable[int]], name: str) -> tuple[int, ...]:
    masks = algebra.tuple_masks(entries)
    union = 0
    for mask in masks:
        if mask == 0 or union & mask:
            raise ValueError(f"{name} is not a good tuple")
        union |= mask
    if union != algebra.full_mask:
        raise ValueError(f"{name} is not a good tuple: does not cover the atoms")
    return masks


def enumerate_good_tuples(algebra: ContactAlgebra, length: int) -> list[GoodTuple]:
    """All good tuples of the given length, sorted lexicographically.

    Tuples are compared entrywise, each entry as its sorted atom list.  The
    count is length! times the Stirling partition number S(atoms, length).
    """
    if length < 1:
        raise ValueError(f"tuple length must be positive, got {length}")
    tuples = [
        algebra.tuple_sets(masks)
        for masks in _core.iter_good_mask_tuples(algebra.full_mask, length)
    ]
    tuples.sort(key=lambda tu: tuple(tuple(sorted(e)) for e in tu))
    return tuples


def nerve(algebra: ContactAlgebra, entries: Sequence[Iterable[int]]) -> FiniteGraph:
    """The contact graph on tuple indices: edge i-j exactly when entries touch."""
    masks = _require_good(algebra, entries, "tuple")
    edges = []
    closure = algebra.closure
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if closure[masks[i]] & masks[j]:
                edges.append((i, j))
    return FiniteGraph(len(masks), frozenset(edges))


def is_chain(algebra: ContactAlgebra, entries: Sequence[Iterable[int]]) -> bool:
    """Whether the nerve is exactly the linear graph on the index set.

    A sequence that is not a good tuple is not a chain.
    """
    if not is_good_tuple(algebra, entries):
        return False
    return nerve(algebra, entries) == linear_graph(len(entries))


def follows(
    algebra: ContactAlgebra,
    fine: Sequence[Iterable[int]],
    arrangement: Arrangement,
    coarse: Sequence[Iterable[int]],
) -> bool:
    """Whether each fine block sits below the coarse block it is mapped to."""
    fine_masks = algebra.tuple_masks(fine)
    coarse_masks = algebra.tuple_masks(coarse)
    if len(fine_masks) != arrangement.source:
        raise ValueError(
            f"length mismatch: fine tuple has {len(fine_masks)} entries, "
            f"arrangement source is {arrangement.source}"
        )
    if len(coarse_masks) != arrangement.target:
        raise ValueError(
            f"length mismatch: coarse tuple has {len(coarse_masks)} entries, "
            f"arrangement target is {arrangement.target}"
        )
    return all(
        fine_masks[j] & ~coarse_masks[arrangement.images[j]] == 0
        for j in range(len(fine_masks))
    )


def arrangement_of(
    algebra: ContactAlgebra,
    fine: Sequence[Iterable[int]],
    coarse: Sequence[Iterable[int]],
) -> Arrangement | None:
    """The unique arrangement the fine tuple follows in the coarse one, if any.

    Uniqueness comes from the blocks being disjoint: a nonempty fine block
    fits below at most one coarse block.
    """
    fine_masks = _require_good(algebra, fine, "fine tuple")
    coarse_masks = _require_good(algebra, coarse, "coarse tuple")
    block_of_atom = {}
    for i, mask in enumerate(coarse_masks):
        for atom in _core.iter_atoms(mask):
            block_of_atom[atom] = i
    images = []
    for mask in fine_masks:
        i = block_of_atom[next(_core.iter_atoms(mask))]
        if mask & ~coarse_masks[i]:
            return None
        images.append(i)
    return Arrangement(tuple(images), len(coarse_masks))


def consolidate(
    algebra: ContactAlgebra,
    arrangement: Arrangement,
    fine: Sequence[Iterable[int]],
) -> GoodTuple:
    """Join each fiber of the arrangement: entry i becomes the union over f^-1(i)."""
    fine_masks = algebra.tuple_masks(fine)
    if len(fine_masks) != arrangement.source:
        raise ValueError(
            f"length mismatch: fine tuple has {len(fine_masks)} entries, "
            f"arrangement source is {arrangement.source}"
        )
    joined = [0] * arrangement.target
    for j, mask in enumerate(fine_masks):
        joined[arrangement.images[j]] |= mask
    return algebra.tuple_sets(joined)


def common_refinement(
    algebra: ContactAlgebra,
    left: Sequence[Iterable[int]],
    right: Sequence[Iterable[int]],
) -> tuple[GoodTuple, Arrangement, Arrangement]:
    """A good tuple refining both inputs, with the arrangements it follows.

    The entries are the nonzero pairwise meets, indexed lexicographically by
    the (left index, right index) pairs.
    """
    left_masks = _require_good(algebra, left, "left tuple")
    right_masks = _require_good(algebra, right, "right tuple")
    entries = []
    to_left = []
    to_right = []
    for i, a in enumerate(left_masks):
        for j, b in enumerate(right_masks):
            meet = a & b
            if meet:
                entries.append(meet)
                to_left.append(i)
                to_right.append(j)
    return (
        algebra.tuple_sets(entries),
        Arrangement(tuple(to_left), len(left_masks)),
        Arrangement(tuple(to_right), len(right_masks)),
    )


def refinements_following(
    algebra: ContactAlgebra,
    coarse: Sequence[Iterable[int]],
    arrangement: Arrangement,
) -> Iterator[GoodTuple]:
    """All good tuples following the arrangement in `coarse`, lexicographically.

    Each coarse block is split into the nonempty labeled sub-blocks indexed
    by the arrangement's fiber over it; the search order is lexicographic
    over those labeled splits, coarse index ascending.
    """
    coarse_masks = _require_good(algebra, coarse, "coarse tuple")
    if len(coarse_masks) != arrangement.target:
        raise ValueError(
            f"length mismatch: coarse tuple has {len(coarse_masks)} entries, "
            f"arrangement target is {arrangement.target}"
        )
    for masks in _core.iter_refinements(coarse_masks, arrangement.images):
        yield algebra.tuple_sets(masks)


def _walk_defect(graph: FiniteGraph, walk: Sequence[int]) -> str | None:
    """First reason `walk` fails to be a covering walk, or None."""
    if not walk:
        return "walk is empty"
    for v in walk:
        if not 0 <= v < graph.vertex_count:
            return f"vertex {v} out of range"
    for a, b in zip(walk, walk[1:]):
        if not graph.adjacent(a, b):
            return f"step {a}-{b} is not an edge"
    visited = set(walk)
    for v in range(graph.vertex_count):
        if v not in visited:
            return f"vertex {v} unvisited"
    steps = {(min(a, b), max(a, b)) for a, b in zip(walk, walk[1:])}
    for edge in graph.edge_list():
        if edge not in steps:
            return f"edge {edge[0]}-{edge[1]} untraversed"
    return None


def is_covering_walk(graph: FiniteGraph, walk: Sequence[int]) -> bool:
    """Whether the sequence walks along edges and covers every vertex and edge.

    Consecutive repeats ride the implicit loops and are allowed; the edges
    that must be covered are the stored non-loop ones.
    """
    return _walk_defect(graph, walk) is None


def walk_induced_surjection(graph: FiniteGraph, walk: Sequence[int]) -> Arrangement:
    """The arrangement reading off the walk: position b maps to its vertex."""
    defect = _walk_defect(graph, walk)
    if defect is not None:
        raise CoveringWalkError(f"not a covering walk: {defect}")
    return Arrangement(tuple(walk), graph.vertex_count)


def enumerate_covering_walks(
    graph: FiniteGraph, max_length: int
) -> list[tuple[int, ...]]:
    """All covering walks with at most `max_length` positions.

    Ordered by length, then lexicographically.  Walks may ride loops
    (consecutive equal vertices); a walk shorter than the vertex count or
    with fewer steps than there are edges cannot cover and is pruned early,
    so a too-small bound simply yields an empty list.
    """
    n = graph.vertex_count
    edges = frozenset(graph.edges)
    out: list[tuple[int, ...]] = []

    for length in range(n, max_length + 1):
        walk: list[int] = []

        def rec(missing_vertices: int, missing_edges: set[tuple[int, int]]) -> None:
            remaining = length - len(walk)
            if remaining == 0:
                if missing_vertices == 0 and not missing_edges:
                    out.append(tuple(walk))
                return
            # Each further position adds at most one new vertex and one new edge.
            if missing_vertices > remaining or len(missing_edges) > max(0, remaining):
                return
            if not walk:
                for v in range(n):
                    walk.append(v)
                    rec(missing_vertices - 1, missing_edges)
                    walk.pop()
                return
            here = walk[-1]
            for v in range(n):
                if v != here:
                    key = (min(here, v), max(here, v))
                    if key not in edges:
                        continue
                    freshly_covered = key in missing_edges
                else:
                    key = None
                    freshly_covered = False
                new_vertex = v not in walk
                walk.append(v)
                if freshly_covered:
                    missing_edges.discard(key)
                rec(missing_vertices - (1 if new_vertex else 0), missing_edges)
                if freshly_covered:
                    missing_edges.add(key)
                walk.pop()

        rec(n, set(edges))
    return out
