"""Finite contact algebras built from finite reflexive graphs.

A contact algebra here is always the powerset algebra over the vertex set of
a graph, with two elements in contact exactly when they contain adjacent
atoms (a shared atom counts, via the implicit loops).  This is precisely the
clopen algebra of a finite pre-space, and finite Stone duality makes the
correspondence a round trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator

from cologic import _core
from cologic.graphs import FiniteGraph
from cologic.limits import check_atoms

Element = frozenset[int]


class EmptyPreSpaceError(ValueError):
    """Raised for the empty graph: pre-spaces of compacta are nonempty."""


@dataclass(frozen=True)
class ContactAlgebra:
    """Powerset contact algebra over the vertices of a reflexive graph.

    Elements are frozensets of atom indices; 0 is the empty set and 1 the
    full atom set.  All operations are pure and instances are immutable, so
    values can be shared freely across threads.
    """

    atom_contact: FiniteGraph

    def __post_init__(self) -> None:
        if self.atom_contact.vertex_count == 0:
            raise EmptyPreSpaceError("empty pre-space")

    @property
    def atom_count(self) -> int:
        return self.atom_contact.vertex_count

    @property
    def full_set(self) -> Element:
        return frozenset(range(self.atom_count))

    @property
    def full_mask(self) -> int:
        return (1 << self.atom_count) - 1

    @cached_property
    def closure(self) -> tuple[int, ...]:
        """Contact closure table over element masks (see _core.contact_closure)."""
        return _core.contact_closure(self.atom_contact.neighbor_masks)

    def mask_of(self, element: Iterable[int]) -> int:
        mask = 0
        for atom in element:
            if not 0 <= atom < self.atom_count:
                raise ValueError(
                    f"atom {atom} out of range for a {self.atom_count}-atom algebra"
                )
            mask |= 1 << atom
        return mask

    def set_of(self, mask: int) -> Element:
        return frozenset(_core.iter_atoms(mask))

    def tuple_masks(self, entries: Iterable[Iterable[int]]) -> tuple[int, ...]:
        return tuple(self.mask_of(e) for e in entries)

    def tuple_sets(self, masks: Iterable[int]) -> tuple[Element, ...]:
        return tuple(self.set_of(m) for m in masks)

    def elements(self) -> Iterator[Element]:
        """All 2**atom_count elements, in mask (binary counter) order."""
        for mask in range(1 << self.atom_count):
            yield self.set_of(mask)

    def delta(self, a: Iterable[int], b: Iterable[int]) -> bool:
        """Contact: some atom of `a` is adjacent (or equal) to some atom of `b`."""
        return bool(self.closure[self.mask_of(a)] & self.mask_of(b))

    def delta_masks(self, a: int, b: int) -> bool:
        return bool(self.closure[a] & b)


def contact_from_graph(graph: FiniteGraph) -> ContactAlgebra:
    """The powerset contact algebra whose atom contact is the given graph."""
    return ContactAlgebra(graph)


def delta(algebra: ContactAlgebra, a: Iterable[int], b: Iterable[int]) -> bool:
    """Module-level spelling of ContactAlgebra.delta."""
    return algebra.delta(a, b)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the exhaustive contact-axiom sweep over one algebra."""

    atom_count: int
    instances: dict[str, int] = field(default_factory=dict)
    violations: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def total_instances(self) -> int:
        return sum(self.instances.values())


def verify_contact_axioms(
    algebra: ContactAlgebra,
    delta_fn: Callable[[ContactAlgebra, int, int], bool] | None = None,
) -> AxiomReport:
    """Exhaustively check the contact-algebra axioms over all elements.

    Checks, for every element (pair, triple) of the algebra:

    * the zero element is in contact with nothing,
    * every nonzero element is in contact with itself,
    * contact is symmetric,
    * contact distributes over binary joins in each argument.

    The default relation is an independent direct adjacency scan (not the
    precomputed closure table the fast paths use).  `delta_fn` may replace
    the relation under test; the test suite uses this hook to confirm that a
    deliberately broken relation is reported.

    The sweep is cubic in the element count, i.e. O(8**atoms), and refuses
    atom counts above the global size guard.
    """
    n = algebra.atom_count
    check_atoms(n, "contact axiom verification")

    if delta_fn is None:
        graph = algebra.atom_contact

        def delta_fn(alg: ContactAlgebra, x: int, y: int) -> bool:
            return any(
                graph.adjacent(p, q)
                for p in _core.iter_atoms(x)
                for q in _core.iter_atoms(y)
            )

    size = 1 << n
    table = [[delta_fn(algebra, x, y) for y in range(size)] for x in range(size)]

    violations: list[str] = []
    instances = {"zero": 0, "self": 0, "symmetry": 0, "join": 0}

    def render(mask: int) -> str:
        return "{" + ",".join(str(a) for a in _core.iter_atoms(mask)) + "}"

    for a in range(size):
        instances["zero"] += 1
        if table[0][a] or table[a][0]:
            violations.append(f"zero axiom fails: 0 in contact with {render(a)}")
        if a:
            instances["self"] += 1
            if not table[a][a]:
                violations.append(f"self axiom fails: {render(a)} not in contact with itself")

    for a in range(size):
        row = table[a]
        for b in range(a + 1, size):
            instances["symmetry"] += 1
            if row[b] != table[b][a]:
                violations.append(
                    f"symmetry fails between {render(a)} and {render(b)}"
                )

    for x in range(size):
        row = table[x]
        for y in range(size):
            dy = row[y]
            for z in range(size):
                if row[y | z] != (dy or row[z]):
                    violations.append(
                        "join axiom fails at x=%s y=%s z=%s"
                        % (render(x), render(y), render(z))
                    )
        instances["join"] += size * size

    return AxiomReport(n, instances, tuple(violations))


def _minimal_nonzero_masks(algebra: ContactAlgebra) -> list[int]:
    """Nonzero elements with no nonzero proper subelement, ascending by mask."""
    minimal = []
    for mask in range(1, algebra.full_mask + 1):
        # (mask - 1) & mask is the largest proper submask; it is nonzero
        # exactly when some nonzero element sits strictly below `mask`.
        if (mask - 1) & mask == 0:
            minimal.append(mask)
    return minimal


def ultrafilters(algebra: ContactAlgebra) -> list[frozenset[Element]]:
    """All ultrafilters of the underlying Boolean algebra.

    Each ultrafilter is returned as the frozenset of its member elements;
    the list is ordered by the minimal member.  In a finite powerset algebra
    these are exactly the principal filters above the singletons, which the
    test suite verifies against the ultrafilter axioms directly.
    """
    check_atoms(algebra.atom_count, "ultrafilter enumeration")
    out = []
    for minimal in _minimal_nonzero_masks(algebra):
        members = frozenset(
            algebra.set_of(mask)
            for mask in range(algebra.full_mask + 1)
            if mask & minimal == minimal
        )
        out.append(members)
    return out


def stone_prespace(algebra: ContactAlgebra) -> FiniteGraph:
    """The finite pre-space dual to the algebra.

    Vertices are the atoms (equivalently the principal ultrafilters taken at
    their minimal members, in ascending order) and two vertices are joined
    exactly when the corresponding atoms are in contact.  Composed with
    contact_from_graph this is the identity on graphs.
    """
    minimals = _minimal_nonzero_masks(algebra)
    edges = []
    for p in range(len(minimals)):
        for q in range(p + 1, len(minimals)):
            if algebra.delta_masks(minimals[p], minimals[q]):
                edges.append((p, q))
    return FiniteGraph(len(minimals), frozenset(edges))


def quotient_by_blocks(
    algebra: ContactAlgebra, blocks: tuple[Element, ...]
) -> ContactAlgebra:
    """The subalgebra generated by a partition of the atoms, as an algebra.

    The blocks become the atoms; two blocks are in contact exactly when they
    are in contact as elements of the ambient algebra.  Raises ValueError if
    `blocks` is not a partition of the atom set.
    """
    seen: set[int] = set()
    for block in blocks:
        if not block:
            raise ValueError("sub_atoms is not a partition: empty block")
        for atom in block:
            if not 0 <= atom < algebra.atom_count:
                raise ValueError(f"sub_atoms is not a partition: atom {atom} out of range")
            if atom in seen:
                raise ValueError(f"sub_atoms is not a partition: atom {atom} repeated")
            seen.add(atom)
    if len(seen) != algebra.atom_count:
        missing = sorted(set(range(algebra.atom_count)) - seen)
        raise ValueError(f"sub_atoms is not a partition: atoms {missing} missing")

    edges = []
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if algebra.delta(blocks[i], blocks[j]):
                edges.append((i, j))
    return ContactAlgebra(FiniteGraph(len(blocks), frozenset(edges)))


def block_union(blocks: tuple[Element, ...], indices: Iterable[int]) -> Element:
    """Union of the selected blocks, i.e. the ambient element of a quotient one."""
    out: set[int] = set()
    for index in indices:
        out |= blocks[index]
    return frozenset(out)
