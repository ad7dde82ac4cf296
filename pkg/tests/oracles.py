"""Independent oracles the tests check the package against.

Everything here recomputes expected values through a different route than
the implementation: set partitions are built recursively and then permuted
(the package assigns label vectors), epimorphisms are filtered from the full
map space, and bounded-rank equivalence is decided by evaluating concrete
separating formulas with the model checker rather than by playing the game.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from cologic._core import surjections
from cologic.algebra import ContactAlgebra
from cologic.covers import Arrangement, nerve, refinements_following
from cologic.formulas import Bottom, Exists, Formula, GraphAtom, Not, Or
from cologic.graphs import FiniteGraph
from cologic.semantics import satisfies


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def factorial(n: int) -> int:
    out = 1
    for v in range(2, n + 1):
        out *= v
    return out


def surjection_count(source: int, target: int) -> int:
    return factorial(target) * stirling2(source, target)


def set_partitions(items: tuple[int, ...]) -> list[list[tuple[int, ...]]]:
    """All partitions of the items into unordered nonempty blocks."""
    if not items:
        return [[]]
    head, rest = items[0], items[1:]
    out = []
    for partition in set_partitions(rest):
        out.append([(head,)] + partition)
        for index, block in enumerate(partition):
            grown = partition[:index] + [(head,) + block] + partition[index + 1 :]
            out.append(grown)
    return out


def ordered_partitions_brute(
    items: tuple[int, ...], parts: int
) -> list[tuple[frozenset[int], ...]]:
    """All ordered partitions into `parts` blocks: set partitions, then permuted."""
    seen = set()
    for partition in set_partitions(items):
        if len(partition) != parts:
            continue
        for order in permutations(partition):
            seen.add(tuple(frozenset(block) for block in order))
    return sorted(seen, key=lambda tu: tuple(tuple(sorted(b)) for b in tu))


def brute_epis(source: FiniteGraph, target: FiniteGraph) -> set[tuple[int, ...]]:
    """All maps passing the epimorphism conditions, checked from the definition."""
    out = set()
    for images in product(range(target.vertex_count), repeat=source.vertex_count):
        if set(images) != set(range(target.vertex_count)):
            continue
        if any(
            not target.adjacent(images[i], images[j]) for i, j in source.edges
        ):
            continue
        lifts = True
        for u, v in target.edges:
            if not any(
                {images[i], images[j]} == {u, v} for i, j in source.edges
            ):
                lifts = False
                break
        if lifts:
            out.add(images)
    return out


def brute_covering_walks(graph: FiniteGraph, length: int) -> list[tuple[int, ...]]:
    """All covering walks of exactly `length` positions, by full enumeration."""
    out = []
    for walk in product(range(graph.vertex_count), repeat=length):
        if any(not graph.adjacent(a, b) for a, b in zip(walk, walk[1:])):
            continue
        if set(walk) != set(range(graph.vertex_count)):
            continue
        steps = {(min(a, b), max(a, b)) for a, b in zip(walk, walk[1:]) if a != b}
        if graph.edges <= steps:
            out.append(walk)
    return out


def conjunction(parts: list[Formula]) -> Formula:
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[0]
    for part in parts[1:]:
        out = Not(Or(Not(out), Not(part)))
    return out


def good_mask_tuples(atoms: int, length: int) -> list[tuple[frozenset[int], ...]]:
    return ordered_partitions_brute(tuple(range(atoms)), length)


class RankAgreementOracle:
    """Bounded-rank indistinguishability decided through separating formulas.

    The rank-0 family over a context is the set of graph atoms over the
    nerves realized in the given models; the rank-(d+1) family adds, for
    every arrangement within the atom cap and every rank-d satisfaction row
    of the refinement context, the existential formula whose body conjoins
    the signed rank-d family along that row.  Two tuples agree on every
    formula of rank at most d exactly when they have equal rank-d rows.

    Rows are computed by the textbook fixpoint (an existential bit holds
    when some refinement realizes the row the body describes); the method
    `check_formula_semantics` confirms on demand that those bits coincide
    with literal model checking of the materialised formulas.
    """

    def __init__(self, models: list[ContactAlgebra]):
        self.models = models
        self.cap = max(model.atom_count for model in models)
        self.tuples: dict[int, list[tuple[int, tuple[frozenset[int], ...]]]] = {}
        for n in range(1, self.cap + 1):
            entries = []
            for index, model in enumerate(models):
                if n <= model.atom_count:
                    for tu in good_mask_tuples(model.atom_count, n):
                        entries.append((index, tu))
            self.tuples[n] = entries
        self._atoms: dict[int, list[GraphAtom]] = {}
        self._rows: dict[tuple[int, int, tuple], tuple] = {}
        self._classes: dict[tuple[int, int], list[tuple]] = {}

    def atoms(self, context: int) -> list[GraphAtom]:
        if context not in self._atoms:
            seen = set()
            out = []
            for index, tu in self.tuples.get(context, []):
                graph = nerve(self.models[index], tu)
                if graph not in seen:
                    seen.add(graph)
                    out.append(GraphAtom(graph))
            out.sort(key=lambda atom: sorted(atom.graph.edges))
            self._atoms[context] = out
        return self._atoms[context]

    def challenges(self, rank: int, context: int) -> list[tuple[tuple[int, ...], tuple]]:
        """(arrangement images, child class row) pairs indexing the rank family."""
        out = []
        for source in range(context, self.cap + 1):
            for images in surjections(source, context):
                for row in self.classes(rank - 1, source):
                    out.append((images, row))
        return out

    def classes(self, rank: int, context: int) -> list[tuple]:
        key = (rank, context)
        if key not in self._classes:
            self._classes[key] = sorted(
                {self.row(rank, index, tu) for index, tu in self.tuples.get(context, [])}
            )
        return self._classes[key]

    def row(self, rank: int, model_index: int, tu: tuple) -> tuple:
        key = (rank, model_index, tu)
        hit = self._rows.get(key)
        if hit is not None:
            return hit
        model = self.models[model_index]
        bits = [satisfies(model, tu, atom) for atom in self.atoms(len(tu))]
        if rank > 0:
            for images, target_row in self.challenges(rank, len(tu)):
                arrangement = Arrangement(images, len(tu))
                bits.append(
                    any(
                        self.row(rank - 1, model_index, refined) == target_row
                        for refined in refinements_following(model, tu, arrangement)
                    )
                )
        hit = tuple(bits)
        self._rows[key] = hit
        return hit

    def agree(
        self,
        rank: int,
        first: tuple[int, tuple[frozenset[int], ...]],
        second: tuple[int, tuple[frozenset[int], ...]],
    ) -> bool:
        return self.row(rank, *first) == self.row(rank, *second)

    def class_formula(self, rank: int, context: int, row: tuple) -> Formula:
        """The conjunction describing one rank/context class, as a real formula."""
        family = self.family_formulas(rank, context)
        if len(family) != len(row):
            raise ValueError("row width does not match the family")
        return conjunction(
            [formula if bit else Not(formula) for formula, bit in zip(family, row)]
        )

    def family_formulas(self, rank: int, context: int) -> list[Formula]:
        """The separating family materialised as concrete formulas."""
        out: list[Formula] = list(self.atoms(context))
        if rank > 0:
            for images, row in self.challenges(rank, context):
                out.append(
                    Exists(
                        Arrangement(images, context),
                        self.class_formula(rank - 1, len(images), row),
                    )
                )
        return out

    def check_formula_semantics(
        self, rank: int, model_index: int, tu: tuple, limit: int = 12
    ) -> bool:
        """Row bits equal literal model checking of the materialised family."""
        family = self.family_formulas(rank, len(tu))
        row = self.row(rank, model_index, tu)
        for formula, bit in list(zip(family, row))[:limit]:
            if satisfies(self.models[model_index], tu, formula) != bit:
                return False
        for formula, bit in list(zip(family, row))[-limit:]:
            if satisfies(self.models[model_index], tu, formula) != bit:
                return False
        return True


def enumerate_formulas(
    graphs_by_context: dict[int, list[FiniteGraph]],
    max_nodes: int,
    max_context: int,
) -> list[Formula]:
    """Literal bottom-up enumeration of core ASTs with at most `max_nodes` nodes."""
    by_size: dict[int, list[Formula]] = {}
    by_size[1] = [Bottom(n) for n in range(1, max_context + 1)]
    for n, graphs in graphs_by_context.items():
        if n <= max_context:
            by_size[1].extend(GraphAtom(g) for g in graphs)
    for size in range(2, max_nodes + 1):
        layer: list[Formula] = []
        for child in by_size.get(size - 1, []):
            layer.append(Not(child))
            for target in range(1, child.context + 1):
                for images in surjections(child.context, target):
                    layer.append(Exists(Arrangement(images, target), child))
        for left_size in range(1, size - 1):
            for left in by_size.get(left_size, []):
                for right in by_size.get(size - 1 - left_size, []):
                    if left.context == right.context:
                        layer.append(Or(left, right))
        by_size[size] = layer
    out = []
    for layer in by_size.values():
        out.extend(layer)
    return out
