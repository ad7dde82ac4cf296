"""Exhaustive verification suites, shared by the CLI and the test suite.

Each suite sweeps one algebraic fact over every instance below a documented
size bound and reports the instance count together with any violations.
Facts that involve only the Boolean structure (consolidation identities,
common refinements) are independent of the contact relation, so those sweeps
run over a single algebra per atom count; facts involving nerves sweep one
representative per graph isomorphism class, which is exhaustive because the
checked statements are invariant under atom relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from cologic import _core
from cologic.algebra import contact_from_graph, stone_prespace, verify_contact_axioms
from cologic.covers import enumerate_covering_walks
from cologic.fraisse import amalgamate, enumerate_patterns, is_is_epi
from cologic.graphs import (
    FiniteGraph,
    complete_graph,
    enumerate_graphs,
    enumerate_graphs_upto_iso,
    linear_graph,
)


@dataclass(frozen=True)
class SuiteReport:
    name: str
    bounds: str
    checked: int
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def render(self) -> str:
        verdict = "ok" if self.passed else f"{len(self.violations)} violation(s)"
        text = f"suite {self.name} ({self.bounds}): {self.checked} instances, {verdict}"
        if self.violations:
            text += "\n  first violation: " + self.violations[0]
        return text


def _mask_tuple_str(masks: Sequence[int]) -> str:
    return (
        "("
        + ",".join("{" + ",".join(map(str, _core.iter_atoms(m))) + "}" for m in masks)
        + ")"
    )


def contact_axioms_suite(max_vertices: int = 6) -> SuiteReport:
    """Axiom sweep over every graph with 1..max_vertices vertices up to isomorphism."""
    checked = 0
    violations: list[str] = []
    for n in range(1, max_vertices + 1):
        for graph in enumerate_graphs_upto_iso(n):
            report = verify_contact_axioms(contact_from_graph(graph))
            checked += report.total_instances()
            for violation in report.violations:
                violations.append(f"graph {sorted(graph.edges)} on {n}: {violation}")
    return SuiteReport(
        "contact-axioms",
        f"graphs with 1..{max_vertices} vertices up to isomorphism",
        checked,
        tuple(violations),
    )


def duality_suite(max_vertices: int = 5) -> SuiteReport:
    """Round trip through the dual pre-space over every labeled graph."""
    checked = 0
    violations: list[str] = []
    for n in range(1, max_vertices + 1):
        for graph in enumerate_graphs(n):
            checked += 1
            back = stone_prespace(contact_from_graph(graph))
            if back != graph:
                violations.append(
                    f"round trip changed {graph.to_json_dict()} into {back.to_json_dict()}"
                )
    return SuiteReport(
        "duality",
        f"all labeled graphs with 1..{max_vertices} vertices",
        checked,
        tuple(violations),
    )


def refinement_suite(max_atoms: int = 5, nerve_max_atoms: int = 4) -> SuiteReport:
    """Uniqueness, consolidation and nerve transfer along arrangements.

    Over every good tuple, every arrangement and every refinement following
    it, checks that meets land only inside the assigned block (so the
    arrangement followed is unique), that joining the fibers recovers the
    coarse tuple, and that the coarse nerve is a function of the arrangement
    and the fine nerve alone.  The first two facts never mention contact, so
    one algebra per atom count is exhaustive for them; the nerve transfer is
    swept over graph isomorphism class representatives, globally across
    algebras (it holds across models).
    """
    checked = 0
    violations: list[str] = []

    for atoms in range(1, max_atoms + 1):
        algebra = contact_from_graph(complete_graph(atoms))
        full = algebra.full_mask
        for length in range(1, atoms + 1):
            for coarse in _core.iter_good_mask_tuples(full, length):
                for images, fine in _core.iter_refinement_pairs(coarse, atoms):
                    checked += 1
                    for j, piece in enumerate(fine):
                        for i, block in enumerate(coarse):
                            if piece & block:
                                if i != images[j] or piece & ~block:
                                    violations.append(
                                        "uniqueness fails: "
                                        f"{_mask_tuple_str(fine)} via {images} in "
                                        f"{_mask_tuple_str(coarse)}"
                                    )
                    joined = [0] * length
                    for j, piece in enumerate(fine):
                        joined[images[j]] |= piece
                    if tuple(joined) != coarse:
                        violations.append(
                            "consolidation fails to recover "
                            f"{_mask_tuple_str(coarse)} from {_mask_tuple_str(fine)} "
                            f"along {images}"
                        )

    transfer: dict[tuple[tuple[int, ...], int], tuple[int, str]] = {}
    for atoms in range(1, nerve_max_atoms + 1):
        for graph in enumerate_graphs_upto_iso(atoms):
            algebra = contact_from_graph(graph)
            closure = algebra.closure
            for length in range(1, atoms + 1):
                for coarse in _core.iter_good_mask_tuples(algebra.full_mask, length):
                    coarse_nerve = _core.nerve_bits(coarse, closure)
                    for images, fine in _core.iter_refinement_pairs(coarse, atoms):
                        checked += 1
                        key = (images, _core.nerve_bits(fine, closure))
                        where = (
                            f"{_mask_tuple_str(fine)} over {sorted(graph.edges)}"
                        )
                        known = transfer.setdefault(key, (coarse_nerve, where))
                        if known[0] != coarse_nerve:
                            violations.append(
                                "nerve transfer differs for arrangement "
                                f"{key[0]}: {known[1]} vs {where}"
                            )
    return SuiteReport(
        "refinement",
        f"identities to {max_atoms} atoms, nerve transfer to {nerve_max_atoms} atoms",
        checked,
        tuple(violations),
    )


def undo_suite(max_atoms: int = 5) -> SuiteReport:
    """Consolidating the inner factor of a composite arrangement.

    Whenever a tuple follows f(g(.)) in a coarse tuple, its consolidation
    along g must follow f there.  The fact never mentions contact, so one
    algebra per atom count is exhaustive.
    """
    checked = 0
    violations: list[str] = []
    for atoms in range(1, max_atoms + 1):
        algebra = contact_from_graph(complete_graph(atoms))
        full = algebra.full_mask
        for target in range(1, atoms + 1):
            for coarse in _core.iter_good_mask_tuples(full, target):
                for middle in range(target, atoms + 1):
                    for outer in _core.surjections(middle, target):
                        for source in range(middle, atoms + 1):
                            for inner in _core.surjections(source, middle):
                                composite = _core.compose_images(outer, inner)
                                for fine in _core.iter_refinements(coarse, composite):
                                    checked += 1
                                    folded = [0] * middle
                                    for j, piece in enumerate(fine):
                                        folded[inner[j]] |= piece
                                    ok = all(
                                        folded[j] & ~coarse[outer[j]] == 0
                                        for j in range(middle)
                                    )
                                    if not ok:
                                        violations.append(
                                            f"undo fails: fine {_mask_tuple_str(fine)} "
                                            f"outer {outer} inner {inner} coarse "
                                            f"{_mask_tuple_str(coarse)}"
                                        )
    return SuiteReport(
        "undo",
        f"composable arrangement pairs over 1..{max_atoms} atoms",
        checked,
        tuple(violations),
    )


def directed_suite(max_atoms: int = 5) -> SuiteReport:
    """Common refinements exist, are good, and follow both inputs.

    Purely Boolean, so one algebra per atom count is exhaustive.
    """
    checked = 0
    violations: list[str] = []
    for atoms in range(1, max_atoms + 1):
        algebra = contact_from_graph(complete_graph(atoms))
        full = algebra.full_mask
        tuples = [
            masks
            for length in range(1, atoms + 1)
            for masks in _core.iter_good_mask_tuples(full, length)
        ]
        for left in tuples:
            for right in tuples:
                checked += 1
                entries = []
                to_left = []
                to_right = []
                for i, block_a in enumerate(left):
                    for j, block_b in enumerate(right):
                        meet = block_a & block_b
                        if meet:
                            entries.append(meet)
                            to_left.append(i)
                            to_right.append(j)
                union = 0
                good = True
                for mask in entries:
                    if union & mask:
                        good = False
                    union |= mask
                if not good or union != full:
                    violations.append(
                        f"meet tuple of {_mask_tuple_str(left)} and "
                        f"{_mask_tuple_str(right)} is not good"
                    )
                    continue
                if set(to_left) != set(range(len(left))) or set(to_right) != set(
                    range(len(right))
                ):
                    violations.append(
                        f"meet tuple misses a block of {_mask_tuple_str(left)} or "
                        f"{_mask_tuple_str(right)}"
                    )
                    continue
                if any(
                    entries[k] & ~left[to_left[k]] or entries[k] & ~right[to_right[k]]
                    for k in range(len(entries))
                ):
                    violations.append(
                        f"meet tuple fails to follow its arrangements for "
                        f"{_mask_tuple_str(left)} and {_mask_tuple_str(right)}"
                    )
    return SuiteReport(
        "directed",
        f"all good tuple pairs over 1..{max_atoms} atoms",
        checked,
        tuple(violations),
    )


def covering_walk_suite(max_atoms: int = 6, max_walk: int = 10) -> SuiteReport:
    """Consolidating a chain along a covering walk reproduces the walked nerve.

    For every realized nerve, every covering walk of it (up to the walk
    bound, capped by the atom count since longer walks have no chains to
    consolidate), and every chain of matching length in the same algebra,
    the consolidation along the walk-induced arrangement must have exactly
    the walked nerve.  The conclusion depends on the coarse tuple only
    through its nerve, so nerves are deduplicated; graphs run over
    isomorphism class representatives.
    """
    checked = 0
    violations: list[str] = []
    for atoms in range(1, max_atoms + 1):
        for graph in enumerate_graphs_upto_iso(atoms):
            algebra = contact_from_graph(graph)
            closure = algebra.closure
            full = algebra.full_mask
            chains_by_length: dict[int, list[tuple[int, ...]]] = {}
            for length in range(1, atoms + 1):
                path = _core.path_bits(length)
                chains_by_length[length] = [
                    masks
                    for masks in _core.iter_good_mask_tuples(full, length)
                    if _core.nerve_bits(masks, closure) == path
                ]
            nerves: dict[tuple[int, int], FiniteGraph] = {}
            for length in range(1, atoms + 1):
                for masks in _core.iter_good_mask_tuples(full, length):
                    bits = _core.nerve_bits(masks, closure)
                    if (length, bits) not in nerves:
                        edges = []
                        k = 0
                        for i in range(length):
                            for j in range(i + 1, length):
                                if bits >> k & 1:
                                    edges.append((i, j))
                                k += 1
                        nerves[(length, bits)] = FiniteGraph(length, frozenset(edges))
            for (length, bits), nerve_graph in sorted(nerves.items()):
                walk_cap = min(max_walk, atoms)
                if walk_cap < length:
                    continue
                seen_arrangements = set()
                for walk in enumerate_covering_walks(nerve_graph, walk_cap):
                    if walk in seen_arrangements:
                        continue
                    seen_arrangements.add(walk)
                    for chain in chains_by_length.get(len(walk), []):
                        checked += 1
                        joined = [0] * length
                        for position, vertex in enumerate(walk):
                            joined[vertex] |= chain[position]
                        if _core.nerve_bits(tuple(joined), closure) != bits:
                            violations.append(
                                f"walk {walk} over nerve {sorted(nerve_graph.edges)} "
                                f"and chain {_mask_tuple_str(chain)} change the nerve"
                            )
    return SuiteReport(
        "covering-walk",
        f"graphs to {max_atoms} atoms up to isomorphism, walks to length {max_walk}",
        checked,
        tuple(violations),
    )


def pattern_epi_suite(max_size: int = 6) -> SuiteReport:
    """Patterns between linear stages are exactly the Irwin-Solecki epis."""
    checked = 0
    violations: list[str] = []
    for source in range(1, max_size + 1):
        source_graph = linear_graph(source)
        for target in range(1, max_size + 1):
            target_graph = linear_graph(target)
            patterns = set(enumerate_patterns(source, target))
            brute = set()
            vector = [0] * source

            def rec(pos: int) -> None:
                if pos == source:
                    if is_is_epi(tuple(vector), source_graph, target_graph):
                        brute.add(tuple(vector))
                    return
                for v in range(target):
                    vector[pos] = v
                    rec(pos + 1)

            rec(0)
            checked += 1
            if patterns != brute:
                difference = sorted(patterns ^ brute)
                violations.append(
                    f"pattern/epi mismatch at {source}->{target}: {difference[:3]}"
                )
    return SuiteReport(
        "pattern-epi",
        f"all map spaces between linear stages with 1..{max_size} vertices",
        checked,
        tuple(violations),
    )


def amalgamation_suite(
    max_target: int = 3, max_source: int = 4, bound: int = 30
) -> SuiteReport:
    """Every pattern pair into a small common stage amalgamates within the bound."""
    checked = 0
    violations: list[str] = []
    for target in range(1, max_target + 1):
        lefts = [
            images
            for source in range(target, max_source + 1)
            for images in enumerate_patterns(source, target)
        ]
        for f in lefts:
            for g in lefts:
                checked += 1
                found = amalgamate(f, g, bound)
                if found is None:
                    violations.append(f"no amalgam for {f} and {g} within {bound}")
                    continue
                _, u, v = found
                if _core.compose_images(f, u) != _core.compose_images(g, v):
                    violations.append(f"square does not commute for {f} and {g}")
    return SuiteReport(
        "amalgamation",
        f"pattern pairs into stages of 1..{max_target}, sources to {max_source}",
        checked,
        tuple(violations),
    )


REGISTRY: dict[str, tuple[Callable[[], SuiteReport], str]] = {
    "contact-axioms": (
        contact_axioms_suite,
        "contact axioms over all graphs with up to 6 vertices (up to isomorphism)",
    ),
    "duality": (
        duality_suite,
        "pre-space round trip over all labeled graphs with up to 5 vertices",
    ),
    "refinement": (
        refinement_suite,
        "arrangement uniqueness, consolidation and nerve transfer (up to 5 atoms)",
    ),
    "undo": (
        undo_suite,
        "inner-factor consolidation along composite arrangements (up to 5 atoms)",
    ),
    "directed": (
        directed_suite,
        "pairwise common refinements of good tuples (up to 5 atoms)",
    ),
    "covering-walk": (
        covering_walk_suite,
        "nerve preservation along covering walks (up to 6 atoms, walks to 10)",
    ),
    "pattern-epi": (
        pattern_epi_suite,
        "patterns equal Irwin-Solecki epis between linear stages (up to 6)",
    ),
    "amalgamation": (
        amalgamation_suite,
        "bounded amalgamation of pattern pairs (targets to 3, sources to 4)",
    ),
}


def run_suite(name: str) -> SuiteReport:
    if name not in REGISTRY:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(REGISTRY))}")
    return REGISTRY[name][0]()
