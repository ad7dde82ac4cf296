"""Finite linear graphs, their epimorphisms, and bounded limit approximations.

The class of finite linear graphs is projectively amalgamable: any two
patterns into a common stage extend to a commuting square.  Iterating the
amalgamation while dovetailing the bounded epimorphism obligations yields
finite initial segments of a limit sequence whose inverse limit would be the
pre-space of the pseudo-arc; the ledger records which obligations each
finite build has discharged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from cologic import _core
from cologic.algebra import ContactAlgebra, Element, contact_from_graph
from cologic.covers import Arrangement, GoodTuple, _require_good, is_chain
from cologic.graphs import FiniteGraph, linear_graph
from cologic.semantics import SearchBudgetExceeded, _TypeContext


class AmalgamationError(RuntimeError):
    """The bounded amalgamation search ran out of room for an obligation."""


# ---------------------------------------------------------------------------
# Epimorphisms and patterns


def is_is_epi(images: Sequence[int], source: FiniteGraph, target: FiniteGraph) -> bool:
    """Whether the vertex map is an Irwin-Solecki epimorphism.

    The map must be surjective, send adjacent vertices to adjacent (or
    equal) vertices, and lift every target edge to an adjacent source pair.
    """
    images = tuple(images)
    if len(images) != source.vertex_count:
        raise ValueError(
            f"arity mismatch: map has {len(images)} entries, source has "
            f"{source.vertex_count} vertices"
        )
    if any(not 0 <= v < target.vertex_count for v in images):
        raise ValueError("arity mismatch: image vertex out of range")
    if len(set(images)) != target.vertex_count:
        return False
    for i, j in source.edges:
        if not target.adjacent(images[i], images[j]):
            return False
    for u, v in target.edges:
        if not any(
            {images[i], images[j]} == {u, v}
            for i, j in source.edges
        ):
            return False
    return True


def is_pattern_epi(images: Sequence[int], source: int, target: int) -> bool:
    """Surjective onto `target` and consecutive images step by at most one."""
    images = tuple(images)
    if len(images) != source:
        raise ValueError(f"map has {len(images)} entries, expected {source}")
    if any(not 0 <= v < target for v in images):
        return False
    if len(set(images)) != target:
        return False
    return all(abs(images[i + 1] - images[i]) <= 1 for i in range(source - 1))


def enumerate_patterns(source: int, target: int) -> list[tuple[int, ...]]:
    """All patterns source onto target, lexicographically."""
    if target < 1 or source < target:
        return []
    out: list[tuple[int, ...]] = []
    vector = [0] * source

    def rec(pos: int, unseen: int) -> None:
        missing = unseen.bit_count()
        if source - pos < missing:
            return
        if pos == source:
            if not unseen:
                out.append(tuple(vector))
            return
        if pos == 0:
            candidates = range(target)
        else:
            prev = vector[pos - 1]
            candidates = [v for v in (prev - 1, prev, prev + 1) if 0 <= v < target]
        for v in candidates:
            vector[pos] = v
            rec(pos + 1, unseen & ~(1 << v))

    rec(0, (1 << target) - 1)
    out.sort()
    return out


def common_refinement_linear(
    length0: int, length1: int
) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Smallest linear stage admitting patterns onto both given stages.

    Returns (N, f0, f1) with f0: N onto length0 and f1: N onto length1, the
    lexicographically least such pair at the least N.  A stretch-then-hold
    pattern exists for every N at least max(length0, length1), so the search
    always succeeds there.
    """
    if length0 < 1 or length1 < 1:
        raise ValueError("stage lengths must be positive")
    size = max(length0, length1)
    while True:
        left = enumerate_patterns(size, length0)
        right = enumerate_patterns(size, length1)
        if left and right:
            return size, left[0], right[0]
        size += 1


# ---------------------------------------------------------------------------
# Amalgamation


def _cover_lower_bound(position: int, unvisited: set[int]) -> int:
    if not unvisited:
        return 0
    lo = min(unvisited)
    hi = max(unvisited)
    return (hi - lo) + min(abs(position - lo), abs(position - hi))


def amalgamate(
    f: Sequence[int], g: Sequence[int], max_size: int = 30
) -> tuple[int, tuple[int, ...], tuple[int, ...]] | None:
    """Complete two patterns with a common target into a commuting square.

    Searches walks through the fiber product {(i, j) : f(i) = g(j)} with
    coordinatewise steps of at most one whose projections u and v are
    surjective; then f(u(x)) = g(v(x)) for every x and both projections are
    patterns (between linear stages, equivalently Irwin-Solecki epis, which
    is re-verified on the result).  The least walk length within `max_size`
    wins, ties broken by the lexicographically least walk; returns None when
    the bound is exhausted.
    """
    f = tuple(f)
    g = tuple(g)
    if not f or not g:
        raise ValueError("patterns must be nonempty")
    target = max(f) + 1
    if max(g) + 1 != target:
        raise ValueError(
            f"patterns must share a target: {max(f) + 1} vs {max(g) + 1}"
        )
    for name, images, size in (("f", f, len(f)), ("g", g, len(g))):
        if not is_pattern_epi(images, size, target):
            raise ValueError(f"{name} is not a pattern onto {target}")

    a, b = len(f), len(g)
    pairs = sorted((i, j) for i in range(a) for j in range(b) if f[i] == g[j])
    pair_set = set(pairs)

    for size in range(max(a, b), max_size + 1):
        walk: list[tuple[int, int]] = []
        missing_i = set(range(a))
        missing_j = set(range(b))

        def extend() -> bool:
            remaining = size - len(walk)
            if remaining == 0:
                return not missing_i and not missing_j
            if walk:
                i, j = walk[-1]
                # Each further position moves both coordinates by at most one.
                if (
                    max(
                        _cover_lower_bound(i, missing_i),
                        _cover_lower_bound(j, missing_j),
                    )
                    > remaining
                ):
                    return False
                candidates = sorted(
                    (i + di, j + dj)
                    for di in (-1, 0, 1)
                    for dj in (-1, 0, 1)
                    if (i + di, j + dj) in pair_set
                )
            else:
                candidates = pairs
            for ni, nj in candidates:
                new_i = ni in missing_i
                new_j = nj in missing_j
                walk.append((ni, nj))
                if new_i:
                    missing_i.remove(ni)
                if new_j:
                    missing_j.remove(nj)
                if extend():
                    return True
                if new_i:
                    missing_i.add(ni)
                if new_j:
                    missing_j.add(nj)
                walk.pop()
            return False

        if extend():
            u = tuple(i for i, _ in walk)
            v = tuple(j for _, j in walk)
            if not (
                is_is_epi(u, linear_graph(size), linear_graph(a))
                and is_is_epi(v, linear_graph(size), linear_graph(b))
                and _core.compose_images(f, u) == _core.compose_images(g, v)
            ):
                raise AssertionError("amalgamation witness failed verification")
            return size, u, v
    return None


# ---------------------------------------------------------------------------
# Bounded limit sequences


@dataclass(frozen=True)
class Obligation:
    """One bounded epimorphism obligation against a stage of the sequence."""

    target_stage: int
    epi: tuple[int, ...]
    discharged_at: int | None
    witness: tuple[int, ...] | None

    @property
    def status(self) -> str:
        return "queued" if self.discharged_at is None else "discharged"

    @property
    def source_size(self) -> int:
        return len(self.epi)


@dataclass(frozen=True)
class FraisseSequence:
    """Finitely many linear stages with pattern bonding maps and a ledger.

    `bonding[t]` maps stage t+1 onto stage t.  The ledger lists every
    epimorphism obligation of bounded source size against the stages, each
    recorded as discharged (with the witnessing factorisation) or queued.
    The composite cache is written at build time and re-derivable from the
    bonding maps.
    """

    stage_sizes: tuple[int, ...]
    bonding: tuple[tuple[int, ...], ...]
    ledger: tuple[Obligation, ...]
    size_bound: int
    composite_cache: tuple[tuple[int, int, tuple[int, ...]], ...]

    def stage(self, index: int) -> FiniteGraph:
        return linear_graph(self.stage_sizes[index])

    def composite(self, higher: int, lower: int) -> tuple[int, ...]:
        """Images of the bonding composite from stage `higher` down to `lower`."""
        if not 0 <= lower <= higher < len(self.stage_sizes):
            raise ValueError(f"no composite from stage {higher} to {lower}")
        images = tuple(range(self.stage_sizes[higher]))
        for level in range(higher - 1, lower - 1, -1):
            images = _core.compose_images(self.bonding[level], images)
        return images

    def validate(self) -> None:
        """Re-check every structural invariant; raises ValueError on defect."""
        if len(self.bonding) != len(self.stage_sizes) - 1:
            raise ValueError("one bonding map is required between consecutive stages")
        for t, images in enumerate(self.bonding):
            if len(images) != self.stage_sizes[t + 1]:
                raise ValueError(f"bonding map {t} has the wrong source size")
            if not is_pattern_epi(images, self.stage_sizes[t + 1], self.stage_sizes[t]):
                raise ValueError(f"bonding map {t} is not a pattern")
        if any(
            self.stage_sizes[t] > self.stage_sizes[t + 1]
            for t in range(len(self.stage_sizes) - 1)
        ):
            raise ValueError("stage sizes must be nondecreasing")
        cached = {(m, n): images for m, n, images in self.composite_cache}
        for m in range(len(self.stage_sizes)):
            for n in range(m + 1):
                expected = self.composite(m, n)
                if cached.get((m, n), expected) != expected:
                    raise ValueError(f"composite cache disagrees at ({m}, {n})")
        for entry in self.ledger:
            size = self.stage_sizes[entry.target_stage]
            if not is_pattern_epi(entry.epi, len(entry.epi), size):
                raise ValueError(f"ledger obligation {entry.epi} is not a pattern")
            if entry.discharged_at is not None:
                witness = entry.witness
                if witness is None:
                    raise ValueError("discharged obligation lacks a witness")
                composite = self.composite(entry.discharged_at, entry.target_stage)
                if _core.compose_images(entry.epi, witness) != composite:
                    raise ValueError(
                        f"witness for {entry.epi} does not factor the bonding composite"
                    )

    def to_json_dict(self) -> dict:
        return {
            "stages": list(self.stage_sizes),
            "bonding": [list(images) for images in self.bonding],
            "size_bound": self.size_bound,
            "ledger": [
                {
                    "target_stage": entry.target_stage,
                    "epi": list(entry.epi),
                    "status": entry.status,
                    "discharged_at": entry.discharged_at,
                    "witness": None if entry.witness is None else list(entry.witness),
                }
                for entry in self.ledger
            ],
            "composites": [
                {"from": m, "to": n, "images": list(images)}
                for m, n, images in self.composite_cache
            ],
        }

    @staticmethod
    def from_json_dict(data: object) -> "FraisseSequence":
        if not isinstance(data, dict):
            raise ValueError("sequence document must be a JSON object")
        try:
            stages = tuple(int(v) for v in data["stages"])
            bonding = tuple(tuple(int(v) for v in images) for images in data["bonding"])
            size_bound = int(data["size_bound"])
            ledger = tuple(
                Obligation(
                    int(entry["target_stage"]),
                    tuple(int(v) for v in entry["epi"]),
                    None if entry["discharged_at"] is None else int(entry["discharged_at"]),
                    None if entry["witness"] is None else tuple(int(v) for v in entry["witness"]),
                )
                for entry in data["ledger"]
            )
            composites = tuple(
                (int(c["from"]), int(c["to"]), tuple(int(v) for v in c["images"]))
                for c in data.get("composites", [])
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed sequence document: {exc}") from None
        seq = FraisseSequence(stages, bonding, ledger, size_bound, composites)
        seq.validate()
        return seq

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


def _factor_through(
    stage_size: int, epi: tuple[int, ...], composite: tuple[int, ...]
) -> tuple[int, ...] | None:
    """Least pattern g with epi(g(x)) = composite(x), if one exists."""
    for candidate in enumerate_patterns(stage_size, len(epi)):
        if _core.compose_images(epi, candidate) == composite:
            return candidate
    return None


def build_fraisse_sequence(
    stage_count: int,
    size_bound: int,
    amalgamation_bound: int = 30,
) -> FraisseSequence:
    """Build finitely many stages, discharging bounded obligations as they come.

    The build starts from the one-vertex stage.  Whenever a new stage is
    created, all pending obligations (ordered by target stage, source size,
    then map) are discharged: against an existing stage when the bonding
    composite already factors through the obligation, otherwise by folding
    an amalgamation into the stage under construction.  Obligations against
    the final stage remain queued.

    Raises AmalgamationError naming the stuck obligation if the bounded
    amalgamation search fails (raise `amalgamation_bound` to retry).
    """
    if stage_count < 1:
        raise ValueError(f"stage_count must be positive, got {stage_count}")
    if size_bound < 1:
        raise ValueError(f"size_bound must be positive, got {size_bound}")

    sizes = [1]
    bonding: list[tuple[int, ...]] = []
    records: list[dict] = []

    def composite(higher: int, lower: int) -> tuple[int, ...]:
        images = tuple(range(sizes[higher]))
        for level in range(higher - 1, lower - 1, -1):
            images = _core.compose_images(bonding[level], images)
        return images

    def add_obligations(stage_index: int) -> None:
        size = sizes[stage_index]
        for source in range(size, size_bound + 1):
            for epi in enumerate_patterns(source, size):
                records.append(
                    {"target": stage_index, "epi": epi, "at": None, "witness": None}
                )

    for new_stage in range(1, stage_count):
        if new_stage == 1:
            add_obligations(0)
        pending = [rec for rec in records if rec["at"] is None]
        pending.sort(key=lambda rec: (rec["target"], len(rec["epi"]), rec["epi"]))
        fold = tuple(range(sizes[-1]))
        folded: list[dict] = []
        for rec in pending:
            epi = rec["epi"]
            discharged = False
            for stage in range(rec["target"], new_stage):
                witness = _factor_through(sizes[stage], epi, composite(stage, rec["target"]))
                if witness is not None:
                    rec["at"], rec["witness"] = stage, witness
                    discharged = True
                    break
            if discharged:
                continue
            down = _core.compose_images(composite(new_stage - 1, rec["target"]), fold)
            found = amalgamate(epi, down, amalgamation_bound)
            if found is None:
                raise AmalgamationError(
                    f"no amalgam within size {amalgamation_bound} for the "
                    f"obligation {epi} onto stage {rec['target']}"
                )
            _, u, v = found
            fold = _core.compose_images(fold, v)
            for prev in folded:
                prev["witness"] = _core.compose_images(prev["witness"], v)
            rec["at"], rec["witness"] = new_stage, u
            folded.append(rec)
        sizes.append(len(fold))
        bonding.append(fold)
        add_obligations(new_stage)

    ledger = tuple(
        Obligation(rec["target"], rec["epi"], rec["at"], rec["witness"])
        for rec in records
    )
    composites = []
    for m in range(len(sizes)):
        for n in range(m + 1):
            composites.append((m, n, composite(m, n)))
    sequence = FraisseSequence(
        tuple(sizes), tuple(bonding), ledger, size_bound, tuple(composites)
    )
    sequence.validate()
    return sequence


@dataclass(frozen=True)
class AuditEntry:
    epi: tuple[int, ...]
    discharged_at: int | None
    witness: tuple[int, ...] | None


@dataclass(frozen=True)
class AuditReport:
    stage_index: int
    size_bound: int
    entries: tuple[AuditEntry, ...]

    @property
    def all_discharged(self) -> bool:
        return all(entry.discharged_at is not None for entry in self.entries)

    def undischarged(self) -> tuple[AuditEntry, ...]:
        return tuple(e for e in self.entries if e.discharged_at is None)


def extension_property_audit(
    sequence: FraisseSequence, stage_index: int, size_bound: int
) -> AuditReport:
    """Verify the defining factorisation property against one stage.

    For every pattern epimorphism onto the stage with source size at most
    `size_bound`, report the least stage whose bonding composite factors
    through it, together with the factorisation, or report it undischarged.
    """
    if not 0 <= stage_index < len(sequence.stage_sizes):
        raise ValueError(f"stage index {stage_index} out of range")
    if size_bound < 1:
        raise ValueError(f"size_bound must be positive, got {size_bound}")
    stage_size = sequence.stage_sizes[stage_index]
    entries = []
    for source in range(stage_size, size_bound + 1):
        for epi in enumerate_patterns(source, stage_size):
            found: tuple[int, tuple[int, ...]] | None = None
            for stage in range(stage_index, len(sequence.stage_sizes)):
                witness = _factor_through(
                    sequence.stage_sizes[stage], epi, sequence.composite(stage, stage_index)
                )
                if witness is not None:
                    found = (stage, witness)
                    break
            if found is None:
                entries.append(AuditEntry(epi, None, None))
            else:
                entries.append(AuditEntry(epi, found[0], found[1]))
    return AuditReport(stage_index, size_bound, tuple(entries))


# ---------------------------------------------------------------------------
# Chains in algebras of linear graphs


def _require_linear_algebra(algebra: ContactAlgebra, operation: str) -> None:
    if not algebra.atom_contact.is_linear():
        raise ValueError(f"{operation} expects the contact algebra of a linear graph")


def chain_refinement(
    algebra: ContactAlgebra, entries: Sequence[Element]
) -> tuple[GoodTuple, Arrangement]:
    """A chain refining the tuple, with the arrangement it follows.

    Over a linear graph the singleton-atom chain refines every good tuple,
    so it is the default witness: entry j is {j} and the arrangement sends
    each atom to the block containing it.
    """
    _require_linear_algebra(algebra, "chain_refinement")
    masks = _require_good(algebra, entries, "tuple")
    images = [0] * algebra.atom_count
    for index, mask in enumerate(masks):
        for atom in _core.iter_atoms(mask):
            images[atom] = index
    chain = tuple(frozenset((atom,)) for atom in range(algebra.atom_count))
    return chain, Arrangement(tuple(images), len(masks))


def chain_following_pattern(
    algebra: ContactAlgebra,
    chain: Sequence[Element],
    pattern: Arrangement,
) -> GoodTuple | None:
    """Lexicographically least chain following the pattern, or None.

    The finite algebra may simply be too small to split as requested, in
    which case no refinement (let alone a chain) exists.
    """
    if not pattern.is_pattern:
        raise ValueError(f"arrangement {pattern.images} is not a pattern")
    masks = _require_good(algebra, chain, "chain")
    if not is_chain(algebra, chain):
        raise ValueError("tuple is not a chain")
    if len(masks) != pattern.target:
        raise ValueError(
            f"length mismatch: chain has {len(masks)} entries, pattern target is "
            f"{pattern.target}"
        )
    path = _core.path_bits(pattern.source)
    for refined in _core.iter_refinements(masks, pattern.images):
        if _core.nerve_bits(refined, algebra.closure) == path:
            return algebra.tuple_sets(refined)
    return None


# ---------------------------------------------------------------------------
# The non-irreducible example family


def example_gn(n: int) -> FiniteGraph:
    """The graph on the binary strings of length n plus a star vertex.

    Vertices 0 .. 2^n - 1 are the strings in lexicographic (numeric) order
    and vertex 2^n is the star; the single non-loop edge joins the all-ones
    string to the star.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    strings = 1 << n
    return FiniteGraph(strings + 1, frozenset({(strings - 1, strings)}))


def example_gn_epi(m: int, n: int) -> tuple[int, ...]:
    """The truncation-plus-star map from the length-n family member to the length-m one.

    Strings are truncated to their first m bits and the star maps to the
    star; requires m <= n.  The result passes is_is_epi between the two
    graphs.
    """
    if m < 0 or n < 0:
        raise ValueError("string lengths must be non-negative")
    if m > n:
        raise ValueError(f"cannot truncate length-{n} strings to length {m} > {n}")
    images = [i >> (n - m) for i in range(1 << n)]
    images.append(1 << m)
    return tuple(images)


# ---------------------------------------------------------------------------
# Chain type report


@dataclass(frozen=True)
class ChainTypeCell:
    """Verdict for one (stage size, chain length, depth) combination."""

    stage_size: int
    chain_length: int
    depth: int
    chain_count: int
    all_equivalent: bool | None
    detail: str


@dataclass(frozen=True)
class ChainTypeReport:
    max_stage: int
    max_chain_length: int
    depths: tuple[int, ...]
    budget: int
    cells: tuple[ChainTypeCell, ...]

    def render(self) -> str:
        lines = [
            "chain type report: pairwise bounded-type equivalence of chains",
            f"stages up to L{self.max_stage}, chain lengths up to "
            f"{self.max_chain_length}, depths {list(self.depths)}, "
            f"work budget {self.budget} per cell",
        ]
        for cell in self.cells:
            verdict = (
                "inconclusive"
                if cell.all_equivalent is None
                else ("all equivalent" if cell.all_equivalent else "distinct types")
            )
            lines.append(
                f"  L{cell.stage_size} length={cell.chain_length} "
                f"depth={cell.depth} chains={cell.chain_count}: {verdict}"
                + (f" ({cell.detail})" if cell.detail else "")
            )
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "max_stage": self.max_stage,
            "max_chain_length": self.max_chain_length,
            "depths": list(self.depths),
            "budget": self.budget,
            "cells": [
                {
                    "stage_size": cell.stage_size,
                    "chain_length": cell.chain_length,
                    "depth": cell.depth,
                    "chain_count": cell.chain_count,
                    "all_equivalent": cell.all_equivalent,
                    "detail": cell.detail,
                }
                for cell in self.cells
            ],
        }


def _render_mask_tuple(masks: Sequence[int]) -> str:
    return (
        "("
        + ",".join("{" + ",".join(map(str, _core.iter_atoms(m))) + "}" for m in masks)
        + ")"
    )


def chain_type_report(
    max_stage: int = 8,
    max_chain_length: int = 4,
    depths: Sequence[int] = (0, 1, 2),
    budget: int = 2_000_000,
) -> ChainTypeReport:
    """Report whether all chains of each length share one bounded type.

    For every linear stage up to `max_stage` and every chain length up to
    `max_chain_length`, the report records whether all chains of that length
    in the stage's contact algebra are pairwise equivalent at each depth.
    Verdicts are computed by streaming type fingerprints and stop at the
    second distinct value; a cell whose computation would exceed `budget`
    refinement enumerations is recorded as inconclusive, and verdicts at
    higher depths reuse lower-depth distinctness (equivalence at depth d+1
    implies equivalence at depth d).  The report is deterministic for fixed
    parameters.
    """
    depths = tuple(sorted(set(depths)))
    if any(d < 0 for d in depths):
        raise ValueError("depths must be non-negative")
    cells: list[ChainTypeCell] = []
    for stage_size in range(1, max_stage + 1):
        algebra = contact_from_graph(linear_graph(stage_size))
        for length in range(1, min(max_chain_length, stage_size) + 1):
            path = _core.path_bits(length)
            chains = [
                masks
                for masks in _core.iter_good_mask_tuples(algebra.full_mask, length)
                if _core.nerve_bits(masks, algebra.closure) == path
            ]
            previous: bool | None = True
            previous_detail = ""
            for depth in depths:
                if previous is None:
                    cells.append(
                        ChainTypeCell(
                            stage_size,
                            length,
                            depth,
                            len(chains),
                            None,
                            "inherited: lower depth was inconclusive",
                        )
                    )
                    continue
                if previous is False:
                    cells.append(
                        ChainTypeCell(
                            stage_size,
                            length,
                            depth,
                            len(chains),
                            False,
                            f"inherited: {previous_detail}",
                        )
                    )
                    continue
                if len(chains) < 2:
                    cells.append(
                        ChainTypeCell(
                            stage_size,
                            length,
                            depth,
                            len(chains),
                            True,
                            "fewer than two chains",
                        )
                    )
                    previous = True
                    continue
                ctx = _TypeContext(budget)
                printer = ctx.printer(algebra, stage_size)
                verdict: bool | None = True
                detail = "one shared fingerprint"
                try:
                    first_value = None
                    first_chain = None
                    for masks in chains:
                        value = printer.value(masks, depth)
                        if first_value is None:
                            first_value, first_chain = value, masks
                        elif value != first_value:
                            verdict = False
                            detail = (
                                f"depth {depth} separates "
                                f"{_render_mask_tuple(first_chain)} from "
                                f"{_render_mask_tuple(masks)}"
                            )
                            break
                except SearchBudgetExceeded:
                    verdict = None
                    detail = f"work budget of {budget} exceeded"
                cells.append(
                    ChainTypeCell(
                        stage_size, length, depth, len(chains), verdict, detail
                    )
                )
                previous = verdict
                if verdict is False:
                    previous_detail = detail
    return ChainTypeReport(
        max_stage, max_chain_length, depths, budget, tuple(cells)
    )
