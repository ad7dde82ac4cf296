"""Satisfaction, bounded model search, and bounded type equivalence.

Satisfaction follows the recursive clauses: a graph atom holds when it equals
the nerve of the tuple exactly, and the refinement quantifier searches the
labeled refinements of the tuple along its arrangement.  Depth-bounded type
equivalence is decided through canonical type fingerprints: the depth-0
fingerprint of a tuple is its nerve, and the depth-(d+1) fingerprint collects,
for every arrangement whose source stays within the atom bound, the set of
depth-d fingerprints of the refinements following it.  Two tuples are
equivalent at depth d exactly when their fingerprints agree, which is the
usual back-and-forth condition in normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from cologic import _core
from cologic.algebra import ContactAlgebra, Element, quotient_by_blocks
from cologic.covers import Arrangement, GoodTuple, _require_good
from cologic.formulas import Bottom, Exists, Formula, GraphAtom, Not, Or
from cologic.graphs import FiniteGraph
from cologic.limits import check_atoms


class SearchBudgetExceeded(RuntimeError):
    """A fingerprint computation ran past its configured work budget."""


# ---------------------------------------------------------------------------
# Satisfaction


def _graph_bits(graph: FiniteGraph) -> int:
    return _core.graph_bits(graph.edge_list(), graph.vertex_count)


def _sat(algebra: ContactAlgebra, masks: tuple[int, ...], formula: Formula) -> bool:
    if isinstance(formula, Bottom):
        return False
    if isinstance(formula, GraphAtom):
        if formula.graph.vertex_count != len(masks):
            return False
        return _core.nerve_bits(masks, algebra.closure) == _graph_bits(formula.graph)
    if isinstance(formula, Not):
        return not _sat(algebra, masks, formula.child)
    if isinstance(formula, Or):
        return _sat(algebra, masks, formula.left) or _sat(algebra, masks, formula.right)
    if isinstance(formula, Exists):
        child = formula.child
        for refined in _core.iter_refinements(masks, formula.refinement.images):
            if _sat(algebra, refined, child):
                return True
        return False
    raise TypeError(f"not a formula: {formula!r}")


def satisfies(
    algebra: ContactAlgebra, entries: Sequence[Element], formula: Formula
) -> bool:
    """Whether the good tuple satisfies the formula.

    The tuple length must equal the formula's context.  The refinement
    quantifier is decided by exhaustive enumeration of the labeled
    refinements of each block, in lexicographic order.
    """
    masks = _require_good(algebra, entries, "tuple")
    if len(masks) != formula.context:
        raise ValueError(
            f"context mismatch: formula context {formula.context}, "
            f"tuple length {len(masks)}"
        )
    return _sat(algebra, masks, formula)


def check_sentence(algebra: ContactAlgebra, formula: Formula) -> bool:
    """Satisfaction at the singleton tuple; the formula must be a sentence."""
    if formula.context != 1:
        raise ValueError(
            f"not a sentence: context is {formula.context}, expected 1"
        )
    return _sat(algebra, (algebra.full_mask,), formula)


def find_model(formula: Formula, max_vertices: int) -> FiniteGraph | None:
    """Smallest graph whose contact algebra satisfies the sentence, if any.

    Graphs are searched by vertex count, then lexicographically by sorted
    edge tuple.  The search is exhaustive and exponential in the number of
    vertex pairs; `max_vertices` is capped by the global size guard.
    """
    from cologic.algebra import contact_from_graph
    from cologic.graphs import enumerate_graphs

    if formula.context != 1:
        raise ValueError(
            f"not a sentence: context is {formula.context}, expected 1"
        )
    if max_vertices < 1:
        raise ValueError(f"max_vertices must be positive, got {max_vertices}")
    check_atoms(max_vertices, "model search")
    for n in range(1, max_vertices + 1):
        for graph in enumerate_graphs(n):
            algebra = contact_from_graph(graph)
            if _sat(algebra, (algebra.full_mask,), formula):
                return graph
    return None


# ---------------------------------------------------------------------------
# Type fingerprints and the bounded back-and-forth game


class _TypeContext:
    """Shared interning table and work budget for fingerprint computations."""

    def __init__(self, budget: int | None = None):
        self._table: dict[object, object] = {}
        self.budget = budget
        self.spent = 0
        self._printers: dict[ContactAlgebra, "_Fingerprinter"] = {}

    def intern(self, value: object) -> object:
        return self._table.setdefault(value, value)

    def charge(self, amount: int = 1) -> None:
        self.spent += amount
        if self.budget is not None and self.spent > self.budget:
            raise SearchBudgetExceeded(
                f"fingerprint search exceeded its budget of {self.budget}"
            )

    def printer(self, algebra: ContactAlgebra, cap: int) -> "_Fingerprinter":
        printer = self._printers.get(algebra)
        if printer is None:
            printer = _Fingerprinter(algebra, cap, self)
            self._printers[algebra] = printer
        elif printer.cap != cap:
            raise ValueError("one context cannot mix atom caps for one algebra")
        return printer


class _Fingerprinter:
    """Computes canonical depth-d type values for tuples of one algebra.

    A value is nested hashable data: depth 0 is the nerve; at positive depth
    a tuple whose blocks are all atoms has no proper splits, so its value is
    determined by its nerve alone and is tagged accordingly; otherwise the
    value collects (arrangement, child value) pairs over all refinements
    with source length at most `cap`.
    """

    def __init__(self, algebra: ContactAlgebra, cap: int, ctx: _TypeContext):
        self.algebra = algebra
        self.cap = cap
        self.ctx = ctx
        self._memo: dict[tuple[tuple[int, ...], int], object] = {}

    def value(self, masks: tuple[int, ...], depth: int) -> object:
        key = (masks, depth)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        m = len(masks)
        nerve = _core.nerve_bits(masks, self.algebra.closure)
        if depth == 0:
            out = ("n", m, nerve)
        elif all(mask.bit_count() == 1 for mask in masks):
            # No block splits, so challenges are exactly the reorderings and
            # the whole value is determined by (and recoverable from) the
            # nerve; tuples with a compound block always differ from these
            # at positive depth because they admit a strictly longer
            # refinement.
            out = ("a", depth, m, nerve)
        else:
            pairs = set()
            intern = self.ctx.intern
            for images, refined in _core.iter_refinement_pairs(masks, self.cap):
                self.ctx.charge()
                pairs.add(intern((intern(images), self.value(refined, depth - 1))))
            out = ("t", depth, m, nerve, frozenset(pairs))
        out = self.ctx.intern(out)
        self._memo[key] = out
        return out


@dataclass(frozen=True)
class TypeFingerprint:
    """Canonical bounded-depth type value of a good tuple.

    Two fingerprints computed with the same atom cap are equal exactly when
    the tuples are depth-`depth` equivalent.
    """

    algebra: ContactAlgebra
    entries: GoodTuple
    depth: int
    cap: int
    value: object


def type_fingerprint(
    algebra: ContactAlgebra,
    entries: Sequence[Element],
    depth: int,
    cap: int | None = None,
) -> TypeFingerprint:
    """Compute the canonical depth-d type value of a good tuple.

    `cap` bounds the source length of challenge arrangements and defaults to
    the algebra's atom count; fingerprints are only comparable when computed
    with equal caps.
    """
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    masks = _require_good(algebra, entries, "tuple")
    if cap is None:
        cap = algebra.atom_count
    ctx = _TypeContext()
    value = ctx.printer(algebra, cap).value(masks, depth)
    return TypeFingerprint(algebra, tuple(algebra.tuple_sets(masks)), depth, cap, value)


@dataclass(frozen=True)
class MatchedPair:
    """A challenge refinement matched by an equivalent response."""

    side: int
    arrangement: Arrangement
    challenge: GoodTuple
    response: GoodTuple


@dataclass(frozen=True)
class EfTrace:
    """Witness trace of the depth-d equivalence game.

    On failure, `losing_side`, `losing_arrangement` and `losing_tuple` name
    one challenge the other tuple cannot answer (or `reason` reports a nerve
    mismatch).  On success, `matched` lists the first few challenges with
    their lexicographically least equivalent responses.
    """

    equivalent: bool
    depth: int
    reason: str
    losing_side: int | None = None
    losing_arrangement: Arrangement | None = None
    losing_tuple: GoodTuple | None = None
    matched: tuple[MatchedPair, ...] = ()


def _merged_arrangements(
    masks0: tuple[int, ...], masks1: tuple[int, ...], cap: int
) -> Iterator[tuple[int, ...]]:
    caps = tuple(
        max(masks0[i].bit_count(), masks1[i].bit_count()) for i in range(len(masks0))
    )
    for m in range(len(masks0), cap + 1):
        yield from _core.iter_surjections_fiber_bounded(caps, m)


def ef_equivalent(
    algebra0: ContactAlgebra,
    entries0: Sequence[Element],
    algebra1: ContactAlgebra,
    entries1: Sequence[Element],
    depth: int,
    trace_limit: int = 8,
    budget: int | None = None,
) -> tuple[bool, EfTrace]:
    """Decide the depth-d back-and-forth game between two good tuples.

    Depth 0 asks for equal nerves; depth d+1 additionally asks, for every
    arrangement with source at most the larger atom count and every
    refinement of either tuple following it, for a depth-d equivalent
    refinement of the other tuple following the same arrangement.  Returns
    the verdict together with a deterministic witness trace.
    """
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    masks0 = _require_good(algebra0, entries0, "first tuple")
    masks1 = _require_good(algebra1, entries1, "second tuple")
    if len(masks0) != len(masks1):
        raise ValueError(
            f"tuples must share a length: {len(masks0)} vs {len(masks1)}"
        )
    cap = max(algebra0.atom_count, algebra1.atom_count)
    ctx = _TypeContext(budget)
    fp0 = ctx.printer(algebra0, cap)
    fp1 = ctx.printer(algebra1, cap)
    value0 = fp0.value(masks0, depth)
    value1 = fp1.value(masks1, depth)

    if value0 == value1:
        matched: list[MatchedPair] = []
        if depth > 0 and trace_limit > 0:
            for images, challenge in _core.iter_refinement_pairs(masks0, cap):
                want = fp0.value(challenge, depth - 1)
                for response in _core.iter_refinements(masks1, images):
                    if fp1.value(response, depth - 1) == want:
                        matched.append(
                            MatchedPair(
                                0,
                                Arrangement(images, len(masks0)),
                                algebra0.tuple_sets(challenge),
                                algebra1.tuple_sets(response),
                            )
                        )
                        break
                if len(matched) >= trace_limit:
                    break
        return True, EfTrace(True, depth, "fingerprints agree", matched=tuple(matched))

    nerve0 = _core.nerve_bits(masks0, algebra0.closure)
    nerve1 = _core.nerve_bits(masks1, algebra1.closure)
    if nerve0 != nerve1:
        return False, EfTrace(False, depth, "nerve mismatch")
    sides = (
        (algebra0, fp0, masks0, algebra1, fp1, masks1),
        (algebra1, fp1, masks1, algebra0, fp0, masks0),
    )
    for images in _merged_arrangements(masks0, masks1, cap):
        for side_index, (_, fp_a, masks_a, _, fp_b, masks_b) in enumerate(sides):
            responses = {
                fp_b.value(r, depth - 1)
                for r in _core.iter_refinements(masks_b, images)
            }
            for challenge in _core.iter_refinements(masks_a, images):
                if fp_a.value(challenge, depth - 1) not in responses:
                    side_algebra = sides[side_index][0]
                    return False, EfTrace(
                        False,
                        depth,
                        "unanswered refinement challenge",
                        losing_side=side_index,
                        losing_arrangement=Arrangement(images, len(masks_a)),
                        losing_tuple=side_algebra.tuple_sets(challenge),
                    )
    raise AssertionError("fingerprints differ but no separating challenge found")


def nerve_generates_type(
    algebra: ContactAlgebra, entries: Sequence[Element], depth: int
) -> bool:
    """Whether the nerve pins down the tuple's depth-d type inside its algebra.

    True exactly when every good tuple of the algebra with the same nerve is
    depth-d equivalent to the given one, i.e. the graph atom of the nerve
    already generates the bounded type.
    """
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    masks = _require_good(algebra, entries, "tuple")
    target = _core.nerve_bits(masks, algebra.closure)
    ctx = _TypeContext()
    printer = ctx.printer(algebra, algebra.atom_count)
    base = printer.value(masks, depth)
    for candidate in _core.iter_good_mask_tuples(algebra.full_mask, len(masks)):
        if _core.nerve_bits(candidate, algebra.closure) != target:
            continue
        if printer.value(candidate, depth) != base:
            return False
    return True


# ---------------------------------------------------------------------------
# Generated substructures


@dataclass(frozen=True)
class SubstructureViolation:
    """An ambient refinement whose nerve the subalgebra cannot reproduce."""

    coarse: GoodTuple
    arrangement: Arrangement
    witness: GoodTuple


@dataclass(frozen=True)
class SubstructureReport:
    blocks: tuple[Element, ...]
    bound: int
    obligations_checked: int
    refinements_checked: int
    violations: tuple[SubstructureViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def generated_substructure_check(
    algebra: ContactAlgebra,
    sub_atoms: Sequence[Element],
    bound: int,
) -> SubstructureReport:
    """Check the generated-substructure condition up to a refinement length.

    `sub_atoms` partitions the atoms; the subalgebra consists of all unions
    of blocks.  For every subalgebra tuple and every arrangement with source
    length at most `bound`, each ambient refinement must have a same-nerve
    counterpart inside the subalgebra following the same arrangement.  For
    every missing nerve the lexicographically least ambient witness is
    reported.
    """
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    blocks = tuple(frozenset(b) for b in sub_atoms)
    quotient = quotient_by_blocks(algebra, blocks)  # validates the partition
    block_masks = tuple(algebra.mask_of(b) for b in blocks)

    def expand(quotient_mask: int) -> int:
        mask = 0
        for index in _core.iter_atoms(quotient_mask):
            mask |= block_masks[index]
        return mask

    violations: list[SubstructureViolation] = []
    obligations = 0
    refinements = 0
    for m in range(1, min(bound, quotient.atom_count) + 1):
        for q_tuple in _core.iter_good_mask_tuples(quotient.full_mask, m):
            ambient = tuple(expand(q) for q in q_tuple)
            for source in range(m, bound + 1):
                for images in _core.surjections(source, m):
                    obligations += 1
                    ambient_nerves: dict[int, tuple[int, ...]] = {}
                    for refined in _core.iter_refinements(ambient, images):
                        refinements += 1
                        bits = _core.nerve_bits(refined, algebra.closure)
                        ambient_nerves.setdefault(bits, refined)
                    if not ambient_nerves:
                        continue
                    inner_nerves = {
                        _core.nerve_bits(refined, quotient.closure)
                        for refined in _core.iter_refinements(q_tuple, images)
                    }
                    for bits in sorted(ambient_nerves):
                        if bits not in inner_nerves:
                            violations.append(
                                SubstructureViolation(
                                    algebra.tuple_sets(ambient),
                                    Arrangement(images, m),
                                    algebra.tuple_sets(ambient_nerves[bits]),
                                )
                            )
    return SubstructureReport(
        blocks, bound, obligations, refinements, tuple(violations)
    )


# ---------------------------------------------------------------------------
# The back-and-forth construction


@dataclass(frozen=True)
class BackAndForthStep:
    side: int
    arrangement: Arrangement
    challenge: GoodTuple
    response: GoodTuple


@dataclass(frozen=True)
class BackAndForthResult:
    """Matched refinement pairs, and the atom bijection on full success.

    `atom_map[p]` is the atom of the second algebra matched to atom p of the
    first; it is only present when both tuples were refined down to atoms,
    and it is then a contact-graph isomorphism carrying the first tuple to
    the second entrywise (`is_isomorphism` records the explicit check).
    """

    steps: tuple[BackAndForthStep, ...]
    atom_map: tuple[int, ...] | None
    is_isomorphism: bool | None


def back_and_forth(
    algebra0: ContactAlgebra,
    entries0: Sequence[Element],
    algebra1: ContactAlgebra,
    entries1: Sequence[Element],
    rounds: int,
) -> BackAndForthResult | None:
    """Run the alternating refinement game for finitely many rounds.

    Each round splits the first compound block of the scheduled side one
    step (lowest atom against the rest) and looks for the lexicographically
    least refinement of the other side following the same arrangement that
    stays equivalent at the remaining depth; sides alternate while both
    still have compound blocks.  Returns None as soon as some challenge has
    no equivalent response, i.e. the game is lost.
    """
    if rounds < 0:
        raise ValueError(f"rounds must be non-negative, got {rounds}")
    masks0 = _require_good(algebra0, entries0, "first tuple")
    masks1 = _require_good(algebra1, entries1, "second tuple")
    if len(masks0) != len(masks1):
        raise ValueError(
            f"tuples must share a length: {len(masks0)} vs {len(masks1)}"
        )
    cap = max(algebra0.atom_count, algebra1.atom_count)
    ctx = _TypeContext()
    printers = (ctx.printer(algebra0, cap), ctx.printer(algebra1, cap))
    algebras = (algebra0, algebra1)
    current: list[tuple[int, ...]] = [masks0, masks1]

    def atomic(masks: tuple[int, ...]) -> bool:
        return all(mask.bit_count() == 1 for mask in masks)

    steps: list[BackAndForthStep] = []
    for round_index in range(rounds):
        if atomic(current[0]) and atomic(current[1]):
            break
        side = round_index % 2
        if atomic(current[side]):
            side = 1 - side
        masks = current[side]
        k = next(i for i, mask in enumerate(masks) if mask.bit_count() > 1)
        low = masks[k] & -masks[k]
        challenge = masks[:k] + (low, masks[k] ^ low) + masks[k + 1 :]
        images = tuple(j if j <= k else j - 1 for j in range(len(masks) + 1))
        arrangement = Arrangement(images, len(masks))
        remaining = rounds - round_index - 1
        want = printers[side].value(challenge, remaining)
        other = 1 - side
        response = None
        for candidate in _core.iter_refinements(current[other], images):
            if printers[other].value(candidate, remaining) == want:
                response = candidate
                break
        if response is None:
            return None
        current[side] = challenge
        current[other] = response
        steps.append(
            BackAndForthStep(
                side,
                arrangement,
                algebras[side].tuple_sets(challenge),
                algebras[other].tuple_sets(response),
            )
        )

    atom_map: tuple[int, ...] | None = None
    is_isomorphism: bool | None = None
    if atomic(current[0]) and atomic(current[1]):
        pairs = sorted(
            (current[0][i].bit_length() - 1, current[1][i].bit_length() - 1)
            for i in range(len(current[0]))
        )
        atom_map = tuple(q for _, q in pairs)
        graph0 = algebra0.atom_contact
        graph1 = algebra1.atom_contact
        is_isomorphism = all(
            graph0.adjacent(p, q) == graph1.adjacent(atom_map[p], atom_map[q])
            for p in range(len(atom_map))
            for q in range(p + 1, len(atom_map))
        )
    return BackAndForthResult(tuple(steps), atom_map, is_isomorphism)
