"""Bitmask kernels shared by the enumeration-heavy modules.

Algebra elements appear here as integer bitmasks over atom indices; a good
tuple is a tuple of disjoint nonzero masks whose union is the full mask.
Contact enters only through a precomputed closure table mapping each element
mask to the union of the neighbourhoods of its atoms, so the kernels stay
independent of any particular algebra object.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence


def iter_atoms(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def contact_closure(neighbor_masks: Sequence[int]) -> tuple[int, ...]:
    """Table C with C[m] = union of atom neighbourhoods over the atoms of m.

    Contact of two element masks a, b is then the O(1) test C[a] & b != 0.
    """
    n = len(neighbor_masks)
    table = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        table[m] = table[m ^ low] | neighbor_masks[low.bit_length() - 1]
    return tuple(table)


def pair_index(i: int, j: int, n: int) -> int:
    """Index of the pair (i, j), i < j, in the lexicographic pair order on n."""
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def nerve_bits(blocks: Sequence[int], closure: Sequence[int]) -> int:
    """Edge bitmask of the contact graph on tuple indices (pairs in lex order)."""
    bits = 0
    k = 0
    m = len(blocks)
    for i in range(m):
        ci = closure[blocks[i]]
        for j in range(i + 1, m):
            if ci & blocks[j]:
                bits |= 1 << k
            k += 1
    return bits


def graph_bits(edges: Sequence[tuple[int, int]], n: int) -> int:
    bits = 0
    for i, j in edges:
        bits |= 1 << pair_index(i, j, n)
    return bits


def path_bits(m: int) -> int:
    """Edge bitmask of the linear graph on m vertices."""
    bits = 0
    for i in range(m - 1):
        bits |= 1 << pair_index(i, i + 1, m)
    return bits


@lru_cache(maxsize=None)
def surjections(source: int, target: int) -> tuple[tuple[int, ...], ...]:
    """All surjections source -> target as image tuples, lexicographic."""
    if target < 1 or source < target:
        return ()
    out: list[tuple[int, ...]] = []
    vector = [0] * source

    def rec(pos: int, missing: int, unseen: int) -> None:
        if source - pos < missing:
            return
        if pos == source:
            out.append(tuple(vector))
            return
        for label in range(target):
            bit = 1 << label
            vector[pos] = label
            if unseen & bit:
                rec(pos + 1, missing - 1, unseen ^ bit)
            else:
                rec(pos + 1, missing, unseen)

    rec(0, target, (1 << target) - 1)
    return tuple(out)


def iter_surjections_fiber_bounded(
    fiber_caps: Sequence[int], source: int
) -> Iterator[tuple[int, ...]]:
    """Surjections onto len(fiber_caps) whose fiber sizes respect the caps.

    Lexicographic order.  Used to enumerate only those arrangements that a
    given tuple can actually be refined along (a block of k atoms splits
    into at most k parts).
    """
    target = len(fiber_caps)
    if source < target or any(c < 1 for c in fiber_caps):
        return
    if source > sum(fiber_caps):
        return
    vector = [0] * source
    counts = [0] * target

    def rec(pos: int, missing: int) -> Iterator[tuple[int, ...]]:
        if source - pos < missing:
            return
        if pos == source:
            yield tuple(vector)
            return
        for label in range(target):
            if counts[label] >= fiber_caps[label]:
                continue
            vector[pos] = label
            counts[label] += 1
            yield from rec(pos + 1, missing - (counts[label] == 1))
            counts[label] -= 1

    yield from rec(0, target)


@lru_cache(maxsize=None)
def ordered_splits(mask: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All splits of `mask` into `parts` labeled nonempty disjoint masks.

    Enumerated by assigning the atoms of `mask` (ascending) labels in
    0..parts-1, lexicographically over the assignment vectors.
    """
    atoms = tuple(iter_atoms(mask))
    if parts < 1 or parts > len(atoms):
        return ()
    out = []
    for assignment in surjections(len(atoms), parts):
        pieces = [0] * parts
        for atom, label in zip(atoms, assignment):
            pieces[label] |= 1 << atom
        out.append(tuple(pieces))
    return tuple(out)


def iter_refinements(
    blocks: Sequence[int], images: Sequence[int]
) -> Iterator[tuple[int, ...]]:
    """All good tuples that follow the arrangement `images` in `blocks`.

    Entry j of a result is a nonempty sub-block of blocks[images[j]]; for
    each coarse index the sub-blocks assigned to its fiber partition the
    block.  Results appear lexicographically over the per-block labeled
    splits, coarse index ascending.
    """
    n = len(blocks)
    fibers: list[list[int]] = [[] for _ in range(n)]
    for j, i in enumerate(images):
        fibers[i].append(j)
    choice_lists = []
    for i in range(n):
        choices = ordered_splits(blocks[i], len(fibers[i]))
        if not choices:
            return
        choice_lists.append(choices)
    m = len(images)
    for combo in product(*choice_lists):
        refined = [0] * m
        for i in range(n):
            for slot, j in enumerate(fibers[i]):
                refined[j] = combo[i][slot]
        yield tuple(refined)


def iter_refinement_pairs(
    blocks: Sequence[int], max_length: int
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (arrangement images, refinement) pairs for `blocks`, lengths <= max_length."""
    caps = tuple(b.bit_count() for b in blocks)
    for m in range(len(blocks), max_length + 1):
        for images in iter_surjections_fiber_bounded(caps, m):
            for refined in iter_refinements(blocks, images):
                yield images, refined


def iter_good_mask_tuples(full_mask: int, length: int) -> Iterator[tuple[int, ...]]:
    """All ordered partitions of full_mask into `length` nonempty masks."""
    yield from ordered_splits(full_mask, length)


def compose_images(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Images of the composite map x -> outer[inner[x]]."""
    return tuple(outer[v] for v in inner)
