import pytest
from hypothesis import given, settings, strategies as st

from cologic.algebra import (
    EmptyPreSpaceError,
    block_union,
    contact_from_graph,
    delta,
    quotient_by_blocks,
    stone_prespace,
    ultrafilters,
    verify_contact_axioms,
)
from cologic.graphs import FiniteGraph, enumerate_graphs, linear_graph
from cologic.limits import SizeGuardError


def algebra_of(n, edges):
    return contact_from_graph(FiniteGraph.from_edges(n, edges))


PATH3 = contact_from_graph(linear_graph(3))


def test_empty_pre_space_rejected():
    with pytest.raises(EmptyPreSpaceError, match="empty pre-space"):
        contact_from_graph(FiniteGraph(0, frozenset()))


def test_contact_follows_edges():
    assert algebra_of(2, [(0, 1)]).delta({0}, {1})
    assert not algebra_of(2, []).delta({0}, {1})
    assert not PATH3.delta({0}, {2})
    assert PATH3.delta({0, 2}, {1})


def test_zero_and_self_contact():
    for a in PATH3.elements():
        assert not PATH3.delta(frozenset(), a)
        if a:
            assert PATH3.delta(a, a)


def test_delta_module_function_matches_method():
    assert delta(PATH3, {0}, {1, 2}) is True


def test_contact_monotone_and_symmetric_exhaustive():
    for graph in enumerate_graphs(4):
        algebra = contact_from_graph(graph)
        elements = list(algebra.elements())
        for a in elements:
            for b in elements:
                assert algebra.delta(a, b) == algebra.delta(b, a)
                if algebra.delta(a, b):
                    for c in elements:
                        assert algebra.delta(a | c, b)


def test_axiom_sweep_clean_algebras():
    for algebra in (PATH3, algebra_of(1, [])):
        report = verify_contact_axioms(algebra)
        assert report.passed
        assert report.total_instances() > 0


def test_axiom_sweep_reports_broken_relation():
    # Asymmetric relation injected through the hook: contact only scans
    # upward, so symmetry must fail somewhere.
    def broken(algebra, x, y):
        if (x, y) == (1, 2):
            return True
        if (x, y) == (2, 1):
            return False
        return bool(algebra.closure[x] & y)

    report = verify_contact_axioms(PATH3, delta_fn=broken)
    assert not report.passed
    assert any("symmetry" in violation for violation in report.violations)


def test_axiom_sweep_guard():
    with pytest.raises(SizeGuardError, match="exceeds the size guard"):
        verify_contact_axioms(
            contact_from_graph(linear_graph(13))
        )


def test_stone_prespace_examples():
    assert stone_prespace(PATH3) == linear_graph(3)
    assert stone_prespace(algebra_of(1, [])) == FiniteGraph(1, frozenset())


def test_stone_round_trip_exhaustive_small():
    for n in range(1, 5):
        for graph in enumerate_graphs(n):
            assert stone_prespace(contact_from_graph(graph)) == graph


def is_ultrafilter(algebra, members):
    """Ultrafilter axioms checked from scratch: proper, meet-closed, total."""
    full = algebra.full_set
    if frozenset() in members or full not in members:
        return False
    for a in members:
        for b in members:
            if a & b not in members:
                return False
    for a in algebra.elements():
        if (a in members) == (full - a in members):
            return False
    for a in members:
        for b in algebra.elements():
            if a <= b and b not in members:
                return False
    return True


def test_ultrafilters_are_ultrafilters():
    filters = ultrafilters(PATH3)
    assert len(filters) == 3
    for members in filters:
        assert is_ultrafilter(PATH3, members)


def test_stone_edges_match_universal_contact_of_ultrafilters():
    # The dual edge relation: every member of one ultrafilter touches every
    # member of the other.  Checked against the constructed pre-space.
    for n in range(1, 5):
        for graph in enumerate_graphs(n):
            algebra = contact_from_graph(graph)
            filters = ultrafilters(algebra)
            dual = stone_prespace(algebra)
            for p in range(len(filters)):
                for q in range(p + 1, len(filters)):
                    universal = all(
                        algebra.delta(a, b)
                        for a in filters[p]
                        for b in filters[q]
                    )
                    assert universal == dual.adjacent(p, q)


def test_quotient_by_blocks_contact():
    blocks = (frozenset({0}), frozenset({1, 2}))
    quotient = quotient_by_blocks(PATH3, blocks)
    assert quotient.atom_count == 2
    assert quotient.delta({0}, {1}) == PATH3.delta({0}, {1, 2})
    assert block_union(blocks, {0, 1}) == frozenset({0, 1, 2})


@pytest.mark.parametrize(
    "blocks, message",
    [
        ((frozenset({0}),), "missing"),
        ((frozenset({0, 1}), frozenset({1, 2})), "repeated"),
        ((frozenset({0, 1, 2}), frozenset()), "empty"),
        ((frozenset({0, 1, 2, 7}),), "out of range"),
    ],
)
def test_quotient_rejects_non_partitions(blocks, message):
    with pytest.raises(ValueError, match=message):
        quotient_by_blocks(PATH3, blocks)


@given(st.integers(1, 5), st.data())
@settings(max_examples=60)
def test_mask_round_trip(n, data):
    algebra = contact_from_graph(linear_graph(n))
    atoms = data.draw(st.sets(st.integers(0, n - 1)))
    assert algebra.set_of(algebra.mask_of(atoms)) == frozenset(atoms)
