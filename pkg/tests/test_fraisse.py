import json

import pytest

from oracles import brute_epis

from cologic.algebra import contact_from_graph
from cologic.covers import Arrangement, consolidate, follows, is_chain
from cologic.fraisse import (
    AmalgamationError,
    FraisseSequence,
    amalgamate,
    build_fraisse_sequence,
    chain_following_pattern,
    chain_refinement,
    chain_type_report,
    common_refinement_linear,
    enumerate_patterns,
    example_gn,
    example_gn_epi,
    extension_property_audit,
    is_is_epi,
    is_pattern_epi,
)
from cologic.graphs import FiniteGraph, linear_graph


def fs(*atoms):
    return frozenset(atoms)


# -- epimorphisms and patterns ---------------------------------------------------


def test_is_is_epi_examples():
    assert is_is_epi((0, 1), linear_graph(2), linear_graph(2))
    assert is_is_epi((0, 1, 0), linear_graph(3), linear_graph(2))
    isolated = FiniteGraph(2, frozenset())
    assert not is_is_epi((0, 1), linear_graph(2), isolated)


def test_is_is_epi_requires_edge_lifting():
    # surjective and edge-preserving, but the target edge 0-1 never lifts
    triangle_free = FiniteGraph(2, frozenset())
    assert not is_is_epi((0, 1), triangle_free, linear_graph(2))


def test_is_is_epi_arity_errors():
    with pytest.raises(ValueError, match="arity mismatch"):
        is_is_epi((0,), linear_graph(2), linear_graph(2))
    with pytest.raises(ValueError, match="arity mismatch"):
        is_is_epi((0, 5), linear_graph(2), linear_graph(2))


def test_is_pattern_epi_examples():
    assert is_pattern_epi((0, 0, 1), 3, 2)
    assert is_pattern_epi((0, 1, 0), 3, 2)
    assert not is_pattern_epi((0, 2, 1), 3, 3)
    assert not is_pattern_epi((0, 0), 2, 2)  # not surjective


def test_enumerate_patterns_counts():
    assert len(enumerate_patterns(3, 2)) == 6
    assert enumerate_patterns(1, 1) == [(0,)]
    for n in range(2, 6):
        identity = tuple(range(n))
        reversal = tuple(reversed(range(n)))
        assert enumerate_patterns(n, n) == sorted([identity, reversal])
    assert enumerate_patterns(2, 3) == []


def test_patterns_equal_brute_force_epis_small():
    for source in range(1, 5):
        for target in range(1, 5):
            mine = set(enumerate_patterns(source, target))
            brute = brute_epis(linear_graph(source), linear_graph(target))
            assert mine == brute


def test_pattern_composition_closed():
    for outer in enumerate_patterns(3, 2):
        for inner in enumerate_patterns(4, 3):
            composite = tuple(outer[v] for v in inner)
            assert is_pattern_epi(composite, 4, 2)


def test_common_refinement_linear_examples():
    assert common_refinement_linear(1, 4) == (4, (0, 0, 0, 0), (0, 1, 2, 3))
    assert common_refinement_linear(3, 3) == (3, (0, 1, 2), (0, 1, 2))
    size, first, second = common_refinement_linear(2, 3)
    assert size == 3
    assert is_pattern_epi(first, 3, 2) and is_pattern_epi(second, 3, 3)
    # lexicographically least pair at the least size
    assert (first, second) == ((0, 0, 1), (0, 1, 2))


# -- amalgamation -----------------------------------------------------------------


def test_amalgamate_identity():
    assert amalgamate((0,), (0,)) == (1, (0,), (0,))


def test_amalgamate_commutes():
    f = (0, 0, 1)
    g = (0, 1, 1)
    size, u, v = amalgamate(f, g)
    assert tuple(f[x] for x in u) == tuple(g[x] for x in v)
    assert is_pattern_epi(u, size, len(f))
    assert is_pattern_epi(v, size, len(g))


def test_amalgamate_equal_patterns():
    f = (0, 1, 1)
    size, u, v = amalgamate(f, f)
    assert tuple(f[x] for x in u) == tuple(f[x] for x in v)


def test_amalgamate_validation():
    with pytest.raises(ValueError, match="share a target"):
        amalgamate((0, 1), (0, 0))
    with pytest.raises(ValueError, match="not a pattern"):
        amalgamate((0, 2, 1), (0, 1, 2))


def test_amalgamate_bound_exhaustion_returns_none():
    assert amalgamate((0, 0, 1), (0, 1, 1), max_size=2) is None


# -- bounded sequences --------------------------------------------------------------


def test_build_single_stage():
    seq = build_fraisse_sequence(1, 3)
    assert seq.stage_sizes == (1,)
    assert seq.bonding == ()
    assert seq.ledger == ()


def test_build_three_stages_discharges_stage_zero():
    seq = build_fraisse_sequence(3, 3)
    seq.validate()
    for entry in seq.ledger:
        if entry.target_stage == 0:
            assert entry.status == "discharged"
            assert entry.discharged_at is not None and entry.discharged_at <= 2


def test_build_bonding_composites_match_cache():
    seq = build_fraisse_sequence(4, 3)
    cached = {(m, n): images for m, n, images in seq.composite_cache}
    for m in range(len(seq.stage_sizes)):
        for n in range(m + 1):
            assert cached[(m, n)] == seq.composite(m, n)


def test_build_discharge_witnesses_factor():
    seq = build_fraisse_sequence(5, 3)
    for entry in seq.ledger:
        if entry.discharged_at is None:
            continue
        composite = seq.composite(entry.discharged_at, entry.target_stage)
        assert tuple(entry.epi[x] for x in entry.witness) == composite


def test_build_stage_sizes_nondecreasing():
    seq = build_fraisse_sequence(5, 4)
    assert all(
        seq.stage_sizes[i] <= seq.stage_sizes[i + 1]
        for i in range(len(seq.stage_sizes) - 1)
    )


def test_build_rejects_impossible_amalgamation_bound():
    with pytest.raises(AmalgamationError, match="onto stage 0"):
        build_fraisse_sequence(3, 3, amalgamation_bound=1)


def test_audit_identity_discharges_at_own_stage():
    seq = build_fraisse_sequence(3, 3)
    report = extension_property_audit(seq, 1, seq.stage_sizes[1])
    identity = tuple(range(seq.stage_sizes[1]))
    entry = next(e for e in report.entries if e.epi == identity)
    assert entry.discharged_at == 1


def test_audit_all_small_obligations_on_stage_zero():
    seq = build_fraisse_sequence(5, 3)
    report = extension_property_audit(seq, 0, 3)
    assert report.all_discharged


def test_audit_reports_undischarged_beyond_build_bound():
    seq = build_fraisse_sequence(2, 2)
    report = extension_property_audit(seq, 1, 6)
    assert not report.all_discharged
    assert all(entry.witness is None for entry in report.undischarged())


def test_sequence_json_round_trip():
    seq = build_fraisse_sequence(4, 3)
    document = json.loads(seq.to_json())
    assert FraisseSequence.from_json_dict(document) == seq


def test_sequence_json_rejects_tampering():
    seq = build_fraisse_sequence(3, 3)
    document = seq.to_json_dict()
    document["stages"] = [1, 2] + list(seq.stage_sizes[2:])
    with pytest.raises(ValueError, match="wrong source size"):
        FraisseSequence.from_json_dict(document)


# -- chains over linear algebras ------------------------------------------------------


def test_chain_refinement_examples():
    algebra = contact_from_graph(linear_graph(3))
    chain, arrangement = chain_refinement(algebra, (fs(0, 2), fs(1)))
    assert chain == (fs(0), fs(1), fs(2))
    assert arrangement.images == (0, 1, 0)
    assert follows(algebra, chain, arrangement, (fs(0, 2), fs(1)))

    already = (fs(0), fs(1), fs(2))
    chain, arrangement = chain_refinement(algebra, already)
    assert chain == already and arrangement.images == (0, 1, 2)

    chain, arrangement = chain_refinement(algebra, (fs(0, 1, 2),))
    assert arrangement.images == (0, 0, 0)


def test_chain_refinement_requires_linear_algebra():
    triangle = contact_from_graph(
        FiniteGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    )
    with pytest.raises(ValueError, match="linear graph"):
        chain_refinement(triangle, (fs(0), fs(1), fs(2)))


def test_chain_refinement_consolidates_back():
    algebra = contact_from_graph(linear_graph(4))
    coarse = (fs(0, 1), fs(2, 3))
    chain, arrangement = chain_refinement(algebra, coarse)
    assert is_chain(algebra, chain)
    assert consolidate(algebra, arrangement, chain) == coarse


def test_chain_following_pattern_examples():
    algebra = contact_from_graph(linear_graph(4))
    chain = (fs(0, 1), fs(2, 3))
    assert chain_following_pattern(algebra, chain, Arrangement.identity(2)) == chain
    assert chain_following_pattern(algebra, chain, Arrangement((0, 0, 1), 2)) == (
        fs(0),
        fs(1),
        fs(2, 3),
    )
    tiny = contact_from_graph(linear_graph(1))
    assert (
        chain_following_pattern(tiny, (fs(0),), Arrangement((0, 0), 1)) is None
    )


# -- the strings-plus-star family ------------------------------------------------------


def test_example_gn_shapes():
    zero = example_gn(0)
    assert zero.vertex_count == 2 and zero.edge_list() == [(0, 1)]
    one = example_gn(1)
    assert one.vertex_count == 3 and one.edge_list() == [(1, 2)]


def test_example_gn_epi_is_epi():
    images = example_gn_epi(0, 1)
    assert images == (0, 0, 1)
    assert is_is_epi(images, example_gn(1), example_gn(0))
    for m in range(0, 3):
        for n in range(m, 3):
            assert is_is_epi(example_gn_epi(m, n), example_gn(n), example_gn(m))


def test_example_gn_epi_rejects_transposed_lengths():
    with pytest.raises(ValueError, match="truncate"):
        example_gn_epi(2, 1)


def test_example_gn_epis_compose():
    outer = example_gn_epi(0, 1)
    inner = example_gn_epi(1, 2)
    composite = tuple(outer[v] for v in inner)
    assert composite == example_gn_epi(0, 2)


# -- chain type report -------------------------------------------------------------


def test_chain_type_report_small_values():
    report = chain_type_report(max_stage=4, max_chain_length=4, depths=(0, 1, 2))
    verdicts = {
        (c.stage_size, c.chain_length, c.depth): c.all_equivalent
        for c in report.cells
    }
    # depth zero never separates chains: they share the linear nerve
    assert all(
        value for (_, _, depth), value in verdicts.items() if depth == 0
    )
    # two-block chains of unequal block sizes separate at depth one
    assert verdicts[(3, 2, 1)] is False
    assert verdicts[(4, 2, 1)] is False
    assert verdicts[(4, 3, 1)] is False
    # full-length chains are the two orientations of the stage: one type
    assert verdicts[(3, 3, 2)] is True
    assert verdicts[(4, 4, 2)] is True


def test_chain_type_report_deterministic():
    first = chain_type_report(max_stage=3)
    second = chain_type_report(max_stage=3)
    assert first == second
    assert first.render() == second.render()
