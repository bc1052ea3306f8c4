import json
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k2t_spectral.extremal import build_F, is_Ft
from k2t_spectral.graph import Graph, canonical_code, complete, cycle, is_isomorphic, join, parse_graph6, path, star
from k2t_spectral.minor import k2t_minor_test
from k2t_spectral.search import (
    CSV_COLUMNS,
    Move,
    apply_move,
    enumerate_connected,
    enumerate_graphs,
    exhaustive_max,
    exhaustive_max_parallel,
    lemma_rewire,
    local_search,
    make_record,
    merge_records,
    non_triangle_orders,
    path_order,
    path_rotation,
)
from k2t_spectral.spectral import bound_ysh, edge_weight_sum, spectral_radius


# -- enumeration ---------------------------------------------------------------

@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
def test_connected_counts(n, count):
    assert len(list(enumerate_connected(n))) == count


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_all_graph_counts(n, count):
    assert len(list(enumerate_graphs(n))) == count


def test_three_vertex_classes():
    found = list(enumerate_connected(3))
    assert any(is_isomorphic(g, path(3)) for g in found)
    assert any(is_isomorphic(g, complete(3)) for g in found)


def test_no_isomorphic_pairs_and_all_connected(connected_upto7):
    codes = [canonical_code(g) for g in connected_upto7]
    assert len(set(codes)) == len(codes)
    assert all(g.is_connected() for g in connected_upto7)


def test_generator_cap():
    with pytest.raises(ValueError):
        enumerate_connected(9)
    with pytest.raises(ValueError):
        enumerate_graphs(9)


def test_generator_is_deterministic():
    assert [str(g) for g in enumerate_connected(6)] == [str(g) for g in enumerate_connected(6)]


# -- exhaustive maximisation ---------------------------------------------------------

def test_k4_wins_at_four():
    recs = exhaustive_max(enumerate_connected(4), 3)
    assert len(recs) == 1
    assert parse_graph6(recs[0].graph6) == complete(4)
    assert recs[0].mu == pytest.approx(3.0, abs=1e-10)
    assert recs[0].is_ft


def test_bowtie_wins_at_five_for_t2():
    recs = exhaustive_max(enumerate_connected(5), 2)
    assert len(recs) == 1
    assert recs[0].mu == pytest.approx(2.5615528128088303, abs=1e-10)
    assert is_isomorphic(parse_graph6(recs[0].graph6), build_F(2, 5))


def test_argmax_below_ysh_upto7():
    for n in range(2, 8):
        for rec in exhaustive_max(enumerate_connected(n), 3):
            assert rec.mu <= bound_ysh(n) + 1e-9
            assert rec.gap_ysh >= -1e-9


def test_emitted_graphs_reverified_minor_free():
    for n in range(3, 8):
        for t in (2, 3):
            for rec in exhaustive_max(enumerate_connected(n), t):
                assert not k2t_minor_test(parse_graph6(rec.graph6), t).present


def test_ties_are_all_reported():
    # two labellings of 2K_2 tie at mu = 1
    a = Graph.from_edges(4, [(0, 1), (2, 3)])
    b = Graph.from_edges(4, [(0, 2), (1, 3)])
    c = path(4)
    recs = exhaustive_max([a, b, c], 2)
    # P_4 has mu = golden ratio > 1
    assert [parse_graph6(r.graph6) for r in recs] == [c]
    recs = exhaustive_max([a, b], 2)
    assert len(recs) == 2 and recs == sorted(recs, key=lambda r: r.graph6)


def test_empty_stream_and_all_filtered():
    assert exhaustive_max([], 3) == []
    assert exhaustive_max([complete(6)], 3) == []


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        exhaustive_max([complete(3), complete(4)], 2)
    with pytest.raises(ValueError):
        exhaustive_max_parallel([complete(3), complete(4)], 2, 2)


def test_merge_is_partition_independent():
    recs = []
    for g in enumerate_connected(6):
        if not k2t_minor_test(g, 3).present:
            recs.append(make_record(g, 3, spectral_radius(g).mu))
    whole = merge_records([recs])
    rng = random.Random(0)
    for _ in range(20):
        k = rng.randint(1, 6)
        shuffled = recs[:]
        rng.shuffle(shuffled)
        parts = [shuffled[i::k] for i in range(k)]
        assert merge_records(parts) == whole
        assert merge_records([exhaustive_max([parse_graph6(r.graph6) for r in p], 3) for p in parts]) == whole


def test_parallel_matches_serial():
    serial = exhaustive_max(enumerate_connected(6), 3)
    parallel = exhaustive_max_parallel(enumerate_connected(6), 3, jobs=2)
    assert [r.graph6 for r in serial] == [r.graph6 for r in parallel]
    assert [r.mu for r in serial] == [r.mu for r in parallel]


# -- records ---------------------------------------------------------------

def test_record_fields_and_serialisation():
    rec = make_record(build_F(3, 10), 3, 1 + math.sqrt(10))
    assert rec.is_ft and not rec.violated
    assert abs(rec.gap_upper) < 1e-12
    row = rec.csv_row()
    assert len(row) == len(CSV_COLUMNS)
    assert row[0] == str(build_F(3, 10)) and row[-1] == "true"
    assert row[3] == "4.16227766017"
    js = rec.to_json()
    assert set(js) == set(CSV_COLUMNS) | {"move_trace"}
    json.dumps(js)


def test_record_gap_ysh_only_for_t3():
    assert make_record(build_F(4, 9), 4, 4.0).gap_ysh is None
    assert make_record(build_F(4, 9), 4, 4.0).csv_row()[5] == ""


def test_violation_flagged_not_dropped():
    rec = make_record(star(5), 3, 100.0)
    assert rec.violated


# -- moves ---------------------------------------------------------------------

def test_rotation_odd_h5():
    m = path_rotation([0, 1, 2, 3, 4])
    assert m.kind == "rot_odd"
    assert m.removed == ((0, 1), (3, 4)) and m.added == ((1, 3), (0, 4))
    g, _ = apply_move(path(5), [1.0] * 5, m)
    # leftover path of order 2 plus a triangle
    assert sorted(g.degrees()) == [1, 1, 2, 2, 2] and g.num_edges() == 4


def test_rotation_odd_palindromic_delta():
    w = [0.3, 0.7, 0.2, 0.7, 0.3]
    _, delta = apply_move(path(5), w, path_rotation(range(5)))
    assert delta == pytest.approx((w[0] - w[1]) ** 2, abs=1e-15)


def test_rotation_even_h6_palindromic_zero():
    m = path_rotation(range(6))
    assert m.kind == "rot_even"
    assert m.removed == ((1, 2), (4, 5)) and m.added == ((2, 4), (1, 5))
    _, delta = apply_move(path(6), [0.1, 0.4, 0.9, 0.9, 0.4, 0.1], m)
    assert delta == 0.0


def test_rotation_h4():
    m = path_rotation(range(4))
    assert m == Move("rot_h4", ((0, 1),), ((1, 3),))
    g, delta = apply_move(path(4), [0.25, 0.5, 0.5, 0.25], m)
    assert delta == 0.0
    assert g == Graph.from_edges(4, [(1, 2), (2, 3), (1, 3)])


def test_rotation_short_path_rejected():
    with pytest.raises(ValueError):
        path_rotation([0, 1, 2])


def test_lemma_rewire():
    g = join(complete(1), path(4)).with_edges([(0, 4)], [])
    m = lemma_rewire(g, 4, 0)
    assert m.kind == "lemma_rewire"
    assert m.removed == ((3, 4),) and m.added == ((0, 4),)
    h, _ = apply_move(g, [1.0] * 5, m)
    assert h.neighbors(4) == [0]
    assert lemma_rewire(star(5), 2, 0) is None


def test_apply_move_preconditions():
    with pytest.raises(ValueError):
        apply_move(path(4), [1.0] * 4, Move("add_edge", (), ((0, 1),)))
    with pytest.raises(ValueError):
        apply_move(path(4), [1.0] * 4, Move("rot_h4", ((0, 2),), ((1, 3),)))
    with pytest.raises(ValueError):
        apply_move(path(4), [1.0] * 3, Move("add_edge", (), ((0, 2),)))


@given(st.integers(4, 14), st.lists(st.floats(0, 1, allow_nan=False), min_size=14, max_size=14), st.booleans())
def test_predicted_delta_matches_recomputation(h, weights, reverse):
    w = weights[:h]
    order = list(range(h))[::-1] if reverse else list(range(h))
    g = path(h)
    after, delta = apply_move(g, w, path_rotation(order))
    assert after.n == g.n
    assert delta == pytest.approx(edge_weight_sum(after, w) - edge_weight_sum(g, w), abs=1e-14)


def test_path_order():
    g = cycle(6).with_edges([(2, 3)], [])
    assert path_order(g, list(range(6))) == [2, 1, 0, 5, 4, 3]
    assert path_order(cycle(5), list(range(5))) is None
    assert path_order(star(4), list(range(4))) is None


# -- local search --------------------------------------------------------------

@pytest.mark.parametrize("t, n", [(3, 10), (3, 20), (3, 40), (4, 13), (2, 9)])
def test_family_is_fixpoint(t, n):
    rec = local_search(t, n, build_F(t, n))
    assert rec.move_trace == []
    assert rec.is_ft


def test_star_start_improves_and_stays_minor_free():
    rec = local_search(3, 10, star(10))
    assert rec.mu >= 3.0
    assert not k2t_minor_test(parse_graph6(rec.graph6), 3).present
    mus = [3.0] + [step["mu"] for step in rec.move_trace]
    assert mus == sorted(mus)


def test_fan_start_shortens_non_triangle_part():
    g = join(complete(1), path(9))
    rec = local_search(3, 10, g)
    kinds = [s["kind"] for s in rec.move_trace]
    assert kinds[:2] == ["rot_odd", "rot_even"]
    longest = [max(non_triangle_orders(g, 0))]
    for step in rec.move_trace:
        g = g.with_edges([tuple(e) for e in step["removed"]], [tuple(e) for e in step["added"]])
        if step["kind"].startswith("rot"):
            longest.append(max(non_triangle_orders(g, 0)))
    assert longest == [9, 6, 3] and all(b < a for a, b in zip(longest, longest[1:]))
    assert is_Ft(g, 3) and rec.is_ft
    assert str(g) == rec.graph6


def test_local_search_trace_replays_and_is_monotone():
    rng = random.Random(8)
    n = 12
    tree = Graph.from_edges(n, [(v, rng.randrange(v)) for v in range(1, n)])
    rec = local_search(3, n, tree, max_steps=30)
    g = tree
    prev = spectral_radius(g).mu
    for step in rec.move_trace:
        g = g.with_edges([tuple(e) for e in step["removed"]], [tuple(e) for e in step["added"]])
        mu = spectral_radius(g).mu
        assert mu > prev
        assert not k2t_minor_test(g, 3).present
        prev = mu
    assert str(g) == rec.graph6


def test_max_steps_respected():
    rec = local_search(3, 10, star(10), max_steps=2)
    assert len(rec.move_trace) == 2


def test_local_search_rejects_bad_start():
    with pytest.raises(ValueError):
        local_search(3, 6, complete(6))
    with pytest.raises(ValueError):
        local_search(3, 7, star(6))
