import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k2t_spectral.extremal import build_F, is_Ft, split_params
from k2t_spectral.graph import Graph, complete, cycle, disjoint_union, path, star
from k2t_spectral.verify import (
    AuditReport,
    CheckResult,
    audit,
    lemma1_hub_check,
    max_degree_vertex,
    verify_equality_structure,
)

from strategies import graphs

IDS = ["C1", "C2", "C3", "C4", "C5", "C6", "C7"]


def by_id(report):
    return {c.id: c for c in report.checks}


def test_report_has_exactly_the_seven_checks():
    rep = audit(build_F(3, 10), 3)
    assert [c.id for c in rep.checks] == IDS


def test_audit_ft_3_10():
    rep = audit(build_F(3, 10), 3)
    assert rep.ok and not rep.failures()
    c = by_id(rep)
    assert all(c[i].applicable for i in IDS)
    # mu (mu - 2) = 9 = n - 1 exactly
    assert c["C6"].lhs == pytest.approx(9.0, abs=1e-9)
    assert c["C6"].rhs == 9
    assert c["C1"].lhs == 2
    assert c["C5"].lhs == 36 and c["C5"].rhs == 36


def test_audit_star():
    rep = audit(star(10), 3)
    c = by_id(rep)
    for i in ("C1", "C2", "C3", "C5", "C6"):
        assert c[i].applicable and c[i].passed, i
    assert c["C6"].lhs == pytest.approx(3.0, abs=1e-9)
    # mu^2 = n - 1 exactly, so the entry bound is out of scope
    assert not c["C4"].applicable
    assert rep.ok


def test_audit_c4_t2_gate():
    c = by_id(audit(cycle(4), 2))
    assert not c["C1"].applicable and not c["C1"].passed
    assert not c["C2"].applicable


def test_audit_disconnected_marks_eigenvector_checks():
    c = by_id(audit(disjoint_union(complete(3), complete(3)), 3))
    assert not c["C3"].applicable and not c["C4"].applicable
    assert c["C1"].applicable and c["C5"].applicable


def test_audit_dense_graph_skips():
    c = by_id(audit(complete(7), 3))
    assert not c["C5"].applicable and not c["C7"].applicable and not c["C1"].applicable


def test_audit_empty_graph_error():
    with pytest.raises(ValueError):
        audit(Graph.empty(0), 3)


def test_inapplicable_never_passes(k23_free_upto7):
    for g in k23_free_upto7[::7] + [complete(6), cycle(4), star(4)]:
        for t in (2, 3):
            for c in audit(g, t).checks:
                if not c.applicable:
                    assert not c.passed and c.lhs is None and c.rhs is None


def test_audit_deterministic():
    g = build_F(4, 23)
    assert audit(g, 4).to_jsonl() == audit(g, 4).to_jsonl()
    assert audit(g, 4).table() == audit(g, 4).table()


def test_serialisation():
    rep = audit(build_F(3, 10), 3)
    lines = rep.to_jsonl().splitlines()
    assert len(lines) == 7
    rows = [json.loads(line) for line in lines]
    assert [r["id"] for r in rows] == IDS
    assert all(r["graph6"] == str(build_F(3, 10)) and r["t"] == 3 for r in rows)
    table = rep.table()
    assert "C6" in table and "FAIL" not in table


def test_failures_are_reported():
    bad = CheckResult("C5", True, False, 10.0, 8.0, "x")
    skip = CheckResult("C6", False, False, None, None, "y")
    rep = AuditReport("A_", 3, (bad, skip))
    assert not rep.ok
    assert rep.failures() == [bad]
    assert "FAIL" in rep.table() and "n/a" in rep.table()


def test_max_degree_vertex_lowest_index():
    assert max_degree_vertex(cycle(5)) == 0
    assert max_degree_vertex(star(5)) == 0
    assert max_degree_vertex(path(4)) == 1


# -- soundness on small corpora --------------------------------------------------

def test_audit_sound_on_k23_free_small(k23_free_upto7):
    reports = [audit(g, 3) for g in k23_free_upto7]
    assert [(r.graph6, [c.id for c in r.failures()]) for r in reports if not r.ok] == []


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_audit_sound_on_family(t):
    for n in range(t + 1, 40):
        assert audit(build_F(t, n), t).ok, (t, n)


# -- equality structure -----------------------------------------------------------

def test_equality_structure_examples():
    assert verify_equality_structure(build_F(3, 10), 3)
    assert not verify_equality_structure(build_F(3, 9), 3)
    assert not verify_equality_structure(star(10), 3)


def test_equality_structure_needs_dominating_vertex():
    with pytest.raises(ValueError):
        verify_equality_structure(cycle(5), 2)


def test_equality_structure_iff_family_and_divisible():
    for t in range(2, 7):
        for n in range(t + 1, 60):
            g = build_F(t, n)
            expected = is_Ft(g, t) and (n - 1) % t == 0
            assert verify_equality_structure(g, t) == expected
            assert (split_params(t, n).s == 0) == expected


def test_equality_structure_on_non_family_graphs(k23_free_upto7):
    for g in k23_free_upto7:
        if g.n < 2 or g.degrees().count(g.n - 1) == 0:
            continue
        for t in (2, 3):
            if g.n <= t:
                continue
            assert verify_equality_structure(g, t) == (is_Ft(g, t) and (g.n - 1) % t == 0)


# -- hub check -------------------------------------------------------------------

def test_hub_check_examples():
    for t in range(2, 6):
        for n in range(t + 1, 30):
            assert lemma1_hub_check(build_F(t, n), t)
    assert not lemma1_hub_check(path(4), 3)
    assert lemma1_hub_check(Graph.empty(1), 3)


def test_hub_check_needs_connected():
    with pytest.raises(ValueError):
        lemma1_hub_check(disjoint_union(complete(2), complete(2)), 2)


@given(graphs(min_n=2, max_n=8, connected=True), st.integers(2, 4))
def test_audit_minor_free_property(g, t):
    from k2t_spectral.minor import k2t_minor_test

    if not k2t_minor_test(g, t).present:
        assert audit(g, t).ok
