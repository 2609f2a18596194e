from __future__ import annotations

import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossing_critical.drawing import (
    CertError,
    CertFormatError,
    DrawingCert,
    cert_from_json,
    cert_to_json,
    merge_certs,
    planarize,
    validate,
)
from crossing_critical.family import build_family, canonical_drawing, deleted_edge_drawing
from crossing_critical.graph import (
    Graph,
    SpecialGraph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
)
from crossing_critical.solver import solve_exact

from test_graph import small_graphs


def two_crossing_edges() -> DrawingCert:
    g = Graph()
    for _ in range(4):
        g.add_vertex()
    e = g.add_edge(0, 1)
    f = g.add_edge(2, 3)
    return DrawingCert(SpecialGraph(g), {0: (e, f)}, {e: (0,), f: (0,)})


def reversed_edge(cert: DrawingCert, eid: int) -> DrawingCert:
    """Same drawing with edge ``eid`` stored head-to-tail."""
    src = cert.base.graph
    g = Graph()
    for v in src.vertices():
        g.add_vertex(src.label(v), vid=v)
    for e, u, v in src.edges():
        if e == eid:
            u, v = v, u
        g.add_edge(u, v, eid=e)
    orders = dict(cert.orders)
    if eid in orders:
        orders[eid] = orders[eid][::-1]
    return DrawingCert(SpecialGraph(g, cert.base.thick), cert.crossings, orders)


@pytest.fixture(scope="module")
def witnesses() -> list[DrawingCert]:
    """Optimal drawings from the solver plus the d=1 family drawing."""
    certs = [
        solve_exact(g).witness
        for g in (complete_graph(5), complete_graph(6), complete_bipartite_graph(3, 3))
    ]
    certs.append(canonical_drawing(build_family(1)))
    return certs


# -- planarize --------------------------------------------------------------


def test_zero_crossings_planarization_is_base():
    g = complete_bipartite_graph(2, 3)
    p = planarize(DrawingCert.uncrossed(SpecialGraph(g)))
    assert p.graph == g
    assert not p.dummies


def test_single_crossing_gives_one_degree_four_dummy():
    cert = two_crossing_edges()
    p = planarize(cert)
    assert len(p.dummies) == 1
    x = p.dummies[0]
    assert p.is_dummy(x) and not p.is_dummy(0)
    assert p.graph.degree(x) == 4
    assert p.graph.label(x) == "x0"


def test_canonical_d5_planarization_size():
    cert = canonical_drawing(build_family(5))
    p = planarize(cert)
    assert p.graph.n == 105 + 171
    assert p.graph.m == 167 + 2 * 171


def test_segments_follow_stored_orientation():
    inst = build_family(1)
    cert = canonical_drawing(inst)
    p = planarize(cert)
    for e, seq in cert.orders.items():
        u, v = cert.base.graph.endpoints(e)
        chain = p.segments[e]
        assert len(chain) == len(seq) + 1
        first, last = p.graph.endpoints(chain[0]), p.graph.endpoints(chain[-1])
        assert first == (u, p.dummies[seq[0]])
        assert last == (p.dummies[seq[-1]], v)


@pytest.mark.parametrize(
    "crossings, orders",
    [
        ({0: (0, 1)}, {0: (0,)}),  # missing on the second edge
        ({0: (0, 1)}, {0: (0, 0), 1: (0,)}),  # duplicate occurrence
        ({0: (0, 0)}, {0: (0,)}),  # self crossing
        ({0: (0, 99)}, {0: (0,)}),  # unknown edge
        ({}, {0: (7,)}),  # dangling crossing id
    ],
)
def test_planarize_rejects_malformed(crossings, orders):
    base = SpecialGraph(cycle_graph(6))
    with pytest.raises(CertError):
        planarize(DrawingCert(base, crossings, orders))
    assert not validate(DrawingCert(base, crossings, orders)).valid


def test_planarization_counts(witnesses):
    for cert in witnesses:
        p = planarize(cert).graph
        g = cert.base.graph
        assert p.n == g.n + cert.crossing_count
        assert p.m == g.m + 2 * cert.crossing_count


# -- validate -----------------------------------------------------------------


def test_canonical_validates_for_all_small_d():
    for d in (1, 2, 3):
        report = validate(canonical_drawing(build_family(d)))
        assert report.valid and report.crossing_count == 171


def test_deleted_edge_cert_validates():
    report = validate(deleted_edge_drawing(build_family(5), 3))
    assert report.valid and report.crossing_count == 170


def test_thick_edge_crossing_reported():
    cert = two_crossing_edges()
    thick = DrawingCert(SpecialGraph(cert.base.graph, frozenset({0})), cert.crossings, cert.orders)
    report = validate(thick)
    assert not report.valid
    assert [v.kind for v in report.violations] == ["thick-edge-crossed"]


def test_adjacent_crossing_and_repeated_pair_reported():
    g = cycle_graph(4)  # edges 0:(0,1) 1:(1,2) 2:(2,3) 3:(3,0)
    adjacent = DrawingCert(SpecialGraph(g), {0: (0, 1)}, {0: (0,), 1: (0,)})
    assert "adjacent-edges-crossed" in {v.kind for v in validate(adjacent).violations}
    twice = DrawingCert(SpecialGraph(g), {0: (0, 2), 1: (0, 2)}, {0: (0, 1), 2: (1, 0)})
    kinds = {v.kind for v in validate(twice).violations}
    assert kinds == {"repeated-pair"}
    assert validate(twice, require_good=False).valid


def test_wrong_order_along_an_edge_is_rejected():
    inst = build_family(1)
    cert = canonical_drawing(inst)
    e = inst.a_edge(5)
    orders = dict(cert.orders)
    seq = list(orders[e])
    seq[0], seq[1] = seq[1], seq[0]
    orders[e] = tuple(seq)
    report = validate(DrawingCert(cert.base, cert.crossings, orders))
    assert [v.kind for v in report.violations] == ["planarization-nonplanar"]


def test_report_valid_iff_no_violations(witnesses):
    for cert in witnesses + [two_crossing_edges()]:
        r = validate(cert)
        assert r.valid == (not r.violations)


@given(st.randoms(use_true_random=False))
@settings(max_examples=25, deadline=None)
def test_validate_invariant_under_crossing_renaming(witnesses, rng):
    for cert in witnesses:
        ids = list(cert.crossings)
        images = rng.sample(range(10_000), len(ids))
        renamed = cert.renamed(dict(zip(ids, images)))
        assert validate(renamed) == validate(cert)


@given(st.randoms(use_true_random=False))
@settings(max_examples=25, deadline=None)
def test_validate_invariant_under_edge_reversal(witnesses, rng):
    for cert in witnesses:
        flipped = cert
        for e in rng.sample(cert.base.graph.edge_ids(), 3):
            flipped = reversed_edge(flipped, e)
        assert validate(flipped) == validate(cert)


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_uncrossed_cert_valid_iff_planar(g):
    cert = DrawingCert.uncrossed(SpecialGraph(g))
    assert validate(cert).valid == nx.check_planarity(g.to_networkx())[0]


def test_merge_certs_of_components():
    k5 = solve_exact(complete_graph(5)).witness
    g = disjoint_union(complete_graph(5), complete_graph(5))
    shifted = DrawingCert(
        SpecialGraph(g),
        k5.crossings,
        k5.orders,
    )
    other = DrawingCert(
        SpecialGraph(g),
        {c: (e1 + 10, e2 + 10) for c, (e1, e2) in k5.crossings.items()},
        {e + 10: seq for e, seq in k5.orders.items()},
    )
    merged = merge_certs([shifted, other], SpecialGraph(g))
    report = validate(merged)
    assert report.valid and report.crossing_count == 2


# -- codec --------------------------------------------------------------------


def test_round_trip_empty_cert():
    cert = DrawingCert.uncrossed(SpecialGraph(cycle_graph(5), frozenset({0, 1})))
    back = cert_from_json(json.loads(json.dumps(cert_to_json(cert))))
    assert back == cert


def test_round_trip_canonical_d5():
    cert = canonical_drawing(build_family(5))
    back = cert_from_json(json.loads(json.dumps(cert_to_json(cert))))
    assert back == cert
    assert back.base.graph.label(back.base.graph.vertices()[0]) == "v"


@pytest.mark.parametrize(
    "mutate, path",
    [
        (lambda d: d["crossings"].append({"id": 9, "e1": 0, "e2": 999}), "crossings[1].e2"),
        (lambda d: d["crossings"].append({"id": 0, "e1": 0, "e2": 1}), "crossings[1].id"),
        (lambda d: d["crossings"][0].update(e1="x"), "crossings[0].e1"),
        (lambda d: d["orders"].update({"0": [5]}), "orders['0'][0]"),
        (lambda d: d["orders"].update({"abc": []}), "orders['abc']"),
        (lambda d: d.pop("graph"), "graph"),
        (lambda d: d["graph"]["edges"][0].update(u="q"), "graph.edges[0].u"),
    ],
)
def test_decode_errors_are_positional(mutate, path):
    doc = cert_to_json(two_crossing_edges())
    mutate(doc)
    with pytest.raises(CertFormatError) as info:
        cert_from_json(doc)
    assert info.value.path == path


def test_decoding_is_not_validation():
    doc = cert_to_json(two_crossing_edges())
    doc["orders"]["1"] = []
    cert = cert_from_json(doc)
    assert not validate(cert).valid
