from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from fractions import Fraction
from itertools import combinations

import pytest

from crossing_critical.drawing import CertError, DrawingCert, planarize
from crossing_critical.family import build_family, canonical_drawing
from crossing_critical.graph import Graph, SpecialGraph, complete_graph, cycle_graph, disjoint_union
from crossing_critical.layout import layout, layout_violations, to_svg
from crossing_critical.solver import solve_exact

SVG = "{http://www.w3.org/2000/svg}"


def cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def segments_meet(p, q, r, s) -> bool:
    """Closed segments pq and rs share a point (rational arithmetic)."""
    d1, d2, d3, d4 = cross(r, s, p), cross(r, s, q), cross(p, q, r), cross(p, q, s)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True

    def within(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    return (
        (d1 == 0 and within(r, s, p))
        or (d2 == 0 and within(r, s, q))
        or (d3 == 0 and within(p, q, r))
        or (d4 == 0 and within(p, q, s))
    )


def brute_force_violations(cert: DrawingCert, pos) -> int:
    """Independent oracle: every pair of planarization edges, exact arithmetic."""
    p = planarize(cert).graph
    exact = {v: (Fraction(x), Fraction(y)) for v, (x, y) in pos.items()}
    bad = 0
    edges = [(u, v) for _, u, v in p.edges()]
    for (a, b), (c, d) in combinations(edges, 2):
        # float comparisons are exact, so this box test only skips disjoint pairs
        if (
            max(pos[a][0], pos[b][0]) < min(pos[c][0], pos[d][0])
            or max(pos[c][0], pos[d][0]) < min(pos[a][0], pos[b][0])
            or max(pos[a][1], pos[b][1]) < min(pos[c][1], pos[d][1])
            or max(pos[c][1], pos[d][1]) < min(pos[a][1], pos[b][1])
        ):
            continue
        shared = {a, b} & {c, d}
        if shared:
            x = shared.pop()
            o1 = b if a == x else a
            o2 = d if c == x else c
            # only the shared endpoint may be common: collinear overlap is a violation
            if cross(exact[x], exact[o1], exact[o2]) == 0 and (
                (exact[o1][0] - exact[x][0]) * (exact[o2][0] - exact[x][0])
                + (exact[o1][1] - exact[x][1]) * (exact[o2][1] - exact[x][1])
            ) > 0:
                bad += 1
            continue
        if segments_meet(exact[a], exact[b], exact[c], exact[d]):
            bad += 1
    return bad


def in_convex_position(points) -> bool:
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    signs = {
        cross(pts[i], pts[(i + 1) % len(pts)], pts[(i + 2) % len(pts)]) > 0 for i in range(len(pts))
    }
    return len(signs) == 1


def test_cycle_is_convex():
    c = cycle_graph(7)
    cert = DrawingCert.uncrossed(SpecialGraph(c))
    pos = layout(cert)
    assert in_convex_position([pos[v] for v in range(7)])
    assert brute_force_violations(cert, pos) == 0


def test_canonical_d2_layout_has_no_violations():
    cert = canonical_drawing(build_family(2))
    pos = layout(cert)
    assert brute_force_violations(cert, pos) == 0
    assert layout_violations(cert, pos) == []


def test_two_crossing_edges_dummy_inside():
    g = Graph()
    for _ in range(4):
        g.add_vertex()
    e, f = g.add_edge(0, 1), g.add_edge(2, 3)
    cert = DrawingCert(SpecialGraph(g), {0: (e, f)}, {e: (0,), f: (0,)})
    dummy = planarize(cert).dummies[0]
    pos = layout(cert, outer_face=[0, 2, 1, 3])
    cx = sum(pos[v][0] for v in range(4)) / 4
    cy = sum(pos[v][1] for v in range(4)) / 4
    ring = sorted(range(4), key=lambda v: math.atan2(pos[v][1] - cy, pos[v][0] - cx))
    quad = [pos[v] for v in ring]
    assert in_convex_position(quad)
    x = (Fraction(pos[dummy][0]), Fraction(pos[dummy][1]))
    q = [(Fraction(a), Fraction(b)) for a, b in quad]
    sides = [cross(q[i], q[(i + 1) % 4], x) for i in range(4)]
    assert all(s > 0 for s in sides) or all(s < 0 for s in sides)


def test_disconnected_and_tiny_components():
    k5 = solve_exact(complete_graph(5)).witness
    g = disjoint_union(k5.base.graph, complete_graph(1), complete_graph(2))
    cert = DrawingCert(SpecialGraph(g), k5.crossings, k5.orders)
    pos = layout(cert)
    assert len(pos) == g.n + 1
    assert brute_force_violations(cert, pos) == 0


def test_layout_rejects_invalid_cert():
    with pytest.raises(CertError):
        layout(DrawingCert.uncrossed(SpecialGraph(complete_graph(5))))


def test_outer_face_must_be_a_face():
    cert = canonical_drawing(build_family(1))
    with pytest.raises(ValueError):
        layout(cert, outer_face=[0, 1])


def test_svg_document():
    inst = build_family(1)
    cert = canonical_drawing(inst)
    root = ET.fromstring(to_svg(cert))
    assert root.tag == f"{SVG}svg"
    lines = root.findall(f"{SVG}polyline")
    assert len(lines) == inst.graph.m
    widths = {int(pl.get("data-edge")): float(pl.get("stroke-width")) for pl in lines}
    assert all(widths[e] == 3.0 for e in inst.special.thick)
    assert all(widths[e] == 1.0 for e in inst.special.thin_edges())
    labels = {t.text for t in root.findall(f"{SVG}text")}
    assert {"v", "a_1", "a'_19", "c~^0_5"} <= labels
    assert len(root.findall(f"{SVG}circle")) == inst.graph.n
    # a crossed edge is drawn through one bend per crossing
    e = inst.a_edge(1)
    pts = next(pl for pl in lines if int(pl.get("data-edge")) == e).get("points").split()
    assert len(pts) == 2 + 18


def test_oracles_flag_a_broken_layout():
    cert = DrawingCert.uncrossed(SpecialGraph(complete_graph(4)))
    pos = layout(cert)
    bad = dict(pos)
    bad[0], bad[1] = pos[1], pos[0]
    bad[2] = bad[3]
    assert brute_force_violations(cert, bad) > 0
    assert layout_violations(cert, bad)
