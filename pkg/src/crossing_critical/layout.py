"""Straight-line layouts of planarizations and SVG rendering of certificates.

Layouts are for looking at; no validity decision depends on them.  The
barycentric (Tutte) solve runs on an internal triangulation with the outer
face pinned to a regular polygon.  Every result is checked with exact
integer orientation tests, and if floating point betrays the barycentric
solve the combinatorial grid drawing from networkx is used instead.
"""

from __future__ import annotations

import math
from fractions import Fraction
from html import escape
from typing import Sequence

import networkx as nx
import numpy as np
from networkx.algorithms.planar_drawing import (
    combinatorial_embedding_to_pos,
    triangulate_embedding,
)
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve

from .drawing import CertError, DrawingCert, planarize, validate

Point = tuple[float, float]
APEX = ("apex",)
REWEIGHT_ROUNDS = 5


def _regular_polygon(k: int) -> list[Point]:
    return [
        (math.cos(2 * math.pi * i / k + math.pi / 2), math.sin(2 * math.pi * i / k + math.pi / 2))
        for i in range(k)
    ]


def _pinned_outer(h: nx.Graph, outer_face: Sequence[int] | None):
    """Triangulated embedding plus the cycle to pin on the convex polygon."""
    if outer_face is None:
        ok, emb = nx.check_planarity(h)
        tri, outer = triangulate_embedding(emb, fully_triangulate=False)
        return tri, list(outer)
    chosen = list(dict.fromkeys(outer_face))
    missing = [v for v in chosen if v not in h]
    if missing or len(chosen) < 3:
        raise ValueError(f"outer face must name at least 3 vertices of the planarization: {missing}")
    with_apex = h.copy()
    with_apex.add_edges_from((APEX, v) for v in chosen)
    ok, emb = nx.check_planarity(with_apex)
    if not ok:
        raise ValueError("the selected vertices do not lie on a common face")
    ring = list(emb.neighbors_cw_order(APEX))
    for j, x in enumerate(ring):
        y = ring[(j + 1) % len(ring)]
        if not emb.has_edge(x, y):
            emb.add_half_edge_ccw(x, y, APEX)
            emb.add_half_edge_cw(y, x, APEX)
    tri, _ = triangulate_embedding(emb, fully_triangulate=True)
    link = list(tri.neighbors_cw_order(APEX))
    tri.remove_node(APEX)
    return tri, link


def _barycentric(tri: nx.Graph, outer: list, weight=None) -> dict:
    """Weighted barycentric placement with ``outer`` pinned to a regular polygon.

    Any positive weights keep the embedding property; uniform weights are
    the classic Tutte drawing.
    """
    pos = dict(zip(outer, _regular_polygon(len(outer))))
    inner = [v for v in tri.nodes if v not in pos]
    if not inner:
        return pos
    index = {v: i for i, v in enumerate(inner)}
    a = lil_matrix((len(inner), len(inner)))
    rhs = np.zeros((len(inner), 2))
    for v, i in index.items():
        for w in tri.neighbors(v):
            wt = 1.0 if weight is None else weight(v, w)
            a[i, i] += wt
            if w in index:
                a[i, index[w]] -= wt
            else:
                rhs[i] += wt * np.asarray(pos[w])
    sol = np.atleast_2d(spsolve(a.tocsr(), rhs))
    for v, i in index.items():
        pos[v] = (float(sol[i, 0]), float(sol[i, 1]))
    return pos


def _spread_barycentric(tri: nx.Graph, outer: list, rounds: int = REWEIGHT_ROUNDS) -> dict:
    """Tutte drawing, then re-solved with edge weights equal to current lengths.

    Plain Tutte drawings shrink deep regions exponentially; weighting short
    edges less pushes their endpoints apart.
    """
    pos = _barycentric(tri, outer)
    for _ in range(rounds):
        prev = pos
        pos = _barycentric(tri, outer, lambda a, b: math.dist(prev[a], prev[b]) + 1e-12)
    return pos


def _grid_layout(h: nx.Graph) -> dict:
    ok, emb = nx.check_planarity(h)
    raw = combinatorial_embedding_to_pos(emb)
    return {v: (float(x), float(y)) for v, (x, y) in raw.items()}


def _to_ints(pos: dict) -> dict:
    fracs = {v: (Fraction(x), Fraction(y)) for v, (x, y) in pos.items()}
    den = 1
    for fx, fy in fracs.values():
        den = max(den, fx.denominator, fy.denominator)
    return {v: (int(fx * den), int(fy * den)) for v, (fx, fy) in fracs.items()}


def _orient(p, q, r) -> int:
    val = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (val > 0) - (val < 0)


def _on_segment(p, q, r) -> bool:
    """r collinear with pq lies within its bounding box."""
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segment_violations(pos: dict, edges: Sequence[tuple]) -> list[tuple[tuple, tuple]]:
    """Edge pairs that meet anywhere other than a shared endpoint (exact arithmetic).

    Also reports coincident vertices as a degenerate pair.
    """
    ip = _to_ints(pos)
    seen_points: dict[tuple[int, int], object] = {}
    bad: list[tuple[tuple, tuple]] = []
    for v, p in ip.items():
        if p in seen_points:
            bad.append(((v, v), (seen_points[p], seen_points[p])))
        seen_points[p] = v
    segs = sorted(
        {tuple(sorted(e, key=repr)) for e in edges},
        key=lambda e: min(ip[e[0]][0], ip[e[1]][0]),
    )
    for i, (a, b) in enumerate(segs):
        p, q = ip[a], ip[b]
        xmax = max(p[0], q[0])
        for c, d in segs[i + 1 :]:
            r, s = ip[c], ip[d]
            if min(r[0], s[0]) > xmax:
                break
            shared = {a, b} & {c, d}
            o1, o2 = _orient(p, q, r), _orient(p, q, s)
            o3, o4 = _orient(r, s, p), _orient(r, s, q)
            if shared:
                # adjacent segments may only touch at the common endpoint
                x = shared.pop()
                other1 = b if a == x else a
                other2 = d if c == x else c
                if _orient(ip[x], ip[other1], ip[other2]) == 0 and (
                    _on_segment(ip[x], ip[other1], ip[other2])
                    or _on_segment(ip[x], ip[other2], ip[other1])
                ):
                    bad.append(((a, b), (c, d)))
                continue
            if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
                bad.append(((a, b), (c, d)))
            elif (o1 == 0 and _on_segment(p, q, r)) or (o2 == 0 and _on_segment(p, q, s)) or (
                o3 == 0 and _on_segment(r, s, p)
            ) or (o4 == 0 and _on_segment(r, s, q)):
                bad.append(((a, b), (c, d)))
    return bad


def _layout_connected(h: nx.Graph, outer_face: Sequence[int] | None) -> dict:
    n = h.number_of_nodes()
    if n == 1:
        return {next(iter(h.nodes)): (0.0, 0.0)}
    if n == 2:
        a, b = sorted(h.nodes)
        return {a: (-1.0, 0.0), b: (1.0, 0.0)}
    tri, outer = _pinned_outer(h, outer_face)
    pos = _spread_barycentric(tri, outer)
    if segment_violations(pos, list(h.edges)):
        pos = _grid_layout(h)
    return pos


def layout(cert: DrawingCert, outer_face: Sequence[int] | None = None) -> dict[int, Point]:
    """Planar straight-line coordinates for every vertex of the planarization.

    ``outer_face`` optionally lists planarization vertices that must end up on
    the convex outer polygon (they have to share a face).  Components are
    laid out separately and placed side by side.
    """
    if not validate(cert).valid:
        raise CertError("layout needs a valid certificate")
    h = planarize(cert).graph.to_networkx()
    out: dict[int, Point] = {}
    x_offset = 0.0
    comps = sorted(nx.connected_components(h), key=min)
    for comp in comps:
        sub = h.subgraph(comp).copy()
        face = None
        if outer_face is not None and set(outer_face) <= comp:
            face = outer_face
        pos = _layout_connected(sub, face)
        xs = [p[0] for p in pos.values()]
        ys = [p[1] for p in pos.values()]
        scale = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        for v, (x, y) in pos.items():
            out[v] = (x_offset + (x - min(xs)) / scale, (y - min(ys)) / scale)
        x_offset += (max(xs) - min(xs)) / scale + 0.25
    return out


def layout_violations(cert: DrawingCert, pos: dict[int, Point]) -> list:
    """Brute-force check of a layout against the planarization's edges."""
    p = planarize(cert).graph
    return segment_violations(pos, [(u, v) for _, u, v in p.edges()])


def to_svg(
    cert: DrawingCert, pos: dict[int, Point] | None = None, size: int = 900
) -> str:
    """One SVG document: edges as polylines through their crossing points,
    thick edges stroked heavier, original vertices drawn and labeled."""
    if pos is None:
        pos = layout(cert)
    plan = planarize(cert)
    g = cert.base.graph
    margin = 30
    xs = [p[0] for p in pos.values()] or [0.0]
    ys = [p[1] for p in pos.values()] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    scale = (size - 2 * margin) / span

    def xy(v: int) -> str:
        x, y = pos[v]
        return f"{margin + (x - min(xs)) * scale:.2f},{size - margin - (y - min(ys)) * scale:.2f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for eid, u, v in g.edges():
        chain = [u, *(plan.dummies[c] for c in cert.orders.get(eid, ())), v]
        width = 3.0 if eid in cert.base.thick else 1.0
        pts = " ".join(xy(x) for x in chain)
        lines.append(
            f'<polyline data-edge="{eid}" points="{pts}" fill="none" stroke="black" '
            f'stroke-width="{width}"/>'
        )
    for v in g.vertices():
        cx, cy = xy(v).split(",")
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>')
        label = g.label(v)
        if label is not None:
            lines.append(
                f'<text x="{float(cx) + 4:.2f}" y="{float(cy) - 4:.2f}" font-size="9" '
                f'font-family="sans-serif">{escape(label)}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
