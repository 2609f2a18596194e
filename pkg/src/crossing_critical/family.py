"""The 171-crossing special graph with a vertex of arbitrarily large critical degree.

``build_family(d)`` glues ``d + 1`` thick cycles at a hub ``v``; ``d`` thin
spokes ``v s^i`` are each 171-critical.  The module also produces drawing
certificates for the standard drawing (171 crossings) and for every
spoke-deleted graph (170 crossings), plus the five witness paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any

from .drawing import DrawingCert, ValidationReport, Violation
from .graph import (
    CyclePath,
    Graph,
    GraphError,
    SpecialGraph,
    is_induced_nonseparating_cycle,
)

N_A = 19
N_B = 3
N_C = 5
CANONICAL_CROSSINGS = N_A * (N_A - 1) // 2  # 171
DELETED_CROSSINGS = N_A * N_B + N_B * (N_B - 1) // 2 + N_C * (N_A + N_B)  # 57 + 3 + 110


def c_name(i: int, j: int) -> str:
    return f"c^{i}_{j}"


def ct_name(i: int, j: int) -> str:
    return f"c~^{i}_{j}"


@dataclass(frozen=True)
class FamilyInstance:
    """One member of the family with every named vertex and edge group resolved.

    ``cycles`` holds C_0..C_d and K_1..K_d under those names; ``m_edges`` lists
    a_i a'_i (i = 1..19) followed by b_i b'_i (i = 1..3); ``matching`` is keyed
    by ``(i, j)`` for the edge c^i_j c~^i_j.
    """

    d: int
    special: SpecialGraph
    roles: dict[str, int]
    cycles: dict[str, CyclePath]
    cycle_edges: dict[str, tuple[int, ...]]
    spokes: dict[int, int]
    matching: dict[tuple[int, int], int]
    m_edges: tuple[int, ...]
    rotation_at_v: tuple[int, ...]

    @property
    def graph(self) -> Graph:
        return self.special.graph

    @property
    def v(self) -> int:
        return self.roles["v"]

    def a_edge(self, i: int) -> int:
        return self.m_edges[i - 1]

    def b_edge(self, i: int) -> int:
        return self.m_edges[N_A + i - 1]

    def role_of(self) -> dict[int, str]:
        return {vid: name for name, vid in self.roles.items()}

    def sidecar(self) -> dict[str, Any]:
        """Role names to ids, for tools that should not parse labels."""
        return {
            "d": self.d,
            "vertices": dict(self.roles),
            "edges": {
                "M": list(self.m_edges),
                "spokes": {f"v s^{i}": e for i, e in sorted(self.spokes.items())},
                "matching": {
                    f"{c_name(i, j)} {ct_name(i, j)}": e
                    for (i, j), e in sorted(self.matching.items())
                },
                "cycles": {name: list(es) for name, es in self.cycle_edges.items()},
            },
            "rotation_at_v": list(self.rotation_at_v),
        }


def _cycle_names(d: int) -> list[str]:
    return [f"C_{i}" for i in range(d + 1)] + [f"K_{i}" for i in range(1, d + 1)]


def build_family(d: int) -> FamilyInstance:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise GraphError(f"d must be a positive integer, got {d!r}")
    g = Graph()
    roles: dict[str, int] = {}

    def vertex(name: str) -> int:
        roles[name] = g.add_vertex(name)
        return roles[name]

    v = vertex("v")
    a = [vertex(f"a_{i}") for i in range(1, N_A + 1)]
    b = [vertex(f"b_{i}") for i in range(1, N_B + 1)]
    c = {(0, j): vertex(c_name(0, j)) for j in range(1, N_C + 1)}
    t = {}
    for i in range(1, d):
        t[i] = vertex(f"t^{i}")
        for j in range(1, N_C + 1):
            c[(i, j)] = vertex(c_name(i, j))
    t[d] = vertex(f"t^{d}")
    b2 = [vertex(f"b'_{i}") for i in range(1, N_B + 1)]
    a2 = [vertex(f"a'_{i}") for i in range(1, N_A + 1)]
    s = {i: vertex(f"s^{i}") for i in range(1, d + 1)}
    ct = {
        (i, j): vertex(ct_name(i, j)) for i in range(d) for j in range(1, N_C + 1)
    }

    cols = range(1, N_C + 1)
    cycles: dict[str, CyclePath] = {
        "C_0": CyclePath((v, *a, *b, *(c[(0, j)] for j in cols)), closed=True)
    }
    for i in range(1, d):
        cycles[f"C_{i}"] = CyclePath((v, t[i], *(c[(i, j)] for j in cols)), closed=True)
    cycles[f"C_{d}"] = CyclePath((v, t[d], *reversed(b2), *a2), closed=True)
    for i in range(1, d + 1):
        cycles[f"K_{i}"] = CyclePath(
            (t[i], s[i], *(ct[(i - 1, j)] for j in reversed(cols))), closed=True
        )

    cycle_edges = {}
    for name in _cycle_names(d):
        cycle_edges[name] = tuple(g.add_edge(x, y) for x, y in cycles[name].vertex_pairs())
    spokes = {i: g.add_edge(v, s[i]) for i in range(1, d + 1)}
    matching = {key: g.add_edge(c[key], ct[key]) for key in sorted(c)}
    m_edges = tuple(g.add_edge(x, y) for x, y in zip(a + b, a2 + b2))

    rotation = [a[0], c[(0, N_C)]]
    for i in range(1, d):
        rotation += [s[i], t[i], c[(i, N_C)]]
    rotation += [s[d], t[d], a2[-1]]

    thick = frozenset(e for es in cycle_edges.values() for e in es)
    return FamilyInstance(
        d=d,
        special=SpecialGraph(g, thick),
        roles=roles,
        cycles=cycles,
        cycle_edges=cycle_edges,
        spokes=spokes,
        matching=matching,
        m_edges=m_edges,
        rotation_at_v=tuple(rotation),
    )


# ---------------------------------------------------------------------------
# Certificates from a convex-position chord realization
# ---------------------------------------------------------------------------


def chord_certificate(
    base: SpecialGraph, boundary: list[int], chords: list[int]
) -> DrawingCert:
    """Certificate for drawing ``chords`` straight inside a convex polygon.

    ``boundary`` lists the chord endpoints in the cyclic order in which they
    occur on the face that hosts the chords.  Points sit on the parabola
    ``y = x^2`` so every intersection is computed exactly.
    """
    g = base.graph
    pos = {vid: i for i, vid in enumerate(boundary)}
    if len(pos) != len(boundary):
        raise GraphError("boundary repeats a vertex")
    point = {vid: (Fraction(i), Fraction(i * i)) for vid, i in pos.items()}

    def param(e: int, f: int) -> tuple[Fraction, Fraction] | None:
        (p, q), (r, s) = (point[x] for x in g.endpoints(e)), (point[x] for x in g.endpoints(f))
        dx, dy = q[0] - p[0], q[1] - p[1]
        ex, ey = s[0] - r[0], s[1] - r[1]
        den = dx * ey - dy * ex
        if den == 0:
            return None
        wx, wy = r[0] - p[0], r[1] - p[1]
        lam = (wx * ey - wy * ex) / den
        mu = (wx * dy - wy * dx) / den
        if 0 < lam < 1 and 0 < mu < 1:
            return lam, mu
        return None

    crossings: dict[int, tuple[int, int]] = {}
    along: dict[int, list[tuple[Fraction, int]]] = {e: [] for e in chords}
    for e, f in combinations(sorted(chords), 2):
        hit = param(e, f)
        if hit is None:
            continue
        cid = len(crossings)
        crossings[cid] = (e, f)
        along[e].append((hit[0], cid))
        along[f].append((hit[1], cid))
    orders = {e: tuple(cid for _, cid in sorted(seq)) for e, seq in along.items() if seq}
    return DrawingCert(base, crossings, orders)


def _names(inst: FamilyInstance, *names: str) -> list[int]:
    return [inst.roles[n] for n in names]


def canonical_drawing(inst: FamilyInstance) -> DrawingCert:
    """The standard drawing: only the a_i a'_i edges cross, pairwise."""
    boundary = (
        _names(inst, *(f"a_{i}" for i in range(1, N_A + 1)))
        + _names(inst, *(f"b_{i}" for i in range(1, N_B + 1)))
        + _names(inst, *(f"b'_{i}" for i in range(N_B, 0, -1)))
        + _names(inst, *(f"a'_{i}" for i in range(1, N_A + 1)))
    )
    return chord_certificate(inst.special, boundary, list(inst.m_edges))


def deleted_edge_graph(inst: FamilyInstance, k: int) -> SpecialGraph:
    if not 1 <= k <= inst.d:
        raise GraphError(f"k must lie in 1..{inst.d}, got {k}")
    return inst.special.without_edges([inst.spokes[k]])


def deleted_edge_rotation(inst: FamilyInstance, k: int) -> tuple[int, ...]:
    """Rotation at v once C_k..C_d (with their K cycles) are mirrored and v s^k is gone."""
    if not 1 <= k <= inst.d:
        raise GraphError(f"k must lie in 1..{inst.d}, got {k}")
    rot = list(inst.rotation_at_v)
    cut = rot.index(inst.roles[f"s^{k}"])
    return tuple(rot[:cut] + rot[cut + 1 :][::-1])


def deleted_edge_drawing(inst: FamilyInstance, k: int) -> DrawingCert:
    """170-crossing drawing of the graph without spoke v s^k.

    After mirroring C_k..C_d, the M edges are nested except for the b-edges,
    and the five rungs c^{k-1}_j c~^{k-1}_j cross all of M.
    """
    base = deleted_edge_graph(inst, k)
    cols = range(1, N_C + 1)
    boundary = (
        _names(inst, *(f"a_{i}" for i in range(1, N_A + 1)))
        + _names(inst, *(f"b_{i}" for i in range(1, N_B + 1)))
        + _names(inst, *(c_name(k - 1, j) for j in cols))
        + _names(inst, *(f"a'_{i}" for i in range(N_A, 0, -1)))
        + _names(inst, *(f"b'_{i}" for i in range(1, N_B + 1)))
        + _names(inst, *(ct_name(k - 1, j) for j in reversed(cols)))
    )
    rungs = [inst.matching[(k - 1, j)] for j in cols]
    return chord_certificate(base, boundary, list(inst.m_edges) + rungs)


def witness_paths(inst: FamilyInstance) -> list[CyclePath]:
    """P_1..P_5: from c^0_i alternately along rungs, K cycles and C cycles to t^d."""
    paths = []
    for i in range(1, N_C + 1):
        names = []
        for level in range(inst.d):
            if level > 0:
                names.append(f"t^{level}")
                names += [c_name(level, j) for j in range(1, i)]
            names.append(c_name(level, i))
            names += [ct_name(level, j) for j in range(i, 0, -1)]
        names.append(f"t^{inst.d}")
        paths.append(CyclePath(tuple(_names(inst, *names)), closed=False))
    return paths


def path_edges(inst: FamilyInstance, path: CyclePath) -> list[int]:
    return path.edge_ids(inst.graph)


# ---------------------------------------------------------------------------
# Structural verification
# ---------------------------------------------------------------------------


def expected_counts(d: int) -> dict[str, int]:
    return {
        "vertices": 45 + 12 * d,
        "edges": 67 + 20 * d,
        "thick": 45 + 14 * d,
        "thin": 22 + 6 * d,
        "deg_v": 3 * d + 2,
    }


def verify_structure(inst: FamilyInstance) -> ValidationReport:
    """Re-derive every structural fact about the instance from its graph."""
    g = inst.graph
    d = inst.d
    want = expected_counts(d)
    found: list[Violation] = []

    def check(ok: bool, kind: str, detail: str) -> None:
        if not ok:
            found.append(Violation(kind, detail))

    check(g.n == want["vertices"], "vertex-count", f"{g.n} != {want['vertices']}")
    check(g.m == want["edges"], "edge-count", f"{g.m} != {want['edges']}")
    v = inst.v
    check(g.degree(v) == want["deg_v"], "hub-degree", f"deg(v) = {g.degree(v)}")
    others = [g.degree(x) for x in g.vertices() if x != v]
    check(max(others, default=0) <= 4, "max-degree", f"max degree off v is {max(others, default=0)}")

    lengths = {"C_0": 28, f"C_{d}": 24}
    for name in _cycle_names(d):
        want_len = lengths.get(name, 7)
        cyc = inst.cycles[name]
        check(len(cyc) == want_len, "cycle-length", f"|{name}| = {len(cyc)} != {want_len}")
        try:
            ok = is_induced_nonseparating_cycle(g, cyc)
        except GraphError as exc:
            check(False, "not-a-cycle", f"{name}: {exc}")
            continue
        check(ok, "cycle-not-induced-nonseparating", name)

    cycle_union = {e for es in inst.cycle_edges.values() for e in es}
    check(inst.special.thick == cycle_union, "thick-set", "T differs from the union of cycle edges")
    check(len(inst.special.thick) == want["thick"], "thick-count", f"|T| = {len(inst.special.thick)}")
    m = set(inst.m_edges)
    check(len(m) == 22, "m-size", f"|M| = {len(m)}")
    check(not m & inst.special.thick, "m-thick", "M intersects T")
    thin = set(inst.special.thin_edges())
    expected_thin = m | set(inst.spokes.values()) | set(inst.matching.values())
    check(thin == expected_thin, "thin-set", "thin edges differ from M + spokes + rungs")
    check(len(thin) == want["thin"], "thin-count", f"{len(thin)} thin edges")

    rot = inst.rotation_at_v
    check(len(rot) == want["deg_v"], "rotation-length", f"rotation lists {len(rot)} neighbors")
    check(
        len(set(rot)) == len(rot) and set(rot) == set(g.neighbors(v)),
        "rotation-neighbors",
        "rotation hint is not a permutation of the neighbors of v",
    )
    return ValidationReport(not found, 0, tuple(found))
