"""Labeled multigraphs, special graphs and the structural predicates built on them.

Vertex and edge identifiers are plain ints that never change once assigned;
deleting an element leaves every other identifier untouched.  Parallel edges
are allowed, self-loops are not.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping

import networkx as nx

Rotation = dict[int, list[int]]


class GraphError(ValueError):
    """Raised for structurally invalid graph operations."""


class GraphFormatError(GraphError):
    """A JSON document does not follow the graph schema.

    ``path`` locates the offending element, e.g. ``edges[3].u``.
    """

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


class Graph:
    """A multigraph with stable integer vertex and edge ids.

    Construction is incremental (``add_vertex`` / ``add_edge``); everything
    else returns new graphs and leaves the receiver untouched.
    """

    __slots__ = ("_labels", "_edges", "_incident", "_next_vertex", "_next_edge")

    def __init__(self) -> None:
        self._labels: dict[int, str | None] = {}
        self._edges: dict[int, tuple[int, int]] = {}
        self._incident: dict[int, list[int]] = {}
        self._next_vertex = 0
        self._next_edge = 0

    # -- construction -------------------------------------------------

    def add_vertex(self, label: str | None = None, vid: int | None = None) -> int:
        if vid is None:
            vid = self._next_vertex
        elif vid in self._labels:
            raise GraphError(f"duplicate vertex id {vid}")
        self._labels[vid] = label
        self._incident[vid] = []
        self._next_vertex = max(self._next_vertex, vid + 1)
        return vid

    def add_edge(self, u: int, v: int, eid: int | None = None) -> int:
        if u == v:
            raise GraphError(f"self-loop at vertex {u} rejected")
        for x in (u, v):
            if x not in self._labels:
                raise GraphError(f"unknown vertex {x}")
        if eid is None:
            eid = self._next_edge
        elif eid in self._edges:
            raise GraphError(f"duplicate edge id {eid}")
        self._edges[eid] = (u, v)
        self._incident[u].append(eid)
        self._incident[v].append(eid)
        self._next_edge = max(self._next_edge, eid + 1)
        return eid

    # -- queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self) -> list[int]:
        return sorted(self._labels)

    def edge_ids(self) -> list[int]:
        return sorted(self._edges)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(eid, u, v)`` in ascending edge id order."""
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            yield eid, u, v

    def has_vertex(self, v: int) -> bool:
        return v in self._labels

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self._edges[eid]

    def label(self, v: int) -> str | None:
        return self._labels[v]

    def incident(self, v: int) -> list[int]:
        return list(self._incident[v])

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbors of ``v`` in order of first incidence."""
        seen: dict[int, None] = {}
        for eid in self._incident[v]:
            a, b = self._edges[eid]
            seen[b if a == v else a] = None
        return list(seen)

    def other_end(self, eid: int, v: int) -> int:
        a, b = self._edges[eid]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {eid}")

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self._incident[u] if self.other_end(e, u) == v]

    def adjacent_edges(self, e: int, f: int) -> bool:
        """True when the two edges share an endpoint."""
        return bool(set(self._edges[e]) & set(self._edges[f]))

    def max_degree(self) -> int:
        return max((len(es) for es in self._incident.values()), default=0)

    def is_simple(self) -> bool:
        pairs = Counter(frozenset(uv) for uv in self._edges.values())
        return all(c == 1 for c in pairs.values())

    def vertex_by_label(self) -> dict[str, int]:
        return {lab: v for v, lab in self._labels.items() if lab is not None}

    # -- derived graphs -----------------------------------------------

    def copy(self) -> Graph:
        g = Graph()
        g._labels = dict(self._labels)
        g._edges = dict(self._edges)
        g._incident = {v: list(es) for v, es in self._incident.items()}
        g._next_vertex = self._next_vertex
        g._next_edge = self._next_edge
        return g

    def without_edges(self, eids: Iterable[int]) -> Graph:
        drop = set(eids)
        missing = drop - self._edges.keys()
        if missing:
            raise GraphError(f"unknown edge ids {sorted(missing)}")
        g = self.copy()
        for eid in drop:
            u, v = g._edges.pop(eid)
            g._incident[u].remove(eid)
            g._incident[v].remove(eid)
        return g

    def without_vertices(self, vids: Iterable[int]) -> Graph:
        drop = set(vids)
        g = self.without_edges({e for v in drop for e in self._incident[v]})
        for v in drop:
            del g._labels[v]
            del g._incident[v]
        return g

    def edge_subgraph(self, eids: Iterable[int], keep_isolated: bool = False) -> Graph:
        """Subgraph on the given edges; isolated vertices are pruned unless asked."""
        keep = set(eids)
        g = self.without_edges(self._edges.keys() - keep)
        if not keep_isolated:
            g = g.without_vertices([v for v in g._labels if not g._incident[v]])
        return g

    def relabeled(self, vmap: Mapping[int, int], emap: Mapping[int, int]) -> Graph:
        """Copy with vertex ids sent through ``vmap`` and edge ids through ``emap``."""
        g = Graph()
        for v in self.vertices():
            g.add_vertex(self._labels[v], vid=vmap[v])
        for eid, u, v in self.edges():
            g.add_edge(vmap[u], vmap[v], eid=emap[eid])
        return g

    # -- connectivity -------------------------------------------------

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps: list[set[int]] = []
        for start in self.vertices():
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.neighbors(x):
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- interop --------------------------------------------------------

    def to_networkx(self) -> nx.Graph:
        """Simple undirected view; parallel edges collapse (planarity is unaffected)."""
        h = nx.Graph()
        h.add_nodes_from(self._labels)
        h.add_edges_from(self._edges.values())
        return h

    def structure_key(self) -> tuple[frozenset[int], frozenset[tuple[int, int, int]]]:
        return (
            frozenset(self._labels),
            frozenset((e, u, v) for e, (u, v) in self._edges.items()),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __hash__(self) -> int:
        return hash(self.structure_key())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SpecialGraph:
    """A graph together with a set of thick (uncrossable) edges."""

    graph: Graph
    thick: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "thick", frozenset(self.thick))
        bad = [e for e in self.thick if not self.graph.has_edge(e)]
        if bad:
            raise GraphError(f"thick edges not in graph: {sorted(bad)}")

    def thin_edges(self) -> list[int]:
        return [e for e in self.graph.edge_ids() if e not in self.thick]

    def without_edges(self, eids: Iterable[int]) -> SpecialGraph:
        drop = set(eids)
        return SpecialGraph(self.graph.without_edges(drop), self.thick - drop)

    def key(self) -> tuple[Any, ...]:
        return (*self.graph.structure_key(), self.thick)


@dataclass(frozen=True)
class CyclePath:
    """An explicit vertex sequence; ``closed`` marks a cycle (last joins first)."""

    vertices: tuple[int, ...]
    closed: bool = False

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_pairs(self) -> list[tuple[int, int]]:
        vs = self.vertices
        pairs = list(zip(vs, vs[1:]))
        if self.closed and len(vs) > 1:
            pairs.append((vs[-1], vs[0]))
        return pairs

    def edge_ids(self, g: Graph, prefer: Iterable[int] = ()) -> list[int]:
        """Resolve consecutive vertex pairs to edge ids of ``g``.

        Where parallel edges exist, an id from ``prefer`` wins, otherwise the
        smallest id is used.
        """
        preferred = set(prefer)
        out = []
        for u, v in self.vertex_pairs():
            between = sorted(g.edges_between(u, v))
            if not between:
                raise GraphError(f"no edge between {u} and {v}")
            hits = [e for e in between if e in preferred]
            out.append(hits[0] if hits else between[0])
        return out


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def _require_positive(**sizes: int) -> None:
    for name, value in sizes.items():
        if value < 1:
            raise GraphError(f"{name} must be >= 1, got {value}")


def complete_graph(n: int) -> Graph:
    _require_positive(n=n)
    g = Graph()
    for i in range(n):
        g.add_vertex(f"k{i}")
    for i in range(n):
        for j in range(i + 1, n):
            g.add_edge(i, j)
    return g


def complete_bipartite_graph(a: int, b: int) -> Graph:
    _require_positive(a=a, b=b)
    g = Graph()
    for i in range(a):
        g.add_vertex(f"x{i}")
    for j in range(b):
        g.add_vertex(f"y{j}")
    for i in range(a):
        for j in range(b):
            g.add_edge(i, a + j)
    return g


def cycle_graph(n: int) -> Graph:
    _require_positive(n=n)
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    g = Graph()
    for i in range(n):
        g.add_vertex(f"c{i}")
    for i in range(n):
        g.add_edge(i, (i + 1) % n)
    return g


def petersen_graph() -> Graph:
    g = Graph()
    for i in range(5):
        g.add_vertex(f"o{i}")
    for i in range(5):
        g.add_vertex(f"i{i}")
    for i in range(5):
        g.add_edge(i, (i + 1) % 5)
    for i in range(5):
        g.add_edge(i, 5 + i)
    for i in range(5):
        g.add_edge(5 + i, 5 + (i + 2) % 5)
    return g


def standard_graph(kind: str, *params: int) -> Graph:
    """Build ``complete n``, ``complete-bipartite a b``, ``cycle n`` or ``petersen``."""
    kind = kind.replace("_", "-")
    if kind == "complete" and len(params) == 1:
        return complete_graph(params[0])
    if kind == "complete-bipartite" and len(params) == 2:
        return complete_bipartite_graph(*params)
    if kind == "cycle" and len(params) == 1:
        return cycle_graph(params[0])
    if kind == "petersen" and not params:
        return petersen_graph()
    raise GraphError(f"unknown graph kind {kind!r} with params {params}")


def disjoint_union_with_maps(
    *graphs: Graph,
) -> tuple[Graph, list[tuple[dict[int, int], dict[int, int]]]]:
    """Disjoint union plus the (vertex map, edge map) used for each operand.

    The first operand keeps its ids; later operands are shifted past the
    largest id used so far.
    """
    out = Graph()
    maps = []
    v_off = e_off = 0
    for g in graphs:
        vmap = {v: v + v_off for v in g.vertices()}
        emap = {e: e + e_off for e in g.edge_ids()}
        for v in g.vertices():
            out.add_vertex(g.label(v), vid=vmap[v])
        for eid, u, v in g.edges():
            out.add_edge(vmap[u], vmap[v], eid=emap[eid])
        maps.append((vmap, emap))
        v_off = out._next_vertex
        e_off = out._next_edge
    return out, maps


def disjoint_union(*graphs: Graph) -> Graph:
    return disjoint_union_with_maps(*graphs)[0]


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def is_planar(g: Graph) -> tuple[bool, Rotation | None]:
    """Planarity test; on success also return a clockwise rotation system.

    The rotation lists distinct neighbors, so parallel edges share a slot.
    """
    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        return False, None
    return True, {v: list(emb.neighbors_cw_order(v)) for v in emb.nodes}


def has_rotation(g: Graph, v: int, order: list[int]) -> bool:
    """Whether some planar embedding of ``g`` shows ``order`` (or its mirror) around ``v``.

    ``v`` is replaced by a wheel whose rim carries the prescribed order; the
    wheel is rigid, so the modified graph is planar exactly when the
    rotation is realizable.
    """
    nbrs = g.neighbors(v)
    if len(nbrs) != g.degree(v):
        raise GraphError(f"vertex {v} has parallel edges; rotation is ambiguous")
    if sorted(order) != sorted(nbrs) or len(set(order)) != len(order):
        raise GraphError(f"order is not a permutation of the neighbors of {v}")
    if len(order) <= 3:
        # every cyclic order of three items is the mirror of the other one
        return is_planar(g)[0]
    h = g.without_vertices([v]).to_networkx()
    rim = [("rim", i) for i in range(len(order))]
    for i, u in enumerate(order):
        h.add_edge(rim[i], u)
        h.add_edge(rim[i], rim[(i + 1) % len(rim)])
        h.add_edge(rim[i], "hub")
    return nx.check_planarity(h)[0]


def is_induced_nonseparating_cycle(g: Graph, c: CyclePath) -> bool:
    """Chordless (no parallels on the cycle either) and ``g - V(c)`` connected."""
    vs = c.vertices
    if not c.closed or len(vs) < 3:
        raise GraphError("expected a closed cycle with at least 3 vertices")
    if len(set(vs)) != len(vs):
        raise GraphError("cycle repeats a vertex")
    for u, w in c.vertex_pairs():
        if not g.has_vertex(u) or not g.has_vertex(w) or not g.edges_between(u, w):
            raise GraphError(f"{u}-{w} is not an edge of the graph")
    on_cycle = set(vs)
    consecutive = Counter(frozenset(p) for p in c.vertex_pairs())
    between = Counter()
    for _, u, w in g.edges():
        if u in on_cycle and w in on_cycle:
            between[frozenset((u, w))] += 1
    if between != consecutive:
        return False
    return g.without_vertices(on_cycle).is_connected()


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def graph_to_json(g: Graph, thick: Iterable[int] = ()) -> dict[str, Any]:
    thick = set(thick)
    vertices = []
    for v in g.vertices():
        item: dict[str, Any] = {"id": v}
        if g.label(v) is not None:
            item["label"] = g.label(v)
        vertices.append(item)
    edges = [
        {"id": e, "u": u, "v": v, "thick": e in thick} for e, u, v in g.edges()
    ]
    return {"vertices": vertices, "edges": edges}


def special_to_json(sg: SpecialGraph) -> dict[str, Any]:
    return graph_to_json(sg.graph, sg.thick)


def _expect_int(obj: Any, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise GraphFormatError(path, f"expected integer, got {obj!r}")
    return obj


def special_from_json(doc: Any, path: str = "") -> SpecialGraph:
    """Parse graph JSON; ``thick`` flags become the special graph's thick set."""
    prefix = f"{path}." if path else ""
    if not isinstance(doc, dict):
        raise GraphFormatError(path or "$", "expected an object")
    for key in ("vertices", "edges"):
        if not isinstance(doc.get(key), list):
            raise GraphFormatError(f"{prefix}{key}", "expected a list")
    g = Graph()
    for i, item in enumerate(doc["vertices"]):
        where = f"{prefix}vertices[{i}]"
        if not isinstance(item, dict):
            raise GraphFormatError(where, "expected an object")
        vid = _expect_int(item.get("id"), f"{where}.id")
        label = item.get("label")
        if label is not None and not isinstance(label, str):
            raise GraphFormatError(f"{where}.label", "expected a string")
        try:
            g.add_vertex(label, vid=vid)
        except GraphError as exc:
            raise GraphFormatError(f"{where}.id", str(exc)) from None
    thick = set()
    for i, item in enumerate(doc["edges"]):
        where = f"{prefix}edges[{i}]"
        if not isinstance(item, dict):
            raise GraphFormatError(where, "expected an object")
        eid = _expect_int(item.get("id"), f"{where}.id")
        u = _expect_int(item.get("u"), f"{where}.u")
        v = _expect_int(item.get("v"), f"{where}.v")
        flag = item.get("thick", False)
        if not isinstance(flag, bool):
            raise GraphFormatError(f"{where}.thick", "expected a boolean")
        try:
            g.add_edge(u, v, eid=eid)
        except GraphError as exc:
            raise GraphFormatError(where, str(exc)) from None
        if flag:
            thick.add(eid)
    return SpecialGraph(g, frozenset(thick))


def graph_from_json(doc: Any) -> Graph:
    return special_from_json(doc).graph
