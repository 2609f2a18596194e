"""Exact crossing numbers of small special graphs.

Iterative deepening over good drawings: at level ``k`` every set of ``k``
unordered pairs of independent thin edges is tried, together with every
order of the crossings along edges that carry more than one, and the first
set whose planarization is planar is returned as the witness.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Any, Iterator, Union

import networkx as nx

from .drawing import CertError, DrawingCert, cert_to_json, validate
from .graph import Graph, SpecialGraph

NODES_PER_SECOND = 2000


@dataclass(frozen=True)
class Exact:
    n: int
    witness: DrawingCert = field(repr=False, compare=False)

    def to_json(self) -> dict[str, Any]:
        return {"outcome": "exact", "n": self.n, "witness": cert_to_json(self.witness)}


@dataclass(frozen=True)
class AtLeast:
    n: int
    reason: str = "budget-exhausted"

    def to_json(self) -> dict[str, Any]:
        return {"outcome": "atleast", "n": self.n, "reason": self.reason}


@dataclass(frozen=True)
class Infinite:
    def to_json(self) -> dict[str, Any]:
        return {"outcome": "infinite", "n": None}


SolveOutcome = Union[Exact, AtLeast, Infinite]


@dataclass(frozen=True)
class SolveLimits:
    """``budget`` is in seconds and is turned into a node cap, so runs are reproducible."""

    max_k: int | None = None
    budget: float | None = None
    nodes: int | None = None

    def __post_init__(self) -> None:
        if self.max_k is not None and self.max_k < 0:
            raise ValueError("max_k must be >= 0")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be >= 0")
        if self.nodes is not None and self.nodes < 0:
            raise ValueError("nodes must be >= 0")

    def node_cap(self) -> int | None:
        caps = []
        if self.nodes is not None:
            caps.append(self.nodes)
        if self.budget is not None:
            caps.append(int(self.budget * NODES_PER_SECOND))
        return min(caps) if caps else None


def _simple_pairs(g: Graph) -> set[frozenset[int]]:
    return {frozenset(g.endpoints(e)) for e in g.edge_ids()}


def _two_coloring(g: Graph) -> dict[int, int] | None:
    color: dict[int, int] = {}
    for start in g.vertices():
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in color:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def euler_lower_bound(g: Graph, bipartition: dict[int, int] | None = None) -> int:
    """max(0, m - 3n + 6), and m - 2n + 4 for bipartite graphs.

    Parallel edges are collapsed first.  Bipartiteness is detected when no
    bipartition is supplied.
    """
    n = g.n
    m = len(_simple_pairs(g))
    if n < 3:
        return 0
    bound = max(0, m - 3 * n + 6)
    coloring = bipartition if bipartition is not None else _two_coloring(g)
    if coloring is not None:
        if any(coloring[u] == coloring[v] for _, u, v in g.edges()):
            raise ValueError("supplied bipartition is not proper")
        bound = max(bound, m - 2 * n + 4)
    return bound


def componentwise_lower_bound(g: Graph) -> int:
    """Sum of euler_lower_bound over connected components."""
    return sum(
        euler_lower_bound(g.without_vertices(set(g.vertices()) - comp))
        for comp in g.components()
    )


def _iter_pairs(sg: SpecialGraph, relaxed: bool) -> Iterator[tuple[int, int]]:
    g = sg.graph
    thin = sg.thin_edges()
    for e, f in combinations(thin, 2):
        if relaxed or not g.adjacent_edges(e, f):
            yield e, f


def candidate_pairs(sg: SpecialGraph, relaxed: bool = False) -> list[tuple[int, int]]:
    """Unordered pairs of thin edges that may cross, sorted by edge ids.

    Good drawings only cross independent edges; ``relaxed`` also admits
    adjacent ones.
    """
    return list(_iter_pairs(sg, relaxed))


def count_candidate_pairs(sg: SpecialGraph, relaxed: bool = False) -> int:
    """``len(candidate_pairs(sg, relaxed))`` without listing the pairs."""
    g = sg.graph
    thin = sg.thin_edges()
    total = len(thin) * (len(thin) - 1) // 2
    if relaxed:
        return total
    at_vertex = Counter(v for e in thin for v in g.endpoints(e))
    between = Counter(frozenset(g.endpoints(e)) for e in thin)
    # pairs sharing both endpoints are subtracted at each end, so add them back once
    return (
        total
        - sum(d * (d - 1) // 2 for d in at_vertex.values())
        + sum(c * (c - 1) // 2 for c in between.values())
    )


class _LazySeq:
    """A list filled from an iterator only as far as it is indexed."""

    def __init__(self, items: Iterator[tuple[int, int]]) -> None:
        self._it = items
        self._buf: list[tuple[int, int]] = []

    def has(self, i: int) -> bool:
        while len(self._buf) <= i:
            nxt = next(self._it, None)
            if nxt is None:
                return False
            self._buf.append(nxt)
        return True

    def __getitem__(self, i: int) -> tuple[int, int]:
        return self._buf[i]


def _lazy_combinations(
    seq: _LazySeq, k: int, start: int = 0
) -> Iterator[tuple[tuple[int, int], ...]]:
    """``itertools.combinations`` order, materializing ``seq`` on demand."""
    if k == 0:
        yield ()
        return
    i = start
    while seq.has(i + k - 1):
        head = seq[i]
        for rest in _lazy_combinations(seq, k - 1, i + 1):
            yield (head, *rest)
        i += 1


def _level_sets(
    sg: SpecialGraph, k: int, relaxed: bool
) -> Iterator[tuple[tuple[int, int], ...]]:
    if not relaxed:
        yield from _lazy_combinations(_LazySeq(_iter_pairs(sg, False)), k)
        return
    # each pair may be used at most twice
    for combo in combinations_with_replacement(candidate_pairs(sg, True), k):
        if max(Counter(combo).values(), default=0) <= 2:
            yield combo


class _Planarizer:
    """Builds planarizations straight into networkx for speed."""

    def __init__(self, sg: SpecialGraph) -> None:
        self.g = sg.graph
        self.dummy0 = (max(self.g.vertices()) + 1) if self.g.n else 0

    def is_planar(self, orders: dict[int, tuple[int, ...]]) -> bool:
        h = nx.Graph()
        h.add_nodes_from(self.g.vertices())
        for eid, u, v in self.g.edges():
            seq = orders.get(eid)
            if not seq:
                h.add_edge(u, v)
                continue
            chain = [u, *(self.dummy0 + c for c in seq), v]
            h.add_edges_from(zip(chain, chain[1:]))
        return nx.check_planarity(h)[0]


def _orderings(
    crossing_set: tuple[tuple[int, int], ...],
) -> Iterator[dict[int, tuple[int, ...]]]:
    on_edge: dict[int, list[int]] = {}
    for cid, (e, f) in enumerate(crossing_set):
        on_edge.setdefault(e, []).append(cid)
        on_edge.setdefault(f, []).append(cid)
    edges = sorted(on_edge)
    choices = [
        list(permutations(on_edge[e])) if len(on_edge[e]) > 1 else [tuple(on_edge[e])]
        for e in edges
    ]
    for combo in product(*choices):
        yield dict(zip(edges, combo))


def solve_exact(
    sg: SpecialGraph | Graph,
    limits: SolveLimits = SolveLimits(),
    upper_bound: DrawingCert | None = None,
    relaxed: bool = False,
) -> SolveOutcome:
    """Crossing number of ``sg`` by iterative deepening.

    ``upper_bound`` is a validated certificate for the same special graph; the
    search stops as soon as the level reaches its crossing count.
    """
    if isinstance(sg, Graph):
        sg = SpecialGraph(sg)
    ub_count = None
    if upper_bound is not None:
        ub_count = upper_bound_from_cert(upper_bound)
        if upper_bound.base.key() != sg.key():
            raise CertError("upper-bound certificate is for a different special graph")

    ceiling = count_candidate_pairs(sg, relaxed) * (2 if relaxed else 1)
    cap = limits.node_cap()
    planarizer = _Planarizer(sg)
    nodes = 0
    k = componentwise_lower_bound(sg.graph)
    while True:
        if ub_count is not None and k >= ub_count:
            return Exact(ub_count, upper_bound)
        if k > ceiling:
            return Infinite()
        if limits.max_k is not None and k > limits.max_k:
            return AtLeast(k, "max-k")
        for crossing_set in _level_sets(sg, k, relaxed):
            for orders in _orderings(crossing_set):
                if cap is not None and nodes >= cap:
                    return AtLeast(k)
                nodes += 1
                if planarizer.is_planar(orders):
                    witness = DrawingCert(sg, dict(enumerate(crossing_set)), orders)
                    return Exact(k, witness)
        k += 1


def upper_bound_from_cert(cert: DrawingCert) -> int:
    report = validate(cert)
    if not report.valid:
        raise CertError(
            "invalid certificate: " + "; ".join(str(v) for v in report.violations)
        )
    return report.crossing_count


def outcome_value(outcome: SolveOutcome) -> float:
    """Numeric crossing number for exact and infinite outcomes."""
    if isinstance(outcome, Exact):
        return outcome.n
    if isinstance(outcome, Infinite):
        return math.inf
    raise ValueError(f"outcome {outcome} is not decisive")
