"""Critical edges, critical-subgraph extraction, thick-edge elimination and assembly."""

from __future__ import annotations

import json
import random
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Literal

from .drawing import (
    CertError,
    DrawingCert,
    cert_from_json,
    cert_to_json,
    merge_certs,
    relabel_cert,
    validate,
)
from .family import CANONICAL_CROSSINGS, build_family, canonical_drawing
from .graph import (
    Graph,
    GraphError,
    SpecialGraph,
    complete_graph,
    disjoint_union_with_maps,
    graph_to_json,
)
from .solver import Exact, Infinite, SolveLimits, SolveOutcome, solve_exact

Style = Literal["parallel", "k2t"]
FAMILY_GADGET = CANONICAL_CROSSINGS + 1  # 172


class OracleInconclusive(RuntimeError):
    def __init__(self, message: str, edge: int | None = None) -> None:
        super().__init__(message)
        self.edge = edge


class NotAboveThreshold(ValueError):
    pass


class ThickEdgeError(ValueError):
    pass


class CrossingOracle:
    """Exact crossing numbers with a thread-safe cache keyed by graph structure.

    Budget exhaustion is never guessed past: callers ask ``at_least`` and get
    ``OracleInconclusive`` when the answer is not implied by the outcome.
    """

    def __init__(
        self,
        limits: SolveLimits = SolveLimits(),
        solve: Callable[[SpecialGraph, SolveLimits], SolveOutcome] = solve_exact,
    ) -> None:
        self.limits = limits
        self._solve = solve
        self._cache: dict[Any, SolveOutcome] = {}
        self._lock = threading.Lock()
        self.queries = 0

    def __call__(self, sg: SpecialGraph | Graph) -> SolveOutcome:
        if isinstance(sg, Graph):
            sg = SpecialGraph(sg)
        key = sg.key()
        with self._lock:
            self.queries += 1
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        outcome = self._solve(sg, self.limits)
        with self._lock:
            return self._cache.setdefault(key, outcome)

    def at_least(self, sg: SpecialGraph | Graph, k: int, edge: int | None = None) -> bool:
        """Whether cr(sg) >= k, failing closed on undecided budget outcomes."""
        outcome = self(sg)
        if isinstance(outcome, Infinite):
            return True
        if isinstance(outcome, Exact):
            return outcome.n >= k
        if outcome.n >= k:
            return True
        raise OracleInconclusive(
            f"crossing number only known to be >= {outcome.n}, threshold {k}"
            + (f" (deleting edge {edge})" if edge is not None else ""),
            edge,
        )


def _as_special(g: SpecialGraph | Graph) -> SpecialGraph:
    return g if isinstance(g, SpecialGraph) else SpecialGraph(g)


def is_critical_edge(
    sg: SpecialGraph | Graph, e: int, k: int, oracle: CrossingOracle
) -> bool:
    sg = _as_special(sg)
    if not sg.graph.has_edge(e):
        raise GraphError(f"unknown edge {e}")
    if e in sg.thick:
        raise ThickEdgeError(f"edge {e} is thick")
    if not oracle.at_least(sg, k):
        return False
    return not oracle.at_least(sg.without_edges([e]), k, edge=e)


def crit_set(sg: SpecialGraph | Graph, k: int, oracle: CrossingOracle) -> set[int]:
    sg = _as_special(sg)
    if not oracle.at_least(sg, k):
        return set()
    return {
        e
        for e in sg.thin_edges()
        if not oracle.at_least(sg.without_edges([e]), k, edge=e)
    }


def extract_critical(
    g: Graph, k: int, oracle: CrossingOracle, seed: int | None = None
) -> Graph:
    """A k-crossing-critical subgraph keeping every k-critical edge of ``g``.

    Edges are scanned in ascending id order, or in a shuffled order when
    ``seed`` is given; an edge is deleted whenever the crossing number stays
    at least ``k`` without it.  One pass suffices: an edge that is critical
    stays critical after deleting other edges.
    """
    if not oracle.at_least(g, k):
        raise NotAboveThreshold(f"crossing number of the input is below {k}")
    order = g.edge_ids()
    if seed is not None:
        random.Random(seed).shuffle(order)
    h = g
    for e in order:
        smaller = h.without_edges([e])
        if oracle.at_least(smaller, k, edge=e):
            h = smaller
    return h.without_vertices([v for v in h.vertices() if h.degree(v) == 0])


def is_crossing_critical(g: Graph, k: int, oracle: CrossingOracle) -> bool:
    return oracle.at_least(g, k) and crit_set(g, k, oracle) == set(g.edge_ids())


# ---------------------------------------------------------------------------
# Thick-edge elimination
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Elimination:
    """Result graph plus, per replaced thick edge, the gadget's new edge ids."""

    graph: Graph
    gadgets: dict[int, tuple[int, ...]] = field(default_factory=dict)


def eliminate_thick_detailed(sg: SpecialGraph, t: int, style: Style = "k2t") -> Elimination:
    if isinstance(t, bool) or not isinstance(t, int) or t < 1:
        raise ValueError(f"gadget size t must be a positive integer, got {t!r}")
    if style not in ("parallel", "k2t"):
        raise ValueError(f"unknown style {style!r}")
    g = sg.graph.without_edges(sg.thick)
    gadgets = {}
    for e in sorted(sg.thick):
        x, y = sg.graph.endpoints(e)
        new = []
        for i in range(t):
            if style == "parallel":
                new.append(g.add_edge(x, y))
            else:
                w = g.add_vertex(f"g{e}.{i}")
                new.append(g.add_edge(x, w))
                new.append(g.add_edge(w, y))
        gadgets[e] = tuple(new)
    return Elimination(g, gadgets)


def eliminate_thick(sg: SpecialGraph, t: int, style: Style = "k2t") -> Graph:
    """Replace each thick edge by ``t`` parallel edges or by a K_{2,t}."""
    return eliminate_thick_detailed(sg, t, style).graph


def lift_drawing(cert: DrawingCert, t: int, style: Style = "k2t") -> DrawingCert:
    """Carry a certificate over to the thick-free graph; crossings are unchanged."""
    report = validate(cert)
    if not report.valid:
        raise CertError("cannot lift an invalid certificate")
    lifted = eliminate_thick(cert.base, t, style)
    return DrawingCert(SpecialGraph(lifted), cert.crossings, cert.orders)


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------

LOWER_BOUND_DISCLAIMER = (
    "Certificates prove only upper bounds on crossing numbers. The lower bound "
    "cr = 171 of each family component and the criticality of the extracted "
    "subgraph H are not machine-checked; each family component is the "
    "thick-free graph before extraction, whose 171-critical subgraph is known "
    "to exist but is not computed (exact solving at 171 crossings is out of reach)."
)


def _k5_cert() -> DrawingCert:
    outcome = solve_exact(complete_graph(5))
    assert isinstance(outcome, Exact) and outcome.n == 1
    return outcome.witness


@dataclass(frozen=True)
class AssemblyBundle:
    k: int
    d: int
    copies: int
    graph: Graph
    certificates: tuple[DrawingCert, ...]
    component_kinds: tuple[str, ...]
    provenance: dict[str, Any]

    @property
    def k5_copies(self) -> int:
        return self.k - CANONICAL_CROSSINGS * self.copies

    def certified_total(self) -> int:
        return sum(c.crossing_count for c in self.certificates)

    def merged_cert(self) -> DrawingCert:
        return merge_certs(self.certificates, SpecialGraph(self.graph))

    def write(self, directory: str | Path) -> Path:
        out = Path(directory)
        (out / "certs").mkdir(parents=True, exist_ok=True)
        (out / "graph.json").write_text(json.dumps(graph_to_json(self.graph)))
        counters: dict[str, int] = {}
        for kind, cert in zip(self.component_kinds, self.certificates):
            idx = counters.get(kind, 0)
            counters[kind] = idx + 1
            (out / "certs" / f"{kind}_{idx:03d}.json").write_text(
                json.dumps(cert_to_json(cert))
            )
        (out / "provenance.json").write_text(json.dumps(self.provenance, indent=2, sort_keys=True))
        return out


def assemble(
    k: int,
    d: int,
    copies: int | Literal["auto"] = "auto",
    gadget: int = FAMILY_GADGET,
    style: Style = "k2t",
) -> AssemblyBundle:
    """``copies`` lifted family graphs plus ``k - 171 * copies`` disjoint K5s."""
    if k < CANONICAL_CROSSINGS:
        raise ValueError(f"k must be at least {CANONICAL_CROSSINGS}, got {k}")
    t = k // CANONICAL_CROSSINGS if copies == "auto" else copies
    if isinstance(t, bool) or not isinstance(t, int) or t < 1:
        raise ValueError(f"copies must be 'auto' or a positive integer, got {copies!r}")
    k5_count = k - CANONICAL_CROSSINGS * t
    if k5_count < 0:
        raise ValueError(f"{t} copies need k >= {CANONICAL_CROSSINGS * t}")

    family_cert = lift_drawing(canonical_drawing(build_family(d)), gadget, style)
    k5 = _k5_cert()
    parts = [family_cert] * t + [k5] * k5_count
    kinds = ("family",) * t + ("k5",) * k5_count
    graph, maps = disjoint_union_with_maps(*(c.base.graph for c in parts))
    certs = []
    for cert, (vmap, emap) in zip(parts, maps):
        comp = SpecialGraph(cert.base.graph.relabeled(vmap, emap))
        certs.append(relabel_cert(cert, comp, emap))
    provenance = {
        "k": k,
        "d": d,
        "family_copies": t,
        "k5_copies": k5_count,
        "gadget_style": style,
        "gadget_parameter": gadget,
        "certified_crossings": sum(c.crossing_count for c in certs),
        "lower_bound": LOWER_BOUND_DISCLAIMER,
    }
    return AssemblyBundle(k, d, t, graph, tuple(certs), kinds, provenance)


def read_bundle_certs(directory: str | Path) -> list[DrawingCert]:
    paths: Iterable[Path] = sorted((Path(directory) / "certs").glob("*.json"))
    return [cert_from_json(json.loads(p.read_text())) for p in paths]
