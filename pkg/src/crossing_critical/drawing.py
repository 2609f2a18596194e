"""Drawing certificates.

A certificate lists which pairs of edges cross and, for every crossed edge,
the order in which its crossings are met walking from the stored tail to the
stored head.  Turning each crossing into a degree-4 vertex gives the
planarization; the certificate is accepted when that graph is planar, which
witnesses a drawing with exactly that many crossings.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .graph import (
    Graph,
    GraphFormatError,
    SpecialGraph,
    is_planar,
    special_from_json,
    special_to_json,
)


class CertError(ValueError):
    """A certificate is too malformed to planarize."""


class CertFormatError(GraphFormatError):
    """Certificate JSON violates the schema."""


@dataclass(frozen=True)
class DrawingCert:
    base: SpecialGraph
    crossings: Mapping[int, tuple[int, int]] = field(default_factory=dict)
    orders: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "crossings", {c: tuple(p) for c, p in self.crossings.items()}
        )
        object.__setattr__(
            self, "orders", {e: tuple(seq) for e, seq in self.orders.items() if seq}
        )

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def crossing_pairs(self) -> set[frozenset[int]]:
        return {frozenset(p) for p in self.crossings.values()}

    @classmethod
    def uncrossed(cls, base: SpecialGraph) -> DrawingCert:
        return cls(base, {}, {})

    def renamed(self, cmap: Mapping[int, int]) -> DrawingCert:
        """Same drawing with crossing ids sent through ``cmap``."""
        return DrawingCert(
            self.base,
            {cmap[c]: p for c, p in self.crossings.items()},
            {e: tuple(cmap[c] for c in seq) for e, seq in self.orders.items()},
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    crossing_count: int
    violations: tuple[Violation, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "valid": self.valid,
            "crossing_count": self.crossing_count,
            "violations": [{"kind": v.kind, "detail": v.detail} for v in self.violations],
        }


@dataclass(frozen=True)
class Planarization:
    """Planarized graph; ``dummies`` maps crossing id to its vertex,
    ``segments`` maps each base edge to its chain of planarization edges."""

    graph: Graph
    dummies: Mapping[int, int]
    segments: Mapping[int, tuple[int, ...]]

    def is_dummy(self, v: int) -> bool:
        return v in self.dummies.values()


def structural_violations(cert: DrawingCert, require_good: bool = True) -> list[Violation]:
    """Check everything except planarity."""
    g = cert.base.graph
    out: list[Violation] = []
    seen_pairs: dict[frozenset[int], int] = {}
    for cid in sorted(cert.crossings):
        e1, e2 = cert.crossings[cid]
        bad = [e for e in (e1, e2) if not g.has_edge(e)]
        if bad:
            out.append(Violation("unknown-edge", f"crossing {cid} names edges {bad}"))
            continue
        for e in (e1, e2):
            if e in cert.base.thick:
                out.append(Violation("thick-edge-crossed", f"crossing {cid} on thick edge {e}"))
        if e1 == e2:
            out.append(Violation("self-crossing", f"crossing {cid} on edge {e1} twice"))
            continue
        if require_good:
            if g.adjacent_edges(e1, e2):
                out.append(
                    Violation("adjacent-edges-crossed", f"crossing {cid}: {e1} and {e2} share an endpoint")
                )
            pair = frozenset((e1, e2))
            if pair in seen_pairs:
                out.append(
                    Violation(
                        "repeated-pair",
                        f"crossings {seen_pairs[pair]} and {cid} both cross {e1} with {e2}",
                    )
                )
            else:
                seen_pairs[pair] = cid
    occurrences: Counter[tuple[int, int]] = Counter()
    for eid in sorted(cert.orders):
        if not g.has_edge(eid):
            out.append(Violation("unknown-edge", f"order given for unknown edge {eid}"))
            continue
        for cid in cert.orders[eid]:
            if cid not in cert.crossings:
                out.append(Violation("dangling-crossing", f"edge {eid} lists unknown crossing {cid}"))
            else:
                occurrences[(eid, cid)] += 1
    for cid in sorted(cert.crossings):
        e1, e2 = cert.crossings[cid]
        if e1 == e2:
            continue
        for e in (e1, e2):
            k = occurrences.pop((e, cid), 0)
            if k != 1:
                out.append(
                    Violation("order-mismatch", f"crossing {cid} appears {k} times along edge {e}")
                )
    for (eid, cid), k in sorted(occurrences.items()):
        out.append(
            Violation("order-mismatch", f"edge {eid} lists crossing {cid} which does not name it")
        )
    return out


def planarize(cert: DrawingCert) -> Planarization:
    """Subdivide crossed edges and merge each crossing into one degree-4 vertex."""
    g = cert.base.graph
    for cid, (e1, e2) in cert.crossings.items():
        if e1 == e2 or not (g.has_edge(e1) and g.has_edge(e2)):
            raise CertError(f"crossing {cid} does not name two distinct edges of the graph")
        for e in (e1, e2):
            if cert.orders.get(e, ()).count(cid) != 1:
                raise CertError(f"crossing {cid} must appear exactly once along edge {e}")
    for e, seq in cert.orders.items():
        for cid in seq:
            if cid not in cert.crossings or e not in cert.crossings[cid]:
                raise CertError(f"edge {e} lists crossing {cid} which does not name it")

    p = g.copy()
    dummies = {}
    for cid in sorted(cert.crossings):
        dummies[cid] = p.add_vertex(f"x{cid}")
    segments: dict[int, tuple[int, ...]] = {}
    crossed = sorted(e for e, seq in cert.orders.items() if seq)
    p = p.without_edges(crossed)
    next_edge = g.edge_ids()[-1] + 1 if g.m else 0
    for eid in g.edge_ids():
        if eid not in cert.orders:
            segments[eid] = (eid,)
    for eid in crossed:
        u, v = g.endpoints(eid)
        chain = [u, *(dummies[c] for c in cert.orders[eid]), v]
        ids = []
        for a, b in zip(chain, chain[1:]):
            ids.append(p.add_edge(a, b, eid=next_edge))
            next_edge += 1
        segments[eid] = tuple(ids)
    return Planarization(p, dummies, segments)


def validate(cert: DrawingCert, require_good: bool = True) -> ValidationReport:
    """Check a certificate; never raises.

    ``require_good=False`` admits repeated pairs and adjacent-edge crossings
    (used only by relaxed solver experiments).
    """
    violations = structural_violations(cert, require_good)
    if not violations:
        planar, _ = is_planar(planarize(cert).graph)
        if not planar:
            violations.append(Violation("planarization-nonplanar", "planarized graph is not planar"))
    return ValidationReport(not violations, cert.crossing_count, tuple(violations))


def merge_certs(certs: Iterable[DrawingCert], base: SpecialGraph) -> DrawingCert:
    """Combine certificates of vertex-disjoint parts of ``base`` into one."""
    crossings: dict[int, tuple[int, int]] = {}
    orders: dict[int, tuple[int, ...]] = {}
    for cert in certs:
        cmap = {c: len(crossings) + i for i, c in enumerate(sorted(cert.crossings))}
        for c, pair in cert.crossings.items():
            crossings[cmap[c]] = pair
        for e, seq in cert.orders.items():
            orders[e] = tuple(cmap[c] for c in seq)
    return DrawingCert(base, crossings, orders)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def cert_to_json(cert: DrawingCert) -> dict[str, Any]:
    return {
        "graph": special_to_json(cert.base),
        "crossings": [
            {"id": c, "e1": e1, "e2": e2} for c, (e1, e2) in sorted(cert.crossings.items())
        ],
        "orders": {str(e): list(seq) for e, seq in sorted(cert.orders.items())},
    }


def cert_from_json(doc: Any) -> DrawingCert:
    if not isinstance(doc, dict):
        raise CertFormatError("$", "expected an object")
    if "graph" not in doc:
        raise CertFormatError("graph", "missing")
    try:
        base = special_from_json(doc["graph"], "graph")
    except GraphFormatError as exc:
        raise CertFormatError(exc.path, str(exc).split(": ", 1)[-1]) from None
    g = base.graph

    items = doc.get("crossings", [])
    if not isinstance(items, list):
        raise CertFormatError("crossings", "expected a list")
    crossings: dict[int, tuple[int, int]] = {}
    for i, item in enumerate(items):
        where = f"crossings[{i}]"
        if not isinstance(item, dict):
            raise CertFormatError(where, "expected an object")
        vals = {}
        for key in ("id", "e1", "e2"):
            val = item.get(key)
            if isinstance(val, bool) or not isinstance(val, int):
                raise CertFormatError(f"{where}.{key}", f"expected integer, got {val!r}")
            vals[key] = val
        for key in ("e1", "e2"):
            if not g.has_edge(vals[key]):
                raise CertFormatError(f"{where}.{key}", f"unknown edge id {vals[key]}")
        if vals["id"] in crossings:
            raise CertFormatError(f"{where}.id", f"duplicate crossing id {vals['id']}")
        crossings[vals["id"]] = (vals["e1"], vals["e2"])

    raw_orders = doc.get("orders", {})
    if not isinstance(raw_orders, dict):
        raise CertFormatError("orders", "expected an object")
    orders: dict[int, tuple[int, ...]] = {}
    for key, seq in raw_orders.items():
        where = f"orders[{key!r}]"
        try:
            eid = int(key)
        except ValueError:
            raise CertFormatError(where, "key is not an edge id") from None
        if not g.has_edge(eid):
            raise CertFormatError(where, f"unknown edge id {eid}")
        if not isinstance(seq, list):
            raise CertFormatError(where, "expected a list")
        for j, cid in enumerate(seq):
            if isinstance(cid, bool) or not isinstance(cid, int):
                raise CertFormatError(f"{where}[{j}]", f"expected integer, got {cid!r}")
            if cid not in crossings:
                raise CertFormatError(f"{where}[{j}]", f"unknown crossing id {cid}")
        orders[eid] = tuple(seq)
    return DrawingCert(base, crossings, orders)


def relabel_cert(cert: DrawingCert, base: SpecialGraph, emap: Mapping[int, int]) -> DrawingCert:
    """Move a certificate onto an isomorphic copy whose edge ids are ``emap`` images."""
    return DrawingCert(
        base,
        {c: (emap[e1], emap[e2]) for c, (e1, e2) in cert.crossings.items()},
        {emap[e]: seq for e, seq in cert.orders.items()},
    )
