"""Wireless network topology: link and interference complexes, activation
sheaves, and local-homology criticality.

The signal model is the open-disk one: node i covers the open disk of its
radius around its position, and a transmission is decodable wherever the disk
reaches.  Two nodes are mutually linked when each sits inside the other's
disk, i.e. their distance is below the smaller radius.  The link complex is
the clique complex of that graph; the interference complex has a simplex for
every set of nodes whose coverage disks share a common point (where all of
them would collide at a receiver).

An activation sheaf assigns to every simplex the set of nodes that share a
coface with it, plus an idle symbol (None).  Its global sections are exactly
the interference-free transmit schedules; the active region of a transmitting
node is the closed neighborhood it locks, and the star over that region is
the node's region of influence.  Local homology relative to the complement of
a region of influence flags pinch points of the network.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .complexes import Simplex, SimplicialComplex, clique_complex, intern_labels
from .errors import InternalCheckError, ParseError
from .linalg import FieldTag, matrix

_TOL = 1e-9


@dataclass(frozen=True)
class WirelessNode:
    id: str
    x: float
    y: float
    radius: float

    def __post_init__(self):
        if not (self.radius > 0):
            raise ValueError(f"node {self.id!r}: radius must be positive")
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"node {self.id!r}: position must be finite")


@dataclass(frozen=True)
class WirelessNetwork:
    nodes: tuple[WirelessNode, ...]

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("network needs at least one node")
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate node ids")

    def by_id(self, node_id: str) -> WirelessNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise ValueError(f"unknown node id: {node_id!r}")


def _dist(a: WirelessNode, b: WirelessNode) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def _link_edges(W: WirelessNetwork) -> list[tuple[str, str]]:
    out = []
    for a, b in combinations(W.nodes, 2):
        if _dist(a, b) < min(a.radius, b.radius):
            out.append((a.id, b.id))
    return out


def link_complex(W: WirelessNetwork) -> SimplicialComplex:
    """Clique complex of the mutual-decodability graph."""
    return clique_complex([n.id for n in W.nodes], _link_edges(W))


def _circle_intersections(a: WirelessNode, b: WirelessNode):
    d = _dist(a, b)
    if d == 0:
        return []
    t = (d * d + a.radius * a.radius - b.radius * b.radius) / (2 * d)
    h2 = a.radius * a.radius - t * t
    if h2 < -_TOL:
        return []
    h = math.sqrt(max(h2, 0.0))
    ux, uy = (b.x - a.x) / d, (b.y - a.y) / d
    cx, cy = a.x + t * ux, a.y + t * uy
    return [(cx - h * uy, cy + h * ux), (cx + h * uy, cy - h * ux)]


def _disks_meet(nodes: list[WirelessNode]) -> bool:
    """Whether the coverage disks share a common point.

    A nonempty intersection of disks either contains some disk's center or
    has a boundary vertex where two of the circles cross, so checking those
    candidate points (with a small containment tolerance) decides the test.
    """
    candidates = [(n.x, n.y) for n in nodes]
    for a, b in combinations(nodes, 2):
        candidates.extend(_circle_intersections(a, b))
    for x, y in candidates:
        if all(math.hypot(x - n.x, y - n.y) <= n.radius + _TOL for n in nodes):
            return True
    return False


def interference_complex(W: WirelessNetwork) -> SimplicialComplex:
    """Nerve of the coverage disks: simplices are mutually interfering sets.

    Disks are convex, so a family of four or more meets whenever every three
    of them do; only pairs and triples need the geometric test.
    """
    labels = intern_labels(n.id for n in W.nodes)
    by_label = {n.id: n for n in W.nodes}
    nodes = [by_label[lab] for lab in labels]
    n = len(nodes)
    simplices: set[Simplex] = set((v,) for v in range(n))
    edges = set()
    for i, j in combinations(range(n), 2):
        if _disks_meet([nodes[i], nodes[j]]):
            edges.add((i, j))
            simplices.add((i, j))
    triples = set()
    for s in combinations(range(n), 3):
        if all(p in edges for p in combinations(s, 2)) and _disks_meet(
            [nodes[v] for v in s]
        ):
            triples.add(s)
            simplices.add(s)
    frontier = sorted(triples)
    while frontier:
        nxt = []
        for s in frontier:
            for v in range(s[-1] + 1, n):
                cand = s + (v,)
                if all(t in triples for t in combinations(cand, 3) if v in t):
                    nxt.append(cand)
        simplices.update(nxt)
        frontier = nxt
    return SimplicialComplex(simplices, labels)


# ---------------------------------------------------------------------------
# Activation sheaf
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ActivationSheaf:
    """Stalks over a network complex: candidate transmitters per simplex.

    ``stalks[c]`` lists the vertex ids sharing a coface with c (always
    including c's own vertices); the idle symbol is represented by None and
    belongs to every stalk implicitly.  Restriction of a node along c <= d
    keeps it when it still lies in the stalk at d and otherwise collapses it
    to None.
    """

    base: SimplicialComplex
    stalks: dict[Simplex, tuple[int, ...]]

    def stalk(self, c: Simplex) -> tuple[int, ...]:
        return self.stalks[tuple(c)]

    def restrict(self, value, d: Simplex):
        if value is None:
            return None
        return value if value in self.stalks[tuple(d)] else None


def activation_sheaf(K: SimplicialComplex) -> ActivationSheaf:
    if len(K) == 0:
        raise ValueError("activation sheaf needs a nonempty complex")
    stalks = {}
    for c in K.simplices:
        cs = frozenset(c)
        members = set()
        for d in K.simplices:
            if cs <= frozenset(d):
                members.update(d)
        stalks[c] = tuple(sorted(members))
    return ActivationSheaf(K, stalks)


@dataclass(frozen=True)
class SheafSection:
    """A consistent assignment simplex -> transmitting node id (or None)."""

    assignment: dict[Simplex, int | None]
    transmitting: tuple[str, ...] = ()

    def value(self, c: Simplex):
        return self.assignment[tuple(c)]


def _immediate_cofaces(K: SimplicialComplex, c: Simplex) -> list[Simplex]:
    out = []
    n = len(K.labels)
    cs = set(c)
    for v in range(n):
        if v in cs:
            continue
        d = tuple(sorted(cs | {v}))
        if d in K.simplices:
            out.append(d)
    return out


def global_sections(S: ActivationSheaf) -> list[SheafSection]:
    """All sections supported on the whole base, by facet-first backtracking.

    A simplex is assigned only after all its cofaces, so each candidate value
    just has to restrict correctly to the immediate cofaces; consistency along
    longer chains follows because restrictions compose.  The all-idle
    assignment is always a section.
    """
    K = S.base
    order = sorted(K.simplices, key=lambda s: (-len(s), s))
    cofaces = {c: _immediate_cofaces(K, c) for c in order}
    assignment: dict[Simplex, int | None] = {}
    found: list[dict] = []

    def extend(i: int):
        if i == len(order):
            found.append(dict(assignment))
            return
        c = order[i]
        for val in list(S.stalks[c]) + [None]:
            if all(S.restrict(val, d) == assignment[d] for d in cofaces[c]):
                assignment[c] = val
                extend(i + 1)
                del assignment[c]

    extend(0)
    sections = []
    for asg in found:
        tx = tuple(
            sorted(K.labels[c[0]] for c in asg if len(c) == 1 and asg[c] == c[0])
        )
        sections.append(SheafSection(asg, tx))
    sections.sort(key=lambda s: (len(s.transmitting), s.transmitting))
    return sections


def active_region(
    S: ActivationSheaf, section: SheafSection, node_id: str
) -> frozenset[Simplex]:
    """Simplices locked by ``node_id`` in the given global section.

    Empty when the node is not transmitting there.
    """
    v = S.base.vertex_id(node_id)
    return frozenset(c for c, val in section.assignment.items() if val == v)


def region_of_influence(K: SimplicialComplex, c: Simplex) -> frozenset[Simplex]:
    """Star over the closed neighborhood of a simplex.

    For a transmitting node this is the star over its active region (the
    closure of its star); for a facet it reduces to the star over the facet's
    closure.  The complement is always a closed subcomplex, since no simplex
    outside a star can have a face inside the generating set.
    """
    c = tuple(c)
    if c not in K:
        raise ValueError(f"not a simplex of the complex: {c}")
    return K.star(K.closure(K.star([c])))


# ---------------------------------------------------------------------------
# Criticality via local homology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalityReport:
    rows: tuple          # (simplex labels, {k: LH_k}, {k: above-average})
    means: dict[int, float]


def criticality_report(
    W: WirelessNetwork, ks: Iterable[int] = (1,), kind: str = "link"
) -> CriticalityReport:
    """Local homology dimensions over all vertices and edges of the network
    complex, with per-degree means and above-average flags."""
    from .homology import local_homology

    ks = list(ks)
    K = link_complex(W) if kind == "link" else interference_complex(W)
    targets = K.p_simplices(0) + K.p_simplices(1)
    raw = []
    for c in targets:
        raw.append((c, {k: local_homology(K, c, k) for k in ks}))
    means = {
        k: (sum(lh[k] for _, lh in raw) / len(raw)) if raw else 0.0 for k in ks
    }
    rows = tuple(
        (K.label_tuple(c), lh, {k: lh[k] > means[k] for k in ks}) for c, lh in raw
    )
    return CriticalityReport(rows, means)


# ---------------------------------------------------------------------------
# Vector activation sheaf cohomology
# ---------------------------------------------------------------------------


def vector_sheaf_cohomology(S: ActivationSheaf) -> list[int]:
    """Cohomology dimensions of the linearized activation sheaf.

    Each stalk is replaced by the rational vector space on its nodes and each
    restriction by the basis projection; the coboundary uses the simplicial
    incidence signs.  On a link complex the only surviving cohomology is in
    degree 0, with dimension the number of nodes.
    """
    K = S.base
    top = K.dim
    bases = []
    for p in range(top + 1):
        bases.append(
            [(c, v) for c in K.p_simplices(p) for v in S.stalks[c]]
        )
    deltas = []
    for p in range(top):
        index = {bv: i for i, bv in enumerate(bases[p])}
        entries = []
        for row, (d, v) in enumerate(bases[p + 1]):
            for j in range(len(d)):
                face = d[:j] + d[j + 1 :]
                col = index.get((face, v))
                if col is not None:
                    entries.append((row, col, (-1) ** j))
        deltas.append(
            matrix(FieldTag.RATIONAL, len(bases[p + 1]), len(bases[p]), entries)
        )
    for p in range(len(deltas) - 1):
        if not deltas[p + 1].mul(deltas[p]).is_zero():
            raise InternalCheckError(
                f"coboundary composition nonzero between degrees {p} and {p + 2}"
            )
    dims = []
    for p in range(top + 1):
        d = len(bases[p])
        r_out = deltas[p].rank() if p < len(deltas) else 0
        r_in = deltas[p - 1].rank() if p >= 1 else 0
        dims.append(d - r_out - r_in)
    return dims


# ---------------------------------------------------------------------------
# Synthetic traffic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrafficResult:
    forwarded: dict[str, int]
    delivered: int = 0
    dropped: int = 0


def traffic_sim(W: WirelessNetwork, packets: int, seed: int) -> TrafficResult:
    """Route random source/destination packets on shortest link-graph paths.

    Ties between equal-length next hops break toward the smallest node id, so
    a (seed, packets) pair always produces identical counts.  Packets between
    disconnected nodes are dropped and counted.
    """
    labels = list(intern_labels(n.id for n in W.nodes))
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    adj = [[] for _ in range(n)]
    for a, b in _link_edges(W):
        u, v = index[a], index[b]
        adj[u].append(v)
        adj[v].append(u)
    adj = [sorted(neis) for neis in adj]

    inf = float("inf")
    dist_to = []
    for t in range(n):
        dist = [inf] * n
        dist[t] = 0
        queue = [t]
        while queue:
            nxt = []
            for u in queue:
                for v in adj[u]:
                    if dist[v] is inf:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            queue = nxt
        dist_to.append(dist)

    rng = random.Random(seed)
    forwarded = [0] * n
    delivered = dropped = 0
    for _ in range(packets):
        src = rng.randrange(n)
        dst = rng.randrange(n - 1)
        if dst >= src:
            dst += 1
        if dist_to[dst][src] is inf:
            dropped += 1
            continue
        cur = src
        while cur != dst:
            cur = next(v for v in adj[cur] if dist_to[dst][v] == dist_to[dst][cur] - 1)
            if cur != dst:
                forwarded[cur] += 1
        delivered += 1
    return TrafficResult({labels[i]: forwarded[i] for i in range(n)}, delivered, dropped)


def random_geometric_network(
    n: int,
    radius: float,
    width: float = 100.0,
    height: float = 100.0,
    seed: int = 0,
) -> WirelessNetwork:
    """Uniformly scattered nodes with a common coverage radius (seeded)."""
    rng = random.Random(seed)
    pad = len(str(n - 1))
    nodes = tuple(
        WirelessNode(
            f"n{i:0{pad}d}",
            rng.uniform(0, width),
            rng.uniform(0, height),
            radius,
        )
        for i in range(n)
    )
    return WirelessNetwork(nodes)


# ---------------------------------------------------------------------------
# Network JSON
# ---------------------------------------------------------------------------


def network_from_json(text: str) -> WirelessNetwork:
    try:
        doc = json.loads(text)
        nodes = tuple(
            WirelessNode(str(nd["id"]), float(nd["x"]), float(nd["y"]), float(nd["radius"]))
            for nd in doc["nodes"]
        )
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad network JSON: {exc}") from None
    return WirelessNetwork(nodes)


def network_to_json(W: WirelessNetwork) -> str:
    return json.dumps(
        {
            "nodes": [
                {"id": n.id, "x": n.x, "y": n.y, "radius": n.radius}
                for n in W.nodes
            ]
        },
        indent=2,
        sort_keys=True,
    )


def read_network(path) -> WirelessNetwork:
    with open(path, encoding="utf-8") as fh:
        return network_from_json(fh.read())
