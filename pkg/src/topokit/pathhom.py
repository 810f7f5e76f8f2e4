"""Path homology of loopless digraphs, over exact rationals.

An allowed p-path is a directed walk on p+1 vertices.  The boundary of a
walk deletes one vertex at a time with alternating signs; the chain space in
degree p is the subspace of allowed-path combinations whose boundary has no
component on non-allowed walks.  Homology of that restricted complex refines
the cyclomatic number: a digraph can have cycles in its underlying graph that
are filled in by directed 2-paths and therefore invisible to path homology.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .complexes import intern_labels
from .errors import ParseError
from .homology import BettiProfile
from .linalg import RationalMatrix


@dataclass(frozen=True)
class Digraph:
    """Loopless directed graph; arcs are ordered pairs of vertex ids."""

    labels: tuple[str, ...]
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {self.labels[u]!r}")
            if not (0 <= u < len(self.labels) and 0 <= v < len(self.labels)):
                raise ValueError("arc endpoint out of range")

    @property
    def n(self) -> int:
        return len(self.labels)

    def out_neighbors(self, v: int) -> list[int]:
        return sorted(w for (u, w) in self.arcs if u == v)

    def label_tuple(self, path):
        return tuple(self.labels[v] for v in path)


def digraph_from_arcs(arc_labels, extra_vertices=()) -> Digraph:
    """Digraph from (source, target) label pairs; duplicates collapse."""
    labels = intern_labels(
        [lab for arc in arc_labels for lab in arc] + list(extra_vertices)
    )
    index = {lab: i for i, lab in enumerate(labels)}
    arcs = frozenset((index[a], index[b]) for a, b in arc_labels)
    return Digraph(labels, arcs)


def allowed_paths(D: Digraph, p: int) -> list[tuple[int, ...]]:
    """All directed walks on p+1 vertices, in lexicographic order."""
    if p < 0:
        raise ValueError("path degree must be nonnegative")
    paths = [(v,) for v in range(D.n)]
    succ = {v: D.out_neighbors(v) for v in range(D.n)}
    for _ in range(p):
        paths = [t + (w,) for t in paths for w in succ[t[-1]]]
    return sorted(paths)


@dataclass(frozen=True)
class PathBasis:
    """Allowed paths of one degree plus a basis of the chain subspace.

    ``omega_basis`` columns are coordinates in the allowed-path basis; each
    column's full boundary is supported on allowed shorter walks only.
    """

    degree: int
    allowed: tuple[tuple[int, ...], ...]
    omega_basis: RationalMatrix


def _boundary_split(allowed_p, allowed_lower):
    """Boundary of each allowed p-path split into allowed and stray targets.

    Returns (allowed_part, stray_part) matrices: rows of the first are
    indexed by allowed (p-1)-paths, rows of the second by the non-allowed
    tuples that actually occur.
    """
    low_index = {t: i for i, t in enumerate(allowed_lower)}
    allowed_entries = []
    stray_rows: dict[tuple, int] = {}
    stray_entries = []
    for k, t in enumerate(allowed_p):
        for j in range(len(t)):
            face = t[:j] + t[j + 1 :]
            sign = (-1) ** j
            i = low_index.get(face)
            if i is not None:
                allowed_entries.append((i, k, sign))
            else:
                r = stray_rows.setdefault(face, len(stray_rows))
                stray_entries.append((r, k, sign))
    allowed_part = RationalMatrix.from_entries(
        len(allowed_lower), len(allowed_p), allowed_entries
    )
    stray_part = RationalMatrix.from_entries(
        len(stray_rows), len(allowed_p), stray_entries
    )
    return allowed_part, stray_part


def omega(D: Digraph, p: int) -> PathBasis:
    """Chain space of degree p: allowed combinations with allowed boundary."""
    paths = tuple(allowed_paths(D, p))
    if p == 0:
        basis = RationalMatrix(len(paths), len(paths))
        for i in range(len(paths)):
            basis.data[i][i] = Fraction(1)
        return PathBasis(0, paths, basis)
    lower = allowed_paths(D, p - 1)
    _, stray = _boundary_split(paths, lower)
    null = stray.nullspace()
    basis = RationalMatrix(len(paths), len(null))
    for j, vec in enumerate(null):
        for i, x in enumerate(vec):
            basis.data[i][j] = x
    return PathBasis(p, paths, basis)


def _restricted_ranks(D: Digraph, max_p: int):
    """dim of each chain space and the rank of each restricted boundary.

    Degrees 0..max_p+1 are computed so the top requested homology sees the
    boundary coming in from above.  Also verifies that consecutive restricted
    boundaries compose to zero.
    """
    from .errors import InternalCheckError

    all_allowed = [tuple(allowed_paths(D, p)) for p in range(max_p + 2)]
    omegas = [omega(D, p) for p in range(max_p + 2)]
    dims = [b.omega_basis.cols for b in omegas]
    images = []  # boundary of the chain-space basis, in allowed coordinates
    ranks = [0]  # rank of the degree-0 boundary is 0
    for p in range(1, max_p + 2):
        allowed_part, _ = _boundary_split(all_allowed[p], all_allowed[p - 1])
        img = allowed_part.mul(omegas[p].omega_basis)
        images.append(img)
        ranks.append(img.rank())
    for p in range(2, max_p + 2):
        allowed_part, _ = _boundary_split(all_allowed[p - 1], all_allowed[p - 2])
        if not allowed_part.mul(images[p - 1]).is_zero():
            raise InternalCheckError(
                f"path boundary composition nonzero at degree {p}"
            )
    return dims, ranks


def path_betti(D: Digraph, max_p: int = 2, reduced: bool = False) -> BettiProfile:
    """Path homology Betti numbers for degrees 0..max_p.

    ``reduced=True`` returns the reduced numbers (degree 0 drops by one) as
    the primary list; the ``reduced`` field always carries them.
    """
    if max_p < 0:
        raise ValueError("max_p must be nonnegative")
    dims, ranks = _restricted_ranks(D, max_p)
    bet = []
    z = []
    b = []
    for p in range(max_p + 1):
        zp = dims[p] - ranks[p]
        bp = ranks[p + 1]
        z.append(zp)
        b.append(bp)
        bet.append(zp - bp)
    bet = tuple(bet)
    red = tuple(v - 1 if p == 0 and D.n > 0 else v for p, v in enumerate(bet))
    euler = sum((-1) ** p * v for p, v in enumerate(bet))
    primary = red if reduced else bet
    return BettiProfile(primary, red, euler, tuple(z), tuple(b), tuple(ranks[1:]))


def omega_dims(D: Digraph, max_p: int = 2) -> list[int]:
    """dim of the path chain space in degrees 0..max_p."""
    return [omega(D, p).omega_basis.cols for p in range(max_p + 1)]


def cyclomatic(D: Digraph) -> int:
    """Arcs - vertices + weakly connected components (first Betti number of
    the underlying undirected 1-complex)."""
    parent = list(range(D.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in D.arcs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps = len({find(v) for v in range(D.n)})
    return len(D.arcs) - D.n + comps


# ---------------------------------------------------------------------------
# Input formats
# ---------------------------------------------------------------------------


def digraph_from_edge_list(text: str) -> Digraph:
    """One ``u v`` arc per line; a lone label is an isolated vertex."""
    arcs = []
    isolated = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            isolated.append(parts[0])
        elif len(parts) == 2:
            arcs.append((parts[0], parts[1]))
        else:
            raise ParseError(f"expected 'u v', got {len(parts)} fields", line=lineno)
    if not arcs and not isolated:
        raise ParseError("no arcs found in input")
    try:
        return digraph_from_arcs(arcs, isolated)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


_DOT_EDGE = re.compile(r"\s*->\s*")


def digraph_from_dot(text: str) -> Digraph:
    """Restricted directed-graph text format: node and edge statements only.

    Accepts ``digraph name { a -> b; c; }`` with chained edges; attributes,
    subgraphs, and undirected edges are rejected with the offending line.
    """
    body = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            m = re.match(r"(strict\s+)?digraph\b[^{]*\{", line)
            if not m:
                raise ParseError("expected a 'digraph ... {' header", line=lineno)
            header_seen = True
            line = line[m.end():].strip()
            if not line:
                continue
        if line.endswith("}"):
            line = line[:-1].strip()
            if not line:
                continue
        if "{" in line or "}" in line:
            raise ParseError("nested blocks are not supported", line=lineno)
        body.append((lineno, line))
    if not header_seen:
        raise ParseError("empty digraph description")
    arcs = []
    isolated = []
    for lineno, line in body:
        if "[" in line or "=" in line:
            raise ParseError("attributes are not supported", line=lineno)
        if "--" in line:
            raise ParseError("undirected edges are not supported", line=lineno)
        for stmt in filter(None, (s.strip() for s in line.split(";"))):
            names = [n.strip().strip('"') for n in _DOT_EDGE.split(stmt)]
            if any(not n or re.search(r"\s", n) for n in names):
                raise ParseError(f"bad statement: {stmt!r}", line=lineno)
            if len(names) == 1:
                isolated.append(names[0])
            else:
                arcs.extend(zip(names, names[1:]))
    if not arcs and not isolated:
        raise ParseError("digraph has no nodes")
    try:
        return digraph_from_arcs(arcs, isolated)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_digraph(path) -> Digraph:
    """Edge list or digraph-description text, sniffed by content."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    head = text.lstrip()
    if head.startswith("digraph") or head.startswith("strict"):
        return digraph_from_dot(text)
    return digraph_from_edge_list(text)
