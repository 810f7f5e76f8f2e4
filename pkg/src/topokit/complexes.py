"""Abstract simplicial complexes.

A complex is stored as the full set of its simplices, each a strictly
ascending tuple of dense integer vertex ids.  Original vertex labels (arbitrary
strings) are interned to ids in a canonical order: numerically when every
label parses as an integer, lexicographically otherwise.  The fixed ascending
id order is what pins down boundary-matrix orientation signs downstream.

All values are immutable; every operation returns new objects.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import ParseError

Simplex = tuple  # strictly ascending tuple of vertex ids


def _label_key(label: str):
    try:
        return (0, int(label), "")
    except ValueError:
        return (1, 0, label)


def intern_labels(labels: Iterable[str]) -> tuple[str, ...]:
    """Canonical id order for a set of labels (numeric-aware sort)."""
    return tuple(sorted(set(labels), key=_label_key))


class SimplicialComplex:
    """Downward-closed family of nonempty vertex sets.

    ``simplices`` is a frozenset of ascending id tuples; ``labels`` maps
    vertex id -> original label (id = position).  The empty complex is legal.
    """

    __slots__ = ("simplices", "labels", "_facets", "_vertex_index")

    def __init__(self, simplices: Iterable[Simplex], labels: Sequence[str]):
        self.simplices = frozenset(tuple(s) for s in simplices)
        self.labels = tuple(labels)
        for s in self.simplices:
            if not s or list(s) != sorted(set(s)):
                raise ValueError(f"not an ascending vertex tuple: {s}")
        self._facets = None
        self._vertex_index = None

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.simplices == other.simplices
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.simplices)} simplices, {len(self.labels)} vertices)"

    @property
    def dim(self) -> int:
        """Largest simplex dimension; -1 for the empty complex."""
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def p_simplices(self, p: int) -> list[Simplex]:
        """Sorted list of the p-dimensional simplices."""
        return sorted(s for s in self.simplices if len(s) == p + 1)

    def vertex_id(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown vertex label: {label!r}") from None

    def label_tuple(self, simplex: Simplex) -> tuple[str, ...]:
        return tuple(self.labels[v] for v in simplex)

    def _buckets(self):
        # vertex id -> set of simplices containing it
        if self._vertex_index is None:
            idx: dict[int, set] = {}
            for s in self.simplices:
                for v in s:
                    idx.setdefault(v, set()).add(s)
            self._vertex_index = idx
        return self._vertex_index

    def facets(self) -> list[Simplex]:
        """Simplices with no proper coface, sorted.

        By downward closure it is enough to test single-vertex extensions.
        """
        if self._facets is None:
            vertex_ids = sorted(self._buckets())
            out = []
            for s in self.simplices:
                vs = set(s)
                if not any(
                    v not in vs and tuple(sorted(vs | {v})) in self.simplices
                    for v in vertex_ids
                ):
                    out.append(s)
            self._facets = sorted(out)
        return list(self._facets)

    def _require_subset(self, simplices: Iterable[Simplex]) -> set[Simplex]:
        out = set(tuple(s) for s in simplices)
        missing = out - self.simplices
        if missing:
            raise ValueError(f"not simplices of the complex: {sorted(missing)}")
        return out

    def closure(self, simplices: Iterable[Simplex]) -> frozenset[Simplex]:
        """Smallest closed set containing the given simplices (all their faces)."""
        given = self._require_subset(simplices)
        out = set()
        for s in given:
            for k in range(1, len(s) + 1):
                out.update(combinations(s, k))
        return frozenset(out)

    def star(self, simplices: Iterable[Simplex]) -> frozenset[Simplex]:
        """All simplices of the complex having some given simplex as a face."""
        given = self._require_subset(simplices)
        buckets = self._buckets()
        out: set[Simplex] = set()
        for g in given:
            cofaces = set.intersection(*(buckets[v] for v in g))
            out.update(cofaces)
        return frozenset(out)

    def subcomplex(self, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        """The given set of simplices as a complex; must be closed in this one."""
        chosen = self._require_subset(simplices)
        for s in chosen:
            for k in range(1, len(s)):
                for f in combinations(s, k):
                    if f not in chosen:
                        raise ValueError(
                            f"set is not closed: {f} is a missing face of {s}"
                        )
        return SimplicialComplex(chosen, self.labels)


def is_closed(K: SimplicialComplex, simplices: Iterable[Simplex]) -> bool:
    a = set(tuple(s) for s in simplices)
    return K.closure(a) == a if a <= K.simplices else False


def is_open(K: SimplicialComplex, simplices: Iterable[Simplex]) -> bool:
    a = set(tuple(s) for s in simplices)
    return K.star(a) == a if a <= K.simplices else False


def from_facets(
    facets: Iterable[Iterable[str]], max_dim: int | None = None
) -> SimplicialComplex:
    """Complex generated by the given facets (all nonempty subsets of each).

    Labels may be arbitrary strings.  Facets contained in other facets are
    absorbed.  ``max_dim`` caps the dimension of generated simplices, which
    bounds the power-set blowup for large generators.

    Raises ValueError on an empty facet.
    """
    facet_list = [list(f) for f in facets]
    for f in facet_list:
        if not f:
            raise ValueError("empty facet")
    if max_dim is not None and max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    labels = intern_labels(label for f in facet_list for label in f)
    index = {lab: i for i, lab in enumerate(labels)}
    simplices: set[Simplex] = set()
    for f in facet_list:
        ids = sorted(set(index[lab] for lab in f))
        top = len(ids) if max_dim is None else min(len(ids), max_dim + 1)
        for k in range(1, top + 1):
            simplices.update(combinations(ids, k))
    return SimplicialComplex(simplices, labels)


def clique_complex(
    vertices: Iterable[str],
    edges: Iterable[tuple[str, str]],
    max_dim: int | None = None,
) -> SimplicialComplex:
    """Clique complex of a simple undirected graph.

    A vertex set is a simplex exactly when it is a clique.  Cliques are grown
    by id-ordered extension, so isolated vertices are kept.
    """
    labels = intern_labels(vertices)
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    adj = [set() for _ in range(n)]
    for a, b in edges:
        u, v = index[a], index[b]
        if u == v:
            raise ValueError(f"self-loop at {a!r}")
        adj[u].add(v)
        adj[v].add(u)
    simplices: set[Simplex] = set((v,) for v in range(n))
    frontier = list(simplices)
    size = 1
    while frontier and (max_dim is None or size <= max_dim):
        nxt = []
        for s in frontier:
            common = set.intersection(*(adj[v] for v in s)) if s else set()
            for v in common:
                if v > s[-1]:
                    nxt.append(s + (v,))
        simplices.update(nxt)
        frontier = nxt
        size += 1
    return SimplicialComplex(simplices, labels)


def parse_facets(text: str) -> list[list[str]]:
    """Parse facet-file text: one facet per line, whitespace-separated labels,
    ``#`` starts a comment.  Raises ParseError if no facets are present."""
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        facets.append(line.split())
    if not facets:
        raise ParseError("no facets found in input")
    return facets


def read_facets(path) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return from_facets(parse_facets(fh.read()))
