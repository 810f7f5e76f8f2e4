"""Simplicial chain complexes and exact homology.

Basis elements in degree p are the p-simplices in lexicographic order of
their ascending vertex tuples.  The boundary of a basis simplex is the
alternating sum of its vertex-deletion faces, sign (-1)^j for deleting
position j; over GF(2) the signs vanish and an entry just records the
face/coface incidence.  Every constructed complex asserts that consecutive
boundaries compose to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .complexes import Simplex, SimplicialComplex
from .errors import InternalCheckError
from .linalg import FieldTag, matrix


@dataclass(frozen=True)
class ChainComplex:
    """Boundary matrices d_1..d_P with dim C_0..C_P and per-degree bases."""

    field: FieldTag
    dims: tuple[int, ...]
    boundaries: tuple  # boundaries[p-1] maps degree p to degree p-1
    basis: tuple[tuple[Simplex, ...], ...]

    def __post_init__(self):
        for p in range(1, len(self.boundaries)):
            prod = self.boundaries[p - 1].mul(self.boundaries[p])
            if not prod.is_zero():
                raise InternalCheckError(
                    f"boundary composition nonzero between degrees {p + 1} and {p - 1}"
                )

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def boundary_ranks(self) -> list[int]:
        """[rank d_1, ..., rank d_P]."""
        return [b.rank() for b in self.boundaries]


@dataclass(frozen=True)
class BettiProfile:
    """Betti numbers with the cycle/boundary dimensions behind them.

    ``euler`` is the alternating sum of chain dimensions, which equals the
    alternating sum of Betti numbers whenever the complex was not truncated.
    ``reduced`` subtracts 1 in degree 0 for nonempty complexes and is all
    zeros for the empty complex.
    """

    betti: tuple[int, ...]
    reduced: tuple[int, ...]
    euler: int
    z_dims: tuple[int, ...]
    b_dims: tuple[int, ...]
    ranks: tuple[int, ...]


def betti(C: ChainComplex) -> BettiProfile:
    """Betti numbers of a chain complex by exact rank-nullity."""
    dims = C.dims
    if not dims or all(d == 0 for d in dims):
        return BettiProfile((), (), 0, (), (), ())
    ranks = C.boundary_ranks()

    def rank_at(p):  # rank d_p; d_0 = 0 and anything beyond the top is 0
        return ranks[p - 1] if 1 <= p <= len(ranks) else 0

    top = C.top_degree
    z = tuple(dims[p] - rank_at(p) for p in range(top + 1))
    b = tuple(rank_at(p + 1) for p in range(top + 1))
    bet = tuple(zp - bp for zp, bp in zip(z, b))
    reduced = tuple(v - 1 if p == 0 else v for p, v in enumerate(bet))
    euler = sum((-1) ** p * d for p, d in enumerate(dims))
    return BettiProfile(bet, reduced, euler, z, b, tuple(ranks))


def _boundary_entries(basis_low: Sequence[Simplex], basis_high: Sequence[Simplex]):
    row_index = {s: i for i, s in enumerate(basis_low)}
    for k, s in enumerate(basis_high):
        for j in range(len(s)):
            face = s[:j] + s[j + 1 :]
            i = row_index.get(face)
            if i is not None:
                yield i, k, (-1) ** j


def simplicial_chain_complex(
    K: SimplicialComplex, field: FieldTag = FieldTag.GF2, max_dim: int | None = None
) -> ChainComplex:
    """Chain complex of a simplicial complex up to degree ``max_dim``.

    Truncation note: Betti numbers of a truncated complex are only reliable
    strictly below the cut degree.
    """
    if max_dim is None:
        max_dim = K.dim
    if max_dim < 0 and K.dim >= 0:
        raise ValueError("max_dim must be nonnegative")
    top = min(max_dim, K.dim)
    if top < 0:
        return ChainComplex(field, (), (), ())
    bases = [tuple(K.p_simplices(p)) for p in range(top + 1)]
    dims = tuple(len(b) for b in bases)
    boundaries = tuple(
        matrix(field, dims[p - 1], dims[p], _boundary_entries(bases[p - 1], bases[p]))
        for p in range(1, top + 1)
    )
    return ChainComplex(field, dims, boundaries, tuple(bases))


def relative_chain_complex(
    X: SimplicialComplex,
    Y,
    field: FieldTag = FieldTag.GF2,
    max_dim: int | None = None,
    validate: bool = True,
) -> ChainComplex:
    """Chain complex of the pair (X, Y) for a closed subcomplex Y of X.

    Basis in degree k: the k-simplices of X not in Y.  Boundary terms whose
    face lies in Y are dropped.  ``Y`` may be a SimplicialComplex (matched to
    X through vertex labels) or a plain collection of X's simplex tuples.
    An empty Y gives the absolute chain complex.
    """
    if isinstance(Y, SimplicialComplex):
        translate = {lab: i for i, lab in enumerate(X.labels)}
        try:
            ysimp = set(
                tuple(sorted(translate[Y.labels[v]] for v in s)) for s in Y.simplices
            )
        except KeyError as exc:
            raise ValueError(f"subcomplex vertex not in X: {exc.args[0]!r}") from None
    else:
        ysimp = set(tuple(s) for s in Y)
    if validate:
        if not ysimp <= X.simplices:
            raise ValueError("Y is not a subset of X")
        for s in ysimp:
            for j in range(len(s)):
                face = s[:j] + s[j + 1 :]
                if face and face not in ysimp:
                    raise ValueError(f"Y is not closed: missing face {face} of {s}")

    rel = [s for s in X.simplices if s not in ysimp]
    if max_dim is None:
        max_dim = max((len(s) - 1 for s in rel), default=-1)
    top = min(max_dim, max((len(s) - 1 for s in rel), default=-1))
    if top < 0:
        return ChainComplex(field, (), (), ())
    bases = [tuple(sorted(s for s in rel if len(s) == p + 1)) for p in range(top + 1)]
    dims = tuple(len(b) for b in bases)
    boundaries = tuple(
        matrix(field, dims[p - 1], dims[p], _boundary_entries(bases[p - 1], bases[p]))
        for p in range(1, top + 1)
    )
    return ChainComplex(field, dims, boundaries, tuple(bases))


def local_homology(X: SimplicialComplex, c: Simplex, k: int) -> int:
    """dim H_k(X, X minus the region of influence of c), over GF(2).

    High values mark pinch points: simplices whose extended neighborhood
    carries relative cycles that the rest of the complex cannot absorb.
    """
    from .wireless import region_of_influence  # local to avoid an import cycle

    c = tuple(c)
    if c not in X:
        raise ValueError(f"not a simplex of the complex: {c}")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    roi = region_of_influence(X, c)
    rest = X.simplices - roi
    # the complement of a star is downward closed, so no validation is needed
    C = relative_chain_complex(X, rest, FieldTag.GF2, max_dim=k + 1, validate=False)
    if C.top_degree < k:
        return 0
    prof = betti(C)
    return prof.betti[k]
