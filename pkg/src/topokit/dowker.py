"""Relations, Dowker complexes, and windowed homology profiles of
straight-line code.

A relation is a labeled 0/1 matrix.  Its rows-side Dowker complex lives on
the row set, with a simplex for every subset of a column's support (and
symmetrically for the columns side); both sides have the same homology, which
the tests exercise as a duality check.

Straight-line code in a small three-address-style language maps to the
relation between assignments (rows) and the identifiers each one touches
(columns, first-appearance order).  Grammar, one statement per line::

    line   := IDENT "=" rhs [";"]
    rhs    := term (op term)*
    term   := IDENT | NUMBER
    op     := "+" | "-" | "*" | "/"

Number literals are not variables; ``#`` starts a comment.  The assigned
identifier counts as touched, so outputs join their inputs in one simplex.

Windowed profiles slide a fixed-height window down the rows and report GF(2)
Betti numbers (variables as vertices) plus the Euler characteristic computed
from simplex counts.  Simplices are only generated up to dimension 3; the
Betti rows stay exact, and a window whose supports would create higher
simplices has its Euler characteristic flagged as truncated.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from .complexes import SimplicialComplex, from_facets
from .errors import ParseError
from .homology import BettiProfile, betti, simplicial_chain_complex
from .linalg import FieldTag

_PROFILE_DIM_CAP = 3  # simplices above this are dropped; beta_0..2 unaffected


@dataclass(frozen=True)
class Relation:
    """0/1 incidence matrix with unique row and column labels."""

    matrix: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("duplicate row labels")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("duplicate column labels")
        for row in self.matrix:
            if len(row) != len(self.col_labels):
                raise ValueError("ragged relation matrix")
            if any(x not in (0, 1) for x in row):
                raise ValueError("relation entries must be 0 or 1")
        if len(self.matrix) != len(self.row_labels):
            raise ValueError("row count does not match row labels")

    @property
    def n_rows(self) -> int:
        return len(self.row_labels)

    @property
    def n_cols(self) -> int:
        return len(self.col_labels)

    def row_support(self, i: int) -> tuple[str, ...]:
        return tuple(
            self.col_labels[j] for j, x in enumerate(self.matrix[i]) if x
        )

    def col_support(self, j: int) -> tuple[str, ...]:
        return tuple(
            self.row_labels[i] for i in range(self.n_rows) if self.matrix[i][j]
        )


def dowker_complex(
    R: Relation, side: str = "rows", max_dim: int | None = None
) -> SimplicialComplex:
    """Dowker complex of the relation on the chosen vertex side.

    side="rows": vertices are rows, generated by column supports;
    side="cols": vertices are columns, generated by row supports.
    Empty supports contribute nothing.
    """
    if side not in ("rows", "cols"):
        raise ValueError(f"side must be 'rows' or 'cols', got {side!r}")
    if max_dim is not None and max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    if side == "rows":
        gens = [R.col_support(j) for j in range(R.n_cols)]
    else:
        gens = [R.row_support(i) for i in range(R.n_rows)]
    return from_facets([g for g in gens if g], max_dim=max_dim)


def dowker_betti(
    R: Relation, side: str = "rows", max_betti_dim: int = 2
) -> BettiProfile:
    """GF(2) Betti numbers of the Dowker complex, exact up to max_betti_dim.

    Simplices are generated one dimension above the top requested degree so
    the boundary in from above is present.  The reported lists are trimmed to
    the reliable degrees.
    """
    if max_betti_dim < 0:
        raise ValueError("max_betti_dim must be nonnegative")
    K = dowker_complex(R, side, max_dim=max_betti_dim + 1)
    prof = betti(simplicial_chain_complex(K, FieldTag.GF2))
    stop = max_betti_dim + 1

    def trim(xs):
        xs = tuple(xs[:stop])
        return xs + (0,) * (stop - len(xs))

    return BettiProfile(
        trim(prof.betti),
        trim(prof.reduced) if prof.betti else trim(()),
        prof.euler,
        trim(prof.z_dims),
        trim(prof.b_dims),
        prof.ranks,
    )


# ---------------------------------------------------------------------------
# Straight-line code
# ---------------------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")
_NUMBER = re.compile(r"\d+(\.\d+)?\Z")
_TERM_SPLIT = re.compile(r"([+\-*/])")


def parse_straightline(source: str) -> Relation:
    """Relation between assignments and identifiers of a straight-line program.

    One row per assignment line (labeled by its source line number), one
    column per distinct identifier in first-appearance order; entry 1 when
    the identifier appears on either side of the assignment.
    """
    rows = []
    row_labels = []
    columns: list[str] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith(";"):
            line = line[:-1].rstrip()
        if "=" not in line:
            raise ParseError("expected IDENT = rhs", line=lineno)
        lhs, rhs = line.split("=", 1)
        lhs = lhs.strip()
        if not _IDENT.match(lhs):
            raise ParseError(f"bad identifier on left side: {lhs!r}", line=lineno)
        touched = [lhs]
        parts = _TERM_SPLIT.split(rhs)
        if not rhs.strip():
            raise ParseError("empty right side", line=lineno)
        for k, part in enumerate(parts):
            part = part.strip()
            if k % 2 == 1:
                continue  # operator slots
            if not part:
                raise ParseError("misplaced operator", line=lineno)
            if _NUMBER.match(part):
                continue
            if not _IDENT.match(part):
                raise ParseError(f"bad term: {part!r}", line=lineno)
            touched.append(part)
        for ident in touched:
            if ident not in seen:
                seen.add(ident)
                columns.append(ident)
        rows.append((lineno, touched))
        row_labels.append(str(lineno))
    if not rows:
        raise ParseError("no assignments found in input")
    col_index = {c: j for j, c in enumerate(columns)}
    mat = []
    for _, touched in rows:
        row = [0] * len(columns)
        for ident in touched:
            row[col_index[ident]] = 1
        mat.append(tuple(row))
    return Relation(tuple(mat), tuple(row_labels), tuple(columns))


# ---------------------------------------------------------------------------
# Windowed profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WindowRow:
    start_label: str
    beta0: int
    beta1: int
    beta2: int
    chi: int
    chi_truncated: bool


@dataclass(frozen=True)
class WindowProfile:
    window_size: int
    rows: tuple[WindowRow, ...]


def windowed_profile(
    R: Relation, w: int, max_betti_dim: int = 2
) -> WindowProfile:
    """Betti/Euler profile over all windows of ``w`` consecutive rows.

    Each window restricts the relation to its rows and to the columns with at
    least one entry inside it, and is analyzed on the columns side (variables
    as vertices).
    """
    if not 1 <= w <= R.n_rows:
        raise ValueError(f"window size must be in 1..{R.n_rows}, got {w}")
    out = []
    for start in range(R.n_rows - w + 1):
        supports = [R.row_support(i) for i in range(start, start + w)]
        supports = [s for s in supports if s]
        K = from_facets(supports, max_dim=_PROFILE_DIM_CAP)
        prof = betti(simplicial_chain_complex(K, FieldTag.GF2))

        def beta_at(p):
            return prof.betti[p] if p < len(prof.betti) else 0

        chi = sum(
            (-1) ** p * len(K.p_simplices(p)) for p in range(_PROFILE_DIM_CAP + 1)
        )
        truncated = any(len(set(s)) > _PROFILE_DIM_CAP + 1 for s in supports)
        out.append(
            WindowRow(
                R.row_labels[start],
                beta_at(0),
                beta_at(1),
                beta_at(2),
                chi,
                truncated,
            )
        )
    return WindowProfile(w, tuple(out))


# ---------------------------------------------------------------------------
# CSV formats
# ---------------------------------------------------------------------------


def relation_from_csv(text: str) -> Relation:
    """Header row of column labels; each data row is a label plus 0/1 entries."""
    try:
        reader = list(csv.reader(io.StringIO(text)))
    except csv.Error as exc:
        raise ParseError(f"bad CSV: {exc}") from None
    reader = [row for row in reader if row and any(cell.strip() for cell in row)]
    if len(reader) < 2:
        raise ParseError("relation CSV needs a header and at least one row")
    header = [c.strip() for c in reader[0]]
    cols = tuple(header[1:])
    if not cols:
        raise ParseError("relation CSV has no columns", line=1)
    rows = []
    labels = []
    for lineno, row in enumerate(reader[1:], start=2):
        if len(row) != len(cols) + 1:
            raise ParseError(
                f"expected {len(cols) + 1} fields, got {len(row)}", line=lineno
            )
        labels.append(row[0].strip())
        try:
            rows.append(tuple(int(x) for x in row[1:]))
        except ValueError:
            raise ParseError("entries must be 0 or 1", line=lineno) from None
    try:
        return Relation(tuple(rows), tuple(labels), cols)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_relation_or_code(path, fmt: str = "auto") -> Relation:
    """Load a relation from CSV or straight-line code (by extension if auto)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "auto":
        fmt = "csv" if str(path).lower().endswith(".csv") else "code"
    if fmt == "csv":
        return relation_from_csv(text)
    if fmt == "code":
        return parse_straightline(text)
    raise ValueError(f"unknown format {fmt!r}")


def profile_to_csv(profile: WindowProfile) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["start_label", "beta0", "beta1", "beta2", "chi", "chi_truncated"]
    )
    for row in profile.rows:
        writer.writerow(
            [
                row.start_label,
                row.beta0,
                row.beta1,
                row.beta2,
                row.chi,
                str(row.chi_truncated).lower(),
            ]
        )
    return buf.getvalue()
