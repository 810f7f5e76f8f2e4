"""Exact dense linear algebra over GF(2) and the rationals.

GF(2) matrices store each row as a Python int used as a bitset, so row
elimination is a single XOR.  Rational matrices store ``fractions.Fraction``
entries and are reduced by ordinary Gaussian elimination.  Both give exact,
order-independent ranks; no floating point is involved anywhere.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction


class FieldTag(Enum):
    """Scalar field selector: GF2 (mod-2) or exact rationals."""

    GF2 = "f2"
    RATIONAL = "q"


class GF2Matrix:
    """Dense matrix over GF(2); rows are int bitsets (bit j = column j)."""

    field = FieldTag.GF2

    def __init__(self, rows: int, cols: int, row_bits=None):
        self.rows = rows
        self.cols = cols
        self.row_bits = list(row_bits) if row_bits is not None else [0] * rows

    @classmethod
    def from_entries(cls, rows, cols, entries):
        """Build from an iterable of (i, j, coefficient) triples."""
        m = cls(rows, cols)
        for i, j, coef in entries:
            if int(coef) % 2:
                m.row_bits[i] ^= 1 << j
        return m

    def entry(self, i, j) -> int:
        return (self.row_bits[i] >> j) & 1

    def is_zero(self) -> bool:
        return not any(self.row_bits)

    def rank(self) -> int:
        pivots = {}  # leading-bit column -> reduced row
        for row in self.row_bits:
            while row:
                col = row.bit_length() - 1
                if col in pivots:
                    row ^= pivots[col]
                else:
                    pivots[col] = row
                    break
        return len(pivots)

    def mul(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = GF2Matrix(self.rows, other.cols)
        for i, row in enumerate(self.row_bits):
            acc = 0
            m = row
            while m:
                j = (m & -m).bit_length() - 1
                acc ^= other.row_bits[j]
                m &= m - 1
            out.row_bits[i] = acc
        return out


class RationalMatrix:
    """Dense matrix of ``Fraction`` entries with exact elimination."""

    field = FieldTag.RATIONAL

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            z = Fraction(0)
            self.data = [[z] * cols for _ in range(rows)]
        else:
            self.data = [[Fraction(x) for x in r] for r in data]

    @classmethod
    def from_entries(cls, rows, cols, entries):
        m = cls(rows, cols)
        for i, j, coef in entries:
            m.data[i][j] += Fraction(coef)
        return m

    def entry(self, i, j) -> Fraction:
        return self.data[i][j]

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def _echelon(self, full: bool = True):
        """Sparse elimination; returns {pivot column: normalized row dict}.

        Boundary-style matrices are overwhelmingly zero, so rows are reduced
        as {column: value} dicts and only nonzero positions are ever touched.
        With ``full`` the result is the reduced echelon form (each pivot row
        has value 1 in its pivot column and zeros in the others), which makes
        the null space basis canonical; rank alone skips that extra pass.
        """
        pivots: dict[int, dict[int, Fraction]] = {}
        for dense in self.data:
            row = {j: x for j, x in enumerate(dense) if x != 0}
            while row:
                c = min(row)
                if c in pivots:
                    f = row.pop(c)
                    for j, v in pivots[c].items():
                        if j == c:
                            continue
                        nv = row.get(j, 0) - f * v
                        if nv:
                            row[j] = nv
                        else:
                            row.pop(j, None)
                else:
                    pv = row[c]
                    pivots[c] = {j: v / pv for j, v in row.items()}
                    break
        if full:
            for c in sorted(pivots, reverse=True):
                norm = pivots[c]
                for pc, prow in pivots.items():
                    if pc == c:
                        continue
                    f = prow.get(c)
                    if not f:
                        continue
                    for j, v in norm.items():
                        nv = prow.get(j, 0) - f * v
                        if nv:
                            prow[j] = nv
                        else:
                            prow.pop(j, None)
        return pivots

    def rank(self) -> int:
        return len(self._echelon(full=False))

    def nullspace(self):
        """Basis of the right null space, one list (column vector) per free column.

        The basis is the canonical reduced-echelon one: each free column
        contributes the vector with a 1 in its own position, so the result is
        deterministic for a given matrix.
        """
        pivots = self._echelon(full=True)
        free_cols = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for fc in free_cols:
            vec = [Fraction(0)] * self.cols
            vec[fc] = Fraction(1)
            for pc, prow in pivots.items():
                x = prow.get(fc)
                if x:
                    vec[pc] = -x
            basis.append(vec)
        return basis

    def mul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = RationalMatrix(self.rows, other.cols)
        for i in range(self.rows):
            arow = self.data[i]
            orow = out.data[i]
            for k, a in enumerate(arow):
                if a == 0:
                    continue
                brow = other.data[k]
                for j, b in enumerate(brow):
                    if b != 0:
                        orow[j] += a * b
        return out


def matrix(field: FieldTag, rows: int, cols: int, entries=()):
    """Matrix factory for the chosen field from (i, j, coefficient) triples."""
    cls = GF2Matrix if field is FieldTag.GF2 else RationalMatrix
    return cls.from_entries(rows, cols, entries)
