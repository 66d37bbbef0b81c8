"""Exact rational matrices: rank, nullspace, and column-space membership.

The elimination core is fraction-free (Bareiss): rows are cleared to
integers once, then every update is
``row <- (pivot * row - row[j] * pivot_row) / previous_pivot`` with an
exact integer division.  Arbitrary-precision integers make this safe at
any size; pivots are chosen small and sparse to contain growth.  The
matrices produced upstream have entries in {-1, 0, 1} and are very
sparse, so rows are stored as column->value dicts.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class RationalMatrix:
    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        self._rows: list[dict[int, Fraction]] = [dict() for _ in range(rows)]

    @classmethod
    def from_rows(cls, data) -> "RationalMatrix":
        data = [list(r) for r in data]
        m = cls(len(data), len(data[0]) if data else 0)
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                if v:
                    m._rows[i][j] = Fraction(v)
        return m

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    def add_at(self, r: int, c: int, v):
        if not v:
            return
        row = self._rows[r]
        new = row.get(c, 0) + v
        if new:
            row[c] = new
        else:
            del row[c]

    def get(self, r: int, c: int) -> Fraction:
        return Fraction(self._rows[r].get(c, 0))

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def items(self):
        """Yield (row, col, value) for every nonzero entry."""
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                yield i, j, v

    def is_zero(self) -> bool:
        return all(not r for r in self._rows)

    def to_dense(self) -> list[list[Fraction]]:
        return [
            [Fraction(self._rows[i].get(j, 0)) for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def transpose(self) -> "RationalMatrix":
        t = RationalMatrix(self.cols, self.rows)
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                t._rows[j][i] = v
        return t

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        for a, b in zip(self._rows, other._rows):
            if {c: Fraction(v) for c, v in a.items()} != {
                c: Fraction(v) for c, v in b.items()
            }:
                return False
        return True

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        assert self.cols == other.rows, "dimension mismatch"
        out = RationalMatrix(self.rows, other.cols)
        for i, row in enumerate(self._rows):
            acc: dict[int, Fraction] = {}
            for j, v in row.items():
                for k, w in other._rows[j].items():
                    s = acc.get(k, 0) + v * w
                    if s:
                        acc[k] = s
                    else:
                        del acc[k]
            out._rows[i] = acc
        return out

    def apply(self, vec) -> list[Fraction]:
        """Matrix-vector product, vec indexed by columns."""
        assert len(vec) == self.cols
        out = []
        for row in self._rows:
            out.append(sum((v * vec[j] for j, v in row.items()), Fraction(0)))
        return out

    def _integer_rows(self) -> list[dict[int, int]]:
        """Row-scaled integer copy (row scaling preserves rank, nullspace,
        and the solution set of M x = v when v is scaled along)."""
        out = []
        for row in self._rows:
            fracs = {c: Fraction(v) for c, v in row.items()}
            scale = lcm(*(f.denominator for f in fracs.values())) if fracs else 1
            out.append({c: int(f * scale) for c, f in fracs.items()})
        return out

    def rank(self) -> int:
        rows = self._integer_rows()
        pivots, _, _ = _bareiss(rows, self.cols)
        return len(pivots)

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Echelon-canonical kernel basis: one vector per free column, in
        column order, with a 1 in its free coordinate."""
        rows = self._integer_rows()
        pivots, _, _ = _bareiss(rows, self.cols)
        pivot_cols = {c for _, c in pivots}
        free_cols = [c for c in range(self.cols) if c not in pivot_cols]
        basis = []
        for f in free_cols:
            x: dict[int, Fraction] = {f: Fraction(1)}
            for r, c in reversed(pivots):
                row = rows[r]
                s = Fraction(0)
                for cc, v in row.items():
                    if cc != c:
                        s += v * x.get(cc, 0)
                x[c] = -s / row[c]
            basis.append(tuple(x.get(c, Fraction(0)) for c in range(self.cols)))
        return basis

    def nullity(self) -> int:
        return self.cols - self.rank()

    def pivot_columns(self) -> list[int]:
        """Pivot columns of the row echelon form, in column order."""
        rows = self._integer_rows()
        pivots, _, _ = _bareiss(rows, self.cols)
        return [c for _, c in pivots]

    def in_column_space(self, vec):
        """Decide whether vec lies in the column span.

        Returns ``(True, x)`` with a preimage solving M x = vec, or
        ``(False, y)`` with a certifying functional: y M = 0, y.vec != 0.
        """
        if len(vec) != self.rows:
            raise ValueError(f"expected a vector of length {self.rows}")
        n = self.cols
        rows = []
        scales = []
        for i, row in enumerate(self._rows):
            fracs = {c: Fraction(v) for c, v in row.items()}
            fv = Fraction(vec[i])
            dens = [f.denominator for f in fracs.values()] + [fv.denominator]
            scale = lcm(*dens)
            r = {c: int(f * scale) for c, f in fracs.items()}
            if fv:
                r[n] = int(fv * scale)
            rows.append(r)
            scales.append(scale)
        pivots, rows, transform = _bareiss(rows, n, track=True)
        used = {r for r, _ in pivots}
        for i in range(self.rows):
            if i not in used and rows[i]:
                # zero combination of M's rows with a nonzero right side
                assert set(rows[i]) == {n}
                y = [Fraction(0)] * self.rows
                for r, t in transform[i].items():
                    y[r] = Fraction(t * scales[r])
                return False, y
        x: dict[int, Fraction] = {}
        for r, c in reversed(pivots):
            row = rows[r]
            s = Fraction(row.get(n, 0))
            for cc, v in row.items():
                if cc != c and cc != n:
                    s -= v * x.get(cc, 0)
            x[c] = s / row[c]
        return True, [x.get(c, Fraction(0)) for c in range(n)]

    def solve_matrix(self, b: "RationalMatrix"):
        """Solve self @ X = B exactly; None when some column of B is
        outside the column span."""
        assert b.rows == self.rows
        n = self.cols
        rows = []
        for i in range(self.rows):
            fracs = {c: Fraction(v) for c, v in self._rows[i].items()}
            for c, v in b._rows[i].items():
                fracs[n + c] = Fraction(v)
            dens = [f.denominator for f in fracs.values()]
            scale = lcm(*dens) if dens else 1
            rows.append({c: int(f * scale) for c, f in fracs.items()})
        pivots, rows, _ = _bareiss(rows, n)
        used = {r for r, _ in pivots}
        for i in range(self.rows):
            if i not in used and rows[i]:
                return None
        out = RationalMatrix(n, b.cols)
        for k in range(b.cols):
            x: dict[int, Fraction] = {}
            for r, c in reversed(pivots):
                row = rows[r]
                s = Fraction(row.get(n + k, 0))
                for cc, v in row.items():
                    if cc < n and cc != c:
                        s -= v * x.get(cc, 0)
                x[c] = s / row[c]
            for c, v in x.items():
                if v:
                    out._rows[c][k] = v
        return out

    def rank_mod(self, p: int) -> int:
        """Rank over the prime field with p elements."""
        rows = []
        for row in self._integer_rows():
            r = {c: v % p for c, v in row.items() if v % p}
            rows.append(r)
        rank = 0
        active = list(range(len(rows)))
        for j in range(self.cols):
            piv = next((r for r in active if j in rows[r]), None)
            if piv is None:
                continue
            rank += 1
            active.remove(piv)
            prow = rows[piv]
            inv = pow(prow[j], -1, p)
            for r in active:
                row = rows[r]
                a = row.get(j)
                if not a:
                    continue
                f = (a * inv) % p
                for c, v in prow.items():
                    nv = (row.get(c, 0) - f * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        return rank


def _bareiss(rows: list[dict[int, int]], ncols: int, track: bool = False):
    """Fraction-free row elimination in place.

    Pivot columns are scanned left to right; within a column the pivot row
    is the one with the smallest |entry| (ties broken by sparsity), which
    keeps the exact-division intermediates small.  Every active row is
    updated with the Bareiss rule each step, so all intermediate values
    are minors of the (permuted, scaled) input and the divisions are exact.

    Returns (pivots, rows, transform): pivots as (row index, column) in
    elimination order; transform[i] expresses row i as a combination of
    the input rows when ``track`` is set.
    """
    m = len(rows)
    transform = [{i: 1} for i in range(m)] if track else None
    active = [i for i in range(m)]
    pivots: list[tuple[int, int]] = []
    prev = 1
    for j in range(ncols):
        best = None
        for r in active:
            a = rows[r].get(j)
            if a:
                key = (abs(a), len(rows[r]))
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            continue
        r0 = best[1]
        active.remove(r0)
        pivots.append((r0, j))
        piv = rows[r0][j]
        prow = rows[r0]
        ptrans = transform[r0] if track else None
        for r in active:
            row = rows[r]
            a = row.get(j, 0)
            new: dict[int, int] = {}
            for c in row.keys() | (prow.keys() if a else ()):
                v = row.get(c, 0) * piv - a * prow.get(c, 0)
                if v:
                    q, rem = divmod(v, prev)
                    assert rem == 0, "fraction-free division must be exact"
                    new[c] = q
            new.pop(j, None)
            rows[r] = new
            if track:
                told = transform[r]
                tnew: dict[int, int] = {}
                for c in told.keys() | (ptrans.keys() if a else ()):
                    v = told.get(c, 0) * piv - a * ptrans.get(c, 0)
                    if v:
                        q, rem = divmod(v, prev)
                        assert rem == 0
                        tnew[c] = q
                transform[r] = tnew
        prev = piv
    return pivots, rows, transform
