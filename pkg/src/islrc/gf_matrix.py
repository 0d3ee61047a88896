"""Dense matrices over GF(q) with exact elimination.

Entries are element indices (see :mod:`islrc.finite_field`) held in an
int64 numpy array.  Binary matrices additionally get a packed-row path
where each row is a Python int and elimination is XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .finite_field import FieldSpec, make_field, prime_power


class MatrixFormatError(ValueError):
    """Malformed matrix text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True, eq=False)
class GfMatrix:
    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64, copy=True)
        if a.ndim != 2:
            raise ValueError("GfMatrix entries must be two-dimensional")
        if a.size and (a.min() < 0 or a.max() >= self.field.q):
            raise ValueError(f"entries out of range for {self.field}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GfMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.field, self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"GfMatrix({self.field}, {self.rows}x{self.cols})"

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    # constructors

    @classmethod
    def zeros(cls, f: FieldSpec, rows: int, cols: int) -> "GfMatrix":
        return cls(f, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, f: FieldSpec, size: int) -> "GfMatrix":
        return cls(f, np.eye(size, dtype=np.int64))

    @classmethod
    def ones(cls, f: FieldSpec, rows: int, cols: int) -> "GfMatrix":
        return cls(f, np.ones((rows, cols), dtype=np.int64))

    # structure

    @property
    def T(self) -> "GfMatrix":
        return GfMatrix(self.field, self.entries.T)

    def hstack(self, *others: "GfMatrix") -> "GfMatrix":
        _same_field(self, *others)
        return GfMatrix(self.field, np.hstack([self.entries] + [o.entries for o in others]))

    def vstack(self, *others: "GfMatrix") -> "GfMatrix":
        _same_field(self, *others)
        return GfMatrix(self.field, np.vstack([self.entries] + [o.entries for o in others]))

    def support_mask(self) -> np.ndarray:
        return self.entries != 0

    def row_support(self, i: int) -> tuple[int, ...]:
        _check_index(i, self.rows, "row")
        return tuple(int(j) for j in np.flatnonzero(self.entries[i]))

    def col_support(self, j: int) -> tuple[int, ...]:
        _check_index(j, self.cols, "column")
        return tuple(int(i) for i in np.flatnonzero(self.entries[:, j]))

    def row_weight(self, i: int) -> int:
        _check_index(i, self.rows, "row")
        return int(np.count_nonzero(self.entries[i]))

    def col_weight(self, j: int) -> int:
        _check_index(j, self.cols, "column")
        return int(np.count_nonzero(self.entries[:, j]))

    def delete_rows_cols(
        self, rows: Iterable[int] = (), cols: Iterable[int] = ()
    ) -> tuple["GfMatrix", list[int], list[int]]:
        """Drop the given rows and columns.

        Returns the submatrix plus, for each kept row/column, its index in
        the original matrix.
        """
        drop_r = set(rows)
        drop_c = set(cols)
        for i in drop_r:
            _check_index(i, self.rows, "row")
        for j in drop_c:
            _check_index(j, self.cols, "column")
        keep_r = [i for i in range(self.rows) if i not in drop_r]
        keep_c = [j for j in range(self.cols) if j not in drop_c]
        if not keep_r or not keep_c:
            raise ValueError("deletion would leave an empty matrix")
        sub = self.entries[np.ix_(keep_r, keep_c)]
        return GfMatrix(self.field, sub), keep_r, keep_c

    # arithmetic

    def scale(self, c: int) -> "GfMatrix":
        return GfMatrix(self.field, self.field.vmul(c, self.entries))

    def __matmul__(self, other: "GfMatrix") -> "GfMatrix":
        _same_field(self, other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        if f.m == 1:
            return GfMatrix(f, (self.entries @ other.entries) % f.p)
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for s in range(self.cols):
            out = f.vadd(out, f.vmul(self.entries[:, s : s + 1], other.entries[s : s + 1, :]))
        return GfMatrix(f, out)

    def __add__(self, other: "GfMatrix") -> "GfMatrix":
        _same_field(self, other)
        return GfMatrix(self.field, self.field.vadd(self.entries, other.entries))

    def negate(self) -> "GfMatrix":
        return GfMatrix(self.field, self.field.vneg(self.entries))

    # elimination

    def rref(self) -> "GfMatrix":
        return GfMatrix(self.field, _rref(self.field, self.entries)[0])

    def rank(self) -> int:
        if self.field.q == 2:
            return rank_packed(pack_rows(self.entries), self.cols)
        return len(_rref(self.field, self.entries)[1])

    def rank_generic(self) -> int:
        return len(_rref(self.field, self.entries)[1])

    def null_space(self) -> "GfMatrix":
        """Basis of {x : M x = 0}, one vector per row."""
        f = self.field
        R, pivots = _rref(f, self.entries)
        free = [j for j in range(self.cols) if j not in pivots]
        basis = np.zeros((len(free), self.cols), dtype=np.int64)
        for b, j in enumerate(free):
            basis[b, j] = 1
            for r, pc in enumerate(pivots):
                basis[b, pc] = f.neg(int(R[r, j]))
        return GfMatrix(f, basis)

    # text format

    def to_text(self) -> str:
        lines = [f"{self.field.q} {self.rows} {self.cols}"]
        lines += [" ".join(str(int(x)) for x in row) for row in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field: FieldSpec | None = None) -> "GfMatrix":
        """Parse the matrix text format.  Lines starting with ``#`` are skipped."""
        body = [(n, ln) for n, ln in enumerate(text.split("\n"), 1) if ln.strip() and not ln.startswith("#")]
        if not body:
            raise MatrixFormatError("missing header", 1)
        hline, header = body[0]
        try:
            q, rows, cols = (int(x) for x in header.split())
        except ValueError:
            raise MatrixFormatError("header must be 'q rows cols'", hline, 1) from None
        try:
            p, m = prime_power(q)
        except ValueError as e:
            raise MatrixFormatError(str(e), hline, 1) from None
        if field is None:
            field = make_field(p, m)
        elif field.q != q:
            raise MatrixFormatError(f"header q={q} does not match {field}", hline, 1)
        data = body[1:]
        if len(data) != rows:
            ln = data[-1][0] + 1 if data else hline + 1
            raise MatrixFormatError(f"expected {rows} rows, found {len(data)}", ln)
        out = np.zeros((rows, cols), dtype=np.int64)
        for r, (ln, line) in enumerate(data):
            toks = line.split(" ")
            if len(toks) != cols:
                raise MatrixFormatError(f"expected {cols} entries, found {len(toks)}", ln)
            pos = 1
            for c, tok in enumerate(toks):
                if not tok.isdigit() or int(tok) >= q:
                    raise MatrixFormatError(f"invalid element {tok!r}", ln, pos)
                out[r, c] = int(tok)
                pos += len(tok) + 1
        return cls(field, out)


def _same_field(*ms: GfMatrix) -> None:
    f = ms[0].field
    for o in ms[1:]:
        if o.field != f:
            raise ValueError(f"field mismatch: {f} vs {o.field}")


def _check_index(i: int, bound: int, what: str) -> None:
    if not 0 <= i < bound:
        raise IndexError(f"{what} index {i} out of range [0, {bound})")


def _rref(f: FieldSpec, entries: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = np.array(entries, dtype=np.int64, copy=True)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = f.vmul(f.inv(lead), A[r])
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            factors = A[others, c][:, None]
            A[others] = f.vsub(A[others], f.vmul(factors, A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: GfMatrix) -> int:
    return M.rank()


def rref(M: GfMatrix) -> GfMatrix:
    return M.rref()


def kronecker(A: GfMatrix, B: GfMatrix) -> GfMatrix:
    """Kronecker product; block (i, j) of the result is ``A[i, j] * B``."""
    _same_field(A, B)
    f = A.field
    prod = f.vmul(A.entries[:, None, :, None], B.entries[None, :, None, :])
    return GfMatrix(f, prod.reshape(A.rows * B.rows, A.cols * B.cols))


def matrix(f: FieldSpec, rows: Sequence[Sequence[int]]) -> GfMatrix:
    return GfMatrix(f, np.asarray(rows, dtype=np.int64).reshape(len(rows), -1))


# --- packed binary rows ---

def pack_rows(entries: np.ndarray) -> list[int]:
    """Pack each 0/1 row into an int, column j at bit j."""
    weights = [1 << j for j in range(entries.shape[1])]
    return [sum(w for w, x in zip(weights, row) if x) for row in entries.tolist()]


def rank_packed(rows: list[int], n_cols: int) -> int:
    """Rank over GF(2) of bitset rows."""
    # basis kept in decreasing order so each XOR clears a distinct leading bit
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


__all__ = [
    "GfMatrix",
    "MatrixFormatError",
    "kronecker",
    "matrix",
    "pack_rows",
    "rank",
    "rank_packed",
    "rref",
]
