"""Cayley-table constructions of rate-1/2 IS-LRCs with r = t.

``construct1(p, m)`` tiles permutation blocks ``M_c`` (positions of ``c``
in the addition table of GF(p^m)) according to the multiplication table,
giving a ``p^2m``-square ``P1`` whose rows are the lines of the affine
plane of order ``p^m``.  ``construct2`` extends it by one parallel-class
point per direction plus a line at infinity.

Entries are 0/1 by default.  Over a larger target field the ones can be
replaced by a fixed nonzero element or by seeded random nonzero elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finite_field import FieldSpec, cayley_add_table, cayley_mul_table, make_field
from .gf_matrix import GfMatrix, kronecker
from .lrc_core import IslrcCertificate, StandardParityCheck, check_islrc

MAX_BLOCK_ORDER = 4096


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class Fill:
    """How the ones of a 0/1 pattern are realised over the target field."""

    mode: str = "uniform"  # "uniform" | "random"
    element: int = 1
    seed: int = 0

    @classmethod
    def uniform(cls, element: int) -> "Fill":
        return cls("uniform", element=element)

    @classmethod
    def random(cls, seed: int = 0) -> "Fill":
        return cls("random", seed=seed)

    def describe(self) -> str:
        return f"uniform({self.element})" if self.mode == "uniform" else f"random({self.seed})"

    def apply(self, pattern: np.ndarray, f: FieldSpec) -> np.ndarray:
        out = np.zeros(pattern.shape, dtype=np.int64)
        mask = pattern != 0
        if self.mode == "uniform":
            if not 0 < self.element < f.q:
                raise ConstructionError(f"fill element must be a nonzero element of {f}")
            out[mask] = self.element
        elif self.mode == "random":
            rng = np.random.default_rng(self.seed)
            out[mask] = rng.integers(1, f.q, size=int(mask.sum()))
        else:
            raise ConstructionError(f"unknown fill mode {self.mode!r}")
        return out


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    r: int
    t: int
    q: int = 2

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.d < 1 or self.t < 1 or not 1 <= self.r <= self.k:
            raise ValueError(f"invalid parameters {self}")


@dataclass(frozen=True, eq=False)
class ConstructedCode:
    check: StandardParityCheck
    declared: CodeParams
    construction: int
    p: int
    m: int
    fill: Fill
    certificate: IslrcCertificate

    def header(self) -> str:
        d = self.declared
        return (
            f"# construction={self.construction} p={self.p} m={self.m} n={d.n} k={d.k} "
            f"r={d.r} t={d.t} d_claimed={d.d} q={d.q}"
        )


def indicator_block(f: FieldSpec, c: int, target: FieldSpec | None = None) -> GfMatrix:
    """The permutation matrix marking where ``c`` occurs in the addition table of ``f``."""
    target = target or make_field(2)
    if not 0 <= c < f.q:
        raise ConstructionError(f"{c} is not an element of {f}")
    table = cayley_add_table(f).entries
    return GfMatrix(target, (table == c).astype(np.int64))


def construct1_pattern(f: FieldSpec) -> np.ndarray:
    """0/1 pattern of P1: block (i, j) is M_{T*[i][j]}."""
    add = cayley_add_table(f).entries
    mul = cayley_mul_table(f).entries
    q = f.q
    blocks = [(add == c).astype(np.int64) for c in range(q)]
    out = np.zeros((q * q, q * q), dtype=np.int64)
    for i in range(q):
        for j in range(q):
            out[i * q : (i + 1) * q, j * q : (j + 1) * q] = blocks[mul[i, j]]
    return out


def construct2_pattern(f: FieldSpec) -> np.ndarray:
    s = f.q
    b = make_field(2)
    top = np.hstack([np.ones((1, s + 1), dtype=np.int64), np.zeros((1, s * s), dtype=np.int64)])
    left = kronecker(GfMatrix.identity(b, s + 1), GfMatrix.ones(b, s, 1)).entries
    right = np.vstack([
        kronecker(GfMatrix.identity(b, s), GfMatrix.ones(b, 1, s)).entries,
        construct1_pattern(f),
    ])
    return np.vstack([top, np.hstack([left, right])])


def _check_size(p: int, m: int) -> FieldSpec:
    f = make_field(p, m)
    if f.q ** 2 > MAX_BLOCK_ORDER:
        raise ConstructionError(f"p^2m = {f.q ** 2} exceeds size cap {MAX_BLOCK_ORDER}")
    return f


def assemble_H(P: GfMatrix, l: int) -> StandardParityCheck:
    """H = [P | I], with the first ``l`` rows of P designated P1."""
    return StandardParityCheck(P.hstack(GfMatrix.identity(P.field, P.rows)), l)


def _finish(pattern, construction, p, m, r, d, field, fill) -> ConstructedCode:
    field = field or make_field(2)
    fill = fill or Fill.uniform(1)
    P1 = GfMatrix(field, fill.apply(pattern, field))
    code = assemble_H(P1, P1.rows)
    k = P1.cols
    cert = check_islrc(code, r, r)
    if not cert.passed:  # pragma: no cover - construction invariant
        raise AssertionError(f"construction {construction} failed its own certificate")
    return ConstructedCode(code, CodeParams(2 * k, k, d, r, r, field.q), construction, p, m, fill, cert)


def construct1(p: int, m: int = 1, field: FieldSpec | None = None, fill: Fill | None = None) -> ConstructedCode:
    """(2p^2m, p^2m, p^m, p^m) code with claimed distance p^m + 1."""
    f = _check_size(p, m)
    return _finish(construct1_pattern(f), 1, p, m, f.q, f.q + 1, field, fill)


def construct2(p: int, m: int = 1, field: FieldSpec | None = None, fill: Fill | None = None) -> ConstructedCode:
    """(2(p^2m+p^m+1), p^2m+p^m+1, p^m+1, p^m+1) code with claimed distance p^m + 2."""
    f = _check_size(p, m)
    return _finish(construct2_pattern(f), 2, p, m, f.q + 1, f.q + 2, field, fill)


def pairwise_row_intersections(P1: GfMatrix) -> set[int]:
    """Distinct support-intersection sizes over all pairs of rows."""
    m = (P1.entries != 0).astype(np.float64)
    ov = m @ m.T
    iu = np.triu_indices(P1.rows, 1)
    return {int(x) for x in np.unique(ov[iu])}


__all__ = [
    "MAX_BLOCK_ORDER",
    "CodeParams",
    "ConstructedCode",
    "ConstructionError",
    "Fill",
    "assemble_H",
    "construct1",
    "construct1_pattern",
    "construct2",
    "construct2_pattern",
    "indicator_block",
    "pairwise_row_intersections",
]
