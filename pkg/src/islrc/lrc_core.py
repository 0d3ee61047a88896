"""Standard-form parity-check codes and IS-LRC structure checks.

A code is given by ``H = [P | I]``.  The first ``l`` rows of ``P`` form the
locality-bearing block ``P1``; each of those rows, joined with its identity
column, is a dual codeword of weight ``row weight + 1`` and hence a local
group with exactly one parity coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .gf_matrix import GfMatrix


class NotStandardFormError(ValueError):
    """H does not end in an identity block."""


class CertificateError(RuntimeError):
    """An operation needs a passing IS-LRC certificate."""


class UnsupportedFieldError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StandardParityCheck:
    H: GfMatrix
    l: int

    def __post_init__(self):
        H = self.H
        nk = H.rows
        if not 0 < nk < H.cols:
            raise NotStandardFormError(f"H of shape {H.shape} cannot be [P | I] with 0 < k < n")
        if not np.array_equal(H.entries[:, H.cols - nk :], np.eye(nk, dtype=np.int64)):
            raise NotStandardFormError("last n-k columns of H are not the identity")
        if not 0 <= self.l <= nk:
            raise ValueError(f"l={self.l} outside [0, {nk}]")

    @property
    def field(self):
        return self.H.field

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def k(self) -> int:
        return self.H.cols - self.H.rows

    @property
    def P(self) -> GfMatrix:
        return GfMatrix(self.field, self.H.entries[:, : self.k])

    @property
    def P1(self) -> GfMatrix:
        return GfMatrix(self.field, self.H.entries[: self.l, : self.k])

    @property
    def P2(self) -> GfMatrix:
        return GfMatrix(self.field, self.H.entries[self.l :, : self.k])

    def with_l(self, l: int) -> "StandardParityCheck":
        return StandardParityCheck(self.H, l)


@dataclass(frozen=True)
class RepairSet:
    info_coord: int
    coords: tuple[int, ...]
    parity_row: int

    @property
    def parity_coord(self) -> int:
        return self.coords[-1]


@dataclass(frozen=True)
class LocalGroup:
    coords: tuple[int, ...]
    row: int


@dataclass
class IslrcCertificate:
    passed: bool
    r: int
    t: int
    l: int
    p1_rows: tuple[int, ...]
    r_observed: int
    t_observed: int
    violating_pair: tuple[int, int] | None = None
    violating_intersection: tuple[int, ...] = ()
    repair_sets: dict[int, list[RepairSet]] = field(default_factory=dict)
    local_groups: list[LocalGroup] = field(default_factory=list)
    membership: GfMatrix | None = None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "r": self.r,
            "t": self.t,
            "l": self.l,
            "r_observed": self.r_observed,
            "t_observed": self.t_observed,
            "violating_pair": list(self.violating_pair) if self.violating_pair else None,
            "violating_intersection": list(self.violating_intersection),
            "local_groups": [list(g.coords) for g in self.local_groups],
            "repair_sets": {
                str(i): [list(s.coords) for s in sets] for i, sets in sorted(self.repair_sets.items())
            },
            "membership_matrix": self.membership.tolist() if self.membership is not None else None,
        }


def min_local_rows(k: int, r: int, t: int) -> int:
    """Fewest local groups an (n,k,r,t) IS-LRC can have: ceil(kt/r)."""
    if min(k, r, t) < 1:
        raise ValueError("k, r, t must be positive")
    return -(-k * t // r)


def _first_violating_pair(mask: np.ndarray, rows: list[int]):
    """First row pair (row-major order) whose supports share two or more columns."""
    if len(rows) < 2:
        return None, ()
    m = mask.astype(np.float64)
    overlap = m @ m.T
    np.fill_diagonal(overlap, 0)
    bad = np.argwhere(np.triu(overlap) >= 2)
    if bad.size == 0:
        return None, ()
    a, b = (int(x) for x in bad[0])
    common = np.flatnonzero(mask[a] & mask[b])
    return (rows[a], rows[b]), tuple(int(j) for j in common)


def auto_rows(C: StandardParityCheck, r: int) -> list[int]:
    """Rows of P with weight in [1, r]: the maximal candidate P1."""
    w = np.count_nonzero(C.P.entries, axis=1)
    return [int(i) for i in np.flatnonzero((w >= 1) & (w <= r))]


def check_islrc(C: StandardParityCheck, r: int, t: int, *, auto: bool = False) -> IslrcCertificate:
    """Check the three row/column conditions on P1 and extract repair sets.

    With ``auto=True`` the candidate P1 is every row of P of weight at most
    ``r`` instead of the first ``C.l`` rows.  No subset search is attempted.
    """
    k = C.k
    rows = auto_rows(C, r) if auto else list(range(C.l))
    block = C.P.entries[rows] if rows else np.zeros((0, k), dtype=np.int64)
    mask = block != 0
    r_obs = int(mask.sum(axis=1).max()) if rows else 0
    t_obs = int(mask.sum(axis=0).min()) if rows else 0
    supports = [set(np.flatnonzero(m).tolist()) for m in mask]
    pair, common = _first_violating_pair(mask, rows)
    passed = r_obs <= r and t_obs >= t and pair is None

    cert = IslrcCertificate(
        passed=passed,
        r=r,
        t=t,
        l=len(rows),
        p1_rows=tuple(rows),
        r_observed=r_obs,
        t_observed=t_obs,
        violating_pair=pair,
        violating_intersection=common,
    )
    if not passed:
        return cert

    groups = []
    sets: dict[int, list[RepairSet]] = {i: [] for i in range(k)}
    for row, supp in zip(rows, supports):
        info = sorted(supp)
        groups.append(LocalGroup(tuple(info) + (k + row,), row))
        for i in info:
            sets[i].append(RepairSet(i, tuple(j for j in info if j != i) + (k + row,), row))
    for i, ss in sets.items():
        for a, b in combinations(ss, 2):
            if set(a.coords) & set(b.coords):
                raise AssertionError(f"repair sets of {i} from rows {a.parity_row},{b.parity_row} overlap")
    cert.repair_sets = sets
    cert.local_groups = groups
    if C.field.q == 2:
        cert.membership = GfMatrix(C.field, block.T)
    return cert


def local_groups(C: StandardParityCheck, cert: IslrcCertificate | None = None) -> list[LocalGroup]:
    """One local group per P1 row: the row's info support plus its parity."""
    if cert is None:
        rt = _observed_rt(C)
        cert = check_islrc(C, *rt)
    if not cert.passed:
        raise CertificateError("local groups are only defined for a passing certificate")
    return cert.local_groups


def _observed_rt(C: StandardParityCheck) -> tuple[int, int]:
    mask = C.P1.entries != 0
    if C.l == 0:
        return C.k, 0
    return max(1, int(mask.sum(axis=1).max())), int(mask.sum(axis=0).min())


def membership_matrix(C: StandardParityCheck) -> GfMatrix:
    """k x l 0/1 matrix, the transpose of P1.  Binary codes only."""
    if C.field.q != 2:
        raise UnsupportedFieldError(
            f"membership matrix identification holds for binary codes; got {C.field}"
        )
    return C.P1.T


__all__ = [
    "CertificateError",
    "IslrcCertificate",
    "LocalGroup",
    "NotStandardFormError",
    "RepairSet",
    "StandardParityCheck",
    "UnsupportedFieldError",
    "auto_rows",
    "check_islrc",
    "local_groups",
    "membership_matrix",
    "min_local_rows",
]
