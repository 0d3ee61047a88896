"""Sub-codes obtained by deleting local rows and every column they cover.

Deleting ``ceil(kt/r) - t`` rows of P1 from a distance-optimal code leaves
a check matrix with ``d - 1`` rows whose code is MDS; deleting one row
fewer leaves ``d`` rows and an almost-MDS code.  :func:`puncture` computes
one such sub-code exactly and :func:`deletion_suite` runs a batch of
deletion choices and checks the rank, size and distance identities.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .distance import min_distance_enumerate
from .gf_matrix import GfMatrix
from .lrc_core import StandardParityCheck, min_local_rows

MDS = "MDS"
ALMOST_MDS = "almost-MDS"
DEGENERATE = "degenerate"
OTHER = "other"


class PunctureError(ValueError):
    pass


@dataclass
class PunctureReport:
    deleted_rows: tuple[int, ...]
    deleted_cols: tuple[int, ...]
    H_sub: GfMatrix = field(repr=False)
    kept_rows: list[int] = field(repr=False)
    kept_cols: list[int] = field(repr=False)
    rank: int
    sub_distance: int | None
    classification: str

    @property
    def gamma(self) -> int:
        return len(self.deleted_cols)

    @property
    def m(self) -> int:
        return self.H_sub.rows

    @property
    def n_sub(self) -> int:
        return self.H_sub.cols

    @property
    def sub_dim(self) -> int:
        return self.n_sub - self.rank

    @property
    def singleton_defect(self) -> int | None:
        if self.sub_distance is None:
            return None
        return self.n_sub - self.sub_dim + 1 - self.sub_distance

    def to_dict(self) -> dict:
        return {
            "deleted_rows": list(self.deleted_rows),
            "gamma": self.gamma,
            "m": self.m,
            "n_sub": self.n_sub,
            "rank": self.rank,
            "sub_dim": self.sub_dim,
            "sub_distance": self.sub_distance,
            "singleton_defect": self.singleton_defect,
            "classification": self.classification,
            "kept_rows": self.kept_rows,
            "kept_cols": self.kept_cols,
        }


def covered_columns(C: StandardParityCheck, rows: Iterable[int]) -> set[int]:
    """Union of the supports of the given H rows (info columns plus their parity)."""
    out: set[int] = set()
    for i in rows:
        out.update(int(j) for j in np.flatnonzero(C.H.entries[i]))
    return out


def puncture(C: StandardParityCheck, deleted_rows: Iterable[int]) -> PunctureReport:
    rows = tuple(sorted(set(deleted_rows)))
    for i in rows:
        if not 0 <= i < C.l:
            raise PunctureError(f"row {i} is not among the first l={C.l} rows")
    cols = covered_columns(C, rows)
    H_sub, kept_r, kept_c = C.H.delete_rows_cols(rows, cols)
    rank = H_sub.rank()
    dim = H_sub.cols - rank
    if dim == 0:
        dist, cls = None, DEGENERATE
    else:
        # H_sub is [X | I] on the kept parities, so it is in standard form
        # after the covered columns are gone
        dist = min_distance_enumerate(_as_standard(H_sub)).d
        defect = H_sub.cols - dim + 1 - dist
        cls = {0: MDS, 1: ALMOST_MDS}.get(defect, OTHER)
    return PunctureReport(rows, tuple(sorted(cols)), H_sub, kept_r, kept_c, rank, dist, cls)


def _as_standard(H_sub: GfMatrix) -> StandardParityCheck:
    m = H_sub.rows
    ident = H_sub.entries[:, H_sub.cols - m :]
    if not np.array_equal(ident, np.eye(m, dtype=np.int64)):
        raise PunctureError("sub-matrix lost its identity block")  # pragma: no cover
    return StandardParityCheck(H_sub, 0)


@dataclass
class SuiteSummary:
    d: int
    size1: int
    size2: int
    reports1: list[PunctureReport]
    reports2: list[PunctureReport]
    failures: list[str]
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def degenerate_counts(self) -> tuple[int, int]:
        return (
            sum(r.classification == DEGENERATE for r in self.reports1),
            sum(r.classification == DEGENERATE for r in self.reports2),
        )

    def to_dict(self) -> dict:
        deg1, deg2 = self.degenerate_counts()
        return {
            "d": self.d,
            "seed": self.seed,
            "delete_sizes": [self.size1, self.size2],
            "runs": [len(self.reports1), len(self.reports2)],
            "degenerate": [deg1, deg2],
            "passed": self.passed,
            "failures": self.failures,
            "reports_mds": [r.to_dict() for r in self.reports1],
            "reports_almost_mds": [r.to_dict() for r in self.reports2],
        }


def deletion_sizes(C: StandardParityCheck, r: int, t: int) -> tuple[int, int]:
    base = min_local_rows(C.k, r, t)
    if base <= t:
        raise PunctureError(f"need ceil(kt/r) > t, got ceil(kt/r)={base}, t={t}")
    return base - t, base - t - 1


def random_deletions(C: StandardParityCheck, size: int, count: int, seed: int) -> list[tuple[int, ...]]:
    rng = np.random.default_rng(seed)
    return [tuple(sorted(int(x) for x in rng.choice(C.l, size=size, replace=False))) for _ in range(count)]


def _puncture_task(args):
    C, rows = args
    return puncture(C, rows)


def deletion_suite(
    C: StandardParityCheck,
    certified_d: int,
    r: int,
    t: int,
    choices1: Sequence[Sequence[int]],
    choices2: Sequence[Sequence[int]],
    seed: int | None = None,
    workers: int = 1,
) -> SuiteSummary:
    """Run every deletion choice and record any violated identity.

    ``choices1`` must delete ``ceil(kt/r) - t`` rows each and ``choices2``
    one fewer.
    """
    size1, size2 = deletion_sizes(C, r, t)
    d = certified_d
    failures: list[str] = []
    for size, group in ((size1, choices1), (size2, choices2)):
        for rows in group:
            if len(set(rows)) != size:
                raise PunctureError(f"deletion {list(rows)} should have {size} rows")

    tasks = [(C, tuple(rows)) for rows in list(choices1) + list(choices2)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(_puncture_task, tasks))
    else:
        reports = [_puncture_task(t_) for t_ in tasks]
    reports1, reports2 = reports[: len(choices1)], reports[len(choices1) :]

    for rep, want_m, want_cls in [(x, d - 1, MDS) for x in reports1] + [(x, d, ALMOST_MDS) for x in reports2]:
        tag = f"rows {list(rep.deleted_rows)}"
        if rep.m != want_m:
            failures.append(f"{tag}: m={rep.m}, expected {want_m}")
        if rep.rank != rep.m:
            failures.append(f"{tag}: rank {rep.rank} < m {rep.m}")
        if rep.n_sub < rep.m:
            failures.append(f"{tag}: n_sub {rep.n_sub} < m {rep.m}")
        if rep.gamma > C.k + len(rep.deleted_rows):
            failures.append(f"{tag}: gamma {rep.gamma} too large")
        if rep.classification == DEGENERATE:
            continue
        if rep.sub_distance != d:
            failures.append(f"{tag}: sub-code distance {rep.sub_distance} != {d}")
        if rep.classification != want_cls:
            failures.append(f"{tag}: classified {rep.classification}, expected {want_cls}")
    return SuiteSummary(d, size1, size2, reports1, reports2, failures, seed)


def pencil(C: StandardParityCheck, info_col: int) -> list[int]:
    """P1 rows whose support contains ``info_col``."""
    return [i for i in range(C.l) if C.H.entries[i, info_col] != 0]


__all__ = [
    "ALMOST_MDS",
    "DEGENERATE",
    "MDS",
    "OTHER",
    "PunctureError",
    "PunctureReport",
    "SuiteSummary",
    "covered_columns",
    "deletion_sizes",
    "pencil",
    "puncture",
    "random_deletions",
    "deletion_suite",
]
