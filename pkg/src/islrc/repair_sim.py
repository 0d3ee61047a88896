"""Shard-store simulation of single-symbol repair and parallel degraded reads.

One coordinate lives on each of ``n`` nodes.  An erased information symbol
is rebuilt from one repair set: the local-group row ``h`` of ``H`` gives
``h_i c_i = -sum_{j in set} h_j c_j``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distance import generator_from_check
from .gf_matrix import GfMatrix
from .lrc_core import IslrcCertificate, RepairSet, StandardParityCheck, check_islrc


class RepairError(RuntimeError):
    pass


class UnrepairableError(RepairError):
    """Every repair set of the symbol touches an erased node."""


def encode(message, C: StandardParityCheck, G: GfMatrix | None = None) -> np.ndarray:
    """Codeword ``message @ G``; the first k symbols equal the message."""
    f = C.field
    msg = np.asarray(message, dtype=np.int64)
    if msg.shape != (C.k,):
        raise ValueError(f"message must have length k={C.k}")
    if msg.size and (msg.min() < 0 or msg.max() >= f.q):
        raise ValueError(f"message symbols must be elements of {f}")
    G = G if G is not None else generator_from_check(C)
    return (GfMatrix(f, msg[None, :]) @ G).entries[0]


def encode_all(messages: np.ndarray, G: GfMatrix) -> np.ndarray:
    """Encode a (N, k) batch of messages."""
    return (GfMatrix(G.field, messages) @ G).entries


def recover(C: StandardParityCheck, codewords: np.ndarray, rs: RepairSet) -> np.ndarray:
    """Value of ``rs.info_coord`` computed from ``rs.coords`` for each row of ``codewords``."""
    f = C.field
    h = C.H.entries[rs.parity_row]
    cw = np.atleast_2d(codewords)
    acc = np.zeros(cw.shape[0], dtype=np.int64)
    for j in rs.coords:
        acc = f.vadd(acc, f.vmul(int(h[j]), cw[:, j]))
    return f.vmul(f.neg(f.inv(int(h[rs.info_coord]))), acc)


@dataclass
class RepairTrace:
    coord: int
    repair_set: tuple[int, ...]
    reads: tuple[int, ...]
    value: int
    success: bool

    def line(self, trial: int | None = None) -> str:
        head = f"{trial} " if trial is not None else ""
        return f"{head}erased={self.coord} set={list(self.repair_set)} reads={len(self.reads)}"


@dataclass
class ShardStore:
    check: StandardParityCheck
    certificate: IslrcCertificate
    original: np.ndarray
    nodes: list = field(default_factory=list)  # element or None when erased

    @classmethod
    def from_message(cls, C: StandardParityCheck, message, cert: IslrcCertificate | None = None,
                     G: GfMatrix | None = None) -> "ShardStore":
        if cert is None:
            cert = _default_certificate(C)
        if not cert.passed:
            raise RepairError("code has no passing locality certificate")
        cw = encode(message, C, G)
        return cls(C, cert, cw.copy(), [int(x) for x in cw])

    def live(self, j: int) -> bool:
        return self.nodes[j] is not None

    def erase(self, coords) -> "ShardStore":
        for j in coords:
            if not 0 <= j < self.check.n:
                raise IndexError(f"no node {j}")
            self.nodes[j] = None
        return self

    def _sets(self, i: int) -> list[RepairSet]:
        if not 0 <= i < self.check.k:
            raise RepairError("IS-LRC guarantees apply to information coordinates only")
        return sorted(self.certificate.repair_sets[i], key=lambda s: s.parity_row)

    def _read(self, rs: RepairSet) -> int:
        vals = np.zeros((1, self.check.n), dtype=np.int64)
        for j in rs.coords:
            vals[0, j] = self.nodes[j]
        return int(recover(self.check, vals, rs)[0])

    def repair_info(self, i: int) -> RepairTrace:
        for rs in self._sets(i):
            if all(self.live(j) for j in rs.coords):
                value = self._read(rs)
                self.nodes[i] = value
                ok = value == int(self.original[i])
                return RepairTrace(i, rs.coords, rs.coords, value, ok)
        raise UnrepairableError(f"all repair sets of coordinate {i} touch an erased node")

    def parallel_read(self, i: int) -> list[int]:
        sets = self._sets(i)
        touched = [j for rs in sets for j in rs.coords]
        if len(touched) != len(set(touched)):
            raise RepairError(f"repair sets of {i} are not disjoint")
        if not all(self.live(j) for j in touched):
            raise UnrepairableError(f"a repair set of {i} touches an erased node")
        return [self._read(rs) for rs in sets]

    def consistent(self) -> bool:
        return all(v is None or v == int(o) for v, o in zip(self.nodes, self.original))


def _default_certificate(C: StandardParityCheck) -> IslrcCertificate:
    mask = C.P1.entries != 0
    r = max(1, int(mask.sum(axis=1).max())) if C.l else C.k
    t = int(mask.sum(axis=0).min()) if C.l else 0
    return check_islrc(C, r, t)


@dataclass
class CampaignStats:
    seed: int
    trials: int
    attempted: int
    succeeded: int
    total_reads: int
    max_reads: int
    traces: list[str] = field(default_factory=list, repr=False)

    @property
    def mean_reads(self) -> float:
        return self.total_reads / self.attempted if self.attempted else 0.0

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "attempted": self.attempted,
            "succeeded": self.succeeded,
            "mean_reads": self.mean_reads,
            "max_reads": self.max_reads,
        }


def _trial_batch(task):
    C, cert, trials = task
    G = generator_from_check(C)
    out = []
    for trial, msg, i in trials:
        store = ShardStore.from_message(C, msg, cert, G).erase([i])
        trace = store.repair_info(i)
        out.append((trial, trace, store.consistent()))
    return out


def campaign(C: StandardParityCheck, seed: int = 0, trials: int = 1000,
             cert: IslrcCertificate | None = None, keep_traces: bool = False,
             workers: int = 1) -> CampaignStats:
    """Seeded single-erasure trials: random message, random info coordinate.

    All draws happen up front from one generator, so the statistics and
    traces are identical for any ``workers``.
    """
    cert = cert or _default_certificate(C)
    rng = np.random.default_rng(seed)
    draws = []
    for trial in range(trials):
        msg = rng.integers(0, C.field.q, size=C.k)
        draws.append((trial, msg, int(rng.integers(0, C.k))))
    parts = max(1, min(workers, trials))
    tasks = [(C, cert, draws[a::parts]) for a in range(parts)]
    if parts > 1:
        with ProcessPoolExecutor(max_workers=parts) as ex:
            results = [r for batch in ex.map(_trial_batch, tasks) for r in batch]
    else:
        results = _trial_batch(tasks[0]) if tasks[0][2] else []
    results.sort(key=lambda r: r[0])

    stats = CampaignStats(seed, trials, 0, 0, 0, 0)
    for trial, trace, consistent in results:
        stats.attempted += 1
        stats.succeeded += int(trace.success and consistent)
        stats.total_reads += len(trace.reads)
        stats.max_reads = max(stats.max_reads, len(trace.reads))
        if keep_traces:
            stats.traces.append(trace.line(trial))
    return stats


def exhaustive_sweep(C: StandardParityCheck, cert: IslrcCertificate | None = None,
                     messages: np.ndarray | None = None) -> tuple[int, int]:
    """Repair every info coordinate of every message through every repair set.

    Vectorised over messages.  With ``messages=None`` all ``q^k`` messages
    are used.  Returns ``(checks, failures)``.
    """
    cert = cert or _default_certificate(C)
    f = C.field
    if messages is None:
        grids = np.indices((f.q,) * C.k).reshape(C.k, -1).T
        messages = grids
    cws = encode_all(np.asarray(messages, dtype=np.int64), generator_from_check(C))
    checks = failures = 0
    for i, sets in cert.repair_sets.items():
        for rs in sets:
            if len(rs.coords) > cert.r or i in rs.coords:
                failures += len(cws)
                continue
            got = recover(C, cws, rs)
            failures += int(np.count_nonzero(got != cws[:, i]))
            checks += len(cws)
    return checks, failures


__all__ = [
    "CampaignStats",
    "RepairError",
    "RepairTrace",
    "ShardStore",
    "UnrepairableError",
    "campaign",
    "encode",
    "encode_all",
    "exhaustive_sweep",
    "recover",
]
