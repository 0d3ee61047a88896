import numpy as np
import pytest

from islrc.constructions import construct1, construct2
from islrc.puncture_mds import (
    ALMOST_MDS,
    DEGENERATE,
    MDS,
    PunctureError,
    covered_columns,
    deletion_sizes,
    pencil,
    puncture,
    random_deletions,
    deletion_suite,
)


def test_small_mds_example(code8):
    rep = puncture(code8.check, [1, 3])
    assert rep.H_sub.tolist() == [[1, 1, 0], [1, 0, 1]]
    assert (rep.n_sub, rep.sub_dim, rep.sub_distance) == (3, 1, 3)
    assert rep.classification == MDS and rep.singleton_defect == 0
    assert rep.kept_rows == [0, 2]


def test_small_almost_mds_example(code8):
    rep = puncture(code8.check, [3])
    assert rep.H_sub.shape == (3, 5)
    assert (rep.n_sub, rep.sub_dim, rep.sub_distance) == (5, 2, 3)
    assert rep.singleton_defect == 1 and rep.classification == ALMOST_MDS
    assert rep.deleted_cols == (1, 2, 7)


def test_degenerate_and_errors(code8):
    rep = puncture(code8.check, [0, 1])
    assert rep.sub_dim == 0 and rep.classification == DEGENERATE and rep.sub_distance is None
    with pytest.raises(PunctureError):
        puncture(code8.check, [4])
    with pytest.raises(PunctureError):
        puncture(code8.check.with_l(2), [3])


def test_deletion_sizes(code8, code50, code62):
    assert deletion_sizes(code8.check, 2, 2) == (2, 1)
    assert deletion_sizes(code50.check, 5, 5) == (20, 19)
    assert deletion_sizes(code62.check, 6, 6) == (25, 24)


def test_pencils(code50):
    C = code50.check
    for j in range(C.k):
        rows = pencil(C, j)
        assert len(rows) == 5
        # one row per parallel class; rows meet only at j
        covered = covered_columns(C, rows)
        assert len({c for c in covered if c < C.k}) == 1 + 5 * 4


def test_pencil_complements_are_mds(code50):
    C = code50.check
    for j in range(C.k):
        keep = pencil(C, j)
        rep = puncture(C, [i for i in range(C.l) if i not in keep])
        assert rep.H_sub.shape == (5, 6)
        assert rep.H_sub.entries[:, 0].tolist() == [1] * 5
        assert np.array_equal(rep.H_sub.entries[:, 1:], np.eye(5, dtype=np.int64))
        assert (rep.n_sub, rep.sub_dim, rep.sub_distance, rep.classification) == (6, 1, 6, MDS)


def test_pencil_plus_row_is_almost_mds(code50):
    C = code50.check
    for j in range(C.k):
        keep = pencil(C, j)
        extra = min(i for i in range(C.l) if i not in keep)
        rep = puncture(C, [i for i in range(C.l) if i not in keep and i != extra])
        assert len(rep.deleted_rows) == 19
        assert (rep.n_sub, rep.sub_dim, rep.sub_distance) == (7, 1, 6)
        assert rep.classification == ALMOST_MDS


def test_random_deletions_seeded(code50):
    a = random_deletions(code50.check, 20, 5, seed=1)
    assert a == random_deletions(code50.check, 20, 5, seed=1)
    assert all(len(set(x)) == 20 and max(x) < 25 for x in a)


@pytest.mark.parametrize("build,p,r,d", [(construct1, 2, 2, 3), (construct1, 3, 3, 4), (construct2, 2, 3, 4)])
def test_suite_small_codes(build, p, r, d):
    C = build(p).check
    size1, size2 = deletion_sizes(C, r, r)
    summary = deletion_suite(
        C, d, r, r, random_deletions(C, size1, 30, 0), random_deletions(C, size2, 30, 1), seed=0
    )
    assert summary.passed, summary.failures
    assert summary.to_dict()["runs"] == [30, 30]


def test_suite_reports_wrong_distance(code8):
    summary = deletion_suite(code8.check, 4, 2, 2, [(1, 3)], [(3,)])
    assert not summary.passed
    assert any("m=2, expected 3" in f for f in summary.failures)


def test_suite_rejects_wrong_sizes(code8):
    with pytest.raises(PunctureError):
        deletion_suite(code8.check, 3, 2, 2, [(1,)], [(3,)])
