import itertools

import numpy as np
import pytest

from islrc.constructions import Fill, assemble_H, construct1, construct2
from islrc.distance import (
    BudgetExceeded,
    ClaimRefuted,
    _column_vectors,
    _mitm_binary,
    certify_distance,
    check_t_columns_independent,
    dependent_subset_search,
    generator_from_check,
    min_distance_enumerate,
    min_distance_subsets,
)
from islrc.finite_field import make_field
from islrc.gf_matrix import GfMatrix, matrix


def brute_distance(C, w_limit=None):
    """Smallest weight of a nonzero x with H x = 0, trying supports by size."""
    H = C.H
    f = H.field
    for w in range(1, (w_limit or C.n) + 1):
        for supp in itertools.combinations(range(C.n), w):
            sub = H.entries[:, supp]
            for coeffs in itertools.product(range(1, f.q), repeat=w):
                acc = np.zeros(H.rows, dtype=np.int64)
                for c, col in zip(coeffs, sub.T):
                    acc = f.vadd(acc, f.vmul(c, col))
                if not acc.any():
                    return w
    return None


def brute_subsets_rank(H: GfMatrix, w_max: int):
    """Naive per-subset rank; returns the smallest dependent size or None."""
    for w in range(1, w_max + 1):
        for supp in itertools.combinations(range(H.cols), w):
            if GfMatrix(H.field, H.entries[:, supp]).rank_generic() < w:
                return w
    return None


SMALL_CODES = {
    "c1-2": lambda: construct1(2),
    "c2-2": lambda: construct2(2),
    "c1-3": lambda: construct1(3),
    "c1-2-gf3": lambda: construct1(2, field=make_field(3), fill=Fill.random(1)),
    "c1-2-gf4": lambda: construct1(2, field=make_field(2, 2), fill=Fill.uniform(3)),
    "c1-2-gf5r": lambda: construct1(2, field=make_field(5), fill=Fill.random(2)),
}


def test_generator_examples(code8):
    G = generator_from_check(code8.check)
    assert G.entries[0].tolist() == [1, 0, 0, 0, 1, 0, 1, 0]
    f2 = make_field(2)
    C = assemble_H(GfMatrix.zeros(f2, 2, 3), 0)
    assert generator_from_check(C).tolist() == [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]


@pytest.mark.parametrize("name", list(SMALL_CODES) + ["c1-5", "c2-3-gf7"])
def test_generator_orthogonal(name):
    code = {"c1-5": lambda: construct1(5), "c2-3-gf7": lambda: construct2(3, field=make_field(7), fill=Fill.random(0))}.get(
        name, SMALL_CODES.get(name)
    )()
    G = generator_from_check(code.check)
    assert not (G @ code.check.H.T).entries.any()


@pytest.mark.parametrize("name", SMALL_CODES)
def test_enumeration_matches_brute_force(name):
    C = SMALL_CODES[name]().check
    want = brute_distance(C)
    cert = min_distance_enumerate(C)
    assert cert.d == want
    assert np.count_nonzero(cert.witness) == want
    assert not (C.H @ GfMatrix(C.field, cert.witness[:, None])).entries.any()


@pytest.mark.parametrize("name", SMALL_CODES)
def test_subsets_match_naive_rank(name):
    C = SMALL_CODES[name]().check
    for w in range(1, 6):
        naive = brute_subsets_rank(C.H, w)
        cert = min_distance_subsets(C, w)
        assert cert.d == naive
        if cert.d is None:
            assert cert.lower_evidence == w
        else:
            assert cert.lower_evidence == cert.d - 1
            assert np.count_nonzero(cert.witness) == cert.d
            assert not (C.H @ GfMatrix(C.field, cert.witness[:, None])).entries.any()


def test_frozen_distances(code8, code14):
    assert min_distance_enumerate(code8.check).d == 3
    assert min_distance_enumerate(code14.check).d == 4
    c3 = construct1(3, field=make_field(3))
    assert min_distance_enumerate(c3.check).d == 4


def test_subset_examples(code8, code50):
    cert = min_distance_subsets(code50.check, 6)
    assert cert.d == 6
    f2 = make_field(2)
    Z = assemble_H(matrix(f2, [[0, 1], [0, 1]]), 0)
    assert min_distance_subsets(Z, 1).d == 1
    low = min_distance_subsets(code8.check, 2)
    assert low.d is None and low.lower_evidence == 2


def test_certify_examples(code8, code50):
    cert = certify_distance(code50.check, 6)
    assert cert.d == 6 and cert.method == "hybrid"
    assert np.count_nonzero(cert.witness) == 6
    assert cert.witness[:25].sum() == 1  # a generator row
    with pytest.raises(ClaimRefuted) as err:
        certify_distance(code8.check, 4)
    assert err.value.witness.tolist() == [1, 0, 0, 0, 1, 0, 1, 0]
    with pytest.raises(ClaimRefuted):
        certify_distance(code8.check, 2)
    with pytest.raises(ClaimRefuted):
        certify_distance(code50.check, 7)


def test_certify_upper_side_falls_back_to_subsets():
    # repetition-style code whose minimum-weight word is a 3-row combination
    f2 = make_field(2)
    P = matrix(f2, [[1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]])
    C = assemble_H(P, 3)
    d = brute_distance(C)
    cert = certify_distance(C, d)
    assert cert.d == d


def test_t_columns(code8, code50):
    assert check_t_columns_independent(code50.check, 5)
    assert check_t_columns_independent(code8.check, 1)
    assert not check_t_columns_independent(code8.check, 3)


def test_colexicographic_determinism_across_workers(code14):
    a = dependent_subset_search(code14.check.H, 5, workers=1)
    b = dependent_subset_search(code14.check.H, 5, workers=3)
    assert a == b
    e1 = min_distance_enumerate(code14.check, workers=1)
    e2 = min_distance_enumerate(code14.check, workers=2)
    assert e1.d == e2.d and np.array_equal(e1.witness, e2.witness)


def test_budgets(code50):
    with pytest.raises(BudgetExceeded):
        min_distance_enumerate(code50.check, cap=1 << 20)
    with pytest.raises(BudgetExceeded):
        min_distance_subsets(construct1(3, field=make_field(3)).check, 8, cap=1000)


@pytest.mark.parametrize("build,p", [(construct1, 2), (construct2, 2), (construct1, 3), (construct2, 3), (construct1, 5)])
def test_meet_in_middle_agrees_with_dfs(build, p):
    H = build(p).check.H
    cols = _column_vectors(H)
    for w in range(1, 7):
        if w == 6 and p == 5:
            continue
        got, want = _mitm_binary(cols, w), dependent_subset_search(H, w)
        assert (got is None) == (want is None)
        if got is not None:
            assert got[0] == want[0]
            assert GfMatrix(H.field, H.entries[:, list(got[1])]).rank() < got[0]


def test_mitm_used_beyond_cap(code50):
    # forcing a tiny cap routes the binary search through the collision method
    cap = 25_000  # above C(50,<=3), far below C(50,<=6)
    hit = dependent_subset_search(code50.check.H, 6, cap=cap)
    assert hit is not None and hit[0] == 6
    assert dependent_subset_search(code50.check.H, 5, cap=cap) is None
    with pytest.raises(BudgetExceeded):
        dependent_subset_search(code50.check.H, 6, cap=1000)


def test_t_columns_collision_route(code62):
    # binary and large: answered by the collision search rather than the walk
    assert check_t_columns_independent(code62.check, 6)
    assert not check_t_columns_independent(code62.check, 7)
    assert check_t_columns_independent(code62.check, 0)
