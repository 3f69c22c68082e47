"""Sparse polynomial matrices: minors, ranks, bihomogeneity."""

import random

from jumploci import GF, PolyRing
from jumploci.matrix import PolyMatrix

from conftest import matrix_of

GF101 = GF(101)
S2 = PolyRing(GF101, ("chi1", "chi2"), (2, 2))


def test_one_by_one_minors_are_entries():
    P = matrix_of(S2, [["chi1", "chi2"]])
    assert sorted(str(m) for m in P.minors(1)) == ["chi1", "chi2"]


def test_minors_beyond_shape_are_empty():
    P = matrix_of(S2, [["chi1", "chi2"]])
    assert P.minors(2) == []


def test_diagonal_two_by_two_minor():
    P = matrix_of(S2, [["chi1", "0"], ["0", "chi2"]])
    assert [str(m) for m in P.minors(2)] == ["chi1*chi2"]


def test_evaluate_and_rank_at_points():
    P = matrix_of(S2, [["chi1", "chi2"]])
    assert P.rank_at([1, 0]) == 1
    assert P.rank_at([0, 0]) == 0


def test_rank_matches_largest_nonvanishing_minor():
    """100 random points on random sparse 4x4 matrices."""
    rng = random.Random(7)
    monos = ["chi1", "chi2", "chi1^2", "chi1*chi2", "chi2^2", "0", "0"]
    for trial in range(5):
        rows = [[rng.choice(monos) for _ in range(4)] for _ in range(4)]
        P = matrix_of(S2, rows)
        minors = {t: P.minors(t) for t in range(1, 5)}
        for _ in range(20):
            a = [rng.randrange(101) for _ in range(2)]
            expected = 0
            for t in range(1, 5):
                if any(m.evaluate(a) != 0 for m in minors[t]):
                    expected = t
            assert P.rank_at(a) == expected


def test_generic_rank_certifies_evaluation_bound():
    P = matrix_of(S2, [["chi1", "chi2"], ["chi2", "chi1"]])
    assert P.generic_rank() == 2
    Q = matrix_of(S2, [["chi1", "chi2"], ["chi1", "chi2"]])
    assert Q.generic_rank() == 1


def test_composition_and_transpose():
    A = matrix_of(S2, [["chi1", "0"], ["chi2", "chi1"]])
    B = matrix_of(S2, [["chi2"], ["chi1"]])
    C = A @ B
    assert str(C.get(0, 0)) == "chi1*chi2"
    T = A.transpose()
    assert T.get(0, 1) == A.get(1, 0)


def test_bihomogeneity_contract():
    degs = [(0, 0), (1, 2)]
    M = PolyMatrix(S2, 2, 2, {(0, 1): S2.parse("chi1")}, degs, degs)
    # entry chi-degree must be (col coh) - (row coh) + 1 = 2
    assert M.is_bihomogeneous(coh_weights=S2.weights, coh_shift=1,
                              int_weights=(2, 2), int_shift=0)


def test_block_diag_shapes():
    A = matrix_of(S2, [["chi1"]])
    B = matrix_of(S2, [["chi2", "0"], ["0", "chi2"]])
    C = PolyMatrix.block_diag([A, B])
    assert (C.nrows, C.ncols) == (3, 3)
    assert str(C.get(0, 0)) == "chi1"
    assert str(C.get(2, 2)) == "chi2"
    assert C.get(0, 1).is_zero()
