"""Resolutions over the polynomial ring and its quotients, duals, tails."""

from fractions import Fraction

import pytest

from jumploci import GF, PolyRing
from jumploci.resolution import (RingData, PipelineError, TruncationNeeded,
                                 presentation_from_rows, resolve_over_a,
                                 resolve_over_b, dualize_over_a, BettiTable,
                                 fit_quasi_polynomial,
                                 resolution_euler_numerator)

from conftest import matrix_of

GF101 = GF(101)


def _pres(ring, entries):
    return presentation_from_rows(ring, [[ring.parse(e) for e in entries]])


# -- over the polynomial ring ----------------------------------------------


def test_residue_field_gets_koszul_resolution():
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^2"), A.parse("y^2")])
    res = resolve_over_a(rd, _pres(A, ["x", "y"]))
    assert res.betti() == {0: 1, 1: 2, 2: 1}
    assert res.is_minimal() and res.check_complex()


def test_free_module_resolves_in_length_zero():
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^2"), A.parse("y^2")])
    pres = presentation_from_rows(A, [[]])
    res = resolve_over_a(rd, pres)
    assert res.length == 0
    assert res.betti() == {0: 1}


def test_flag_module_total_rank(flag_pipeline):
    rd, pres, res, sys, X = flag_pipeline
    assert sum(res.betti().values()) == 16
    assert res.betti() == {0: 1, 1: 5, 2: 7, 3: 3}
    assert res.is_minimal() and res.check_complex()


def test_euler_characteristic_reproduces_hilbert_numerator(flag_pipeline):
    """Alternating sum of generator degrees equals the numerator of the
    Hilbert series of the module (free-resolution Euler characteristic)."""
    rd, pres, res, sys, X = flag_pipeline
    from jumploci.groebner import Ideal
    A = rd.ring
    I = Ideal(A, [A.parse(e) for e in
                  ("x^3", "y^3", "z^3", "x*z", "y*z^2")])
    assert resolution_euler_numerator(res) == I.hilbert_numerator()


# -- over the quotient ring ------------------------------------------------


def test_final_module_betti_numbers(final_pipeline):
    rd, pres, res, sys, X = final_pipeline
    res_b = resolve_over_b(rd, pres, 8)
    beta = res_b.betti()
    assert beta[4] == 7 and beta[5] == 9 and beta[6] == 10
    assert beta[0] == 1 and beta[1] == 3


def test_dual_of_final_module_betti_numbers(final_pipeline):
    rd, pres, res, sys, X = final_pipeline
    dc = dualize_over_a(res)
    assert dc.concentrated and dc.presentation is not None
    res_b = resolve_over_b(rd, dc.presentation, 6)
    beta = res_b.betti()
    assert beta[0] == 2 and beta[4] == 8 and beta[5] == 9


def test_quotient_ring_is_free_over_itself():
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^3"), A.parse("y^3")])
    res = resolve_over_b(rd, _pres(A, ["x^3", "y^3"]), 5)
    assert res.complete
    assert res.betti() == {0: 1}


def test_annihilation_precondition_names_the_offender():
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^3"), A.parse("y^3")])
    with pytest.raises(PipelineError, match="f_1"):
        resolve_over_b(rd, _pres(A, ["x^4"]), 4)


# -- duals -----------------------------------------------------------------


def test_koszul_complex_is_self_dual():
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^2"), A.parse("y^2")])
    res = resolve_over_a(rd, _pres(A, ["x", "y"]))
    dc = dualize_over_a(res)
    assert dc.concentrated
    assert [m.nrows for m in dc.matrices] == [1, 2]
    for j, mat in enumerate(dc.matrices):
        assert mat.entries == res.differentials[res.length - 1 - j] \
            .transpose().entries


def test_dual_of_final_module_has_length_three():
    """The annihilator dual in the artinian quotient has length 3."""
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^3"), A.parse("y^3")])
    pres = _pres(A, ["x^2", "x*y", "y^2"])
    res = resolve_over_a(rd, pres)
    dc = dualize_over_a(res)
    assert dc.concentrated
    from jumploci.groebner import module_hilbert_data
    mat = dc.presentation
    dim, mult, num = module_hilbert_data(
        mat, [d[1] for d in mat.row_degrees], A.weights)
    assert (dim, mult) == (0, 3)


# -- regular sequences -----------------------------------------------------


def test_regular_sequence_detection():
    A = PolyRing(GF101, ("x", "y"))
    assert RingData(A, [A.parse("x^3"), A.parse("y^3")]).is_regular_sequence()
    assert not RingData(A, [A.parse("x^2*y"),
                            A.parse("x*y^2")]).is_regular_sequence()
    A1 = PolyRing(GF101, ("x",))
    assert RingData(A1, [A1.parse("x")]).is_regular_sequence()


# -- quasi-polynomial tails ------------------------------------------------


def test_fit_final_example_tail():
    beta = {4: 7, 5: 9, 6: 10, 7: 12, 8: 13, 9: 15, 10: 16, 11: 18,
            12: 19, 13: 21}
    qp = fit_quasi_polynomial(BettiTable("B", beta), 10)
    assert qp.q_ev == (Fraction(1), Fraction(3, 2))
    assert qp.q_odd == (Fraction(3, 2), Fraction(3, 2))


def test_fit_constant_tail():
    beta = {i: 2 for i in range(8)}
    qp = fit_quasi_polynomial(BettiTable("B", beta), 8)
    assert qp.q_ev == (Fraction(2),) and qp.q_odd == (Fraction(2),)
    assert qp.degree == 0


def test_fit_zero_tail():
    beta = {i: 0 for i in range(8)}
    qp = fit_quasi_polynomial(BettiTable("B", beta), 8)
    assert qp.q_ev == () and qp.q_odd == ()


def test_fit_rejects_unstable_tail():
    beta = {i: 2 ** i for i in range(8)}
    with pytest.raises(TruncationNeeded):
        fit_quasi_polynomial(BettiTable("B", beta), 8)
