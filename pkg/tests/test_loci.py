"""Jump loci, complexity, Betti/Bass degrees, duality, realizability."""

import random

import pytest

from jumploci import GF, PolyRing
from jumploci.groebner import Ideal
from jumploci.resolution import (RingData, presentation_from_rows,
                                 resolve_over_a, dualize_over_a,
                                 PipelineError)
from jumploci.homotopy import compute_higher_homotopies, dualize_homotopies
from jumploci.twisted import (build_twisted_complex, minimalize, tbetti,
                              free_complex, koszul_object_list, direct_sum)
from jumploci.loci import (crk_at, jump_locus_ideal,
                           jump_locus_via_exterior_power, jump_loci_report,
                           complexity_of, betti_degree, duality_check,
                           additivity_check, realize, stable_betti_oracle)

from conftest import matrix_of, random_monomial_rows

GF101 = GF(101)


def _b_module_pipeline():
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^2"), A.parse("y^2")])
    pres = presentation_from_rows(A, [[A.parse("x^2"), A.parse("y^2")]])
    res = resolve_over_a(rd, pres)
    sys = compute_higher_homotopies(res, rd)
    return rd, build_twisted_complex(res, sys, rd)


# -- cohomological rank ----------------------------------------------------


def test_crk_examples(nonregular_action, koszul_action):
    rd, res, sys, X = nonregular_action
    assert crk_at(X, None) == 2
    assert crk_at(X, [0, 0]) == 4
    rd2, res2, sys2, K = koszul_action
    assert crk_at(K, [17, 85]) == 4
    S = K.S
    from jumploci.twisted import TwistedComplex
    from jumploci.matrix import PolyMatrix
    degs = [(0, 0), (1, 0)]
    cone = TwistedComplex(S, degs,
                          PolyMatrix(S, 2, 2, {(1, 0): S.one()}, degs, degs),
                          K.chi_internal)
    assert crk_at(cone, [4, 4]) == 0 and crk_at(cone, None) == 0


# -- jump locus ideals -----------------------------------------------------


def test_jump_ideals_of_quotient_ring_module():
    rd, X = _b_module_pipeline()
    S = X.S
    chi = Ideal(S, [S.parse("chi1"), S.parse("chi2")])
    assert jump_locus_ideal(X, 1).same_variety(chi)
    assert jump_locus_ideal(X, 4).same_variety(chi)
    assert jump_locus_ideal(X, 5).is_unit_ideal()
    assert jump_locus_ideal(X, 0).is_zero_ideal()


def test_jump_ideals_of_nonregular_model(nonregular_action):
    rd, res, sys, X = nonregular_action
    S = X.S
    chi = Ideal(S, [S.parse("chi1"), S.parse("chi2")])
    assert jump_locus_ideal(X, 3).same_variety(chi)
    assert jump_locus_ideal(X, 2).is_zero_ideal()
    assert jump_locus_ideal(X, 5).is_unit_ideal()


def test_flag_jump_ideals(flag_pipeline):
    rd, pres, res, sys, X = flag_pipeline
    S = X.S
    assert jump_locus_ideal(X, 9).same_variety(Ideal(S, [S.parse("chi2")]))
    assert jump_locus_ideal(X, 13).same_variety(
        Ideal(S, [S.parse("chi1"), S.parse("chi2")]))
    assert jump_locus_ideal(X, 15).same_variety(
        Ideal(S, [S.parse("chi1"), S.parse("chi2"), S.parse("chi3")]))
    assert jump_locus_ideal(X, 17).is_unit_ideal()


def test_two_routes_agree_on_fixtures(nonregular_action, koszul_action):
    for X in (nonregular_action[3], koszul_action[3],
              _b_module_pipeline()[1]):
        r = minimalize(X).rank
        for i in range(1, r + 2):
            a = jump_locus_ideal(X, i)
            b = jump_locus_via_exterior_power(X, i)
            assert a.same_variety(b), (i, [str(g) for g in a.gens],
                                       [str(g) for g in b.gens])


def test_two_routes_agree_on_random_minimal_matrices():
    rng = random.Random(41)
    S = PolyRing(GF(5), ("chi1", "chi2"), (2, 2))
    from jumploci.twisted import TwistedComplex
    from jumploci.matrix import PolyMatrix
    monos = ["chi1", "chi2", "0", "0"]
    for _ in range(4):
        degs = [(0, 0), (0, 0), (1, 2), (1, 2)]
        entries = {}
        for r in (0, 1):
            for c in (2, 3):
                m = rng.choice(monos)
                if m != "0":
                    entries[(r, c)] = S.parse(m)
        D = PolyMatrix(S, 4, 4, entries, degs, degs)
        if not (D @ D).is_zero():
            continue
        X = TwistedComplex(S, degs, D, (2, 2))
        for i in range(1, 6):
            assert jump_locus_ideal(X, i).same_variety(
                jump_locus_via_exterior_power(X, i))


# -- reports ---------------------------------------------------------------


def test_report_of_koszul_action(koszul_action):
    rd, res, sys, X = koszul_action
    rep = jump_loci_report(X)
    assert rep.rank == 4
    assert rep.jump_numbers == [4]
    assert all(I.is_zero_ideal() for _, I, _ in rep.per_index)
    assert rep.complexity == 2 and rep.betti_degree == 2


def test_report_of_nonregular_action(nonregular_action):
    rd, res, sys, X = nonregular_action
    rep = jump_loci_report(X)
    assert rep.jump_numbers == [2, 4]
    assert rep.complexity == 2
    assert rep.crk_generic == 2


def test_flag_report(flag_pipeline):
    rd, pres, res, sys, X = flag_pipeline
    rep = jump_loci_report(X)
    assert rep.jump_numbers == [8, 12, 14, 16]
    assert rep.complexity == 3
    assert rep.betti_degree == 4
    assert rep.jump_numbers[-1] == tbetti(X)
    dims = {i: d for i, _, d in rep.per_index}
    assert dims[8] == 3 and dims[12] == 2 and dims[14] == 1 and dims[16] == 0


def test_first_jump_even_and_last_is_tbetti(final_pipeline):
    rd, pres, res, sys, X = final_pipeline
    rep = jump_loci_report(X)
    assert rep.jump_numbers[0] % 2 == 0
    assert rep.jump_numbers[-1] == tbetti(X)


# -- complexity and degrees ------------------------------------------------


def test_complexity_examples(flag_pipeline, final_pipeline):
    assert complexity_of(flag_pipeline[4]) == 3
    assert complexity_of(final_pipeline[4]) == 2
    assert complexity_of(_b_module_pipeline()[1]) == 0


def test_betti_degree_examples(flag_pipeline, final_pipeline, koszul_action):
    assert betti_degree(flag_pipeline[4]) == 4
    assert betti_degree(final_pipeline[4]) == 3
    assert betti_degree(koszul_action[3]) == 2
    assert betti_degree(_b_module_pipeline()[1]) is None


def test_bass_degree_via_dual_pipeline(final_pipeline, flag_pipeline):
    for pipeline, expected in ((final_pipeline, 3), (flag_pipeline, 4)):
        rd, pres, res, sys, X = pipeline
        dc = dualize_over_a(res)
        dual_sys = dualize_homotopies(sys, dc, rd)
        X_dual = build_twisted_complex(dual_sys.resolution, dual_sys, rd,
                                       S=X.S)
        assert betti_degree(X_dual) == expected


# -- duality ---------------------------------------------------------------


def _explicit_dual(pipeline):
    rd, pres, res, sys, X = pipeline
    dc = dualize_over_a(res)
    dual_sys = dualize_homotopies(sys, dc, rd)
    return build_twisted_complex(dual_sys.resolution, dual_sys, rd, S=X.S)


def test_duality_on_final_example(final_pipeline):
    report = duality_check(final_pipeline[4], _explicit_dual(final_pipeline))
    assert report.all_equal


def test_duality_on_nonregular_model(nonregular_action):
    rd, res, sys, X = nonregular_action
    dc = dualize_over_a(res)
    dual_sys = dualize_homotopies(sys, dc, rd)
    X_dual = build_twisted_complex(dual_sys.resolution, dual_sys, rd, S=X.S)
    assert duality_check(X, X_dual).all_equal


def test_duality_on_random_monomial_modules():
    rng = random.Random(13)
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^3"), A.parse("y^3")])
    done = 0
    while done < 3:
        gens = random_monomial_rows(rng)
        pres = presentation_from_rows(
            A, [[A.monomial(m) for m in gens]])
        res = resolve_over_a(rd, pres)
        sys = compute_higher_homotopies(res, rd)
        X = build_twisted_complex(res, sys, rd)
        dc = dualize_over_a(res)
        dual_sys = dualize_homotopies(sys, dc, rd)
        X_dual = build_twisted_complex(dual_sys.resolution, dual_sys, rd,
                                       S=X.S)
        assert duality_check(X, X_dual).all_equal
        done += 1


# -- additivity ------------------------------------------------------------


def test_additivity_doubles(nonregular_action):
    X = nonregular_action[3]
    assert additivity_check(X, X)


def test_additivity_with_contractible_summand(koszul_action):
    X = koszul_action[3]
    from jumploci.twisted import TwistedComplex
    from jumploci.matrix import PolyMatrix
    S = X.S
    degs = [(0, 0), (1, 0)]
    cone = TwistedComplex(S, degs,
                          PolyMatrix(S, 2, 2, {(1, 0): S.one()}, degs, degs),
                          X.chi_internal)
    assert additivity_check(X, cone)


def test_additivity_on_random_koszul_objects():
    rng = random.Random(29)
    S = PolyRing(GF(5), ("chi1", "chi2"), (2, 2))
    base = free_complex(S, 2, degrees=[(0, 0), (1, 0)])
    for _ in range(3):
        ga = S.monomial((rng.randrange(1, 3), rng.randrange(0, 2)))
        gb = S.monomial((rng.randrange(0, 2), rng.randrange(1, 3)))
        X = koszul_object_list(base, [ga])
        Y = koszul_object_list(base, [gb])
        assert additivity_check(X, Y)


# -- realizability ---------------------------------------------------------


def test_realize_two_variable_chain():
    S = PolyRing(GF101, ("chi1", "chi2"), (2, 2))
    chain = [Ideal(S, []), Ideal(S, [S.parse("chi1")]), Ideal(S, [S.one()])]
    X, rep, ok = realize(S, chain)
    assert ok


def test_realize_trivial_chain():
    S = PolyRing(GF101, ("chi1", "chi2"), (2, 2))
    chain = [Ideal(S, []), Ideal(S, [S.one()])]
    X, rep, ok = realize(S, chain)
    assert ok
    assert rep.jump_numbers[0] == 2  # first plateau covers the free rank


def test_realize_three_variable_chain():
    S = PolyRing(GF101, ("chi1", "chi2", "chi3"), (2, 2, 2))
    chain = [Ideal(S, []),
             Ideal(S, [S.parse("chi1")]),
             Ideal(S, [S.parse("chi1"), S.parse("chi2")]),
             Ideal(S, [S.one()])]
    X, rep, ok = realize(S, chain)
    assert ok
    plateau_varieties = [I for _, I, _ in rep.per_index]
    for member in chain[1:-1]:
        assert any(member.same_variety(I) for I in plateau_varieties)


def test_realize_rejects_bad_chains():
    S = PolyRing(GF101, ("chi1", "chi2"), (2, 2))
    with pytest.raises(PipelineError):
        realize(S, [Ideal(S, [S.parse("chi1")]), Ideal(S, [S.one()])])
    with pytest.raises(PipelineError):
        realize(S, [Ideal(S, []), Ideal(S, [S.parse("chi1")])])
    with pytest.raises(PipelineError):
        realize(S, [Ideal(S, []), Ideal(S, [S.parse("chi1")]),
                    Ideal(S, [S.parse("chi2")]), Ideal(S, [S.one()])])


# -- stable Betti oracle ---------------------------------------------------


def test_oracle_vanishes_on_perfect_module():
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^2"), A.parse("y^2")])
    pres = presentation_from_rows(A, [[A.parse("x^2"), A.parse("y^2")]])
    assert stable_betti_oracle(rd, pres, (1, 1)) == 0


def test_oracle_rejects_vanishing_section():
    A = PolyRing(GF101, ("x", "y"))
    rd = RingData(A, [A.parse("x^2"), A.parse("y^2")])
    pres = presentation_from_rows(A, [[A.parse("x")]])
    with pytest.raises(PipelineError):
        stable_betti_oracle(rd, pres, (0, 0))


def test_oracle_is_half_of_crk(final_pipeline):
    """The periodic tail rank of the hypersurface resolution is exactly
    half of the cohomological rank at the same point, on every sample."""
    rd, pres, res, sys, X = final_pipeline
    rng = random.Random(2)
    for _ in range(6):
        a = [rng.randrange(101), rng.randrange(101)]
        if not any(a):
            continue
        assert 2 * stable_betti_oracle(rd, pres, a) == crk_at(X, a)
