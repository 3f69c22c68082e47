"""Cohomological jump loci, complexity, Betti degree and friends.

Every prime p of S assigns to a twisted complex X the cohomological rank
crk_p = r - 2 rank D(p); the jump locus V^i is the closed set where
crk >= i, cut out by the minor ideal I_t(D) with t = floor((r-i)/2) + 1.
A second route through the exterior-power Fitting ideal of coker(D) + its
shift expands I_{r-i+1}(D + D) by minor convolution; the two routes must
agree up to radical and are cross-checked on demand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .poly import Polynomial, PolyRing
from .matrix import PolyMatrix
from .groebner import Ideal, module_hilbert_data
from .resolution import (RingData, FreeResolution, PipelineError,
                         TruncationNeeded, resolve_over_b, BettiTable)
from .twisted import (TwistedComplex, minimalize, tbetti,
                      homology_presentation, s_dual, direct_sum,
                      koszul_object_list, free_complex)


class RouteDisagreement(AssertionError):
    """The fast dual route and the explicit dual route disagree."""


# -- cohomological rank ---------------------------------------------------


def crk_at(X: TwistedComplex, point=None, seed: int = 0) -> int:
    """crk at a closed point of k^c, or at the generic point when
    ``point`` is None."""
    if point is not None:
        if len(point) != X.S.nvars:
            raise PipelineError("point arity mismatch")
        return X.rank - 2 * X.D.rank_at(point)
    return X.rank - 2 * generic_rank_certified(X.D, seed)


def generic_rank_certified(D: PolyMatrix, seed: int = 0) -> int:
    """Exact generic rank; random evaluations give a certified lower bound."""
    rng = random.Random(seed)
    fld = D.ring.field
    bound = 0
    for _ in range(5):
        if fld.p:
            pt = [rng.randrange(fld.p) for _ in range(D.ring.nvars)]
        else:
            pt = [rng.randint(-50, 50) for _ in range(D.ring.nvars)]
        bound = max(bound, D.rank_at(pt))
    exact = D.generic_rank()
    if exact < bound:
        raise AssertionError("generic rank below evaluation lower bound")
    return exact


# -- jump locus ideals ----------------------------------------------------


def _unit_ideal(S: PolyRing) -> Ideal:
    return Ideal(S, [S.one()])


def _zero_ideal(S: PolyRing) -> Ideal:
    return Ideal(S, [])


def jump_locus_ideal(X: TwistedComplex, i: int, seed: int = 0,
                     generic_rank: int = None) -> Ideal:
    """I_t(D) with t = floor((r - i)/2) + 1; V^i = V(result)."""
    X = minimalize(X)
    S = X.S
    if i == 0:
        return _zero_ideal(S)
    if i < 0:
        raise PipelineError("jump index must be nonnegative")
    r = X.rank
    if i > r:
        return _unit_ideal(S)
    t = (r - i) // 2 + 1
    if t <= 0:
        return _unit_ideal(S)
    if generic_rank is None:
        generic_rank = generic_rank_certified(X.D, seed)
    if t > generic_rank:
        return _zero_ideal(S)
    gens = X.D.minors(t)
    return Ideal(S, gens).reduced()


def jump_locus_via_exterior_power(X: TwistedComplex, i: int,
                                  seed: int = 0) -> Ideal:
    """Fitting-ideal route: I_{r-i+1}(D + D) by minor convolution."""
    X = minimalize(X)
    S = X.S
    if i == 0:
        return _zero_ideal(S)
    r = X.rank
    if i > r:
        return _unit_ideal(S)
    s = r - i + 1
    if s <= 0:
        return _unit_ideal(S)
    g = generic_rank_certified(X.D, seed)
    if s > 2 * g:
        return _zero_ideal(S)
    minors_cache = {0: [S.one()]}
    for u in range(1, min(g, s) + 1):
        minors_cache[u] = X.D.minors(u)
    gens = []
    seen = set()
    for u in range(max(0, s - g), min(g, s) + 1):
        v = s - u
        for a in minors_cache.get(u, []):
            for b in minors_cache.get(v, []):
                p = (a * b).monic()
                if p not in seen:
                    seen.add(p)
                    gens.append(p)
    return Ideal(S, gens).reduced()


# -- reports --------------------------------------------------------------


@dataclass
class JumpLociReport:
    rank: int
    per_index: list         # (i, Ideal, dimension of V^i)
    jump_numbers: list
    crk_generic: int
    complexity: int
    betti_degree: int       # None when complexity is 0


def jump_loci_report(X: TwistedComplex, seed: int = 0) -> JumpLociReport:
    X = minimalize(X)
    S = X.S
    r = X.rank
    if r == 0:
        return JumpLociReport(0, [], [], 0, 0, None)
    g = generic_rank_certified(X.D, seed)
    crk_gen = r - 2 * g
    # only indices of the rank's parity can jump
    start = 2 if r % 2 == 0 else 1
    per_index = []
    ideals = {}
    for i in range(start, r + 1, 2):
        I = jump_locus_ideal(X, i, seed=seed, generic_rank=g)
        ideals[i] = I
        dim = I.dimension()
        per_index.append((i, I, dim))
    jump_numbers = []
    idx = sorted(ideals)
    for pos, i in enumerate(idx):
        nxt = ideals[idx[pos + 1]] if pos + 1 < len(idx) else _unit_ideal(S)
        if not ideals[i].same_variety(nxt):
            jump_numbers.append(i)
    cx = dimension_of_v1(ideals, r, S)
    bdeg = None
    if cx >= 1:
        bdeg = betti_degree(X, crk_generic=crk_gen, complexity=cx)
    return JumpLociReport(r, per_index, jump_numbers, crk_gen, cx, bdeg)


def dimension_of_v1(ideals, r, S) -> int:
    """dim V^1; by parity collapse V^1 = V^2 when the rank is even."""
    if not ideals:
        return -1
    i1 = min(ideals)
    return ideals[i1].dimension()


def complexity_of(X: TwistedComplex) -> int:
    """Krull dimension of H(X) = Ext, from its homology presentation."""
    mat, degs = homology_presentation(minimalize(X))
    if mat.nrows == 0:
        return 0
    dim, _, _ = module_hilbert_data(mat, [0] * mat.nrows,
                                    (1,) * X.S.nvars)
    return max(dim, 0) if dim >= 0 else 0


def betti_degree(X: TwistedComplex, crk_generic: int = None,
                 complexity: int = None, seed: int = 0) -> int:
    """Multiplicity of the even part of Ext in the degree-1 regrading.

    Cross-checked against the odd part, and against the generic crk when
    the complexity is maximal.
    """
    X = minimalize(X)
    S = X.S
    mat, degs = homology_presentation(X)
    if complexity is None:
        complexity = complexity_of(X)
    if complexity == 0:
        return None
    parts = {}
    for parity in (0, 1):
        rows = [idx for idx, (coh, _) in enumerate(degs)
                if coh % 2 == parity]
        if not rows:
            parts[parity] = 0
            continue
        row_set = set(rows)
        cols = []
        for j in range(mat.ncols):
            support = {rr for (rr, cc) in mat.entries if cc == j}
            if support and support <= row_set:
                cols.append(j)
        sub = mat.submatrix(rows, cols)
        shifts = [degs[idx][0] // 2 for idx in rows]
        dim, mult, _ = module_hilbert_data(sub, shifts, (1,) * S.nvars)
        # only the component of maximal dimension carries the multiplicity
        parts[parity] = mult if dim == complexity else 0
    e_even, e_odd = parts[0], parts[1]
    if e_even != e_odd:
        raise AssertionError(
            f"even/odd multiplicities disagree: {e_even} != {e_odd}")
    if complexity == S.nvars and crk_generic is not None:
        if 2 * e_even != crk_generic:
            raise AssertionError(
                "betti degree disagrees with the generic rank cross-check")
    return e_even


# -- duality and additivity ----------------------------------------------


@dataclass
class DualityReport:
    per_index_equal: list   # (i, bool)
    bdeg_equal: bool
    routes_agree: bool

    @property
    def all_equal(self) -> bool:
        return (self.bdeg_equal and self.routes_agree
                and all(ok for _, ok in self.per_index_equal))


def duality_check(X: TwistedComplex, X_dual_explicit: TwistedComplex,
                  seed: int = 0) -> DualityReport:
    """Compare jump data of X with both dual routes.

    ``X_dual_explicit`` is the twisted complex built from the dualized
    resolution and homotopy system; the fast route is s_dual(X).  A
    disagreement between the two dual routes raises RouteDisagreement.
    """
    Xm = minimalize(X)
    fast = minimalize(s_dual(Xm))
    explicit = minimalize(X_dual_explicit)
    r = max(Xm.rank, fast.rank, explicit.rank)
    per_index = []
    for i in range(1, r + 1):
        I = jump_locus_ideal(Xm, i, seed=seed)
        J_fast = jump_locus_ideal(fast, i, seed=seed)
        J_exp = jump_locus_ideal(explicit, i, seed=seed)
        if not J_fast.same_variety(J_exp):
            raise RouteDisagreement(
                f"dual routes disagree at jump index {i}")
        per_index.append((i, I.same_variety(J_fast)))
    cx = complexity_of(Xm)
    cx_dual = complexity_of(explicit)
    if cx == 0 and cx_dual == 0:
        bdeg_equal = True
    elif cx == 0 or cx_dual == 0:
        bdeg_equal = False
    else:
        bdeg_equal = (betti_degree(X, complexity=cx)
                      == betti_degree(explicit, complexity=cx_dual))
    return DualityReport(per_index, bdeg_equal, True)


def additivity_check(X: TwistedComplex, Y: TwistedComplex,
                     seed: int = 0) -> bool:
    """V^l(X + Y) = union over i+j=l of V^i(X) int V^j(Y), up to radical."""
    Z = minimalize(direct_sum(X, Y))
    S = Z.S
    top = Z.rank
    for l in range(1, top + 1):
        left = jump_locus_ideal(Z, l, seed=seed)
        rhs = None
        for i in range(0, l + 1):
            j = l - i
            term = (jump_locus_ideal(X, i, seed=seed)
                    + jump_locus_ideal(Y, j, seed=seed)).reduced()
            rhs = term if rhs is None else rhs.product(term).reduced()
        if not left.same_variety(rhs):
            return False
    return True


# -- realizability --------------------------------------------------------


def realize(S: PolyRing, chain, seed: int = 0):
    """Build a complex whose jump loci walk down the given chain.

    ``chain`` is a list of IdealS starting with the zero ideal (Spec S),
    strictly descending as varieties, ending with the unit ideal (empty
    set).  Returns (X, report, ok): for every proper chain member there
    must be a plateau of the report realizing it.
    """
    if not chain or not chain[0].is_zero_ideal():
        raise PipelineError("chain must start at the zero ideal (Spec S)")
    if not chain[-1].is_unit_ideal():
        raise PipelineError("chain must end at the unit ideal (empty set)")
    for a, b in zip(chain, chain[1:]):
        if not b.radical_contains_ideal(a):
            raise PipelineError("chain is not descending")
        if a.same_variety(b):
            raise PipelineError("chain is not strictly descending")
    middle = chain[1:-1]
    blocks = []
    # rank 2^nu with nu = 1: generators split across the two parities
    base = free_complex(S, 2, degrees=[(0, 0), (1, 0)])
    if not middle:
        blocks.append(base)
    for I in middle:
        blocks.append(koszul_object_list(base, I.gens))
    X = blocks[0]
    for Y in blocks[1:]:
        X = direct_sum(X, Y)
    report = jump_loci_report(X, seed=seed)
    # each proper chain member must appear as a plateau variety; the zero
    # ideal is always realized by V^0 = Spec S
    plateau_ideals = [ideal for (_, ideal, _) in report.per_index]
    ok = True
    for member in chain[:-1]:
        if member.is_zero_ideal():
            continue
        if not any(member.same_variety(p) for p in plateau_ideals):
            ok = False
    return X, report, ok


# -- stable Betti oracle --------------------------------------------------


def stable_betti_oracle(rd: RingData, presentation: PolyMatrix, a,
                        truncation: int = 12, cap: int = 40) -> int:
    """Stable Betti number of M over the hypersurface section at ``a``.

    Resolves M over A/(sum a_i f_i) and returns the stabilized value of
    the periodic tail, extending the truncation (doubling) up to ``cap``.
    """
    if len(a) != rd.c:
        raise PipelineError("point arity mismatch")
    fld = rd.ring.field
    fa = rd.ring.zero()
    for ai, f in zip(a, rd.ci):
        fa = fa + f.scale(fld.coerce(ai))
    if fa.is_zero():
        raise PipelineError("the section sum a_i f_i vanishes")
    rd_a = RingData(rd.ring, [fa])
    if not rd_a.is_regular_sequence():
        raise PipelineError("hypersurface section is a zerodivisor")
    N = truncation
    while True:
        res = resolve_over_b(rd_a, presentation, N)
        beta = res.betti()
        if res.complete:
            return 0
        tail = [beta.get(N - i, None) for i in range(3)]
        if None not in tail and len(set(tail)) == 1:
            return tail[0]
        if N >= cap:
            raise TruncationNeeded(
                "hypersurface resolution tail not stabilized")
        N = min(2 * N, cap)
