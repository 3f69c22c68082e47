"""Minimal graded free resolutions over A and over B = A/(f).

A is a weighted polynomial ring; B is its quotient by the declared
homogeneous elements f_1..f_c.  Resolutions over A are finite and built by
iterated syzygies, pruning each syzygy stage to a minimal generating set
(over a graded ring this yields the minimal resolution).  Resolutions over
B are truncated: an artinian B gets a fast pure-linear-algebra path over
the standard monomial basis, the general case emulates module arithmetic
over B inside A by adjoining the columns f_k e_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .poly import Polynomial, PolyRing
from .matrix import PolyMatrix, scalar_rank
from .groebner import (Ideal, ModuleGB, coeffs_to_matrix, vector_of)


class PipelineError(ValueError):
    """Domain-level rejection (bad ring data, failed precondition)."""


class TruncationNeeded(Exception):
    """Raised when a truncated tail is too short to determine the answer."""


class RingData:
    """The ambient ring A with the complete-intersection generators f."""

    def __init__(self, ring: PolyRing, ci):
        self.ring = ring
        self.ci = tuple(ci)
        for f in self.ci:
            if f.is_zero():
                raise PipelineError("ci generator is zero")
            if not f.is_homogeneous():
                raise PipelineError(f"ci generator {f} is inhomogeneous")
            if f.constant_term():
                raise PipelineError(f"ci generator {f} has a constant term")
        self._ci_ideal = None

    @property
    def n(self) -> int:
        return self.ring.nvars

    @property
    def c(self) -> int:
        return len(self.ci)

    @property
    def ci_degrees(self):
        return tuple(f.degree() for f in self.ci)

    def ci_ideal(self) -> Ideal:
        if self._ci_ideal is None:
            self._ci_ideal = Ideal(self.ring, list(self.ci))
        return self._ci_ideal

    def is_regular_sequence(self) -> bool:
        if self.c > self.n:
            return False
        return self.ci_ideal().dimension() == self.n - self.c

    def b_is_artinian(self) -> bool:
        return self.ci_ideal().dimension() == 0

    def operator_ring(self, names=None) -> PolyRing:
        """S = k[chi_1..chi_c], each operator of cohomological degree 2."""
        if names is None:
            names = tuple(f"chi{i + 1}" for i in range(self.c))
        return PolyRing(self.ring.field, tuple(names), (2,) * self.c)

    def quotient_columns(self, rank: int):
        """Module vectors f_k e_j, adjoined to emulate computations over B."""
        cols = []
        for f in self.ci:
            for j in range(rank):
                cols.append({(j, m): c for m, c in f.terms.items()})
        return cols


# -- graded bookkeeping --------------------------------------------------


def column_degree(ring: PolyRing, col, row_degrees) -> int:
    """Internal degree of a homogeneous module vector; asserts homogeneity."""
    degs = {ring.wdeg(m) + row_degrees[comp] for (comp, m) in col}
    if len(degs) != 1:
        raise PipelineError("inhomogeneous module column")
    return degs.pop()


def columns_to_matrix(ring: PolyRing, cols, nrows: int,
                      row_degrees, hom_index: int) -> PolyMatrix:
    """Matrix with per-column degrees inferred from the row degrees."""
    col_degs = [column_degree(ring, c, row_degrees) for c in cols]
    entries = {}
    for j, col in enumerate(cols):
        per_row = {}
        for (r, m), c in col.items():
            per_row.setdefault(r, {})[m] = c
        for r, terms in per_row.items():
            entries[(r, j)] = Polynomial(ring, terms)
    return PolyMatrix(ring, nrows, len(cols), entries,
                      [(hom_index - 1, d) for d in row_degrees],
                      [(hom_index, d) for d in col_degs])


def minimal_generator_columns(ring: PolyRing, rank: int, cols, row_degrees,
                              over_b: RingData = None):
    """Prune columns to a minimal generating set of their span.

    Processes candidates in ascending degree; a column is dropped when it
    lies in the span of the remaining ones (over B when ``over_b`` is
    given, by adjoining the f_k e_j columns).
    """
    cols = [c for c in cols if c]
    degs = [column_degree(ring, c, row_degrees) for c in cols]
    order = sorted(range(len(cols)), key=lambda j: (degs[j], j))
    kept = list(order)
    for j in order:
        others = [cols[i] for i in kept if i != j]
        test = others + (over_b.quotient_columns(rank) if over_b else [])
        if not test:
            continue
        gb = ModuleGB(ring, rank, test)
        if gb.contains(cols[j]):
            kept.remove(j)
    return [cols[i] for i in sorted(kept, key=lambda j: (degs[j], j))]


# -- resolutions ----------------------------------------------------------


@dataclass
class FreeResolution:
    ring_data: RingData
    over: str                    # "A" or "B"
    differentials: list          # d_1..d_L as PolyMatrix
    degrees: list                # internal degrees of F_0..F_L generators
    complete: bool               # kernel exhausted at the last stage
    truncation: int = None

    @property
    def length(self) -> int:
        return len(self.differentials)

    def betti(self) -> dict:
        return {i: len(d) for i, d in enumerate(self.degrees)}

    def is_minimal(self) -> bool:
        return all(not p.constant_term()
                   for d in self.differentials for p in d.entries.values())

    def check_complex(self) -> bool:
        return all((self.differentials[i] @ self.differentials[i + 1]).is_zero()
                   for i in range(self.length - 1))


def presentation_from_rows(ring: PolyRing, rows, row_degrees=None) -> PolyMatrix:
    if row_degrees is None:
        row_degrees = [0] * len(rows)
    mat = PolyMatrix.from_rows(ring, rows)
    mat.row_degrees = [(0, d) for d in row_degrees]
    return mat


def split_unit_entries(cols, rank: int, row_degrees, field):
    """Cancel constant entries of a presentation by Schur complements.

    Returns pruned columns, surviving row indices and their degrees; the
    cokernel is unchanged.
    """
    cols = [dict(c) for c in cols]
    live_rows = list(range(rank))
    zero_mono = None
    while True:
        unit = None
        for j, col in enumerate(cols):
            for (r, m), c in col.items():
                if all(e == 0 for e in m):
                    unit = (j, r, c, m)
                    zero_mono = m
                    break
            if unit:
                break
        if unit is None:
            break
        j, r, u, _ = unit
        pivot_col = cols[j]
        inv = field.inv(u)
        for jj, col in enumerate(cols):
            if jj == j:
                continue
            coeff = col.get((r, zero_mono))
            if coeff is None:
                continue
            factor = field.neg(field.mul(coeff, inv))
            for key, c in pivot_col.items():
                s = field.add(col.get(key, field.zero()), field.mul(factor, c))
                if s:
                    col[key] = s
                else:
                    col.pop(key, None)
        cols.pop(j)
        for col in cols:
            for key in [k for k in col if k[0] == r]:
                del col[key]
        live_rows.remove(r)
    # compress row indices
    remap = {r: i for i, r in enumerate(live_rows)}
    out = [{(remap[r], m): c for (r, m), c in col.items()} for col in cols]
    return out, live_rows, [row_degrees[r] for r in live_rows]


def resolve_over_a(rd: RingData, presentation: PolyMatrix) -> FreeResolution:
    """Finite minimal graded free resolution of coker(presentation) over A."""
    ring = rd.ring
    row_degrees = [d[1] for d in (presentation.row_degrees
                                  or [(0, 0)] * presentation.nrows)]
    cols = presentation.columns_as_vectors()
    cols, _, row_degrees = split_unit_entries(cols, presentation.nrows,
                                              row_degrees, ring.field)
    rank = len(row_degrees)
    cols = minimal_generator_columns(ring, rank, cols, row_degrees)
    degrees = [list(row_degrees)]
    diffs = []
    hom = 1
    while cols:
        if hom > rd.n + 1:
            raise AssertionError("resolution over A exceeded the ring dimension")
        mat = columns_to_matrix(ring, cols, rank, degrees[-1], hom)
        diffs.append(mat)
        degrees.append([d[1] for d in mat.col_degrees])
        gb = ModuleGB(ring, rank, cols, track=True)
        syz = [vector_of(s, ring) for s in gb.syzygies()]
        syz = [s for s in syz if s]
        rank = len(cols)
        cols = minimal_generator_columns(ring, rank, syz, degrees[-1])
        hom += 1
    return FreeResolution(rd, "A", diffs, degrees, complete=True)


def check_annihilation(rd: RingData, presentation: PolyMatrix):
    """Verify f_i . coker(presentation) = 0; raise naming the offender."""
    cols = presentation.columns_as_vectors()
    gb = ModuleGB(rd.ring, presentation.nrows, cols) if cols else None
    for i, f in enumerate(rd.ci):
        for j in range(presentation.nrows):
            v = {(j, m): c for m, c in f.terms.items()}
            if gb is None or not gb.contains(v):
                raise PipelineError(
                    f"f_{i + 1} = {f} does not annihilate the module")


def resolve_over_b(rd: RingData, presentation: PolyMatrix,
                   truncation: int) -> FreeResolution:
    """Minimal B-free resolution through homological degree ``truncation``."""
    if truncation < 1:
        raise PipelineError("truncation bound must be >= 1")
    check_annihilation(rd, presentation)
    ring = rd.ring
    row_degrees = [d[1] for d in (presentation.row_degrees
                                  or [(0, 0)] * presentation.nrows)]
    cols = presentation.columns_as_vectors()
    cols, _, row_degrees = split_unit_entries(cols, presentation.nrows,
                                              row_degrees, ring.field)
    nf = rd.ci_ideal().normal_form
    cols = [_reduce_column(c, nf, ring) for c in cols]
    cols = [c for c in cols if c]
    if rd.b_is_artinian():
        return _resolve_artinian(rd, cols, row_degrees, truncation)
    return _resolve_over_b_gb(rd, cols, row_degrees, truncation)


def _reduce_column(col, nf, ring):
    per_row = {}
    for (r, m), c in col.items():
        per_row.setdefault(r, {})[m] = c
    out = {}
    for r, terms in per_row.items():
        p = nf(Polynomial(ring, terms))
        for m, c in p.terms.items():
            out[(r, m)] = c
    return out


def _resolve_over_b_gb(rd, cols, row_degrees, truncation):
    ring = rd.ring
    rank = len(row_degrees)
    cols = minimal_generator_columns(ring, rank, cols, row_degrees, over_b=rd)
    nf = rd.ci_ideal().normal_form
    degrees = [list(row_degrees)]
    diffs = []
    complete = not cols
    for hom in range(1, truncation + 1):
        if not cols:
            complete = True
            break
        mat = columns_to_matrix(ring, cols, rank, degrees[-1], hom)
        diffs.append(mat)
        degrees.append([d[1] for d in mat.col_degrees])
        ncols = len(cols)
        gb = ModuleGB(ring, rank, cols + rd.quotient_columns(rank), track=True)
        projected = []
        for s in gb.syzygies():
            v = _reduce_column(vector_of(s[:ncols], ring), nf, ring)
            if v:
                projected.append(v)
        rank = ncols
        cols = minimal_generator_columns(ring, rank, projected, degrees[-1],
                                         over_b=rd)
    return FreeResolution(rd, "B", diffs, degrees, complete,
                          truncation=truncation)


# -- artinian fast path ---------------------------------------------------


def _standard_monomials(rd: RingData):
    """Monomial k-basis of the artinian quotient B, with degrees."""
    ring = rd.ring
    leads = rd.ci_ideal().lead_monomials()
    out = []
    stack = [(0,) * ring.nvars]
    seen = {stack[0]}
    while stack:
        m = stack.pop()
        if any(all(a >= b for a, b in zip(m, l)) for l in leads):
            continue
        out.append(m)
        for i in range(ring.nvars):
            m2 = tuple(e + (1 if j == i else 0) for j, e in enumerate(m))
            if m2 not in seen:
                seen.add(m2)
                stack.append(m2)
    out.sort(key=ring.mono_key)
    return out


def _resolve_artinian(rd, cols, row_degrees, truncation):
    ring = rd.ring
    fld = ring.field
    nf = rd.ci_ideal().normal_form
    std = _standard_monomials(rd)
    std_index = {m: i for i, m in enumerate(std)}
    std_deg = [ring.wdeg(m) for m in std]

    def expand(col, tgt_degrees, want_deg):
        """Coordinates of a reduced column in the (row, std monomial) basis."""
        vec = {}
        for (r, m), c in col.items():
            vec[(r, std_index[m])] = c
        return vec

    def mult_column(col, mono):
        out = {}
        per_row = {}
        for (r, m), c in col.items():
            mm = tuple(a + b for a, b in zip(m, mono))
            per_row.setdefault(r, {})[mm] = c
        for r, terms in per_row.items():
            p = nf(Polynomial(ring, terms))
            for m, c in p.terms.items():
                out[(r, m)] = c
        return out

    rank = len(row_degrees)
    cols = minimal_generator_columns(ring, rank, cols, row_degrees, over_b=rd)
    degrees = [list(row_degrees)]
    diffs = []
    complete = not cols
    for hom in range(1, truncation + 1):
        if not cols:
            complete = True
            break
        mat = columns_to_matrix(ring, cols, rank, degrees[-1], hom)
        diffs.append(mat)
        col_degrees = [d[1] for d in mat.col_degrees]
        degrees.append(col_degrees)
        # kernel of F_hom -> F_{hom-1} by degree stratum
        dom_basis = []
        for j, cd in enumerate(col_degrees):
            for s, m in enumerate(std):
                dom_basis.append((j, s, cd + std_deg[s]))
        strata = sorted({d for _, _, d in dom_basis})
        kernel_by_deg = {}
        for d in strata:
            basis_d = [(j, s) for j, s, dd in dom_basis if dd == d]
            if not basis_d:
                continue
            images = []
            for j, s in basis_d:
                img = mult_column(cols[j], std[s])
                images.append(expand(img, degrees[-2], d))
            null = _nullspace_sparse(images, fld)
            if null:
                kernel_by_deg[d] = (basis_d, null)
        # minimal generators: quotient each stratum by B_+ . K
        new_cols = []
        kernel_vectors = {}   # degree -> list of coordinate dicts over (j, s)
        for d in strata:
            got = kernel_by_deg.get(d)
            vecs = []
            if got:
                basis_d, null = got
                for nv in null:
                    vecs.append({basis_d[t]: c for t, c in nv.items()})
            kernel_vectors[d] = vecs
        for d in strata:
            vecs = kernel_vectors[d]
            if not vecs:
                continue
            shifted = []
            for i in range(ring.nvars):
                w = ring.weights[i]
                mono = tuple(1 if t == i else 0 for t in range(ring.nvars))
                for prev in kernel_vectors.get(d - w, []):
                    col = _coords_to_column(prev, std, ring)
                    moved = mult_column(col, mono)
                    shifted.append({(j, std_index[m]): c
                                    for (j, m), c in moved.items()})
            reps = _complement_basis(vecs, shifted, fld)
            for rep in reps:
                new_cols.append(_coords_to_column(rep, std, ring))
        rank = len(cols)
        cols = new_cols
    return FreeResolution(rd, "B", diffs, degrees, complete,
                          truncation=truncation)


def _coords_to_column(coords, std, ring):
    out = {}
    for (j, s), c in coords.items():
        out[(j, std[s])] = c
    return out


def _nullspace_sparse(images, fld):
    """Null space of the map sending basis vector t to images[t] (dict)."""
    keys = sorted({k for img in images for k in img}, key=str)
    kidx = {k: i for i, k in enumerate(keys)}
    nr = len(keys)
    nc = len(images)
    rows = [[fld.zero()] * nc for _ in range(nr)]
    for t, img in enumerate(images):
        for k, c in img.items():
            rows[kidx[k]][t] = c
    return _nullspace_dense(rows, nc, fld)


def _nullspace_dense(rows, nc, fld):
    m = [list(r) for r in rows]
    nr = len(m)
    pivots = {}
    pr = 0
    for pc in range(nc):
        piv = None
        for r in range(pr, nr):
            if m[r][pc]:
                piv = r
                break
        if piv is None:
            continue
        m[pr], m[piv] = m[piv], m[pr]
        inv = fld.inv(m[pr][pc])
        m[pr] = [fld.mul(x, inv) for x in m[pr]]
        for r in range(nr):
            if r != pr and m[r][pc]:
                f = m[r][pc]
                m[r] = [fld.sub(a, fld.mul(f, b)) for a, b in zip(m[r], m[pr])]
        pivots[pc] = pr
        pr += 1
    free = [c for c in range(nc) if c not in pivots]
    out = []
    for fc in free:
        vec = {fc: fld.one()}
        for pc, r in pivots.items():
            v = fld.neg(m[r][fc])
            if v:
                vec[pc] = v
        out.append(vec)
    return out


def _complement_basis(vectors, span, fld):
    """Representatives of span(vectors) modulo span(span)."""
    keys = sorted({k for v in vectors for k in v}
                  | {k for v in span for k in v}, key=str)
    kidx = {k: i for i, k in enumerate(keys)}
    n = len(keys)

    basis = []  # reduced echelon rows as dicts idx -> coeff, with pivot

    def reduce_vec(dense):
        for pivot, row in basis:
            c = dense.get(pivot)
            if c:
                for i, v in row.items():
                    s = fld.sub(dense.get(i, fld.zero()), fld.mul(c, v))
                    if s:
                        dense[i] = s
                    else:
                        dense.pop(i, None)
        return dense

    def insert(dense):
        dense = reduce_vec(dense)
        if not dense:
            return False
        pivot = min(dense)
        inv = fld.inv(dense[pivot])
        dense = {i: fld.mul(c, inv) for i, c in dense.items()}
        basis.append((pivot, dense))
        basis.sort(key=lambda t: t[0])
        return True

    for v in span:
        insert({kidx[k]: c for k, c in v.items()})
    reps = []
    for v in vectors:
        if insert({kidx[k]: c for k, c in v.items()}):
            reps.append(v)
    return reps


# -- dualization over A ---------------------------------------------------


@dataclass
class DualComplex:
    """Hom_A(F, A) with degrees negated, shifted so it resolves the dual."""

    matrices: list        # delta_1..delta_L of the reversed complex
    degrees: list         # degrees of H_0..H_L (negated, reversed)
    shift: int            # cohomological shift c - L
    presentation: PolyMatrix = None   # of the dual module, when concentrated
    concentrated: bool = False


def dualize_over_a(res: FreeResolution) -> DualComplex:
    rd = res.ring_data
    L = res.length
    ring = rd.ring
    matrices = []
    degrees = [[-d for d in res.degrees[L - j]] for j in range(L + 1)]
    for j in range(1, L + 1):
        t = res.differentials[L - j].transpose()
        t.row_degrees = [(j - 1, d) for d in degrees[j - 1]]
        t.col_degrees = [(j, d) for d in degrees[j]]
        matrices.append(t)
    concentrated = _check_concentration(res)
    pres = None
    if concentrated and L >= 1:
        pres = res.differentials[L - 1].transpose()
        pres.row_degrees = [(0, -d) for d in res.degrees[L]]
        pres.col_degrees = [(1, -d) for d in res.degrees[L - 1]]
    return DualComplex(matrices, degrees, rd.c - L, pres, concentrated)


def _check_concentration(res: FreeResolution) -> bool:
    """True when Hom_A(F, A) is exact except at the final spot."""
    ring = res.ring_data.ring
    L = res.length
    from .groebner import syzygy_matrix
    for j in range(L):
        up = res.differentials[j].transpose()     # maps F_j^* -> F_{j+1}^*
        syz = syzygy_matrix(up)
        if j == 0:
            if syz.ncols != 0:
                return False
            continue
        down = res.differentials[j - 1].transpose()
        gb = ModuleGB(ring, down.nrows, down.columns_as_vectors())
        for col in syz.columns_as_vectors():
            if not gb.contains(col):
                return False
    return True


# -- Betti tables and quasi-polynomial tails -------------------------------


@dataclass
class BettiTable:
    over: str
    beta: dict

    @classmethod
    def of(cls, res: FreeResolution) -> "BettiTable":
        return cls(res.over, res.betti())


@dataclass
class QuasiPoly:
    """Period-2 quasi-polynomial: separate even and odd branch polynomials."""

    q_ev: tuple          # Fraction coefficients, ascending powers
    q_odd: tuple
    valid_from: int

    def eval(self, i: int) -> Fraction:
        coeffs = self.q_ev if i % 2 == 0 else self.q_odd
        return sum((c * Fraction(i) ** e for e, c in enumerate(coeffs)),
                   Fraction(0))

    @property
    def degree(self) -> int:
        return max(len(self.q_ev), len(self.q_odd)) - 1

    def leading_coefficient(self) -> Fraction:
        return self.q_ev[-1] if self.q_ev else Fraction(0)


def _interpolate(points):
    """Coefficients (ascending) of the poly through (x, y) pairs, exact."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            denom *= Fraction(xi - xj)
            new = [Fraction(0)] * (len(basis) + 1)
            for e, c in enumerate(basis):
                new[e] -= c * xj
                new[e + 1] += c
            basis = new
        scale = Fraction(yi) / denom
        for e, c in enumerate(basis):
            coeffs[e] += c * scale
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs == [Fraction(0)]:
        return ()
    return tuple(coeffs)


def _fit_branch(points):
    """Least-degree polynomial fitting a stable tail of the points.

    Returns (coeffs, valid_from); raises TruncationNeeded when no degree
    is confirmed by at least two extra points.
    """
    if not points:
        raise TruncationNeeded("empty tail")
    for d in range(0, len(points) - 2):
        coeffs = _interpolate(points[-(d + 1):])
        poly = lambda x: sum((c * Fraction(x) ** e
                              for e, c in enumerate(coeffs)), Fraction(0))
        tail_ok = all(poly(x) == y for x, y in points[-(d + 3):])
        if not tail_ok:
            continue
        valid_from = points[-1][0]
        for x, y in reversed(points):
            if poly(x) == y:
                valid_from = x
            else:
                break
        return coeffs, valid_from
    raise TruncationNeeded("tail is not yet quasi-polynomial")


def fit_quasi_polynomial(betti: BettiTable, window: int) -> QuasiPoly:
    """Fit the even/odd tails of a Betti sequence by exact interpolation."""
    idx = sorted(betti.beta)
    if len(idx) < window:
        raise TruncationNeeded("window exceeds available Betti numbers")
    tail = idx[-window:]
    ev = [(i, betti.beta[i]) for i in tail if i % 2 == 0]
    od = [(i, betti.beta[i]) for i in tail if i % 2 == 1]
    q_ev, v_ev = _fit_branch(ev)
    q_odd, v_odd = _fit_branch(od)
    deg_ev = len(q_ev) - 1 if q_ev else -1
    deg_odd = len(q_odd) - 1 if q_odd else -1
    if (q_ev or q_odd) and (deg_ev != deg_odd or
                            (q_ev and q_odd and q_ev[-1] != q_odd[-1])):
        raise TruncationNeeded("even and odd branches disagree in degree")
    return QuasiPoly(q_ev, q_odd, max(v_ev, v_odd))


def resolution_euler_numerator(res: FreeResolution):
    """Alternating sum of generator-degree monomials, as dict deg -> int."""
    out = {}
    for i, degs in enumerate(res.degrees):
        s = 1 if i % 2 == 0 else -1
        for d in degs:
            out[d] = out.get(d, 0) + s
            if not out[d]:
                del out[d]
    return out
