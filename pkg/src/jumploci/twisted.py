"""Twisted complexes: finite free dg modules over the operator ring S.

The twisted complex of a module M is Hom_A(F, k) tensored with
S = k[chi_1..chi_c], with differential D = sum over J of (sigma_J reduced
modulo the irrelevant ideal) tensor chi^J, including sigma_empty = d.  The
basis consists of the duals of the free generators of F; the basis entry
for a generator of F_t in internal degree a is recorded as the pair
(t, a), and every entry of D in position (row i, col j) is bihomogeneous
with chi-degree colcoh_j - rowcoh_i + 1 (chi_i has cohomological weight 2)
and internal degree colint_j - rowint_i (chi_i has the internal degree of
f_i).

Duality is plain transposition with all basis degrees negated; this
preserves D^2 = 0 and the degree contract and is the fixed sign
convention used module-wide.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Polynomial, PolyRing
from .matrix import PolyMatrix
from .groebner import ModuleGB, coeffs_to_matrix, vector_of
from .resolution import RingData, FreeResolution, PipelineError
from .homotopy import HigherHomotopySystem


@dataclass
class TwistedComplex:
    S: PolyRing
    basis_degrees: list        # per generator: (cohomological, internal)
    D: PolyMatrix              # square of size rank, over S
    chi_internal: tuple = None  # internal degrees of the chi variables

    @property
    def rank(self) -> int:
        return len(self.basis_degrees)

    def verify(self):
        if (self.D.nrows, self.D.ncols) != (self.rank, self.rank):
            raise AssertionError("differential shape mismatch")
        if not (self.D @ self.D).is_zero():
            raise AssertionError("twisted differential does not square to zero")
        self.D.row_degrees = list(self.basis_degrees)
        self.D.col_degrees = list(self.basis_degrees)
        if not self.D.is_bihomogeneous(coh_weights=self.S.weights,
                                       coh_shift=1,
                                       int_weights=self.chi_internal,
                                       int_shift=0):
            raise AssertionError("twisted differential is not bihomogeneous")
        return self

    def is_minimal(self) -> bool:
        return all(not p.constant_term() for p in self.D.entries.values())


def build_twisted_complex(res: FreeResolution, sys: HigherHomotopySystem,
                          rd: RingData, S: PolyRing = None) -> TwistedComplex:
    """Assemble D = sum_J (sigma_J mod m)^T chi^J on the duals of F."""
    if sys.resolution is not res:
        if [m.entries for m in sys.resolution.differentials] != \
                [m.entries for m in res.differentials]:
            raise PipelineError("homotopy system is not carried by F")
    if S is None:
        S = rd.operator_ring()
    ranks = [len(d) for d in res.degrees]
    L = res.length
    index = {}
    basis = []
    for t in range(L + 1):
        for a, deg in enumerate(res.degrees[t]):
            index[(t, a)] = len(basis)
            basis.append((t, deg))
    entries = {}

    def add_block(mat, t, m, chi_mono):
        # mat: F_t -> F_{t+m}; contributes columns at the duals of F_{t+m}
        for (b, a), p in mat.entries.items():
            c0 = p.constant_term()
            if not c0:
                continue
            row = index[(t, a)]
            col = index[(t + m, b)]
            key = (row, col)
            term = S.monomial(chi_mono, c0)
            entries[key] = entries.get(key, S.zero()) + term

    for t in range(1, L + 1):
        add_block(res.differentials[t - 1], t, -1, (0,) * S.nvars)
    for J, blocks in sys.sigma.items():
        m = 2 * sum(J) - 1
        for t, mat in blocks.items():
            add_block(mat, t, m, J)
    entries = {k: v for k, v in entries.items() if not v.is_zero()}
    D = PolyMatrix(S, len(basis), len(basis), entries, basis, basis)
    return TwistedComplex(S, basis, D, rd.ci_degrees).verify()


def minimalize(X: TwistedComplex) -> TwistedComplex:
    """Split off all entries with nonzero constant term by Gaussian
    cancellation of basis pairs; jump-locus data is unchanged."""
    fld = X.S.field
    entries = {k: v for k, v in X.D.entries.items()}
    live = list(range(X.rank))
    while True:
        unit = None
        for (p, q), poly in sorted(entries.items()):
            u = poly.constant_term()
            if u:
                unit = (p, q, u)
                break
        if unit is None:
            break
        p, q, u = unit
        inv_entries = {}
        col_q = {r: poly for (r, cc), poly in entries.items() if cc == q}
        row_p = {cc: poly for (r, cc), poly in entries.items() if r == p}
        inv = fld.inv(u)
        for r, a in col_q.items():
            if r == p:
                continue
            for cc, b in row_p.items():
                if cc == q:
                    continue
                delta = (a * b).scale(fld.neg(inv))
                key = (r, cc)
                s = entries.get(key, X.S.zero()) + delta
                if s.is_zero():
                    entries.pop(key, None)
                else:
                    entries[key] = s
        entries = {(r, cc): poly for (r, cc), poly in entries.items()
                   if r not in (p, q) and cc not in (p, q)}
        live = [i for i in live if i not in (p, q)]
    remap = {old: new for new, old in enumerate(live)}
    new_entries = {(remap[r], remap[c]): poly
                   for (r, c), poly in entries.items()}
    degs = [X.basis_degrees[i] for i in live]
    D = PolyMatrix(X.S, len(live), len(live), new_entries, degs, degs)
    return TwistedComplex(X.S, degs, D, X.chi_internal).verify()


def tbetti(X: TwistedComplex) -> int:
    return minimalize(X).rank


def homology_presentation(X: TwistedComplex):
    """Presentation of H(X) over S: (matrix, generator degree pairs).

    Generators are the kernel cycles of D; relations express the columns
    of D in the cycle generators together with the syzygies among the
    cycles.
    """
    S = X.S
    r = X.rank
    gb_d = ModuleGB(S, r, X.D.columns_as_vectors(), track=True)
    cycles = [vector_of(s, S) for s in gb_d.syzygies()]
    cycles = [c for c in cycles if c]
    if not cycles:
        return (PolyMatrix.zero(S, 0, 0), [])
    gen_degrees = []
    for cyc in cycles:
        degs = set()
        for (comp, m) in cyc:
            coh, intd = X.basis_degrees[comp]
            extra_int = (sum(e * w for e, w in zip(m, X.chi_internal))
                         if X.chi_internal else 0)
            degs.add((coh + S.wdeg(m), intd + extra_int))
        if len(degs) != 1:
            raise AssertionError("inhomogeneous homology generator")
        gen_degrees.append(degs.pop())
    gb_z = ModuleGB(S, r, cycles, track=True)
    relations = []
    for j in range(X.D.ncols):
        col = {}
        for (rr, cc), p in X.D.entries.items():
            if cc == j:
                for m, co in p.terms.items():
                    col[(rr, m)] = co
        if not col:
            continue
        coeffs = gb_z.lift(col)
        if coeffs is None:
            raise AssertionError("boundary does not lie in the cycle span")
        relations.append(coeffs)
    relations.extend(gb_z.syzygies())
    mat = coeffs_to_matrix(S, relations, len(cycles))
    mat.row_degrees = list(gen_degrees)
    return (mat, gen_degrees)


def s_dual(X: TwistedComplex) -> TwistedComplex:
    degs = [(-a, -b) for (a, b) in X.basis_degrees]
    D = X.D.transpose()
    D.row_degrees = list(degs)
    D.col_degrees = list(degs)
    return TwistedComplex(X.S, degs, D, X.chi_internal).verify()


def direct_sum(X: TwistedComplex, Y: TwistedComplex) -> TwistedComplex:
    if X.S != Y.S:
        raise PipelineError("direct sum over different operator rings")
    D = PolyMatrix.block_diag([X.D, Y.D])
    degs = list(X.basis_degrees) + list(Y.basis_degrees)
    D.row_degrees = list(degs)
    D.col_degrees = list(degs)
    chi_int = X.chi_internal or Y.chi_internal
    return TwistedComplex(X.S, degs, D, chi_int).verify()


def shift(X: TwistedComplex, s: int) -> TwistedComplex:
    degs = [(a + s, b) for (a, b) in X.basis_degrees]
    D = PolyMatrix(X.S, X.rank, X.rank, dict(X.D.entries), degs, degs)
    return TwistedComplex(X.S, degs, D, X.chi_internal).verify()


def koszul_object(X: TwistedComplex, eta: Polynomial) -> TwistedComplex:
    """Kos^S(eta) tensor X: the cone on multiplication by eta."""
    S = X.S
    if eta.ring != S:
        raise PipelineError("Koszul element lives in the wrong ring")
    if not eta.is_homogeneous():
        raise PipelineError("Koszul element must be homogeneous")
    w = eta.degree()
    if w >= 0 and w % 2 != 0:
        raise PipelineError("Koszul element must have even degree")
    int_shift = 0
    if X.chi_internal and not eta.is_zero():
        int_shift = {sum(e * wi for e, wi in zip(m, X.chi_internal))
                     for m in eta.terms}.pop()
    r = X.rank
    entries = {}
    for (i, j), p in X.D.entries.items():
        entries[(i, j)] = p
        entries[(r + i, r + j)] = -p
    if not eta.is_zero():
        for i in range(r):
            entries[(i, r + i)] = eta
    shift_coh = (w - 1) if w >= 0 else 1
    degs = list(X.basis_degrees) + [(a + shift_coh, b + int_shift)
                                    for (a, b) in X.basis_degrees]
    D = PolyMatrix(S, 2 * r, 2 * r, entries, degs, degs)
    return TwistedComplex(S, degs, D, X.chi_internal).verify()


def koszul_object_list(X: TwistedComplex, etas) -> TwistedComplex:
    for eta in etas:
        X = koszul_object(X, eta)
    return X


def free_complex(S: PolyRing, rank: int, chi_internal=None,
                 degrees=None) -> TwistedComplex:
    """Rank-r complex with zero differential (e.g. the residue-field model)."""
    degs = degrees if degrees is not None else [(0, 0)] * rank
    return TwistedComplex(S, list(degs),
                          PolyMatrix.zero(S, rank, rank, degs, degs),
                          chi_internal).verify()
