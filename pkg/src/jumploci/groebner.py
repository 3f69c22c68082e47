"""Groebner bases for submodules of free modules, with syzygies and lifts.

Vectors in a free module of rank r are sparse dicts mapping ``(component,
exponent_tuple)`` to a nonzero field scalar.  The module term order is
term-over-position: terms are compared first by the ring's weighted grevlex
key on the monomial, then by preferring smaller component index.

Syzygies and lifting are computed by the annihilator-column device: each
input column is augmented with a unit vector in a shadow block of
components, the shadow block ordered strictly below every real term.  Any
element whose real part reduces to zero then carries, in its shadow block,
a syzygy of the input columns; reducing an augmented inclusion ``v + 0``
to zero real part yields the coefficients expressing ``v`` in the columns.
For completeness of the syzygy generators, tracked runs process every
S-pair and apply no pair-discarding criteria.
"""

from __future__ import annotations

import heapq

from .poly import Polynomial, PolyRing
from .matrix import PolyMatrix


class GBStats:
    """Cumulative engine counters, reported when verbose mode is on."""

    pairs_processed = 0
    zero_reductions = 0
    basis_elements = 0

    @classmethod
    def snapshot(cls):
        return {"pairs_processed": cls.pairs_processed,
                "zero_reductions": cls.zero_reductions,
                "basis_elements": cls.basis_elements}

    @classmethod
    def reset(cls):
        cls.pairs_processed = 0
        cls.zero_reductions = 0
        cls.basis_elements = 0


def _vec_add(fld, a, b, coeff=None, shift=None):
    """a + coeff * x^shift * b, in place on a copy of a."""
    out = dict(a)
    for (comp, m), c in b.items():
        if shift is not None:
            m = tuple(x + y for x, y in zip(m, shift))
        if coeff is not None:
            c = fld.mul(c, coeff)
        s = fld.add(out.get((comp, m), fld.zero()), c)
        if s:
            out[(comp, m)] = s
        else:
            out.pop((comp, m), None)
    return out


def _vec_scale(fld, a, c):
    return {k: fld.mul(v, c) for k, v in a.items()}


class ModuleGB:
    """Groebner basis of the column span of a list of module vectors.

    ``track=True`` enables the shadow block, making :meth:`syzygies` and
    :meth:`lift` available at the cost of processing all S-pairs.
    """

    def __init__(self, ring: PolyRing, rank: int, columns, track: bool = False):
        self.ring = ring
        self.rank = rank
        self.ncols = len(columns)
        self.track = track
        self._syzygies = []
        seeded = []
        for i, col in enumerate(columns):
            v = dict(col)
            if track:
                v[(rank + i, (0,) * ring.nvars)] = ring.field.one()
            if any(comp < rank for (comp, _) in v):
                seeded.append(v)
            elif track:
                # zero column: its syzygy is a unit vector
                self._syzygies.append(v)
        self.basis = []
        self._run_buchberger(seeded)
        if not track:
            self._interreduce()

    # -- term order ------------------------------------------------------

    def _term_key(self, term):
        comp, mono = term
        return (self.ring.mono_key(mono), -comp)

    def _real_lead(self, v):
        best = None
        bk = None
        for term in v:
            if term[0] >= self.rank:
                continue
            k = self._term_key(term)
            if bk is None or k > bk:
                bk = k
                best = term
        return best

    # -- division --------------------------------------------------------

    def _reduce_full(self, v):
        """Full normal form of the real part; shadow terms ride along."""
        fld = self.ring.field
        v = dict(v)
        remainder = {}
        while True:
            lt = self._real_lead(v)
            if lt is None:
                break
            comp, mono = lt
            reducer = None
            for g, glead in self.basis:
                gc, gm = glead
                if gc == comp and all(a <= b for a, b in zip(gm, mono)):
                    reducer = (g, gm)
                    break
            if reducer is None:
                remainder[lt] = v.pop(lt)
                continue
            g, gm = reducer
            shift = tuple(a - b for a, b in zip(mono, gm))
            coeff = fld.neg(v[lt])  # basis elements are monic
            v = _vec_add(fld, v, g, coeff, shift)
        # remainder real terms plus surviving shadow terms
        for k, c in v.items():
            remainder[k] = c
        return remainder

    def _monic(self, v, lead):
        c = v[lead]
        if c == self.ring.field.one():
            return v
        return _vec_scale(self.ring.field, v, self.ring.field.inv(c))

    # -- Buchberger ------------------------------------------------------

    def _add_element(self, v, lead, pairs):
        idx = len(self.basis)
        self.basis.append((self._monic(v, lead), lead))
        GBStats.basis_elements += 1
        for j, (_, jlead) in enumerate(self.basis[:-1]):
            if jlead[0] != lead[0]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(jlead[1], lead[1]))
            if (not self.track and self.rank == 1
                    and all(a + b == l for a, b, l in
                            zip(jlead[1], lead[1], lcm))):
                continue  # coprime leads reduce to zero (rank-one only)
            heapq.heappush(pairs, (self.ring.mono_key(lcm), j, idx, lcm))

    def _run_buchberger(self, seeded):
        fld = self.ring.field
        pairs = []
        for v in seeded:
            w = self._reduce_full(v)
            lead = self._real_lead(w)
            if lead is None:
                self._record_zero(w)
            else:
                self._add_element(w, lead, pairs)
        while pairs:
            _, i, j, lcm = heapq.heappop(pairs)
            GBStats.pairs_processed += 1
            (gi, li), (gj, lj) = self.basis[i], self.basis[j]
            si = tuple(a - b for a, b in zip(lcm, li[1]))
            sj = tuple(a - b for a, b in zip(lcm, lj[1]))
            s = _vec_add(fld, {}, gi, fld.one(), si)
            s = _vec_add(fld, s, gj, fld.neg(fld.one()), sj)
            s = self._reduce_full(s)
            lead = self._real_lead(s)
            if lead is None:
                self._record_zero(s)
            else:
                self._add_element(s, lead, pairs)

    def _record_zero(self, v):
        GBStats.zero_reductions += 1
        if self.track:
            shadow = {k: c for k, c in v.items() if k[0] >= self.rank}
            if shadow:
                self._syzygies.append(shadow)

    def _interreduce(self):
        # drop elements whose lead is divisible by another lead, then
        # tail-reduce for a unique reduced basis
        keep = []
        for i, (g, lead) in enumerate(self.basis):
            redundant = False
            for j, (_, l2) in enumerate(self.basis):
                if i == j or lead[0] != l2[0]:
                    continue
                if all(a <= b for a, b in zip(l2[1], lead[1])):
                    if not all(a == b for a, b in zip(l2[1], lead[1])) or j < i:
                        redundant = True
                        break
            if not redundant:
                keep.append((g, lead))
        self.basis = []
        for g, lead in sorted(keep, key=lambda t: self._term_key(t[1])):
            tail = {k: c for k, c in g.items() if k != lead}
            saved = self.basis
            self.basis = [b for b in saved]
            red = self._reduce_full(tail)
            self.basis = saved
            red[lead] = g[lead]
            self.basis.append((red, lead))
        self.basis.sort(key=lambda t: self._term_key(t[1]), reverse=True)

    # -- public API ------------------------------------------------------

    def normal_form(self, v):
        """Remainder of ``v`` on division by the basis (real components)."""
        w = self._reduce_full({k: c for k, c in v.items() if k[0] < self.rank})
        return {k: c for k, c in w.items() if k[0] < self.rank}

    def contains(self, v) -> bool:
        return not self.normal_form(v)

    def lift(self, v):
        """Coefficients expressing ``v`` in the input columns, or None.

        Returns a list of polynomials, one per input column, with
        ``v = sum coeff_i * column_i``.
        """
        if not self.track:
            raise ValueError("lifting requires a tracked basis")
        w = self._reduce_full({k: c for k, c in v.items() if k[0] < self.rank})
        if any(k[0] < self.rank for k in w):
            return None
        return self._shadow_to_coeffs(w, negate=True)

    def syzygies(self):
        """Generators of the syzygy module of the input columns.

        Each syzygy is a list of polynomials of length ``ncols``.
        """
        if not self.track:
            raise ValueError("syzygies require a tracked basis")
        return [self._shadow_to_coeffs(s) for s in self._syzygies]

    def _shadow_to_coeffs(self, v, negate: bool = False):
        fld = self.ring.field
        per = [dict() for _ in range(self.ncols)]
        for (comp, m), c in v.items():
            if comp < self.rank:
                continue
            per[comp - self.rank][m] = fld.neg(c) if negate else c
        return [Polynomial(self.ring, t) for t in per]


# -- convenience builders -----------------------------------------------


def columns_of(mat: PolyMatrix):
    return mat.columns_as_vectors()


def vector_of(polys, ring: PolyRing):
    """Module vector from a list of polynomials (one per component)."""
    out = {}
    for comp, p in enumerate(polys):
        for m, c in p.terms.items():
            out[(comp, m)] = c
    return out


def coeffs_to_matrix(ring: PolyRing, coeff_lists, nrows: int) -> PolyMatrix:
    """Column-per-list matrix from lift/syzygy output."""
    entries = {}
    for c, lst in enumerate(coeff_lists):
        for r, p in enumerate(lst):
            if not p.is_zero():
                entries[(r, c)] = p
    return PolyMatrix(ring, nrows, len(coeff_lists), entries)


def syzygy_matrix(mat: PolyMatrix, extra_columns=None) -> PolyMatrix:
    """Syzygies of the columns of ``mat`` (plus optional extra columns).

    Returns a matrix K with mat @ K = 0 whose columns generate all
    syzygies.  ``extra_columns`` (module vectors) are appended after the
    matrix columns; the result keeps one row per column of the combined
    input.
    """
    cols = mat.columns_as_vectors()
    if extra_columns:
        cols = cols + list(extra_columns)
    gb = ModuleGB(mat.ring, mat.nrows, cols, track=True)
    return coeffs_to_matrix(mat.ring, gb.syzygies(), len(cols))


class Ideal:
    """Homogeneous or inhomogeneous ideal with a cached Groebner basis."""

    def __init__(self, ring: PolyRing, gens):
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self._gb = None

    def _basis(self) -> ModuleGB:
        if self._gb is None:
            self._gb = ModuleGB(self.ring, 1,
                                [vector_of([g], self.ring) for g in self.gens])
        return self._gb

    def groebner_generators(self):
        out = []
        for v, _ in self._basis().basis:
            terms = {m: c for (_, m), c in v.items()}
            out.append(Polynomial(self.ring, terms))
        return out

    def lead_monomials(self):
        return [lead[1] for _, lead in self._basis().basis]

    def reduced(self) -> "Ideal":
        """Same ideal, regenerated by its reduced Groebner basis."""
        return Ideal(self.ring, self.groebner_generators())

    def contains(self, p: Polynomial) -> bool:
        if p.is_zero():
            return True
        return self._basis().contains(vector_of([p], self.ring))

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.is_zero():
            return p
        w = self._basis().normal_form(vector_of([p], self.ring))
        return Polynomial(self.ring, {m: c for (_, m), c in w.items()})

    def is_unit_ideal(self) -> bool:
        return self.contains(self.ring.one())

    def is_zero_ideal(self) -> bool:
        return not self.gens

    def radical_contains(self, p: Polynomial) -> bool:
        """Membership in the radical, by the auxiliary-variable trick."""
        if p.is_zero():
            return True
        if self.is_unit_ideal():
            return True
        aux = self.ring.extend(_fresh_name(self.ring))
        var_map = list(range(self.ring.nvars))
        gens = [g.map_ring(aux, var_map) for g in self.gens]
        y = aux.gen(aux.nvars - 1)
        gens.append(aux.one() - y * p.map_ring(aux, var_map))
        return Ideal(aux, gens).is_unit_ideal()

    def radical_contains_ideal(self, other: "Ideal") -> bool:
        return all(self.radical_contains(g) for g in other.gens)

    def same_variety(self, other: "Ideal") -> bool:
        return (self.radical_contains_ideal(other)
                and other.radical_contains_ideal(self))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def product(self, other: "Ideal") -> "Ideal":
        """Generators g*h; cuts out the union of the two varieties."""
        if self.is_zero_ideal() or other.is_zero_ideal():
            return Ideal(self.ring, [])
        return Ideal(self.ring, [g * h for g in self.gens for h in other.gens])

    # -- Hilbert data ---------------------------------------------------

    def hilbert_numerator(self, weights=None):
        """Numerator of the Hilbert series of ring/ideal as dict deg -> int.

        The series is numerator / prod_i (1 - t^{w_i}).  Defaults to the
        ring weights; pass explicit weights to regrade.
        """
        if weights is None:
            weights = self.ring.weights
        leads = self.lead_monomials()
        memo = {}
        return _hilbert_num(_minimalize(leads), tuple(weights), memo)

    def dimension(self) -> int:
        """Krull dimension of ring/ideal (-1 for the unit ideal)."""
        if self.is_unit_ideal():
            return -1
        num = self.hilbert_numerator()
        return self.ring.nvars - _order_at_one(num)

    def multiplicity(self, weights=None) -> int:
        """Degree of ring/ideal: Q(1) where numerator = (1-t)^codim * Q.

        With all-one weights this is the standard multiplicity (total
        length when the dimension is zero).  Weighted denominators scale
        the answer, so callers wanting the classical count should regrade.
        """
        num = self.hilbert_numerator(weights)
        q = dict(num)
        while _eval_at_one(q) == 0 and any(q.values()):
            q = _divide_by_one_minus_t(q)
        return _eval_at_one(q)


def module_hilbert_data(mat: PolyMatrix, row_shifts=None, weights=None):
    """Hilbert data of coker(mat) as a graded module over mat.ring.

    ``row_shifts`` are integer degree shifts of the target generators in
    the chosen regrading; ``weights`` regrade the variables (defaults to
    the ring weights).  Returns ``(dimension, multiplicity, numerator)``;
    the zero module reports ``(-1, None, {})``.
    """
    ring = mat.ring
    if weights is None:
        weights = ring.weights
    if row_shifts is None:
        row_shifts = [0] * mat.nrows
    gb = ModuleGB(ring, mat.nrows, mat.columns_as_vectors())
    per_comp = {r: [] for r in range(mat.nrows)}
    for _, (comp, mono) in gb.basis:
        per_comp[comp].append(mono)
    memo = {}
    total = {}
    base = -min((s for s in row_shifts), default=0)
    base = max(base, 0)
    for r in range(mat.nrows):
        num = _hilbert_num(_minimalize(per_comp[r]), tuple(weights), memo)
        shift = row_shifts[r] + base
        for d, c in num.items():
            total[d + shift] = total.get(d + shift, 0) + c
            if not total[d + shift]:
                del total[d + shift]
    if not total:
        return (-1, None, {})
    dim = ring.nvars - _order_at_one(total)
    q = dict(total)
    while _eval_at_one(q) == 0:
        q = _divide_by_one_minus_t(q)
    return (dim, _eval_at_one(q), total)


def _fresh_name(ring: PolyRing) -> str:
    base = "t_rad"
    name = base
    i = 0
    while name in ring.variables:
        i += 1
        name = f"{base}{i}"
    return name


def _minimalize(monos):
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(all(a >= b for a, b in zip(m, g)) for g in out):
            out.append(m)
    return tuple(out)


def _hilbert_num(monos, weights, memo):
    """Hilbert series numerator for a monomial ideal, by colon recursion."""
    if not monos:
        return {0: 1}
    key = monos
    got = memo.get(key)
    if got is not None:
        return got
    rest, last = monos[:-1], monos[-1]
    n1 = _hilbert_num(_minimalize(rest), weights, memo)
    colon = tuple(tuple(max(a - b, 0) for a, b in zip(m, last)) for m in rest)
    n2 = _hilbert_num(_minimalize(colon), weights, memo)
    shift = sum(e * w for e, w in zip(last, weights))
    out = dict(n1)
    for d, c in n2.items():
        out[d + shift] = out.get(d + shift, 0) - c
        if not out[d + shift]:
            del out[d + shift]
    memo[key] = out
    return out


def _eval_at_one(num) -> int:
    return sum(num.values())


def _order_at_one(num) -> int:
    order = 0
    q = dict(num)
    while any(q.values()) and _eval_at_one(q) == 0:
        q = _divide_by_one_minus_t(q)
        order += 1
    return order


def _divide_by_one_minus_t(num):
    """Exact quotient num / (1 - t) for integer coefficient dicts."""
    if not num:
        return {}
    top = max(num)
    coeffs = [num.get(d, 0) for d in range(top + 1)]
    # (1 - t) * q = num  =>  q_d = num_d + q_{d-1}
    q = []
    carry = 0
    for d in range(top + 1):
        carry = coeffs[d] + carry
        q.append(carry)
    if q and q[-1] != 0:
        raise ArithmeticError("division by (1 - t) is not exact")
    return {d: c for d, c in enumerate(q[:-1]) if c}
