"""Sparse matrices over a polynomial ring, with bigraded bookkeeping.

Row and column degrees are (cohomological, internal) pairs.  A matrix
representing a graded map of bidegree ``(coh_shift, int_shift)`` satisfies,
for every stored entry ``P[r, c]``::

    cohdeg(entry) = colcoh[c] - rowcoh[r] + coh_shift
    intdeg(entry) = colint[c] - rowint[r] + int_shift

where the two degrees of a polynomial are measured against per-variable
weight vectors supplied by the caller (for the operator ring S the
cohomological weight of every variable is 2; for the base ring A the
internal weights are the declared variable weights).

The determinantal kernel enumerates structurally nonzero minors only: the
matrix is split into connected components, candidate row/column subsets are
generated through systems of distinct representatives, and determinants are
expanded by memoized Laplace expansion shared across all subsets.
"""

from __future__ import annotations

from .poly import Polynomial, PolyRing


class PolyMatrix:
    __slots__ = ("ring", "nrows", "ncols", "entries", "row_degrees", "col_degrees")

    def __init__(self, ring: PolyRing, nrows: int, ncols: int, entries=None,
                 row_degrees=None, col_degrees=None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (r, c), p in entries.items():
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise IndexError("entry out of range")
                if isinstance(p, Polynomial) and not p.is_zero():
                    self.entries[(r, c)] = p
        self.row_degrees = list(row_degrees) if row_degrees is not None else None
        self.col_degrees = list(col_degrees) if col_degrees is not None else None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, ring: PolyRing, rows, row_degrees=None, col_degrees=None):
        """Build from a list of lists of polynomials (or parseable strings)."""
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
            for c, p in enumerate(row):
                if isinstance(p, str):
                    p = ring.parse(p)
                elif not isinstance(p, Polynomial):
                    p = ring.const(p)
                if not p.is_zero():
                    entries[(r, c)] = p
        return cls(ring, nrows, ncols, entries, row_degrees, col_degrees)

    @classmethod
    def identity(cls, ring: PolyRing, n: int, scalar=None, degrees=None):
        p = ring.one() if scalar is None else scalar
        return cls(ring, n, n, {(i, i): p for i in range(n)},
                   degrees, degrees)

    @classmethod
    def zero(cls, ring: PolyRing, nrows: int, ncols: int,
             row_degrees=None, col_degrees=None):
        return cls(ring, nrows, ncols, {}, row_degrees, col_degrees)

    # -- basic access ---------------------------------------------------

    def get(self, r: int, c: int) -> Polynomial:
        return self.entries.get((r, c), self.ring.zero())

    def column(self, c: int) -> dict:
        return {r: p for (r, cc), p in self.entries.items() if cc == c}

    def columns_as_vectors(self):
        """Each column as {(component, monomial): coeff} over free module rows."""
        cols = [dict() for _ in range(self.ncols)]
        for (r, c), p in self.entries.items():
            for m, co in p.terms.items():
                cols[c][(r, m)] = co
        return cols

    def to_rows(self):
        return [[self.get(r, c) for c in range(self.ncols)]
                for r in range(self.nrows)]

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.ring == other.ring
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.entries == other.entries)

    def __repr__(self):
        return f"<PolyMatrix {self.nrows}x{self.ncols}, {len(self.entries)} entries>"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for k, p in other.entries.items():
            s = out.get(k)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return PolyMatrix(self.ring, self.nrows, self.ncols, out,
                          self.row_degrees, self.col_degrees)

    def __sub__(self, other):
        return self + other.scale(self.ring.const(-1))

    def scale(self, p: Polynomial):
        if isinstance(p, (int,)) or not isinstance(p, Polynomial):
            p = self.ring.const(p)
        return PolyMatrix(self.ring, self.nrows, self.ncols,
                          {k: v * p for k, v in self.entries.items()},
                          self.row_degrees, self.col_degrees)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("composition shape mismatch")
        by_row = {}
        for (r, c), p in other.entries.items():
            by_row.setdefault(r, []).append((c, p))
        out = {}
        for (r, k), p in self.entries.items():
            for c, q in by_row.get(k, ()):
                s = out.get((r, c))
                s = p * q if s is None else s + p * q
                if s.is_zero():
                    out.pop((r, c), None)
                else:
                    out[(r, c)] = s
        return PolyMatrix(self.ring, self.nrows, other.ncols, out,
                          self.row_degrees, other.col_degrees)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.ncols, self.nrows,
                          {(c, r): p for (r, c), p in self.entries.items()},
                          self.col_degrees, self.row_degrees)

    def submatrix(self, rows, cols) -> "PolyMatrix":
        rows = list(rows)
        cols = list(cols)
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: i for i, c in enumerate(cols)}
        out = {}
        for (r, c), p in self.entries.items():
            if r in rmap and c in cmap:
                out[(rmap[r], cmap[c])] = p
        rd = [self.row_degrees[r] for r in rows] if self.row_degrees else None
        cd = [self.col_degrees[c] for c in cols] if self.col_degrees else None
        return PolyMatrix(self.ring, len(rows), len(cols), out, rd, cd)

    @staticmethod
    def block_diag(blocks):
        ring = blocks[0].ring
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        out = {}
        rd, cd = [], []
        r0 = c0 = 0
        have_deg = all(b.row_degrees is not None and b.col_degrees is not None
                       for b in blocks)
        for b in blocks:
            for (r, c), p in b.entries.items():
                out[(r0 + r, c0 + c)] = p
            if have_deg:
                rd.extend(b.row_degrees)
                cd.extend(b.col_degrees)
            r0 += b.nrows
            c0 += b.ncols
        return PolyMatrix(ring, nrows, ncols, out,
                          rd if have_deg else None, cd if have_deg else None)

    # -- grading --------------------------------------------------------

    def is_bihomogeneous(self, coh_weights=None, int_weights=None,
                         coh_shift: int = 0, int_shift: int = 0) -> bool:
        """Check the degree contract stated in the module docstring."""
        def wdeg_set(p, w):
            return {sum(e * wi for e, wi in zip(m, w)) for m in p.terms}
        for (r, c), p in self.entries.items():
            for weights, shift, idx in (
                    (coh_weights, coh_shift, 0), (int_weights, int_shift, 1)):
                if weights is None:
                    continue
                degs = wdeg_set(p, weights)
                if len(degs) != 1:
                    return False
                expected = (self.col_degrees[c][idx] - self.row_degrees[r][idx]
                            + shift)
                if degs.pop() != expected:
                    return False
        return True

    # -- evaluation and rank --------------------------------------------

    def evaluate(self, point):
        """Substitute scalars for the ring variables; dense scalar matrix."""
        if len(point) != self.ring.nvars:
            raise ValueError("point arity mismatch")
        fld = self.ring.field
        rows = [[fld.zero()] * self.ncols for _ in range(self.nrows)]
        for (r, c), p in self.entries.items():
            rows[r][c] = p.evaluate(point)
        return rows

    def rank_at(self, point) -> int:
        return scalar_rank(self.evaluate(point), self.ring.field)

    def generic_rank(self) -> int:
        """Rank over the fraction field, by fraction-free Gaussian elimination."""
        work = {k: p for k, p in self.entries.items()}
        prev = self.ring.one()
        rank = 0
        live_rows = set(r for r, _ in work)
        live_cols = set(c for _, c in work)
        while work:
            (pr, pc) = min(work, key=lambda k: (len(work[k].terms), k))
            pivot = work[pr, pc]
            rank += 1
            live_rows.discard(pr)
            live_cols.discard(pc)
            col_entries = {r: work[r, pc] for r in live_rows if (r, pc) in work}
            row_entries = {c: work[pr, c] for c in live_cols if (pr, c) in work}
            nxt = {}
            for (r, c), a in work.items():
                if r == pr or c == pc:
                    continue
                b = col_entries.get(r)
                d = row_entries.get(c)
                num = pivot * a
                if b is not None and d is not None:
                    num = num - b * d
                if not num.is_zero():
                    nxt[(r, c)] = num.exact_divide(prev)
            # fill-in where a was zero but b*d is not
            for r, b in col_entries.items():
                for c, d in row_entries.items():
                    if (r, c) not in work:
                        num = -(b * d)
                        nxt[(r, c)] = num.exact_divide(prev)
            work = nxt
            prev = pivot
            live_rows = set(r for r, _ in work)
            live_cols = set(c for _, c in work)
        return rank

    # -- minors ----------------------------------------------------------

    def minors(self, t: int):
        """All structurally nonzero t x t minors, monic, deduplicated.

        Deterministic output order.  Connected components of the support
        graph are processed independently and recombined by minor products
        (a minor meeting several components factors block-diagonally).
        """
        if t < 1:
            raise ValueError("minor size must be >= 1")
        if t > min(self.nrows, self.ncols):
            return []
        comps = self._components()
        per_comp = []
        for rows, cols in comps:
            cap = min(len(rows), len(cols), t)
            sizes = {}
            for s in range(1, cap + 1):
                ms = _component_minors(self, rows, cols, s)
                if ms:
                    sizes[s] = ms
            per_comp.append(sizes)
        # DP convolution over components
        acc = {0: [self.ring.one()]}
        for sizes in per_comp:
            nxt = {}
            for got, polys in acc.items():
                # size-0 contribution from this component
                nxt.setdefault(got, []).extend(polys)
                for s, ms in sizes.items():
                    if got + s > t:
                        continue
                    bucket = nxt.setdefault(got + s, [])
                    for p in polys:
                        for q in ms:
                            bucket.append(p * q)
            acc = {k: _dedupe_monic(v) for k, v in nxt.items()}
        return acc.get(t, [])

    def _components(self):
        """Connected components of the bipartite support graph."""
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for (r, c) in self.entries:
            for node in (("r", r), ("c", c)):
                parent.setdefault(node, node)
            union(("r", r), ("c", c))
        comps = {}
        for (r, c) in self.entries:
            root = find(("r", r))
            rows, cols = comps.setdefault(root, (set(), set()))
            rows.add(r)
            cols.add(c)
        return [comps[k] for k in sorted(comps, key=str)]


def _dedupe_monic(polys):
    seen = set()
    out = []
    for p in polys:
        if p.is_zero():
            continue
        p = p.monic()
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _component_minors(mat: PolyMatrix, rows, cols, t: int):
    """t x t minors within one connected component, via SDR enumeration."""
    cols = sorted(cols)
    rows = sorted(rows)
    col_support = {c: sorted(r for r in rows if (r, c) in mat.entries)
                   for c in cols}
    det_memo = {}
    ring = mat.ring

    def det(rset, ctup):
        if not ctup:
            return ring.one()
        key = (rset, ctup)
        got = det_memo.get(key)
        if got is not None:
            return got
        c0 = ctup[0]
        rest = ctup[1:]
        srows = sorted(rset)
        total = ring.zero()
        for i, r in enumerate(srows):
            p = mat.entries.get((r, c0))
            if p is None:
                continue
            sub = det(rset - {r}, rest)
            if sub.is_zero():
                continue
            term = p * sub
            if i % 2:
                term = -term
            total = total + term
        det_memo[key] = total
        return total

    results = []
    seen_pairs = set()

    # enumerate column subsets (increasing), pruning by reachable rows
    def choose_cols(start, chosen):
        if len(chosen) == t:
            support = set()
            for c in chosen:
                support.update(col_support[c])
            if len(support) < t:
                return
            if _max_matching(chosen, col_support) < t:
                return
            for rset in _row_subsets(chosen, col_support, t):
                key = (rset, tuple(chosen))
                if key in seen_pairs:
                    continue
                seen_pairs.add(key)
                d = det(rset, tuple(chosen))
                if not d.is_zero():
                    results.append(d)
            return
        for i in range(start, len(cols)):
            c = cols[i]
            if not col_support[c]:
                continue
            # feasibility: enough columns left
            if len(chosen) + (len(cols) - i) < t:
                break
            chosen.append(c)
            choose_cols(i + 1, chosen)
            chosen.pop()

    choose_cols(0, [])
    return _dedupe_monic(results)


def _row_subsets(chosen_cols, col_support, t):
    """Distinct row sets admitting a perfect matching with chosen_cols."""
    out = set()
    cols = sorted(chosen_cols, key=lambda c: len(col_support[c]))

    def rec(i, used):
        if i == len(cols):
            out.add(frozenset(used))
            return
        for r in col_support[cols[i]]:
            if r not in used:
                used.add(r)
                rec(i + 1, used)
                used.remove(r)

    rec(0, set())
    return sorted(out, key=lambda fs: sorted(fs))


def _max_matching(cols, col_support):
    match = {}

    def augment(c, visited):
        for r in col_support[c]:
            if r in visited:
                continue
            visited.add(r)
            if r not in match or augment(match[r], visited):
                match[r] = c
                return True
        return False

    size = 0
    for c in cols:
        if augment(c, set()):
            size += 1
    return size


def scalar_rank(rows, field) -> int:
    """Rank of a dense scalar matrix by exact Gaussian elimination."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
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
        inv = field.inv(m[pr][pc])
        for r in range(pr + 1, nr):
            if m[r][pc]:
                f = field.mul(m[r][pc], inv)
                for c in range(pc, nc):
                    m[r][c] = field.sub(m[r][c], field.mul(f, m[pr][c]))
        pr += 1
        rank += 1
        if pr == nr:
            break
    return rank
