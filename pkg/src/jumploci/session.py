"""Session files: a line-oriented input format for the command line tool.

A session declares the coefficient field, the ambient graded polynomial
ring, the quotient sequence, and the module -- either as the cokernel of
a presentation matrix or as an explicit finite free complex with a
strict multiplication action.  Grammar (one directive per line, ``#``
starts a comment)::

    field GF(101)            # or: field QQ
    ring x, y, z weights 1, 1, 1
    ci x^3, y^3, z^3
    module coker [[x^3, y^3, z^3, x*z, y*z^2]]

    # alternative module input:
    complex d1 [[x^2*y, x*y^2]] d2 [[-y], [x]]
    action e1 [[1], [0]] [[0, x*y]]
    action e2 [[0], [1]] [[-x*y, 0]]

Matrices are written as lists of rows; ``dK`` maps the free module in
homological degree K to the one in degree K-1, and ``action eI`` lists
the blocks F_t -> F_{t+1} for t = 0..L-1.  Optional ``option NAME VALUE``
lines set truncation, seed or output path.  Parsing reports line and
column of the offending token; ``print_session`` emits the canonical
form, on which parse and print are mutually inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .field import Field, GF, QQ
from .poly import PolyRing, Polynomial
from .matrix import PolyMatrix
from .resolution import (RingData, FreeResolution, PipelineError,
                         presentation_from_rows, resolve_over_a,
                         dualize_over_a, DualComplex)
from .homotopy import (compute_higher_homotopies, ingest_dg_structure,
                       dualize_homotopies)
from .twisted import TwistedComplex, build_twisted_complex


class SessionError(ValueError):
    """Input error with the offending line (1-based) and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(message + where)


@dataclass
class ModuleInput:
    kind: str                     # "coker" or "complex"
    rows: list = None             # coker: rows of the presentation matrix
    differentials: list = None    # complex: d_1..d_L as PolyMatrix
    actions: list = None          # complex: per e_i, list of L blocks
    degrees: list = None          # complex: inferred generator degrees


@dataclass
class Session:
    ring_data: RingData
    module: ModuleInput
    options: dict = dc_field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.ring_data.ring


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _split_commas(text: str):
    """Split on top-level commas, keeping each piece's start column."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
    pieces.append((text[start:], start))
    return [(p.strip(), s + len(p) - len(p.lstrip())) for p, s in pieces]


def _parse_matrix_text(text: str, pos: int, line_no: int):
    """Parse ``[[e, e], [e, e]]`` starting at ``pos``; return (rows, end).

    Rows are lists of (entry string, column) pairs.
    """
    n = len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    i = skip_ws(pos)
    if i >= n or text[i] != "[":
        raise SessionError("expected '[' opening a matrix", line_no, i + 1)
    i = skip_ws(i + 1)
    rows = []
    while True:
        if i >= n:
            raise SessionError("unterminated matrix", line_no, i)
        if text[i] == "]":
            i += 1
            break
        if text[i] != "[":
            raise SessionError("expected '[' opening a row", line_no, i + 1)
        j = text.find("]", i + 1)
        if j < 0:
            raise SessionError("unterminated row", line_no, i + 1)
        body = text[i + 1:j]
        entries = []
        for piece, off in _split_commas(body):
            if not piece:
                raise SessionError("empty matrix entry", line_no, i + 2 + off)
            entries.append((piece, i + 2 + off))
        rows.append(entries)
        i = skip_ws(j + 1)
        if i < n and text[i] == ",":
            i = skip_ws(i + 1)
    return rows, i


def _parse_entries(ring: PolyRing, rows, line_no, require_homogeneous=True):
    """Rows of (text, column) -> rows of Polynomial, with error context."""
    width = None
    out = []
    for row in rows:
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SessionError("ragged matrix rows", line_no)
        prow = []
        for text, col in row:
            try:
                p = ring.parse(text)
            except ValueError as exc:
                raise SessionError(f"bad entry '{text}': {exc}",
                                   line_no, col) from exc
            if require_homogeneous and not p.is_homogeneous():
                raise SessionError(f"inhomogeneous entry '{text}'",
                                   line_no, col)
            prow.append(p)
        out.append(prow)
    return out


def parse_session(text: str) -> Session:
    fld = None
    ring = None
    ci = None
    coker_rows = None
    diffs = {}           # label index -> rows (as polynomials)
    actions = {}         # label index -> list of matrices (as rows)
    options = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _NAME.match(line.strip())
        if not m:
            raise SessionError("expected a directive", line_no,
                               len(line) - len(line.lstrip()) + 1)
        directive = m.group(0)
        rest = line.strip()[len(directive):].strip()
        offset = len(raw) - len(raw.lstrip()) + len(directive)

        if directive == "field":
            gm = re.fullmatch(r"GF\(\s*(\d+)\s*\)", rest)
            if rest == "QQ":
                fld = QQ
            elif gm:
                p = int(gm.group(1))
                if not _is_prime(p):
                    raise SessionError(f"{p} is not prime", line_no)
                fld = GF(p)
            else:
                raise SessionError(f"unknown field '{rest}'", line_no)

        elif directive == "ring":
            if fld is None:
                raise SessionError("ring declared before field", line_no)
            if "weights" in rest:
                var_part, weight_part = rest.split("weights", 1)
            else:
                var_part, weight_part = rest, None
            names = [v.strip() for v in var_part.split(",") if v.strip()]
            if not names:
                raise SessionError("ring needs at least one variable", line_no)
            for v in names:
                if not _NAME.fullmatch(v):
                    raise SessionError(f"bad variable name '{v}'", line_no)
            weights = ()
            if weight_part is not None:
                try:
                    weights = tuple(int(w) for w in weight_part.split(","))
                except ValueError:
                    raise SessionError("weights must be integers", line_no)
            try:
                ring = PolyRing(fld, tuple(names), weights)
            except ValueError as exc:
                raise SessionError(str(exc), line_no)

        elif directive == "ci":
            if ring is None:
                raise SessionError("ci declared before ring", line_no)
            ci = []
            for piece, off in _split_commas(rest):
                try:
                    f = ring.parse(piece)
                except ValueError as exc:
                    raise SessionError(f"bad element '{piece}': {exc}",
                                       line_no, offset + off) from exc
                if not f.is_homogeneous():
                    raise SessionError(f"inhomogeneous element '{piece}'",
                                       line_no, offset + off)
                if f.is_constant():
                    raise SessionError(
                        f"'{piece}' is not in the irrelevant maximal ideal",
                        line_no, offset + off)
                ci.append(f)

        elif directive == "module":
            if ring is None:
                raise SessionError("module declared before ring", line_no)
            if not rest.startswith("coker"):
                raise SessionError("module input must be 'coker [[...]]'",
                                   line_no)
            pos = line.find("coker") + len("coker")
            rows, end = _parse_matrix_text(line, pos, line_no)
            if line[end:].strip():
                raise SessionError("trailing text after matrix", line_no,
                                   end + 1)
            coker_rows = _parse_entries(ring, rows, line_no)

        elif directive == "complex":
            if ring is None:
                raise SessionError("complex declared before ring", line_no)
            pos = line.find(directive) + len(directive)
            while line[pos:].strip():
                lm = _NAME.match(line[pos:].lstrip())
                if lm is None or not re.fullmatch(r"d\d+", lm.group(0)):
                    raise SessionError("expected a differential label dK",
                                       line_no, pos + 1)
                label = lm.group(0)
                k = int(label[1:])
                pos = line.index(label, pos) + len(label)
                rows, pos = _parse_matrix_text(line, pos, line_no)
                if k in diffs:
                    raise SessionError(f"duplicate differential {label}",
                                       line_no)
                diffs[k] = _parse_entries(ring, rows, line_no,
                                          require_homogeneous=False)

        elif directive == "action":
            if ring is None:
                raise SessionError("action declared before ring", line_no)
            pos = line.find(directive) + len(directive)
            lm = _NAME.match(line[pos:].lstrip())
            if lm is None or not re.fullmatch(r"e\d+", lm.group(0)):
                raise SessionError("expected an action label eI",
                                   line_no, pos + 1)
            label = lm.group(0)
            idx = int(label[1:])
            pos = line.index(label, pos) + len(label)
            blocks = []
            while line[pos:].strip():
                rows, pos = _parse_matrix_text(line, pos, line_no)
                blocks.append(_parse_entries(ring, rows, line_no,
                                             require_homogeneous=False))
            if idx in actions:
                raise SessionError(f"duplicate action {label}", line_no)
            actions[idx] = blocks

        elif directive == "option":
            parts = rest.split(None, 1)
            if len(parts) != 2:
                raise SessionError("option needs a name and a value", line_no)
            name, value = parts
            if name in ("truncation", "seed"):
                try:
                    options[name] = int(value)
                except ValueError:
                    raise SessionError(f"option {name} must be an integer",
                                       line_no)
            elif name == "output":
                options[name] = value
            else:
                raise SessionError(f"unknown option '{name}'", line_no)

        else:
            raise SessionError(f"unknown directive '{directive}'", line_no)

    if fld is None:
        raise SessionError("missing field declaration")
    if ring is None:
        raise SessionError("missing ring declaration")
    if ci is None:
        raise SessionError("missing ci declaration")
    try:
        rd = RingData(ring, ci)
    except (ValueError, PipelineError) as exc:
        raise SessionError(str(exc))

    if coker_rows is not None and diffs:
        raise SessionError("give either a coker module or a complex, not both")
    if coker_rows is not None:
        module = ModuleInput("coker", rows=coker_rows)
    elif diffs:
        labels = sorted(diffs)
        if labels != list(range(1, len(labels) + 1)):
            raise SessionError("differentials must be labelled d1..dL "
                               "consecutively")
        matrices, degrees = _assemble_complex(ring, [diffs[k] for k in labels])
        acts = _assemble_actions(ring, actions, rd, len(matrices))
        module = ModuleInput("complex", differentials=matrices, actions=acts)
        module.degrees = degrees
    else:
        raise SessionError("missing module declaration")
    return Session(rd, module, options)


def _assemble_complex(ring: PolyRing, diff_rows):
    """Build PolyMatrix differentials and infer bigraded generator degrees.

    Generators of the 0-th free module sit in internal degree 0; each
    later degree is forced by homogeneity of the matrix columns.
    """
    matrices = []
    degrees = [[0] * len(diff_rows[0])]
    for k, rows in enumerate(diff_rows, start=1):
        mat = PolyMatrix.from_rows(ring, rows)
        if mat.nrows != len(degrees[-1]):
            raise SessionError(
                f"d{k} has {mat.nrows} rows but the target has "
                f"{len(degrees[-1])} generators")
        col_degs = []
        for j in range(mat.ncols):
            deg = None
            for (r, c), p in mat.entries.items():
                if c != j or p.is_zero():
                    continue
                if not p.is_homogeneous():
                    raise SessionError(f"inhomogeneous entry in d{k}")
                d = degrees[-1][r] + p.degree()
                if deg is None:
                    deg = d
                elif deg != d:
                    raise SessionError(f"column {j + 1} of d{k} is not "
                                       "homogeneous")
            if deg is None:
                raise SessionError(f"column {j + 1} of d{k} is zero; its "
                                   "degree cannot be inferred")
            col_degs.append(deg)
        mat.row_degrees = [(k - 1, d) for d in degrees[-1]]
        mat.col_degrees = [(k, d) for d in col_degs]
        matrices.append(mat)
        degrees.append(col_degs)
    for a, b in zip(matrices, matrices[1:]):
        if not (a @ b).is_zero():
            raise SessionError("differentials do not compose to zero")
    return matrices, degrees


def _assemble_actions(ring: PolyRing, actions, rd: RingData, length: int):
    if sorted(actions) != list(range(1, rd.c + 1)):
        raise SessionError(
            f"a complex module needs actions e1..e{rd.c}")
    out = []
    for i in range(1, rd.c + 1):
        blocks = [PolyMatrix.from_rows(ring, rows) for rows in actions[i]]
        if len(blocks) != length:
            raise SessionError(
                f"action e{i}: expected {length} blocks, got {len(blocks)}")
        out.append(blocks)
    return out


# -- canonical printing ----------------------------------------------------


def _fmt_matrix(rows) -> str:
    return "[" + ", ".join(
        "[" + ", ".join(str(p) for p in row) + "]" for row in rows) + "]"


def _matrix_rows(mat: PolyMatrix):
    return [[mat.get(i, j) for j in range(mat.ncols)]
            for i in range(mat.nrows)]


def print_session(session: Session) -> str:
    rd = session.ring_data
    ring = rd.ring
    lines = []
    if ring.field.p == 0:
        lines.append("field QQ")
    else:
        lines.append(f"field GF({ring.field.p})")
    lines.append("ring " + ", ".join(ring.variables)
                 + " weights " + ", ".join(str(w) for w in ring.weights))
    lines.append("ci " + ", ".join(str(f) for f in rd.ci))
    mod = session.module
    if mod.kind == "coker":
        lines.append("module coker " + _fmt_matrix(mod.rows))
    else:
        parts = []
        for k, mat in enumerate(mod.differentials, start=1):
            parts.append(f"d{k} " + _fmt_matrix(_matrix_rows(mat)))
        lines.append("complex " + " ".join(parts))
        for i, blocks in enumerate(mod.actions, start=1):
            lines.append(f"action e{i} " + " ".join(
                _fmt_matrix(_matrix_rows(b)) for b in blocks))
    for name in ("truncation", "seed", "output"):
        if name in session.options:
            lines.append(f"option {name} {session.options[name]}")
    return "\n".join(lines) + "\n"


# -- pipeline glue ---------------------------------------------------------


@dataclass
class Pipeline:
    """Everything the commands need, built once from a session."""

    rd: RingData
    S: PolyRing
    resolution: FreeResolution
    X: TwistedComplex
    presentation: PolyMatrix = None        # of M over A, coker inputs only
    dual_complex: DualComplex = None
    X_dual: TwistedComplex = None          # explicit dual route
    dual_presentation: PolyMatrix = None   # of M*, when Ext is concentrated


def build_pipeline(session: Session, need_dual: bool = False) -> Pipeline:
    rd = session.ring_data
    ring = rd.ring
    mod = session.module
    if mod.kind == "coker":
        pres = presentation_from_rows(ring, mod.rows)
        res = resolve_over_a(rd, pres)
        sys = compute_higher_homotopies(res, rd)
    else:
        res = FreeResolution(rd, "A", mod.differentials, mod.degrees,
                             complete=True)
        sys = ingest_dg_structure(res, mod.actions, rd)
        pres = None
    X = build_twisted_complex(res, sys, rd)
    pipe = Pipeline(rd, X.S, res, X, presentation=pres)
    if need_dual:
        dc = dualize_over_a(res)
        dual_sys = dualize_homotopies(sys, dc, rd)
        pipe.dual_complex = dc
        pipe.X_dual = build_twisted_complex(dual_sys.resolution, dual_sys,
                                            rd, S=X.S)
        if dc.concentrated:
            pipe.dual_presentation = dc.presentation
    return pipe
