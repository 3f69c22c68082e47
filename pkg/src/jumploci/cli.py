"""Command line front end.

Usage::

    jumploci <compute|betti|dual|realize|crk|oracle> --input FILE
             [--n INT] [--seed INT] [--format json|text] [--output FILE]
             [--point a1,..,ac] [--points K] [--chain FILE]

Exit codes: 0 on success, 1 on input error, 2 on an internal assertion
failure (for example, the fast and explicit dual routes disagreeing).
Setting ``JUMPLOCI_VERBOSE=1`` prints cumulative engine statistics on
standard error.

The JSON report uses a stable key order::

    {"rank": int, "jump_numbers": [int],
     "loci": [{"i_from": int, "i_to": int, "ideal": [str], "dim": int}],
     "complexity": int, "betti_degree": int|null, "bass_degree": int|null,
     "duality": {"per_index_equal": bool, "bdeg_equal": bool}|null}

The unit ideal (empty variety) serializes as ``["1"]`` and the zero
ideal (all of Spec S) as ``[]``; the final unbounded plateau of empty
loci is recorded with ``i_to`` equal to ``i_from`` and dimension -1.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .field import GF, QQ
from .poly import PolyRing
from .groebner import Ideal, GBStats
from .resolution import (PipelineError, TruncationNeeded, resolve_over_b,
                         BettiTable, fit_quasi_polynomial)
from .loci import (jump_loci_report, complexity_of, betti_degree, crk_at,
                   duality_check, realize, stable_betti_oracle,
                   RouteDisagreement, JumpLociReport)
from .session import (Session, SessionError, parse_session, build_pipeline)


# -- report assembly -------------------------------------------------------


def _ideal_strings(I: Ideal):
    if I.is_unit_ideal():
        return ["1"]
    if I.is_zero_ideal():
        return []
    return [str(g) for g in I.reduced().gens]


def _loci_entries(rep: JumpLociReport):
    """Plateau list: one entry per jump number plus the final empty set."""
    entries = []
    by_index = {i: (I, d) for i, I, d in rep.per_index}
    prev = 0
    for j in rep.jump_numbers:
        I, dim = by_index[j]
        entries.append({"i_from": prev + 1, "i_to": j,
                        "ideal": _ideal_strings(I), "dim": dim})
        prev = j
    entries.append({"i_from": prev + 1, "i_to": prev + 1,
                    "ideal": ["1"], "dim": -1})
    return entries


def report_dict(rep: JumpLociReport, bass_degree=None, duality=None):
    return {
        "rank": rep.rank,
        "jump_numbers": list(rep.jump_numbers),
        "loci": _loci_entries(rep),
        "complexity": rep.complexity,
        "betti_degree": rep.betti_degree,
        "bass_degree": bass_degree,
        "duality": duality,
    }


def emit_report(report: dict, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(report, indent=2) + "\n").encode("utf-8")
    return (_report_text(report) + "\n").encode("utf-8")


def _report_text(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if key == "loci" and isinstance(value, list):
            lines.append(f"{indent}loci:")
            for entry in value:
                ideal = ", ".join(entry["ideal"]) or "0"
                lines.append(
                    f"{indent}  i = {entry['i_from']}..{entry['i_to']}: "
                    f"({ideal})  dim {entry['dim']}")
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_report_text(value, indent + "  "))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: "
                         + ", ".join(str(v) for v in value))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


# -- commands --------------------------------------------------------------


def _load_session(path: str) -> Session:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_session(fh.read())


def cmd_compute(session: Session, args) -> dict:
    pipe = build_pipeline(session, need_dual=True)
    rep = jump_loci_report(pipe.X, seed=args.seed)
    bass = None
    cx_dual = complexity_of(pipe.X_dual)
    if cx_dual >= 1:
        bass = betti_degree(pipe.X_dual, complexity=cx_dual, seed=args.seed)
    return report_dict(rep, bass_degree=bass)


def cmd_dual(session: Session, args) -> dict:
    pipe = build_pipeline(session, need_dual=True)
    rep = jump_loci_report(pipe.X, seed=args.seed)
    dr = duality_check(pipe.X, pipe.X_dual, seed=args.seed)
    bass = None
    cx_dual = complexity_of(pipe.X_dual)
    if cx_dual >= 1:
        bass = betti_degree(pipe.X_dual, complexity=cx_dual, seed=args.seed)
    duality = {"per_index_equal": all(ok for _, ok in dr.per_index_equal),
               "bdeg_equal": dr.bdeg_equal}
    return report_dict(rep, bass_degree=bass, duality=duality)


def _quasi_dict(qp):
    return {"even": [str(c) for c in qp.q_ev],
            "odd": [str(c) for c in qp.q_odd],
            "valid_from": qp.valid_from}


def cmd_betti(session: Session, args) -> dict:
    if session.module.kind != "coker":
        raise PipelineError(
            "the betti command needs a module given as a cokernel")
    n = args.n or session.options.get("truncation", 20)
    pipe = build_pipeline(session, need_dual=True)
    res = resolve_over_b(pipe.rd, pipe.presentation, n)
    table = BettiTable.of(res)
    out = {"n": n, "betti": {str(i): b for i, b in sorted(table.beta.items())}}
    try:
        out["quasi"] = _quasi_dict(fit_quasi_polynomial(table, n + 1))
    except TruncationNeeded as exc:
        out["quasi"] = {"error": str(exc)}
    if pipe.dual_presentation is not None:
        res_d = resolve_over_b(pipe.rd, pipe.dual_presentation, n)
        table_d = BettiTable.of(res_d)
        dual = {"betti": {str(i): b for i, b in sorted(table_d.beta.items())}}
        try:
            dual["quasi"] = _quasi_dict(fit_quasi_polynomial(table_d, n + 1))
        except TruncationNeeded as exc:
            dual["quasi"] = {"error": str(exc)}
        out["dual"] = dual
    else:
        out["dual"] = None
    return out


def _parse_point(text: str, session: Session):
    fld = session.ring.field
    pieces = [p.strip() for p in text.split(",")]
    point = []
    for p in pieces:
        try:
            point.append(fld.coerce(int(p) if fld.p else Fraction(p)))
        except (ValueError, ZeroDivisionError) as exc:
            raise PipelineError(f"bad point coordinate '{p}'") from exc
    if len(point) != session.ring_data.c:
        raise PipelineError(
            f"point has {len(point)} coordinates, expected "
            f"{session.ring_data.c}")
    return point


def cmd_crk(session: Session, args) -> dict:
    pipe = build_pipeline(session)
    if args.point:
        point = _parse_point(args.point, session)
        value = crk_at(pipe.X, point, seed=args.seed)
        return {"point": [str(a) for a in point], "crk": value}
    value = crk_at(pipe.X, None, seed=args.seed)
    return {"point": None, "crk": value}


def cmd_oracle(session: Session, args) -> dict:
    if session.module.kind != "coker":
        raise PipelineError(
            "the oracle command needs a module given as a cokernel")
    fld = session.ring.field
    if not fld.p:
        raise PipelineError("the oracle sweep needs a finite prime field")
    pipe = build_pipeline(session)
    rng = random.Random(args.seed)
    count = args.points or 20
    results = []
    for _ in range(count):
        while True:
            a = [rng.randrange(fld.p) for _ in range(pipe.rd.c)]
            if any(a):
                break
        stable = stable_betti_oracle(pipe.rd, pipe.presentation, a)
        crk = crk_at(pipe.X, a, seed=args.seed)
        results.append({"point": a, "stable_betti": stable, "crk": crk,
                        "equal": stable == crk})
    return {"points": results,
            "all_equal": all(r["equal"] for r in results)}


def parse_chain_file(text: str):
    """Chain files: ``field``/``ring`` headers, then one ``member`` line
    per chain element.  ``member 0`` is the zero ideal (all of Spec S)
    and ``member 1`` the unit ideal (the empty set)."""
    fld = None
    ring = None
    chain = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, _, rest = line.partition(" ")
        rest = rest.strip()
        if directive == "field":
            if rest == "QQ":
                fld = QQ
            elif rest.startswith("GF(") and rest.endswith(")"):
                fld = GF(int(rest[3:-1]))
            else:
                raise SessionError(f"unknown field '{rest}'", line_no)
        elif directive == "ring":
            if fld is None:
                raise SessionError("ring declared before field", line_no)
            names = tuple(v.strip() for v in rest.split(","))
            ring = PolyRing(fld, names, (2,) * len(names))
        elif directive == "member":
            if ring is None:
                raise SessionError("member declared before ring", line_no)
            gens = []
            for piece in rest.split(","):
                piece = piece.strip()
                try:
                    g = ring.parse(piece)
                except ValueError as exc:
                    raise SessionError(f"bad generator '{piece}'",
                                       line_no) from exc
                if not g.is_zero():
                    gens.append(g)
            chain.append(Ideal(ring, gens))
        else:
            raise SessionError(f"unknown directive '{directive}'", line_no)
    if ring is None or not chain:
        raise SessionError("chain file needs a ring and members")
    return ring, chain


def cmd_realize(args) -> dict:
    if not args.chain:
        raise PipelineError("realize needs --chain FILE")
    with open(args.chain, "r", encoding="utf-8") as fh:
        S, chain = parse_chain_file(fh.read())
    X, rep, ok = realize(S, chain, seed=args.seed)
    out = report_dict(rep)
    out["realized"] = ok
    if not ok:
        raise AssertionError("constructed complex misses a chain plateau")
    return out


# -- dispatch --------------------------------------------------------------


def build_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jumploci",
        description="Cohomological jump loci of modules over "
                    "complete-intersection quotients.")
    parser.add_argument("command",
                        choices=["compute", "betti", "dual", "realize",
                                 "crk", "oracle"])
    parser.add_argument("--input", help="session file")
    parser.add_argument("--n", type=int, default=None,
                        help="resolution truncation (betti)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--output", default=None)
    parser.add_argument("--point", default=None,
                        help="comma-separated coordinates (crk)")
    parser.add_argument("--points", type=int, default=None,
                        help="number of sample points (oracle)")
    parser.add_argument("--chain", default=None,
                        help="chain file (realize)")
    return parser


def main(argv=None) -> int:
    parser = build_argument_parser()
    args = parser.parse_args(argv)
    verbose = os.environ.get("JUMPLOCI_VERBOSE") == "1"
    if verbose:
        GBStats.reset()
    try:
        if args.command == "realize":
            report = cmd_realize(args)
        else:
            if not args.input:
                raise PipelineError(f"{args.command} needs --input FILE")
            session = _load_session(args.input)
            if args.seed == 0 and "seed" in session.options:
                args.seed = session.options["seed"]
            if args.output is None and "output" in session.options:
                args.output = session.options["output"]
            handler = {"compute": cmd_compute, "betti": cmd_betti,
                       "dual": cmd_dual, "crk": cmd_crk,
                       "oracle": cmd_oracle}[args.command]
            report = handler(session, args)
    except (SessionError, PipelineError, TruncationNeeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        kind = ("route disagreement" if isinstance(exc, RouteDisagreement)
                else "internal assertion")
        print(f"error ({kind}): {exc}", file=sys.stderr)
        return 2
    finally:
        if verbose:
            stats = GBStats.snapshot()
            print("engine: "
                  + ", ".join(f"{k}={v}" for k, v in stats.items()),
                  file=sys.stderr)
    payload = emit_report(report, args.format)
    out_path = args.output
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
