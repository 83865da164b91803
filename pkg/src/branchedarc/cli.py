"""Command line: JSON on stdout, exit 1 on a validation mismatch, 2 on bad input."""
from __future__ import annotations

import argparse
import json
import sys

from .arc import TangleParseError, arc_algebra, identity_word, kh_link, parse_word
from .branched import ValidationError, build_hn, validate_appendix
from .strands import strands_algebra
from .transfer import TransferError, transferred_all


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _key(k):
    if isinstance(k, tuple):
        return "(" + ",".join(str(x) for x in k) + ")"
    return str(k)


def _dims(d):
    return {_key(k): v for k, v in sorted(d.items())}


def _word(text, n=None):
    if not text.strip():
        return identity_word(n or 1)
    return parse_word(text)


# -- subcommands --------------------------------------------------------------

def cmd_strands(a):
    A = strands_algebra(a.genus)
    rows = [{"key": [k[0], [list(c) for c in k[1]], k[2]], "text": A.fmt(k),
             "d": len(A.d(k))} for k in A.keys()]
    return 0, {"genus": a.genus, "idempotents": len(A.idems), "basis": rows}


def cmd_branched(a):
    try:
        B = build_hn(a.n, validate=False)
    except ValidationError as e:
        return 1, {"ok": False, "error": str(e), "cell": e.cell}
    blocks = B.E.blocks()
    out = {"ok": True,
           "dims": [len(v) for _, v in sorted(blocks.items())],
           "homology": list(B.homology_dims)}
    if a.validate_appendix:
        if a.n != 2:
            raise UsageError("--validate-appendix needs --n 2")
        ok, cell = validate_appendix(B)
        out["ok"] = ok
        if not ok:
            out["cell"] = cell
            return 1, out
    return 0, out


def cmd_transfer(a):
    if a.n != 2:
        raise UsageError("transfer is implemented for --n 2")
    B = build_hn(2)
    try:
        ops = transferred_all(B.E, B.retract, a.arity)
    except TransferError as e:
        raise UsageError(str(e)) from e
    rows = [{"args": list(k), "value": sorted(v)} for k, v in ops.nonzero(a.arity).items()]
    return 0, {"arity": a.arity, "entries": len(rows), "table": rows}


def cmd_arc(a):
    H = arc_algebra(a.n)
    names = [H.name(k) for k in H.basis]
    table = {}
    for x in H.basis:
        row = {}
        for y in H.basis:
            v = H.mul(x, y)
            if v:
                row[H.name(y)] = sorted(H.name(k) for k in v)
        if row:
            table[H.name(x)] = row
    return 0, {"n": a.n, "dim": len(names), "basis": names,
               "q": {H.name(k): H.q[k] for k in H.basis}, "table": table}


def cmd_kh(a):
    return 0, _dims(kh_link(_word(a.word)))


def cmd_rozansky(a):
    from .hh import report, rozansky
    if a.tmin > a.tmax:
        raise UsageError("--tmin exceeds --tmax")
    return 0, report(rozansky(_word(a.word), a.tmin, a.tmax))


def cmd_twist(a):
    from .hh import fulltwist_kh
    ft = fulltwist_kh(_word(a.word), a.k, a.tmin, a.tmax)
    return 0, {"a": ft["a"], "comparable": ft["comparable"], "k": a.k,
               "dims": _dims(ft["dims"])}


def cmd_ss(a):
    from .hh import ss_check
    r = ss_check(a.word, (a.tmin, a.tmax))
    pages = [{"r": p.r, "total": p.total(), "d_rank": p.d_rank} for p in r.pages]
    return (0 if r.ok else 1), {"ok": r.ok, "E2": _dims(r.E2), "direct": _dims(r.direct),
                                "Einf": _dims(r.Einf), "gr_total": _dims(r.gr_total),
                                "pages": pages}


def cmd_check(a):
    from .checks import run_all
    res = run_all()
    out = {"ok": all(r.ok for r in res),
           "results": [{"name": r.name, "ok": r.ok, "seconds": round(r.seconds, 2)} for r in res]}
    if a.pretty:
        for r in res:
            print(r.line(), file=sys.stderr)
    return (0 if out["ok"] else 1), out


def grid(dims):
    """Human table of {(h, q): n}: q down the side, h across."""
    if not dims:
        return "(zero)"
    hs = sorted({h for h, _ in dims})
    qs = sorted({q for _, q in dims}, reverse=True)
    w = max(3, max(len(str(x)) for x in hs + qs))
    lines = ["q\\h".rjust(w) + "".join(str(h).rjust(w + 1) for h in hs)]
    for q in qs:
        cells = "".join(str(dims.get((h, q), ".")).rjust(w + 1) for h in hs)
        lines.append(str(q).rjust(w) + cells)
    return "\n".join(lines)


def _grid_of(cmd, payload):
    if cmd in ("kh", "twist-oracle"):
        d = payload["dims"] if cmd == "twist-oracle" else payload
        return grid({tuple(map(int, k.strip("()").split(","))): v for k, v in d.items()})
    if cmd == "rozansky":
        return grid({(r["t"], r["q"]): r["dim"] for r in payload["degrees"]})
    return None


# -- plumbing --------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="branchedarc", description=__doc__)
    p.add_argument("--pretty", action="store_true", help="indented output")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("strands", help="weight-0 strands algebra basis")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("action", choices=["dump"])
    s.set_defaults(fn=cmd_strands)

    s = sub.add_parser("branched", help="build h_n")
    s.add_argument("action", choices=["build"])
    s.add_argument("--n", type=int, required=True, choices=[1, 2])
    s.add_argument("--validate-appendix", action="store_true")
    s.set_defaults(fn=cmd_branched)

    s = sub.add_parser("transfer", help="transferred m_A table on H_* h_2")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--arity", type=int, required=True)
    s.set_defaults(fn=cmd_transfer)

    s = sub.add_parser("arc", help="arc algebra H_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("action", choices=["table"])
    s.set_defaults(fn=cmd_arc)

    s = sub.add_parser("kh", help="Kh of a closed word or the trace closure")
    s.add_argument("word")
    s.set_defaults(fn=cmd_kh)

    s = sub.add_parser("rozansky", help="HH of C_Kh(T) in a degree window")
    s.add_argument("word")
    s.add_argument("--tmin", type=int, required=True)
    s.add_argument("--tmax", type=int, required=True)
    s.set_defaults(fn=cmd_rozansky)

    s = sub.add_parser("twist-oracle", help="shifted Kh of the closure of Phi^k T")
    s.add_argument("word")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--tmin", type=int)
    s.add_argument("--tmax", type=int)
    s.set_defaults(fn=cmd_twist)

    s = sub.add_parser("ss-demo", help="cube-filtered spectral sequence for a (1,1) tangle")
    s.add_argument("word", nargs="?", default="x(1)")
    s.add_argument("--tmin", type=int, default=-6)
    s.add_argument("--tmax", type=int, default=6)
    s.set_defaults(fn=cmd_ss)

    s = sub.add_parser("check-all", help="run every acceptance check")
    s.set_defaults(fn=cmd_check)
    return p


def run(argv=None, out=None):
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    # --pretty is accepted anywhere on the line
    pretty = "--pretty" in argv
    argv = [x for x in argv if x != "--pretty"]
    try:
        args = build_parser().parse_args(argv)
        args.pretty = pretty
        code, payload = args.fn(args)
    except (UsageError, TangleParseError) as e:
        payload = {"error": str(e)}
        if getattr(e, "index", None) is not None:
            payload["index"] = e.index
        print(json.dumps(payload, sort_keys=True), file=out)
        return 2
    except ValueError as e:
        print(json.dumps({"error": str(e)}, sort_keys=True), file=out)
        return 2
    text = json.dumps(payload, sort_keys=True, indent=2 if args.pretty else None)
    if args.pretty:
        g = _grid_of(args.cmd, payload)
        text = g if g is not None else text
    print(text, file=out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
