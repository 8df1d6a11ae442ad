"""Command line front end.

Every command prints JSON on stdout.  Exit status is 0 on success, 1 when a
verification or sweep finds a failure, and 2 for malformed input; in the
last case a JSON object ``{"error": ..., "message": ...}`` goes to stderr.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from .boxes import alpha, beta, gamma as box_gamma, to_empty
from .codec import FormatError
from .gt import gt_counts, gt_polynomial, gt_size, pi, rho, sigma, tau
from .oracles import asm_formula, asm_to_mt, mt_to_asm, operator_formula, parse_asm_text
from .sijection import COD, DOM, verify
from .triangles import (gamma_fresh, lam, mt_counts, mt_from_json, mt_to_json, phi, psi,
                        sgt_counts, sgt_set, sgt_to_json, xi_sijection)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _one(values, flag):
    if values is None or len(values) != 1:
        raise UsageError(f"{flag} takes exactly one integer")
    return values[0]


def _many(values, flag):
    if values is None:
        raise UsageError(f"{flag} is required")
    return tuple(values)


# name -> builder taking the parsed arguments
SIJECTIONS = {
    "alpha": lambda a: alpha(_one(a.a, "--a"), _one(a.b, "--b"), _one(a.c, "--c")),
    "to-empty": lambda a: to_empty(_one(a.a, "--a"), _one(a.b, "--b")),
    "beta": lambda a: beta(_many(a.a, "--a"), _many(a.b, "--b"), _one(a.x, "--x")),
    "box-gamma": lambda a: box_gamma(_many(a.k, "--k"), _one(a.x, "--x")),
    "rho": lambda a: rho(_many(a.a, "--a"), _many(a.b, "--b"), _one(a.x, "--x")),
    "pi": lambda a: pi(_many(a.k, "--k"), _one(a.i, "--i")),
    "sigma": lambda a: sigma(_many(a.a, "--a"), _many(a.b, "--b"), _one(a.i, "--i")),
    "tau": lambda a: tau(_many(a.k, "--k"), _one(a.x, "--x")),
    "xi": lambda a: xi_sijection(_many(a.k, "--k")),
    "psi": lambda a: psi(_one(a.n, "--n"), _one(a.i, "--i")),
    "lambda": lambda a: lam(_one(a.n, "--n"), _one(a.i, "--i")),
    "phi": lambda a: phi(_many(a.k, "--k"), _one(a.x, "--x")),
    "gamma": lambda a: gamma_fresh(_many(a.k, "--k"), _one(a.x, "--x")),
}


def _counts_json(pos, neg):
    return {"pos": pos, "neg": neg, "size": pos - neg}


def cmd_count(args):
    k = tuple(args.k)
    if args.kind == "mt":
        return _counts_json(*mt_counts(k)), 0
    if args.kind == "gt":
        return _counts_json(*gt_counts(k)), 0
    return _counts_json(*sgt_counts(k)), 0


def cmd_formula(args):
    if args.kind == "asm":
        return {"formula": "asm", "n": _one(args.n, "--n"), "value": asm_formula(_one(args.n, "--n"))}, 0
    k = _many(args.k, "--k")
    if args.kind == "gtpoly":
        return {"formula": "gtpoly", "k": list(k), "value": gt_polynomial(k)}, 0
    return {"formula": "operator", "k": list(k),
            "value": operator_formula(k, cap=args.cap, method=args.method)}, 0


def cmd_verify(args):
    try:
        phi_ = SIJECTIONS[args.name](args)
    except (ValueError, AssertionError) as exc:
        raise UsageError(str(exc)) from exc
    report = verify(phi_, jobs=args.jobs)
    return report.to_dict(), 0 if report.ok else 1


def gamma_table(k, x):
    """Pairs of ``Gamma_{k,x}``, each listed once, in enumeration order."""
    g = gamma_fresh(k, x)
    mts = dict(g.domain.elements())
    sgts = dict(g.codomain.elements())
    seen = set()
    out = []
    for side, elems in ((DOM, mts), (COD, sgts)):
        for e, sign in elems.items():
            if (side, e) in seen:
                continue
            s2, y = g(side, e)
            seen.add((side, e))
            seen.add((s2, y))
            if side == DOM and s2 == COD:
                out.append({"mt": mt_to_json(e), "sgt": sgt_to_json(y, k),
                            "side": "mt-sgt", "sign": sign})
            elif side == DOM:
                out.append({"mt": mt_to_json(e), "partner": mt_to_json(y),
                            "side": "mt-mt", "sign": sign})
            else:
                out.append({"sgt": sgt_to_json(e, k), "partner": sgt_to_json(y, k),
                            "side": "sgt-sgt", "sign": sign})
    return out


def _text_mt(obj):
    return "/".join("".join(map(str, r)) if max(map(abs, r), default=0) < 10 else
                    ",".join(map(str, r)) for r in obj["rows"])


def _text_sgt(obj):
    return f"({_text_mt(obj['gt'])}, {' '.join(obj['pattern'])})"


def table_lines(table):
    lines = []
    for row in table:
        left = _text_mt(row["mt"]) if "mt" in row else _text_sgt(row["sgt"])
        if row["side"] == "mt-sgt":
            right = _text_sgt(row["sgt"])
        elif row["side"] == "mt-mt":
            right = _text_mt(row["partner"])
        else:
            right = _text_sgt(row["partner"])
        lines.append(f"{left} <-> {right}")
    return lines


def cmd_gamma(args):
    k, x = tuple(args.k), args.x
    table = gamma_table(k, x)
    if args.table and args.text:
        return "\n".join(table_lines(table)), 0
    if args.table:
        return {"k": list(k), "x": x, "pairs": table}, 0
    kinds = {}
    for row in table:
        kinds[row["side"]] = kinds.get(row["side"], 0) + 1
    return {"k": list(k), "x": x, "mt": list(mt_counts(k)), "sgt": list(sgt_set(k).counts()),
            "pairs": kinds}, 0


def _read_input(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def cmd_convert(args):
    text = _read_input(args.input)
    if args.direction == "asm2mt":
        return mt_to_json(asm_to_mt(parse_asm_text(text))), 0
    try:
        obj = json.loads(text)
    except ValueError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    rows = mt_from_json(obj if isinstance(obj, dict) else {"rows": obj})
    return {"asm": [list(r) for r in mt_to_asm(rows)]}, 0


def sweep(max_n, radius, x=0):
    """Run the counting identities and the main sijection checks on every
    ``k`` in ``[-radius, radius]^n`` for ``n <= max_n``."""
    failures = []
    checked = 0
    for n in range(1, max_n + 1):
        for k in itertools.product(range(-radius, radius + 1), repeat=n):
            checked += 1
            if gt_size(k) != gt_polynomial(k):
                failures.append({"k": list(k), "check": "gt size"})
            mp, mn = mt_counts(k)
            sp, sn = sgt_counts(k)
            op = operator_formula(k)
            if not mp - mn == sp - sn == op:
                failures.append({"k": list(k), "check": "counts",
                                 "mt": [mp, mn], "sgt": [sp, sn], "operator": op})
            maps = [("tau", tau(k, x)), ("phi", phi(k, x)), ("gamma", gamma_fresh(k, x))]
            if n >= 2:
                maps.append(("xi", xi_sijection(k)))
                maps += [(f"pi{i}", pi(k, i)) for i in range(1, n)]
            for name, m in maps:
                report = verify(m, max_failures=1)
                if not report.ok:
                    failures.append({"k": list(k), "check": name, "detail": report.failures})
    return {"max_n": max_n, "range": radius, "x": x, "checked": checked,
            "ok": not failures, "failures": failures}


def cmd_sweep(args):
    result = sweep(args.max_n, args.range, args.x)
    return result, 0 if result["ok"] else 1


def build_parser():
    p = _Parser(prog="sijections", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="positive and negative counts of MT(k), GT(k) or SGT(k)")
    c.add_argument("kind", choices=["mt", "gt", "sgt"])
    c.add_argument("--k", type=int, nargs="*", required=True)
    c.set_defaults(func=cmd_count)

    f = sub.add_parser("formula", help="closed formulas")
    f.add_argument("kind", choices=["operator", "gtpoly", "asm"])
    f.add_argument("--k", type=int, nargs="*")
    f.add_argument("--n", type=int, nargs=1)
    f.add_argument("--cap", type=int, default=7)
    f.add_argument("--method", choices=["grouped", "monomials"], default="grouped")
    f.set_defaults(func=cmd_formula)

    v = sub.add_parser("verify", help="exhaustively check one sijection")
    v.add_argument("name", choices=sorted(SIJECTIONS))
    for flag in ("--k", "--a", "--b", "--c", "--x", "--i", "--n"):
        v.add_argument(flag, type=int, nargs="*")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gamma", help="pairs of Gamma_{k,x}")
    g.add_argument("--k", type=int, nargs="+", required=True)
    g.add_argument("--x", type=int, required=True)
    g.add_argument("--table", action="store_true", help="list every pair")
    g.add_argument("--text", action="store_true", help="with --table, one readable line per pair")
    g.set_defaults(func=cmd_gamma)

    cv = sub.add_parser("convert", help="ASM <-> monotone triangle")
    cv.add_argument("direction", choices=["asm2mt", "mt2asm"])
    cv.add_argument("--in", dest="input", default="-", help="input file, - for stdin")
    cv.set_defaults(func=cmd_convert)

    s = sub.add_parser("sweep", help="run the invariant checks over a cube of bottom rows")
    s.add_argument("--max-n", type=int, default=3)
    s.add_argument("--range", type=int, default=2)
    s.add_argument("--x", type=int, default=0)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result, code = args.func(args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return 2
    except (FormatError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    if isinstance(result, str):
        print(result)
    else:
        print(json.dumps(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
