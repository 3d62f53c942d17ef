"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 internal consistency fault.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import ConsistencyError, DiagramError, OhtsukiError, PDParseError, PrecisionError, ResourceLimitError
from .poly import HalfLaurent, SeriesU, format_rational

EXIT_OK, EXIT_INPUT, EXIT_FAULT = 0, 1, 2
SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _fmt(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, (HalfLaurent, SeriesU)):
        return v.to_json()
    if isinstance(v, dict):
        return {str(k): _fmt(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_fmt(x) for x in v]
    return v


def _load(path: str):
    from .corpus import resolve_path
    from .linkdiag import parse_pd

    try:
        p = resolve_path(path)
    except FileNotFoundError:
        raise InputError(f"cannot read {path}") from None
    return parse_pd(p.read_text().strip())


def _presentation(path: str):
    from .linkdiag import SurgeryPresentation

    return SurgeryPresentation(_load(path), path)


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"bad range {text!r}; use a..b") from None


def _parse_unit_fraction(text: str) -> int:
    """The n of a surgery coefficient 1/n (1/0 gives 0, the trivial surgery)."""
    num, _, den = text.replace(" ", "").partition("/")
    try:
        p, q = int(num), int(den or 1)
    except ValueError:
        raise InputError(f"bad surgery coefficient {text!r}; use 1/n") from None
    if q == 0:
        return 0
    if p not in (1, -1):
        raise InputError(f"only 1/n surgery coefficients are supported, got {text}")
    return p * q


def _table(rows: list[dict], keys: list[str]) -> str:
    cells = [[str(_fmt(r.get(k, ""))) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) if cells else len(k) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands; each returns (payload for json, text for table, exit code)


def cmd_jones(a):
    from .jones import jones_paper, jones_std

    D = _load(a.file)
    V = jones_paper(D) if a.normalization == "surgery" else jones_std(D)
    return {"jones": V.to_json(), "normalization": a.normalization}, V.format(), EXIT_OK


def cmd_conway(a):
    from .jones import conway_paper, conway_std

    D = _load(a.file)
    C = conway_paper(D) if a.normalization == "surgery" else conway_std(D)
    z = {str(k // 2): format_rational(c) for k, c in C.items()}
    return {"conway": z, "normalization": a.normalization}, C.format("z"), EXIT_OK


def cmd_phi(a):
    from .linkinv import phi_series

    D = _load(a.file)
    S = phi_series(D, a.order).series
    return {"phi": S.to_json()}, S.format(), EXIT_OK


def cmd_phi_i(a):
    from .linkinv import phi_series, small_phi

    D = _load(a.file)
    if a.small:
        v = small_phi(D, a.i)
    else:
        v = phi_series(D, a.i).Phi(a.i)
    return {"i": a.i, "small": a.small, "value": format_rational(v)}, format_rational(v), EXIT_OK


def cmd_v_i(a):
    from .linkinv import v_i

    D = _load(a.file)
    v = v_i(D, a.i)
    return {"i": a.i, "value": format_rational(v)}, format_rational(v), EXIT_OK


def cmd_check_dcc(a):
    from .linkinv import double_crossing_check

    D = _load(a.file)
    rep = double_crossing_check(D, a.c1, a.c2, a.order)
    payload = {"passed": rep.passed, "order": rep.order, "first_failing_order": rep.first_failing_order,
               "crossings": [rep.plus, rep.minus],
               "coefficient_checks": [[i, ok] for i, ok in rep.coefficient_checks]}
    return payload, rep.summary(), EXIT_OK if rep.passed else EXIT_FAULT


def cmd_nu_table(a):
    from .residues import g_table, gprime, nu

    out = {"nu": {}, "g": {}, "gprime": {}}
    rows = []
    for f in (1, -1):
        for i in range(a.max_i + 1):
            vals = [nu(f, i, m) for m in range(a.max_m + 1)]
            out["nu"][f"{f:+d},{i}"] = [format_rational(v) for v in vals]
            rows.append({"table": "nu", "index": f"f={f:+d} i={i}", "values": " ".join(map(format_rational, vals))})
    for l in range(a.max_i + 1):
        g = [g_table(l, m) for m in range(a.max_m + 1)]
        gp = [gprime(l, m) for m in range(a.max_m + 1)]
        out["g"][str(l)] = [format_rational(v) for v in g]
        out["gprime"][str(l)] = [format_rational(v) for v in gp]
        rows.append({"table": "g", "index": f"l={l}", "values": " ".join(map(format_rational, g))})
        rows.append({"table": "g'", "index": f"l={l}", "values": " ".join(map(format_rational, gp))})
    return out, _table(rows, ["table", "index", "values"]), EXIT_OK


def cmd_lambda(a):
    from .lambdas import lambda1, lambda2, lambda_n

    P = _presentation(a.file)
    if a.n == 1 and a.route == "direct":
        v = lambda1(P)
    elif a.n == 2 and a.route == "direct":
        v = lambda2(P, max_crossings=a.max_crossings)
    else:
        v = lambda_n(P, a.n, max_crossings=a.max_crossings)
    payload = {"n": a.n, "value": format_rational(v)}
    text = format_rational(v)
    if a.n == 1:
        payload["casson"] = format_rational(v / 6)
    if a.n == 2 and v.denominator == 1 and v.numerator % 3 == 0:
        payload["lambda2_over_3_parity"] = (v.numerator // 3) % 2
    return payload, text, EXIT_OK


def cmd_lambda2_surgery(a):
    from .lambdas import knot_surgery_report

    K = _load(a.knot)
    n = _parse_unit_fraction(a.coeff)
    rep = knot_surgery_report(K, n, max_crossings=a.max_crossings)
    routes = [rep["lambda2_phi"], rep["lambda2_surgery"]]
    value = rep["lambda2_surgery"] if rep["lambda2_surgery"] is not None else rep["lambda2_phi"]
    consistent = all(r is None or r == value for r in routes)
    payload = {
        "n": n,
        "lambda1": format_rational(rep["lambda1"]),
        "lambda2": format_rational(value),
        "routes": {
            "closed_form_v": format_rational(rep["lambda2"]),
            "phi_cable": format_rational(rep["lambda2_phi"]),
            "surgery_link": None if rep["lambda2_surgery"] is None else format_rational(rep["lambda2_surgery"]),
        },
        "closed_form_agrees": rep["lambda2"] == value,
    }
    if "skipped" in rep:
        payload["skipped"] = rep["skipped"]
    lines = [format_rational(value)]
    if rep["lambda2"] != value:
        lines.append(f"note: the v2/v3/v4 closed form gives {format_rational(rep['lambda2'])}")
    return payload, "\n".join(lines), EXIT_OK if consistent else EXIT_FAULT


def cmd_distinguish(a):
    from .lambdas import distinguish

    K = _load(a.knot)
    rep = distinguish(K, _parse_range(a.range))
    rows = [{"n": r["n"], "lambda1(K)": r["K"][0], "lambda2(K)": r["K"][1],
             "lambda1(K*)": r["mirror"][0], "lambda2(K*)": r["mirror"][1]} for r in rep["rows"]]
    pairs = [{"pair": " vs ".join(p["pair"]), "separated_by": p["separated_by"] or "-"} for p in rep["pairs"]]
    text = _table(rows, list(rows[0]) if rows else ["n"]) + "\n\n" + _table(pairs, ["pair", "separated_by"])
    payload = {"v2": _fmt(rep["v2"]), "v3": _fmt(rep["v3"]), "v4": _fmt(rep["v4"]),
               "rows": [_fmt(r) for r in rows], "pairs": pairs}
    return payload, text, EXIT_OK


def cmd_fermat_check(a):
    from .fermatlab import check_gauss, check_probes, check_srfi, odd_primes

    primes = [p for p in _parse_range(a.primes) if p in set(odd_primes(3, max(_parse_range(a.primes))))]
    primes = [p for p in primes if p >= 5]
    if not primes:
        raise InputError("no odd primes >= 5 in the requested range")
    if a.what == "gauss":
        rows = check_gauss(primes, a.max_l, a.max_m)
        keys = ["r", "l", "m_max", "got", "want", "ok"]
    elif a.what == "srfi":
        rows = check_srfi(primes, a.max_i, a.max_m)
        keys = ["r", "f", "i", "m_max", "got", "want", "ok"]
    else:
        rows = check_probes(primes)
        keys = ["function", "candidate", "stable", "expected_stable", "ok", "first_counterexample"]
    ok = all(r["ok"] for r in rows)
    text = _table(rows, keys) + f"\n{'all pass' if ok else 'MISMATCHES FOUND'}"
    return {"what": a.what, "rows": rows, "all_pass": ok}, text, EXIT_OK if ok else EXIT_FAULT


def selftest(verbose: bool = True) -> tuple[bool, list[dict]]:
    """Re-verify every stored fixture value."""
    from .corpus import corpus
    from .jones import conway_paper, jones_std
    from .lambdas import lambda1, lambda2
    from .linkdiag import linking_matrix
    from .linkinv import v_i
    from .poly import parse_rational

    rows = []
    for name, fx in corpus().items():
        if fx.path is None:
            continue
        D = fx.diagram()
        for key, entry in fx.expected.items():
            want = entry["value"]
            if key == "jones_std":
                got = jones_std(D).to_json()
            elif key == "conway":
                got = conway_paper(D).to_json()
            elif key == "linking_matrix":
                got = linking_matrix(D)
            elif key.startswith("v"):
                got, want = v_i(D, int(key[1:])), parse_rational(want)
            elif key == "lambda1":
                got, want = lambda1(D), parse_rational(want)
            elif key == "lambda2":
                got, want = lambda2(D, max_crossings=fx.budget), parse_rational(want)
            else:
                continue
            rows.append({"fixture": name, "key": key, "source": entry["source"], "ok": got == want})
    return all(r["ok"] for r in rows), rows


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ohtsuki", description="Ohtsuki invariants of integral homology spheres.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--format", choices=("table", "json"), default="table", help="output format (default table)")
    p.add_argument("--selftest", action="store_true", help="re-verify the stored fixture values")
    sub = p.add_subparsers(dest="command")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    for name, fn, h in (("jones", cmd_jones, "Jones polynomial"), ("conway", cmd_conway, "Conway polynomial")):
        sp = add(name, fn, h)
        sp.add_argument("file")
        sp.add_argument("--normalization", choices=("std", "surgery"),
                        default="std" if name == "jones" else "surgery",
                        help="std: usual convention; surgery: the convention of the surgery formulas, "
                             "t -> 1/t times (-1)^(#L-1) for Jones, z -> -z for Conway")
    sp = add("phi", cmd_phi, "series of Phi at t = 1")
    sp.add_argument("file")
    sp.add_argument("--order", "-N", type=int, default=6)
    sp = add("phi-i", cmd_phi_i, "Phi_i, or phi_i with --small")
    sp.add_argument("file")
    sp.add_argument("--i", "-i", type=int, required=True)
    sp.add_argument("--small", action="store_true", help="normalized phi_i instead of the derivative Phi_i")
    sp = add("v-i", cmd_v_i, "h-derivatives of V(e^h)")
    sp.add_argument("file")
    sp.add_argument("--i", "-i", type=int, required=True)
    sp = add("check-dcc", cmd_check_dcc, "double crossing change identities")
    sp.add_argument("file")
    sp.add_argument("c1", type=int)
    sp.add_argument("c2", type=int)
    sp.add_argument("--order", "-N", type=int, default=8)
    sp = add("nu-table", cmd_nu_table, "nu, g and g' tables")
    sp.add_argument("--max-i", type=int, default=3)
    sp.add_argument("--max-m", type=int, default=3)
    sp = add("lambda", cmd_lambda, "lambda_n of a surgery presentation")
    sp.add_argument("file")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--route", choices=("direct", "general"), default="direct",
                    help="direct: sublink formulas for n <= 2; general: nu-constant formula")
    sp.add_argument("--max-crossings", type=int, default=None)
    sp = add("lambda2-surgery", cmd_lambda2_surgery, "lambda_2 of 1/n surgery on a knot")
    sp.add_argument("--knot", required=True)
    sp.add_argument("--coeff", required=True, help="surgery coefficient 1/n")
    sp.add_argument("--max-crossings", type=int, default=None)
    sp = add("distinguish", cmd_distinguish, "compare 1/n surgeries on K and its mirror")
    sp.add_argument("--knot", required=True)
    sp.add_argument("--range", default="-3..3", help="a..b or a comma list; write --range=-2..2 for negative starts")
    sp = add("fermat-check", cmd_fermat_check, "mod-r verification of Gauss sums and s_(r,f,i)")
    sp.add_argument("--what", choices=("gauss", "srfi", "probe"), default="srfi")
    sp.add_argument("--primes", default="11..101")
    sp.add_argument("--max-l", type=int, default=2)
    sp.add_argument("--max-i", type=int, default=2)
    sp.add_argument("--max-m", type=int, default=3)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if a.selftest:
            ok, rows = selftest()
            if a.format == "json":
                print(json.dumps({"schema": SCHEMA_VERSION, "all_pass": ok, "rows": rows}, indent=1), file=out)
            else:
                print(_table(rows, ["fixture", "key", "source", "ok"]), file=out)
                print("selftest: " + ("all pass" if ok else "FAILURES"), file=out)
            return EXIT_OK if ok else EXIT_FAULT
        if not getattr(a, "fn", None):
            parser.print_help(out)
            return EXIT_INPUT
        payload, text, code = a.fn(a)
    except (InputError, PDParseError, DiagramError, ResourceLimitError, PrecisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"consistency fault: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except OhtsukiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAULT
    if a.format == "json":
        doc = {"schema": SCHEMA_VERSION, "command": a.command}
        doc.update(payload)
        print(json.dumps(doc, indent=1, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
