"""Command line entry point: ``exczero <subcommand> ...``.

Exit status is 0 when every reported identity passes, 1 when one fails and 2
when a precondition (hypothesis, catalog, splitting) is not met.
"""

from __future__ import annotations

import argparse
import sys

from . import qseries
from .catalog import CatalogError, RunConfig, load_catalog
from .heegner import check_hypotheses, hypotheses_hold, localize_point, pgz_value, point_formal_log
from .kubota_leopoldt import fg_crosscheck
from .linvariants import l_invariant_chi, linvariant_report
from .padic import PadicError
from .pipeline import HypothesisFailure, run
from .quadfield import ImagQuadField, class_group, split_prime
from .report import emit_report

EXIT_PASS, EXIT_FAIL, EXIT_PRECONDITION = 0, 1, 2

_GLOBAL_DEFAULTS = {"catalog": None, "prec": 20, "qprec": 200, "tprec": 8, "report": "text"}


def _globals_parser(suppress: bool) -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    d = (lambda k: argparse.SUPPRESS) if suppress else (lambda k: _GLOBAL_DEFAULTS[k])
    g.add_argument("--catalog", default=d("catalog"), help="curve/point catalog JSON (default: $EXCZERO_CATALOG or bundled)")
    g.add_argument("--prec", type=int, default=d("prec"), help="p-adic precision M")
    g.add_argument("--qprec", type=int, default=d("qprec"), help="q-expansion truncation")
    g.add_argument("--tprec", type=int, default=d("tprec"), help="T-adic truncation of the Iwasawa algebra")
    g.add_argument("--report", choices=("text", "json"), default=d("report"))
    return g


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exczero", parents=[_globals_parser(False)])
    sub = ap.add_subparsers(dest="command", required=True)
    common = [_globals_parser(True)]

    q = sub.add_parser("qexp", parents=common, help="q-expansion of a catalog curve and its operators")
    q.add_argument("--curve", required=True)
    q.add_argument("--op", choices=("f", "V", "U_p", "deplete", "d", "coleman"), default="f")
    q.add_argument("--t", type=int, default=1, help="exponent for --op d")
    q.add_argument("--show", type=int, default=20, help="coefficients to print")

    c = sub.add_parser("class-group", parents=common)
    c.add_argument("--disc", type=int, required=True)

    s = sub.add_parser("split-prime", parents=common)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--disc", type=int, required=True)

    for name in ("linv", "heegner-log", "ez-verify"):
        x = sub.add_parser(name, parents=common)
        x.add_argument("--curve", required=True)
        x.add_argument("--p", type=int, required=True)
        x.add_argument("--disc", type=int, required=True)
        if name == "ez-verify":
            x.add_argument("--w", type=int, choices=(-1, 1), default=-1)
            x.add_argument("--jet-order", type=int, default=2)

    k = sub.add_parser("kl-crosscheck", parents=common)
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--disc", type=int, required=True)
    return ap


def _emit(obj, fmt, out):
    out.write(emit_report(obj, fmt))


def _qexp(args, out) -> int:
    E = load_catalog(args.catalog).curve(args.curve)
    f = qseries.an_from_curve(E, args.qprec)
    op = args.op
    if op == "V":
        g = qseries.V(f)
    elif op == "U_p":
        g = qseries.U_p(f)
    elif op == "deplete":
        g = qseries.deplete(f, f[E.p])
    elif op == "d":
        base = f if args.t >= 0 else qseries.deplete(f, f[E.p])
        g = qseries.atkin_serre_power(base, args.t)
    elif op == "coleman":
        g = qseries.coleman_value_series(f)
    else:
        g = f
    data = g.to_json()
    data["coeffs"] = data["coeffs"][: args.show + 1]
    _emit(data, args.report, out)
    return EXIT_PASS


def _class_group(args, out) -> int:
    K = ImagQuadField(args.disc)
    forms = class_group(args.disc)
    _emit({"disc": args.disc, "h": len(forms), "forms": [[f.a, f.b, f.c] for f in forms], "u": K.u}, args.report, out)
    return EXIT_PASS


def _split_prime(args, out) -> int:
    sp = split_prime(ImagQuadField(args.disc), args.p, args.prec)
    data = sp.to_json()
    data["L_chi"] = l_invariant_chi(sp)
    _emit(data, args.report, out)
    return EXIT_PASS


def _linv(args, out) -> int:
    E = load_catalog(args.catalog).curve(args.curve)
    sp = split_prime(ImagQuadField(args.disc), args.p, args.prec + 4)
    rep = linvariant_report(E, sp, args.prec)
    _emit(rep, args.report, out)
    return EXIT_PASS


def _kl(args, out) -> int:
    K = ImagQuadField(args.disc)
    sp = split_prime(K, args.p, args.prec + 4)
    rep = fg_crosscheck(K, args.p, l_invariant_chi(sp).add_bigoh(args.prec), args.prec)
    _emit(rep, args.report, out)
    return EXIT_PASS if rep.agree else EXIT_FAIL


def _heegner(args, out) -> int:
    cat = load_catalog(args.catalog)
    E = cat.curve(args.curve)
    K = ImagQuadField(args.disc)
    checks = check_hypotheses(E, K, args.p)
    if not hypotheses_hold(checks):
        _emit({"hypotheses": checks}, args.report, out)
        return EXIT_PRECONDITION
    pts = cat.points_for(E.label, args.disc)
    if not pts:
        raise CatalogError("no catalog point of %s over Q(sqrt(%d))" % (E.label, args.disc))
    sp = split_prime(K, args.p, args.prec + 6)
    P = pts[0]
    r1 = point_formal_log(E, P.point, sp, args.prec)
    r2 = point_formal_log(E, P.point, sp, args.prec, m=2 * r1.m)
    val = pgz_value(E, P.point, sp, args.prec)
    loc = localize_point(P.point, sp, args.prec)
    ok = r1.value.agrees_with(r2.value, args.prec - 2)
    _emit({
        "curve": E.label, "disc": args.disc, "p": args.p, "provenance": P.provenance,
        "localized_point": {"x": loc[0], "y": loc[1]},
        "formal_log": r1, "formal_log_2m": r2.value, "m_independent": ok,
        "L_p(f)(N_K) = (1 - 1/p) log": val.value, "hypotheses": checks,
    }, args.report, out)
    return EXIT_PASS if ok else EXIT_FAIL


def _ez(args, out) -> int:
    cfg = RunConfig(args.p, args.disc, args.curve, args.prec, args.qprec, args.tprec, args.w, args.report,
                    args.jet_order)
    res = run(cfg, load_catalog(args.catalog))
    _emit(res.ez, args.report, out)
    return EXIT_PASS if res.ez.all_passed else EXIT_FAIL


_DISPATCH = {
    "qexp": _qexp, "class-group": _class_group, "split-prime": _split_prime, "linv": _linv,
    "kl-crosscheck": _kl, "heegner-log": _heegner, "ez-verify": _ez,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args, out)
    except HypothesisFailure as exc:
        _emit({"error": str(exc), "hypotheses": exc.checks}, args.report, out)
        return EXIT_PRECONDITION
    except (CatalogError, PadicError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
