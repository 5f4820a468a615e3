"""Command-line front end.

Every subcommand builds a report dict; ``emit`` turns it into text, CSV or
JSON.  Exit status: 0 success, 1 a verification failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from overres import frobkernels as fk
from overres import groupgen as gg
from overres import liealgebra as la
from overres import repmod as rm
from overres import rootdata as rd
from overres import tables
from overres import u0algebra as ua
from overres.primefield import NotPrimeError, check_prime

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240611
FORMATS = ("text", "csv", "json")
MODULES = ("weyl", "natural", "adjoint", "trivial")


class UsageError(ValueError):
    pass


def _label(text: str) -> str:
    kind, rank = rd.parse_label(text)
    return f"{kind}{rank}"


def _weight(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad weight {text!r}") from exc


def _algebra(args) -> la.RestrictedLieAlgebra:
    return la.chevalley_algebra(_label(args.type), check_prime(args.p))


def _module(args) -> rm.Representation:
    g = _algebra(args)
    if args.module == "weyl":
        if g.name != "A1":
            raise UsageError("weyl modules are available for A1 only")
        if args.m is None or args.m < 0:
            raise UsageError("--m is required for weyl modules")
        return rm.weyl_module_sl2(args.m, g.p)
    if args.module == "natural":
        return rm.natural_rep(g)
    if args.module == "adjoint":
        return rm.adjoint_rep(g)
    return rm.trivial_rep(g)


def _module_name(args) -> str:
    return f"V({args.m})" if args.module == "weyl" else args.module


# -- subcommands ---------------------------------------------------------------

def cmd_table1(args):
    rows = tables.table1()
    ok = all(r.matches for r in rows)
    return (0 if ok else 1), {"table": 1, "rows": json.loads(tables.render_table1(rows, "json"))["rows"]}, \
        {fmt: tables.render_table1(rows, fmt) for fmt in ("text", "csv")}


def cmd_table2(args):
    rows = tables.table2()
    doc = tables.table2_document(rows)
    return 0, doc, {fmt: tables.render_table2(rows, fmt) for fmt in ("text", "csv")}


def cmd_centre(args):
    p = check_prime(args.p)
    if args.rank < 1:
        raise UsageError("rank must be positive")
    dim = la.centre_dimension(args.kind.upper(), args.rank, p)
    text = f"dim Z = {dim}" + (" (dagger)" if dim else "")
    return 0, {"type": args.kind.upper(), "rank": args.rank, "p": p, "dim": dim, "dagger": dim > 0}, {"text": text}


def cmd_height(args):
    p = check_prime(args.p)
    label = _label(args.type)
    if args.weight is not None:
        rs = rd.build_root_system(label)
        lam = _weight(args.weight)
        if len(lam) != rs.rank:
            raise UsageError("weight length must equal the rank")
        xi = rm.weyl_height(lam, rs)
        report = {"type": label, "p": p, "weight": list(lam), "xi": xi,
                  "formula": rm.weyl_height_formula(lam, rs)}
    elif args.module == "u0":
        g = la.chevalley_algebra(label, p)
        bound = tables.xi_u0_bound(g)
        xi = bound.computed
        report = {"type": label, "p": p, "module": "U0", "xi": xi, "bound": bound.bound}
    else:
        rep = _module(args)
        xi = rm.height(rep)
        report = {"type": label, "p": p, "module": _module_name(args), "xi": xi}
    if xi is not None:
        n = tables.integrability_threshold(xi, p)
        report["integrability_n"] = n
    text = f"xi = {xi}"
    if xi is not None:
        text += f"\nintegrable over G_({n})" + (" (already integrable at n=0)" if n == 0 else "")
    return 0, report, {"text": text}


def cmd_over_restricted(args):
    rep = _module(args)
    res = rm.is_over_restricted(rep, mode=args.mode, samples=args.samples, seed=args.seed)
    report = {"type": rep.lie.name, "p": rep.p, "module": _module_name(args), "holds": res.holds,
              "certified": res.certified, "checked": res.checked,
              "witness": list(res.witness) if res.witness else None}
    how = "exhaustive" if res.certified else "sampled"
    text = f"{'over-restricted' if res.holds else 'not over-restricted'} ({how}, {res.checked} cone points)"
    if res.witness:
        text += f"\nwitness: {list(res.witness)}"
    return 0, report, {"text": text}


def cmd_group(args):
    rep = _module(args)
    group = gg.pseudo_chevalley_group(rep, policy=args.policy, cap=args.cap)
    report = gg.group_report(group) | {"type": rep.lie.name, "p": rep.p, "module": _module_name(args)}
    text = f"order = {group.order}\ndiameter = {group.diameter}"
    return 0, report, {"text": text}


def cmd_phi(args):
    rep = _module(args)
    res = gg.build_phi(rep, policy=args.policy, cap=args.cap)
    report = res.to_dict() | {"type": rep.lie.name, "p": rep.p, "module": _module_name(args)}
    text = (f"function: {res.is_function}\n|graph| = {res.graph.order}, |G_V| = {res.first.order}, "
            f"|G_g| = {res.second.order}\nkernel order = {res.kernel_order}, central = {res.central}, "
            f"in Aut = {res.in_aut}")
    return 0, report, {"text": text}


def cmd_verify(args):
    what = args.what
    p = check_prime(args.p)
    if what == "abs-chev":
        rep = _module(args)
        res = rm.verify_abs_chev_exhaustive(rep)
        report = {"check": what, "cone_points": res.cone_points, "pairs": res.pairs, "failures": res.failures}
        ok, detail = res.passed, "all cone points x basis"
    elif what == "abs-n-chev":
        if args.m is None or args.n is None:
            raise UsageError("abs-n-chev needs --m and --n")
        action = fk.DividedPowerAction(args.m, p, args.n)
        res = fk.verify_abs_n_chev_exhaustive(action)
        report = {"check": what, "checked": res.checked, "failures": res.failures,
                  "n_over_restricted": fk.is_n_over_restricted(action)}
        ok, detail = res.passed, "all t x spanning operators"
    elif what == "hopf":
        u = ua.U0Algebra(_algebra(args))
        ok = ua.hopf_axioms_hold(u)
        e = u.lie.basis_vector(u.lie.dim - 1)
        report = {"check": what, "dim_u0": u.dim, "deviation_degree": ua.deviation_degree(u, e)}
        detail = "coproduct, counit, antipode"
    else:
        g = _algebra(args)
        if args.exhaustive or g.dim <= 80:
            ok = la.verify_jacobi(g, exhaustive=True)
            detail = "exhaustive"
        else:
            ok = la.jacobi_sample(g, args.samples, np.random.default_rng(args.seed))
            detail = f"{args.samples} random triples"
        ok = ok and la.verify_restricted(g)
        report = {"check": what, "type": g.name, "dim": g.dim}
    report |= {"p": p, "passed": ok}
    return (0 if ok else 1), report, {"text": f"{'PASS' if ok else 'FAIL'} ({detail})"}


def cmd_overenv_dim(args):
    u = ua.U0Algebra(_algebra(args))
    rep = ua.over_env_report(u)
    report = {"type": u.lie.name, "p": u.p, "dim_u0": rep.dim_u0, "dim_ideal_closure": rep.dim_ideal_closure,
              "dim_ideal_regular": rep.dim_ideal_regular, "agree": rep.agree, "dimension": rep.dimension}
    text = f"dim U_over = {rep.dimension} (oracles {'agree' if rep.agree else 'DISAGREE'})"
    return (0 if rep.agree else 1), report, {"text": text}


def cmd_alcove(args):
    p = check_prime(args.p)
    rs = rd.build_root_system(_label(args.type))
    lam = _weight(args.weight)
    if len(lam) != rs.rank:
        raise UsageError("weight length must equal the rank")
    rep = rd.alcove_bands(lam, p, rs)
    walls = rd.wall_bounds(lam, p, rs)
    report = {"type": rs.label, "p": p, "weight": list(lam), "bands": list(rep.bands), "on_wall": rep.on_wall,
              "count_below": rep.count_below, "other_counts": dict(rep.other_counts),
              "walls": [{"coroot": list(w.coroot), "value": w.value, "lower": w.lower, "upper": w.upper}
                        for w in walls]}
    lines = [f"{w.lower} < {w.value} < {w.upper}  coroot {w.coroot}" for w in walls]
    lines.append(f"alcoves below: {rep.count_below}")
    for k, v in sorted(rep.other_counts.items()):
        lines.append(f"  {k}: {v}")
    return 0, report, {"text": "\n".join(lines)}


def cmd_thresholds(args):
    label = _label(args.type)
    report = tables.threshold_report(label)
    lines = [f"{label}: a = {report['a']}, 2h-2 = {report['two_h_minus_2']}"]
    lines += [f"n = {n}: p >= {p}" for n, p in report["p0"].items()]
    lines += [f"p = {p}: n >= {n}" for p, n in report["n_for_p"].items()]
    if args.n is not None:
        if args.n < 2:
            raise UsageError("n must be at least 2")
        report["query_n"] = {"n": args.n, "p0": tables.min_prime_for_n(label, None, args.n)}
        lines.append(f"query n = {args.n}: p >= {report['query_n']['p0']}")
    if args.p is not None:
        p = check_prime(args.p)
        report["query_p"] = {"p": p, "n": tables.min_n_for_p(label, None, p)}
        lines.append(f"query p = {p}: n >= {report['query_p']['n']}")
    return 0, report, {"text": "\n".join(lines)}


COMMANDS = {
    "table1": cmd_table1,
    "table2": cmd_table2,
    "centre": cmd_centre,
    "height": cmd_height,
    "over-restricted": cmd_over_restricted,
    "group": cmd_group,
    "phi": cmd_phi,
    "verify": cmd_verify,
    "overenv-dim": cmd_overenv_dim,
    "alcove": cmd_alcove,
    "thresholds": cmd_thresholds,
}
VERIFY_CHECKS = ("abs-chev", "abs-n-chev", "hopf", "jacobi")


# -- parsing and output ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", metavar="PATH")

    def rep_args(sp, module_choices=MODULES, need_p=True):
        sp.add_argument("--type", default="A1")
        sp.add_argument("--p", type=int, required=need_p)
        sp.add_argument("--module", choices=module_choices, default="weyl")
        sp.add_argument("--m", type=int)

    parser = argparse.ArgumentParser(prog="overres", description="Over-restricted representations over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table1", parents=[common])
    sub.add_parser("table2", parents=[common])
    sp = sub.add_parser("centre", parents=[common])
    sp.add_argument("kind")
    sp.add_argument("rank", type=int)
    sp.add_argument("p", type=int)
    sp = sub.add_parser("height", parents=[common])
    rep_args(sp, MODULES + ("u0",))
    sp.add_argument("--weight")
    sp = sub.add_parser("over-restricted", parents=[common])
    rep_args(sp)
    sp.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    sp.add_argument("--samples", type=int, default=200)
    for name in ("group", "phi"):
        sp = sub.add_parser(name, parents=[common])
        rep_args(sp)
        sp.add_argument("--policy", choices=("root", "cone"), default="root")
        sp.add_argument("--cap", type=int)
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("what", choices=VERIFY_CHECKS)
    rep_args(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--samples", type=int, default=500)
    sp.add_argument("--exhaustive", action="store_true")
    sp = sub.add_parser("overenv-dim", parents=[common])
    sp.add_argument("--type", default="A1")
    sp.add_argument("--p", type=int, required=True)
    sp = sub.add_parser("alcove", parents=[common])
    sp.add_argument("--type", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--weight", required=True)
    sp = sub.add_parser("thresholds", parents=[common])
    sp.add_argument("--type", required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=int)
    return parser


def _csv_of(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k in sorted(report):
        v = report[k]
        w.writerow([k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v])
    return buf.getvalue()


def emit(command: str, report: dict, rendered: dict, fmt: str, seed: int) -> str:
    if fmt == "json":
        doc = {"version": SCHEMA_VERSION, "command": command, "seed": seed, "report": report}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt in rendered:
        out = rendered[fmt]
    elif fmt == "csv":
        out = _csv_of(report)
    else:
        out = json.dumps(report, sort_keys=True)
    return out if out.endswith("\n") else out + "\n"


def dispatch(args) -> tuple[int, str]:
    try:
        status, report, rendered = COMMANDS[args.command](args)
    except (UsageError, NotPrimeError, ValueError, KeyError) as exc:
        return 2, f"error: {exc}\n"
    return status, emit(args.command, report, rendered, args.format, args.seed)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    status, text = dispatch(args)
    if status == 2:
        parser.print_usage(sys.stderr)
        sys.stderr.write(text)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
