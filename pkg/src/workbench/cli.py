"""Batch command-line frontend.

Subcommands: group, module, cohom, bounds.  All output is deterministic
(byte-identical across runs); JSON documents carry "schema": 1.  Exit
codes: 0 success / verdict true, 1 certification verdict false, 2 usage
error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import bounds as bounds_mod
from . import cohomology
from .groups import (
    center,
    dade_class_X,
    elementary_abelian_subgroups,
    frattini,
    maximal_subgroups,
    parse_group_spec,
    s_count,
)
from .kgmod import (
    CapExceeded,
    bar_quotient,
    is_critical,
    is_endotrivial,
    module_from_json,
    module_to_json,
    omega,
    t1_rank,
    trivial,
)
from .varieties import rank_variety_scan

EXIT_OK = 0
EXIT_VERDICT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass
class RunConfig:
    subcommand: str
    group_spec: str | None = None
    fmt: str = "json"
    out: str | None = None
    threads: int = 1


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# -- group --


def cmd_group(args) -> int:
    g = parse_group_spec(args.spec)
    maxes = maximal_subgroups(g)
    elem_max = elementary_abelian_subgroups(g, maximal_only=True)
    xclasses = dade_class_X(g)
    report = {
        "schema": 1,
        "spec": args.spec,
        "label": g.label,
        "p": g.p,
        "order": g.order,
        "exponent": g.exponent(),
        "center_order": center(g).order,
        "frattini_order": frattini(g).order,
        "maximal_subgroup_count": len(maxes),
        "maximal_elementary_abelian": [
            {"rank": s.rank(), "index": s.index} for s in elem_max
        ],
        "s_count": s_count(g),
        "dade_X_classes": [
            {
                "subgroup_order": d["subgroup"].order,
                "class_size": d["class_size"],
                "quotient_type": d["quotient_type"],
                "quotient_order": d["quotient_order"],
            }
            for d in xclasses
        ],
    }
    _emit(_json_dumps(report), args.out)
    return EXIT_OK


# -- module --


def _load_module(args, g):
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            return module_from_json(json.load(fh), g)
    return trivial(g)


def cmd_module(args) -> int:
    g = parse_group_spec(args.group)
    if args.action == "omega":
        mod = _load_module(args, g)
        dims = [mod.dim]
        cur = mod
        if args.n == 0:
            cur = omega(mod, 0)
            dims.append(cur.dim)
        for _ in range(abs(args.n)):
            cur = omega(cur, 1 if args.n > 0 else -1)
            dims.append(cur.dim)
        report = {"schema": 1, "action": "omega", "group": g.label, "n": args.n, "dims": dims}
        if args.save:
            with open(args.save, "w", encoding="utf-8") as fh:
                fh.write(_json_dumps(module_to_json(cur)))
        _emit(_json_dumps(report), args.out)
        return EXIT_OK
    if args.action in ("endotrivial", "critical"):
        mod = _load_module(args, g)
        value = is_endotrivial(mod) if args.action == "endotrivial" else is_critical(mod)
        report = {
            "schema": 1,
            "action": args.action,
            "group": g.label,
            "dim": mod.dim,
            "t1_rank": t1_rank(mod),
            "value": bool(value),
        }
        _emit(_json_dumps(report), args.out)
        return EXIT_OK
    if args.action == "scan":
        mod = _load_module(args, g)
        pts = rank_variety_scan(mod, args.ext)
        report = {
            "schema": 1,
            "action": "scan",
            "group": g.label,
            "dim": mod.dim,
            "ext": args.ext,
            "points": [p.coord_strings() for p in pts],
        }
        _emit(_json_dumps(report), args.out)
        return EXIT_OK
    if args.action == "bar":
        mod = _load_module(args, g)
        bar, rep = bar_quotient(mod)
        report = {
            "schema": 1,
            "action": "bar",
            "group": g.label,
            "dim": mod.dim,
            "dim_bar": rep.dim_bar,
            "k_dims": rep.k_dims,
            "i_dims": rep.i_dims,
        }
        _emit(_json_dumps(report), args.out)
        return EXIT_OK
    raise ValueError(f"unknown module action {args.action!r}")


# -- cohom --


def _cohom_rows(args) -> list[tuple]:
    rows = []
    if args.series == "elem":
        for r in range(args.rmax + 1):
            val = cohomology.dim_h_elem_abelian(
                args.p, args.m, r, char2_polynomial=(args.p == 2)
            )
            rows.append((f"E({args.p},{args.m})", args.p, args.m, r, val, "closed-form"))
    elif args.series == "g1":
        for r in range(args.rmax + 1):
            rows.append(
                (f"ES({args.p},1,expp)", args.p, 1, r, cohomology.poincare_g1(args.p, r), "closed-form")
            )
    elif args.series == "resolution":
        g = parse_group_spec(args.group)
        dims = cohomology.minimal_resolution_dims(g, args.rmax)
        for r, val in enumerate(dims):
            rows.append((g.label, g.p, g.order, r, val, "resolution"))
    elif args.series == "sum-bound-char2":
        for r in range(2, args.rmax + 1):
            val = cohomology.sum_omega_bound_char2(args.m, r, args.order)
            rows.append((f"char2 m={args.m}", 2, args.m, r, val, "closed-form"))
    elif args.series == "sum-bound-oddp":
        for r in range(1, args.rmax + 1):
            val = cohomology.sum_omega_bound_oddp(args.p, args.n, r)
            rows.append((f"oddp n={args.n}", args.p, args.n, r, val, "closed-form"))
    else:
        raise ValueError(f"unknown series {args.series!r}")
    return rows


def cmd_cohom(args) -> int:
    rows = _cohom_rows(args)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["group", "p", "n_or_m", "r", "value", "source"])
    writer.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# -- bounds --


def _bounds_csv(cert) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["family", "p", "n", "m", "t", "sigma", "tau_num", "tau_den", "verdict", "notes"]
    )
    for r in cert.reports:
        writer.writerow(
            [r.family, r.p, r.n, r.m, r.t, r.sigma, r.tau_num, r.tau_den, r.verdict, r.notes]
        )
    return buf.getvalue()


def _bounds_json(cert) -> dict:
    return {
        "schema": 1,
        "verdict": cert.verdict,
        "reports": [
            {
                "family": r.family,
                "p": r.p,
                "n": r.n,
                "m": r.m,
                "t": r.t,
                "sigma": r.sigma,
                "tau_num": r.tau_num,
                "tau_den": r.tau_den,
                "override": r.override,
                "verdict": r.verdict,
                "notes": r.notes,
            }
            for r in cert.reports
        ],
        "induction_steps": [
            {"family": f, "p": p, "n": n, "ok": ok} for f, p, n, ok in cert.induction_steps
        ],
        "small_cases": [
            {"name": c.name, "upper": c.upper, "lower": c.lower, "verdict": c.verdict}
            for c in cert.small_cases
        ],
    }


def cmd_bounds(args) -> int:
    if args.bounds_action == "small-cases":
        cases = bounds_mod.small_case_checks()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "upper", "lower", "verdict", "notes"])
        for c in cases:
            writer.writerow([c.name, c.upper, c.lower, c.verdict, c.notes])
        _emit(buf.getvalue(), args.out)
        return EXIT_OK if all(c.verdict for c in cases) else EXIT_VERDICT_FALSE

    p_list = tuple(int(x) for x in args.oddp.split(",")) if args.oddp else ()
    include_char2 = args.char2 or not p_list
    char2_cap = args.nmax if args.nmax is not None else 12
    oddp_cap = (
        args.oddp_nmax
        if args.oddp_nmax is not None
        else (args.nmax if args.nmax is not None else 8)
    )
    cert = bounds_mod.certify(
        char2=include_char2,
        char2_n_max=char2_cap,
        p_list=p_list,
        oddp_n_max=oddp_cap,
        threads=args.threads,
    )
    if args.csv:
        _emit(_bounds_csv(cert), args.csv)
    if args.json:
        _emit(_json_dumps(_bounds_json(cert)), args.out)
    elif not args.csv:
        lines = [
            f"rows={len(cert.reports)} induction_steps={len(cert.induction_steps)}"
            f" small_cases={len(cert.small_cases)}",
            f"verdict={cert.verdict}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if cert.verdict else EXIT_VERDICT_FALSE


# -- parser --


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="workbench",
        description="Exact p-group module workbench: groups, syzygies, "
        "rank varieties, cohomology series, sigma/tau certification.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="group structure report (JSON)")
    g.add_argument("spec", help="C(p^n) | E(p,n) | D(2^n) | Q(2^n) | SD(2^n) | ES(p,n,fam) | cp(a,b)")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_group)

    m = sub.add_parser("module", help="module computations (JSON)")
    m.add_argument("action", choices=["omega", "endotrivial", "critical", "scan", "bar"])
    m.add_argument("--group", required=True)
    m.add_argument("--n", type=int, default=1, help="syzygy index for omega")
    m.add_argument("--input", default=None, help="module JSON file (default: trivial module)")
    m.add_argument("--save", default=None, help="save the resulting module (omega only)")
    m.add_argument("--ext", type=int, default=2, help="extension degree for scan")
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_module)

    c = sub.add_parser("cohom", help="dimension series (CSV)")
    c.add_argument(
        "series",
        choices=["elem", "g1", "resolution", "sum-bound-char2", "sum-bound-oddp"],
    )
    c.add_argument("--p", type=int, default=3)
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--order", type=int, default=16, help="|G| for sum-bound-char2")
    c.add_argument("--rmax", type=int, default=10)
    c.add_argument("--group", default=None, help="group spec for the resolution series")
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_cohom)

    b = sub.add_parser("bounds", help="sigma/tau certification")
    b.add_argument("bounds_action", choices=["certify", "small-cases"])
    b.add_argument("--char2", action="store_true", help="include the char-2 families")
    b.add_argument("--oddp", default="", help="comma-separated odd primes")
    b.add_argument("--nmax", type=int, default=None, help="n cap (char-2 default 12, odd default 8)")
    b.add_argument("--oddp-nmax", type=int, default=None, help="odd-p n cap override")
    b.add_argument("--csv", default=None, help="write the table as CSV to this path")
    b.add_argument("--json", action="store_true", help="emit the full JSON report")
    b.add_argument("--threads", type=int, default=1, help="grid parallelism")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bounds)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = RunConfig(
        subcommand=args.command,
        group_spec=getattr(args, "group", None) or getattr(args, "spec", None),
        out=getattr(args, "out", None),
        threads=getattr(args, "threads", 1),
    )
    if cfg.threads < 1:
        ap.error("--threads must be at least 1")
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
