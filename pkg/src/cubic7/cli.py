"""Command-line entry point.

    cubic7 list-suites
    cubic7 verify SUITE [SUITE ...] [--seed N] [--bound NAME=N ...]
                  [--out PATH] [--format json|csv] [--jobs N] [--strict]
                  [--config FILE]
    cubic7 export-plane --grid a0,a1,b0,b1,step [--out DIR]
    cubic7 git-sweep --family c7|f21 [--emit json|csv] [--out PATH]
    cubic7 arith verify-table2 | verify-table3
                 | hilbert-roundtrip [--count N] [--height B]
                 | quat-embed [--box B]

A config file is a flat key=value text file mirroring the flags
(seed=, out=, format=, strict=, jobs=, bound.NAME=).
"""

from __future__ import annotations

import argparse
import json
import sys

from .reporting import SuiteConfig, jsonable, write_reports
from .suites import SUITES, list_suites, run_suites


def _load_config_file(path, cfg, args):
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "seed":
                cfg.seed = int(val)
            elif key == "strict":
                cfg.strict = val.lower() in ("1", "true", "yes")
            elif key == "jobs":
                args.jobs = int(val)
            elif key == "out":
                args.out = val
            elif key == "format":
                args.format = val
            elif key.startswith("bound."):
                cfg.bounds[key[6:]] = int(val)
            else:
                raise ValueError(f"unknown config key {key!r}")


def _cmd_list(args):
    for name, desc in list_suites():
        print(f"{name:18s} {desc}")
    return 0


def _parse_bounds(pairs):
    out = {}
    for p in pairs or []:
        name, _, val = p.partition("=")
        out[name] = int(val)
    return out


def _cmd_verify(args):
    cfg = SuiteConfig(seed=args.seed, bounds=_parse_bounds(args.bound),
                      strict=args.strict)
    if args.config:
        _load_config_file(args.config, cfg, args)
    names = args.suite
    if names == ["all"]:
        names = list(SUITES)
    reports = run_suites(names, cfg, jobs=args.jobs)
    all_ok = True
    for r in reports:
        for c in r.checks:
            mark = {"pass": "PASS", "fail": "FAIL",
                    "flagged": "FLAG"}[c.verdict]
            print(f"[{mark}] {r.suite}/{c.claim_id}: {c.claim}")
            if c.verdict == "fail":
                print(f"       certificate: "
                      f"{json.dumps(jsonable(c.certificate))}")
            if c.verdict == "flagged":
                print(f"       note: {c.explanation}")
        ok = r.strict_passed() if cfg.strict else r.passed
        all_ok = all_ok and ok
        print(f"suite {r.suite}: "
              f"{'ok' if ok else 'FAILED'} ({r.wall_time:.2f}s)")
    if args.out:
        write_reports(reports, args.out, args.format)
        print(f"wrote {args.out}")
    return 0 if all_ok else 1


def _cmd_export_plane(args):
    from .plane import export_moduli_plane
    parts = args.grid.split(",")
    if len(parts) != 5:
        print("--grid expects a0,a1,b0,b1,step", file=sys.stderr)
        return 2
    from fractions import Fraction
    a0, a1, b0, b1, step = (Fraction(p) for p in parts)
    paths = export_moduli_plane(a0, a1, b0, b1, step, args.out)
    for k, v in paths.items():
        print(f"{k}: {v}")
    return 0


def _cmd_git_sweep(args):
    from .stability import sweep_c7, sweep_f21
    rows = sweep_c7() if args.family == "c7" else sweep_f21()
    bad = [r for r in rows if not r["agree"]]
    if args.out:
        if args.emit == "json":
            with open(args.out, "w") as fh:
                json.dump({"family": args.family, "rows": rows,
                           "all_agree": not bad}, fh, sort_keys=True,
                          indent=2)
        else:
            import csv as _csv
            with open(args.out, "w", newline="") as fh:
                w = _csv.writer(fh)
                w.writerow(["mask", "active", "oracle", "closed_form",
                            "agree", "certificate"])
                for r in rows:
                    w.writerow([r["mask"],
                                "+".join(map(str, r["active"])),
                                r["oracle"], r["closed_form"],
                                int(r["agree"]),
                                json.dumps(r.get("certificate"))])
        print(f"wrote {args.out}")
    print(f"{len(rows)} patterns, {len(bad)} disagreements")
    return 0 if not bad else 1


def _cmd_arith(args):
    cfg = SuiteConfig(seed=args.seed)
    if args.action == "verify-table2":
        reports = run_suites(["table2"], cfg)
    elif args.action == "verify-table3":
        reports = run_suites(["table3"], cfg)
    elif args.action == "hilbert-roundtrip":
        cfg.bounds["roundtrip"] = args.count
        cfg.bounds["pullback"] = args.count
        reports = run_suites(["hilbert"], cfg)
    elif args.action == "quat-embed":
        cfg.bounds["quat_box"] = args.box
        reports = run_suites(["quaternion"], cfg)
    else:
        print(f"unknown arith action {args.action}", file=sys.stderr)
        return 2
    ok = True
    for r in reports:
        for c in r.checks:
            mark = {"pass": "PASS", "fail": "FAIL",
                    "flagged": "FLAG"}[c.verdict]
            print(f"[{mark}] {c.claim_id}: {c.claim}")
        ok = ok and r.passed
    if args.out:
        write_reports(reports, args.out, "json")
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cubic7",
        description="exact verification toolkit for cubic fourfolds with "
                    "an order-7 symmetry")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sub.add_parser("list-suites", help="list the registered suites")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", nargs="+",
                   help="suite names, or 'all'")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--bound", action="append", metavar="NAME=N",
                   help="override a named search bound")
    v.add_argument("--out", default="")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--strict", action="store_true",
                   help="flagged checks count as failures")
    v.add_argument("--config", default="",
                   help="flat key=value config file")

    e = sub.add_parser("export-plane",
                       help="label a rational grid of the parameter plane")
    e.add_argument("--grid", required=True, metavar="a0,a1,b0,b1,step")
    e.add_argument("--out", default="plane-out")

    g = sub.add_parser("git-sweep", help="support-pattern stability sweep")
    g.add_argument("--family", choices=("c7", "f21"), required=True)
    g.add_argument("--emit", choices=("json", "csv"), default="json")
    g.add_argument("--out", default="")

    a = sub.add_parser("arith", help="arithmetic-group verifications")
    a.add_argument("action", choices=("verify-table2", "verify-table3",
                                      "hilbert-roundtrip", "quat-embed"))
    a.add_argument("--count", type=int, default=100)
    a.add_argument("--height", type=int, default=6)
    a.add_argument("--box", type=int, default=8)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out", default="")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.cmd == "list-suites":
        return _cmd_list(args)
    if args.cmd == "verify":
        return _cmd_verify(args)
    if args.cmd == "export-plane":
        return _cmd_export_plane(args)
    if args.cmd == "git-sweep":
        return _cmd_git_sweep(args)
    if args.cmd == "arith":
        return _cmd_arith(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
