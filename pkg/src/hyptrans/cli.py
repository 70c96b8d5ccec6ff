"""Command-line interface.

Subcommands: list, verify, verify-all, transmute, export-catalog, bench.
Exit codes: 0 all pass, 1 verification failure, 2 usage or catalog error.
HYPTRANS_QUAD_TOL overrides the default quadrature tolerance.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__, backend
from .catalog import Family, catalog, catalog_to_dict, get_identity
from .errors import HyptransError, UnknownCaseError, UnknownIdentityError
from .harness import (
    reports_to_csv,
    reports_to_json,
    reports_to_table,
    verify_all,
    verify_identity,
    verify_transmutation,
)

_FAMILIES = [f.value for f in Family]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyptrans",
        description="Verify fractional-integral and Stieltjes-transform "
                    "identities for hypergeometric solutions numerically.")
    ap.add_argument("--version", action="version",
                    version=f"hyptrans {__version__} ({backend.backend_name()} backend)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list catalog entries")
    p.add_argument("--family", choices=_FAMILIES + [f.lower() for f in _FAMILIES])
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p = sub.add_parser("verify", help="verify one identity")
    p.add_argument("id")
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--rtol", type=float, default=1e-6)
    p.add_argument("--mu", type=float, default=None,
                   help="pin mu instead of sampling it")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p = sub.add_parser("verify-all", help="verify the whole catalog")
    p.add_argument("--family", choices=_FAMILIES + [f.lower() for f in _FAMILIES])
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--rtol", type=float, default=1e-6)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--out", default=None, help="write the report to a file")

    p = sub.add_parser("transmute", help="check one transmutation-kernel case")
    p.add_argument("case", help='e.g. "c+", "a+,c+", "a-,b-,c-"')
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("export-catalog", help="write the catalog as JSON")
    p.add_argument("--out", required=True)

    return ap


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        print(text)


def _cmd_list(args) -> int:
    entries = catalog()
    if args.family:
        fam = args.family.lower()
        entries = [e for e in entries if e.family.value.lower() == fam]
    if args.format == "json":
        print(json.dumps([{"id": e.id, "paper_eq": e.paper_eq,
                           "family": e.family.value,
                           "x_domain": [list(iv) for iv in e.x_domain]}
                          for e in entries], indent=2))
    elif args.format == "csv":
        print("id,paper_eq,family")
        for e in entries:
            print(f"{e.id},{e.paper_eq},{e.family.value}")
    else:
        for e in entries:
            print(f"{e.id:22s} {e.family.value:12s} [{e.paper_eq}]")
        print(f"-- {len(entries)} identities")
    return 0


def _render(reports, args) -> str:
    if args.format == "json":
        return reports_to_json(reports, args.seed, args.rtol)
    if args.format == "csv":
        return reports_to_csv(reports)
    return reports_to_table(reports)


def _cmd_verify(args) -> int:
    r = verify_identity(args.id, args.seed, args.points, args.rtol,
                        mu_fixed=args.mu)
    print(_render([r], args))
    return 0 if r.all_passed else 1


def _cmd_verify_all(args) -> int:
    reports = verify_all(args.seed, args.points, args.rtol,
                         family=args.family, jobs=args.jobs)
    _emit(_render(reports, args), args.out)
    return 0 if all(r.all_passed for r in reports) else 1


def _cmd_transmute(args) -> int:
    r = verify_transmutation(args.case, args.seed, args.points, args.tol)
    if args.format == "json":
        print(json.dumps({
            "case": r.case,
            "kernel_points": [vars(k) for k in r.kernel_points],
            "gaussian_checks": [vars(g) for g in r.gaussian_checks],
        }, indent=2))
    else:
        worst = max((k.residual for k in r.kernel_points), default=0.0)
        print(f"case {r.case}: {sum(k.passed for k in r.kernel_points)}"
              f"/{len(r.kernel_points)} kernel points "
              f"(worst residual {worst:.3e})")
        for g in r.gaussian_checks:
            print(f"  gaussian mu={g.mu}: rel err {g.rel_err:.3e} "
                  f"{'pass' if g.passed else 'FAIL'}")
    return 0 if r.all_passed else 1


def _cmd_export(args) -> int:
    with open(args.out, "w") as fh:
        json.dump(catalog_to_dict(), fh, indent=2)
    print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "verify-all":
            return _cmd_verify_all(args)
        if args.command == "transmute":
            return _cmd_transmute(args)
        if args.command == "export-catalog":
            return _cmd_export(args)
    except (UnknownIdentityError, UnknownCaseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HyptransError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
