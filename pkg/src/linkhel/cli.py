"""Command-line front end.

Subcommands: ``compute`` (invariant report for a link document), ``field``
(CSV export of the sampled torus field), ``phi`` (fundamental-solution
tables), and ``catalog`` (built-in links).  Exit codes: 0 success, 1 parse
or usage error, 2 degenerate input, 3 triple-linking gate refusal.
The environment variable LINKHEL_THREADS caps internal parallelism
(0 = automatic).
"""

import argparse
import json
import sys

import numpy as np

from . import catalog as _catalog
from . import linkdoc
from .charmap import sample_VL
from .errors import LinkDocumentError, LinkhelError, NonzeroLinking
from .invariants import milnor_mu
from .torusfields import phi2_grid, phi_grid, grid_coords, write_field_csv

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DEGENERATE = 2
EXIT_GATE = 3


def _report_payload(input_name, n, report=None, error=None):
    payload = {
        "input": input_name,
        "grid_n": n,
        "p": None,
        "q": None,
        "r": None,
        "deg_residuals": None,
        "nu": None,
        "mu": None,
        "mu_residual": None,
        "component_means": None,
        "mean_flux_warning": None,
        "convergence": None,
        "error": error,
    }
    if report is not None:
        payload.update(
            p=report.p,
            q=report.q,
            r=report.r,
            deg_residuals=[float(v) for v in report.deg_residuals],
            nu=report.nu,
            mu=report.mu,
            mu_residual=float(report.mu_residual),
            component_means=[float(v) for v in report.diagnostics["component_means"]],
            mean_flux_warning=bool(report.diagnostics["mean_flux_warning"]),
        )
        if report.mu_delta_half is not None:
            payload["convergence"] = {
                "n_half": report.grid_n // 2,
                "mu_half": float(report.diagnostics["mu_half"]),
                "delta": float(report.mu_delta_half),
                "converged": bool(report.converged),
            }
    return payload


def cmd_compute(args):
    link = linkdoc.load_link(args.input)
    try:
        report = milnor_mu(link, args.grid, check_convergence=args.check_convergence)
    except NonzeroLinking as exc:
        error = {
            "code": "nonzero_linking",
            "message": str(exc),
            "p": exc.p,
            "q": exc.q,
            "r": exc.r,
        }
        if args.json:
            print(json.dumps(_report_payload(args.input, args.grid, error=error),
                             indent=2, sort_keys=True))
        else:
            print(f"pairwise linking nonzero: (p, q, r) = ({exc.p}, {exc.q}, {exc.r})")
            print("the triple linking number is undefined for this link")
        return EXIT_GATE

    if args.json:
        print(json.dumps(_report_payload(args.input, args.grid, report=report),
                         indent=2, sort_keys=True))
        return EXIT_OK

    res = ", ".join(f"{v:.3e}" for v in report.deg_residuals)
    print(f"input:        {args.input}")
    print(f"grid:         {report.grid_n}")
    print(f"p, q, r:      {report.p}, {report.q}, {report.r}")
    print(f"residuals:    {res}")
    print(f"nu:           {report.nu:+.8f}")
    print(f"mu:           {report.mu:+.8f}")
    print(f"mu residual:  {report.mu_residual:.3e}")
    if report.diagnostics["mean_flux_warning"]:
        print("warning:      component mean flux above 1e-4; value may be under-resolved")
    if report.mu_delta_half is not None:
        print(f"|mu_N - mu_N/2|: {report.mu_delta_half:.3e} "
              f"({'converged' if report.converged else 'not converged'})")
    return EXIT_OK


def cmd_field(args):
    link = linkdoc.load_link(args.input)
    V = sample_VL(link, args.grid)
    with open(args.out, "w", newline="") as fh:
        write_field_csv(V, fh)
    return EXIT_OK


def cmd_phi(args):
    n, m = args.grid, args.truncation
    coords = [float(x) for x in grid_coords(n)]
    with open(args.out, "w", newline="") as fh:
        if args.dim == 2:
            table = phi2_grid(n, m)
            fh.write("x,y,phi\n")
            for b in range(n):
                for a in range(n):
                    fh.write(f"{coords[a]!r},{coords[b]!r},{float(table[a, b])!r}\n")
        else:
            table = phi_grid(n, m).data
            fh.write("x,y,z,phi\n")
            for c in range(n):
                for b in range(n):
                    for a in range(n):
                        fh.write(
                            f"{coords[a]!r},{coords[b]!r},{coords[c]!r},"
                            f"{float(table[a, b, c])!r}\n"
                        )
    return EXIT_OK


def cmd_catalog(args):
    if args.action == "list":
        for name in _catalog.names():
            print(name)
        return EXIT_OK
    try:
        entry = _catalog.get_entry(args.name)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PARSE
    print(linkdoc.dumps(linkdoc.entry_to_document(entry)))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="linkhel",
        description="Linking invariants of three-component links via torus helicity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="invariant report for a link document")
    p_compute.add_argument("input", help="path to a link JSON document")
    p_compute.add_argument("--grid", type=int, default=64, metavar="N")
    p_compute.add_argument("--check-convergence", action="store_true")
    p_compute.add_argument("--json", action="store_true")
    p_compute.set_defaults(func=cmd_compute)

    p_field = sub.add_parser("field", help="CSV export of the sampled torus field")
    p_field.add_argument("input", help="path to a link JSON document")
    p_field.add_argument("--grid", type=int, default=16, metavar="N")
    p_field.add_argument("--out", required=True, metavar="PATH")
    p_field.set_defaults(func=cmd_field)

    p_phi = sub.add_parser("phi", help="fundamental-solution table")
    p_phi.add_argument("--dim", type=int, choices=(2, 3), default=2)
    p_phi.add_argument("--truncation", type=int, default=8, metavar="M")
    p_phi.add_argument("--grid", type=int, default=64, metavar="N")
    p_phi.add_argument("--out", required=True, metavar="PATH")
    p_phi.set_defaults(func=cmd_phi)

    p_cat = sub.add_parser("catalog", help="built-in links")
    cat_sub = p_cat.add_subparsers(dest="action", required=True)
    cat_list = cat_sub.add_parser("list")
    cat_list.set_defaults(func=cmd_catalog, action="list")
    cat_dump = cat_sub.add_parser("dump")
    cat_dump.add_argument("name")
    cat_dump.set_defaults(func=cmd_catalog, action="dump")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LinkDocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonzeroLinking as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GATE
    except LinkhelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
