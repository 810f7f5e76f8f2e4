"""Command-line entry point.

Subcommands wrap the library analyses with stable file formats: JSON for
structured reports, CSV for per-window and per-bin series.  Exit codes:
0 success, 2 parse error in an input file, 3 invalid arguments or ranges,
4 failed internal consistency check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .complexes import read_facets
from .dowker import (
    profile_to_csv,
    read_relation_or_code,
    windowed_profile,
)
from .errors import InternalCheckError, ParseError
from .homology import betti, simplicial_chain_complex
from .linalg import FieldTag
from .pathhom import cyclomatic, omega_dims, path_betti, read_digraph
from .tme import read_samples, select_bandwidth
from .wireless import (
    activation_sheaf,
    criticality_report,
    global_sections,
    interference_complex,
    link_complex,
    read_network,
    traffic_sim,
    vector_sheaf_cohomology,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); ranges are our exit 3
        raise UsageError(message)


def _write(text: str, dest: str):
    if dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dump_json(obj, dest: str):
    _write(json.dumps(obj, indent=2, sort_keys=True) + "\n", dest)


_FIELD = {"f2": FieldTag.GF2, "q": FieldTag.RATIONAL}


def _cmd_homology(args) -> int:
    K = read_facets(args.facets)
    C = simplicial_chain_complex(K, _FIELD[args.field], args.max_dim)
    prof = betti(C)
    report = {
        "field": args.field,
        "dims": list(C.dims),
        "ranks": list(prof.ranks),
        "betti": list(prof.betti),
        "reduced": list(prof.reduced),
        "z_dims": list(prof.z_dims),
        "b_dims": list(prof.b_dims),
        "euler": prof.euler,
        "facets": [list(K.label_tuple(f)) for f in K.facets()],
    }
    _dump_json(report, args.output)
    return 0


def _cmd_dowker(args) -> int:
    R = read_relation_or_code(args.input, args.format)
    w = args.window if args.window is not None else R.n_rows
    if not 1 <= w <= R.n_rows:
        raise UsageError(f"--window must be in 1..{R.n_rows}, got {w}")
    profile = windowed_profile(R, w, args.max_betti_dim)
    _write(profile_to_csv(profile), args.output)
    return 0


def _cmd_path(args) -> int:
    if not 0 <= args.max_p <= 4:
        raise UsageError("--max-p must be in 0..4")
    D = read_digraph(args.edges)
    prof = path_betti(D, args.max_p, reduced=args.reduced)
    report = {
        "vertices": D.n,
        "arcs": len(D.arcs),
        "max_p": args.max_p,
        "omega_dims": omega_dims(D, args.max_p),
        "betti": list(prof.betti),
        "reduced": list(prof.reduced),
        "cyclomatic": cyclomatic(D),
    }
    _dump_json(report, args.output)
    return 0


def _cmd_network(args) -> int:
    if args.traffic < 0:
        raise UsageError("--traffic must be nonnegative")
    if args.lh and any(k < 0 for k in args.lh):
        raise UsageError("--lh degrees must be nonnegative")
    W = read_network(args.network)
    K = link_complex(W) if args.complex == "link" else interference_complex(W)
    report = {
        "complex": args.complex,
        "nodes": len(W.nodes),
        "facets": [list(K.label_tuple(f)) for f in K.facets()],
    }
    if args.lh:
        rep = criticality_report(W, args.lh, kind=args.complex)
        report["lh"] = {
            "means": {str(k): v for k, v in sorted(rep.means.items())},
            "rows": [
                {
                    "simplex": list(labels),
                    "lh": {str(k): v for k, v in sorted(lh.items())},
                    "above_average": {str(k): v for k, v in sorted(above.items())},
                }
                for labels, lh, above in rep.rows
            ],
        }
    if args.sections or args.cohomology:
        sheaf = activation_sheaf(K)
        if args.sections:
            sections = global_sections(sheaf)
            entry = {"count": len(sections)}
            if len(sections) <= 10_000:
                entry["transmitting_sets"] = [list(s.transmitting) for s in sections]
            report["sections"] = entry
        if args.cohomology:
            report["cohomology"] = vector_sheaf_cohomology(sheaf)
    if args.traffic:
        res = traffic_sim(W, args.traffic, args.seed)
        report["traffic"] = {
            "packets": args.traffic,
            "seed": args.seed,
            "forwarded": dict(sorted(res.forwarded.items())),
            "delivered": res.delivered,
            "dropped": res.dropped,
        }
    _dump_json(report, args.output)
    return 0


def _cmd_tme(args) -> int:
    if args.bins < 2:
        raise UsageError("--bins must be at least 2")
    if args.bandwidths < 1:
        raise UsageError("--bandwidths must be at least 1")
    with open(args.samples, encoding="utf-8") as fh:
        samples = read_samples(fh.read())
    if samples.size < 2:
        raise UsageError("need at least two samples")
    scan, decomp = select_bandwidth(samples, args.bandwidths, args.bins)
    report = {
        "n_samples": int(samples.size),
        "bins": args.bins,
        "bandwidths": list(scan.bandwidths),
        "ucats": list(scan.ucats),
        "modal_ucat": scan.modal_ucat,
        "chosen_bandwidth": scan.chosen_bandwidth,
        "weights": list(decomp.weights),
    }
    _dump_json(report, args.output)
    if args.csv:
        grid = decomp.components[0].xs if decomp.components else []
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["x", "f"] + [f"component_{m + 1}" for m in range(len(decomp.components))]
        )
        fs = sum(c.fs for c in decomp.components)
        for i, x in enumerate(grid):
            writer.writerow(
                [repr(float(x)), repr(float(fs[i]))]
                + [repr(float(c.fs[i])) for c in decomp.components]
            )
        _write(buf.getvalue(), args.csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="topokit",
        description="Exact-arithmetic topological analysis of code, digraphs, "
        "wireless networks, and 1D densities",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="Betti numbers of a facet file")
    p.add_argument("facets")
    p.add_argument("--field", choices=("f2", "q"), default="f2")
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--output", default="-")
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("dowker", help="windowed Dowker profile of a relation or program")
    p.add_argument("input")
    p.add_argument("--format", choices=("auto", "csv", "code"), default="auto")
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--max-betti-dim", type=int, default=2)
    p.add_argument("--output", default="-")
    p.set_defaults(func=_cmd_dowker)

    p = sub.add_parser("path", help="path homology of a digraph")
    p.add_argument("edges")
    p.add_argument("--max-p", type=int, default=2)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--output", default="-")
    p.set_defaults(func=_cmd_path)

    p = sub.add_parser("network", help="wireless network analyses")
    p.add_argument("network")
    p.add_argument("--complex", choices=("link", "interference"), default="link")
    p.add_argument("--lh", type=int, nargs="+", metavar="K")
    p.add_argument("--sections", action="store_true")
    p.add_argument("--cohomology", action="store_true")
    p.add_argument("--traffic", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-")
    p.set_defaults(func=_cmd_network)

    p = sub.add_parser("tme", help="bandwidth scan and unimodal decomposition")
    p.add_argument("samples")
    p.add_argument("--bins", type=int, default=512)
    p.add_argument("--bandwidths", type=int, default=64)
    p.add_argument("--output", default="-")
    p.add_argument("--csv", default=None, help="write the decomposition table here")
    p.set_defaults(func=_cmd_tme)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"topokit: {exc}", file=sys.stderr)
        return 3
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"topokit: parse error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"topokit: {exc}", file=sys.stderr)
        return 3
    except InternalCheckError as exc:
        print(f"topokit: internal check failed: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"topokit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
