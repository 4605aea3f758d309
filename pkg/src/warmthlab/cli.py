"""Command-line entry point: ``warmthlab <command> [options]``.

Exit codes: 0 success, 2 parameter or guard error, 3 input parse error,
4 internal assertion (a proven inequality failed, i.e. a bug).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import experiments as ex
from .coloring import chromatic_number
from .errors import InternalAssertion, ParseError, WarmthLabError
from .formats import parse_graph6, write_graph6
from .homs import mobility_ub
from .warmth import codegree_warmth_ub, singleton_min_stability, warmth_exact

WHAT_CHOICES = ("warmth", "chi", "mobility-ub", "codegree-ub", "singleton-ub", "property-p")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _load_graph(args):
    if args.input:
        text = Path(args.input).read_text().strip().splitlines()
        if not text:
            raise ParseError("input file is empty", 0)
        return parse_graph6(text[0])
    if args.gen:
        return ex.graph_from_spec(args.gen)
    raise ex.InvalidParameter("give --gen or --input")


def cmd_compute(args) -> int:
    g = _load_graph(args)
    what = [w.strip() for w in args.what.split(",") if w.strip()]
    for w in what:
        if w not in WHAT_CHOICES:
            raise ex.InvalidParameter(f"unknown quantity {w!r}; choose from {WHAT_CHOICES}")
    record: dict = {"n": g.n, "graph6": write_graph6(g)}
    warmth = None
    if "warmth" in what or "mobility-ub" in what:
        warmth = warmth_exact(g).warmth
    if "warmth" in what:
        record["warmth"] = warmth
    if "chi" in what:
        record["chi"] = chromatic_number(g)
    if "codegree-ub" in what:
        record["warmth_ub_codegree"] = codegree_warmth_ub(g)
    if "singleton-ub" in what:
        # singletons d-stable => warmth <= d + 1
        d = singleton_min_stability(g)
        record["warmth_ub_singleton"] = None if d is None else d + 1
    if "mobility-ub" in what:
        record["mobility"] = mobility_ub(g, warmth=warmth).to_json()
        record["mobility_ub"] = record["mobility"]["best_ub"]
    if "property-p" in what:
        record["property_p"] = ex.property_p_record(
            g, s=args.s, alpha=args.alpha, v=args.v, mode=args.mode,
            trials=args.trials, seed=args.seed,
        )
    if "warmth" in record and "chi" in record and record["warmth"] > record["chi"]:
        raise InternalAssertion("warmth exceeds chromatic number")
    sys.stdout.write(_dump(record))
    return 0


def _write_records(records, doc: dict, args):
    if args.format == "csv":
        _emit(ex.write_csv(records), args.out)
        summary_stream = sys.stdout if args.out else sys.stderr
        summary_stream.write(_dump(doc))
    else:
        doc = dict(doc, rows=[r.__dict__ for r in records])
        _emit(_dump(doc), args.out)


def cmd_concentration(args) -> int:
    records, summary = ex.concentration(
        args.alpha, _int_list(args.n), args.trials, args.seed,
        mu=args.mu, jobs=args.jobs, timing=args.timing,
    )
    ex.spot_check(records)
    doc = {"schema": ex.SCHEMA_VERSION, "kind": "concentration", "seed": args.seed,
           "summary": summary.to_json()}
    _write_records(records, doc, args)
    return 0


def cmd_lovasz(args) -> int:
    params = {"p": args.p}
    if args.model == "regular":
        if args.d is None:
            raise ex.InvalidParameter("--model regular needs --d")
        params = {"d": args.d}
    records, summary = ex.lovasz_experiment(
        args.model, _int_list(args.n), args.trials, args.seed, params,
        jobs=args.jobs, timing=args.timing,
    )
    ex.spot_check(records)
    doc = {"schema": ex.SCHEMA_VERSION, "kind": "lovasz", "model": args.model,
           "seed": args.seed, "params": params, "summary": summary.to_json()}
    _write_records(records, doc, args)
    return 0


def cmd_nonmonotone(args) -> int:
    witnesses = ex.nonmonotone(args.max_n, args.budget, args.seed, jobs=args.jobs)
    candidates = len(ex.nonmonotone_candidates(args.max_n, args.budget, args.seed))
    doc = {
        "schema": ex.SCHEMA_VERSION,
        "kind": "nonmonotone",
        "max_n": args.max_n,
        "budget": args.budget,
        "seed": args.seed,
        "candidates": candidates,
        "witnesses": [w.to_json() for w in witnesses],
    }
    if args.format == "csv":
        lines = [f"schema={ex.SCHEMA_VERSION}", "graph6,u,v,w_before,w_after"]
        lines += [f"{w.graph6},{w.edge[0]},{w.edge[1]},{w.w_before},{w.w_after}" for w in witnesses]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_dump(doc), args.out)
    return 0


def cmd_property_p(args) -> int:
    g = _load_graph(args)
    record = ex.property_p_record(
        g, s=args.s, alpha=args.alpha, delta=args.delta, n_param=args.n_param,
        epsilon=args.epsilon, v=args.v, mode=args.mode, trials=args.trials, seed=args.seed,
    )
    _emit(_dump(record), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    default_jobs = int(os.environ.get("WARMTHLAB_JOBS", "1"))
    parser = argparse.ArgumentParser(prog="warmthlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, experiment=True):
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--out")
        if experiment:
            p.add_argument("--trials", type=int, default=50)
            p.add_argument("--jobs", type=int, default=default_jobs)
            p.add_argument("--format", choices=("csv", "json"), default="csv")
            p.add_argument("--timing", action="store_true",
                           help="fill the ms column (makes output non-reproducible)")

    def graph_source(p):
        p.add_argument("--gen", help="generator, e.g. complete:4, kneser:8,3, gnp:12,0.5,1")
        p.add_argument("--input", help="file whose first line is a graph6 string")

    def p_options(p):
        p.add_argument("--s", type=int)
        p.add_argument("--alpha", type=float)
        p.add_argument("--v", type=int)
        p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
        p.add_argument("--trials", type=int, default=1000)

    p = sub.add_parser("compute", help="quantities of a single graph as JSON")
    graph_source(p)
    p.add_argument("--what", default="warmth,chi")
    p.add_argument("--seed", type=int, default=0)
    p_options(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("concentration", help="warmth histograms of G(n, mu n^-alpha)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--n", default="12,14,16", help="comma-separated vertex counts")
    common(p)
    p.set_defaults(func=cmd_concentration)

    p = sub.add_parser("lovasz", help="certify m(G) <= chi(G) on random instances")
    p.add_argument("--model", choices=("gnp", "regular", "bipartite"), default="gnp")
    p.add_argument("--n", default="12")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--d", type=int)
    common(p)
    p.set_defaults(func=cmd_lovasz)

    p = sub.add_parser("nonmonotone", help="search edges whose deletion raises warmth")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--budget", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_nonmonotone, format="json")

    p = sub.add_parser("property-p", help="test the boundary-extension property P")
    graph_source(p)
    p_options(p)
    p.add_argument("--delta", type=float)
    p.add_argument("--n-param", type=int, help="n used in the dense-regime formulas")
    p.add_argument("--epsilon", type=float)
    common(p, experiment=False)
    p.set_defaults(func=cmd_property_p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        code, kind = 3, "ParseError"
        message = str(exc)
    except InternalAssertion as exc:
        code, kind = 4, "InternalAssertion"
        message = str(exc)
    except WarmthLabError as exc:
        code, kind = 2, type(exc).__name__
        message = str(exc)
    except OSError as exc:
        code, kind = 3, type(exc).__name__
        message = str(exc)
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
