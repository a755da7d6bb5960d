"""Command-line interface: ``photonet eval | example | bench``."""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

EXIT_PARSE, EXIT_INELIGIBLE, EXIT_SYMBOLIC, EXIT_MISMATCH = 2, 3, 4, 5


CHOP = 1e-13


def fmt(x) -> str:
    """A real number with 12 significant digits; round-off below ``CHOP`` prints as 0."""
    x = float(x)
    if abs(x) < CHOP:
        x = 0.0
    return f"{x:.12g}"


def _num(z):
    z = complex(z)
    return fmt(z.real) if abs(z.imag) < CHOP else f"[{fmt(z.real)}, {fmt(z.imag)}]"


def _key(k):
    return "(" + ",".join(str(int(i)) for i in k) + ")"


def format_view(result, view) -> str:
    """JSON text for the requested view of an :class:`EvalResult`."""
    if not len(result.cod) and not len(result.dom) and view != "dm":
        return "{\"scalar\": " + _num(result.array) + "}"
    if view == "prob":
        items = sorted(result.prob_dist().items())
        return "{" + ", ".join(f"\"{_key(k)}\": {fmt(v)}" for k, v in items) + "}"
    if view == "amp":
        items = sorted(result.amplitudes().items())
        return "{" + ", ".join(f"\"{_key(k)}\": {_num(v)}" for k, v in items) + "}"
    if view == "dm":
        rho = result.density_matrix()
        rows = ["[" + ", ".join(_num(v) for v in row) + "]" for row in rho]
        return "[" + ",\n ".join(rows) + "]"
    raise ValueError(f"unknown view {view!r}")


def cmd_eval(args) -> int:
    from ..errors import BackendIneligible, CircuitFileError, NotAState, SymbolicDiagram
    from ..evaluate import evaluate
    from ..tn import infer_dims, plan, to_tensor_network
    from .circuit_file import parse

    try:
        d = parse(args.file, bind=True)
    except (CircuitFileError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        r = evaluate(d, backend=args.backend, cap=args.cap, algo=args.algo)
        text = format_view(r, args.view)
    except BackendIneligible as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INELIGIBLE
    except SymbolicDiagram as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_SYMBOLIC
    except NotAState as err:
        print(f"error: view {args.view!r}: {err}", file=sys.stderr)
        return EXIT_PARSE
    print(text)
    if args.dump_plan:
        if "network" in r.report:
            tn, path = r.report["network"], r.report["path"]
        else:
            tn = to_tensor_network(d, infer_dims(d, default=args.cap))
            path = plan(tn)
        report = {"network": tn.summary(), "path": path.summary(),
                  "peak_size": getattr(r.report.get("stats"), "peak_size", None)}
        out = json.dumps(report, indent=1)
        if args.dump_plan == "-":
            print(out, file=sys.stderr)
        else:
            with open(args.dump_plan, "w") as fh:
                fh.write(out)
    return 0


def cmd_example(args) -> int:
    from .examples import EXAMPLES

    kw = {}
    if args.name == "bose-hubbard-gd":
        kw = {"seed": args.seed, "restarts": args.restarts}
    rows, header, checks = EXAMPLES[args.name](**kw)
    for desc, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {desc}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return 0 if all(ok for _, ok in checks) else EXIT_MISMATCH


def cmd_bench(args) -> int:
    from .bench import agreement, run_bench, to_csv

    records, values = run_bench(
        modes=args.modes, photons=args.photons, depths=args.depth, seeds=args.seeds,
        timeout=args.timeout, mem_cap=args.mem_cap, jobs=args.jobs, out_dir=args.out,
        omit_timing=args.omit_timing,
        progress=(lambda s: print(s, file=sys.stderr)) if args.verbose else None,
    )
    sys.stdout.write(to_csv(records))
    worst = max(agreement(values).values(), default=0.0)
    print(f"max relative backend difference: {worst:.3g}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    from ..tn.dims import default_cap
    from .examples import EXAMPLES

    p = argparse.ArgumentParser(prog="photonet", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    e = sub.add_parser("eval", help="evaluate a JSON circuit file")
    e.add_argument("file")
    e.add_argument("--backend", choices=["tn", "permanent"], default="tn")
    e.add_argument("--view", choices=["prob", "amp", "dm"], default="prob")
    e.add_argument("--cap", type=int, default=default_cap(),
                   help="photon cap on open mode inputs (env PHOTONET_CAP, default 2)")
    e.add_argument("--algo", choices=["auto", "naive", "ryser", "glynn"], default="auto",
                   help="permanent algorithm")
    e.add_argument("--dump-plan", metavar="PATH", help="write network and path as JSON ('-' for stderr)")
    e.set_defaults(func=cmd_eval)

    x = sub.add_parser("example", help="run a bundled self-checking experiment")
    x.add_argument("name", choices=sorted(EXAMPLES))
    x.add_argument("--csv", help="write the result rows here")
    x.add_argument("--seed", type=int, default=0, help="bose-hubbard-gd: initialisation seed")
    x.add_argument("--restarts", type=int, default=0, help="bose-hubbard-gd: extra random restarts")
    x.set_defaults(func=cmd_example)

    b = sub.add_parser("bench", help="TN vs permanent benchmark harness")
    b.add_argument("--modes", type=int, nargs="+", help="mode counts (default: one per photon)")
    b.add_argument("--photons", type=int, nargs="+", default=[2, 3, 4])
    b.add_argument("--depth", nargs="+", choices=["constant", "log", "linear"],
                   default=["constant", "log", "linear"])
    b.add_argument("--seeds", type=int, default=1)
    b.add_argument("--timeout", type=float, default=60.0, help="seconds per record")
    b.add_argument("--mem-cap", type=int, default=None, help="address-space limit in bytes")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", default="bench_out", help="directory for CSV, metadata and circuits")
    b.add_argument("--omit-timing", action="store_true", help="leave wall times empty")
    b.add_argument("--verbose", action="store_true")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)
