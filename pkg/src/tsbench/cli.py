"""Command-line entry points.

``bench run`` executes one benchmark headlessly and prints the result CSV
to stdout; its flags mirror the /api/run query parameters one-to-one.
``bench serve`` starts the HTTP service (port from --port or BENCH_PORT).
"""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .errors import BenchError
from .runner import DatasetStore, recommend, results_to_csv, run_benchmark
from .service import DEFAULT_PORT, BenchService, parse_run_request


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--engines", required=True,
                        help="comma-separated engine ids, e.g. row_store,column_store")
    parser.add_argument("--operator", required=True)
    parser.add_argument("--dataset", help="built-in profile id or uploaded name")
    parser.add_argument("--dataset-csv", dest="dataset_csv",
                        help="path to a CSV file to benchmark instead of a profile")
    parser.add_argument("--rows", required=True)
    parser.add_argument("--cols", required=True)
    parser.add_argument("--reps")
    parser.add_argument("--warmups")
    parser.add_argument("--mode", choices=list(catalog.MODES))
    seen = {"series"}
    parser.add_argument("--series")
    for spec in catalog.OPERATOR_SPECS.values():
        for p in spec.params:
            if p.name not in seen:
                seen.add(p.name)
                parser.add_argument(f"--{p.name}", help=p.doc)


def _run(args: argparse.Namespace) -> int:
    store = DatasetStore()
    if args.dataset_csv:
        from .data import parse_dataset_csv

        with open(args.dataset_csv, "rb") as f:
            body = f.read()
        name = args.dataset or "uploaded"
        store.upload(name, parse_dataset_csv(body, name))
        dataset = name
    elif args.dataset:
        dataset = args.dataset
    else:
        print("error: one of --dataset / --dataset-csv is required", file=sys.stderr)
        return 2

    raw = {"engines": args.engines, "operator": args.operator, "dataset": dataset,
           "rows": args.rows, "cols": args.cols}
    for key in ("reps", "warmups", "mode"):
        value = getattr(args, key)
        if value is not None:
            raw[key] = value
    for spec in catalog.OPERATOR_SPECS.values():
        for p in spec.params:
            value = getattr(args, p.name, None)
            if value is not None:
                raw[p.name] = value

    spec = parse_run_request(raw, store)
    results = run_benchmark(spec, store=store)
    sys.stdout.write(results_to_csv(results, recommend(results)).decode("utf-8"))
    return 0


def _serve(args: argparse.Namespace) -> int:
    service = BenchService(port=args.port, host=args.host, quiet=args.quiet)
    print(f"listening on http://{args.host}:{service.port}", file=sys.stderr)
    try:
        service.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="bench",
                                     description="time-series benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run one benchmark, print CSV")
    _add_run_arguments(run_parser)

    serve_parser = sub.add_parser("serve", help="start the HTTP service")
    serve_parser.add_argument("--port", type=int, default=None,
                              help=f"default: $BENCH_PORT or {DEFAULT_PORT}")
    serve_parser.add_argument("--host", default="127.0.0.1")
    serve_parser.add_argument("--verbose", dest="quiet", action="store_false")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _run(args)
        return _serve(args)
    except BenchError as e:
        print(f"error [{e.code}]: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
