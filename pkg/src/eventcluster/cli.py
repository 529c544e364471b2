"""Command-line interface: ``eventcluster {cluster,sweep,gen,bench,serve}``.

Exit codes: 0 on success, 1 for usage errors, 2 for data errors.
Diagnostics go to standard error.
"""
import argparse
import csv
import sys
import warnings

from . import __version__
from .core import cluster_events, mean_gap
from .exceptions import EventClusterError
from .ingest import InputFormat, SortPolicy, UnsortedInputWarning, parse_events, write_result, write_series
from .measures import sweep
from .oracle_bench import measure_speedup, records_to_csv
from .synth import gen_burst_composite, gen_periodic, gen_uniform

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _sizes(text):
    try:
        sizes = [int(float(s)) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes:
        raise argparse.ArgumentTypeError("empty size list")
    return sizes


def _input_args(p):
    p.add_argument("input", help="timestamp file, or - for standard input")
    p.add_argument("--format", default="plain", type=InputFormat.parse,
                   help="plain | csv:<column> | jsonl:<field> (default: plain)")
    p.add_argument("--sort-policy", default="reject", choices=[s.value for s in SortPolicy])


def build_parser():
    parser = _Parser(prog="eventcluster", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="cluster a timestamp file")
    _input_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta-t", type=float, help="expected inter-event interval")
    g.add_argument("--auto-mean-gap", action="store_true",
                   help="use the mean gap of the input as the interval")

    p = sub.add_parser("sweep", help="service-quality measures over a log-frequency grid")
    _input_args(p)
    p.add_argument("--f-min", type=float, default=-2.0)
    p.add_argument("--f-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=51)

    p = sub.add_parser("gen", help="generate a synthetic series")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--periodic", action="store_true")
    kind.add_argument("--uniform", action="store_true")
    kind.add_argument("--burst-composite", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--period", type=float, default=1.0)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-", help="output file (default: standard output)")

    p = sub.add_parser("bench", help="runtime of the linear scan vs the DBSCAN baseline")
    p.add_argument("--sizes", type=_sizes, default=[1000, 10000, 100000])
    p.add_argument("--delta-t", type=float, default=1.0)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("serve", help="run the HTTP monitoring service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default=None)
    p.add_argument("--window", type=int, default=None, help="frequency detector window")
    return parser


def _read(args):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", UnsortedInputWarning)
        if args.input == "-":
            series = parse_events(sys.stdin.buffer, args.format, args.sort_policy)
        else:
            with open(args.input, "rb") as fh:
                series = parse_events(fh, args.format, args.sort_policy)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return series


def run_cluster(args, out):
    series = _read(args)
    delta_t = mean_gap(series) if args.auto_mean_gap else args.delta_t
    write_result(cluster_events(series, delta_t), out)


def run_sweep(args, out):
    series = _read(args)
    result = sweep(series, args.f_min, args.f_max, args.steps)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["f", "delta_t", "c_o", "c_n", "c_s"])
    for p in result.points:
        writer.writerow([repr(p.f), repr(p.delta_t), repr(p.c_o), repr(p.c_n), repr(p.c_s)])


def run_gen(args, out):
    if args.periodic:
        if args.n is None:
            raise UsageError("gen --periodic needs --n")
        series = gen_periodic(args.n, args.period, args.start)
    elif args.uniform:
        if args.n is None:
            raise UsageError("gen --uniform needs --n")
        series = gen_uniform(args.n, args.lo, args.hi, seed=args.seed)
    else:
        series = gen_burst_composite(seed=args.seed)
    if args.output == "-":
        write_series(series, out)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            write_series(series, fh)


def run_bench(args, out):
    records = measure_speedup(args.sizes, args.delta_t, repeats=args.repeats, seed=args.seed)
    out.write(records_to_csv(records))


def run_serve(args, out):
    from .service import serve

    serve(args.host, args.port, args.data_dir, args.window)


COMMANDS = {
    "cluster": run_cluster,
    "sweep": run_sweep,
    "gen": run_gen,
    "bench": run_bench,
    "serve": run_serve,
}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (EventClusterError, OSError) as exc:
        print(f"eventcluster: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
