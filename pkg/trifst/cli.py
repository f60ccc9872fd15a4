"""
trifst command line

    trifst compose A B
    trifst compose3 A B C [--strategy S] [--filter pair|single] [--lazy]
    trifst editdist A B [--sub c --ins c --del c --transpose c]
    trifst kernel A B --order n [--exact]
    trifst bench [--scenario editdist|kernel] [--seed s] [--size k] [--json]
    trifst info A [--dot] | trifst info --filter M|M1|M2|W [--dot]

Machine arguments are paths in the text format, or '-' for stdin.
Exit status: 0 success, 1 data error, 2 usage error.
"""
import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger

from . import __version__
from .core.config import load_config
from .core.engine import TrifstEngine
from .core.exceptions import TrifstError
from .core.transducer import is_acceptor, is_acyclic, is_regulated
from .skills.composition.compose3 import FILTER_MODES, Strategy
from .skills.filters.filters import filter_m, filter_m1, filter_m2, filter_w
from .utils.dot import filter_to_dot, transducer_to_dot
from .utils.logger import setup_logger
from .utils.text_format import read_symbols, read_text, write_text

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2

FILTERS = {"M": filter_m, "M1": filter_m1, "M2": filter_m2, "W": filter_w}


class _UsageError(Exception):
    """Argument combination argparse cannot express"""


def format_value(value: float) -> str:
    """Integral values print without a fraction ('1', not '1.0')"""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trifst", description="Weighted transducers with 3-way composition")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default from logging.yaml)")
    parser.add_argument("--config-dir", default=None, help="Directory holding the YAML configs")
    sub = parser.add_subparsers(dest="command", required=True)

    def machine_command(name: str, count: int, help_text: str, semiring: str):
        command = sub.add_parser(name, help=help_text)
        for arg in "ABC"[:count]:
            command.add_argument(arg, help="Machine path, or '-' for stdin")
        command.add_argument("--semiring", default=semiring, choices=("tropical", "probability", "log"))
        return command

    compose = machine_command("compose", 2, "2-way composition, result on stdout", "probability")
    compose.add_argument("-o", "--out", default=None, help="Output path (default stdout)")

    compose3 = machine_command("compose3", 3, "3-way composition, result on stdout", "probability")
    compose3.add_argument("--strategy", default=None, choices=[s.value for s in Strategy])
    compose3.add_argument("--filter", dest="filter_mode", default=None, choices=FILTER_MODES)
    compose3.add_argument("--lazy", action="store_true", default=None)
    compose3.add_argument("--counters", action="store_true", help="Log ComposeCounters at INFO")
    compose3.add_argument("-o", "--out", default=None, help="Output path (default stdout)")

    editdist = machine_command("editdist", 2, "Edit distance between two acceptors", "tropical")
    editdist.add_argument("--sub", type=float, default=None, help="Substitution cost")
    editdist.add_argument("--ins", type=float, default=None, help="Insertion cost")
    editdist.add_argument("--del", dest="deletion", type=float, default=None, help="Deletion cost")
    editdist.add_argument("--transpose", type=float, default=None, help="Transposition cost (off by default)")

    kernel = machine_command("kernel", 2, "n-gram kernel between two acceptors", "probability")
    kernel.add_argument("--order", type=int, default=None, help="Largest n-gram length")
    kernel.add_argument("--exact", action="store_true", default=None, help="Only n-grams of length order")

    bench = sub.add_parser("bench", help="Cascade versus 3-way composition timings")
    bench.add_argument("--scenario", default="editdist", choices=("editdist", "kernel"))
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--size", type=int, default=None, help="States of the random outer acceptors")
    bench.add_argument("--repetitions", type=int, default=None)
    bench.add_argument("--json", action="store_true", help="Emit the BenchReport as JSON")
    bench.add_argument("--out", default=None, help="Also write the JSON report to this path")

    info = sub.add_parser("info", help="Statistics of a machine or a built-in filter")
    info.add_argument("A", nargs="?", default=None, help="Machine path, or '-' for stdin")
    info.add_argument("--filter", dest="filter_name", choices=sorted(FILTERS), default=None)
    info.add_argument("--semiring", default="probability", choices=("tropical", "probability", "log"))
    info.add_argument("--symbols", default=None, help="symbol<TAB>id file for DOT labels")
    info.add_argument("--dot", action="store_true", help="Print Graphviz DOT instead of statistics")
    return parser


def _cmd_compose(engine: TrifstEngine, args) -> int:
    T1, T2 = read_text(args.A, args.semiring), read_text(args.B, args.semiring)
    write_text(engine.compose(T1, T2), args.out)
    return EXIT_OK


def _cmd_compose3(engine: TrifstEngine, args) -> int:
    machines = [read_text(path, args.semiring) for path in (args.A, args.B, args.C)]
    R, counters = engine.compose3(*machines, strategy=args.strategy, filter_mode=args.filter_mode, lazy=args.lazy)
    if args.counters:
        logger.info(f"Counters: {counters.to_dict()}")
    write_text(R, args.out)
    return EXIT_OK


def _cmd_editdist(engine: TrifstEngine, args) -> int:
    A1, A2 = read_text(args.A, args.semiring), read_text(args.B, args.semiring)
    costs = engine.edit_costs(substitution=args.sub, insertion=args.ins,
                              deletion=args.deletion, transposition=args.transpose)
    print(format_value(engine.edit_distance(A1, A2, costs)))
    return EXIT_OK


def _cmd_kernel(engine: TrifstEngine, args) -> int:
    A1, A2 = read_text(args.A, args.semiring), read_text(args.B, args.semiring)
    print(format_value(engine.kernel(A1, A2, args.order, args.exact)))
    return EXIT_OK


def _cmd_bench(engine: TrifstEngine, args) -> int:
    report = engine.bench(args.scenario, args.seed, args.size, args.repetitions)
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
    if args.json:
        print(report.to_json())
    else:
        print(f"{'method':<15}{'wall_ms':>10}{'intermediate':>14}{'emitted':>10}{'probes':>10}{'states':>8}")
        for entry in report.entries:
            print(f"{entry.method:<15}{entry.wall_ms:>10.2f}{entry.intermediate_transitions:>14}"
                  f"{entry.transitions_emitted:>10}{entry.match_probes:>10}{entry.result_states:>8}")
        print(f"results agree on {report.sampled_pairs} sampled pairs: {report.results_agree}")
    return EXIT_OK


def _cmd_info(engine: TrifstEngine, args) -> int:
    if (args.A is None) == (args.filter_name is None):
        raise _UsageError("info needs either a machine path or --filter")
    if args.filter_name:
        A = FILTERS[args.filter_name]()
        if args.dot:
            sys.stdout.write(filter_to_dot(A))
        else:
            print(f"filter {args.filter_name}: {A.num_states} states, {A.num_transitions} transitions, "
                  f"alphabet {len(A.alphabet)}")
        return EXIT_OK

    T = read_text(args.A, args.semiring)
    if args.dot:
        symbols = None
        if args.symbols:
            symbols = {label: symbol for symbol, label in read_symbols(args.symbols).items()}
        sys.stdout.write(transducer_to_dot(T, Path(str(args.A)).stem or "T", symbols))
        return EXIT_OK
    stats = T.stats()
    print(f"semiring\t{T.semiring.name}")
    print(f"states\t{stats.num_states}")
    print(f"transitions\t{stats.num_transitions}")
    print(f"max_out_degree\t{stats.max_out_degree}")
    print(f"initial\t{len(T.initials)}")
    print(f"final\t{len(T.finals)}")
    print(f"acceptor\t{str(is_acceptor(T)).lower()}")
    print(f"acyclic\t{str(is_acyclic(T)).lower()}")
    print(f"regulated\t{str(is_regulated(T)).lower()}")
    return EXIT_OK


COMMANDS = {
    "compose": _cmd_compose,
    "compose3": _cmd_compose3,
    "editdist": _cmd_editdist,
    "kernel": _cmd_kernel,
    "bench": _cmd_bench,
    "info": _cmd_info,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one CLI command

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging_config = load_config("logging", args.config_dir)
    setup_logger(args.log_level or logging_config.get("level", "WARNING"), logging_config.get("file"))

    try:
        engine = TrifstEngine(args.config_dir)
        return COMMANDS[args.command](engine, args)
    except _UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"trifst: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TrifstError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"trifst: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
