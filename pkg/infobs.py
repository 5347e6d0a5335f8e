#!/usr/bin/env python3
"""
infobs - infimal observable superlanguages from the command line

Usage examples:
    infobs.py gen lowerbound --n 4 -o k4.aut --mask-out proj.map
    infobs.py compute inf-o -k k4.aut -m proj.map -o result.aut --report
    infobs.py check prefix-closed fig4.aut --nfa
    infobs.py bench lowerbound --n-min 2 --n-max 10 --csv bench.csv
    infobs.py verify oracle --instances 200 --max-states 6 --seed 42

Exit codes: 0 success, 1 verification failure, 2 input or format error,
3 resource budget exceeded.
"""

import argparse
import copy
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from automaton_io import (export_dot, read_automaton, read_mask, serialize_automaton,
                          serialize_mask, write_text)
from benchmark import (ComplexityReport, ComplexityRow, lower_bound, quotient_rows_to_csv,
                       run_lowerbound_bench, run_quotient_bench, upper_bound)
from closure_ops import is_prefix_closed_nfa
from core_automata import InputError, ResourceBudgetExceeded, VerificationFailure
from inf_algorithms import (UncontrollableSet, check_upper_bound_structure, inf_c,
                            inf_co, inf_o_stages)
from logging_system import get_logging_system, setup_exception_logging
from verification import (RunSettings, verify_inf_c, verify_lemma1, verify_lemma3,
                          verify_oracle, verify_prefix_closed, verify_prime)
from witnesses import WitnessFamily, WitnessSpec, lower_bound_projection

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

CONFIG_FILE = 'config/infobs_config.json'
DEFAULT_CONFIG = {
    "log_dir": None,
    "log_level": "WARNING",
    "subset_budget": 2 ** 20,
    "instance_density": 0.8,
    "check_len": 8,
    "max_events": 4,
    "workers": 1,
}


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Load configuration from file or use defaults"""
    config = copy.deepcopy(DEFAULT_CONFIG)
    path = path or CONFIG_FILE
    if os.path.exists(path):
        try:
            with open(path, 'r') as f:
                file_config = json.load(f)
            unknown = set(file_config) - set(DEFAULT_CONFIG)
            if unknown:
                logger.warning(f"Ignoring unknown config keys: {sorted(unknown)}")
            config.update({k: v for k, v in file_config.items() if k in DEFAULT_CONFIG})
        except (OSError, ValueError) as e:
            logger.warning(f"Failed to load config {path}: {e}")
    return config


def save_config(config: Dict[str, Any], path: Optional[str] = None) -> bool:
    """Save configuration to file"""
    path = path or CONFIG_FILE
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    try:
        with open(path, 'w') as f:
            json.dump(config, f, indent=2)
        return True
    except OSError as e:
        logger.error(f"Failed to save config {path}: {e}")
        return False


def _emit(text: str, output: Optional[str]):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        write_text(output, text)


def _events(value: str) -> List[str]:
    return [e.strip() for e in value.split(",") if e.strip()]


def _report_row(n: int, stats) -> ComplexityRow:
    return ComplexityRow(n=n,
                         input_states=stats.input_states,
                         gh_nfa_states=stats.gh_nfa_states,
                         subset_states=stats.subset_states,
                         marked_subsets=stats.marked_subsets,
                         final_states=stats.final_states,
                         lower_bound=lower_bound(n),
                         upper_bound=upper_bound(n),
                         wall_ms=stats.elapsed_ms)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_compute(args, config) -> int:
    k = read_automaton(args.k, "dfa")
    if args.what == "inf-c":
        u = UncontrollableSet(k.alphabet, frozenset(_events(args.uncontrollable or "")))
        _emit(serialize_automaton(inf_c(k, u)), args.output)
        return EXIT_OK

    if not args.m:
        raise InputError(f"compute {args.what} needs a mask file (-m)")
    m = read_mask(args.m, k.alphabet)
    if args.what == "inf-co":
        if not args.g:
            raise InputError("compute inf-co needs a plant file (-g)")
        g = read_automaton(args.g, "dfa")
        u = UncontrollableSet(k.alphabet, frozenset(_events(args.uncontrollable or "")))
        _emit(serialize_automaton(inf_co(k, g, u, m, config["subset_budget"])), args.output)
        return EXIT_OK

    stages = inf_o_stages(k, m, config["subset_budget"])
    _emit(serialize_automaton(stages.result.dfa), args.output)
    if args.report:
        stats = stages.result.stats
        n = stats.closure_states or stats.input_states
        report = ComplexityReport(rows=[_report_row(n, stats)])
        sys.stdout.write(report.to_csv())
        problems = check_upper_bound_structure(stages)
        if problems:
            for problem in problems:
                logger.error(problem)
            return EXIT_VERIFICATION
    return EXIT_OK


def cmd_check(args, config) -> int:
    a = read_automaton(args.file, "nfa" if args.nfa else "dfa")
    budget = args.budget if args.budget is not None else config["subset_budget"]
    closed = is_prefix_closed_nfa(a, budget)
    sys.stdout.write(f"prefix-closed: {'true' if closed else 'false'}\n")
    return EXIT_OK


def cmd_gen(args, config) -> int:
    spec = WitnessSpec(WitnessFamily(args.family), args.n)
    _emit(serialize_automaton(spec.build()), args.output)
    if args.mask_out:
        if spec.family is not WitnessFamily.LOWER_BOUND:
            raise InputError("--mask-out only applies to the lowerbound family")
        write_text(args.mask_out, serialize_mask(lower_bound_projection()))
    return EXIT_OK


def cmd_bench(args, config) -> int:
    workers = args.workers or config["workers"]
    if args.what == "quotient":
        rows = run_quotient_bench(args.n_min, args.n_max, workers)
        _emit(quotient_rows_to_csv(rows), args.csv)
        loose = [r.n for r in rows if not r.tight]
        if loose:
            logger.error(f"quotient union not tight for n={loose}")
            return EXIT_VERIFICATION
        return EXIT_OK

    report = run_lowerbound_bench(args.n_min, args.n_max, workers, config["subset_budget"])
    _emit(report.to_csv(), args.csv)
    report.check()
    return EXIT_OK


def cmd_verify(args, config) -> int:
    if args.what == "prime":
        report = verify_prime(args.n_max)
    else:
        settings = RunSettings(instances=args.instances,
                               max_states=args.max_states,
                               seed=args.seed,
                               max_events=config["max_events"],
                               density=config["instance_density"],
                               check_len=args.check_len or config["check_len"],
                               workers=args.workers or config["workers"])
        runners = {
            "oracle": verify_oracle,
            "lemma1": verify_lemma1,
            "lemma3": verify_lemma3,
            "inf-c": verify_inf_c,
            "prefix-closed": verify_prefix_closed,
        }
        report = runners[args.what](settings)
    sys.stdout.write(report.summary() + "\n")
    report.raise_if_failed()
    return EXIT_OK


def cmd_export(args, config) -> int:
    a = read_automaton(args.file, "nfa" if args.nfa else "dfa")
    _emit(export_dot(a), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='infobs',
        description='Infimal prefix-closed observable superlanguages of regular languages'
    )
    parser.add_argument('--config', help=f'JSON config file (default: {CONFIG_FILE})')
    parser.add_argument('--log-dir', help='Directory for rotating log files')
    parser.add_argument('--log-level', help='DEBUG, INFO, WARNING, ERROR or CRITICAL')
    parser.add_argument('-v', '--verbose', action='store_true', help='Shortcut for --log-level INFO')
    sub = parser.add_subparsers(dest='command', required=True)

    compute = sub.add_parser('compute', help='Compute inf-o, inf-c or inf-co')
    compute.add_argument('what', choices=['inf-o', 'inf-c', 'inf-co'])
    compute.add_argument('-k', required=True, help='DFA file for K')
    compute.add_argument('-m', help='Mask file')
    compute.add_argument('-g', help='Plant DFA file (inf-co)')
    compute.add_argument('--uncontrollable', help='Comma separated uncontrollable events')
    compute.add_argument('-o', '--output', help='Output file (default: stdout)')
    compute.add_argument('--report', action='store_true', help='Print the state-count report as CSV')
    compute.set_defaults(func=cmd_compute)

    check = sub.add_parser('check', help='Decide a language property')
    check.add_argument('what', choices=['prefix-closed'])
    check.add_argument('file')
    check.add_argument('--nfa', action='store_true', help='Read the file as an NFA')
    check.add_argument('--budget', type=int, help='Maximum subset states')
    check.set_defaults(func=cmd_check)

    gen = sub.add_parser('gen', help='Generate a witness automaton')
    gen.add_argument('family', choices=[f.value for f in WitnessFamily])
    gen.add_argument('--n', type=int, help='Size parameter')
    gen.add_argument('-o', '--output', help='Output file (default: stdout)')
    gen.add_argument('--mask-out', help='Also write the {a,b,c}->{a,b} projection (lowerbound)')
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser('bench', help='State-complexity benchmarks')
    bench.add_argument('what', choices=['lowerbound', 'quotient'])
    bench.add_argument('--n-min', type=int, default=2)
    bench.add_argument('--n-max', type=int, default=10)
    bench.add_argument('--csv', help='CSV output file (default: stdout)')
    bench.add_argument('--workers', type=int, help='Thread pool size')
    bench.set_defaults(func=cmd_bench)

    verify = sub.add_parser('verify', help='Randomized and witness-based verification')
    verify.add_argument('what', choices=['oracle', 'lemma1', 'lemma3', 'inf-c', 'prime', 'prefix-closed'])
    verify.add_argument('--instances', type=int, default=200)
    verify.add_argument('--max-states', type=int, default=6)
    verify.add_argument('--seed', type=int, default=42)
    verify.add_argument('--check-len', type=int, help='Word length for bounded checks')
    verify.add_argument('--n-max', type=int, default=4, help='Largest prime-family index (prime)')
    verify.add_argument('--workers', type=int, help='Thread pool size')
    verify.set_defaults(func=cmd_verify)

    export = sub.add_parser('export', help='Export an automaton')
    export.add_argument('format', choices=['dot'])
    export.add_argument('file')
    export.add_argument('--nfa', action='store_true', help='Read the file as an NFA')
    export.add_argument('-o', '--output', help='Output file (default: stdout)')
    export.set_defaults(func=cmd_export)

    return parser


def run_cli(argv: List[str]) -> int:
    """Run one command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT

    config = load_config(args.config)
    if args.log_dir:
        config["log_dir"] = args.log_dir
    if args.log_level:
        config["log_level"] = args.log_level
    elif args.verbose:
        config["log_level"] = "INFO"
    get_logging_system(config["log_dir"], config["log_level"], reconfigure=True)

    try:
        return args.func(args, config)
    except VerificationFailure as e:
        logger.error(str(e))
        return EXIT_VERIFICATION
    except ResourceBudgetExceeded as e:
        logger.error(str(e))
        return EXIT_BUDGET
    except (InputError, ValueError) as e:
        logger.error(str(e))
        return EXIT_INPUT
    except OSError as e:
        logger.error(f"File error: {e}")
        return EXIT_INPUT


def main():
    setup_exception_logging()
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == '__main__':
    main()
