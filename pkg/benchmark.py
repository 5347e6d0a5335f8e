#!/usr/bin/env python3
"""
State-complexity benchmarks

Runs inf_o on the lower-bound family and the quotient union on the tight
family for a range of n, checks every row against its bounds and writes CSV
tables.
"""

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from core_automata import InputError, VerificationFailure, minimize
from closure_ops import quotient_union_primed
from inf_algorithms import check_upper_bound_structure, inf_o_stages, result_properties
from masks import PrimedAlphabet
from witnesses import gen_lower_bound, gen_quotient_tight, lower_bound_projection

logger = logging.getLogger(__name__)

T = TypeVar("T")

# result properties are checked on words up to PROPERTY_LEN for n <= PROPERTY_MAX_N
PROPERTY_LEN = 8
PROPERTY_MAX_N = 10


def lower_bound(n: int) -> int:
    """ceil(3/4 * 2^n) - 1"""
    return math.ceil(3 * 2 ** n / 4) - 1


def upper_bound(n: int) -> int:
    return 2 ** n + 1


@dataclass(frozen=True)
class ComplexityRow:
    n: int
    input_states: int
    gh_nfa_states: int
    subset_states: int
    marked_subsets: int
    final_states: int
    lower_bound: int
    upper_bound: int
    wall_ms: float

    def within_bounds(self) -> bool:
        return self.lower_bound <= self.final_states <= self.upper_bound


@dataclass
class ComplexityReport:
    """Rows of one benchmark run, ordered by n"""

    rows: List[ComplexityRow] = field(default_factory=list)
    structure_problems: List[str] = field(default_factory=list)

    def violations(self) -> List[str]:
        problems = [f"n={row.n}: final {row.final_states} outside "
                    f"[{row.lower_bound}, {row.upper_bound}]"
                    for row in self.rows if not row.within_bounds()]
        return problems + self.structure_problems

    def check(self):
        """Raise VerificationFailure if any row breaks its bounds"""
        problems = self.violations()
        if problems:
            for problem in problems:
                logger.error(problem)
            raise VerificationFailure(f"{len(problems)} bound violations")

    def growth_ratios(self) -> np.ndarray:
        """final_states(n+1) / final_states(n) over consecutive rows"""
        finals = np.array([row.final_states for row in self.rows], dtype=float)
        if finals.size < 2:
            return np.empty(0)
        return finals[1:] / np.maximum(finals[:-1], 1.0)

    def to_csv(self, include_time: bool = True) -> str:
        columns = [f.name for f in fields(ComplexityRow)]
        if not include_time:
            columns.remove("wall_ms")
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in self.rows:
            record = asdict(row)
            record["wall_ms"] = f"{row.wall_ms:.3f}"
            writer.writerow(record)
        return out.getvalue()


def _ordered_map(func: Callable[[int], T], values: Sequence[int], workers: int) -> List[T]:
    if workers <= 1:
        return [func(v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, values))


def lowerbound_row(n: int, budget: Optional[int] = None) -> Tuple[ComplexityRow, List[str]]:
    """
    inf_o statistics for the n-state lower-bound witness

    Returns the row and its violations: the structural checks of the
    pipeline, and for n <= PROPERTY_MAX_N the properties of the result
    (prefix-closed, contains eps and the closure of K, observable).
    """
    k, projection = gen_lower_bound(n), lower_bound_projection()
    stages = inf_o_stages(k, projection, budget)
    stats = stages.result.stats
    found = list(check_upper_bound_structure(stages))
    if n <= PROPERTY_MAX_N:
        found += result_properties(k, projection, stages.result.dfa, PROPERTY_LEN)
    problems = [f"n={n}: {p}" for p in found]
    row = ComplexityRow(n=n,
                        input_states=stats.input_states,
                        gh_nfa_states=stats.gh_nfa_states,
                        subset_states=stats.subset_states,
                        marked_subsets=stats.marked_subsets,
                        final_states=stats.final_states,
                        lower_bound=lower_bound(n),
                        upper_bound=upper_bound(n),
                        wall_ms=stats.elapsed_ms)
    logger.info(f"lowerbound n={n}: final={row.final_states} "
                f"bounds=[{row.lower_bound}, {row.upper_bound}] {row.wall_ms:.1f} ms",
                extra={"command": "bench lowerbound", "n": n})
    return row, problems


def run_lowerbound_bench(n_min: int, n_max: int, workers: int = 1,
                         budget: Optional[int] = None) -> ComplexityReport:
    """
    Benchmark inf_o on the lower-bound family for n_min..n_max

    Rows come back in n order whatever the number of workers.
    """
    if n_min < 2 or n_max < n_min:
        raise InputError(f"invalid range n={n_min}..{n_max}")
    results = _ordered_map(lambda n: lowerbound_row(n, budget), range(n_min, n_max + 1), workers)
    report = ComplexityReport()
    for row, problems in results:
        report.rows.append(row)
        report.structure_problems.extend(problems)
    return report


@dataclass(frozen=True)
class QuotientRow:
    n: int
    input_states: int
    quotient_states: int
    minimal_states: int

    @property
    def tight(self) -> bool:
        return self.minimal_states == self.n + 1


def run_quotient_bench(n_min: int, n_max: int, workers: int = 1) -> List[QuotientRow]:
    """Minimal size of the quotient union of the tight family, expected n + 1"""
    if n_min < 2 or n_max < n_min:
        raise InputError(f"invalid range n={n_min}..{n_max}")

    def row(n: int) -> QuotientRow:
        a = gen_quotient_tight(n)
        q = quotient_union_primed(a, PrimedAlphabet.for_alphabet(a.alphabet))
        result = QuotientRow(n, a.num_states, q.dfa.num_states, minimize(q.dfa).num_states)
        logger.info(f"quotient n={n}: minimal={result.minimal_states}",
                    extra={"command": "bench quotient", "n": n})
        return result

    return _ordered_map(row, range(n_min, n_max + 1), workers)


def quotient_rows_to_csv(rows: Sequence[QuotientRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "input_states", "quotient_states", "minimal_states", "tight"])
    for r in rows:
        writer.writerow([r.n, r.input_states, r.quotient_states, r.minimal_states, str(r.tight).lower()])
    return out.getvalue()
