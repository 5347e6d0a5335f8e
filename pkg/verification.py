#!/usr/bin/env python3
"""
Verification runs over seeded random instances and witness families

Each run returns a VerificationReport listing every failed check; the CLI
turns a non-empty failure list into exit code 1. Instance i of a run with
seed s always draws from numpy.random.default_rng([s, i]).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from core_automata import (Alphabet, Dfa, Nfa, VerificationFailure, append_event,
                           determinize, enumerate_language, equivalent,
                           generated_language, minimize, nondet_union,
                           product_intersection, suffix_dfa, universal_dfa)
from closure_ops import (is_prefix_closed_nfa, quotient_union_primed,
                         right_quotient_event, supremal_prefix_closed)
from inf_algorithms import (build_gh_nfa, check_upper_bound_structure,
                            inf_c, inf_c_reference, inf_co, inf_o,
                            inf_o_fixpoint_bounded, inf_o_reference,
                            inf_o_stages, result_properties)
from masks import Mask, PrimedAlphabet, combined_mask, mask_image, mask_inverse, rename_primed
from random_instances import (DEFAULT_DENSITY, instance_rng, random_alphabet,
                              random_dfa, random_mask, random_nfa,
                              random_uncontrollable)
from witnesses import (PRIMES, fooling_set_check, gen_fig4, gen_prime_nfa,
                       member_predicate, prime_fooling_set, primorial)

logger = logging.getLogger(__name__)


@dataclass
class VerificationReport:
    """Outcome of one verification run"""

    name: str
    instances: int
    seed: Optional[int] = None
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        seed = "" if self.seed is None else f" seed={self.seed}"
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"verify {self.name}: {self.instances} instances{seed}: {status}"

    def raise_if_failed(self):
        if self.failures:
            for failure in self.failures:
                logger.error(f"{self.name}: {failure}")
            raise VerificationFailure(self.summary())


@dataclass(frozen=True)
class RunSettings:
    instances: int = 200
    max_states: int = 6
    seed: int = 42
    max_events: int = 4
    density: float = DEFAULT_DENSITY
    check_len: int = 8
    workers: int = 1


InstanceCheck = Callable[[int], List[str]]


def _run(name: str, settings: RunSettings, check: InstanceCheck) -> VerificationReport:
    logger.info(f"verify {name}: {settings.instances} instances, seed {settings.seed}",
                extra={"command": f"verify {name}", "seed": settings.seed})
    indices = range(settings.instances)

    def guarded(index: int) -> List[str]:
        try:
            problems = check(index)
        except VerificationFailure as e:
            problems = [str(e)]
        for problem in problems:
            logger.warning(f"verify {name} instance {index}: {problem}",
                           extra={"command": f"verify {name}", "seed": settings.seed,
                                  "instance": index})
        return [f"instance {index}: {problem}" for problem in problems]

    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            results = list(pool.map(guarded, indices))
    else:
        results = [guarded(i) for i in indices]
    report = VerificationReport(name, settings.instances, settings.seed)
    for problems in results:
        report.failures.extend(problems)
    logger.info(report.summary())
    return report


def verify_oracle(settings: RunSettings) -> VerificationReport:
    """inf_o against the generic pipeline, the word-level fixpoint and the structural bounds"""

    def check(index: int) -> List[str]:
        rng = instance_rng(settings.seed, index)
        alphabet = random_alphabet(rng, settings.max_events)
        k = random_dfa(rng, alphabet, settings.max_states, settings.density)
        m = random_mask(rng, alphabet)
        stages = inf_o_stages(k, m)
        result = stages.result.dfa
        problems = list(check_upper_bound_structure(stages))
        if not equivalent(result, inf_o_reference(k, m)):
            problems.append("differs from the generic pipeline")
        words = enumerate_language(result, settings.check_len)
        fixpoint = inf_o_fixpoint_bounded(k, m, settings.check_len)
        if words != fixpoint:
            extra, missing = len(words - fixpoint), len(fixpoint - words)
            problems.append(f"differs from the bounded fixpoint ({extra} extra, {missing} missing)")
        problems.extend(result_properties(k, m, result, settings.check_len))
        return problems

    return _run("oracle", settings, check)


def lemma1_sides(k: Dfa, e: str, m: Mask) -> Tuple[Dfa, Dfa]:
    """
    (P^-1 P(K/e)) e and P^-1(P(K e & K)) & Sigma* e, both built generically

    The two agree on prefix-closed K.
    """
    quotient = right_quotient_event(k, e)
    observed = determinize(mask_image(quotient, m))
    lhs = minimize(determinize(append_event(determinize(mask_inverse(observed, m)), e)))
    continued = product_intersection(determinize(append_event(k, e)), k)
    unobserved = determinize(mask_inverse(determinize(mask_image(continued, m)), m))
    rhs = minimize(product_intersection(unobserved, suffix_dfa(k.alphabet, e)))
    return lhs, rhs


def lemma1_counterexample() -> Tuple[Dfa, Dfa]:
    """Both sides for K = {aa} under the identity mask: {aa} and the empty language"""
    alphabet = Alphabet.of("a")
    k = Dfa(3, alphabet, ({"a": 1}, {"a": 2}, {}), 0, frozenset((2,)))
    return lemma1_sides(k, "a", Mask.identity(alphabet))


def verify_lemma1(settings: RunSettings) -> VerificationReport:

    def check(index: int) -> List[str]:
        rng = instance_rng(settings.seed, index)
        alphabet = random_alphabet(rng, settings.max_events)
        k = random_dfa(rng, alphabet, settings.max_states, settings.density, prefix_closed=True)
        m = random_mask(rng, alphabet)
        e = alphabet.events[int(rng.integers(0, len(alphabet)))]
        lhs, rhs = lemma1_sides(k, e, m)
        return [] if equivalent(lhs, rhs) else [f"sides differ for event {e}"]

    report = _run("lemma1", settings, check)
    lhs, rhs = lemma1_counterexample()
    if enumerate_language(lhs, 4) != {("a", "a")} or rhs.num_states != 0:
        report.failures.append("K={aa} does not separate the two sides")
    return report


def _primed_suffix_dfa(p: PrimedAlphabet) -> Dfa:
    """Sigma* Sigma' over the combined alphabet"""
    first = {e: 0 for e in p.base}
    first.update((e, 1) for e in p.primed)
    return Dfa(2, p.combined, (first, {}), 0, frozenset((1,)))


def lemma3_sides(k: Dfa, m: Mask) -> Tuple[Dfa, Dfa, Dfa]:
    """
    gh-NFA language, the same expression with an explicit product, and the
    union over e of (P^-1 P(K/e)) e
    """
    p = PrimedAlphabet.for_alphabet(k.alphabet, avoid=m.codomain)
    quotient = quotient_union_primed(k, p)
    structural = minimize(determinize(build_gh_nfa(quotient, m, p)))

    h = combined_mask(m, p)
    expanded = determinize(mask_inverse(determinize(mask_image(quotient.dfa, h)), h))
    restricted = product_intersection(expanded, _primed_suffix_dfa(p))
    generic = minimize(determinize(rename_primed(restricted, p)))

    union = Dfa.empty(k.alphabet)
    for e in k.alphabet:
        lhs, _ = lemma1_sides(k, e, m)
        union = minimize(determinize(nondet_union([union, lhs])))
    return structural, generic, union


def verify_lemma3(settings: RunSettings) -> VerificationReport:

    def check(index: int) -> List[str]:
        rng = instance_rng(settings.seed, index)
        alphabet = random_alphabet(rng, settings.max_events)
        k = random_dfa(rng, alphabet, settings.max_states, settings.density, prefix_closed=True)
        m = random_mask(rng, alphabet)
        structural, generic, union = lemma3_sides(k, m)
        problems = []
        if not equivalent(structural, generic):
            problems.append("gh-NFA differs from the explicit product")
        if not equivalent(structural, union):
            problems.append("gh-NFA differs from the union of per-event terms")
        return problems

    return _run("lemma3", settings, check)


def verify_inf_c(settings: RunSettings) -> VerificationReport:
    """inf_c against generic concatenation, controllability, and the inf_co identities"""
    co_instances = min(settings.instances, 50)

    def check(index: int) -> List[str]:
        rng = instance_rng(settings.seed, index)
        alphabet = random_alphabet(rng, settings.max_events)
        k = random_dfa(rng, alphabet, settings.max_states, settings.density)
        u = random_uncontrollable(rng, alphabet)
        problems = []
        result = inf_c(k, u)
        if not equivalent(result, inf_c_reference(k, u)):
            problems.append("inf_c differs from closure(K) Sigma_u*")
        words = enumerate_language(result, settings.check_len)
        for w in sorted(words):
            blocked = [e for e in u if len(w) < settings.check_len and w + (e,) not in words]
            if blocked:
                problems.append(f"not closed under uncontrollable {blocked[0]} after {w}")
                break
        if index < co_instances:
            m = random_mask(rng, alphabet)
            plant = random_dfa(rng, alphabet, settings.max_states, settings.density)
            sigma_star = universal_dfa(alphabet)
            unrestricted = inf_co(k, sigma_star, u, m)
            if not equivalent(unrestricted, inf_o(inf_c(k, u), m).dfa):
                problems.append("inf_co over Sigma* differs from inf_o(inf_c)")
            restricted = minimize(product_intersection(unrestricted, generated_language(plant)))
            if not equivalent(inf_co(k, plant, u, m), restricted):
                problems.append("inf_co differs from its Sigma* value intersected with L(G)")
        return problems

    return _run("inf-c", settings, check)


def verify_prime(n_max: int = 4) -> VerificationReport:
    """Supremal prefix-closed sublanguage and fooling set of the prime-cycle NFAs"""
    report = VerificationReport("prime", n_max)
    for n in range(1, n_max + 1):
        nfa = gen_prime_nfa(n)
        expected_states = 1 + sum(PRIMES[:n])
        if nfa.num_states != expected_states:
            report.failures.append(f"n={n}: {nfa.num_states} NFA states, expected {expected_states}")
        p = primorial(n)
        unreduced = supremal_prefix_closed(determinize(nfa))
        sup = minimize(unreduced)
        if sup.num_states != p:
            report.failures.append(f"n={n}: supremal sublanguage needs {sup.num_states} states, expected {p}")
        if enumerate_language(sup, p) != {("a",) * i for i in range(p)}:
            report.failures.append(f"n={n}: supremal sublanguage is not the prefixes of a^{p - 1}")
        fooling = prime_fooling_set(n)
        if not fooling_set_check(member_predicate(sup), fooling):
            report.failures.append(f"n={n}: fooling set of size {len(fooling)} rejected")
        for what, automaton in (("supremal", unreduced), ("minimal supremal", sup)):
            if automaton.num_states < len(fooling):
                report.failures.append(f"n={n}: {what} automaton has {automaton.num_states} states, "
                                       f"below the fooling set size {len(fooling)}")
        logger.info(f"prime n={n}: p#={p} NFA={nfa.num_states} supremal={sup.num_states}",
                    extra={"command": "verify prime", "n": n})
    logger.info(report.summary())
    return report


def verify_prefix_closed(settings: RunSettings) -> VerificationReport:
    """The example NFA, a non-closed NFA and random all-marked NFAs"""

    def check(index: int) -> List[str]:
        rng = instance_rng(settings.seed, index)
        alphabet = random_alphabet(rng, settings.max_events)
        nfa = random_nfa(rng, alphabet, settings.max_states, settings.density, all_marked=True)
        if is_prefix_closed_nfa(nfa):
            return []
        return ["all-marked NFA reported as not prefix-closed"]

    report = _run("prefix-closed", settings, check)
    if not is_prefix_closed_nfa(gen_fig4()):
        report.failures.append("example NFA marking {eps, a, ab} reported as not prefix-closed")
    only_ab = Nfa.from_transitions(3, Alphabet.of("a", "b"), [(0, "a", 1), (1, "b", 2)], (0,), (2,))
    if is_prefix_closed_nfa(only_ab):
        report.failures.append("NFA marking only ab reported as prefix-closed")
    return report
