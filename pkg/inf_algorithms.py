#!/usr/bin/env python3
"""
Infimal prefix-closed observable and controllable superlanguages

inf_o runs the subset-construction pipeline:

    closure -> quotient union -> gh-NFA -> determinize -> {eps} union
            -> supremal prefix-closed sublanguage -> minimize

inf_o_reference evaluates the same language with generic operations only
(one product, image and inverse image per event). inf_c, inf_co and the
bounded word-level oracles complete the module.
"""

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from core_automata import (Alphabet, Dfa, InputError, Nfa, SubsetAutomaton, Word,
                           append_event, determinize, enumerate_language, epsilon_dfa,
                           generated_language, is_member, minimize, nondet_union, product_intersection,
                           subset_construction, suffix_dfa, trim)
from closure_ops import (QuotientUnionDfa, is_prefix_closed_dfa, prefix_closure,
                         quotient_union_primed, supremal_prefix_closed)
from masks import (Mask, PrimedAlphabet, combined_mask, mask_image, mask_inverse,
                   rename_primed)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InfOStats:
    """State counts of one inf_o run"""

    input_states: int
    closure_states: int = 0
    gh_nfa_states: int = 0
    subset_states: int = 0
    marked_subsets: int = 0
    final_states: int = 0
    elapsed_ms: float = 0.0


@dataclass(frozen=True)
class InfOResult:
    dfa: Dfa
    stats: InfOStats


@dataclass(frozen=True)
class InfOStages:
    """
    Every intermediate automaton of one inf_o run

    All stage fields are None when the input language is empty.
    """

    closure: Optional[Dfa]
    quotient: Optional[QuotientUnionDfa]
    gh_nfa: Optional[Nfa]
    subsets: Optional[SubsetAutomaton]
    with_epsilon: Optional[Dfa]
    supremal: Optional[Dfa]
    result: InfOResult


@dataclass(frozen=True)
class UncontrollableSet:
    """Uncontrollable events, a subset of alphabet"""

    alphabet: Alphabet
    events: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self):
        events = frozenset(self.events)
        unknown = events - set(self.alphabet)
        if unknown:
            raise InputError(f"Uncontrollable events {sorted(unknown)} are not in {self.alphabet}")
        object.__setattr__(self, "events", events)

    def __iter__(self):
        return iter(sorted(self.events))


def build_gh_nfa(q: QuotientUnionDfa, m: Mask, p: PrimedAlphabet) -> Nfa:
    """
    NFA for g(h^-1 h(L_m(q)) & Sigma* Sigma')

    h is m on base events and the identity on primed events, g renames primed
    events to their base partners. The intersection with Sigma* Sigma' is
    realized by leaving the sink without erased-event self-loops.
    """
    if q.primes != p:
        raise InputError("Quotient union was built over a different primed alphabet")
    if m.domain != p.base:
        raise InputError(f"Mask domain {m.domain} differs from {p.base}")
    h = combined_mask(m, p)
    image = mask_image(q.dfa, h)
    inverse = mask_inverse(image, h, skip_self_loops_on={q.sink})
    return rename_primed(inverse, p)


def add_epsilon_union(d: Dfa) -> Dfa:
    """New marked initial state copying the outgoing transitions of the old one"""
    if d.initial is None:
        return epsilon_dfa(d.alphabet)
    fresh = d.num_states
    rows = d.delta + (dict(d.delta[d.initial]),)
    labels = None
    if d.labels is not None and "I" not in d.labels:
        labels = d.labels + ("I",)
    return Dfa(fresh + 1, d.alphabet, rows, fresh, d.marked | {fresh}, labels)


def _primes_for(k: Dfa, m: Mask) -> PrimedAlphabet:
    if m.domain != k.alphabet:
        raise InputError(f"Mask domain {m.domain} differs from automaton alphabet {k.alphabet}")
    return PrimedAlphabet.for_alphabet(k.alphabet, avoid=m.codomain)


def inf_o_stages(k: Dfa, m: Mask, budget: Optional[int] = None) -> InfOStages:
    """
    Run inf_o keeping every intermediate automaton

    Args:
        k: DFA for K
        m: mask with domain k.alphabet
        budget: maximum number of subset states, None for unbounded

    Returns:
        InfOStages with the minimal result and its statistics

    Raises:
        InputError: alphabet mismatch
        ResourceBudgetExceeded: the subset automaton exceeded budget
    """
    p = _primes_for(k, m)
    start = time.perf_counter()
    if trim(k).initial is None:
        empty = Dfa.empty(k.alphabet)
        stats = InfOStats(input_states=k.num_states,
                          elapsed_ms=(time.perf_counter() - start) * 1000.0)
        return InfOStages(None, None, None, None, None, None, InfOResult(empty, stats))

    closure = prefix_closure(k)
    quotient = quotient_union_primed(closure, p)
    gh = build_gh_nfa(quotient, m, p)
    subsets = subset_construction(gh, budget)
    with_epsilon = add_epsilon_union(subsets.dfa)
    supremal = supremal_prefix_closed(with_epsilon)
    result = minimize(supremal)
    elapsed = (time.perf_counter() - start) * 1000.0

    stats = InfOStats(input_states=k.num_states,
                      closure_states=closure.num_states,
                      gh_nfa_states=gh.num_states,
                      subset_states=subsets.dfa.num_states,
                      marked_subsets=len(subsets.dfa.marked),
                      final_states=result.num_states,
                      elapsed_ms=elapsed)
    logger.debug(f"inf_o: closure={stats.closure_states} gh={stats.gh_nfa_states} "
                 f"subsets={stats.subset_states} marked={stats.marked_subsets} "
                 f"final={stats.final_states} ({elapsed:.1f} ms)")
    return InfOStages(closure, quotient, gh, subsets, with_epsilon, supremal,
                      InfOResult(result, stats))


def inf_o(k: Dfa, m: Mask, budget: Optional[int] = None) -> InfOResult:
    """Minimal DFA of the infimal prefix-closed observable superlanguage of K"""
    return inf_o_stages(k, m, budget).result


def check_upper_bound_structure(stages: InfOStages) -> List[str]:
    """
    Structural claims of the 2^n + 1 upper bound, n the closure's state count

    Returns:
        Human-readable violations, empty when every claim holds
    """
    if stages.subsets is None:
        return []
    n = stages.closure.num_states
    sink = stages.quotient.sink
    problems = []
    if stages.gh_nfa.num_states > n + 1:
        problems.append(f"gh-NFA has {stages.gh_nfa.num_states} states, more than {n + 1}")
    if stages.gh_nfa.delta[sink]:
        problems.append("the sink of the gh-NFA has outgoing transitions")
    dfa = stages.subsets.dfa
    for q in sorted(dfa.marked):
        if sink not in stages.subsets.subsets[q]:
            problems.append(f"marked subset {dfa.state_name(q)} does not contain the sink {sink}")
    if len(dfa.marked) > 2 ** n:
        problems.append(f"{len(dfa.marked)} marked subsets exceed 2^{n}")
    if dfa.num_states > 2 ** (n + 1) + 1:
        problems.append(f"{dfa.num_states} subsets exceed 2^{n + 1}+1")
    final = stages.result.dfa.num_states
    if final > 2 ** n + 1:
        problems.append(f"final automaton has {final} states, more than 2^{n}+1")
    return problems


def inf_o_reference(k: Dfa, m: Mask, budget: Optional[int] = None) -> Dfa:
    """
    inf_o evaluated event by event with generic operations

    For every event e: P^-1(P(closure.e & closure)) & Sigma* e, then the
    union of all of them with {eps}, then the supremal prefix-closed
    sublanguage.
    """
    if m.domain != k.alphabet:
        raise InputError(f"Mask domain {m.domain} differs from automaton alphabet {k.alphabet}")
    if trim(k).initial is None:
        return Dfa.empty(k.alphabet)
    closure = prefix_closure(k)
    parts: List[Dfa] = [epsilon_dfa(k.alphabet)]
    for e in k.alphabet:
        continued = product_intersection(determinize(append_event(closure, e)), closure)
        observed = determinize(mask_image(continued, m), budget)
        unobserved = determinize(mask_inverse(observed, m), budget)
        parts.append(product_intersection(unobserved, suffix_dfa(k.alphabet, e)))
    union = determinize(nondet_union(parts), budget)
    return minimize(supremal_prefix_closed(union))


def inf_c(k: Dfa, u: UncontrollableSet) -> Dfa:
    """
    Minimal DFA for closure(K) Sigma_u*

    Every uncontrollable event undefined at a closure state leads to one extra
    marked state looping on the uncontrollable events.
    """
    if u.alphabet != k.alphabet:
        raise InputError(f"Uncontrollable set is over {u.alphabet}, automaton over {k.alphabet}")
    closure = prefix_closure(k)
    if closure.initial is None:
        return closure
    if not u.events:
        return minimize(closure)
    tail = closure.num_states
    rows = [dict(row) for row in closure.delta]
    for row in rows:
        for e in u:
            row.setdefault(e, tail)
    rows.append({e: tail for e in u})
    extended = Dfa(tail + 1, k.alphabet, tuple(rows), closure.initial,
                   frozenset(range(tail + 1)))
    return minimize(extended)


def inf_c_reference(k: Dfa, u: UncontrollableSet) -> Dfa:
    """closure(K) Sigma_u* by epsilon concatenation and determinization"""
    if u.alphabet != k.alphabet:
        raise InputError(f"Uncontrollable set is over {u.alphabet}, automaton over {k.alphabet}")
    closure = prefix_closure(k)
    if closure.initial is None:
        return closure
    loop = closure.num_states
    transitions = set(closure.transitions)
    transitions.update((q, None, loop) for q in closure.marked)
    transitions.update((loop, e, loop) for e in u)
    concat = Nfa.from_transitions(loop + 1, k.alphabet, transitions,
                                  (closure.initial,), closure.marked | {loop})
    return minimize(determinize(concat))


def inf_co(k: Dfa, g: Dfa, u: UncontrollableSet, m: Mask,
           budget: Optional[int] = None) -> Dfa:
    """inf_o(inf_c(K)) restricted to the generated language of g"""
    if g.alphabet != k.alphabet:
        raise InputError(f"Plant alphabet {g.alphabet} differs from {k.alphabet}")
    controllable = inf_c(k, u)
    observable = inf_o(controllable, m, budget).dfa
    return minimize(product_intersection(observable, generated_language(g)))


# ---------------------------------------------------------------------------
# Word-level oracles
# ---------------------------------------------------------------------------

def inf_o_fixpoint_bounded(k: Dfa, m: Mask, check_len: int,
                           work_len: Optional[int] = None) -> Set[Word]:
    """
    Bounded fixpoint of the observability rule on words

    The rule adds s'e whenever s, s' are in the set, P(s) = P(s'), se is in
    the set and |s'e| <= work_len, starting from the closure words of length
    at most work_len. A word w belongs to the fixpoint iff every prefix ue of
    w has a closure word se, |se| <= work_len, with P(s) = P(u); the set is
    computed from that characterization over (state, observation) pairs.

    Args:
        k: DFA for K
        m: mask with domain k.alphabet
        check_len: longest returned word
        work_len: longest word the rule may use. Defaults to check_len * n for
            an n-state closure automaton, where the result is exact; the
            shorter check_len + n can drop words whose witness s needs more
            than n unobservable steps per observation.

    Returns:
        Words of the fixpoint of length at most check_len
    """
    if m.domain != k.alphabet:
        raise InputError(f"Mask domain {m.domain} differs from automaton alphabet {k.alphabet}")
    if check_len < 0:
        raise InputError(f"check_len must be nonnegative, got {check_len}")
    closure = prefix_closure(k)
    if closure.initial is None:
        return set()
    if work_len is None:
        work_len = check_len * max(closure.num_states, 1)
    if work_len < check_len:
        raise InputError(f"work_len {work_len} is shorter than check_len {check_len}")

    table = m.as_dict()
    max_obs = max(check_len - 1, 0)
    # shortest s with closure state q and observation g
    dist: Dict[Tuple[int, Word], int] = {(closure.initial, ()): 0}
    queue = deque([(closure.initial, ())])
    while queue:
        q, g = queue.popleft()
        d = dist[(q, g)]
        if d + 1 >= work_len:
            continue
        for e, r in closure.delta[q].items():
            img = table[e]
            h = g if img is None else g + (img,)
            if len(h) > max_obs or (r, h) in dist:
                continue
            dist[(r, h)] = d + 1
            queue.append((r, h))

    enabled: Dict[Word, Set[str]] = {}
    for (q, g), d in dist.items():
        if d + 1 <= work_len:
            enabled.setdefault(g, set()).update(closure.delta[q])

    result: Set[Word] = set()
    stack: List[Tuple[Word, Word]] = [((), ())]
    while stack:
        w, g = stack.pop()
        result.add(w)
        if len(w) == check_len:
            continue
        for e in enabled.get(g, ()):
            img = table[e]
            stack.append((w + (e,), g if img is None else g + (img,)))
    return result


def _observation_classes(lang: Dfa, m: Mask, max_obs: int) -> Dict[Word, FrozenSet[int]]:
    """States reachable by some word with each observation of length <= max_obs"""
    table = m.as_dict()
    erased = [e for e in lang.alphabet if table[e] is None]

    def erased_closure(states: Iterable[int]) -> FrozenSet[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for e in erased:
                r = lang.delta[q].get(e)
                if r is not None and r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)

    classes = {(): erased_closure((lang.initial,))}
    frontier = [()]
    for _ in range(max_obs):
        following = []
        for g in frontier:
            for y in m.codomain:
                step = {lang.delta[q][x] for q in classes[g] for x in m.preimages(y)
                        if x in lang.delta[q]}
                if step:
                    h = g + (y,)
                    classes[h] = erased_closure(step)
                    following.append(h)
        frontier = following
    return classes


def is_observable_bounded(lang: Dfa, m: Mask, length: int) -> bool:
    """
    Search for s, s' in L with P(s) = P(s'), se in L, s'e not in L, |s'e| <= length

    s ranges over all of L; only s' is bounded.

    Raises:
        InputError: lang is not prefix-closed or the mask domain differs
    """
    if m.domain != lang.alphabet:
        raise InputError(f"Mask domain {m.domain} differs from automaton alphabet {lang.alphabet}")
    if not is_prefix_closed_dfa(lang):
        raise InputError("is_observable_bounded needs a prefix-closed language")
    t = trim(lang)
    if t.initial is None or length <= 0:
        return True
    classes = _observation_classes(t, m, length - 1)
    table = m.as_dict()
    stack: List[Tuple[int, Word, int]] = [(t.initial, (), 0)]
    while stack:
        q, g, depth = stack.pop()
        allowed = set()
        for p in classes[g]:
            allowed.update(t.delta[p])
        missing = allowed - set(t.delta[q])
        if missing:
            logger.debug(f"Observability violated after observation {g}: {sorted(missing)} not enabled")
            return False
        if depth + 1 >= length:
            continue
        for e, r in t.delta[q].items():
            img = table[e]
            stack.append((r, g if img is None else g + (img,), depth + 1))
    return True


def contains_language(big: Dfa, small: Dfa, maxlen: int) -> bool:
    """Bounded inclusion: every marked word of small up to maxlen is marked by big"""
    return all(is_member(big, w) for w in enumerate_language(small, maxlen))


def result_properties(k: Dfa, m: Mask, result: Dfa, length: int) -> List[str]:
    """Prefix-closed, contains eps and closure(K), observable up to length"""
    problems = []
    closure = prefix_closure(k)
    if not is_prefix_closed_dfa(result):
        problems.append("result is not prefix-closed")
        return problems
    if closure.initial is None:
        if result.initial is not None:
            problems.append("empty input gave a nonempty result")
        return problems
    if not is_member(result, ()):
        problems.append("result does not contain the empty word")
    if not contains_language(result, closure, length):
        problems.append("result does not contain the closure of K")
    if not is_observable_bounded(result, m, length):
        problems.append("result is not observable")
    return problems
