#!/usr/bin/env python3
"""
Prefix-closure constructions

Prefix closure, right quotient by one event, the primed quotient-union
automaton, the supremal prefix-closed sublanguage and prefix-closedness
decisions for DFAs and NFAs.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

from core_automata import (DEFAULT_SUBSET_BUDGET, Dfa, InputError, Nfa, determinize,
                           restrict, trim)
from masks import PrimedAlphabet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuotientUnionDfa:
    """
    DFA marking the union over events e of (L/e)e' together with its sink

    The sink is the only marked state, has no outgoing transitions and is
    entered only by primed events.
    """

    dfa: Dfa
    sink: int
    primes: PrimedAlphabet

    def __post_init__(self):
        d = self.dfa
        if not 0 <= self.sink < d.num_states:
            raise InputError(f"Sink {self.sink} is not a state")
        if d.marked != frozenset((self.sink,)):
            raise InputError("The sink must be the only marked state")
        if d.delta[self.sink]:
            raise InputError("The sink must not have outgoing transitions")
        for q, event, r in d.transitions:
            if r == self.sink and event not in self.primes.primed:
                raise InputError(f"Transition {q} --{event}--> sink is not primed")


def prefix_closure(a: Dfa) -> Dfa:
    """Trim, then mark every remaining state"""
    t = trim(a)
    return restrict(t, t.states, marked=t.states)


def right_quotient_event(a: Dfa, e: str) -> Dfa:
    """Same automaton, marking exactly the states whose e-successor is marked"""
    if e not in a.alphabet:
        raise InputError(f"Event {e!r} is not in {a.alphabet}")
    marked = frozenset(q for q in a.states
                       if e in a.delta[q] and a.delta[q][e] in a.marked)
    return Dfa(a.num_states, a.alphabet, a.delta, a.initial, marked, a.labels)


def quotient_union_primed(a: Dfa, p: PrimedAlphabet) -> QuotientUnionDfa:
    """
    Add one marked sink n reached by e' from every state whose e-successor is marked

    The result is over base + primed events and has at most n + 1 states.
    """
    if a.alphabet != p.base:
        raise InputError(f"Automaton alphabet {a.alphabet} differs from primed base {p.base}")
    alphabet = p.combined
    sink = a.num_states
    transitions = set(a.transitions)
    for e in p.base:
        for q in right_quotient_event(a, e).marked:
            transitions.add((q, p.prime(e), sink))
    labels = None
    if a.labels is not None and "f" not in a.labels:
        labels = a.labels + ("f",)
    dfa = Dfa.from_transitions(sink + 1, alphabet, transitions, a.initial, (sink,), labels)
    logger.debug(f"Quotient union: {a.num_states} -> {dfa.num_states} states")
    return QuotientUnionDfa(dfa, sink, p)


def supremal_prefix_closed(a: Dfa) -> Dfa:
    """Drop unmarked states and their transitions, then trim"""
    if a.initial is None or a.initial not in a.marked:
        return Dfa.empty(a.alphabet)
    return trim(restrict(a, a.marked))


def is_prefix_closed_dfa(a: Dfa) -> bool:
    """True iff every state of the trimmed automaton is marked"""
    t = trim(a)
    return t.marked == frozenset(t.states)


def is_prefix_closed_nfa(a: Union[Nfa, Dfa], budget: Optional[int] = DEFAULT_SUBSET_BUDGET) -> bool:
    """
    Decide prefix-closedness of an NFA through its subset automaton

    Args:
        a: automaton to decide
        budget: maximum number of subset states, None for unbounded

    Returns:
        True iff the marked language equals its prefix closure

    Raises:
        ResourceBudgetExceeded: the subset automaton exceeded the budget
    """
    if isinstance(a, Dfa):
        return is_prefix_closed_dfa(a)
    return is_prefix_closed_dfa(determinize(a, budget))
