#!/usr/bin/env python3
"""
Seeded random automata, masks and event sets

Every instance draws from its own generator numpy.random.default_rng([seed,
index]), so a run can be replayed instance by instance and the result does
not depend on how instances are spread over workers.
"""

import logging
import string

import numpy as np

from core_automata import Alphabet, Dfa, Nfa
from closure_ops import prefix_closure
from inf_algorithms import UncontrollableSet
from masks import Mask

logger = logging.getLogger(__name__)

EVENT_POOL = tuple(string.ascii_lowercase)
DEFAULT_DENSITY = 0.8


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def random_alphabet(rng: np.random.Generator, max_events: int = 4) -> Alphabet:
    """First k letters, k uniform in 1..max_events"""
    k = int(rng.integers(1, max_events + 1))
    return Alphabet(EVENT_POOL[:k])


def random_dfa(rng: np.random.Generator, alphabet: Alphabet, max_states: int,
               density: float = DEFAULT_DENSITY, prefix_closed: bool = False) -> Dfa:
    """
    Uniform random partial DFA

    Each (state, event) pair gets a transition with probability density, to a
    uniformly chosen state. States are marked with probability 1/2; a
    prefix-closed instance marks every state and is then trimmed.
    """
    n = int(rng.integers(1, max_states + 1))
    rows = []
    for _ in range(n):
        row = {}
        for e in alphabet:
            if rng.random() < density:
                row[e] = int(rng.integers(0, n))
        rows.append(row)
    if prefix_closed:
        marked = frozenset(range(n))
    else:
        marked = frozenset(int(q) for q in np.flatnonzero(rng.random(n) < 0.5))
    dfa = Dfa(n, alphabet, tuple(rows), 0, marked)
    return prefix_closure(dfa) if prefix_closed else dfa


def random_mask(rng: np.random.Generator, alphabet: Alphabet,
                erase_prob: float = 1.0 / 3.0) -> Mask:
    """Each event is erased with erase_prob, otherwise sent to a random event of alphabet"""
    table = {}
    for e in alphabet:
        if rng.random() < erase_prob:
            table[e] = None
        else:
            table[e] = alphabet.events[int(rng.integers(0, len(alphabet)))]
    codomain = Alphabet(tuple({img for img in table.values() if img is not None}))
    return Mask.from_dict(alphabet, codomain, table)


def random_nfa(rng: np.random.Generator, alphabet: Alphabet, max_states: int,
               density: float = DEFAULT_DENSITY, all_marked: bool = False,
               epsilon_prob: float = 0.15) -> Nfa:
    """Random NFA with up to two successors per (state, event) and sparse eps moves"""
    n = int(rng.integers(1, max_states + 1))
    transitions = []
    for q in range(n):
        for e in alphabet:
            if rng.random() < density:
                for r in rng.choice(n, size=int(rng.integers(1, 3)), replace=True):
                    transitions.append((q, e, int(r)))
        if rng.random() < epsilon_prob:
            transitions.append((q, None, int(rng.integers(0, n))))
    initial = {0} | ({int(rng.integers(0, n))} if rng.random() < 0.3 else set())
    if all_marked:
        marked = set(range(n))
    else:
        marked = {int(q) for q in np.flatnonzero(rng.random(n) < 0.5)}
    return Nfa.from_transitions(n, alphabet, transitions, initial, marked)


def random_uncontrollable(rng: np.random.Generator, alphabet: Alphabet,
                          prob: float = 0.5) -> UncontrollableSet:
    chosen = [e for e in alphabet if rng.random() < prob]
    return UncontrollableSet(alphabet, frozenset(chosen))
