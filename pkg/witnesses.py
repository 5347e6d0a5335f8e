#!/usr/bin/env python3
"""
Witness automata families and fooling-set certificates

Generators for the tight quotient-union family, the lower-bound family for
inf_o, the unary prime-cycle NFAs and the two small example automata, plus a
checker for fooling sets.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

from core_automata import (Alphabet, Dfa, InputError, Nfa, Word, is_member,
                           nondet_union)
from masks import Mask, make_projection

logger = logging.getLogger(__name__)

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)

MemberPredicate = Callable[[Word], bool]


class WitnessFamily(Enum):
    QUOTIENT_TIGHT = "quotient"
    LOWER_BOUND = "lowerbound"
    PRIME_NFA = "prime"
    FIG3 = "fig3"
    FIG4 = "fig4"


@dataclass(frozen=True)
class FoolingSet:
    """Word pairs (x_i, y_i) over one alphabet"""

    pairs: Tuple[Tuple[Word, Word], ...]

    def __post_init__(self):
        pairs = tuple((tuple(x), tuple(y)) for x, y in self.pairs)
        if not pairs:
            raise InputError("A fooling set needs at least one pair")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def _require(condition: bool, message: str):
    if not condition:
        raise InputError(message)


def gen_quotient_tight(n: int) -> Dfa:
    """All-marked chain 0..n-1 under a and b with an a-loop on n-1"""
    _require(isinstance(n, int) and n >= 2, f"quotient family needs n >= 2, got {n}")
    transitions = [(i, e, i + 1) for i in range(n - 1) for e in ("a", "b")]
    transitions.append((n - 1, "a", n - 1))
    return Dfa.from_transitions(n, Alphabet.of("a", "b"), transitions, 0, range(n))


def gen_lower_bound(n: int) -> Dfa:
    """
    n-state DFA over {a,b,c} whose inf_o under the projection to {a,b} needs
    at least 3/4 2^n - 1 states

    a cycles through all states, b moves i to i+1 for 1 <= i <= n-3, n-2 to 0
    and loops on 0 and n-1, c moves n-1 to 0. State 0 is initial and the only
    marked state.
    """
    _require(isinstance(n, int) and n >= 2, f"lower-bound family needs n >= 2, got {n}")
    rules = [(i, "a", (i + 1) % n) for i in range(n)]
    rules += [(i, "b", i + 1) for i in range(1, n - 2)]
    rules += [(n - 2, "b", 0), (0, "b", 0), (n - 1, "b", n - 1), (n - 1, "c", 0)]
    delta: Dict[Tuple[int, str], int] = {}
    for src, event, dst in rules:
        previous = delta.setdefault((src, event), dst)
        if previous != dst:
            raise InputError(f"Contradicting rules for state {src} under {event}")
    transitions = [(src, event, dst) for (src, event), dst in delta.items()]
    return Dfa.from_transitions(n, Alphabet.of("a", "b", "c"), transitions, 0, (0,))


def lower_bound_projection() -> Mask:
    """Projection {a,b,c} -> {a,b} paired with gen_lower_bound"""
    return make_projection(Alphabet.of("a", "b", "c"), ("a", "b"))


def primorial(n: int) -> int:
    _require(0 <= n <= len(PRIMES), f"primorial is tabulated for 0 <= n <= {len(PRIMES)}")
    result = 1
    for p in PRIMES[:n]:
        result *= p
    return result


def gen_prime_nfa(n: int) -> Nfa:
    """
    Union of a one-state block and the unary cycles of the first n primes

    The block marks the empty word; the cycle of length p marks every a^j with
    j not divisible by p. The union marks a* minus the positive powers of
    a^(p_1 * ... * p_n). State i of cycle k is labelled "i_k".
    """
    _require(isinstance(n, int) and 1 <= n <= len(PRIMES),
             f"prime family needs 1 <= n <= {len(PRIMES)}, got {n}")
    alphabet = Alphabet.of("a")
    parts = [Dfa(1, alphabet, ({},), 0, frozenset((0,)))]
    labels = ["0_0"]
    for k, p in enumerate(PRIMES[:n], start=1):
        rows = tuple({"a": (i + 1) % p} for i in range(p))
        parts.append(Dfa(p, alphabet, rows, 0, frozenset(range(1, p))))
        labels.extend(f"{i}_{k}" for i in range(p))
    union = nondet_union(parts)
    return Nfa(union.num_states, alphabet, union.delta, union.initial, union.marked, tuple(labels))


def gen_fig3() -> Dfa:
    """Two states over {a,b,c}: 0 -a,b-> 1, 1 -a-> 1, 1 -c-> 0, marked {1}"""
    transitions = [(0, "a", 1), (0, "b", 1), (1, "a", 1), (1, "c", 0)]
    return Dfa.from_transitions(2, Alphabet.of("a", "b", "c"), transitions, 0, (1,))


def gen_fig4() -> Nfa:
    """Prefix-closed NFA with unmarked state 1, marking {eps, a, ab}"""
    transitions = [(0, "a", 1), (0, "a", 2), (1, "b", 2)]
    return Nfa.from_transitions(3, Alphabet.of("a", "b"), transitions, (0,), (0, 2))


@dataclass(frozen=True)
class WitnessSpec:
    """A witness family together with its size parameter"""

    family: WitnessFamily
    n: Optional[int] = None

    def __post_init__(self):
        family = WitnessFamily(self.family)
        object.__setattr__(self, "family", family)
        if family in (WitnessFamily.FIG3, WitnessFamily.FIG4):
            return
        _require(self.n is not None, f"{family.value} needs a size parameter")
        if family is WitnessFamily.PRIME_NFA:
            _require(1 <= self.n <= len(PRIMES), f"prime family needs 1 <= n <= {len(PRIMES)}")
        else:
            _require(self.n >= 2, f"{family.value} family needs n >= 2")

    def build(self) -> Union[Dfa, Nfa]:
        builders = {
            WitnessFamily.QUOTIENT_TIGHT: lambda: gen_quotient_tight(self.n),
            WitnessFamily.LOWER_BOUND: lambda: gen_lower_bound(self.n),
            WitnessFamily.PRIME_NFA: lambda: gen_prime_nfa(self.n),
            WitnessFamily.FIG3: gen_fig3,
            WitnessFamily.FIG4: gen_fig4,
        }
        automaton = builders[self.family]()
        logger.info(f"Generated {self.family.value} witness"
                    f"{'' if self.n is None else f' n={self.n}'}: {automaton.num_states} states")
        return automaton


def member_predicate(a: Union[Dfa, Nfa]) -> MemberPredicate:
    return lambda word: is_member(a, word)


def fooling_set_check(member: MemberPredicate, s: FoolingSet) -> bool:
    """
    True iff x_i y_i is in L for all i, and for i != j at least one of
    x_i y_j, x_j y_i is not in L. Then every NFA for L has >= len(s) states.
    """
    pairs: Sequence[Tuple[Word, Word]] = s.pairs
    for x, y in pairs:
        if not member(x + y):
            logger.debug(f"Fooling set pair ({x}, {y}) is not in the language")
            return False
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            (xi, yi), (xj, yj) = pairs[i], pairs[j]
            if member(xi + yj) and member(xj + yi):
                logger.debug(f"Fooling set pairs {i} and {j} are not separated")
                return False
    return True


def prime_fooling_set(n: int) -> FoolingSet:
    """Pairs (a^i, a^(p-1-i)) for i < p = primorial(n)"""
    p = primorial(n)
    return FoolingSet(tuple((("a",) * i, ("a",) * (p - 1 - i)) for i in range(p)))
