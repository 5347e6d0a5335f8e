#!/usr/bin/env python3
"""
Observation masks and projections

A Mask maps every event of its domain to an event of its codomain or to the
empty string (None). Automata are transformed by relabelling (image) and by
expanding each label into its preimages (inverse image). PrimedAlphabet is a
disjoint copy of an alphabet, used to tag the last event of a word.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple, Union

from core_automata import (PRIME_MARKER, Alphabet, Dfa, InputError, Label, Nfa,
                           Word)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mask:
    """
    Total map from domain events to codomain events or epsilon

    Attributes:
        domain: source alphabet
        codomain: target alphabet
        mapping: (event, image) pairs in domain order, image None for epsilon
    """

    domain: Alphabet
    codomain: Alphabet
    mapping: Tuple[Tuple[str, Optional[str]], ...]

    def __post_init__(self):
        table = dict(self.mapping)
        if len(table) != len(self.mapping):
            raise InputError("Mask maps an event more than once")
        missing = [e for e in self.domain if e not in table]
        if missing:
            raise InputError(f"mask not total: no image for {', '.join(missing)}")
        for event, image in table.items():
            if event not in self.domain:
                raise InputError(f"Mask event {event!r} is not in domain {self.domain}")
            if image is not None and image not in self.codomain:
                raise InputError(f"Image {image!r} of {event!r} is not in codomain {self.codomain}")
        object.__setattr__(self, "mapping", tuple((e, table[e]) for e in self.domain))

    @classmethod
    def from_dict(cls, domain: Alphabet, codomain: Alphabet,
                  table: Mapping[str, Optional[str]]) -> "Mask":
        return cls(domain, codomain, tuple(table.items()))

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Mask":
        return cls(alphabet, alphabet, tuple((e, e) for e in alphabet))

    def image(self, event: str) -> Optional[str]:
        for e, img in self.mapping:
            if e == event:
                return img
        raise InputError(f"Token {event!r} is not in mask domain {self.domain}")

    def as_dict(self) -> Dict[str, Optional[str]]:
        return dict(self.mapping)

    @property
    def erased(self) -> FrozenSet[str]:
        """Events mapped to the empty string"""
        return frozenset(e for e, img in self.mapping if img is None)

    def preimages(self, label: str) -> Tuple[str, ...]:
        return tuple(e for e, img in self.mapping if img == label)

    def is_projection(self) -> bool:
        return (self.codomain.issubset(self.domain)
                and all(img is None or img == e for e, img in self.mapping))

    def is_identity(self) -> bool:
        return self.domain == self.codomain and all(img == e for e, img in self.mapping)


@dataclass(frozen=True)
class PrimedAlphabet:
    """
    A base alphabet paired with a fresh copy of it

    Primed tokens are base tokens with the reserved prime marker appended;
    Alphabet rejects that marker in its tokens, so the copy is disjoint from
    any user alphabet.
    """

    base: Alphabet
    primed: Alphabet

    def __post_init__(self):
        if len(self.base) != len(self.primed):
            raise InputError("Primed alphabet must pair every base event")
        for e in self.base:
            if self.prime(e) not in self.primed:
                raise InputError(f"Primed copy of {e!r} is missing")
        if set(self.base) & set(self.primed):
            raise InputError("Primed events overlap the base alphabet")

    @classmethod
    def for_alphabet(cls, base: Alphabet, avoid: Iterable[str] = ()) -> "PrimedAlphabet":
        """Primed copy of base, rejecting clashes with the tokens in avoid"""
        primed = Alphabet._trusted(cls.prime(e) for e in base)
        clash = set(primed) & set(avoid)
        if clash:
            raise InputError(f"Primed tokens clash with alphabet events: {sorted(clash)}")
        return cls(base, primed)

    @staticmethod
    def prime(event: str) -> str:
        return event + PRIME_MARKER

    def unprime(self, event: str) -> str:
        if event not in self.primed:
            raise InputError(f"{event!r} is not a primed event")
        return event[:-len(PRIME_MARKER)]

    @property
    def combined(self) -> Alphabet:
        return self.base.union(self.primed)


def make_projection(sigma: Alphabet, observable: Iterable[str]) -> Mask:
    """Natural projection onto the observable events"""
    observable = set(observable)
    unknown = observable - set(sigma)
    if unknown:
        raise InputError(f"Observable events {sorted(unknown)} are not in {sigma}")
    codomain = Alphabet(tuple(observable))
    return Mask(sigma, codomain, tuple((e, e if e in observable else None) for e in sigma))


def mask_word(m: Mask, word: Sequence[str]) -> Word:
    table = m.as_dict()
    result = []
    for event in word:
        if event not in table:
            raise InputError(f"Token {event!r} is not in mask domain {m.domain}")
        if table[event] is not None:
            result.append(table[event])
    return tuple(result)


def mask_image(a: Union[Nfa, Dfa], m: Mask) -> Nfa:
    """Relabel every transition by its image; erased events become epsilon moves"""
    nfa = a.as_nfa() if isinstance(a, Dfa) else a
    if nfa.alphabet != m.domain:
        raise InputError(f"Automaton alphabet {nfa.alphabet} differs from mask domain {m.domain}")
    table = m.as_dict()
    transitions = [(q, label if label is None else table[label], r)
                   for q, label, r in nfa.transitions]
    return Nfa.from_transitions(nfa.num_states, m.codomain, transitions,
                                nfa.initial, nfa.marked, nfa.labels)


def mask_inverse(a: Union[Nfa, Dfa], m: Mask, skip_self_loops_on: Iterable[int] = ()) -> Nfa:
    """
    Inverse image of an automaton under a mask

    Every y-transition becomes one x-transition per preimage x of y. Each
    erased event gets a self-loop on every state except those in
    skip_self_loops_on.
    """
    nfa = a.as_nfa() if isinstance(a, Dfa) else a
    if nfa.alphabet != m.codomain:
        raise InputError(f"Automaton alphabet {nfa.alphabet} differs from mask codomain {m.codomain}")
    skip = frozenset(skip_self_loops_on)
    for q in skip:
        if not isinstance(q, int) or not 0 <= q < nfa.num_states:
            raise InputError(f"Skip set contains unknown state {q!r}")
    transitions = []
    for q, label, r in nfa.transitions:
        if label is None:
            transitions.append((q, None, r))
        else:
            transitions.extend((q, x, r) for x in m.preimages(label))
    erased = sorted(m.erased)
    for q in nfa.states:
        if q not in skip:
            transitions.extend((q, x, q) for x in erased)
    return Nfa.from_transitions(nfa.num_states, m.domain, transitions,
                                nfa.initial, nfa.marked, nfa.labels)


def rename_primed(a: Union[Nfa, Dfa], p: PrimedAlphabet) -> Nfa:
    """Replace every primed label by its base partner"""
    nfa = a.as_nfa() if isinstance(a, Dfa) else a
    allowed = p.combined
    transitions = []
    for q, label, r in nfa.transitions:
        if label is not None and label not in allowed:
            raise InputError(f"Label {label!r} is neither a base nor a primed event")
        if label is not None and label in p.primed:
            label = p.unprime(label)
        transitions.append((q, label, r))
    return Nfa.from_transitions(nfa.num_states, p.base, transitions,
                                nfa.initial, nfa.marked, nfa.labels)


def combined_mask(m: Mask, p: PrimedAlphabet) -> Mask:
    """The mask h: m on base events, identity on primed events"""
    if m.domain != p.base:
        raise InputError(f"Mask domain {m.domain} differs from primed base {p.base}")
    clash = set(m.codomain) & set(p.primed)
    if clash:
        raise InputError(f"Primed events {sorted(clash)} collide with the mask codomain")
    table: Dict[str, Label] = dict(m.mapping)
    table.update((e, e) for e in p.primed)
    return Mask.from_dict(p.combined, m.codomain.union(p.primed), table)

