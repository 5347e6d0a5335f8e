#!/usr/bin/env python3
"""
Core finite automata for the infimal observable superlanguage toolkit

Value types (Alphabet, Nfa, Dfa) and the generic regular-language operations
every other module builds on: epsilon closure, subset construction, Hopcroft
minimization, products, unions, bounded enumeration and equivalence.

States are dense integers 0..num_states-1. Optional labels give them readable
names (subset states are labelled by their sorted member list, e.g. "{0,3}").
Automata are immutable after construction.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import (Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional,
                    Sequence, Set, Tuple, Union)

logger = logging.getLogger(__name__)

EPS_TOKEN = "eps"
PRIME_MARKER = "'"
DEFAULT_SUBSET_BUDGET = 2 ** 20

# Characters with a meaning in files, masks or CLI lists.
_FORBIDDEN_TOKEN_CHARS = set("#,") | {"\\", '"'}

Word = Tuple[str, ...]
Label = Optional[str]  # None is the empty string label (epsilon)


class AutomatonError(Exception):
    """Base class for all errors raised by the toolkit"""


class InputError(AutomatonError):
    """An operation was called with arguments violating its preconditions"""


class FormatError(InputError):
    """A file could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceBudgetExceeded(AutomatonError):
    """A construction grew past its configured state budget"""


class VerificationFailure(AutomatonError):
    """A verification run or bound check did not hold"""


def check_token(token: str) -> str:
    """Validate a single event token and return it"""
    if not isinstance(token, str) or not token:
        raise InputError(f"Event tokens must be nonempty strings, got {token!r}")
    if token == EPS_TOKEN:
        raise InputError(f"'{EPS_TOKEN}' is reserved and cannot be an event")
    if not token.isprintable() or any(ch.isspace() for ch in token):
        raise InputError(f"Event token {token!r} contains whitespace or unprintable characters")
    if "->" in token or _FORBIDDEN_TOKEN_CHARS & set(token):
        raise InputError(f"Event token {token!r} contains a reserved character")
    if PRIME_MARKER in token:
        raise InputError(f"Event token {token!r} uses {PRIME_MARKER!r}, reserved for primed copies")
    return token


@dataclass(frozen=True)
class Alphabet:
    """Finite set of event tokens, iterated in lexicographic order"""

    events: Tuple[str, ...] = ()

    def __post_init__(self):
        events = tuple(self.events)
        if len(set(events)) != len(events):
            raise InputError(f"Duplicate events in alphabet: {events}")
        for event in events:
            check_token(event)
        object.__setattr__(self, "events", tuple(sorted(events)))

    @classmethod
    def of(cls, *events: str) -> "Alphabet":
        return cls(tuple(events))

    @classmethod
    def _trusted(cls, events: Iterable[str]) -> "Alphabet":
        """Alphabet of tokens that were validated before or are primed copies of such tokens"""
        alphabet = object.__new__(cls)
        object.__setattr__(alphabet, "events", tuple(sorted(set(events))))
        return alphabet

    def __iter__(self):
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __contains__(self, event) -> bool:
        return event in self.events

    def union(self, other: "Alphabet") -> "Alphabet":
        return Alphabet._trusted(set(self.events) | set(other.events))

    def issubset(self, other: "Alphabet") -> bool:
        return set(self.events) <= set(other.events)

    def __str__(self):
        return "{" + ",".join(self.events) + "}"


def _check_labels(labels: Optional[Sequence[str]], num_states: int) -> Optional[Tuple[str, ...]]:
    if labels is None:
        return None
    labels = tuple(labels)
    if len(labels) != num_states:
        raise InputError(f"Expected {num_states} state labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise InputError("State labels must be distinct")
    return labels


def _check_state_set(states: Iterable[int], num_states: int, what: str) -> FrozenSet[int]:
    states = frozenset(states)
    for q in states:
        if not isinstance(q, int) or not 0 <= q < num_states:
            raise InputError(f"{what} contains unknown state {q!r}")
    return states


@dataclass(frozen=True)
class Nfa:
    """
    Nondeterministic automaton with epsilon transitions

    delta[q] maps a label (an event, or None for epsilon) to the set of
    successor states of q.
    """

    num_states: int
    alphabet: Alphabet
    delta: Tuple[Mapping[Label, FrozenSet[int]], ...]
    initial: FrozenSet[int]
    marked: FrozenSet[int]
    labels: Optional[Tuple[str, ...]] = None
    _closures: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.num_states
        if len(self.delta) != n:
            raise InputError(f"Transition table has {len(self.delta)} rows for {n} states")
        delta = []
        for q, row in enumerate(self.delta):
            clean = {}
            for label, targets in row.items():
                if label is not None and label not in self.alphabet:
                    raise InputError(f"Transition label {label!r} of state {q} is not in {self.alphabet}")
                targets = _check_state_set(targets, n, f"Successors of state {q}")
                if targets:
                    clean[label] = targets
            delta.append(clean)
        object.__setattr__(self, "delta", tuple(delta))
        object.__setattr__(self, "initial", _check_state_set(self.initial, n, "Initial set"))
        object.__setattr__(self, "marked", _check_state_set(self.marked, n, "Marked set"))
        object.__setattr__(self, "labels", _check_labels(self.labels, n))
        object.__setattr__(self, "_closures", self._compute_closures())

    def _compute_closures(self) -> Tuple[FrozenSet[int], ...]:
        closures = []
        for q in range(self.num_states):
            seen = {q}
            stack = [q]
            while stack:
                p = stack.pop()
                for r in self.delta[p].get(None, ()):
                    if r not in seen:
                        seen.add(r)
                        stack.append(r)
            closures.append(frozenset(seen))
        return tuple(closures)

    @classmethod
    def from_transitions(cls, num_states: int, alphabet: Alphabet,
                         transitions: Iterable[Tuple[int, Label, int]],
                         initial: Iterable[int], marked: Iterable[int],
                         labels: Optional[Sequence[str]] = None) -> "Nfa":
        rows: List[Dict[Label, Set[int]]] = [dict() for _ in range(num_states)]
        for src, label, dst in transitions:
            if not isinstance(src, int) or not 0 <= src < num_states:
                raise InputError(f"Transition source {src!r} is not a state")
            rows[src].setdefault(label, set()).add(dst)
        return cls(num_states, alphabet,
                   tuple({label: frozenset(t) for label, t in row.items()} for row in rows),
                   frozenset(initial), frozenset(marked),
                   tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Nfa":
        return cls(0, alphabet, (), frozenset(), frozenset())

    @property
    def states(self) -> range:
        return range(self.num_states)

    @property
    def transitions(self) -> FrozenSet[Tuple[int, Label, int]]:
        return frozenset((q, label, r)
                         for q, row in enumerate(self.delta)
                         for label, targets in row.items()
                         for r in targets)

    def closure(self, q: int) -> FrozenSet[int]:
        return self._closures[q]

    def state_name(self, q: int) -> str:
        return self.labels[q] if self.labels is not None else str(q)

    def has_epsilon(self) -> bool:
        return any(None in row for row in self.delta)


@dataclass(frozen=True)
class Dfa:
    """
    Partial deterministic automaton

    delta[q] maps an event to the unique successor of q; missing events are
    undefined transitions. The empty language is the DFA with no states.
    """

    num_states: int
    alphabet: Alphabet
    delta: Tuple[Mapping[str, int], ...]
    initial: Optional[int]
    marked: FrozenSet[int]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        n = self.num_states
        if len(self.delta) != n:
            raise InputError(f"Transition table has {len(self.delta)} rows for {n} states")
        delta = []
        for q, row in enumerate(self.delta):
            row = dict(row)
            for event, target in row.items():
                if event is None:
                    raise InputError(f"DFA state {q} has an epsilon transition")
                if event not in self.alphabet:
                    raise InputError(f"Transition label {event!r} of state {q} is not in {self.alphabet}")
                if not isinstance(target, int) or not 0 <= target < n:
                    raise InputError(f"Transition {q} --{event}--> {target!r} leaves the state set")
            delta.append(row)
        object.__setattr__(self, "delta", tuple(delta))
        if self.initial is not None and not (isinstance(self.initial, int) and 0 <= self.initial < n):
            raise InputError(f"Initial state {self.initial!r} is not a state")
        object.__setattr__(self, "marked", _check_state_set(self.marked, n, "Marked set"))
        object.__setattr__(self, "labels", _check_labels(self.labels, n))

    @classmethod
    def from_transitions(cls, num_states: int, alphabet: Alphabet,
                         transitions: Iterable[Tuple[int, str, int]],
                         initial: Optional[int], marked: Iterable[int],
                         labels: Optional[Sequence[str]] = None) -> "Dfa":
        rows: List[Dict[str, int]] = [dict() for _ in range(num_states)]
        for src, event, dst in transitions:
            if not isinstance(src, int) or not 0 <= src < num_states:
                raise InputError(f"Transition source {src!r} is not a state")
            if event is None:
                raise InputError(f"DFA state {src} has an epsilon transition")
            if event in rows[src] and rows[src][event] != dst:
                raise InputError(f"State {src} has two successors under {event!r}")
            rows[src][event] = dst
        return cls(num_states, alphabet, tuple(rows), initial, frozenset(marked),
                   tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Dfa":
        return cls(0, alphabet, (), None, frozenset())

    @property
    def states(self) -> range:
        return range(self.num_states)

    @property
    def transitions(self) -> FrozenSet[Tuple[int, str, int]]:
        return frozenset((q, event, r) for q, row in enumerate(self.delta) for event, r in row.items())

    def step(self, q: int, event: str) -> Optional[int]:
        return self.delta[q].get(event)

    def run(self, word: Sequence[str]) -> Optional[int]:
        """State reached by word from the initial state, or None"""
        q = self.initial
        for event in word:
            if q is None:
                return None
            q = self.delta[q].get(event)
        return q

    def state_name(self, q: int) -> str:
        return self.labels[q] if self.labels is not None else str(q)

    def as_nfa(self) -> Nfa:
        return Nfa(self.num_states, self.alphabet,
                   tuple({event: frozenset((r,)) for event, r in row.items()} for row in self.delta),
                   frozenset() if self.initial is None else frozenset((self.initial,)),
                   self.marked, self.labels)


Automaton = Union[Nfa, Dfa]


@dataclass(frozen=True)
class SubsetAutomaton:
    """Result of the subset construction: the DFA and the NFA states of each subset state"""

    dfa: Dfa
    subsets: Tuple[FrozenSet[int], ...]

    def state_of(self, members: Iterable[int]) -> Optional[int]:
        members = frozenset(members)
        for q, subset in enumerate(self.subsets):
            if subset == members:
                return q
        return None


def _as_nfa(a: Automaton) -> Nfa:
    return a.as_nfa() if isinstance(a, Dfa) else a


def _check_word(alphabet: Alphabet, word: Sequence[str]) -> Word:
    word = tuple(word)
    for event in word:
        if event not in alphabet:
            raise InputError(f"Token {event!r} is not in alphabet {alphabet}")
    return word


def _check_same_alphabet(x: Automaton, y: Automaton):
    if x.alphabet != y.alphabet:
        raise InputError(f"Alphabet mismatch: {x.alphabet} vs {y.alphabet}")


# ---------------------------------------------------------------------------
# Elementary constructions
# ---------------------------------------------------------------------------

def universal_dfa(alphabet: Alphabet) -> Dfa:
    """One marked state looping on every event (Sigma*)"""
    return Dfa(1, alphabet, ({e: 0 for e in alphabet},), 0, frozenset((0,)))


def epsilon_dfa(alphabet: Alphabet) -> Dfa:
    """DFA marking exactly the empty word"""
    return Dfa(1, alphabet, ({},), 0, frozenset((0,)))


def suffix_dfa(alphabet: Alphabet, event: str) -> Dfa:
    """DFA marking Sigma* event"""
    if event not in alphabet:
        raise InputError(f"Event {event!r} is not in {alphabet}")
    row = {e: (1 if e == event else 0) for e in alphabet}
    return Dfa(2, alphabet, (row, dict(row)), 0, frozenset((1,)))


def accessible_states(dfa: Dfa) -> Set[int]:
    if dfa.initial is None:
        return set()
    seen = {dfa.initial}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for r in dfa.delta[q].values():
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


def coaccessible_states(dfa: Dfa) -> Set[int]:
    predecessors: List[List[int]] = [[] for _ in dfa.states]
    for q, row in enumerate(dfa.delta):
        for r in row.values():
            predecessors[r].append(q)
    seen = set(dfa.marked)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for p in predecessors[q]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def restrict(dfa: Dfa, keep: Iterable[int], marked: Optional[Iterable[int]] = None) -> Dfa:
    """
    Sub-automaton on the given states, renumbered in increasing order

    Transitions leaving the kept set are dropped. If the initial state is not
    kept the result is the empty DFA.
    """
    keep = sorted(set(keep))
    if dfa.initial is None or dfa.initial not in keep:
        return Dfa.empty(dfa.alphabet)
    index = {q: i for i, q in enumerate(keep)}
    marked = dfa.marked if marked is None else frozenset(marked)
    rows = tuple({e: index[r] for e, r in dfa.delta[q].items() if r in index} for q in keep)
    labels = tuple(dfa.labels[q] for q in keep) if dfa.labels is not None else None
    return Dfa(len(keep), dfa.alphabet, rows, index[dfa.initial],
               frozenset(index[q] for q in keep if q in marked), labels)


def trim(dfa: Dfa) -> Dfa:
    """Keep the states that are both reachable and co-reachable to a marked state"""
    return restrict(dfa, accessible_states(dfa) & coaccessible_states(dfa))


def generated_language(dfa: Dfa) -> Dfa:
    """DFA whose marked language is the generated language L(dfa)"""
    reach = accessible_states(dfa)
    return restrict(dfa, reach, marked=reach)


# ---------------------------------------------------------------------------
# Determinization
# ---------------------------------------------------------------------------

def epsilon_closure(nfa: Nfa, states: Iterable[int]) -> FrozenSet[int]:
    """Smallest superset of states closed under epsilon transitions"""
    result: Set[int] = set()
    for q in states:
        if not isinstance(q, int) or not 0 <= q < nfa.num_states:
            raise InputError(f"Unknown state {q!r}")
        result |= nfa.closure(q)
    return frozenset(result)


def _members(mask: int) -> FrozenSet[int]:
    members = []
    while mask:
        low = mask & -mask
        members.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(members)


def _subset_label(members: FrozenSet[int]) -> str:
    return "{" + ",".join(str(q) for q in sorted(members)) + "}"


def subset_construction(nfa: Nfa, budget: Optional[int] = None) -> SubsetAutomaton:
    """
    Reachable part of the subset automaton

    Subsets are explored breadth-first under alphabet order; the empty subset
    is never created (transitions to it stay undefined). A subset is marked iff
    it intersects nfa.marked.

    Raises:
        ResourceBudgetExceeded: more than budget subset states were reached
    """
    events = nfa.alphabet.events
    closure_mask = [sum(1 << r for r in nfa.closure(q)) for q in nfa.states]
    step_mask: Dict[str, List[int]] = {}
    for e in events:
        masks = []
        for q in nfa.states:
            m = 0
            for r in nfa.delta[q].get(e, ()):
                m |= closure_mask[r]
            masks.append(m)
        step_mask[e] = masks
    marked_mask = sum(1 << q for q in nfa.marked)

    start = 0
    for q in nfa.initial:
        start |= closure_mask[q]
    if not start:
        return SubsetAutomaton(Dfa.empty(nfa.alphabet), ())

    index = {start: 0}
    order = [start]
    rows: List[Dict[str, int]] = []
    queue = deque([start])
    while queue:
        current = queue.popleft()
        row = {}
        for e in events:
            table = step_mask[e]
            succ = 0
            m = current
            while m:
                low = m & -m
                succ |= table[low.bit_length() - 1]
                m ^= low
            if not succ:
                continue
            target = index.get(succ)
            if target is None:
                target = len(order)
                if budget is not None and target >= budget:
                    raise ResourceBudgetExceeded(
                        f"Subset construction exceeded the budget of {budget} states")
                index[succ] = target
                order.append(succ)
                queue.append(succ)
            row[e] = target
        rows.append(row)

    subsets = tuple(_members(m) for m in order)
    dfa = Dfa(len(order), nfa.alphabet, tuple(rows), 0,
              frozenset(i for i, m in enumerate(order) if m & marked_mask),
              tuple(_subset_label(s) for s in subsets))
    logger.debug(f"Subset construction: {nfa.num_states} NFA states -> {dfa.num_states} subsets")
    return SubsetAutomaton(dfa, subsets)


def determinize(nfa: Automaton, budget: Optional[int] = None) -> Dfa:
    """Subset construction; subset states are labelled by their sorted members"""
    return subset_construction(_as_nfa(nfa), budget).dfa


# ---------------------------------------------------------------------------
# Minimization
# ---------------------------------------------------------------------------

def _hopcroft_partition(num_states: int, events: Sequence[str],
                        target: Callable[[int, str], int], marked: FrozenSet[int]) -> List[int]:
    """Block index of every state of a complete DFA under language equivalence"""
    inverse: Dict[str, List[List[int]]] = {e: [[] for _ in range(num_states)] for e in events}
    for q in range(num_states):
        for e in events:
            inverse[e][target(q, e)].append(q)

    accepting = {q for q in range(num_states) if q in marked}
    rejecting = set(range(num_states)) - accepting
    blocks: List[Set[int]] = [b for b in (accepting, rejecting) if b]
    block_of = [0] * num_states
    for i, block in enumerate(blocks):
        for q in block:
            block_of[q] = i
    if len(blocks) < 2:
        return block_of

    # seed with the smaller block
    worklist = {0 if len(blocks[0]) <= len(blocks[1]) else 1}
    while worklist:
        splitter = list(blocks[worklist.pop()])
        for e in events:
            affected: Dict[int, Set[int]] = {}
            for t in splitter:
                for q in inverse[e][t]:
                    affected.setdefault(block_of[q], set()).add(q)
            for y, overlap in affected.items():
                if len(overlap) == len(blocks[y]):
                    continue
                blocks[y] -= overlap
                new = len(blocks)
                blocks.append(overlap)
                for q in overlap:
                    block_of[q] = new
                if y in worklist:
                    worklist.add(new)
                else:
                    worklist.add(new if len(overlap) <= len(blocks[y]) else y)
    return block_of


def minimize(dfa: Dfa) -> Dfa:
    """
    Minimal partial DFA for the marked language of dfa

    The input is trimmed, completed with a sink, partition-refined, and the
    sink class dropped. States are renumbered breadth-first from the initial
    state under alphabet order, so equal languages give identical outputs.
    """
    t = trim(dfa)
    if t.initial is None:
        return Dfa.empty(dfa.alphabet)
    n = t.num_states
    sink = n
    events = t.alphabet.events

    def target(q: int, e: str) -> int:
        if q == sink:
            return sink
        return t.delta[q].get(e, sink)

    block_of = _hopcroft_partition(n + 1, events, target, t.marked)
    representative: Dict[int, int] = {}
    for q in range(n):
        representative.setdefault(block_of[q], q)

    number = {block_of[t.initial]: 0}
    queue = deque([block_of[t.initial]])
    rows: List[Dict[str, int]] = []
    marked = set()
    while queue:
        block = queue.popleft()
        q = representative[block]
        if q in t.marked:
            marked.add(number[block])
        row = {}
        for e in events:
            r = t.delta[q].get(e)
            if r is None:
                continue
            b = block_of[r]
            if b not in number:
                number[b] = len(number)
                queue.append(b)
            row[e] = number[b]
        rows.append(row)
    return Dfa(len(rows), dfa.alphabet, tuple(rows), 0, frozenset(marked))


# ---------------------------------------------------------------------------
# Products, unions, concatenation
# ---------------------------------------------------------------------------

def product_intersection(x: Dfa, y: Dfa) -> Dfa:
    """Reachable product automaton marking L_m(x) & L_m(y)"""
    _check_same_alphabet(x, y)
    if x.initial is None or y.initial is None:
        return Dfa.empty(x.alphabet)
    start = (x.initial, y.initial)
    index = {start: 0}
    order = [start]
    rows: List[Dict[str, int]] = []
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        row = {}
        for e in x.alphabet:
            p2, q2 = x.delta[p].get(e), y.delta[q].get(e)
            if p2 is None or q2 is None:
                continue
            pair = (p2, q2)
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
                queue.append(pair)
            row[e] = index[pair]
        rows.append(row)
    marked = frozenset(i for i, (p, q) in enumerate(order) if p in x.marked and q in y.marked)
    return Dfa(len(order), x.alphabet, tuple(rows), 0, marked)


def nondet_union(parts: Sequence[Automaton]) -> Nfa:
    """Disjoint union of the parts; initial and marked sets are unions"""
    if not parts:
        raise InputError("nondet_union needs at least one automaton")
    nfas = [_as_nfa(p) for p in parts]
    alphabet = nfas[0].alphabet
    rows: List[Dict[Label, FrozenSet[int]]] = []
    initial: Set[int] = set()
    marked: Set[int] = set()
    offset = 0
    for nfa in nfas:
        if nfa.alphabet != alphabet:
            raise InputError(f"Alphabet mismatch in union: {alphabet} vs {nfa.alphabet}")
        for row in nfa.delta:
            rows.append({label: frozenset(r + offset for r in targets) for label, targets in row.items()})
        initial.update(q + offset for q in nfa.initial)
        marked.update(q + offset for q in nfa.marked)
        offset += nfa.num_states
    return Nfa(offset, alphabet, tuple(rows), frozenset(initial), frozenset(marked))


def append_event(dfa: Dfa, event: str) -> Nfa:
    """NFA marking L_m(dfa) followed by the single event"""
    if event not in dfa.alphabet:
        raise InputError(f"Event {event!r} is not in {dfa.alphabet}")
    fresh = dfa.num_states
    transitions = set(dfa.transitions)
    transitions.update((q, event, fresh) for q in dfa.marked)
    initial = () if dfa.initial is None else (dfa.initial,)
    return Nfa.from_transitions(fresh + 1, dfa.alphabet, transitions, initial, (fresh,))


# ---------------------------------------------------------------------------
# Membership, enumeration, equivalence
# ---------------------------------------------------------------------------

def _start(a: Automaton) -> FrozenSet[int]:
    if isinstance(a, Dfa):
        return frozenset() if a.initial is None else frozenset((a.initial,))
    return epsilon_closure(a, a.initial)


def _advance(a: Automaton, current: FrozenSet[int], event: str) -> FrozenSet[int]:
    if isinstance(a, Dfa):
        return frozenset(a.delta[q][event] for q in current if event in a.delta[q])
    result: Set[int] = set()
    for q in current:
        for r in a.delta[q].get(event, ()):
            result |= a.closure(r)
    return frozenset(result)


def is_member(a: Automaton, word: Sequence[str]) -> bool:
    """True iff word is in the marked language of a"""
    word = _check_word(a.alphabet, word)
    current = _start(a)
    for event in word:
        if not current:
            return False
        current = _advance(a, current, event)
    return bool(current & a.marked)


def enumerate_language(a: Automaton, maxlen: int) -> Set[Word]:
    """All marked words of length at most maxlen"""
    if maxlen < 0:
        raise InputError(f"maxlen must be nonnegative, got {maxlen}")
    result: Set[Word] = set()
    start = _start(a)
    if not start:
        return result
    frontier: List[Tuple[Word, FrozenSet[int]]] = [((), start)]
    for length in range(maxlen + 1):
        following = []
        for word, current in frontier:
            if current & a.marked:
                result.add(word)
            if length == maxlen:
                continue
            for e in a.alphabet:
                nxt = _advance(a, current, e)
                if nxt:
                    following.append((word + (e,), nxt))
        frontier = following
    return result


def equivalent(x: Dfa, y: Dfa) -> bool:
    """Language equality via identity of the canonical minimal DFAs"""
    _check_same_alphabet(x, y)
    return minimize(x) == minimize(y)
