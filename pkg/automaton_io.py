#!/usr/bin/env python3
"""
Automaton and mask file formats, DOT export

Automaton files (.aut) are line based; '#' starts a comment:

    alphabet: a b c
    states: 0 1          (optional, fixes the state order)
    initial: 0
    marked: 1
    trans: 0 a 1
    trans: 1 eps 0       (NFA only)

Mask files (.map) hold "event -> image" pairs, image "eps" for erased events.
Several pairs may share a line.
"""

import logging
import re
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

from core_automata import (EPS_TOKEN, PRIME_MARKER, Alphabet, Dfa, FormatError,
                           InputError, Nfa, check_token)
from masks import Mask

logger = logging.getLogger(__name__)

Automaton = Union[Nfa, Dfa]

_DIRECTIVES = ("alphabet", "states", "initial", "marked", "trans")
_MASK_PAIR = re.compile(r"(\S+?)\s*->\s*(\S+)")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _check_event(token: str, lineno: int) -> str:
    if PRIME_MARKER in token:
        raise FormatError(f"event {token!r} uses the reserved character {PRIME_MARKER!r}", lineno)
    try:
        return check_token(token)
    except InputError as e:
        raise FormatError(str(e), lineno) from e


def parse_automaton(text: str, kind: str = "nfa") -> Automaton:
    """
    Parse an automaton file

    Args:
        text: file contents
        kind: "nfa" or "dfa"; a dfa must have at most one initial state, no
            eps transitions and at most one transition per (state, event)

    Returns:
        Nfa or Dfa with states numbered in declaration order

    Raises:
        FormatError: the text violates the format, with the offending line
    """
    if kind not in ("nfa", "dfa"):
        raise InputError(f"Unknown automaton kind {kind!r}")

    seen: Dict[str, int] = {}
    alphabet: Optional[Alphabet] = None
    declared: Optional[List[str]] = None
    initial: Optional[Tuple[List[str], int]] = None
    marked: Optional[Tuple[List[str], int]] = None
    transitions: List[Tuple[str, Optional[str], str, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        directive, sep, rest = line.partition(":")
        directive = directive.strip()
        if not sep or directive not in _DIRECTIVES:
            raise FormatError(f"unknown directive in {line!r}", lineno)
        tokens = rest.split()
        if directive != "trans" and directive in seen:
            raise FormatError(f"duplicate '{directive}:' directive", lineno)
        seen.setdefault(directive, lineno)

        if directive == "alphabet":
            events = [_check_event(t, lineno) for t in tokens]
            if len(set(events)) != len(events):
                raise FormatError("duplicate event in alphabet", lineno)
            alphabet = Alphabet(tuple(events))
        elif directive == "states":
            if len(set(tokens)) != len(tokens):
                raise FormatError("duplicate state name", lineno)
            declared = tokens
        elif directive == "initial":
            initial = (tokens, lineno)
        elif directive == "marked":
            marked = (tokens, lineno)
        else:
            if len(tokens) != 3:
                raise FormatError("expected 'trans: src event dst'", lineno)
            src, event, dst = tokens
            transitions.append((src, None if event == EPS_TOKEN else event, dst, lineno))

    if alphabet is None:
        raise FormatError("missing 'alphabet:' directive")

    order: List[str] = list(declared) if declared is not None else []
    index = {name: i for i, name in enumerate(order)}

    def state(name: str, lineno: int) -> int:
        if name not in index:
            if declared is not None:
                raise FormatError(f"unknown state {name!r}", lineno)
            index[name] = len(order)
            order.append(name)
        return index[name]

    init_ids = [state(t, initial[1]) for t in initial[0]] if initial else []
    marked_ids = [state(t, marked[1]) for t in marked[0]] if marked else []
    edges = []
    for src, event, dst, lineno in transitions:
        if event is not None and event not in alphabet:
            raise FormatError(f"event {event!r} is not in the alphabet", lineno)
        if event is None and kind == "dfa":
            raise FormatError(f"'{EPS_TOKEN}' transition in a dfa", lineno)
        edges.append((state(src, lineno), event, state(dst, lineno), lineno))

    if declared is None and order and all(name.isdigit() for name in order):
        # numeric names: number states by value
        ranked = sorted(order, key=int)
        renumber = {index[name]: i for i, name in enumerate(ranked)}
        order = ranked
        init_ids = [renumber[q] for q in init_ids]
        marked_ids = [renumber[q] for q in marked_ids]
        edges = [(renumber[s], e, renumber[d], ln) for s, e, d, ln in edges]

    labels = None if order == [str(i) for i in range(len(order))] else tuple(order)
    n = len(order)
    if kind == "nfa":
        return Nfa.from_transitions(n, alphabet, [(s, e, d) for s, e, d, _ in edges],
                                    init_ids, marked_ids, labels)

    if len(set(init_ids)) > 1:
        raise FormatError("a dfa has at most one initial state", initial[1])
    rows: List[Dict[str, int]] = [dict() for _ in range(n)]
    for src, event, dst, lineno in edges:
        if event in rows[src]:
            raise FormatError(f"state {order[src]!r} has two transitions under {event!r}", lineno)
        rows[src][event] = dst
    return Dfa(n, alphabet, tuple(rows), init_ids[0] if init_ids else None,
               frozenset(marked_ids), labels)


def serialize_automaton(a: Automaton) -> str:
    """Text form of a; parse_automaton reads it back to an equal automaton"""
    kind = "dfa" if isinstance(a, Dfa) else "nfa"
    names = [a.state_name(q) for q in a.states]
    if isinstance(a, Dfa):
        initial = [] if a.initial is None else [a.initial]
        edges = sorted(a.transitions, key=lambda t: (t[0], t[1], t[2]))
    else:
        initial = sorted(a.initial)
        edges = sorted(a.transitions, key=lambda t: (t[0], "" if t[1] is None else t[1], t[2]))
    lines = [f"# {kind}, {a.num_states} states",
             "alphabet: " + " ".join(a.alphabet),
             "states: " + " ".join(names),
             "initial: " + " ".join(names[q] for q in initial),
             "marked: " + " ".join(names[q] for q in sorted(a.marked))]
    for src, event, dst in edges:
        lines.append(f"trans: {names[src]} {EPS_TOKEN if event is None else event} {names[dst]}")
    return "\n".join(lines) + "\n"


def parse_mask(text: str, sigma: Alphabet) -> Mask:
    """
    Parse "event -> image" pairs into a total mask over sigma

    The codomain is the set of non-eps images.

    Raises:
        FormatError: malformed pair, unknown or duplicated event, or a
            missing event ("mask not total")
    """
    table: Dict[str, Optional[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if _MASK_PAIR.sub("", line).strip():
            raise FormatError(f"expected 'event -> image' pairs in {line!r}", lineno)
        for event, image in _MASK_PAIR.findall(line):
            if event not in sigma:
                raise FormatError(f"event {event!r} is not in {sigma}", lineno)
            if event in table:
                raise FormatError(f"event {event!r} is mapped twice", lineno)
            table[event] = None if image == EPS_TOKEN else _check_event(image, lineno)
    missing = [e for e in sigma if e not in table]
    if missing:
        raise FormatError(f"mask not total: no image for {', '.join(missing)}")
    codomain = Alphabet(tuple({img for img in table.values() if img is not None}))
    return Mask.from_dict(sigma, codomain, table)


def serialize_mask(m: Mask) -> str:
    return "".join(f"{e} -> {EPS_TOKEN if img is None else img}\n" for e, img in m.mapping)


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r'\"'))


def _dot_lines(a: Automaton) -> Iterator[str]:
    yield "digraph automaton {\n"
    yield "  rankdir=LR;\n"
    if isinstance(a, Dfa):
        initial = [] if a.initial is None else [a.initial]
    else:
        initial = sorted(a.initial)
    for q in a.states:
        shape = "doublecircle" if q in a.marked else "circle"
        yield f"  {_gvquote(a.state_name(q))} [shape={shape}];\n"
    for i, q in enumerate(initial):
        start = _gvquote(f"__start{i}")
        yield f"  {start} [shape=point];\n"
        yield f"  {start} -> {_gvquote(a.state_name(q))};\n"
    grouped: Dict[Tuple[int, int], List[str]] = {}
    for src, event, dst in a.transitions:
        grouped.setdefault((src, dst), []).append(EPS_TOKEN if event is None else event)
    for (src, dst), events in sorted(grouped.items()):
        label = ",".join(sorted(events))
        yield (f"  {_gvquote(a.state_name(src))} -> {_gvquote(a.state_name(dst))}"
               f" [label={_gvquote(label)}];\n")
    yield "}\n"


def export_dot(a: Automaton) -> str:
    """Graphviz digraph: doubled circles for marked states, one point per initial state"""
    return "".join(_dot_lines(a))


def read_automaton(path: Union[str, Path], kind: str = "nfa") -> Automaton:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_automaton(text, kind)
    except FormatError as e:
        raise FormatError(f"{path}: {e}") from e


def read_mask(path: Union[str, Path], sigma: Alphabet) -> Mask:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_mask(text, sigma)
    except FormatError as e:
        raise FormatError(f"{path}: {e}") from e


def write_text(path: Union[str, Path], text: str):
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")
