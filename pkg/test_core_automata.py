#!/usr/bin/env python3
"""
Tests for the core automata types and operations
"""

import pytest

from core_automata import (Alphabet, Dfa, InputError, Nfa, ResourceBudgetExceeded,
                           accessible_states, append_event, coaccessible_states,
                           determinize, enumerate_language, epsilon_closure, epsilon_dfa,
                           equivalent, generated_language, is_member, minimize,
                           nondet_union, product_intersection, subset_construction,
                           suffix_dfa, trim, universal_dfa)
from masks import PrimedAlphabet
from random_instances import random_alphabet, random_dfa, random_nfa
from witnesses import gen_fig3, gen_prime_nfa

AB = Alphabet.of("a", "b")
ABC = Alphabet.of("a", "b", "c")


def finite_dfa(alphabet, words):
    """Trie DFA marking exactly the given words"""
    rows = [{}]
    marked = set()
    for word in words:
        q = 0
        for e in word:
            if e not in rows[q]:
                rows[q][e] = len(rows)
                rows.append({})
            q = rows[q][e]
        marked.add(q)
    return Dfa(len(rows), alphabet, tuple(rows), 0, frozenset(marked))


def words(*texts):
    return {tuple(t) for t in texts}


def test_alphabet_is_sorted_and_validated():
    """Events iterate in lexicographic order; eps and duplicates are rejected"""
    assert Alphabet(("c", "a", "b")).events == ("a", "b", "c")
    with pytest.raises(InputError):
        Alphabet(("a", "a"))
    with pytest.raises(InputError):
        Alphabet(("eps",))
    with pytest.raises(InputError):
        Alphabet(("a b",))


def test_prime_marker_is_reserved():
    with pytest.raises(InputError, match="reserved for primed copies"):
        Alphabet.of("a", "a'")
    with pytest.raises(InputError):
        Alphabet.of("x'y")
    p = PrimedAlphabet.for_alphabet(AB)
    assert p.combined.union(AB) == p.combined
    assert "a'" in p.combined and "a'" not in AB


def test_dfa_rejects_nondeterminism_and_epsilon():
    with pytest.raises(InputError):
        Dfa.from_transitions(2, AB, [(0, "a", 0), (0, "a", 1)], 0, ())
    with pytest.raises(InputError):
        Dfa.from_transitions(2, AB, [(0, None, 1)], 0, ())
    with pytest.raises(InputError):
        Dfa.from_transitions(2, AB, [(0, "c", 1)], 0, ())


def test_epsilon_closure_chain():
    """p -eps-> q -eps-> r closes to all three"""
    nfa = Nfa.from_transitions(3, AB, [(0, None, 1), (1, None, 2)], (0,), (2,))
    assert epsilon_closure(nfa, {0}) == {0, 1, 2}
    assert epsilon_closure(nfa, {2}) == {2}


def test_epsilon_closure_without_epsilon_is_identity(fig4):
    assert epsilon_closure(fig4, {1}) == {1}


def test_epsilon_closure_unknown_state(fig4):
    with pytest.raises(InputError):
        epsilon_closure(fig4, {7})


def test_determinize_example_nfa(fig4):
    """Subsets {0}, {1,2}, {2}, all marked"""
    subsets = subset_construction(fig4)
    assert set(subsets.subsets) == {frozenset({0}), frozenset({1, 2}), frozenset({2})}
    assert subsets.dfa.labels == ("{0}", "{1,2}", "{2}")
    assert subsets.dfa.marked == frozenset(subsets.dfa.states)
    print("✓ example NFA determinized to three marked subsets")


def test_determinize_marks_subsets_meeting_marked_states(rng):
    for _ in range(30):
        alphabet = random_alphabet(rng, 3)
        nfa = random_nfa(rng, alphabet, 5)
        subsets = subset_construction(nfa)
        for q, members in enumerate(subsets.subsets):
            assert (q in subsets.dfa.marked) == bool(members & nfa.marked)


def test_determinize_preserves_bounded_language(rng):
    for _ in range(40):
        alphabet = random_alphabet(rng, 3)
        nfa = random_nfa(rng, alphabet, 5)
        assert enumerate_language(nfa, 6) == enumerate_language(determinize(nfa), 6)


def test_determinize_deterministic_input(fig3):
    assert equivalent(determinize(fig3.as_nfa()), fig3)


def test_subset_budget():
    prime = gen_prime_nfa(3)
    with pytest.raises(ResourceBudgetExceeded):
        subset_construction(prime, budget=5)


def test_minimize_chain_of_prefixes():
    """{eps, a, ..., a^5} has six states, all marked"""
    chain = finite_dfa(Alphabet.of("a"), [("a",) * i for i in range(6)])
    m = minimize(chain)
    assert m.num_states == 6
    assert m.marked == frozenset(range(6))


def test_minimize_example_automaton_is_minimal(fig3):
    assert minimize(fig3).num_states == 2


def test_minimize_merges_and_trims():
    """Two equivalent a-successors collapse, the dead state disappears"""
    dfa = Dfa.from_transitions(4, AB, [(0, "a", 1), (0, "b", 2), (1, "a", 3), (2, "a", 3)],
                               0, (1, 2))
    m = minimize(dfa)
    assert m.num_states == 2
    assert enumerate_language(m, 3) == words("a", "b")


def test_minimize_is_idempotent_and_canonical(rng):
    for _ in range(40):
        alphabet = random_alphabet(rng, 3)
        nfa = random_nfa(rng, alphabet, 5)
        d = determinize(nfa)
        m = minimize(d)
        assert minimize(m) == m
        assert minimize(determinize(nondet_union([nfa, nfa]))) == m
        assert enumerate_language(m, 6) == enumerate_language(nfa, 6)


def test_minimize_empty_language():
    assert minimize(Dfa.from_transitions(2, AB, [(0, "a", 1)], 0, ())).num_states == 0


def test_product_intersection_examples():
    ab = finite_dfa(ABC, ["", "a", "ab"])
    ac = finite_dfa(ABC, ["", "a", "ac"])
    assert enumerate_language(product_intersection(ab, ac), 2) == words("", "a")
    assert equivalent(product_intersection(ab, universal_dfa(ABC)), ab)
    assert product_intersection(ab, Dfa.empty(ABC)).num_states == 0


def test_product_intersection_alphabet_mismatch():
    with pytest.raises(InputError):
        product_intersection(universal_dfa(AB), universal_dfa(ABC))


def test_product_intersection_membership(rng):
    for _ in range(20):
        alphabet = random_alphabet(rng, 3)
        x = random_dfa(rng, alphabet, 4)
        y = random_dfa(rng, alphabet, 4)
        product = product_intersection(x, y)
        for w in enumerate_language(universal_dfa(alphabet), 5):
            assert is_member(product, w) == (is_member(x, w) and is_member(y, w))


def test_nondet_union_prime_blocks():
    union = gen_prime_nfa(2)
    assert union.num_states == 6
    assert len(union.initial) == 3
    single = nondet_union([gen_fig3()])
    assert equivalent(determinize(single), gen_fig3())
    with pytest.raises(InputError):
        nondet_union([])


def test_append_event():
    prefixes = finite_dfa(AB, ["", "a", "ab"])
    assert enumerate_language(append_event(prefixes, "b"), 4) == words("b", "ab", "abb")
    assert enumerate_language(append_event(finite_dfa(AB, [""]), "a"), 3) == words("a")
    assert enumerate_language(append_event(Dfa.empty(AB), "a"), 3) == set()


def test_is_member(fig4):
    assert is_member(fig4, ("a", "b"))
    assert not is_member(fig4, ("b",))
    assert not is_member(Dfa.empty(AB), ())
    with pytest.raises(InputError):
        is_member(fig4, ("z",))


def test_enumerate_language(fig4):
    assert enumerate_language(fig4, 2) == words("", "a", "ab")
    assert enumerate_language(Nfa.empty(AB), 3) == set()
    assert enumerate_language(gen_prime_nfa(1), 4) == words("", "a", "aaa")


def test_equivalent():
    assert equivalent(gen_fig3(), gen_fig3())
    assert not equivalent(Dfa.empty(AB), finite_dfa(AB, [""]))


def test_trim_and_generated_language():
    dfa = Dfa.from_transitions(3, AB, [(0, "a", 1), (0, "b", 2)], 0, (1,))
    assert trim(dfa).num_states == 2
    assert enumerate_language(generated_language(dfa), 2) == words("", "a", "b")


def test_elementary_languages():
    assert enumerate_language(epsilon_dfa(AB), 3) == words("")
    assert enumerate_language(universal_dfa(AB), 2) == words("", "a", "b", "aa", "ab", "ba", "bb")
    assert enumerate_language(suffix_dfa(AB, "b"), 2) == words("b", "ab", "bb")
    with pytest.raises(InputError):
        suffix_dfa(AB, "c")


def test_accessible_and_coaccessible():
    """State 2 is unreachable, state 3 is a dead end"""
    dfa = Dfa.from_transitions(4, AB, [(0, "a", 1), (2, "a", 1), (1, "b", 3)], 0, (1,))
    assert accessible_states(dfa) == {0, 1, 3}
    assert coaccessible_states(dfa) == {0, 1, 2}
    assert accessible_states(Dfa.empty(AB)) == set()
