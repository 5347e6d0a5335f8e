#!/usr/bin/env python3
"""
Tests for the witness families and the fooling-set checker
"""

import pytest

from core_automata import (Alphabet, Dfa, InputError, determinize, enumerate_language,
                           minimize)
from closure_ops import supremal_prefix_closed
from witnesses import (PRIMES, FoolingSet, WitnessFamily, WitnessSpec, fooling_set_check,
                       gen_fig3, gen_fig4, gen_lower_bound, gen_prime_nfa, gen_quotient_tight,
                       member_predicate, prime_fooling_set, primorial)


def a_power(i):
    return ("a",) * i


def test_quotient_tight_shape():
    dfa = gen_quotient_tight(4)
    assert dfa.num_states == 4
    assert dfa.marked == frozenset(range(4))
    assert dfa.transitions == {(0, "a", 1), (0, "b", 1), (1, "a", 2), (1, "b", 2),
                               (2, "a", 3), (2, "b", 3), (3, "a", 3)}


def test_lower_bound_transitions_n4():
    dfa = gen_lower_bound(4)
    assert dfa.alphabet == Alphabet.of("a", "b", "c")
    assert dfa.initial == 0 and dfa.marked == {0}
    assert dfa.transitions == {
        (0, "a", 1), (1, "a", 2), (2, "a", 3), (3, "a", 0),
        (0, "b", 0), (1, "b", 2), (2, "b", 0), (3, "b", 3),
        (3, "c", 0),
    }


@pytest.mark.parametrize("n", range(2, 10))
def test_lower_bound_is_minimal(n):
    """Every member of the family is already a minimal DFA"""
    assert minimize(gen_lower_bound(n)).num_states == n


def test_small_sizes_rejected():
    with pytest.raises(InputError):
        gen_lower_bound(1)
    with pytest.raises(InputError):
        gen_quotient_tight(1)
    with pytest.raises(InputError):
        gen_prime_nfa(0)
    with pytest.raises(InputError):
        gen_prime_nfa(len(PRIMES) + 1)


def test_primorial():
    assert [primorial(n) for n in range(5)] == [1, 2, 6, 30, 210]


@pytest.mark.parametrize("n", range(1, 5))
def test_prime_nfa_shape(n):
    nfa = gen_prime_nfa(n)
    assert nfa.num_states == 1 + sum(PRIMES[:n])
    assert len(nfa.initial) == n + 1
    assert nfa.labels[0] == "0_0"


def test_prime_nfa_language():
    """a^j is marked unless j is a positive multiple of 6"""
    words = enumerate_language(gen_prime_nfa(2), 13)
    expected = {a_power(j) for j in range(14) if j == 0 or j % 6}
    assert words == expected


@pytest.mark.parametrize("n,p", [(1, 2), (2, 6), (3, 30)])
def test_prime_supremal_chain(n, p):
    sup = minimize(supremal_prefix_closed(determinize(gen_prime_nfa(n))))
    assert sup.num_states == p
    assert enumerate_language(sup, p + 1) == {a_power(i) for i in range(p)}


@pytest.mark.slow
def test_prime_supremal_chain_n4():
    sup = minimize(supremal_prefix_closed(determinize(gen_prime_nfa(4))))
    assert sup.num_states == 210


def test_example_automata():
    fig3 = gen_fig3()
    assert fig3.num_states == 2 and fig3.marked == {1}
    assert enumerate_language(gen_fig4(), 3) == {(), ("a",), ("a", "b")}
    assert gen_fig4().marked == {0, 2}


def test_fooling_set_prime_prefixes():
    """Pairs (a^i, a^(5-i)) fool every NFA for the prefixes of a^5"""
    unreduced = supremal_prefix_closed(determinize(gen_prime_nfa(2)))
    sup = minimize(unreduced)
    fooling = prime_fooling_set(2)
    assert len(fooling) == 6
    assert fooling_set_check(member_predicate(sup), fooling)
    assert unreduced.num_states >= sup.num_states == len(fooling)
    print("✓ fooling set of size 6 accepted")


def test_fooling_set_small_cases():
    eps_and_a = Dfa.from_transitions(2, Alphabet.of("a"), [(0, "a", 1)], 0, (0, 1))
    member = member_predicate(eps_and_a)
    assert fooling_set_check(member, FoolingSet((((), ()),)))
    assert not fooling_set_check(member, FoolingSet((((), ()), (("a",), ()))))
    assert not fooling_set_check(member, FoolingSet(((("a", "a"), ()),)))
    with pytest.raises(InputError):
        FoolingSet(())


def test_witness_spec():
    assert WitnessSpec(WitnessFamily.LOWER_BOUND, 3).build() == gen_lower_bound(3)
    assert WitnessSpec("fig4").build() == gen_fig4()
    assert WitnessSpec("prime", 2).build().num_states == 6
    with pytest.raises(InputError):
        WitnessSpec("lowerbound")
    with pytest.raises(InputError):
        WitnessSpec("quotient", 1)
    with pytest.raises(InputError):
        WitnessSpec("prime", 9)
    with pytest.raises(ValueError):
        WitnessSpec("cube", 3)
