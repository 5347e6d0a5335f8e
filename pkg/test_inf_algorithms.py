#!/usr/bin/env python3
"""
Tests for inf_o, its stages and oracles, inf_c and inf_co
"""

import pytest

from benchmark import lower_bound, upper_bound
from core_automata import (Alphabet, Dfa, InputError, Nfa, enumerate_language, epsilon_dfa,
                           equivalent, is_member, minimize, universal_dfa)
from closure_ops import is_prefix_closed_dfa, prefix_closure, quotient_union_primed
from inf_algorithms import (UncontrollableSet, add_epsilon_union, build_gh_nfa,
                            check_upper_bound_structure, contains_language, inf_c,
                            inf_c_reference, inf_co, inf_o, inf_o_fixpoint_bounded,
                            inf_o_reference, inf_o_stages, is_observable_bounded,
                            result_properties)
from masks import Mask, PrimedAlphabet, make_projection
from random_instances import (random_alphabet, random_dfa, random_mask,
                              random_uncontrollable)
from witnesses import gen_lower_bound

ABC = Alphabet.of("a", "b", "c")


def finite_closed(alphabet, words):
    """All-marked trie for the prefixes of words"""
    rows = [{}]
    for word in words:
        q = 0
        for e in word:
            if e not in rows[q]:
                rows[q][e] = len(rows)
                rows.append({})
            q = rows[q][e]
    return Dfa(len(rows), alphabet, tuple(rows), 0, frozenset(range(len(rows))))


def with_initial(dfa, q):
    return Dfa(dfa.num_states, dfa.alphabet, dfa.delta, q, dfa.marked, dfa.labels)


def gh_for(n, projection):
    k = prefix_closure(gen_lower_bound(n))
    p = PrimedAlphabet.for_alphabet(k.alphabet)
    return build_gh_nfa(quotient_union_primed(k, p), projection, p)


# ---------------------------------------------------------------------------
# build_gh_nfa
# ---------------------------------------------------------------------------

def test_gh_nfa_for_three_state_witness(projection_ab):
    """c becomes an eps move, c loops everywhere but the sink, all events enter the sink"""
    gh = gh_for(3, projection_ab)
    expected = {
        (0, "a", 1), (1, "a", 2), (2, "a", 0),
        (0, "b", 0), (1, "b", 0), (2, "b", 2),
        (2, None, 0),
        (0, "c", 0), (1, "c", 1), (2, "c", 2),
        (0, "a", 3), (1, "a", 3), (2, "a", 3),
        (0, "b", 3), (1, "b", 3), (2, "b", 3),
        (2, "c", 3),
    }
    assert gh.num_states == 4
    assert gh.transitions == expected
    assert gh.marked == {3}
    assert gh.closure(2) == {0, 2}


@pytest.mark.parametrize("n", range(2, 8))
def test_gh_nfa_shape(n, projection_ab):
    gh = gh_for(n, projection_ab)
    sink = n
    assert gh.num_states == n + 1
    assert gh.delta[sink] == {}
    epsilon = {(q, r) for q, label, r in gh.transitions if label is None}
    assert epsilon == {(n - 1, 0)}
    for q in range(n):
        assert (q, "c", q) in gh.transitions
        assert (q, "a", sink) in gh.transitions and (q, "b", sink) in gh.transitions
    assert {q for q, label, r in gh.transitions if r == sink and label == "c"} == {n - 1}


def test_gh_nfa_distinguishing_words(projection_ab):
    """eps is marked only from the sink; a^i c is marked from n-1-i"""
    n = 5
    gh = gh_for(n, projection_ab)
    for q in gh.states:
        single = Nfa(gh.num_states, gh.alphabet, gh.delta, frozenset((q,)), gh.marked)
        assert is_member(single, ()) == (q == n)
    for i in range(n - 1):
        single = Nfa(gh.num_states, gh.alphabet, gh.delta, frozenset((n - 1 - i,)), gh.marked)
        assert is_member(single, ("a",) * i + ("c",))


def test_gh_nfa_identity_mask(fig3):
    """No eps moves and no added loops under the identity"""
    k = prefix_closure(fig3)
    p = PrimedAlphabet.for_alphabet(k.alphabet)
    q = quotient_union_primed(k, p)
    gh = build_gh_nfa(q, Mask.identity(k.alphabet), p)
    assert not gh.has_epsilon()
    renamed = {(s, e if e not in p.primed else p.unprime(e), d) for s, e, d in q.dfa.transitions}
    assert gh.transitions == renamed


def test_gh_nfa_all_erasing_mask():
    eps = Dfa(1, ABC, ({},), 0, frozenset((0,)))
    p = PrimedAlphabet.for_alphabet(ABC)
    gh = build_gh_nfa(quotient_union_primed(eps, p), make_projection(ABC, ()), p)
    assert enumerate_language(gh, 3) == set()


def test_gh_nfa_pairing_mismatch(projection_ab, fig3):
    p = PrimedAlphabet.for_alphabet(fig3.alphabet)
    q = quotient_union_primed(fig3, p)
    with pytest.raises(InputError):
        build_gh_nfa(q, projection_ab, PrimedAlphabet.for_alphabet(Alphabet.of("a", "b")))


# ---------------------------------------------------------------------------
# add_epsilon_union
# ---------------------------------------------------------------------------

def test_add_epsilon_union():
    assert enumerate_language(add_epsilon_union(Dfa.empty(ABC)), 2) == {()}
    only_a = Dfa.from_transitions(2, ABC, [(0, "a", 1)], 0, (1,))
    assert enumerate_language(add_epsilon_union(only_a), 2) == {(), ("a",)}
    closed = finite_closed(ABC, ["ab"])
    widened = add_epsilon_union(closed)
    assert widened.num_states == closed.num_states + 1
    assert equivalent(widened, closed)


# ---------------------------------------------------------------------------
# inf_o on the lower-bound family
# ---------------------------------------------------------------------------

def test_inf_o_three_state_witness(projection_ab):
    """Eight subsets, five marked, five states after minimization"""
    stages = inf_o_stages(gen_lower_bound(3), projection_ab)
    assert stages.gh_nfa.num_states == 4
    assert stages.subsets.dfa.labels == ("{0}", "{1,3}", "{0,3}", "{0,2,3}", "{1}",
                                         "{0,1,3}", "{0,1,2,3}", "{0,1}")
    assert len(stages.subsets.dfa.marked) == 5
    assert stages.result.stats.final_states == 5
    assert stages.result.dfa.num_states == 5
    print("✓ n=3 witness gives 5 states")


def test_inf_o_two_state_witness(projection_ab):
    stages = inf_o_stages(gen_lower_bound(2), projection_ab)
    assert stages.subsets.dfa.num_states == 3
    assert len(stages.subsets.dfa.marked) == 2
    assert stages.result.dfa.num_states == 2 == lower_bound(2)


@pytest.mark.parametrize("n", range(3, 9))
def test_lower_bound_checkpoints(n, projection_ab):
    """{0,n} after b, {n-2,n} after a^(n-2), enough marked subsets, I merges with {0,n}"""
    stages = inf_o_stages(gen_lower_bound(n), projection_ab)
    subsets = stages.subsets
    assert subsets.subsets[subsets.dfa.run(("b",))] == {0, n}
    assert subsets.subsets[subsets.dfa.run(("a",) * (n - 2))] == {n - 2, n}
    assert len(subsets.dfa.marked) == 3 * 2 ** (n - 2) - 1
    assert len(stages.with_epsilon.marked) >= 2 ** (n - 1) + 2 ** (n - 2)
    sup = stages.supremal
    i_state = sup.labels.index("I")
    zero_n = sup.labels.index("{0,%d}" % n)
    assert equivalent(with_initial(sup, i_state), with_initial(sup, zero_n))


@pytest.mark.parametrize("n", range(2, 11))
def test_inf_o_within_bounds(n, projection_ab):
    k = gen_lower_bound(n)
    stages = inf_o_stages(k, projection_ab)
    final = stages.result.dfa.num_states
    assert lower_bound(n) <= final <= upper_bound(n), f"n={n}: {final} states"
    assert check_upper_bound_structure(stages) == []
    assert result_properties(k, projection_ab, stages.result.dfa, 8) == []


@pytest.mark.slow
@pytest.mark.parametrize("n", range(11, 15))
def test_inf_o_within_bounds_large(n, projection_ab):
    final = inf_o(gen_lower_bound(n), projection_ab).dfa.num_states
    assert lower_bound(n) <= final <= upper_bound(n)


# ---------------------------------------------------------------------------
# inf_o general behavior
# ---------------------------------------------------------------------------

def test_inf_o_empty_language(projection_ab):
    result = inf_o(Dfa.empty(ABC), projection_ab)
    assert result.dfa.num_states == 0
    assert inf_o_reference(Dfa.empty(ABC), projection_ab).num_states == 0


def test_inf_o_epsilon_only(projection_ab):
    eps = Dfa(1, ABC, ({},), 0, frozenset((0,)))
    assert enumerate_language(inf_o(eps, projection_ab).dfa, 3) == {()}
    assert enumerate_language(inf_o_reference(eps, projection_ab), 3) == {()}


def test_inf_o_alphabet_mismatch(projection_ab):
    with pytest.raises(InputError):
        inf_o(universal_dfa(Alphabet.of("a", "b")), projection_ab)


def test_inf_o_identity_mask_gives_closure(rng):
    for _ in range(20):
        alphabet = random_alphabet(rng, 3)
        k = random_dfa(rng, alphabet, 4)
        result = inf_o(k, Mask.identity(alphabet)).dfa
        assert equivalent(result, prefix_closure(k))


def test_inf_o_matches_reference(rng):
    for _ in range(30):
        alphabet = random_alphabet(rng, 3)
        k = random_dfa(rng, alphabet, 4)
        m = random_mask(rng, alphabet)
        stages = inf_o_stages(k, m)
        assert equivalent(stages.result.dfa, inf_o_reference(k, m))
        assert check_upper_bound_structure(stages) == []


def test_inf_o_result_properties(rng):
    """Prefix-closed, contains eps and the closure of K, observable"""
    for _ in range(20):
        alphabet = random_alphabet(rng, 3)
        k = random_dfa(rng, alphabet, 4)
        m = random_mask(rng, alphabet)
        result = inf_o(k, m).dfa
        assert is_prefix_closed_dfa(result)
        closure = prefix_closure(k)
        if closure.initial is None:
            continue
        assert is_member(result, ())
        assert contains_language(result, closure, 6)
        assert is_observable_bounded(result, m, 6)


def test_inf_o_matches_fixpoint(rng):
    for _ in range(20):
        alphabet = random_alphabet(rng, 3)
        k = random_dfa(rng, alphabet, 4)
        m = random_mask(rng, alphabet)
        expected = enumerate_language(inf_o(k, m).dfa, 6)
        assert inf_o_fixpoint_bounded(k, m, 6) == expected


# ---------------------------------------------------------------------------
# Word-level oracles
# ---------------------------------------------------------------------------

def test_fixpoint_identity_mask():
    closed = finite_closed(ABC, ["ab", "cb"])
    words = inf_o_fixpoint_bounded(closed, Mask.identity(ABC), 3)
    assert words == enumerate_language(closed, 3)


def test_fixpoint_adds_unobservable_continuation():
    """P(eps) = P(c) and a is possible after eps, so ca is added"""
    ac = Alphabet.of("a", "c")
    closed = finite_closed(ac, ["a", "c"])
    words = inf_o_fixpoint_bounded(closed, make_projection(ac, ("a",)), 2)
    assert ("c", "a") in words
    assert {(), ("a",), ("c",)} <= words


def test_fixpoint_work_len_validation():
    closed = finite_closed(ABC, ["a"])
    with pytest.raises(InputError):
        inf_o_fixpoint_bounded(closed, Mask.identity(ABC), 4, work_len=2)


def test_fixpoint_short_work_len_is_a_subset(rng):
    for _ in range(15):
        alphabet = random_alphabet(rng, 3)
        k = random_dfa(rng, alphabet, 4)
        m = random_mask(rng, alphabet)
        assert inf_o_fixpoint_bounded(k, m, 4, work_len=4) <= inf_o_fixpoint_bounded(k, m, 4)


def test_fixpoint_default_work_len_reaches_long_witnesses():
    """b after aa needs the witness uuuauuuauuu, longer than check_len + n"""
    uab = Alphabet.of("a", "b", "u")
    transitions = [(0, "u", 1), (1, "u", 2), (2, "u", 3), (3, "a", 0), (3, "b", 4)]
    closed = Dfa.from_transitions(5, uab, transitions, 0, range(5))
    hide_u = make_projection(uab, ("a", "b"))
    exact = inf_o_fixpoint_bounded(closed, hide_u, 3)
    short = inf_o_fixpoint_bounded(closed, hide_u, 3, work_len=3 + 5)
    assert ("a", "a", "b") in exact
    assert ("a", "a", "b") not in short and ("a", "a") in short
    assert exact == enumerate_language(inf_o(closed, hide_u).dfa, 3)


def test_is_observable_bounded_examples():
    ac = Alphabet.of("a", "c")
    projection = make_projection(ac, ("a",))
    missing_ca = finite_closed(ac, ["a", "c"])
    assert not is_observable_bounded(missing_ca, projection, 2)
    assert is_observable_bounded(missing_ca, Mask.identity(ac), 4)
    with pytest.raises(InputError):
        is_observable_bounded(Dfa.from_transitions(2, ac, [(0, "a", 1)], 0, (1,)), projection, 3)


# ---------------------------------------------------------------------------
# inf_c and inf_co
# ---------------------------------------------------------------------------

def test_inf_c_examples():
    ab = Alphabet.of("a", "b")
    k = Dfa.from_transitions(3, ab, [(0, "a", 1), (1, "b", 2)], 0, (2,))
    assert equivalent(inf_c(k, UncontrollableSet(ab)), prefix_closure(k))
    assert inf_c(Dfa.empty(ab), UncontrollableSet(ab, frozenset("b"))).num_states == 0
    result = inf_c(k, UncontrollableSet(ab, frozenset("b")))
    expected = {("b",) * i for i in range(5)} | {("a",) + ("b",) * i for i in range(4)}
    assert enumerate_language(result, 4) == expected


def test_inf_c_uncontrollable_event_undefined_midway():
    """After a, the word bc stays out: only b* follows an uncontrollable escape"""
    closed = finite_closed(ABC, ["bc"])
    result = inf_c(closed, UncontrollableSet(ABC, frozenset("ab")))
    assert is_member(result, ("b", "c"))
    assert is_member(result, ("a", "b"))
    assert not is_member(result, ("a", "b", "c"))
    assert equivalent(result, inf_c_reference(closed, UncontrollableSet(ABC, frozenset("ab"))))


def test_inf_c_matches_reference(rng):
    for _ in range(30):
        alphabet = random_alphabet(rng, 3)
        k = random_dfa(rng, alphabet, 4)
        u = random_uncontrollable(rng, alphabet)
        result = inf_c(k, u)
        assert equivalent(result, inf_c_reference(k, u))
        words = enumerate_language(result, 5)
        for w in words:
            if len(w) < 5:
                assert all(w + (e,) in words for e in u)


def test_uncontrollable_set_validation():
    with pytest.raises(InputError):
        UncontrollableSet(ABC, frozenset("z"))


def test_inf_co_reduces_to_closure():
    closed = finite_closed(ABC, ["abc", "ca"])
    result = inf_co(closed, universal_dfa(ABC), UncontrollableSet(ABC), Mask.identity(ABC))
    assert equivalent(result, closed)


def test_inf_co_decomposition(rng):
    for _ in range(15):
        alphabet = random_alphabet(rng, 3)
        k = random_dfa(rng, alphabet, 4)
        plant = random_dfa(rng, alphabet, 4)
        u = random_uncontrollable(rng, alphabet)
        m = random_mask(rng, alphabet)
        over_sigma = inf_co(k, universal_dfa(alphabet), u, m)
        assert equivalent(over_sigma, inf_o(inf_c(k, u), m).dfa)
        restricted = inf_co(k, plant, u, m)
        for w in enumerate_language(restricted, 5):
            assert is_member(over_sigma, w)
        assert minimize(restricted) == restricted


def test_result_properties_flags_bad_results():
    ab = Alphabet.of("a", "b")
    k = Dfa(3, ab, ({"a": 1}, {"b": 2}, {}), 0, frozenset((2,)))
    hide_a = make_projection(ab, ("b",))
    # b follows a but not eps, and both observe as eps
    assert result_properties(k, hide_a, prefix_closure(k), 8) == ["result is not observable"]
    assert result_properties(k, hide_a, epsilon_dfa(ab), 8) == [
        "result does not contain the closure of K"]
    assert result_properties(k, hide_a, k, 8) == ["result is not prefix-closed"]
    assert result_properties(k, hide_a, inf_o(k, hide_a).dfa, 8) == []
    assert result_properties(Dfa.empty(ab), hide_a, epsilon_dfa(ab), 8) == [
        "empty input gave a nonempty result"]
