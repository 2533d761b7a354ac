import dataclasses

import numpy as np
import pytest

from core.base.automata_base import (
    Classification,
    Decomposition,
    Dfa,
    ViolationKind,
    build_apta,
    check_three_dfa,
    classify,
    decomposition_accepts,
    dfa_accepts,
    reduce_to_3dfa,
    verify_against_acceptor,
    verify_consistency,
)
from core.base.samples_base import Alphabet, LabeledSamples, prefixes
from core.utils.errors import InvalidAutomaton


def word(text):
    return tuple('ab'.index(ch) for ch in text)


class TestApta:
    def test_toy_insertion_numbering(self, toy_samples):
        apta = build_apta(toy_samples)
        assert apta.num_states == 8
        assert apta.accepting == {3, 4, 5}
        assert apta.rejecting == {6, 7}
        assert apta.prefix_of[3] == word('aab')
        assert apta.prefix_of[6] == word('b')

    def test_tree_shape(self, toy_samples):
        apta = build_apta(toy_samples)
        targets = list(apta.delta.values())
        assert len(targets) == len(set(targets)) == apta.num_states - 1
        assert apta.initial not in targets
        for state, (parent, letter) in apta.parents.items():
            assert apta.delta[(parent, letter)] == state

    def test_length_lex_numbering(self, toy_samples):
        apta = build_apta(toy_samples, numbering='length_lex')
        assert apta.prefix_of == prefixes(toy_samples)
        assert {apta.prefix_of[s] for s in apta.accepting} == set(toy_samples.positives)

    def test_unknown_numbering(self, toy_samples):
        with pytest.raises(ValueError):
            build_apta(toy_samples, numbering='random')

    def test_only_empty_word(self):
        apta = build_apta(LabeledSamples.from_strings([''], []))
        assert apta.num_states == 1
        assert apta.accepting == {apta.initial}

    def test_single_negative(self):
        apta = build_apta(LabeledSamples.from_strings([], ['a']))
        assert apta.num_states == 2
        assert apta.rejecting == {apta.delta[(apta.initial, 0)]}


class TestReduction:
    def test_toy(self, toy_samples):
        acceptor = reduce_to_3dfa(build_apta(toy_samples))
        assert acceptor.states == (0, 1, 2, 3, 5, 6, 7)
        assert acceptor.accepting == {3, 5}
        assert acceptor.rejecting == {6, 7}
        assert acceptor.merged == {3}
        assert acceptor.provenance[3] == {3, 4}
        assert acceptor.delta[(2, 0)] == 3 and acceptor.delta[(2, 1)] == 3

    def test_no_merge(self):
        acceptor = reduce_to_3dfa(build_apta(LabeledSamples.from_strings(['a'], ['b'])))
        assert acceptor.num_states == 3
        assert acceptor.merged == frozenset()

    def test_accepting_leaves_collapse(self):
        acceptor = reduce_to_3dfa(build_apta(LabeledSamples.from_strings(['a', 'b'], [])))
        assert acceptor.num_states == 2
        assert len(acceptor.merged) == 1
        (rep,) = acceptor.merged
        assert acceptor.provenance[rep] == {1, 2}

    def test_rejecting_leaves_never_merge(self):
        acceptor = reduce_to_3dfa(build_apta(LabeledSamples.from_strings([], ['a', 'b'])))
        assert acceptor.num_states == 3
        assert len(acceptor.rejecting) == 2

    @pytest.mark.parametrize("text, expected", [
        ('aab', Classification.ACCEPT),
        ('aaa', Classification.ACCEPT),
        ('b', Classification.REJECT),
        ('bb', Classification.DONT_CARE),
        ('a', Classification.DONT_CARE),
        ('', Classification.DONT_CARE),
    ])
    def test_classify(self, toy_samples, text, expected):
        acceptor = reduce_to_3dfa(build_apta(toy_samples))
        assert classify(acceptor, word(text)) == expected

    def test_checker_accepts_reduction(self, toy_samples):
        apta = build_apta(toy_samples)
        check_three_dfa(reduce_to_3dfa(apta), apta)

    def test_checker_rejects_merged_rejecting_states(self, toy_samples):
        acceptor = reduce_to_3dfa(build_apta(toy_samples))
        delta = dict(acceptor.delta)
        delta[(5, 0)] = 6
        provenance = dict(acceptor.provenance)
        provenance[6] = frozenset({6, 7})
        del provenance[7]
        over_merged = dataclasses.replace(
            acceptor,
            states=(0, 1, 2, 3, 5, 6),
            delta=delta,
            rejecting=frozenset({6}),
            merged=frozenset({3, 6}),
            provenance=provenance,
        )
        with pytest.raises(InvalidAutomaton):
            check_three_dfa(over_merged)

    def test_reduction_properties(self, sample_factory):
        rng = np.random.default_rng(11)
        for _ in range(40):
            samples = sample_factory(rng, 2, 6, 5)
            apta = build_apta(samples)
            acceptor = reduce_to_3dfa(apta)
            check_three_dfa(acceptor, apta)
            assert acceptor.num_states <= apta.num_states
            assert (acceptor.num_states == apta.num_states) == (not acceptor.merged)
            for w in samples.positives:
                assert classify(acceptor, w) == Classification.ACCEPT
            for w in samples.negatives:
                assert classify(acceptor, w) == Classification.REJECT
            for prefix in prefixes(samples):
                assert classify(acceptor, prefix) == classify(apta, prefix)


class TestDfa:
    def test_toy_members(self, toy_decomposition):
        first, second = toy_decomposition.dfas
        assert not dfa_accepts(first, word('b'))
        assert not dfa_accepts(second, word('aba'))
        assert dfa_accepts(first, ()) == (first.initial in first.accepting)

    @pytest.mark.parametrize("text, expected", [('aab', True), ('b', False), ('aba', False)])
    def test_decomposition_accepts(self, toy_decomposition, text, expected):
        assert decomposition_accepts(toy_decomposition, word(text)) is expected

    def test_invalid_dfas(self):
        with pytest.raises(InvalidAutomaton):
            Dfa(num_states=1, delta=((1,),), accepting=set())
        with pytest.raises(InvalidAutomaton):
            Dfa(num_states=2, delta=((1, 2), (3, 1)), accepting=set())
        with pytest.raises(InvalidAutomaton):
            Dfa(num_states=2, delta=((1, 2), (1,)), accepting=set())

    def test_decomposition_sizes_ascending(self):
        small = Dfa(num_states=2, delta=((1,), (1,)), accepting={1})
        large = Dfa(num_states=3, delta=((1,), (1,), (1,)), accepting={1})
        with pytest.raises(InvalidAutomaton):
            Decomposition(alphabet=Alphabet(('a',)), dfas=(large, small))
        assert Decomposition(alphabet=Alphabet(('a',)), dfas=(small, large)).allocation == (2, 3)


class TestConsistency:
    def test_toy_consistent(self, toy_samples, toy_decomposition):
        assert verify_consistency(toy_decomposition, toy_samples).consistent

    def test_second_only_accepts_b(self, toy_samples, second_only):
        verdict = verify_consistency(second_only, toy_samples)
        assert not verdict.consistent
        assert verdict.word == word('b')
        assert verdict.kind == ViolationKind.NEGATIVE_ACCEPTED

    def test_all_rejecting(self, toy_samples):
        reject_all = Dfa(num_states=2, delta=((1, 1), (1, 1)), accepting=set())
        verdict = verify_consistency(Decomposition(toy_samples.alphabet, (reject_all,)), toy_samples)
        assert verdict.word == word('aab')
        assert verdict.kind == ViolationKind.POSITIVE_REJECTED

    def test_against_acceptor_agrees(self, toy_samples, toy_decomposition, second_only):
        apta = build_apta(toy_samples)
        acceptor = reduce_to_3dfa(apta)
        assert verify_against_acceptor(toy_decomposition, acceptor).consistent
        assert verify_against_acceptor(toy_decomposition, apta).consistent
        verdict = verify_against_acceptor(second_only, acceptor)
        assert verdict.kind == ViolationKind.NEGATIVE_ACCEPTED
        assert verdict.word == word('b')
