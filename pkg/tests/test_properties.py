"""
Propiedades sobre muchas instancias aleatorias con semilla fija.
Lentas: se ejecutan con ``pytest -m slow``.
"""

import itertools

import numpy as np
import pytest

from apps.bench.oracle import oracle_exists_decomposition
from core.app_factory import EncoderFactory
from core.base.automata_base import (
    Classification,
    build_apta,
    check_three_dfa,
    classify,
    verify_consistency,
)
from core.base.samples_base import prefixes, word_prefixes
from core.base.search_base import (
    bound_witness,
    solve_allocation,
    solve_pareto,
    solve_states_optimal,
    termination_bound,
)
from core.utils.sat_backend import SAT

pytestmark = pytest.mark.slow

# Asignaciones con total <= 6 y partes dentro del alcance del oráculo
MICRO_ALLOCATIONS = [(2,), (3,), (4,), (2, 2), (2, 3), (2, 4), (3, 3), (2, 2, 2)]


def micro_instances(sample_factory, count=200):
    for seed in range(count):
        yield seed, sample_factory(np.random.default_rng(1000 + seed), 2, 5, 4)


def test_reduction_on_random_samples(sample_factory):
    for seed in range(500):
        rng = np.random.default_rng(seed)
        size = int(rng.integers(2, 4))
        samples = sample_factory(rng, size, 8, 6)
        apta = build_apta(samples)
        acceptor = EncoderFactory.build_acceptor('three_dfa', samples)
        check_three_dfa(acceptor, apta)

        for word in samples.positives:
            assert classify(acceptor, word) == Classification.ACCEPT, seed
        for word in samples.negatives:
            assert classify(acceptor, word) == Classification.REJECT, seed

        negative_prefixes = {p for w in samples.negatives for p in word_prefixes(w)}
        for u, v in itertools.combinations(prefixes(samples), 2):
            if u in negative_prefixes or v in negative_prefixes:
                assert acceptor.run(u) != acceptor.run(v), seed

        assert acceptor.num_states <= apta.num_states
        owners = {m: s for s, members in acceptor.provenance.items() for m in members}
        images = [owners[r] for r in apta.rejecting]
        assert len(images) == len(set(images))


def test_sat_agrees_with_oracle(sample_factory):
    for seed, samples in micro_instances(sample_factory):
        acceptor = EncoderFactory.build_acceptor('three_dfa', samples)
        for allocation in MICRO_ALLOCATIONS:
            result = solve_allocation(acceptor, allocation, samples=samples)
            expected = oracle_exists_decomposition(samples, allocation)
            assert (result.status == SAT) == expected, (seed, allocation)
            if result.status == SAT:
                assert verify_consistency(result.decomposition, samples).consistent


def test_encoders_share_frontiers(sample_factory):
    for seed, samples in micro_instances(sample_factory):
        for n in (1, 2):
            improved = solve_pareto(samples, n, encoder='three_dfa').allocations()
            legacy = solve_pareto(samples, n, encoder='apta_legacy').allocations()
            assert improved == legacy, (seed, n)


@pytest.mark.parametrize("encoder", ['three_dfa', 'apta_legacy'])
def test_symmetry_breaking_is_neutral(sample_factory, encoder):
    for seed, samples in micro_instances(sample_factory):
        acceptor = EncoderFactory.build_acceptor(encoder, samples)
        for allocation in MICRO_ALLOCATIONS:
            with_sym = solve_allocation(acceptor, allocation, encoder=encoder, symmetry=True)
            without = solve_allocation(acceptor, allocation, encoder=encoder, symmetry=False)
            assert with_sym.status == without.status, (seed, allocation)


def test_states_optimal_within_bound(sample_factory):
    for seed, samples in micro_instances(sample_factory, count=60):
        result = solve_states_optimal(samples)
        assert result.total <= termination_bound(samples), seed
        assert verify_consistency(result.decomposition, samples).consistent


def test_bound_witness_is_consistent(sample_factory):
    for seed in range(20):
        samples = sample_factory(np.random.default_rng(seed), 3, 8, 6)
        witness = bound_witness(samples)
        assert witness.total_states == termination_bound(samples)
        assert verify_consistency(witness, samples).consistent, seed
