# Tests for the simulated quantum decider and its Grover cost model

import math

import numpy as np
import pytest

from .. import classical
from .. import conf
from .. import families
from .. import matroid_core
from .. import quantum
from ..bench import fit_scaling_exponent
from ..matroid_core import mask_from_elements as m
from .corpus import corpus


def E(*elements):
    return m([x - 1 for x in elements])


IDEAL = quantum.GroverCostModel(1, 1, 1, 'idealized', 1. / 3, 'side')


####### Cost model #######

def test_grover_find_examples():
    assert quantum.grover_find(16, 4, IDEAL) == (0, 2)
    assert quantum.grover_find(16, 0, IDEAL) == (None, 4)
    assert quantum.grover_find(1, 1, IDEAL) == (0, 1)


def test_grover_costs_are_exact_ceilings():
    for N in range(1, 60):
        for k in range(1, N + 1):
            assert quantum.grover_cost(N, k, IDEAL) == math.ceil(math.sqrt(N / k) - 1e-12)
        assert quantum.grover_cost(N, 0, IDEAL) == math.ceil(math.sqrt(N) - 1e-12)
    three = quantum.GroverCostModel(c_success=3, c_fail=2, repetitions=5, mode='idealized')
    assert quantum.grover_cost(16, 9, three) == 4
    assert quantum.grover_cost(16, 0, three) == 5 * 8


def test_grover_find_uniform_over_solutions(rng):
    counts = np.zeros(4, dtype=int)
    for _ in range(4000):
        found, cost = quantum.grover_find(16, 4, IDEAL, rng)
        counts[found] += 1
        assert cost == 2
    assert np.all(np.abs(counts / 4000 - 0.25) < 0.03)


def test_grover_find_rejects_bad_sizes():
    with pytest.raises(ValueError):
        quantum.grover_find(4, 5, IDEAL)
    with pytest.raises(ValueError):
        quantum.grover_find(0, 0, IDEAL)


def test_sampled_failure_rate(rng):
    model = quantum.GroverCostModel(mode='sampled', repetitions=2, failure_prob=0.5)
    misses = sum(quantum.grover_find(9, 3, model, rng)[0] is None for _ in range(20000))
    assert abs(misses / 20000 - 0.25) < 0.015
    # emptiness is never wrong
    assert all(quantum.grover_find(9, 0, model, rng) == (None, 2 * 3) for _ in range(100))


def test_model_defaults_follow_conf():
    conf.grover_c_success = 2
    conf.grover_repetitions = 3
    model = quantum.GroverCostModel()
    assert model.c_success == 2 and model.repetitions == 3
    assert model.mode == 'idealized' and model.search_space == 'side'


####### Adjacency oracle #######

def test_adjacency_examples(minimal42):
    A = quantum.AdjacencyOracle(minimal42, E(1, 2))
    assert quantum.adjacency(A, 0, 2) == 1
    assert A.ledger.classical == 1
    assert quantum.adjacency(A, 2, 0) == 0
    assert quantum.adjacency(A, 0, 1) == 0
    assert A.ledger.classical == 1


def test_adjacency_matches_partial_representation():
    for name, M in corpus()[::17]:
        B = matroid_core.find_base(M)
        P = classical.build_partial_representation(M, B)
        A = quantum.AdjacencyOracle(M, B)
        for x in P.rows:
            for y in P.cols:
                assert A.adjacency(x, y) == P.entry(x, y), name
                assert A.adjacency(y, x) == 0


####### Depth-first search #######

def test_pinned_trace_minimal42(minimal42):
    """ side search space: successes 1 + 2 + 2, then four failed searches of 2 each """
    verdict = quantum.quantum_dfs_connected(minimal42, IDEAL, rng=None)
    assert verdict.connected
    assert [event.cost for event in verdict.trace] == [1, 2, 2, 2, 2, 2, 2]
    assert [event.found for event in verdict.trace] == [2, 1, 3, None, None, None, None]
    assert verdict.ledger.quantum_charged == 13
    assert verdict.ledger.quantum_in('grover_success') == 5
    assert verdict.ledger.quantum_in('grover_fail') == 8
    assert verdict.ledger.classical == 4
    assert verdict.ledger.quantum_charged == quantum.reference_trace_cost(minimal42, IDEAL)


def test_pinned_trace_undiscovered_space(minimal42):
    model = quantum.GroverCostModel(1, 1, 1, 'idealized', 1. / 3, 'undiscovered')
    verdict = quantum.quantum_dfs_connected(minimal42, model)
    assert verdict.connected
    assert verdict.ledger.quantum_charged == 3
    assert quantum.reference_trace_cost(minimal42, model) == 3


def test_reference_trace_on_corpus():
    for name, M in corpus()[::5]:
        for space in ('side', 'undiscovered'):
            model = quantum.GroverCostModel(1, 1, 1, 'idealized', 1. / 3, space)
            verdict = quantum.quantum_dfs_connected(M, model)
            assert verdict.ledger.quantum_charged == quantum.reference_trace_cost(M, model), name
            assert sum(event.cost for event in verdict.trace) == verdict.ledger.quantum_charged


def test_removed_base_is_disconnected(removed42):
    verdict = quantum.quantum_dfs_connected(removed42, IDEAL)
    assert not verdict.connected
    assert matroid_core.verify_separation(removed42, *verdict.witness)


def test_rank_zero_matroids():
    verdict = quantum.quantum_dfs_connected(families.uniform_matroid(0, 3), IDEAL)
    assert not verdict.connected
    assert verdict.witness == (E(1), E(2, 3))
    assert verdict.ledger.quantum_charged == 0
    assert quantum.quantum_dfs_connected(families.uniform_matroid(0, 1), IDEAL).connected


def test_dfs_structure():
    """ each vertex pushed and popped once: successes = discovered - 1, failures = pops """
    for name, M in corpus()[::4]:
        verdict = quantum.quantum_dfs_connected(M, IDEAL, rng=7)
        successes = [event for event in verdict.trace if event.found is not None]
        failures = [event for event in verdict.trace if event.found is None]
        discovered = 1 + len(successes)
        if matroid_core.find_base(M):
            assert len(failures) == discovered, name
            assert len({event.found for event in successes}) == len(successes), name
        assert verdict.connected == (discovered == M.n), name
        assert verdict.ledger.classical == M.n


def test_quantum_agrees_with_other_deciders():
    seeds = range(100)
    for name, M in corpus():
        expected = matroid_core.brute_force_connected(M).connected
        assert classical.cunningham_connected(M).connected == expected, name
        assert matroid_core.circuit_pairwise_connected(M) == expected, name
        for seed in seeds:
            verdict = quantum.quantum_dfs_connected(M, IDEAL, np.random.default_rng(seed))
            assert verdict.connected == expected, (name, seed)


def test_quantum_scaling_on_minimal_matroids():
    points = []
    for n in (64, 128, 256, 512, 1024):
        M = families.minimal_matroid(n, n // 2)
        costs = [quantum.quantum_dfs_connected(M, IDEAL, np.random.default_rng(seed)).ledger.quantum_charged
                 for seed in range(20)]
        ceil_sqrt = math.isqrt(n - 1) + 1
        assert max(costs) <= n * ceil_sqrt * (1 + IDEAL.c_fail)
        assert max(costs) < n * n // 4 + n
        points.append((n, np.mean(costs)))
    slope = fit_scaling_exponent(points)
    assert 1.35 <= slope <= 1.65


def test_undiscovered_search_space_is_linear_on_minimal_matroids():
    """ Searching only undiscovered vertices of a complete G(P) charges 1 per discovery and 0 per pop """
    model = quantum.GroverCostModel(1, 1, 1, 'idealized', 1. / 3, 'undiscovered')
    for n in (4, 16, 64, 256):
        M = families.minimal_matroid(n, n // 2)
        verdict = quantum.quantum_dfs_connected(M, model, np.random.default_rng(n))
        assert verdict.connected
        assert verdict.ledger.quantum_charged == n - 1
        side = quantum.quantum_dfs_connected(M, IDEAL, np.random.default_rng(n)).ledger.quantum_charged
        assert side > verdict.ledger.quantum_charged


def test_sampled_mode_bounded_error():
    """ repetitions = ceil(log2 n) keeps the verdict error under 1/3 """
    trials = 300
    slack = 3 * math.sqrt((1. / 3) * (2. / 3) / trials)
    total_errors = total_trials = 0
    for name, M in corpus()[::6]:
        if M.n < 2:
            continue
        expected = matroid_core.brute_force_connected(M).connected
        model = quantum.GroverCostModel(mode='sampled', repetitions=math.ceil(math.log2(M.n)))
        rng = np.random.default_rng(M.n)
        errors = sum(quantum.quantum_dfs_connected(M, model, rng).connected != expected for _ in range(trials))
        assert errors / trials <= 1. / 3 + slack, name
        total_errors += errors
        total_trials += trials
    assert total_errors / total_trials <= 1. / 3


def test_sampled_mode_never_invents_connectivity(removed42, rng):
    model = quantum.GroverCostModel(mode='sampled', repetitions=1, failure_prob=0.9)
    for _ in range(200):
        assert not quantum.quantum_dfs_connected(removed42, model, rng).connected


def test_sampled_mode_needs_rng(minimal42):
    model = quantum.GroverCostModel(mode='sampled')
    with pytest.raises(ValueError):
        quantum.quantum_dfs_connected(minimal42, model, rng=None)
