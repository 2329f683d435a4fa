# Test functions for core matcon functionality: masks, oracle operations,
# axiom verifiers and the exhaustive connectivity deciders.

from itertools import combinations

import numpy as np
import pytest

from .. import conf
from .. import matroid_core
from .. import families
from ..accounting import wrap
from ..matroid_core import mask_from_elements as m
from .corpus import corpus


def E(*elements):
    """ Mask from 1-based element numbers, as written in the literature """
    return m([x - 1 for x in elements])


####### Subset masks #######

def test_mask_helpers():
    assert matroid_core.mask_elements(0b1011) == [0, 1, 3]
    assert matroid_core.popcount(0b1011) == 3
    assert matroid_core.full_mask(4) == 0b1111
    assert matroid_core.full_mask(0) == 0
    assert matroid_core.format_mask(E(1, 3)) == "{e1,e3}"
    assert matroid_core.format_mask(0) == "{}"
    assert m([]) == 0


####### Oracle operations #######

def test_is_independent_examples(minimal42):
    assert not matroid_core.is_independent(minimal42, E(3, 4))
    assert matroid_core.is_independent(minimal42, E(1, 3))
    for _, M in corpus():
        assert M.is_independent(0)


def test_rank_examples(minimal42):
    assert matroid_core.rank(minimal42, minimal42.ground) == 2
    assert matroid_core.rank(minimal42, 0) == 0
    assert matroid_core.rank(minimal42, E(3, 4)) == 1


def test_find_base_examples(minimal42):
    counted = wrap(minimal42)
    assert matroid_core.find_base(counted) == E(1, 2)
    assert counted.ledger.classical == 4

    counted = wrap(families.uniform_matroid(0, 3))
    assert matroid_core.find_base(counted) == 0
    assert counted.ledger.classical == 3

    counted = wrap(families.graphic_matroid(3, families.cycle_graph_edges(3)))
    assert matroid_core.find_base(counted) == E(1, 2)
    assert counted.ledger.classical == 3


def test_fundamental_circuit_examples(minimal42):
    assert matroid_core.fundamental_circuit(minimal42, E(1, 2), 2) == E(1, 2, 3)
    assert matroid_core.fundamental_circuit(minimal42, E(1, 3), 3) == E(3, 4)
    assert matroid_core.fundamental_circuit(minimal42, E(1, 3), 1) == E(1, 2, 3)


def test_query_counts_of_derived_operations():
    """ rank uses |A| queries, find_base n, fundamental_circuit |B| """
    for _, M in corpus()[::7]:
        counted = wrap(M)
        A = M.ground & 0b10110101
        matroid_core.rank(counted, A)
        assert counted.ledger.classical == matroid_core.popcount(A)

        counted = wrap(M)
        B = matroid_core.find_base(counted)
        assert counted.ledger.classical == M.n
        assert matroid_core.popcount(B) == matroid_core.rank(M, M.ground)
        assert M.is_independent(B)

        for y in matroid_core.mask_elements(M.ground & ~B)[:2]:
            counted = wrap(M)
            matroid_core.fundamental_circuit(counted, B, y)
            assert counted.ledger.classical == matroid_core.popcount(B)


@pytest.mark.parametrize('name_and_oracle', [x for x in corpus() if x[1].n <= 8][::5], ids=lambda x: x[0])
def test_fundamental_circuits_are_circuits(name_and_oracle):
    """ C(y, B) is dependent and every single-element removal is independent, for every base """
    _, M = name_and_oracle
    for B in families.enumerate_bases(M):
        for y in matroid_core.mask_elements(M.ground & ~B):
            circuit = matroid_core.fundamental_circuit(M, B, y)
            assert not M.is_independent(circuit)
            assert all(M.is_independent(circuit ^ (1 << x)) for x in matroid_core.mask_elements(circuit))


@pytest.mark.parametrize('name_and_oracle', [x for x in corpus() if x[1].n <= 10][::9], ids=lambda x: x[0])
def test_rank_is_monotone_and_submodular(name_and_oracle):
    _, M = name_and_oracle
    table = matroid_core.rank_table(M).astype(int)
    size = 1 << M.n
    masks = np.arange(size)
    for x in range(M.n):
        without = masks[(masks >> x) & 1 == 0]
        step = table[without | (1 << x)] - table[without]
        assert np.all((step == 0) | (step == 1))
    rng = np.random.default_rng(M.n)
    A = rng.integers(size, size=2000)
    B = rng.integers(size, size=2000)
    assert np.all(table[A] + table[B] >= table[A | B] + table[A & B])


def test_rank_table_matches_rank(minimal42):
    table = matroid_core.rank_table(minimal42)
    for A in range(16):
        assert table[A] == matroid_core.rank(minimal42, A)


####### Connectivity by definition #######

def test_brute_force_examples(minimal42, removed42):
    assert matroid_core.brute_force_connected(minimal42).connected

    verdict = matroid_core.brute_force_connected(removed42)
    assert not verdict.connected
    assert verdict.witness == (E(1, 2), E(3, 4))
    assert verdict.algorithm == 'brute'

    assert matroid_core.brute_force_connected(families.free_matroid(1)).connected
    assert matroid_core.brute_force_connected(families.free_matroid(0)).connected


def test_brute_force_ledger(minimal42):
    verdict = matroid_core.brute_force_connected(minimal42)
    assert verdict.ledger.classical == 16
    assert verdict.ledger.phase_totals() == {'brute_force': (16, 0)}


def test_circuit_pairwise_examples(minimal42, removed42):
    assert matroid_core.circuit_pairwise_connected(minimal42)
    assert not matroid_core.circuit_pairwise_connected(families.uniform_matroid(2, 2))
    assert not matroid_core.circuit_pairwise_connected(removed42)


def test_brute_force_agrees_with_circuit_pairs():
    for name, M in corpus():
        if M.n > 10:
            continue
        verdict = matroid_core.brute_force_connected(M)
        assert verdict.connected == matroid_core.circuit_pairwise_connected(M), name
        if not verdict.connected:
            assert matroid_core.verify_separation(M, *verdict.witness), name


def test_enumerate_circuits_minimal(minimal42):
    assert set(matroid_core.enumerate_circuits(minimal42)) == {E(1, 2, 3), E(1, 2, 4), E(3, 4)}
    assert set(matroid_core.enumerate_circuits(minimal42)) == set(minimal42.circuits())


def test_verify_separation(minimal42, removed42):
    assert matroid_core.verify_separation(removed42, E(1, 2), E(3, 4))
    assert not matroid_core.verify_separation(minimal42, E(1, 2), E(3, 4))
    # not a partition of E
    assert not matroid_core.verify_separation(removed42, E(1, 2), E(3))
    assert not matroid_core.verify_separation(removed42, 0, E(1, 2, 3, 4))
    assert not matroid_core.verify_separation(removed42, E(1, 2), E(2, 3, 4))


def test_verdict_to_dict(removed42):
    record = matroid_core.brute_force_connected(removed42).to_dict()
    assert record['connected'] is False
    assert record['witness'] == [[1, 2], [3, 4]]
    assert record['ledger']['classical'] == 16

    with pytest.raises(ValueError):
        matroid_core.ConnectivityVerdict(True, witness=(1, 2))


####### Axiom verifiers #######

def test_independence_axioms_examples(minimal42):
    assert matroid_core.verify_independence_axioms(matroid_core.enumerate_independent_sets(minimal42), 4)
    assert not matroid_core.verify_independence_axioms([0, E(1, 2)], 2)
    assert matroid_core.verify_independence_axioms([0, E(1), E(2)], 2)
    # I0
    assert not matroid_core.verify_independence_axioms([E(1)], 2)
    # downward closed but no augmentation: {e1,e2} and {e3} on n=3
    assert not matroid_core.verify_independence_axioms([0, E(1), E(2), E(3), E(1, 2)], 3)


def test_independence_axioms_hold_on_corpus():
    for name, M in corpus():
        assert matroid_core.verify_independence_axioms(matroid_core.enumerate_independent_sets(M), M.n), name


def test_base_axiom_examples(minimal42):
    assert matroid_core.verify_base_axiom_B1(families.enumerate_bases(minimal42))
    # only deleting E0 keeps the exchange axiom
    for B in minimal42.bases():
        deleted = families.base_deleted_system(4, 2, B)
        assert matroid_core.verify_base_axiom_B1(deleted.bases()) == (B == E(1, 2))
    assert not matroid_core.verify_base_axiom_B1([E(1), E(2, 3)])


def test_circuit_axiom_examples(minimal42):
    assert matroid_core.verify_circuit_axioms([E(1, 2, 3), E(1, 2, 4), E(3, 4)])
    assert not matroid_core.verify_circuit_axioms([E(1), E(1, 2)])
    assert not matroid_core.verify_circuit_axioms([E(1, 2), E(2, 3)])
    for name, M in corpus()[::11]:
        circuits = matroid_core.enumerate_circuits(M)
        if circuits:
            assert matroid_core.verify_circuit_axioms(circuits), name


def test_caps_are_read_at_call_time(minimal42):
    with conf.set_temp('brute_force_max_n', 3):
        with pytest.raises(matroid_core.CapExceededError):
            matroid_core.brute_force_connected(minimal42)
    assert matroid_core.brute_force_connected(minimal42).connected


def test_circuit_pairwise_matches_definition_of_pairs():
    """ Every pair in a circuit of a minimal matroid: the core circuits cover core pairs """
    M = families.minimal_matroid(6, 3)
    covered = set()
    for circuit in M.circuits():
        covered.update(combinations(matroid_core.mask_elements(circuit), 2))
    assert len(covered) == 15
