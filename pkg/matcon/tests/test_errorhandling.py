# This file contains code for testing various error handlers and user interface edge cases,
# as opposed to testing the main body of functionality of the code.

import numpy as np
import pytest

from .. import accounting
from .. import bench
from .. import classical
from .. import conf
from .. import families
from .. import lowerbound
from .. import matroid_core
from .. import quantum


def _exception_message_starts_with(excinfo, message_body):
    return excinfo.value.args[0].startswith(message_body)


def test_oracle_rejects_foreign_masks(minimal42):
    for mask in (-1, 1 << 4, 0b10000 | 0b1):
        with pytest.raises(ValueError) as excinfo:
            minimal42.is_independent(mask)
        assert _exception_message_starts_with(excinfo, "Subset mask")

    with pytest.raises(ValueError) as excinfo:
        accounting.wrap(minimal42).is_independent(1 << 7)
    assert _exception_message_starts_with(excinfo, "Subset mask")


def test_family_parameter_errors():
    inputs_and_errors = ((lambda: families.minimal_matroid(3, 3), "Minimal matroids need 0 < r < n"),
                         (lambda: families.uniform_matroid(4, 3), "Uniform matroids need 0 <= r <= n"),
                         (lambda: families.removed_base_matroid(4, 2, 0b1100), "{e3,e4} is not a base"),
                         (lambda: families.removed_base_matroid(4, 2, 0b0101),
                          "Removing {e1,e3} from the minimal matroid (4, 2) violates the base exchange axiom"),
                         (lambda: families.base_deleted_system(4, 2, 0b1100), "{e3,e4} is not a base"),
                         (lambda: families.graphic_matroid(2, [(0, 5)]), "Edge (0, 5) refers to a vertex"),
                         (lambda: families.explicit_bases_matroid(3, []), "An explicit matroid needs"),
                         (lambda: families.explicit_bases_matroid(3, [0b001, 0b110]),
                          "Base list violates the base exchange axiom"),
                         (lambda: matroid_core.mask_from_elements([0, -2]), "Element indices must be non-negative"))

    for build, expected_error in inputs_and_errors:
        with pytest.raises(ValueError) as excinfo:
            build()
        assert _exception_message_starts_with(excinfo, expected_error)


def test_caps_name_their_setting():
    with pytest.raises(matroid_core.CapExceededError) as excinfo:
        matroid_core.brute_force_connected(families.minimal_matroid(21, 10))
    assert _exception_message_starts_with(excinfo, "brute_force_connected requires n <= 20 (conf.brute_force_max_n)")

    with conf.set_temp('brute_force_max_n', 4):
        assert matroid_core.brute_force_connected(families.minimal_matroid(4, 2)).connected
        with pytest.raises(matroid_core.CapExceededError):
            matroid_core.brute_force_connected(families.minimal_matroid(5, 2))

    conf.axiom_max_n = 5
    with pytest.raises(matroid_core.CapExceededError) as excinfo:
        matroid_core.circuit_pairwise_connected(families.minimal_matroid(6, 3))
    assert _exception_message_starts_with(excinfo, "circuit_pairwise_connected requires n <= 5")

    # caps are ValueErrors, which the command line maps to exit status 2
    assert issubclass(matroid_core.CapExceededError, ValueError)


def test_fundamental_circuit_arguments(minimal42):
    with pytest.raises(ValueError) as excinfo:
        matroid_core.fundamental_circuit(minimal42, 0b0011, 0)
    assert _exception_message_starts_with(excinfo, "Element e1 already belongs to the base")
    with pytest.raises(ValueError) as excinfo:
        matroid_core.fundamental_circuit(minimal42, 0b0011, 4)
    assert _exception_message_starts_with(excinfo, "Element index 4 outside the ground set")


def test_verdict_consistency():
    with pytest.raises(ValueError) as excinfo:
        matroid_core.ConnectivityVerdict(True, witness=(1, 2))
    assert _exception_message_starts_with(excinfo, "A connected verdict cannot carry")


def test_axiom_suite_arguments():
    with pytest.raises(ValueError) as excinfo:
        matroid_core.verify_base_axiom_B1([])
    assert _exception_message_starts_with(excinfo, "The base exchange axiom needs a nonempty")
    with pytest.raises(ValueError) as excinfo:
        matroid_core.verify_circuit_axioms([])
    assert _exception_message_starts_with(excinfo, "The circuit axioms need a nonempty")


def test_deciders_need_a_ground_set():
    empty = families.free_matroid(0)
    with pytest.raises(ValueError) as excinfo:
        classical.cunningham_connected(empty)
    assert _exception_message_starts_with(excinfo, "cunningham_connected needs a nonempty ground set")
    with pytest.raises(ValueError) as excinfo:
        quantum.quantum_dfs_connected(empty)
    assert _exception_message_starts_with(excinfo, "quantum_dfs_connected needs a nonempty ground set")


def test_cost_model_arguments():
    inputs_and_errors = (({'c_success': 0}, "Grover c_success must be a positive integer"),
                         ({'c_fail': 1.5}, "Grover c_fail must be a positive integer"),
                         ({'repetitions': True}, "Grover repetitions must be a positive integer"),
                         ({'mode': 'exact'}, "Grover mode must be one of"),
                         ({'failure_prob': 1.0}, "Grover failure_prob must lie in [0, 1)"),
                         ({'search_space': 'all'}, "Grover search_space must be one of"))

    for kwargs, expected_error in inputs_and_errors:
        with pytest.raises(ValueError) as excinfo:
            quantum.GroverCostModel(**kwargs)
        assert _exception_message_starts_with(excinfo, expected_error)

    with pytest.raises(ValueError) as excinfo:
        quantum.grover_find(3, 4, quantum.GroverCostModel())
    assert _exception_message_starts_with(excinfo, "Grover solution count must satisfy 0 <= k <= N")


def test_ledger_charges():
    ledger = accounting.QueryLedger()
    with pytest.raises(TypeError) as excinfo:
        ledger.charge('3')
    assert _exception_message_starts_with(excinfo, "Quantum charges must be integers")
    with pytest.raises(ValueError) as excinfo:
        ledger.charge(-2)
    assert _exception_message_starts_with(excinfo, "Quantum charges must be non-negative")


def test_lowerbound_arguments(minimal42):
    with pytest.raises(ValueError) as excinfo:
        lowerbound.mu_sample(5, 0, np.random.default_rng(0))
    assert _exception_message_starts_with(excinfo, "mu_sample needs 0 < r < n")

    with pytest.raises(ValueError) as excinfo:
        lowerbound.adversary_parameters(4, 2, removals='valid')
    assert _exception_message_starts_with(excinfo, "Removal set must be one of all, matroid")

    sample = lowerbound.MuSample(minimal42, lowerbound.Label.connected, None)
    with pytest.raises(ValueError) as excinfo:
        lowerbound.probe_distinguisher(sample, 9)
    assert _exception_message_starts_with(excinfo, "Probe count must satisfy 0 <= T <= N=5")

    with pytest.raises(ValueError) as excinfo:
        lowerbound.ChiString(2, [True, False])
    assert _exception_message_starts_with(excinfo, "A chi string over n=2 elements needs 4 bits")


def test_bench_arguments():
    with pytest.raises(ValueError) as excinfo:
        bench.fit_scaling_exponent([(1, 1)])
    assert _exception_message_starts_with(excinfo, "Exponent fits need at least 3")
    with pytest.raises(ValueError) as excinfo:
        bench.run_algorithm(families.minimal_matroid(4, 2), 'annealing')
    assert _exception_message_starts_with(excinfo, "Unknown algorithm 'annealing'")
    with pytest.raises(bench.InstanceFormatError) as excinfo:
        bench.parse_instance('{"n": 4}')
    assert _exception_message_starts_with(excinfo, "Missing required field (field 'family')")
