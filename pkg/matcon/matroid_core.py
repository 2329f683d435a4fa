#
# matcon core functionality
#
# Subsets of the ground set, the abstract independence oracle, and the
# operations derived from it: rank, greedy bases, fundamental circuits,
# axiom verifiers and the exhaustive connectivity deciders used as
# reference answers for small instances.
#
# A subset mask is a plain Python int: bit i set means element e_{i+1} is
# present. Elements are 0-based internally and displayed 1-based.
#

import contextlib
import logging
from abc import ABC, abstractmethod
from itertools import combinations

import numpy as np

from . import conf

_log = logging.getLogger('matcon')

__all__ = ['MatroidOracle', 'ConnectivityVerdict', 'CapExceededError', 'MatroidInvariantError',
           'popcount', 'full_mask', 'mask_from_elements', 'mask_elements', 'element_label', 'format_mask',
           'is_independent', 'rank', 'find_base', 'fundamental_circuit', 'rank_table',
           'enumerate_independent_sets', 'enumerate_circuits', 'verify_separation',
           'brute_force_connected', 'circuit_pairwise_connected',
           'verify_independence_axioms', 'verify_base_axiom_B1', 'verify_circuit_axioms']


class CapExceededError(ValueError):
    """An exhaustive enumeration was requested on a ground set above its configured cap."""
    pass


class MatroidInvariantError(RuntimeError):
    """A property that must hold for every matroid was found violated."""
    pass


def _check_cap(n, cap_name, what):
    cap = getattr(conf, cap_name)
    if n > cap:
        raise CapExceededError("{0} requires n <= {1} (conf.{2}); got n={3}".format(what, cap, cap_name, n))


###########################################################################
#
#    Subset masks
#

def popcount(mask):
    """ Number of elements in a subset mask """
    return mask.bit_count()


def full_mask(n):
    """ Mask of the whole ground set {e1, ..., en} """
    return (1 << n) - 1


def mask_from_elements(elements):
    """ Build a subset mask from 0-based element indices """
    mask = 0
    for element in elements:
        element = int(element)
        if element < 0:
            raise ValueError("Element indices must be non-negative; got {}".format(element))
        mask |= 1 << element
    return mask


def mask_elements(mask):
    """ 0-based indices of the elements of a mask, in ascending order """
    elements = []
    while mask:
        low = mask & -mask
        elements.append(low.bit_length() - 1)
        mask ^= low
    return elements


def element_label(element):
    return "e{}".format(element + 1)


def format_mask(mask):
    """ Display a mask the way the literature writes subsets, e.g. '{e1,e3}' """
    return "{" + ",".join(element_label(x) for x in mask_elements(mask)) + "}"


###########################################################################
#
#    Oracles and verdicts
#

class MatroidOracle(ABC):
    """ Abstract independence oracle of a matroid on the ground set {e1, ..., en}.

    Subclasses implement ``_independent(mask)``; the public
    ``is_independent`` validates the mask first. An oracle is immutable after
    construction and can be shared freely between threads; query accounting
    is added by wrapping it in a `matcon.accounting.CountingOracle`.

    Parameters
    ----------
    n : int
        Cardinality of the ground set.
    """

    family = 'oracle'
    ledger = None
    "QueryLedger receiving one tick per call, if this oracle is metered"

    def __init__(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("Ground set size must be non-negative; got n={}".format(n))
        self.n = n

    @property
    def ground(self):
        """ Mask of the full ground set E """
        return full_mask(self.n)

    def is_independent(self, mask):
        """ Answer the independence oracle: True iff the subset is independent """
        if mask < 0 or mask >> self.n:
            raise ValueError("Subset mask {0:#x} lies outside the ground set of size {1}".format(mask, self.n))
        return self._independent(mask)

    @abstractmethod
    def _independent(self, mask):
        pass

    def phase(self, label):
        """ Context manager grouping the queries made inside it under ``label``.

        Unmetered oracles have nothing to group, so this does nothing.
        """
        return contextlib.nullcontext()

    def bases(self):
        """ Closed-form list of bases, or None when the family has none """
        return None

    def describe(self):
        """ Parameters of this instance, as written to instance documents and bench records """
        return {'family': self.family, 'n': self.n}

    def __repr__(self):
        params = ", ".join("{}={}".format(key, value) for key, value in self.describe().items()
                           if key != 'family')
        return "<{0}({1})>".format(self.__class__.__name__, params)


def is_independent(M, S):
    """ Query the independence oracle of ``M`` on the subset mask ``S`` """
    return M.is_independent(S)


class ConnectivityVerdict(object):
    """ Answer of a connectivity decider.

    Parameters
    ----------
    connected : bool
        The verdict.
    witness : tuple of two int masks, optional
        A separation (E1, E2): disjoint, nonempty, covering E, with
        r(E1) + r(E2) = r(E). Only disconnected verdicts carry one.
    ledger : QueryLedger, optional
        Snapshot of the queries consumed by the run.
    algorithm : str
        Name of the decider that produced the verdict.
    trace : list, optional
        Search events, for deciders that record them.
    """

    def __init__(self, connected, witness=None, ledger=None, algorithm='', trace=None):
        if witness is not None and connected:
            raise ValueError("A connected verdict cannot carry a separation witness")
        self.connected = bool(connected)
        self.witness = witness
        self.ledger = ledger
        self.algorithm = algorithm
        self.trace = trace if trace is not None else []

    def to_dict(self):
        """ JSON-ready form, with 1-based element indices """
        witness = None
        if self.witness is not None:
            witness = [[x + 1 for x in mask_elements(part)] for part in self.witness]
        return {'algorithm': self.algorithm,
                'connected': self.connected,
                'witness': witness,
                'ledger': self.ledger.to_dict() if self.ledger is not None else None}

    def __repr__(self):
        text = "ConnectivityVerdict(connected={}".format(self.connected)
        if self.witness is not None:
            text += ", witness=({}, {})".format(format_mask(self.witness[0]), format_mask(self.witness[1]))
        return text + ")"


def _counted(M):
    from .accounting import ensure_counted
    return ensure_counted(M)


###########################################################################
#
#    Derived operations
#

def rank(M, A):
    """ Rank of the subset ``A``, by a greedy scan in ascending element order.

    Uses exactly |A| oracle queries.
    """
    independent = 0
    for x in mask_elements(A):
        candidate = independent | (1 << x)
        if M.is_independent(candidate):
            independent = candidate
    return popcount(independent)


def find_base(M):
    """ Greedy base: scan e1..en and keep each element whose addition stays independent.

    Uses exactly n oracle queries, grouped in the "find_base" phase.
    """
    base = 0
    with M.phase('find_base'):
        for x in range(M.n):
            candidate = base | (1 << x)
            if M.is_independent(candidate):
                base = candidate
    _log.debug("Greedy base {} of rank {}".format(format_mask(base), popcount(base)))
    return base


def fundamental_circuit(M, B, y):
    """ Fundamental circuit C(y, B) of a non-base element y with respect to the base B.

    C(y, B) = {y} + {x in B : B + y - x is independent}. Uses exactly |B| oracle
    queries. B must be a base of M; this is not checked.
    """
    if not 0 <= y < M.n:
        raise ValueError("Element index {0} outside the ground set of size {1}".format(y, M.n))
    if B >> y & 1:
        raise ValueError("Element {0} already belongs to the base {1}".format(element_label(y), format_mask(B)))
    extended = B | (1 << y)
    circuit = 1 << y
    for x in mask_elements(B):
        if M.is_independent(extended & ~(1 << x)):
            circuit |= 1 << x
    return circuit


def _subset_max(table, n):
    # in place: table[A] <- max over subsets X of A of table[X]
    for i in range(n):
        view = table.reshape(-1, 2, 1 << i)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return table


def rank_table(M):
    """ Rank of every subset of the ground set, indexed by mask.

    Queries the oracle once per subset (2^n queries), then takes the subset
    maximum of |X| over the independent X.
    """
    size = 1 << M.n
    table = np.fromiter((popcount(mask) if M.is_independent(mask) else 0 for mask in range(size)),
                        dtype=np.int16, count=size)
    return _subset_max(table, M.n)


def enumerate_independent_sets(M):
    """ All independent sets of M, in mask order """
    _check_cap(M.n, 'axiom_max_n', 'enumerate_independent_sets')
    with M.phase('enumerate'):
        return [mask for mask in range(1 << M.n) if M.is_independent(mask)]


def enumerate_circuits(M):
    """ All circuits (minimal dependent sets) of M, in mask order """
    _check_cap(M.n, 'axiom_max_n', 'enumerate_circuits')
    with M.phase('enumerate'):
        independent = [M.is_independent(mask) for mask in range(1 << M.n)]
    return [mask for mask, indep in enumerate(independent)
            if not indep and all(independent[mask ^ (1 << x)] for x in mask_elements(mask))]


def verify_separation(M, E1, E2):
    """ True if (E1, E2) is a separation: disjoint nonempty cover of E with r(E1)+r(E2) = r(E).

    The rank evaluations are grouped in the "verify" phase.
    """
    if E1 == 0 or E2 == 0 or E1 & E2 or (E1 | E2) != M.ground:
        return False
    with M.phase('verify'):
        total = rank(M, E1) + rank(M, E2)
        whole = rank(M, M.ground)
    _log.debug("Separation check {} | {}: {} vs r(E)={}".format(format_mask(E1), format_mask(E2),
                                                                total, whole))
    return total == whole


###########################################################################
#
#    Exhaustive connectivity deciders
#

def brute_force_connected(M):
    """ Decide connectivity straight from the definition.

    M is connected iff r(A) + r(E-A) > r(E) for every nonempty proper subset A.
    When it is not, the witness is the first violating (A, E-A) in mask order.
    Ground sets with n <= 1 are connected, since there is no such A.

    Parameters
    ----------
    M : MatroidOracle
        The matroid, n <= conf.brute_force_max_n.

    Returns
    -------
    verdict : ConnectivityVerdict
    """
    _check_cap(M.n, 'brute_force_max_n', 'brute_force_connected')
    counted = _counted(M)
    n = M.n
    if n <= 1:
        return ConnectivityVerdict(True, ledger=counted.ledger.snapshot(), algorithm='brute')

    with counted.phase('brute_force'):
        table = rank_table(counted)
    full = full_mask(n)
    masks = np.arange(1, full, dtype=np.int64)
    sums = table[masks] + table[full ^ masks]
    violating = np.flatnonzero(sums <= table[full])

    witness = None
    if len(violating):
        first = int(masks[violating[0]])
        witness = (first, full ^ first)
        _log.debug("brute force: {} separates".format(format_mask(first)))
    return ConnectivityVerdict(witness is None, witness, counted.ledger.snapshot(), algorithm='brute')


def circuit_pairwise_connected(M):
    """ Decide connectivity by the circuit characterization:
    every pair of distinct elements lies on a common circuit.

    Independent of `brute_force_connected`, so the two serve as mutual checks.
    """
    _check_cap(M.n, 'axiom_max_n', 'circuit_pairwise_connected')
    covered = set()
    for circuit in enumerate_circuits(M):
        covered.update(combinations(mask_elements(circuit), 2))
    return all(pair in covered for pair in combinations(range(M.n), 2))


###########################################################################
#
#    Axiom verifiers
#

def verify_independence_axioms(family, n):
    """ Check that a collection of subsets is the family of independent sets of a matroid.

    Checks I0 (the empty set is independent), I1 (downward closure) and
    I2 (augmentation), exhaustively.

    Parameters
    ----------
    family : iterable of int
        Subset masks.
    n : int
        Ground set size, at most conf.axiom_max_n.
    """
    _check_cap(n, 'axiom_max_n', 'verify_independence_axioms')
    sets = set(family)
    if any(mask < 0 or mask >> n for mask in sets):
        raise ValueError("Family contains subsets outside the ground set of size {}".format(n))

    if 0 not in sets:
        return False
    for mask in sets:
        if any(mask ^ (1 << x) not in sets for x in mask_elements(mask)):
            return False

    # I2 fails for A iff some member of size > |A| avoids every element that
    # extends A, i.e. lies inside the complement of ext(A).
    full = full_mask(n)
    largest = np.zeros(1 << n, dtype=np.int16)
    for mask in sets:
        largest[mask] = popcount(mask)
    _subset_max(largest, n)
    for mask in sets:
        extensions = 0
        for x in mask_elements(full & ~mask):
            if mask | (1 << x) in sets:
                extensions |= 1 << x
        if largest[full & ~extensions] > popcount(mask):
            return False
    return True


def verify_base_axiom_B1(bases):
    """ Check the base exchange axiom (B1) over all ordered pairs of bases:
    for B1, B2 and x in B1 - B2 there is y in B2 - B1 with B1 - x + y a base.
    """
    bases = set(bases)
    if not bases:
        raise ValueError("The base exchange axiom needs a nonempty collection of bases")
    for first in bases:
        for second in bases:
            for x in mask_elements(first & ~second):
                reduced = first & ~(1 << x)
                if not any(reduced | (1 << y) in bases for y in mask_elements(second & ~first)):
                    return False
    return True


def verify_circuit_axioms(circuits):
    """ Check the circuit axioms.

    (C1) no member properly contains another, and (C2) for distinct C1, C2
    and z in both, some member lies inside (C1 | C2) - z. The empty set is
    never a circuit.
    """
    circuits = set(circuits)
    if not circuits:
        raise ValueError("The circuit axioms need a nonempty collection of circuits")
    if 0 in circuits:
        return False
    for first in circuits:
        for second in circuits:
            if first == second:
                continue
            if first & ~second == 0:
                return False
            union = first | second
            for z in mask_elements(first & second):
                allowed = union & ~(1 << z)
                if not any(third & ~allowed == 0 for third in circuits):
                    return False
    return True
