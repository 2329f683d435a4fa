#
# Query accounting
#
# A CountingOracle wraps any MatroidOracle and ticks a QueryLedger on every
# independence query. Modelled quantum query costs are charged to the same
# ledger, so one record holds everything a run consumed, split by phase.
#

import contextlib
import copy
import logging
import numbers

from .matroid_core import MatroidOracle, MatroidInvariantError

_log = logging.getLogger('matcon')

__all__ = ['QueryLedger', 'CountingOracle', 'wrap', 'ensure_counted', 'charge_quantum', 'CANONICAL_PHASES']

CANONICAL_PHASES = ('find_base', 'matrix_build', 'grover_success', 'grover_fail',
                    'verify', 'brute_force', 'chi_encode', 'probe', 'enumerate')
"Phase labels used by matcon itself; CSV and JSON consumers can aggregate on these"


class QueryLedger(object):
    """ Per-run record of classical oracle calls and charged quantum query cost.

    Counts only ever increase. Every tick or charge lands in the innermost
    active phase (see `phase`), or in 'unlabelled' when none is active, so
    the totals always equal the sum over phases.

    A ledger belongs to one run; it must not be shared between threads.
    """

    UNLABELLED = 'unlabelled'

    def __init__(self):
        self.classical = 0
        self.quantum_charged = 0
        self._phases = {}
        self._active = []

    def __repr__(self):
        return "QueryLedger(classical={}, quantum_charged={})".format(self.classical, self.quantum_charged)

    @contextlib.contextmanager
    def phase(self, label):
        """ Group the ticks and charges made inside this context under ``label`` """
        self._active.append(str(label))
        try:
            yield self
        finally:
            self._active.pop()

    @property
    def current_phase(self):
        return self._active[-1] if self._active else self.UNLABELLED

    def _entry(self, label):
        return self._phases.setdefault(label, [0, 0])

    def tick(self):
        """ Record one classical independence query """
        self.classical += 1
        self._entry(self.current_phase)[0] += 1

    def charge(self, amount, label=None):
        """ Add ``amount`` modelled quantum queries, under ``label`` or the current phase """
        if isinstance(amount, bool) or not isinstance(amount, numbers.Integral):
            raise TypeError("Quantum charges must be integers; got {!r}".format(amount))
        if amount < 0:
            raise ValueError("Quantum charges must be non-negative; got {}".format(amount))
        if amount == 0:
            return
        self.quantum_charged += int(amount)
        self._entry(label if label is not None else self.current_phase)[1] += int(amount)

    @property
    def phases(self):
        """ Ordered list of (label, classical, quantum_charged), in order of first use """
        return [(label, counts[0], counts[1]) for label, counts in self._phases.items()]

    def phase_totals(self):
        """ Dict mapping label -> (classical, quantum_charged) """
        return {label: (counts[0], counts[1]) for label, counts in self._phases.items()}

    def classical_in(self, *labels):
        """ Classical queries made in the named phases """
        return sum(self._phases.get(label, (0, 0))[0] for label in labels)

    def quantum_in(self, *labels):
        """ Quantum cost charged in the named phases """
        return sum(self._phases.get(label, (0, 0))[1] for label in labels)

    def check_consistency(self):
        """ Raise MatroidInvariantError unless the totals equal the sums over phases """
        classical = sum(counts[0] for counts in self._phases.values())
        quantum = sum(counts[1] for counts in self._phases.values())
        if (classical, quantum) != (self.classical, self.quantum_charged):
            raise MatroidInvariantError("Ledger totals ({}, {}) differ from the phase sums ({}, {})".format(
                self.classical, self.quantum_charged, classical, quantum))

    def snapshot(self):
        """ Independent copy of the current counts, detached from any active phase """
        duplicate = copy.deepcopy(self)
        duplicate._active = []
        return duplicate

    def to_dict(self):
        return {'classical': self.classical,
                'quantum_charged': self.quantum_charged,
                'phases': [{'label': label, 'classical': classical, 'quantum_charged': quantum}
                           for label, classical, quantum in self.phases]}


class CountingOracle(MatroidOracle):
    """ Independence oracle that meters every query of the oracle it wraps.

    Answers are exactly those of ``inner``; each call adds one to
    ``ledger.classical``. Nothing is cached, since a cache would falsify
    the counts.

    Parameters
    ----------
    inner : MatroidOracle
        The oracle being metered.
    ledger : QueryLedger, optional
        Ledger to tick. A fresh one is created by default.
    """

    def __init__(self, inner, ledger=None):
        super(CountingOracle, self).__init__(inner.n)
        self.inner = inner
        self.family = inner.family
        self.ledger = ledger if ledger is not None else QueryLedger()

    def is_independent(self, mask):
        answer = self.inner.is_independent(mask)
        self.ledger.tick()
        return answer

    def _independent(self, mask):
        return self.inner._independent(mask)

    def phase(self, label):
        return self.ledger.phase(label)

    def bases(self):
        return self.inner.bases()

    def describe(self):
        return self.inner.describe()

    def __repr__(self):
        return "<CountingOracle of {!r}, {!r}>".format(self.inner, self.ledger)


def wrap(M):
    """ Meter the oracle ``M`` with a fresh ledger at zero """
    return CountingOracle(M)


def ensure_counted(M):
    """ ``M`` itself if it is already metered, else a fresh `wrap` of it """
    return M if isinstance(M, CountingOracle) else wrap(M)


def charge_quantum(L, amount, label):
    """ Charge ``amount`` modelled quantum queries to ledger ``L`` under phase ``label`` """
    L.charge(amount, label)
    if amount:
        _log.debug("charged {} quantum queries to {}".format(amount, label))
