#
# Lower-bound experiments
#
# The hard input distribution over a minimal matroid and its base-deleted
# neighbours, the probe strategy that attains the classical bound, the
# 2^n-bit encoding of a matroid and the adversary parameters of the
# relation between the encodings.
#

import enum
import functools
import logging
import math
import multiprocessing
from collections import namedtuple

import numpy as np
import scipy.stats

from . import conf
from .accounting import CountingOracle
from .families import (base_count, base_deleted_system, canonical_bases, matroid_removals, minimal_matroid,
                       removal_keeps_matroid, removed_base_matroid)
from .matroid_core import MatroidInvariantError, _check_cap

_log = logging.getLogger('matcon')

__all__ = ['ChiString', 'Label', 'Outcome', 'MuSample', 'DistinguisherResult', 'AdversaryParameters',
           'chi_encode', 'hamming', 'mu_sample', 'probe_distinguisher', 'predicted_success',
           'minimum_probes', 'estimate_distinguisher', 'adversary_parameters', 'REMOVALS']


class Label(enum.Enum):
    connected = 'connected'
    disconnected = 'disconnected'


class Outcome(enum.Enum):
    correct = 'correct'
    incorrect = 'incorrect'


MuSample = namedtuple('MuSample', ['instance', 'label', 'removed_index'])
DistinguisherResult = namedtuple('DistinguisherResult',
                                 ['empirical', 'predicted', 'successes', 'trials', 'interval'])
AdversaryParameters = namedtuple('AdversaryParameters', ['m', 'm_prime', 'l', 'l_prime', 'bound'])

_TRIALS_PER_CHUNK = 10000


###########################################################################
#
#    Encoding
#

class ChiString(object):
    """ The 2^n-bit string of a matroid: bit m is 1 iff the subset with mask m is independent.

    Parameters
    ----------
    n : int
        Ground set size.
    bits : array_like of bool, length 2^n
    """

    def __init__(self, n, bits):
        self.n = int(n)
        self.bits = np.asarray(bits, dtype=bool)
        if self.bits.shape != (1 << self.n,):
            raise ValueError("A chi string over n={0} elements needs {1} bits; got shape {2}".format(
                self.n, 1 << self.n, self.bits.shape))

    def __len__(self):
        return len(self.bits)

    def __getitem__(self, mask):
        return bool(self.bits[mask])

    def __eq__(self, other):
        return isinstance(other, ChiString) and self.n == other.n and np.array_equal(self.bits, other.bits)

    def __str__(self):
        return "".join('1' if bit else '0' for bit in self.bits)

    def __repr__(self):
        text = str(self)
        if len(text) > 32:
            text = text[:32] + "..."
        return "ChiString(n={0}, bits={1})".format(self.n, text)

    def differing_positions(self, other):
        """ Masks of the subsets on which the two strings disagree """
        if self.n != other.n:
            raise ValueError("Chi strings over different ground sets ({0} vs {1})".format(self.n, other.n))
        return [int(m) for m in np.flatnonzero(self.bits != other.bits)]

    def is_downward_closed(self):
        """ True if every subset of an independent set is marked independent """
        masks = np.arange(len(self.bits))
        for i in range(self.n):
            members = masks[(masks >> i) & 1 == 1]
            if np.any(self.bits[members] & ~self.bits[members ^ (1 << i)]):
                return False
        return True


def hamming(chi_a, chi_b):
    """ Number of bit positions in which two chi strings differ """
    return len(chi_a.differing_positions(chi_b))


def chi_encode(M):
    """ Encode M as the string of its independence answers over all 2^n subsets.

    Uses 2^n oracle queries in the "chi_encode" phase. Capped at
    conf.chi_max_n. An encoding that is not downward closed can only come
    from a broken oracle and raises MatroidInvariantError.
    """
    _check_cap(M.n, 'chi_max_n', 'chi_encode')
    with M.phase('chi_encode'):
        bits = np.fromiter((M.is_independent(mask) for mask in range(1 << M.n)), dtype=bool, count=1 << M.n)
    chi = ChiString(M.n, bits)
    if not bits[0] or not chi.is_downward_closed():
        raise MatroidInvariantError("Independence answers of {!r} are not downward closed".format(M))
    return chi


###########################################################################
#
#    The hard distribution and the probe strategy
#

REMOVALS = ('all', 'matroid')


@functools.lru_cache(maxsize=None)
def _minimal_instance(n, r):
    return minimal_matroid(n, r)


@functools.lru_cache(maxsize=4096)
def _removed_instance(n, r, index):
    base = canonical_bases(n, r)[index]
    if removal_keeps_matroid(n, r, base):
        return removed_base_matroid(n, r, base)
    return base_deleted_system(n, r, base)


def _removal_support(n, r, removals):
    if removals == 'all':
        return range(base_count(n, r))
    if removals == 'matroid':
        return matroid_removals(n, r)
    raise ValueError("Removal set must be one of {0}; got {1!r}".format(", ".join(REMOVALS), removals))


def mu_sample(n, r, rng, removals='all'):
    """ Draw from the hard distribution over rank-r instances on n elements.

    A base index i is drawn uniformly, then a fair coin picks either the
    minimal matroid or its base list with base i deleted.

    With ``removals='all'`` i ranges over all N = r(n-r)+1 canonical bases.
    Only the removals accepted by `removal_keeps_matroid` give a matroid
    (a `RemovedBaseMatroid`, which is disconnected); for 2 <= r <= n-2 every
    other index gives a `BaseDeletedSystem` that is not a matroid at all.
    The label then records the side of the coin, not a connectivity verdict.
    With ``removals='matroid'`` i ranges over the matroid removals only,
    which for 2 <= r <= n-2 is E0 alone.

    Returns
    -------
    sample : MuSample
        removed_index is None for connected samples.
    """
    if not 0 < r < n:
        raise ValueError("mu_sample needs 0 < r < n; got n={0}, r={1}".format(n, r))
    support = _removal_support(n, r, removals)
    index = support[int(rng.integers(len(support)))]
    if rng.random() < 0.5:
        return MuSample(_minimal_instance(n, r), Label.connected, None)
    return MuSample(_removed_instance(n, r, index), Label.disconnected, index)


def predicted_success(N, T, guess='connected'):
    """ Success probability of `probe_distinguisher` with T probes out of N bases """
    if guess == 'coin':
        return 0.5 + T / (4. * N)
    return 0.5 + T / (2. * N)


def _predicted_over(n, r, T, guess, removals):
    # only the deleted bases among the first T canonical ones can be hit
    support = _removal_support(n, r, removals)
    return predicted_success(len(support), sum(1 for i in support if i < T), guess)


def minimum_probes(n, r):
    """ Fewest probes with predicted success at least 2/3, ceil(N/3) """
    return -(-base_count(n, r) // 3)


def probe_distinguisher(sample, T, rng=None, guess='connected', ledger=None):
    """ Tell a sample's label from T independence probes.

    The first T canonical bases of the parent minimal matroid are queried. If
    one of them is dependent the removed base was hit and the answer is
    "disconnected". Otherwise the answer is "connected", which is right for
    every connected sample and for the disconnected ones whose removed base
    was not probed, for a success probability of 1/2 + T/(2N).

    Parameters
    ----------
    sample : MuSample
    T : int
        Number of probes, 0 <= T <= N.
    rng : numpy.random.Generator, optional
        Only needed with ``guess='coin'``.
    guess : {'connected', 'coin'}
        Answer when every probe is independent. 'coin' flips a fair coin
        instead, for a success probability of 1/2 + T/(4N).
    ledger : QueryLedger, optional
        Ledger for the probes, which are grouped in the "probe" phase.

    Returns
    -------
    outcome : Outcome
    """
    instance = sample.instance
    n, r = instance.n, instance.r
    bases = canonical_bases(n, r)
    if not 0 <= T <= len(bases):
        raise ValueError("Probe count must satisfy 0 <= T <= N={0}; got T={1}".format(len(bases), T))
    if guess not in ('connected', 'coin'):
        raise ValueError("Probe guess must be 'connected' or 'coin'; got {!r}".format(guess))
    if ledger is not None:
        instance = CountingOracle(instance, ledger)

    answer = None
    with instance.phase('probe'):
        for base in bases[:T]:
            if not instance.is_independent(base):
                answer = Label.disconnected
                break
    if answer is None:
        if guess == 'coin':
            if rng is None:
                raise ValueError("A coin guess needs a random generator")
            answer = Label.connected if rng.random() < 0.5 else Label.disconnected
        else:
            answer = Label.connected
    return Outcome.correct if answer == sample.label else Outcome.incorrect


def _distinguisher_chunk(args):
    """ Run one chunk of distinguisher trials; picklable for the worker pool """
    n, r, T, trials, seed_sequence, guess, removals = args
    rng = np.random.default_rng(seed_sequence)
    successes = 0
    for _ in range(trials):
        if probe_distinguisher(mu_sample(n, r, rng, removals), T, rng=rng, guess=guess) is Outcome.correct:
            successes += 1
    return successes


def estimate_distinguisher(n, r, T, trials, seed=0, guess='connected', removals='all'):
    """ Monte Carlo estimate of the probe distinguisher's success probability.

    Trials are split in fixed-size chunks, each with its own random stream
    spawned from ``seed``, so the estimate does not depend on whether the
    chunks run serially or in a worker pool (conf.use_multiprocessing).
    ``removals`` selects the deleted bases as in `mu_sample`; the
    prediction counts only those among the T probed bases.

    Returns
    -------
    result : DistinguisherResult
        With a 95% Clopper-Pearson interval on the success probability.
    """
    N = base_count(n, r)
    if not 0 <= T <= N:
        raise ValueError("Probe count must satisfy 0 <= T <= N={0}; got T={1}".format(N, T))
    if trials < 1:
        raise ValueError("Distinguisher estimates need at least one trial; got {}".format(trials))
    _removal_support(n, r, removals)

    sizes = [_TRIALS_PER_CHUNK] * (trials // _TRIALS_PER_CHUNK)
    if trials % _TRIALS_PER_CHUNK:
        sizes.append(trials % _TRIALS_PER_CHUNK)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    worker_arguments = [(n, r, T, size, stream, guess, removals) for size, stream in zip(sizes, streams)]

    if conf.use_multiprocessing and len(worker_arguments) > 1:
        nproc = min(conf.n_processes if conf.n_processes > 1 else multiprocessing.cpu_count(), len(sizes))
        _log.info("Running {0} distinguisher trials using {1} processes".format(trials, nproc))
        ctx = multiprocessing.get_context('forkserver')
        with ctx.Pool(int(nproc)) as pool:
            counts = pool.map(_distinguisher_chunk, worker_arguments)
    else:
        counts = [_distinguisher_chunk(args) for args in worker_arguments]

    successes = int(sum(counts))
    interval = scipy.stats.binomtest(successes, trials).proportion_ci(confidence_level=0.95)
    result = DistinguisherResult(successes / trials, _predicted_over(n, r, T, guess, removals), successes, trials,
                                 (float(interval.low), float(interval.high)))
    _log.info("Distinguisher n={0}, r={1}, T={2}: {3:.4f} empirical vs {4:.4f} predicted".format(
        n, r, T, result.empirical, result.predicted))
    return result


###########################################################################
#
#    Adversary parameters
#

def adversary_parameters(n, r, removals='all'):
    """ Adversary quantities for the relation between the minimal matroid and its neighbours.

    X holds the encoding of the minimal matroid, Y the encodings of its
    base-deleted neighbours (every base, or only the matroid removals with
    ``removals='matroid'``, see `mu_sample`), and every pair of X x Y is
    related. m (m') is the fewest related partners of an x (a y), l (l')
    the largest number of partners of an x (a y) that differ from it at one
    fixed bit position. The resulting quantum query lower bound is
    sqrt(m m' / (l l')). With ``removals='all'`` it bounds telling the
    minimal matroid from a deleted base list, most of which are not matroids.

    Capped at conf.adversary_max_n.

    Returns
    -------
    params : AdversaryParameters
    """
    _check_cap(n, 'adversary_max_n', 'adversary_parameters')
    X = np.array([chi_encode(_minimal_instance(n, r)).bits])
    Y = np.array([chi_encode(_removed_instance(n, r, i)).bits for i in _removal_support(n, r, removals)])
    relation = np.ones((len(X), len(Y)), dtype=bool)

    m = int(relation.sum(axis=1).min())
    m_prime = int(relation.sum(axis=0).min())
    # differs[x, y, i]: related pair (x, y) disagrees at bit i
    differs = (X[:, None, :] != Y[None, :, :]) & relation[:, :, None]
    l = int(differs.sum(axis=1).max())
    l_prime = int(differs.sum(axis=0).max())
    if l == 0 or l_prime == 0:
        raise MatroidInvariantError("Related encodings for n={0}, r={1} never differ".format(n, r))

    bound = math.sqrt(m * m_prime / (l * l_prime))
    _log.debug("adversary ({0}, {1}): m={2}, m'={3}, l={4}, l'={5}, bound={6:.4f}".format(
        n, r, m, m_prime, l, l_prime, bound))
    return AdversaryParameters(m, m_prime, l, l_prime, bound)
