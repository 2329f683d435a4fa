# Licensed under a 3-clause BSD style license - see LICENSE.md

"""MATroid CONnectivity laboratory (matcon)

matcon is a Python package for studying the query complexity of deciding
whether a matroid is connected. Matroids are accessed only through an
independence oracle, and every oracle call can be metered.

It provides a small oracle-based matroid library, the classical
partial-representation decider that uses n + r(n-r) queries, a quantum
depth-first search decider simulated at the level of Grover query costs,
generators for the hard instances behind the lower bounds (minimal matroids
and their base-deleted neighbours), and a benchmark harness that measures
query-count scaling and runs the lower-bound experiments.
"""

# ----------------------------------------------------------------------------
# set __version__ and add the test() helper function
from ._astropy_init import *
# ----------------------------------------------------------------------------

import sys

__minimum_python_version__ = "3.10"


class UnsupportedPythonError(Exception):
    pass


if sys.version_info < tuple((int(val) for val in __minimum_python_version__.split('.'))):
    raise UnsupportedPythonError("matcon does not support Python < {}".format(__minimum_python_version__))


from astropy import config as _config


class Conf(_config.ConfigNamespace):
    """
    Configuration parameters for `matcon`.
    """

    brute_force_max_n = _config.ConfigItem(20, 'Largest ground set for which brute_force_connected '
                                               'enumerates all 2^n subsets.')
    axiom_max_n = _config.ConfigItem(12, 'Largest ground set for the axiom suites, circuit '
                                         'enumeration and circuit_pairwise_connected.')
    enumeration_max_n = _config.ConfigItem(16, 'Largest ground set for generic base enumeration. '
                                               'Families with a closed form are not capped.')
    chi_max_n = _config.ConfigItem(14, 'Largest ground set that chi_encode expands into a 2^n bit string.')
    adversary_max_n = _config.ConfigItem(10, 'Largest ground set for adversary_parameters.')

    grover_c_success = _config.ConfigItem(1, 'Scale of the cost charged for a successful Grover search, '
                                             'ceil(c * sqrt(N/k)).')
    grover_c_fail = _config.ConfigItem(1, 'Scale of the cost charged for a Grover emptiness check, '
                                          'ceil(c * sqrt(N)).')
    grover_repetitions = _config.ConfigItem(1, 'Error amplification factor applied to emptiness checks.')
    grover_mode = _config.ConfigItem(['idealized', 'sampled'],
                                     'idealized searches never err; sampled searches wrongly report '
                                     '"empty" with probability failure_prob**repetitions.')
    grover_failure_prob = _config.ConfigItem(1. / 3, 'Failure probability of a single unamplified search '
                                                     'in sampled mode.')
    grover_search_space = _config.ConfigItem(['side', 'undiscovered'],
                                             'Search space of a neighbour search: the whole opposite side '
                                             'of the bipartition, or only its undiscovered vertices.')

    verify_witness = _config.ConfigItem(True, 'Re-check the separation returned by the classical decider '
                                              'with the rank identity (ledgered in the "verify" phase).')

    use_multiprocessing = _config.ConfigItem(False, 'Should bench cells run in parallel using the Python '
                                                    'multiprocessing framework (if True) or serially in a '
                                                    'single process (if False; slower, but a bit more robust).')
    n_processes = _config.ConfigItem(4, 'Maximum number of worker processes to spawn, if multiprocessing '
                                        'is enabled. Set to 0 for autoselect.')

    default_logging_level = _config.ConfigItem('INFO', 'Logging verbosity: one of {DEBUG, INFO, WARN, '
                                                       'ERROR, or CRITICAL}')
    default_seed = _config.ConfigItem(0, 'Seed used by the command line tools when --seed is not given.')


conf = Conf()

from . import matroid_core
from . import accounting
from . import families
from . import classical
from . import quantum
from . import lowerbound
from . import bench

from .matroid_core import *
from .accounting import *
from .families import *
from .classical import *
from .quantum import *
from .lowerbound import *
from .bench import *

__all__ = (['conf'] + matroid_core.__all__ + accounting.__all__ + families.__all__ +
           classical.__all__ + quantum.__all__ + lowerbound.__all__ + bench.__all__)
