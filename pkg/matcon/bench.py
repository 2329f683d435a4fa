#
# Benchmark harness
#
# Instance documents, the bench runner that measures query counts over a
# grid of instances, its CSV/JSON output, the scaling exponent fit and the
# log-log plot of the results.
#

import contextlib
import json
import logging
import multiprocessing
import os
import time
from collections import namedtuple

import numpy as np
import scipy.stats
from astropy.io import ascii
from astropy.table import Table

from . import conf
from .classical import cunningham_connected
from .families import (ExplicitBasesMatroid, GraphicMatroid, MinimalMatroid, RemovedBaseMatroid, UniformMatroid,
                       canonical_bases, cycle_graph_edges)
from .matroid_core import brute_force_connected, mask_from_elements
from .quantum import GroverCostModel, quantum_dfs_connected

_log = logging.getLogger('matcon')

__all__ = ['InstanceFormatError', 'BenchRecord', 'FAMILIES', 'ALGORITHMS', 'CSV_COLUMNS', 'CSV_VERSION_LINE',
           'instance_document', 'format_instance', 'parse_instance', 'resolve_rank', 'make_bench_instance',
           'run_algorithm', 'run_bench', 'records_to_table', 'write_bench_csv', 'read_bench_csv',
           'records_to_json', 'fit_scaling_exponent', 'fit_bench_exponents', 'display_scaling',
           'plot_scaling_svg']

FAMILIES = ('minimal', 'removed_base', 'uniform', 'graphic', 'explicit_bases')
ALGORITHMS = ('brute', 'classical', 'quantum')

# conf items a bench cell reads; pooled cells run with the caller's values
_CELL_SETTINGS = ('brute_force_max_n', 'axiom_max_n', 'enumeration_max_n', 'verify_witness')

CSV_VERSION_LINE = '# matcon bench csv v1'
CSV_COLUMNS = ('family', 'n', 'r', 'algorithm', 'connected', 'classical_queries', 'quantum_charged', 'seed',
               'elapsed_ms')
_CSV_DTYPES = ('U32', 'i8', 'i8', 'U16', 'bool', 'i8', 'i8', 'i8', 'f8')

BenchRecord = namedtuple('BenchRecord', CSV_COLUMNS)
BenchRecord.__doc__ = "One bench row: a single (instance, algorithm, seed) run and the counts from its ledger"


class InstanceFormatError(ValueError):
    """ An instance document could not be parsed or describes no valid matroid.

    Parameters
    ----------
    message : str
    line, column : int, optional
        1-based position in the document, when known.
    field : str, optional
        Name of the offending field.
    """

    def __init__(self, message, line=None, column=None, field=None):
        self.line = line
        self.column = column
        self.field = field
        location = []
        if field is not None:
            location.append("field '{}'".format(field))
        if line is not None:
            location.append("line {0}, column {1}".format(line, column))
        if location:
            message = "{0} ({1})".format(message, ", ".join(location))
        super(InstanceFormatError, self).__init__(message)


###########################################################################
#
#    Instance documents
#

def instance_document(M):
    """ JSON-ready description of an instance, with 1-based elements and vertices """
    doc = dict(M.describe())
    if doc['family'] not in FAMILIES:
        raise ValueError("No instance document format for family {!r}".format(doc['family']))
    return doc


def format_instance(M):
    """ Instance document text of M """
    return json.dumps(instance_document(M), indent=None)


def _locate(text, field):
    # 1-based line and column of the first occurrence of the key, if any
    offset = text.find('"{}"'.format(field))
    if offset < 0:
        return None, None
    line = text.count('\n', 0, offset) + 1
    return line, offset - (text.rfind('\n', 0, offset) + 1) + 1


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def parse_instance(source):
    """ Build the oracle described by an instance document.

    Documents are JSON objects with a ``family`` key and the family's
    parameters::

        {"family": "minimal", "n": 8, "r": 4}
        {"family": "removed_base", "n": 4, "r": 2, "removed": [1, 2]}
        {"family": "uniform", "n": 5, "r": 2}
        {"family": "graphic", "vertices": 3, "edges": [[1, 2], [2, 3], [3, 1]]}
        {"family": "explicit_bases", "n": 3, "bases": [[1, 2], [1, 3]]}

    Elements and vertices are numbered from 1.

    Parameters
    ----------
    source : str or path-like
        Inline document text (starting with '{'), or the path of a file
        holding one.

    Returns
    -------
    M : MatroidOracle

    Raises
    ------
    InstanceFormatError
        For malformed text, missing or mistyped fields, and parameters that
        describe no matroid of the family.
    """
    if isinstance(source, os.PathLike) or not str(source).lstrip().startswith('{'):
        with open(source) as fh:
            text = fh.read()
    else:
        text = str(source)

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise InstanceFormatError("Malformed instance document: {}".format(err.msg), err.lineno, err.colno)
    if not isinstance(doc, dict):
        raise InstanceFormatError("Instance document must be a JSON object", 1, 1)

    def fail(message, field):
        line, column = _locate(text, field)
        raise InstanceFormatError(message, line, column, field)

    def get_int(field, minimum=0):
        if field not in doc:
            fail("Missing required field", field)
        value = doc[field]
        if not _is_int(value) or value < minimum:
            fail("Expected an integer >= {0}, got {1!r}".format(minimum, value), field)
        return value

    def get_elements(values, field, limit):
        if not isinstance(values, list) or not all(_is_int(v) for v in values):
            fail("Expected a list of integers, got {!r}".format(values), field)
        if any(not 1 <= v <= limit for v in values):
            fail("Indices must lie in 1..{0}; got {1}".format(limit, values), field)
        return [v - 1 for v in values]

    family = doc.get('family')
    if family is None:
        fail("Missing required field", 'family')
    if family not in FAMILIES:
        fail("Unknown family {0!r}; expected one of {1}".format(family, ", ".join(FAMILIES)), 'family')

    try:
        if family == 'graphic':
            vertices = get_int('vertices', 1)
            edges = doc.get('edges')
            if not isinstance(edges, list):
                fail("Expected a list of [u, v] vertex pairs", 'edges')
            pairs = []
            for edge in edges:
                if not isinstance(edge, list) or len(edge) != 2:
                    fail("Edges must be [u, v] pairs; got {!r}".format(edge), 'edges')
                pairs.append(tuple(get_elements(edge, 'edges', vertices)))
            M = GraphicMatroid(vertices, pairs)
            if 'n' in doc and doc['n'] != M.n:
                fail("Ground set size {0} does not match the {1} edges".format(doc['n'], M.n), 'n')
            return M

        n = get_int('n', 1)
        if family == 'explicit_bases':
            bases = doc.get('bases')
            if not isinstance(bases, list) or not bases:
                fail("Expected a nonempty list of bases", 'bases')
            masks = [mask_from_elements(get_elements(base, 'bases', n)) for base in bases]
            try:
                return ExplicitBasesMatroid(n, masks)
            except ValueError as err:
                fail(str(err), 'bases')

        r = get_int('r', 0)
        if family == 'minimal':
            return MinimalMatroid(n, r)
        if family == 'uniform':
            return UniformMatroid(r, n)
        removed = doc.get('removed')
        if removed is None:
            fail("Missing required field", 'removed')
        try:
            return RemovedBaseMatroid(n, r, mask_from_elements(get_elements(removed, 'removed', n)))
        except ValueError as err:
            if isinstance(err, InstanceFormatError):
                raise
            fail(str(err), 'removed')
    except InstanceFormatError:
        raise
    except ValueError as err:
        line, column = _locate(text, 'r')
        raise InstanceFormatError(str(err), line, column, 'r')


###########################################################################
#
#    Bench runner
#

def resolve_rank(rule, n):
    """ Rank for a ground set of size n: an integer, or the rule 'half' (n // 2) or 'third' (n // 3) """
    if rule == 'half':
        return n // 2
    if rule == 'third':
        return n // 3
    try:
        return int(rule)
    except (TypeError, ValueError):
        raise ValueError("Rank rule must be an integer, 'half' or 'third'; got {!r}".format(rule))


def make_bench_instance(family, n, r):
    """ The bench instance of a family at size n and rank r.

    removed_base removes E0 = {e1..er}; graphic is the cycle on n vertices
    (rank n - 1 whatever r says); explicit_bases lists the minimal matroid's
    bases explicitly.
    """
    if family == 'minimal':
        return MinimalMatroid(n, r)
    if family == 'removed_base':
        return RemovedBaseMatroid(n, r, canonical_bases(n, r)[0])
    if family == 'uniform':
        return UniformMatroid(r, n)
    if family == 'graphic':
        return GraphicMatroid(n, cycle_graph_edges(n))
    if family == 'explicit_bases':
        return ExplicitBasesMatroid(n, canonical_bases(n, r))
    raise ValueError("Unknown family {0!r}; expected one of {1}".format(family, ", ".join(FAMILIES)))


def run_algorithm(M, algorithm, model=None, rng=None):
    """ Run one connectivity decider on M and return its verdict """
    if algorithm == 'brute':
        return brute_force_connected(M)
    if algorithm == 'classical':
        return cunningham_connected(M)
    if algorithm == 'quantum':
        return quantum_dfs_connected(M, model, rng)
    raise ValueError("Unknown algorithm {0!r}; expected one of {1}".format(algorithm, ", ".join(ALGORITHMS)))


def _run_cell(args):
    """ Run a single bench cell.

    Top level so that it can be pickled to worker processes. Workers start
    with a fresh configuration, so the cost model travels as a dict and the
    settings in _CELL_SETTINGS are reapplied with conf.set_temp.
    """
    family, n, r, algorithm, seed, model_params, settings, timing = args
    with contextlib.ExitStack() as stack:
        for name, value in settings.items():
            stack.enter_context(conf.set_temp(name, value))
        M = make_bench_instance(family, n, r)
        model = GroverCostModel(**model_params)
        rng = np.random.default_rng(seed)
        t_start = time.perf_counter()
        verdict = run_algorithm(M, algorithm, model, rng)
        elapsed = (time.perf_counter() - t_start) * 1000. if timing else 0.
    ledger = verdict.ledger
    return BenchRecord(family, n, M.describe().get('r', r), algorithm, verdict.connected, ledger.classical,
                       ledger.quantum_charged, seed, round(elapsed, 3))


def run_bench(family, n_grid, r_rule, algorithms, seeds, model=None, timing=True):
    """ Run every (n, algorithm, seed) cell of a benchmark grid.

    Parameters
    ----------
    family : str
        One of FAMILIES.
    n_grid : iterable of int
        Ground set sizes.
    r_rule : int or {'half', 'third'}
        Rank rule, see `resolve_rank`.
    algorithms : iterable of str
        Deciders to run, from ALGORITHMS.
    seeds : iterable of int
        One cell per seed; the seed drives the quantum decider's generator.
    model : GroverCostModel, optional
        Cost model of the quantum decider.
    timing : bool
        Record wall-clock time per cell; when False elapsed_ms is 0 so the
        output is reproducible byte for byte.

    Returns
    -------
    records : list of BenchRecord
        Ordered by n, then algorithm, then seed, in the order given,
        whether or not the cells ran in parallel.
    """
    if family not in FAMILIES:
        raise ValueError("Unknown family {0!r}; expected one of {1}".format(family, ", ".join(FAMILIES)))
    algorithms = list(algorithms)
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise ValueError("Unknown algorithm {0!r}; expected one of {1}".format(
                algorithm, ", ".join(ALGORITHMS)))
    model = GroverCostModel() if model is None else model
    n_grid = [int(n) for n in n_grid]
    if not n_grid:
        _log.warning("Empty n grid; the bench has no cells")

    settings = {name: getattr(conf, name) for name in _CELL_SETTINGS}
    worker_arguments = [(family, n, resolve_rank(r_rule, n), algorithm, int(seed), model.as_dict(), settings, timing)
                        for n in n_grid for algorithm in algorithms for seed in seeds]

    if conf.use_multiprocessing and len(worker_arguments) > 1:
        nproc = conf.n_processes if conf.n_processes > 1 else multiprocessing.cpu_count()
        nproc = min(nproc, len(worker_arguments))
        ctx = multiprocessing.get_context('forkserver')
        _log.info("Beginning bench of {0} cells using {1} processes".format(len(worker_arguments), nproc))
        with ctx.Pool(int(nproc)) as pool:
            records = pool.map(_run_cell, worker_arguments)
        _log.info("Finished multiprocessor bench")
    else:
        records = []
        for args in worker_arguments:
            _log.info("bench cell: {0} n={1} r={2} {3} seed={4}".format(*args[:5]))
            records.append(_run_cell(args))
    return records


###########################################################################
#
#    Output
#

def records_to_table(records):
    """ astropy Table with one row per record and the fixed CSV columns """
    columns = list(zip(*records)) if records else [[] for _ in CSV_COLUMNS]
    return Table([np.array(column, dtype=dtype) for column, dtype in zip(columns, _CSV_DTYPES)],
                 names=CSV_COLUMNS)


def write_bench_csv(records, output):
    """ Write records as CSV: a version comment line, the header, then one row per record.

    Parameters
    ----------
    records : list of BenchRecord
    output : str, path-like or writable text file
    """
    if hasattr(output, 'write'):
        _write_csv(records, output)
    else:
        with open(output, 'w', newline='') as fh:
            _write_csv(records, fh)
        _log.info("Wrote {0} bench records to {1}".format(len(records), output))


def _write_csv(records, fh):
    fh.write(CSV_VERSION_LINE + '\n')
    if not records:
        fh.write(",".join(CSV_COLUMNS) + '\n')
        return
    ascii.write(records_to_table(records), fh, format='csv', overwrite=True)


def _as_bool(value):
    return str(value).strip().lower() in ('true', '1')


def read_bench_csv(source):
    """ Read records written by `write_bench_csv` """
    if hasattr(source, 'read'):
        text = source.read()
    else:
        with open(source) as fh:
            text = fh.read()
    lines = [line for line in text.splitlines() if line.strip() and not line.startswith('#')]
    if not lines:
        raise ValueError("Bench CSV has no header line")
    header = [name.strip() for name in lines[0].split(',')]
    if tuple(header) != CSV_COLUMNS:
        raise ValueError("Bench CSV columns {0} differ from the expected {1}".format(header, list(CSV_COLUMNS)))
    if len(lines) == 1:
        return []
    table = ascii.read(lines, format='csv')
    return [BenchRecord(str(row['family']), int(row['n']), int(row['r']), str(row['algorithm']),
                        _as_bool(row['connected']), int(row['classical_queries']), int(row['quantum_charged']),
                        int(row['seed']), float(row['elapsed_ms']))
            for row in table]


def records_to_json(records):
    return json.dumps([dict(record._asdict()) for record in records], indent=1)


###########################################################################
#
#    Scaling fits and plots
#

def fit_scaling_exponent(points):
    """ Least-squares slope of log(count) against log(n).

    Parameters
    ----------
    points : iterable of (n, count)
        At least three points, all values positive.

    Returns
    -------
    slope : float
    """
    points = np.asarray(list(points), dtype=float)
    if points.ndim != 2 or len(points) < 3:
        raise ValueError("Exponent fits need at least 3 (n, count) points; got {}".format(len(points)))
    if np.any(points <= 0):
        raise ValueError("Exponent fits need positive n and counts")
    fit = scipy.stats.linregress(np.log(points[:, 0]), np.log(points[:, 1]))
    return float(fit.slope)


def _cost(record):
    return record.quantum_charged if record.algorithm == 'quantum' else record.classical_queries


def _series(records):
    # (family, algorithm) -> sorted list of (n, mean cost over seeds)
    grouped = {}
    for record in records:
        grouped.setdefault((record.family, record.algorithm), {}).setdefault(record.n, []).append(_cost(record))
    return {key: sorted((n, float(np.mean(costs))) for n, costs in by_n.items())
            for key, by_n in grouped.items()}


def fit_bench_exponents(records):
    """ Fitted exponent per (family, algorithm); quantum runs are fitted on their charged cost.

    Series with fewer than three sizes are skipped with a warning.
    """
    exponents = {}
    for (family, algorithm), points in _series(records).items():
        if len(points) < 3:
            _log.warning("Skipping the {0} / {1} series: an exponent fit needs at least 3 sizes, got {2}".format(
                family, algorithm, len(points)))
            continue
        exponents[family, algorithm] = fit_scaling_exponent(points)
    return exponents


def display_scaling(records, ax=None, title=None):
    """ Plot mean query cost against n on log-log axes, one line per (family, algorithm) """
    if ax is None:
        import matplotlib.pyplot as plt
        ax = plt.gca()
    for (family, algorithm), points in sorted(_series(records).items()):
        ns, costs = zip(*points)
        ax.loglog(ns, costs, marker='o', label="{0} / {1}".format(family, algorithm))
    ax.set_xlabel("n")
    ax.set_ylabel("queries (classical) or charged cost (quantum)")
    if title is not None:
        ax.set_title(title)
    if records:
        ax.legend(loc='upper left')
    return ax


def plot_scaling_svg(records, path, title=None):
    """ Write `display_scaling` of the records to an SVG file, without needing a display """
    from matplotlib.figure import Figure

    fig = Figure(figsize=(6, 4.5))
    display_scaling(records, ax=fig.add_subplot(111), title=title)
    fig.tight_layout()
    fig.savefig(path, format='svg')
    _log.info("Wrote scaling plot to {}".format(path))
