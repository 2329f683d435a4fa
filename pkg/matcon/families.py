#
# Matroid families
#
# Constructors for the instances used by the deciders, the lower-bound
# experiments and the test corpus.
#

import functools
import logging
from itertools import combinations

import networkx as nx
from networkx.utils import UnionFind

from .matroid_core import (MatroidOracle, _check_cap, find_base, format_mask, full_mask,
                           mask_elements, mask_from_elements, popcount, verify_base_axiom_B1)

_log = logging.getLogger('matcon')

__all__ = ['MinimalMatroid', 'BaseDeletedSystem', 'RemovedBaseMatroid', 'UniformMatroid', 'GraphicMatroid',
           'ExplicitBasesMatroid', 'minimal_matroid', 'removed_base_matroid', 'base_deleted_system',
           'uniform_matroid', 'free_matroid', 'graphic_matroid', 'explicit_bases_matroid', 'enumerate_bases',
           'canonical_bases', 'base_count', 'removal_keeps_matroid', 'matroid_removals',
           'cycle_graph_edges', 'complete_graph_edges']


def base_count(n, r):
    """ Number of bases of the minimal matroid of rank r on n elements, r(n-r)+1 """
    return r * (n - r) + 1


def removal_keeps_matroid(n, r, removed):
    """ True if the minimal matroid (n, r) minus the base ``removed`` is still a matroid.

    That holds for E0 = {e1..er} and, when r is 1 or n-1, for every base.
    """
    return removed == full_mask(r) or r == 1 or r == n - 1


def matroid_removals(n, r):
    """ Canonical indices of the bases whose removal leaves a matroid """
    return tuple(i for i, base in enumerate(canonical_bases(n, r)) if removal_keeps_matroid(n, r, base))


@functools.lru_cache(maxsize=128)
def canonical_bases(n, r):
    """ Bases of the minimal matroid in canonical order.

    E0 = {e1..er} comes first, then E0 - e_i + e_j for e_i in E0 and
    e_j outside it, in lexicographic order of (i, j). This order fixes what
    "base number i" means for the lower-bound experiments.
    """
    core = full_mask(r)
    swaps = [(core & ~(1 << i)) | (1 << j) for i in range(r) for j in range(r, n)]
    return tuple([core] + swaps)


class MinimalMatroid(MatroidOracle):
    """ The connected matroid with the fewest bases for its rank and size.

    Its circuits are E0 + e_j for every e_j outside E0 = {e1..er}, and every
    pair of elements outside E0. Equivalently S is independent iff it holds
    at most one element outside E0 and at most r elements overall, which is
    what the oracle evaluates (O(1) per query).

    Parameters
    ----------
    n : int
        Ground set size.
    r : int
        Rank, 0 < r < n.
    """

    family = 'minimal'

    def __init__(self, n, r):
        if not 0 < r < n:
            raise ValueError("Minimal matroids need 0 < r < n; got n={0}, r={1}".format(n, r))
        super(MinimalMatroid, self).__init__(n)
        self.r = int(r)
        self.core = full_mask(self.r)
        self.outside = full_mask(self.n) & ~self.core

    def _independent(self, mask):
        return (mask & self.outside).bit_count() <= 1 and mask.bit_count() <= self.r

    def bases(self):
        return canonical_bases(self.n, self.r)

    def base_index(self, base):
        """ Position of ``base`` in the canonical base order """
        try:
            return self.bases().index(base)
        except ValueError:
            raise ValueError("{0} is not a base of the minimal matroid ({1}, {2})".format(
                format_mask(base), self.n, self.r))

    def circuits(self):
        """ Closed-form circuit list, core circuits first then the outside pairs """
        outside = mask_elements(self.outside)
        core_circuits = [self.core | (1 << j) for j in outside]
        pairs = [(1 << a) | (1 << b) for a, b in combinations(outside, 2)]
        return core_circuits + pairs

    def describe(self):
        return {'family': self.family, 'n': self.n, 'r': self.r}


class BaseDeletedSystem(MatroidOracle):
    """ The minimal matroid's base list with one base deleted, as a set system.

    S is independent iff it lies inside one of the remaining bases. The
    answers differ from the parent's on a single subset, the deleted base,
    but the remaining list is a matroid's base list only for the removals
    accepted by `removal_keeps_matroid`. For 2 <= r <= n-2 any other removal
    B = E0 - e_i + e_j breaks the exchange axiom: from X = E0 - e_k + e_j
    (k != i) towards Y = E0 - e_i + e_l (l != j), dropping e_i from X leaves
    only B or a set with two elements outside E0.

    Parameters
    ----------
    n, r : int
        Parameters of the parent minimal matroid.
    removed : int
        Mask of the base to delete.
    """

    family = 'base_deleted'

    def __init__(self, n, r, removed):
        self.parent = MinimalMatroid(n, r)
        parent_bases = self.parent.bases()
        if removed not in parent_bases:
            raise ValueError("{0} is not a base of the minimal matroid ({1}, {2})".format(
                format_mask(removed), n, r))
        super(BaseDeletedSystem, self).__init__(n)
        self.r = int(r)
        self.removed = removed
        self._bases = tuple(base for base in parent_bases if base != removed)
        self._base_set = frozenset(self._bases)

    @property
    def is_matroid(self):
        return removal_keeps_matroid(self.n, self.r, self.removed)

    def _independent(self, mask):
        size = mask.bit_count()
        if size > self.r:
            return False
        if size == self.r:
            return mask in self._base_set
        return any(mask & ~base == 0 for base in self._bases)

    def bases(self):
        return self._bases

    def describe(self):
        return {'family': self.family, 'n': self.n, 'r': self.r,
                'removed': [x + 1 for x in mask_elements(self.removed)]}


class RemovedBaseMatroid(BaseDeletedSystem):
    """ Minimal matroid with one of its bases removed, restricted to removals that leave a matroid.

    Removing E0 = {e1..er} leaves the bases with r-1 elements of E0 and one
    outside it, the direct sum U_{r-1,r} + U_{1,n-r}, which is disconnected.
    For r = 1 or r = n-1 every removal leaves a matroid in which the removed
    element becomes a loop or a coloop. Other removals raise ValueError; use
    `BaseDeletedSystem` for them.
    """

    family = 'removed_base'

    def __init__(self, n, r, removed):
        super(RemovedBaseMatroid, self).__init__(n, r, removed)
        if not self.is_matroid:
            raise ValueError("Removing {0} from the minimal matroid ({1}, {2}) violates the base exchange "
                             "axiom (B1); only E0 = {3} can be removed when 2 <= r <= n-2".format(
                                 format_mask(removed), n, r, format_mask(self.parent.core)))


class UniformMatroid(MatroidOracle):
    """ Uniform matroid U_{r,n}: every subset of at most r elements is independent """

    family = 'uniform'

    def __init__(self, r, n):
        if not 0 <= r <= n:
            raise ValueError("Uniform matroids need 0 <= r <= n; got r={0}, n={1}".format(r, n))
        super(UniformMatroid, self).__init__(n)
        self.r = int(r)

    def _independent(self, mask):
        return mask.bit_count() <= self.r

    def bases(self):
        return tuple(mask_from_elements(combo) for combo in combinations(range(self.n), self.r))

    def describe(self):
        return {'family': self.family, 'n': self.n, 'r': self.r}


class GraphicMatroid(MatroidOracle):
    """ Cycle matroid of a graph: elements are edges, independent sets are forests.

    Independence is decided by union-find. Self-loops are dependent on their
    own and parallel edges form 2-element circuits.

    Parameters
    ----------
    n_vertices : int
        Number of vertices, labelled 0..n_vertices-1.
    edges : list of 2-tuples
        Edge list; edge number i is element e_{i+1}.
    """

    family = 'graphic'

    def __init__(self, n_vertices, edges):
        edges = [tuple(int(v) for v in edge) for edge in edges]
        for edge in edges:
            if len(edge) != 2:
                raise ValueError("Graph edges must join exactly two vertices; got {}".format(edge))
            if not all(0 <= v < n_vertices for v in edge):
                raise ValueError("Edge {0} refers to a vertex outside 0..{1}".format(edge, n_vertices - 1))
        super(GraphicMatroid, self).__init__(len(edges))
        self.n_vertices = int(n_vertices)
        self.edges = tuple(edges)

    @classmethod
    def from_networkx(cls, graph):
        """ Cycle matroid of a networkx graph; vertices are numbered in node order """
        index = {node: i for i, node in enumerate(graph.nodes)}
        return cls(len(index), [(index[u], index[v]) for u, v in graph.edges()])

    def to_networkx(self):
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.n_vertices))
        graph.add_edges_from(self.edges)
        return graph

    def _independent(self, mask):
        forest = UnionFind()
        for i in mask_elements(mask):
            u, v = self.edges[i]
            if forest[u] == forest[v]:
                return False
            forest.union(u, v)
        return True

    @property
    def graph_rank(self):
        """ Vertices minus connected components, which is the rank of the full edge set """
        return self.n_vertices - nx.number_connected_components(self.to_networkx())

    def describe(self):
        return {'family': self.family, 'n': self.n, 'r': self.graph_rank, 'vertices': self.n_vertices,
                'edges': [[u + 1, v + 1] for u, v in self.edges]}


class ExplicitBasesMatroid(MatroidOracle):
    """ Matroid given by an explicit list of bases.

    The list is checked against the base exchange axiom on construction;
    S is independent iff it lies inside some listed base.
    """

    family = 'explicit_bases'

    def __init__(self, n, bases):
        bases = tuple(sorted(set(bases)))
        if not bases:
            raise ValueError("An explicit matroid needs at least one base")
        super(ExplicitBasesMatroid, self).__init__(n)
        if any(base < 0 or base >> self.n for base in bases):
            raise ValueError("Base list contains subsets outside the ground set of size {}".format(n))
        if not verify_base_axiom_B1(bases):
            raise ValueError("Base list violates the base exchange axiom (B1)")
        self._bases = bases
        self._base_set = frozenset(bases)
        self.r = popcount(bases[0])

    def _independent(self, mask):
        if mask.bit_count() == self.r:
            return mask in self._base_set
        return any(mask & ~base == 0 for base in self._bases)

    def bases(self):
        return self._bases

    def describe(self):
        return {'family': self.family, 'n': self.n, 'r': self.r,
                'bases': [[x + 1 for x in mask_elements(base)] for base in self._bases]}


def minimal_matroid(n, r):
    return MinimalMatroid(n, r)


def removed_base_matroid(n, r, B):
    return RemovedBaseMatroid(n, r, B)


def base_deleted_system(n, r, B):
    return BaseDeletedSystem(n, r, B)


def uniform_matroid(r, n):
    """ U_{r,n}; note the argument order follows the usual notation """
    return UniformMatroid(r, n)


def free_matroid(n):
    """ Every subset independent, U_{n,n} """
    return UniformMatroid(n, n)


def graphic_matroid(graph_or_vertices, edges=None):
    """ Cycle matroid of a networkx graph, or of (n_vertices, edges) """
    if edges is None:
        return GraphicMatroid.from_networkx(graph_or_vertices)
    return GraphicMatroid(graph_or_vertices, edges)


def explicit_bases_matroid(n, bases):
    return ExplicitBasesMatroid(n, bases)


def cycle_graph_edges(k):
    """ Edges of the cycle on k vertices """
    return [(i, (i + 1) % k) for i in range(k)]


def complete_graph_edges(k):
    return list(combinations(range(k), 2))


def enumerate_bases(M):
    """ All bases of M.

    Families with a closed form answer without queries. Otherwise the rank
    is found greedily and every subset of that size is tested, which is
    capped at conf.enumeration_max_n.
    """
    bases = M.bases()
    if bases is not None:
        return list(bases)
    _check_cap(M.n, 'enumeration_max_n', 'enumerate_bases')
    r = popcount(find_base(M))
    with M.phase('enumerate'):
        found = [mask_from_elements(combo) for combo in combinations(range(M.n), r)
                 if M.is_independent(mask_from_elements(combo))]
    _log.debug("Enumerated {} bases of rank {}".format(len(found), r))
    return found
