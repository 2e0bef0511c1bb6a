"""
δ-chain graphs and the chain-recurrence structure they carry.

The chain graph of a system at tolerance ``delta`` has an edge ``x -> y``
exactly when ``d(f(x), y) < delta``. Edges are computed row-block by
row-block on the integer grid of the system and stored as a boolean CSR
matrix; strongly connected components come from ``scipy.sparse.csgraph``
and the order between components from a ``networkx`` condensation.
"""

import itertools
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .exceptions import EnumerationGuardError, PreconditionError
from .metric import PointSet, SetFamily, canonical_family
from .render import render_dot
from .settings import get_enumeration_guard
from .systems import FiniteSystem
from .utils import LRUCache, exact_parameter, positive_int

INDUCED_CACHE_SIZE = 256
TOUR_CACHE_SIZE = 256


class ChainGraph:
    """
    Directed δ-chain graph of a finite system.

    Parameters
    ----------
    system : FiniteSystem
        The system the graph was built from.
    delta : Fraction
        Jump tolerance; edges satisfy ``d(f(x), y) < delta``.
    matrix : scipy.sparse.csr_matrix
        Boolean adjacency with sorted column indices.
    """

    def __init__(self, system: FiniteSystem, delta: Fraction, matrix: csr_matrix):
        self.system = system
        self.delta = delta
        self.matrix = matrix
        self._induced: LRUCache = LRUCache(INDUCED_CACHE_SIZE)
        # Woven tours of ICT sets, keyed by the set
        self.tours: LRUCache = LRUCache(TOUR_CACHE_SIZE)

    def __len__(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return (
            f"ChainGraph({self.system.name!r}, delta={self.delta}, "
            f"points={len(self)}, edges={self.edge_count})"
        )

    @property
    def edge_count(self) -> int:
        return int(self.matrix.nnz)

    def successors(self, v: int) -> PointSet:
        """Sorted successor ids of ``v``"""
        start, stop = self.matrix.indptr[v], self.matrix.indptr[v + 1]
        return tuple(self.matrix.indices[start:stop].tolist())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.successors(u)

    def adjacency(self) -> Dict[int, PointSet]:
        return {v: self.successors(v) for v in range(len(self))}

    def edges(self) -> Iterator[Tuple[int, int]]:
        for v in range(len(self)):
            for w in self.successors(v):
                yield v, w

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self)))
        graph.add_edges_from(self.edges())
        return graph

    def to_dot(self) -> str:
        """DOT document of the system with this graph's extra edges"""
        return render_dot(self.system, self)

    # -- strongly connected structure -----------------------------------

    @cached_property
    def component_labels(self) -> np.ndarray:
        """Strongly connected component label of every vertex"""
        _, labels = connected_components(
            self.matrix, directed=True, connection="strong"
        )
        return labels

    @cached_property
    def recurrent_mask(self) -> np.ndarray:
        """Vertices lying on a δ-chain cycle (chain-recurrent vertices)"""
        labels = self.component_labels
        sizes = np.bincount(labels)
        mask = sizes[labels] > 1
        loops = self.matrix.diagonal().astype(bool)
        return mask | loops

    @cached_property
    def condensation(self) -> nx.DiGraph:
        """DAG on component labels; an edge when some δ-edge joins them"""
        labels = self.component_labels
        dag = nx.DiGraph()
        dag.add_nodes_from(range(int(labels.max()) + 1))
        coo = self.matrix.tocoo()
        src = labels[coo.row]
        dst = labels[coo.col]
        keep = src != dst
        if keep.any():
            pairs = np.unique(np.stack([src[keep], dst[keep]], axis=1), axis=0)
            dag.add_edges_from(map(tuple, pairs.tolist()))
        return dag

    def _closure(self, ids: Iterable[int], forward: bool) -> np.ndarray:
        labels = self.component_labels
        start = set(np.unique(labels[list(ids)]).tolist())
        reached = set(start)
        for label in start:
            if forward:
                reached |= nx.descendants(self.condensation, label)
            else:
                reached |= nx.ancestors(self.condensation, label)
        return np.isin(labels, sorted(reached))

    def reachable_mask(self, sources: Iterable[int]) -> np.ndarray:
        """Vertices reachable from ``sources`` by δ-chains of length >= 0"""
        return self._closure(sources, forward=True)

    def reaching_mask(self, targets: Iterable[int]) -> np.ndarray:
        """Vertices from which some target is reachable (length >= 0)"""
        return self._closure(targets, forward=False)

    def set_reaches(self, A: Iterable[int], B: Iterable[int]) -> bool:
        """True if some point of ``B`` is δ-chain reachable from ``A``"""
        return bool(self.reachable_mask(A)[list(B)].any())

    # -- induced subgraphs ------------------------------------------------

    def induced(self, A: PointSet) -> csr_matrix:
        """Adjacency of the subgraph induced on ``A`` (local indices)"""
        cached = self._induced.get(A)
        if cached is None:
            index = np.asarray(A, dtype=np.int64)
            cached = self.matrix[index][:, index].tocsr()
            cached.sort_indices()
            self._induced.put(A, cached)
        return cached

    def is_transitive_on(self, A: PointSet) -> bool:
        sub = self.induced(A)
        if len(A) == 1:
            return bool(sub[0, 0])
        count, _ = connected_components(sub, directed=True, connection="strong")
        return count == 1

    def unreachable_pair(self, A: PointSet) -> Optional[Tuple[int, int]]:
        """
        First ordered pair ``(a, b)`` of ``A`` not joined by a δ-chain of
        length >= 1 inside ``A``, or None.
        """
        sub = self.induced(A)
        for i, a in enumerate(A):
            reached = set()
            for s in sub.indices[sub.indptr[i] : sub.indptr[i + 1]].tolist():
                if s not in reached:
                    order = breadth_first_order(
                        sub, s, directed=True, return_predecessors=False
                    )
                    reached.update(order.tolist())
            for j, b in enumerate(A):
                if j not in reached:
                    return a, b
        return None

    def shortest_chain(
        self,
        source: int,
        target: int,
        within: Optional[PointSet] = None,
        min_steps: int = 0,
    ) -> Optional[List[int]]:
        """
        Lexicographically least among the shortest δ-chains from
        ``source`` to ``target``.

        Parameters
        ----------
        source, target : int
            End points.
        within : PointSet, optional
            Keep the chain inside this set.
        min_steps : int, default 0
            With 1, a chain from a point to itself must take a step.

        Returns
        -------
        list of int or None
            The chain including both end points, None when unreachable.
        """
        if within is None:
            path = _lex_shortest(self.matrix, source, target, min_steps)
            return path
        local = {v: i for i, v in enumerate(within)}
        path = _lex_shortest(self.induced(within), local[source], local[target], min_steps)
        if path is None:
            return None
        return [within[i] for i in path]


def _lex_shortest(
    matrix: csr_matrix, source: int, target: int, min_steps: int
) -> Optional[List[int]]:
    if source == target and min_steps == 0:
        return [source]
    seen = np.zeros(matrix.shape[0], dtype=bool)
    if source != target:
        seen[source] = True
    layers = [np.array([source], dtype=np.int64)]
    while True:
        reached = np.unique(matrix[layers[-1]].indices)
        if np.any(reached == target):
            layers.append(np.array([target], dtype=np.int64))
            break
        reached = reached[~seen[reached]]
        if len(reached) == 0:
            return None
        seen[reached] = True
        layers.append(reached)

    # keep only the layer vertices that still lead to the target
    alive = [None] * len(layers)
    alive[-1] = layers[-1]
    for k in range(len(layers) - 2, 0, -1):
        hits = matrix[layers[k]][:, alive[k + 1]].getnnz(axis=1) > 0
        alive[k] = layers[k][hits]

    path = [source]
    for k in range(1, len(layers)):
        start, stop = matrix.indptr[path[-1]], matrix.indptr[path[-1] + 1]
        options = np.intersect1d(matrix.indices[start:stop], alive[k])
        path.append(int(options[0]))
    return path


def build_chain_graph(sys: FiniteSystem, delta) -> ChainGraph:
    """
    Build (or fetch from the system's cache) the δ-chain graph.

    Parameters
    ----------
    sys : FiniteSystem
        The system.
    delta : Fraction
        Positive jump tolerance.

    Raises
    ------
    InvalidParameterError
        If ``delta`` is not a positive exact scalar.
    """
    delta = exact_parameter("delta", delta)
    cached = sys._graph_cache.get(delta)
    if cached is not None:
        return cached

    bound = sys.threshold(delta, strict=True)
    size = len(sys)
    images = sys.grid[sys.map]
    rows: List[np.ndarray] = []
    cols: List[np.ndarray] = []
    step = sys._block_rows(size)
    for start in range(0, size, step):
        gaps = sys.gap_matrix(images[start : start + step], sys.grid)
        r, c = np.nonzero(gaps < bound)
        rows.append(r.astype(np.int64) + start)
        cols.append(c.astype(np.int64))
    row = np.concatenate(rows)
    col = np.concatenate(cols)
    matrix = csr_matrix(
        (np.ones(len(row), dtype=bool), (row, col)), shape=(size, size)
    )
    matrix.sort_indices()

    graph = ChainGraph(sys, delta, matrix)
    sys._graph_cache.put(delta, graph)
    return graph


def chain_components(g: ChainGraph) -> SetFamily:
    """
    Chain components: strongly connected components carrying an edge.

    Every returned set is ICT at ``g.delta``; the sets are disjoint and
    cover the chain-recurrent vertices.
    """
    labels = g.component_labels
    recurrent = g.recurrent_mask
    members: Dict[int, List[int]] = {}
    for v in np.flatnonzero(recurrent).tolist():
        members.setdefault(int(labels[v]), []).append(v)
    return canonical_family(members.values())


def is_ict(sys: FiniteSystem, A: Iterable[int], delta) -> bool:
    """
    Whether ``A`` is internally chain transitive at ``delta``.

    Every ordered pair of ``A`` (a point with itself included) must be
    joined by a δ-chain of length at least 1 that stays in ``A``.
    """
    ids = sys.check_ids(A)
    return build_chain_graph(sys, delta).is_transitive_on(ids)


def require_ict(g: ChainGraph, A: PointSet) -> None:
    """Raise PreconditionError naming the unreachable pair unless ``A`` is ICT"""
    if g.is_transitive_on(A):
        return
    pair = g.unreachable_pair(A)
    raise PreconditionError(
        f"set is not internally chain transitive at delta={g.delta}: "
        f"no δ-chain inside the set from {pair[0]} to {pair[1]}"
    )


def _spans(mask: int, start: int, adjacency: List[int]) -> bool:
    reach = 0
    frontier = adjacency[start] & mask
    while frontier:
        reach |= frontier
        grown = 0
        bits = frontier
        while bits:
            low = bits & -bits
            grown |= adjacency[low.bit_length() - 1]
            bits ^= low
        frontier = grown & mask & ~reach
    return reach == mask


def enumerate_ict(
    sys: FiniteSystem,
    delta,
    size_bound: int,
    within: Optional[Iterable[int]] = None,
    guard: Optional[int] = None,
) -> SetFamily:
    """
    Exhaustively list the ICT sets of at most ``size_bound`` points.

    Parameters
    ----------
    sys : FiniteSystem
        The system.
    delta : Fraction
        Jump tolerance.
    size_bound : int
        Largest subset size examined.
    within : iterable of int, optional
        Restrict the scan to subsets of this superset.
    guard : int, optional
        Largest admissible universe; defaults to the global setting.

    Raises
    ------
    EnumerationGuardError
        If the universe is larger than the guard.
    """
    size_bound = positive_int("size_bound", size_bound)
    g = build_chain_graph(sys, delta)
    universe = sys.check_ids(within) if within is not None else tuple(range(len(sys)))
    limit = guard if guard is not None else get_enumeration_guard()
    if len(universe) > limit:
        raise EnumerationGuardError(len(universe), limit)

    local = {v: i for i, v in enumerate(universe)}
    forward = [0] * len(universe)
    backward = [0] * len(universe)
    for v, i in local.items():
        for w in g.successors(v):
            j = local.get(w)
            if j is not None:
                forward[i] |= 1 << j
                backward[j] |= 1 << i

    found = []
    for size in range(1, min(size_bound, len(universe)) + 1):
        for combo in itertools.combinations(range(len(universe)), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if _spans(mask, combo[0], forward) and _spans(mask, combo[0], backward):
                found.append(tuple(universe[i] for i in combo))
    return canonical_family(found)


def cycles_of_map(sys: FiniteSystem) -> SetFamily:
    """All cycles of the map as canonical point sets"""
    return canonical_family(sys.cycle_orders)


def cycle_order(sys: FiniteSystem, cycle: Iterable[int]) -> PointSet:
    """The map order of a cycle given as a point set"""
    ids = sys.check_ids(cycle)
    for loop in sys.cycle_orders:
        if loop[0] == ids[0] and len(loop) == len(ids) and set(loop) == set(ids):
            return loop
    raise PreconditionError(f"point set {ids} is not a cycle of the map")


def morse_order(g: ChainGraph) -> nx.DiGraph:
    """
    Order between chain components.

    Nodes are positions in ``chain_components(g)``; an edge ``i -> j``
    means component ``j`` is δ-chain reachable from component ``i``. Only
    the transitive reduction is kept.
    """
    components = chain_components(g)
    labels = g.component_labels
    by_label = {int(labels[c[0]]): i for i, c in enumerate(components)}
    order = nx.DiGraph()
    order.add_nodes_from(range(len(components)))
    for label, i in by_label.items():
        for other in nx.descendants(g.condensation, label):
            j = by_label.get(other)
            if j is not None:
                order.add_edge(i, j)
    reduced = nx.transitive_reduction(order)
    for i, members in enumerate(components):
        reduced.nodes[i]["size"] = len(members)
        reduced.nodes[i]["members"] = members
    return reduced
