"""
Tests for δ-chain graphs, chain components and ICT sets
"""

from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab import settings as shadowlab_settings
from shadowlab.builders import circle_stack, interval_square, square, torus
from shadowlab.chain_graph import (
    build_chain_graph,
    chain_components,
    cycle_order,
    cycles_of_map,
    enumerate_ict,
    is_ict,
    morse_order,
    require_ict,
)
from shadowlab.dyadic import Dyadic
from shadowlab.exceptions import (
    EnumerationGuardError,
    InvalidParameterError,
    PreconditionError,
)
from shadowlab.metric import SpaceDescriptor, distance
from shadowlab.systems import FiniteSystem, load_system

LINE_TEXT = """\
space plane
point 0 0/2^0
point 1 1/2^2
point 2 1/2^1
point 3 3/2^2
map 0 0
map 1 0
map 2 3
map 3 2
"""

HALF = Dyadic(1, 1)
QUARTER = Dyadic(1, 2)


@st.composite
def small_systems(draw, max_size=10):
    size = draw(st.integers(1, max_size))
    images = draw(st.lists(st.integers(0, size - 1), min_size=size, max_size=size))
    coords = [(Dyadic(i, 2),) for i in range(size)]
    return FiniteSystem(SpaceDescriptor.plane(1), coords, images, name="random")


@pytest.fixture
def line():
    return load_system(LINE_TEXT, name="line")


class TestChainGraph:
    """Tests for chain graph construction and queries"""

    def test_edges(self, line):
        """Test the strict δ rule"""
        g = build_chain_graph(line, HALF)
        assert g.adjacency() == {0: (0, 1), 1: (0, 1), 2: (2, 3), 3: (1, 2, 3)}
        assert g.edge_count == 9
        assert g.has_edge(3, 1)
        assert not g.has_edge(1, 3)

    def test_strict_boundary(self, line):
        """Test a jump equal to delta is not allowed"""
        g = build_chain_graph(line, QUARTER)
        assert list(g.edges()) == [(0, 0), (1, 0), (2, 3), (3, 2)]

    def test_cached_per_delta(self, line):
        """Test graphs are cached on the system"""
        g = build_chain_graph(line, HALF)
        assert build_chain_graph(line, "1/2^1") is g
        assert build_chain_graph(line, QUARTER) is not g

    def test_cache_is_bounded(self):
        """Test the least recently used graph is evicted past the cache size"""
        previous = shadowlab_settings.get_graph_cache_size()
        shadowlab_settings.set_graph_cache_size(2)
        try:
            sys = load_system(LINE_TEXT)
            first = build_chain_graph(sys, HALF)
            build_chain_graph(sys, QUARTER)
            build_chain_graph(sys, Dyadic(1, 3))
            assert len(sys._graph_cache) == 2
            assert build_chain_graph(sys, HALF) is not first
        finally:
            shadowlab_settings.set_graph_cache_size(previous)

    @pytest.mark.slow
    def test_matches_distance_scan(self):
        """Test edges equal a double loop over exact point distances"""
        sys = square(4)
        delta = Dyadic(1, 3)
        images = sys.map.tolist()
        expected = {
            (x, y)
            for x in range(len(sys))
            for y in range(len(sys))
            if distance(sys.points[images[x]], sys.points[y]) < delta
        }
        assert set(build_chain_graph(sys, delta).edges()) == expected

    @settings(max_examples=50, deadline=None)
    @given(
        small_systems(),
        st.sampled_from([Dyadic(1, 2), Dyadic(1, 1), Dyadic(3, 2)]),
        st.sampled_from([Dyadic(1, 2), Dyadic(1, 1), Dyadic(3, 2)]),
    )
    def test_edges_grow_with_delta(self, sys, a, b):
        """Test a larger tolerance keeps every edge of a smaller one"""
        low, high = sorted((a, b))
        assert set(build_chain_graph(sys, low).edges()) <= set(
            build_chain_graph(sys, high).edges()
        )

    @pytest.mark.parametrize("delta", [0, Fraction(-1, 2), 0.5, "0.5"])
    def test_invalid_delta(self, line, delta):
        """Test delta validation"""
        with pytest.raises(InvalidParameterError):
            build_chain_graph(line, delta)

    def test_networkx_export(self, line):
        """Test conversion to a networkx graph"""
        graph = build_chain_graph(line, HALF).to_networkx()
        assert graph.number_of_nodes() == 4
        assert graph.number_of_edges() == 9

    def test_reachability(self, line):
        """Test reachability masks of length >= 0"""
        g = build_chain_graph(line, HALF)
        assert g.reachable_mask([0]).tolist() == [True, True, False, False]
        assert g.reachable_mask([2]).all()
        assert g.reaching_mask([0]).all()
        assert g.set_reaches([3], [0])
        assert not g.set_reaches([0], [3])

    def test_recurrent_mask(self, line):
        """Test chain-recurrent vertices"""
        assert build_chain_graph(line, QUARTER).recurrent_mask.tolist() == [
            True,
            False,
            True,
            True,
        ]


class TestShortestChain:
    """Tests for lexicographically least shortest chains"""

    def test_two_steps(self, line):
        """Test the chain through the only useful middle vertex"""
        g = build_chain_graph(line, HALF)
        assert g.shortest_chain(3, 0) == [3, 1, 0]

    def test_trivial_and_loop(self, line):
        """Test zero-length chains and forced steps"""
        g = build_chain_graph(line, HALF)
        assert g.shortest_chain(0, 0) == [0]
        assert g.shortest_chain(0, 0, min_steps=1) == [0, 0]

    def test_unreachable(self, line):
        """Test None for unreachable targets"""
        assert build_chain_graph(line, HALF).shortest_chain(0, 3) is None

    def test_within(self, line):
        """Test chains restricted to a subset"""
        g = build_chain_graph(line, HALF)
        assert g.shortest_chain(3, 2, within=(2, 3)) == [3, 2]
        assert g.shortest_chain(3, 0, within=(0, 3)) is None

    def test_lexicographic_choice(self):
        """Test the smallest id wins among equally short chains"""
        text = (
            "space plane\n"
            "point 0 0/2^0 0/2^0\n"
            "point 1 1/2^0 1/2^0\n"
            "point 2 1/2^0 0/2^0\n"
            "point 3 2/2^0 0/2^0\n"
            "map 0 0\nmap 1 1\nmap 2 2\nmap 3 3\n"
        )
        sys = load_system(text)
        g = build_chain_graph(sys, Dyadic(2))
        assert g.shortest_chain(0, 3) == [0, 1, 3]
        assert g.shortest_chain(3, 0) == [3, 1, 0]


class TestChainComponents:
    """Tests for chain components and the order between them"""

    def test_components(self, line):
        """Test components at two tolerances"""
        assert chain_components(build_chain_graph(line, HALF)) == [(0, 1), (2, 3)]
        assert chain_components(build_chain_graph(line, QUARTER)) == [(0,), (2, 3)]

    def test_morse_order(self, line):
        """Test the reduced order between components"""
        order = morse_order(build_chain_graph(line, HALF))
        assert list(order.edges()) == [(1, 0)]
        assert order.nodes[0]["members"] == (0, 1)
        assert order.nodes[1]["size"] == 2

    def test_torus_fibers(self):
        """Test a tolerance below the grid gap leaves one component per fiber"""
        sys = torus(5, 2)
        components = chain_components(build_chain_graph(sys, Fraction(1, 10)))
        assert components == [tuple(range(5 * j, 5 * j + 5)) for j in range(5)]

    def test_morse_order_is_dag(self):
        """Test the order on the interval system is acyclic"""
        sys = interval_square(4)
        order = morse_order(build_chain_graph(sys, Dyadic(1, 3)))
        assert nx.is_directed_acyclic_graph(order)

    def test_components_are_ict(self):
        """Test every chain component is ICT"""
        sys = interval_square(4)
        delta = Dyadic(1, 3)
        for component in chain_components(build_chain_graph(sys, delta)):
            assert is_ict(sys, component, delta)


class TestICT:
    """Tests for internal chain transitivity"""

    def test_is_ict(self, line):
        """Test ICT and non-ICT sets"""
        assert is_ict(line, [0, 1], HALF)
        assert is_ict(line, [1], HALF)
        assert not is_ict(line, [1], QUARTER)
        assert not is_ict(line, [0, 2], HALF)

    def test_require_ict_names_pair(self, line):
        """Test the precondition error names an unreachable pair"""
        g = build_chain_graph(line, HALF)
        with pytest.raises(PreconditionError, match="from 0 to 2"):
            require_ict(g, (0, 2))
        require_ict(g, (2, 3))

    def test_enumerate(self, line):
        """Test exhaustive enumeration"""
        assert enumerate_ict(line, HALF, 2) == [(0,), (0, 1), (1,), (2,), (2, 3), (3,)]
        assert enumerate_ict(line, HALF, 2, within=[0, 1], guard=3) == [(0,), (0, 1), (1,)]

    def test_enumerate_guard(self, line):
        """Test the enumeration guard"""
        with pytest.raises(EnumerationGuardError):
            enumerate_ict(line, HALF, 2, guard=3)

    def test_circle_fibers(self):
        """Test fibers are the only small ICT sets below the circle gap"""
        sys = circle_stack(2, 3, 1)
        assert enumerate_ict(sys, Fraction(1, 3), 3) == [(0, 1, 2), (3, 4, 5), (6, 7, 8)]

    @settings(max_examples=40, deadline=None)
    @given(st.sets(st.integers(0, 7), min_size=1, max_size=3))
    def test_enumeration_agrees_with_is_ict(self, A):
        """Test the enumeration oracle agrees with the graph check"""
        sys = interval_square(4)
        delta = Dyadic(1, 3)
        listed = set(enumerate_ict(sys, delta, 3, within=range(8)))
        subset = tuple(sorted(A))
        assert (subset in listed) == is_ict(sys, subset, delta)


class TestCycles:
    """Tests for cycles of the map"""

    def test_cycles(self, line):
        """Test cycles as sets and in map order"""
        assert cycles_of_map(line) == [(0,), (2, 3)]
        assert cycle_order(line, [3, 2]) == (2, 3)

    def test_not_a_cycle(self, line):
        """Test sets that are not cycles"""
        with pytest.raises(PreconditionError):
            cycle_order(line, [1])
