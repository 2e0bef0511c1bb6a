"""
Tests for coded orbits, limit sets and pseudo-orbit constructions
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab.builders import circle_stack
from shadowlab.dyadic import Dyadic
from shadowlab.exceptions import (
    InvalidParameterError,
    PreconditionError,
    SystemParseError,
    UnknownPointError,
)
from shadowlab.systems import load_system
from shadowlab.trajectories import (
    CodedOrbit,
    OrbitSuffix,
    alpha_family,
    bridge_pseudo_orbit,
    chain_tour,
    coded_orbit,
    forward_orbit,
    full_trajectory_with,
    gamma_limit,
    jump_bound_of,
    omega_limit,
    weave_pseudo_orbit,
)

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

_BLOCK = st.lists(st.integers(0, 3), max_size=4).map(tuple)
_CYCLE = st.lists(st.integers(0, 3), min_size=1, max_size=4).map(tuple)


@pytest.fixture
def line():
    return load_system(LINE_TEXT, name="line")


@pytest.fixture
def sample():
    return CodedOrbit((5, 6), (7,), (1, 2), (3,), (8, 9))


class TestCodedOrbit:
    """Tests for the CodedOrbit representation"""

    def test_indexing(self, sample):
        """Test decoding around index 0"""
        assert sample.decode(-3, 6) == [5, 6, 7, 1, 2, 3, 8, 9, 8]
        assert sample.at(-5) == 5
        assert sample.at(100) == 9

    def test_positions(self, sample):
        """Test block positions"""
        assert sample.prefix_start == -1
        assert sample.suffix_start == 3
        assert sample.stabilization_index == 3

    def test_limit_pair(self, sample):
        """Test limit sets are the cycle sets"""
        pair = sample.limit_pair()
        assert pair.alpha_set == (5, 6)
        assert pair.omega_set == (8, 9)
        assert sample.support() == (1, 2, 3, 5, 6, 7, 8, 9)

    def test_tail_sets(self, sample):
        """Test forward and backward tail sets"""
        assert sample.forward_tail_set(0) == (1, 2, 3, 8, 9)
        assert sample.forward_tail_set(3) == (8, 9)
        assert sample.backward_tail_set(1) == (5, 6, 7)
        assert sample.backward_tail_set(2) == (5, 6)

    def test_empty_cycle_rejected(self):
        """Test both cycles must be nonempty"""
        with pytest.raises(InvalidParameterError):
            CodedOrbit((), (), (1,), (), (2,))

    def test_text_form(self, sample):
        """Test the text form and parsing it back"""
        text = sample.to_text()
        assert text == "[5 6] [7] [1 2] [3] [8 9] jump=0/2^0"
        assert CodedOrbit.from_text(text) == sample

    def test_malformed_text(self):
        """Test malformed orbit text"""
        with pytest.raises(SystemParseError):
            CodedOrbit.from_text("[1] [2] jump=0/2^0")

    def test_to_dict(self, sample):
        """Test the report form"""
        assert sample.to_dict()["right_cycle"] == [8, 9]
        assert sample.to_dict()["jump_bound"] == "0/2^0"

    def test_normalize_primitive_cycles(self):
        """Test repeated cycles shrink to their period"""
        orbit = CodedOrbit((0, 0), (), (), (), (2, 3, 2, 3)).normalized()
        assert orbit.left_cycle == (0,)
        assert orbit.right_cycle == (2, 3)

    def test_normalize_absorbs_tails(self):
        """Test tails that repeat the cycle are absorbed"""
        left = CodedOrbit((2, 3), (2,), (5,), (), (4,))
        assert left.normalized() == CodedOrbit((3, 2), (), (5,), (), (4,))
        right = CodedOrbit((0,), (), (), (7, 4), (5, 4))
        assert right.normalized() == CodedOrbit((0,), (), (), (7,), (4, 5))

    @settings(max_examples=150, deadline=None)
    @given(_CYCLE, _BLOCK, _BLOCK, _BLOCK, _CYCLE)
    def test_normalize_keeps_sequence(self, lc, lt, core, rt, rc):
        """Test normalization never changes a decoded entry"""
        orbit = CodedOrbit(lc, lt, core, rt, rc)
        normal = orbit.normalized()
        assert normal.decode(-20, 20) == orbit.decode(-20, 20)
        assert normal.limit_pair() == orbit.limit_pair()


class TestJumpBound:
    """Tests for exact jump bounds"""

    def test_exact_cycle(self, line):
        """Test a cycle orbit is exact"""
        orbit = coded_orbit(line, (2, 3), (), (), (), (2, 3))
        assert orbit.jump_bound == 0
        assert orbit.is_exact

    def test_largest_step(self, line):
        """Test the largest step error is found"""
        orbit = coded_orbit(line, (0,), (), (1,), (), (2, 3))
        assert orbit.jump_bound == Fraction(1, 2)
        assert jump_bound_of(line, orbit) == Fraction(1, 2)

    def test_ids_validated(self, line):
        """Test ids outside the system"""
        with pytest.raises(UnknownPointError):
            coded_orbit(line, (9,), (), (), (), (0,))


class TestLimitSets:
    """Tests for exact limit sets"""

    def test_forward_orbit(self, line):
        """Test tail and cycle of a forward orbit"""
        orbit = forward_orbit(line, 1)
        assert orbit == OrbitSuffix((1,), (0,))
        assert orbit.decode(4) == [1, 0, 0, 0]
        assert forward_orbit(line, 3) == OrbitSuffix((), (3, 2))

    def test_omega(self, line):
        """Test ω-limit sets"""
        assert omega_limit(line, 1) == (0,)
        assert omega_limit(line, 3) == (2, 3)

    def test_alpha_family(self, line):
        """Test α-limit sets of backward trajectories"""
        assert alpha_family(line, 0) == [(0,)]
        assert alpha_family(line, 1) == []
        assert alpha_family(line, 1, delta=HALF) == [(0,), (2, 3)]

    def test_gamma(self, line):
        """Test γ-limit sets"""
        assert gamma_limit(line, 1) == ()
        assert gamma_limit(line, 2) == (2, 3)

    def test_circle_fibers(self):
        """Test every point of a rotated circle has its fiber as limit set"""
        sys = circle_stack(2, 8, 3)
        fiber = sys.labels["fiber_1/2^1"]
        for x in fiber:
            assert omega_limit(sys, x) == fiber
            assert alpha_family(sys, x) == [fiber]


class TestFullTrajectory:
    """Tests for full trajectory search"""

    def test_exact_match(self, line):
        """Test a cycle orbit is found for a cycle target"""
        orbit = full_trajectory_with(line, [2, 3], [2, 3], 0)
        assert orbit == CodedOrbit.from_cycle((2, 3))

    def test_no_match(self, line):
        """Test different limit targets without chains"""
        assert full_trajectory_with(line, [0], [2, 3], 0) is None

    def test_tolerance(self, line):
        """Test a loose tolerance accepts a distant cycle"""
        orbit = full_trajectory_with(line, [0], [2, 3], 1)
        assert orbit.limit_pair().omega_set == (0,)
        assert full_trajectory_with(line, [0], [2, 3], Fraction(3, 4), strict=True) is None

    def test_pseudo_trajectory(self, line):
        """Test a δ-pseudo-trajectory between two cycles"""
        orbit = full_trajectory_with(line, [2, 3], [0], 0, delta=HALF)
        assert orbit.limit_pair().alpha_set == (2, 3)
        assert orbit.limit_pair().omega_set == (0,)
        assert orbit.core == (2, 3, 1)
        assert orbit.jump_bound == Fraction(1, 4)
        assert full_trajectory_with(line, [0], [2, 3], 0, delta=HALF) is None


class TestPseudoOrbits:
    """Tests for woven and bridged pseudo-orbits"""

    def test_chain_tour(self, line):
        """Test a closed chain through every point"""
        assert chain_tour(line, [0, 1], HALF) == [0, 1]
        assert chain_tour(line, [1], HALF) == [1]

    def test_weave(self, line):
        """Test both limit sets of the woven orbit equal the set"""
        orbit = weave_pseudo_orbit(line, [0, 1], HALF)
        assert orbit.limit_pair().alpha_set == (0, 1)
        assert orbit.limit_pair().omega_set == (0, 1)
        assert orbit.jump_bound == Fraction(1, 4)
        assert orbit.jump_bound < HALF

    def test_weave_requires_ict(self, line):
        """Test non-ICT sets are refused with the failing pair"""
        with pytest.raises(PreconditionError, match="from 0 to 2"):
            weave_pseudo_orbit(line, [0, 2], HALF)

    def test_bridge_restricted(self, line):
        """Test a restricted bridge keeps every jump below delta"""
        orbit = bridge_pseudo_orbit(line, [2, 3], [0, 1], HALF)
        assert orbit.limit_pair().alpha_set == (2, 3)
        assert orbit.limit_pair().omega_set == (0, 1)
        assert orbit.jump_bound == Fraction(1, 4)

    def test_bridge_unrestricted(self, line):
        """Test the unrestricted bridge jumps directly"""
        orbit = bridge_pseudo_orbit(line, [2, 3], [0, 1], HALF, restricted=False)
        assert orbit.core == ()
        assert orbit.jump_bound == Fraction(1, 2)

    def test_bridge_unreachable(self, line):
        """Test a bridge against the chain order"""
        with pytest.raises(PreconditionError, match="not δ-chain reachable"):
            bridge_pseudo_orbit(line, [0, 1], [2, 3], HALF)
