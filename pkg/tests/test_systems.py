"""
Tests for finite systems and the system text format
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab.dyadic import Dyadic
from shadowlab.exceptions import (
    EmptySetError,
    InvalidParameterError,
    SystemParseError,
    UnknownPointError,
)
from shadowlab.metric import SpaceDescriptor, distance, hausdorff
from shadowlab.systems import (
    FiniteSystem,
    image,
    load_sets,
    load_system,
    preimages,
    save_system,
)

SYSTEM_TEXT = """\
# four points on a line
space plane
point 0 0/2^0
point 1 1/2^2
point 2 1/2^1
point 3 3/2^2
map 0 0
map 1 0
map 2 3
map 3 2
set pair 2 3
"""


@pytest.fixture
def line_system():
    return load_system(SYSTEM_TEXT, name="line")


def small_plane():
    coords = [(Dyadic(i, 3), Dyadic(j, 3)) for i in range(4) for j in range(3)]
    images = [(k + 5) % len(coords) for k in range(len(coords))]
    return FiniteSystem(SpaceDescriptor.plane(), coords, images, name="plane")


class TestFiniteSystem:
    """Tests for FiniteSystem construction and queries"""

    def test_basic_queries(self, line_system):
        """Test images, preimages and lookups"""
        assert len(line_system) == 4
        assert line_system.space == SpaceDescriptor.plane(1)
        assert image(line_system, 1).id == 0
        assert preimages(line_system, 0) == (0, 1)
        assert preimages(line_system, 1) == ()
        assert line_system.find(Dyadic(1, 1)) == 2
        assert line_system.labels == {"pair": (2, 3)}

    def test_cycles(self, line_system):
        """Test cycle detection and the periodic mask"""
        assert line_system.cycle_orders == [(0,), (2, 3)]
        assert line_system.periodic_mask.tolist() == [True, False, True, True]
        assert not line_system.bijective

    def test_unknown_point(self, line_system):
        """Test out-of-range ids"""
        with pytest.raises(UnknownPointError):
            line_system.point(4)
        with pytest.raises(UnknownPointError):
            line_system.point(True)
        with pytest.raises(UnknownPointError):
            line_system.find(Dyadic(1, 3))

    def test_invalid_construction(self):
        """Test rejected systems"""
        space = SpaceDescriptor.plane(1)
        with pytest.raises(EmptySetError):
            FiniteSystem(space, [], [])
        with pytest.raises(InvalidParameterError):
            FiniteSystem(space, [(Dyadic(0),)], [1])
        with pytest.raises(InvalidParameterError):
            FiniteSystem(space, [(Dyadic(0),), (Dyadic(0),)], [0, 1])
        with pytest.raises(InvalidParameterError):
            FiniteSystem(space, [(Dyadic(0),)], [0, 0])

    def test_empty_label_rejected(self):
        """Test labelled sets must be nonempty"""
        with pytest.raises(EmptySetError):
            FiniteSystem(SpaceDescriptor.plane(1), [(Dyadic(0),)], [0], labels={"A": []})

    def test_threshold(self, line_system):
        """Test strict and non-strict integer thresholds"""
        assert line_system.scale == 4
        assert line_system.threshold(Fraction(1, 4)) == 1
        assert line_system.threshold(Fraction(1, 3)) == 2
        assert line_system.threshold(Fraction(1, 3), strict=False) == 1
        assert line_system.from_grid(2) == Fraction(1, 2)

    def test_min_gap(self, line_system):
        """Test the minimum distinct distance"""
        assert line_system.min_gap == Fraction(1, 4)

    def test_min_gap_single_point(self):
        """Test a one-point system has no minimum gap"""
        sys = FiniteSystem(SpaceDescriptor.plane(1), [(Dyadic(0),)], [0])
        with pytest.raises(EmptySetError, match="distinct points"):
            sys.min_gap

    def test_hausdorff_ids(self, line_system):
        """Test vectorized Hausdorff distances"""
        assert line_system.hausdorff_ids([0], [0, 3]) == Fraction(3, 4)
        assert line_system.hausdorff_units([2, 3], [3, 2]) == 0
        assert line_system.family_gap_ids([(0,), (1,)], [(0,), (2, 3)]) == Fraction(1, 4)

    def test_circle_gaps(self):
        """Test grid distances wrap on circle factors"""
        sys = FiniteSystem(
            SpaceDescriptor.circle(8),
            [(Dyadic(0),), (Dyadic(7, 3),), (Dyadic(1, 1),)],
            [1, 2, 0],
        )
        assert sys.pair_gaps([0, 0], [1, 2]).tolist() == [1, 4]
        assert sys.hausdorff_ids([0], [1]) == Fraction(1, 8)

    @settings(max_examples=60, deadline=None)
    @given(
        st.sets(st.integers(0, 11), min_size=1),
        st.sets(st.integers(0, 11), min_size=1),
    )
    def test_hausdorff_matches_reference(self, A, B):
        """Test the vectorized form agrees with the double loop"""
        sys = small_plane()
        expected = hausdorff(sys.points_of(sorted(A)), sys.points_of(sorted(B)))
        assert sys.hausdorff_ids(sorted(A), sorted(B)) == expected

    def test_equality(self, line_system):
        """Test equality ignores the name"""
        other = load_system(SYSTEM_TEXT, name="other")
        assert line_system == other
        assert line_system != small_plane()


class TestTextFormat:
    """Tests for loading and saving systems"""

    def test_save_then_load(self, line_system):
        """Test saving produces text that loads back to an equal system"""
        text = save_system(line_system)
        assert text.startswith("# shadowlab system: line\nspace plane\n")
        assert "point 1 1/2^2" in text
        assert "set pair 2 3" in text
        assert load_system(text) == line_system

    def test_circle_header(self):
        """Test circle systems keep their grid"""
        sys = load_system("space circle q=3\npoint 0 0/2^0\npoint 1 1/3\nmap 0 1\nmap 1 0\n")
        assert sys.space == SpaceDescriptor.circle(3)
        assert sys.scale == 3

    @pytest.mark.parametrize(
        "space,coords",
        [
            (SpaceDescriptor.circle(8), [(Fraction(j, 8),) for j in range(8)]),
            (
                SpaceDescriptor.torus(2),
                [(Fraction(i, 2), Fraction(j, 2)) for i in (0, 1) for j in (0, 1)],
            ),
            (SpaceDescriptor.stack(4), [(Fraction(j, 4), Dyadic(1, 1)) for j in range(4)]),
        ],
    )
    def test_round_trip_keeps_space(self, space, coords):
        """Test non-planar systems load back equal and measurable against the original"""
        sys = FiniteSystem(space, coords, [(i + 1) % len(coords) for i in range(len(coords))])
        back = load_system(save_system(sys))
        assert back.space == space
        assert back == sys
        assert distance(back.points[0], sys.points[1]) == distance(sys.points[0], sys.points[1])

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("point 0 0/2^0\n", "line 1: first line must declare the space"),
            ("space circle\npoint 0 0/2^0\nmap 0 0\n", "line 1:"),
            ("space plane\npoint 0 1/2\nmap 0 0\n", "line 2: non-canonical"),
            ("space plane\npoint 0 0/2^0\npoint 0 1/2^0\n", "line 3: duplicate point id 0"),
            ("space plane\npoint 1 0/2^0\n", "consecutive"),
            ("space plane\npoint 0 0/2^0\nmap 0 3\n", "line 3: map target 3"),
            ("space plane\npoint 0 0/2^0\nmap 0 0\nmap 0 0\n", "line 4: duplicate map"),
            ("space plane\npoint 0 0/2^0\npoint 1 1/2^0\nmap 0 1\n", "not total"),
            ("space plane\npoint 0 0/2^0\nmap 0 0\nwarp 0\n", "unknown keyword 'warp'"),
            ("space plane\npoint 0 0/2^0\npoint 1 1/2^0 0/2^0\n", "mix"),
            ("space plane\npoint 0 0/2^0\nmap 0 0\nset A 4\n", "missing id 4"),
            ("space plane\n", "no points"),
            ("", "missing space"),
        ],
    )
    def test_parse_errors(self, text, fragment):
        """Test malformed system text"""
        with pytest.raises(SystemParseError) as exc_info:
            load_system(text)
        assert fragment in str(exc_info.value)

    def test_coincident_points_rejected(self):
        """Test two points with the same coordinates"""
        text = "space plane\npoint 0 0/2^0\npoint 1 0/2^0\nmap 0 1\nmap 1 0\n"
        with pytest.raises(SystemParseError, match="coincide"):
            load_system(text)

    def test_load_sets(self):
        """Test standalone set files"""
        sets = load_sets("# extras\nset A 0 2\nset B 1\n", size=3)
        assert sets == {"A": (0, 2), "B": (1,)}
        with pytest.raises(SystemParseError, match="line 1"):
            load_sets("point 0 0/2^0\n", size=3)
        with pytest.raises(SystemParseError, match="duplicate set name"):
            load_sets("set A 0\nset A 1\n", size=3)

    def test_grid_dtype(self, line_system):
        """Test small systems use machine integers"""
        assert line_system.grid.dtype == np.int64
