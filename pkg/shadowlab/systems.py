"""
Finite dynamical systems and their text format.

A :class:`FiniteSystem` is a finite set of points with exact coordinates in
a :class:`~shadowlab.metric.SpaceDescriptor` and a total self-map given as
an array of image ids. Internally every coordinate is also stored as an
integer multiple of ``1/scale`` (the least common denominator of all
coordinates), so distance tests reduce to exact integer comparisons that
numpy can vectorize.

Text format (one item per line, ``#`` comments and blank lines ignored)::

    space plane | space circle q=<int> | space torus q=<int> | space stack q=<int>
    point <id> <scalar> [<scalar>]
    map <src-id> <dst-id>
    set <name> <id> [<id> ...]
"""

import math
import re
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .dyadic import as_exact, parse_scalar
from .exceptions import (
    EmptySetError,
    InvalidParameterError,
    SystemParseError,
    UnknownPointError,
)
from .metric import Point, PointSet, SetFamily, SpaceDescriptor, point_set
from .settings import get_graph_cache_size
from .utils import LRUCache, scalar_list

# Upper bound on the number of integer gaps materialized at once
_BLOCK_BUDGET = 1 << 22

PointLike = Union[int, Point]


class FiniteSystem:
    """
    A finite metric space with a total self-map.

    Parameters
    ----------
    space : SpaceDescriptor
        Ambient space of every point.
    coords : sequence of tuples of exact scalars
        Coordinates of point ``i`` at position ``i``.
    images : sequence of int
        ``images[i]`` is the id of ``f(i)``.
    labels : dict, optional
        Named point sets (``"Q"``, ``"R_3"``, ...) carried along for reports.
    name : str, optional
        Free-form description, not part of equality.

    Raises
    ------
    EmptySetError
        If there are no points.
    InvalidParameterError
        If the map is not total and closed or two points coincide.
    """

    def __init__(
        self,
        space: SpaceDescriptor,
        coords: Sequence[Sequence[Fraction]],
        images: Sequence[int],
        labels: Optional[Dict[str, Iterable[int]]] = None,
        name: str = "custom",
    ):
        if not coords:
            raise EmptySetError("system")
        if len(images) != len(coords):
            raise InvalidParameterError(
                "images", f"{len(images)} entries for {len(coords)} points"
            )
        self.space = space
        self.name = name
        self.points: List[Point] = [
            Point(i, tuple(c), space) for i, c in enumerate(coords)
        ]
        size = len(self.points)
        self.map = np.asarray(images, dtype=np.int64)
        if self.map.ndim != 1 or (
            size and (self.map.min() < 0 or self.map.max() >= size)
        ):
            raise InvalidParameterError("images", "map leaves the point set")

        seen = {}
        for p in self.points:
            if p.coords in seen:
                raise InvalidParameterError(
                    "coords",
                    f"points {seen[p.coords]} and {p.id} coincide",
                )
            seen[p.coords] = p.id

        self.scale = math.lcm(
            *(c.denominator for p in self.points for c in p.coords),
            *([space.q] if space.q else []),
        )
        grid = [[int(c * self.scale) for c in p.coords] for p in self.points]
        bound = max(abs(v) for row in grid for v in row) * 4 + self.scale * 4
        dtype = np.int64 if bound < 2**62 else object
        self.grid = np.array(grid, dtype=dtype).reshape(size, space.dimension)

        self.labels: Dict[str, PointSet] = {}
        for label, ids in (labels or {}).items():
            self.labels[label] = self.check_ids(ids)

        # Recently built chain graphs, keyed by delta
        self._graph_cache: LRUCache = LRUCache(get_graph_cache_size())

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"FiniteSystem({self.name!r}, {self.space.header()!r}, points={len(self)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSystem):
            return NotImplemented
        return (
            self.space == other.space
            and [p.coords for p in self.points] == [p.coords for p in other.points]
            and np.array_equal(self.map, other.map)
            and self.labels == other.labels
        )

    __hash__ = None  # type: ignore[assignment]

    # -- ids and points -------------------------------------------------

    def point(self, p: PointLike) -> Point:
        """Resolve an id (or a point of this system) to its ``Point``"""
        pid = p.id if isinstance(p, Point) else p
        if isinstance(pid, (bool, np.bool_)) or not isinstance(pid, (int, np.integer)):
            raise UnknownPointError(pid, len(self))
        if not 0 <= int(pid) < len(self):
            raise UnknownPointError(pid, len(self))
        return self.points[int(pid)]

    def check_ids(self, ids: Iterable[PointLike]) -> PointSet:
        """Validate ids and return them as a canonical nonempty ``PointSet``"""
        resolved = point_set(self.point(i).id for i in ids)
        if not resolved:
            raise EmptySetError("point set")
        return resolved

    def image_id(self, pid: int) -> int:
        return int(self.map[self.point(pid).id])

    def points_of(self, ids: Iterable[int]) -> List[Point]:
        return [self.point(i) for i in ids]

    def find(self, *coords: Fraction) -> int:
        """Id of the point with the given exact coordinates"""
        key = tuple(as_exact(c) for c in coords)
        try:
            return self._coord_index[key]
        except KeyError:
            raise UnknownPointError(tuple(scalar_list(key))) from None

    @cached_property
    def _coord_index(self) -> Dict[Tuple[Fraction, ...], int]:
        return {p.coords: p.id for p in self.points}

    @cached_property
    def preimage_lists(self) -> List[PointSet]:
        buckets: List[List[int]] = [[] for _ in range(len(self))]
        for src, dst in enumerate(self.map.tolist()):
            buckets[dst].append(src)
        return [tuple(b) for b in buckets]

    @cached_property
    def bijective(self) -> bool:
        """True when the map is a permutation of the ids"""
        return len(np.unique(self.map)) == len(self)

    @cached_property
    def cycle_orders(self) -> List[PointSet]:
        """
        Every cycle of the map in map order, rotated to start at its
        smallest id; cycles are sorted by that id.
        """
        state = [0] * len(self)  # 0 unseen, 1 on the current path, 2 done
        images = self.map.tolist()
        cycles = []
        for start in range(len(self)):
            path = []
            v = start
            while state[v] == 0:
                state[v] = 1
                path.append(v)
                v = images[v]
            if state[v] == 1:
                loop = path[path.index(v) :]
                pivot = loop.index(min(loop))
                cycles.append(tuple(loop[pivot:] + loop[:pivot]))
            for u in path:
                state[u] = 2
        return sorted(cycles)

    @cached_property
    def periodic_mask(self) -> np.ndarray:
        """Boolean mask of the points lying on a cycle"""
        mask = np.zeros(len(self), dtype=bool)
        for loop in self.cycle_orders:
            mask[list(loop)] = True
        return mask

    # -- exact integer geometry -----------------------------------------

    def threshold(self, value: Fraction, strict: bool = True) -> int:
        """
        Integer bound equivalent to comparing a distance with ``value``.

        With ``strict`` the result ``t`` satisfies ``d < value`` iff
        ``d * scale < t``; otherwise ``d <= value`` iff ``d * scale <= t``.
        """
        scaled = Fraction(value) * self.scale
        if strict:
            return math.ceil(scaled)
        return math.floor(scaled)

    def from_grid(self, units: int) -> Fraction:
        return as_exact(Fraction(int(units), self.scale))

    def gap_matrix(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Integer distances between two arrays of grid coordinates"""
        gaps = np.abs(left[:, None, :] - right[None, :, :])
        for axis, factor in enumerate(self.space.factors):
            if factor == "circle":
                gaps[..., axis] = np.minimum(
                    gaps[..., axis], self.scale - gaps[..., axis]
                )
        return gaps.max(axis=2)

    def distance_matrix(self, A: Sequence[int], B: Sequence[int]) -> np.ndarray:
        return self.gap_matrix(
            self.grid[np.asarray(A, dtype=np.int64)],
            self.grid[np.asarray(B, dtype=np.int64)],
        )

    def _block_rows(self, width: int) -> int:
        return max(1, _BLOCK_BUDGET // max(1, width * self.space.dimension))

    def pair_gaps(self, left: Sequence[int], right: Sequence[int]) -> np.ndarray:
        """Elementwise integer distances between two equally long id arrays"""
        gaps = np.abs(
            self.grid[np.asarray(left, dtype=np.int64)]
            - self.grid[np.asarray(right, dtype=np.int64)]
        )
        for axis, factor in enumerate(self.space.factors):
            if factor == "circle":
                gaps[:, axis] = np.minimum(gaps[:, axis], self.scale - gaps[:, axis])
        return gaps.max(axis=1)

    def hausdorff_ids(self, A: Sequence[int], B: Sequence[int]) -> Fraction:
        """Vectorized Hausdorff distance between two id collections"""
        return self.from_grid(self.hausdorff_units(A, B))

    def hausdorff_units(self, A: Sequence[int], B: Sequence[int]) -> int:
        """Hausdorff distance in grid units (multiples of ``1/scale``)"""
        A = self.check_ids(A)
        B = self.check_ids(B)
        if A == B:
            return 0
        right = self.grid[np.asarray(B, dtype=np.int64)]
        col_min = None
        row_max = 0
        step = self._block_rows(len(B))
        for start in range(0, len(A), step):
            block = self.grid[np.asarray(A[start : start + step], dtype=np.int64)]
            gaps = self.gap_matrix(block, right)
            row_max = max(row_max, int(gaps.min(axis=1).max()))
            mins = gaps.min(axis=0)
            col_min = mins if col_min is None else np.minimum(col_min, mins)
        return max(row_max, int(col_min.max()))

    def family_gap_ids(self, F: SetFamily, G: SetFamily) -> Fraction:
        """``max_{A in F} min_{B in G} d_H(A, B)`` over id families"""
        if not F or not G:
            raise EmptySetError("set family")
        return max(min(self.hausdorff_ids(A, B) for B in G) for A in F)

    @cached_property
    def min_gap(self) -> Fraction:
        """
        Minimum distance between two distinct points.

        Raises
        ------
        EmptySetError
            If the system has a single point.
        """
        if len(self) == 1:
            raise EmptySetError("pair of distinct points")
        best = None
        step = self._block_rows(len(self))
        for start in range(0, len(self), step):
            rows = np.arange(start, min(start + step, len(self)))
            gaps = self.gap_matrix(self.grid[rows], self.grid)
            gaps[np.arange(len(rows)), rows] = self.scale * 4
            low = int(gaps.min())
            best = low if best is None else min(best, low)
        return self.from_grid(best)


def image(sys: FiniteSystem, p: PointLike) -> Point:
    """The image ``f(p)`` of a point"""
    return sys.points[sys.image_id(sys.point(p).id)]


def preimages(sys: FiniteSystem, p: PointLike) -> PointSet:
    """All ids ``y`` with ``f(y) = p`` (possibly empty)"""
    return sys.preimage_lists[sys.point(p).id]


# -- text format ----------------------------------------------------------

_SPACE_RE = re.compile(r"^space\s+(plane|circle|torus|stack)(?:\s+q=([1-9][0-9]*))?$")


def save_system(sys: FiniteSystem) -> str:
    """Serialize a system to its canonical text form"""
    lines = [f"# shadowlab system: {sys.name}", sys.space.header()]
    for p in sys.points:
        lines.append(
            "point " + " ".join([str(p.id)] + scalar_list(p.coords))
        )
    for src, dst in enumerate(sys.map.tolist()):
        lines.append(f"map {src} {dst}")
    for label, ids in sys.labels.items():
        lines.append("set " + " ".join([label] + [str(i) for i in ids]))
    return "\n".join(lines) + "\n"


def _parse_id(token: str, line_number: int) -> int:
    if not re.match(r"^(0|[1-9][0-9]*)$", token):
        raise SystemParseError(f"malformed id '{token}'", line_number)
    return int(token)


def parse_set_lines(
    lines: Iterable[Tuple[int, List[str]]], size: int
) -> Dict[str, PointSet]:
    """Parse tokenized ``set <name> <ids...>`` lines against ``size`` points"""
    sets: Dict[str, PointSet] = {}
    for line_number, tokens in lines:
        if len(tokens) < 3:
            raise SystemParseError("set line needs a name and ids", line_number)
        name = tokens[1]
        if name in sets:
            raise SystemParseError(f"duplicate set name '{name}'", line_number)
        ids = [_parse_id(t, line_number) for t in tokens[2:]]
        for i in ids:
            if i >= size:
                raise SystemParseError(f"set '{name}' names missing id {i}", line_number)
        sets[name] = point_set(ids)
    return sets


def _tokenized(text: str):
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line_number, line


def load_sets(text: str, size: int) -> Dict[str, PointSet]:
    """Parse a file made only of ``set`` lines (comments allowed)"""
    entries = []
    for line_number, line in _tokenized(text):
        tokens = line.split()
        if tokens[0] != "set":
            raise SystemParseError(f"expected a 'set' line, got '{tokens[0]}'", line_number)
        entries.append((line_number, tokens))
    return parse_set_lines(entries, size)


def load_system(text: str, name: str = "loaded") -> FiniteSystem:
    """
    Parse and validate the system text format.

    Raises
    ------
    SystemParseError
        On a malformed line, a non-canonical scalar, a duplicate or
        out-of-order point id, a missing or duplicate map entry, or a map
        target that is not a point. The message carries the line number.
    """
    space = None
    coords: List[Tuple[Fraction, ...]] = []
    targets: Dict[int, Tuple[int, int]] = {}
    set_lines: List[Tuple[int, List[str]]] = []

    for line_number, line in _tokenized(text):
        tokens = line.split()
        keyword = tokens[0]
        if space is None:
            match = _SPACE_RE.match(" ".join(tokens))
            if not match:
                raise SystemParseError("first line must declare the space", line_number)
            kind, q = match.groups()
            try:
                if kind == "plane":
                    space = SpaceDescriptor.plane(2)
                else:
                    space = SpaceDescriptor(kind, int(q) if q else None)
            except InvalidParameterError as exc:
                raise SystemParseError(exc.message, line_number) from None
            continue
        if keyword == "point":
            if len(tokens) not in (3, 4):
                raise SystemParseError("point line needs an id and 1 or 2 scalars", line_number)
            pid = _parse_id(tokens[1], line_number)
            if pid < len(coords):
                raise SystemParseError(f"duplicate point id {pid}", line_number)
            if pid != len(coords):
                raise SystemParseError(
                    f"point ids must be consecutive from 0; expected {len(coords)}",
                    line_number,
                )
            try:
                values = tuple(parse_scalar(t) for t in tokens[2:])
            except SystemParseError as exc:
                raise SystemParseError(exc.message, line_number) from None
            coords.append(values)
        elif keyword == "map":
            if len(tokens) != 3:
                raise SystemParseError("map line needs a source and a target", line_number)
            src = _parse_id(tokens[1], line_number)
            dst = _parse_id(tokens[2], line_number)
            if src in targets:
                raise SystemParseError(f"duplicate map entry for {src}", line_number)
            targets[src] = (dst, line_number)
        elif keyword == "set":
            set_lines.append((line_number, tokens))
        else:
            raise SystemParseError(f"unknown keyword '{keyword}'", line_number)

    if space is None:
        raise SystemParseError("missing space line")
    if not coords:
        raise SystemParseError("system has no points")
    dimensions = {len(c) for c in coords}
    if len(dimensions) != 1:
        raise SystemParseError("points mix 1 and 2 coordinates")
    if space.kind == "plane":
        space = SpaceDescriptor.plane(dimensions.pop())

    for src in range(len(coords)):
        if src not in targets:
            raise SystemParseError(f"map is not total: point {src} has no image")
    for src, (dst, line_number) in targets.items():
        if src >= len(coords):
            raise SystemParseError(f"map source {src} is not a point", line_number)
        if dst >= len(coords):
            raise SystemParseError(f"map target {dst} is not a point", line_number)
    images = [targets[src][0] for src in range(len(coords))]
    labels = parse_set_lines(set_lines, len(coords))

    try:
        return FiniteSystem(space, coords, images, labels=labels, name=name)
    except InvalidParameterError as exc:
        raise SystemParseError(exc.message) from None
