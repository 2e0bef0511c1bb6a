"""
Spaces, points and exact metrics.

Three ambient metrics are supported, all exact:

- line/plane coordinates use the max (L-infinity) metric,
- circle coordinates are residues in [0, 1) with the wraparound metric
  ``min(|a - b|, 1 - |a - b|)``,
- products (torus, circle stack) take the max of the component metrics.

Point sets are handled as canonical tuples of point ids (``PointSet``);
the functions here work on :class:`Point` objects so they can be used
without a system. :class:`shadowlab.systems.FiniteSystem` offers
vectorized versions of :func:`hausdorff` and :func:`family_gap` over ids.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .dyadic import as_exact
from .exceptions import EmptySetError, IncompatibleSpaceError, InvalidParameterError

PointSet = Tuple[int, ...]
SetFamily = List[PointSet]

SPACE_KINDS = ("plane", "circle", "torus", "stack")


@dataclass(frozen=True)
class SpaceDescriptor:
    """
    Ambient space of a finite system.

    Parameters
    ----------
    kind : str
        One of ``plane``, ``circle``, ``torus`` or ``stack``.
    q : int, optional
        Denominator grid of the circle factor(s); required for every kind
        except ``plane``.
    dim : int, default 2
        Number of line coordinates of a ``plane`` (1 for an interval);
        the other kinds set it from their factors.
    """

    kind: str
    q: Optional[int] = None
    dim: int = 2

    def __post_init__(self):
        if self.kind not in SPACE_KINDS:
            raise InvalidParameterError("kind", self.kind, SPACE_KINDS)
        if self.kind == "plane":
            if self.dim not in (1, 2):
                raise InvalidParameterError("dim", self.dim, (1, 2))
            if self.q is not None:
                raise InvalidParameterError("q", self.q)
        else:
            if self.q is None or self.q < 1:
                raise InvalidParameterError("q", self.q)
            # dim is fixed by the kind outside the plane
            object.__setattr__(self, "dim", len(self.factors))

    @classmethod
    def plane(cls, dim: int = 2) -> "SpaceDescriptor":
        return cls("plane", None, dim)

    @classmethod
    def circle(cls, q: int) -> "SpaceDescriptor":
        return cls("circle", q, 1)

    @classmethod
    def torus(cls, q: int) -> "SpaceDescriptor":
        return cls("torus", q, 2)

    @classmethod
    def stack(cls, q: int) -> "SpaceDescriptor":
        return cls("stack", q, 2)

    @property
    def factors(self) -> Tuple[str, ...]:
        """Metric rule of each coordinate, ``line`` or ``circle``"""
        if self.kind == "plane":
            return ("line",) * self.dim
        if self.kind == "circle":
            return ("circle",)
        if self.kind == "torus":
            return ("circle", "circle")
        return ("circle", "line")

    @property
    def dimension(self) -> int:
        return len(self.factors)

    def header(self) -> str:
        """The ``space`` line of the system text format"""
        if self.kind == "plane":
            return "space plane"
        return f"space {self.kind} q={self.q}"

    def check_coords(self, coords: Sequence[Fraction]) -> None:
        if len(coords) != self.dimension:
            raise InvalidParameterError("coords", tuple(str(c) for c in coords))
        for value, factor in zip(coords, self.factors):
            if factor == "circle" and (
                not 0 <= value < 1 or (value * self.q).denominator != 1
            ):
                raise InvalidParameterError("circle coordinate", value)


@dataclass(frozen=True)
class Point:
    """A point of a finite system: its id, exact coordinates and space"""

    id: int
    coords: Tuple[Fraction, ...]
    space: SpaceDescriptor

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_exact(c) for c in self.coords))
        self.space.check_coords(self.coords)


def point_set(ids: Iterable[int]) -> PointSet:
    """Canonical (sorted, duplicate-free) point set"""
    return tuple(sorted(set(int(i) for i in ids)))


def canonical_family(sets: Iterable[Iterable[int]]) -> SetFamily:
    """Sort a family lexicographically and drop duplicate members"""
    return sorted({point_set(s) for s in sets})


def _circle_gap(a: Fraction, b: Fraction) -> Fraction:
    gap = abs(a - b)
    return min(gap, 1 - gap)


def distance(p: Point, q: Point) -> Fraction:
    """
    Exact distance between two points of the same space.

    Raises
    ------
    IncompatibleSpaceError
        If the points belong to different spaces.
    """
    if p.space != q.space:
        raise IncompatibleSpaceError(
            f"Cannot measure between '{p.space.header()}' and '{q.space.header()}'"
        )
    gaps = [
        _circle_gap(a, b) if factor == "circle" else abs(a - b)
        for a, b, factor in zip(p.coords, q.coords, p.space.factors)
    ]
    return as_exact(max(gaps))


def hausdorff(A: Sequence[Point], B: Sequence[Point]) -> Fraction:
    """
    Hausdorff distance between two nonempty finite point collections.

    Returns ``max(max_a min_b d(a, b), max_b min_a d(a, b))`` computed by a
    plain double loop.
    """
    if not A or not B:
        raise EmptySetError("point set")
    forward = max(min(distance(a, b) for b in B) for a in A)
    backward = max(min(distance(a, b) for a in A) for b in B)
    return max(forward, backward)


def family_gap(
    F: Sequence[Sequence[Point]],
    G: Sequence[Sequence[Point]],
    set_distance: Optional[Callable[..., Fraction]] = None,
) -> Fraction:
    """
    One-sided gap ``max_{A in F} min_{B in G} d_H(A, B)`` between families.

    Parameters
    ----------
    F, G : sequence of point collections
        Nonempty families.
    set_distance : callable, optional
        Replacement for :func:`hausdorff`, e.g. a system's vectorized one.
    """
    if not F or not G:
        raise EmptySetError("set family")
    measure = set_distance or hausdorff
    return max(min(measure(A, B) for B in G) for A in F)
