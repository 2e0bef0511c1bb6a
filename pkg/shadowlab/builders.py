"""
Finite truncations of the example systems.

Builders
--------
- square : points spiral outward from the origin toward the square Q and
  inward from outside toward Q; Q itself has fixed vertices and sides that
  flow anticlockwise between them.
- periodic_cofinal : Q as in ``square`` surrounded by rings R_n that are
  pure anticlockwise cycles.
- circle_stack : circles at heights 0 and 1/n, each rotated by p/q.
- torus : the q-by-q grid rotated horizontally by p/q (a rational stand-in
  for an irrational rotation, e.g. the convergent 55/89).
- square_sequence : Q-style squares accumulating on Q and on 2Q, joined by
  rings of connecting orbits.
- interval_square : x -> x^2 on a dyadic grid of [0, 1], rounded down.

Whenever an index of the infinite construction would exceed the truncation
level, the point maps to itself instead (clamping).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .dyadic import Dyadic, format_scalar
from .exceptions import InvalidParameterError
from .metric import SpaceDescriptor
from .systems import FiniteSystem

Coords = Tuple[Fraction, ...]


@dataclass(frozen=True)
class TruncationParams:
    """
    Parameters of a truncated construction.

    Parameters
    ----------
    level : int
        Truncation level N (``n_max`` for ``circle_stack``, ``k`` for
        ``interval_square``).
    grid_q : int, optional
        Circle grid denominator (``circle_stack``, ``torus``).
    rot_p : int, optional
        Rotation numerator, coprime to ``grid_q``.
    depth : int, optional
        Side depth M of the squares in ``square_sequence``.
    rings : int, optional
        Connecting rings K per gap in ``square_sequence``.
    """

    level: int = 2
    grid_q: Optional[int] = None
    rot_p: Optional[int] = None
    depth: Optional[int] = None
    rings: Optional[int] = None


class _Builder:
    """Collects points by coordinates and resolves the map at the end"""

    def __init__(self, space: SpaceDescriptor):
        self.space = space
        self.coords: List[Coords] = []
        self.index: Dict[Coords, int] = {}
        self.targets: Dict[int, Coords] = {}
        self.labels: Dict[str, List[Coords]] = {}

    def add(self, point: Coords) -> int:
        if point not in self.index:
            self.index[point] = len(self.coords)
            self.coords.append(point)
        return self.index[point]

    def send(self, src: Coords, dst: Coords) -> None:
        pid = self.add(src)
        previous = self.targets.get(pid)
        if previous is not None and previous != dst:
            raise ValueError(f"conflicting images for {src}: {previous} and {dst}")
        self.targets[pid] = dst

    def fix(self, point: Coords) -> None:
        self.send(point, point)

    def path(self, points: Sequence[Coords], last: Optional[Coords] = None) -> None:
        """Map each point to the next; the last one goes to ``last`` (or stays)"""
        for src, dst in zip(points, points[1:]):
            self.send(src, dst)
        self.send(points[-1], points[-1] if last is None else last)

    def cycle(self, points: Sequence[Coords]) -> None:
        self.path(points, points[0])

    def label(self, name: str, points: Sequence[Coords]) -> None:
        self.labels[name] = list(points)

    def build(self, name: str) -> FiniteSystem:
        images = []
        for pid, point in enumerate(self.coords):
            if pid not in self.targets:
                raise ValueError(f"no image assigned to {point}")
            images.append(self.index[self.targets[pid]])
        labels = {
            label: [self.index[p] for p in points]
            for label, points in self.labels.items()
        }
        return FiniteSystem(self.space, self.coords, images, labels=labels, name=name)


def side_position(k: int) -> Dyadic:
    """``sign(k) (2^|k| - 1) / 2^|k|``, the k-th point along a side of Q"""
    a = abs(k)
    value = Dyadic((1 << a) - 1, a)
    return -value if k < 0 else value


def _ring(h: Fraction, positions: Sequence[Fraction]) -> List[Coords]:
    """
    Boundary of the square of half-width ``h`` in anticlockwise order.

    Starts at the corner ``(h, h)``; ``positions`` are the side coordinates
    strictly between the corners, in descending order.
    """
    ascending = list(reversed(positions))
    return (
        [(h, h)]
        + [(x, h) for x in positions]
        + [(-h, h)]
        + [(-h, y) for y in positions]
        + [(-h, -h)]
        + [(x, -h) for x in ascending]
        + [(h, -h)]
        + [(h, y) for y in ascending]
    )


def _q_style(b: _Builder, h: Fraction, positions: Sequence[Fraction]) -> List[Coords]:
    """Square with fixed corners and sides flowing anticlockwise, clamped at the end"""
    ring = _ring(h, positions)
    corners = ring[:: len(positions) + 1]
    for corner in corners:
        b.fix(corner)
    side = len(positions)
    for start in range(4):
        offset = start * (side + 1) + 1
        b.path(ring[offset : offset + side])
    return ring


def _depth_positions(depth: int, scale: Fraction = Dyadic(1)) -> List[Fraction]:
    return [scale * side_position(k) for k in range(depth, -depth - 1, -1)]


def _check_level(level: int, minimum: int = 2, name: str = "level") -> None:
    if not isinstance(level, int) or level < minimum:
        raise InvalidParameterError(name, level)


def square(level: int) -> FiniteSystem:
    """
    Truncated square system.

    The origin, the corners of Q and (0, 2) are fixed. Inner rings Q_n
    (half-width ``(2^n - 1)/2^n``) spiral outward, each corner stepping up
    to the next ring; outer rings R_n (half-width ``1 + 1/2^n``) run
    anticlockwise and leave through one transition point toward the next
    ring out, the last one climbing the feeder toward (0, 2).
    """
    _check_level(level)
    N = level
    b = _Builder(SpaceDescriptor.plane(2))
    zero, one, two = Dyadic(0), Dyadic(1), Dyadic(2)

    b.fix((zero, zero))
    b.label("origin", [(zero, zero)])
    q_ring = _q_style(b, one, _depth_positions(N))
    b.label("Q", q_ring)
    b.fix((zero, two))

    for n in range(2, N + 1):
        b.send((zero, Dyadic(1, n)), (zero, Dyadic(1, n - 1)))

    upper = [(zero, Dyadic(3, 1) + Dyadic((1 << n) - 1, n + 1)) for n in range(N + 1)]
    b.path(upper)

    for n in range(1, N + 1):
        r = side_position(n)
        ring = _ring(r, [side_position(m) for m in range(n - 1, -n, -1)])
        b.path(ring[1:], ring[0])
        if n < N:
            b.send(ring[0], (r, side_position(n + 1)))
        else:
            b.fix(ring[0])
        b.label(f"Q_{n}", ring)

    for n in range(1, N + 1):
        s = one + Dyadic(1, n)
        ring = _ring(s, [side_position(m) for m in range(n, -n - 1, -1)])
        exit_point = (-side_position(n - 1), s)
        if n == 1:
            exit_target = upper[1]
        else:
            exit_target = (-side_position(n - 1), one + Dyadic(1, n - 1))
        for src, dst in zip(ring, ring[1:] + ring[:1]):
            b.send(src, exit_target if src == exit_point else dst)
        b.label(f"R_{n}", ring)

    return b.build(f"square N={N}")


def periodic_cofinal(level: int) -> FiniteSystem:
    """Q as in :func:`square`, surrounded by rings R_n that are pure cycles"""
    _check_level(level)
    N = level
    b = _Builder(SpaceDescriptor.plane(2))
    one = Dyadic(1)
    b.label("Q", _q_style(b, one, _depth_positions(N)))
    for n in range(1, N + 1):
        s = one + Dyadic(1, n)
        ring = _ring(s, [side_position(m) for m in range(n, -n - 1, -1)])
        b.cycle(ring)
        b.label(f"R_{n}", ring)
    return b.build(f"periodic_cofinal N={N}")


def _check_rotation(q: int, p: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise InvalidParameterError("grid_q", q)
    if not isinstance(p, int) or math.gcd(p, q) != 1:
        raise InvalidParameterError("rot_p", p, [f"integers coprime to {q}"])


def circle_stack(n_max: int, q: int = 8, p: int = 3) -> FiniteSystem:
    """Circles of q points at heights 0 and 1/n (n <= n_max), each rotated by p/q"""
    _check_level(n_max, 1, "n_max")
    _check_rotation(q, p)
    heights = [Dyadic(0)] + [Fraction(1, n) for n in range(1, n_max + 1)]
    coords = []
    images = []
    labels = {}
    for f, h in enumerate(heights):
        labels[f"fiber_{format_scalar(h)}"] = range(f * q, (f + 1) * q)
        for j in range(q):
            coords.append((Fraction(j, q), h))
            images.append(f * q + (j + p) % q)
    return FiniteSystem(
        SpaceDescriptor.stack(q),
        coords,
        images,
        labels=labels,
        name=f"circle_stack n_max={n_max} q={q} p={p}",
    )


def torus(q: int = 89, p: int = 55) -> FiniteSystem:
    """The q-by-q torus grid with (i, j) -> (i + p mod q, j)"""
    _check_rotation(q, p)
    coords = []
    images = []
    labels = {}
    for j in range(q):
        labels[f"fiber_{format_scalar(Fraction(j, q))}"] = range(j * q, (j + 1) * q)
        for i in range(q):
            coords.append((Fraction(i, q), Fraction(j, q)))
            images.append(j * q + (i + p) % q)
    return FiniteSystem(
        SpaceDescriptor.torus(q), coords, images, labels=labels, name=f"torus q={q} p={p}"
    )


def interval_square(level: int) -> FiniteSystem:
    """x -> x^2 on {i/2^k}, rounded down to the grid; 0 and 1 stay fixed"""
    _check_level(level)
    k = level
    coords = [(Dyadic(i, k),) for i in range((1 << k) + 1)]
    images = [(i * i) >> k for i in range((1 << k) + 1)]
    return FiniteSystem(
        SpaceDescriptor.plane(1), coords, images, name=f"interval_square k={k}"
    )


def square_sequence_scales(level: int) -> List[Fraction]:
    """Scales of the squares: 1, 2, 1 + 1/2^n and 2 - 1/2^n for n <= level"""
    scales = {Dyadic(1), Dyadic(2)}
    for n in range(1, level + 1):
        scales.add(Dyadic(1) + Dyadic(1, n))
        scales.add(Dyadic(2) - Dyadic(1, n))
    return sorted(scales)


def square_sequence(level: int, depth: Optional[int] = None, rings: int = 2) -> FiniteSystem:
    """
    Squares accumulating on Q and on 2Q, joined by rings.

    Every square is the Q-style boundary of depth M scaled by its scale.
    Consecutive squares of the inner chain (scales 1 + 1/2^n) and of the
    outer chain (scales 2 - 1/2^n) are joined by K rings with the same
    side pattern at evenly spaced scales; ring corners step outward to the
    next ring and the last ring enters the outer square. In every gap the
    ring closest to the chain's limit square (Q or 2Q) closes into a cycle.
    """
    _check_level(level)
    N = level
    M = N if depth is None else depth
    K = rings
    _check_level(M, 1, "depth")
    _check_level(K, 1, "rings")
    b = _Builder(SpaceDescriptor.plane(2))
    coefficients = _depth_positions(M)

    for s in square_sequence_scales(N):
        ring = _q_style(b, s, [s * c for c in coefficients])
        if s == 1:
            b.label("Q", ring)
        elif s == 2:
            b.label("2Q", ring)
        else:
            b.label(f"square_{format_scalar(s)}", ring)

    gaps = [
        (Dyadic(1) + Dyadic(1, n), Dyadic(1) + Dyadic(1, n - 1), 1)
        for n in range(2, N + 1)
    ] + [
        (Dyadic(2) - Dyadic(1, n), Dyadic(2) - Dyadic(1, n + 1), K)
        for n in range(1, N)
    ]
    for inner, outer, closed in gaps:
        layers = []
        for j in range(1, K + 1):
            h = inner + (outer - inner) * Fraction(j, K + 1)
            layers.append(_ring(h, [h * c for c in coefficients]))
        for j, ring in enumerate(layers, start=1):
            if j == closed:
                b.cycle(ring)
                b.label(f"ring_{format_scalar(ring[0][0])}", ring)
                continue
            if j < K:
                entry = layers[j][1]
            else:
                entry = (outer * coefficients[0], outer)
            b.path(ring[1:], ring[0])
            b.send(ring[0], entry)

    return b.build(f"square_sequence N={N} M={M} K={K}")


BUILDERS: Dict[str, Callable[[TruncationParams], FiniteSystem]] = {
    "square": lambda p: square(p.level),
    "circle_stack": lambda p: circle_stack(
        p.level, 8 if p.grid_q is None else p.grid_q, 3 if p.rot_p is None else p.rot_p
    ),
    "torus": lambda p: torus(
        89 if p.grid_q is None else p.grid_q, 55 if p.rot_p is None else p.rot_p
    ),
    "periodic_cofinal": lambda p: periodic_cofinal(p.level),
    "square_sequence": lambda p: square_sequence(
        p.level, p.depth, 2 if p.rings is None else p.rings
    ),
    "interval_square": lambda p: interval_square(p.level),
}


def build_system(kind: str, params: Optional[TruncationParams] = None) -> FiniteSystem:
    """
    Build one of the example systems.

    Parameters
    ----------
    kind : str
        Builder name, one of :data:`BUILDERS`.
    params : TruncationParams, optional
        Truncation parameters; defaults to level 2 and builder defaults.

    Raises
    ------
    InvalidParameterError
        For an unknown builder or invalid parameters.
    """
    if kind not in BUILDERS:
        raise InvalidParameterError("kind", kind, sorted(BUILDERS))
    return BUILDERS[kind](params or TruncationParams())
