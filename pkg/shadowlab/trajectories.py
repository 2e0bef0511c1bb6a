"""
Coded orbits, limit sets and pseudo-orbit constructions.

In a finite system an asymptotic pseudo-orbit is eventually exact in both
time directions, so every two-sided sequence of interest is coded as::

    ... left_cycle left_cycle | left_tail core right_tail | right_cycle right_cycle ...

Index 0 is the first entry of ``core`` (or of ``right_tail`` when the core
is empty). Limit sets of a coded orbit are exactly the point sets of its
two cycles.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .chain_graph import ChainGraph, build_chain_graph, require_ict
from .dyadic import as_exact, format_scalar, parse_scalar
from .exceptions import InvalidParameterError, PreconditionError, SystemParseError
from .metric import PointSet, SetFamily, canonical_family, point_set
from .systems import FiniteSystem, PointLike
from .utils import exact_parameter

Ids = Tuple[int, ...]


def _primitive(cycle: Ids) -> Ids:
    period = len(cycle)
    for d in range(1, period + 1):
        if period % d == 0 and cycle[:d] * (period // d) == cycle:
            return cycle[:d]
    return cycle


@dataclass(frozen=True)
class OrbitSuffix:
    """Forward orbit of a point: a finite ``tail`` then a repeating ``cycle``"""

    tail: Ids
    cycle: Ids

    def point_at(self, i: int) -> int:
        if i < len(self.tail):
            return self.tail[i]
        return self.cycle[(i - len(self.tail)) % len(self.cycle)]

    def decode(self, n: int) -> List[int]:
        """The first ``n`` points ``x, f(x), ..., f^(n-1)(x)``"""
        return [self.point_at(i) for i in range(n)]


@dataclass(frozen=True)
class LimitPair:
    alpha_set: PointSet
    omega_set: PointSet


_ORBIT_RE = re.compile(
    r"^\[([0-9 ]*)\]\s*\[([0-9 ]*)\]\s*\[([0-9 ]*)\]\s*\[([0-9 ]*)\]\s*"
    r"\[([0-9 ]*)\]\s+jump=(\S+)$"
)


@dataclass(frozen=True)
class CodedOrbit:
    """
    Eventually periodic two-sided (pseudo-)orbit.

    Parameters
    ----------
    left_cycle : tuple of int
        Nonempty period of the backward tail.
    left_tail, core, right_tail : tuple of int
        Finite middle section.
    right_cycle : tuple of int
        Nonempty period of the forward tail.
    jump_bound : Fraction
        Largest step error ``d(f(x_i), x_{i+1})`` over the whole sequence.
    """

    left_cycle: Ids
    left_tail: Ids
    core: Ids
    right_tail: Ids
    right_cycle: Ids
    jump_bound: Fraction = field(default_factory=lambda: as_exact(0))

    def __post_init__(self):
        for name in ("left_cycle", "left_tail", "core", "right_tail", "right_cycle"):
            object.__setattr__(self, name, tuple(int(i) for i in getattr(self, name)))
        if not self.left_cycle or not self.right_cycle:
            raise InvalidParameterError("cycle", "empty")
        object.__setattr__(self, "jump_bound", as_exact(self.jump_bound))

    @classmethod
    def from_cycle(cls, cycle: Sequence[int]) -> "CodedOrbit":
        """The exact full trajectory running around one cycle"""
        return cls(tuple(cycle), (), (), (), tuple(cycle), as_exact(0))

    @property
    def suffix_start(self) -> int:
        """Index of the first entry of the right cycle block"""
        return len(self.core) + len(self.right_tail)

    @property
    def prefix_start(self) -> int:
        """Index of the first entry of the left tail"""
        return -len(self.left_tail)

    @property
    def is_exact(self) -> bool:
        return self.jump_bound == 0

    @property
    def stabilization_index(self) -> int:
        """Smallest ``n`` past which both tail sets are the cycle sets"""
        return max(self.suffix_start, len(self.left_tail) + 1)

    def at(self, i: int) -> int:
        """The point ``x_i``"""
        if i < self.prefix_start:
            return self.left_cycle[(i - self.prefix_start) % len(self.left_cycle)]
        if i < 0:
            return self.left_tail[i - self.prefix_start]
        if i < len(self.core):
            return self.core[i]
        if i < self.suffix_start:
            return self.right_tail[i - len(self.core)]
        return self.right_cycle[(i - self.suffix_start) % len(self.right_cycle)]

    def decode(self, start: int, stop: int) -> List[int]:
        """The points ``x_start, ..., x_(stop-1)``"""
        return [self.at(i) for i in range(start, stop)]

    def limit_pair(self) -> LimitPair:
        return LimitPair(point_set(self.left_cycle), point_set(self.right_cycle))

    def support(self) -> PointSet:
        return point_set(
            self.left_cycle + self.left_tail + self.core + self.right_tail + self.right_cycle
        )

    def forward_tail_set(self, n: int) -> PointSet:
        """Point set of ``{x_i : i >= n}``"""
        stop = max(n, self.suffix_start) + len(self.right_cycle)
        return point_set(self.decode(n, stop))

    def backward_tail_set(self, n: int) -> PointSet:
        """Point set of ``{x_i : i <= -n}``"""
        start = min(-n, self.prefix_start - 1) - len(self.left_cycle) + 1
        return point_set(self.decode(start, -n + 1))

    def window(self) -> Tuple[int, int]:
        """Index range covering every distinct step of the sequence"""
        return (
            self.prefix_start - len(self.left_cycle) - 1,
            self.suffix_start + len(self.right_cycle) + 1,
        )

    def normalized(self) -> "CodedOrbit":
        """
        Same sequence with primitive cycles and tails absorbed into them.

        Decoding is unchanged on every index.
        """
        left = _primitive(self.left_cycle)
        right = _primitive(self.right_cycle)
        left_tail = self.left_tail
        right_tail = self.right_tail
        while left_tail and left_tail[0] == left[0]:
            left = left[1:] + left[:1]
            left_tail = left_tail[1:]
        while right_tail and right_tail[-1] == right[-1]:
            right = right[-1:] + right[:-1]
            right_tail = right_tail[:-1]
        return CodedOrbit(left, left_tail, self.core, right_tail, right, self.jump_bound)

    def to_text(self) -> str:
        blocks = [
            self.left_cycle,
            self.left_tail,
            self.core,
            self.right_tail,
            self.right_cycle,
        ]
        body = " ".join("[" + " ".join(str(i) for i in b) + "]" for b in blocks)
        return f"{body} jump={format_scalar(self.jump_bound)}"

    @classmethod
    def from_text(cls, text: str) -> "CodedOrbit":
        match = _ORBIT_RE.match(text.strip())
        if not match:
            raise SystemParseError(f"malformed coded orbit '{text.strip()}'")
        blocks = [tuple(int(t) for t in g.split()) for g in match.groups()[:5]]
        return cls(*blocks, jump_bound=parse_scalar(match.group(6)))

    def to_dict(self) -> Dict[str, object]:
        return {
            "left_cycle": list(self.left_cycle),
            "left_tail": list(self.left_tail),
            "core": list(self.core),
            "right_tail": list(self.right_tail),
            "right_cycle": list(self.right_cycle),
            "jump_bound": format_scalar(self.jump_bound),
        }


def jump_bound_of(sys: FiniteSystem, orbit: CodedOrbit) -> Fraction:
    """Exact largest step error of a coded sequence in ``sys``"""
    start, stop = orbit.window()
    xs = np.asarray(orbit.decode(start, stop), dtype=np.int64)
    gaps = sys.pair_gaps(sys.map[xs[:-1]], xs[1:])
    return sys.from_grid(int(gaps.max()))


def coded_orbit(
    sys: FiniteSystem,
    left_cycle: Sequence[int],
    left_tail: Sequence[int],
    core: Sequence[int],
    right_tail: Sequence[int],
    right_cycle: Sequence[int],
) -> CodedOrbit:
    """Build a coded orbit of ``sys`` with its jump bound computed exactly"""
    for block in (left_cycle, left_tail, core, right_tail, right_cycle):
        if block:
            sys.check_ids(block)
    draft = CodedOrbit(left_cycle, left_tail, core, right_tail, right_cycle)
    return CodedOrbit(
        draft.left_cycle,
        draft.left_tail,
        draft.core,
        draft.right_tail,
        draft.right_cycle,
        jump_bound_of(sys, draft),
    )


# -- exact limit sets ------------------------------------------------------


def forward_orbit(sys: FiniteSystem, x: PointLike) -> OrbitSuffix:
    """Iterate ``f`` from ``x`` until a point repeats"""
    v = sys.point(x).id
    seen: Dict[int, int] = {}
    path: List[int] = []
    images = sys.map
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = int(images[v])
    entry = seen[v]
    return OrbitSuffix(tuple(path[:entry]), tuple(path[entry:]))


def omega_limit(sys: FiniteSystem, x: PointLike) -> PointSet:
    return point_set(forward_orbit(sys, x).cycle)


def _exact_ancestors(sys: FiniteSystem, x: int) -> set:
    reached = {x}
    frontier = [x]
    preimage_lists = sys.preimage_lists
    while frontier:
        nxt = []
        for v in frontier:
            for u in preimage_lists[v]:
                if u not in reached:
                    reached.add(u)
                    nxt.append(u)
        frontier = nxt
    return reached


def alpha_family(sys: FiniteSystem, x: PointLike, delta=None) -> SetFamily:
    """
    α-limit sets of the backward trajectories through ``x``.

    Without ``delta`` these are the cycles from which ``x`` is reached by
    the map itself; with ``delta`` the cycles from which ``x`` is reached
    by a δ-chain. Empty when ``x`` has no infinite backward trajectory.
    """
    pid = sys.point(x).id
    if delta is None:
        ancestors = _exact_ancestors(sys, pid)
        hits = [c for c in sys.cycle_orders if c[0] in ancestors]
    else:
        reaching = build_chain_graph(sys, delta).reaching_mask([pid])
        hits = [c for c in sys.cycle_orders if reaching[c[0]]]
    return canonical_family(hits)


def gamma_limit(sys: FiniteSystem, x: PointLike) -> PointSet:
    """
    Points ``y`` of ``ω(x)`` with ``f^n(y) = x`` for infinitely many ``n``.

    In a finite system that happens exactly when ``y`` is periodic and
    ``x`` lies on its forward orbit, so the result is ``ω(x)`` when ``x``
    is periodic and empty otherwise.
    """
    pid = sys.point(x).id
    ancestors = _exact_ancestors(sys, pid)
    return tuple(y for y in omega_limit(sys, pid) if y in ancestors)


# -- trajectory search ------------------------------------------------------


def _within(units: int, bound: int, strict: bool) -> bool:
    return units < bound if strict else units <= bound


def full_trajectory_with(
    sys: FiniteSystem,
    A,
    B,
    tau,
    strict: bool = False,
    delta=None,
) -> Optional[CodedOrbit]:
    """
    Find a full trajectory whose limit sets approximate ``A`` and ``B``.

    Parameters
    ----------
    sys : FiniteSystem
        The system.
    A, B : iterable of int
        Targets for the α- and ω-limit set.
    tau : Fraction
        Hausdorff tolerance (``0`` demands equality).
    strict : bool, default False
        Use ``d_H < tau`` instead of ``d_H <= tau``.
    delta : Fraction, optional
        When given, the trajectory may be a δ-pseudo-trajectory moving
        from one cycle to a δ-reachable one.

    Returns
    -------
    CodedOrbit or None
        The first matching orbit in canonical cycle order. Without
        ``delta`` it is an exact cycle orbit; otherwise cycle, bridge and
        cycle with ``jump_bound < delta``.
    """
    tau = exact_parameter("tau", tau, allow_zero=True)
    A = sys.check_ids(A)
    B = sys.check_ids(B)
    bound = sys.threshold(tau, strict=strict)
    cycles = sys.cycle_orders
    near_a = [_within(sys.hausdorff_units(c, A), bound, strict) for c in cycles]
    if B == A:
        near_b = near_a
    else:
        near_b = [_within(sys.hausdorff_units(c, B), bound, strict) for c in cycles]

    if delta is None:
        for i, loop in enumerate(cycles):
            if near_a[i] and near_b[i]:
                return CodedOrbit.from_cycle(loop)
        return None

    g = build_chain_graph(sys, delta)
    for i, first in enumerate(cycles):
        if not near_a[i]:
            continue
        reach = g.reachable_mask(first)
        for j, second in enumerate(cycles):
            if near_b[j] and reach[second[0]]:
                if i == j:
                    return CodedOrbit.from_cycle(first)
                return _bridge(sys, g, first, second)
    return None


# -- pseudo-orbit constructions ---------------------------------------------


def chain_tour(sys: FiniteSystem, A, delta) -> List[int]:
    """
    Closed δ-chain inside ``A`` visiting every point of ``A``.

    Consecutive points of ``A`` (canonical order, wrapping around) are
    joined by the lexicographically least shortest δ-chain inside ``A``.
    """
    ids = sys.check_ids(A)
    g = build_chain_graph(sys, delta)
    cached = g.tours.get(ids)
    if cached is not None:
        return list(cached)
    require_ict(g, ids)
    tour: List[int] = []
    for a, b in zip(ids, ids[1:] + ids[:1]):
        leg = g.shortest_chain(a, b, within=ids, min_steps=1)
        if leg is None:
            raise PreconditionError(f"no δ-chain inside the set from {a} to {b}")
        tour.extend(leg[:-1])
    g.tours.put(ids, tour)
    return list(tour)


def weave_pseudo_orbit(sys: FiniteSystem, A, delta) -> CodedOrbit:
    """
    Two-sided asymptotic δ-pseudo-orbit in ``A`` whose α- and ω-limit
    sets both equal ``A``.

    Raises
    ------
    PreconditionError
        If ``A`` is not ICT at ``delta``; the message names the first
        ordered pair with no δ-chain inside ``A``.
    """
    tour = chain_tour(sys, A, delta)
    return coded_orbit(sys, tour, (), (), (), tour).normalized()


def _bridge(
    sys: FiniteSystem,
    g: ChainGraph,
    left: Sequence[int],
    right: Sequence[int],
) -> CodedOrbit:
    leg = g.shortest_chain(left[0], right[0])
    if leg is None:
        raise PreconditionError(
            f"{right[0]} is not δ-chain reachable from {left[0]} at delta={g.delta}"
        )
    return coded_orbit(sys, left, (), tuple(leg[:-1]), (), right)


def bridge_pseudo_orbit(
    sys: FiniteSystem, L, R, delta, restricted: bool = True
) -> CodedOrbit:
    """
    Coded pseudo-orbit with α-limit set ``L`` and ω-limit set ``R``.

    Both ends run around woven tours of the sets. With ``restricted`` the
    middle is the lexicographically least shortest δ-chain from the left
    tour to the right tour, so every jump is below ``delta``; otherwise the
    orbit jumps straight from one tour to the other.

    Raises
    ------
    PreconditionError
        If a set is not ICT, or ``R`` is not δ-chain reachable from ``L``
        in the restricted form.
    """
    left = chain_tour(sys, L, delta)
    right = chain_tour(sys, R, delta)
    if not restricted:
        return coded_orbit(sys, left, (), (), (), right)
    return _bridge(sys, build_chain_graph(sys, delta), left, right)
