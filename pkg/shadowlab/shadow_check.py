"""
Finite-resolution deciders for shadowing variants and properties P_e/P_a.

Every checker returns a :class:`Verdict`. A failing verdict carries a
:class:`Witness` that can be re-checked independently; a passing verdict
records in ``stats`` how much of the quantification domain was examined.

Set-valued checks quantify over a candidate family of ICT sets: user
supplied sets first, then the chain components at ``delta``, then the
cycles of the map. Candidates that are not ICT at ``delta`` are skipped
with a warning.
"""

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .chain_graph import build_chain_graph, chain_components, cycles_of_map
from .dyadic import as_exact, format_scalar
from .exceptions import EmptySetError, InvalidParameterError
from .metric import PointSet, SetFamily
from .systems import FiniteSystem
from .trajectories import (
    CodedOrbit,
    bridge_pseudo_orbit,
    chain_tour,
    full_trajectory_with,
    weave_pseudo_orbit,
)
from .utils import choice, describe_set, exact_parameter, positive_int

DIRECTIONS = ("forward", "backward", "two_sided")
LIMIT_KINDS = (
    "tols",
    "delta_restricted_tols",
    "gamma_restricted_tols",
    "limit_shadowing",
    "backward_limit_shadowing",
)
COFINAL_KINDS = (
    "cofinal_orbital",
    "backward_cofinal_orbital",
    "two_sided_cofinal",
    "gamma_restricted_two_sided_cofinal",
)
PROPERTIES = ("P_e", "P_a")
FORMULATIONS = ("limit", "tail")

NamedSets = Union[Mapping[str, Iterable[int]], Sequence[Iterable[int]]]


@dataclass(frozen=True)
class VariantParams:
    """
    Parameters shared by the set-valued checkers.

    Parameters
    ----------
    delta : Fraction
        Jump tolerance of pseudo-orbits, positive.
    epsilon : Fraction, optional
        Hausdorff tolerance of the cofinal variants and of P_a.
    tau : Fraction, default 0
        Limit-set tolerance of the orbital limit variants and of P_e.
    horizon : int, default 1
        Window length of the shadowing checks.
    candidate_family : sequence of point sets, optional
        Replaces the default chain components and cycles.
    extra_sets : mapping or sequence, optional
        User sets examined before the family, optionally named.
    """

    delta: Fraction
    epsilon: Optional[Fraction] = None
    tau: Fraction = as_exact(0)
    horizon: int = 1
    candidate_family: Optional[Tuple[PointSet, ...]] = None
    extra_sets: Tuple[Tuple[str, PointSet], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "delta", exact_parameter("delta", self.delta))
        if self.epsilon is not None:
            object.__setattr__(self, "epsilon", exact_parameter("epsilon", self.epsilon))
        object.__setattr__(self, "tau", exact_parameter("tau", self.tau, allow_zero=True))
        positive_int("horizon", self.horizon)
        if self.candidate_family is not None:
            object.__setattr__(
                self,
                "candidate_family",
                tuple(tuple(sorted(set(s))) for s in self.candidate_family),
            )
        object.__setattr__(self, "extra_sets", _named(self.extra_sets))

    def require_epsilon(self) -> Fraction:
        if self.epsilon is None:
            raise InvalidParameterError("epsilon", None)
        return self.epsilon

    def to_dict(self) -> Dict[str, object]:
        return {
            "delta": format_scalar(self.delta),
            "epsilon": None if self.epsilon is None else format_scalar(self.epsilon),
            "tau": format_scalar(self.tau),
            "horizon": self.horizon,
        }


def _named(sets: NamedSets) -> Tuple[Tuple[str, PointSet], ...]:
    if isinstance(sets, Mapping):
        items = list(sets.items())
    else:
        items = []
        for i, entry in enumerate(sets):
            if (
                isinstance(entry, tuple)
                and len(entry) == 2
                and isinstance(entry[0], str)
            ):
                items.append(entry)
            else:
                items.append((f"set_{i}", entry))
    return tuple((str(name), tuple(sorted(set(ids)))) for name, ids in items)


@dataclass(frozen=True)
class Witness:
    """
    Evidence for a failing verdict.

    ``kind`` is ``set`` (one offending candidate), ``pair`` (an offending
    ``(L, R)`` pair) or ``chain`` (an unshadowable pseudo-orbit prefix).
    """

    kind: str
    sets: Tuple[PointSet, ...] = ()
    labels: Tuple[Optional[str], ...] = ()
    orbit: Optional[CodedOrbit] = None
    chain: Tuple[int, ...] = ()
    distances: Tuple[Tuple[str, Fraction], ...] = ()

    def distance(self, name: str) -> Fraction:
        return dict(self.distances)[name]

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "sets": [list(s) for s in self.sets],
            "labels": list(self.labels),
            "orbit": None if self.orbit is None else self.orbit.to_dict(),
            "chain": list(self.chain),
            "distances": {name: format_scalar(value) for name, value in self.distances},
        }


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; ``stats`` counts the objects examined"""

    property: str
    holds: bool
    params: Dict[str, object] = field(default_factory=dict)
    witness: Optional[Witness] = None
    stats: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "property": self.property,
            "params": dict(self.params),
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "examined_counts": dict(self.stats),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# -- candidate family -------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    ids: PointSet
    label: Optional[str] = None


def candidate_family(
    sys: FiniteSystem, params: VariantParams
) -> Tuple[List[Candidate], int]:
    """
    Assemble the ICT candidates of a check.

    Returns
    -------
    (list of Candidate, int)
        Kept candidates in examination order and the number skipped.

    Raises
    ------
    EmptySetError
        If an explicitly supplied family and the extra sets are both empty.
    """
    g = build_chain_graph(sys, params.delta)
    if params.candidate_family is not None:
        if not params.candidate_family and not params.extra_sets:
            raise EmptySetError("candidate family")
        base: SetFamily = list(params.candidate_family)
    else:
        base = chain_components(g) + cycles_of_map(sys)

    known: Dict[PointSet, str] = {}
    for name, ids in sys.labels.items():
        known.setdefault(ids, name)

    ordered: Dict[PointSet, Optional[str]] = {}
    for name, ids in params.extra_sets:
        ordered.setdefault(sys.check_ids(ids), name)
    for ids in base:
        ordered.setdefault(sys.check_ids(ids), None)

    kept: List[Candidate] = []
    skipped: List[str] = []
    for ids, name in ordered.items():
        label = name or known.get(ids)
        if g.is_transitive_on(ids):
            kept.append(Candidate(ids, label))
        else:
            skipped.append(label or describe_set(ids[:8]))
    if skipped:
        warnings.warn(
            f"Skipped {len(skipped)} candidate set(s) that are not internally chain "
            f"transitive at delta={format_scalar(params.delta)}: "
            + ", ".join(skipped[:5])
        )
    return kept, len(skipped)


class _CycleTable:
    """Hausdorff distances (grid units) from candidate sets to every cycle"""

    def __init__(self, sys: FiniteSystem):
        self.sys = sys
        self.cycles = sys.cycle_orders
        self._rows: Dict[PointSet, List[int]] = {}

    def units(self, ids: PointSet) -> List[int]:
        row = self._rows.get(ids)
        if row is None:
            row = [self.sys.hausdorff_units(c, ids) for c in self.cycles]
            self._rows[ids] = row
        return row

    def close(self, ids: PointSet, bound: int, strict: bool) -> np.ndarray:
        row = self.units(ids)
        if strict:
            return np.array([u < bound for u in row], dtype=bool)
        return np.array([u <= bound for u in row], dtype=bool)

    def closest(self, ids: PointSet, other: Optional[PointSet] = None) -> int:
        """Index of the cycle minimizing the worse of its gaps to the sets"""
        row = self.units(ids)
        if other is not None:
            row = [max(a, b) for a, b in zip(row, self.units(other))]
        return min(range(len(row)), key=lambda i: (row[i], self.cycles[i]))


def _stats(candidates: Sequence[Candidate], skipped: int, **counts: int) -> Dict[str, int]:
    stats = {"candidates": len(candidates), "skipped": skipped}
    stats.update(counts)
    return stats


def _pair_witness(
    sys: FiniteSystem,
    candidates: Sequence[Candidate],
    failures: Sequence[Tuple[int, int]],
    table: _CycleTable,
    delta: Fraction,
    restricted: bool,
) -> Witness:
    # minimal under (|L| + |R|, d_H(L, R), L, R)
    smallest = min(len(candidates[i].ids) + len(candidates[j].ids) for i, j in failures)
    finalists = [
        (sys.hausdorff_units(candidates[i].ids, candidates[j].ids), candidates[i].ids, candidates[j].ids, i, j)
        for i, j in failures
        if len(candidates[i].ids) + len(candidates[j].ids) == smallest
    ]
    units, L, R, i, j = min(finalists)
    best = table.cycles[table.closest(L, R)]
    gap = max(sys.hausdorff_units(best, L), sys.hausdorff_units(best, R))
    return Witness(
        kind="pair",
        sets=(L, R),
        labels=(candidates[i].label, candidates[j].label),
        orbit=bridge_pseudo_orbit(sys, L, R, delta, restricted=restricted),
        distances=(
            ("hausdorff", sys.from_grid(units)),
            ("best_cycle_gap", sys.from_grid(gap)),
        ),
    )


def _set_witness(
    sys: FiniteSystem, candidate: Candidate, table: _CycleTable, orbit: Optional[CodedOrbit] = None
) -> Witness:
    index = table.closest(candidate.ids)
    loop = table.cycles[index]
    return Witness(
        kind="set",
        sets=(candidate.ids,),
        labels=(candidate.label,),
        orbit=orbit if orbit is not None else CodedOrbit.from_cycle(loop),
        distances=(("best_cycle_gap", sys.from_grid(table.units(candidate.ids)[index])),),
    )


# -- properties -------------------------------------------------------------


def check_property(sys: FiniteSystem, which: str, params: VariantParams) -> Verdict:
    """
    Decide property P_e or P_a over the candidate family.

    P_e asks every candidate ``A`` for a full trajectory whose α- and
    ω-limit sets are within ``tau`` of ``A`` (equal when ``tau = 0``);
    P_a asks for limit sets strictly within ``epsilon``. The witness of a
    failure is the first failing candidate together with the closest
    cycle orbit.
    """
    which = choice("which", which, PROPERTIES)
    if which == "P_e":
        tolerance, strict = params.tau, False
    else:
        tolerance, strict = params.require_epsilon(), True
    candidates, skipped = candidate_family(sys, params)
    table = _CycleTable(sys)
    for candidate in candidates:
        orbit = full_trajectory_with(sys, candidate.ids, candidate.ids, tolerance, strict=strict)
        if orbit is None:
            return Verdict(
                which,
                False,
                params.to_dict(),
                _set_witness(sys, candidate, table),
                _stats(candidates, skipped, cycles=len(table.cycles)),
            )
    return Verdict(
        which,
        True,
        params.to_dict(),
        None,
        _stats(candidates, skipped, cycles=len(table.cycles)),
    )


# -- orbital limit shadowing variants -----------------------------------------


def _phase_match(sys: FiniteSystem, tour: Sequence[int], loop: Sequence[int], bound: int) -> bool:
    """Whether some phase of ``loop`` stays within ``bound`` of ``tour`` forever"""
    period = len(tour) * len(loop) // math.gcd(len(tour), len(loop))
    xs = np.resize(np.asarray(tour, dtype=np.int64), period)
    for shift in range(len(loop)):
        zs = np.resize(np.roll(np.asarray(loop, dtype=np.int64), -shift), period)
        if (sys.pair_gaps(zs, xs) <= bound).all():
            return True
    return False


def check_limit_variant(sys: FiniteSystem, kind: str, params: VariantParams) -> Verdict:
    """
    Decide an orbital limit shadowing variant.

    The two-sided kinds examine ``(L, R)`` pairs of candidates read as the
    α- and ω-limit sets of coded asymptotic pseudo-orbits: ``tols`` takes
    every pair, ``delta_restricted_tols`` only pairs with ``R`` δ-chain
    reachable from ``L``, ``gamma_restricted_tols`` only ``L = R``. A pair
    is matched by a cycle within ``tau`` of both sets. The one-sided kinds
    weave each candidate into a periodic pseudo-orbit and ask for a cycle
    whose orbit eventually coincides with it within ``tau``.

    Raises
    ------
    InvalidParameterError
        On an unknown kind.
    EmptySetError
        If the candidate family is empty.
    """
    kind = choice("kind", kind, LIMIT_KINDS)
    candidates, skipped = candidate_family(sys, params)
    table = _CycleTable(sys)
    bound = sys.threshold(params.tau, strict=False)
    close = [table.close(c.ids, bound, strict=False) for c in candidates]

    if kind in ("limit_shadowing", "backward_limit_shadowing"):
        for i, candidate in enumerate(candidates):
            tour = chain_tour(sys, candidate.ids, params.delta)
            if not any(
                _phase_match(sys, tour, table.cycles[c], bound)
                for c in np.flatnonzero(close[i]).tolist()
            ):
                orbit = weave_pseudo_orbit(sys, candidate.ids, params.delta)
                return Verdict(
                    kind,
                    False,
                    params.to_dict(),
                    _set_witness(sys, candidate, table, orbit),
                    _stats(candidates, skipped, cycles=len(table.cycles)),
                )
        return Verdict(
            kind,
            True,
            params.to_dict(),
            None,
            _stats(candidates, skipped, cycles=len(table.cycles)),
        )

    g = build_chain_graph(sys, params.delta)
    failures: List[Tuple[int, int]] = []
    pairs = 0
    for i, left in enumerate(candidates):
        reach = g.reachable_mask(left.ids) if kind == "delta_restricted_tols" else None
        for j, right in enumerate(candidates):
            if kind == "gamma_restricted_tols" and i != j:
                continue
            if reach is not None and not reach[list(right.ids)].any():
                continue
            pairs += 1
            if not (close[i] & close[j]).any():
                failures.append((i, j))

    stats = _stats(candidates, skipped, pairs=pairs, cycles=len(table.cycles))
    if not failures:
        return Verdict(kind, True, params.to_dict(), None, stats)
    witness = _pair_witness(
        sys, candidates, failures, table, params.delta, restricted=kind != "tols"
    )
    return Verdict(kind, False, params.to_dict(), witness, stats)


# -- cofinal orbital shadowing variants ---------------------------------------


def _tails_close(
    sys: FiniteSystem,
    x: CodedOrbit,
    z: CodedOrbit,
    bound: int,
    forward: bool,
    backward: bool,
) -> bool:
    """
    For every ``K`` past stabilization there is an ``N >= K`` whose tail
    sets of ``z`` and ``x`` are strictly within ``bound`` on the requested
    sides.
    """
    start = max(x.stabilization_index, z.stabilization_index)
    for k in (start, start + 1):
        found = False
        for n in (k, k + 1):
            if forward and sys.hausdorff_units(
                z.forward_tail_set(n), x.forward_tail_set(n)
            ) >= bound:
                continue
            if backward and sys.hausdorff_units(
                z.backward_tail_set(n), x.backward_tail_set(n)
            ) >= bound:
                continue
            found = True
            break
        if not found:
            return False
    return True


def check_cofinal_variant(
    sys: FiniteSystem,
    kind: str,
    params: VariantParams,
    formulation: str = "limit",
) -> Verdict:
    """
    Decide a cofinal orbital shadowing variant.

    ``cofinal_orbital`` and ``backward_cofinal_orbital`` examine single
    candidates (the ω- or α-limit set of a one-sided δ-pseudo-orbit);
    ``two_sided_cofinal`` examines pairs ``(L, R)`` with ``R`` δ-chain
    reachable from ``L`` and ``gamma_restricted_two_sided_cofinal``
    additionally requires ``d_H(L, R) < epsilon``. A candidate is matched
    by a cycle strictly within ``epsilon`` of it.

    Parameters
    ----------
    formulation : {"limit", "tail"}, default "limit"
        ``limit`` compares limit sets directly; ``tail`` builds the
        representative pseudo-orbit and compares closures of its tails
        with those of each cycle orbit past their stabilization index.
    """
    kind = choice("kind", kind, COFINAL_KINDS)
    formulation = choice("formulation", formulation, FORMULATIONS)
    epsilon = params.require_epsilon()
    candidates, skipped = candidate_family(sys, params)
    table = _CycleTable(sys)
    bound = sys.threshold(epsilon, strict=True)
    close = [table.close(c.ids, bound, strict=True) for c in candidates]
    cycle_orbits = [CodedOrbit.from_cycle(loop) for loop in table.cycles]

    def matched(i: int, j: int) -> bool:
        if formulation == "limit":
            if kind == "cofinal_orbital":
                return bool(close[j].any())
            if kind == "backward_cofinal_orbital":
                return bool(close[i].any())
            return bool((close[i] & close[j]).any())
        if kind == "cofinal_orbital":
            x = weave_pseudo_orbit(sys, candidates[j].ids, params.delta)
            sides = (True, False)
        elif kind == "backward_cofinal_orbital":
            x = weave_pseudo_orbit(sys, candidates[i].ids, params.delta)
            sides = (False, True)
        else:
            x = bridge_pseudo_orbit(sys, candidates[i].ids, candidates[j].ids, params.delta)
            sides = (True, True)
        return any(_tails_close(sys, x, z, bound, *sides) for z in cycle_orbits)

    if kind in ("cofinal_orbital", "backward_cofinal_orbital"):
        for i, candidate in enumerate(candidates):
            if not matched(i, i):
                orbit = weave_pseudo_orbit(sys, candidate.ids, params.delta)
                return Verdict(
                    kind,
                    False,
                    dict(params.to_dict(), formulation=formulation),
                    _set_witness(sys, candidate, table, orbit),
                    _stats(candidates, skipped, cycles=len(table.cycles)),
                )
        return Verdict(
            kind,
            True,
            dict(params.to_dict(), formulation=formulation),
            None,
            _stats(candidates, skipped, cycles=len(table.cycles)),
        )

    g = build_chain_graph(sys, params.delta)
    failures: List[Tuple[int, int]] = []
    pairs = 0
    for i, left in enumerate(candidates):
        reach = g.reachable_mask(left.ids)
        for j, right in enumerate(candidates):
            if not reach[list(right.ids)].any():
                continue
            if (
                kind == "gamma_restricted_two_sided_cofinal"
                and sys.hausdorff_units(left.ids, right.ids) >= bound
            ):
                continue
            pairs += 1
            if not matched(i, j):
                failures.append((i, j))

    stats = _stats(candidates, skipped, pairs=pairs, cycles=len(table.cycles))
    report = dict(params.to_dict(), formulation=formulation)
    if not failures:
        return Verdict(kind, True, report, None, stats)
    witness = _pair_witness(sys, candidates, failures, table, params.delta, restricted=True)
    return Verdict(kind, False, report, witness, stats)


# -- pseudo-orbit shadowing -----------------------------------------------------


class _Balls:
    """ε-balls around points, restricted to the admissible shadow states"""

    def __init__(self, sys: FiniteSystem, allowed: np.ndarray, bound: int):
        self.sys = sys
        self.allowed = np.flatnonzero(allowed)
        self.bound = bound
        self._cache: Dict[int, frozenset] = {}

    def __getitem__(self, y: int) -> frozenset:
        ball = self._cache.get(y)
        if ball is None:
            if len(self.allowed):
                row = self.sys.distance_matrix([y], self.allowed)[0]
                ball = frozenset(self.allowed[row < self.bound].tolist())
            else:
                ball = frozenset()
            self._cache[y] = ball
        return ball


def _shadowing_setup(sys, direction, epsilon, delta, horizon):
    direction = choice("direction", direction, DIRECTIONS)
    epsilon = exact_parameter("epsilon", epsilon)
    horizon = positive_int("horizon", horizon)
    g = build_chain_graph(sys, delta)
    if direction == "forward":
        allowed = np.ones(len(sys), dtype=bool)
        starts = list(range(len(sys)))
    else:
        allowed = sys.periodic_mask
        recurrent = np.flatnonzero(g.recurrent_mask)
        starts = np.flatnonzero(g.reachable_mask(recurrent)).tolist() if len(recurrent) else []
    steps = 2 * horizon if direction == "two_sided" else horizon
    params = {
        "direction": direction,
        "epsilon": format_scalar(epsilon),
        "delta": format_scalar(g.delta),
        "horizon": horizon,
    }
    return g, allowed, starts, steps, sys.threshold(epsilon), params


def check_shadowing(
    sys: FiniteSystem,
    direction: str,
    epsilon,
    delta,
    horizon: int,
) -> Verdict:
    """
    Decide whether every δ-pseudo-orbit window is ε-shadowed.

    Forward windows ``x_0 .. x_L`` may be shadowed by any point. Backward
    and two-sided windows (``L`` and ``2L`` steps) must be shadowed by a
    point with an infinite backward trajectory, i.e. a periodic point, and
    start at a vertex that an infinite backward δ-chain can reach.

    The check advances the set of still-viable shadow states along every
    chain-graph edge, breadth first; a window is unshadowable exactly when
    its viable set becomes empty. The witness is the shortest, then
    lexicographically least, failing window.
    """
    g, allowed, starts, steps, bound, params = _shadowing_setup(
        sys, direction, epsilon, delta, horizon
    )
    balls = _Balls(sys, allowed, bound)
    images = sys.map.tolist()

    def failed(chain: Tuple[int, ...], states: int) -> Verdict:
        return Verdict(
            "shadowing",
            False,
            params,
            Witness(kind="chain", chain=chain),
            {"starts": len(starts), "states": states, "steps": steps},
        )

    visited = set()
    frontier: List[Tuple[int, frozenset, Tuple[int, ...]]] = []
    for x in starts:
        viable = balls[x]
        if not viable:
            return failed((x,), len(visited))
        if (x, viable) not in visited:
            visited.add((x, viable))
            frontier.append((x, viable, (x,)))

    for _ in range(steps):
        advanced = []
        for x, viable, chain in frontier:
            pushed = frozenset(images[z] for z in viable)
            for y in g.successors(x):
                nxt = pushed & balls[y]
                if not nxt:
                    return failed(chain + (y,), len(visited))
                if (y, nxt) not in visited:
                    visited.add((y, nxt))
                    advanced.append((y, nxt, chain + (y,)))
        frontier = advanced
        if not frontier:
            break

    return Verdict(
        "shadowing",
        True,
        params,
        None,
        {"starts": len(starts), "states": len(visited), "steps": steps},
    )


def exhaustive_shadowing_oracle(
    sys: FiniteSystem,
    direction: str,
    epsilon,
    delta,
    horizon: int,
) -> Verdict:
    """
    Brute-force counterpart of :func:`check_shadowing`.

    Enumerates every δ-chain window in (length, lexicographic) order and
    tests every admissible shadow point directly. Exponential; meant for
    systems of a dozen points.
    """
    g, allowed, starts, steps, bound, params = _shadowing_setup(
        sys, direction, epsilon, delta, horizon
    )
    everything = list(range(len(sys)))
    gaps = sys.distance_matrix(everything, everything)
    images = sys.map.tolist()
    shadows = np.flatnonzero(allowed).tolist()

    def shadowable(chain: Sequence[int]) -> bool:
        for z in shadows:
            point = z
            for x in chain:
                if gaps[point, x] >= bound:
                    break
                point = images[point]
            else:
                return True
        return False

    def windows(length: int):
        def extend(chain):
            if len(chain) == length + 1:
                yield tuple(chain)
                return
            for y in g.successors(chain[-1]):
                yield from extend(chain + [y])

        for x in starts:
            yield from extend([x])

    examined = 0
    for length in range(steps + 1):
        for chain in windows(length):
            examined += 1
            if not shadowable(chain):
                return Verdict(
                    "shadowing_oracle",
                    False,
                    params,
                    Witness(kind="chain", chain=chain),
                    {"starts": len(starts), "windows": examined, "steps": steps},
                )
    return Verdict(
        "shadowing_oracle",
        True,
        params,
        None,
        {"starts": len(starts), "windows": examined, "steps": steps},
    )


# -- cross-checks ---------------------------------------------------------------


def cross_check(sys: FiniteSystem, params: VariantParams) -> pd.DataFrame:
    """
    Evaluate the paired verdicts that theory says must agree.

    Rows compare P_e with ``gamma_restricted_tols`` and, when ``epsilon``
    is set, P_a with ``gamma_restricted_two_sided_cofinal`` and the limit
    and tail formulations of every cofinal variant. Divergent rows are
    reported with a warning.

    Returns
    -------
    pd.DataFrame
        Columns ``left``, ``right``, ``left_holds``, ``right_holds``,
        ``agree``.
    """
    pairs = [
        (
            "P_e",
            "gamma_restricted_tols",
            lambda: check_property(sys, "P_e", params),
            lambda: check_limit_variant(sys, "gamma_restricted_tols", params),
        )
    ]
    if params.epsilon is not None:
        pairs.append(
            (
                "P_a",
                "gamma_restricted_two_sided_cofinal",
                lambda: check_property(sys, "P_a", params),
                lambda: check_cofinal_variant(
                    sys, "gamma_restricted_two_sided_cofinal", params
                ),
            )
        )
        for kind in COFINAL_KINDS:
            pairs.append(
                (
                    f"{kind}:limit",
                    f"{kind}:tail",
                    lambda kind=kind: check_cofinal_variant(sys, kind, params, "limit"),
                    lambda kind=kind: check_cofinal_variant(sys, kind, params, "tail"),
                )
            )

    rows = []
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="Skipped")
        for left, right, run_left, run_right in pairs:
            a = run_left().holds
            b = run_right().holds
            rows.append(
                {
                    "left": left,
                    "right": right,
                    "left_holds": a,
                    "right_holds": b,
                    "agree": a == b,
                }
            )
    for row in rows:
        if not row["agree"]:
            warnings.warn(
                f"{row['left']} and {row['right']} disagree on {sys.name} "
                f"({row['left_holds']} vs {row['right_holds']})"
            )
    return pd.DataFrame(rows, columns=["left", "right", "left_holds", "right_holds", "agree"])


CHECKS = PROPERTIES + LIMIT_KINDS + COFINAL_KINDS


def run_check(
    sys: FiniteSystem,
    check: str,
    params: VariantParams,
    formulation: str = "limit",
) -> Verdict:
    """Dispatch a check by name to its decider"""
    check = choice("check", check, CHECKS)
    if check in PROPERTIES:
        return check_property(sys, check, params)
    if check in LIMIT_KINDS:
        return check_limit_variant(sys, check, params)
    return check_cofinal_variant(sys, check, params, formulation)
