"""
Batch operations over parameter grids and truncation levels.

Cells of a sweep are independent, so they run on a thread pool. Rows are
sorted canonically before they are returned, which keeps the tables
independent of the order in which cells finish.
"""

import warnings
from concurrent.futures import ThreadPoolExecutor, as_completed
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pandas as pd
from tqdm import tqdm

from .builders import TruncationParams, build_system
from .chain_graph import build_chain_graph, cycles_of_map
from .dyadic import format_scalar
from .exceptions import EmptySetError, ShadowLabError
from .settings import get_max_workers, is_progress_enabled
from .shadow_check import CHECKS, VariantParams, cross_check, run_check
from .systems import FiniteSystem
from .utils import choice, exact_parameter

Cell = Tuple[str, Fraction, Optional[Fraction]]


def _pool_size(max_workers: Optional[int]) -> int:
    return max_workers if max_workers is not None else get_max_workers()


def _progress(show_progress: Optional[bool]) -> bool:
    return is_progress_enabled() if show_progress is None else show_progress


def sweep_verdicts(
    sys: FiniteSystem,
    checks: Sequence[str],
    deltas: Iterable,
    epsilons: Iterable = (None,),
    tau=0,
    extra_sets=(),
    candidate_family=None,
    max_workers: Optional[int] = None,
    show_progress: Optional[bool] = None,
) -> pd.DataFrame:
    """
    Evaluate several checks over a (delta, epsilon) grid in parallel.

    Parameters
    ----------
    sys : FiniteSystem
        The system under study.
    checks : sequence of str
        Check names (``P_e``, ``P_a``, the limit and the cofinal kinds).
    deltas, epsilons : iterables of exact scalars
        Grid axes; an epsilon of None is only valid for checks that do not
        need one.
    tau : Fraction, default 0
        Limit-set tolerance of P_e and the orbital limit kinds.
    extra_sets, candidate_family : optional
        Passed to :class:`~shadowlab.shadow_check.VariantParams`.
    max_workers : int, optional
        Thread pool size; defaults to the global setting.
    show_progress : bool, optional
        Show a tqdm progress bar; defaults to the global setting.

    Returns
    -------
    pd.DataFrame
        One row per cell with columns ``check``, ``delta``, ``epsilon``,
        ``holds``, ``witness`` and ``error``. Failed cells keep
        ``holds = None`` and the error text.
    """
    checks = [choice("check", c, CHECKS) for c in checks]
    deltas = [exact_parameter("delta", d) for d in deltas]
    epsilons = [None if e is None else exact_parameter("epsilon", e) for e in epsilons]
    grid: List[Cell] = []
    for check in checks:
        for delta in deltas:
            for epsilon in epsilons:
                grid.append((check, delta, epsilon))
    if not grid:
        raise EmptySetError("parameter grid")

    # Shared caches are filled once before the workers start
    _ = sys.cycle_orders
    for delta in sorted(set(deltas)):
        build_chain_graph(sys, delta)

    def evaluate(cell: Cell) -> Dict[str, object]:
        check, delta, epsilon = cell
        params = VariantParams(
            delta,
            epsilon,
            tau,
            extra_sets=extra_sets,
            candidate_family=candidate_family,
        )
        verdict = run_check(sys, check, params)
        return {
            "holds": verdict.holds,
            "witness": None if verdict.witness is None else verdict.witness.to_dict(),
            "error": None,
        }

    results: Dict[Cell, Dict[str, object]] = {}
    with ThreadPoolExecutor(max_workers=_pool_size(max_workers)) as executor:
        future_to_cell = {executor.submit(evaluate, cell): cell for cell in grid}
        futures = as_completed(future_to_cell)
        if _progress(show_progress):
            futures = tqdm(futures, total=len(grid), desc=f"Sweeping {sys.name}")
        for future in futures:
            cell = future_to_cell[future]
            try:
                results[cell] = future.result()
            except ShadowLabError as e:
                warnings.warn(f"Cell {cell[0]} delta={cell[1]} epsilon={cell[2]} failed: {e}")
                results[cell] = {"holds": None, "witness": None, "error": str(e)}

    order = {name: i for i, name in enumerate(checks)}
    rows = []
    for cell in sorted(
        results,
        key=lambda c: (order[c[0]], c[1], Fraction(-1) if c[2] is None else c[2]),
    ):
        check, delta, epsilon = cell
        rows.append(
            {
                "check": check,
                "delta": format_scalar(delta),
                "epsilon": None if epsilon is None else format_scalar(epsilon),
                **results[cell],
            }
        )
    return pd.DataFrame(rows, columns=["check", "delta", "epsilon", "holds", "witness", "error"])


def convergence_table(
    kind: str,
    settings: Sequence[Union[int, TruncationParams]],
    family_labels: Optional[Sequence[str]] = None,
    max_workers: Optional[int] = None,
    show_progress: Optional[bool] = None,
) -> pd.DataFrame:
    """
    One-sided gap between labelled sets and the cycles, per truncation.

    Parameters
    ----------
    kind : str
        Builder name.
    settings : sequence of int or TruncationParams
        Truncations to build; an int is a level with builder defaults.
    family_labels : sequence of str, optional
        Labels forming the family; all labels of each system by default.

    Returns
    -------
    pd.DataFrame
        Columns ``level``, ``depth``, ``rings``, ``points``, ``cycles``,
        ``gap`` (canonical text) and ``gap_value`` (exact), in input order.
    """
    truncations = [
        s if isinstance(s, TruncationParams) else TruncationParams(level=s) for s in settings
    ]
    if not truncations:
        raise EmptySetError("truncation list")

    def measure(params: TruncationParams) -> Dict[str, object]:
        sys = build_system(kind, params)
        labels = family_labels if family_labels is not None else list(sys.labels)
        family = [sys.labels[name] for name in labels if name in sys.labels]
        if not family:
            raise EmptySetError(f"labelled family of {sys.name}")
        cycles = cycles_of_map(sys)
        gap = sys.family_gap_ids(family, cycles)
        return {
            "level": params.level,
            "depth": params.depth,
            "rings": params.rings,
            "points": len(sys),
            "cycles": len(cycles),
            "gap": format_scalar(gap),
            "gap_value": gap,
        }

    rows: Dict[int, Dict[str, object]] = {}
    with ThreadPoolExecutor(max_workers=_pool_size(max_workers)) as executor:
        future_to_index = {
            executor.submit(measure, params): i for i, params in enumerate(truncations)
        }
        futures = as_completed(future_to_index)
        if _progress(show_progress):
            futures = tqdm(futures, total=len(truncations), desc=f"Building {kind}")
        for future in futures:
            rows[future_to_index[future]] = future.result()

    return pd.DataFrame([rows[i] for i in range(len(truncations))])


def cross_check_table(
    systems: Sequence[FiniteSystem],
    deltas: Iterable,
    epsilons: Iterable,
    tau=0,
    show_progress: Optional[bool] = None,
) -> pd.DataFrame:
    """
    Run :func:`~shadowlab.shadow_check.cross_check` over a grid.

    Returns
    -------
    pd.DataFrame
        The cross-check rows with ``system``, ``delta`` and ``epsilon``
        columns prepended.
    """
    cells = [(s, d, e) for s in systems for d in deltas for e in epsilons]
    if _progress(show_progress):
        cells = tqdm(cells, desc="Cross-checking")
    frames = []
    for sys, delta, epsilon in cells:
        table = cross_check(sys, VariantParams(delta, epsilon, tau))
        table.insert(0, "epsilon", format_scalar(epsilon))
        table.insert(0, "delta", format_scalar(delta))
        table.insert(0, "system", sys.name)
        frames.append(table)
    if not frames:
        raise EmptySetError("parameter grid")
    return pd.concat(frames, ignore_index=True)
