"""
Command-line interface for shadowlab

Exit codes: 0 when the computation succeeds or the property holds, 1 when
the property fails (the witness is in the report), 2 on usage, parse or
parameter errors.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from .builders import BUILDERS, TruncationParams, build_system
from .chain_graph import build_chain_graph, chain_components, enumerate_ict, morse_order
from .dyadic import format_scalar, parse_scalar
from .exceptions import ShadowLabError
from .render import FORMATS, render
from .shadow_check import DIRECTIONS, VariantParams, check_shadowing, run_check
from .systems import FiniteSystem, load_sets, load_system, save_system
from .trajectories import alpha_family, forward_orbit, gamma_limit, omega_limit

CHECK_ALIASES = {
    "pe": "P_e",
    "pa": "P_a",
    "tols": "tols",
    "dtols": "delta_restricted_tols",
    "gtols": "gamma_restricted_tols",
    "cofinal": "cofinal_orbital",
    "ts-cofinal": "two_sided_cofinal",
    "g-cofinal": "gamma_restricted_two_sided_cofinal",
    "limit": "limit_shadowing",
}


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except ShadowLabError as e:
        raise argparse.ArgumentTypeError(e.message)


def _report(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shadowlab",
        description="shadowlab - limit sets and shadowing at finite resolution",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Generate command
    gen_parser = subparsers.add_parser("gen", help="Build an example system")
    gen_parser.add_argument("--system", required=True, choices=sorted(BUILDERS))
    gen_parser.add_argument("--level", type=int, default=2, help="Truncation level N")
    gen_parser.add_argument("--grid-q", type=int, help="Circle grid denominator")
    gen_parser.add_argument("--rot-p", type=int, help="Rotation numerator")
    gen_parser.add_argument("--depth", type=int, help="Side depth M (square_sequence)")
    gen_parser.add_argument("--rings", type=int, help="Rings per gap K (square_sequence)")
    gen_parser.add_argument("--out", "-o", help="Output file (stdout if omitted)")

    # ICT command
    ict_parser = subparsers.add_parser("ict", help="List chain components")
    ict_parser.add_argument("--in", dest="input", required=True, help="System file")
    ict_parser.add_argument("--delta", type=_scalar, required=True)
    ict_parser.add_argument(
        "--exhaustive", action="store_true", help="Also enumerate every small ICT set"
    )
    ict_parser.add_argument("--max-size", type=int, default=3, help="Enumeration size bound")

    # Limits command
    limits_parser = subparsers.add_parser("limits", help="Limit sets of a point")
    limits_parser.add_argument("--in", dest="input", required=True, help="System file")
    limits_parser.add_argument("--point", type=int, required=True, help="Point id")
    limits_parser.add_argument("--gamma", action="store_true", help="Include the γ-limit set")
    limits_parser.add_argument(
        "--delta", type=_scalar, help="α-sets of backward δ-chains instead of trajectories"
    )

    # Shadow command
    shadow_parser = subparsers.add_parser("shadow", help="Pseudo-orbit shadowing check")
    shadow_parser.add_argument("--in", dest="input", required=True, help="System file")
    shadow_parser.add_argument("--direction", choices=DIRECTIONS, default="forward")
    shadow_parser.add_argument("--eps", type=_scalar, required=True)
    shadow_parser.add_argument("--delta", type=_scalar, required=True)
    shadow_parser.add_argument("--horizon", type=int, default=4)

    # Properties command
    props_parser = subparsers.add_parser("props", help="Properties and shadowing variants")
    props_parser.add_argument("--in", dest="input", required=True, help="System file")
    props_parser.add_argument("--check", required=True, choices=list(CHECK_ALIASES))
    props_parser.add_argument("--delta", type=_scalar, required=True)
    props_parser.add_argument("--eps", type=_scalar)
    props_parser.add_argument("--tau", type=_scalar, default=0)
    props_parser.add_argument(
        "--sets", help="File of 'set' lines; the system's own sets if omitted"
    )

    # Render command
    render_parser = subparsers.add_parser("render", help="Draw a system")
    render_parser.add_argument("--in", dest="input", required=True, help="System file")
    render_parser.add_argument("--delta", type=_scalar, help="Add chain-graph edges")
    render_parser.add_argument("--format", choices=FORMATS, default="dot")
    render_parser.add_argument("--out", "-o", help="Output file (stdout if omitted)")

    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ShadowLabError(f"cannot read {path}: {e.strerror}")


def _load(path: str) -> FiniteSystem:
    return load_system(_read(path), name=Path(path).stem)


def _emit(text: str, out: Optional[str], stdout: TextIO) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as e:
            raise ShadowLabError(f"cannot write {out}: {e.strerror}")
    else:
        print(text, end="", file=stdout)


def _gen(args, stdout: TextIO) -> int:
    params = TruncationParams(
        level=args.level,
        grid_q=args.grid_q,
        rot_p=args.rot_p,
        depth=args.depth,
        rings=args.rings,
    )
    system = build_system(args.system, params)
    _emit(save_system(system), args.out, stdout)
    return 0


def _ict(args, stdout: TextIO) -> int:
    system = _load(args.input)
    g = build_chain_graph(system, args.delta)
    names = {ids: name for name, ids in reversed(list(system.labels.items()))}
    components = chain_components(g)
    order = morse_order(g)
    payload = {
        "delta": format_scalar(g.delta),
        "points": len(system),
        "edge_count": g.edge_count,
        "components": [
            {"ids": list(c), "size": len(c), "label": names.get(c)} for c in components
        ],
        "order": sorted([list(edge) for edge in order.edges()]),
    }
    if args.exhaustive:
        payload["ict_sets"] = [
            list(s) for s in enumerate_ict(system, args.delta, args.max_size)
        ]
    print(_report(payload), file=stdout)
    return 0


def _limits(args, stdout: TextIO) -> int:
    system = _load(args.input)
    orbit = forward_orbit(system, args.point)
    payload = {
        "point": args.point,
        "forward_orbit": {"tail": list(orbit.tail), "cycle": list(orbit.cycle)},
        "omega": list(omega_limit(system, args.point)),
        "alpha_family": [list(s) for s in alpha_family(system, args.point, args.delta)],
    }
    if args.delta is not None:
        payload["delta"] = format_scalar(args.delta)
    if args.gamma:
        payload["gamma"] = list(gamma_limit(system, args.point))
    print(_report(payload), file=stdout)
    return 0


def _shadow(args, stdout: TextIO) -> int:
    system = _load(args.input)
    verdict = check_shadowing(system, args.direction, args.eps, args.delta, args.horizon)
    print(verdict.to_json(), file=stdout)
    return 0 if verdict.holds else 1


def _props(args, stdout: TextIO) -> int:
    system = _load(args.input)
    if args.sets:
        extra = load_sets(_read(args.sets), len(system))
    else:
        extra = dict(system.labels)
    params = VariantParams(args.delta, args.eps, args.tau, extra_sets=extra)
    verdict = run_check(system, CHECK_ALIASES[args.check], params)
    print(verdict.to_json(), file=stdout)
    return 0 if verdict.holds else 1


def _render(args, stdout: TextIO) -> int:
    system = _load(args.input)
    graph = build_chain_graph(system, args.delta) if args.delta is not None else None
    _emit(render(system, graph, args.format), args.out, stdout)
    return 0


COMMANDS = {
    "gen": _gen,
    "ict": _ict,
    "limits": _limits,
    "shadow": _shadow,
    "props": _props,
    "render": _render,
}


def run(
    argv: Optional[List[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Parse ``argv``, execute the command and return its exit code"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.command is None:
        parser.print_help(file=stderr)
        return 2
    try:
        return COMMANDS[args.command](args, stdout)
    except ShadowLabError as e:
        print(f"error: {e.message}", file=stderr)
        return 2


def main():
    """Main CLI entry point"""
    sys.exit(run())


if __name__ == "__main__":
    main()
