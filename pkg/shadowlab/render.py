"""
DOT and SVG documents for systems and chain graphs.

Map edges are drawn solid; chain-graph edges that are not map edges are
drawn dotted. SVG output places points at their exact coordinates scaled
to the canvas, which is the only place the package converts to float.
"""

from typing import List, Tuple

from lxml import etree

from .dyadic import format_scalar
from .exceptions import IncompatibleSpaceError, InvalidParameterError
from .systems import FiniteSystem

SVG_NS = "http://www.w3.org/2000/svg"
FORMATS = ("dot", "svg")


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(sys: FiniteSystem, graph=None) -> str:
    """
    Directed-graph document of a system.

    Parameters
    ----------
    sys : FiniteSystem
        The system; every point is a node labelled with id and coordinates.
    graph : ChainGraph, optional
        When given, each of its edges that is not a map edge is added with
        ``style=dotted``.
    """
    lines = [f"digraph {_dot_id(sys.name)} {{"]
    for p in sys.points:
        coords = ", ".join(format_scalar(c) for c in p.coords)
        lines.append(f'  {p.id} [label="{p.id} ({coords})"];')
    images = sys.map.tolist()
    for src, dst in enumerate(images):
        lines.append(f"  {src} -> {dst};")
    if graph is not None:
        for src, dst in graph.edges():
            if images[src] != dst:
                lines.append(f"  {src} -> {dst} [style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _planar(sys: FiniteSystem) -> List[Tuple[float, float]]:
    if sys.space.kind == "circle":
        raise IncompatibleSpaceError(
            "SVG needs a plane or product space; use --format dot for a circle"
        )
    if sys.space.dimension == 1:
        return [(float(p.coords[0]), 0.0) for p in sys.points]
    return [(float(p.coords[0]), float(p.coords[1])) for p in sys.points]


def render_svg(sys: FiniteSystem, graph=None, size: int = 480) -> str:
    """
    Planar drawing of a system.

    Points are circles with an id tooltip, map edges are arrows (fixed
    points get a loop marker) and chain-graph-only edges dotted lines.

    Raises
    ------
    IncompatibleSpaceError
        For a bare circle space; DOT output works for every space.
    """
    xy = _planar(sys)
    xs = [x for x, _ in xy]
    ys = [y for _, y in xy]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    margin = 16.0
    unit = (size - 2 * margin) / span

    def place(point: Tuple[float, float]) -> Tuple[str, str]:
        x = margin + (point[0] - min(xs)) * unit
        y = size - margin - (point[1] - min(ys)) * unit
        return f"{x:.3f}", f"{y:.3f}"

    root = etree.Element(
        f"{{{SVG_NS}}}svg",
        nsmap={None: SVG_NS},
        width=str(size),
        height=str(size),
        viewBox=f"0 0 {size} {size}",
    )
    title = etree.SubElement(root, f"{{{SVG_NS}}}title")
    title.text = sys.name
    defs = etree.SubElement(root, f"{{{SVG_NS}}}defs")
    marker = etree.SubElement(
        defs,
        f"{{{SVG_NS}}}marker",
        id="arrow",
        viewBox="0 0 10 10",
        refX="10",
        refY="5",
        markerWidth="4",
        markerHeight="4",
        orient="auto",
    )
    etree.SubElement(marker, f"{{{SVG_NS}}}path", d="M 0 0 L 10 5 L 0 10 z")

    images = sys.map.tolist()
    if graph is not None:
        chain_layer = etree.SubElement(root, f"{{{SVG_NS}}}g", {"class": "chain-edges"})
        for src, dst in graph.edges():
            if images[src] == dst or src == dst:
                continue
            (x1, y1), (x2, y2) = place(xy[src]), place(xy[dst])
            etree.SubElement(
                chain_layer,
                f"{{{SVG_NS}}}line",
                {"class": "chain", "x1": x1, "y1": y1, "x2": x2, "y2": y2,
                 "stroke": "#999", "stroke-dasharray": "2,2"},
            )

    map_layer = etree.SubElement(root, f"{{{SVG_NS}}}g", {"class": "map-edges"})
    for src, dst in enumerate(images):
        (x1, y1), (x2, y2) = place(xy[src]), place(xy[dst])
        if src == dst:
            etree.SubElement(
                map_layer,
                f"{{{SVG_NS}}}circle",
                {"class": "map-loop", "cx": x1, "cy": y1, "r": "4",
                 "fill": "none", "stroke": "#333"},
            )
        else:
            etree.SubElement(
                map_layer,
                f"{{{SVG_NS}}}line",
                {"class": "map", "x1": x1, "y1": y1, "x2": x2, "y2": y2,
                 "stroke": "#333", "marker-end": "url(#arrow)"},
            )

    point_layer = etree.SubElement(root, f"{{{SVG_NS}}}g", {"class": "points"})
    for p, point in zip(sys.points, xy):
        cx, cy = place(point)
        node = etree.SubElement(
            point_layer,
            f"{{{SVG_NS}}}circle",
            {"class": "point", "cx": cx, "cy": cy, "r": "1.5"},
        )
        tip = etree.SubElement(node, f"{{{SVG_NS}}}title")
        tip.text = f"{p.id} (" + ", ".join(format_scalar(c) for c in p.coords) + ")"

    return etree.tostring(root, pretty_print=True, encoding="unicode")


def render(sys: FiniteSystem, graph=None, fmt: str = "dot") -> str:
    """Render a system (and optionally a chain graph) as ``dot`` or ``svg``"""
    if fmt == "dot":
        return render_dot(sys, graph)
    if fmt == "svg":
        return render_svg(sys, graph)
    raise InvalidParameterError("format", fmt, list(FORMATS))
