"""DOT and SVG pictures of distinguishing graphs and separatrix diagrams.

Colours follow the usual drawing: stable separatrices red, unstable green.
Neighbourhood arcs are dashed and boundary arcs bold.  The SVG layout is
schematic: every cycle is a circle placed on a ring and separatrices are
chords between them.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .diagram import DistinguishingGraph, SeparatrixDiagram, distinguishing_graph_of

_VSHAPE = {"SinkWhite": ("circle", "white"), "SaddleEnd": ("point", "black"),
           "TransitionMark": ("box", "gray")}
_KSHAPE = {"A": ("doublecircle", "salmon"), "B": ("box", "salmon"), "S": ("diamond", "black"),
           "T+": ("triangle", "salmon"), "T-": ("invtriangle", "palegreen"),
           "Y": ("doublecircle", "palegreen"), "Z": ("box", "palegreen")}
_ESTYLE = {"stable": 'color="red"', "unstable": 'color="green"',
           "boundary": 'color="black", style="bold", penwidth=2',
           "connection": 'color="blue", penwidth=2',
           "Separatrix": 'color="red"', "NeighborhoodArc": 'color="gray40", style="dashed"',
           "BoundaryArc": 'color="black", style="bold", penwidth=2'}


def _token(x):
    return {0: "0", -1: "[", -2: "]"}.get(x, str(x))


def _dot_graph(g: DistinguishingGraph) -> str:
    out = ["graph distinguishing {", "  node [fontsize=10];"]
    for i, (kind, orient, seq) in enumerate(g.cycles):
        out.append(f'  subgraph cluster_{i} {{ label="{"boundary" if kind == "B" else "source"} '
                   f'cycle {i + 1} ({orient})";')
        for v in seq:
            shape, fill = _VSHAPE[g.vertex_color[v]]
            out.append(f'    v{v} [label="{_token(g.vertex_token[v])}", shape={shape}, '
                       f'style=filled, fillcolor="{fill}"];')
        out.append("  }")
    for e, (color, u, v) in enumerate(g.edges):
        lab = f', label="{_token(g.vertex_token[u])}"' if color == "Separatrix" else ""
        out.append(f"  v{u} -- v{v} [{_ESTYLE[color]}{lab}];")
    out.append("}")
    return "\n".join(out) + "\n"


def _dot_diagram(d: SeparatrixDiagram) -> str:
    out = ["digraph separatrices {", "  node [fontsize=10];"]
    vm = {i for t, i in d.marks if t == "v"}
    em = {i for t, i in d.marks if t == "e"}
    for v, k in enumerate(d.kinds):
        shape, fill = _KSHAPE[k]
        extra = ", peripheries=2, color=blue" if v in vm else ""
        out.append(f'  p{v} [label="{k}{v}", shape={shape}, style=filled, fillcolor="{fill}"{extra}];')
    for e, (t, h, k) in enumerate(d.edges):
        style = 'color="blue", style="bold,dashed", penwidth=2' if e in em else _ESTYLE[k]
        out.append(f"  p{t} -> p{h} [{style}];")
    out.append("}")
    return "\n".join(out) + "\n"


def to_dot(g) -> str:
    """Graph description text (Graphviz DOT)."""
    if isinstance(g, SeparatrixDiagram):
        return _dot_diagram(g)
    return _dot_graph(g)


def to_svg(g, size: int = 480) -> str:
    """Standalone SVG 1.1 picture of a distinguishing graph (a separatrix
    diagram is drawn through its distinguishing graph)."""
    if isinstance(g, SeparatrixDiagram):
        g = distinguishing_graph_of(g)
    n = len(g.cycles)
    c0 = size / 2
    ring = 0 if n == 1 else size * 0.3
    rad = size * (0.35 if n == 1 else min(0.18, 0.9 * math.pi * 0.3 / n))
    pos = {}
    centers = []
    for i, (_, _, seq) in enumerate(g.cycles):
        a = 2 * math.pi * i / n - math.pi / 2
        cx, cy = c0 + ring * math.cos(a), c0 + ring * math.sin(a)
        centers.append((cx, cy))
        m = max(len(seq), 1)
        for j, v in enumerate(seq):
            b = 2 * math.pi * j / m - math.pi / 2
            pos[v] = (cx + rad * math.cos(b), cy + rad * math.sin(b))
    parts = [f'<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             '<rect width="100%" height="100%" fill="white"/>']
    for i, (kind, _, seq) in enumerate(g.cycles):
        cx, cy = centers[i]
        w = 3 if kind == "B" else 1
        parts.append(f'<circle class="cycle" cx="{cx:.2f}" cy="{cy:.2f}" r="{rad:.2f}" fill="none" '
                     f'stroke="#bbbbbb" stroke-width="{w}"/>')
    for color, u, v in g.edges:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        if color == "Separatrix":
            lab = escape(_token(g.vertex_token[u]))
            parts.append(f'<line class="separatrix" x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" '
                         f'y2="{y2:.2f}" stroke="red" stroke-width="1.5"/>')
            parts.append(f'<text x="{(x1 + x2) / 2:.2f}" y="{(y1 + y2) / 2 - 3:.2f}" font-size="11" '
                         f'fill="red">{lab}</text>')
        elif u != v:
            dash = ' stroke-dasharray="4 3"' if color == "NeighborhoodArc" else ""
            w = 3 if color == "BoundaryArc" else 1
            parts.append(f'<path class="arc" d="M {x1:.2f} {y1:.2f} A {rad:.2f} {rad:.2f} 0 0 1 '
                         f'{x2:.2f} {y2:.2f}" fill="none" stroke="black" stroke-width="{w}"{dash}/>')
    for v in sorted(pos):
        x, y = pos[v]
        col = g.vertex_color[v]
        if col == "SinkWhite":
            parts.append(f'<circle class="sink" cx="{x:.2f}" cy="{y:.2f}" r="6" fill="white" stroke="green"/>')
        elif col == "TransitionMark":
            parts.append(f'<rect class="mark" x="{x - 4:.2f}" y="{y - 4:.2f}" width="8" height="8" fill="gray"/>')
        else:
            parts.append(f'<circle class="end" cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


__all__ = ["to_dot", "to_svg"]
