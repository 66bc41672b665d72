"""Static SVG drawings of cyclic words: 2n labelled points, antipodal chords, move arrows."""

from __future__ import annotations

import math
from typing import Optional
from xml.sax.saxutils import escape

from .words import AdmissibleWord, CrossingSequence, MoveRecord, format_label, rank

__all__ = ["word_svg", "sequence_svg"]

RADIUS = 70
CELL = 200


def _point(cx: float, cy: float, n: int, slot: float, r: float = RADIUS) -> tuple[float, float]:
    # slot 0 at the top, counter-clockwise on screen
    theta = math.pi / 2 + slot * math.pi / n
    return cx + r * math.cos(theta), cy - r * math.sin(theta)


def _word_group(w: AdmissibleWord, cx: float, cy: float, caption: str,
                move: Optional[MoveRecord] = None) -> list[str]:
    n = w.n
    out = [f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{RADIUS}" fill="none" stroke="#999"/>']
    for i in range(1, n + 1):
        (x1, y1), (x2, y2) = (_point(cx, cy, n, w.slot(s)) for s in (i, -i))
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   f'stroke="#ccc" stroke-dasharray="3,3"/>')
    for p, lbl in enumerate(w.slots):
        x, y = _point(cx, cy, n, p)
        tx, ty = _point(cx, cy, n, p, RADIUS + 14)
        colour = "#000" if lbl > 0 else "#666"
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{colour}"/>')
        out.append(f'<text x="{tx:.2f}" y="{ty + 4:.2f}" text-anchor="middle" font-size="12" '
                   f'fill="{colour}">{escape(format_label(lbl))}</text>')
    if move is not None:
        start = w.slot(move.mover)
        arc = [_point(cx, cy, n, start + move.direction * f, RADIUS - 10) for f in (0.15, 0.5, 0.85)]
        (x0, y0), (xm, ym), (x1, y1) = arc
        out.append(f'<path d="M {x0:.2f} {y0:.2f} Q {xm:.2f} {ym:.2f} {x1:.2f} {y1:.2f}" '
                   f'fill="none" stroke="#c00" stroke-width="2" marker-end="url(#arrow)"/>')
    out.append(f'<text x="{cx:.2f}" y="{cy + RADIUS + 38:.2f}" text-anchor="middle" '
               f'font-size="12">{escape(caption)}</text>')
    return out


def _document(width: int, height: int, body: list[str]) -> str:
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="8" refY="5" markerWidth="6" '
        'markerHeight="6" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="#c00"/></marker></defs>',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def word_svg(w: AdmissibleWord, move: Optional[MoveRecord] = None) -> str:
    """One word, read counter-clockwise from the top; ``move`` adds an arrow on the mover."""
    caption = f"{w}  rk={rank(w)}"
    return _document(CELL, CELL + 20, _word_group(w, CELL / 2, CELL / 2, caption, move))


def sequence_svg(seq: CrossingSequence, per_row: int = 4) -> str:
    """All words of a crossing sequence; each arrow shows the move leading to the next word."""
    body = []
    moves = [c.move for c in seq.crossings] + [None]
    for idx, (w, mv) in enumerate(zip(seq.words, moves)):
        row, col = divmod(idx, per_row)
        cx, cy = col * CELL + CELL / 2, row * (CELL + 20) + CELL / 2
        caption = f"w{idx} = {w}  rk={rank(w)}"
        if mv is not None:
            caption += f"  [{mv.type}]"
        body.extend(_word_group(w, cx, cy, caption, mv))
    rows = -(-len(seq.words) // per_row)
    return _document(min(len(seq.words), per_row) * CELL, rows * (CELL + 20), body)
