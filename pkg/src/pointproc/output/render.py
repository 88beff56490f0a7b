"""Serialisers for draws: CSV, JSON and SVG scatter plots.

All three are pure functions of their input, so output bytes depend only on
the bags drawn. SVG layout constants are fixed:

* unit-square draws become 500×500 panels placed side by side, 20px apart,
  with y pointing up;
* draws on 𝟙, ℕ and ℝ become number lines stacked vertically, repeated
  points piled 10px apart above the axis.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from typing import Any, List, Sequence

from pointproc.core.bag import Bag, bag_to_csv_rows
from pointproc.core.space import Nat, Real, Universe
from pointproc.dist.discrete import encode_value

PANEL = 500
GAP = 20
AXIS_MARGIN = 20
STACK = 10
DOT_RADIUS = 3

_SVG_OPEN = '<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">'


def draws_to_csv(bags: Sequence[Bag], universe: Universe) -> str:
    """``draw,x`` (or ``draw,x,y``) header, then one row per point."""

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["draw", "x", "y"] if universe is Universe.UNIT_SQUARE else ["draw", "x"])
    for index, bag in enumerate(bags):
        for row in bag_to_csv_rows(bag):
            writer.writerow([index, *row])
    return buffer.getvalue()


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def draws_to_json(bags: Sequence[Bag], universe: Universe, seed: int) -> str:
    return to_json(
        {
            "universe": universe.value,
            "seed": seed,
            "draws": [encode_value(b) for b in bags],
        }
    )


def _f(v: float) -> str:
    return f"{v:.3f}"


def _square_panels(bags: Sequence[Bag]) -> List[str]:
    n = len(bags)
    width = n * PANEL + (n - 1) * GAP
    lines = [_SVG_OPEN.format(w=width, h=PANEL)]
    for index, bag in enumerate(bags):
        lines.append(f'<g transform="translate({index * (PANEL + GAP)},0)">')
        lines.append(f'<rect x="0" y="0" width="{PANEL}" height="{PANEL}" fill="white" stroke="black"/>')
        for p in bag:
            lines.append(f'<circle cx="{_f(PANEL * p.x)}" cy="{_f(PANEL * (1.0 - p.y))}" r="{DOT_RADIUS}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return lines


def _axis_range(bags: Sequence[Bag], universe: Universe) -> tuple[float, float]:
    values = [p.value for bag in bags for p in bag if isinstance(p, (Nat, Real))]
    if universe is Universe.NATS:
        return 0.0, float(max(values + [1]))
    if not values:
        return -0.5, 0.5
    lo, hi = float(min(values)), float(max(values))
    return (lo - 0.5, hi + 0.5) if lo == hi else (lo, hi)


def _number_lines(bags: Sequence[Bag], universe: Universe) -> List[str]:
    tallest = max([max(bag.multiplicities().values(), default=0) for bag in bags] + [1])
    row = 40 + STACK * tallest
    lo, hi = _axis_range(bags, universe)
    span = PANEL - 2 * AXIS_MARGIN

    def to_x(p) -> float:
        if universe is Universe.UNIT1:
            return PANEL / 2
        return AXIS_MARGIN + span * (p.value - lo) / (hi - lo)

    lines = [_SVG_OPEN.format(w=PANEL, h=row * len(bags))]
    for index, bag in enumerate(bags):
        base = index * row + row - 20
        lines.append(f'<line x1="{AXIS_MARGIN}" y1="{base}" x2="{PANEL - AXIS_MARGIN}" y2="{base}" stroke="black"/>')
        for p, mult in sorted(bag.multiplicities().items()):
            for level in range(mult):
                cy = base - STACK // 2 - STACK * level
                lines.append(f'<circle cx="{_f(to_x(p))}" cy="{_f(cy)}" r="{DOT_RADIUS}"/>')
    lines.append("</svg>")
    return lines


def draws_to_svg(bags: Sequence[Bag], universe: Universe) -> str:
    if not bags:
        return _SVG_OPEN.format(w=0, h=0) + "\n</svg>\n"
    if universe is Universe.UNIT_SQUARE:
        lines = _square_panels(bags)
    else:
        lines = _number_lines(bags, universe)
    return "\n".join(lines) + "\n"


def render_draws(bags: Sequence[Bag], universe: Universe, fmt: str, seed: int) -> str:
    if fmt == "csv":
        return draws_to_csv(bags, universe)
    if fmt == "json":
        return draws_to_json(bags, universe, seed)
    if fmt == "svg":
        return draws_to_svg(bags, universe)
    raise ValueError(f"unknown output format {fmt!r}")
