"""Serialization of diagrams and results: CSV, JSON, and SVG heatmaps.

CSV schema (one row per grid cell, ordered by U then electron count):

    n_electrons,u,sector_up,sector_down,energy,charge_gap,spin_gap,
    energy_defined,charge_gap_defined,spin_gap_defined,error

Undefined quantities leave their value column empty and set the matching
_defined flag to 0.  All writers are deterministic byte-for-byte given
the same inputs.
"""

from __future__ import annotations

import csv
import io
import json

from .observables import GapDiagram

CSV_HEADER = [
    "n_electrons", "u", "sector_up", "sector_down",
    "energy", "charge_gap", "spin_gap",
    "energy_defined", "charge_gap_defined", "spin_gap_defined", "error",
]


def _fmt(value) -> str:
    return "" if value is None else repr(float(value))


def diagram_csv_text(diagram: GapDiagram) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for u in diagram.u_values:
        for n in sorted(n for n, uu in diagram.cells if uu == u):
            cell = diagram.cells[(n, u)]
            up, down = cell.sector if cell.sector is not None else ("", "")
            writer.writerow([
                n, repr(u), up, down,
                _fmt(cell.energy), _fmt(cell.charge_gap), _fmt(cell.spin_gap),
                int(cell.energy is not None),
                int(cell.charge_gap is not None),
                int(cell.spin_gap is not None),
                cell.error or "",
            ])
    return buffer.getvalue()


def diagram_json_dict(diagram: GapDiagram, metadata: dict | None = None) -> dict:
    cells = []
    for u in diagram.u_values:
        for n in sorted(n for n, uu in diagram.cells if uu == u):
            cell = diagram.cells[(n, u)]
            cells.append({
                "n_electrons": cell.n_electrons,
                "u": cell.u,
                "sector": list(cell.sector) if cell.sector is not None else None,
                "energy": cell.energy,
                "charge_gap": cell.charge_gap,
                "spin_gap": cell.spin_gap,
                "error": cell.error,
            })
    out = {
        "geometry": diagram.geometry_tag,
        "energy_source": diagram.energy_source,
        "level": diagram.level,
        "u_values": list(diagram.u_values),
        "cells": cells,
    }
    if metadata:
        out["metadata"] = metadata
    return out


def json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# three-stop linear color scale (dark violet -> teal -> yellow)
_STOPS = ((68, 1, 84), (33, 145, 140), (253, 231, 37))
_UNDEFINED_FILL = "#cccccc"


def _color(fraction: float) -> str:
    fraction = min(max(fraction, 0.0), 1.0)
    if fraction <= 0.5:
        lo, hi, t = _STOPS[0], _STOPS[1], fraction * 2.0
    else:
        lo, hi, t = _STOPS[1], _STOPS[2], fraction * 2.0 - 1.0
    rgb = tuple(round(a + (b - a) * t) for a, b in zip(lo, hi))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def svg_heatmap_text(diagram: GapDiagram, quantity: str, cell_px: int = 42) -> str:
    """Heatmap of one quantity; rows are U values (largest on top)."""
    grid = diagram.quantity_grid(quantity)
    n_rows, n_cols = grid.shape
    finite = grid[~_nan_mask(grid)]
    vmin = float(finite.min()) if finite.size else 0.0
    vmax = float(finite.max()) if finite.size else 0.0
    span = vmax - vmin
    margin, footer = 40, 46
    width = margin + n_cols * cell_px + 10
    height = margin + n_rows * cell_px + footer
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<text x="{margin}" y="{margin - 22}" font-size="13">'
        f"{diagram.geometry_tag} {diagram.energy_source} level {diagram.level}: {quantity}</text>",
    ]
    for r in range(n_rows):
        u = diagram.u_values[n_rows - 1 - r]  # largest U on top
        y = margin + r * cell_px
        parts.append(
            f'<text x="4" y="{y + cell_px // 2 + 4}" font-size="10">U={u:g}</text>'
        )
        for c in range(n_cols):
            value = grid[n_rows - 1 - r, c]
            if value != value:  # NaN: undefined cell
                fill = _UNDEFINED_FILL
                label = "undefined"
            else:
                fill = _color((value - vmin) / span if span > 0 else 0.5)
                label = f"{value:.6g}"
            x = margin + c * cell_px
            parts.append(
                f'<rect x="{x}" y="{y}" width="{cell_px - 2}" height="{cell_px - 2}" '
                f'fill="{fill}"><title>N={c + 1} U={u:g} {quantity}={label}</title></rect>'
            )
    for c in range(n_cols):
        x = margin + c * cell_px + cell_px // 2 - 4
        parts.append(
            f'<text x="{x}" y="{margin + n_rows * cell_px + 14}" font-size="10">{c + 1}</text>'
        )
    parts.append(
        f'<text x="{margin}" y="{height - 12}" font-size="11">'
        f"min={vmin:.6g} max={vmax:.6g}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _nan_mask(grid):
    return grid != grid


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
