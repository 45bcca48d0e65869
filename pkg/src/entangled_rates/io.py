"""CSV, JSON manifest and SVG output.

Everything written here is byte-reproducible: numbers are printed with
``%.17g`` (SVG geometry with fixed decimals), dictionaries are sorted, and
timestamps live only in the manifest, never in the data files.
"""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from ._colormap import COLORMAP
from .sweep import SweepResult

__all__ = [
    "fmt",
    "write_csv",
    "read_csv",
    "RunManifest",
    "write_manifest",
    "read_manifest",
    "LinePanel",
    "HeatPanel",
    "render_svg",
]


def fmt(x: float) -> str:
    """17 significant digits: round-trips every double."""
    return "%.17g" % float(x)


def write_csv(result: SweepResult, path) -> Path:
    path = Path(path)
    header = list(result.axes) + list(result.columns)
    cols = [result.coords[a] for a in result.axes] + [result.columns[c] for c in result.columns]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in zip(*cols):
            writer.writerow([fmt(v) for v in row])
    return path


def read_csv(path) -> dict[str, np.ndarray]:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    data = np.array(body, dtype=float).reshape(len(body), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


def params_digest(params: dict) -> str:
    blob = json.dumps(params, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass
class RunManifest:
    subcommand: str
    params: dict
    version: str = __version__
    timestamp: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"))
    digest: str = ""
    outputs: list = field(default_factory=list)

    def __post_init__(self):
        if not self.digest:
            self.digest = params_digest(self.params)


def write_manifest(manifest: RunManifest, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_manifest(path) -> RunManifest:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return RunManifest(**raw)


# --------------------------------------------------------------------------
# SVG

WIDTH, HEIGHT = 800, 600
_STYLES = {"solid": "", "dashed": ' stroke-dasharray="6,4"', "dotted": ' stroke-dasharray="2,3"'}
_LINE_COLOURS = ("#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad")


@dataclass
class LinePanel:
    title: str
    xlabel: str
    ylabel: str
    series: list  # (x, y, style, label)


@dataclass
class HeatPanel:
    title: str
    xlabel: str
    ylabel: str
    x: np.ndarray
    y: np.ndarray
    values: np.ndarray  # shape (len(x), len(y))


def _f(v: float) -> str:
    return f"{v:.2f}"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _frame(out, box, panel, xlim, ylim):
    x0, y0, w, h = box
    out.append(f'<rect x="{_f(x0)}" y="{_f(y0)}" width="{_f(w)}" height="{_f(h)}" fill="none" stroke="#000" stroke-width="0.8"/>')
    out.append(f'<text x="{_f(x0 + w / 2)}" y="{_f(y0 - 6)}" text-anchor="middle" font-size="11">{_esc(panel.title)}</text>')
    out.append(f'<text x="{_f(x0 + w / 2)}" y="{_f(y0 + h + 26)}" text-anchor="middle" font-size="10">{_esc(panel.xlabel)}</text>')
    out.append(
        f'<text x="{_f(x0 - 34)}" y="{_f(y0 + h / 2)}" text-anchor="middle" font-size="10" '
        f'transform="rotate(-90 {_f(x0 - 34)} {_f(y0 + h / 2)})">{_esc(panel.ylabel)}</text>'
    )
    for t in _ticks(*xlim):
        px = x0 + (t - xlim[0]) / (xlim[1] - xlim[0] or 1) * w
        out.append(f'<text x="{_f(px)}" y="{_f(y0 + h + 12)}" text-anchor="middle" font-size="8">{t:.3g}</text>')
    for t in _ticks(*ylim):
        py = y0 + h - (t - ylim[0]) / (ylim[1] - ylim[0] or 1) * h
        out.append(f'<text x="{_f(x0 - 4)}" y="{_f(py + 3)}" text-anchor="end" font-size="8">{t:.3g}</text>')


def _line_panel(out, box, panel: LinePanel):
    x0, y0, w, h = box
    xs = np.concatenate([np.asarray(s[0], float) for s in panel.series])
    ys = np.concatenate([np.asarray(s[1], float) for s in panel.series])
    xlim = (float(xs.min()), float(xs.max()))
    ylim = (float(min(ys.min(), 0.0)), float(ys.max()))
    _frame(out, box, panel, xlim, ylim)
    xspan = xlim[1] - xlim[0] or 1.0
    yspan = ylim[1] - ylim[0] or 1.0
    for i, (x, y, style, label) in enumerate(panel.series):
        px = x0 + (np.asarray(x, float) - xlim[0]) / xspan * w
        py = y0 + h - (np.asarray(y, float) - ylim[0]) / yspan * h
        pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in zip(px, py))
        colour = _LINE_COLOURS[i % len(_LINE_COLOURS)]
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.2"{_STYLES[style]} points="{pts}"/>')
        ly = y0 + 12 + 12 * i
        out.append(f'<line x1="{_f(x0 + w - 80)}" y1="{_f(ly)}" x2="{_f(x0 + w - 60)}" y2="{_f(ly)}" stroke="{colour}"{_STYLES[style]}/>')
        out.append(f'<text x="{_f(x0 + w - 56)}" y="{_f(ly + 3)}" font-size="9">{_esc(label)}</text>')


def _heat_panel(out, box, panel: HeatPanel):
    x0, y0, w, h = box
    x = np.asarray(panel.x, float)
    y = np.asarray(panel.y, float)
    z = np.asarray(panel.values, float)
    _frame(out, box, panel, (float(x.min()), float(x.max())), (float(y.min()), float(y.max())))
    lo, hi = float(z.min()), float(z.max())
    span = hi - lo or 1.0
    idx = np.clip(((z - lo) / span * 255).round().astype(int), 0, 255)
    cw = w / len(x)
    ch = h / len(y)
    for i in range(len(x)):
        for j in range(len(y)):
            out.append(
                f'<rect x="{_f(x0 + i * cw)}" y="{_f(y0 + h - (j + 1) * ch)}" width="{_f(cw + 0.05)}" '
                f'height="{_f(ch + 0.05)}" fill="{COLORMAP[idx[i, j]]}"/>'
            )
    out.append(f'<text x="{_f(x0 + w)}" y="{_f(y0 + h + 38)}" text-anchor="end" font-size="8">range [{lo:.4g}, {hi:.4g}]</text>')


def render_svg(panels: Sequence, rows: int, cols: int, title: str = "") -> str:
    """Lay the panels out on a ``rows x cols`` grid inside an 800x600 viewport."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#fff"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="16" text-anchor="middle" font-size="13">{_esc(title)}</text>')
    top = 30
    cell_w = WIDTH / cols
    cell_h = (HEIGHT - top) / rows
    for k, panel in enumerate(panels):
        r, c = divmod(k, cols)
        box = (c * cell_w + 55, top + r * cell_h + 18, cell_w - 75, cell_h - 62)
        if isinstance(panel, HeatPanel):
            _heat_panel(out, box, panel)
        else:
            _line_panel(out, box, panel)
    out.append("</svg>")
    return "\n".join(out) + "\n"
