"""Deterministic result emission: JSON, CSV, and a self-contained SVG scatter.

All numbers are rendered with 12 significant digits, below solver tolerance
and above display noise, so identical inputs yield byte-identical files. The
SVG writer is hand-rolled for the same reason: plotting libraries embed
timestamps and hashes that break reproducibility. Files are written
atomically (temp file in the same directory, then rename).
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

SIG_DIGITS = 12


def fmt_number(x) -> str:
    """Render a float with 12 significant digits ('' for NaN in CSV cells)."""
    xf = float(x)
    if math.isnan(xf):
        return ""
    return format(xf, f".{SIG_DIGITS}g")


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        return float(format(obj, f".{SIG_DIGITS}g"))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _round_floats(obj.tolist())
    return obj


def to_json(obj: Any) -> str:
    """Canonical JSON text: rounded floats, 2-space indent, trailing newline."""
    return json.dumps(_round_floats(obj), indent=2, allow_nan=False) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, (int,)) and not isinstance(cell, bool):
                cells.append(str(cell))
            elif isinstance(cell, float):
                cells.append(fmt_number(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_atomic(path, text: str) -> None:
    """Write via a temp file and rename, so readers never see partial output."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def digest(obj: Any) -> str:
    """Stable sha256 over the canonical JSON of ``obj``."""
    canonical = json.dumps(_round_floats(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


# ---------------------------------------------------------------------------
# minimal SVG plotting


def _scale(lo: float, hi: float, pixel_lo: float, pixel_hi: float):
    span = hi - lo if hi > lo else 1.0

    def to_pixel(v: float) -> float:
        return pixel_lo + (v - lo) / span * (pixel_hi - pixel_lo)

    return to_pixel


def _color(t: float) -> str:
    """Cold-to-warm ramp for values normalized to [0, 1]."""
    t = min(max(t, 0.0), 1.0)
    r = int(40 + 215 * t)
    g = int(60 + 40 * (1 - abs(2 * t - 1)))
    b = int(255 - 215 * t)
    return f"rgb({r},{g},{b})"


def svg_plot(
    points: Sequence[tuple[float, float]],
    *,
    title: str,
    xlabel: str,
    ylabel: str,
    color_values: Optional[Sequence[float]] = None,
    polyline: bool = False,
    width: int = 640,
    height: int = 480,
) -> str:
    """A fixed-size scatter (or polyline) with axes and ticks.

    ``color_values`` maps each point onto a cold-to-warm ramp, used for
    threshold sweeps. NaN coordinates are skipped.
    """
    margin_l, margin_r, margin_t, margin_b = 64, 20, 36, 48
    clean = [
        (i, x, y) for i, (x, y) in enumerate(points) if not (math.isnan(x) or math.isnan(y))
    ]
    xs = [x for _, x, _ in clean] or [0.0, 1.0]
    ys = [y for _, _, y in clean] or [0.0, 1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    px = _scale(x_lo, x_hi, margin_l, width - margin_r)
    py = _scale(y_lo, y_hi, height - margin_b, margin_t)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
    ]
    axis = (
        f'<line x1="{margin_l}" y1="{height - margin_b}" x2="{width - margin_r}" '
        f'y2="{height - margin_b}" stroke="black"/>'
        f'<line x1="{margin_l}" y1="{margin_t}" x2="{margin_l}" '
        f'y2="{height - margin_b}" stroke="black"/>'
    )
    parts.append(axis)
    for k in range(5):
        fx = x_lo + (x_hi - x_lo) * k / 4
        fy = y_lo + (y_hi - y_lo) * k / 4
        parts.append(
            f'<text x="{px(fx):.1f}" y="{height - margin_b + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{fmt_short(fx)}</text>'
            f'<line x1="{px(fx):.1f}" y1="{height - margin_b}" x2="{px(fx):.1f}" '
            f'y2="{height - margin_b + 4}" stroke="black"/>'
            f'<text x="{margin_l - 8}" y="{py(fy) + 3:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{fmt_short(fy)}</text>'
            f'<line x1="{margin_l - 4}" y1="{py(fy):.1f}" x2="{margin_l}" '
            f'y2="{py(fy):.1f}" stroke="black"/>'
        )
    parts.append(
        f'<text x="{(margin_l + width - margin_r) / 2:.1f}" y="{height - 10}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="12">{xlabel}</text>'
        f'<text x="16" y="{(margin_t + height - margin_b) / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {(margin_t + height - margin_b) / 2:.1f})">{ylabel}</text>'
    )
    if polyline and len(clean) > 1:
        path = " ".join(f"{px(x):.2f},{py(y):.2f}" for _, x, y in clean)
        parts.append(f'<polyline points="{path}" fill="none" stroke="rgb(40,60,255)"/>')
    if color_values is not None and clean:
        finite = [color_values[i] for i, _, _ in clean]
        c_lo, c_hi = min(finite), max(finite)
        span = c_hi - c_lo if c_hi > c_lo else 1.0
    for i, x, y in clean:
        fill = "rgb(40,60,255)"
        if color_values is not None:
            fill = _color((color_values[i] - c_lo) / span)
        parts.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="{fill}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def fmt_short(x: float) -> str:
    return format(float(x), ".4g")
