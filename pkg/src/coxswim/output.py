"""Deterministic CSV/JSON/SVG writers."""

import json
from xml.sax.saxutils import escape

import numpy as np

TRAJECTORY_HEADER = ("t", "v0x", "v0y", "omega0", "x", "y", "theta", "theta_unwrapped")


def fmt(value):
    """17 significant digits, locale independent."""
    return format(float(value), ".17g")


def csv_text(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def trajectory_rows(traj):
    return np.column_stack([traj.t, traj.xi, traj.pose, traj.theta_unwrapped])


def trajectory_csv(traj):
    return csv_text(TRAJECTORY_HEADER, trajectory_rows(traj))


def snapshot_csv(s, points):
    return csv_text(("s", "x", "y"), np.column_stack([s, points]))


def json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


PANEL_W, PANEL_H = 420, 260
MARGIN = 50
COLORS = ("#1f77b4", "#d62728", "#2ca02c")


def _panel(x0, y0, title, t, series):
    ymin = min(float(np.min(v)) for _, v in series)
    ymax = max(float(np.max(v)) for _, v in series)
    if ymax - ymin < 1e-300:
        ymin, ymax = ymin - 1.0, ymax + 1.0
    tmin, tmax = float(t[0]), float(t[-1])
    left, top = x0 + MARGIN, y0 + 30
    w, h = PANEL_W - MARGIN - 10, PANEL_H - 70

    def px(tv):
        return left + (tv - tmin) / (tmax - tmin) * w

    def py(v):
        return top + h - (v - ymin) / (ymax - ymin) * h

    out = [
        f'<g class="panel">',
        f'<text x="{x0 + PANEL_W / 2:.1f}" y="{y0 + 18}" text-anchor="middle" '
        f'font-size="14">{escape(title)}</text>',
        f'<rect x="{left:.1f}" y="{top:.1f}" width="{w:.1f}" height="{h:.1f}" '
        f'fill="none" stroke="black"/>',
        f'<text x="{left - 4:.1f}" y="{top + 4:.1f}" text-anchor="end" font-size="10">{ymax:.3g}</text>',
        f'<text x="{left - 4:.1f}" y="{top + h:.1f}" text-anchor="end" font-size="10">{ymin:.3g}</text>',
        f'<text x="{left:.1f}" y="{top + h + 14:.1f}" font-size="10">{tmin:g}</text>',
        f'<text x="{left + w:.1f}" y="{top + h + 14:.1f}" text-anchor="end" font-size="10">{tmax:g} s</text>',
    ]
    for i, (label, v) in enumerate(series):
        pts = " ".join(f"{px(a):.3f},{py(b):.3f}" for a, b in zip(t, v))
        color = COLORS[i % len(COLORS)]
        out.append(f'<polyline data-series="{escape(label)}" fill="none" stroke="{color}" '
                   f'stroke-width="1" points="{pts}"/>')
        out.append(f'<text x="{left + w - 4:.1f}" y="{top + 12 + 12 * i:.1f}" text-anchor="end" '
                   f'font-size="10" fill="{color}">{escape(label)}</text>')
    out.append("</g>")
    return out


def trajectory_svg(traj):
    """Four panels: translational velocity/position, rotational velocity/position."""
    t = traj.t
    panels = [
        ("Translational velocity", [("v0x", traj.xi[:, 0]), ("v0y", traj.xi[:, 1])]),
        ("Translational position", [("x", traj.pose[:, 0]), ("y", traj.pose[:, 1])]),
        ("Rotational velocity", [("omega0", traj.xi[:, 2])]),
        ("Rotational position", [("theta_unwrapped", traj.theta_unwrapped)]),
    ]
    width, height = 2 * PANEL_W, 2 * PANEL_H
    body = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>']
    for i, (title, series) in enumerate(panels):
        body.extend(_panel((i % 2) * PANEL_W, (i // 2) * PANEL_H, title, t, series))
    body.append("</svg>")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + "\n".join(body) + "\n"
