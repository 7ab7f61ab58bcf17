"""Tiny deterministic SVG line-chart writer used by the sweep command."""

from __future__ import annotations

from xml.sax.saxutils import escape

WIDTH = 640
PANEL_HEIGHT = 320
MARGIN = 50


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _panel(xs, series, y_range, top, title, y_label, x_label):
    x0, x1 = xs[0], xs[-1]
    y0, y1 = y_range
    left, right = MARGIN, WIDTH - 20
    upper, lower = top + 30, top + PANEL_HEIGHT - 40

    def px(x):
        return left + (x - x0) / (x1 - x0) * (right - left)

    def py(y):
        return lower - (y - y0) / (y1 - y0) * (lower - upper)

    out = [
        f'<text x="{WIDTH / 2:.0f}" y="{top + 18}" text-anchor="middle" '
        f'font-size="14">{escape(title)}</text>',
        f'<rect x="{left}" y="{upper}" width="{right - left}" height="{lower - upper}" '
        'fill="none" stroke="#444"/>',
    ]
    if x0 < 0.0 < x1:
        out.append(
            f'<line x1="{_fmt(px(0.0))}" y1="{upper}" x2="{_fmt(px(0.0))}" y2="{lower}" '
            'stroke="#bbb" stroke-dasharray="3,3"/>'
        )
    for frac in (0.0, 0.5, 1.0):
        yv = y0 + frac * (y1 - y0)
        out.append(
            f'<text x="{left - 6}" y="{_fmt(py(yv) + 4)}" text-anchor="end" '
            f'font-size="10">{yv:g}</text>'
        )
        xv = x0 + frac * (x1 - x0)
        out.append(
            f'<text x="{_fmt(px(xv))}" y="{lower + 14}" text-anchor="middle" '
            f'font-size="10">{xv:g}</text>'
        )
    out.append(
        f'<text x="{(left + right) / 2:.0f}" y="{lower + 30}" text-anchor="middle" '
        f'font-size="12">{escape(x_label)}</text>'
    )
    out.append(
        f'<text x="14" y="{(upper + lower) / 2:.0f}" font-size="12" '
        f'transform="rotate(-90 14 {(upper + lower) / 2:.0f})" '
        f'text-anchor="middle">{escape(y_label)}</text>'
    )
    for i, (name, ys, colour) in enumerate(series):
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{pts}"/>')
        out.append(
            f'<text x="{right - 8}" y="{upper + 14 + 14 * i}" text-anchor="end" '
            f'font-size="11" fill="{colour}">{escape(name)}</text>'
        )
    return out


def sweep_svg(gammas, w_minus, w_center, w_plus, nu_over_q) -> str:
    """Two stacked panels: the three weights, and nu/q, against gamma."""
    body = _panel(
        gammas,
        [("w(N)", w_center, "red"), ("w(N+q)", w_plus, "blue"), ("w(N-q)", w_minus, "black")],
        (0.0, 1.0),
        0,
        "Statistical weights",
        "weight",
        "gamma",
    )
    body += _panel(
        gammas,
        [("nu/q", nu_over_q, "black")],
        (-1.0, 1.0),
        PANEL_HEIGHT,
        "Transferred charge",
        "nu/q",
        "gamma",
    )
    height = 2 * PANEL_HEIGHT
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}">\n'
        '<rect width="100%" height="100%" fill="white"/>\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )
