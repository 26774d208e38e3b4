"""Deterministic table output plus optional figure rendering.

Float formatting is pinned so CSV output is byte-stable across runs: twelve
significant digits, fixed-point inside [1e-3, 1e6) and scientific outside.
JSON passes floats through untouched (shortest round-trip repr).
"""

from __future__ import annotations

import json
import math
from typing import IO, Iterable, Sequence


def format_value(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    a = abs(x)
    if 1e-3 <= a < 1e6:
        decimals = 11 - int(math.floor(math.log10(a)))
        s = f"{x:.{decimals}f}".rstrip("0").rstrip(".")
        return s if s not in ("-0", "") else "0"
    mantissa, exp = f"{x:.11e}".split("e")
    mantissa = mantissa.rstrip("0").rstrip(".")
    return f"{mantissa}e{int(exp):+03d}"


def write_csv(stream: IO[str], header: Sequence[str],
              rows: Iterable[Sequence]) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(format_value(v) for v in row) + "\n")


def write_json(stream: IO[str], payload) -> None:
    stream.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Figures (rendered to files next to the delimited output, never shown)
# ---------------------------------------------------------------------------


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


_CHANNEL_STYLE = {
    "psi1": ("tab:blue", "o"),
    "psi2": ("tab:green", "s"),
    "psi3": ("tab:red", "^"),
}


def render_spectrum_figure(rows: list[dict], path: str, B: float, M: float,
                           relativistic: bool) -> None:
    """Level diagram: energy against angular number, one marker set per channel."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.6))
    seen = set()
    for row in rows:
        ch = row["channel"]
        color, marker = _CHANNEL_STYLE[ch]
        label = ch if ch not in seen else None
        seen.add(ch)
        ax.scatter(row["m"], row["value"], s=18, c=color, marker=marker,
                   label=label)
    ax.set_xlabel("angular number m")
    ax.set_ylabel("energy eps" if relativistic else "energy product eps*M")
    kind = "relativistic" if relativistic else "nonrelativistic"
    ax.set_title(f"{kind} bound levels, B={B:g}, M={M:g}")
    if seen:
        ax.legend(loc="best", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_region_figure(rows: list[dict], path: str, B: float) -> None:
    """Bound-state counts per angular number (the allowed half-line)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    channels = sorted({row["channel"] for row in rows})
    width = 0.8 / max(len(channels), 1)
    for i, ch in enumerate(channels):
        ms = [row["m"] for row in rows if row["channel"] == ch]
        counts = [row["count"] for row in rows if row["channel"] == ch]
        color, _ = _CHANNEL_STYLE[ch]
        ax.bar([m + (i - (len(channels) - 1) / 2) * width for m in ms], counts,
               width=width, color=color, label=ch)
    ax.axvline(B, color="k", linestyle="--", linewidth=1, label="m = B edge")
    ax.set_xlabel("angular number m")
    ax.set_ylabel("bound levels")
    ax.set_title(f"allowed region and level counts, B={B:g}")
    ax.legend(loc="best", fontsize=8)
    ax.grid(alpha=0.3, axis="y")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_wavefunction_figure(r, psi, path: str, title: str) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(r, psi, lw=1.2)
    ax.axhline(0.0, color="k", lw=0.6)
    ax.set_xlabel("r (curvature units)")
    ax.set_ylabel("psi(r)")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
