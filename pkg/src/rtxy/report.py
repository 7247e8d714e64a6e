"""Deterministic data files and presentation figures.

CSV and JSON are the record: headers are mandatory, floats are written with
17 significant digits, lines end in \\n, and files are written atomically
(temp file plus rename) so identical configs give byte-identical output.
SVG figures are rendered with matplotlib next to the delimited data and are
presentation-only.
"""

from __future__ import annotations

import os
import tempfile

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SCHEMA_VERSION = "1"


def format_float(x: float) -> str:
    return f"{float(x):.17g}"


def _render(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str, header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_render(v) for v in row))
    write_atomic(path, "\n".join(lines) + "\n")
    return path


def dumps_json(obj, indent: int = 0) -> str:
    """Minimal JSON emitter with the fixed float format."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}"{k}": {dumps_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{dumps_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    escaped = str(obj).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def write_json(path: str, obj) -> str:
    write_atomic(path, dumps_json(obj) + "\n")
    return path


# ---------------------------------------------------------------------------
# figures


def phase_figure(path: str, panels: list[dict]) -> str:
    """Heat maps of the phase classification with the hyperbola overlay.

    Each panel dict carries n, lams, gams and a (len(gams), len(lams)) code
    array (0 unbroken, 1 broken, 2 exceptional).
    """
    fig, axes = plt.subplots(1, len(panels), figsize=(4.2 * len(panels), 3.6),
                             squeeze=False)
    cmap = matplotlib.colors.ListedColormap(["#f3f6fb", "#c23b22", "#ffd166"])
    for ax, panel in zip(axes[0], panels):
        lams, gams = panel["lams"], panel["gams"]
        ax.imshow(panel["codes"], origin="lower", aspect="auto", cmap=cmap,
                  vmin=0, vmax=2,
                  extent=[lams[0], lams[-1], gams[0], gams[-1]])
        gg = np.linspace(gams[0], gams[-1], 400)
        ax.plot(np.sqrt(1.0 + gg**2), gg, "k--", lw=1.2, label=r"$\lambda^2-\gamma^2=1$")
        curve = panel.get("boundary")
        if curve is not None:
            ax.plot(curve.lambda_c, curve.gamma_grid, "-", color="#1d3557",
                    lw=1.0, label=r"finite-$N$ boundary")
        ax.set_xlim(lams[0], lams[-1])
        ax.set_ylim(gams[0], gams[-1])
        ax.set_xlabel(r"$\lambda$")
        ax.set_ylabel(r"$\gamma$")
        ax.set_title(f"N = {panel['n']}")
        ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def kappa_figure(path: str, sweeps: list[dict]) -> str:
    """Exact couplings (markers) against the closed forms (lines), one panel
    per separation d = 0..3; sweeps carry gamma, lams, exact arrays and
    approx arrays."""
    fig, axes = plt.subplots(2, 2, figsize=(9, 6.5))
    colors = plt.cm.viridis(np.linspace(0.1, 0.8, max(len(sweeps), 2)))
    for d, ax in enumerate(axes.ravel()):
        for sweep, color in zip(sweeps, colors):
            lams = sweep["lams"]
            ok = np.isfinite(sweep["exact"][d])
            ax.plot(lams, sweep["approx"][d], "-", color=color, lw=1.4,
                    label=rf"$\gamma={sweep['gamma']}$")
            ax.plot(np.asarray(lams)[ok], np.asarray(sweep["exact"][d])[ok],
                    "o", color=color, ms=3.5, mfc="none")
        ax.set_xlabel(r"$\lambda$")
        ax.set_ylabel(rf"$\kappa({d})$")
        if d == 0:
            ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def compare_figure(path: str, groups: list[dict]) -> str:
    """Level diagrams of the chain, its counterpart and the reduced model,
    one panel per system size."""
    fig, axes = plt.subplots(1, len(groups), figsize=(3.6 * len(groups), 4.2),
                             squeeze=False)
    styles = {"chain": ("k", 1.6), "counterpart": ("#2a9d8f", 1.0),
              "reduced": ("#e76f51", 1.0)}
    for ax, group in zip(axes[0], groups):
        for name, levels in group["spectra"].items():
            color, lw = styles.get(name, ("b", 1.0))
            xs = np.arange(len(levels))
            ax.plot(xs, np.sort(np.asarray(levels).real), drawstyle="steps-mid",
                    color=color, lw=lw, label=name)
        ax.set_xlabel("level index")
        ax.set_ylabel("Re E")
        ax.set_title(f"N = {group['n']}")
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def spectrum_figure(path: str, levels: np.ndarray, oracle_levels=None, title: str = "") -> str:
    """Complex-plane scatter of the analytic levels, oracle crosses behind."""
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    if oracle_levels is not None:
        ov = np.asarray(oracle_levels)
        ax.plot(ov.real, ov.imag, "x", color="0.55", ms=6, label="dense oracle")
    lv = np.asarray(levels)
    ax.plot(lv.real, lv.imag, "o", color="#c23b22", ms=3.5, mfc="none",
            label="free fermion")
    ax.axhline(0.0, color="0.8", lw=0.8)
    ax.set_xlabel("Re E")
    ax.set_ylabel("Im E")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
