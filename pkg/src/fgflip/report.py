"""Serialization and figures for command output.

JSON is written with sorted keys so identical runs give identical bytes.
Figures use the Agg backend and are only produced when a report directory
is given.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .skewspace import SkewVector, frac_str, vector_to_json

SCHEMA = "fgflip/1"


def to_plain(obj):
    """Recursively convert payload objects into JSON-ready values."""
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, SkewVector):
        return vector_to_json(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if hasattr(obj, "to_json"):
        return to_plain(obj.to_json())
    if hasattr(obj, "item"):  # numpy scalars
        return to_plain(obj.item())
    return obj


@dataclass
class RunReport:
    command: list
    status: str  # pass | fail | error
    payload: dict
    wall_time: float = 0.0
    figures: list = field(default_factory=list)

    @property
    def exit_code(self):
        return {"pass": 0, "fail": 1}.get(self.status, 2)

    def to_json(self, timing=False):
        out = {"schema": SCHEMA, "command": list(self.command), "status": self.status,
               "payload": to_plain(self.payload)}
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def dumps(self, timing=False):
        return json.dumps(self.to_json(timing), sort_keys=True, indent=2) + "\n"


def flatten(obj, prefix=""):
    """(path, value) rows for CSV output."""
    obj = to_plain(obj)
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def to_csv(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["path", "value"])
    w.writerow(["schema", SCHEMA])
    w.writerow(["status", report.status])
    for path, val in flatten(report.payload, "payload"):
        w.writerow([path, val])
    return buf.getvalue()


def to_text(report: RunReport) -> str:
    lines = [f"{' '.join(report.command)}: {report.status.upper()} ({report.wall_time:.2f} s)"]
    rows = report.payload.get("rows") if isinstance(report.payload, dict) else None
    if rows:
        for row in rows:
            lines.append("  " + "  ".join(_fmt(x) for x in row))
    else:
        for path, val in flatten(report.payload):
            lines.append(f"  {path} = {val}")
    return "\n".join(lines) + "\n"


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.3e}"
    if isinstance(x, bool):
        return "ok" if x else "FAIL"
    return str(x)


def write_report_dir(report: RunReport, outdir, timing=False):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report.dumps(timing))
    (out / "report.csv").write_text(to_csv(report))
    return out


# figures -------------------------------------------------------------------

def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _save(fig, path):
    fig.savefig(path, dpi=110, bbox_inches="tight", metadata={"Software": None})
    _plt().close(fig)
    return str(path)


def _xy(lab, N):
    a, b, c = lab
    # barycentric layout: top vertex (N,0,0)
    return (c - b) * 0.5, a * math.sqrt(3) / 2


def plot_triangle(N, path):
    from .triangle import build_triangle
    plt = _plt()
    tri = build_triangle(N)
    sp = tri.space
    fig, ax = plt.subplots(figsize=(1.2 * N + 2, 1.1 * N + 2))
    for lab in sp.labels:
        for lab2 in sp.labels:
            if sp.entry(lab, lab2) > 0:
                (x0, y0), (x1, y1) = _xy(lab, N), _xy(lab2, N)
                half = sp.entry(lab, lab2) == Fraction(1, 2)
                ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                            arrowprops=dict(arrowstyle="->", lw=0.8, ls="--" if half else "-", color="0.3"))
    for lab in sp.labels:
        x, y = _xy(lab, N)
        color = "tab:red" if lab in tri.subsets["B-"] else "tab:blue" if lab in tri.subsets["B+"] else "0.5"
        ax.plot(x, y, "o", color=color, ms=6)
        ax.annotate("".join(map(str, lab)), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=7)
    ax.set_title(f"triangle diagram C_{N} (dashed: pairing 1/2)")
    ax.set_aspect("equal")
    ax.axis("off")
    return _save(fig, path)


def plot_braid_graph(graph, path, title=""):
    plt = _plt()
    verts, edges = graph.structure()
    pos = {v["id"]: (v["x"], v["line"]) for v in verts}
    fig, ax = plt.subplots(figsize=(max(4, 0.8 * len(graph.letters) + 2), 0.7 * graph.m + 1.5))
    for e in edges:
        (x0, y0), (x1, y1) = pos[e["from"]], pos[e["to"]]
        ax.plot([x0, x1], [y0, y1], "-", color="0.2" if e["kind"] == "horizontal" else "0.5", lw=1)
    kinds = {"black": "k", "blue": "tab:blue", "red": "tab:red"}
    for v in verts:
        ax.plot(*pos[v["id"]], "o", color=kinds[v["kind"]], ms=4)
    for j, c in graph.faces():
        xs = [0] + [t + 1 for t in graph.positions(j)] + [len(graph.letters) + 1]
        x = (xs[c] + xs[c + 1]) / 2
        lab = graph.label((j, c))
        ax.text(x, j + 0.5, "" if lab is None else repr(lab), ha="center", va="center", fontsize=6)
    ax.set_title(title or f"braid graph {graph.word}")
    ax.set_yticks(range(1, graph.m + 1))
    ax.set_xticks([])
    return _save(fig, path)


def plot_snake(matrices, titles, path):
    plt = _plt()
    fig, axes = plt.subplots(1, len(matrices), figsize=(3.2 * len(matrices), 3.2))
    axes = list(axes) if len(matrices) > 1 else [axes]
    for ax, P, title in zip(axes, matrices, titles):
        rows = P.rows_top_down()
        ax.imshow(rows, cmap="Greens", vmin=0, vmax=P.N)
        for r, row in enumerate(rows):
            for c, val in enumerate(row):
                ax.text(c, r, str(val), ha="center", va="center", fontsize=8)
        ax.set_title(title)
        ax.set_xticks([])
        ax.set_yticks([])
    return _save(fig, path)


def plot_qdilog(theta, path, params=None):
    import numpy as np
    from .qdilog import V, W
    plt = _plt()
    ts = np.linspace(-8, 8, 81)
    ws = [W(theta, float(t), params) for t in ts]
    vs = [abs(V(theta, float(t), params) - 1) for t in ts]
    fig, (a1, a2) = plt.subplots(1, 2, figsize=(9, 3.3))
    a1.plot(ts, ws)
    a1.set_title(f"W_theta(t), theta = {theta:g}")
    a1.set_xlabel("t")
    a2.semilogy(ts, vs)
    a2.set_title("|V_theta(t) - 1|")
    a2.set_xlabel("t")
    return _save(fig, path)


def plot_residuals(rows, path, title="residuals"):
    """rows: (label, residual, tolerance)."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(max(5, 0.35 * len(rows) + 2), 3.5))
    labels = [r[0] for r in rows]
    vals = [max(r[1], 1e-18) for r in rows]
    tols = [r[2] for r in rows]
    colors = ["tab:green" if v < t else "tab:red" for v, t in zip(vals, tols)]
    ax.bar(range(len(rows)), vals, color=colors)
    ax.scatter(range(len(rows)), tols, marker="_", s=200, color="k", label="tolerance")
    ax.set_yscale("log")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=70, fontsize=7)
    ax.set_title(title)
    ax.legend(fontsize=7)
    return _save(fig, path)


def plot_vector_bars(vectors: dict, path, title=""):
    """Bar chart of the coefficients of a few named vectors on their common support."""
    plt = _plt()
    names = list(vectors)
    support = sorted({lab for v in vectors.values() for lab in v.support()}, reverse=True)
    fig, ax = plt.subplots(figsize=(max(5, 0.45 * len(support) + 2), 3.5))
    width = 0.8 / max(1, len(names))
    for i, name in enumerate(names):
        v = vectors[name]
        ax.bar([x + i * width for x in range(len(support))], [float(v[lab]) for lab in support], width, label=name)
    ax.set_xticks([x + 0.4 - width / 2 for x in range(len(support))])
    ax.set_xticklabels(["e" + "".join(map(str, l)) for l in support], rotation=70, fontsize=7)
    ax.axhline(0, color="k", lw=0.5)
    ax.set_title(title)
    ax.legend(fontsize=7)
    return _save(fig, path)


def plot_timings(rows, path, title="check timings"):
    """rows: (name, seconds, ok)."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, max(3, 0.22 * len(rows) + 1)))
    ax.barh(range(len(rows)), [r[1] for r in rows], color=["tab:green" if r[2] else "tab:red" for r in rows])
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([r[0] for r in rows], fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title(title)
    return _save(fig, path)
