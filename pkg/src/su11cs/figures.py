"""Data (CSV) and minimal SVG renderings for the published figure set.

Each figure is a :class:`FigureData`: a header and rows of floats. CSV output
uses 17 significant digits, so files are byte-stable for a fixed version,
platform and tolerance. Independent series are computed on a thread pool and
written by a single writer.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .quantization import portrait_density
from .squeezing import squeezing_inequality_surfaces
from .states import RepresentationLabel, SU11Family
from .statistics import (
    distribution, mandel_q, mandel_q_limit_kappa_infinity, photocount_distribution,
    poisson_crossover,
)

__all__ = [
    "FIGURE_IDS",
    "SCHEMA_VERSION",
    "FigureData",
    "figure_data",
    "write_csv",
    "write_svg",
    "run_figure",
]

SCHEMA_VERSION = 1
FIGURE_IDS = ("1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b", "5", "6", "7",
              "8a", "8b", "9a", "9b")

FIG1_U = (0.2, 0.4, 0.6, 0.8)
FIG1_NBAR = (0.5, 1.0, 2.0, 4.0)
FIG2_U = 0.6
FIG2_S = (0, 1, 2, 5)
FIG3_S = (0, 1, 2, 5)
FIG4_KAPPA = (0.75, 1.0, 2.0, 5.0)
FIG5_S = (0, 1, 2, 5)
FIG5_KAPPA_OVERLAY = 1e8
Q_GRID = 200
SURFACE_GRID = 101
SURFACE_RHO_MAX = 2.0
PORTRAIT_ALPHA = 0.1
PORTRAIT_GRID = 64
PORTRAITS = {"8a": (5.0, 0), "8b": (5.0, 1), "9a": (10.0, 2), "9b": (10.0, 5)}


@dataclass
class FigureData:
    figure_id: str
    kind: str  # "lines", "heatmap" or "polar"
    header: list[str]
    rows: np.ndarray
    meta: dict = field(default_factory=dict)


def _map(fn, items):
    with ThreadPoolExecutor(max_workers=min(len(items), os.cpu_count() or 1)) as pool:
        return list(pool.map(fn, items))


def _wide(xs, series, names, x_name):
    width = max(len(s) for s in series)
    xs = np.arange(width) if xs is None else xs
    cols = [np.asarray(xs, dtype=float)]
    for s in series:
        col = np.zeros(width)
        col[: len(s)] = s
        cols.append(col)
    return [x_name] + names, np.column_stack(cols)


def _distributions(pairs, tol):
    # common support: the widest certified truncation, every series evaluated on it
    dists = _map(lambda p: distribution(RepresentationLabel(*p[:2]), p[2], tol), pairs)
    n_top = max(d.truncation_n for d in dists)

    def full(p):
        lab = RepresentationLabel(*p[:2])
        return np.abs(SU11Family(lab).coefficients(math.sqrt(p[2]), n_top)) ** 2

    return _map(full, pairs), dists


def _fig1a(tol, params):
    us = params.get("u_set", FIG1_U)
    probs, _ = _distributions([(1.0, 0, u) for u in us], tol)
    header, rows = _wide(None, probs, [f"P_u={u:g}" for u in us], "n")
    return FigureData("1a", "lines", header, rows, {"xlabel": "n", "ylabel": "P_n"})


def _fig1b(tol, params):
    nbars = params.get("nbar_set", FIG1_NBAR)
    eta = 1.0 / (2 * params.get("kappa", 1.0))
    dists = _map(lambda nb: photocount_distribution(eta, nb, tol), nbars)
    header, rows = _wide(None, [d.probs for d in dists], [f"P_Nbar={nb:g}" for nb in nbars], "n")
    return FigureData("1b", "lines", header, rows, {"xlabel": "n", "ylabel": "P_n"})


def _fig2(fid, kappa):
    def build(tol, params):
        u = params.get("u", FIG2_U)
        ss = params.get("s_set", FIG2_S)
        k = params.get("kappa", kappa)
        probs, _ = _distributions([(k, s, u) for s in ss], tol)
        header, rows = _wide(None, probs, [f"P_s={s}" for s in ss], "n")
        return FigureData(fid, "lines", header, rows, {"xlabel": "n", "ylabel": "P_n"})
    return build


def _q_grid(u_hi, points):
    return np.linspace(0.0, u_hi, points, endpoint=False)


def _q_lines(fid, labels, names, detail):
    def build(tol, params):
        pts = params.get("points", Q_GRID)
        if detail:
            top = max((poisson_crossover(l) for l in labels if l.s > 0), default=0.5)
            us = np.linspace(0.0, top, pts)
        else:
            us = _q_grid(params.get("u_max", 0.99), pts)
        series = _map(lambda l: np.array([mandel_q(l, u) for u in us]), labels)
        header, rows = _wide(us, series, names, "u")
        return FigureData(fid, "lines", header, rows, {"xlabel": "u", "ylabel": "Q"})
    return build


def _fig3(fid, detail):
    def build(tol, params):
        ss = params.get("s_set", FIG3_S)
        labels = [RepresentationLabel(params.get("kappa", 1.0), s) for s in ss]
        return _q_lines(fid, labels, [f"Q_s={s}" for s in ss], detail)(tol, params)
    return build


def _fig4(fid, detail):
    def build(tol, params):
        ks = params.get("kappa_set", FIG4_KAPPA)
        labels = [RepresentationLabel(k, params.get("s", 1)) for k in ks]
        return _q_lines(fid, labels, [f"Q_kappa={k:g}" for k in ks], detail)(tol, params)
    return build


def _fig5(tol, params):
    ss = params.get("s_set", FIG5_S)
    us = _q_grid(params.get("u_max", 0.99), params.get("points", Q_GRID))
    rows = [(s, u, mandel_q_limit_kappa_infinity(s, u),
             mandel_q(RepresentationLabel(FIG5_KAPPA_OVERLAY, s), u)) for s in ss for u in us]
    return FigureData("5", "lines", ["s", "u", "Q_infinity", "Q_kappa_1e8"], np.array(rows, float),
                      {"xlabel": "u", "ylabel": "Q", "group": "s", "y": "Q_infinity"})


def _surface(fid, s):
    def build(tol, params):
        n = params.get("grid", SURFACE_GRID)
        rho = np.linspace(0.0, params.get("rho_max", SURFACE_RHO_MAX), n)
        phi = np.linspace(0.0, 2 * np.pi, n)
        lab = RepresentationLabel(params.get("kappa", 1.0), params.get("s", s))
        delta = squeezing_inequality_surfaces(lab, rho, phi)
        rr, pp = np.meshgrid(rho, phi, indexing="ij")
        rows = np.column_stack([rr.ravel(), pp.ravel(), delta.ravel()])
        return FigureData(fid, "heatmap", ["rho_abs", "phi", "delta"], rows,
                          {"shape": (n, n), "xlabel": "|rho|", "ylabel": "phi"})
    return build


def _portrait(fid):
    def build(tol, params):
        kappa, s = PORTRAITS[fid]
        lab = RepresentationLabel(params.get("kappa", kappa), params.get("s", s))
        n = params.get("grid", PORTRAIT_GRID)
        p = portrait_density(lab, params.get("alpha", PORTRAIT_ALPHA), n, n)
        rr, aa = np.meshgrid(p.radii, p.angles, indexing="ij")
        rows = np.column_stack([rr.ravel(), aa.ravel(), p.grid.ravel()])
        return FigureData(fid, "polar", ["radius", "angle", "density"], rows,
                          {"shape": p.grid.shape})
    return build


_BUILDERS = {
    "1a": _fig1a, "1b": _fig1b,
    "2a": _fig2("2a", 1.0), "2b": _fig2("2b", 3.0),
    "3a": _fig3("3a", False), "3b": _fig3("3b", True),
    "4a": _fig4("4a", False), "4b": _fig4("4b", True),
    "5": _fig5, "6": _surface("6", 0), "7": _surface("7", 1),
    "8a": _portrait("8a"), "8b": _portrait("8b"), "9a": _portrait("9a"), "9b": _portrait("9b"),
}


def figure_data(figure_id: str, tol: float = 1e-12, **params) -> FigureData:
    """Compute the rows behind one figure; ``params`` override the default sets."""
    fid = str(figure_id)
    if fid not in _BUILDERS:
        raise ValueError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURE_IDS)}")
    return _BUILDERS[fid](tol, params)


def write_csv(data: FigureData, path) -> Path:
    path = Path(path)
    try:
        with open(path, "w", newline="") as fh:
            fh.write(f"# schema={SCHEMA_VERSION} figure={data.figure_id}\n")
            fh.write(",".join(data.header) + "\n")
            np.savetxt(fh, data.rows, fmt="%.17g", delimiter=",")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def write_svg(data: FigureData, path) -> Path:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    plt.rcParams["svg.hashsalt"] = "su11cs"
    if data.kind == "polar":
        fig, ax = plt.subplots(subplot_kw={"projection": "polar"}, figsize=(5, 5))
    else:
        fig, ax = plt.subplots(figsize=(6, 4))
    try:
        rows = data.rows
        if data.kind == "lines" and "group" in data.meta:
            g, x = rows[:, 0], rows[:, 1]
            y = rows[:, data.header.index(data.meta["y"])]
            for val in np.unique(g):
                sel = g == val
                ax.plot(x[sel], y[sel], label=f"{data.meta['group']}={val:g}")
        elif data.kind == "lines":
            for j, name in enumerate(data.header[1:], start=1):
                ax.plot(rows[:, 0], rows[:, j], label=name)
        else:
            shape = data.meta["shape"]
            a, b, z = (rows[:, i].reshape(shape) for i in range(3))
            if data.kind == "polar":
                mesh = ax.pcolormesh(b, a, z, shading="nearest")
            else:
                mesh = ax.pcolormesh(a, b, z, shading="nearest")
            fig.colorbar(mesh, ax=ax)
        if data.kind != "polar":
            ax.set_xlabel(data.meta.get("xlabel", ""))
            ax.set_ylabel(data.meta.get("ylabel", ""))
        if data.kind == "lines":
            ax.legend(fontsize="small")
        ax.set_title(f"figure {data.figure_id}")
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    finally:
        plt.close(fig)
    return path


def run_figure(figure_id: str, out_dir=".", fmt: str = "both", tol: float = 1e-12,
               **params) -> list[Path]:
    """Write ``figure_<id>.csv`` and/or ``figure_<id>.svg`` into ``out_dir``."""
    if fmt not in ("csv", "svg", "both"):
        raise ValueError(f"format must be csv, svg or both, got {fmt!r}")
    data = figure_data(figure_id, tol, **params)
    out = Path(out_dir)
    if not out.is_dir():
        raise OSError(f"output directory {out} does not exist")
    paths = []
    if fmt in ("csv", "both"):
        paths.append(write_csv(data, out / f"figure_{data.figure_id}.csv"))
    if fmt in ("svg", "both"):
        paths.append(write_svg(data, out / f"figure_{data.figure_id}.svg"))
    return paths
