from pathlib import Path

import numpy as np
import pytest

from su11cs.figures import (
    FIG2_S, FIGURE_IDS, PORTRAITS, SURFACE_GRID, figure_data, run_figure, write_csv,
)
from su11cs.quantization import count_crests

GOLDEN = Path(__file__).parent / "golden"


def test_figure5_columns_and_formula():
    d = figure_data("5")
    assert d.header[:3] == ["s", "u", "Q_infinity"]
    s, u, q = d.rows[:, 0], d.rows[:, 1], d.rows[:, 2]
    np.testing.assert_allclose(q, (2 * s + u) / (1 - u), rtol=1e-14)


@pytest.mark.parametrize("fid", ["2a", "2b"])
def test_figure2_series_normalized(fid):
    d = figure_data(fid, tol=1e-12)
    assert d.header == ["n"] + [f"P_s={s}" for s in FIG2_S]
    sums = d.rows[:, 1:].sum(axis=0)
    np.testing.assert_allclose(sums, 1.0, atol=1e-12)


def test_figure1b_bose_einstein_default():
    d = figure_data("1b")
    # default kappa = 1 gives eta = 1/2; Nbar = 1 series is (n+1) 2^-(n+2)
    col = d.header.index("P_Nbar=1")
    n = d.rows[:, 0]
    np.testing.assert_allclose(d.rows[:20, col], (n[:20] + 1) * 2.0 ** (-(n[:20] + 2)), atol=1e-15)


def test_figure3b_spans_crossovers():
    d = figure_data("3b")
    # the window ends at the last crossover, so each s >= 1 curve starts negative and ends >= 0
    for j, name in enumerate(d.header[1:], start=1):
        if name != "Q_s=0":
            assert d.rows[0, j] < 0 and d.rows[-1, j] >= -1e-12


@pytest.mark.parametrize("fid", ["6", "7"])
def test_surface_shape(fid):
    d = figure_data(fid)
    assert d.rows.shape == (SURFACE_GRID * SURFACE_GRID, 3)
    assert d.rows[0, 2] == pytest.approx(-0.5)


@pytest.mark.parametrize("fid", sorted(PORTRAITS))
def test_portrait_crest_rings(fid):
    d = figure_data(fid)
    kappa, s = PORTRAITS[fid]
    grid = d.rows[:, 2].reshape(d.meta["shape"])
    # alpha = 0.1 is real, so angle column 0 is the ray through it
    assert count_crests(grid[:, 0]) == s


def test_figure8b_single_crest():
    d = figure_data("8b")
    grid = d.rows[:, 2].reshape(d.meta["shape"])
    assert count_crests(grid[:, 0]) == 1


@pytest.mark.parametrize("fid", ["2a", "5", "8b"])
def test_golden_csv_byte_exact(fid, tmp_path):
    path = write_csv(figure_data(fid), tmp_path / f"figure_{fid}.csv")
    assert path.read_bytes() == (GOLDEN / f"figure_{fid}.csv").read_bytes()


def test_csv_round_trip(tmp_path):
    d = figure_data("5")
    path = write_csv(d, tmp_path / "f.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "# schema=1 figure=5"
    back = np.loadtxt(path, delimiter=",", skiprows=2)
    np.testing.assert_array_equal(back, d.rows)


def test_svg_deterministic(tmp_path):
    a = run_figure("5", tmp_path, "svg")[0].read_bytes()
    b = run_figure("5", tmp_path, "svg")[0].read_bytes()
    assert a == b and a.lstrip().startswith(b"<?xml")


def test_all_figures_build(tmp_path):
    for fid in FIGURE_IDS:
        paths = run_figure(fid, tmp_path, "csv")
        assert paths[0].name == f"figure_{fid}.csv" and paths[0].stat().st_size > 0


def test_errors(tmp_path):
    with pytest.raises(ValueError):
        figure_data("10")
    with pytest.raises(OSError, match="does not exist"):
        run_figure("5", tmp_path / "missing", "csv")
    with pytest.raises(ValueError):
        run_figure("5", tmp_path, "png")
