import csv
import io
import xml.etree.ElementTree as ET

import pytest

from besselprod import figures
from besselprod.specfun import product_ik


@pytest.fixture(scope="module")
def data():
    return figures.figure1_data()


def test_grid(data):
    xs, cols = data
    assert len(xs) == 500 and xs[0] == 1e-3 and xs[-1] == 2.5
    assert 1.0 in xs and all(a < b for a, b in zip(xs, xs[1:]))


def test_csv_shape_and_monotone_rows(data):
    rows = list(csv.reader(io.StringIO(figures.figure1_csv(*data))))
    assert rows[0] == ["x", "q_nu_0", "q_nu_0.15", "q_nu_0.2", "q_nu_0.25", "q_nu_0.33", "q_nu_0.5",
                       "q_nu_1", "q_nu_2"]
    body = [[float(v) for v in r] for r in rows[1:]]
    assert len(body) == 500 and all(len(r) == 9 for r in body)
    for r in body:
        assert all(a > b for a, b in zip(r[1:], r[2:]))


def test_row_at_one(data):
    xs, cols = data
    i = xs.index(1.0)
    for nu, qs in cols.items():
        assert qs[i] == pytest.approx(product_ik(nu, nu, 1.0).value, rel=1e-15)
    assert abs(cols[0.0][i] - 0.533045) < 1e-5


def test_svg(tmp_path, data):
    path = tmp_path / "f.svg"
    figures.render_figure1(str(path), "svg", *data)
    root = ET.parse(path).getroot()
    gids = {el.get("id") for el in root.iter()}
    for nu in figures.FIGURE1_ORDERS:
        assert figures.column_name(nu) in gids
    assert "limit_nu_0" in gids
    assert sum(1 for g in gids if g and g.startswith("q_nu_")) == 8


def test_svg_reproducible(tmp_path, data):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    figures.render_figure1(str(a), "svg", *data)
    figures.render_figure1(str(b), "svg", *data)
    assert a.read_bytes() == b.read_bytes()


def test_margin_plot(tmp_path):
    from besselprod.verify import Axis, SweepGrid, sweep
    rep = sweep("T2", SweepGrid(Axis.of([0.5, 2.0]), Axis.range(0.1, 10, 5, "log")))
    path = tmp_path / "m.png"
    figures.render_margins(str(path), rep.records, "T2")
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
