import numpy as np
import pytest

from ctrldense import sweep

P4 = np.pi / 4


def rows_at(name, col, value, **kw):
    h, rows = sweep.figure(name, **kw)
    k = h.index(col)
    return h, [r for r in rows if abs(r[k] - value) < 1e-12]


def test_grid_validation():
    with pytest.raises(ValueError):
        sweep.SweepGrid(("t",), (0.0,), (1.0,), 1)
    with pytest.raises(ValueError):
        sweep.SweepGrid(("t",), (0.0,), (np.inf,))
    with pytest.raises(ValueError):
        sweep.figure("fig9")
    with pytest.raises(ValueError):
        sweep.table("t99")


def test_fig1_peak():
    h, (row,) = rows_at("fig1", "theta", P4)
    assert row[1] == pytest.approx(2.0) and row[2] == pytest.approx(2.0)


def test_fig1_matches_formulas_on_their_halves():
    h, rows = sweep.figure("fig1", sweep.default_grid("fig1", 21))
    for t, bs, bc, fs, fc in rows:
        if t <= P4:
            assert abs(bs - fs) <= 1e-9
        if t >= P4:
            assert abs(bc - fc) <= 1e-9


def test_fig2_l_at_pi_over_4():
    h, (row,) = rows_at("fig2", "theta", P4)
    assert row[1] == pytest.approx(1.0)
    _, rows = sweep.figure("fig2")
    assert all(abs(r[2] - 1) <= 1e-9 for r in rows)


def test_fig3_and_fig7_match_closed_forms():
    for fig in ("fig3", "fig7"):
        h, rows = sweep.figure(fig)
        a = np.array(rows, dtype=float)
        assert np.max(np.abs(a[:, h.index("closed_form")] - a[:, -2])) <= 1e-9


def test_fig4_small_grid():
    h, rows = sweep.figure("fig4", sweep.default_grid("fig4", 9))
    a = np.array(rows, dtype=float)
    assert np.max(np.abs(a[:, 3] - a[:, 4])) <= 1e-9
    assert set(a[:, 2]) == {0.0, 1.0}


def test_fig5_three_curves():
    h, rows = sweep.figure("fig5", sweep.default_grid("fig5", 11))
    assert h == ["theta", "wootters", "branch", "closed_form_sqrt2"]
    t, w, b, c = rows[0]
    assert w == pytest.approx(2 / 3) and b == pytest.approx(1) and c == pytest.approx(np.sqrt(2) / 2)


def test_fig6_bound_and_slice():
    h, rows = sweep.figure("fig6")
    a = np.array(rows, dtype=float)
    assert a[:, 2].max() <= 0.52
    assert a[:, 4].sum() == 101


def test_tables():
    h, rows = sweep.table("t21")
    assert len(rows) == 63 and max(r[-1] for r in rows) <= 1e-9
    g4 = [r for r in rows if r[0] == "G4"]
    assert len(g4) == 9 and g4[0][1] == "+" and g4[0][2] == "1+2cos^2(theta)"
    h, rows = sweep.table("t22")
    first, last = rows[0], rows[-1]
    assert first[0] == 0 and first[2] == "1|00>" and first[3] == pytest.approx(0, abs=1e-9)
    assert last[0] == 1 and last[1] == pytest.approx(P4) and last[3] == pytest.approx(1)
    assert all(abs(r[3] - r[4]) <= 1e-9 for r in rows)


def test_csv_format():
    text = sweep.to_csv(["a", "b", "c"], [[1 / 3, np.nan, "x"], [0.0, -0.0, 2]])
    assert text == "a,b,c\n0.333333333333,nan,x\n0,0,2\n"


def test_csv_byte_stable(tmp_path):
    h, rows = sweep.generate("fig7", 11)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    sweep.write_csv(p1, h, rows)
    sweep.write_csv(p2, *sweep.generate("fig7", 11))
    assert p1.read_bytes() == p2.read_bytes()
