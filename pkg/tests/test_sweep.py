from bcnf.sweep import HEADER, GridSpec, read_csv, rows_to_csv, run_sweep

DOTS = GridSpec(tau_L=(1.35, 1.35, 1), tau_R=(-1.4, 0.0, 3))


def test_slice_points():
    rows = read_csv(rows_to_csv(run_sweep(DOTS)))
    assert [r["tau_R"] for r in rows] == ["-1.4", "-0.7", "0.0"]
    assert [r["verdict"] for r in rows] == ["chaos", "stop", "chaos"]
    assert rows[1]["stop_step"] == "3"
    assert rows[0]["sim_kind"] == ""


def test_csv_format():
    text = rows_to_csv(run_sweep(DOTS, with_sim=True))
    assert "\r" not in text and "nan" not in text.lower()
    lines = text.splitlines()
    assert lines[0].split(",") == HEADER
    assert lines[2].split(",")[10:12] == ["PERIODIC", "5"]


def test_thread_count_does_not_change_output():
    g = GridSpec(tau_L=(0.8, 2.0, 6), tau_R=(-2.0, 1.0, 6))
    one = rows_to_csv(run_sweep(g, threads=1, with_sim=True))
    two = rows_to_csv(run_sweep(g, threads=2, with_sim=True))
    assert one == two


def test_grid_order():
    g = GridSpec(tau_L=(0.0 + 1, 2.0, 2), tau_R=(0.0, 1.0, 2))
    assert g.points() == [(1.0, 0.0), (1.0, 1.0), (2.0, 0.0), (2.0, 1.0)]
