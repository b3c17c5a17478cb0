import io
import json

import pytest

from muletree.cli import main
from muletree.sweeps import (
    CSV_COLUMNS,
    SweepSpec,
    cell_seed,
    read_csv,
    run_cell,
    run_sweep,
    write_csv,
)


def test_cell_seed_stable_and_distinct():
    s = cell_seed(0, 16.0, 10.0, 0)
    assert s == cell_seed(0, 16.0, 10.0, 0)
    others = {
        cell_seed(0, 16.0, 10.0, 1),
        cell_seed(0, 4.0, 10.0, 0),
        cell_seed(0, 16.0, 2.5, 0),
        cell_seed(1, 16.0, 10.0, 0),
    }
    assert s not in others and len(others) == 4
    assert 0 <= s < 2 ** 64


def test_run_cell_record():
    r = run_cell(4.0, 10.0, cell_seed(0, 4.0, 10.0, 0), 0.2, "center-node")
    assert r.n == 40
    assert r.alpha == pytest.approx(r.weight_cds / r.lb)
    assert r.alpha_valid == (r.diameter >= 3)
    assert r.runtime_ms >= 0
    assert r.solution_cost > 0


def test_run_sweep_order_and_csv_roundtrip():
    spec = SweepSpec(areas=[4.0], densities=[5.0, 2.5], seeds_per_cell=2,
                     base_seed=3)
    records = run_sweep(spec)
    assert len(records) == 4
    keys = [(r.area, r.density, r.seed) for r in records]
    assert keys == sorted(keys)
    buf = io.StringIO()
    write_csv(records, buf)
    text = buf.getvalue()
    assert text.startswith("# muletree-sweep-v1\n")
    assert text.splitlines()[1] == ",".join(CSV_COLUMNS)
    back = read_csv(io.StringIO(text))
    for a, b in zip(records, back):
        assert (a.area, a.density, a.seed, a.n, a.diameter) == \
            (b.area, b.density, b.seed, b.n, b.diameter)
        assert b.alpha == pytest.approx(a.alpha, rel=1e-9)
        assert b.alpha == pytest.approx(b.weight_cds / b.lb, rel=1e-9)


def test_read_csv_rejects_bad_schema():
    with pytest.raises(ValueError):
        read_csv(io.StringIO("area,density\n"))


def test_run_sweep_validates_spec():
    with pytest.raises(ValueError):
        run_sweep(SweepSpec(densities=[]))
    with pytest.raises(ValueError):
        run_sweep(SweepSpec(r_m=0.5))


def test_run_sweep_parallel_matches_serial():
    spec = SweepSpec(areas=[4.0], densities=[2.5, 5.0], seeds_per_cell=2,
                     base_seed=9)
    serial = run_sweep(spec)
    parallel = run_sweep(SweepSpec(areas=[4.0], densities=[2.5, 5.0],
                                   seeds_per_cell=2, base_seed=9, jobs=2))
    assert [(r.seed, r.alpha, r.weight_cds) for r in serial] == \
        [(r.seed, r.alpha, r.weight_cds) for r in parallel]


def test_cli_gen_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a.txt"
    out2 = tmp_path / "b.txt"
    args = ["--area", "4", "--density", "10", "--seed", "1"]
    assert main(["gen", *args, "-o", str(out1)]) == 0
    assert main(["gen", *args, "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_text().splitlines()[0] == "40"


def test_cli_gen_failure_exit_2(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen", "--area", "10000", "--density", "0.01", "--seed", "1",
                 "--max-rejections", "3", "-o", str(out)]) == 2
    # zero-node request is also a generation failure
    assert main(["gen", "--area", "4", "--density", "0.001", "--seed", "1",
                 "-o", str(out)]) == 2


def test_cli_usage_errors():
    assert main(["frobnicate"]) == 1
    assert main(["gen", "--area", "4"]) == 1


def test_cli_solve_verify(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    assert main(["gen", "--area", "4", "--density", "8", "--seed", "5",
                 "-o", str(graph)]) == 0
    out = tmp_path / "sol.json"
    code = main(["solve", str(graph), "--rm", "0.2", "--cost", "--verify",
                 "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["alpha"] <= 20.0 or not payload["alpha_valid"]
    assert len(payload["parent"]) == 32
    assert payload["cost"]["total"] > 0
    assert all(payload["checks"].values())


def test_cli_verify_certificate(tmp_path):
    graph = tmp_path / "g.txt"
    assert main(["gen", "--area", "2.25", "--density", "6", "--seed", "2",
                 "-o", str(graph)]) == 0
    out = tmp_path / "cert.json"
    assert main(["verify", str(graph), "--out", str(out)]) == 0
    cert = json.loads(out.read_text())
    assert "mwcds_opt" in cert  # 14 nodes, within oracle budget
    assert cert["checks"]["lb_below_opt"]
    assert cert["checks"]["weight_within_20_opt"]


def test_cli_sweep_density(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main(["sweep-density", "--area", "4", "--density", "2.5,5",
                 "--seeds-per-cell", "1", "--out", str(out)])
    assert code == 0
    with open(out) as fh:
        records = read_csv(fh)
    assert len(records) == 2
    assert main(["sweep-density", "--area", "4", "--density", "",
                 "--out", str(out)]) == 1


def test_cli_sweep_area_includes_epsilon(tmp_path):
    out = tmp_path / "area.csv"
    code = main(["sweep-area", "--area", "4,16", "--density", "2.5",
                 "--seeds-per-cell", "1", "--out", str(out)])
    assert code == 0
    header = out.read_text().splitlines()[1]
    assert "epsilon_hat" in header
