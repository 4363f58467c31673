import csv
import json

import pytest

from c2arch import experiments as ex
from c2arch.cli import main


def _rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


SMALL = ["--r0-m", "300", "--rho-u-per-m2", "2e-3", "--r-th-m", "100"]


def test_compare_single_cellular_row(tmp_path):
    out = tmp_path / "o"
    rc = main(["compare", *SMALL, "--architectures", "cellular", "--seed", "0", "--output-dir", str(out)])
    assert rc == 0
    rows = _rows(out / "comparison.csv")
    assert rows[0] == list(ex.COMPARISON_COLUMNS)
    assert len(rows) == 2 and rows[1][1] == "cellular"
    summary = json.loads((out / "summary.json").read_text())
    assert summary["config"]["architectures"] == ["cellular"]
    assert summary["summary"][0]["seeds"] == 1


def test_compare_rows_per_architecture_and_seed(tmp_path):
    rc = main(["compare", *SMALL, "--seeds", "0,1", "--output-dir", str(tmp_path)])
    assert rc == 0
    rows = _rows(tmp_path / "comparison.csv")[1:]
    assert [(r[1], r[2]) for r in rows] == [
        ("c2", "0"), ("cellular", "0"), ("comp", "0"), ("c2", "1"), ("cellular", "1"), ("comp", "1")
    ]


def test_compare_r0_grid(tmp_path):
    rc = main(["compare", *SMALL, "--seed", "0", "--architectures", "c2", "--r0-grid", "200,300",
               "--output-dir", str(tmp_path)])
    assert rc == 0
    assert [r[0] for r in _rows(tmp_path / "comparison.csv")[1:]] == ["200.0", "300.0"]


def test_compare_default_r0_grid(tmp_path):
    rc = main(["compare", "--rho-u-per-m2", "5e-4", "--r-th-m", "150", "--seed", "0", "--architectures", "c2",
               "--r0-grid", "default", "--output-dir", str(tmp_path)])
    assert rc == 0
    assert [r[0] for r in _rows(tmp_path / "comparison.csv")[1:]] == ["400.0", "600.0", "800.0", "1000.0"]


@pytest.mark.parametrize(
    "argv",
    [
        ["compare", "--beta", "0"],
        ["compare", "--d0-m", "60"],
        ["compare", "--method", "exact"],
        ["compare", "--architectures", "c2,mesh"],
        ["compare", "--r0-m", "abc"],
        ["compare", "--r0-grid", "300,40"],
        ["bounds", "--rj-list=-5,50"],
        ["bounds", "--rj-list=0"],
        ["bounds", "--rj-list", "50", "--betas", "0"],
    ],
)
def test_config_errors_exit_2(argv, tmp_path, capsys):
    assert main([*argv, "--output-dir", str(tmp_path)]) == 2
    assert capsys.readouterr().err


def test_beta_error_names_field(tmp_path, capsys):
    main(["compare", "--beta", "0", "--output-dir", str(tmp_path)])
    assert "beta" in capsys.readouterr().err


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "scenario.cfg"
    cfg.write_text("# small network\nr0_m = 300\nrho_u_per_m2 = 2e-3  # per m^2\nr_th_m = 100\n"
                   "architectures = c2, cellular\nseeds = 0\n", encoding="utf-8")
    out = tmp_path / "o"
    assert main(["compare", "--config", str(cfg), "--architectures", "c2", "--output-dir", str(out)]) == 0
    rows = _rows(out / "comparison.csv")[1:]
    assert len(rows) == 1 and rows[0][1] == "c2" and rows[0][0] == "300.0"


def test_config_file_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("r0_m = 300\nradius = 5\n", encoding="utf-8")
    assert main(["compare", "--config", str(cfg), "--output-dir", str(tmp_path)]) == 2
    with pytest.raises(ex.ConfigError, match="radius"):
        ex.ScenarioConfig.from_file(cfg)


def test_missing_config_file_is_io_error(tmp_path):
    assert main(["compare", "--config", str(tmp_path / "none.cfg")]) == 4


def test_unwritable_output_is_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["compare", *SMALL, "--seed", "0", "--architectures", "cellular",
                 "--output-dir", str(blocker / "sub")]) == 4


def test_numerical_failure_exit_3(tmp_path, monkeypatch):
    from c2arch.quadrature import QuadratureError

    def boom(*a, **k):
        raise QuadratureError("quadrature failure", 1.0, 1.0)

    monkeypatch.setattr(ex, "run_bounds_curve", boom)
    assert main(["bounds", "--rj-list", "50", "--output-dir", str(tmp_path)]) == 3


def test_bounds_single_point(tmp_path):
    rc = main(["bounds", *SMALL, "--rj-list", "50", "--seed", "0", "--output-dir", str(tmp_path)])
    assert rc == 0
    rows = _rows(tmp_path / "bounds_curve.csv")
    assert rows[0] == list(ex.BOUNDS_COLUMNS)
    assert len(rows) == 2
    side = json.loads((tmp_path / "bounds_curve.json").read_text())
    assert side["rj_list"] == [50.0] and side["config"]["r0_m"] == 300.0


def test_heatmap_tables(tmp_path):
    rc = main(["heatmap", "--r0-m", "1000", "--rho-u-per-m2", "1e-3", "--beta", "3", "--r-th-m", "175",
               "--seed", "0", "--output-dir", str(tmp_path)])
    assert rc == 0
    c2 = _rows(tmp_path / "heatmap_c2.csv")
    assert c2[0] == list(ex.HEATMAP_COLUMNS)
    assert len(c2) - 1 == 24
    cell = _rows(tmp_path / "heatmap_cellular.csv")[1:]
    assert len(cell) == len({r[1] for r in cell}) and all(r[4] == "" for r in cell)
    assert sum(int(r[5]) for r in cell) == len(cell)
    for kind in ("c2", "cellular", "comp"):
        assert json.loads((tmp_path / f"heatmap_{kind}.json").read_text())["architecture"] == kind


def test_heatmap_c2_geometry_independent_of_bs_profile(tmp_path):
    args = ["heatmap", "--r0-m", "1000", "--rho-u-per-m2", "1e-3", "--beta", "3", "--r-th-m", "175",
            "--seed", "0", "--architectures", "c2"]
    assert main([*args, "--output-dir", str(tmp_path / "a")]) == 0
    assert main([*args, "--bs-profile", "concentric", "--output-dir", str(tmp_path / "b")]) == 0
    a = [r[2:5] for r in _rows(tmp_path / "a" / "heatmap_c2.csv")]
    b = [r[2:5] for r in _rows(tmp_path / "b" / "heatmap_c2.csv")]
    assert a == b


def test_byte_identical_outputs(tmp_path):
    args = ["compare", *SMALL, "--seeds", "3,4"]
    names = ("comparison.csv", "summary.json")
    assert main([*args, "--output-dir", str(tmp_path / "a")]) == 0
    first = [(tmp_path / "a" / n).read_bytes() for n in names]
    assert main([*args, "--output-dir", str(tmp_path / "a")]) == 0
    assert first == [(tmp_path / "a" / n).read_bytes() for n in names]
    raw = (tmp_path / "a" / "comparison.csv").read_bytes()
    assert b"\r\n" not in raw
    raw.decode("utf-8")


def test_scenario_defaults():
    cfg = ex.ScenarioConfig()
    assert (cfg.r0_m, cfg.rho_u_per_m2, cfg.beta, cfg.r_th_m, cfg.d0_m, cfg.d1_m) == (1000.0, 6e-3, 2.0, 100.0, 10.0, 50.0)
    assert cfg.r_comp == cfg.r_th_m
    assert ex.ScenarioConfig(r_comp_m=80.0).r_comp == 80.0
