import csv
import json

import numpy as np
import pytest

from conftest import business_dates, write_pair_csv, write_price_csv
from wavehedge.cli import main
from wavehedge.synthetic import common_factor_pair, prices_from_returns


def read_table(path):
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    return list(csv.DictReader(lines))


def provenance(path):
    out = {}
    for line in path.read_text().splitlines():
        if line.startswith("# provenance: "):
            key, _, value = line[len("# provenance: "):].partition("=")
            out[key] = json.loads(value)
    return out


def pair_files(tmp_path, n_returns, seed=0, same=False):
    s, f = common_factor_pair(n_returns, seed=seed)
    dates = business_dates(n_returns + 1)
    sp = write_price_csv(tmp_path / "spot.csv", dates, prices_from_returns(s))
    fp = sp if same else write_price_csv(tmp_path / "fut.csv", dates, prices_from_returns(f))
    return str(sp), str(fp)


def run_cli(args):
    return main([str(a) for a in args])


def test_hedge_row_count_and_files(tmp_path):
    n, w, o, levels = 150, 40, 30, 2
    sp, fp = pair_files(tmp_path, n)
    out = tmp_path / "out"
    code = run_cli(["hedge", "--spot", sp, "--futures", fp, "--window", w, "--oos", o,
                    "--levels", levels, "--filter", "haar", "--out", out])
    assert code == 0
    rows = read_table(out / "hedge_windows.csv")
    assert len(rows) == (n - w - o + 1) * (levels + 1)
    assert provenance(out / "hedge_windows.csv")["row_count"] == len(rows)
    summary = read_table(out / "hedge_summary.csv")
    assert [(r["sample"], r["scale"]) for r in summary] == [
        (s, str(j)) for s in ("in", "out") for j in range(levels + 1)
    ]
    assert len(read_table(out / "hedge_summary_insample_all.csv")) == levels + 1
    assert len(read_table(out / "hedge_static.csv")) == levels + 1


def test_hedge_identical_files(tmp_path):
    sp, _ = pair_files(tmp_path, 120, same=True)
    out = tmp_path / "out"
    assert run_cli(["hedge", "--spot", sp, "--futures", sp, "--window", 50, "--oos", 50,
                    "--levels", 3, "--filter", "d4", "--out", out]) == 0
    for r in read_table(out / "hedge_windows.csv"):
        for col in ("hedge_ratio", "he_variance_in", "he_variance_out", "he_var_in", "he_var_out"):
            assert float(r[col]) == pytest.approx(1.0, abs=1e-11)


def test_hedge_degenerate_exit_code(tmp_path, capsys):
    dates = business_dates(101)
    moves = np.random.default_rng(0).normal(0, 0.01, 100)
    sp = write_price_csv(tmp_path / "s.csv", dates, prices_from_returns(moves))
    fp = write_price_csv(tmp_path / "f.csv", dates, np.full(101, 50.0))
    assert run_cli(["hedge", "--spot", sp, "--futures", fp, "--window", 40, "--oos", 30,
                    "--levels", 2, "--filter", "haar", "--out", tmp_path / "o"]) == 3
    assert "futures variance" in capsys.readouterr().err


def test_hedge_too_short_exit_code(tmp_path, capsys):
    sp, fp = pair_files(tmp_path, 100)
    assert run_cli(["hedge", "--spot", sp, "--futures", fp, "--out", tmp_path / "o"]) == 2
    assert "2000" in capsys.readouterr().err


def test_missing_and_empty_files(tmp_path, capsys):
    assert run_cli(["stats", "--spot", tmp_path / "nope.csv", "--futures", tmp_path / "nope.csv"]) == 2
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert run_cli(["stats", "--spot", empty, "--futures", empty, "--out", tmp_path / "o"]) == 2
    assert "empty.csv" in capsys.readouterr().err


def test_misaligned_dates_rejected(tmp_path, capsys):
    d = business_dates(40)
    a = write_price_csv(tmp_path / "a.csv", d[:30], np.linspace(1, 2, 30))
    b = write_price_csv(tmp_path / "b.csv", d[5:35], np.linspace(1, 2, 30))
    assert run_cli(["stats", "--spot", a, "--futures", b, "--out", tmp_path / "o"]) == 2
    assert "dates differ" in capsys.readouterr().err


def test_stats_gaussian(tmp_path):
    r = np.random.default_rng(21)
    n = 20_000
    dates = business_dates(n + 1)
    sp = write_price_csv(tmp_path / "s.csv", dates, prices_from_returns(r.normal(0, 0.01, n)))
    fp = write_price_csv(tmp_path / "f.csv", dates, prices_from_returns(r.normal(0, 0.01, n)))
    out = tmp_path / "out"
    assert run_cli(["stats", "--spot", sp, "--futures", fp, "--out", out]) == 0
    rows = read_table(out / "stats.csv")
    assert len(rows) == 2 * 7
    assert [r["series"] for r in rows] == ["cash"] * 7 + ["futures"] * 7
    for row in rows:
        scale = int(row["scale"])
        assert abs(float(row["kurtosis"]) - 3) < 0.5
        if scale > 0:
            assert row["mean"] == "0"
            assert int(row["n"]) == n - (2**scale - 1) * 7
        if scale <= 1:
            # higher-scale coefficients are autocorrelated, so the chi-square
            # reference for JB only applies at the finest scales
            assert float(row["jarque_bera"]) < 5.99


def test_stats_short_input_marks_na(tmp_path):
    sp, fp = pair_files(tmp_path, 300)
    out = tmp_path / "out"
    assert run_cli(["stats", "--spot", sp, "--futures", fp, "--out", out]) == 0
    rows = {(r["series"], r["scale"]): r for r in read_table(out / "stats.csv")}
    assert rows["cash", "6"]["stdev"] == "NA:window_shorter_than_filter"
    assert rows["cash", "5"]["stdev"] != "NA:window_shorter_than_filter"


def test_stats_zero_variance_scale_marked(tmp_path):
    dates = business_dates(101)
    const = write_price_csv(tmp_path / "c.csv", dates, np.full(101, 5.0))
    out = tmp_path / "out"
    assert run_cli(["stats", "--spot", const, "--futures", const, "--levels", 2,
                    "--out", out]) == 0
    for row in read_table(out / "stats.csv"):
        assert row["skewness"] == "NA:zero_variance"


def test_decompose_energy_and_roundtrip(tmp_path):
    sp, _ = pair_files(tmp_path, 1000)
    out = tmp_path / "out"
    assert run_cli(["decompose", "--spot", sp, "--roundtrip", "--out", out]) == 0
    energy = {r["component"]: r for r in read_table(out / "decompose_energy.csv")}
    assert float(energy["relative_error"]["sum_of_squares"]) <= 1e-10
    parts = sum(float(energy[f"detail_{j}"]["sum_of_squares"]) for j in range(1, 7))
    parts += float(energy["smooth_6"]["sum_of_squares"])
    assert parts == pytest.approx(float(energy["input_total"]["sum_of_squares"]), rel=1e-10)
    assert float(energy["roundtrip_max_abs_error"]["sum_of_squares"]) <= 1e-10 * 0.05
    coefs = read_table(out / "decompose_coefficients.csv")
    assert len(coefs) == 6 * 1000


def test_decompose_constant_input(tmp_path):
    dates = business_dates(65)
    p = write_price_csv(tmp_path / "c.csv", dates, 3.0 * 1.01 ** np.arange(65))
    out = tmp_path / "out"
    assert run_cli(["decompose", "--spot", p, "--levels", 3, "--out", out]) == 0
    for row in read_table(out / "decompose_coefficients.csv"):
        assert abs(float(row["detail"])) < 1e-15


def test_decompose_from_combined_file(tmp_path):
    d = business_dates(50)
    path = write_pair_csv(tmp_path / "pair.csv", d, np.linspace(1, 2, 50), np.linspace(2, 1, 50))
    out = tmp_path / "out"
    assert run_cli(["decompose", "--data", path, "--series", "futures", "--levels", 2,
                    "--filter", "haar", "--out", out]) == 0
    assert len(read_table(out / "decompose_coefficients.csv")) == 2 * 49


def test_subsample_table(tmp_path):
    n_returns = 1000
    sp, fp = pair_files(tmp_path, n_returns)
    out = tmp_path / "out"
    assert run_cli(["subsample", "--spot", sp, "--futures", fp, "--out", out]) == 0
    rows = read_table(out / "subsample_summary.csv")
    assert [int(r["data_points"]) for r in rows] == [200, 66, 33, 16]
    by_k = {int(r["horizon"]): r for r in rows}
    # 1000 returns at 6 days: 166 returns from 997 prices, 4 trailing prices dropped
    assert int(by_k[6]["returns"]) == 166
    assert int(by_k[6]["dropped_prices"]) == 4
    assert int(by_k[12]["windows"]) == 83 - 16 + 1
    windows = read_table(out / "subsample_windows.csv")
    assert len(windows) == sum(int(r["windows"]) for r in rows)


def test_subsample_horizon_one_matches_hedge_scale_zero(tmp_path):
    sp, fp = pair_files(tmp_path, 500)
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_cli(["subsample", "--spot", sp, "--futures", fp, "--horizons", "1",
                    "--out", a]) == 0
    assert run_cli(["hedge", "--spot", sp, "--futures", fp, "--window", 200, "--oos", 200,
                    "--levels", 4, "--out", b]) == 0
    sub = read_table(a / "subsample_windows.csv")
    hedge = [r for r in read_table(b / "hedge_windows.csv") if r["scale"] == "0"]
    assert len(hedge) == 101
    for x, y in zip(sub, hedge):
        assert x["start_date"] == y["start_date"]
        assert x["hedge_ratio"] == y["hedge_ratio"]
        assert x["he_variance"] == y["he_variance_in"]


def test_json_format_and_provenance(tmp_path):
    sp, fp = pair_files(tmp_path, 150)
    out = tmp_path / "out"
    assert run_cli(["hedge", "--spot", sp, "--futures", fp, "--window", 40, "--oos", 30,
                    "--levels", 2, "--filter", "haar", "--format", "json", "--out", out]) == 0
    doc = json.loads((out / "hedge_summary.json").read_text())
    prov = doc["provenance"]
    assert prov["config"]["window"] == 40
    assert prov["config"]["filter"] == "haar"
    assert len(prov["config_hash"]) == 64 and len(prov["input_digest"]) == 64
    assert prov["row_count"] == len(doc["rows"]) == 6
    assert doc["columns"][:4] == ["sample", "scale", "windows", "hedge_ratio"]


def test_reruns_are_byte_identical(tmp_path, monkeypatch):
    sp, fp = pair_files(tmp_path, 300)
    outputs = []
    for threads, name in (("1", "a"), ("3", "b")):
        monkeypatch.setenv("WAVEHEDGE_THREADS", threads)
        out = tmp_path / name
        assert run_cli(["hedge", "--spot", sp, "--futures", fp, "--window", 120, "--oos", 60,
                        "--levels", 3, "--out", out]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outputs[0] == outputs[1]


def test_bad_arguments_exit_two(tmp_path):
    sp, fp = pair_files(tmp_path, 150)
    assert run_cli(["hedge", "--spot", sp, "--futures", fp, "--window", 10,
                    "--out", tmp_path / "o"]) == 2
    assert run_cli(["subsample", "--spot", sp, "--futures", fp, "--horizons", "100",
                    "--out", tmp_path / "o"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["hedge", "--filter", "db2"])
    assert exc.value.code == 2
