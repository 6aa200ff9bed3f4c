import csv
import json

import pytest

from biirp.cli import main, read_config_file
from biirp.experiments import ExperimentConfig, normalized_budget
from biirp.instance import generate_instance, read_instance


@pytest.fixture
def inst_file(tmp_path):
    path = tmp_path / "i.txt"
    assert main(["generate", "--seed", "4", "--n", "5", "--horizon", "8", "--out", str(path)]) == 0
    return path


def test_generate_round_trips(inst_file):
    assert read_instance(inst_file) == generate_instance(4, 5, 8)


def solve(inst_file, out, *extra):
    return main([
        "solve", "--instance", str(inst_file), "--repr", "dated", "--strategy", "refpoints",
        "--R", "3", "--budget", "400", "--seed", "1", "--checkpoint-every", "50", "--out", str(out), *extra,
    ])


def test_solve_deterministic(inst_file, tmp_path):
    assert solve(inst_file, tmp_path / "a") == 0
    assert solve(inst_file, tmp_path / "b") == 0
    assert solve(inst_file, tmp_path / "c", "--workers", "2") == 0
    for name in ("front.csv", "trace.csv", "stats.json"):
        first = (tmp_path / "a" / name).read_bytes()
        assert first == (tmp_path / "b" / name).read_bytes() == (tmp_path / "c" / name).read_bytes()
    stats = json.loads((tmp_path / "a" / "stats.json").read_text())
    assert stats["ev"] >= 400


def test_solve_missing_instance(tmp_path, capsys):
    missing = tmp_path / "nope.txt"
    assert main(["solve", "--instance", str(missing), "--budget", "10", "--out", str(tmp_path / "o")]) == 2
    assert str(missing) in capsys.readouterr().err


def test_solve_malformed_instance(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("NAME x\nN two\nH 3\nCAPACITY 5\nDEPOT 0 0\n")
    assert main(["solve", "--instance", str(bad), "--budget", "10", "--out", str(tmp_path / "o")]) == 2
    err = capsys.readouterr().err
    assert str(bad) in err and "line 2" in err


def test_usage_errors(tmp_path, inst_file):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--instance", str(inst_file)])
    assert info.value.code == 1
    rc = main(["compare", "--instance", str(inst_file), "--budget", "10", "--k", "1", "--out", str(tmp_path / "x")])
    assert rc == 1
    assert main(["generate", "--seed", "1", "--n", "0", "--out", str(tmp_path / "g")]) == 1


def test_budget_rule():
    assert normalized_budget(20, 5, 10) == 80000
    cfg = ExperimentConfig(gen_sizes=[20], gen_count=1, R=5, k=10)
    assert cfg.budget_for(generate_instance(1, 20, 30)) == 80000


def test_compare_counts(tmp_path, inst_file):
    out = tmp_path / "cmp"
    rc = main([
        "compare", "--instance", str(inst_file), "--repr", "freq", "dated", "--seeds", "1", "2", "3",
        "--R", "3", "--budget", "300", "--checkpoints", "3", "--out", str(out),
    ])
    assert rc == 0
    assert len(list((out / "fronts").glob("*.csv"))) == 6
    assert len(list((out / "traces").glob("*.csv"))) == 6
    with (out / "metrics.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["run_id", "representation", "strategy", "seed", "ev_checkpoint", "hypervolume", "epsilon", "front_size"]
    assert len({r["run_id"] for r in rows}) == 6
    summary = (out / "summary.txt").read_text()
    assert "representation" in summary and "/3" in summary


def test_compare_config_file(tmp_path, inst_file):
    conf = tmp_path / "exp.conf"
    conf.write_text(
        f"# small comparison\ninstance = {inst_file}\nstrategy = refpoints crowding\n"
        "repr = dated\nseeds = 1 2\nR = 2\nbudget = 200\n"
    )
    assert read_config_file(conf)["seeds"] == [1, 2]
    out = tmp_path / "cfg"
    assert main(["compare", "--config", str(conf), "--out", str(out)]) == 0
    runs = sorted(p.stem for p in (out / "fronts").glob("*.csv"))
    assert len(runs) == 4 and sum("crowding" in r for r in runs) == 2


def test_hv(tmp_path, capsys):
    f = tmp_path / "f.csv"
    f.write_text("z1,z2,genotype\n0,0.5,x\n0.5,0,y\n")
    assert main(["hv", "--front", str(f), "--ref", "1", "1"]) == 0
    assert float(capsys.readouterr().out) == 0.75
    assert main(["hv", "--front", str(tmp_path / "none.csv")]) == 2
