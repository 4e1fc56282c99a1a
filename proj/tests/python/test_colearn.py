import math
import os
import subprocess

import pytest

import colearn


def test_counts():
    assert colearn.basic_round_count(10) == 24
    assert colearn.mw_round_count(10, 0.1) == 9211
    assert colearn.test_sample_count(0.1, 0.1, 10, 0) == 25884
    assert colearn.weak_test_sample_count(0.1) == 19895
    assert colearn.tuned_test_sample_count(0.1) == 300
    assert colearn.sample_size(0.1, 0.1, 10, colearn.SampleSizeProfile.tuned()) == 13


def test_run_mweights_on_psi():
    h = colearn.generate("psi", 4, 2, 0.2, 3)
    assert h.k == 4 and sorted(h.permutation) == [0, 1, 2, 3]
    inst = h.instance()
    assert inst.k == 4 and inst.has_exact_errors
    cfg = colearn.RunConfig()
    cfg.epsilon = 0.2
    cfg.d = inst.capacity
    cfg.profile = colearn.SampleSizeProfile.tuned()
    cfg.seed = 9
    r = colearn.run(inst, cfg)
    assert r.learning_samples > 0 and r.test_samples > 0
    assert sum(r.samples_per_player) == r.learning_samples + r.test_samples
    assert len(r.player_errors) == 4
    assert len(r.diagnostics) == colearn.tuned_round_count(4)
    assert r.diagnostics[0]["weight"] == 4
    assert r.diagnostics_csv().splitlines()[0] == "t,W,Q,chi,psi_count"
    again = colearn.run(inst, cfg)
    assert again.player_errors == r.player_errors


def test_bad_config_raises():
    cfg = colearn.RunConfig()
    cfg.epsilon = 1.5
    with pytest.raises(ValueError):
        colearn.run(colearn.generate("psi", 2, 2, 0.1, 0).instance(), cfg)


def test_rate_and_ladder():
    r = colearn.Rate.parse("0.9")
    assert (r.num, r.den) == (9, 10)
    assert r.met(45, 50) and not r.met(44, 50)
    ladder = colearn.BudgetLadder()
    ladder.max = 10
    assert ladder.rungs() == [1, 2, 3, 4, 5, 6, 8, 10]


def test_result_csv_schema(tmp_path):
    spec = colearn.BudgetSearchSpec()
    spec.epsilons = [0.2, 0.3]
    spec.runs = 10
    rows = colearn.budget_search("psi", 4, 2, colearn.Algorithm.mweights, spec)
    rows += colearn.budget_search("psi", 4, 2, colearn.Algorithm.naive, spec)
    path = tmp_path / "results.csv"
    colearn.write_results(rows, str(path))
    assert path.read_text().splitlines()[0] == ",".join(colearn.RESULT_COLUMNS)
    table = colearn.read_result_table(str(path))
    assert len(table) == 4
    for row in table:
        assert row["instance"] == "psi-k4-d2"
        assert row["total_samples"] == row["learning_samples"] + row["test_samples"]
        assert 0 <= row["success_rate"] <= 1
    assert colearn.load_results(str(path)) == rows


def test_result_csv_not_found(tmp_path):
    row = colearn.ResultRow()
    row.instance, row.algorithm, row.epsilon = "x", "naive", 0.1
    path = tmp_path / "nf.csv"
    colearn.write_results([row], str(path))
    (parsed,) = colearn.read_result_table(str(path))
    assert parsed["budget"] is None and parsed["total_samples"] is None
    assert not colearn.load_results(str(path))[0].found()


def test_result_csv_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("instance,algorithm\nx,y\n")
    with pytest.raises(ValueError):
        colearn.read_result_table(str(path))


@pytest.mark.skipif("COLEARN_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_output_matches_schema(tmp_path):
    out = tmp_path / "cli.csv"
    subprocess.run(
        [os.environ["COLEARN_CLI"], "budget-search", "--generator", "psi", "--k", "2", "--d", "2",
         "--epsilon", "0.25", "--runs", "5", "--algo", "naive", "--out", str(out)],
        check=True,
    )
    (row,) = colearn.read_result_table(str(out))
    assert row["algorithm"] == "naive" and math.isclose(row["epsilon"], 0.25)
