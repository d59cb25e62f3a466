import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from reflect_endo.cli import main
from reflect_endo.tables import table_from_csv


@pytest.fixture()
def runner():
    return CliRunner()


def test_count_exceptional(runner):
    result = runner.invoke(main, ["count", "E8"])
    assert result.exit_code == 0
    assert result.output.strip() == "696929552"


def test_count_c3(runner):
    result = runner.invoke(main, ["count", "C:3"])
    assert result.exit_code == 0
    assert result.output.strip() == "400"


def test_count_hom(runner):
    result = runner.invoke(main, ["count", "--hom", "I2:3", "C:3"])
    assert result.exit_code == 0
    assert result.output.strip() == "68"


def test_count_hom_dihedral(runner):
    result = runner.invoke(main, ["count", "--hom-dihedral", "3", "I2:3"])
    assert result.exit_code == 0
    assert result.output.strip() == "10"
    result = runner.invoke(main, ["count", "--hom-dihedral", "2", "I2:2"])
    assert result.output.strip() == "16"


def test_count_usage_errors(runner):
    for args in (
        ["count", "Q:3"],
        ["count", "C:x"],
        ["count", "C:1"],
        ["count", "--hom", "C:3", "C:3"],
        ["count", "--hom", "I2:4", "C:3"],
        ["count", "--hom-dihedral", "3", "C:3"],
        ["count", "--hom", "I2:3", "--hom-dihedral", "3", "I2:3"],
    ):
        result = runner.invoke(main, args)
        assert result.exit_code == 2, args


def test_table_csv(runner):
    result = runner.invoke(main, ["table", "C:4"])
    assert result.exit_code == 0
    table = table_from_csv(result.output)
    assert len(table.rows) == 11
    assert table.total == 6496
    assert "# total,6496" in result.output


def test_table_even_dihedral(runner):
    result = runner.invoke(main, ["table", "I2:6"])
    table = table_from_csv(result.output)
    assert [r.e for r in table.rows] == [1, 7, 7, 7, 18, 12, 12]


def test_table_hom(runner):
    result = runner.invoke(main, ["table", "--hom", "I2:5", "C:3"])
    table = table_from_csv(result.output)
    assert len(table.rows) == 3
    assert table.total == 20


def test_table_json(runner):
    result = runner.invoke(main, ["table", "A:3", "--format", "json"])
    doc = json.loads(result.output)
    assert doc["total"] == 58


def test_verify_single_group(runner):
    result = runner.invoke(main, ["verify", "D:4", "--timestamp", "off"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["passed"] is True
    endo = [c for c in doc["checks"] if c["name"] == "endo_count"][0]
    assert endo["formula"] == endo["oracle"] == "3116"
    assert "elapsed_ms" not in doc and "generated_at" not in doc


def test_verify_budget_exceeded(runner):
    result = runner.invoke(main, ["verify", "C:5"])
    assert result.exit_code == 3


def test_verify_budget_flag(runner):
    # the work estimate for I2:3 is 4^2 + 6^2 = 52
    assert runner.invoke(main, ["verify", "I2:3", "--budget", "50"]).exit_code == 3
    assert runner.invoke(main, ["verify", "I2:3", "--budget", "100"]).exit_code == 0


def test_verify_budget_env_var(runner):
    refused = runner.invoke(main, ["verify", "I2:3"], env={"REFLECT_ENDO_BUDGET": "50"})
    assert refused.exit_code == 3
    allowed = runner.invoke(main, ["verify", "I2:3"], env={"REFLECT_ENDO_BUDGET": "100"})
    assert allowed.exit_code == 0
    # an explicit --budget wins over the environment
    override = runner.invoke(
        main, ["verify", "I2:3", "--budget", "100"], env={"REFLECT_ENDO_BUDGET": "50"}
    )
    assert override.exit_code == 0


def test_verify_mismatch_exits_one(runner, monkeypatch):
    from reflect_endo import counting

    real = counting.involution_count
    monkeypatch.setattr(counting, "involution_count", lambda gid: real(gid) + 1)
    result = runner.invoke(main, ["verify", "I2:5", "--timestamp", "off"])
    assert result.exit_code == 1
    doc = json.loads(result.output)
    assert doc["passed"] is False
    failed = [c for c in doc["checks"] if not c["pass"]]
    assert failed and failed[0]["name"] == "involution_count"


def test_verify_usage(runner):
    assert runner.invoke(main, ["verify"]).exit_code == 2
    assert runner.invoke(main, ["verify", "C:3", "--suite", "small"]).exit_code == 2
    # families without a concrete representation are a usage error, not a crash
    result = runner.invoke(main, ["verify", "H4"])
    assert result.exit_code == 2
    assert "no concrete representation" in result.output


def test_verify_timing_fields(runner):
    result = runner.invoke(main, ["verify", "I2:5"])
    doc = json.loads(result.output)
    assert "elapsed_ms" in doc and "generated_at" in doc


def test_verify_threads_deterministic(runner):
    a = runner.invoke(main, ["verify", "C:3", "--threads", "1", "--timestamp", "off"])
    b = runner.invoke(main, ["verify", "C:3", "--threads", "8", "--timestamp", "off"])
    assert a.exit_code == b.exit_code == 0
    assert a.output == b.output


def test_figure2_values(runner):
    result = runner.invoke(main, ["figure", "fig2", "--timestamp", "off"])
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if l and not l.startswith("#")]
    assert lines[0] == "n,num,den,prob_float"
    rows = {int(l.split(",")[0]): l.split(",") for l in lines[1:]}
    assert rows[4][3] == "0.88177"
    assert rows[25][3] == "0.49997"
    assert len(rows) == 22


def test_figure1_proportions_sum_to_one(runner):
    result = runner.invoke(main, ["figure", "fig1", "--n", "3..6", "--timestamp", "off"])
    lines = [l for l in result.output.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    assert header == ["n", "image_order", "count", "proportion_num", "proportion_den", "proportion_float"]
    sums: dict[int, Fraction] = {}
    for line in lines[1:]:
        n, order, count, num, den, flt = line.split(",")
        sums[int(n)] = sums.get(int(n), Fraction(0)) + Fraction(int(num), int(den))
    assert set(sums) == {3, 4, 5, 6}
    assert all(v == 1 for v in sums.values())


def test_figure3_jumps_at_prime_multiples(runner):
    result = runner.invoke(
        main, ["figure", "fig3", "--n", "11..41", "--p-max", "13", "--timestamp", "off"]
    )
    lines = [l for l in result.output.splitlines() if l and not l.startswith("#")]
    counts = {}
    for line in lines[1:]:
        p, n, count, log10 = line.split(",")
        if p == "13":
            counts[int(n)] = int(count)
    for jump in (13, 26, 39):
        before = Fraction(counts[jump], counts[jump - 1])
        after = Fraction(counts[jump + 1], counts[jump])
        assert before > 1000
        assert after < 1000


def test_figure_deterministic_without_timestamp(runner):
    a = runner.invoke(main, ["figure", "fig2", "--n", "4..8", "--timestamp", "off"])
    b = runner.invoke(main, ["figure", "fig2", "--n", "4..8", "--timestamp", "off"])
    assert a.output == b.output
    with_ts = runner.invoke(main, ["figure", "fig2", "--n", "4..8"])
    assert "# generated_at," in with_ts.output


def test_figure_json_and_out_file(runner, tmp_path):
    out = tmp_path / "fig2.json"
    result = runner.invoke(
        main,
        ["figure", "fig2", "--n", "4..6", "--format", "json", "--out", str(out), "--timestamp", "off"],
    )
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["figure"] == "fig2"
    assert doc["columns"] == ["n", "num", "den", "prob_float"]
    assert len(doc["rows"]) == 3


def test_figure_usage(runner):
    assert runner.invoke(main, ["figure", "fig9"]).exit_code == 2
    assert runner.invoke(main, ["figure", "fig2", "--n", "9..4"]).exit_code == 2
    assert runner.invoke(main, ["figure", "fig2", "--n", "abc"]).exit_code == 2
    assert runner.invoke(main, ["figure", "fig2", "--n", "4..5000"]).exit_code == 2


def test_report_command(runner):
    result = runner.invoke(main, ["report", "C", "--n", "7..9"])
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "quantity,n,num,den,value_float,limit_num,limit_den"
    rows = [l.split(",") for l in lines[1:]]
    by_quantity: dict[str, list[list[str]]] = {}
    for row in rows:
        by_quantity.setdefault(row[0], []).append(row)
    assert set(by_quantity) == {
        "endo_count_ratio", "prob_image_below_factorial", "seq_a", "seq_b",
        "prob_automorphism", "prob_centre_in_kernel", "prob_normal_image",
        "prob_flip_reflection_in_kernel", "prob_transposition_in_kernel",
        "expected_image_ratio",
    }
    from reflect_endo import stats
    from reflect_endo.groups import GroupId

    aut7 = [r for r in by_quantity["prob_automorphism"] if r[1] == "7"][0]
    assert Fraction(int(aut7[2]), int(aut7[3])) == stats.prob_automorphism(GroupId("C", 7))
    assert aut7[5] == "1" and aut7[6] == "4"  # odd-rank limit 1/4


def test_report_single_quantity_and_json(runner):
    result = runner.invoke(main, ["report", "A", "--n", "5..6", "--quantity", "prob_automorphism", "--format", "json"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["family"] == "A"
    assert len(doc["rows"]) == 2
    assert runner.invoke(main, ["report", "C", "--quantity", "nope"]).exit_code == 2
    assert runner.invoke(main, ["report", "D", "--n", "2..5"]).exit_code == 2
