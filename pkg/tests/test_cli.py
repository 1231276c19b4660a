"""CLI behaviors: output schemas, exit codes, determinism, table statuses."""

import csv
import io
import json

import pytest

from slicebound.cli import bundled_table_path, main, run_fuzz, run_table

FIG8_PD = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBoundCommand:
    def test_braid_json(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--braid", "2: [1,1,1]", "--oracle")
        assert code == 0
        payload = json.loads(out)
        assert payload["U"] == 2
        assert payload["Delta"] == 0
        assert payload["s_exact"] == 2
        assert payload["s_oracle"] == 2
        assert payload["flags"]["positive"] is True

    def test_pd_with_oracle(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--pd", FIG8_PD, "--oracle")
        assert code == 0
        payload = json.loads(out)
        assert payload["U"] == 0
        assert payload["s_oracle"] == 0
        assert payload["flags"]["alternating"] is True

    def test_parse_error_exit_2(self, capsys):
        code, out, err = run_cli(capsys, "bound", "--braid", "2: [0]")
        assert code == 2
        assert not out
        assert "error" in err

    def test_requires_exactly_one_input(self, capsys):
        code, _, err = run_cli(capsys, "bound")
        assert code == 2
        code, _, err = run_cli(capsys, "bound", "--pd", FIG8_PD, "--braid", "2: [1]")
        assert code == 2

    def test_csv_output(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--braid", "2: [1,1,1]", "--csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 1
        assert rows[0]["U"] == "2"
        assert rows[0]["positive"] == "true"

    def test_oracle_skip_when_too_large(self, capsys):
        word = "2: [" + ",".join(["1"] * 13) + "]"
        code, out, err = run_cli(capsys, "bound", "--braid", word, "--oracle", "--max-crossings", "12")
        assert code == 0
        assert json.loads(out)["s_oracle"] is None
        assert "skipped" in err

    def test_deterministic(self, capsys):
        _, out1, _ = run_cli(capsys, "bound", "--braid", "3: [1,-2,1,-2]", "--oracle")
        _, out2, _ = run_cli(capsys, "bound", "--braid", "3: [1,-2,1,-2]", "--oracle")
        assert out1 == out2


class TestOracleCommand:
    def test_unknot_kink(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--pd", "X[1,1,2,2]")
        assert code == 0
        payload = json.loads(out)
        assert payload["s"] == 0
        assert payload["jumps"] == [-1, 1]

    def test_trefoil_profile(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--braid", "2: [1,1,1]")
        payload = json.loads(out)
        assert payload["s"] == 2
        assert payload["s_min"] == 1
        assert payload["jumps"] == [1, 3]
        assert payload["profile"] == [[5, 0], [3, 1], [1, 2]]

    def test_rejects_links(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "--braid", "2: [1,1]")
        assert code == 2


class TestTableCommand:
    def test_bundled_table_clean(self, capsys):
        code, out, err = run_cli(capsys, "table", "--oracle")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 36
        assert all(r["status"] in ("TIGHT", "SANDWICH_OK") for r in rows)

    def test_error_rows(self, tmp_path, capsys):
        table = tmp_path / "t.csv"
        table.write_text(
            "name,pd,known_s\n"
            'ok,"X[1,1,2,2]",0\n'
            'odd,"X[1,1,2,2]",1\n'
            'bad,"X[1,2,3]",\n'
            'link,"X[1,3,2,4] X[2,4,1,3]",\n'
        )
        code, out, err = run_cli(capsys, "table", "--in", str(table))
        assert code == 1
        rows = {r["name"]: r for r in csv.DictReader(io.StringIO(out))}
        assert rows["ok"]["status"] == "TIGHT"
        assert rows["odd"]["status"] == "ERROR" and "odd" in rows["odd"]["detail"]
        assert rows["bad"]["status"] == "ERROR"
        assert rows["link"]["status"] == "ERROR" and "knots" in rows["link"]["detail"]

    def test_mismatch_on_wrong_known_s(self, tmp_path, capsys):
        table = tmp_path / "t.csv"
        table.write_text('name,pd,known_s\nwrong,"X[1,1,2,2]",4\n')
        code, out, _ = run_cli(capsys, "table", "--in", str(table), "--oracle")
        assert code == 1
        row = next(csv.DictReader(io.StringIO(out)))
        assert row["status"] == "MISMATCH"
        assert "oracle_vs_known" in row["detail"]

    def test_known_outside_window_without_oracle(self, tmp_path, capsys):
        table = tmp_path / "t.csv"
        table.write_text('name,pd,known_s\nwrong,"X[1,1,2,2]",4\n')
        code, out, _ = run_cli(capsys, "table", "--in", str(table))
        assert code == 1
        row = next(csv.DictReader(io.StringIO(out)))
        assert "known_outside_window" in row["detail"]

    def test_empty_table(self, tmp_path, capsys):
        table = tmp_path / "t.csv"
        table.write_text("name,pd,known_s\n")
        code, out, _ = run_cli(capsys, "table", "--in", str(table))
        assert code == 0
        assert len(list(csv.DictReader(io.StringIO(out)))) == 0

    def test_row_order_preserved(self, capsys):
        with open(bundled_table_path(), newline="", encoding="utf-8") as fh:
            names_in = [r["name"] for r in csv.DictReader(fh)]
        _, out, _ = run_cli(capsys, "table")
        names_out = [r["name"] for r in csv.DictReader(io.StringIO(out))]
        assert names_out == names_in


class TestFuzzCommand:
    def test_small_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "fuzz", "--count", "50", "--strands", "4",
                               "--max-length", "8", "--seed", "7")
        assert code == 0
        assert out.strip().endswith("PASS")

    def test_zero_cases(self, capsys):
        code, out, _ = run_cli(capsys, "fuzz", "--count", "0", "--seed", "1")
        assert code == 0
        assert "cases: 0" in out

    def test_byte_identical_summaries(self, capsys):
        args = ("fuzz", "--count", "60", "--strands", "5", "--max-length", "10", "--seed", "42")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_oracle_gate(self, capsys):
        code, out, _ = run_cli(capsys, "fuzz", "--count", "30", "--strands", "3",
                               "--max-length", "6", "--seed", "3", "--oracle",
                               "--max-crossings", "6")
        assert code == 0
        assert "sandwich:" in out


class TestRunFuzzEngine:
    def test_counts_add_up(self):
        summary = run_fuzz(100, 5, 12, 42)
        assert summary.cases == 100
        assert summary.knots + summary.links == 100
        assert summary.ok
        assert summary.checked["mirror_identity"] == 100
        assert summary.checked["betti_equals_delta"] == 100

    def test_deterministic(self):
        assert run_fuzz(40, 4, 9, 7).text() == run_fuzz(40, 4, 9, 7).text()


class TestRunTableEngine:
    def test_tolerates_missing_fields(self):
        rows = [{"name": "kink", "pd": "X[1,1,2,2]"}]
        out = run_table(rows, oracle=False, max_crossings=12)
        assert out[0]["status"] == "TIGHT"
        assert out[0]["known_s"] == ""
