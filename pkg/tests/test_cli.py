import csv
import io
import json

import pytest

from qsheaf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_qreg_and_reg(capsys):
    code, out, _ = run(capsys, "qreg", "Q3: O")
    assert code == 0 and out.splitlines()[0] == "0"
    code, out, _ = run(capsys, "reg", "Q4: S1")
    assert code == 0 and out.splitlines()[0] == "0"
    code, out, _ = run(capsys, "qreg", "Q3: Pt[2]")
    assert out.strip() == "-inf"


def test_split_check_obstructed(capsys):
    code, out, _ = run(capsys, "split-check", "Q4: quot(O, S1+S2)")
    assert code == 0 and "Obstructed: h^3(F(-4)) = 1" in out
    code, out, _ = run(capsys, "split-check", "Q4: quot(O, S1+S2)", "--format", "json")
    doc = json.loads(out)
    assert doc["verdict"] == "obstructed" and (doc["witness"]["i"], doc["witness"]["t"]) == (3, -4)


def test_table_formats(capsys):
    code, out, _ = run(capsys, "table", "Q3: O", "--window=-4:1", "--format", "json")
    doc = json.loads(out)
    assert doc["quadric"] == 3 and doc["window"] == [-4, 1]
    assert all(set(c) == {"i", "t", "lo", "hi", "exact"} for c in doc["cells"])
    assert len(doc["cells"]) == 4 * 6
    code, out, _ = run(capsys, "table", "Q3: O", "--window=-4:1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["i", "t", "lo", "hi"] and ["3", "-4", "5", "5"] in rows
    code, out, _ = run(capsys, "table", "Q3: O", "--window=-4:1")
    lines = out.splitlines()
    assert lines[1].split()[0] == "3" and lines[-1].split()[0] == "0"


def test_interval_rendering(capsys):
    code, out, _ = run(capsys, "table", "Q5: quot(O, S)", "--window=-7:-7")
    assert "0..27" in out


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "qreg", "Q3: S2")
    assert code == 3 and "1:5" in err


def test_file_and_stdin(capsys, tmp_path, monkeypatch):
    f = tmp_path / "p4.qsheaf"
    f.write_text("Q4: quot(O, S1 + S2)\n")
    code, out, _ = run(capsys, "knorrer", "--file", str(f))
    assert code == 0 and "Obstructed" in out
    monkeypatch.setattr("sys.stdin", io.StringIO("Q3: O + S"))
    code, out, _ = run(capsys, "sandwich")
    assert code == 0 and "Qreg = 0, Reg = 1" in out


def test_rank2_and_line_split(capsys):
    code, out, _ = run(capsys, "rank2", "Q3: S")
    assert code == 0 and out.startswith("Split: S")
    code, out, _ = run(capsys, "line-split", "Q4: O(1) + O(-3)")
    assert out.startswith("Split:")


def test_bad_window():
    with pytest.raises(SystemExit):
        main(["table", "Q3: O", "--window=3:1"])


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper", "--seed", "3")
    assert code == 0
    assert len(out.splitlines()) == 6 and all(line.startswith("PASS") for line in out.splitlines())
