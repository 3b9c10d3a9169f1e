import csv
import io
import json
import subprocess
import sys

import pytest

from sslocus import cli
from sslocus.cli import FIELDS, OutputRecord, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_count_p5():
    code, text = run("count", "--p", "5")
    assert code == 0
    assert text.strip().endswith("|Sigma_2(F_p)| = 1")


def test_count_p13_breakdown():
    code, text = run("count", "--p", "13")
    assert code == 0
    assert "B_2,chi       = 4" in text
    assert "h(sqrt(-p))   = 2" in text and "h(sqrt(-2p))  = 6" in text and "h(sqrt(-3p))  = 4" in text
    assert "11/24 + 1/8 + 3/4 + 2/3" in text
    assert text.strip().endswith("= 2")


def test_count_structured():
    code, text = run("count", "--p", "13", "--format", "json-lines")
    assert code == 0
    rec = json.loads(text)
    assert rec == {
        "p": 13, "branch": "eq_2_2", "B2_num": 4, "B2_den": 1,
        "h_p": 2, "h_2p": 6, "h_3p": 4, "leg2p": -1, "sigma2": 2,
    }


def test_count_composite_exit_2(capsys):
    code, _ = run("count", "--p", "12")
    assert code == 2
    assert "not prime" in capsys.readouterr().err


def test_count_consistency_exit_3(monkeypatch):
    from sslocus.arithmetic import ConsistencyError

    def boom(p, cache=None):
        raise ConsistencyError("forced")

    monkeypatch.setattr(cli, "sigma2_count", boom)
    assert run("count", "--p", "13")[0] == 3


def test_table_small():
    code, text = run("table", "--from", "2", "--to", "7")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == list(FIELDS)
    assert [r[0] for r in rows[1:]] == ["2", "3", "5", "7"]
    assert [r[-1] for r in rows[1:]] == ["1", "1", "1", "1"]
    assert rows[4] == ["7", "eq_2_3", "16", "1", "1", "4", "4", "1", "1"]


def test_table_single():
    code, text = run("table", "--from", "13", "--to", "13")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and len(rows) == 2 and rows[1][-1] == "2"


@pytest.mark.parametrize("lo, hi", [(10, 9), (1, 5), (2, 10**6 + 1)])
def test_table_bad_range(lo, hi):
    assert run("table", "--from", str(lo), "--to", str(hi))[0] == 2


def test_table_csv_and_json_agree():
    _, c = run("table", "--from", "2", "--to", "200")
    _, j = run("table", "--from", "2", "--to", "200", "--format", "json-lines")
    from_csv = [OutputRecord.from_csv_row(r) for r in list(csv.reader(io.StringIO(c)))[1:]]
    from_json = [OutputRecord.from_json_line(line) for line in j.splitlines()]
    assert from_csv == from_json
    assert len(from_csv) == 46


def test_table_parallel_matches_serial():
    _, serial = run("table", "--from", "2", "--to", "300")
    _, parallel = run("table", "--from", "2", "--to", "300", "--jobs", "3")
    assert serial == parallel


def test_cache_flag_and_env(tmp_path, monkeypatch):
    path = tmp_path / "cache.json"
    assert run("count", "--p", "13", "--cache", str(path))[0] == 0
    data = json.loads(path.read_text())
    assert data == {"-52": 2, "-104": 6, "-39": 4}
    env_path = tmp_path / "env.json"
    monkeypatch.setenv("SS_CACHE_PATH", str(env_path))
    assert run("table", "--from", "7", "--to", "11", "--jobs", "2")[0] == 0
    data = json.loads(env_path.read_text())
    assert data["-56"] == 4 and data["-84"] == 4
    # a warm cache gives identical output
    assert run("table", "--from", "7", "--to", "11") == run("table", "--from", "7", "--to", "11", "--cache", str(path))


def test_classnumber():
    code, text = run("classnumber", "-m", "26")
    assert code == 0 and "6 (forms) / 6 (analytic)" in text
    code, text = run("classnumber", "--m", "1")
    assert code == 0 and "h = 1 (forms)" in text
    assert run("classnumber", "-m", "12")[0] == 2


def test_bernoulli():
    code, text = run("bernoulli", "--p", "13")
    assert code == 0 and "B_2,chi = 4 (definitional) / 4" in text
    assert run("bernoulli", "--p", "15")[0] == 2


def test_fermat():
    assert run("fermat", "--p", "5", "--e", "1") == (0, "[1:2], [1:3]\n")
    assert run("fermat", "--p", "7") == (0, "(empty)\n")
    code, text = run("fermat", "--p", "3", "--e", "2")
    assert code == 0 and len(text.split(", ")) == 4
    assert run("fermat", "--p", "9")[0] == 2


@pytest.mark.parametrize(
    "scope, pmax",
    [("formula", 1000), ("classnumbers", 500), ("fermat", 200), ("bernoulli", 300), ("lattice", 60)],
)
def test_verify_scopes(scope, pmax):
    code, text = run("verify", "--scope", scope, "--pmax", str(pmax))
    assert code == 0, text
    assert text and all(line.startswith("PASS") for line in text.splitlines())


def test_verify_failure_exit_1(monkeypatch):
    from sslocus import verify

    def bad(pmax, cache=None):
        chk = verify.Check("always fails", checked=1)
        chk.fail("p=7: forced")
        return [chk]

    monkeypatch.setattr(verify, "check_formula", bad)
    code, text = run("verify", "--scope", "formula", "--pmax", "10")
    assert code == 1
    assert "first counterexample: p=7: forced" in text


def test_verify_small_pmax():
    assert run("verify", "--pmax", "5")[0] == 2


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["count"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sslocus", "count", "--p", "7", "--format", "csv"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.splitlines() == [",".join(FIELDS), "7,eq_2_3,16,1,1,4,4,1,1"]
