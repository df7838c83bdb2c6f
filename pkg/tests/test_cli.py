import json
import os
import subprocess
import sys

import pytest

from khcable import cli
from khcable.bicomplex import LawReport
from khcable.corpus import CORPUS
from khcable.diagram import gauss_code
from khcable.nanoword import ALPHA_STAR, format_phrase, from_gauss_code


def run_json(*argv):
    status, text, _ = cli.run(list(argv))
    return status, json.loads(text)


@pytest.mark.parametrize("command,key", [
    ("bracket", "bracket"), ("jones", "jones_framed"), ("khovanov", "table"),
    ("colored-jones", "colored_jones"), ("cable", "pd"), ("bicomplex", "euler"),
])
def test_commands(command, key):
    status, doc = run_json(command, "corpus:hopf", "--n", "2,1")
    assert status == 0
    assert doc["command"] == command and key in doc


def test_jones_value():
    _, doc = run_json("jones", "corpus:unknot")
    assert doc["jones_framed"] == [[-1, 1], [1, 1]]


def test_bicomplex_report():
    status, doc = run_json("bicomplex", "corpus:kink+", "--n", "2", "--check-laws", "--emit-table")
    assert status == 0
    assert all(doc["laws"].values())
    assert doc["euler"]["equal"]
    assert all(len(row) == 5 for row in doc["table"])


def test_verify():
    status, doc = run_json("verify", "corpus:kink+", "--n", "2")
    assert status == 0 and doc["ok"]
    names = [c["name"] for c in doc["checks"]]
    assert "cabling" in names and "invariance" in names and "euler_identity" in names


def test_arity_exit():
    status, text, _ = cli.run(["colored-jones", "corpus:unknot", "--n", "2,2"])
    assert status == cli.EXIT_INPUT
    assert json.loads(text)["error"] == "input"


def test_bad_input_exit(tmp_path):
    bad = tmp_path / "bad.pd"
    bad.write_text("X(1,2,3)")
    assert cli.run(["jones", str(bad)])[0] == cli.EXIT_INPUT
    assert cli.run(["jones", "corpus:nope"])[0] == cli.EXIT_INPUT
    assert cli.run(["frobnicate", "corpus:unknot"])[0] == cli.EXIT_INPUT


def test_cap_exit():
    status, text, _ = cli.run(["jones", "corpus:trefoil", "--cap", "4"])
    assert status == cli.EXIT_CAP
    assert json.loads(text)["error"] == "cap"


def test_law_failure_exit(monkeypatch):
    def broken(b):
        return {"dprime2": LawReport("dprime2", ok=False, checked=1, failures=[{"where": "x"}])}
    monkeypatch.setattr(cli, "check_laws", broken)
    status, doc = run_json("bicomplex", "corpus:unknot", "--n", "2", "--check-laws")
    assert status == cli.EXIT_LAW
    assert doc["laws"] == {"dprime2": False}


def test_csv_output():
    status, text, _ = cli.run(["khovanov", "corpus:trefoil", "--output-format", "csv"])
    assert status == 0
    lines = text.splitlines()
    assert lines[0] == "i,j,rank,torsion"
    assert len(lines) > 1


def test_out_file(tmp_path):
    out = tmp_path / "o.json"
    assert cli.main(["jones", "corpus:hopf", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["command"] == "jones"


def test_pd_file_and_nanoword(tmp_path):
    d = CORPUS["trefoil"]
    pd = tmp_path / "t.pd"
    pd.write_text(d.to_pd_text())
    nw = tmp_path / "t.nw"
    nw.write_text(format_phrase(from_gauss_code(gauss_code(d), ALPHA_STAR)))
    a = run_json("jones", str(pd))[1]["jones_framed"]
    b = run_json("jones", str(nw), "--format", "nanoword")[1]["jones_framed"]
    assert a == b == run_json("jones", "corpus:trefoil")[1]["jones_framed"]


def cli_bytes(threads, *argv):
    env = dict(os.environ, KHCABLE_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "khcable.cli", *argv], env=env,
                          capture_output=True, check=True).stdout


def test_thread_determinism():
    argv = ("bicomplex", "corpus:hopf", "--n", "2,2", "--check-laws", "--emit-table")
    assert cli_bytes(1, *argv) == cli_bytes(4, *argv)
