import csv
import io
import json
import subprocess
import sys

import pytest

from qfib.cli import main
from qfib.families import FamilyId, family
from qfib.qring import from_json_terms, render


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_family_text(capsys):
    code, out, _ = run(capsys, "family", "--id", "Fib", "--n", "3")
    assert (code, out) == (0, "x^2 + q*s\n")


@pytest.mark.parametrize("fid", [f.value for f in FamilyId])
def test_family_text_is_render(capsys, fid):
    code, out, _ = run(capsys, "family", "--id", fid, "--n", "6")
    assert code == 0
    assert out == render(family(fid, 6)) + "\n"


def test_family_json_round_trip(capsys):
    code, out, _ = run(capsys, "family", "--id", "Luc", "--n", "7", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert from_json_terms(data) == family(FamilyId.Luc, 7)
    assert json.dumps(data, separators=(", ", ": ")) + "\n" == out


def test_family_subst(capsys):
    _, out, _ = run(capsys, "family", "--id", "Fib", "--n", "3", "--subst", "s=q^-1")
    assert out == "x^2 + s\n"
    _, out, _ = run(capsys, "family", "--id", "Fib", "--n", "3", "--subst", "x=q^2")
    assert out == "q^4*x^2 + q*s\n"


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["family", "--id", "Fib", "--n", "-1"], "--n"),
        (["family", "--id", "Nope", "--n", "2"], "--id"),
        (["family", "--id", "Fib", "--n", "2", "--subst", "z=q"], "--subst"),
        (["family", "--id", "Fib", "--n", "two"], "--n"),
        (["table", "--id", "Fib", "--nmax", "3", "--format", "xml"], "--format"),
        (["verify", "--all", "--nmax", "0"], "--nmax"),
        (["verify", "--identity", "nope", "--nmax", "3"], "--identity"),
        (["oracle", "--kind", "z", "--nmax", "3"], "--kind"),
        (["series", "--gf", "nope", "--order", "3"], "--gf"),
        (["moments", "--family", "Fib", "--nmax", "3"], "--family"),
        (["family", "--id", "Fib", "--n", "2", "--bogus"], "--bogus"),
    ],
)
def test_usage_errors(capsys, argv, flag):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert flag in err


def test_verify_requires_a_choice(capsys):
    code, _, err = run(capsys, "verify", "--nmax", "3")
    assert code == 2 and "--identity" in err and "--all" in err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--id", "Luc", "--nmax", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["n", "polynomial"]
    assert rows[1:] == [[str(n), render(family(FamilyId.Luc, n))] for n in range(5)]


def test_table_json_and_text(capsys):
    _, out, _ = run(capsys, "table", "--id", "fib", "--nmax", "3", "--format", "json")
    data = json.loads(out)
    assert [from_json_terms(r["polynomial"]) for r in data] == [family(FamilyId.fib, n) for n in range(4)]
    assert json.dumps(data, separators=(", ", ": ")) + "\n" == out
    _, out, _ = run(capsys, "table", "--id", "fib", "--nmax", "2", "--format", "text")
    assert out == "0: 1\n1: x\n2: x^2 + q*s\n"


def test_verify_all_json(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--nmax", "12", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert len(data) == 71 and all(r["pass"] for r in data)
    assert json.dumps(data, separators=(", ", ": ")) + "\n" == out


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "cassini-q-mutated", "--nmax", "10")
    assert code == 1
    assert out.startswith("FAIL cassini-q-mutated")
    code, out, _ = run(capsys, "verify", "--identity", "cassini-q", "--nmax", "10", "--format", "json")
    assert code == 0 and json.loads(out)[0]["pass"] is True


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--kind", "W", "--nmax", "5")
    assert code == 0
    assert out.splitlines()[-1] == "5: " + render(family(FamilyId.Fib, 5))
    _, out, _ = run(capsys, "oracle", "--kind", "count", "--nmax", "6")
    assert out.splitlines()[-1] == "6: 13"


def test_series_check(capsys):
    code, out, _ = run(capsys, "series", "--gf", "fib_num", "--order", "5", "--check")
    assert code == 0
    assert out.splitlines()[-1] == "z^5: 8  ok"


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "--family", "luc", "--nmax", "2")
    assert code == 0
    assert out.splitlines() == ["0: 1", "1: 0", "2: (-1 - q)*s"]


def test_fixtures(capsys, tmp_path):
    path = tmp_path / "f.jsonl"
    code, out, _ = run(capsys, "fixtures", "--n", "5", "--out", str(path))
    assert code == 0 and "8" in out
    assert len(path.read_text().splitlines()) == 8


def test_fixtures_bad_path(capsys, tmp_path):
    code, _, err = run(capsys, "fixtures", "--n", "2", "--out", str(tmp_path / "missing" / "f.jsonl"))
    assert code == 2 and err


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "qfib", "family", "--id", "Fib", "--n", "5"],
        capture_output=True, text=True, check=False,
    )
    assert done.returncode == 0
    assert done.stdout == "x^4 + (q + q^2 + q^3)*s*x^2 + q^3*s^2\n"
