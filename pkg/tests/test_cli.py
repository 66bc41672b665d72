import csv
import io
import json
import subprocess
import sys

import pytest

from flagsturm import cli
from flagsturm.samples import SAMPLE4_WORDS, SAMPLE5_ITINERARY
from flagsturm.verify import SuiteReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_curve_json_round_trip(capsys):
    code, out, _ = run(capsys, "curve", "--sample", "sample4", "--format", "json", "--pairs")
    assert code == 0
    data = json.loads(out)
    assert data["L0"][2][0] == "1/6"
    assert [m["degree"] for m in data["minors"]] == [3, 4, 3]
    assert len(data["pair_minors"]) == 6
    assert data["nontransversality"]["total"] == sum(
        r["multiplicity"] for m in data["minors"] for r in m["roots"])


def test_output_is_deterministic(capsys):
    first = run(capsys, "itinerary", "--sample", "sample5", "--format", "json")[1]
    second = run(capsys, "itinerary", "--sample", "sample5", "--format", "json")[1]
    assert first == second
    assert json.loads(first)["itinerary"] == SAMPLE5_ITINERARY


def test_csv_root_table(capsys):
    code, out, _ = run(capsys, "curve", "--word", "1:-1", "--n", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "root_lo", "root_hi", "multiplicity"]
    assert rows[1:] == [["1", "-2", "2", "1"]]


def test_precision_refines_intervals(capsys):
    _, out, _ = run(capsys, "curve", "--sample", "sample4", "--precision", "1/4096", "--format", "json")
    from fractions import Fraction
    for m in json.loads(out)["minors"]:
        for r in m["roots"]:
            assert Fraction(r["hi"]) - Fraction(r["lo"]) < Fraction(1, 4096)


def test_matrix_input_from_file(tmp_path, capsys):
    path = tmp_path / "L.json"
    path.write_text(json.dumps([["1", "0", "0"], ["1/2", "1", "0"], ["0", "-1", "1"]]))
    code, out, _ = run(capsys, "curve", "--matrix", f"@{path}", "--format", "json")
    assert code == 0 and json.loads(out)["n"] == 3


def test_itinerary_needs_perturbation_for_identity(capsys):
    code, _, err = run(capsys, "itinerary", "--sample", "identity", "--n", "3")
    assert code == 2 and "--perturb" in err
    code, out, _ = run(capsys, "itinerary", "--sample", "identity", "--n", "3", "--perturb",
                       "--domain", "-1", "1")
    assert code == 0 and out.splitlines()[0] == "baba"


def test_sequence_of_sample_curve(capsys):
    code, out, _ = run(capsys, "words", "sequence", "--sample", "sample4",
                       "--domain", "-1", "3/2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ranks"] == [4, 2, 2, 1, 1, 1, 0]
    assert len(data["words"]) == len(SAMPLE4_WORDS)


def test_certify_sample_curve(capsys):
    code, out, _ = run(capsys, "words", "certify", "--sample", "sample4", "--domain", "-1", "3/2")
    assert code == 0 and out.rstrip().endswith("certificate: PASS")


def test_word_tools(capsys):
    code, out, _ = run(capsys, "words", "rank", "15'43'21'54'32'")
    assert code == 0 and "rk=6" in out
    code, out, _ = run(capsys, "words", "enumerate", "--n", "3", "--format", "csv")
    assert len(out.splitlines()) == 9
    code, out, _ = run(capsys, "words", "move", "145231'4'5'2'3'", "1", "--format", "json")
    assert json.loads(out)["move"]["type"] == "Ia"
    code, out, _ = run(capsys, "words", "from-matrix", '[["1","1","0"],["0","1","1"]]')
    assert out.strip() == "31'2'3'12  rk=0"


@pytest.mark.parametrize("argv", [
    ["words", "from-matrix", '[["1","2","0"],["1","2","1"]]'],
    ["words", "rank", "12x"],
    ["words", "move", "12341'2'3'4'", "1"],
    ["words", "sequence", "--sample", "identity", "--n", "3"],
    ["curve", "--matrix", '[["1","1"],["0","1"]]'],
    ["curve", "--word", "1:1"],
    ["verify", "rankmove", "--n", "99"],
    ["curve", "--matrix", "@/nonexistent/file.json"],
])
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_verify_suites_pass(capsys):
    code, out, _ = run(capsys, "verify", "rankmove", "--n-range", "3", "4")
    assert code == 0 and out.rstrip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "duality", "--n", "3", "--count", "3", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_failed_verdict_exits_1(capsys, monkeypatch):
    def failing(name, ns, seed=0, count=None):
        rep = SuiteReport(name, {"n": ns})
        rep.add("forced", ["synthetic failure"], 1)
        return rep
    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "rankmove", "--n", "3")
    assert code == 1 and "FAIL" in out


def test_svg_output(tmp_path, capsys):
    path = tmp_path / "w.svg"
    code, _, _ = run(capsys, "svg", "word", "145231'4'5'2'3'", "1", "--out", str(path))
    doc = path.read_text()
    assert code == 0 and doc.startswith("<svg") and 'marker-end="url(#arrow)"' in doc
    code, out, _ = run(capsys, "svg", "sequence", "--sample", "sample4", "--domain", "-1", "3/2")
    assert code == 0 and out.count("rk=") == 7


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "flagsturm", "words", "rank", "12341'2'3'4'"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "41'2'3'4'123  rk=0"
