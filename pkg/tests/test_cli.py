import json
import shutil
from pathlib import Path

import pytest

from ntc import cli, graphio

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).parent / "golden"
FIX = "src/ntc/fixtures"

CASES = {
    "analyze_ex4_4_m": ["graph", "analyze", f"{FIX}/ex4_4_m.wdg.json"],
    "analyze_ex4_4_m2": ["graph", "analyze", f"{FIX}/ex4_4_m2.wdg.json"],
    "analyze_ex5_11_1_r2": ["graph", "analyze", f"{FIX}/ex5_11_1.wdg.json", "--r", "2"],
    "enum_zk_homog_d5": ["graph", "enum", f"{FIX}/homog_d5.wdg.json", "--mode", "zk"],
    "brieskorn_3_5_5": ["brieskorn", "3", "5", "5"],
    "brieskorn_3_6_6": ["brieskorn", "3", "6", "6"],
    "homog_classify_5": ["homog", "classify", "5"],
    "homog_power_5_3": ["homog", "power", "5", "3"],
    "homog_il_5": ["homog", "il", "5"],
}


@pytest.fixture(autouse=True)
def at_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out, _ = run(CASES[name], capsys)
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(CASES))
def test_deterministic(name, capsys):
    first = run(CASES[name], capsys)[1]
    assert run(CASES[name], capsys)[1] == first


def test_analyze_values(capsys):
    rep = json.loads(run(CASES["analyze_ex4_4_m"], capsys)[1])
    assert rep["results"]["Z"] == {"E1": 1, "E2": 2}
    assert (rep["results"]["KZ"], rep["results"]["chi"]) == (0, 1)
    assert rep["verdicts"]["summary"] == "good p_g-type (r=1) criterion holds"
    assert rep["warnings"] == [cli.CM_WARNING]
    rep = json.loads(run(CASES["analyze_ex4_4_m2"], capsys)[1])
    assert rep["results"]["Z"] == {"E": 2} and rep["results"]["KZ"] == 2
    assert rep["verdicts"]["r=1 (K Z = 0)"] is False
    rep = json.loads(run(CASES["analyze_ex5_11_1_r2"], capsys)[1])
    assert (rep["results"]["Z^2"], rep["results"]["chi"], rep["verdicts"]["r=2"]) == (-10, 0, True)


def test_brieskorn_values(capsys):
    rep = json.loads(run(CASES["brieskorn_3_5_5"], capsys)[1])
    assert rep["results"]["r"] == 3 and rep["results"]["b"] == [1, 1, 0, 1]
    assert rep["verdicts"]["gorenstein"] is False
    # the Brieskorn family carries no CM caveat
    assert cli.CM_WARNING not in rep["warnings"]


def test_enum_values(capsys):
    rep = json.loads(run(CASES["enum_zk_homog_d5"], capsys)[1])
    assert [c["Z"]["C"] for c in rep["results"]["cycles"]] == [1, 2, 3]
    assert [c["chi"] for c in rep["results"]["cycles"]] == [-5, -5, 0]


def test_enum_below(tmp_path, capsys):
    bound = tmp_path / "w.json"
    bound.write_text('{"C": 1}')
    code, out, _ = run(["graph", "enum", f"{FIX}/homog_d5.wdg.json", "--mode", "below", "--bound", str(bound)], capsys)
    assert code == 0 and json.loads(out)["results"]["count"] == 0
    bound.write_text('{"C": 3}')
    rep = json.loads(run(["graph", "enum", f"{FIX}/homog_d5.wdg.json", "--mode", "below", "--bound", str(bound)], capsys)[1])
    assert [c["Z"]["C"] for c in rep["results"]["cycles"]] == [1, 2]


def test_other_graph_commands(tmp_path, capsys):
    rep = json.loads(run(["graph", "dual", f"{FIX}/homog_d5.wdg.json", "C"], capsys)[1])
    assert rep["results"]["dual"] == {"C": "1/5"}
    rep = json.loads(run(["graph", "fundamental", f"{FIX}/a2_chain.wdg.json"], capsys)[1])
    assert rep["results"]["fundamental_cycle"] == {"E1": 1, "E2": 1}
    rep = json.loads(run(["graph", "check", f"{FIX}/ex4_4_m.wdg.json"], capsys)[1])
    assert rep["results"]["negative_definite"] and rep["results"]["minors_of_minus_form"] == [2, 1]
    bound = tmp_path / "b.json"
    bound.write_text('{"C": 3}')
    rep = json.loads(run(["graph", "chimin", f"{FIX}/homog_d5.wdg.json", "--bound", str(bound)], capsys)[1])
    assert rep["results"]["value"] == -5 and rep["results"]["witness"] == {"C": 1}


def test_brieskorn_scan(capsys):
    code, out, _ = run(["brieskorn", "scan", "--max", "10"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["verdicts"]["all_consistent"]
    assert set(rep["results"]["violations"].values()) == {0}


def test_human_and_out(tmp_path, capsys):
    code, out, _ = run(["homog", "il", "5", "--human"], capsys)
    assert code == 0 and "results.q" in out and out.startswith("# homog il 5")
    target = tmp_path / "r.json"
    code, out, _ = run(["homog", "il", "5", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "homog_il_5.json").read_text()


@pytest.mark.parametrize(
    "argv",
    [
        ["brieskorn", "5", "3", "3"],
        ["brieskorn", "3", "5"],
        ["brieskorn", "scan", "--max", "1"],
        ["graph", "check", "no/such/file.wdg.json"],
        ["graph", "analyze", f"{FIX}/a2_chain.wdg.json"],
        ["graph", "analyze", f"{FIX}/ex4_4_m.wdg.json", "--r", "0"],
        ["graph", "dual", f"{FIX}/ex4_4_m.wdg.json", "nope"],
        ["graph", "enum", f"{FIX}/ex4_4_m.wdg.json", "--mode", "below"],
        ["homog", "classify", "2"],
        ["homog", "power", "5", "9"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == cli.EXIT_INPUT and out == "" and err.startswith("ntc: error:")


def test_bad_bound_file(tmp_path, capsys):
    bound = tmp_path / "b.json"
    for text in ('{"C": "x"}', "[1]", "{", '{"Q": 1}'):
        bound.write_text(text)
        code, _, err = run(["graph", "chimin", f"{FIX}/homog_d5.wdg.json", "--bound", str(bound)], capsys)
        assert code == 2, text


def test_verify_paper_clean(capsys):
    code, out, _ = run(["verify-paper", "--max", "10"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    assert len(rep["results"]["checks"]) >= 12


def _corrupt_copy(tmp_path):
    d = tmp_path / "fixtures"
    shutil.copytree(ROOT / FIX, d)
    doc = json.loads((d / "ex5_11_1.wdg.json").read_text())
    # drop E5 -- E4: the chain splits and no longer carries E_5^*
    doc["edges"] = [e for e in doc["edges"] if sorted(e) != ["E4", "E5"]]
    (d / "ex5_11_1.wdg.json").write_text(graphio.dumps(doc))
    return d


def test_verify_paper_corrupted_fixture(tmp_path, capsys):
    d = _corrupt_copy(tmp_path)
    code, out, _ = run(["verify-paper", "--max", "6", "--fixtures", str(d)], capsys)
    rep = json.loads(out)
    assert code == cli.EXIT_VERIFY and not rep["ok"]
    failed = {c["id"]: c for c in rep["results"]["checks"] if not c["ok"]}
    # the fixture sweep in lattice-properties trips over the same file
    assert set(failed) == {"degree5-graphs", "lattice-properties"}
    assert failed["degree5-graphs"]["anchor"] == "I(L) dual graphs in degree 5"
    assert "E_DISCONNECTED" in failed["degree5-graphs"]["detail"]


def test_verify_paper_missing_fixture(tmp_path, capsys):
    d = _corrupt_copy(tmp_path)
    (d / "ex4_4_m.wdg.json").unlink()
    code, out, _ = run(["verify-paper", "--max", "6", "--fixtures", str(d)], capsys)
    assert code == cli.EXIT_VERIFY
    failed = {c["id"] for c in json.loads(out)["results"]["checks"] if not c["ok"]}
    assert failed == {"degree5-graphs", "x2y3z6-graphs", "lattice-properties"}
