import io
import json

import pytest

from ladder.cli import main
from ladder.game import cap21, cap_dual, constant
from ladder.io import import_table, save_game


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in (("cap-dual", cap_dual()), ("cap21", cap21()), ("constant", constant(3, 2))):
        path = tmp_path / f"{name}.json"
        save_game(g, path)
        paths[name] = str(path)
    return paths


class TestAnalyze:
    def test_prop2(self):
        code, out = run("analyze", "builtin:prop2")
        assert code == 0
        assert "not complete; witness (1,3)" in out
        assert "transitivity violations: (1,2,3)" in out

    def test_prop2_json(self):
        code, out = run("analyze", "builtin:prop2", "--json")
        rep = json.loads(out)
        assert rep["linear"] is False and rep["witness"] == [1, 3]
        assert rep["pairs"]["1,2"] == "dominates" and rep["pairs"]["1,3"] == "incomparable"

    def test_capdual_layers(self, files):
        code, out = run("analyze", files["cap-dual"])
        assert code == 0 and "layers: {2} > {1}" in out

    def test_constant_single_layer(self, files):
        code, out = run("analyze", files["constant"])
        assert "linear: complete" in out and "layers: {1,2,3}\n" in out

    def test_deterministic(self):
        assert run("analyze", "builtin:prop2", "--json") == run("analyze", "builtin:prop2", "--json")


class TestPivots:
    def test_capdual(self, files):
        code, out = run("pivots", files["cap-dual"], "--json")
        rep = json.loads(out)
        assert code == 0
        assert rep["counts"] == [[0, 8]] and rep["theorem2"]["as_stated"] is True

    def test_cap21_printed(self, files):
        code, out = run("pivots", files["cap21"], "--config", "printed")
        assert code == 0
        assert "theorem2 as_stated: fail witness (1,2,i=1)" in out

    def test_constant_exit_3(self, files, capsys):
        code, _ = run("pivots", files["constant"])
        assert code == 3
        assert "DegenerateRange" in capsys.readouterr().err

    def test_threads_same_output(self):
        assert run("pivots", "builtin:unanimity:4:3", "--json") == run(
            "pivots", "builtin:unanimity:4:3", "--json", "--threads", "2"
        )


class TestVerify:
    def test_prop2_claims(self):
        code, out = run("verify", "builtin:prop2", "--claims", "prop1,prop2,prop3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "prop1: pass"
        assert lines[1].startswith("prop2: pass") and "[1,3]" in lines[1]
        assert lines[2].startswith("prop3: pass") and "[1,2,3]" in lines[2]

    def test_random_lemma1(self):
        code, out = run("verify", "--random-games", "20", "--seed", "42", "--claims", "lemma1", "--json")
        rep = json.loads(out)
        assert code == 0 and rep["lemma1_equivalence"]["status"] == "pass"

    def test_capdual_theorem2(self, files):
        assert run("verify", files["cap-dual"], "--claims", "theorem2") == (0, "theorem2: pass\n")

    def test_claim_failure_exit_1(self, files):
        code, out = run("verify", files["cap21"], "--claims", "theorem2", "--config", "printed")
        assert code == 1 and out.startswith("theorem2: fail")

    def test_unknown_claim_exit_2(self, capsys):
        code, _ = run("verify", "builtin:cap21", "--claims", "prop9")
        assert code == 2
        assert "prop9" in capsys.readouterr().err

    def test_injection(self):
        code, out = run("verify", "builtin:cap-dual", "--injection", "2", "1", "1", "--json")
        assert code == 0 and json.loads(out)["domain_size"] == 0

    def test_injection_not_dominant(self):
        code, _ = run("verify", "builtin:cap-dual", "--injection", "1", "2", "1")
        assert code == 2


class TestSimulate:
    def test_capdual(self, files):
        code, out = run("simulate", files["cap-dual"], "--initial", "1,2", "--json")
        lines = [json.loads(x) for x in out.splitlines()]
        assert code == 0
        assert len(lines) == 3 and lines[-1]["termination"] == "stable" and lines[-1]["swaps"] == 1

    def test_constant(self, files):
        code, out = run("simulate", files["constant"])
        assert "0 swaps" in out

    def test_prop2_round_limit(self):
        code, out = run("simulate", "builtin:prop2", "--max-rounds", "100", "--json")
        assert json.loads(out.splitlines()[-1])["termination"] in ("stable", "round_limit", "cycle_detected")


class TestInputErrors:
    def test_bad_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{\n  nope\n}")
        assert run("analyze", str(path))[0] == 2
        assert "line 2" in capsys.readouterr().err

    def test_bad_schema(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"players": 2, "levels": 2, "orientation": "non_decreasing"}))
        assert run("analyze", str(path))[0] == 2

    def test_not_monotone_exit_3(self, tmp_path):
        path = tmp_path / "nm.json"
        path.write_text(json.dumps({
            "players": 2, "levels": 2, "orientation": "non_decreasing",
            "representation": {"kind": "explicit", "outputs": [0, 1, 1, 0]},
        }))
        assert run("pivots", str(path))[0] == 3

    def test_bad_initial(self):
        assert run("simulate", "builtin:cap-dual", "--initial", "1,x")[0] == 2
        assert run("simulate", "builtin:cap-dual", "--initial", "1,1")[0] == 2


def test_table_export():
    code, out = run("table", "builtin:cap21")
    assert code == 0
    assert import_table(out).table.tolist() == [1, 1, 0, 0]
