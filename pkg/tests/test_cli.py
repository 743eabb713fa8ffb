"""CLI envelopes, schemas, exit codes, and determinism."""

import json

import pytest
from jsonschema import Draft202012Validator

from facelab.cli import main, run
from facelab.schemas import load_schema

ENVELOPE = Draft202012Validator(load_schema("envelope"))


def invoke(*argv: str):
    result = run(list(argv))
    doc = json.loads(result.render())
    ENVELOPE.validate(doc)
    return doc, result.exit_code


def check_output(doc: dict, schema_name: str) -> None:
    Draft202012Validator(load_schema(schema_name)).validate(doc["output"])


@pytest.fixture()
def cube3_file(tmp_path):
    path = str(tmp_path / "cube3.poly")
    doc, code = invoke("gen", "--family", "cube", "--dim", "3", "--out", path)
    assert code == 0
    return path


class TestGen:
    def test_writes_file_and_reports(self, tmp_path):
        out = str(tmp_path / "p.poly")
        doc, code = invoke("gen", "--family", "simplex", "--dim", "3", "--out", out)
        assert code == 0 and doc["status"] == "ok"
        check_output(doc, "gen")
        assert doc["output"]["n_vertices"] == 4
        assert open(out).read().startswith("polytope 3 4")

    def test_random_family_echoes_seed(self, tmp_path):
        out = str(tmp_path / "r.poly")
        doc, code = invoke(
            "gen", "--family", "random", "--dim", "3", "--n", "6", "--seed", "2", "--out", out
        )
        assert code == 0
        assert doc["inputs"]["seed"] == 2

    def test_bad_family_is_parse_error(self, tmp_path):
        doc, code = invoke("gen", "--family", "dodecahedron", "--dim", "3", "--out", "x")
        assert code == 2 and doc["status"] == "error"

    def test_family_constraint_violation(self, tmp_path):
        out = str(tmp_path / "c.poly")
        doc, code = invoke("gen", "--family", "cube", "--dim", "3", "--n", "9", "--out", out)
        assert code == 2 and doc["status"] == "error"


class TestLattice:
    def test_cube3(self, cube3_file):
        doc, code = invoke("lattice", cube3_file)
        assert code == 0
        check_output(doc, "lattice")
        assert doc["output"]["f_vector"] == [8, 12, 6]
        ids = {f["id"] for f in doc["output"]["faces"]}
        assert "empty" in ids and "v0-v1-v2-v3" in ids

    def test_missing_file(self):
        doc, code = invoke("lattice", "/nonexistent/p.poly")
        assert code == 2 and doc["status"] == "error"


class TestHypergraph:
    def test_cube3_k1(self, cube3_file):
        doc, code = invoke("hypergraph", cube3_file, "--k", "1")
        assert code == 0
        check_output(doc, "hypergraph")
        out = doc["output"]
        assert len(out["nodes"]) == 12 and len(out["hyperedges"]) == 6

    def test_k_out_of_range(self, cube3_file):
        doc, code = invoke("hypergraph", cube3_file, "--k", "7")
        assert code == 2 and doc["status"] == "error"


class TestConnectivity:
    def test_default_cap_is_dim_minus_k(self, cube3_file):
        doc, code = invoke("connectivity", cube3_file, "--k", "1")
        assert code == 0
        check_output(doc, "connectivity")
        out = doc["output"]
        assert out["cap"] == 2 and out["alpha"] == 2 and out["capped"] is True
        assert out["witness"] is None

    def test_witness_flag(self, cube3_file):
        doc, code = invoke(
            "connectivity", cube3_file, "--k", "1", "--cap", "3", "--witness"
        )
        assert code == 0
        out = doc["output"]
        assert out["alpha"] == 2 and out["capped"] is False
        assert out["witness"]["removed"] == ["v0-v1", "v0-v2"]

    def test_witness_omitted_without_flag(self, cube3_file):
        doc, code = invoke("connectivity", cube3_file, "--k", "1", "--cap", "3")
        assert out_is_null_witness(doc)


def out_is_null_witness(doc) -> bool:
    return doc["output"]["witness"] is None and doc["output"]["alpha"] == 2


class TestRidgePath:
    def test_verified_path(self, cube3_file):
        doc, code = invoke(
            "ridge-path", cube3_file, "--k", "2",
            "--blocked", "v0-v1-v4-v5,v2-v3-v6-v7",
            "--from", "v0-v1-v2-v3", "--to", "v4-v5-v6-v7", "--verify",
        )
        assert code == 0
        check_output(doc, "ridge_path")
        out = doc["output"]
        assert out["verified"] is True and out["depth"] == 1
        assert out["path"][0] == "v0-v1-v2-v3" and out["path"][-1] == "v4-v5-v6-v7"
        assert len(out["ridges"]) == len(out["path"]) - 1
        assert doc["inputs"]["from"] == "v0-v1-v2-v3"

    def test_unverified_skips_check(self, cube3_file):
        doc, code = invoke(
            "ridge-path", cube3_file, "--k", "1", "--blocked", "",
            "--from", "v0-v1", "--to", "v6-v7",
        )
        assert code == 0
        assert doc["output"]["verified"] is None

    def test_blocked_endpoint_is_error(self, cube3_file):
        doc, code = invoke(
            "ridge-path", cube3_file, "--k", "1", "--blocked", "v0-v1",
            "--from", "v0-v1", "--to", "v6-v7",
        )
        assert code == 2


class TestDual:
    def test_cube3(self, cube3_file, tmp_path):
        out_path = str(tmp_path / "dual.poly")
        doc, code = invoke("dual", cube3_file, "--out", out_path)
        assert code == 0
        check_output(doc, "dual")
        assert doc["output"]["n_vertices"] == 6
        assert doc["output"]["file"] == out_path
        inner, code = invoke("lattice", out_path)
        assert inner["output"]["f_vector"] == [6, 12, 8]

    def test_no_out_file(self, cube3_file):
        doc, code = invoke("dual", cube3_file)
        assert code == 0 and doc["output"]["file"] is None


class TestSection:
    def test_cube3_slice(self, cube3_file):
        doc, code = invoke("section", cube3_file, "--plane", "1,0,0;1/2")
        assert code == 0
        check_output(doc, "section")
        out = doc["output"]
        assert out["slice"]["f_vector"] == [4, 4]
        assert ["v0-v1-v2-v3-v4-v5-v6-v7", "v0-v1-v2-v3"] in out["phi"]

    def test_vertex_on_plane(self, cube3_file):
        doc, code = invoke("section", cube3_file, "--plane", "1,0,0;0")
        assert code == 2 and doc["status"] == "error"


class TestVerifyTheorem:
    def test_all_k_passes(self, cube3_file):
        doc, code = invoke("verify-theorem", cube3_file, "--all-k")
        assert code == 0
        check_output(doc, "verify_theorem")
        rows = doc["output"]["results"]
        assert [r["k"] for r in rows] == [0, 1, 2]
        assert all(r["pass"] for r in rows)
        for r in rows:
            assert r["bound"] == 3 - r["k"]

    def test_single_k(self, cube3_file):
        doc, code = invoke("verify-theorem", cube3_file, "--k", "1")
        rows = doc["output"]["results"]
        assert len(rows) == 1 and rows[0]["k"] == 1 and code == 0

    def test_default_is_all_k(self, cube3_file):
        doc, code = invoke("verify-theorem", cube3_file)
        assert len(doc["output"]["results"]) == 3


class TestEnvelope:
    def test_reruns_are_byte_identical(self, cube3_file):
        a = run(["lattice", cube3_file]).render()
        b = run(["lattice", cube3_file]).render()
        assert a == b

    def test_pretty_only_changes_whitespace(self, cube3_file):
        compact = run(["lattice", cube3_file]).render()
        pretty = run(["lattice", cube3_file, "--pretty"]).render()
        assert compact != pretty
        assert json.loads(compact) == json.loads(pretty)
        assert "pretty" not in json.loads(compact)["inputs"]

    def test_error_envelope_has_no_output(self):
        doc, code = invoke("lattice", "/nonexistent/p.poly")
        assert "output" not in doc and doc["error"]

    def test_missing_subcommand(self):
        doc, code = invoke()
        assert code == 2 and doc["status"] == "error"

    def test_threads_env_does_not_change_bytes(self, cube3_file, monkeypatch):
        base = run(["connectivity", cube3_file, "--k", "1", "--cap", "3", "--witness"]).render()
        monkeypatch.setenv("FACELAB_THREADS", "2")
        again = run(["connectivity", cube3_file, "--k", "1", "--cap", "3", "--witness"]).render()
        assert base == again

    def test_main_prints_and_returns(self, cube3_file, capsys):
        code = main(["lattice", cube3_file])
        captured = capsys.readouterr()
        assert code == 0
        doc = json.loads(captured.out)
        assert doc["status"] == "ok"
