"""Command-line interface tests: exit codes, JSON schemas, corpus golden run."""

import json

import jsonschema

from rado_forge.cli import (
    EXIT_CORPUS_MISMATCH,
    EXIT_INCONCLUSIVE,
    EXIT_METHOD_INAPPLICABLE,
    EXIT_NOT_PR,
    EXIT_PARSE_ERROR,
    EXIT_PR,
    EXIT_UNKNOWN,
    main,
)

VERDICT_SCHEMA = {
    "type": "object",
    "required": ["schema", "input", "canonical", "status", "injective", "certificate", "trace", "notes"],
    "properties": {
        "schema": {"const": 1},
        "input": {"type": "string"},
        "canonical": {"type": "string"},
        "status": {"enum": ["PR", "NOT_PR", "UNKNOWN"]},
        "injective": {"enum": ["yes", "no", "unknown"]},
        "certificate": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["theorem", "payload"],
                    "properties": {
                        "theorem": {"type": "string"},
                        "payload": {"type": "object"},
                    },
                },
            ]
        },
        "trace": {"type": "array", "items": {"type": "string"}},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

WITNESS_SCHEMA = {
    "type": "object",
    "required": ["schema", "assignment", "value", "injective", "provenance", "trace"],
    "properties": {
        "schema": {"const": 1},
        "assignment": {"type": "object", "additionalProperties": {"type": "integer"}},
        "value": {"const": 0},
        "injective": {"type": "boolean"},
        "provenance": {"enum": ["ReductLift", "NlpLift", "BruteForce"]},
        "trace": {
            "type": "object",
            "required": ["eta", "eta_i", "gamma", "I"],
            "properties": {
                "eta": {"type": ["integer", "null"]},
                "eta_i": {"type": "array", "items": {"type": "integer"}},
                "gamma": {"type": "object", "additionalProperties": {"type": "integer"}},
                "I": {
                    "type": "object",
                    "additionalProperties": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
    },
}

OUTCOME_SCHEMA = {
    "type": "object",
    "required": ["schema", "polynomial", "r", "N", "injective", "outcome", "coloring", "stats"],
    "properties": {
        "schema": {"const": 1},
        "polynomial": {"type": "string"},
        "r": {"type": "integer"},
        "N": {"type": "integer"},
        "injective": {"type": "boolean"},
        "outcome": {"enum": ["bad_coloring", "forced", "inconclusive"]},
        "coloring": {
            "oneOf": [
                {"type": "null"},
                {"type": "array", "items": {"type": "integer"}},
            ]
        },
        "stats": {
            "type": "object",
            "required": ["nodes", "constraints", "ms"],
            "additionalProperties": {"type": "integer"},
        },
    },
}


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


# -- classify ----------------------------------------------------------


def test_classify_exit_codes(capsys):
    assert main(["classify", "x1 + x2 - y1*y2"]) == EXIT_PR
    assert main(["classify", "x + y - 3*z"]) == EXIT_NOT_PR
    assert main(["classify", "x*y + x*z - y*z"]) == EXIT_UNKNOWN
    capsys.readouterr()


def test_classify_unknown_carries_note(capsys):
    main(["classify", "x*y + x*z - y*z"])
    out = capsys.readouterr().out
    assert "partition regular" in out and "note" in out


def test_classify_parse_error(capsys):
    assert main(["classify", "x + * y"]) == EXIT_PARSE_ERROR
    err = capsys.readouterr().err
    assert "position 4" in err


def test_classify_constant_requires_flag(capsys):
    assert main(["classify", "x + y + 1"]) == EXIT_PARSE_ERROR
    assert main(["classify", "x + y + 1", "--allow-constant"]) == EXIT_NOT_PR
    assert main(["classify", "x + y - z + 1", "--allow-constant"]) == EXIT_PR
    capsys.readouterr()


def test_classify_json_schema(capsys):
    for text in ["x1 + x2 - y1*y2", "x + y - 3*z", "x*y + x*z - y*z"]:
        code, payload = run_json(capsys, ["classify", text, "--json"])
        jsonschema.validate(payload, VERDICT_SCHEMA)
        assert json.loads(json.dumps(payload)) == payload  # round-trips


def test_classify_ring_z(capsys):
    code, payload = run_json(
        capsys, ["classify", "x1*y1 + x2*y2 + x3", "--ring", "Z", "--json"]
    )
    assert code == EXIT_PR
    assert payload["certificate"]["payload"]["sign_map"] == {
        "x1": -1, "x2": -1, "x3": -1, "y1": -1, "y2": -1
    }


# -- witness ----------------------------------------------------------


def test_witness_reduct(capsys):
    code, payload = run_json(
        capsys, ["witness", "x1 + x2 - y1*y2", "--method", "reduct", "--json"]
    )
    assert code == 0
    jsonschema.validate(payload, WITNESS_SCHEMA)
    assert payload["value"] == 0


def test_witness_nlp_has_gamma_trace(capsys):
    code, payload = run_json(
        capsys,
        ["witness", "t1*t2*x^2 + t3*t4*y^2 - t5*t6*z^2", "--method", "nlp", "--json"],
    )
    assert code == 0
    jsonschema.validate(payload, WITNESS_SCHEMA)
    assert payload["trace"]["eta"] is not None
    assert payload["trace"]["gamma"]


def test_witness_brute(capsys):
    code, payload = run_json(
        capsys,
        ["witness", "x + y - z^2", "--method", "brute", "--N", "10", "--limit", "5", "--json"],
    )
    assert code == 0
    found = {tuple(w["assignment"][v] for v in ("x", "y", "z")) for w in payload["witnesses"]}
    assert (1, 3, 2) in found


def test_witness_inapplicable_method(capsys):
    assert (
        main(["witness", "x*y + x*z - y*z", "--method", "reduct"])
        == EXIT_METHOD_INAPPLICABLE
    )
    err = capsys.readouterr().err
    assert "exclusive" in err


# -- search ----------------------------------------------------------


def test_search_threshold(capsys):
    code, payload = run_json(
        capsys, ["search", "x + y - z", "--colors", "2", "--threshold", "10", "--json"]
    )
    assert code == 0
    assert payload["threshold"] == 5


def test_search_threshold_not_found(capsys):
    code = main(["search", "x + y - 3*z", "--colors", "2", "--threshold", "6"])
    assert code == 1
    capsys.readouterr()


def test_search_bad_coloring(capsys):
    code, payload = run_json(
        capsys, ["search", "x + y - z", "--colors", "2", "--N", "4", "--json"]
    )
    assert code == 0
    jsonschema.validate(payload, OUTCOME_SCHEMA)
    assert payload["coloring"] == [0, 1, 1, 0]


def test_search_budget_exit(capsys):
    code = main(
        ["search", "x + y - z", "--colors", "2", "--N", "9", "--injective", "--budget", "4"]
    )
    assert code == EXIT_INCONCLUSIVE
    capsys.readouterr()


def test_search_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("RADO_FORGE_BUDGET", "4")
    code, payload = run_json(
        capsys,
        ["search", "x + y - z", "--colors", "2", "--N", "9", "--injective", "--json"],
    )
    assert code == EXIT_INCONCLUSIVE
    assert payload["outcome"] == "inconclusive"


# -- corpus ----------------------------------------------------------


def test_corpus_run(capsys):
    code, payload = run_json(capsys, ["corpus", "run", "--json"])
    assert code == 0
    assert payload["all_match"] is True
    assert len(payload["fixtures"]) >= 10
    assert json.loads(json.dumps(payload)) == payload


def test_corpus_list(capsys):
    assert main(["corpus", "list"]) == 0
    out = capsys.readouterr().out
    assert "x1+x2-y1*y2" in out
    assert "Thm3.5" in out


def test_corpus_run_reproducible(capsys):
    # bit-for-bit identical across runs, wall-clock timings aside
    def snapshot():
        _, payload = run_json(capsys, ["corpus", "run", "--json"])
        for fixture in payload["fixtures"]:
            fixture.pop("ms")
        return json.dumps(payload, sort_keys=True)

    assert snapshot() == snapshot()


def test_search_workers_flag(capsys):
    code, payload = run_json(
        capsys,
        ["search", "x + y - z", "--colors", "2", "--N", "5", "--workers", "8", "--json"],
    )
    assert code == 0
    assert payload["outcome"] == "forced"


def test_corpus_mismatch_exit(capsys, tmp_path):
    fixture = tmp_path / "edited.txt"
    fixture.write_text("x + y - z | NOT_PR | RadoLinear | yes | edited expectation\n")
    code = main(["corpus", "run", "--file", str(fixture)])
    assert code == EXIT_CORPUS_MISMATCH
    out = capsys.readouterr().out
    assert "expected NOT_PR, got PR" in out
