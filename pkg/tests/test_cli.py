from __future__ import annotations

import json

import pytest

from permsplit.cli import parse_spec, run
from permsplit.perms import Permutation
from permsplit.splitters import ColoringCertificate, SplittingSpec

P = Permutation.from_text


def run_lines(capsys, argv, stdin_text=None, monkeypatch=None):
    if stdin_text is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    code = run(argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line]


def test_parse_spec():
    assert parse_spec("132,213") == SplittingSpec.of(P("132"), P("213"))
    assert parse_spec("2*132") == SplittingSpec(((P("132"), 2),))
    assert parse_spec("2*1 3 2,213") == SplittingSpec(((P("132"), 2), (P("213"), 1)))
    with pytest.raises(ValueError):
        parse_spec("")
    with pytest.raises(ValueError):
        parse_spec("132,,213")


def test_classify_and_contains(capsys):
    code, lines = run_lines(capsys, ["classify", "2413"])
    assert code == 0 and lines == [{"verdict": "unsplittable", "reason": "simple"}]
    code, lines = run_lines(capsys, ["contains", "132", "2413"])
    assert code == 0 and lines == [{"contains": True, "embedding": [1, 2, 4]}]
    code, lines = run_lines(capsys, ["contains", "1324", "2413"])
    assert code == 0 and lines == [{"contains": False, "embedding": None}]


def test_enumerate_and_count(capsys):
    code, lines = run_lines(capsys, ["enumerate", "--avoid", "21", "--n", "4"])
    assert code == 0 and lines == [{"perm": "1 2 3 4"}]
    code, lines = run_lines(capsys, ["enumerate", "--avoid", "132", "--n", "6", "--count"])
    assert code == 0 and lines == [{"n": 6, "count": 132}]


def test_split_stream_and_round_trip(capsys, monkeypatch):
    code, lines = run_lines(
        capsys,
        ["split", "--method", "greedy3", "--pattern", "1324", "--input", "-"],
        stdin_text="2413\n{\"perm\": \"3 2 1\"}\n",
        monkeypatch=monkeypatch,
    )
    assert code == 0 and len(lines) == 2
    cert = ColoringCertificate.from_json_dict(lines[0])
    assert cert.subject == P("2413") and cert.colors == (0, 0, 0, 1)
    # every JSON output re-parses into the originating value
    assert ColoringCertificate.from_json_dict(lines[1]).subject == P("321")


def test_split_precondition_failure_exits_one(capsys, monkeypatch):
    code, _ = run_lines(
        capsys,
        ["split", "--method", "greedy3", "--pattern", "1324", "--input", "-"],
        stdin_text="1324\n",
        monkeypatch=monkeypatch,
    )
    assert code == 1


def test_verify_exit_codes(capsys):
    code, lines = run_lines(
        capsys, ["verify", "--class", "1324", "--parts", "132,213", "--max-n", "4"]
    )
    assert code == 0 and lines[0]["pass"] is True
    code, lines = run_lines(
        capsys, ["verify", "--class", "123", "--parts", "12", "--max-n", "2"]
    )
    assert code == 1 and lines[0]["pass"] is False
    assert lines[0]["failures"][0]["subject"] == "1 2"


def test_envelope_verbs(capsys):
    code, lines = run_lines(capsys, ["envelope", "encode", "132"])
    assert code == 0 and lines == [
        {"perm": "1 3 2", "path": "DDDRRR", "arcs": "1-5 2-6 3-4"}
    ]
    code, lines = run_lines(capsys, ["envelope", "decode", "1-5 2-6 3-4"])
    assert lines == [{"perm": "1 3 2"}]
    code, lines = run_lines(capsys, ["envelope", "decode", "1-3 2-4"])
    assert lines == [{"perm": None}]
    code, lines = run_lines(capsys, ["envelope", "reduce", "132"])
    assert lines == [{"arcs": "1-3 2-4"}]


def test_construct_verbs(capsys):
    code, lines = run_lines(capsys, ["construct", "mprime", "--sigma", "231"])
    assert code == 0 and lines == [{"arcs": "1-5 2-3 4-6"}]
    code, lines = run_lines(
        capsys, ["construct", "tau", "--sigma", "21", "--matching", "1-2"]
    )
    assert lines == [{"perm": "1 2"}]
    code, _ = run_lines(capsys, ["construct", "nplus", "--sigma", "132"])
    assert code == 1  # 132 is decomposable


def test_color_matching(capsys, monkeypatch):
    code, lines = run_lines(
        capsys,
        ["color-matching", "--forbid-clique", "3", "--input", "-"],
        stdin_text="1-3 2-4\n1-2 3-4\n",
        monkeypatch=monkeypatch,
    )
    assert code == 0
    assert lines[0]["arcs"] == "1-3 2-4" and lines[0]["colors_used"] == 2
    assert lines[1]["colors_used"] == 1


def test_usage_errors(capsys):
    assert run(["bogus"]) == 2
    assert run(["enumerate", "--unknown-flag", "1"]) == 2
    assert run(["split", "--method", "nope", "--pattern", "1324"]) == 2


def test_seed_accepted_and_ignored(capsys):
    code, lines = run_lines(capsys, ["--seed", "7", "classify", "1324"])
    assert code == 0 and lines[0]["verdict"] == "splittable"


def test_jobs_parallel_stream_preserves_order(capsys, monkeypatch):
    subjects = "\n".join(["2413", "321", "1234", "2143"]) + "\n"
    code, serial = run_lines(
        capsys,
        ["split", "--method", "theorem", "--pattern", "1324", "--input", "-"],
        stdin_text=subjects,
        monkeypatch=monkeypatch,
    )
    assert code == 0
    code, parallel = run_lines(
        capsys,
        ["--jobs", "2", "split", "--method", "theorem", "--pattern", "1324", "--input", "-"],
        stdin_text=subjects,
        monkeypatch=monkeypatch,
    )
    assert code == 0
    assert serial == parallel
