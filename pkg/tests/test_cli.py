import json

import pytest

from dp6kit.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_brauer_index(capsys):
    code, out = _run(capsys, ["brauer", "index", '{"primes":{"7":"1/6","13":"5/6"}}'])
    assert code == 0
    assert json.loads(out) == {"schema": "dp6kit/1", "index": 6}


def test_surface_count(capsys):
    code, out = _run(capsys, ["surface", "count", "--model", "split", "--q", "2"])
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 13 and data["predicted"] == 13


def test_hexagon_report_all(capsys):
    code, out = _run(capsys, ["hexagon", "--all-subgroups"])
    assert code == 0
    data = json.loads(out)
    assert len(data["reports"]) == 16
    assert all(r["h1"] == [] for r in data["reports"])


def test_lattice_snf(capsys):
    code, out = _run(capsys, ["lattice", "snf", "[[2,0],[0,3]]"])
    assert code == 0
    data = json.loads(out)
    assert data["S"] == [["1", "0"], ["0", "6"]]


def test_replay_json(capsys):
    code, out = _run(capsys, ["replay", "--proof", "second", "--algebra",
                              '{"primes":{"7":"1/6","13":"5/6"}}'])
    assert code == 0
    data = json.loads(out)
    assert data["verified"] is True
    assert data["certificate"]["contradiction"] is True


def test_replay_transcript(capsys):
    code, out = _run(capsys, ["replay", "--proof", "first", "--algebra",
                              '{"primes":{"7":"1/6","13":"5/6"}}', "--transcript"])
    assert code == 0
    assert "[VERIFIED]" in out and "verdict" in out


def test_domain_error_exit_code(capsys):
    code, out = _run(capsys, ["replay", "--proof", "first", "--algebra",
                              '{"primes":{"7":"1/2","11":"1/2"}}'])
    assert code == 1
    data = json.loads(out)
    assert data["error"] == "IndexMismatch"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["surface", "count", "--nonsense"])
    assert exc.value.code == 2


def test_determinism_byte_identical(capsys):
    argv = ["surface", "check-zeta", "--model", "kinert-l21", "--q", "2"]
    _, first = _run(capsys, argv)
    _, second = _run(capsys, argv)
    assert first == second
    data = json.loads(first)
    assert data["all_ok"] is True


def test_selftest_filter(capsys):
    code = main(["selftest", "--filter", "brauer"])
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    assert [r["id"] for r in report["results"]] == ["1", "2", "3"]
    assert "PASS" in captured.err
