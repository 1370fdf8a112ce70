import io
import json

import pytest

from supergrass.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from supergrass.persistence import dumps, save_atlas
from supergrass.atlas import pi_atlas


def call(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_atlas_build_save_load(tmp_path):
    path = tmp_path / "a.json"
    code, text = call("atlas", "save", "--n", "3", "--k", "1", str(path))
    assert code == EXIT_OK and "3 charts" in text
    code, text = call("atlas", "load", str(path), "--check")
    assert code == EXIT_OK and "PASS  cocycle" in text
    code, _ = call("atlas", "build", "--n", "3", "--k", "1", "--out", str(tmp_path / "b.json"))
    assert (tmp_path / "b.json").read_text() == path.read_text()


def test_verify_writes_json(tmp_path):
    out = tmp_path / "r.json"
    code, text = call("verify", "cocycle", "retract", "--n", "2", "--k", "1", "--json", str(out))
    assert code == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["passed"] and [s["suite"] for s in rep["suites"]] == ["cocycle", "retract"]
    assert "all suites passed" in text


def test_report_is_reproducible(tmp_path):
    args = ["report", "--suites", "pgl", "superalgebras", "--n", "3", "--k", "1",
            "--seed", "5", "--jacobi-triples", "5"]
    call(*args, "--json", str(tmp_path / "a.json"), "--text", str(tmp_path / "a.txt"))
    call(*args, "--json", str(tmp_path / "b.json"))
    a = json.loads((tmp_path / "a.json").read_text())
    b = json.loads((tmp_path / "b.json").read_text())
    a.pop("timing"), b.pop("timing")
    assert a == b
    assert (tmp_path / "a.txt").read_text().startswith("target PiGr(3,1)")


def test_verify_saved_atlas_failure_exits_one(tmp_path):
    data = json.loads(dumps(pi_atlas(3, 1)))
    data["transitions"][0]["pullback"][0][1]["num"][0]["coeff"] = ["5/1", "0/1"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, text = call("verify", "cocycle", "--atlas", str(path))
    assert code == EXIT_FAIL and "verification FAILED" in text


def test_classify(tmp_path):
    code, text = call("classify", "--n", "4", "--k", "2", "--json", str(tmp_path / "c.json"))
    assert code == EXIT_OK and "4 classes" in text
    assert json.loads((tmp_path / "c.json").read_text())["count"] == 4


def test_fixed_points():
    code, text = call("fixed-points", "--structure", "c-psi-mu", "--n", "4", "--k", "2",
                      "--chart", "1,2")
    assert code == EXIT_OK and "model Pi-H-prime" in text
    code, text = call("fixed-points", "--structure", "c-mu", "--n", "2", "--k", "1",
                      "--chart", "1", "--force")
    assert code == EXIT_OK and "empty" in text


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "9"],
    ["verify", "bogus"],
    ["report", "--json", "/nonexistent-dir/x.json"],
    ["classify", "--n", "3", "--k", "4"],
    ["fixed-points", "--structure", "c-mu", "--n", "3", "--k", "1"],
    ["fixed-points", "--structure", "mu", "--chart", "1,9"],
    ["atlas", "load", "/nonexistent-file.json"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_two(argv, capsys):
    code, _ = call(*argv)
    assert code == EXIT_USAGE


def test_malformed_atlas_file_exits_two(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(dumps(pi_atlas(2, 1))[:40])
    code, _ = call("atlas", "load", str(path))
    assert code == EXIT_USAGE


def test_help_exits_zero(capsys):
    assert call("--help")[0] == EXIT_OK
