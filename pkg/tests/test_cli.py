import json
import subprocess
import sys

import pytest

from starpi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_even_product_is_central(capsys):
    code, out, _ = run(capsys, "check", "--poly", "z1*z2", "--involution", "star", "--field", "F5",
                       "--property", "central")
    assert code == 0
    assert "is central" in out


def test_odd_product_is_not_central(capsys):
    code, out, _ = run(capsys, "check", "--poly", "z1*z2*z3", "--involution", "star", "--field", "F5",
                       "--property", "central", "--output", "json")
    assert code == 1
    data = json.loads(out)
    assert data["holds"] is False
    assert data["witness"]["kind"] == "assignment"


def test_syntax_error_exits_2(capsys):
    code, _, err = run(capsys, "check", "--poly", "y1*(")
    assert code == 2
    assert "position 4" in err


@pytest.mark.parametrize("argv", [
    ["check"],
    ["check", "--poly", "y1", "--field", "F4"],
    ["check", "--poly", "y1", "--field", "Q", "--mode", "exhaustive"],
    ["check", "--poly", "y1", "--field", "F9", "--mode", "generic"],
    ["verify-theorem", "NoSuchTheorem"],
    ["verify-theorem", "EvenZLemma", "--max-degree", "-1"],
    ["central-space", "--max-degree", "-2"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 2


def test_generic_mode_over_a_prime_field(capsys):
    code, out, _ = run(capsys, "check", "--poly", "z1^3 - z1", "--field", "F3", "--mode", "generic")
    assert code == 1
    code, out, _ = run(capsys, "check", "--poly", "y1^3", "--field", "F3", "--mode", "generic",
                       "--property", "central")
    assert code == 0


def test_central_space_examples(capsys):
    code, out, _ = run(capsys, "central-space", "--field", "F3", "--involution", "star", "--max-degree", "2",
                       "--output", "json")
    assert code == 0
    rows = {r["slice"]: r for r in json.loads(out)["slices"]}
    # [z1,z2] is a star identity, so the identity part of this slice is a line
    assert rows["z1 z2"]["central_dim"] == 2 and rows["z1 z2"]["identity_dim"] == 1

    code, out, _ = run(capsys, "central-space", "--field", "F3", "--max-degree", "0", "--output", "json")
    rows = json.loads(out)["slices"]
    assert len(rows) == 1 and rows[0]["central_dim"] == 1

    code, out, _ = run(capsys, "central-space", "--field", "F3", "--involution", "s", "--max-degree", "1",
                       "--output", "json")
    rows = {r["slice"]: r for r in json.loads(out)["slices"]}
    assert rows["y1"]["central_dim"] == 1
    assert rows["z1"]["central_dim"] == 0


def _strip_timing(text):
    data = json.loads(text)
    data.pop("elapsed_ms", None)
    return json.dumps(data, sort_keys=True)


def test_reports_are_deterministic(capsys):
    argv = ["verify-theorem", "EvenZLemma", "--field", "F5", "--output", "json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == second[0] == 0
    assert _strip_timing(first[1]) == _strip_timing(second[1])


def test_report_schema(capsys):
    code, out, _ = run(capsys, "verify-theorem", "PowerPQLemma", "--field", "F9", "--output", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"theorem", "field", "mode", "checks", "elapsed_ms"}
    for check in data["checks"]:
        assert {"name", "status"} <= set(check)
        assert check["status"] in ("pass", "fail", "warn")


def test_catalog_dump(capsys):
    code, out, _ = run(capsys, "catalog-dump", "--field", "F3", "--output", "json")
    assert code == 0
    entries = json.loads(out)
    assert entries[0]["id"] == "IdStarInfinite"
    assert entries[0]["polynomials"][0] == "-y2*y1 + y1*y2"
    again = run(capsys, "catalog-dump", "--field", "F3", "--output", "json")[1]
    assert again == out


def test_console_script_exit_codes():
    base = [sys.executable, "-m", "starpi.cli"]
    ok = subprocess.run(base + ["check", "--poly", "[y1,y2]", "--field", "Q"], capture_output=True)
    bad = subprocess.run(base + ["check", "--poly", "y1", "--field", "Q"], capture_output=True)
    err = subprocess.run(base + ["check", "--poly", "y1*("], capture_output=True)
    assert (ok.returncode, bad.returncode, err.returncode) == (0, 1, 2)
