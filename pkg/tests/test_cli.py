import io
import json
import sys
from contextlib import redirect_stdout

import pytest

from coble_lab.cli import EX_USAGE, run

from conftest import FIXTURE_A, FIXTURE_B, FIXTURE_C, FIXTURE_LAMBDA, GENERIC_LAMBDA


def e(i, n=10):
    m = [0] * n
    m[i - 1] = -1
    return {"d": 0, "m": m}


def call(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(list(argv))
    return code, buf.getvalue()


def call_json(*argv):
    code, out = call(*argv)
    return code, json.loads(out)


FIXTURE = json.dumps({"A": FIXTURE_A.to_json(), "B": FIXTURE_B.to_json(),
                      "C": FIXTURE_C.to_json(), "Lambda": FIXTURE_LAMBDA})
GENERIC = json.dumps({"A": FIXTURE_A.to_json(), "B": FIXTURE_B.to_json(),
                      "C": FIXTURE_C.to_json(), "Lambda": GENERIC_LAMBDA})
TRIPLE = json.dumps({"A": FIXTURE_A.to_json(), "B": FIXTURE_B.to_json(), "C": FIXTURE_C.to_json()})
SEVEN = json.dumps([e(i) for i in range(1, 8)])
NINE = json.dumps([e(i) for i in range(1, 9)] + [{"d": 1, "m": [0] * 8 + [1, 1]}])
GRID = json.dumps({"A": FIXTURE_A.to_json(), "B": FIXTURE_B.to_json(), "C": FIXTURE_C.to_json(),
                   "base": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "row": 2, "values": [-1, 0, 1]})


def test_lattice_commands():
    code, out = call_json("lattice", "reflect", "--alpha", "[0,1,-1,0]", "--x", "[1,2,3,4]")
    assert code == 0 and out["coords"] == [1, 3, 2, 4]
    code, out = call_json("lattice", "gram", "--e10")
    assert out["matches_embedding"] and len(out["gram"]) == 10
    code, out = call_json("lattice", "gram", "--n", "2")
    assert out["gram"] == [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
    code, out = call_json("lattice", "split", "--v", json.dumps([1] + [0] * 10))
    assert code == 0 and set(out) == {"w", "c"}


def test_picard_commands():
    D = json.dumps({"d": 4, "m": [1] * 10})
    assert call_json("picard", "chi", "--D", D) == (0, {"chi": 5})
    assert call_json("picard", "genus", "--D", D) == (0, {"p_a": 3})
    assert call_json("picard", "pair", "--n", "2", "--a", json.dumps({"d": 1, "m": [1, 0]}),
                     "--b", json.dumps({"d": 1, "m": [0, 1]})) == (0, {"pairing": 1})
    code, out = call_json("picard", "audit-quintic")
    assert all(v["holds"] for part in out.values() for v in part.values())
    code, out = call_json("picard", "contract", "--input", json.dumps([e(i) for i in range(1, 11)]))
    assert code == 0
    code, out = call_json("picard", "genus", "--n", "1", "--D", json.dumps({"d": 1, "m": [0]}))
    assert code == 0 and out == {"p_a": 0}
    code, out = call_json("picard", "chi", "--D", json.dumps({"d": 1, "m": [0]}))
    assert code == 2 and out["error"] == "RankMismatch"


def test_enum_commands():
    code, out = call_json("enum", "classes", "--n", "6", "--preset", "minus-one")
    assert code == 0 and len(out) == 27
    code, out = call_json("enum", "classes", "--n", "3", "--self", "-2", "--k", "0", "--bound", "2", "--verify")
    assert code == 0 and len(out) == 8
    code, out = call_json("enum", "extend", "--input", SEVEN)
    assert code == 0 and len(out) == 10
    code, out = call_json("enum", "extend", "--input", SEVEN, "--all")
    assert code == 0 and len(out) >= 2
    code, out = call_json("enum", "extend", "--input", NINE)
    assert code == 3 and out["error"] == "NonExtendable" and "certificate" in out
    code, out = call_json("enum", "fano")
    assert out == {"H": {"d": 10, "m": [3] * 10}, "H^2": 10}


def test_enum_phi():
    code, out = call_json("enum", "phi", "--H", json.dumps({"d": 10, "m": [3] * 10}))
    assert code == 0 and out["phi"] == 3 and out["doubled_box"] == 12


def test_binform_commands():
    f, g = json.dumps(FIXTURE_A.to_json()), json.dumps(FIXTURE_B.to_json())
    code, out = call_json("binform", "resultant", "--f", f, "--g", g)
    assert code == 0 and out["resultant"] == "4"
    code, out = call_json("binform", "jacobian", "--f", f, "--g", g)
    assert code == 0
    code, out = call_json("binform", "involution", "--f", f, "--g", g)
    assert code == 0 and set(out) == {"involution", "fixed_form"}


def test_sextic_commands():
    code, out = call_json("sextic", "w-form", "--input", GENERIC)
    assert code == 0 and out["degree"] == 20 and out["squarefree"]
    assert call_json("sextic", "system-dim", "--input", FIXTURE, "--m", "3", "--r", "1")[1]["dimension"] == 0
    assert call_json("sextic", "system-dim", "--input", FIXTURE, "--m", "6", "--r", "2")[1]["dimension"] == 1
    code, out = call_json("sextic", "build", "--input", FIXTURE)
    assert code == 0
    code, out = call_json("sextic", "implicitize", "--input", FIXTURE)
    assert code == 0
    code, out = call_json("sextic", "coble-check", "--input", GENERIC, "--audit")
    assert code == 0 and out["metadata"]["moduli"]["dim_moduli"] == 9
    bad = json.dumps({"A": FIXTURE_A.to_json(), "B": FIXTURE_A.to_json(),
                      "C": FIXTURE_C.to_json(), "Lambda": FIXTURE_LAMBDA})
    code, out = call_json("sextic", "build", "--input", bad)
    assert code == 2 and out["error"] == "DegenerateInput"


def test_coincide_commands():
    code, out = call_json("coincide", "matrices", "--input", TRIPLE)
    assert code == 0 and out["detN"] == "-" + str(int(out["detM"]) ** 2).lstrip("-")
    code, out = call_json("coincide", "test", "--input", json.dumps(
        dict(json.loads(TRIPLE), Lambda=[[1, 0, 0], [0, 1, 0], [-1, 0, 1]])))
    assert out["coincident"] is False and out["marked_fix"] is True and len(out["equations"]) == 2
    code, out = call_json("coincide", "residual", "--input", TRIPLE)
    assert code == 0 and out["scalar"] is False
    code, text = call("coincide", "family-scan", "--grid", GRID)
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and len(rows) == 27


def test_usage_errors(capsys):
    assert run(["--bogus"]) == EX_USAGE
    assert run(["enum", "classes"]) == EX_USAGE
    assert run(["enum", "classes", "--n", "3"]) == EX_USAGE
    assert run(["--threads", "0", "lattice", "gram"]) == EX_USAGE
    assert run([]) == EX_USAGE


def test_validation_errors():
    code, out = call_json("coincide", "matrices", "--input", '{"A": [1, 0, 1]}')
    assert code == 2 and out["error"] == "PreconditionFailed"
    code, out = call_json("coincide", "test", "--input", json.dumps(
        dict(json.loads(TRIPLE), extra=1)))
    assert code == 2 and "unknown" in out["message"]
    code, out = call_json("--output", "/nonexistent/dir/x", "lattice", "gram", "--n", "2")
    assert code == 2 and out["error"] == "FileNotFoundError"
    code, out = call_json("binform", "resultant", "--f", "not json", "--g", "[1]")
    assert code == 2 and out["error"] == "JSONDecodeError"


def test_file_and_output_arguments(tmp_path):
    src = tmp_path / "seven.json"
    src.write_text(SEVEN)
    dest = tmp_path / "out.json"
    code, text = call("--output", str(dest), "enum", "extend", "--input", "@" + str(src))
    assert code == 0 and text == ""
    assert len(json.loads(dest.read_text())) == 10


def test_stdin_argument(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(TRIPLE))
    code, out = call_json("coincide", "residual", "--input", "@-")
    assert code == 0


COMMANDS = [
    ("lattice", "reflect", "--alpha", "[0,1,-1,0]", "--x", "[1,2,3,4]"),
    ("lattice", "gram", "--e10"),
    ("lattice", "split", "--v", json.dumps([4] + [1] * 10)),
    ("picard", "chi", "--D", json.dumps({"d": 6, "m": [2] * 7 + [1] * 3})),
    ("picard", "genus", "--D", json.dumps({"d": 4, "m": [1] * 10})),
    ("picard", "pair", "--a", json.dumps({"d": 4, "m": [1] * 10}), "--b", json.dumps(e(1))),
    ("picard", "audit-quintic"),
    ("picard", "contract", "--input", json.dumps([e(i) for i in range(1, 11)])),
    ("enum", "classes", "--n", "7", "--preset", "minus-one"),
    ("enum", "classes", "--n", "8", "--preset", "root"),
    ("enum", "extend", "--input", SEVEN, "--all"),
    ("enum", "extend", "--input", NINE),
    ("enum", "isotropic-extend", "--input", json.dumps([{"d": 3, "m": [1] * 9 + [0]}])),
    ("enum", "fano"),
    ("enum", "phi", "--H", json.dumps({"d": 10, "m": [3] * 10}), "--box", "3"),
    ("binform", "jacobian", "--f", "[1,0,-1]", "--g", "[1,0,1]"),
    ("binform", "resultant", "--f", "[1,0,-1]", "--g", "[1,1,-1]"),
    ("binform", "involution", "--f", "[1,0,-1]", "--g", "[1,1,-1]"),
    ("sextic", "build", "--input", FIXTURE),
    ("sextic", "w-form", "--input", FIXTURE),
    ("sextic", "system-dim", "--input", FIXTURE, "--m", "3", "--r", "1"),
    ("sextic", "implicitize", "--input", FIXTURE),
    ("sextic", "coble-check", "--input", FIXTURE, "--audit"),
    ("coincide", "matrices", "--input", TRIPLE),
    ("coincide", "test", "--input", FIXTURE),
    ("coincide", "residual", "--input", TRIPLE),
    ("coincide", "family-scan", "--grid", GRID),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_byte_identical_across_runs_and_threads(argv):
    outputs = {call("--threads", t, *argv) for t in ("1", "1", "2")}
    assert len(outputs) == 1
    code, text = outputs.pop()
    assert code in (0, 2, 3) and text.endswith("\n")
