import io
import json
import subprocess
import sys

import pytest

from quiveract.cli import run
from quiveract.dsl import parse_instance

from conftest import FIXTURES

ARROW3 = str(FIXTURES / "arrow3.qv")
CYCLE4 = str(FIXTURES / "cycle4.qv")


def _run(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def _write(tmp_path, text):
    p = tmp_path / "doc.qv"
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize("path", [ARROW3, CYCLE4])
def test_validate_ok(path):
    code, text = _run("validate", "-i", path)
    assert code == 0
    assert "INVALID" not in text


def test_globalize_arrow3():
    code, text = _run("globalize", "-i", ARROW3)
    assert code == 0
    assert text.startswith("enveloping quiver: 3 vertices, 3 arrows")
    # the generator permutes the three enveloping vertices in one cycle
    t_line = next(l for l in text.splitlines() if l.startswith("  t:"))
    assert t_line.split("|")[0].count("[") == 1
    serial = text.split("serialized:\n", 1)[1]
    doc = parse_instance(serial)
    assert len(doc.global_action("beta").quiver.vertices) == 3


def test_restrict_cycle4():
    code, text = _run("restrict", "-i", CYCLE4)
    assert code == 0
    doc = parse_instance(text)
    a = doc.subject_partial_action()
    assert a.domain("t").ordered_arrows() == ["b"]
    assert a.vertex_maps["t3"] == {"2": "1", "3": "2"}


def test_restrict_needs_restrict_statement():
    code, _ = _run("restrict", "-i", ARROW3)
    assert code == 2


def test_algebra_check_cycle4():
    code, text = _run("algebra-check", "-i", CYCLE4)
    assert code == 0
    assert "sum dim = 12, generated dim = 16, strict: yes" in text
    assert "R_t: not an ideal" in text


def test_algebra_check_window_flag():
    code, out = _run("algebra-check", "-i", ARROW3, "--truncate", "1", "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["window"] == 1
    assert data["not_ideal_witnesses"]["t"] is not None


def test_violation_exit_code(tmp_path):
    bad = (FIXTURES / "arrow3.qv").read_text().replace("map t2 v1 -> v2", "map t2 v1 -> v1")
    code, text = _run("validate", "-i", _write(tmp_path, bad))
    assert code == 1
    assert "INVALID" in text
    assert _run("globalize", "-i", _write(tmp_path, bad))[0] == 1


@pytest.mark.parametrize(
    "text",
    ["", "quiver Q\n vertex 1\n arrow a : 1 -> 2\nend\n", "nonsense here\n"],
)
def test_input_error_exit_code(tmp_path, text):
    assert _run("validate", "-i", _write(tmp_path, text))[0] == 2


def test_missing_file():
    assert _run("validate", "-i", "/nonexistent/file.qv")[0] == 2


def test_negative_window():
    assert _run("algebra-check", "-i", CYCLE4, "--truncate", "-1")[0] == 2


def test_structured_is_json_and_deterministic():
    outs = [_run("globalize", "-i", ARROW3, "--format", "structured")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert data["command"] == "globalize" and data["exit_code"] == 0
    assert len(data["quiver"]["vertices"]) == 3
    assert data["report"]["valid"] is True
    assert all(data["report"]["clauses"].values())


def test_text_output_deterministic():
    for cmd in ("validate", "globalize", "restrict", "algebra-check", "export-dot"):
        assert _run(cmd, "-i", CYCLE4)[1] == _run(cmd, "-i", CYCLE4)[1]


def test_output_file(tmp_path):
    target = tmp_path / "report.txt"
    code, printed = _run("validate", "-i", CYCLE4, "-o", str(target))
    assert code == 0 and printed == ""
    assert target.read_text() == _run("validate", "-i", CYCLE4)[1]


def test_export_dot():
    code, text = _run("export-dot", "-i", CYCLE4)
    assert code == 0
    assert text.startswith("digraph")
    assert text.count('color="red"') == 3 + 2


def test_export_dot_envelope():
    code, text = _run("export-dot", "-i", ARROW3, "--envelope")
    assert code == 0
    assert text.count('color="red"') == 2 + 1


def test_stdin_and_module_entry_point():
    src = (FIXTURES / "cycle4.qv").read_text()
    proc = subprocess.run(
        [sys.executable, "-m", "quiveract", "validate"],
        input=src, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == _run("validate", "-i", CYCLE4)[1]
