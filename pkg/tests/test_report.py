import json

from exczero.catalog import RunConfig
from exczero.pipeline import run
from exczero.report import emit_report, to_jsonable


def test_json_is_deterministic(catalog):
    a = emit_report(run(RunConfig(5, -11, "15a1"), catalog).ez, "json")
    b = emit_report(run(RunConfig(5, -11, "15a1"), catalog).ez, "json")
    assert a == b
    d = json.loads(a)
    assert {c["status"] for c in d["checks"]} <= {"PASS", "FAIL"}


def test_text_has_one_line_per_identity(catalog):
    rep = run(RunConfig(5, -11, "15a1"), catalog).ez
    text = emit_report(rep, "text")
    lines = [l for l in text.splitlines() if l.startswith(("PASS ", "FAIL "))]
    assert len(lines) == len(rep.checks)
    assert text.startswith("Model statement")


def test_degenerate_text(catalog):
    text = emit_report(run(RunConfig(5, -11, "15a1", w=1), catalog).ez, "text")
    assert "0 = 0 (degenerate case)" in text


def test_to_jsonable_handles_nesting():
    assert to_jsonable({"a": (1, [2, {"b": None}])}) == {"a": [1, [2, {"b": None}]]}
