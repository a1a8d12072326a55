"""Deterministic JSON and text rendering of reports."""

from __future__ import annotations

import json

from .ez import EZReport
from .padic import PadicNumber


def to_jsonable(obj):
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def emit_report(report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError("unknown report format %r" % fmt)
    if isinstance(report, EZReport):
        return _ez_text(report)
    return _generic_text(to_jsonable(report))


def _ez_text(rep: EZReport) -> str:
    lines = [rep.framing, ""]
    for k in sorted(rep.inputs):
        lines.append(f"  {k} = {rep.inputs[k]}")
    for k in sorted(rep.values):
        v = rep.values[k]
        lines.append(f"  {k} = {v}")
    lines.append("")
    for c in rep.checks:
        status = "PASS" if c.passed else "FAIL"
        prec = f" [agreement to p^{c.precision}]" if c.precision is not None else ""
        lines.append(f"{status} {c.tag}: {c.name}{prec}")
        if not c.passed:
            lines.append(f"    lhs = {_show(c.lhs)}")
            lines.append(f"    rhs = {_show(c.rhs)}")
            if c.note:
                lines.append(f"    note: {c.note}")
    if rep.degenerate:
        lines.append("0 = 0 (degenerate case)")
    return "\n".join(lines) + "\n"


def _show(x) -> str:
    if isinstance(x, list):
        return "[" + ", ".join(_show(y) for y in x) + "]"
    return str(x)


def _generic_text(d, indent: int = 0) -> str:
    pad = "  " * indent
    out = []
    if isinstance(d, dict):
        for k in sorted(d):
            v = d[k]
            if isinstance(v, (dict, list)) and not _is_padic_json(v):
                out.append(f"{pad}{k}:")
                out.append(_generic_text(v, indent + 1).rstrip("\n"))
            else:
                out.append(f"{pad}{k}: {_render_leaf(v)}")
    elif isinstance(d, list):
        for v in d:
            if isinstance(v, (dict, list)) and not _is_padic_json(v):
                out.append(f"{pad}-")
                out.append(_generic_text(v, indent + 1).rstrip("\n"))
            else:
                out.append(f"{pad}- {_render_leaf(v)}")
    else:
        out.append(f"{pad}{d}")
    return "\n".join(out) + "\n"


def _is_padic_json(v) -> bool:
    return isinstance(v, dict) and set(v) >= {"p", "M", "v", "digits"}


def _render_leaf(v) -> str:
    if _is_padic_json(v):
        return str(PadicNumber.from_json(v))
    return str(v)
