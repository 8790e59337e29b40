"""Input parsing, canonical module writer, Betti text layout and JSON renderers.

Input (JSON)::

    {"vars": ["x", "y"], "ideal": ["x^2", "x*y"]}
    {"vars": ["x"], "summands": [{"shift": [0], "ideal": ["x"]}, {"shift": [1], "ideal": ["x"]}]}

Monomials are ``*``-separated powers ``var^k``; ``^1`` may be omitted. An
optional ``"field"`` key (``"gf:P"`` or ``"qq"``) sets the default field.
"""

from __future__ import annotations

import json
import re
from typing import Sequence

from .betti import BettiTable, BoundReport, StrandReport, z_graded
from .linalg import FieldSpec
from .monomials import ModulePresentation, MonomialIdeal, format_monomial, minimalize, normalized
from .polyseq import KoszulInstance, ValidationReport, WitnessCertificate
from .tor import TorBoundReport

SCHEMA_VERSION = 1
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_FACTOR = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


def _locate(text: str, literal: str, offset: int = 0) -> tuple[int | None, int | None]:
    pos = text.find(json.dumps(literal))
    if pos < 0:
        return None, None
    pos += 1 + offset
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_monomial(s: str, names: Sequence[str], text: str = "") -> tuple[int, ...]:
    index = {v: k for k, v in enumerate(names)}
    exps = [0] * len(names)
    pos = 0
    if s.strip() == "1":
        raise ParseError(f"unit generator {s!r} collapses the module to zero", *_locate(text, s))
    for k, piece in enumerate(s.split("*")):
        m = _FACTOR.fullmatch(piece)
        if m is None:
            raise ParseError(f"bad monomial {s!r}", *_locate(text, s, pos))
        var, e = m.group(1), m.group(2)
        if var not in index:
            raise ParseError(f"unknown variable {var!r} in {s!r}", *_locate(text, s, pos))
        exps[index[var]] += int(e) if e is not None else 1
        pos += len(piece) + 1
    if not any(exps):
        raise ParseError(f"unit generator {s!r} collapses the module to zero", *_locate(text, s))
    return tuple(exps)


def _ideal(raw, names, text) -> MonomialIdeal:
    if not isinstance(raw, list) or not all(isinstance(g, str) for g in raw):
        raise ParseError("an ideal is a list of monomial strings")
    return minimalize([parse_monomial(g, names, text) for g in raw], len(names))


def parse_job(text: str) -> tuple[ModulePresentation, FieldSpec | None]:
    """Parse a module file; returns the normalized module and its optional field."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", 1, 1)
    names = data.get("vars")
    if not isinstance(names, list) or not names:
        raise ParseError("'vars' must be a nonempty list of variable names")
    for v in names:
        if not isinstance(v, str) or not _NAME.match(v):
            raise ParseError(f"bad variable name {v!r}", *_locate(text, v) if isinstance(v, str) else (None, None))
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names")
    n = len(names)
    if ("ideal" in data) == ("summands" in data):
        raise ParseError("exactly one of 'ideal' or 'summands' is required")
    if "ideal" in data:
        parts = [((0,) * n, _ideal(data["ideal"], names, text))]
    else:
        raw = data["summands"]
        if not isinstance(raw, list) or not raw:
            raise ParseError("'summands' must be a nonempty list")
        parts = []
        for s in raw:
            if not isinstance(s, dict) or "ideal" not in s:
                raise ParseError("each summand needs an 'ideal'")
            shift = s.get("shift", [0] * n)
            if not isinstance(shift, list) or len(shift) != n or not all(type(x) is int for x in shift):
                raise ParseError(f"shift must be a list of {n} integers")
            parts.append((tuple(shift), _ideal(s["ideal"], names, text)))
    field = None
    if "field" in data:
        try:
            field = FieldSpec.parse(str(data["field"]))
        except ValueError as e:
            raise ParseError(str(e)) from None
    return normalized(parts, names), field


def parse_module(text: str) -> ModulePresentation:
    return parse_job(text)[0]


def module_dict(M: ModulePresentation) -> dict:
    names = M.names
    if len(M.summands) == 1 and not any(M.summands[0].shift):
        return {"vars": list(names), "ideal": [format_monomial(g, names) for g in M.summands[0].ideal.gens]}
    return {"vars": list(names),
            "summands": [{"shift": list(s.shift), "ideal": [format_monomial(g, names) for g in s.ideal.gens]}
                         for s in M.summands]}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_module(M: ModulePresentation) -> str:
    return dumps(module_dict(M))


def parse_degree(text: str, n: int | None = None) -> tuple[int, ...]:
    try:
        a = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad multidegree {text!r}; expected comma-separated integers") from None
    if n is not None and len(a) != n:
        raise ParseError(f"multidegree {text!r} needs {n} entries")
    return a


# Betti tables


def betti_text(table: BettiTable) -> str:
    """Macaulay-style layout: columns i, rows j - i, a totals row on top."""
    graded = z_graded(table)
    if not graded:
        return "0\n"
    pd = table.projdim
    rows = sorted({j - i for i, j in graded})
    rows = list(range(rows[0], rows[-1] + 1))
    totals = table.totals()
    cells = [[str(graded.get((i, i + r), 0) or ".") for i in range(pd + 1)] for r in rows]
    width = [max([len(str(i)), len(str(totals[i]))] + [len(c[i]) for c in cells]) for i in range(pd + 1)]
    labels = ["", "total:"] + [f"{r}:" for r in rows]
    lw = max(len(x) for x in labels)
    out = [" ".join([" " * lw] + [str(i).rjust(width[i]) for i in range(pd + 1)]).rstrip()]
    out.append(" ".join(["total:".rjust(lw)] + [str(totals[i]).rjust(width[i]) for i in range(pd + 1)]))
    for r, c in zip(rows, cells):
        out.append(" ".join([f"{r}:".rjust(lw)] + [c[i].rjust(width[i]) for i in range(pd + 1)]))
    return "\n".join(out) + "\n"


def strand_report_dict(sr: StrandReport) -> dict:
    return {"projdim": sr.projdim, "reg": sr.reg,
            "d": [{"k": k, "value": v, "degenerate": k in sr.degenerate} for k, v in sorted(sr.d.items())],
            "linear_strands": [{"k": k, "from_i": k, "values": list(v)} for k, v in sorted(sr.lin.items())]}


def betti_dict(table: BettiTable, report: StrandReport | None = None) -> dict:
    out = {"schema": f"multigrad.betti/{SCHEMA_VERSION}", "field": str(table.field),
           "module": module_dict(table.module),
           "entries": [{"i": i, "degree": list(a), "dim": d} for (i, a), d in table.items()],
           "graded": [{"i": i, "j": j, "dim": d} for (i, j), d in z_graded(table).items()],
           "totals": table.totals()}
    if report is not None:
        out["strand_report"] = strand_report_dict(report)
    return out


def strand_report_text(sr: StrandReport) -> str:
    lines = [f"projdim = {sr.projdim}", f"reg = {sr.reg}"]
    lines.append("d_k: " + ", ".join(f"d_{k}={v}{'*' if k in sr.degenerate else ''}" for k, v in sorted(sr.d.items())))
    for k, vals in sorted(sr.lin.items()):
        lines.append(f"beta^{{{k},lin}}_i for i={k}..{sr.projdim}: {list(vals)}")
    if sr.degenerate:
        lines.append("* k > projdim: d_k falls back to reg")
    return "\n".join(lines) + "\n"


# reports


def bound_report_dict(rep: BoundReport) -> dict:
    return {"name": rep.name, "hypothesis": rep.hypothesis, "ok": rep.ok, "rows": rep.rows, **rep.extra}


def tor_bound_dict(rep: TorBoundReport) -> dict:
    return {"p": rep.p, "degree": list(rep.a), "hypothesis": rep.hypothesis, "ok": rep.ok,
            "rows": [{"i": i, "count": c, "bound": b, "pass": c >= b, "degrees": [list(d) for d in ds]}
                     for i, (c, b, ds) in enumerate(zip(rep.counts, rep.bounds, rep.degrees))]}


def _names(idx: Sequence[int], names: Sequence[str]) -> list[str]:
    return [names[k] for k in idx]


def class_dict(inst: KoszulInstance, y) -> dict:
    f, names = inst.field, inst.M.names
    chain = [{"G": _names(e.G, names), "summand": e.summand, "monomial": list(e.monomial), "coeff": f.encode(c)}
             for e, c in sorted(inst.chain_terms(y).items())]
    return {"hdeg": y.hdeg, "degree": list(y.degree), "coordinates": [f.encode(c) for c in y.coordinates],
            "chain": chain}


def certificate_dict(inst: KoszulInstance, cert: WitnessCertificate, report: ValidationReport | None) -> dict:
    names = inst.M.names
    out = {"schema": f"multigrad.witness/{SCHEMA_VERSION}", "field": str(inst.field),
           "module": module_dict(inst.M), "F": _names(cert.F, names),
           "excluded": _names(cert.excluded, names), "p": cert.p, "degree": list(cert.a),
           "seed": class_dict(inst, cert.seed), "counts": cert.counts, "bounds": cert.bounds,
           "levels": [{"i": i, "count": len(lv), "bound": cert.bounds[i],
                       "witnesses": [{"I": _names(w.I, names), "b": list(w.b), **class_dict(inst, w.cls)}
                                     for w in lv]}
                      for i, lv in enumerate(cert.levels)]}
    if report is not None:
        out["validation"] = {"ok": report.ok, "first_violation": report.first_violation, "checks": report.checks}
    return out


def certificate_text(cert: WitnessCertificate, names: Sequence[str], report: ValidationReport | None) -> str:
    lines = [f"certificate for a nonzero class in H_{cert.p}(F)_{list(cert.a)}, F = {{{', '.join(_names(cert.F, names))}}}"]
    for i, lv in enumerate(cert.levels):
        degs = " ".join(str(list(w.degree)) for w in lv)
        lines.append(f"  i={i}: {len(lv)} >= {cert.bounds[i]}  degrees: {degs}")
    if report is not None:
        lines.append("validation: " + ("pass" if report.ok else f"FAIL ({report.first_violation})")
                     + f" [{report.checks} checks]")
    return "\n".join(lines) + "\n"
