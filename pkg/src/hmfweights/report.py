"""Problem documents and analysis reports.

A problem is a small YAML (or JSON) mapping with the fields ``p``, ``places``,
``k`` and optionally ``l`` and ``tasks``::

    p: 3
    places: [3]
    k: [1, 1, 3]
    tasks: [transfer, descend]

Reports are plain dicts built in a fixed key order, so serialising the same
problem twice gives identical bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import yaml

from . import __version__
from .descent import classify_residual, expected_pattern, segment_values, verify_roundtrip
from .errors import InapplicableError, InvariantViolation, StructureError
from .hypotheses import THEOREMS, check_hypotheses
from .inertial import CharacterShape, forbidden_shapes, local_global_applicable, shape_exclusion_violations
from .operators import strict_shifted_cone
from .transfer import compute_transfer
from .weights import Embedding, PlaceStructure, Weight, require_positive

TASKS = ("transfer", "descend", "hypotheses", "impliedshape", "shapes")
FIELDS = ("p", "places", "k", "l", "tasks")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line, self.field = line, field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class ProblemSpec:
    p: int
    places: tuple[int, ...]
    k: tuple[int, ...]
    l: tuple[int, ...]
    tasks: tuple[str, ...] = TASKS

    @property
    def structure(self) -> PlaceStructure:
        return PlaceStructure(self.p, self.places)

    def to_dict(self) -> dict:
        return {"p": self.p, "places": list(self.places), "k": list(self.k), "l": list(self.l),
                "tasks": list(self.tasks)}


def _field_lines(text: str) -> dict[str, int]:
    try:
        node = yaml.compose(text)
    except yaml.YAMLError:
        return {}
    if not isinstance(node, yaml.MappingNode):
        return {}
    return {key.value: key.start_mark.line + 1 for key, _ in node.value if isinstance(key, yaml.ScalarNode)}


def _int_list(value: Any, name: str, line: int | None) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError("expected a list of integers", line, name)
    return tuple(value)


def parse_problem(text: str) -> ProblemSpec:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(f"malformed document: {getattr(exc, 'problem', exc)}",
                         None if mark is None else mark.line + 1) from None
    if not isinstance(data, dict):
        raise ParseError("expected a mapping with fields p, places, k")
    lines = _field_lines(text)
    for key in data:
        if key not in FIELDS:
            raise ParseError(f"unknown field (allowed: {', '.join(FIELDS)})", lines.get(key), str(key))
    for key in ("p", "places", "k"):
        if key not in data:
            raise ParseError("missing required field", None, key)
    p = data["p"]
    if not isinstance(p, int) or isinstance(p, bool):
        raise ParseError("expected an integer", lines.get("p"), "p")
    places = _int_list(data["places"], "places", lines.get("places"))
    k = _int_list(data["k"], "k", lines.get("k"))
    try:
        ps = PlaceStructure(p, places)
    except StructureError as exc:
        raise ParseError(str(exc), lines.get("p"), "p" if "prime" in str(exc) else "places") from None
    if len(k) != ps.n:
        raise ParseError(f"length {len(k)} does not match sum(places) = {ps.n}", lines.get("k"), "k")
    if data.get("l") is None:
        l = (0,) * ps.n
    else:
        l = _int_list(data["l"], "l", lines.get("l"))
        if len(l) != ps.n:
            raise ParseError(f"length {len(l)} does not match sum(places) = {ps.n}", lines.get("l"), "l")
    tasks = data.get("tasks") or list(TASKS)
    if not isinstance(tasks, list) or any(t not in TASKS for t in tasks):
        raise ParseError(f"tasks must be a list drawn from {', '.join(TASKS)}", lines.get("tasks"), "tasks")
    ordered = tuple(t for t in TASKS if t in tasks)
    return ProblemSpec(p, places, k, l, ordered)


# -- serialisation helpers ---------------------------------------------------

def emb(t: Embedding) -> list[int]:
    return [t.place, t.i]


def wt(w: Weight) -> dict:
    return {"k": list(w.k), "l": list(w.l)}


def shape_dict(s: CharacterShape) -> dict:
    return {
        "place": s.place,
        "context": s.context,
        "mu": None if s.mu is None else emb(s.mu),
        "chi1_exponents": list(s.chi1.a),
        "chi2_exponents": list(s.chi2.a),
    }


def _transfer(ps: PlaceStructure, prob: ProblemSpec) -> dict:
    tr = compute_transfer(ps, prob.k, prob.l)
    return {
        "hasse_set": [emb(t) for t in tr.hasse_set],
        "theta_set": [emb(t) for t in tr.theta_set],
        "residual_set": [emb(t) for t in tr.residual_set],
        "hasse_lift": wt(tr.hasse_lift),
        "theta_lifts": [{"mu": emb(mu), **wt(w)} for mu, w in tr.theta_lifts.items()],
        "joint_theta_lift": wt(tr.joint_theta_lift),
        "strict_shifted_cone": {
            "hasse_lift": strict_shifted_cone(ps, tr.hasse_lift),
            "theta_lifts": [strict_shifted_cone(ps, w) for w in tr.theta_lifts.values()],
        },
        "theta_set_coincidences": [emb(t) for t in tr.coincidences],
    }


def _hypotheses(ps: PlaceStructure, prob: ProblemSpec) -> dict:
    out = {}
    for theorem in THEOREMS:
        rep = check_hypotheses(ps, prob.k, theorem, prob.l)
        out[theorem] = [
            {
                "condition": c.key,
                "statement": c.statement,
                "status": c.status.value,
                "witnesses": [emb(w) if isinstance(w, Embedding) else w for w in c.witnesses],
                "shapes": [shape_dict(s) for s in c.shapes],
                "note": c.note,
            }
            for c in rep.conditions
        ]
    return out


def _descend(ps: PlaceStructure, prob: ProblemSpec, findings: list) -> dict:
    try:
        rep = verify_roundtrip(ps, prob.k)
    except InapplicableError as exc:
        return {"status": "inapplicable", "reason": str(exc)}
    cases = []
    for c in classify_residual(ps, prob.k):
        got, want = segment_values(ps, rep.intermediate.k, c), expected_pattern(c, ps.p)
        if got != want:
            findings.append(f"descend: k'' segment at {c.tau} is {list(got)}, predicted {list(want)}")
        cases.append({
            "tau": emb(c.tau), "case": c.case, "s": c.s, "t": c.t, "boundary": c.boundary.value,
            "segment": [emb(t) for t in c.segment(ps)],
            "segment_values": list(got), "expected_pattern": list(want),
        })
    findings.extend(f"descend: {msg}" for msg in rep.problems)
    return {
        "status": "ok" if rep.ok else "finding",
        "intermediate_weight": list(rep.intermediate.k),
        "residual_cases": cases,
        "strip_trace": [{"tau": emb(t), "k": list(w.k)} for t, w in rep.trace.steps],
        "final": list(rep.trace.final.k),
        "roundtrip": rep.ok,
    }


def _impliedshape(ps: PlaceStructure, prob: ProblemSpec, findings: list) -> dict:
    reason = local_global_applicable(ps, prob.k)
    if reason is not None:
        return {"status": "inapplicable", "reason": reason}
    entries, found = [], 0
    for mu in compute_transfer(ps, prob.k).theta_set:
        viol = shape_exclusion_violations(ps, prob.k, mu.place, mu)
        found += len(viol)
        for J in viol:
            findings.append(f"impliedshape: subset {sorted(J)} of place {mu.place} solves the congruence for {mu}")
        entries.append({
            "place": mu.place, "mu": emb(mu),
            "subsets_checked": 2 ** ps.places[mu.place],
            "violations": [sorted(J) for J in viol],
        })
    return {"status": "finding" if found else "ok", "checks": entries}


def analyze_problem(prob: ProblemSpec) -> tuple[dict, int]:
    """Run the requested tasks; return the report and the exit status (0, 1 or 3)."""
    ps = prob.structure
    report: dict[str, Any] = {
        "engine": {"name": "hmfweights", "version": __version__},
        "input": prob.to_dict(),
        "results": {},
    }
    findings: list[str] = []
    try:
        require_positive(ps, prob.k)
        res = report["results"]
        for task in prob.tasks:
            if task == "transfer":
                res["transfer"] = _transfer(ps, prob)
            elif task == "hypotheses":
                res["hypotheses"] = _hypotheses(ps, prob)
            elif task == "descend":
                res["descend"] = _descend(ps, prob, findings)
            elif task == "impliedshape":
                res["impliedshape"] = _impliedshape(ps, prob, findings)
            elif task == "shapes":
                res["shapes"] = [shape_dict(s) for s in forbidden_shapes(ps, prob.k, prob.l)]
    except InvariantViolation as exc:
        findings.append(f"invariant violated: {exc}")
    except InapplicableError as exc:
        report["findings"] = []
        report["verdict"] = f"inapplicable: {exc}"
        return report, 3
    except ValueError as exc:
        report["findings"] = []
        report["verdict"] = f"inapplicable: {exc}"
        return report, 3
    report["findings"] = findings
    report["verdict"] = "finding" if findings else "clean"
    return report, 1 if findings else 0


def dumps_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _fmt_emb(t) -> str:
    return str(Embedding(*t))


def render_table(report: dict) -> str:
    """Plain-text summary of a report."""
    inp = report["input"]
    lines = [
        f"hmfweights {report['engine']['version']}",
        f"p = {inp['p']}   places = {inp['places']}   k = {inp['k']}   l = {inp['l']}",
        "",
    ]
    res = report["results"]

    def row(label, value):
        lines.append(f"  {label:<24} {value}")

    if "transfer" in res:
        tr = res["transfer"]
        lines.append("transfer")
        row("Hasse set", "{" + ", ".join(map(_fmt_emb, tr["hasse_set"])) + "}")
        row("Theta set", "{" + ", ".join(map(_fmt_emb, tr["theta_set"])) + "}")
        row("residual set", "{" + ", ".join(map(_fmt_emb, tr["residual_set"])) + "}")
        row("k'", f"{tr['hasse_lift']['k']}  l' = {tr['hasse_lift']['l']}")
        for e in tr["theta_lifts"]:
            row(f"k^{_fmt_emb(e['mu'])}", f"{e['k']}  l = {e['l']}")
        row("k^theta", f"{tr['joint_theta_lift']['k']}  l = {tr['joint_theta_lift']['l']}")
        if tr["theta_set_coincidences"]:
            row("index coincidences", ", ".join(map(_fmt_emb, tr["theta_set_coincidences"])))
        lines.append("")
    if "hypotheses" in res:
        for theorem, conds in res["hypotheses"].items():
            lines.append(f"hypotheses ({theorem})")
            for c in conds:
                extra = ""
                if c["witnesses"]:
                    extra = " at " + ", ".join(_fmt_emb(w) if isinstance(w, list) else f"place {w}"
                                               for w in c["witnesses"])
                if c["shapes"]:
                    extra += f" [{len(c['shapes'])} shape(s)]"
                if c["note"]:
                    extra += f" ({c['note']})"
                row(c["condition"], c["status"] + extra)
            lines.append("")
    if "descend" in res:
        d = res["descend"]
        lines.append("descend")
        if d["status"] == "inapplicable":
            row("status", f"inapplicable: {d['reason']}")
        else:
            row("k''", d["intermediate_weight"])
            for c in d["residual_cases"]:
                row(f"case {c['case']} at {_fmt_emb(c['tau'])}",
                    f"s={c['s']} t={c['t']} {c['boundary']}: {c['segment_values']} "
                    f"(predicted {c['expected_pattern']})")
            row("stripped", ", ".join(_fmt_emb(s["tau"]) for s in d["strip_trace"]) or "-")
            row("final", d["final"])
            row("roundtrip", d["roundtrip"])
        lines.append("")
    if "impliedshape" in res:
        d = res["impliedshape"]
        lines.append("impliedshape")
        if d["status"] == "inapplicable":
            row("status", f"inapplicable: {d['reason']}")
        for e in d.get("checks", []):
            row(f"mu = {_fmt_emb(e['mu'])}", f"{e['subsets_checked']} subsets, violations {e['violations']}")
        lines.append("")
    if "shapes" in res:
        lines.append("forbidden shapes")
        for s in res["shapes"]:
            label = f"place {s['place']} " + (f"mu={_fmt_emb(s['mu'])}" if s["mu"] else "regular")
            row(label, f"chi1 {s['chi1_exponents']}  chi2 {s['chi2_exponents']}")
        if not res["shapes"]:
            row("(none)", "")
        lines.append("")
    lines.append(f"verdict: {report['verdict']}")
    for f in report.get("findings", []):
        lines.append(f"  ! {f}")
    return "\n".join(lines) + "\n"
