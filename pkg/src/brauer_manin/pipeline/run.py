"""Run the steps a problem supports and collect their sections."""
from __future__ import annotations

from typing import Iterable, Optional

from ..cohomology.bar import cohomology_group
from ..descent.datum import DescentError
from ..descent.steps import run_descent
from ..kummer import build_kummer_cover, faddeev_residue, realizable_residue_tuple
from ..exact.poly import format_rational_function
from ..local.search import UNOBSTRUCTED, InvariantTable, LocalError, bm_verdict, invariant_row
from .problem import Problem
from .report import Report, fmt_place, fmt_q, package_versions

STEPS = ("algebraic", "descent", "kummer", "local", "verdict")
COMMANDS = {
    "cohomology": ("algebraic",),
    "descent": ("descent",),
    "local": ("local",),
    "verdict": ("local", "verdict"),
    "all": STEPS,
}


def algebraic_section(p: Problem) -> dict:
    G, M = p.group, p.pic
    out = {"group_order": G.order, "pic_rank": M.rank}
    for i in (1, 2):
        out[f"H{i}"] = list(cohomology_group(G, M, i).invariant_factors)
    return out


def descent_section(p: Problem) -> dict:
    d = p.descent
    o = run_descent(d)
    out = {
        "label": d.label,
        "group_order": d.group.order,
        "pic_rank": d.pic.rank,
        "verdict": o.verdict,
        "h2_invariants": list(o.obstruction.cls.invariant_factors),
        "h2_class": list(o.obstruction.cls.coordinates),
    }
    if o.adjusted is not None:
        out["corrected_deltas"] = sorted(g for g, z in o.adjusted.corrections.items() if not z.is_trivial())
    if o.h3 is not None:
        out["h3_invariants"] = list(o.h3.cls.invariant_factors)
        out["h3_class"] = list(o.h3.cls.coordinates)
        out["constants_components"] = len(o.h3.constants.components)
        out["constants_note"] = "H3 is taken with coefficients in the locally constant cochains, one copy per component"
    if o.assembly is not None:
        out["twisted_identity_checks"] = o.assembly.identity_checked
        out["witness_checked"] = True
    return out


def kummer_section(p: Problem) -> dict:
    c = p.curve
    C, n = c["curve"], c["n"]
    rows = []
    for t in c["tuples"]:
        ok = realizable_residue_tuple(C, t)
        row = {"tuple": list(t.residues), "realizable": ok}
        if ok:
            row["r"] = format_rational_function(build_kummer_cover(C, t).r)
        rows.append(row)
    residues = []
    for f, g in c["symbols"]:
        per = []
        for y in C.removed:
            res = faddeev_residue(f, g, y, n)
            per.append({"place": str(y), "value": str(res.value), "trivial": res.trivial})
        residues.append({"f": format_rational_function(f), "g": format_rational_function(g), "residues": per})
    return {
        "removed": [str(y) for y in C.removed],
        "n": n,
        "tuples": rows,
        "symbols": residues,
    }


def local_tables(p: Problem, places, precision: int, budget: int, mode: str) -> list[InvariantTable]:
    tables = []
    for alpha in p.classes:
        rows = [invariant_row(alpha, p.charts, v, precision, budget, mode) for v in places]
        tables.append(InvariantTable(alpha.name, rows))
    return tables


def local_section(tables: list[InvariantTable]) -> dict:
    return {
        "classes": [
            {
                "name": t.cls,
                "complete": t.complete,
                "rows": [
                    {
                        "place": fmt_place(r.place),
                        "values": [fmt_q(x) for x in r.values],
                        "complete": r.complete,
                        "certificates": r.certificates,
                        "visited": r.visited,
                        "precision": r.precision,
                        "note": r.note,
                    }
                    for r in t.rows
                ],
            }
            for t in tables
        ]
    }


def verdict_section(tables: list[InvariantTable]) -> dict:
    if not tables:
        return {"verdict": UNOBSTRUCTED, "vacuous": True, "totals": {}, "obstructing": [], "reason": "no classes"}
    v = bm_verdict(tables)
    return {
        "verdict": v.verdict,
        "vacuous": False,
        "totals": {k: [fmt_q(x) for x in vals] for k, vals in v.totals.items()},
        "obstructing": list(v.obstructing),
        "reason": v.reason,
    }


def run_pipeline(
    p: Problem,
    steps: Iterable[str] = STEPS,
    places: Optional[tuple] = None,
    precision: Optional[int] = None,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    oracle_mode: Optional[bool] = None,
) -> Report:
    steps = [s for s in STEPS if s in set(steps)]
    run = dict(p.run)
    for k, v in (("precision", precision), ("budget", budget), ("seed", seed), ("oracle_mode", oracle_mode)):
        if v is not None:
            run[k] = v
    places = tuple(places) if places is not None else p.places
    mode = "oracle" if run["oracle_mode"] else "formula"
    sections: dict = {}
    skipped: dict = {}
    tables = None

    def guarded(name, fn):
        try:
            sections[name] = fn()
        except (DescentError, LocalError, ValueError) as exc:
            sections[name] = {"error": str(exc)}

    for step in steps:
        if step == "algebraic":
            if p.group is None or p.pic is None:
                skipped[step] = "no group and pic"
                continue
            guarded(step, lambda: algebraic_section(p))
        elif step == "descent":
            if p.descent is None:
                skipped[step] = "no descent data"
                continue
            guarded(step, lambda: descent_section(p))
        elif step == "kummer":
            if p.curve is None:
                skipped[step] = "no curve data"
                continue
            guarded(step, lambda: kummer_section(p))
        elif step == "local":
            if p.classes is None:
                skipped[step] = "no classes"
                continue
            if p.classes and not places:
                skipped[step] = "no places"
                continue
            try:
                tables = local_tables(p, places, int(run["precision"]), int(run["budget"]), mode)
                sections[step] = local_section(tables)
            except (LocalError, ValueError) as exc:
                sections[step] = {"error": str(exc)}
        elif step == "verdict":
            if tables is None:
                skipped[step] = "local tables unavailable"
                continue
            sections[step] = verdict_section(tables)
    assumptions = list(p.assumptions)
    if "local" in sections and places:
        assumptions.append("invariants vanish at places outside " + ", ".join(fmt_place(v) for v in places))
    provenance = {
        "command_steps": steps,
        "seed": int(run["seed"]),
        "budget": int(run["budget"]),
        "precision": int(run["precision"]),
        "oracle_mode": bool(run["oracle_mode"]),
        "places": [fmt_place(v) for v in places],
        "assumptions": assumptions,
        "scope": "quaternion classes (n = 2) at the pipeline level",
        "skipped": skipped,
        "versions": package_versions(),
    }
    return Report(p.name, sections, provenance)
