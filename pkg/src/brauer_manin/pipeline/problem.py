"""Problem files: a versioned JSON document.

Top-level keys (all optional except the header)::

    format, version        "brauer-manin-problem", 1
    name
    group                  {"cyclic": n} | {"table": [[...]]} | {"permutations": [[...]]}
    pic                    {"action": [matrix per element], "moduli": [...]}
    descent                {"planted": {...}} | explicit cover and cochain tables
    variety                {"charts": [{"name", "variables", "equation"}]}
    classes                [{"name", "representatives": {chart: [[f, g], ...]}}]
    curve                  {"removed": [...], "n": n, "tuples": [...], "symbols": [[f, g], ...]}
    places                 [2, 3, "inf", ...]
    run                    {"precision", "budget", "seed", "oracle_mode"}
    assumptions            [text, ...]
"""
from __future__ import annotations

import copy
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from ..cech.coefficients import AbelianGroup
from ..cech.cochain import Cochain
from ..cech.cover import CombCover, CoverError
from ..cohomology.groups import FiniteGroupTable, GroupTableError
from ..cohomology.lattice import GLattice, GModuleError
from ..descent.datum import DescentDatum, DescentError, DivisorClassMap
from ..descent import planted
from ..exact.places import INF, PlaceP1, parse_place_q
from ..exact.poly import parse_rational_function
from ..kummer import KummerError, OpenCurveP1, ResidueTuple
from ..local.mpoly import ExpressionError, equation_polynomial, square_class_polynomial
from ..local.search import Chart, QuaternionClass

FORMAT = "brauer-manin-problem"
VERSION = 1

DEFAULT_RUN = {"precision": 12, "budget": 200000, "seed": 0, "oracle_mode": False}


class ProblemError(ValueError):
    """Invalid problem input; ``where`` is a field path or ``line N column M``."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass
class Problem:
    raw: dict
    name: str = ""
    group: Optional[FiniteGroupTable] = None
    pic: Optional[GLattice] = None
    descent: Optional[DescentDatum] = None
    charts: tuple[Chart, ...] = ()
    classes: Optional[tuple[QuaternionClass, ...]] = None
    curve: Optional[dict] = None
    places: tuple = ()
    run: dict = field(default_factory=lambda: dict(DEFAULT_RUN))
    assumptions: tuple[str, ...] = ()

    def __eq__(self, other):
        return isinstance(other, Problem) and self.raw == other.raw

    def to_json(self) -> str:
        return dump_problem(self.raw)


def dump_problem(raw: dict) -> str:
    return json.dumps(raw, indent=2, ensure_ascii=False) + "\n"


def _label(x):
    """JSON lists become tuples so labels are hashable."""
    if isinstance(x, list):
        return tuple(_label(y) for y in x)
    return x


def _unlabel(x):
    if isinstance(x, tuple):
        return [_unlabel(y) for y in x]
    return x


# ------------------------------------------------------------ sections


def _parse_group(node, where="group") -> FiniteGroupTable:
    if not isinstance(node, dict) or len(node) != 1:
        raise ProblemError("expected exactly one of cyclic, table, permutations", where)
    try:
        if "cyclic" in node:
            n = node["cyclic"]
            if not isinstance(n, int) or n < 1:
                raise ProblemError("cyclic order must be a positive integer", f"{where}.cyclic")
            return FiniteGroupTable.cyclic(n)
        if "table" in node:
            return FiniteGroupTable(tuple(tuple(r) for r in node["table"]))
        if "permutations" in node:
            return FiniteGroupTable.from_permutations(node["permutations"])
    except GroupTableError as exc:
        w = f" (witness {exc.witness})" if getattr(exc, "witness", None) is not None else ""
        raise ProblemError(f"{exc}{w}", where) from None
    except (TypeError, ValueError) as exc:
        raise ProblemError(str(exc), where) from None
    raise ProblemError(f"unknown group encoding {next(iter(node))!r}", where)


def _parse_pic(node, G: FiniteGroupTable, where="pic") -> GLattice:
    if G is None:
        raise ProblemError("pic needs a group", where)
    try:
        return GLattice(G, node["action"], tuple(node.get("moduli", ())))
    except KeyError:
        raise ProblemError("missing action matrices", where) from None
    except (GModuleError, TypeError, ValueError) as exc:
        raise ProblemError(str(exc), where) from None


def _parse_charts(node, where="variety") -> tuple[Chart, ...]:
    charts = []
    names = set()
    for i, c in enumerate(node.get("charts", [])):
        w = f"{where}.charts[{i}]"
        try:
            name, variables, eq = c["name"], tuple(c["variables"]), c["equation"]
        except (KeyError, TypeError):
            raise ProblemError("chart needs name, variables and equation", w) from None
        if name in names:
            raise ProblemError(f"duplicate chart name {name!r}", w)
        names.add(name)
        try:
            charts.append(Chart(name, equation_polynomial(eq, variables)))
        except ExpressionError as exc:
            raise ProblemError(str(exc), f"{w}.equation") from None
    if not charts:
        raise ProblemError("at least one chart is required", where)
    return tuple(charts)


def _parse_classes(node, charts: tuple[Chart, ...]) -> tuple[QuaternionClass, ...]:
    byname = {c.name: c for c in charts}
    out = []
    for i, c in enumerate(node):
        w = f"classes[{i}]"
        if not isinstance(c, dict) or "name" not in c or "representatives" not in c:
            raise ProblemError("class needs name and representatives", w)
        reps = {}
        for chart, pairs in c["representatives"].items():
            if chart not in byname:
                raise ProblemError(f"unknown chart {chart!r}", f"{w}.representatives")
            vs = byname[chart].variables
            plist = []
            for j, pair in enumerate(pairs):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ProblemError("representative must be a pair [f, g]", f"{w}.representatives.{chart}[{j}]")
                try:
                    plist.append(tuple(square_class_polynomial(e, vs) for e in pair))
                except ExpressionError as exc:
                    raise ProblemError(str(exc), f"{w}.representatives.{chart}[{j}]") from None
            reps[chart] = tuple(plist)
        missing = [ch.name for ch in charts if ch.name not in reps]
        if missing:
            raise ProblemError(f"no representative on charts {missing}", w)
        out.append(QuaternionClass(c["name"], reps))
    return tuple(out)


def _parse_places(node, where="places") -> tuple:
    out = []
    for i, v in enumerate(node):
        try:
            out.append(parse_place_q(str(v)))
        except ValueError as exc:
            raise ProblemError(str(exc), f"{where}[{i}]") from None
    if len(set(out)) != len(out):
        raise ProblemError("duplicate places", where)
    return tuple(sorted((p for p in out if p != INF))) + ((INF,) if INF in out else ())


def _parse_curve(node, where="curve") -> dict:
    try:
        C = OpenCurveP1.parse(node["removed"])
        n = int(node.get("n", 2))
        tuples = [ResidueTuple(tuple(t), n) for t in node.get("tuples", [])]
        for t in tuples:
            if len(t.residues) != len(C.removed):
                raise ProblemError("tuple length differs from the number of removed places", f"{where}.tuples")
        symbols = [tuple(parse_rational_function(e) for e in pair) for pair in node.get("symbols", [])]
    except (KummerError, ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, ProblemError):
            raise
        raise ProblemError(str(exc), where) from None
    return {"curve": C, "n": n, "tuples": tuples, "symbols": symbols, "text": node}


# ------------------------------------------------------------ descent data


def _parse_descent(node, G, pic, seed: int, where="descent") -> DescentDatum:
    if "planted" in node:
        pl = node["planted"]
        rng = random.Random(pl.get("seed", seed))
        try:
            if pl["kind"] == "torus":
                d = planted.torus_datum(pl["group"], int(pl["k"]), rng)
            elif pl["kind"] == "octahedron":
                d = planted.octahedron_datum(int(pl["k"]), pl.get("coefficients", "sign"), rng)
            else:
                raise ProblemError(f"unknown planted kind {pl['kind']!r}", f"{where}.planted.kind")
        except KeyError as exc:
            raise ProblemError(f"missing field {exc.args[0]!r}", f"{where}.planted") from None
        except ValueError as exc:
            if isinstance(exc, ProblemError):
                raise
            raise ProblemError(str(exc), f"{where}.planted") from None
        return d
    if G is None or pic is None:
        raise ProblemError("explicit descent data needs group and pic", where)
    try:
        cs = node["cover"]
        base = tuple(_label(x) for x in cs["base"])
        sheets = [(_label(s["label"]), [_label(x) for x in s["support"]]) for s in cs["sheets"]]
        cov = CombCover.from_supports(base, {lab: sup for lab, sup in sheets})
        cov = cov.with_group(G, cs["action"]["base"], cs["action"]["sheets"])
        co = node["coefficients"]
        A = AbelianGroup(tuple(co["moduli"]), co.get("action"))

        def cochain(entries, p, w):
            vals = {t: A.identity() for t in cov.tuples(p)}
            for e in entries:
                key = tuple(cov.index(_label(y)) for y in e["tuple"])
                if key not in vals:
                    raise ProblemError(f"tuple {e['tuple']} is not in the fiber power", w)
                vals[key] = A.normalize(tuple(e["value"]))
            return Cochain(cov, p, A, vals)

        beta = cochain(node["beta"], 2, f"{where}.beta")
        deltas = {int(g): cochain(v, 1, f"{where}.deltas.{g}") for g, v in node["deltas"].items()}
        dm = node.get("divisor_class_map", {"rank": 0, "weights": [], "spanning": []})
        weights = {}
        for e in dm["weights"]:
            key = (tuple(cov.index(_label(y)) for y in e["tuple"]), int(e.get("component", 0)))
            weights[key] = tuple(e["value"])
        spanning = tuple(cochain(z, 1, f"{where}.divisor_class_map.spanning") for z in dm["spanning"])
        dmap = DivisorClassMap(cov, int(dm["rank"]), weights, spanning)
    except ProblemError:
        raise
    except KeyError as exc:
        raise ProblemError(f"missing field {exc.args[0]!r}", where) from None
    except (CoverError, ValueError, TypeError) as exc:
        raise ProblemError(str(exc), where) from None
    return DescentDatum(cov, beta, deltas, pic, dmap, node.get("label", ""))


def datum_to_dict(d: DescentDatum) -> dict:
    """Explicit encoding of a datum (nonzero entries only)."""
    cov = d.cover
    A = d.coefficients

    def entries(c: Cochain):
        return [
            {"tuple": [_unlabel(cov.total[i]) for i in t], "value": list(v)}
            for t, v in c.values.items()
            if v != A.identity()
        ]

    D = d.divisor_class_map
    return {
        "label": d.label,
        "cover": {
            "base": [_unlabel(x) for x in cov.base],
            "sheets": [
                {"label": _unlabel(y), "support": [_unlabel(cov.base[x]) for x in sorted(cov.support[i])]}
                for i, y in enumerate(cov.total)
            ],
            "action": {"base": [list(p) for p in cov.base_action], "sheets": [list(p) for p in cov.total_action]},
        },
        "coefficients": {
            "moduli": list(A.moduli),
            **({"action": [[list(r) for r in m] for m in A.action]} if A.action is not None else {}),
        },
        "beta": entries(d.beta),
        "deltas": {str(g): entries(c) for g, c in sorted(d.deltas.items())},
        "divisor_class_map": {
            "rank": D.rank,
            "weights": [
                {"tuple": [_unlabel(cov.total[i]) for i in t], "component": k, "value": list(w)}
                for (t, k), w in sorted(D.weights.items())
            ],
            "spanning": [entries(z) for z in D.spanning],
        },
    }


# ------------------------------------------------------------ entry points


def parse_problem(raw: dict) -> Problem:
    if not isinstance(raw, dict):
        raise ProblemError("top level must be an object")
    if raw.get("format") != FORMAT:
        raise ProblemError(f"missing or wrong format header (expected {FORMAT!r})", "format")
    if raw.get("version") != VERSION:
        raise ProblemError(f"unsupported version {raw.get('version')!r}", "version")
    known = {"format", "version", "name", "group", "pic", "descent", "variety", "classes", "curve", "places", "run", "assumptions"}
    extra = sorted(set(raw) - known)
    if extra:
        raise ProblemError(f"unknown keys {extra}")
    run = dict(DEFAULT_RUN)
    for k, v in raw.get("run", {}).items():
        if k not in DEFAULT_RUN:
            raise ProblemError(f"unknown run flag {k!r}", "run")
        run[k] = v
    p = Problem(copy.deepcopy(raw), raw.get("name", ""), run=run, assumptions=tuple(raw.get("assumptions", ())))
    if "group" in raw:
        p.group = _parse_group(raw["group"])
    if "pic" in raw:
        p.pic = _parse_pic(raw["pic"], p.group)
    if "descent" in raw:
        p.descent = _parse_descent(raw["descent"], p.group, p.pic, int(run["seed"]))
        if p.group is None:
            p.group = p.descent.group
            p.pic = p.descent.pic
    if "variety" in raw:
        p.charts = _parse_charts(raw["variety"])
    if "classes" in raw:
        if raw["classes"] and not p.charts:
            raise ProblemError("classes need a variety with charts", "classes")
        p.classes = _parse_classes(raw["classes"], p.charts)
    if "curve" in raw:
        p.curve = _parse_curve(raw["curve"])
    if "places" in raw:
        p.places = _parse_places(raw["places"])
    return p


def load_problem(path) -> Problem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return parse_problem(raw)


def fixture_path(name: str) -> Path:
    return Path(__file__).resolve().parent.parent / "fixtures" / f"{name}.json"
