"""Reports: a machine format (versioned JSON) and a table format carrying the same data."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..exact.places import INF

FORMAT = "brauer-manin-report"
VERSION = 1


class ReportError(ValueError):
    pass


def fmt_q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_place(v) -> str:
    return "inf" if v == INF else str(v)


def package_versions() -> dict:
    from importlib import metadata

    out = {"format": VERSION}
    for name in ("artifact", "sympy"):
        try:
            out[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            out[name] = "unknown"
    return out


@dataclass
class Report:
    name: str = ""
    sections: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def verdict(self):
        return self.sections.get("verdict", {}).get("verdict")

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "version": VERSION,
            "problem": self.name,
            "sections": self.sections,
            "provenance": self.provenance,
        }


def emit_report(r: Report, fmt: str = "table") -> str:
    if fmt == "machine":
        return json.dumps(r.to_dict(), indent=2, ensure_ascii=False) + "\n"
    if fmt == "table":
        return _table(r)
    raise ReportError(f"unknown format {fmt!r}")


def parse_report(text: str) -> Report:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if d.get("format") != FORMAT or d.get("version") != VERSION:
        raise ReportError("not a report of a supported version")
    return Report(d.get("problem", ""), d.get("sections", {}), d.get("provenance", {}))


# ------------------------------------------------------------ table format


def _kv(lines, d: dict, indent="  "):
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:" + ("" if v else " (none)"))
            _kv(lines, v, indent + "  ")
        elif isinstance(v, list):
            flat = all(not isinstance(x, (dict, list, str)) or (isinstance(x, str) and "," not in x) for x in v)
            if not v:
                lines.append(f"{indent}{k}: (none)")
            elif flat:
                lines.append(f"{indent}{k}: " + ", ".join(map(_scalar, v)))
            else:
                lines.append(f"{indent}{k}:")
                for x in v:
                    if isinstance(x, dict):
                        lines.append(f"{indent}  -")
                        _kv(lines, x, indent + "    ")
                    else:
                        lines.append(f"{indent}  - {_scalar(x)}")
        else:
            lines.append(f"{indent}{k}: {_scalar(v)}".rstrip())


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(map(_scalar, v)) + "]"
    return str(v)


def _table(r: Report) -> str:
    lines = [f"Brauer-Manin report (format {VERSION})", f"problem: {r.name}", ""]
    for name, sec in r.sections.items():
        lines.append(f"[{name}]")
        if name == "local" and "classes" in sec:
            for c in sec["classes"]:
                lines.append(f"  class {c['name']} (complete: {_scalar(c['complete'])})")
                lines.append("    place  values     complete  certificates  visited  precision  note")
                for row in c["rows"]:
                    vals = "{" + ", ".join(row["values"]) + "}"
                    lines.append(
                        f"    {row['place']:<6} {vals:<10} {_scalar(row['complete']):<9} "
                        f"{row['certificates']:<13} {row['visited']:<8} {row['precision']:<10} {row['note']}".rstrip()
                    )
        else:
            _kv(lines, sec)
        lines.append("")
    lines.append("[provenance]")
    _kv(lines, r.provenance)
    return "\n".join(lines) + "\n"
