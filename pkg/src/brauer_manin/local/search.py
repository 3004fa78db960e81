"""Local points on affine charts, invariants of quaternion classes, and the sum test.

A variety is given by charts: each chart is a hypersurface ``F = 0`` in
affine coordinates that range over Z_p (resp. [-1, 1] at the real place).
The caller asserts that the charts together cover the local points of a
smooth proper model; this is recorded in reports as an assumption.

p-adic search walks the residue tree: a class ``r mod p^j`` is dropped once
``v(F(r)) < j`` (no zero in it), and a point is certified when
``v(F(r)) > 2 min_i v(dF/dx_i(r))`` (Newton's lemma along that coordinate).
At the real place boxes are bisected; a zero is certified by a sign change
of F along an edge of the box.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ..exact.padic import valuation
from ..exact.places import INF, PlaceQ, check_place_q
from .hilbert import HALF, ZERO, hilbert_symbol
from .mpoly import MPoly

BIG = 10**9


class LocalError(ValueError):
    pass


class NoApplicableRepresentative(LocalError):
    pass


@dataclass(frozen=True)
class Chart:
    name: str
    equation: MPoly

    @property
    def variables(self) -> tuple[str, ...]:
        return self.equation.vars

    @property
    def integral(self) -> MPoly:
        return self.equation.integer_scaled()


@dataclass(frozen=True)
class QuaternionClass:
    """Symbol class (f, g) given chart by chart; later pairs on a chart are alternates."""

    name: str
    representatives: dict  # chart name -> tuple of (f, g) MPoly pairs

    def on(self, chart: str) -> tuple[tuple[MPoly, MPoly], ...]:
        return tuple(self.representatives.get(chart, ()))


@dataclass(frozen=True)
class LocalPoint:
    place: PlaceQ
    chart: str
    coordinates: tuple  # residues mod p^precision, or (lo, hi) intervals at inf
    precision: int
    certificate: tuple  # p-adic: (index, v(dF_i), v(F)); real: (index, corner_low, corner_high)

    def check(self, chart: Chart) -> bool:
        F = chart.integral
        if self.place == INF:
            i, lo, hi = self.certificate
            a, b = F(lo), F(hi)
            return (a < 0 < b) or (b < 0 < a)
        p = self.place
        i, s, vf = self.certificate
        val_f = _v(F.eval_int(self.coordinates), p)
        val_d = _v(F.derivative(i).eval_int(self.coordinates), p)
        return val_d == s and val_f == vf and vf > 2 * s


def _v(n, p: int) -> int:
    if n == 0:
        return BIG
    return valuation(n, p)


# ------------------------------------------------------------ p-adic certificates


def _padic_certificate(F: MPoly, grads: Sequence[MPoly], r, p: int):
    vf = _v(F.eval_int(r), p)
    best = None
    for i, d in enumerate(grads):
        s = _v(d.eval_int(r), p)
        if s < BIG and (best is None or s < best[1]):
            best = (i, s)
    if best is None or vf <= 2 * best[1]:
        return None
    return (best[0], best[1], vf)


def _children_padic(r, j, p):
    step = p**j
    for digits in itertools.product(range(p), repeat=len(r)):
        yield tuple(x + d * step for x, d in zip(r, digits)), j + 1


# ------------------------------------------------------------ real certificates


def _corners(box):
    return itertools.product(*box)


def _real_certificate(F: MPoly, box):
    n = len(box)
    vals = {c: F(c) for c in _corners(box)}
    for c, fc in vals.items():
        for i in range(n):
            if c[i] == box[i][0]:
                d = list(c)
                d[i] = box[i][1]
                fd = vals[tuple(d)]
                if (fc < 0 < fd) or (fd < 0 < fc):
                    return (i, c, tuple(d))
    return None


def _children_real(box):
    halves = []
    for lo, hi in box:
        mid = (lo + hi) / 2
        halves.append(((lo, mid), (mid, hi)))
    for choice in itertools.product(*halves):
        yield tuple(choice)


# ------------------------------------------------------------ search


@dataclass
class SearchResult:
    points: list[LocalPoint]
    exhaustive: bool
    visited: int
    max_depth: int


def local_point_search(chart: Chart, v: PlaceQ, k: int, budget: int = 100_000) -> SearchResult:
    """Certified points of one chart, one per residue class (box) where found.

    Classes are refined down to precision ``k`` unless pruned or certified;
    the flag is set iff the whole tree was swept within ``budget`` classes.
    """
    v = check_place_q(v)
    if k < 1:
        raise LocalError("precision must be at least 1")
    F = chart.integral
    grads = F.gradient()
    points, visited, deepest = [], 0, 0
    if v == INF:
        stack = [(tuple((Fraction(-1), Fraction(1)) for _ in chart.variables), 0)]
        while stack:
            box, j = stack.pop()
            visited += 1
            if visited > budget:
                return SearchResult(points, False, visited - 1, deepest)
            deepest = max(deepest, j)
            lo, hi = F.interval(box)
            if lo > 0 or hi < 0:
                continue
            cert = _real_certificate(F, box)
            if cert is not None:
                points.append(LocalPoint(INF, chart.name, box, j, cert))
                continue
            if j < k:
                stack.extend((b, j + 1) for b in reversed(list(_children_real(box))))
        return SearchResult(points, True, visited, deepest)
    p = v
    stack = [(tuple(0 for _ in chart.variables), 0)]
    while stack:
        r, j = stack.pop()
        visited += 1
        if visited > budget:
            return SearchResult(points, False, visited - 1, deepest)
        deepest = max(deepest, j)
        fr = F.eval_int(r)
        if fr != 0 and _v(fr, p) < j:
            continue
        cert = _padic_certificate(F, grads, r, p)
        if cert is not None and j > 0:
            points.append(LocalPoint(p, chart.name, tuple(x % p**j for x in r), j, cert))
            continue
        if j < k:
            stack.extend(reversed(list(_children_padic(r, j, p))))
    return SearchResult(points, True, visited, deepest)


# ------------------------------------------------------------ invariants


def _coefficient_floor(f: MPoly, p: int) -> int:
    return min((valuation(c, p) for c in f.terms.values()), default=0)


def _padic_determined(f: MPoly, r, j: int, p: int) -> Optional[Fraction]:
    """f(r) if its valuation and square class are constant on ``r + p^j Z_p^n``."""
    val = f(r)
    if val == 0:
        return None
    need = 3 if p == 2 else 1
    if valuation(val, p) + need <= j + _coefficient_floor(f, p):
        return val
    return None


def _real_sign(f: MPoly, box) -> Optional[int]:
    lo, hi = f.interval(box)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return None


def box_values(alpha: QuaternionClass, chart: str, v: PlaceQ, box, j: int, mode: str = "formula") -> set:
    """Invariants of the applicable representatives, each constant on the box.

    Alternates represent the class only on the variety, so they may disagree
    on boxes without points; callers refine such boxes.
    """
    out = set()
    for f, g in alpha.on(chart):
        if v == INF:
            sf, sg = _real_sign(f, box), _real_sign(g, box)
            if sf is None or sg is None:
                continue
            val = HALF if sf < 0 and sg < 0 else ZERO
        else:
            a, b = _padic_determined(f, box, j, v), _padic_determined(g, box, j, v)
            if a is None or b is None:
                continue
            val = hilbert_symbol(a, b, v, mode)
        out.add(val)
    return out


def class_value_on_box(alpha: QuaternionClass, chart: str, v: PlaceQ, box, j: int, mode: str = "formula", certified=False):
    """The common invariant of the applicable representatives, or None.

    At a certified point disagreeing alternates are an error.
    """
    vals = box_values(alpha, chart, v, box, j, mode)
    if len(vals) > 1:
        if certified:
            raise LocalError(f"alternates of {alpha.name} disagree at a point of chart {chart} at {v}")
        return None
    return next(iter(vals), None)


def evaluate_invariant(alpha: QuaternionClass, point: LocalPoint, mode: str = "formula") -> Fraction:
    """Invariant at a certified point, from a representative with determined values there."""
    j = point.precision
    box = point.coordinates
    if point.place != INF:
        j = point.certificate[2] - point.certificate[1]
    val = class_value_on_box(alpha, point.chart, point.place, box, j, mode, certified=True)
    if val is None:
        raise NoApplicableRepresentative(
            f"no representative of {alpha.name} has certified nonzero values at this point; "
            "raise the precision or add alternates"
        )
    return val


@dataclass
class PlaceRow:
    place: PlaceQ
    values: tuple[Fraction, ...]
    complete: bool
    certificates: int
    visited: int
    precision: int
    note: str = ""


@dataclass
class InvariantTable:
    cls: str
    rows: list[PlaceRow] = field(default_factory=list)

    def row(self, v: PlaceQ) -> PlaceRow:
        for r in self.rows:
            if r.place == v:
                return r
        raise KeyError(v)

    @property
    def complete(self) -> bool:
        return all(r.complete for r in self.rows)


def invariant_row(
    alpha: QuaternionClass,
    charts: Sequence[Chart],
    v: PlaceQ,
    k: int,
    budget: int = 200_000,
    mode: str = "formula",
) -> PlaceRow:
    """Sweep every chart: each box is pruned, or carries a constant invariant.

    A box with a constant invariant counts once a certified point inside it
    has been found, or when that value was attained elsewhere.  The row is
    complete when no box reached depth ``k`` unresolved and the budget held.
    """
    v = check_place_q(v)
    attained: set[Fraction] = set()
    pending: list[tuple[Fraction, Chart, object, int]] = []
    certs = visited = deepest = 0
    complete = True
    notes = []

    def sweep(chart: Chart, start, j0, want: Optional[Fraction]) -> bool:
        """Returns False on budget exhaustion."""
        nonlocal certs, visited, deepest, complete
        F = chart.integral
        grads = F.gradient()
        stack = [(start, j0)]
        while stack:
            box, j = stack.pop()
            visited += 1
            if visited > budget:
                return False
            deepest = max(deepest, j)
            if v == INF:
                lo, hi = F.interval(box)
                if lo > 0 or hi < 0:
                    continue
                cert = _real_certificate(F, box)
            else:
                fr = F.eval_int(box)
                if fr != 0 and _v(fr, v) < j:
                    continue
                cert = _padic_certificate(F, grads, box, v) if j > 0 else None
            val = class_value_on_box(alpha, chart.name, v, box, j, mode, certified=cert is not None)
            if val is not None:
                if want is not None and val != want:
                    continue
                if cert is not None:
                    certs += 1
                    attained.add(val)
                    if want is not None:
                        return True
                    continue
                if want is None:
                    pending.append((val, chart, box, j))
                    continue
            if j >= k:
                if want is None:
                    complete = False
                    notes.append(f"chart {chart.name}: unresolved class at depth {j}")
                continue
            if v == INF:
                stack.extend((b, j + 1) for b in reversed(list(_children_real(box))))
            else:
                stack.extend(reversed(list(_children_padic(box, j, v))))
        return True

    for chart in charts:
        if not alpha.on(chart.name):
            raise LocalError(f"class {alpha.name} has no representative on chart {chart.name}")
        start = tuple((Fraction(-1), Fraction(1)) for _ in chart.variables) if v == INF else (0,) * len(chart.variables)
        if not sweep(chart, start, 0, None):
            complete = False
            notes.append("budget exhausted")
            break
    for val, chart, box, j in pending:
        if val in attained:
            continue
        # look for a certified point in a box whose value is not attained yet
        found = sweep(chart, box, j, val)
        if val not in attained:
            complete = False
            notes.append(f"value {val} on chart {chart.name} without a certified point")
        if not found:
            break
    return PlaceRow(v, tuple(sorted(attained)), complete, certs, visited, deepest, "; ".join(dict.fromkeys(notes)))


def invariant_table(alpha, charts, places: Iterable[PlaceQ], k: int, budget: int = 200_000, mode="formula") -> InvariantTable:
    return InvariantTable(alpha.name, [invariant_row(alpha, charts, v, k, budget, mode) for v in places])


# ------------------------------------------------------------ verdict

UNOBSTRUCTED = "unobstructed-at-sampled-points"
OBSTRUCTED = "obstructed"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    verdict: str
    totals: dict  # class name -> sorted attainable totals in Q/Z
    obstructing: tuple[str, ...] = ()
    reason: str = ""


def _sums(rows: Sequence[PlaceRow]) -> set[Fraction]:
    totals = {Fraction(0)}
    for r in rows:
        totals = {(t + x) % 1 for t in totals for x in r.values}
    return totals


def bm_verdict(tables: Sequence[InvariantTable]) -> Verdict:
    """Sum test over the listed places, assuming invariants vanish at all other places.

    A class obstructs when every choice of attained values sums to nonzero;
    this is only reported when all its rows are complete.
    """
    totals, obstructing, blocked = {}, [], []
    empty = []
    for t in tables:
        if any(not r.values for r in t.rows):
            empty.append(t.cls)
        s = _sums(t.rows) if t.rows else {Fraction(0)}
        totals[t.cls] = tuple(sorted(s))
        if Fraction(0) not in s:
            (obstructing if t.complete else blocked).append(t.cls)
    if obstructing:
        why = f"no local points for {', '.join(empty)} at some place" if empty else ""
        return Verdict(OBSTRUCTED, totals, tuple(obstructing), why)
    if blocked:
        return Verdict(INCONCLUSIVE, totals, (), f"incomplete tables for {', '.join(blocked)}")
    if empty:
        return Verdict(INCONCLUSIVE, totals, (), f"no local points found for {', '.join(empty)}")
    return Verdict(UNOBSTRUCTED, totals)
