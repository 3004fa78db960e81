"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line."""
import io
import itertools
import random
import time
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE
from oracles import cyclic_cohomology

from brauer_manin.cech import (
    AbelianGroup,
    Cochain,
    CombCover,
    GlueError,
    coboundary,
    fiber_product,
    mv_glue,
    restrict_to_piece,
    verify_cocycle,
)
from brauer_manin.cohomology import FiniteGroupTable, GLattice, cohomology_group
from brauer_manin.descent import run_descent
from brauer_manin.descent.planted import H2, H3, TRIVIAL, planted_corpus
from brauer_manin.exact import INF, PlaceP1
from brauer_manin.kummer import OpenCurveP1, ResidueTuple, brute_force_realizable, realizable_residue_tuple
from brauer_manin.local import bad_places, hilbert_formula, hilbert_oracle
from brauer_manin.pipeline import fixture_path, load_problem, run_pipeline
from brauer_manin.pipeline.cli import main


def record(name, ok, detail, elapsed):
    ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail} ({elapsed:.1f} s)")


# ------------------------------------------------------------ cyclic oracle


def _finite_order(A, bound=12):
    r = len(A)
    eye = [[int(i == j) for j in range(r)] for i in range(r)]
    X = A
    for k in range(1, bound + 1):
        if X == eye:
            return k
        X = [[sum(X[i][t] * A[t][j] for t in range(r)) for j in range(r)] for i in range(r)]
    return None


def test_cyclic_oracle():
    pool = []
    for r in (1, 2, 3):
        for ent in itertools.product((-1, 0, 1), repeat=r * r):
            A = [list(ent[i * r:(i + 1) * r]) for i in range(r)]
            o = _finite_order(A)
            if o:
                pool.append((A, o))
    rng = random.Random(2024)
    t0 = time.perf_counter()
    mismatches = []
    for _ in range(500):
        n = rng.randint(1, 12)
        A, _o = rng.choice([p for p in pool if n % p[1] == 0])
        G = FiniteGroupTable.cyclic(n)
        M = GLattice.from_generator(G, 1 % n, A)
        for i in (1, 2, 3):
            got = tuple(cohomology_group(G, M, i).invariant_factors)
            if got != cyclic_cohomology(A, n, i):
                mismatches.append((n, A, i))
    dt = time.perf_counter() - t0
    ok = not mismatches and dt < 60
    record("cyclic oracle", ok, f"500 cases, degrees 1-3, {len(mismatches)} mismatches", dt)
    assert not mismatches, mismatches[:5]
    assert dt < 60


# ------------------------------------------------------------ Mayer-Vietoris glue


def _glue_instance(rng):
    m = rng.randint(2, 12)
    A = AbelianGroup.cyclic(m)
    X = ["p", "q", "r", "s"][: rng.randint(1, 4)]
    X1 = X[: rng.randint(1, len(X))]
    X2 = X[rng.randint(0, len(X1) - 1):]

    def cover(base):
        return CombCover.from_projection(base, {f"{x}{k}": x for x in base for k in range(rng.randint(1, 3))})

    C1, C2 = cover(X1), cover(X2)
    rand = lambda t: (rng.randrange(m),)
    a1, a2 = Cochain.from_function(C1, 1, A, rand), Cochain.from_function(C2, 1, A, rand)
    b1, b2 = coboundary(a1), coboundary(a2)
    F = fiber_product(C1, C2)
    eps = Cochain.from_function(F, 0, A, rand)

    def cmp(t):
        p, q = F.total[t[0]], F.total[t[1]]
        return A.div(a1.values[(C1.index(p[0]), C1.index(q[0]))], a2.values[(C2.index(p[1]), C2.index(q[1]))])

    delta = Cochain.from_function(F, 1, A, cmp) * coboundary(eps)
    return A, b1, b2, delta


def test_mv_glue():
    rng = random.Random(7)
    t0 = time.perf_counter()
    valid_fail = perturbed_accepted = 0
    for _ in range(1000):
        A, b1, b2, delta = _glue_instance(rng)
        g = mv_glue(b1, b2, delta)
        if not (verify_cocycle(g) and restrict_to_piece(g, 1) == b1 and restrict_to_piece(g, 2) == b2):
            valid_fail += 1
    for _ in range(1000):
        A, b1, b2, delta = _glue_instance(rng)
        vals = dict(delta.values)
        t = rng.choice(sorted(vals))
        m = A.moduli[0]
        vals[t] = A.op(vals[t], (rng.randrange(1, m),))
        bad = Cochain(delta.cover, 1, A, vals)
        try:
            g = mv_glue(b1, b2, bad)
        except GlueError:
            continue
        if verify_cocycle(g):
            perturbed_accepted += 1
    dt = time.perf_counter() - t0
    ok = valid_fail == 0 and perturbed_accepted == 0 and dt < 30
    record("Mayer-Vietoris glue", ok, f"valid failures {valid_fail}/1000, perturbed accepted {perturbed_accepted}/1000", dt)
    assert valid_fail == 0 and perturbed_accepted == 0
    assert dt < 30


# ------------------------------------------------------------ descent round trip


def test_descent_round_trip():
    t0 = time.perf_counter()
    corpus = planted_corpus(per_class=50, seed=0)
    counts = {TRIVIAL: 0, H2: 0, H3: 0}
    wrong = []
    identity_failures = 0
    for case in corpus:
        counts[case.expected] += 1
        out = run_descent(case.datum)
        if out.verdict != case.expected:
            wrong.append((case.datum.label, case.expected, out.verdict))
            continue
        if out.verdict == TRIVIAL:
            asm = out.assembly
            beta_ee = asm.cocycles[(0, 0)]
            if asm.identity_checked == 0 or coboundary(asm.witness) != beta_ee / case.datum.beta:
                identity_failures += 1
    dt = time.perf_counter() - t0
    enough = min(counts.values()) >= 50
    ok = enough and not wrong and identity_failures == 0 and dt < 120
    record(
        "descent round trip",
        ok,
        f"{len(corpus)} cases {counts}, misclassified {len(wrong)}, assembly failures {identity_failures}",
        dt,
    )
    assert enough
    assert not wrong, wrong[:5]
    assert identity_failures == 0
    assert dt < 120


# ------------------------------------------------------------ Hilbert symbols


def _rational(rng, bound):
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def test_hilbert_symbols():
    rng = random.Random(11)
    t0 = time.perf_counter()
    failures = []
    for _ in range(500):
        a, b, c = (_rational(rng, 10**4) for _ in range(3))
        pairs = [(a, b), (a, c)] + ([(a, 1 - a)] if a != 1 else [])
        finite = {v for x, y in pairs for v in bad_places(x, y) if v != INF}
        places = sorted(finite | {3, 5}) + [INF]
        total = Fraction(0)
        for v in places:
            ab = hilbert_formula(a, b, v)
            if ab != hilbert_formula(b, a, v):
                failures.append(("symmetry", a, b, v))
            if hilbert_formula(a, b * c, v) != (ab + hilbert_formula(a, c, v)) % 1:
                failures.append(("bimultiplicative", a, b, c, v))
            if a != 1 and hilbert_formula(a, 1 - a, v) != 0:
                failures.append(("steinberg", a, v))
            if v in bad_places(a, b):
                total += ab
        if total % 1:
            failures.append(("product formula", a, b))
    oracle_mismatch = 0
    for a in range(-50, 51):
        for b in range(-50, 51):
            if a and b:
                for v in (2, 3, 5, 7, INF):
                    if hilbert_formula(a, b, v) != hilbert_oracle(a, b, v):
                        oracle_mismatch += 1
    dt = time.perf_counter() - t0
    ok = not failures and oracle_mismatch == 0 and dt < 60
    record("Hilbert symbols", ok, f"{len(failures)} law failures on 500 rational pairs, {oracle_mismatch} oracle mismatches", dt)
    assert not failures, failures[:5]
    assert oracle_mismatch == 0
    assert dt < 60


# ------------------------------------------------------------ Kummer realizability


UNIVERSE = ["inf", "t", "t - 1", "t + 1", "t^2 + 1", "t^2 - 3", "t^3 - 2", "t^4 - 3"]


def test_kummer_realizability():
    """Compared with brute force over r of degree <= 6 and, for completeness, <= 8.

    A realizing r for the tuple (2) on the complement of a degree-4 place with
    n = 4 needs degree 8, so the degree-6 search is sound but not complete;
    its misses are counted and must all be of that kind.
    """
    places = [PlaceP1.parse(s) for s in UNIVERSE]
    t0 = time.perf_counter()
    sets = 0
    disagree8 = []
    unsound6 = []
    missed6 = []
    for k in range(1, len(places) + 1):
        for S in itertools.combinations(places, k):
            if sum(y.degree for y in S) > 4:
                continue
            sets += 1
            C = OpenCurveP1(S)
            for n in range(1, 5):
                bf6 = brute_force_realizable(C, n, 6)
                bf8 = brute_force_realizable(C, n, 8)
                for res in itertools.product(range(n), repeat=len(S)):
                    got = realizable_residue_tuple(C, ResidueTuple(res, n))
                    if got != (res in bf8):
                        disagree8.append((S, n, res))
                    if res in bf6 and not got:
                        unsound6.append((S, n, res))
                    if got and res not in bf6:
                        need = sum(min(a, n - a) * y.degree for a, y in zip(res, S) if not y.is_infinite)
                        missed6.append((tuple(map(str, S)), n, res, need))
    dt = time.perf_counter() - t0
    genuine = [m for m in missed6 if m[3] <= 6]
    ok = not disagree8 and not unsound6 and not genuine and dt < 60
    record(
        "Kummer realizability",
        ok,
        f"{sets} removed sets, n <= 4: degree-8 disagreements {len(disagree8)}, "
        f"degree-6 unsound {len(unsound6)}, degree-6 misses needing degree > 6: {[m[:3] for m in missed6]}",
        dt,
    )
    assert not disagree8, disagree8[:5]
    assert not unsound6
    assert not genuine, genuine
    assert dt < 60


# ------------------------------------------------------------ fixtures


def test_iskovskikh_fixture():
    t0 = time.perf_counter()
    report = run_pipeline(load_problem(fixture_path("iskovskikh")), ("local", "verdict"))
    dt = time.perf_counter() - t0
    sec = report.sections
    rows = sec["local"]["classes"][0]["rows"]
    table = {r["place"]: r["values"] for r in rows}
    complete = all(r["complete"] and r["certificates"] > 0 for r in rows)
    ok = (
        report.verdict == "obstructed"
        and complete
        and sec["verdict"]["totals"] == {"alpha": ["1/2"]}
        and set(table) == {"2", "3", "5", "7", "inf"}
        and dt < 60
    )
    record("Iskovskikh fixture", ok, f"verdict {report.verdict}, table {table}, totals {sec['verdict']['totals']}", dt)
    assert report.verdict == "obstructed"
    assert complete
    assert table == {"2": ["1/2"], "3": ["0"], "5": ["0"], "7": ["0"], "inf": ["0"]}
    assert sec["verdict"]["totals"] == {"alpha": ["1/2"]}
    assert dt < 60


def test_control_conic():
    t0 = time.perf_counter()
    report = run_pipeline(load_problem(fixture_path("control_conic")), ("local", "verdict"))
    dt = time.perf_counter() - t0
    ok = report.verdict == "unobstructed-at-sampled-points" and dt < 60
    record("control conic", ok, f"verdict {report.verdict}", dt)
    assert report.verdict == "unobstructed-at-sampled-points"
    assert all(r["complete"] for r in report.sections["local"]["classes"][0]["rows"])
    assert dt < 60


# ------------------------------------------------------------ determinism


def _machine(name):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["all", "--problem", str(fixture_path(name)), "--format", "machine"])
    assert code == 0
    return buf.getvalue().encode()


@pytest.mark.parametrize("name", ["control_conic", "planted_v4"])
def test_determinism(name):
    t0 = time.perf_counter()
    first, second = _machine(name), _machine(name)
    dt = time.perf_counter() - t0
    record(f"determinism ({name})", first == second, f"{len(first)} bytes, identical: {first == second}", dt)
    assert first == second
