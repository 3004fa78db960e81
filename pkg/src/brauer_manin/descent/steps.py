"""From a Galois-compatible 2-cocycle to a class on the quotient, or an obstruction.

The group acts on cochains by ``(g c)(t) = g . c(g^{-1} t)``.  Writing the
coefficients additively, the steps are

* ``c1(g, g') = delta_g + g.delta_g' - delta_gg'``, a 1-cocycle;
* its image under the divisor class map is a 2-cocycle of G in ``pic``;
  when that class vanishes the deltas are corrected so every ``c1`` is a
  coboundary ``d eps_{g,g'}``;
* ``kappa = eps_{g,g'} + eps_{gg',g''} - eps_{g,g'g''} - g.eps_{g',g''}`` is
  locally constant and a 3-cocycle of G in the constants;
* when that class vanishes too, the corrected epsilons assemble into
  ``beta_{g,g'}(y, y', y'') = beta(y, y', y'') + eps_{g,g'}(y'') - delta_g(y', y'')``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from ..cech.coefficients import AbelianGroup
from ..cech.cochain import Cochain, coboundary, solve_coboundary, twist
from ..cohomology.bar import CohomologyClass, coboundary_witness, cohomology_group
from ..cohomology.lattice import GLattice
from .datum import DescentDatum, DescentError, lift_class

Pair = tuple[int, int]


def c1_cocycle(datum: DescentDatum, g: int, h: int, deltas=None) -> Cochain:
    d = deltas if deltas is not None else datum.deltas
    G = datum.group
    return d[g] * twist(d[h], g) / d[G.mul(g, h)]


def all_c1(datum: DescentDatum, deltas=None) -> dict[Pair, Cochain]:
    G = datum.group
    return {(g, h): c1_cocycle(datum, g, h, deltas) for g in G.elements for h in G.elements}


@dataclass
class ObstructionClass:
    cocycle: dict
    cls: CohomologyClass

    @property
    def is_zero(self) -> bool:
        return self.cls.is_zero


def obstruction_class(datum: DescentDatum, c1=None) -> ObstructionClass:
    """Class of ``(g, g') -> D(c1(g, g'))`` in H^2(G, pic)."""
    c1 = c1 if c1 is not None else all_c1(datum)
    D = datum.divisor_class_map
    pic = datum.pic
    cocycle = {k: pic.reduce(D(v)) for k, v in c1.items()}
    cls = cohomology_group(datum.group, pic, 2).classify(cocycle)
    return ObstructionClass(cocycle, cls)


class ObstructionNonzero(DescentError):
    def __init__(self, message, cls):
        super().__init__(message, cls)
        self.cls = cls


@dataclass
class EpsilonResult:
    deltas: dict[int, Cochain]
    corrections: dict[int, Cochain]
    epsilons: dict[Pair, Cochain]


def epsilon_adjust(datum: DescentDatum, obstruction: Optional[ObstructionClass] = None) -> EpsilonResult:
    """Correct the deltas by cocycles and solve ``d eps_{g,g'} = c1(g, g')``.

    Raises ``ObstructionNonzero`` when the H^2 class does not vanish.
    """
    G = datum.group
    pic = datum.pic
    ob = obstruction if obstruction is not None else obstruction_class(datum)
    if not ob.is_zero:
        raise ObstructionNonzero(f"obstruction class in H^2 has coordinates {ob.cls.coordinates}", ob.cls)
    w = coboundary_witness(G, pic, ob.cocycle, 2)
    if not w.is_coboundary:
        raise DescentError("obstruction class vanishes but no witness was found")
    phi = w.witness
    corrections = {g: lift_class(datum, phi[(g,)]) for g in G.elements}
    deltas = {g: datum.deltas[g] / corrections[g] for g in G.elements}
    epsilons = {}
    for key, c in all_c1(datum, deltas).items():
        e = solve_coboundary(c)
        if e is None:
            raise DescentError(
                f"c1{key} has trivial divisor class but is not a coboundary; "
                "the divisor class map is not injective on classes",
                key,
            )
        epsilons[key] = e
    return EpsilonResult(deltas, corrections, epsilons)


# ------------------------------------------------------------ constants and H^3


@dataclass
class ConstantsModule:
    """Locally constant 0-cochains: one copy of the coefficients per connected component."""

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]
    lattice: GLattice

    def vector(self, c: Cochain) -> Optional[tuple[int, ...]]:
        out = []
        for comp in self.components:
            v = c.values[(comp[0],)]
            if any(c.values[(i,)] != v for i in comp):
                return None
            out.extend(v)
        return self.lattice.reduce(out)

    def cochain(self, cover, A: AbelianGroup, vec) -> Cochain:
        r = A.rank
        return Cochain.from_function(
            cover, 0, A, lambda t: tuple(vec[self.component_of[t[0]] * r + k] for k in range(r))
        )


def constants_module(datum: DescentDatum) -> ConstantsModule:
    cov = datum.cover
    parent = list(range(cov.size))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in cov.tuples(1):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(i) for i in range(cov.size)})
    cpos = {r: n for n, r in enumerate(roots)}
    component_of = tuple(cpos[find(i)] for i in range(cov.size))
    comps = tuple(tuple(i for i in range(cov.size) if component_of[i] == n) for n in range(len(roots)))
    A = datum.coefficients
    G = datum.group
    r = A.rank
    nc = len(comps)
    mats = []
    for g in G.elements:
        Ag = A.action[g] if A.action is not None else [[int(i == j) for j in range(r)] for i in range(r)]
        m = [[0] * (nc * r) for _ in range(nc * r)]
        for c in range(nc):
            tgt = component_of[cov.total_action[g][comps[c][0]]]
            for i in range(r):
                for j in range(r):
                    m[tgt * r + i][c * r + j] = Ag[i][j]
        mats.append(m)
    return ConstantsModule(comps, component_of, GLattice(G, mats, A.moduli * nc))


@dataclass
class H3Result:
    kappa: dict
    cls: CohomologyClass
    constants: ConstantsModule
    epsilons: Optional[dict[Pair, Cochain]] = None

    @property
    def is_zero(self) -> bool:
        return self.cls.is_zero


def kappa_cochain(datum: DescentDatum, eps: dict[Pair, Cochain], g: int, h: int, k: int) -> Cochain:
    G = datum.group
    return eps[(g, h)] * eps[(G.mul(g, h), k)] / eps[(g, G.mul(h, k))] / twist(eps[(h, k)], g)


def h3_test_and_lift(datum: DescentDatum, eps: dict[Pair, Cochain]) -> H3Result:
    """Class of kappa in H^3(G, constants); when zero, epsilons corrected to satisfy b3."""
    G = datum.group
    C = constants_module(datum)
    kappa = {}
    for g, h, k in itertools.product(G.elements, repeat=3):
        kc = kappa_cochain(datum, eps, g, h, k)
        v = C.vector(kc)
        if v is None:
            raise DescentError(f"kappa({g}, {h}, {k}) is not locally constant", (g, h, k))
        kappa[(g, h, k)] = v
    cls = cohomology_group(G, C.lattice, 3).classify(kappa)
    res = H3Result(kappa, cls, C)
    if not cls.is_zero:
        return res
    w = coboundary_witness(G, C.lattice, kappa, 3)
    if not w.is_coboundary:
        raise DescentError("H^3 class vanishes but no witness was found")
    A = datum.coefficients
    res.epsilons = {key: e * C.cochain(datum.cover, A, w.witness[key]) for key, e in eps.items()}
    bad = b3_failure(datum, res.epsilons)
    if bad is not None:
        raise DescentError(f"corrected epsilons fail the cocycle identity at {bad}", bad)
    return res


def b3_failure(datum: DescentDatum, eps: dict[Pair, Cochain]):
    G = datum.group
    for g, h, k in itertools.product(G.elements, repeat=3):
        if not kappa_cochain(datum, eps, g, h, k).is_trivial():
            return (g, h, k)
    return None


# ------------------------------------------------------------ assembly


@dataclass
class Assembly:
    cocycles: dict[Pair, Cochain]
    witness: Cochain
    epsilons: dict[Pair, Cochain]
    deltas: dict[int, Cochain]
    identity_checked: int = 0


def assemble_descent(datum: DescentDatum, eps: dict[Pair, Cochain], deltas: dict[int, Cochain]) -> Assembly:
    """Twisted 2-cocycle family ``beta_{g,g'}`` plus the witness that ``beta_{e,e} - beta = d tau``."""
    G = datum.group
    cov = datum.cover
    A = datum.coefficients
    beta = datum.beta.values
    bad = b3_failure(datum, eps)
    if bad is not None:
        raise DescentError(f"epsilons fail the cocycle identity at {bad}", bad)
    fam = {}
    for (g, h), e in eps.items():
        ev, dv = e.values, deltas[g].values
        fam[(g, h)] = Cochain(
            cov, 2, A,
            {t: A.div(A.op(beta[t], ev[(t[2],)]), dv[(t[1], t[2])]) for t in cov.tuples(2)},
        )
    checked = verify_twisted_identity(datum, fam)
    e0 = G.identity
    tau = Cochain.from_function(cov, 1, A, lambda t: eps[(e0, e0)].values[(t[0],)])
    if coboundary(tau) != fam[(e0, e0)] / datum.beta:
        raise DescentError("beta_{e,e} differs from beta by more than d(tau)")
    return Assembly(fam, tau, eps, deltas, checked)


def verify_twisted_identity(datum: DescentDatum, fam: dict[Pair, Cochain]) -> int:
    """Check the twisted cocycle identity at every group triple and 4-tuple; returns the count."""
    G = datum.group
    cov = datum.cover
    A = datum.coefficients
    n = 0
    for g, h, k in itertools.product(G.elements, repeat=3):
        gh, hk = G.mul(g, h), G.mul(h, k)
        a, b, c = fam[(g, h)].values, fam[(gh, k)].values, fam[(g, hk)].values
        d = fam[(h, k)].values
        ginv = G.inv(g)
        for t in cov.tuples(3):
            y0, y1, y2, y3 = t
            lhs = A.op(a[(y0, y1, y2)], b[(y0, y2, y3)])
            moved = cov.act_tuple(ginv, (y1, y2, y3))
            rhs = A.op(c[(y0, y1, y3)], A.act(g, d[moved]))
            if lhs != rhs:
                raise DescentError(f"twisted identity fails at group triple {(g, h, k)} and sheets {t}", (g, h, k, t))
            n += 1
    return n


# ------------------------------------------------------------ driver


@dataclass
class DescentOutcome:
    verdict: str
    obstruction: ObstructionClass
    h3: Optional[H3Result] = None
    adjusted: Optional[EpsilonResult] = None
    assembly: Optional[Assembly] = None

    @property
    def descends(self) -> bool:
        return self.assembly is not None


def run_descent(datum: DescentDatum, validate: bool = True) -> DescentOutcome:
    """Validate, compute both obstructions, and assemble when they vanish."""
    if validate:
        datum.validate()
    ob = obstruction_class(datum)
    if not ob.is_zero:
        return DescentOutcome("h2-obstructed", ob)
    adj = epsilon_adjust(datum, ob)
    h3 = h3_test_and_lift(datum, adj.epsilons)
    if not h3.is_zero:
        return DescentOutcome("h3-obstructed", ob, h3, adj)
    asm = assemble_descent(datum, h3.epsilons, adj.deltas)
    return DescentOutcome("unobstructed", ob, h3, adj, asm)
