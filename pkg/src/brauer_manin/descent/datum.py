"""Galois comparison data for a 2-cocycle on a cover with a group action."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..cech.coefficients import AbelianGroup
from ..cech.cochain import Cochain, coboundary, twist, verify_cocycle
from ..cech.cover import CombCover
from ..cohomology.lattice import GLattice
from ..exact.linsolve import solve_integer


class DescentError(ValueError):
    def __init__(self, message: str, where=None):
        super().__init__(message)
        self.where = where


@dataclass(frozen=True)
class DivisorClassMap:
    """Linear map from 1-cochains to ``pic``, meaningful on cocycles modulo coboundaries.

    ``weights[(tuple, component)]`` is the image of the cochain with a single
    unit entry there; ``spanning`` lists 1-cocycles whose classes generate
    the cocycles modulo coboundaries, used to lift classes back.
    """

    cover: CombCover
    rank: int
    weights: Mapping[tuple[tuple[int, ...], int], tuple[int, ...]]
    spanning: tuple[Cochain, ...] = ()

    def __call__(self, c: Cochain) -> tuple[int, ...]:
        out = [0] * self.rank
        for (t, k), w in self.weights.items():
            x = c.values[t][k]
            if x:
                for i in range(self.rank):
                    out[i] += x * w[i]
        return tuple(out)

    @classmethod
    def zero(cls, cover: CombCover) -> "DivisorClassMap":
        return cls(cover, 0, {}, ())


@dataclass
class DescentDatum:
    """A 2-cocycle ``beta`` with ``d(delta[g]) = beta / g.beta`` for every group element g.

    Coefficients are an ``AbelianGroup`` whose action matrices are indexed by
    the elements of ``cover.group``.  ``pic`` is a lattice over the same
    group and ``divisor_class_map`` sends 1-cocycles to it.
    """

    cover: CombCover
    beta: Cochain
    deltas: Mapping[int, Cochain]
    pic: GLattice
    divisor_class_map: DivisorClassMap
    label: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def group(self):
        return self.cover.group

    @property
    def coefficients(self) -> AbelianGroup:
        return self.beta.group

    def validate(self) -> None:
        """Check every datum invariant; raises ``DescentError`` naming the first failure."""
        cov = self.cover
        if cov.group is None:
            raise DescentError("cover carries no group action")
        if not isinstance(self.beta.group, AbelianGroup):
            raise DescentError("coefficients must be an AbelianGroup")
        if self.pic.group != cov.group:
            raise DescentError("pic is a module over a different group")
        chk = verify_cocycle(self.beta)
        if not chk:
            raise DescentError(f"beta is not a cocycle at {self.beta.labels(chk.first)}", chk.first)
        for g in cov.group.elements:
            if g not in self.deltas:
                raise DescentError(f"missing delta for group element {g}", g)
            bad = b1_failure(self, g)
            if bad is not None:
                raise DescentError(
                    f"d(delta[{g}]) differs from beta / {g}.beta at {self.beta.labels(bad)}", (g, bad)
                )
        check_divisor_class_map(self)


def b1_failure(datum: DescentDatum, g: int) -> Optional[tuple[int, ...]]:
    beta = datum.beta
    lhs = coboundary(datum.deltas[g])
    rhs = beta / twist(beta, g)
    for t, v in lhs.values.items():
        if v != rhs.values[t]:
            return t
    return None


def check_divisor_class_map(datum: DescentDatum) -> None:
    D = datum.divisor_class_map
    cov = datum.cover
    A = datum.coefficients
    if D.rank != datum.pic.rank:
        raise DescentError("divisor_class_map rank differs from pic rank")
    # kills coboundaries: D(d e_{v,k}) = 0 for every unit 0-cochain
    for v in range(cov.size):
        for k in range(A.rank):
            e = Cochain.from_function(cov, 0, A, lambda t, v=v, k=k: tuple(int(t[0] == v and j == k) for j in range(A.rank)))
            img = datum.pic.reduce(D(coboundary(e)))
            if any(img):
                raise DescentError(f"divisor_class_map does not kill the coboundary of sheet {cov.total[v]!r}")
    for z in D.spanning:
        if z.cover != cov:
            raise DescentError("spanning cocycle on a different cover")
        if not verify_cocycle(z):
            raise DescentError("spanning element is not a cocycle")
        base = D(z)
        for g in cov.group.elements:
            lhs = datum.pic.reduce(D(twist(z, g)))
            rhs = datum.pic.act(g, base)
            if lhs != rhs:
                raise DescentError(f"divisor_class_map is not equivariant for element {g}")


def lift_class(datum: DescentDatum, target: Sequence[int]) -> Cochain:
    """A 1-cocycle z with D(z) = target, as a combination of the spanning cocycles."""
    D = datum.divisor_class_map
    A = datum.coefficients
    cov = datum.cover
    if not any(datum.pic.reduce(target)):
        return Cochain.trivial(cov, 1, A)
    imgs = [D(z) for z in D.spanning]
    rows = [{j: imgs[j][i] for j in range(len(imgs)) if imgs[j][i]} for i in range(D.rank)]
    coeffs = solve_integer(rows, list(target), len(imgs), list(datum.pic.moduli))
    if coeffs is None:
        raise DescentError(f"class {tuple(target)} is not in the span of the spanning cocycles")
    out = Cochain.trivial(cov, 1, A)
    for a, z in zip(coeffs, D.spanning):
        if a:
            out = out * (z**a)
    return out
