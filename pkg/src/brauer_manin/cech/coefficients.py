"""Coefficient groups for cochains.

Every group is abelian and written multiplicatively in the docs (as for units
of a ring); ``AbelianGroup`` stores elements additively as integer vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from ..cohomology.groups import FiniteGroupTable
from ..cohomology.lattice import GLattice
from ..exact.poly import RationalFunction


class CoefficientError(ValueError):
    pass


class CoefficientGroup:
    """Interface: ``identity``, ``op``, ``inv``, ``power``, ``normalize``, ``act``."""

    def identity(self):
        raise NotImplementedError

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def normalize(self, a):
        return a

    def act(self, g: int, a):
        return a

    def power(self, a, k: int):
        out = self.identity()
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            out = self.op(out, base)
        return out

    def div(self, a, b):
        return self.op(a, self.inv(b))

    def eq(self, a, b) -> bool:
        return self.normalize(a) == self.normalize(b)

    def is_identity(self, a) -> bool:
        return self.eq(a, self.identity())


@dataclass(frozen=True)
class AbelianGroup(CoefficientGroup):
    """``Z^r / diag(moduli)``; ``action[g]`` (optional) are integer matrices for a group action."""

    moduli: tuple[int, ...]
    action: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if any(m < 0 for m in self.moduli):
            raise CoefficientError("moduli must be nonnegative")
        if self.action is not None:
            act = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in self.action)
            r = self.rank
            if any(len(m) != r or any(len(row) != r for row in m) for m in act):
                raise CoefficientError(f"action matrices must be {r}x{r}")
            object.__setattr__(self, "action", act)

    @classmethod
    def cyclic(cls, m: int) -> "AbelianGroup":
        """``Z/m`` (``m = 0`` gives ``Z``), trivial action."""
        return cls((m,))

    @classmethod
    def from_glattice(cls, M: GLattice) -> "AbelianGroup":
        return cls(M.moduli, M.action)

    def to_glattice(self, group: FiniteGroupTable) -> GLattice:
        if self.action is None:
            return GLattice.trivial(group, self.rank, self.moduli)
        return GLattice(group, self.action, self.moduli)

    def with_action(self, action) -> "AbelianGroup":
        return AbelianGroup(self.moduli, action)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def is_finite(self) -> bool:
        return all(m > 0 for m in self.moduli)

    @property
    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def elements(self):
        """All elements (finite groups only), in lexicographic order."""
        import itertools

        if not self.is_finite:
            raise CoefficientError("cannot enumerate an infinite group")
        return [tuple(v) for v in itertools.product(*(range(m) for m in self.moduli))]

    def normalize(self, a) -> tuple[int, ...]:
        if isinstance(a, int):
            a = (a,)
        if len(a) != self.rank:
            raise CoefficientError(f"element {a!r} does not have {self.rank} coordinates")
        return tuple(x % m if m else x for x, m in zip(a, self.moduli))

    def identity(self):
        return (0,) * self.rank

    def op(self, a, b):
        return self.normalize(tuple(x + y for x, y in zip(a, b)))

    def inv(self, a):
        return self.normalize(tuple(-x for x in a))

    def power(self, a, k: int):
        return self.normalize(tuple(k * x for x in a))

    def act(self, g: int, a):
        if self.action is None:
            return self.normalize(a)
        m = self.action[g]
        return self.normalize(tuple(sum(c * x for c, x in zip(row, a)) for row in m))


class RationalFunctionGroup(CoefficientGroup):
    """Nonzero rational functions in t under multiplication.

    ``action(g, r)`` may supply a semilinear action; by default the group acts trivially.
    """

    def __init__(self, action: Optional[Callable[[int, RationalFunction], RationalFunction]] = None):
        self._action = action

    def __eq__(self, other):
        return isinstance(other, RationalFunctionGroup) and other._action is self._action

    def __hash__(self):
        return hash(("RationalFunctionGroup", id(self._action)))

    def identity(self):
        return RationalFunction(1)

    def normalize(self, a):
        if not isinstance(a, RationalFunction):
            a = RationalFunction.coerce(a)
        if a.is_zero():
            raise CoefficientError("zero is not a unit")
        return a

    def op(self, a, b):
        return a * b

    def inv(self, a):
        return RationalFunction(1) / a

    def power(self, a, k: int):
        return a**k

    def act(self, g: int, a):
        return self._action(g, a) if self._action else a


def integer_matrix_of(group: AbelianGroup, g: int) -> Sequence[Sequence[int]]:
    if group.action is None:
        return [[int(i == j) for j in range(group.rank)] for i in range(group.rank)]
    return group.action[g]
