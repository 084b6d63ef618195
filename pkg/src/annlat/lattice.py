"""Order, join, meet and orthocomplement on the annihilator lattice of an algebra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import StarAlgebra, maximal_commutative_subalgebra
from .annihilators import (
    Annihilator,
    annihilator_of_projections,
    d_meet,
    double_annihilator,
    ideal_closure,
    require_same,
    whole,
    zero,
)
from .matrix import FloatMatrix
from .policy import EXACT, NumericPolicy
from .reports import Report
from .sampling import random_annihilator, random_low_rank


def leq(V: Annihilator, W: Annihilator) -> bool:
    require_same(V, W)
    return V.p @ W.p == V.p


def join(*Vs: Annihilator) -> Annihilator:
    """Ann(Ann(union of generators)), with the unit projections as generators."""
    A = require_same(*Vs)
    return annihilator_of_projections(A, [annihilator_of_projections(A, [V.p for V in Vs]).p])


def orthocomplement(V: Annihilator) -> Annihilator:
    return annihilator_of_projections(V.algebra, [V.p])


def meet(*Vs: Annihilator) -> Annihilator:
    """Ann(Ann(V_1)_+ u ... u Ann(V_k)_+)."""
    A = require_same(*Vs)
    return annihilator_of_projections(A, [orthocomplement(V).p for V in Vs])


def is_central(V: Annihilator) -> bool:
    """The d-operators of V and its orthocomplement meet only in {0}."""
    return not d_meet(V, orthocomplement(V))


def central_support(V: Annihilator) -> Annihilator:
    """Double annihilator of the ideal generated by V, checked to be central."""
    A = V.algebra
    ideal = ideal_closure(A, [V.p])
    if not ideal:
        return zero(A)
    total = ideal[0] @ ideal[0].H
    for x in ideal[1:]:
        total = total + x @ x.H
    c = double_annihilator(A, [total])
    if not is_central(c):
        raise ArithmeticError("ideal closure produced a non-central annihilator")
    return c


def commutes(X: Annihilator, Y: Annihilator) -> bool:
    """X = (X and Y) or (X and Y-perp)."""
    require_same(X, Y)
    return join(meet(X, Y), meet(X, orthocomplement(Y))) == X


def orthogonal(V: Annihilator, W: Annihilator) -> bool:
    """V <= W-perp in the lattice order."""
    return leq(V, orthocomplement(W))


def check_condition_A(V: Annihilator) -> bool:
    """A maximal commutative *-subalgebra of V has the same unit as V."""
    if V.is_zero():
        return True
    C = maximal_commutative_subalgebra(V.as_algebra)
    return C.unit == V.p


FLOAT_SLACK = 1e-9


@dataclass(frozen=True)
class DimensionValue:
    value: Fraction | float

    def __post_init__(self):
        if isinstance(self.value, float) and -FLOAT_SLACK <= self.value <= 1 + FLOAT_SLACK:
            # rounding may push a float value just outside [0, 1]
            object.__setattr__(self, "value", min(1.0, max(0.0, self.value)))
        if not 0 <= self.value <= 1:
            raise ValueError(f"dimension {self.value} outside [0, 1]")

    def __add__(self, other):
        return DimensionValue(self.value + other.value)

    def __str__(self):
        return str(self.value)


def dimension_function(V: Annihilator) -> DimensionValue:
    """Normalized trace of the unit projection, trace(p_V) / trace(1)."""
    A = V.algebra
    if isinstance(V.p, FloatMatrix):
        return DimensionValue(V.p.trace().real / A.unit.trace().real)
    return DimensionValue(V.p.trace().re / A.unit.trace().re)


class AnnLattice:
    """The annihilator lattice of one algebra, with a seeded sampler."""

    def __init__(self, algebra: StarAlgebra, policy: NumericPolicy = EXACT):
        self.algebra = algebra
        self.policy = policy
        self.zero = zero(algebra)
        self.one = whole(algebra)

    def rng(self, *stream):
        return self.policy.rng(*stream)

    def sample(self, rng) -> Annihilator:
        return random_annihilator(self.algebra, rng)

    def comparable_pair(self, rng, k: int):
        """A pair X <= Y; even draws meet two samples, odd draws compress inside a sample."""
        V = self.sample(rng)
        if k % 2 == 0:
            W = self.sample(rng)
            return meet(V, W), V, "meet"
        x = V.p @ random_low_rank(self.algebra, rng) @ V.p
        return double_annihilator(self.algebra, [x @ x.H]), V, "compress"


def verify_orthomodular_sampled(L: AnnLattice, samples: int = 200, stream: int = 12) -> Report:
    """Y = X or (Y and X-perp) on ``samples`` seeded comparable pairs X <= Y."""
    rng = L.rng(stream)
    rep = Report("orthomodular-sampled", True, details={"meet": 0, "compress": 0, "nontrivial": 0})
    for k in range(samples):
        X, Y, how = L.comparable_pair(rng, k)
        rep.checked += 1
        rep.details[how] += 1
        if not leq(X, Y):
            rep.fail(reason="sampled pair not comparable", X=X, Y=Y)
            continue
        if X != Y and not X.is_zero():
            rep.details["nontrivial"] += 1
        rhs = join(X, meet(Y, orthocomplement(X)))
        if rhs != Y:
            rep.fail(X=X, Y=Y, rhs=rhs)
    return rep


def verify_modular_sampled(V: Annihilator, samples: int = 30, rng=None) -> Report:
    """x <= z implies x or (y and z) = (x or y) and z, on sampled triples of P_V.

    Triples are drawn from the annihilator lattice of the corner algebra V;
    x is replaced by x and z so that x <= z always holds.
    """
    rep = Report("modular-sampled", True)
    if V.is_zero():
        return rep
    B = V.as_algebra
    rng = rng if rng is not None else V.algebra.policy.rng(13)
    for _ in range(samples):
        x, y, z = (random_annihilator(B, rng) for _ in range(3))
        x = meet(x, z)
        rep.checked += 1
        lhs = join(x, meet(y, z))
        rhs = meet(join(x, y), z)
        if lhs != rhs:
            rep.fail(x=x, y=y, z=z, lhs=lhs, rhs=rhs)
    return rep
