"""Annihilators Ann(S) of positive sets and the d-operator.

Every annihilator of a finite-dimensional C*-algebra is a corner pAp, so an
:class:`Annihilator` is carried by its unit projection p.  The subspace itself
is computed lazily as an honest linear kernel and can be compared against the
corner form.
"""

from __future__ import annotations

from functools import cached_property

from .algebra import StarAlgebra, independent_subset, corner, is_psd, projection_onto_range
from .errors import AlgebraMismatch, NotInSubalgebra, NotPositive
from .linalg import new_subspace
from .matrix import FloatMatrix


class Annihilator:
    """An element V = pAp of the annihilator lattice of ``algebra``.

    ``defining`` is a positive set T with V = Ann(T); ``generators`` records
    the set the user asked about (for double annihilators this differs).
    """

    def __init__(self, algebra: StarAlgebra, unit_projection, *, defining=(), generators=()):
        self.algebra = algebra
        self.unit_projection = unit_projection
        self.defining = tuple(defining)
        self.generators = tuple(generators)

    @property
    def p(self):
        return self.unit_projection

    @cached_property
    def space(self) -> list:
        """Basis of {a in A : a t + t a = 0 for t in defining}, by elimination."""
        A = self.algebra
        if not self.defining:
            return list(A.basis)
        return A.kernel_of([[b @ t + t @ b for t in self.defining] for b in A.basis])

    @cached_property
    def hereditary_space(self) -> list:
        """Basis of pAp."""
        p = self.p
        return independent_subset([p @ b @ p for b in self.algebra.basis],
                               self.algebra.ambient_dim, self.algebra.unit)

    @cached_property
    def as_algebra(self) -> StarAlgebra:
        return corner(self.algebra, self.p)

    @property
    def dim(self) -> int:
        return len(self.hereditary_space)

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def contains(self, x) -> bool:
        p = self.p
        return self.algebra.contains(x) and p @ x @ p == x

    def positive_part_generator(self):
        """A positive element whose annihilator equals Ann(V_+)."""
        return self.p

    def __eq__(self, other):
        if not isinstance(other, Annihilator):
            return NotImplemented
        return same_algebra(self.algebra, other.algebra) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"<Annihilator rank={_rank_of(self.p)} in {self.algebra!r}>"


def _rank_of(p):
    return round(complex(p.trace()).real)


def same_algebra(A: StarAlgebra, B: StarAlgebra) -> bool:
    return A is B or A == B


def require_same(*anns: Annihilator) -> StarAlgebra:
    A = anns[0].algebra
    for V in anns[1:]:
        if not same_algebra(A, V.algebra):
            raise AlgebraMismatch("annihilators live in different algebras")
    return A


def _positive_set(A: StarAlgebra, S) -> list:
    out = []
    for s in S:
        s = A.require(s)
        if not is_psd(s):
            raise NotPositive("annihilators are taken of positive elements only")
        out.append(s)
    return out


def _support(A: StarAlgebra, S):
    if not S:
        return A.zero
    total = S[0]
    for s in S[1:]:
        total = total + s
    return projection_onto_range(total)


def annihilator(A: StarAlgebra, S=()) -> Annihilator:
    """Ann(S) = {a : as + sa = 0 for s in S}; the empty set gives A."""
    S = _positive_set(A, S)
    p = A.unit - _support(A, S)
    return Annihilator(A, p, defining=S, generators=S)


def annihilator_of_projections(A: StarAlgebra, ps) -> Annihilator:
    """Ann(ps) for unit projections of annihilators of A.

    The caller vouches that each p is such a projection, so the membership
    and positivity checks of :func:`annihilator` are skipped.
    """
    ps = list(ps)
    support = ps[0] if len(ps) == 1 else _support(A, ps)
    return Annihilator(A, A.unit - support, defining=ps, generators=ps)


def double_annihilator(A: StarAlgebra, S=()) -> Annihilator:
    """Ann(Ann(S)), using the unit of the inner annihilator as its positive generator."""
    inner = annihilator(A, S)
    outer = annihilator_of_projections(A, [inner.p])
    return Annihilator(A, outer.p, defining=outer.defining, generators=inner.generators)


def positive_pair(A: StarAlgebra, s) -> list:
    """{s*s, ss*}: a positive set with the same two-sided annihilator as s."""
    s = A.require(s)
    return [s.H @ s, s @ s.H]


def from_projection(A: StarAlgebra, p) -> Annihilator:
    """The annihilator pAp, as Ann({unit - p})."""
    p = A.coerce(p)
    q = A.unit - p
    return Annihilator(A, p, defining=[q], generators=[q])


def whole(A: StarAlgebra) -> Annihilator:
    return Annihilator(A, A.unit)


def zero(A: StarAlgebra) -> Annihilator:
    return Annihilator(A, A.zero, defining=[A.unit], generators=[A.unit])


def relative_annihilator(B: Annihilator, S=()) -> Annihilator:
    """Ann_B(S) = Ann(S) intersected with B, as an annihilator of the algebra B."""
    for s in S:
        if not B.contains(s):
            raise NotInSubalgebra("relative annihilator needs S inside B")
    return annihilator(B.as_algebra, S)


def lift(V: Annihilator, A: StarAlgebra) -> Annihilator:
    """View an annihilator of a corner algebra as the corresponding pAp inside A."""
    return from_projection(A, V.p)


# -- the d-operator -----------------------------------------------------------

def _pairs(span):
    return [(x, y) for i, x in enumerate(span) for y in span[i:]]


def d_operator(A: StarAlgebra, V) -> list:
    """Basis of {a in A : x a y + y a x = 0 for all x, y in V}.

    V may be an Annihilator or a list of matrices spanning the subspace.
    """
    span = V.hereditary_space if isinstance(V, Annihilator) else [A.require(x) for x in V]
    pairs = _pairs(span)
    return A.kernel_of([[x @ b @ y + y @ b @ x for x, y in pairs] for b in A.basis])


def d_meet(V: Annihilator, W: Annihilator) -> list:
    """Basis of the intersection of the d-operators of V and W.

    The diagonal constraints from the unit projections alone cut out a
    candidate space; if every basis element of the candidate satisfies all
    remaining constraints, the candidate is the exact answer.  Otherwise the
    full constraint system is solved.
    """
    A = require_same(V, W)
    diag = [(V.p, V.p), (W.p, W.p)]
    cand = A.kernel_of([[x @ b @ y + y @ b @ x for x, y in diag] for b in A.basis])
    pairs = _pairs(V.hereditary_space) + _pairs(W.hereditary_space)
    if all((x @ k @ y + y @ k @ x).is_zero() for k in cand for x, y in pairs):
        return cand
    return A.kernel_of([[x @ b @ y + y @ b @ x for x, y in diag + pairs] for b in A.basis])


def ideal_closure(A: StarAlgebra, seeds) -> list:
    """Basis of the two-sided ideal of A generated by ``seeds``."""
    n = A.ambient_dim
    seeds = [A.require(x) for x in seeds]
    space = new_subspace(n * n, A.unit, None if A.exact else A.policy.tol)
    queue = [x for x in seeds if space.add(x.flat())]
    while queue:
        x = queue.pop(0)
        for g in A.generators:
            for y in (g @ x, x @ g):
                if space.add(y.flat()):
                    queue.append(y)
    return [v.reshape((n, n)) for v in space.basis]


def product_is_zero(V: Annihilator, W: Annihilator) -> bool:
    """True when every product v w with v in V, w in W vanishes."""
    require_same(V, W)
    return all((v @ w).is_zero() for v in V.hereditary_space for w in W.hereditary_space)


def is_float(V: Annihilator) -> bool:
    return isinstance(V.p, FloatMatrix)
