"""Finite-dimensional C*-algebras presented as *-closed matrix spans."""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, NoUnit, NotAProjection, NotInAlgebra, NotPositive, SeedNotCommuting
from .linalg import column_basis, inverse, kernel, new_subspace, solve
from .matrix import FloatMatrix, Matrix, stack_rows
from .policy import EXACT, NumericPolicy
from .scalar import ExactScalar

HALF = ExactScalar(1, 0) / 2
MINUS_HALF_I = ExactScalar(0, -1) / 2


def flatcat(mats, like=None):
    """Concatenate the flattened matrices into one 1-D vector."""
    mats = list(mats)
    if not mats:
        if isinstance(like, FloatMatrix):
            return FloatMatrix(np.zeros(0, dtype=complex), like.tol)
        return Matrix(np.zeros(0, dtype=object), None, 1, _normalized=True)
    if isinstance(mats[0], FloatMatrix):
        return FloatMatrix(np.concatenate([m.a.reshape(-1) for m in mats]), mats[0].tol)
    l = math.lcm(*(m.den for m in mats))
    re = np.concatenate([(m.re * (l // m.den)).reshape(-1) for m in mats])
    im = np.concatenate([(m.im * (l // m.den)).reshape(-1) for m in mats])
    return Matrix(re, im, l)


def independent_subset(mats, n: int, like=None) -> list:
    """The greedy linearly independent subsequence of ``mats`` (same span)."""
    sp = new_subspace(n * n, like if like is not None else (mats[0] if mats else None))
    return [m for m in mats if sp.add(m.flat())]


def canonical_basis(mats, n: int, like=None) -> list:
    """The reduced row echelon basis of span(mats): unique for the span (exact)."""
    sp = new_subspace(n * n, like if like is not None else (mats[0] if mats else None))
    for m in mats:
        sp.add(m.flat())
    return ordered_basis([v.reshape((n, n)) for v in sp.basis])


def ordered_basis(mats) -> list:
    """Row-major entry order, used wherever a greedy procedure walks a basis."""
    if mats and isinstance(mats[0], Matrix):
        return sorted(mats, key=Matrix.sort_key)
    return list(mats)


class StarAlgebra:
    """A *-closed, product-closed span of N x N matrices with its unit."""

    def __init__(self, ambient_dim: int, basis, unit, *, generators=None,
                 name: str | None = None, policy: NumericPolicy = EXACT):
        self.ambient_dim = ambient_dim
        self.basis = tuple(basis)
        self.unit = unit
        self.generators = tuple(self.basis if generators is None else generators)
        self.name = name
        self.policy = policy
        self._space = new_subspace(ambient_dim * ambient_dim, unit, None if policy.exact else policy.tol)
        for b in self.basis:
            self._space.add(b.flat())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def exact(self) -> bool:
        return self.policy.exact

    @property
    def zero(self):
        n = self.ambient_dim
        return Matrix.zeros(n) if self.exact else FloatMatrix.zeros(n, self.policy.tol)

    def coerce(self, x):
        return self.policy.convert(x)

    def contains(self, x) -> bool:
        x = self.coerce(x)
        return x.shape == (self.ambient_dim, self.ambient_dim) and self._space.contains(x.flat())

    def residual(self, x):
        """x minus its component in span(basis) (orthogonal projection for floats)."""
        return self._space.residual(self.coerce(x).flat()).reshape((self.ambient_dim, self.ambient_dim))

    def require(self, x, error=NotInAlgebra):
        x = self.coerce(x)
        if not self.contains(x):
            raise error(f"element is not in {self.name or 'the algebra'}")
        return x

    @cached_property
    def _flat_basis(self):
        return stack_rows([b.flat() for b in self.basis], self.ambient_dim ** 2, like=self.unit)

    def combine(self, coeffs):
        """The element sum_i coeffs[i] * basis[i] (coeffs a 1-D vector)."""
        if self.dim == 0:
            return self.zero
        return (coeffs @ self._flat_basis).reshape((self.ambient_dim, self.ambient_dim))

    def kernel_of(self, images) -> list:
        """Basis of {sum c_i b_i : sum c_i L(b_i) = 0} given images[i] = L(b_i).

        Each L(b_i) is a list of matrices; their entries are the constraints.
        """
        if self.dim == 0:
            return []
        cols = [flatcat(img, like=self.unit) for img in images]
        M = stack_rows(cols, like=self.unit).T
        return independent_subset([self.combine(x) for x in kernel(M)], self.ambient_dim, self.unit)

    def commutant(self, elems) -> list:
        """Basis of {a in A : a x = x a for x in elems}."""
        elems = list(elems)
        return self.kernel_of([[b @ x - x @ b for x in elems] for b in self.basis])

    @cached_property
    def center(self) -> list:
        """Canonical (echelon, row-major ordered) basis of the center."""
        return canonical_basis(self.commutant(self.generators), self.ambient_dim, self.unit)

    def to_float(self, tol: float | None = None) -> "StarAlgebra":
        """The same algebra on the float backend."""
        if not self.exact:
            return self
        tol = self.policy.tol if tol is None else tol
        pol = NumericPolicy("float", tol, self.policy.seed)
        return StarAlgebra(self.ambient_dim, [b.to_float(tol) for b in self.basis],
                           self.unit.to_float(tol), generators=[g.to_float(tol) for g in self.generators],
                           name=self.name, policy=pol)

    def is_commutative(self) -> bool:
        gens = self.generators
        return all((x @ y - y @ x).is_zero() for i, x in enumerate(gens) for y in gens[i + 1:])

    def __eq__(self, other):
        if not isinstance(other, StarAlgebra):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and all(self.contains(b) for b in other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.dim))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<StarAlgebra{label} N={self.ambient_dim} dim={self.dim} mode={self.policy.mode}>"


def generate_star_algebra(ambient_dim: int, generators, policy: NumericPolicy = EXACT,
                          name: str | None = None) -> StarAlgebra:
    """Smallest unital *-algebra (span closed under products and adjoints) of the generators."""
    n = ambient_dim
    gens = []
    for g in generators:
        if g.shape != (n, n):
            raise DimensionMismatch(f"generator of shape {g.shape} in ambient dimension {n}")
        gens.append(policy.convert(g))
    star = []
    for g in gens:
        if g.is_zero():
            continue
        g = _normalized(g)
        star.append(g)
        if not g.is_selfadjoint():
            star.append(g.H)
    if not star:
        raise NoUnit("the generated span is {0}, which has no unit projection")
    space = new_subspace(n * n, star[0])
    queue = [g for g in star if space.add(g.flat())]
    # Left multiplication by a *-closed generating set reaches every word.
    while queue:
        x = queue.pop(0)
        for g in star:
            y = _normalized(g @ x)
            if space.add(y.flat()):
                queue.append(y)
    basis = ordered_basis([v.reshape((n, n)) for v in space.independent])
    unit = _solve_unit(basis, star, n)
    return StarAlgebra(n, basis, unit, generators=star, name=name, policy=policy)


def _normalized(x):
    """Float words are rescaled to unit norm to keep the unit solve well conditioned."""
    if isinstance(x, FloatMatrix):
        norm = float(np.linalg.norm(x.a))
        return x.scale(1 / norm) if norm > x.tol else x
    return x


def _solve_unit(basis, star, n):
    cols = [flatcat([b @ g for g in star] + [g @ b for g in star]) for b in basis]
    M = stack_rows(cols, like=basis[0]).T
    rhs = flatcat(list(star) + list(star))
    c = solve(M, rhs)
    if c is None:
        raise NoUnit("the generated span has no two-sided unit")
    u = (c @ stack_rows([b.flat() for b in basis], n * n)).reshape((n, n))
    if not u.is_projection() or not all(u @ b == b and b @ u == b for b in basis):
        raise NoUnit("the two-sided identity of the span is not a projection")
    return u


def full_matrix_algebra(n: int, policy: NumericPolicy = EXACT, name: str | None = None) -> StarAlgebra:
    gens = [Matrix.unit(n, i, i + 1) for i in range(n - 1)] + [Matrix.identity(n)]
    return generate_star_algebra(n, gens, policy, name)


def corner(A: StarAlgebra, p, name: str | None = None) -> StarAlgebra:
    """The hereditary subalgebra pAp with unit p."""
    p = A.coerce(p)
    if not A.contains(p) or not p.is_projection():
        raise NotAProjection("corner requires a projection of the algebra")
    basis = independent_subset([p @ b @ p for b in A.basis], A.ambient_dim, A.unit)
    return StarAlgebra(A.ambient_dim, basis, p, name=name, policy=A.policy)


def characteristic_polynomial(s: Matrix) -> list[ExactScalar]:
    """Coefficients [1, c1, ..., cn] of det(x I - s), by Faddeev-LeVerrier."""
    n = s.shape[0]
    eye = Matrix.identity(n)
    coeffs = [ExactScalar(1)]
    M = eye
    for k in range(1, n + 1):
        AM = s @ M
        t = AM.trace()
        c = ExactScalar(-t.re / k, -t.im / k)
        coeffs.append(c)
        M = AM + eye.scale(c)
    return coeffs


def is_psd(s) -> bool:
    """Self-adjoint and positive semidefinite, without algebra membership checks."""
    if not s.is_selfadjoint():
        return False
    if s @ s == s:
        return True
    if isinstance(s, FloatMatrix):
        h = (s.a + s.a.conj().T) / 2
        return bool(np.linalg.eigvalsh(h).min(initial=0.0) >= -s.tol)
    coeffs = characteristic_polynomial(s)
    return all((c.re if k % 2 == 0 else -c.re) >= 0 for k, c in enumerate(coeffs))


def is_positive(A: StarAlgebra, s) -> bool:
    s = A.require(s)
    return is_psd(s)


def projection_onto_range(s):
    """Orthogonal projection onto the column space of s (no positivity check)."""
    if s.is_projection():
        return s
    V = column_basis(s)
    n = s.shape[0]
    if V.shape[1] == 0:
        return Matrix.zeros(n) if isinstance(s, Matrix) else FloatMatrix.zeros(n, s.tol)
    if isinstance(V, FloatMatrix):
        return V @ V.H
    return V @ inverse(V.H @ V) @ V.H


def range_projection(A: StarAlgebra, s):
    if not is_positive(A, s):
        raise NotPositive("range projection needs a positive element")
    p = projection_onto_range(A.coerce(s))
    if not (p.is_projection() and A.contains(p)):
        raise ArithmeticError("range projection fell outside the algebra")
    return p


def decompose_selfadjoint(A: StarAlgebra, a):
    """Split a = x + i y with x, y self-adjoint elements of A."""
    a = A.require(a)
    adj = a.H
    return (a + adj) * HALF, (a - adj) * MINUS_HALF_I


def _commute(x, y) -> bool:
    return (x @ y - y @ x).is_zero()


def maximal_commutative_subalgebra(A: StarAlgebra, seed=()) -> StarAlgebra:
    """Greedily extend the *-algebra of ``seed`` to a maximal commutative one.

    Termination certifies maximality: the result equals its own relative
    commutant in A.
    """
    elems = [A.require(x) for x in seed]
    for i, x in enumerate(elems):
        for y in elems[i:]:
            if not (_commute(x, y) and _commute(x, y.H)):
                raise SeedNotCommuting("seed elements must commute with each other and their adjoints")
    elems = [x for x in elems if not x.is_zero()]
    if A.dim == 0:
        return A
    while True:
        C = generate_star_algebra(A.ambient_dim, elems, A.policy) if elems else None
        comm = A.commutant(C.generators if C else [])
        dim_c = C.dim if C else 0
        if len(comm) == dim_c:
            return C
        fresh = [h for b in comm for h in decompose_selfadjoint(A, b)
                 if not h.is_zero() and (C is None or not C.contains(h))]
        if not fresh:
            raise ArithmeticError("commutant grew but no new self-adjoint direction found")
        if A.exact:
            elems.append(fresh[0])
        else:
            # keep only the part orthogonal to C, and the largest such part, so
            # that products of new elements do not sink below the tolerance
            if C is not None:
                fresh = [C.residual(h) for h in fresh]
            elems.append(_normalized(max(fresh, key=lambda h: float(np.linalg.norm(h.a)))))
