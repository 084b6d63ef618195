"""Exact Q(i) matrices and their floating-point shadow.

An exact :class:`Matrix` stores ``(re + i*im) / den`` where ``re`` and ``im``
are numpy object arrays of Python ints and ``den`` is a positive int.  The
triple is kept in lowest terms, so equal matrices have identical storage and
equality/hashing are structural.

:class:`FloatMatrix` wraps a complex128 array together with the tolerance
below which magnitudes count as zero.  Mixing the two promotes to float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Complex, Rational

import numpy as np

from .scalar import ExactScalar


def _objarray(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.dtype != object:
        arr = np.array(arr.tolist(), dtype=object)
        if arr.shape == ():
            arr = np.array(values, dtype=object)
    return arr


def _zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=object)


def _gauss_int(z: ExactScalar) -> tuple[int, int, int]:
    """Write z as (a + b i) / q with integers a, b and q > 0."""
    q = math.lcm(z.re.denominator, z.im.denominator)
    return int(z.re * q), int(z.im * q), q


class Matrix:
    """Exact matrix (or vector) with entries in Q(i)."""

    __slots__ = ("re", "im", "den", "real", "_hash")

    def __init__(self, re, im=None, den: int = 1, *, _normalized: bool = False):
        re = _objarray(re)
        im = _zeros(re.shape) if im is None else _objarray(im)
        if re.shape != im.shape:
            raise ValueError("real and imaginary parts differ in shape")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            if den < 0:
                re, im, den = -re, -im, -den
            flat = re.ravel().tolist() + im.ravel().tolist()
            g = math.gcd(den, *flat) if flat else den
            if g > 1:
                re = re // g
                im = im // g
                den //= g
            if not any(flat):
                den = 1
        self.re = re
        self.im = im
        self.den = den
        self.real = not any(im.ravel().tolist())
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        """Build from nested sequences of anything ExactScalar accepts."""
        scal = [[ExactScalar.coerce(x) for x in row] for row in rows]
        return cls._from_scalars(scal)

    @classmethod
    def from_vector(cls, values) -> "Matrix":
        scal = [ExactScalar.coerce(x) for x in values]
        m = cls._from_scalars([scal])
        return m.reshape((len(scal),))

    @classmethod
    def _from_scalars(cls, scal) -> "Matrix":
        dens = [x.re.denominator for row in scal for x in row]
        dens += [x.im.denominator for row in scal for x in row]
        q = math.lcm(*dens) if dens else 1
        re = [[int(x.re * q) for x in row] for row in scal]
        im = [[int(x.im * q) for x in row] for row in scal]
        if not scal:
            return cls(np.zeros((0, 0), dtype=object))
        return cls(re, im, q)

    @classmethod
    def zeros(cls, shape) -> "Matrix":
        if isinstance(shape, int):
            shape = (shape, shape)
        return cls(_zeros(shape), _zeros(shape), 1, _normalized=True)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        re = _zeros((n, n))
        for i in range(n):
            re[i, i] = 1
        return cls(re, _zeros((n, n)), 1, _normalized=True)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """The matrix unit E_ij (zero-based indices)."""
        re = _zeros((n, n))
        re[i, j] = 1
        return cls(re, _zeros((n, n)), 1, _normalized=True)

    @classmethod
    def diag(cls, values) -> "Matrix":
        vals = [ExactScalar.coerce(v) for v in values]
        n = len(vals)
        rows = [[vals[i] if i == j else ExactScalar(0) for j in range(n)] for i in range(n)]
        return cls.from_rows(rows)

    # -- shape --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, ...]:
        return self.re.shape

    @property
    def n(self) -> int:
        return self.re.shape[0]

    def flat(self) -> "Matrix":
        return Matrix(self.re.reshape(-1), self.im.reshape(-1), self.den, _normalized=True)

    def reshape(self, shape) -> "Matrix":
        return Matrix(self.re.reshape(shape), self.im.reshape(shape), self.den, _normalized=True)

    # -- element access -----------------------------------------------
    def __getitem__(self, key):
        re = self.re[key]
        im = self.im[key]
        if isinstance(re, np.ndarray):
            return Matrix(re, im, self.den)
        return ExactScalar(Fraction(int(re), self.den), Fraction(int(im), self.den))

    def entries(self) -> list[list[ExactScalar]]:
        return [[self[i, j] for j in range(self.shape[1])] for i in range(self.shape[0])]

    # -- arithmetic ---------------------------------------------------
    def _align(self, other: "Matrix"):
        l = math.lcm(self.den, other.den)
        a, b = l // self.den, l // other.den
        return a, b, l

    def __add__(self, other):
        if isinstance(other, FloatMatrix):
            return self.to_float(other.tol) + other
        if not isinstance(other, Matrix):
            return NotImplemented
        a, b, l = self._align(other)
        return Matrix(self.re * a + other.re * b, self.im * a + other.im * b, l)

    def __sub__(self, other):
        if isinstance(other, FloatMatrix):
            return self.to_float(other.tol) - other
        if not isinstance(other, Matrix):
            return NotImplemented
        a, b, l = self._align(other)
        return Matrix(self.re * a - other.re * b, self.im * a - other.im * b, l)

    def __neg__(self):
        return Matrix(-self.re, -self.im, self.den, _normalized=True)

    def scale(self, z) -> "Matrix":
        z = ExactScalar.coerce(z)
        a, b, q = _gauss_int(z)
        if b == 0:
            return Matrix(self.re * a, self.im * a, self.den * q)
        return Matrix(self.re * a - self.im * b, self.im * a + self.re * b, self.den * q)

    def __mul__(self, other):
        if isinstance(other, (Matrix, FloatMatrix)):
            raise TypeError("use @ for matrix products")
        if isinstance(other, (int, Rational, ExactScalar, tuple)):
            return self.scale(other)
        if isinstance(other, Complex):
            return self.to_float() * other
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, FloatMatrix):
            return self.to_float(other.tol) @ other
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.real and other.real:
            re = self.re @ other.re
            im = _zeros(re.shape)
        elif self.real:
            re = self.re @ other.re
            im = self.re @ other.im
        elif other.real:
            re = self.re @ other.re
            im = self.im @ other.re
        else:
            re = self.re @ other.re - self.im @ other.im
            im = self.re @ other.im + self.im @ other.re
        return Matrix(re, im, self.den * other.den)

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose (the adjoint)."""
        return Matrix(self.re.T, -self.im.T, self.den, _normalized=True)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.re.T, self.im.T, self.den, _normalized=True)

    def conj(self) -> "Matrix":
        return Matrix(self.re, -self.im, self.den, _normalized=True)

    def trace(self) -> ExactScalar:
        re = sum(self.re.diagonal().tolist())
        im = sum(self.im.diagonal().tolist())
        return ExactScalar(Fraction(re, self.den), Fraction(im, self.den))

    def commutator(self, other) -> "Matrix":
        return self @ other - other @ self

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.re.ravel().tolist()) and self.real

    def is_selfadjoint(self) -> bool:
        return self == self.H

    def is_projection(self) -> bool:
        return self.is_selfadjoint() and self @ self == self

    def __eq__(self, other):
        if isinstance(other, FloatMatrix):
            return other == self
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.den == other.den
            and self.re.ravel().tolist() == other.re.ravel().tolist()
            and self.im.ravel().tolist() == other.im.ravel().tolist()
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.shape, self.den, tuple(self.re.ravel().tolist()), tuple(self.im.ravel().tolist()))
            )
        return self._hash

    def sort_key(self) -> tuple:
        """Row-major comparison key used for deterministic ordering."""
        return tuple(
            (Fraction(int(r), self.den), Fraction(int(i), self.den))
            for r, i in zip(self.re.ravel().tolist(), self.im.ravel().tolist())
        )

    # -- conversion ---------------------------------------------------
    def to_complex(self) -> np.ndarray:
        re = np.array([float(Fraction(int(x), self.den)) for x in self.re.ravel().tolist()])
        im = np.array([float(Fraction(int(x), self.den)) for x in self.im.ravel().tolist()])
        return (re + 1j * im).reshape(self.shape)

    def to_float(self, tol: float = 1e-9) -> "FloatMatrix":
        return FloatMatrix(self.to_complex(), tol)

    def __repr__(self):
        if self.re.ndim == 2:
            rows = "; ".join(" ".join(str(x) for x in row) for row in self.entries())
            return f"Matrix[{rows}]"
        return "Matrix(" + " ".join(str(self[i]) for i in range(self.shape[0])) + ")"


class FloatMatrix:
    """Complex128 matrix compared up to an absolute tolerance."""

    __slots__ = ("a", "tol")

    def __init__(self, a, tol: float = 1e-9):
        self.a = np.asarray(a, dtype=complex)
        self.tol = float(tol)

    @classmethod
    def identity(cls, n: int, tol: float = 1e-9) -> "FloatMatrix":
        return cls(np.eye(n, dtype=complex), tol)

    @classmethod
    def zeros(cls, shape, tol: float = 1e-9) -> "FloatMatrix":
        if isinstance(shape, int):
            shape = (shape, shape)
        return cls(np.zeros(shape, dtype=complex), tol)

    @property
    def shape(self):
        return self.a.shape

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def real(self) -> bool:
        return bool(np.all(np.abs(self.a.imag) <= self.tol))

    def flat(self) -> "FloatMatrix":
        return FloatMatrix(self.a.reshape(-1), self.tol)

    def reshape(self, shape) -> "FloatMatrix":
        return FloatMatrix(self.a.reshape(shape), self.tol)

    def __getitem__(self, key):
        v = self.a[key]
        if isinstance(v, np.ndarray):
            return FloatMatrix(v, self.tol)
        return complex(v)

    def _other(self, other):
        if isinstance(other, Matrix):
            return other.to_complex(), self.tol
        if isinstance(other, FloatMatrix):
            return other.a, max(self.tol, other.tol)
        return None, None

    def __add__(self, other):
        o, tol = self._other(other)
        if o is None:
            return NotImplemented
        return FloatMatrix(self.a + o, tol)

    __radd__ = __add__

    def __sub__(self, other):
        o, tol = self._other(other)
        if o is None:
            return NotImplemented
        return FloatMatrix(self.a - o, tol)

    def __rsub__(self, other):
        o, tol = self._other(other)
        if o is None:
            return NotImplemented
        return FloatMatrix(o - self.a, tol)

    def __neg__(self):
        return FloatMatrix(-self.a, self.tol)

    def scale(self, z) -> "FloatMatrix":
        return FloatMatrix(self.a * complex(z), self.tol)

    def __mul__(self, other):
        if isinstance(other, (Matrix, FloatMatrix)):
            raise TypeError("use @ for matrix products")
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        o, tol = self._other(other)
        if o is None:
            return NotImplemented
        return FloatMatrix(self.a @ o, tol)

    def __rmatmul__(self, other):
        o, tol = self._other(other)
        if o is None:
            return NotImplemented
        return FloatMatrix(o @ self.a, tol)

    @property
    def H(self) -> "FloatMatrix":
        return FloatMatrix(self.a.conj().T, self.tol)

    @property
    def T(self) -> "FloatMatrix":
        return FloatMatrix(self.a.T, self.tol)

    def conj(self) -> "FloatMatrix":
        return FloatMatrix(self.a.conj(), self.tol)

    def trace(self) -> complex:
        return complex(np.trace(self.a))

    def commutator(self, other) -> "FloatMatrix":
        return self @ other - other @ self

    def is_zero(self) -> bool:
        return self.a.size == 0 or float(np.max(np.abs(self.a))) <= self.tol

    def is_selfadjoint(self) -> bool:
        return self == self.H

    def is_projection(self) -> bool:
        return self.is_selfadjoint() and self @ self == self

    def __eq__(self, other):
        o, tol = self._other(other)
        if o is None:
            return NotImplemented
        if o.shape != self.a.shape:
            return False
        if o.size == 0:
            return True
        return float(np.max(np.abs(self.a - o))) <= tol

    __hash__ = None

    def to_complex(self) -> np.ndarray:
        return self.a

    def to_float(self, tol: float | None = None) -> "FloatMatrix":
        return self if tol is None else FloatMatrix(self.a, tol)

    def __repr__(self):
        return f"FloatMatrix({np.array2string(self.a, precision=4)}, tol={self.tol:g})"


def is_exact(m) -> bool:
    return isinstance(m, Matrix)


def identity_like(m, n: int | None = None):
    n = m.shape[0] if n is None else n
    if isinstance(m, FloatMatrix):
        return FloatMatrix.identity(n, m.tol)
    return Matrix.identity(n)


def zeros_like(m, shape=None):
    shape = m.shape if shape is None else shape
    if isinstance(m, FloatMatrix):
        return FloatMatrix.zeros(shape, m.tol)
    return Matrix.zeros(shape)


def stack_rows(vectors, ncols: int | None = None, like=None):
    """Stack 1-D vectors into a 2-D matrix (rows), keeping the backend."""
    vectors = list(vectors)
    if not vectors:
        if like is not None and isinstance(like, FloatMatrix):
            return FloatMatrix.zeros((0, ncols or 0), like.tol)
        return Matrix.zeros((0, ncols or 0))
    if any(isinstance(v, FloatMatrix) for v in vectors):
        tol = max(v.tol for v in vectors if isinstance(v, FloatMatrix))
        return FloatMatrix(np.vstack([v.to_complex().reshape(1, -1) for v in vectors]), tol)
    l = math.lcm(*(v.den for v in vectors))
    re = np.vstack([(v.re * (l // v.den)).reshape(1, -1) for v in vectors])
    im = np.vstack([(v.im * (l // v.den)).reshape(1, -1) for v in vectors])
    return Matrix(re, im, l)


def stack_columns(vectors, nrows: int | None = None, like=None):
    return stack_rows(vectors, nrows, like).T


def rows_of(m) -> list:
    return [m[i] for i in range(m.shape[0])]
