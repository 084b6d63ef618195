"""Row reduction, kernels and incremental subspaces for both backends.

Exact elimination is fraction-free over the Gaussian integers: each row is
kept as a pair of integer arrays and divided by its content after every
update, so numbers stay small without ever forming a Fraction.
"""

from __future__ import annotations

import math

import numpy as np

from .matrix import FloatMatrix, Matrix, stack_rows


# -- exact elimination ------------------------------------------------------

def _row_content(re: np.ndarray, im: np.ndarray | None) -> np.ndarray:
    both = re if im is None else np.concatenate([re, im], axis=1)
    g = np.array([math.gcd(*row) if len(row) else 0 for row in both.tolist()], dtype=object)
    g[g == 0] = 1
    return g


def _eliminate(re: np.ndarray, im: np.ndarray | None, ncols: int | None = None):
    """Fraction-free Gauss-Jordan on the first ``ncols`` columns.

    Returns (re, im, pivots) with the pivot rows moved to the top.  Every
    pivot column is zero outside its own row.  ``im`` is None for real input.
    """
    re = re.copy()
    im = None if im is None else im.copy()
    m, n = re.shape
    ncols = n if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        colr = re[r:, c].tolist()
        coli = [0] * (m - r) if im is None else im[r:, c].tolist()
        nz = [k for k in range(m - r) if colr[k] or coli[k]]
        if not nz:
            continue
        k = r + min(nz, key=lambda k: abs(colr[k]) + abs(coli[k]))
        if k != r:
            re[[r, k]] = re[[k, r]]
            if im is not None:
                im[[r, k]] = im[[k, r]]
        pr = re[r, c]
        pi = 0 if im is None else im[r, c]
        others = [i for i in range(m) if i != r and (re[i, c] or (im is not None and im[i, c]))]
        if others:
            idx = np.array(others)
            er = re[idx, c].copy()
            if im is None:
                new_re = re[idx] * pr - np.multiply.outer(er, re[r])
                g = _row_content(new_re, None)
                re[idx] = new_re // g[:, None]
            else:
                ei = im[idx, c].copy()
                rr, ri = re[r], im[r]
                new_re = (re[idx] * pr - im[idx] * pi
                          - np.multiply.outer(er, rr) + np.multiply.outer(ei, ri))
                new_im = (re[idx] * pi + im[idx] * pr
                          - np.multiply.outer(er, ri) - np.multiply.outer(ei, rr))
                g = _row_content(new_re, new_im)
                re[idx] = new_re // g[:, None]
                im[idx] = new_im // g[:, None]
        pivots.append(c)
        r += 1
    return re, im, pivots


def _split(m: Matrix):
    return m.re, (None if m.real else m.im)


def _normalized_rows(re, im, pivots) -> Matrix:
    """Divide each pivot row by its pivot, giving the rational RREF."""
    r = len(pivots)
    n = re.shape[1]
    if r == 0:
        return Matrix(np.zeros((0, n), dtype=object))
    rows = np.arange(r)
    re = re[:r]
    pr = re[rows, pivots]
    if im is None:
        # row / pivot = row * pivot / pivot^2, then bring rows to a common denominator
        norms = (pr * pr).tolist()
        l = math.lcm(*norms)
        f = np.array([l // x for x in norms], dtype=object) * pr
        return Matrix(re * f[:, None], None, l)
    im = im[:r]
    pi = im[rows, pivots]
    # row / pivot = row * conj(pivot) / |pivot|^2
    norms = (pr * pr + pi * pi).tolist()
    l = math.lcm(*norms)
    f = np.array([l // x for x in norms], dtype=object)
    fr, fi = (pr * f)[:, None], (pi * f)[:, None]
    return Matrix(re * fr + im * fi, im * fr - re * fi, l)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    if isinstance(m, FloatMatrix):
        raise TypeError("rref is exact-only; use the float helpers")
    re, im, piv = _eliminate(*_split(m))
    return _normalized_rows(re, im, piv), piv


def rank(m) -> int:
    if isinstance(m, FloatMatrix):
        return _float_rank(m.a, m.tol)
    return len(_eliminate(*_split(m))[2])


def kernel(m) -> list:
    """Basis of {x : m x = 0} as 1-D vectors."""
    n = m.shape[1]
    if isinstance(m, FloatMatrix):
        if m.shape[0] == 0:
            return [FloatMatrix(row, m.tol) for row in np.eye(n, dtype=complex)]
        _, s, vh = np.linalg.svd(m.a)
        r = int(np.sum(s > m.tol * max(1.0, s[0] if len(s) else 0.0)))
        return [FloatMatrix(vh[k].conj(), m.tol) for k in range(r, n)]
    if m.shape[0] == 0:
        return [_e(n, j) for j in range(n)]
    R, piv = rref(m)
    free = [j for j in range(n) if j not in set(piv)]
    out = []
    for f in free:
        # x_f = 1 and x_{pivot_k} = -R[k, f]
        re = np.zeros(n, dtype=object)
        im = np.zeros(n, dtype=object)
        re[f] = R.den
        for k, c in enumerate(piv):
            re[c] = -R.re[k, f]
            im[c] = -R.im[k, f]
        out.append(Matrix(re, im, R.den))
    return out


def _e(n: int, j: int) -> Matrix:
    re = np.zeros(n, dtype=object)
    re[j] = 1
    return Matrix(re, None, 1, _normalized=True)


def solve(m, b):
    """One solution x of m x = b, or None if the system is inconsistent."""
    if isinstance(m, FloatMatrix) or isinstance(b, FloatMatrix):
        tol = m.tol if isinstance(m, FloatMatrix) else b.tol
        a = m.to_complex()
        y = b.to_complex()
        x, *_ = np.linalg.lstsq(a, y, rcond=None)
        if np.max(np.abs(a @ x - y), initial=0.0) > tol * max(1.0, np.max(np.abs(y), initial=0.0)):
            return None
        return FloatMatrix(x, tol)
    n = m.shape[1]
    aug = _hstack(m, b.reshape((b.shape[0], 1)))
    re, im, piv = _eliminate(*_split(aug))
    if n in piv:
        return None
    R = _normalized_rows(re, im, piv)
    re_x = np.zeros(n, dtype=object)
    im_x = np.zeros(n, dtype=object)
    for k, c in enumerate(piv):
        re_x[c] = R.re[k, n]
        im_x[c] = R.im[k, n]
    return Matrix(re_x, im_x, R.den)


def inverse(m):
    n = m.shape[0]
    if isinstance(m, FloatMatrix):
        return FloatMatrix(np.linalg.inv(m.a), m.tol)
    aug = _hstack(m, Matrix.identity(n))
    re, im, piv = _eliminate(*_split(aug), ncols=n)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    R = _normalized_rows(re, im, piv)
    return Matrix(R.re[:, n:], R.im[:, n:], R.den)


def _hstack(a: Matrix, b: Matrix) -> Matrix:
    l = math.lcm(a.den, b.den)
    fa, fb = l // a.den, l // b.den
    return Matrix(np.hstack([a.re * fa, b.re * fb]), np.hstack([a.im * fa, b.im * fb]), l)


def column_basis(m):
    """Columns spanning range(m): pivot columns (exact) or left singular vectors (float)."""
    if isinstance(m, FloatMatrix):
        u, s, _ = np.linalg.svd(m.a)
        r = int(np.sum(s > m.tol * max(1.0, s[0] if len(s) else 0.0)))
        return FloatMatrix(u[:, :r], m.tol)
    _, _, piv = _eliminate(*_split(m))
    return Matrix(m.re[:, piv], m.im[:, piv], m.den)


def _float_rank(a: np.ndarray, tol: float) -> int:
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


# -- incremental subspaces --------------------------------------------------

class ExactSubspace:
    """Span of exact 1-D vectors, kept as a fully reduced row echelon basis.

    ``independent`` lists the vectors that were actually added, in order; they
    form a second basis with usually much smaller entries.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: list[Matrix] = []
        self._pivots: list[int] = []
        self._B: Matrix | None = None
        self.independent: list[Matrix] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> list[Matrix]:
        """Canonical basis, ordered by pivot position."""
        order = sorted(range(len(self._pivots)), key=self._pivots.__getitem__)
        return [self._rows[i] for i in order]

    def _matrix(self) -> Matrix:
        if self._B is None:
            self._B = stack_rows(self._rows, self.length)
        return self._B

    def residual(self, v: Matrix) -> Matrix:
        if not self._rows:
            return v
        c = Matrix(v.re[self._pivots], v.im[self._pivots], v.den)
        return v - c @ self._matrix()

    def coordinates(self, v: Matrix) -> Matrix | None:
        """Coefficients of v against the stored rows, or None if v is outside."""
        if not self.residual(v).is_zero():
            return None
        return Matrix(v.re[self._pivots], v.im[self._pivots], v.den)

    def contains(self, v: Matrix) -> bool:
        return self.residual(v).is_zero()

    def add(self, v: Matrix) -> bool:
        """Extend the span by v; returns False if v was already inside."""
        r = self.residual(v)
        if r.is_zero():
            return False
        flat_re, flat_im = r.re.tolist(), r.im.tolist()
        p = next(j for j in range(self.length) if flat_re[j] or flat_im[j])
        r = r.scale(1 / r[p])
        for i, row in enumerate(self._rows):
            coeff = row[p]
            if coeff:
                self._rows[i] = row - r.scale(coeff)
        self._rows.append(r)
        self._pivots.append(p)
        self._B = None
        self.independent.append(v)
        return True

    def extend(self, vectors) -> int:
        return sum(self.add(v) for v in vectors)


class FloatSubspace:
    """Span of float 1-D vectors, kept as an orthonormal basis."""

    def __init__(self, length: int, tol: float = 1e-9):
        self.length = length
        self.tol = tol
        self._Q = np.zeros((0, length), dtype=complex)
        self.independent: list[FloatMatrix] = []

    @property
    def dim(self) -> int:
        return self._Q.shape[0]

    @property
    def basis(self) -> list[FloatMatrix]:
        return [FloatMatrix(q, self.tol) for q in self._Q]

    def _res(self, v: np.ndarray) -> np.ndarray:
        r = v
        for _ in range(2):
            r = r - (self._Q.conj() @ r) @ self._Q
        return r

    def residual(self, v) -> FloatMatrix:
        return FloatMatrix(self._res(v.to_complex()), self.tol)

    def coordinates(self, v):
        a = v.to_complex()
        if np.linalg.norm(self._res(a)) > self.tol * max(1.0, np.linalg.norm(a)):
            return None
        return FloatMatrix(self._Q.conj() @ a, self.tol)

    def contains(self, v) -> bool:
        a = v.to_complex()
        return np.linalg.norm(self._res(a)) <= self.tol * max(1.0, np.linalg.norm(a))

    def add(self, v) -> bool:
        a = v.to_complex()
        r = self._res(a)
        nr = np.linalg.norm(r)
        if nr <= self.tol * max(1.0, np.linalg.norm(a)):
            return False
        self._Q = np.vstack([self._Q, (r / nr)[None, :]])
        self.independent.append(v)
        return True

    def extend(self, vectors) -> int:
        return sum(self.add(v) for v in vectors)


def new_subspace(length: int, like=None, tol: float | None = None):
    """Empty subspace on the backend of ``like`` (exact unless it is float)."""
    if isinstance(like, FloatMatrix):
        return FloatSubspace(length, like.tol if tol is None else tol)
    if tol is not None and like is None:
        return FloatSubspace(length, tol)
    return ExactSubspace(length)


def span_of(vectors, length: int | None = None):
    vectors = list(vectors)
    if length is None:
        length = vectors[0].shape[0]
    sp = new_subspace(length, vectors[0] if vectors else None)
    sp.extend(vectors)
    return sp
