"""Abelian annihilators, type decomposition, factors, type I_n and equivalence.

Spectral splitting runs on floats.  In exact mode every split projection is
rounded to nearby rationals and re-verified exactly; when rounding fails the
whole computation is redone on the float backend and the result is marked
with a float certificate level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .abstract import classify_lattice_type  # noqa: F401  (re-exported)
from .algebra import (
    StarAlgebra,
    corner,
    independent_subset,
    ordered_basis,
    range_projection,
)
from .annihilators import (
    Annihilator,
    annihilator,
    from_projection,
    ideal_closure,
    lift,
    product_is_zero,
    relative_annihilator,
    require_same,
    whole,
    zero,
)
from .errors import NotAProjection
from .lattice import central_support, is_central, join, orthocomplement, verify_modular_sampled
from .matrix import FloatMatrix, Matrix
from .reports import Report, jsonable
from .sampling import random_element

MAX_DENOMINATOR = 10**6
EXACT_LEVEL = "exact"


class _Irrational(Exception):
    """A split projection could not be rounded to an exact one."""


def _level(A: StarAlgebra) -> str:
    return EXACT_LEVEL if A.exact else f"float({A.policy.tol:g})"


def _with_fallback(fn, A: StarAlgebra):
    """Run fn(A); on an irrational split rerun on the float backend."""
    if A.exact:
        try:
            return fn(A), A
        except _Irrational:
            A = A.to_float()
    return fn(A), A


# -- spectral splitting -------------------------------------------------------

def _range_basis(p: np.ndarray) -> np.ndarray:
    w, U = np.linalg.eigh((p + p.conj().T) / 2)
    return U[:, w > 0.5]


def spectral_pieces(h, p) -> list[np.ndarray]:
    """Spectral projections of the compression of h to range(p), by ascending eigenvalue.

    Eigenvalues closer than 1e-7 (relative) are grouped into one cluster.
    """
    U = _range_basis(p.to_complex())
    H = U.conj().T @ h.to_complex() @ U
    w, W = np.linalg.eigh((H + H.conj().T) / 2)
    gap = 1e-7 * max(1.0, float(np.abs(w).max(initial=0.0)))
    pieces, start = [], 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > gap:
            V = U @ W[:, start:k]
            pieces.append(V @ V.conj().T)
            start = k
    return pieces


def rationalize(a: np.ndarray, max_den: int = MAX_DENOMINATOR) -> Matrix:
    """Round every entry to the nearest fraction with denominator <= max_den."""
    def q(x):
        return Fraction(float(x)).limit_denominator(max_den)
    return Matrix.from_rows([[(q(z.real), q(z.imag)) for z in row] for row in a])


def _piece(A: StarAlgebra, a: np.ndarray, below, central: bool = False):
    """The split projection a as an element of A, exact when A is exact."""
    if not A.exact:
        return FloatMatrix(a, A.policy.tol)
    e = rationalize(a)
    ok = e.is_projection() and not e.is_zero() and e @ below == e and A.contains(e)
    if ok and central:
        ok = all((e @ g - g @ e).is_zero() for g in A.generators)
    if not ok:
        raise _Irrational
    return e


def _nonscalar_selfadjoints(elems, p):
    """Self-adjoint parts of the elements of ``elems`` that are not multiples of p, in basis order."""
    tp = p.trace()
    for b in ordered_basis(list(elems)):
        for h in (b + b.H, (b - b.H).scale(1j if isinstance(b, FloatMatrix) else (0, 1))):
            if h.is_zero():
                continue
            if not (h - p.scale(h.trace() / tp)).is_zero():
                yield h


def _nonscalar_selfadjoint(elems, p):
    return next(_nonscalar_selfadjoints(elems, p), None)


def _first_piece(A: StarAlgebra, candidates, p, central: bool = False, every: bool = False):
    """Spectral split of the first candidate whose pieces are exact elements of A.

    Returns the lowest piece (or all pieces when ``every``).  On the float
    backend the first candidate is used as is; on the exact backend an
    irrational split moves on to the next candidate, and _Irrational is
    raised only when none splits exactly.
    """
    for h in candidates:
        pieces = spectral_pieces(h, p)
        try:
            if every:
                return [_piece(A, a, p, central) for a in pieces]
            return _piece(A, pieces[0], p, central)
        except _Irrational:
            continue
    raise _Irrational


# -- Abelian annihilators -----------------------------------------------------

def is_abelian_annihilator(V: Annihilator) -> bool:
    """V is commutative as an algebra (checked on all pairs of its basis)."""
    span = V.hereditary_space
    return all((x @ y - y @ x).is_zero() for i, x in enumerate(span) for y in span[i + 1:])


def _start_projection(A: StarAlgebra):
    c = A.center[0]
    return range_projection(A, c.H @ c)


def _find_abelian(A: StarAlgebra, start) -> object:
    """Unit projection of an Abelian annihilator below the projection ``start``.

    Repeatedly keeps the lowest spectral piece of a non-scalar self-adjoint
    element of the current corner until the corner is commutative.
    """
    p = start
    while True:
        C = corner(A, p)
        if C.is_commutative():
            return p
        p = _first_piece(A, _nonscalar_selfadjoints(C.basis, p), p)


@dataclass
class AbelianCertificate:
    found: bool
    annihilator: Annihilator | None
    certificate_level: str

    def __bool__(self):
        return self.found


def find_abelian_annihilator(A: StarAlgebra, start=None) -> AbelianCertificate:
    """A nonzero Abelian annihilator below ``start`` (default: a central piece of A)."""
    if A.dim == 0:
        return AbelianCertificate(False, None, _level(A))

    def run(B):
        s = _start_projection(B) if start is None else B.coerce(start)
        return _find_abelian(B, s)

    p, B = _with_fallback(run, A)
    return AbelianCertificate(True, from_projection(B, p), _level(B))


def has_nonzero_abelian_annihilator(A: StarAlgebra) -> tuple[bool, Annihilator | None]:
    """Whether the search finds a nonzero Abelian annihilator, and the one it found."""
    cert = find_abelian_annihilator(A)
    return cert.found, cert.annihilator


# -- factors ------------------------------------------------------------------

def factor_witness(A: StarAlgebra) -> dict | None:
    """Float search for ideals I = zA, J = (1 - z)A with I J = {0}, both nonzero.

    z is a spectral projection of a non-scalar central self-adjoint element.
    """
    F = A.to_float()
    if F.dim == 0:
        return None
    h = _nonscalar_selfadjoint(F.center, F.unit)
    if h is None:
        return None
    z = FloatMatrix(spectral_pieces(h, F.unit)[0], F.policy.tol)
    I_ = ideal_closure(F, [z])
    J_ = ideal_closure(F, [F.unit - z])
    if not I_ or not J_ or not all((x @ y).is_zero() for x in I_ for y in J_):
        return None
    return {"z": z, "dim_I": len(I_), "dim_J": len(J_), "product_zero": True}


def is_factor(A: StarAlgebra) -> bool:
    """One-dimensional center, cross-checked against the float ideal search."""
    exact_answer = len(A.center) == 1
    if exact_answer != (factor_witness(A) is None):
        raise ArithmeticError("center dimension and ideal search disagree on factoriality")
    return exact_answer


# -- central atoms and type I_n -------------------------------------------------

def _central_atoms(A: StarAlgebra) -> list:
    n = A.ambient_dim
    atoms, queue = [], [A.unit]
    center = list(A.center)
    while queue:
        e = queue.pop(0)
        Ze = independent_subset([z @ e for z in center], n, A.unit)
        if len(Ze) <= 1:
            atoms.append(e)
            continue
        queue.extend(_first_piece(A, _nonscalar_selfadjoints(Ze, e), e, central=True, every=True))
    return atoms


def central_atoms(A: StarAlgebra) -> tuple[list, str]:
    """Minimal central projections of A and the certificate level."""
    if A.dim == 0:
        return [], _level(A)
    atoms, B = _with_fallback(_central_atoms, A)
    return atoms, _level(B)


@dataclass
class TypeReport:
    is_factor: bool
    A_I: Annihilator
    A_II: Annihilator
    A_III: Annihilator
    abelian_family: list
    type_label: str
    certificate_level: str
    summands: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def family_sizes(self) -> list[int]:
        return [s["n"] for s in self.summands]

    def to_dict(self) -> dict:
        return jsonable({
            "is_factor": self.is_factor,
            "type_label": self.type_label,
            "certificate_level": self.certificate_level,
            "family_sizes": self.family_sizes,
            "A_I": self.A_I,
            "A_II": self.A_II,
            "A_III": self.A_III,
            "abelian_family": self.abelian_family,
            "summands": self.summands,
            "details": self.details,
        })


def _in_label(sizes) -> str:
    return " ⊕ ".join(f"I_{n}" for n in sorted(sizes, reverse=True))


def _classify_in(B: StarAlgebra):
    summands = []
    for z in _central_atoms(B):
        family, r = [], z
        while not r.is_zero():
            e = _find_abelian(B, r)
            family.append(from_projection(B, e))
            r = r - e
        Z = from_projection(B, z)
        summands.append({
            "atom": Z,
            "n": len(family),
            "family": family,
            "join_is_summand": join(*family) == Z,
            "supports_are_summand": all(central_support(P) == Z for P in family),
        })
    return summands


def classify_type_In(A: StarAlgebra) -> TypeReport:
    """Type I_n label per central summand, from maximal orthogonal Abelian families."""
    summands, B = _with_fallback(_classify_in, A) if A.dim else ([], A)
    factor = is_factor(A)
    sizes = [s["n"] for s in summands]
    details = {
        "families_join_to_summands": all(s["join_is_summand"] for s in summands),
        "supports_equal_summands": all(s["supports_are_summand"] for s in summands),
    }
    if factor:
        details["n_squared_is_dim"] = sizes[0] ** 2 == A.dim
    z = zero(B)
    return TypeReport(
        is_factor=factor,
        A_I=whole(B),
        A_II=z,
        A_III=z,
        abelian_family=[P for s in summands for P in s["family"]],
        type_label=_in_label(sizes),
        certificate_level=_level(B),
        summands=[{"n": s["n"], "atom": s["atom"], "family": s["family"]} for s in summands],
        details=details,
    )


# -- type decomposition ---------------------------------------------------------

def _orthogonal_support_family(B: StarAlgebra, r, pick):
    """Greedy family below the central projection r with pairwise orthogonal central supports."""
    family, supports = [], []
    while not r.is_zero():
        V = pick(r)
        c = central_support(V)
        family.append(V)
        supports.append(c)
        r = r - c.p
    return family, supports


def _decompose(B: StarAlgebra):
    abelian, supports = _orthogonal_support_family(
        B, B.unit, lambda r: from_projection(B, _find_abelian(B, r)))
    A_I = join(*supports) if supports else zero(B)
    Z = orthocomplement(A_I)

    def pick_modular(r):
        V = from_projection(B, r)
        if verify_modular_sampled(V).passed:
            return V
        # Abelian annihilators are modular
        return from_projection(B, _find_abelian(B, r))

    modular, mod_supports = _orthogonal_support_family(B, Z.p, pick_modular)
    A_II = join(*mod_supports) if mod_supports else zero(B)
    A_III = lift(relative_annihilator(Z, [A_II.p]), B)
    return abelian, A_I, A_II, A_III, modular


def decompose_types(A: StarAlgebra) -> TypeReport:
    """Split A into central parts A_I, A_II, A_III from greedy orthogonal families."""
    (abelian, A_I, A_II, A_III, modular), B = _with_fallback(_decompose, A)
    parts = [name for name, V in (("I", A_I), ("II", A_II), ("III", A_III)) if not V.is_zero()]
    label = parts[0] if len(parts) == 1 else "mixed"
    rep = TypeReport(
        is_factor=is_factor(A),
        A_I=A_I,
        A_II=A_II,
        A_III=A_III,
        abelian_family=abelian,
        type_label=label,
        certificate_level=_level(B),
        details={"modular_family_size": len(modular)},
    )
    rep.details["invariants"] = check_type_invariants(rep).passed
    return rep


def check_type_invariants(rep: TypeReport) -> Report:
    """Central, pairwise orthogonal parts whose sum has zero annihilator."""
    out = Report("type-invariants", True)
    parts = {"A_I": rep.A_I, "A_II": rep.A_II, "A_III": rep.A_III}
    B = require_same(*parts.values())
    for name, V in parts.items():
        out.checked += 1
        if not is_central(V):
            out.fail(reason="not central", part=name)
    names = list(parts)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            out.checked += 1
            if not product_is_zero(parts[a], parts[b]):
                out.fail(reason="not orthogonal", parts=[a, b])
    out.checked += 1
    if not annihilator(B, [V.p for V in parts.values()]).is_zero():
        out.fail(reason="sum has nonzero annihilator")
    return out


# -- equivalence -----------------------------------------------------------------

@dataclass
class EquivalenceWitness:
    kind: str  # "trace-certificate" or "partial-isometry"
    data: object

    def verify(self, p, q, center=None, tol: float = 1e-9) -> bool:
        """Re-check the witness against the projections p and q."""
        if self.kind == "partial-isometry":
            x = self.data
            if isinstance(x, Matrix) and isinstance(p, Matrix):
                return x @ x.H == p and x.H @ x == q
            xa = x.to_complex()
            return bool(np.abs(xa @ xa.conj().T - p.to_complex()).max() <= tol
                        and np.abs(xa.conj().T @ xa - q.to_complex()).max() <= tol)
        pairs = [((c @ p).trace(), (c @ q).trace()) for c in center]
        return len(pairs) == len(self.data) and all(
            _same_trace(a, x, tol) and _same_trace(b, y, tol) for (a, b), (x, y) in zip(pairs, self.data))

    @property
    def equivalent(self) -> bool:
        """The decision the witness supports (trace pairs equal, or an isometry exists)."""
        if self.kind == "partial-isometry":
            return True
        return all(_same_trace(a, b, 1e-9) for a, b in self.data)

    def to_dict(self) -> dict:
        return jsonable({"kind": self.kind, "data": self.data})


def _same_trace(a, b, tol: float) -> bool:
    if isinstance(a, complex) or isinstance(b, complex):
        return abs(complex(a) - complex(b)) <= tol
    return a == b


def _trace_pairs(A: StarAlgebra, p, q) -> list:
    return [((c @ p).trace(), (c @ q).trace()) for c in A.center]


def equivalent_annihilators(V: Annihilator, W: Annihilator) -> tuple[bool, EquivalenceWitness]:
    """Decide V ≈ W by comparing Tr(c p_V) and Tr(c p_W) over a basis of the center."""
    A = require_same(V, W)
    pairs = _trace_pairs(A, V.p, W.p)
    tol = A.policy.tol
    return all(_same_trace(a, b, tol) for a, b in pairs), EquivalenceWitness("trace-certificate", pairs)


def _require_projection(A: StarAlgebra, p):
    p = A.coerce(p)
    if not (A.contains(p) and p.is_projection()):
        raise NotAProjection("expected a projection of the algebra")
    return p


def projections_equivalent(A: StarAlgebra, p, q) -> bool:
    p, q = _require_projection(A, p), _require_projection(A, q)
    return equivalent_annihilators(from_projection(A, p), from_projection(A, q))[0]


def partial_isometry_oracle(A: StarAlgebra, p, q, rng=None, attempts: int = 6):
    """Float search for x in A with x x* = p and x* x = q.

    For a random a, x is the polar part of p a q.  The phase is normalized so
    the largest entry is positive, and an exact witness is returned when the
    rounded x re-verifies exactly.  Returns None when no attempt succeeds.
    """
    p, q = _require_projection(A, p), _require_projection(A, q)
    tol = A.policy.tol
    rng = rng if rng is not None else A.policy.rng(26)
    P, Q = p.to_complex(), q.to_complex()
    rp = int(round(np.trace(P).real))
    if rp != int(round(np.trace(Q).real)):
        return None
    if rp == 0:
        x = A.zero
        return EquivalenceWitness("partial-isometry", x)
    F = A.to_float()
    for k in range(attempts):
        a = random_element(F, rng, sparse=False)
        if k == 0:
            a = FloatMatrix(a.a.real, F.policy.tol)
        y = P @ a.to_complex() @ Q
        U, s, Vh = np.linalg.svd(y)
        if s[rp - 1] <= 1e-6 * max(1.0, s[0]):
            continue
        x = U[:, :rp] @ Vh[:rp]
        big = np.unravel_index(np.argmax(np.abs(x)), x.shape)
        x = x * (abs(x[big]) / x[big])
        if np.abs(x @ x.conj().T - P).max() > tol or np.abs(x.conj().T @ x - Q).max() > tol:
            continue
        if A.exact:
            xr = rationalize(x)
            if A.contains(xr) and xr @ xr.H == p and xr.H @ xr == q:
                return EquivalenceWitness("partial-isometry", xr)
        return EquivalenceWitness("partial-isometry", FloatMatrix(x, tol))
    return None


# -- finiteness ------------------------------------------------------------------

def is_finite_projection(A: StarAlgebra, p) -> bool:
    """No proper subprojection of p is equivalent to p.

    The unit is central, so q ~ p forces Tr(q) = Tr(p), while a proper
    subprojection q < p has Tr(p - q) > 0.  That settles finiteness; sampled
    subprojections are still run through the equivalence test as a check.
    """
    p = _require_projection(A, p)
    if p.is_zero():
        return True
    candidates = []
    cert = find_abelian_annihilator(A, start=p)
    if cert.found and cert.certificate_level == _level(A):
        e = A.coerce(cert.annihilator.p)
        candidates += [e, p - e]
    rng = A.policy.rng(28)
    for _ in range(3):
        x = p @ random_element(A, rng) @ p
        if not x.is_zero():
            candidates.append(range_projection(A, x @ x.H))
    for q in candidates:
        if q != p and not q.is_zero() and projections_equivalent(A, p, q):
            return False
    return True


def check_type_In_certificate(rep: TypeReport) -> Report:
    """Re-verify a type I_n report at its certificate level.

    Atoms must be central projections summing to the unit; each family must
    consist of pairwise orthogonal Abelian projections summing to its atom.
    Float reports are checked to the algebra's tolerance.
    """
    out = Report("type-In-certificate", True)
    B = rep.A_I.algebra
    total = B.zero
    for k, s in enumerate(rep.summands):
        z = s["atom"].p
        total = total + z
        out.checked += 1
        if not (z.is_projection() and all((z @ g - g @ z).is_zero() for g in B.generators)):
            out.fail(reason="atom is not a central projection", summand=k)
        acc = B.zero
        fam = s["family"]
        for i, P in enumerate(fam):
            out.checked += 1
            if not (P.p.is_projection() and B.contains(P.p) and is_abelian_annihilator(P)):
                out.fail(reason="family member is not an Abelian projection", summand=k, member=i)
            for Q in fam[i + 1:]:
                if not (P.p @ Q.p).is_zero():
                    out.fail(reason="family not orthogonal", summand=k, member=i)
            acc = acc + P.p
        if acc != z:
            out.fail(reason="family does not sum to its atom", summand=k)
    if total != B.unit:
        out.fail(reason="atoms do not sum to the unit")
    return out
