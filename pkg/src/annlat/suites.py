"""Named verification suites over one algebra.

Every suite draws from its own substream of the algebra's policy seed and
returns a :class:`Report` whose witness is the first counterexample found.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from itertools import combinations

from .abstract import AbstractOrtholattice, is_boolean
from .algebra import StarAlgebra, independent_subset
from .annihilators import (
    Annihilator,
    annihilator,
    double_annihilator,
    from_projection,
    lift,
    product_is_zero,
    relative_annihilator,
)
from .classification import (
    central_atoms,
    decompose_types,
    equivalent_annihilators,
    has_nonzero_abelian_annihilator,
    is_abelian_annihilator,
    partial_isometry_oracle,
    projections_equivalent,
)
from .errors import UnknownSuite
from .lattice import (
    AnnLattice,
    check_condition_A,
    commutes,
    dimension_function,
    is_central,
    join,
    leq,
    meet,
    orthocomplement,
    verify_orthomodular_sampled,
)
from .linalg import kernel, new_subspace
from .matrix import stack_rows
from .reports import Report
from .sampling import random_annihilator, random_element, random_in, random_positive


def _span_equal(A: StarAlgebra, xs, ys) -> bool:
    n = A.ambient_dim
    tol = None if A.exact else A.policy.tol
    sx, sy = new_subspace(n * n, A.unit, tol), new_subspace(n * n, A.unit, tol)
    sx.extend(x.flat() for x in xs)
    sy.extend(y.flat() for y in ys)
    return sx.dim == sy.dim and all(sx.contains(y.flat()) for y in ys)


def _small_positive(A: StarAlgebra, rng):
    """x*x for a usually singular x."""
    return random_annihilator(A, rng).p if rng.integers(2) else random_positive(A, rng)


# -- lemma1 ---------------------------------------------------------------------

def suite_lemma1(A: StarAlgebra, samples: int) -> Report:
    """For a >= 0: ab + ba = 0 iff ab = 0 iff ba = 0 (b self-adjoint), and
    ab + ba = 0 iff ab = ba = 0 (b arbitrary).

    Half the draws take b from the annihilator of a so the zero cases occur.
    """
    rng = A.policy.rng(101)
    rep = Report("lemma1", True, details={"zero_cases": 0})
    for k in range(samples):
        a = _small_positive(A, rng)
        if k % 2:
            V = annihilator(A, [a])
            b = random_in(V, rng)
        else:
            b = random_element(A, rng)
        for kind, x in (("selfadjoint", b + b.H), ("general", b)):
            rep.checked += 1
            anti = (a @ x + x @ a).is_zero()
            left, right = (a @ x).is_zero(), (x @ a).is_zero()
            rep.details["zero_cases"] += anti
            ok = anti == left == right if kind == "selfadjoint" else anti == (left and right)
            if not ok:
                rep.fail(kind=kind, a=a, b=x)
    return rep


# -- lemma2 ---------------------------------------------------------------------

def suite_lemma2(A: StarAlgebra, samples: int) -> Report:
    """Ann(S) and Ann(Ann(S)) are *-subalgebras with xAx inside, equal to pAp,
    and Ann(Ann(Ann(S))) = Ann(S)."""
    rng = A.policy.rng(102)
    rep = Report("lemma2", True)
    for _ in range(samples):
        S = [_small_positive(A, rng) for _ in range(int(rng.integers(1, 3)))]
        V = annihilator(A, S)
        W = double_annihilator(A, S)
        for name, X in (("Ann(S)", V), ("Ann(Ann(S))", W)):
            rep.checked += 1
            if not _span_equal(A, X.space, X.hereditary_space):
                rep.fail(reason="kernel is not the corner pAp", which=name, S=S)
                continue
            a, b, c = random_in(X, rng), random_in(X, rng), random_element(A, rng)
            if not (X.contains(a @ b) and X.contains(a.H) and X.contains(a @ c @ a)):
                rep.fail(reason="not a hereditary *-subalgebra", which=name, a=a, b=b, c=c)
        rep.checked += 1
        if annihilator(A, [W.p]) != V:
            rep.fail(reason="triple annihilator differs", S=S)
    return rep


# -- lemma5-6 -------------------------------------------------------------------

def _intersection(A: StarAlgebra, X: Annihilator, Y: Annihilator) -> list:
    """Basis of X ∩ Y as subspaces, by elimination."""
    xs, ys = X.hereditary_space, Y.hereditary_space
    if not xs or not ys:
        return []
    cols = stack_rows([v.flat() for v in xs] + [(-v).flat() for v in ys], like=A.unit).T
    n = A.ambient_dim
    out = []
    for c in kernel(cols):
        m = A.zero
        for i, v in enumerate(xs):
            m = m + v.scale(c[i])
        out.append(m)
    return independent_subset(out, n, A.unit)


def _oracle_join(A: StarAlgebra, X, Y, rng) -> Annihilator:
    """Smallest double annihilator containing X and Y among those generated by
    subsets of a pool of positives from X and Y."""
    pool = [X.p, Y.p, random_positive(X.as_algebra, rng), random_positive(Y.as_algebra, rng)]
    best = None
    for r in range(1, len(pool) + 1):
        for T in combinations(pool, r):
            D = double_annihilator(A, list(T))
            if leq(X, D) and leq(Y, D) and (best is None or D.dim < best.dim):
                best = D
    return best


def _oracle_meet(A: StarAlgebra, X, Y, rng) -> Annihilator:
    """Largest double annihilator inside X and Y generated by positives of X ∩ Y.

    The pool holds x*x for random combinations x with nonzero coefficients.
    """
    inter = _intersection(A, X, Y)
    best = from_projection(A, A.zero)
    if not inter:
        return best
    pool = []
    for _ in range(3):
        x = A.zero
        for v in inter:
            x = x + v.scale(int(rng.choice([-3, -2, -1, 1, 2, 3])))
        pool.append(x.H @ x)
    for r in range(1, len(pool) + 1):
        for T in combinations(pool, r):
            D = double_annihilator(A, list(T))
            if leq(D, X) and leq(D, Y) and D.dim > best.dim:
                best = D
    return best


def suite_lemma5_6(A: StarAlgebra, samples: int, oracle: bool = True) -> Report:
    """Join and meet are bounds matching brute-force oracles; complement laws,
    double complement and De Morgan hold."""
    rng = A.policy.rng(105)
    L = AnnLattice(A, A.policy)
    rep = Report("lemma5-6", True)
    for _ in range(samples):
        X, Y = L.sample(rng), L.sample(rng)
        J, M = join(X, Y), meet(X, Y)
        Xp, Yp = orthocomplement(X), orthocomplement(Y)
        checks = {
            "join-upper-bound": leq(X, J) and leq(Y, J),
            "meet-lower-bound": leq(M, X) and leq(M, Y),
            "meet-is-intersection": _span_equal(A, _intersection(A, X, Y), M.hereditary_space),
            "complement-meet": meet(X, Xp).is_zero(),
            "complement-join": join(X, Xp) == L.one,
            "double-complement": orthocomplement(Xp) == X,
            "nonzero-complement": X == L.one or not Xp.is_zero(),
            "de-morgan-join": orthocomplement(J) == meet(Xp, Yp),
            "de-morgan-meet": orthocomplement(M) == join(Xp, Yp),
        }
        if oracle:
            checks["join-oracle"] = _oracle_join(A, X, Y, rng) == J
            checks["meet-oracle"] = _oracle_meet(A, X, Y, rng) == M
        for law, ok in checks.items():
            rep.checked += 1
            if not ok:
                rep.fail(law=law, X=X, Y=Y)
    return rep


# -- lemma7-8 -------------------------------------------------------------------

def central_annihilators(A: StarAlgebra) -> tuple[list[Annihilator], list[Annihilator]]:
    """All central annihilators (sums of central atoms) and the atoms themselves."""
    atoms, _ = central_atoms(A)
    B = A if not atoms or type(atoms[0]) is type(A.unit) else A.to_float()
    atom_anns = [from_projection(B, z) for z in atoms]
    out = []
    for mask in range(1 << len(atoms)):
        p = B.zero
        for i, z in enumerate(atoms):
            if mask >> i & 1:
                p = p + z
        out.append(from_projection(B, p))
    return out, atom_anns


def central_boolean_algebra(elems: list[Annihilator]) -> AbstractOrtholattice:
    """The finite lattice of the given annihilators under the induced order."""
    labels = [str(i) for i in range(len(elems))]
    pairs = [(labels[i], labels[j]) for i, X in enumerate(elems) for j, Y in enumerate(elems)
             if i != j and leq(X, Y)]
    ortho = {}
    for i, X in enumerate(elems):
        Xp = orthocomplement(X)
        ortho[labels[i]] = labels[next(j for j, Y in enumerate(elems) if Y == Xp)]
    return AbstractOrtholattice(labels, pairs, ortho)


def suite_lemma7_8(A: StarAlgebra, samples: int) -> Report:
    """Central annihilators are central by the d-operator test, pairwise
    commute, and form a boolean algebra with 2^k elements (k central atoms)."""
    rep = Report("lemma7-8", True)
    elems, atoms = central_annihilators(A)
    rep.details["atoms"] = len(atoms)
    rep.details["central_elements"] = len(elems)
    for X in elems:
        rep.checked += 1
        if not is_central(X):
            rep.fail(reason="not central", X=X)
    for X in elems:
        for Y in elems:
            rep.checked += 1
            if not commutes(X, Y):
                rep.fail(reason="central elements do not commute", X=X, Y=Y)
            if orthocomplement(X) not in elems or join(X, Y) not in elems or meet(X, Y) not in elems:
                rep.fail(reason="not closed under lattice operations", X=X, Y=Y)
    rep.checked += 1
    try:
        B = central_boolean_algebra(elems)
        boolean = is_boolean(B) and B.size == 2 ** len(atoms)
    except StopIteration:
        boolean = False
    if not boolean:
        rep.fail(reason="central annihilators are not a boolean algebra 2^k")
    # sampled annihilators are central exactly when they are sums of atoms
    rng = A.policy.rng(107)
    L = AnnLattice(elems[0].algebra)
    for _ in range(samples):
        V = L.sample(rng)
        rep.checked += 1
        if is_central(V) != (V in elems):
            rep.fail(reason="d-operator centrality disagrees with atom sums", V=V)
    return rep


# -- lemma13 --------------------------------------------------------------------

def suite_lemma13(A: StarAlgebra, samples: int) -> Report:
    """Relative annihilators inside V are annihilators below V and conversely;
    inside a central Z, Ann_Z(Ann_Z(V)) = V and Ann_Z(V) = span Ann(V) Z Ann(V);
    annihilators below an Abelian one are Abelian."""
    rng = A.policy.rng(113)
    L = AnnLattice(A, A.policy)
    rep = Report("lemma13", True)
    centrals, _ = central_annihilators(A)
    centrals = [Z for Z in centrals if isinstance(Z.p, type(A.unit))]
    for k in range(samples):
        V = L.sample(rng)
        if V.is_zero():
            continue
        B = V.as_algebra
        s = random_positive(B, rng)
        R = lift(relative_annihilator(V, [relative_annihilator(V, [s]).p]), A)
        rep.checked += 1
        if not (leq(R, V) and double_annihilator(A, [R.p]) == R):
            rep.fail(reason="relative double annihilator is not an annihilator below V", V=V, s=s)
        W = meet(V, L.sample(rng))
        inner = relative_annihilator(V, [W.p])
        rep.checked += 1
        if lift(relative_annihilator(V, [inner.p]), A) != W:
            rep.fail(reason="annihilator below V is not relatively closed", V=V, W=W)
        if centrals:
            Z = centrals[k % len(centrals)]
            X = meet(Z, L.sample(rng))
            rel = relative_annihilator(Z, [X.p])
            rep.checked += 1
            if lift(relative_annihilator(Z, [rel.p]), A) != X:
                rep.fail(reason="Ann_Z(Ann_Z(X)) != X", Z=Z, X=X)
            q = orthocomplement(X)
            prods = [v @ z @ w for v in q.hereditary_space for z in Z.hereditary_space
                     for w in q.hereditary_space]
            rep.checked += 1
            if not _span_equal(A, prods, lift(rel, A).hereditary_space):
                rep.fail(reason="Ann_Z(X) differs from span Ann(X) Z Ann(X)", Z=Z, X=X)
        if is_abelian_annihilator(V):
            rep.checked += 1
            if not is_abelian_annihilator(W):
                rep.fail(reason="annihilator below an Abelian one is not Abelian", V=V, W=W)
    return rep


# -- theorem12 ------------------------------------------------------------------

def suite_theorem12(A: StarAlgebra, samples: int) -> Report:
    """Orthomodular law Y = X or (Y and X-perp) on sampled comparable pairs."""
    rep = verify_orthomodular_sampled(AnnLattice(A, A.policy), samples)
    rep.name = "theorem12"
    return rep


# -- theorem15 ------------------------------------------------------------------

def suite_theorem15(A: StarAlgebra, samples: int) -> Report:
    """Bounds, order reversal of the complement, orthogonality bridge, center
    equals the central annihilators, and condition (A) on samples.

    The converse of the orthogonality bridge is measured, not required.
    """
    rng = A.policy.rng(115)
    L = AnnLattice(A, A.policy)
    rep = Report("theorem15", True, details={"orthogonal_pairs": 0, "converse_holds": 0,
                                             "converse_checked": 0})
    centrals, _ = central_annihilators(A)
    exact_centrals = [Z for Z in centrals if isinstance(Z.p, type(A.unit))]
    for _ in range(samples):
        X, Y = L.sample(rng), L.sample(rng)
        rep.checked += 1
        if not (leq(L.zero, X) and leq(X, L.one)):
            rep.fail(law="bounds", X=X)
        M = meet(X, Y)
        if not leq(orthocomplement(X), orthocomplement(M)):
            rep.fail(law="order-reversing", X=X, Y=Y)
        # W inside X-perp gives X . W = {0}
        Xp = orthocomplement(X)
        W = meet(Xp, Y)
        if product_is_zero(X, W):
            rep.details["orthogonal_pairs"] += 1
            if not leq(X, orthocomplement(W)):
                rep.fail(law="orthogonality bridge", X=X, W=W)
        else:
            rep.fail(law="meet with complement not orthogonal", X=X, W=W)
        if leq(X, orthocomplement(Y)):
            rep.details["converse_checked"] += 1
            rep.details["converse_holds"] += product_is_zero(X, Y)
        for Z in exact_centrals:
            if not commutes(Z, X):
                rep.fail(law="central element fails to commute", Z=Z, X=X)
        if not check_condition_A(X):
            rep.fail(law="condition (A)", X=X)
    return rep


# -- theorem21 ------------------------------------------------------------------

def suite_theorem21(A: StarAlgebra, samples: int) -> Report:
    """Type decomposition: A_I = A, the other parts vanish, invariants hold,
    the result does not depend on the seed, and an Abelian annihilator exists."""
    rep = Report("theorem21", True)
    first = decompose_types(A)
    rep.checked += 1
    if not first.details["invariants"]:
        rep.fail(reason="central orthogonal parts with zero annihilator of the sum")
    rep.checked += 1
    if not (first.A_I.p == first.A_I.algebra.unit and first.A_II.is_zero() and first.A_III.is_zero()):
        rep.fail(reason="finite-dimensional algebra is not purely type I", report=first.to_dict())
    B = first.A_I.algebra
    NGCR = orthocomplement(first.A_I)
    rep.checked += 1
    if not annihilator(B, [first.A_I.p, NGCR.p]).is_zero():
        rep.fail(reason="Ann(A_I + Ann(A_I)) is not zero")
    for seed in range(1, 1 + min(samples, 3)):
        other = decompose_types(_reseeded(A, seed))
        rep.checked += 1
        if (other.A_I.p, other.A_II.p, other.A_III.p) != (first.A_I.p, first.A_II.p, first.A_III.p):
            rep.fail(reason="decomposition depends on the seed", seed=seed)
    found, V = has_nonzero_abelian_annihilator(A)
    rep.checked += 1
    if not (found and not V.is_zero() and is_abelian_annihilator(V)):
        rep.fail(reason="no nonzero Abelian annihilator found")
    rep.details["type_label"] = first.type_label
    rep.details["certificate_level"] = first.certificate_level
    return rep


def _reseeded(A: StarAlgebra, seed: int) -> StarAlgebra:
    pol = replace(A.policy, seed=seed)
    return StarAlgebra(A.ambient_dim, A.basis, A.unit, generators=A.generators, name=A.name, policy=pol)


# -- lemma26-27 -----------------------------------------------------------------

def sampled_projections(A: StarAlgebra, rng, count: int) -> list:
    """Unit projections of ``count`` sampled annihilators."""
    L = AnnLattice(A, A.policy)
    return [L.sample(rng).p for _ in range(count)]


def suite_lemma26_27(A: StarAlgebra, samples: int) -> Report:
    """The trace criterion on projections agrees with the annihilator form,
    ≈ is an equivalence relation, D is ≈-invariant, and the float
    partial-isometry search agrees with the exact decision."""
    rng = A.policy.rng(126)
    rep = Report("lemma26-27", True, details={"equivalent_pairs": 0, "oracle_checked": 0})
    for _ in range(samples):
        p, q, r = sampled_projections(A, rng, 3)
        V, W, U = (from_projection(A, x) for x in (p, q, r))
        vw, wit = equivalent_annihilators(V, W)
        rep.checked += 1
        if projections_equivalent(A, p, q) != vw:
            rep.fail(law="projection form disagrees", p=p, q=q)
        if not wit.verify(p, q, A.center, A.policy.tol):
            rep.fail(law="trace witness does not re-verify", p=p, q=q)
        if equivalent_annihilators(V, V)[0] is not True:
            rep.fail(law="reflexive", p=p)
        if equivalent_annihilators(W, V)[0] != vw:
            rep.fail(law="symmetric", p=p, q=q)
        wu = equivalent_annihilators(W, U)[0]
        if vw and wu and not equivalent_annihilators(V, U)[0]:
            rep.fail(law="transitive", p=p, q=q, r=r)
        if vw:
            rep.details["equivalent_pairs"] += 1
            if not _close(dimension_function(V).value, dimension_function(W).value, A):
                rep.fail(law="dimension not invariant", p=p, q=q)
        if A.ambient_dim <= 6:
            rep.details["oracle_checked"] += 1
            found = partial_isometry_oracle(A, p, q, rng) is not None
            if found != vw:
                rep.fail(law="partial-isometry oracle disagrees", p=p, q=q)
    return rep


# -- dimension ------------------------------------------------------------------

def suite_dimension(A: StarAlgebra, samples: int) -> Report:
    """D is normalized, faithful, monotone and additive on orthogonal pairs,
    with exact rational values in exact mode."""
    rng = A.policy.rng(128)
    L = AnnLattice(A, A.policy)
    rep = Report("dimension", True, details={"nonzero_orthogonal_pairs": 0})
    rep.checked += 1
    if dimension_function(L.zero).value != 0 or dimension_function(L.one).value != 1:
        rep.fail(law="normalized")
    for _ in range(samples):
        V = L.sample(rng)
        W = meet(orthocomplement(V), L.sample(rng))
        dv, dw = dimension_function(V), dimension_function(W)
        rep.checked += 1
        if A.exact and not isinstance(dv.value, Fraction):
            rep.fail(law="exact rational", V=V)
        if (dv.value == 0) != V.is_zero():
            rep.fail(law="faithful", V=V)
        if not product_is_zero(V, W):
            rep.fail(law="sampled pair not orthogonal", V=V, W=W)
            continue
        rep.details["nonzero_orthogonal_pairs"] += not (V.is_zero() or W.is_zero())
        total = dimension_function(join(V, W))
        if not _close(total.value, (dv + dw).value, A):
            rep.fail(law="additive", V=V, W=W, sum=str(total))
        M = meet(V, L.sample(rng))
        if dimension_function(M).value > dv.value + (0 if A.exact else A.policy.tol):
            rep.fail(law="monotone", V=V, M=M)
    return rep


def _close(a, b, A: StarAlgebra) -> bool:
    return a == b if A.exact else abs(a - b) <= A.policy.tol


SUITES = {
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "lemma5-6": suite_lemma5_6,
    "lemma7-8": suite_lemma7_8,
    "lemma13": suite_lemma13,
    "theorem12": suite_theorem12,
    "theorem15": suite_theorem15,
    "theorem21": suite_theorem21,
    "lemma26-27": suite_lemma26_27,
    "dimension": suite_dimension,
}


def run_suite(name: str, A: StarAlgebra, samples: int = 200) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}") from None
    return fn(A, samples)
