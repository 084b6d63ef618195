"""Finite (ortho)lattices given by a covering/order relation, checked exhaustively."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .errors import MalformedPoset, NotOrthomodular
from .reports import Report


class AbstractOrtholattice:
    """A finite poset with bottom and top and an optional orthocomplement.

    ``leq_pairs`` may be any generating set of the order; reflexive and
    transitive closure is taken.  Joins and meets are tabulated when they
    exist; a missing one is reported by the verifiers rather than raised here.
    """

    def __init__(self, elements, leq_pairs, ortho=None):
        labels = [str(e) for e in elements]
        if len(set(labels)) != len(labels):
            raise MalformedPoset("duplicate element labels")
        if not labels:
            raise MalformedPoset("empty poset")
        self.elements = labels
        self.index = {e: i for i, e in enumerate(labels)}
        n = len(labels)
        le = np.eye(n, dtype=bool)
        for pair in leq_pairs:
            if len(pair) != 2:
                raise MalformedPoset(f"order pair {pair!r} does not have two entries")
            a, b = (self._idx(x) for x in pair)
            le[a, b] = True
        for k in range(n):
            le |= le[:, k:k + 1] & le[k:k + 1, :]
        both = le & le.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise MalformedPoset(f"order has a cycle through {labels[i]} and {labels[j]}")
        self.le = le
        bottoms = [i for i in range(n) if le[i].all()]
        tops = [i for i in range(n) if le[:, i].all()]
        if not bottoms or not tops:
            raise MalformedPoset("poset needs a bottom and a top element")
        self.bottom, self.top = bottoms[0], tops[0]
        self._join = self._bounds(le)
        self._meet = self._bounds(le.T)
        self.ortho = None
        if ortho is not None:
            perp = [None] * n
            for a, b in dict(ortho).items():
                perp[self._idx(a)] = self._idx(b)
            if any(x is None for x in perp):
                raise MalformedPoset("orthocomplement must be defined on every element")
            if any(perp[perp[i]] != i for i in range(n)):
                raise MalformedPoset("orthocomplement is not an involution")
            self.ortho = perp

    def _idx(self, label) -> int:
        try:
            return self.index[str(label)]
        except KeyError:
            raise MalformedPoset(f"unknown element {label!r}") from None

    @staticmethod
    def _bounds(le: np.ndarray) -> np.ndarray:
        n = le.shape[0]
        table = np.full((n, n), -1, dtype=int)
        for i in range(n):
            for j in range(i, n):
                upper = np.flatnonzero(le[i] & le[j])
                least = [u for u in upper if le[u, upper].all()]
                if least:
                    table[i, j] = table[j, i] = least[0]
        return table

    # -- basic structure ------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_lattice(self) -> bool:
        return bool((self._join >= 0).all() and (self._meet >= 0).all())

    def missing_bound(self):
        """First pair without a join or meet, as (kind, x, y), or None."""
        for kind, table in (("join", self._join), ("meet", self._meet)):
            bad = np.argwhere(table < 0)
            if len(bad):
                i, j = bad[0]
                return kind, self.elements[i], self.elements[j]
        return None

    def require_lattice(self):
        miss = self.missing_bound()
        if miss:
            raise MalformedPoset(f"no {miss[0]} for {miss[1]} and {miss[2]}")

    def require_ortho(self):
        if self.ortho is None:
            raise MalformedPoset("this check needs an orthocomplement")

    def leq(self, x, y) -> bool:
        return bool(self.le[self._idx(x), self._idx(y)])

    def join(self, x, y) -> str:
        k = self._join[self._idx(x), self._idx(y)]
        if k < 0:
            raise MalformedPoset(f"{x} and {y} have no join")
        return self.elements[k]

    def meet(self, x, y) -> str:
        k = self._meet[self._idx(x), self._idx(y)]
        if k < 0:
            raise MalformedPoset(f"{x} and {y} have no meet")
        return self.elements[k]

    def perp(self, x) -> str:
        self.require_ortho()
        return self.elements[self.ortho[self._idx(x)]]

    @property
    def zero(self) -> str:
        return self.elements[self.bottom]

    @property
    def one(self) -> str:
        return self.elements[self.top]

    def commutes(self, x, y) -> bool:
        """x C y: x = (x and y) or (x and y-perp)."""
        return self.join(self.meet(x, y), self.meet(x, self.perp(y))) == x

    def comparable_pairs(self):
        return [(x, y) for x in self.elements for y in self.elements if self.leq(x, y)]

    def height(self) -> dict:
        """Length of the longest chain from the bottom to each element."""
        order = sorted(range(self.size), key=lambda i: int(self.le[:, i].sum()))
        h = {}
        for i in order:
            below = [j for j in range(self.size) if j != i and self.le[j, i]]
            h[i] = 1 + max((h[j] for j in below), default=-1)
        return {self.elements[i]: h[i] for i in range(self.size)}

    def interval(self, lo, hi) -> "AbstractOrtholattice":
        """The sub-poset [lo, hi], with relative complement x -> x-perp and hi if lo is 0."""
        lo_i, hi_i = self._idx(lo), self._idx(hi)
        keep = [e for i, e in enumerate(self.elements) if self.le[lo_i, i] and self.le[i, hi_i]]
        pairs = [(x, y) for x in keep for y in keep if self.leq(x, y)]
        ortho = None
        if self.ortho is not None and lo_i == self.bottom and self.is_lattice:
            ortho = {x: self.meet(self.perp(x), hi) for x in keep}
            if any(ortho[ortho[x]] != x for x in keep):
                ortho = None
        return AbstractOrtholattice(keep, pairs, ortho)

    def product(self, other: "AbstractOrtholattice") -> "AbstractOrtholattice":
        elems = [f"({a},{b})" for a in self.elements for b in other.elements]
        pairs = [
            (f"({a},{b})", f"({c},{d})")
            for a, c in self.comparable_pairs()
            for b, d in other.comparable_pairs()
        ]
        ortho = None
        if self.ortho is not None and other.ortho is not None:
            ortho = {f"({a},{b})": f"({self.perp(a)},{other.perp(b)})"
                     for a in self.elements for b in other.elements}
        return AbstractOrtholattice(elems, pairs, ortho)

    def to_dict(self) -> dict:
        covers = [
            [x, y] for x in self.elements for y in self.elements
            if x != y and self.leq(x, y)
            and not any(z not in (x, y) and self.leq(x, z) and self.leq(z, y) for z in self.elements)
        ]
        out = {"elements": list(self.elements), "leq_pairs": covers}
        if self.ortho is not None:
            out["ortho"] = {e: self.perp(e) for e in self.elements}
        return out

    def __repr__(self):
        return f"<AbstractOrtholattice |L|={self.size} ortho={'yes' if self.ortho else 'no'}>"


# -- standard finite lattices -------------------------------------------------

def boolean_lattice(k: int) -> AbstractOrtholattice:
    """The power set of k atoms a, b, c, ... with complement."""
    atoms = [chr(ord("a") + i) for i in range(k)]

    def label(mask):
        if mask == 0:
            return "0"
        if mask == (1 << k) - 1:
            return "1"
        return "".join(a for i, a in enumerate(atoms) if mask >> i & 1)

    full = (1 << k) - 1
    elems = [label(m) for m in range(1 << k)]
    pairs = [(label(m), label(m | 1 << i)) for m in range(1 << k) for i in range(k) if not m >> i & 1]
    ortho = {label(m): label(full ^ m) for m in range(1 << k)}
    return AbstractOrtholattice(elems, pairs, ortho)


def chain(k: int) -> AbstractOrtholattice:
    """0 < 1 < ... < k (no orthocomplement beyond k <= 1)."""
    elems = [str(i) for i in range(k + 1)]
    return AbstractOrtholattice(elems, list(zip(elems, elems[1:])))


def hexagon_o6() -> AbstractOrtholattice:
    elems = ["0", "a", "b", "b'", "a'", "1"]
    pairs = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")]
    ortho = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"}
    return AbstractOrtholattice(elems, pairs, ortho)


def mo2() -> AbstractOrtholattice:
    elems = ["0", "p", "p'", "q", "q'", "1"]
    atoms = elems[1:5]
    pairs = [("0", x) for x in atoms] + [(x, "1") for x in atoms]
    ortho = {"0": "1", "1": "0", "p": "p'", "p'": "p", "q": "q'", "q'": "q"}
    return AbstractOrtholattice(elems, pairs, ortho)


def pentagon_n5() -> AbstractOrtholattice:
    elems = ["0", "a", "b", "c", "1"]
    pairs = [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]
    return AbstractOrtholattice(elems, pairs)


def horizontal_sum(L1: AbstractOrtholattice, L2: AbstractOrtholattice, prefix=("", "")) -> AbstractOrtholattice:
    """Glue two ortholattices along their bottom and top only.

    Nonzero elements of different summands are incomparable.  The horizontal
    sum of orthomodular lattices is orthomodular.
    """
    out, pairs, ortho = ["0"], [], {"0": "1", "1": "0"}

    def name(L, tag, x):
        if x == L.zero:
            return "0"
        if x == L.one:
            return "1"
        return tag + x

    for L, tag in zip((L1, L2), prefix):
        for x in L.elements:
            nx = name(L, tag, x)
            if nx not in ("0", "1"):
                out.append(nx)
            if L.ortho is not None:
                ortho[nx] = name(L, tag, L.perp(x))
        pairs += [(name(L, tag, x), name(L, tag, y)) for x, y in L.comparable_pairs()]
    out.append("1")
    return AbstractOrtholattice(out, pairs, ortho if L1.ortho and L2.ortho else None)


def nonmodular_orthomodular() -> AbstractOrtholattice:
    """Horizontal sum of the boolean lattices 2^3 and 2^2 (10 elements, center {0, 1})."""
    return horizontal_sum(boolean_lattice(3), boolean_lattice(2), ("", "u"))


def mixed_lattice() -> AbstractOrtholattice:
    """Product of 2^1 with a nonmodular orthomodular lattice: one modular central summand."""
    return boolean_lattice(1).product(nonmodular_orthomodular())


# -- exhaustive verifiers -------------------------------------------------

def verify_ortholattice(L: AbstractOrtholattice) -> Report:
    """Lattice well-definedness, complement laws, involution, order reversal, De Morgan."""
    L.require_ortho()
    rep = Report("ortholattice", True)
    miss = L.missing_bound()
    if miss:
        return rep.fail(axiom="lattice", kind=miss[0], x=miss[1], y=miss[2])
    E = L.elements
    for x in E:
        rep.checked += 1
        xp = L.perp(x)
        if L.meet(x, xp) != L.zero or L.join(x, xp) != L.one:
            return rep.fail(axiom="complement", x=x, meet=L.meet(x, xp), join=L.join(x, xp))
        if L.perp(xp) != x:
            return rep.fail(axiom="involution", x=x)
    for x, y in itertools.product(E, E):
        rep.checked += 1
        if L.leq(x, y) and not L.leq(L.perp(y), L.perp(x)):
            return rep.fail(axiom="order-reversing", x=x, y=y)
        if L.perp(L.join(x, y)) != L.meet(L.perp(x), L.perp(y)):
            return rep.fail(axiom="de-morgan-join", x=x, y=y)
        if L.perp(L.meet(x, y)) != L.join(L.perp(x), L.perp(y)):
            return rep.fail(axiom="de-morgan-meet", x=x, y=y)
    return rep


def verify_orthomodular_exhaustive(L: AbstractOrtholattice) -> Report:
    L.require_ortho()
    L.require_lattice()
    rep = Report("orthomodular", True)
    for x, y in L.comparable_pairs():
        rep.checked += 1
        inner = L.meet(y, L.perp(x))
        rhs = L.join(x, inner)
        if rhs != y:
            return rep.fail(x=x, y=y, **{"y_meet_x_perp": inner, "x_join_that": rhs})
    return rep


def verify_modular(L: AbstractOrtholattice) -> Report:
    """Modular law on all x <= z and all y; a modular verdict carries a valuation."""
    L.require_lattice()
    rep = Report("modular", True)
    E = L.elements
    for x, z in L.comparable_pairs():
        for y in E:
            rep.checked += 1
            lhs = L.join(x, L.meet(y, z))
            rhs = L.meet(L.join(x, y), z)
            if lhs != rhs:
                return rep.fail(x=x, y=y, z=z, lhs=lhs, rhs=rhs)
    r = L.height()
    for x, y in itertools.product(E, E):
        if r[x] + r[y] != r[L.join(x, y)] + r[L.meet(x, y)]:
            raise ArithmeticError(f"height is not a valuation at ({x}, {y}) in a modular lattice")
    top = r[L.one]
    rep.details["valuation"] = {e: Fraction(r[e], top) if top else Fraction(0) for e in E}
    return rep


def is_modular(L: AbstractOrtholattice) -> bool:
    return verify_modular(L).passed


def is_orthomodular(L: AbstractOrtholattice) -> bool:
    return verify_ortholattice(L).passed and verify_orthomodular_exhaustive(L).passed


def is_boolean(L: AbstractOrtholattice) -> bool:
    """Orthomodular with every pair compatible."""
    if L.ortho is None or not is_orthomodular(L):
        return False
    return all(L.commutes(x, y) for x in L.elements for y in L.elements)


def lattice_center_abstract(L: AbstractOrtholattice) -> Report:
    """Elements compatible with everything; checked to be a boolean subalgebra."""
    if L.ortho is None or not is_orthomodular(L):
        raise NotOrthomodular("the center is defined here for orthomodular lattices")
    E = L.elements
    center = [z for z in E if all(L.commutes(z, y) for y in E)]
    rep = Report("center", True, details={"center": center})
    cs = set(center)
    for x in center:
        rep.checked += 1
        if L.perp(x) not in cs:
            return rep.fail(reason="not closed under complement", x=x)
        for y in center:
            if L.join(x, y) not in cs or L.meet(x, y) not in cs:
                return rep.fail(reason="not closed under join/meet", x=x, y=y)
            if not L.commutes(x, y):
                return rep.fail(reason="center elements do not commute", x=x, y=y)
    return rep


def central_support_abstract(L: AbstractOrtholattice, v, center=None) -> str:
    """Smallest central element above v."""
    center = center if center is not None else lattice_center_abstract(L).details["center"]
    c = L.one
    for z in center:
        if L.leq(v, z):
            c = L.meet(c, z)
    return c


def central_atoms(L: AbstractOrtholattice, center=None) -> list[str]:
    center = center if center is not None else lattice_center_abstract(L).details["center"]
    nonzero = [z for z in center if z != L.zero]
    return [z for z in nonzero if not any(w != z and L.leq(w, z) for w in nonzero)]


def classify_lattice_type(L: AbstractOrtholattice) -> Report:
    """Type label of a finite orthomodular lattice from its interval predicates.

    Labels are tried in this order: "modular", "mixed" (some central summand
    modular and some not), "has-abelian-atoms", "locally modular",
    "purely nonmodular".
    """
    if L.ortho is None or not is_orthomodular(L):
        raise NotOrthomodular("lattice type is defined for orthomodular lattices")
    center = lattice_center_abstract(L).details["center"]
    E = L.elements
    nonzero = [v for v in E if v != L.zero]
    modular_below = {v: is_modular(L.interval(L.zero, v)) for v in E}

    summands = central_atoms(L, center)
    summand_modular = {z: modular_below[z] for z in summands}

    # locally modular: modular elements with orthogonal central supports covering 1
    fam, covered = [], L.zero
    for v in nonzero:
        if not modular_below[v]:
            continue
        c = central_support_abstract(L, v, center)
        if L.meet(c, covered) == L.zero:
            fam.append(v)
            covered = L.join(covered, c)
    locally_modular = covered == L.one

    abelian = [v for v in nonzero if is_boolean(L.interval(L.zero, v))]
    abelian_supports = L.zero
    for v in abelian:
        abelian_supports = L.join(abelian_supports, central_support_abstract(L, v, center))

    details = {
        "modular": modular_below[L.one],
        "center": center,
        "central_summands": {z: ("modular" if m else "nonmodular") for z, m in summand_modular.items()},
        "locally_modular": locally_modular,
        "locally_modular_family": fam,
        "purely_nonmodular": not any(modular_below[v] for v in nonzero),
        "has_abelian_atoms": abelian_supports == L.one,
    }
    if details["modular"]:
        label = "modular"
    elif any(summand_modular.values()) and not all(summand_modular.values()):
        label = "mixed"
        details["modular_summands"] = [z for z, m in summand_modular.items() if m]
    elif details["has_abelian_atoms"]:
        label = "has-abelian-atoms"
    elif locally_modular:
        label = "locally modular"
    else:
        label = "purely nonmodular"
    details["label"] = label
    return Report("lattice-type", True, checked=len(E), details=details)
