"""Finite-dimensional Q-algebras with involution, and the group algebra Q[G].

A ``StructureAlgebra`` is given by structure constants on a basis; the group
algebra is the special case whose basis is the element list of a
``PermGroup`` and whose involution is ``g -> g^-1``.  Left ideals are handled
as lists of ``AlgebraElement`` spanning them (in reduced echelon form).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from . import linalg
from .groups import GroupOrderError, PermGroup, Subgroup, class_index, conjugacy_classes
from .linalg import norm

# Q[G] keeps a dense |G| x |G| multiplication table
MAX_ALGEBRA_ORDER = 2000


class AlgebraError(ValueError):
    pass


class StructureAlgebra:
    """Algebra with basis ``e_0..e_{n-1}`` and ``e_i e_j = sum_k table[i][j][k] e_k``.

    ``involution[i][j]`` is the coefficient of ``e_i`` in ``iota(e_j)`` (the
    columns are the images of the basis).
    """

    def __init__(self, dim: int, table: Sequence[Sequence[dict]], unit: Sequence,
                 involution: Optional[linalg.Matrix] = None, name: str = "A", check: bool = True):
        self.dim = dim
        self.table = [[{k: norm(v) for k, v in cell.items() if v} for cell in row] for row in table]
        self.unit = tuple(norm(x) for x in unit)
        self.involution = involution
        self.name = name
        self._gram: Optional[linalg.Matrix] = None
        if check:
            self.verify()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, dim={self.dim})"

    # elements -------------------------------------------------------------------

    def element(self, coords: Sequence) -> "AlgebraElement":
        if len(coords) != self.dim:
            raise AlgebraError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgebraElement(self, tuple(norm(c) for c in coords))

    def basis(self, i: int) -> "AlgebraElement":
        c = [0] * self.dim
        c[i] = 1
        return AlgebraElement(self, tuple(c))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (0,) * self.dim)

    # structure --------------------------------------------------------------------

    def _mul(self, x: Sequence, y: Sequence) -> tuple:
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] += ab * c
        return tuple(norm(v) for v in out)

    def _star(self, x: Sequence) -> tuple:
        if self.involution is None:
            raise AlgebraError(f"{self.name} has no involution")
        return tuple(linalg.matvec(self.involution, x))

    def _trace(self, x: Sequence) -> int | Fraction:
        # tr(L_x) = sum_j (x e_j)_j
        total = 0
        for i, a in enumerate(x):
            if a:
                total += a * sum(self.table[i][j].get(j, 0) for j in range(self.dim))
        return norm(total)

    def left_mult_matrix(self, x: "AlgebraElement") -> linalg.Matrix:
        cols = [self._mul(x.coords, self.basis(j).coords) for j in range(self.dim)]
        return linalg.transpose(cols)

    def verify(self) -> None:
        """Check the algebra axioms on basis elements."""
        n = self.dim
        E = [self.basis(i).coords for i in range(n)]
        for i in range(n):
            for j in range(n):
                eij = self._mul(E[i], E[j])
                for k in range(n):
                    if self._mul(eij, E[k]) != self._mul(E[i], self._mul(E[j], E[k])):
                        raise AlgebraError(f"{self.name}: not associative at {(i, j, k)}")
        for i in range(n):
            if self._mul(self.unit, E[i]) != E[i] or self._mul(E[i], self.unit) != E[i]:
                raise AlgebraError(f"{self.name}: unit is not two-sided")
        if self.involution is not None:
            if self._star(self.unit) != self.unit:
                raise AlgebraError(f"{self.name}: involution does not fix 1")
            for i in range(n):
                if self._star(self._star(E[i])) != E[i]:
                    raise AlgebraError(f"{self.name}: involution is not of order 2")
                for j in range(n):
                    lhs = self._star(self._mul(E[i], E[j]))
                    rhs = self._mul(self._star(E[j]), self._star(E[i]))
                    if lhs != rhs:
                        raise AlgebraError(f"{self.name}: involution is not an anti-automorphism")

    def form_gram(self) -> linalg.Matrix:
        """Gram matrix of the trace form ``(x, y) -> tr(x iota(y))`` on the basis."""
        if self._gram is None:
            E = [self.basis(i) for i in range(self.dim)]
            self._gram = [[trace_form(a, b) for b in E] for a in E]
        return self._gram


class GroupAlgebra(StructureAlgebra):
    """Q[G] with basis the element list of ``group`` and involution ``g* = g^-1``."""

    def __init__(self, group: PermGroup):
        n = group.order
        self.group = group
        self.mtable = [[group.mul(i, j) for j in range(n)] for i in range(n)]
        self.dim = n
        self.table = None  # structure constants are implicit in mtable
        self.unit = (1,) + (0,) * (n - 1)
        self.involution = None
        self.name = f"Q[{group.name}]"
        self._gram = None
        self._inv = [group.inv(i) for i in range(n)]

    def _mul(self, x, y):
        out = [0] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.mtable[i]
            for j, b in ys:
                out[row[j]] += a * b
        return tuple(norm(v) for v in out)

    def _star(self, x):
        out = [0] * self.dim
        for i, a in enumerate(x):
            out[self._inv[i]] = a
        return tuple(out)

    def _trace(self, x):
        return norm(self.dim * x[0])

    def involution_matrix(self) -> linalg.Matrix:
        M = linalg.zeros(self.dim, self.dim)
        for j in range(self.dim):
            M[self._inv[j]][j] = 1
        return M

    def verify(self) -> None:  # the group law is verified on construction of the group
        return None

    def form_gram(self):
        return [[self.dim if i == j else 0 for j in range(self.dim)] for i in range(self.dim)]


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: StructureAlgebra
    coords: tuple

    def _check(self, other: "AlgebraElement"):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(norm(a + b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(norm(a - b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return AlgebraElement(self.algebra, tuple(norm(a * other) for a in self.coords))

    def __rmul__(self, scalar):
        return AlgebraElement(self.algebra, tuple(norm(a * scalar) for a in self.coords))

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and other.algebra is self.algebra and other.coords == self.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> dict[str, str]:
        return {str(i): str(Fraction(c)) for i, c in enumerate(self.coords) if c}


def element_from_json(A: StructureAlgebra, data: dict) -> AlgebraElement:
    coords = [0] * A.dim
    for k, v in data.items():
        coords[int(k)] = Fraction(v)
    return A.element(coords)


# -- constructors -----------------------------------------------------------------------


def group_algebra(G: PermGroup) -> GroupAlgebra:
    if G.order > MAX_ALGEBRA_ORDER:
        raise GroupOrderError(f"Q[{G.name}] has dimension {G.order} > {MAX_ALGEBRA_ORDER}")
    if "algebra" not in G._cache:
        G._cache["algebra"] = GroupAlgebra(G)
    return G._cache["algebra"]


def matrix_algebra(n: int, involution: Optional[str] = None) -> StructureAlgebra:
    """M_n(Q) on the basis E_ij (row-major).

    ``involution="split-quaternion"`` (n = 2 only) installs
    ``(a b; c d) -> (d -b; -c a)``; ``"transpose"`` installs the transpose.
    """
    dim = n * n
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        table[i * n + j][k * n + l] = {i * n + l: 1}
    unit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    inv = None
    if involution == "split-quaternion":
        if n != 2:
            raise AlgebraError("the split-quaternion involution lives on M_2")
        # E11 <-> E22, E12 -> -E12, E21 -> -E21
        inv = [[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]]
    elif involution == "transpose":
        inv = linalg.zeros(dim, dim)
        for i in range(n):
            for j in range(n):
                inv[j * n + i][i * n + j] = 1
    elif involution is not None:
        raise AlgebraError(f"unknown involution {involution!r}")
    name = f"M_{n}(Q)" + (f"[{involution}]" if involution else "")
    return StructureAlgebra(dim, table, unit, inv, name)


def split_quaternion_algebra() -> StructureAlgebra:
    return matrix_algebra(2, "split-quaternion")


def upper_triangular_algebra() -> StructureAlgebra:
    """Upper-triangular 2x2 matrices, basis (E11, E12, E22), with
    ``(a b; 0 d) -> (d -b; 0 a)``."""
    # E11*E11=E11, E11*E12=E12, E12*E22=E12, E22*E22=E22
    table = [[{} for _ in range(3)] for _ in range(3)]
    table[0][0] = {0: 1}
    table[0][1] = {1: 1}
    table[1][2] = {1: 1}
    table[2][2] = {2: 1}
    inv = [[0, 0, 1], [0, -1, 0], [1, 0, 0]]
    return StructureAlgebra(3, table, (1, 0, 1), inv, "upper-triangular")


# -- operations -----------------------------------------------------------------------------


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    return AlgebraElement(x.algebra, x.algebra._mul(x.coords, y.coords))


def star(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.algebra, x.algebra._star(x.coords))


def trace(x: AlgebraElement) -> int | Fraction:
    """Trace of left multiplication by ``x``."""
    return x.algebra._trace(x.coords)


def trace_form(x: AlgebraElement, y: AlgebraElement) -> int | Fraction:
    return trace(mul(x, star(y)))


def is_idempotent(e: AlgebraElement) -> bool:
    return mul(e, e) == e


def averaging_idempotent(A: GroupAlgebra, U: Subgroup) -> AlgebraElement:
    """``e_U = (1/|U|) sum_{u in U} u``."""
    c = [0] * A.dim
    w = Fraction(1, U.order)
    for u in U.members:
        c[u] = w
    return A.element(c)


def group_element(A: GroupAlgebra, g: int) -> AlgebraElement:
    return A.basis(g)


def _span(A: StructureAlgebra, vectors: Sequence[Sequence]) -> list[AlgebraElement]:
    R = linalg.row_space(vectors, A.dim)
    return [A.element(r) for r in R]


def left_ideal_basis(xs: Sequence[AlgebraElement]) -> list[AlgebraElement]:
    """Echelon basis of ``sum_i A x_i``."""
    if not xs:
        return []
    A = xs[0].algebra
    vecs = [A._mul(A.basis(b).coords, x.coords) for x in xs for b in range(A.dim)]
    return _span(A, vecs)


def right_ideal_basis(xs: Sequence[AlgebraElement]) -> list[AlgebraElement]:
    if not xs:
        return []
    A = xs[0].algebra
    vecs = [A._mul(x.coords, A.basis(b).coords) for x in xs for b in range(A.dim)]
    return _span(A, vecs)


def span_dim(A: StructureAlgebra, *bases: Sequence[AlgebraElement]) -> int:
    vecs = [x.coords for B in bases for x in B]
    return linalg.rank(vecs, A.dim) if vecs else 0


def same_subspace(L1: Sequence[AlgebraElement], L2: Sequence[AlgebraElement]) -> bool:
    if not L1 and not L2:
        return True
    A = (L1 or L2)[0].algebra
    return linalg.same_span([x.coords for x in L1], [x.coords for x in L2], A.dim)


def check_star_decomposition(e: AlgebraElement) -> dict:
    """Compare ``A e`` and ``A (1 - iota(e))`` against ``A = Ae (+) A(1 - iota(e))``."""
    if not is_idempotent(e):
        raise AlgebraError("check_star_decomposition needs an idempotent")
    A = e.algebra
    Ae = left_ideal_basis([e])
    Af = left_ideal_basis([A.one() - star(e)])
    total = span_dim(A, Ae, Af)
    inter = len(Ae) + len(Af) - total
    return {
        "dim_A": A.dim,
        "dim_Ae": len(Ae),
        "dim_A1me*": len(Af),
        "dim_sum": total,
        "intersection_dim": inter,
        "direct_sum": total == A.dim and inter == 0,
    }


def _require_nondegenerate(A: StructureAlgebra) -> None:
    if isinstance(A, GroupAlgebra):
        return
    if linalg.det(A.form_gram()) == 0:
        raise AlgebraError(f"trace form of {A.name} is degenerate")


def orthogonal_complement_ideal(L: Sequence[AlgebraElement],
                                algebra: Optional[StructureAlgebra] = None) -> list[AlgebraElement]:
    """Basis of ``L^perp`` for the trace form ``(x, y) -> tr(x iota(y))``."""
    A = algebra or L[0].algebra
    _require_nondegenerate(A)
    if not L:
        return [A.basis(i) for i in range(A.dim)]
    gram = A.form_gram()
    # row k, column i: phi(e_i, l_k) = sum_j gram[i][j] (l_k)_j
    rows = [[sum(gram[i][j] * l.coords[j] for j in range(A.dim) if l.coords[j]) for i in range(A.dim)] for l in L]
    ker = linalg.kernel(rows, A.dim)
    return _span(A, ker) if ker else []


def idempotent_generating(L: Sequence[AlgebraElement], algebra: Optional[StructureAlgebra] = None) -> AlgebraElement:
    """An idempotent ``e`` with ``A e = L``.

    ``1`` is split along ``A = L (+) L^perp``; for a group algebra the trace
    form is anisotropic, so the split exists and its ``L``-component is the
    required idempotent.
    """
    A = algebra or L[0].algebra
    if not L:
        return A.zero()
    one = A.one()
    gram = [[trace_form(a, b) for a in L] for b in L]
    rhs = [trace_form(one, b) for b in L]
    c = linalg.solve(gram, rhs, len(L))
    if c is None:
        raise AlgebraError("trace form is degenerate on the ideal; cannot split 1")
    e = A.zero()
    for ck, lk in zip(c, L):
        if ck:
            e = e + ck * lk
    if not is_idempotent(e):
        raise AlgebraError("component of 1 is not idempotent")
    if not same_subspace(left_ideal_basis([e]), L):
        raise AlgebraError("A e differs from the requested ideal (input is not a left ideal?)")
    return e


def inverse(x: AlgebraElement) -> Optional[AlgebraElement]:
    A = x.algebra
    y = linalg.solve(A.left_mult_matrix(x), list(A.unit), A.dim)
    if y is None:
        return None
    y = A.element(y)
    return y if mul(x, y) == A.one() else None


def random_invertible(A: StructureAlgebra, rng: random.Random, terms: int = 3) -> AlgebraElement:
    """``1 + sum c_i b_i`` with a few random basis elements, retried until invertible."""
    while True:
        c = list(A.unit)
        for _ in range(terms):
            c[rng.randrange(A.dim)] += rng.choice([-2, -1, 1, 2])
        x = A.element(c)
        if inverse(x) is not None:
            return x


def conjugated_idempotent(A: GroupAlgebra, U: Subgroup, seed: int) -> AlgebraElement:
    """``x e_U x^-1`` for a seeded random invertible ``x``."""
    rng = random.Random(seed)
    x = random_invertible(A, rng)
    return mul(mul(x, averaging_idempotent(A, U)), inverse(x))


def orthogonal_sum(f: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    """``f + g - f g`` where ``g`` generates ``A z (1 - f)``.

    Since ``g f = 0`` this is an idempotent whose left ideal contains both
    ``A f`` and ``A g``.
    """
    A = f.algebra
    L = left_ideal_basis([mul(z, A.one() - f)])
    g = idempotent_generating(L, A)
    return f + g - mul(f, g)


def random_idempotents(A: GroupAlgebra, subgroups: Sequence[Subgroup], count: int, seed: int,
                       max_attempts: Optional[int] = None) -> list[AlgebraElement]:
    """Distinct idempotents of ``A`` built from averaging idempotents.

    The pool starts with ``e_U`` for each subgroup and ``1 - e_U``, plus
    products of commuting pairs.  Seeded conjugates ``x f x^-1`` and
    orthogonal sums extend it.  Groups whose
    rational group algebra is a product of division algebras (Q8, say) have
    only finitely many idempotents, so the result may be shorter than
    ``count`` once ``max_attempts`` random draws produce nothing new.
    """
    rng = random.Random(seed)
    seen = set()

    def push(target, e):
        if e.coords not in seen:
            seen.add(e.coords)
            target.append(e)

    base = [averaging_idempotent(A, U) for U in subgroups]
    fixed: list[AlgebraElement] = []
    for e in base:
        push(fixed, e)
    for e in base:
        push(fixed, A.one() - e)
    for i, e in enumerate(base):
        for f in base[i + 1:]:
            ef = mul(e, f)
            if ef == mul(f, e):
                push(fixed, ef)
                push(fixed, A.one() - ef)
    drawn: list[AlgebraElement] = []
    attempts = 0
    limit = max_attempts if max_attempts is not None else 20 * count
    want = max(count - count // 2, count - len(fixed))
    while len(drawn) < want and attempts < limit:
        attempts += 1
        pool = fixed + drawn
        f = pool[rng.randrange(len(pool))]
        x = random_invertible(A, rng)
        f = mul(mul(x, f), inverse(x))
        kind = attempts % 3
        if kind == 0:
            push(drawn, f)
        elif kind == 1:
            push(drawn, A.one() - f)
        else:
            z = random_invertible(A, rng)
            push(drawn, orthogonal_sum(f, z * base[rng.randrange(len(base))]))
    head = count - len(drawn)
    return (fixed[:head] + drawn + fixed[head:])[:count]


# -- surgery bookkeeping ---------------------------------------------------------------------


def ideal_character(A: GroupAlgebra, e: AlgebraElement) -> list:
    """Character of the left module ``Q[G] e``, one value per conjugacy class.

    ``x -> g x e`` is ``g`` on ``A e`` and zero on ``A (1 - e)``, so its trace on
    ``A`` is the value at ``g``: ``sum_h [coefficient of h in g h e]``.
    """
    G = A.group
    vals = []
    for cls in conjugacy_classes(G):
        g = cls[0]
        ginv = G.inv(g)
        total = 0
        for h in range(G.order):
            c = e.coords[G.mul(G.mul(G.inv(h), ginv), h)]
            if c:
                total += c
        vals.append(norm(total))
    return vals


@dataclass
class SurgeryPlan:
    group: PermGroup
    idempotent: AlgebraElement
    denominator: int
    winding_numbers: list[int]
    homology_ledger: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def reconstructs(self) -> bool:
        A = self.idempotent.algebra
        lhs = A.element([Fraction(n, self.denominator) for n in self.winding_numbers])
        return lhs == A.one() - self.idempotent


def surgery_plan(G: PermGroup, e: AlgebraElement) -> SurgeryPlan:
    """Winding numbers ``n_g`` and denominator ``d`` with ``1 - e = (1/d) sum n_g g``."""
    A = group_algebra(G)
    if e.algebra is not A:
        raise AlgebraError("idempotent must live in Q[G] of the given group")
    if not is_idempotent(e):
        raise AlgebraError("surgery_plan needs an idempotent")
    if e == A.one():
        raise AlgebraError("e = 1 is excluded: the construction needs e != 1")
    f = A.one() - e
    den = 1
    for c in f.coords:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in f.coords]
    g = 0
    for x in ints:
        g = gcd(g, x)
    d = Fraction(den, g)
    if d.denominator != 1:
        raise AlgebraError(f"1 - e has content {1 / d}; no integral denominator exists")
    n = [x // g for x in ints]
    notes = ["homology ledger is algebraic bookkeeping only - no geometry computed; "
             "characters are relative to H1(N0)"]
    if e.is_zero():
        notes.append("e = 0 is permitted; whether it corresponds to a meaningful surgery is not addressed")
    regular = ideal_character(A, A.one())
    added = ideal_character(A, star(e))
    zero = [0] * len(regular)
    ledger = [
        {"stage": "N0", "module": "H1(N0)", "summand": "0", "character": zero},
        {"stage": "N1", "module": "H1(N0) + Q[G]", "summand": "Q[G] (regular)", "character": regular},
        {"stage": "N2", "module": "H1(N1) + Q[G]e*", "summand": "Q[G]e*",
         "character": [norm(a + b) for a, b in zip(regular, added)]},
        {"stage": "N3", "module": "H1(N2) - Q[G] = H1(N0) + Q[G]e*", "summand": "-Q[G] (ker k*)",
         "character": added},
    ]
    return SurgeryPlan(G, e, int(d), n, ledger, notes)


def check_filling_span(G: PermGroup, e: AlgebraElement) -> bool:
    """Whether ``Q[G](1-e*)m + Q[G]e l + Q[G](m+l)`` is all of ``Q[G]m (+) Q[G]l``."""
    A = group_algebra(G)
    if not is_idempotent(e):
        raise AlgebraError("check_filling_span needs an idempotent")
    n = A.dim
    a = (A.one() - star(e)).coords
    b = e.coords
    vecs = []
    for g in range(n):
        x = A.basis(g).coords
        vecs.append(list(A._mul(x, a)) + [0] * n)
        vecs.append([0] * n + list(A._mul(x, b)))
        vecs.append(list(x) + list(x))
    return linalg.rank(vecs, 2 * n) == 2 * n
