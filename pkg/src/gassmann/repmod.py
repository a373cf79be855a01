"""Matrix representations of finite groups over Q.

A ``Representation`` produces ``rho(g)`` on demand and memoises it.  Besides
the matrices it remembers how it was built (permutation module, submodule of
another module, inflation, direct sum), which is what the canonical pairing
and the embedding into the group algebra need.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import linalg
from .algebra import AlgebraElement, GroupAlgebra, group_algebra
from .groups import (PermGroup, Subgroup, class_index, conjugacy_classes, coset_action,
                     coset_lookup, cosets, make_named_group, make_named_subgroup)
from .linalg import Matrix, norm


class RepresentationError(ValueError):
    pass


class Representation:
    def __init__(self, group: PermGroup, dim: int, builder: Callable[[int], Matrix], label: str,
                 kind: str = "generic", **meta):
        self.group = group
        self.dim = dim
        self.label = label
        self.kind = kind
        self.meta = meta
        self._builder = builder
        self._mats: dict[int, Matrix] = {}

    def __repr__(self) -> str:
        return f"Representation({self.label}, dim={self.dim}, group={self.group.name})"

    def matrix(self, g: int) -> Matrix:
        m = self._mats.get(g)
        if m is None:
            m = self._builder(g)
            self._mats[g] = m
        return m

    def generator_matrices(self) -> list[Matrix]:
        return [self.matrix(g) for g in self.group.generator_indices]

    def check_homomorphism(self, exhaustive_limit: int = 2000) -> bool:
        G = self.group
        if self.matrix(0) != linalg.identity(self.dim):
            return False
        if G.order <= exhaustive_limit:
            pairs = ((a, b) for a in range(G.order) for b in range(G.order))
        else:
            gens = G.generator_indices
            pairs = ((a, b) for a in gens for b in gens)
        return all(linalg.matmul(self.matrix(a), self.matrix(b)) == self.matrix(G.mul(a, b)) for a, b in pairs)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "group": self.group.name,
            "dim": self.dim,
            "generators": [[[str(Fraction(x)) for x in row] for row in M] for M in self.generator_matrices()],
        }


def from_generator_matrices(G: PermGroup, mats: Sequence[Matrix], label: str = "V") -> Representation:
    """Representation determined by the images of ``G``'s generators."""
    dim = len(mats[0]) if mats else 0
    mats = [[[norm(x) for x in row] for row in M] for M in mats]

    def build(g):
        M = linalg.identity(dim)
        for s in G.word(g):
            M = linalg.matmul(M, mats[s])
        return M

    return Representation(G, dim, build, label)


@dataclass(frozen=True)
class Character:
    group: PermGroup
    values: tuple

    def __add__(self, other: "Character") -> "Character":
        return Character(self.group, tuple(norm(a + b) for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Character") -> "Character":
        return Character(self.group, tuple(norm(a - b) for a, b in zip(self.values, other.values)))

    def __mul__(self, c) -> "Character":
        return Character(self.group, tuple(norm(a * c) for a in self.values))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and other.group is self.group and other.values == self.values

    def __hash__(self) -> int:
        return hash(self.values)

    def at(self, g: int):
        return self.values[class_index(self.group)[g]]

    @property
    def degree(self):
        return self.values[0]

    def to_json(self) -> list[str]:
        return [str(Fraction(v)) for v in self.values]


def zero_character(G: PermGroup) -> Character:
    return Character(G, (0,) * len(conjugacy_classes(G)))


def character_from_json(G: PermGroup, data: Sequence[str]) -> Character:
    vals = tuple(norm(Fraction(v)) for v in data)
    if len(vals) != len(conjugacy_classes(G)):
        raise RepresentationError(f"{G.name} has {len(conjugacy_classes(G))} classes, got {len(vals)} values")
    return Character(G, vals)


# -- permutation modules ----------------------------------------------------------------


def _perm_matrix(sigma: Sequence[int]) -> Matrix:
    n = len(sigma)
    M = linalg.zeros(n, n)
    for j, i in enumerate(sigma):
        M[i][j] = 1
    return M


def permutation_module(G: PermGroup, U: Subgroup) -> Representation:
    """``Q[G/U]`` on the basis of left cosets (in ``groups.cosets`` order)."""
    n = len(cosets(G, U))
    return Representation(G, n, lambda g: _perm_matrix(coset_action(G, U, g)), f"Q[G/{U.name}]",
                          kind="perm", subgroup=U)


def trivial_module(G: PermGroup) -> Representation:
    return Representation(G, 1, lambda g: [[1]], "trivial", kind="perm", subgroup=Subgroup(G, range(G.order), "G"))


def regular_module(G: PermGroup) -> Representation:
    return permutation_module(G, Subgroup(G, [0], "1"))


def zero_module(G: PermGroup) -> Representation:
    return Representation(G, 0, lambda g: [], "0", kind="sum", parts=())


def character_of(V: Representation) -> Character:
    vals = []
    for cls in conjugacy_classes(V.group):
        M = V.matrix(cls[0])
        vals.append(norm(sum(M[i][i] for i in range(V.dim))))
    return Character(V.group, tuple(vals))


def perm_character(G: PermGroup, U: Subgroup) -> Character:
    """Number of left cosets of ``U`` fixed by each class representative."""
    key = ("perm_char", U.members)
    if key not in G._cache:
        vals = []
        for cls in conjugacy_classes(G):
            sigma = coset_action(G, U, cls[0])
            vals.append(sum(1 for i, j in enumerate(sigma) if i == j))
        G._cache[key] = Character(G, tuple(vals))
    return G._cache[key]


# -- equivariant maps -----------------------------------------------------------------------


def is_equivariant(f: Matrix, V: Representation, W: Representation) -> bool:
    """``f rho_V(s) = rho_W(s) f`` on the generators (``f`` is dim W x dim V)."""
    for s in V.group.generator_indices:
        lhs = linalg.matmul(f, V.matrix(s)) if f else []
        rhs = linalg.matmul(W.matrix(s), f) if W.dim else []
        if lhs != rhs:
            return False
    return True


def hom_space(V: Representation, W: Representation) -> list[Matrix]:
    """Basis of the G-equivariant maps ``V -> W`` as (dim W x dim V) matrices."""
    if V.group is not W.group:
        raise RepresentationError("hom_space needs modules over the same group")
    dv, dw = V.dim, W.dim
    if dv == 0 or dw == 0:
        return []
    nvar = dv * dw
    rows = []
    for s in V.group.generator_indices:
        A, B = V.matrix(s), W.matrix(s)
        for i in range(dw):
            for j in range(dv):
                row = [0] * nvar
                # (T A)[i][j] - (B T)[i][j]
                for k in range(dv):
                    if A[k][j]:
                        row[i * dv + k] += A[k][j]
                for k in range(dw):
                    if B[i][k]:
                        row[k * dv + j] -= B[i][k]
                if any(row):
                    rows.append(row)
    ker = linalg.kernel(rows, nvar) if rows else [[1 if t == v else 0 for t in range(nvar)] for v in range(nvar)]
    return [[vec[i * dv:(i + 1) * dv] for i in range(dw)] for vec in ker]


def submodule(V: Representation, basis: Sequence[Sequence], label: str) -> Representation:
    """Restriction of ``V`` to the G-stable span of ``basis``."""
    R, pivots = linalg.rref([list(b) for b in basis], V.dim)
    for s in V.group.generator_indices:
        M = V.matrix(s)
        for r in R:
            if linalg.coordinates(R, pivots, linalg.matvec(M, r)) is None:
                raise RepresentationError("span is not G-stable")
    cols = linalg.transpose(R, V.dim) if R else []

    def build(g):
        image = linalg.matmul(V.matrix(g), cols) if R else []
        # columns of image are rho(g) r_j; their coordinates are read at the pivots
        return [[image[c][j] for j in range(len(R))] for c in pivots]

    return Representation(V.group, len(R), build, label, kind="sub", ambient=V, basis=R)


def kernel_module(f: Matrix, V: Representation, W: Representation, label: str = "ker") -> Representation:
    """``ker f`` as a submodule of ``V`` for an equivariant ``f: V -> W``."""
    if not is_equivariant(f, V, W):
        raise RepresentationError("map is not G-equivariant")
    ker = linalg.kernel(f, V.dim) if f else [[1 if i == j else 0 for j in range(V.dim)] for i in range(V.dim)]
    if not ker:
        return Representation(V.group, 0, lambda g: [], label, kind="sub", ambient=V, basis=[])
    return submodule(V, ker, label)


def summation_map(G: PermGroup, U: Subgroup, B: Subgroup) -> Matrix:
    """The map ``Q[G/U] -> Q[G/B]``, ``gU -> gB``, for ``U <= B``."""
    if not set(U.members) <= set(B.members):
        raise RepresentationError("summation map needs U <= B")
    where = coset_lookup(G, B)
    cu = cosets(G, U)
    M = linalg.zeros(len(cosets(G, B)), len(cu))
    for j, block in enumerate(cu):
        M[where[block[0]]][j] = 1
    return M


def _kernel_of_summation(G: PermGroup, U: Subgroup, B: Subgroup, label: str, expected_dim: int) -> Representation:
    V = permutation_module(G, U)
    W = permutation_module(G, B)
    K = kernel_module(summation_map(G, U, B), V, W, label)
    if K.dim != expected_dim:
        raise RepresentationError(f"{label}: dimension {K.dim}, expected {expected_dim}")
    if hom_space(K, W):
        raise RepresentationError(f"{label}: Hom({label}, Q[G/{B.name}]) is nonzero")
    K.meta["quotient_module"] = W
    return K


def module_Ip(p: int, G: Optional[PermGroup] = None) -> Representation:
    """``I_p``: kernel of ``Q[G/U_p] -> Q[G/B_p]`` for ``G = GL_2(F_p)``; dimension p + 1."""
    G = G or make_named_group(f"gl2({p})")
    U = make_named_subgroup(G, "up")
    B = make_named_subgroup(G, "borel")
    return _kernel_of_summation(G, U, B, f"I{p}", p + 1)


def module_I2(G: Optional[PermGroup] = None) -> Representation:
    """``I_2``: kernel of ``Q[G/U_2] -> Q[G/H]`` for the affine group of Z/8Z; dimension 4."""
    G = G or make_named_group("aff8")
    U = make_named_subgroup(G, "u2")
    H = make_named_subgroup(G, "h")
    return _kernel_of_summation(G, U, H, "I2", 4)


# -- fixed spaces and pairings ------------------------------------------------------------------


def fixed_subspace(V: Representation, U: Subgroup) -> list[list[int]]:
    """Basis of ``V^U``: the column space of ``sum_{u in U} rho(u)``."""
    if V.dim == 0:
        return []
    P = linalg.zeros(V.dim, V.dim)
    tr = 0
    for u in U.members:
        M = V.matrix(u)
        for i in range(V.dim):
            Pi, Mi = P[i], M[i]
            for j in range(V.dim):
                if Mi[j]:
                    Pi[j] += Mi[j]
            tr += M[i][i]
    _, _, image = linalg.rank_kernel_image([[norm(x) for x in row] for row in P])
    expected = Fraction(tr, U.order)
    if expected != len(image):
        raise RepresentationError(f"fixed space dimension {len(image)} != character average {expected}")
    return image


@dataclass
class Pairing:
    representation: Representation
    gram: Matrix
    source: str = "canonical"

    def check(self) -> bool:
        n = self.representation.dim
        g = self.gram
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            return False
        for M in self.representation.generator_matrices():
            if linalg.matmul(linalg.transpose(M, n), linalg.matmul(g, M)) != g:
                return False
        return linalg.det(g) != 0 if n else True

    def value(self, x: Sequence, y: Sequence):
        return norm(sum(a * gij * b for a, row in zip(x, self.gram) for gij, b in zip(row, y) if a and gij and b))


def averaged_gram(V: Representation, M0: Matrix) -> Matrix:
    """``sum_g rho(g)^T M0 rho(g)``."""
    n = V.dim
    acc = linalg.zeros(n, n)
    for g in range(V.group.order):
        R = V.matrix(g)
        T = linalg.matmul(linalg.transpose(R, n), linalg.matmul(M0, R))
        for i in range(n):
            Ai, Ti = acc[i], T[i]
            for j in range(n):
                if Ti[j]:
                    Ai[j] += Ti[j]
    return [[norm(x) for x in row] for row in acc]


def invariant_pairing(V: Representation, seed: int, budget: int = 32, spread: int = 3) -> Pairing:
    """Average a seeded random symmetric integer matrix over G until non-degenerate."""
    rng = random.Random(seed)
    n = V.dim
    for _ in range(budget):
        M0 = linalg.zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                M0[i][j] = M0[j][i] = rng.randint(-spread, spread)
        gram = averaged_gram(V, M0)
        if n == 0 or linalg.det(gram) != 0:
            return Pairing(V, gram, f"random(seed={seed})")
    raise RepresentationError(f"no non-degenerate invariant pairing found in {budget} tries")


def canonical_pairing(V: Representation, seed: int = 1) -> Pairing:
    """Coset pairing for (submodules of) permutation modules, propagated through
    inflations and direct sums; an averaged random pairing otherwise."""
    gram = _canonical_gram(V, seed)
    return Pairing(V, gram, "canonical")


def _canonical_gram(V: Representation, seed: int) -> Matrix:
    if V.kind == "perm":
        return linalg.identity(V.dim)
    if V.kind == "sub":
        amb = _canonical_gram(V.meta["ambient"], seed)
        B = V.meta["basis"]
        if not B:
            return []
        return linalg.matmul(B, linalg.matmul(amb, linalg.transpose(B)))
    if V.kind == "inflate":
        return _canonical_gram(V.meta["source"], seed)
    if V.kind == "sum":
        parts = V.meta["parts"]
        return linalg.block_diag([_canonical_gram(P, seed) for P in parts], [P.dim for P in parts])
    return invariant_pairing(V, seed).gram


# -- inflation, sums, embedding ---------------------------------------------------------------


def inflate(V: Representation, proj: Sequence[int], G: PermGroup, label: Optional[str] = None) -> Representation:
    """Pull ``V`` back along a homomorphism ``G -> V.group`` given as an index map."""
    return Representation(G, V.dim, lambda g: V.matrix(proj[g]), label or f"Inf({V.label})",
                          kind="inflate", source=V, proj=proj)


def direct_sum(Vs: Sequence[Representation], label: Optional[str] = None) -> Representation:
    Vs = [V for V in Vs]
    if not Vs:
        raise RepresentationError("direct_sum needs at least one module")
    G = Vs[0].group
    if any(V.group is not G for V in Vs):
        raise RepresentationError("direct_sum needs modules over the same group")
    sizes = [V.dim for V in Vs]
    return Representation(G, sum(sizes), lambda g: linalg.block_diag([V.matrix(g) for V in Vs], sizes),
                          label or " + ".join(V.label for V in Vs), kind="sum", parts=tuple(Vs))


def _perm_source(V: Representation) -> tuple[Representation, list]:
    """The permutation module ``V`` sits in, and ``V``'s basis in its coordinates."""
    if V.kind == "perm":
        return V, [[1 if i == j else 0 for j in range(V.dim)] for i in range(V.dim)]
    if V.kind == "sub" and V.meta["ambient"].kind == "perm":
        return V.meta["ambient"], V.meta["basis"]
    raise RepresentationError("embedding needs a permutation module or a submodule of one")


def coset_image(A: GroupAlgebra, U: Subgroup, v: Sequence, twist: Optional[AlgebraElement] = None) -> AlgebraElement:
    """Image of a coset vector under ``gU -> g e_U`` (then right-multiplied by ``twist``)."""
    G = A.group
    c = [0] * A.dim
    w = Fraction(1, U.order)
    for coef, block in zip(v, cosets(G, U)):
        if coef:
            for x in block:
                c[x] += coef * w
    x = A.element(c)
    return x * twist if twist is not None else x


def embed_in_group_algebra(V: Representation, twist: Optional[AlgebraElement] = None) -> list[AlgebraElement]:
    """Left ideal of ``Q[G]`` isomorphic to ``V`` via ``Q[G/U] = Q[G] e_U``.

    ``twist`` right-multiplies the image (a left-module map), which lets
    callers move a second copy of a module off the first.
    """
    from .algebra import left_ideal_basis, span_dim

    P, basis = _perm_source(V)
    A = group_algebra(V.group)
    U = P.meta["subgroup"]
    images = [coset_image(A, U, b, twist) for b in basis]
    if not images:
        return []
    L = left_ideal_basis(images)
    if len(L) != V.dim or span_dim(A, images) != V.dim:
        raise RepresentationError(f"image has dimension {len(L)}, module has dimension {V.dim}")
    return L
