"""Relations between permutation modules.

A relation ``plus - minus`` is a pair of subgroup multisets.  Over Q it holds
exactly when the permutation characters agree.  Over ``Z_(q)`` we only search
for a witness: an integral G-map between the two permutation modules whose
determinant is a unit mod ``q``.  A failed search is *inconclusive*, never a
refutation.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg
from .groups import (PermGroup, Subgroup, coset_action, coset_lookup, cosets, direct_product, double_cosets,
                     image_subgroup, is_homomorphism, is_normal, product_subgroup, quotient_group, _is_prime)
from .repmod import Character, perm_character, zero_character

DEFAULT_WITNESS_BUDGET = 512
EXHAUSTIVE_LIMIT = 20


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    group: PermGroup
    plus: tuple
    minus: tuple

    def __post_init__(self):
        for U in self.plus + self.minus:
            if U.parent is not self.group:
                raise RelationError(f"subgroup {U.name} does not belong to {self.group.name}")

    def __str__(self) -> str:
        lhs = " + ".join(U.name for U in self.plus) or "0"
        rhs = " + ".join(U.name for U in self.minus) or "0"
        return f"{lhs} - {rhs} @ {self.group.name}"

    def to_json(self) -> dict:
        return {"group": self.group.name, "plus": [U.name for U in self.plus],
                "minus": [U.name for U in self.minus]}


def relation(G: PermGroup, plus: Sequence[Subgroup], minus: Sequence[Subgroup]) -> Relation:
    return Relation(G, tuple(plus), tuple(minus))


def side_character(G: PermGroup, subgroups: Sequence[Subgroup]) -> Character:
    total = zero_character(G)
    for U in subgroups:
        total = total + perm_character(G, U)
    return total


def is_Q_relation(theta: Relation) -> bool:
    G = theta.group
    return side_character(G, theta.plus) == side_character(G, theta.minus)


def _is_trivial(theta: Relation) -> bool:
    key = lambda U: U.members
    return sorted(map(key, theta.plus)) == sorted(map(key, theta.minus))


# -- integral Hom spaces ---------------------------------------------------------------------------


def _offsets(G: PermGroup, subgroups: Sequence[Subgroup]) -> list[int]:
    out, off = [], 0
    for U in subgroups:
        out.append(off)
        off += len(cosets(G, U))
    return out + [off]


def double_coset_map(G: PermGroup, U: Subgroup, W: Subgroup, D: Sequence[int]) -> list[tuple[int, int]]:
    """Nonzero entries (row, col) of the map ``Z[G/U] -> Z[G/W]`` attached to
    the double coset ``D = U g W``: entry [yW][xU] is 1 iff ``x^-1 y`` lies in ``D``."""
    where = coset_lookup(G, W)
    entries = set()
    for j, block in enumerate(cosets(G, U)):
        x = block[0]
        for d in D:
            entries.add((where[G.mul(x, d)], j))
    return sorted(entries)


def hom_basis(theta: Relation) -> tuple[list[list[tuple[int, int]]], int]:
    """Double-coset basis of ``Hom_Z[G](+Z[G/U_i], +Z[G/U'_j])`` as sparse
    block matrices, plus the common dimension."""
    G = theta.group
    col_off = _offsets(G, theta.plus)
    row_off = _offsets(G, theta.minus)
    if col_off[-1] != row_off[-1]:
        raise RelationError("the two sides have different total index")
    basis = []
    for i, U in enumerate(theta.plus):
        for j, W in enumerate(theta.minus):
            for D in double_cosets(G, U, W):
                basis.append([(r + row_off[j], c + col_off[i]) for r, c in double_coset_map(G, U, W, D)])
    return basis, col_off[-1]


def _assemble(basis, coeffs, n: int) -> list[list[int]]:
    M = [[0] * n for _ in range(n)]
    for c, entries in zip(coeffs, basis):
        if c:
            for r, k in entries:
                M[r][k] += c
    return M


def _block_perm_matrix(G: PermGroup, subgroups: Sequence[Subgroup], g: int) -> list[list[int]]:
    off = _offsets(G, subgroups)
    n = off[-1]
    M = [[0] * n for _ in range(n)]
    for U, o in zip(subgroups, off):
        for j, i in enumerate(coset_action(G, U, g)):
            M[o + i][o + j] = 1
    return M


@dataclass
class LocalWitness:
    q: int
    matrix: list
    det_mod_q: int
    method: str
    samples: int
    hom_dim: int

    def to_json(self) -> dict:
        return {"q": self.q, "det_mod_q": self.det_mod_q, "method": self.method, "samples": self.samples,
                "hom_dim": self.hom_dim, "matrix": self.matrix}


@dataclass
class Inconclusive:
    q: int
    samples: int
    hom_dim: int
    reason: str = "no unit determinant found within budget"

    def to_json(self) -> dict:
        return {"q": self.q, "inconclusive": True, "samples": self.samples, "hom_dim": self.hom_dim,
                "reason": self.reason}


def verify_witness(theta: Relation, w: LocalWitness) -> bool:
    """Recheck equivariance on every generator and the determinant mod q from scratch."""
    G = theta.group
    M = w.matrix
    for s in G.generator_indices:
        A = _block_perm_matrix(G, theta.plus, s)
        B = _block_perm_matrix(G, theta.minus, s)
        if linalg.matmul(M, A) != linalg.matmul(B, M):
            return False
    d = linalg.det_mod(M, w.q)
    return d != 0 and d == w.det_mod_q


def zq_witness(theta: Relation, q: int, budget: int = DEFAULT_WITNESS_BUDGET, seed: int = 1):
    """Search for a ``Z_(q)``-isomorphism between the two permutation modules.

    Returns a verified ``LocalWitness`` or ``Inconclusive``.
    """
    if not _is_prime(q):
        raise RelationError(f"{q} is not prime")
    if not is_Q_relation(theta):
        raise RelationError(f"{theta} is not a Q-relation")
    G = theta.group
    if _is_trivial(theta):
        # pair each plus term with an equal minus term
        plus_off = _offsets(G, theta.plus)
        minus_off = _offsets(G, theta.minus)
        n = plus_off[-1]
        used = [False] * len(theta.minus)
        M = [[0] * n for _ in range(n)]
        for i, U in enumerate(theta.plus):
            j = next(k for k, W in enumerate(theta.minus) if not used[k] and W.members == U.members)
            used[j] = True
            for t in range(U.index):
                M[minus_off[j] + t][plus_off[i] + t] = 1
        w = LocalWitness(q, M, linalg.det_mod(M, q), "identity", 0, 0)
        if not verify_witness(theta, w):
            raise AssertionError("identity witness failed verification")
        return w
    basis, n = hom_basis(theta)
    k = len(basis)
    if budget <= 0:
        return Inconclusive(q, 0, k, "witness budget is 0")
    if q == 2 and k < EXHAUSTIVE_LIMIT:
        candidates = itertools.islice(itertools.product((0, 1), repeat=k), 1, None)
        method = "exhaustive"
    else:
        rng = random.Random(f"zq:{seed}:{q}")
        candidates = ([rng.randrange(q) for _ in range(k)] for _ in range(budget))
        method = "sampled"
    tried = 0
    for coeffs in candidates:
        tried += 1
        M = _assemble(basis, coeffs, n)
        d = linalg.det_mod(M, q)
        if d:
            w = LocalWitness(q, M, d, method, tried, k)
            if not verify_witness(theta, w):
                raise AssertionError("witness failed independent verification")
            return w
    return Inconclusive(q, tried, k)


# -- deflation and products ------------------------------------------------------------------


def deflate_along(theta: Relation, H: PermGroup, hom: Sequence[int], check_hom: bool = False) -> Relation:
    """Push ``theta`` forward along a surjection ``G -> H`` (index map)."""
    G = theta.group
    if check_hom and not is_homomorphism(G, H, hom):
        raise RelationError("map is not a homomorphism")
    out = Relation(H, tuple(image_subgroup(H, U, hom) for U in theta.plus),
                   tuple(image_subgroup(H, U, hom) for U in theta.minus))
    if is_Q_relation(theta) and not is_Q_relation(out):
        raise AssertionError("deflation of a Q-relation is not a Q-relation")
    return out


def deflate(theta: Relation, N: Subgroup, quotient: Optional[tuple] = None) -> tuple[Relation, PermGroup, list[int]]:
    """Deflation ``Def_{G/N}``; returns ``(relation, quotient, projection)``."""
    G = theta.group
    if not is_normal(G, N):
        raise RelationError(f"{N.name} is not normal in {G.name}")
    Q, proj = quotient if quotient is not None else quotient_group(G, N)
    return deflate_along(theta, Q, proj), Q, proj


def product_relation(t1: Relation, t2: Relation, G: Optional[PermGroup] = None) -> Relation:
    """``U x U~ - U' x U~'`` over ``G1 x G2``."""
    for t in (t1, t2):
        if len(t.plus) != 1 or len(t.minus) != 1:
            raise RelationError("product_relation takes single-term relations U - U'")
        if not is_Q_relation(t):
            raise RelationError(f"{t} is not a Q-relation")
    G = G or direct_product([t1.group, t2.group])
    if G.kind != "product" or [F for F in G.factors] != [t1.group, t2.group]:
        raise RelationError("target is not the product of the two groups")
    out = Relation(G, (product_subgroup(G, [t1.plus[0], t2.plus[0]]),),
                   (product_subgroup(G, [t1.minus[0], t2.minus[0]]),))
    if not is_Q_relation(out):
        raise AssertionError("product of Q-relations is not a Q-relation")
    return out


def product_relation_many(thetas: Sequence[Relation], G: Optional[PermGroup] = None) -> Relation:
    """Iterated product over several factors (a single flat direct product)."""
    if len(thetas) == 1:
        return thetas[0]
    for t in thetas:
        if len(t.plus) != 1 or len(t.minus) != 1:
            raise RelationError("product_relation takes single-term relations U - U'")
    G = G or direct_product([t.group for t in thetas])
    return Relation(G, (product_subgroup(G, [t.plus[0] for t in thetas]),),
                    (product_subgroup(G, [t.minus[0] for t in thetas]),))
