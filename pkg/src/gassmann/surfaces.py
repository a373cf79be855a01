"""Rational characters of G acting on H_1 of a closed surface.

For a G-cover of a genus-``tau`` surface branched over points with cyclic
stabilisers ``S``, the character on H_1 is

    2 perm_G + (2 tau - 2 + #S) perm_1 - sum_{P in S} perm_{S_P}.

Permutation characters of cyclic subgroups (one per conjugacy class) form a
basis of the rational virtual characters, so the formula can be inverted.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .groups import PermGroup, Subgroup, closure, cyclic_subgroup_classes, whole
from .linalg import norm
from .repmod import Character, perm_character


class ArtinError(ValueError):
    pass


def cyclic_perm_matrix(G: PermGroup) -> list[list[int]]:
    """Rows: conjugacy classes; columns: ``perm_C`` for the cyclic class representatives."""
    cols = [perm_character(G, C).values for C in cyclic_subgroup_classes(G)]
    return [list(row) for row in zip(*cols)]


def artin_rank(G: PermGroup) -> int:
    return linalg.rank(cyclic_perm_matrix(G))


def artin_decompose(chi: Character) -> dict[Subgroup, int | Fraction]:
    """Coefficients ``a_C`` with ``chi = sum a_C perm_C``, keyed by class representative."""
    G = chi.group
    reps = cyclic_subgroup_classes(G)
    M = cyclic_perm_matrix(G)
    if linalg.rank(M, len(reps)) != len(reps):
        raise AssertionError(f"cyclic permutation characters of {G.name} are linearly dependent")
    x = linalg.solve(M, list(chi.values), len(reps))
    if x is None:
        raise ArtinError("character is not a rational combination of cyclic permutation characters")
    return {C: norm(a) for C, a in zip(reps, x)}


def cyclic_class_rep(G: PermGroup, U: Subgroup) -> Subgroup:
    """The stored representative of the conjugacy class of the cyclic subgroup ``U``."""
    members = set(U.members)
    for C in cyclic_subgroup_classes(G):
        if C.order != U.order:
            continue
        if any(all(G.conj(g, c) in members for c in C.members) for g in range(G.order)):
            return C
    raise ArtinError(f"{U.name} is not a cyclic subgroup of {G.name}")


@dataclass(frozen=True)
class RamificationData:
    genus: int
    stabilizers: tuple  # of Subgroup, nontrivial and cyclic

    def canonical(self) -> "RamificationData":
        """Replace each stabiliser by its class representative and sort."""
        if not self.stabilizers:
            return self
        G = self.stabilizers[0].parent
        reps = cyclic_subgroup_classes(G)
        pos = {C.members: k for k, C in enumerate(reps)}
        canon = [cyclic_class_rep(G, U) for U in self.stabilizers]
        return RamificationData(self.genus, tuple(sorted(canon, key=lambda C: pos[C.members])))

    def to_json(self) -> dict:
        return {"genus": self.genus, "stabilizers": [U.name for U in self.stabilizers],
                "branch_points": len(self.stabilizers)}


@dataclass(frozen=True)
class NotRealizable:
    reason: str

    def to_json(self) -> dict:
        return {"realizable": False, "reason": self.reason}


def surface_character(G: PermGroup, data: RamificationData) -> Character:
    trivial_sub = Subgroup(G, [0], "1")
    s = len(data.stabilizers)
    chi = perm_character(G, whole(G)) * 2 + perm_character(G, trivial_sub) * (2 * data.genus - 2 + s)
    for U in data.stabilizers:
        if U.order == 1:
            raise ArtinError("stabilisers must be nontrivial")
        chi = chi - perm_character(G, U)
    return chi


def recover_ramification(G: PermGroup, chi: Character) -> RamificationData | NotRealizable:
    psi = chi - perm_character(G, whole(G)) * 2
    try:
        coeffs = artin_decompose(psi)
    except ArtinError as exc:
        return NotRealizable(str(exc))
    stabs: list[Subgroup] = []
    a1 = 0
    for C, a in coeffs.items():
        if C.order == 1:
            a1 = a
            continue
        if not isinstance(a, int) or a > 0:
            return NotRealizable(f"coefficient {a} at {C.name} is not a nonpositive integer")
        stabs.extend([C] * (-a))
    if not isinstance(a1, int):
        return NotRealizable(f"coefficient {a1} at the trivial subgroup is not an integer")
    twice_tau = a1 + 2 - len(stabs)
    if twice_tau < 0 or twice_tau % 2:
        return NotRealizable(f"genus {Fraction(twice_tau, 2)} is not a nonnegative integer")
    return RamificationData(twice_tau // 2, tuple(stabs))


# -- random instances -------------------------------------------------------------------------------


def random_formal_data(G: PermGroup, rng: random.Random, max_genus: int = 5,
                       max_points: int = 6) -> RamificationData:
    """Arbitrary (tau, S) with S drawn from the nontrivial cyclic class representatives."""
    reps = [C for C in cyclic_subgroup_classes(G) if C.order > 1]
    tau = rng.randint(0, max_genus)
    k = rng.randint(0, max_points) if reps else 0
    return RamificationData(tau, tuple(rng.choice(reps) for _ in range(k))).canonical()


def _commutator(G: PermGroup, a: int, b: int) -> int:
    return G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))


def random_generating_vector(G: PermGroup, rng: random.Random, max_genus: int = 3, max_points: int = 6,
                             tries: int = 1000) -> Optional[tuple[int, list[int], list[int]]]:
    """A generating vector ``(a_1, b_1, ..., c_1, ..., c_r)`` with
    ``prod [a_i, b_i] prod c_j = 1`` and every ``c_j != 1``; such data is
    realised by an actual branched cover.  Returns ``(tau, ab, cs)``."""
    for _ in range(tries):
        tau = rng.randint(0, max_genus)
        r = rng.randint(0, max_points)
        ab = [rng.randrange(G.order) for _ in range(2 * tau)]
        cs = [rng.randrange(1, G.order) for _ in range(max(r - 1, 0))] if G.order > 1 else []
        x = 0
        for i in range(tau):
            x = G.mul(x, _commutator(G, ab[2 * i], ab[2 * i + 1]))
        for c in cs:
            x = G.mul(x, c)
        if r:
            last = G.inv(x)
            if last == 0:
                continue
            cs.append(last)
        elif x != 0:
            continue
        if len(closure(G, ab + cs)) != G.order:
            continue
        return tau, ab, cs
    return None


def data_from_vector(G: PermGroup, tau: int, cs: Sequence[int]) -> RamificationData:
    return RamificationData(tau, tuple(Subgroup(G, closure(G, [c]), f"<{c}>") for c in cs)).canonical()
