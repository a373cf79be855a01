"""Regulator constants as square classes, and the product-group pipeline.

``C_theta(V)`` is the alternating product, over the subgroups of a relation, of
``det((1/|U|) <,>|V^U)``; its class in Q^x/(Q^x)^2 is stored as the signed
squarefree integer representing it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from . import linalg
from .groups import GroupOrderError, PermGroup, Subgroup, direct_product, make_named_group, make_named_subgroup
from .linalg import DEFAULT_FACTOR_BOUND, squarefree_part
from .relations import (Inconclusive, LocalWitness, Relation, deflate_along, is_Q_relation, product_relation_many,
                        relation, zq_witness)
from .repmod import (Pairing, Representation, canonical_pairing, direct_sum, fixed_subspace, inflate,
                     invariant_pairing, module_I2, module_Ip)

DEFAULT_DIRECT_EVAL_CAP = 10_000
SUPPORTED_PRIMES = (2, 3, 5, 7)


class RegulatorError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SquareClass:
    value: int

    @classmethod
    def of(cls, r, factor_bound: int = DEFAULT_FACTOR_BOUND) -> "SquareClass":
        return cls(squarefree_part(r, factor_bound))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass.of(self.value * other.value)

    def __str__(self) -> str:
        return str(self.value)


def fixed_gram_det(V: Representation, pairing: Pairing, U: Subgroup, basis: Optional[list] = None) -> Fraction:
    """``det((1/|U|) <,>)`` on ``V^U``, computed as ``det(Gram) / |U|^dim``."""
    B = basis if basis is not None else fixed_subspace(V, U)
    if not B:
        return Fraction(1)
    gram = linalg.matmul(B, linalg.matmul(pairing.gram, linalg.transpose(B)))
    d = linalg.det(gram)
    if d == 0:
        raise RegulatorError(f"pairing is degenerate on the fixed space of {U.name}")
    return Fraction(d) / Fraction(U.order) ** len(B)


def regulator_value(theta: Relation, V: Representation, pairing: Pairing, check: bool = True) -> Fraction:
    """The rational number whose square class is ``C_theta(V)``."""
    if V.group is not theta.group:
        raise RegulatorError("module and relation live on different groups")
    if pairing.representation is not V:
        raise RegulatorError("pairing belongs to a different module")
    if check and not is_Q_relation(theta):
        raise RegulatorError(f"{theta} is not a Q-relation")
    num = prod((fixed_gram_det(V, pairing, U) for U in theta.plus), start=Fraction(1))
    den = prod((fixed_gram_det(V, pairing, U) for U in theta.minus), start=Fraction(1))
    return num / den


def regulator_constant(theta: Relation, V: Representation, pairing: Optional[Pairing] = None,
                       factor_bound: int = DEFAULT_FACTOR_BOUND, check: bool = True) -> SquareClass:
    pairing = pairing or canonical_pairing(V)
    return SquareClass.of(regulator_value(theta, V, pairing, check), factor_bound)


def regulator_constant_trivial(theta: Relation, factor_bound: int = DEFAULT_FACTOR_BOUND) -> SquareClass:
    if not is_Q_relation(theta):
        raise RegulatorError(f"{theta} is not a Q-relation")
    num = prod(U.order for U in theta.minus)
    den = prod(U.order for U in theta.plus)
    return SquareClass.of(Fraction(num, den), factor_bound)


def pairing_classes(theta: Relation, V: Representation, seeds: Sequence[int],
                    factor_bound: int = DEFAULT_FACTOR_BOUND) -> dict[str, SquareClass]:
    out = {"canonical": regulator_constant(theta, V, canonical_pairing(V), factor_bound)}
    for s in seeds:
        out[f"seed={s}"] = regulator_constant(theta, V, invariant_pairing(V, s), factor_bound, check=False)
    return out


def check_pairing_independence(theta: Relation, V: Representation, seeds: Sequence[int] = (1, 2),
                               factor_bound: int = DEFAULT_FACTOR_BOUND) -> bool:
    return len(set(pairing_classes(theta, V, seeds, factor_bound).values())) == 1


def reg1_sides(theta: Relation, V: Representation, hom: Sequence[int],
               factor_bound: int = DEFAULT_FACTOR_BOUND) -> tuple[SquareClass, SquareClass]:
    """``(C_theta(Inf V), C_{Def theta}(V))`` for a surjection ``hom: G -> V.group``."""
    G = theta.group
    lifted = inflate(V, hom, G)
    left = regulator_constant(theta, lifted, canonical_pairing(lifted), factor_bound)
    right = regulator_constant(deflate_along(theta, V.group, hom), V, canonical_pairing(V), factor_bound)
    return left, right


def check_reg1(theta: Relation, V: Representation, hom: Sequence[int],
               factor_bound: int = DEFAULT_FACTOR_BOUND) -> bool:
    left, right = reg1_sides(theta, V, hom, factor_bound)
    return left == right


def check_reg2(theta: Relation, V1: Representation, V2: Representation,
               factor_bound: int = DEFAULT_FACTOR_BOUND) -> bool:
    c1 = regulator_constant(theta, V1, factor_bound=factor_bound)
    c2 = regulator_constant(theta, V2, factor_bound=factor_bound, check=False)
    W = direct_sum([V1, V2])
    return regulator_constant(theta, W, factor_bound=factor_bound, check=False) == c1 * c2


# -- product groups ------------------------------------------------------------------------------


@dataclass
class FactorData:
    p: int
    group: PermGroup
    relation: Relation
    module: Representation


def factor_data(p: int) -> FactorData:
    if p == 2:
        G = make_named_group("aff8")
        theta = relation(G, [make_named_subgroup(G, "u2")], [make_named_subgroup(G, "u2'")])
        return FactorData(2, G, theta, module_I2(G))
    if p not in SUPPORTED_PRIMES:
        raise RegulatorError(f"prime {p} is outside the supported set {SUPPORTED_PRIMES}")
    G = make_named_group(f"gl2({p})")
    theta = relation(G, [make_named_subgroup(G, "up")], [make_named_subgroup(G, "up'")])
    return FactorData(p, G, theta, module_Ip(p, G))


def _tensor_det_mod(witnesses: Sequence[LocalWitness], sizes: Sequence[int], q: int) -> int:
    """``det`` of a Kronecker product mod q: ``prod det(M_k)^(n / n_k)``."""
    n = prod(sizes)
    out = 1
    for w, k in zip(witnesses, sizes):
        out = out * pow(w.det_mod_q, n // k, q) % q
    return out


@dataclass
class BigGroupReport:
    primes: list
    order: int
    relation: str
    module: str
    predicted: SquareClass
    reduction: SquareClass
    reduction_steps: list
    direct: Optional[SquareClass]
    direct_detail: dict
    local_checks: list
    notes: list = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        ok = self.reduction == self.predicted
        if self.direct is not None:
            ok = ok and self.direct == self.predicted
        return ok

    def to_json(self) -> dict:
        return {
            "primes": self.primes,
            "group_order": self.order,
            "relation": self.relation,
            "module": self.module,
            "predicted": self.predicted.value,
            "reduction": self.reduction.value,
            "reduction_steps": self.reduction_steps,
            "direct": self.direct.value if self.direct is not None else "skipped",
            "direct_detail": self.direct_detail,
            "local_witnesses": self.local_checks,
            "agrees": self.agrees,
            "notes": self.notes,
        }


def biggroup(primes: Sequence[int], q_list: Sequence[int] = (), seeds: Sequence[int] = (1,),
             direct_eval_cap: int = DEFAULT_DIRECT_EVAL_CAP, witness_budget: int = 512, seed: int = 1,
             factor_bound: int = DEFAULT_FACTOR_BOUND, max_group_order: int = 2_000_000) -> BigGroupReport:
    """Regulator constant of ``V = (+) Inf I_p`` for ``theta = prod (U_p - U_p')``
    over ``G = prod G_p``, by reduction and (when small enough) directly."""
    P = sorted(set(primes))
    if not P:
        raise RegulatorError("need at least one prime")
    factors = [factor_data(p) for p in P]
    order = prod(f.group.order for f in factors)
    if order > max_group_order:
        raise GroupOrderError(f"group order {order} exceeds max_group_order {max_group_order}")
    predicted = SquareClass.of(prod(P), factor_bound)
    name_rel = " * ".join(str(f.relation.plus[0].name) for f in factors) + " - " + \
        " * ".join(str(f.relation.minus[0].name) for f in factors)
    notes = []

    # reduction path: (Reg 2) splits V into inflations, (Reg 1) moves each to its factor,
    # where the projection of U_1 x ... x U_k is U_p
    steps = []
    reduction = SquareClass(1)
    for f in factors:
        c = regulator_constant(f.relation, f.module, factor_bound=factor_bound)
        indep = check_pairing_independence(f.relation, f.module, seeds, factor_bound)
        steps.append({"p": f.p, "factor": f.group.name, "deflated_relation": str(f.relation),
                      "class": c.value, "pairing_independent": indep})
        reduction = reduction * c

    direct = None
    detail: dict = {}
    if order <= direct_eval_cap:
        G = direct_product([f.group for f in factors], max_group_order)
        theta = product_relation_many([f.relation for f in factors], G)
        if not is_Q_relation(theta):
            raise AssertionError("product relation is not a Q-relation")
        homs = [G.projection(k) for k in range(len(factors))] if len(factors) > 1 else [list(range(G.order))]
        parts = [inflate(f.module, h, G, f"Inf {f.module.label}") for f, h in zip(factors, homs)]
        V = direct_sum(parts) if len(parts) > 1 else parts[0]
        classes = {k: v.value for k, v in pairing_classes(theta, V, seeds, factor_bound).items()}
        direct = SquareClass(classes["canonical"])
        reg1 = []
        for f, h in zip(factors, homs):
            left, right = reg1_sides(theta, f.module, h, factor_bound)
            reg1.append({"p": f.p, "inflated": left.value, "deflated": right.value})
        detail = {"pairings": classes, "reg1": reg1, "dim": V.dim}
        if len(set(classes.values())) != 1:
            notes.append("pairing dependence detected in direct evaluation")
    else:
        detail = {"skipped": f"|G| = {order} exceeds direct_eval_cap {direct_eval_cap}"}

    local = []
    for q in q_list:
        if q in P:
            local.append({"q": q, "status": "not claimed", "reason": "q lies in P"})
            continue
        if order <= direct_eval_cap:
            w = zq_witness(theta, q, witness_budget, seed)
            entry = {"q": q, "method": "direct"}
            if isinstance(w, LocalWitness):
                entry.update(status="witness", det_mod_q=w.det_mod_q, samples=w.samples, hom_dim=w.hom_dim)
            else:
                entry.update(status="inconclusive", samples=w.samples, hom_dim=w.hom_dim)
            local.append(entry)
            continue
        # Z[G/(U x U~)] = Z[G1/U] (x) Z[G2/U~]; a Kronecker product of factor witnesses is a witness
        ws = [zq_witness(f.relation, q, witness_budget, seed) for f in factors]
        entry = {"q": q, "method": "tensor of factor witnesses",
                 "factors": [{k: v for k, v in w.to_json().items() if k != "matrix"} for w in ws]}
        if all(isinstance(w, LocalWitness) for w in ws):
            sizes = [f.relation.plus[0].index for f in factors]
            entry.update(status="witness", det_mod_q=_tensor_det_mod(ws, sizes, q))
        else:
            entry.update(status="inconclusive")
        local.append(entry)
    if q_list:
        notes.append("local relations are checked only for the listed primes")

    return BigGroupReport(P, order, name_rel, " + ".join(f"Inf {f.module.label}" for f in factors), predicted,
                          reduction, steps, direct, detail, local, notes)
