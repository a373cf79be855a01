"""Parsers for the text descriptors accepted on the command line."""
from __future__ import annotations

import random
import re

from .algebra import (AlgebraElement, averaging_idempotent, conjugated_idempotent, group_algebra,
                      idempotent_generating, left_ideal_basis, random_invertible, span_dim)
from .groups import (DEFAULT_MAX_ORDER, DescriptorError, PermGroup, Subgroup, closure, cyclic_subgroup_classes,
                     make_named_group, make_named_subgroup, split_top)
from .relations import Relation
from .repmod import (Representation, direct_sum, embed_in_group_algebra, module_I2, module_Ip,
                     permutation_module, regular_module, RepresentationError)


def parse_relation(text: str, default_group: str | None = None, max_order: int = DEFAULT_MAX_ORDER) -> Relation:
    """``"up - up' @ gl2(3)"``; each side is a ``+``-separated list of subgroup descriptors."""
    body, sep, gdesc = text.rpartition("@")
    if not sep:
        body, gdesc = text, default_group
    if not gdesc:
        raise DescriptorError(f"relation {text!r} names no group (use 'LHS - RHS @ group')")
    G = make_named_group(gdesc.strip(), max_order)
    sides = split_top(body, "-")
    if len(sides) != 2:
        raise DescriptorError(f"relation {text!r} must have the form 'LHS - RHS'")

    def side(s: str) -> list[Subgroup]:
        s = s.strip()
        if s in ("", "0"):
            return []
        return [make_named_subgroup(G, part) for part in split_top(s, "+")]

    return Relation(G, tuple(side(sides[0])), tuple(side(sides[1])))


_IDEAL_RE = re.compile(r"^I(\d+)$")


def _check_ideal_group(G: PermGroup, p: int) -> None:
    if p == 2:
        if G.kind != "aff8":
            raise DescriptorError("I2 lives on aff8")
    elif G.kind != "gl2" or G.params[0] != p:
        raise DescriptorError(f"I{p} lives on gl2({p}), not on {G.name}")


def build_module(G: PermGroup, desc: str) -> Representation:
    """``I3`` | ``I2`` | ``trivial`` | ``regular`` | ``perm:<subgroup>``, joined by ``+``."""
    parts = split_top(desc, "+")
    mods = []
    for part in parts:
        m = _IDEAL_RE.match(part)
        if m:
            p = int(m.group(1))
            _check_ideal_group(G, p)
            mods.append(module_I2(G) if p == 2 else module_Ip(p, G))
        elif part == "trivial":
            mods.append(permutation_module(G, make_named_subgroup(G, "whole")))
        elif part == "regular":
            mods.append(regular_module(G))
        elif part.startswith("perm:"):
            mods.append(permutation_module(G, make_named_subgroup(G, part[5:])))
        else:
            raise DescriptorError(f"unknown module {part!r}")
    return mods[0] if len(mods) == 1 else direct_sum(mods, desc)


def _summands(V: Representation) -> list[Representation]:
    return list(V.meta["parts"]) if V.kind == "sum" else [V]


def module_ideal(V: Representation, seed: int = 1, attempts: int = 64) -> list[AlgebraElement]:
    """A left ideal of Q[G] isomorphic to ``V`` (summands embedded one at a time).

    Later summands are moved off the span of earlier ones by a seeded random
    right multiplier; if none works the module is reported as not embedding.
    """
    A = group_algebra(V.group)
    rng = random.Random(seed)
    total: list[AlgebraElement] = []
    for W in _summands(V):
        found = None
        for k in range(attempts):
            twist = None if k == 0 else random_invertible(A, rng)
            try:
                L = embed_in_group_algebra(W, twist)
            except RepresentationError:
                continue
            if span_dim(A, total, L) == len(total) + W.dim:
                found = L
                break
        if found is None:
            raise RepresentationError(f"{V.label} does not embed in Q[{V.group.name}]")
        total = left_ideal_basis(total + found)
    return total


def idempotent_source(G: PermGroup, desc: str) -> AlgebraElement:
    """``averaging:<subgroup>`` | ``conjugated:<subgroup>:<seed>`` | ``ideal:<module>``."""
    kind, _, rest = desc.partition(":")
    if kind == "averaging":
        name = "whole" if rest in ("whole-group", "G") else rest
        U = make_named_subgroup(G, name)
        return averaging_idempotent(group_algebra(G), U)
    if kind == "conjugated":
        sub, _, seed = rest.rpartition(":")
        if not seed.isdigit():
            raise DescriptorError("conjugated source needs a trailing integer seed")
        U = make_named_subgroup(G, sub)
        return conjugated_idempotent(group_algebra(G), U, int(seed))
    if kind == "ideal":
        V = build_module(G, rest)
        return idempotent_generating(module_ideal(V), group_algebra(G))
    raise DescriptorError(f"unknown idempotent source {desc!r}")


def parse_stabilizer(G: PermGroup, text: str) -> list[Subgroup]:
    """``<class name or subgroup descriptor>[:multiplicity]`` -> list of cyclic subgroups."""
    body, sep, mult = text.rpartition(":")
    if sep and mult.isdigit():
        count = int(mult)
    else:
        body, count = text, 1
    by_name = {C.name: C for C in cyclic_subgroup_classes(G)}
    U = by_name.get(body.strip()) or make_named_subgroup(G, body)
    if U.order == 1:
        raise DescriptorError(f"stabilizer {body!r} is trivial")
    if not any(len(closure(G, [g])) == U.order for g in U.members):
        raise DescriptorError(f"stabilizer {body!r} is not cyclic")
    return [U] * count
