"""Finite permutation groups with fully materialised element lists.

Elements are addressed by their index into ``PermGroup.elements``; index 0 is
always the identity.  Products follow the convention ``(a*b)(x) = a(b(x))``,
so groups act on the left of their points and cosets are left cosets ``gU``.

Descriptor grammar (see also ``gassmann.cli``)::

    group     := factor ( "*" factor )*
    factor    := "gl2(" p ")" | "aff8" | "sym(" n ")" | "dihedral(" n ")"
               | "quat8" | "cyclic(" n ")"
    subgroup  := ["sub:"] part ( "*" part )*       one part per factor
    part      := "whole" | "trivial" | "borel" | "up" | "up'" | "u2" | "u2'"
               | "h" | "gens:[" cycles ("," cycles)* "]" | "<" cycles ("," cycles)* ">"
               | "cyclic(" cycles ")"

Cycle notation is 1-based on the factor's own points, e.g. ``(1 2)(3 4 5)``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Iterable, Optional, Sequence

DEFAULT_MAX_ORDER = 2_000_000


class GroupOrderError(ValueError):
    """A group would exceed the configured materialisation cap."""


class DescriptorError(ValueError):
    """A group or subgroup descriptor could not be parsed or applied."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int, one_based: bool = True) -> "Permutation":
        img = list(range(degree))
        shift = 1 if one_based else 0
        for cyc in cycles:
            pts = [c - shift for c in cyc]
            if any(not 0 <= c < degree for c in pts) or len(set(pts)) != len(pts):
                raise ValueError(f"bad cycle {tuple(cyc)} for degree {degree}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(tuple(img))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        s = self.images
        return Permutation(tuple(s[x] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based."""
        seen, out = set(), []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x + 1)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"


def _compose(a: tuple, b: tuple) -> tuple:
    return tuple(a[x] for x in b)


def _invert(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


class PermGroup:
    """A permutation group with its elements listed in a frozen order.

    ``kind`` records the constructor (``"gl2"``, ``"aff8"``, ``"product"``, ...)
    so that named subgroups can be resolved; ``points`` optionally labels the
    points the group acts on (vectors of F_p^2, residues mod 8, ...).
    """

    def __init__(self, degree: int, generators: Sequence[tuple], elements: Sequence[tuple],
                 name: str, kind: str = "generic", params: tuple = (),
                 points: Optional[list] = None, factors: Optional[Sequence["PermGroup"]] = None):
        self.degree = degree
        self._elements = list(elements)
        self.index: dict[tuple, int] = {e: i for i, e in enumerate(self._elements)}
        self.generator_indices = [self.index[g] for g in generators]
        self.name = name
        self.kind = kind
        self.params = params
        self.points = points
        self.factors = tuple(factors) if factors else ()
        self._inv: Optional[list[int]] = None
        self._cache: dict = {}

    # element access -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __repr__(self) -> str:
        return f"PermGroup({self.name}, order={self.order}, degree={self.degree})"

    def perm(self, i: int) -> tuple:
        """The raw image tuple of element ``i``."""
        return self._elements[i]

    @property
    def elements(self) -> list[Permutation]:
        return [Permutation(e) for e in self._elements]

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation(self._elements[i]) for i in self.generator_indices]

    def index_of(self, p: Permutation | tuple) -> int:
        key = p.images if isinstance(p, Permutation) else tuple(p)
        try:
            return self.index[key]
        except KeyError:
            raise DescriptorError(f"{Permutation(key)} is not an element of {self.name}") from None

    def mul(self, i: int, j: int) -> int:
        return self.index[_compose(self._elements[i], self._elements[j])]

    def inv(self, i: int) -> int:
        if self._inv is None:
            self._inv = [self.index[_invert(e)] for e in self._elements]
        return self._inv[i]

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    def word(self, i: int) -> list[int]:
        """Generator positions ``s_1..s_k`` with ``g_i = gen[s_1] * ... * gen[s_k]``."""
        parent = self._schreier()
        out = []
        while i != 0:
            i, s = parent[i]
            out.append(s)
        return out[::-1]

    def _schreier(self) -> dict[int, tuple[int, int]]:
        if "schreier" not in self._cache:
            parent: dict[int, tuple[int, int]] = {}
            seen = {0}
            queue = deque([0])
            while queue:
                y = queue.popleft()
                for s, gi in enumerate(self.generator_indices):
                    # y * gen = x, so x = y * gen and word(x) = word(y) + [s]
                    x = self.mul(y, gi)
                    if x not in seen:
                        seen.add(x)
                        parent[x] = (y, s)
                        queue.append(x)
            self._cache["schreier"] = parent
        return self._cache["schreier"]

    # products -----------------------------------------------------------------

    def projection(self, k: int) -> list[int]:
        """Element-index map onto factor ``k`` of a direct product."""
        self._require_product()
        key = ("proj", k)
        if key not in self._cache:
            stride = prod(F.order for F in self.factors[k + 1:])
            n = self.factors[k].order
            self._cache[key] = [(i // stride) % n for i in range(self.order)]
        return self._cache[key]

    def embedding(self, k: int) -> list[int]:
        """Element-index map from factor ``k`` into the direct product."""
        self._require_product()
        stride = prod(F.order for F in self.factors[k + 1:])
        return [i * stride for i in range(self.factors[k].order)]

    def _require_product(self):
        if self.kind != "product":
            raise DescriptorError(f"{self.name} is not a direct product")


def generate(generators: Sequence[tuple], degree: int, name: str, max_order: int = DEFAULT_MAX_ORDER,
             **kw) -> PermGroup:
    """Breadth-first closure of ``generators``.

    Elements discovered at the same BFS depth are sorted lexicographically by
    their image tuples, which fixes the element order independently of the
    generator order.
    """
    ident = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = set()
        for x in frontier:
            for g in gens:
                y = _compose(g, x)
                if y not in seen:
                    seen.add(y)
                    new.add(y)
        frontier = sorted(new)
        elements.extend(frontier)
        if len(elements) > max_order:
            raise GroupOrderError(f"{name}: order exceeds cap {max_order}")
    gens = [g for g in gens if g != ident]
    return PermGroup(degree, gens, elements, name, **kw)


# -- named groups -------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def gl2(p: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """GL_2(F_p) acting on the p^2 - 1 nonzero column vectors of F_p^2."""
    if not _is_prime(p) or p == 2:
        raise DescriptorError(f"gl2 requires an odd prime, got {p}")
    if (p * p - 1) * (p * p - p) > max_order:
        raise GroupOrderError(f"gl2({p}) exceeds cap {max_order}")
    pts = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    where = {v: i for i, v in enumerate(pts)}
    zeta = next(g for g in range(2, p) if all(pow(g, k, p) != 1 for k in range(1, p - 1)))

    def act(m):
        (a, b), (c, d) = m
        return tuple(where[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in pts)

    gens = [act(((zeta, 0), (0, 1))), act(((1, 0), (0, zeta))), act(((1, 1), (0, 1))), act(((0, 1), (1, 0)))]
    return generate(gens, len(pts), f"gl2({p})", max_order, kind="gl2", params=(p,), points=pts)


def gl2_matrix(G: PermGroup, i: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The matrix of element ``i`` of a ``gl2`` group, read off from its action on e1, e2."""
    pts = G.points
    e1, e2 = pts.index((1, 0)), pts.index((0, 1))
    img = G.perm(i)
    (a, c), (b, d) = pts[img[e1]], pts[img[e2]]
    return (a, b), (c, d)


def aff8(max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """The affine group x -> ax + b of Z/8Z, a odd."""
    def T(a, b):
        return tuple((a * x + b) % 8 for x in range(8))

    gens = [T(1, 1), T(3, 0), T(5, 0), T(7, 0)]
    return generate(gens, 8, "aff8", max_order, kind="aff8", points=list(range(8)))


def aff8_params(G: PermGroup, i: int) -> tuple[int, int]:
    """``(a, b)`` with element ``i`` equal to T_{a,b}."""
    img = G.perm(i)
    b = img[0]
    return (img[1] - b) % 8, b


def sym(n: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    if n < 1:
        raise DescriptorError("sym(n) needs n >= 1")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles([(1, 2)], n).images)
    if n >= 3:
        gens.append(Permutation.from_cycles([tuple(range(1, n + 1))], n).images)
    return generate(gens, n, f"sym({n})", max_order, kind="sym", params=(n,))


def dihedral(n: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """Symmetries of the n-gon, order 2n."""
    if n < 3:
        raise DescriptorError("dihedral(n) needs n >= 3")
    rot = tuple((x + 1) % n for x in range(n))
    ref = tuple((-x) % n for x in range(n))
    return generate([rot, ref], n, f"dihedral({n})", max_order, kind="dihedral", params=(n,))


def cyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    if n < 1:
        raise DescriptorError("cyclic(n) needs n >= 1")
    gens = [tuple((x + 1) % n for x in range(n))] if n > 1 else []
    return generate(gens, n, f"cyclic({n})", max_order, kind="cyclic", params=(n,))


def quat8(max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """Q8 in its regular action on {1, -1, i, -i, j, -j, k, -k}."""
    # unit products: table[u][v] = (sign, w) for u*v, units 0=1,1=i,2=j,3=k
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    pts = [(s, u) for u in range(4) for s in (1, -1)]
    where = {v: i for i, v in enumerate(pts)}

    def left(u):
        out = []
        for s, v in pts:
            t, w = table[(u, v)]
            out.append(where[(s * t, w)])
        return tuple(out)

    return generate([left(1), left(2)], 8, "quat8", max_order, kind="quat8", points=pts)


def direct_product(groups: Sequence[PermGroup], max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """Direct product acting on the disjoint union of the factors' points.

    Elements are listed in lexicographic factor order, so element
    ``(i_1, ..., i_k)`` sits at index ``sum(i_j * stride_j)`` with the first
    factor most significant.
    """
    groups = list(groups)
    if len(groups) == 1:
        return groups[0]
    total = prod(G.order for G in groups)
    if total > max_order:
        raise GroupOrderError(f"product of order {total} exceeds cap {max_order}")
    offsets, off = [], 0
    for G in groups:
        offsets.append(off)
        off += G.degree
    degree = off
    elements: list[tuple] = [()]
    for G, o in zip(groups, offsets):
        shifted = [tuple(x + o for x in G.perm(i)) for i in range(G.order)]
        elements = [e + s for e in elements for s in shifted]
    gens = []
    for k, (G, o) in enumerate(zip(groups, offsets)):
        for gi in G.generator_indices:
            img = list(range(degree))
            for x, y in enumerate(G.perm(gi)):
                img[o + x] = o + y
            gens.append(tuple(img))
    name = " * ".join(G.name for G in groups)
    return PermGroup(degree, gens, elements, name, kind="product", factors=groups)


_FACTOR_RE = re.compile(r"^\s*(gl2|sym|dihedral|cyclic)\s*\(\s*(\d+)\s*\)\s*$|^\s*(aff8|quat8)\s*$")


def split_top(text: str, sep: str = "*") -> list[str]:
    """Split on ``sep`` outside brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def make_named_group(desc: str, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """Build a group from a descriptor such as ``"aff8 * gl2(3)"``."""
    factors = []
    for part in split_top(desc):
        m = _FACTOR_RE.match(part)
        if not m:
            raise DescriptorError(f"unknown group descriptor {part!r}")
        if m.group(3):
            factors.append(aff8(max_order) if m.group(3) == "aff8" else quat8(max_order))
        else:
            ctor = {"gl2": gl2, "sym": sym, "dihedral": dihedral, "cyclic": cyclic}[m.group(1)]
            factors.append(ctor(int(m.group(2)), max_order))
    return direct_product(factors, max_order)


# -- subgroups -------------------------------------------------------------------------


class Subgroup:
    """A subgroup stored as a sorted tuple of element indices of its parent."""

    def __init__(self, parent: PermGroup, members: Iterable[int], name: str = ""):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self.name = name or f"<{len(self.members)}>"
        self._set = frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, i: int) -> bool:
        return i in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"Subgroup({self.name}, order={self.order})"

    def is_subgroup(self) -> bool:
        G = self.parent
        return 0 in self._set and all(G.mul(a, b) in self._set for a in self.members for b in self.members)


def closure(G: PermGroup, gens: Iterable[int]) -> list[int]:
    members = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(g, x)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(members)


def generated_subgroup(G: PermGroup, gens: Iterable[int], name: str = "") -> Subgroup:
    return Subgroup(G, closure(G, gens), name)


def whole(G: PermGroup) -> Subgroup:
    return Subgroup(G, range(G.order), "whole")


def trivial(G: PermGroup) -> Subgroup:
    return Subgroup(G, [0], "trivial")


def _is_square_mod(a: int, p: int) -> bool:
    return pow(a % p, (p - 1) // 2, p) == 1


def _factor_part(F: PermGroup, part: str) -> list[int]:
    """Member indices of a named subgroup of a single (non-product) group."""
    part = part.strip()
    if part in ("whole", "G"):
        return list(range(F.order))
    if part in ("trivial", "1"):
        return [0]
    if part[:1] in "<\u27e8" and part[-1:] in ">\u27e9" and len(part) >= 2:
        part = "gens:[" + part[1:-1] + "]"
    if part.startswith("gens:"):
        body = part[5:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise DescriptorError(f"bad generator list {part!r}")
        items = [s for s in split_top(body[1:-1], ",") if s]
        return closure(F, [F.index_of(parse_cycles(s, F.degree)) for s in items])
    m = re.match(r"^cyclic\((.*)\)$", part)
    if m:
        arg = m.group(1).strip()
        g = 0 if arg in ("", "identity", "()") else F.index_of(parse_cycles(arg, F.degree))
        return closure(F, [g])
    name = part.replace("_prime", "'")
    if F.kind == "gl2" and name in ("borel", "up", "up'"):
        p = F.params[0]
        out = []
        for i in range(F.order):
            (a, b), (c, d) = gl2_matrix(F, i)
            if c != 0:
                continue
            if name == "up" and not _is_square_mod(a, p):
                continue
            if name == "up'" and not _is_square_mod(d, p):
                continue
            out.append(i)
        return out
    if F.kind == "aff8" and name in ("u2", "u2'", "h"):
        T = {(a, b): i for i in range(F.order) for a, b in [aff8_params(F, i)]}
        if name == "u2":
            gens = [T[(a, 0)] for a in (1, 3, 5, 7)]
        elif name == "u2'":
            gens = [T[(7, 0)], T[(3, 4)]]
        else:
            gens = [T[(1, 4)]] + [T[(a, 0)] for a in (1, 3, 5, 7)]
        return closure(F, gens)
    raise DescriptorError(f"subgroup {part!r} is not defined for {F.name}")


def parse_cycles(text: str, degree: int) -> tuple:
    text = text.strip()
    if text in ("", "()", "identity"):
        return tuple(range(degree))
    cycles = re.findall(r"\(([^()]*)\)", text)
    if "".join(f"({c})" for c in cycles).replace(" ", "") != text.replace(" ", ""):
        raise DescriptorError(f"bad cycle notation {text!r}")
    try:
        return Permutation.from_cycles([[int(x) for x in c.replace(",", " ").split()] for c in cycles],
                                       degree).images
    except ValueError as exc:
        raise DescriptorError(str(exc)) from None


def make_named_subgroup(G: PermGroup, desc: str) -> Subgroup:
    """Resolve a subgroup descriptor such as ``"up"`` or ``"sub:u2'*up"``."""
    text = desc.strip()
    if text.startswith("sub:"):
        text = text[4:]
    parts = split_top(text)
    if G.kind == "product":
        if len(parts) == 1 and parts[0] in ("whole", "trivial", "G", "1"):
            parts = parts * len(G.factors)
        if len(parts) != len(G.factors):
            raise DescriptorError(f"{desc!r} has {len(parts)} parts but {G.name} has {len(G.factors)} factors")
        return product_subgroup(G, [Subgroup(F, _factor_part(F, p)) for F, p in zip(G.factors, parts)],
                                name=text)
    if len(parts) != 1:
        raise DescriptorError(f"{desc!r} is a product descriptor but {G.name} is not a product")
    members = _factor_part(G, parts[0])
    sub = Subgroup(G, members, name=text)
    if not sub.is_subgroup():
        raise DescriptorError(f"{desc!r} is not a subgroup")
    return sub


def product_subgroup(G: PermGroup, parts: Sequence[Subgroup], name: str = "") -> Subgroup:
    """``U_1 x ... x U_k`` inside a direct product."""
    G._require_product()
    members = [0]
    for F, U in zip(G.factors, parts):
        members = [m * F.order + u for m in members for u in U.members]
    return Subgroup(G, members, name or "*".join(U.name for U in parts))


# -- conjugacy ---------------------------------------------------------------------------


def conjugacy_classes(G: PermGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted index tuples, ordered by minimal element."""
    if "classes" not in G._cache:
        seen: set[int] = set()
        classes = []
        for x in range(G.order):
            if x in seen:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for g in G.generator_indices:
                        z = G.conj(g, y)
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            seen |= orbit
            classes.append(tuple(sorted(orbit)))
        G._cache["classes"] = classes
        G._cache["class_of"] = {x: k for k, c in enumerate(classes) for x in c}
    return G._cache["classes"]


def class_index(G: PermGroup) -> dict[int, int]:
    conjugacy_classes(G)
    return G._cache["class_of"]


def conjugate_subgroup(G: PermGroup, U: Subgroup, g: int) -> Subgroup:
    """``g U g^-1``."""
    return Subgroup(G, (G.conj(g, u) for u in U.members), U.name)


def is_normal(G: PermGroup, N: Subgroup) -> bool:
    return all(G.conj(g, n) in N for g in G.generator_indices for n in N.members)


def are_conjugate_subgroups(G: PermGroup, U: Subgroup, V: Subgroup) -> tuple[bool, Optional[int]]:
    """Whether some ``g`` has ``g U g^-1 = V``; returns the first such ``g``."""
    if U.order != V.order:
        return False, None
    target = set(V.members)
    for g in range(G.order):
        if all(G.conj(g, u) in target for u in U.members):
            return True, g
    return False, None


def cyclic_subgroup_classes(G: PermGroup) -> list[Subgroup]:
    """One representative per conjugacy class of cyclic subgroups.

    Each representative is the conjugate with the lexicographically smallest
    member tuple; the list is sorted by (order, members).
    """
    if "cyclic_classes" in G._cache:
        return G._cache["cyclic_classes"]
    cyclics: set[tuple[int, ...]] = set()
    for g in range(G.order):
        cyclics.add(tuple(closure(G, [g])))
    reps = []
    done: set[tuple[int, ...]] = set()
    for c in sorted(cyclics, key=lambda m: (len(m), m)):
        if c in done:
            continue
        orbit = {c}
        frontier = [c]
        while frontier:
            nxt = []
            for m in frontier:
                for g in G.generator_indices:
                    h = tuple(sorted(G.conj(g, x) for x in m))
                    if h not in orbit:
                        orbit.add(h)
                        nxt.append(h)
            frontier = nxt
        done |= orbit
        reps.append(min(orbit))
    reps.sort(key=lambda m: (len(m), m))
    out = [Subgroup(G, m, f"C{len(m)}#{k}") for k, m in enumerate(reps)]
    G._cache["cyclic_classes"] = out
    return out


# -- cosets -----------------------------------------------------------------------------------


def cosets(G: PermGroup, U: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets ``gU`` ordered by smallest representative; index 0 is ``U``."""
    key = ("cosets", U.members)
    if key not in G._cache:
        assigned: dict[int, int] = {}
        blocks = []
        for g in range(G.order):
            if g in assigned:
                continue
            block = tuple(sorted(G.mul(g, u) for u in U.members))
            for x in block:
                assigned[x] = len(blocks)
            blocks.append(block)
        G._cache[key] = (blocks, assigned)
    return G._cache[key][0]


def coset_lookup(G: PermGroup, U: Subgroup) -> dict[int, int]:
    """Map element index -> index of its left coset."""
    cosets(G, U)
    return G._cache[("cosets", U.members)][1]


def coset_action(G: PermGroup, U: Subgroup, g: int) -> tuple[int, ...]:
    """Permutation of the left cosets of ``U`` induced by ``g``."""
    blocks = cosets(G, U)
    where = coset_lookup(G, U)
    return tuple(where[G.mul(g, b[0])] for b in blocks)


def double_cosets(G: PermGroup, U: Subgroup, V: Subgroup) -> list[tuple[int, ...]]:
    """Double cosets ``U g V`` ordered by smallest element."""
    seen: set[int] = set()
    out = []
    for g in range(G.order):
        if g in seen:
            continue
        left = {G.mul(u, g) for u in U.members}
        block = sorted({G.mul(x, v) for x in left for v in V.members})
        seen.update(block)
        out.append(tuple(block))
    return out


# -- quotients --------------------------------------------------------------------------------


def quotient_group(G: PermGroup, N: Subgroup) -> tuple[PermGroup, list[int]]:
    """``G/N`` acting on the cosets of ``N``, with the projection as an index map."""
    if not is_normal(G, N):
        raise ValueError(f"{N.name} is not normal in {G.name}")
    blocks = cosets(G, N)
    gens = [coset_action(G, N, g) for g in G.generator_indices]
    Q = generate(gens, len(blocks), f"{G.name}/{N.name}", kind="quotient")
    proj = [0] * G.order
    for k, b in enumerate(blocks):
        # g acts as the image of its coset; computing on one element per coset suffices
        img = Q.index[coset_action(G, N, b[0])]
        for x in b:
            proj[x] = img
    return Q, proj


def kernel_of(G: PermGroup, hom: Sequence[int], name: str = "") -> Subgroup:
    return Subgroup(G, [i for i, x in enumerate(hom) if x == 0], name or "ker")


def image_subgroup(H: PermGroup, U: Subgroup, hom: Sequence[int], name: str = "") -> Subgroup:
    return Subgroup(H, {hom[u] for u in U.members}, name or U.name)


def is_homomorphism(G: PermGroup, H: PermGroup, hom: Sequence[int], pairs: Optional[Iterable] = None) -> bool:
    pairs = pairs if pairs is not None else ((a, b) for a in range(G.order) for b in range(G.order))
    return all(hom[G.mul(a, b)] == H.mul(hom[a], hom[b]) for a, b in pairs)


def check_closure(G: PermGroup) -> bool:
    elems = G.index
    return all(_compose(a, b) in elems for a in elems for b in elems)


def element_label(G: PermGroup, i: int) -> str:
    """Human-readable name of element ``i`` (matrix for gl2, T_{a,b} for aff8)."""
    if G.kind == "gl2":
        return str(gl2_matrix(G, i))
    if G.kind == "aff8":
        a, b = aff8_params(G, i)
        return f"T({a},{b})"
    if G.kind == "product":
        parts = []
        rest = i
        strides = [prod(F.order for F in G.factors[k + 1:]) for k in range(len(G.factors))]
        for F, s in zip(G.factors, strides):
            parts.append(element_label(F, rest // s))
            rest %= s
        return " x ".join(parts)
    return str(Permutation(G.perm(i)))

