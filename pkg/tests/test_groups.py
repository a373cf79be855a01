import pytest
from hypothesis import given, strategies as st

from conftest import group
from gassmann.groups import (DescriptorError, GroupOrderError, Permutation, are_conjugate_subgroups, closure,
                             conjugacy_classes, conjugate_subgroup, coset_action, cosets, cyclic_subgroup_classes,
                             direct_product, double_cosets, gl2, gl2_matrix, is_homomorphism, is_normal,
                             make_named_group, make_named_subgroup, quotient_group, Subgroup, aff8_params)

NAMED = ["gl2(3)", "aff8", "sym(3)", "quat8", "dihedral(4)", "cyclic(6)"]


def brute_classes(G):
    seen, out = set(), []
    for x in range(G.order):
        if x not in seen:
            cls = {G.conj(g, x) for g in range(G.order)}
            seen |= cls
            out.append(cls)
    return out


def brute_cyclic_classes(G):
    cyc = {tuple(closure(G, [g])) for g in range(G.order)}
    classes = set()
    for c in cyc:
        classes.add(min(tuple(sorted(G.conj(g, x) for x in c)) for g in range(G.order)))
    return classes


@pytest.mark.parametrize("desc, order, degree", [
    ("gl2(3)", 48, 8), ("aff8", 32, 8), ("sym(1)", 1, 1), ("sym(3)", 6, 3), ("quat8", 8, 8),
    ("dihedral(4)", 8, 4), ("gl2(5)", 480, 24), ("cyclic(6)", 6, 6),
])
def test_orders(desc, order, degree):
    G = group(desc)
    assert (G.order, G.degree) == (order, degree)
    assert G.elements[0].is_identity()


def test_gl2_order_formula():
    for p in (3, 5, 7):
        assert group(f"gl2({p})").order == (p * p - 1) * (p * p - p)


@pytest.mark.parametrize("desc", ["gl2(4)", "gl2(9)", "gl2(2)", "foo", "sym(x)"])
def test_bad_group_descriptors(desc):
    with pytest.raises((DescriptorError, ValueError)):
        make_named_group(desc)


def test_order_cap():
    with pytest.raises(GroupOrderError):
        gl2(5, max_order=100)


@pytest.mark.parametrize("desc", NAMED)
def test_group_axioms(desc):
    G = group(desc)
    for a in range(G.order):
        assert G.mul(a, G.inv(a)) == 0
    for a in G.generator_indices:
        for b in range(G.order):
            for c in G.generator_indices:
                assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


@pytest.mark.parametrize("desc", NAMED)
def test_words_reconstruct_elements(desc):
    G = group(desc)
    for g in range(G.order):
        x = 0
        for s in G.word(g):
            x = G.mul(x, G.generator_indices[s])
        assert x == g


@pytest.mark.parametrize("desc", NAMED)
def test_classes_match_brute_force(desc):
    G = group(desc)
    assert sorted(map(sorted, conjugacy_classes(G))) == sorted(map(sorted, brute_classes(G)))


@pytest.mark.parametrize("desc, n", [("gl2(3)", 8), ("sym(3)", 3), ("quat8", 5), ("dihedral(4)", 5)])
def test_class_counts_textbook(desc, n):
    assert len(conjugacy_classes(group(desc))) == n


@pytest.mark.parametrize("desc", ["gl2(3)", "aff8", "sym(3)", "quat8", "dihedral(4)"])
def test_cyclic_classes_match_brute_force(desc):
    G = group(desc)
    reps = cyclic_subgroup_classes(G)
    assert {C.members for C in reps} == brute_cyclic_classes(G)


def test_named_subgroups_gl2():
    G = group("gl2(3)")
    up = make_named_subgroup(G, "up")
    assert (up.order, up.index) == (6, 8)
    assert make_named_subgroup(G, "borel").order == 12
    assert make_named_subgroup(G, "up_prime").members == make_named_subgroup(G, "up'").members
    for p in (3, 5, 7):
        H = group(f"gl2({p})")
        assert make_named_subgroup(H, "up").order == (p - 1) // 2 * p * (p - 1)
    for i in make_named_subgroup(G, "borel").members:
        assert gl2_matrix(G, i)[1][0] == 0


def test_named_subgroups_aff8():
    G = group("aff8")
    u2, u2p, h = (make_named_subgroup(G, n) for n in ("u2", "u2'", "h"))
    assert (u2.order, u2p.order, h.order) == (4, 4, 8)
    for U in (u2, u2p):
        assert all(G.element_order(x) <= 2 for x in U.members)  # Klein four
    assert set(u2.members) <= set(h.members)
    for x in u2.members:
        assert aff8_params(G, x)[1] == 0


def test_subgroup_descriptor_forms():
    S = group("sym(3)")
    assert make_named_subgroup(S, "cyclic(identity)").order == 1
    assert make_named_subgroup(S, "gens:[(1 2),(1 2 3)]").order == 6
    assert make_named_subgroup(S, "<(1,2)>").order == 2
    with pytest.raises(DescriptorError):
        make_named_subgroup(S, "up")
    with pytest.raises(DescriptorError):
        make_named_subgroup(S, "cyclic((1 4))")


def test_cosets_partition_and_action():
    G = group("gl2(3)")
    U = make_named_subgroup(G, "up")
    blocks = cosets(G, U)
    assert len(blocks) == 8 and blocks[0] == U.members
    assert sorted(x for b in blocks for x in b) == list(range(G.order))
    for g in G.generator_indices:
        sigma = coset_action(G, U, g)
        assert sorted(sigma) == list(range(8))


def test_double_cosets_partition():
    G = group("gl2(3)")
    U, B = make_named_subgroup(G, "up"), make_named_subgroup(G, "borel")
    dc = double_cosets(G, U, B)
    assert sorted(x for d in dc for x in d) == list(range(G.order))
    assert len(dc) == 2  # Bruhat decomposition: B and BwB


def test_quotient_and_normality():
    G = group("sym(3)")
    A3 = make_named_subgroup(G, "<(1 2 3)>")
    assert is_normal(G, A3)
    Q, proj = quotient_group(G, A3)
    assert Q.order == 2 and is_homomorphism(G, Q, proj)
    with pytest.raises(ValueError):
        quotient_group(G, make_named_subgroup(G, "<(1 2)>"))


def test_direct_product_projection_embedding():
    G = group("aff8 * gl2(3)")
    assert (G.order, G.degree) == (1536, 16)
    A, B = G.factors
    p0, p1 = G.projection(0), G.projection(1)
    pairs = [(a, b) for a in G.generator_indices for b in range(0, G.order, 97)]
    assert is_homomorphism(G, A, p0, pairs) and is_homomorphism(G, B, p1, pairs)
    emb = G.embedding(1)
    assert all(p1[emb[x]] == x and p0[emb[x]] == 0 for x in range(B.order))
    U = make_named_subgroup(G, "u2'*up")
    assert U.order == 24 and U.is_subgroup()


@given(st.integers(0, 47), st.integers(0, 47))
def test_conjugate_subgroups_are_conjugate(g, h):
    G = group("gl2(3)")
    U = make_named_subgroup(G, "up")
    V = conjugate_subgroup(G, U, g)
    ok, w = are_conjugate_subgroups(G, U, V)
    assert ok and conjugate_subgroup(G, U, w).members == V.members
    assert conjugate_subgroup(G, V, h).order == U.order


def test_permutation_cycles():
    p = Permutation.from_cycles([[1, 2, 3]], 4)
    assert p.images == (1, 2, 0, 3)
    assert (p * p.inverse()).is_identity()
    assert str(p) == "(1 2 3)"
