from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import group
from gassmann import linalg
from gassmann.groups import (conjugacy_classes, double_cosets, make_named_subgroup, trivial, whole)
from gassmann.repmod import (Pairing, RepresentationError, averaged_gram, canonical_pairing, character_from_json,
                             character_of, direct_sum, embed_in_group_algebra, fixed_subspace,
                             from_generator_matrices, hom_space, inflate, invariant_pairing, kernel_module,
                             module_I2, module_Ip, perm_character, permutation_module, regular_module,
                             summation_map, trivial_module, zero_module)


def by_element_order(G, chi):
    return {G.element_order(cls[0]): v for cls, v in zip(conjugacy_classes(G), chi.values)}


def test_trivial_and_regular_characters():
    G = group("sym(3)")
    assert set(character_of(trivial_module(G)).values) == {1}
    assert character_of(permutation_module(G, whole(G))).values == (1, 1, 1)
    assert by_element_order(G, character_of(regular_module(G))) == {1: 6, 2: 0, 3: 0}
    assert by_element_order(G, perm_character(G, make_named_subgroup(G, "<(1 2)>"))) == {1: 3, 2: 1, 3: 0}


@pytest.mark.parametrize("desc, sub", [("gl2(3)", "up"), ("gl2(3)", "borel"), ("aff8", "u2"), ("aff8", "h"),
                                       ("dihedral(4)", "<(1 3)>"), ("quat8", "trivial")])
def test_perm_character_matches_module(desc, sub):
    G = group(desc)
    U = make_named_subgroup(G, sub)
    V = permutation_module(G, U)
    assert V.dim == U.index
    chi = perm_character(G, U)
    assert chi == character_of(V)
    assert chi.degree == U.index and all(0 <= v <= U.index for v in chi.values)
    assert V.check_homomorphism()


def test_up_and_up_prime_have_equal_characters():
    G = group("gl2(3)")
    assert perm_character(G, make_named_subgroup(G, "up")) == perm_character(G, make_named_subgroup(G, "up'"))


@pytest.mark.parametrize("desc, a, b", [("gl2(3)", "up", "borel"), ("gl2(3)", "up", "up'"), ("aff8", "u2", "h"),
                                        ("aff8", "u2", "u2'"), ("sym(3)", "<(1 2)>", "<(1 2 3)>")])
def test_hom_dimension_counts_double_cosets(desc, a, b):
    G = group(desc)
    U, W = make_named_subgroup(G, a), make_named_subgroup(G, b)
    H = hom_space(permutation_module(G, U), permutation_module(G, W))
    assert len(H) == len(double_cosets(G, U, W))


def test_hom_trivial_trivial():
    G = group("sym(3)")
    assert len(hom_space(trivial_module(G), trivial_module(G))) == 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_module_Ip(p):
    V = module_Ip(p)
    G = V.group
    assert V.dim == p + 1 and character_of(V).degree == p + 1
    assert hom_space(V, permutation_module(G, make_named_subgroup(G, "borel"))) == []
    assert len(fixed_subspace(V, make_named_subgroup(G, "up"))) == 1


def test_module_I3_homomorphism_exhaustive():
    assert module_Ip(3).check_homomorphism()


def test_module_I2():
    V = module_I2()
    G = V.group
    assert V.dim == 4 and character_of(V).degree == 4
    assert hom_space(V, permutation_module(G, make_named_subgroup(G, "h"))) == []
    assert V.check_homomorphism()


def test_summation_kernel_plus_transpose_image_is_everything():
    G = group("gl2(3)")
    U, B = make_named_subgroup(G, "up"), make_named_subgroup(G, "borel")
    S = summation_map(G, U, B)
    ker = linalg.kernel(S)
    img = S  # row b is the adjoint image of the coset gB: the sum of the U-cosets inside it
    assert linalg.rank(ker + img, 8) == 8 and len(ker) + linalg.rank(img, 8) == 8


def test_kernel_module_extremes():
    G = group("sym(3)")
    V = permutation_module(G, make_named_subgroup(G, "<(1 2)>"))
    zero = [[0] * 3 for _ in range(3)]
    assert kernel_module(zero, V, V).dim == 3
    assert kernel_module(linalg.identity(3), V, V).dim == 0
    with pytest.raises(RepresentationError):
        kernel_module([[1, 0, 0], [0, 0, 0], [0, 0, 0]], V, V)


@pytest.mark.parametrize("desc, sub", [("gl2(3)", "up"), ("sym(3)", "<(1 2)>"), ("aff8", "u2'")])
def test_fixed_subspace_of_regular_module(desc, sub):
    G = group(desc)
    U = make_named_subgroup(G, sub)
    assert len(fixed_subspace(regular_module(G), U)) == U.index
    assert len(fixed_subspace(regular_module(G), trivial(G))) == G.order


def test_fixed_space_dimension_is_character_average():
    V = module_Ip(5)
    G = V.group
    chi = character_of(V)
    for name in ("up", "up'", "borel", "whole"):
        U = make_named_subgroup(G, name)
        avg = Fraction(sum(chi.at(u) for u in U.members), U.order)
        assert len(fixed_subspace(V, U)) == avg


@pytest.mark.parametrize("builder", [lambda: module_Ip(3), module_I2,
                                     lambda: regular_module(group("sym(3)"))])
@given(seed=st.integers(0, 2**32))
def test_invariant_pairing_is_valid(builder, seed):
    V = builder()
    P = invariant_pairing(V, seed)
    assert P.check()


def test_pairing_examples():
    G = group("sym(3)")
    T = trivial_module(G)
    assert averaged_gram(T, [[1]]) == [[6]]
    V = permutation_module(G, make_named_subgroup(G, "<(1 2)>"))
    assert canonical_pairing(V).gram == linalg.identity(3)
    I3 = module_Ip(3)
    assert canonical_pairing(I3).check()
    bad = Pairing(V, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert not bad.check()


def test_inflate_and_direct_sum():
    G = group("aff8 * gl2(3)")
    I3 = module_Ip(3, G.factors[1])
    inf = inflate(I3, G.projection(1), G)
    chi = character_of(inf)
    assert chi.degree == 4
    proj = G.projection(1)
    base = character_of(I3)
    for cls in conjugacy_classes(G)[:40]:
        assert chi.at(cls[0]) == base.at(proj[cls[0]])
    I2 = module_I2(G.factors[0])
    V = direct_sum([inflate(I2, G.projection(0), G), inf])
    assert V.dim == 8
    assert character_of(V) == character_of(inflate(I2, G.projection(0), G)) + chi
    assert canonical_pairing(V).check()


def test_inflate_trivial_kernel_and_trivial_module():
    G = group("sym(3)")
    ident = list(range(G.order))
    V = permutation_module(G, make_named_subgroup(G, "<(1 2)>"))
    assert character_of(inflate(V, ident, G)) == character_of(V)
    Q = group("cyclic(2)")
    sign = [0 if G.element_order(g) != 2 else 1 for g in range(G.order)]
    assert set(character_of(inflate(trivial_module(Q), sign, G)).values) == {1}


def test_direct_sum_with_zero():
    G = group("sym(3)")
    V = regular_module(G)
    assert character_of(direct_sum([V, zero_module(G)])) == character_of(V)


def test_embedding_dimensions():
    G = group("gl2(3)")
    U = make_named_subgroup(G, "up")
    assert len(embed_in_group_algebra(permutation_module(G, U))) == 8
    assert len(embed_in_group_algebra(module_Ip(3, G))) == 4
    assert embed_in_group_algebra(kernel_module(linalg.identity(8), permutation_module(G, U),
                                                permutation_module(G, U))) == []


def test_generator_matrix_round_trip():
    V = module_Ip(3)
    W = from_generator_matrices(V.group, V.generator_matrices())
    assert all(W.matrix(g) == V.matrix(g) for g in range(V.group.order))
    assert V.to_json()["dim"] == 4


def test_character_json():
    G = group("sym(3)")
    chi = character_of(regular_module(G))
    assert character_from_json(G, chi.to_json()) == chi
    with pytest.raises(RepresentationError):
        character_from_json(G, ["1"])
