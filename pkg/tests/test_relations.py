import pytest
from hypothesis import given, strategies as st

from conftest import group
from gassmann import linalg
from gassmann.groups import conjugate_subgroup, make_named_subgroup, trivial, whole
from gassmann.relations import (Inconclusive, LocalWitness, RelationError, deflate, deflate_along, hom_basis,
                                is_Q_relation, product_relation, relation, verify_witness, zq_witness)


def gl2_rel(p=3):
    G = group(f"gl2({p})")
    return relation(G, [make_named_subgroup(G, "up")], [make_named_subgroup(G, "up'")])


def aff8_rel():
    G = group("aff8")
    return relation(G, [make_named_subgroup(G, "u2")], [make_named_subgroup(G, "u2'")])


def test_q_relation_examples():
    G = group("sym(3)")
    U = make_named_subgroup(G, "<(1 2)>")
    assert is_Q_relation(relation(G, [U], [U]))
    assert is_Q_relation(gl2_rel())
    assert is_Q_relation(aff8_rel())
    assert not is_Q_relation(relation(G, [U], [make_named_subgroup(G, "<(1 2 3)>")]))


def test_classical_brauer_relation_in_s3():
    # 1 - 2 C2 - C3 + 2 S3 as Q-relation: Q[S3] + 2 Q[S3/S3] = 2 Q[S3/C2] + Q[S3/C3]
    G = group("sym(3)")
    C2, C3 = make_named_subgroup(G, "<(1 2)>"), make_named_subgroup(G, "<(1 2 3)>")
    assert is_Q_relation(relation(G, [trivial(G), whole(G), whole(G)], [C2, C2, C3]))


@given(st.integers(0, 47), st.integers(0, 47))
def test_q_relation_conjugation_invariant(g, h):
    t = gl2_rel()
    G = t.group
    moved = relation(G, [conjugate_subgroup(G, t.plus[0], g)], [conjugate_subgroup(G, t.minus[0], h)])
    assert is_Q_relation(moved)


def test_trivial_relation_identity_witness():
    G = group("gl2(3)")
    U = make_named_subgroup(G, "up")
    for q in (2, 3, 5):
        w = zq_witness(relation(G, [U], [U]), q)
        assert isinstance(w, LocalWitness) and w.method == "identity" and w.det_mod_q == 1


@pytest.mark.parametrize("q", [2, 5, 7, 11, 13])
def test_gl2_3_witnesses(q):
    t = gl2_rel()
    w = zq_witness(t, q, budget=512, seed=1)
    assert isinstance(w, LocalWitness)
    assert verify_witness(t, w)
    assert linalg.det_mod(w.matrix, q) != 0


@pytest.mark.parametrize("q", [3, 5, 7, 11])
def test_aff8_odd_witnesses(q):
    t = aff8_rel()
    w = zq_witness(t, q)
    assert isinstance(w, LocalWitness) and verify_witness(t, w)


def test_at_the_excluded_prime_search_is_inconclusive():
    # over Z_(3) the relation fails; the search must report inconclusive, never "false"
    assert isinstance(zq_witness(gl2_rel(), 3, budget=64), Inconclusive)
    # q = 2 on aff8: the exhaustive F_2 search finds nothing either
    w = zq_witness(aff8_rel(), 2)
    assert isinstance(w, Inconclusive) and w.samples == 2 ** w.hom_dim - 1


def test_zero_budget_and_bad_q():
    assert isinstance(zq_witness(gl2_rel(), 5, budget=0), Inconclusive)
    with pytest.raises(RelationError):
        zq_witness(gl2_rel(), 4)
    G = group("sym(3)")
    with pytest.raises(RelationError):
        zq_witness(relation(G, [make_named_subgroup(G, "<(1 2)>")], [make_named_subgroup(G, "<(1 2 3)>")]), 5)


def test_witness_tampering_detected():
    t = gl2_rel()
    w = zq_witness(t, 5)
    w.matrix[0][0] += 1
    assert not verify_witness(t, w)


def test_hom_basis_size_is_double_coset_count():
    basis, n = hom_basis(gl2_rel())
    assert n == 8 and len(basis) == 3


def test_witness_is_seed_deterministic():
    a = zq_witness(gl2_rel(), 7, seed=11)
    b = zq_witness(gl2_rel(), 7, seed=11)
    assert a.matrix == b.matrix


def test_deflate_trivial_and_whole():
    t = gl2_rel()
    G = t.group
    d, Q, proj = deflate(t, trivial(G))
    assert Q.order == 48 and is_Q_relation(d)
    d, Q, _ = deflate(t, whole(G))
    assert Q.order == 1 and is_Q_relation(d)
    with pytest.raises(RelationError):
        deflate(t, make_named_subgroup(G, "up"))


def test_deflate_product_to_factors():
    P = product_relation(aff8_rel(), gl2_rel())
    G = P.group
    for k, base in enumerate((aff8_rel(), gl2_rel())):
        d = deflate_along(P, G.factors[k], G.projection(k), check_hom=False)
        assert d.plus[0].members == base.plus[0].members
        assert d.minus[0].members == base.minus[0].members


def test_product_relation():
    P = product_relation(aff8_rel(), gl2_rel())
    assert P.group.order == 1536 and is_Q_relation(P)
    G = group("sym(3)")
    U = make_named_subgroup(G, "<(1 2)>")
    T = product_relation(relation(G, [U], [U]), relation(G, [U], [U]))
    assert is_Q_relation(T)
    with pytest.raises(RelationError):
        product_relation(relation(G, [U, U], [U, U]), relation(G, [U], [U]))


def test_product_with_trivial_group():
    S1 = group("sym(1)")
    one = relation(S1, [whole(S1)], [whole(S1)])
    P = product_relation(gl2_rel(), one)
    assert P.group.order == 48 and is_Q_relation(P)
    assert isinstance(zq_witness(P, 5), LocalWitness)


def test_product_witness_direct():
    P = product_relation(aff8_rel(), gl2_rel())
    w = zq_witness(P, 5)
    assert isinstance(w, LocalWitness) and verify_witness(P, w)
