import random

import pytest

from oraclemod.errors import NotElementary
from oraclemod.pca import App, Const, K, S, app, pair, tag_leaf, tag_node
from oraclemod.weihrauch import (
    ExtWeihrauchPredicate,
    PartitionedAssemblyPredicate,
    check_oracle_membership_asm,
    check_oracle_membership_w,
    check_weihrauch,
    compose_reducers,
    recheck_certificate_asm,
    recheck_certificate_w,
)

from treebuilder import MEMBERS, NON_MEMBER, OMEGA, TOY_F, TOY_G, TOY_H, TOYS, \
    build_member, mutations, to_term

I = app(S, K, K)
L2_ID = App(K, I)               # l2 r s -> s
L2_APPLY_K = App(K, app(S, I, App(K, K)))  # l2 r s -> s K


def test_identity_reduction_on_all_toys():
    for f in TOYS:
        assert check_weihrauch(f, f, I, L2_ID).accepted


def test_empty_support_reduces_to_anything():
    empty = ExtWeihrauchPredicate([(K, [])])
    assert empty.support == ()
    assert check_weihrauch(empty, TOY_G, I, L2_ID).accepted


def test_chain_and_composites():
    # TOY_G: K |-> [{K K}];  TOY_H: K |-> [{K (K K)}]
    v = check_weihrauch(TOY_G, TOY_H, I, L2_APPLY_K)
    assert v.accepted
    v = check_weihrauch(TOY_H, TOY_H, I, L2_ID)
    assert v.accepted
    l1c, l2c = compose_reducers(I, L2_APPLY_K, I, L2_ID)
    assert check_weihrauch(TOY_G, TOY_H, l1c, l2c).accepted


def test_composite_of_accepted_factors_is_accepted():
    # f <= g via (I, s |-> s K): {S} pulled back from {K S}.
    f = ExtWeihrauchPredicate([(K, [[S]])])
    g = ExtWeihrauchPredicate([(K, [[App(K, S)]])])
    h = ExtWeihrauchPredicate([(K, [[App(K, App(K, S))]])])
    assert check_weihrauch(f, g, I, L2_APPLY_K).accepted
    assert check_weihrauch(g, h, I, L2_APPLY_K).accepted
    l1c, l2c = compose_reducers(I, L2_APPLY_K, I, L2_APPLY_K)
    assert check_weihrauch(f, h, l1c, l2c).accepted


def test_rejection_records_witness():
    f = ExtWeihrauchPredicate([(K, [[S]])])
    g = ExtWeihrauchPredicate([(K, [[App(K, K)]])])
    v = check_weihrauch(f, g, I, L2_ID)  # K K stays K K, never lands in {S}
    assert v.verdict == "rejected"
    assert v.witness is not None


def test_l1_outside_support_rejected():
    f = ExtWeihrauchPredicate([(K, [[S]])])
    g = ExtWeihrauchPredicate([(App(K, K), [[S]])])
    v = check_weihrauch(f, g, I, L2_ID)  # l1 K = K, but supp(g) = {K K}
    assert v.verdict == "rejected"


def test_diverging_reducer_is_unknown():
    f = ExtWeihrauchPredicate([(K, [[S]])])
    v = check_weihrauch(f, f, App(K, App(OMEGA, OMEGA)), L2_ID, fuel=2_000)
    assert v.verdict == "unknown"


def test_non_elementary_reducers_rejected():
    f = ExtWeihrauchPredicate([(K, [[S]])])
    with pytest.raises(NotElementary):
        check_weihrauch(f, f, Const("oracle"), L2_ID)


# -- membership -------------------------------------------------------------


def test_leaf_membership():
    assert check_oracle_membership_w(TOY_F, MEMBERS, tag_leaf(MEMBERS[0])).is_member
    v = check_oracle_membership_w(TOY_F, MEMBERS, tag_leaf(NON_MEMBER))
    assert v.verdict == "not_member"


def test_vacuous_node_is_member():
    t = tag_node(App(K, S), Const("inert"))  # the K S instance has the empty family
    assert check_oracle_membership_w(TOY_F, MEMBERS, t).is_member


def test_unmatched_realizer_not_member():
    t = tag_node(NON_MEMBER, Const("inert"))
    assert check_oracle_membership_w(TOY_F, MEMBERS, t).verdict == "not_member"


def test_term_is_normalized_first():
    t = app(K, tag_leaf(MEMBERS[1]), S)
    assert check_oracle_membership_w(TOY_F, MEMBERS, t).is_member


def test_built_trees_member_and_mutations_never():
    rng = random.Random(99)
    for _ in range(30):
        bt = build_member(rng, TOY_F, depth=3)
        t = to_term(bt)
        v = check_oracle_membership_w(TOY_F, MEMBERS, t)
        assert v.is_member, v
        assert recheck_certificate_w(TOY_F, MEMBERS, t, v.certificate)
        for m in mutations(bt):
            assert not check_oracle_membership_w(TOY_F, MEMBERS, m).is_member


def build_deep(levels):
    from treebuilder import BLeaf, BNode

    cur = BLeaf(MEMBERS[0])
    for _ in range(levels):
        cur = BNode(K, 0, [(S, cur)])
    return cur


def test_depth_exhaustion_is_unknown():
    t = to_term(build_deep(3))
    assert check_oracle_membership_w(TOY_F, MEMBERS, t, depth=5).is_member
    assert check_oracle_membership_w(TOY_F, MEMBERS, t, depth=1).verdict == "unknown"


def test_diverging_branch_is_unknown():
    c = Const("c", rules=((S, App(OMEGA, OMEGA)),))
    t = tag_node(K, c)
    v = check_oracle_membership_w(TOY_F, MEMBERS, t, fuel=2_000)
    assert v.verdict == "unknown"


def test_asm_examples():
    P = PartitionedAssemblyPredicate(
        {"x": K, "y": K, "z": App(S, K)},
        {"x": [S], "y": [], "z": [S, App(K, K)]},
    )
    assert check_oracle_membership_asm(P, MEMBERS, tag_leaf(MEMBERS[0])).is_member
    # x and y share the realizer K; y's empty answer set gives a vacuous proof
    t = tag_node(K, Const("inert"))
    v = check_oracle_membership_asm(P, MEMBERS, t)
    assert v.is_member and v.certificate["choice"] == "element y"
    assert recheck_certificate_asm(P, MEMBERS, t, v.certificate)
    # no element carries this realizer
    bad = tag_node(App(K, K), Const("inert"))
    assert check_oracle_membership_asm(P, MEMBERS, bad).verdict == "not_member"
    # z realizes a two-obligation node
    c = Const(
        "c2", rules=((S, tag_leaf(MEMBERS[0])), (App(K, K), tag_leaf(MEMBERS[1])))
    )
    assert check_oracle_membership_asm(P, MEMBERS, tag_node(App(S, K), c)).is_member


def test_malformed_terms_not_member():
    assert check_oracle_membership_w(TOY_F, MEMBERS, K).verdict == "not_member"
    assert (
        check_oracle_membership_w(TOY_F, MEMBERS, pair(App(K, K), S)).verdict
        == "not_member"
    )
