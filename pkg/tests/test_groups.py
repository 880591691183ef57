"""Group kernel: named constructions, Sylow machinery, automorphisms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionkit import (
    GroupTooLarge,
    all_subgroups,
    alternating_group,
    automorphisms,
    center,
    centralizer,
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    exponent,
    extraspecial_plus,
    group_isomorphic,
    hom_from_images,
    inner_automorphisms,
    is_abelian,
    isomorphisms,
    normalizer,
    p_core,
    perms,
    quotient_group,
    subgroup_generated,
    sylow_p,
    symmetric_group,
)
from fusionkit.groups import FiniteGroup, is_normal


def test_named_orders():
    assert symmetric_group(4).order == 24
    assert alternating_group(4).order == 12
    assert dihedral_group(8).order == 8
    assert cyclic_group(6).order == 6
    assert elementary_abelian_group(2, 2).order == 4
    assert extraspecial_plus(3).order == 27
    assert extraspecial_plus(7).order == 343


def test_dihedral_degenerate_cases():
    assert group_isomorphic(
        dihedral_group(4).full(), elementary_abelian_group(2, 2).full()
    )
    assert group_isomorphic(dihedral_group(2).full(), cyclic_group(2).full())


def test_extraspecial_invariants():
    for p in (3, 5, 7):
        G = extraspecial_plus(p)
        assert G.order == p ** 3
        assert exponent(G.full()) == p
        Z = center(G.full())
        assert Z.order == p
        # derived subgroup equals the center
        comm = set()
        for i in G.generator_ids():
            for j in range(G.order):
                a, b = G.elements[i], G.elements[j]
                comm.add(G.index[perms.mul(
                    perms.mul(perms.inverse(a), perms.inverse(b)),
                    perms.mul(a, b),
                )])
        assert subgroup_generated(G, comm).ids == Z.ids


def test_extraspecial_rejects_even_prime():
    with pytest.raises(ValueError):
        extraspecial_plus(2)
    with pytest.raises(ValueError):
        extraspecial_plus(9)


def test_extraspecial_subgroup_profile():
    # order-p subgroups: (p^3-1)/(p-1) cyclic lines; order-p^2: p+1 planes
    for p in (3, 7):
        G = extraspecial_plus(p)
        subs = all_subgroups(G.full())
        by_order = {}
        for H in subs:
            by_order[H.order] = by_order.get(H.order, 0) + 1
        assert by_order[p] == (p ** 3 - 1) // (p - 1)
        assert by_order[p * p] == p + 1
        assert by_order[1] == 1 and by_order[p ** 3] == 1


def test_automorphism_group_order_of_extraspecial_27():
    G = extraspecial_plus(3)
    auts = automorphisms(G.full())
    assert len(auts) == 432  # |Inn| * |GL2(3)| = 9 * 48
    inner = inner_automorphisms(G.full())
    assert len(inner) == 9
    assert set(inner) <= set(auts)


def test_automorphisms_form_group():
    G = dihedral_group(8)
    auts = automorphisms(G.full())
    assert len(auts) == 8
    tabs = {a.images for a in auts}
    for a in auts:
        for b in auts:
            assert a.then(b).images in tabs
    inn = inner_automorphisms(G.full())
    assert len(inn) == G.order // center(G.full()).order


def test_sylow_order_and_conjugacy():
    G = symmetric_group(4)
    S1 = sylow_p(G.full(), 2)
    assert S1.order == 8
    assert sylow_p(G.full(), 3).order == 3
    # any two Sylow subgroups are conjugate by an explicit element
    g0 = G.index[(1, 0, 2, 3)]
    ids = frozenset(
        G.index[perms.conjugate(G.elements[i], G.elements[g0])]
        for i in S1.ids
    )
    S2 = subgroup_generated(G, ids)
    found = any(
        frozenset(
            G.index[perms.conjugate(G.elements[i], g)] for i in S1.ids
        ) == S2.ids
        for g in G.elements
    )
    assert found


def test_p_core():
    G = symmetric_group(4)
    O2 = p_core(G.full(), 2)
    assert O2.order == 4
    assert is_normal(G.full(), O2)
    S = sylow_p(G.full(), 2)
    assert O2.ids <= S.ids
    assert p_core(G.full(), 3).order == 1


def test_quotient_group():
    G = symmetric_group(4)
    V = p_core(G.full(), 2)
    Q, theta = quotient_group(G.full(), V)
    assert Q.order == 6
    # theta is a surjective homomorphism with kernel V
    for i in range(G.order):
        for j in G.generator_ids():
            assert theta[G.mul_ids(i, j)] == Q.mul_ids(theta[i], theta[j])
    assert {i for i in theta if theta[i] == Q.identity_id} == set(V.ids)


def test_all_subgroups_counts():
    assert len(all_subgroups(dihedral_group(8).full())) == 10
    assert len(all_subgroups(symmetric_group(4).full())) == 30
    assert len(all_subgroups(elementary_abelian_group(2, 2).full())) == 5
    assert len(all_subgroups(extraspecial_plus(3).full())) == 19


def test_centralizer_normalizer():
    G = symmetric_group(4)
    S = sylow_p(G.full(), 2)
    Z = center(S)
    assert Z.order == 2
    assert centralizer(S, Z).ids == S.ids
    C = subgroup_generated(G, [G.index[(1, 0, 3, 2)]])
    assert normalizer(S, C).order >= centralizer(S, C).order


def test_isomorphism_search():
    assert group_isomorphic(dihedral_group(8).full(),
                            cyclic_group(8).full()) is None
    assert group_isomorphic(elementary_abelian_group(2, 2).full(),
                            cyclic_group(4).full()) is None
    iso = group_isomorphic(
        dihedral_group(8).full(),
        FiniteGroup(4, [(1, 2, 3, 0), (1, 0, 3, 2)]).full(),
    )
    assert iso is not None
    n = sum(1 for _ in isomorphisms(cyclic_group(6).full(),
                                    cyclic_group(6).full()))
    assert n == 2


def test_group_cap(monkeypatch):
    monkeypatch.setenv("FUSIONKIT_MAX_GROUP_ORDER", "10")
    with pytest.raises(GroupTooLarge):
        symmetric_group(4)
    monkeypatch.delenv("FUSIONKIT_MAX_GROUP_ORDER")
    assert symmetric_group(4).order == 24


def test_hom_from_images_rejects_non_hom():
    G = symmetric_group(3)
    C3 = subgroup_generated(G, [G.index[(1, 2, 0)]])
    C2 = G.index[(1, 0, 2)]
    assert hom_from_images(C3, G, C3.generator_ids(), [C2]) is None


@settings(max_examples=30)
@given(st.sets(st.integers(min_value=0, max_value=23), max_size=3))
def test_generated_subgroups_close(seed):
    G = symmetric_group(4)
    H = subgroup_generated(G, seed)
    assert H.is_subgroup_closed()
    assert G.order % H.order == 0


@given(st.permutations(range(4)))
def test_abelian_and_exponent(p):
    G = cyclic_group(6)
    assert is_abelian(G.full())
    assert exponent(G.full()) == 6
    assert not is_abelian(symmetric_group(3).full())
