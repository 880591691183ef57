"""The three exotic systems over the extraspecial group of order 343."""

import pytest

from fusionkit import (
    FCR_PROFILES,
    OUT_ORDERS,
    RVDescriptor,
    audit_axioms,
    build_rv,
    comparison_out_group,
    group_isomorphic,
    hom_table_digest,
    is_strongly_closed,
    out_F,
    outer_group_matrices,
)
from fusionkit.rv import _lines, _line_orbits, _mclose


def test_unknown_name_rejected():
    with pytest.raises(ValueError):
        build_rv("rv4")
    with pytest.raises(ValueError):
        RVDescriptor("xx", [], {})


def test_descriptor_rejects_wrong_profile():
    mats = outer_group_matrices("rv1")
    orbits = _line_orbits(mats)
    bad = {orb: 672 for orb in orbits}
    with pytest.raises(ValueError):
        RVDescriptor("rv1", mats, bad)


def test_outer_matrix_groups_close_to_advertised_orders():
    for name, want in OUT_ORDERS.items():
        mats = outer_group_matrices(name)
        assert len(_mclose(mats)) == want, name


def test_line_orbit_sizes_match_profiles():
    for name in OUT_ORDERS:
        mats = outer_group_matrices(name)
        sizes = sorted(len(o) for o in _line_orbits(mats))
        assert sizes == sorted(n for n, _ in FCR_PROFILES[name]), name
        assert sum(sizes) == len(_lines()) == 8


def test_rv_systems_structure(rv_systems):
    for name, F in rv_systems.items():
        assert F.S.order == 343
        assert F.p == 7
        assert F.rv.name == name
        # |Aut_F(S)| = |Inn(S)| * |Out_F(S)| = 49 * out, from cached tables
        auts = [t for t in F.hom_to_S_tables(F.S)]
        assert len(auts) == 49 * OUT_ORDERS[name], name
        shape = tuple(sorted(
            (len(orb), t) for orb, t in F.rv_profile.items()
        ))
        assert shape == tuple(sorted(FCR_PROFILES[name])), name
        assert not hasattr(F, "certificate")


def test_rv_rank2_automizer_orders(rv_systems):
    for name, F in rv_systems.items():
        ext = F.rv_extraspecial
        got = []
        for orb, type_order in F.rv_profile.items():
            for line in orb:
                V = F.subgroup(ext.rank2_subgroup(line).ids)
                auts = [t for t in F.hom_to_S_tables(V)
                        if frozenset(t) == V.ids]
                got.append(len(auts))
                assert len(auts) == type_order, (name, line)
        assert len(got) == 8


def test_rv_strongly_closed_only_trivial_and_sylow(rv_systems):
    F = rv_systems["rv3"]
    closed = sorted(Q.order for Q in F.objects() if is_strongly_closed(F, Q))
    assert closed == [1, 343]


def test_rv_rebuild_is_deterministic(rv_systems):
    F = rv_systems["rv3"]
    F2 = build_rv("rv3")
    assert hom_table_digest(F) == hom_table_digest(F2)


@pytest.mark.slow
def test_rv_outer_group_shapes(rv_systems):
    for name, F in rv_systems.items():
        out = out_F(F, F.S)
        assert out.order == OUT_ORDERS[name], name
        want = comparison_out_group(name)
        assert group_isomorphic(out.full(), want.full()) is not None, name


@pytest.mark.slow
def test_rv_axiom_audit(rv_systems):
    assert audit_axioms(rv_systems["rv1"]) == []
