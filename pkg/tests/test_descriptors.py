"""JSON descriptors: round trips and the error taxonomy."""

import json

import pytest

from fusionkit import (
    DescriptorError,
    aut_F,
    generated_fusion,
    parse_fusion_generators,
    parse_group_spec,
    parse_subgroup_spec,
    serialize_fusion_generators,
    serialize_group,
    serialize_subgroup,
    sylow_p,
    equal_hom_tables,
)
import fusionkit.groups as groups


GROUP_SPECS = [
    {"type": "named", "name": "symmetric", "n": 4},
    {"type": "named", "name": "dihedral", "order": 8},
    {"type": "named", "name": "cyclic", "n": 6},
    {"type": "named", "name": "elementary_abelian", "p": 3, "rank": 2},
    {"type": "named", "name": "abelian", "invariants": [2, 4]},
    {"type": "named", "name": "extraspecial_plus", "p": 3},
    {"type": "permutation", "degree": 4,
     "generators": [[1, 0, 3, 2], [2, 3, 0, 1]]},
    {"type": "direct_product", "factors": [
        {"type": "named", "name": "cyclic", "n": 2},
        {"type": "named", "name": "symmetric", "n": 3}]},
]


@pytest.mark.parametrize("spec", GROUP_SPECS,
                         ids=lambda s: s.get("name", s["type"]))
def test_group_round_trip(spec):
    G = parse_group_spec(spec)
    data = serialize_group(G)
    assert data["type"] == "permutation"
    G2 = parse_group_spec(data)
    assert G2.order == G.order
    assert set(G2.elements) == set(G.elements)


def test_semidirect_spec():
    spec = {
        "type": "semidirect",
        "base": {"type": "named", "name": "cyclic", "n": 3},
        "actor": {"type": "named", "name": "cyclic", "n": 2},
        # invert the generator: (1,2,0) -> (2,0,1)
        "action": [[[2, 0, 1]]],
    }
    G = parse_group_spec(spec)
    assert G.order == 6
    from fusionkit import is_abelian
    assert not is_abelian(G.full())


def test_group_spec_errors():
    with pytest.raises(DescriptorError):
        parse_group_spec({"type": "nonsense"})
    with pytest.raises(DescriptorError):
        parse_group_spec({"type": "named", "name": "monster"})
    with pytest.raises(DescriptorError):
        parse_group_spec({"type": "named", "name": "cyclic"})  # missing n
    with pytest.raises(DescriptorError):
        parse_group_spec({"type": "permutation", "degree": 3,
                          "generators": [[0, 0, 1]]})
    with pytest.raises(DescriptorError):
        parse_group_spec({"type": "permutation", "degree": 3,
                          "generators": [[1, 0]]})
    with pytest.raises((DescriptorError, ValueError)):
        parse_group_spec({"type": "named", "name": "extraspecial_plus",
                          "p": 2})


def test_group_order_cap(monkeypatch):
    monkeypatch.setenv("FUSIONKIT_MAX_GROUP_ORDER", "10")
    with pytest.raises(groups.GroupTooLarge):
        parse_group_spec({"type": "named", "name": "symmetric", "n": 4})


def test_semidirect_bad_action_shape():
    base = {"type": "named", "name": "cyclic", "n": 3}
    actor = {"type": "named", "name": "cyclic", "n": 2}
    with pytest.raises(DescriptorError):
        parse_group_spec({"type": "semidirect", "base": base,
                          "actor": actor, "action": [[[0, 1]]]})
    with pytest.raises(DescriptorError):
        parse_group_spec({"type": "semidirect", "base": base,
                          "actor": actor, "action": []})
    # a valid permutation that is not an element of the base group
    with pytest.raises(DescriptorError):
        parse_group_spec({"type": "semidirect", "base": base,
                          "actor": actor, "action": [[[0, 2, 1]]]})


def _v4_setup():
    G = parse_group_spec(
        {"type": "named", "name": "elementary_abelian", "p": 2, "rank": 2})
    S = G.full()
    return G, S


def test_fusion_generators_round_trip():
    G, S = _v4_setup()
    ids = S.sorted_ids
    data = [{"domain_gens": [ids[1]], "images": [ids[2]]}]
    gens = parse_fusion_generators(S, data)
    F = generated_fusion(S, 2, gens)
    out = serialize_fusion_generators(F)
    gens2 = parse_fusion_generators(S, out)
    F2 = generated_fusion(S, 2, gens2)
    assert equal_hom_tables(F, F2)


def test_fusion_generator_errors():
    G, S = _v4_setup()
    with pytest.raises(DescriptorError):
        parse_fusion_generators(S, [{"domain_gens": [99], "images": [1]}])
    with pytest.raises(DescriptorError):
        parse_fusion_generators(S, [{"domain_gens": [1], "images": [1, 2]}])
    with pytest.raises(DescriptorError):
        parse_fusion_generators(S, [{"domain_gens": [1]}])
    # a -> identity collapses the domain: not injective
    with pytest.raises(DescriptorError):
        parse_fusion_generators(
            S, [{"domain_gens": [S.sorted_ids[1]],
                 "images": [G.identity_id]}])


def test_fusion_generators_outside_sylow():
    G = parse_group_spec({"type": "named", "name": "symmetric", "n": 4})
    S = sylow_p(G.full(), 2)
    outside = next(i for i in range(G.order) if i not in S.ids)
    with pytest.raises(DescriptorError):
        parse_fusion_generators(S, [{"domain_gens": [outside],
                                     "images": [outside]}])


def test_fusion_generator_non_homomorphism():
    G = parse_group_spec({"type": "named", "name": "cyclic", "n": 4})
    S = G.full()
    g = next(i for i in S.ids if G.element_order(i) == 4)
    t = next(i for i in S.ids if G.element_order(i) == 2)
    # order 4 -> order 2 on the same domain cannot extend
    with pytest.raises(DescriptorError):
        parse_fusion_generators(S, [{"domain_gens": [g], "images": [t]}])


def test_subgroup_spec_round_trip():
    G = parse_group_spec({"type": "named", "name": "symmetric", "n": 4})
    S = sylow_p(G.full(), 2)
    data = serialize_subgroup(S)
    Q = parse_subgroup_spec(S, data)
    assert Q.ids == S.ids
    sub = parse_subgroup_spec(S, [list(G.elements[i])
                                  for i in S.generator_ids()])
    assert sub.ids == S.ids


def test_subgroup_spec_errors():
    G = parse_group_spec({"type": "named", "name": "symmetric", "n": 4})
    S = sylow_p(G.full(), 2)
    with pytest.raises(DescriptorError):
        parse_subgroup_spec(S, [[0, 1]])  # wrong degree
    with pytest.raises(DescriptorError):
        parse_subgroup_spec(S, [[1, 2, 0, 3]])  # a 3-cycle is not in S
    with pytest.raises(DescriptorError):
        parse_subgroup_spec(S, "notalist")


def test_malformed_json_reported(tmp_path):
    from fusionkit.descriptors import load_json
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    with pytest.raises(DescriptorError):
        load_json(str(f))


def test_aut_count_survives_round_trip():
    G, S = _v4_setup()
    ids = S.sorted_ids
    a, b = ids[1], ids[2]
    ab = G.mul_ids(a, b)
    data = [{"domain_gens": [a, b], "images": [b, ab]}]
    F = generated_fusion(S, 2, parse_fusion_generators(S, data))
    assert len(aut_F(F, F.S)) == 3
