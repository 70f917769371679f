from fractions import Fraction

import pytest

from xraycross.errors import MalformedXray
from xraycross.exactgeom import hull
from xraycross.intpoly import IntPolynomial
from xraycross.ratmath import as_vec
from xraycross.xray import (
    Stratum,
    VertexData,
    WeightedXray,
    complex_dim_of_stratum,
    from_interchange,
    is_toric_structure_free,
    stratum_weights_in,
    to_interchange,
    transform,
    validate_all,
    validate_consistency,
    validate_darboux,
    validate_poset,
)

DIAG = "w2-3-4-5"


def seeds_one():
    return dict(seed_signature=1, seed_poincare=IntPolynomial.one(), seed_euler=1)


def test_weights_at_vertex_in_its_own_span(cp3):
    assert stratum_weights_in(cp3, "v1", "v1") == ()


def test_weights_in_edge_span(cp4):
    got = stratum_weights_in(cp4, "v1", "w1-2")
    assert got == (as_vec((4, 0)),)


def test_weights_of_diagonal_in_top(ncp4):
    got = stratum_weights_in(ncp4, DIAG, "top")
    assert len(got) == 4
    assert set(got) == {
        as_vec((-4, 0)),
        as_vec((-4, 4)),
        as_vec(("-5/2", "5/2")),
        as_vec(("-3/2", "3/2")),
    }


def test_weights_require_comparable_strata(cp4):
    with pytest.raises(ValueError, match="not below"):
        stratum_weights_in(cp4, "w1-2", "w1-3")


def test_complex_dims(cp3, cp4, ncp4):
    assert complex_dim_of_stratum(cp3, "v1") == 0
    assert complex_dim_of_stratum(ncp4, DIAG) == 3
    assert complex_dim_of_stratum(cp4, "top") == 4
    assert complex_dim_of_stratum(ncp4, "top") == 4


def test_toric_structure_free(cp4, ncp4):
    edges = [sid for sid in cp4.ids if sid.startswith("w")]
    assert len(edges) == 10
    assert all(is_toric_structure_free(cp4, sid) for sid in edges)
    assert not is_toric_structure_free(ncp4, DIAG)
    assert is_toric_structure_free(cp4, "v1")
    assert is_toric_structure_free(ncp4, "w1-2")


@pytest.mark.parametrize(
    "name", ["cp3", "cp4", "ncp4", "toric_triangle", "unit_square", "segment"]
)
def test_generators_pass_all_validators(name, request):
    x = request.getfixturevalue(name)
    assert validate_poset(x) == []
    assert validate_consistency(x) == []
    assert validate_darboux(x) == []
    assert validate_all(x) == []


def drop_stratum(x, sid):
    doc = to_interchange(x)
    doc["strata"] = [
        {**s, "parents": [p for p in s["parents"] if p != sid]}
        for s in doc["strata"]
        if s["id"] != sid
    ]
    doc["vertex_data"].pop(sid, None)
    return from_interchange(doc)


def test_missing_edge_is_face_violation(toric_triangle):
    broken = drop_stratum(toric_triangle, "e1-2")
    kinds = {v.kind for v in validate_poset(broken)}
    assert "face" in kinds


def test_missing_edge_breaks_darboux_at_both_endpoints(cp4):
    broken = drop_stratum(cp4, "w1-2")
    bad = [v for v in validate_darboux(broken) if v.kind == "darboux-subset"]
    assert {v.stratum for v in bad} >= {"v1", "v2"}


def test_duplicate_span_is_uniqueness_violation():
    seg1 = hull([as_vec((0,)), as_vec((1,))])
    seg2 = hull([as_vec((0,)), as_vec((2,))])
    strata = [
        Stratum("a", hull([as_vec((0,))]), ("s1", "s2"), (), VertexData((as_vec((1,)),), **seeds_one())),
        Stratum("b", hull([as_vec((1,))]), ("s1", "s2"), (), VertexData((as_vec((-1,)),), **seeds_one())),
        Stratum("c", hull([as_vec((2,))]), ("s2",), (), VertexData((as_vec((-1,)),), **seeds_one())),
        Stratum("s1", seg1, (), (), None),
        Stratum("s2", seg2, (), (), None),
    ]
    x = WeightedXray(1, 1, tuple(strata))
    kinds = {v.kind for v in validate_poset(x)}
    assert "span-uniqueness" in kinds


def test_single_vertex_xray_vacuously_consistent():
    lone = Stratum(
        "p",
        hull([as_vec((0,))]),
        (),
        (),
        VertexData((as_vec((0,)),), **seeds_one()),
    )
    x = WeightedXray(1, 1, (lone,))
    assert validate_consistency(x) == []
    assert validate_all(x) == []


def test_perturbed_weight_breaks_consistency(ncp4):
    doc = to_interchange(ncp4)
    doc["vertex_data"]["v2"]["weights"][0] = ["-4", "1"]
    broken = from_interchange(doc)
    assert any(v.kind == "consistency" for v in validate_consistency(broken))
    assert validate_darboux(broken) != []


def test_interchange_roundtrip(cp3, cp4, ncp4, unit_square):
    for x in (cp3, cp4, ncp4, unit_square):
        again = from_interchange(to_interchange(x))
        assert again == x
        assert again.fingerprint() == x.fingerprint()


def test_interchange_rejects_bad_rational(cp3):
    doc = to_interchange(cp3)
    doc["vertex_data"]["v1"]["weights"][0] = ["3/0"]
    with pytest.raises(MalformedXray, match="invalid rational"):
        from_interchange(doc)


def test_interchange_rejects_missing_vertex_data(cp3):
    doc = to_interchange(cp3)
    del doc["vertex_data"]["v2"]
    with pytest.raises(MalformedXray, match="v2"):
        from_interchange(doc)


def test_interchange_rejects_stray_vertex_data(cp3):
    doc = to_interchange(cp3)
    doc["vertex_data"]["top"] = doc["vertex_data"]["v1"]
    with pytest.raises(MalformedXray, match="top"):
        from_interchange(doc)


def test_interchange_rejects_wrong_weight_count(cp3):
    doc = to_interchange(cp3)
    doc["vertex_data"]["v3"]["weights"].append(["1"])
    with pytest.raises(MalformedXray, match="v3"):
        from_interchange(doc)


def test_interchange_rejects_unknown_parent(cp3):
    doc = to_interchange(cp3)
    doc["strata"][0] = {**doc["strata"][0], "parents": ["nope"]}
    with pytest.raises(MalformedXray):
        from_interchange(doc)


def test_transform_preserves_validity(ncp4):
    moved = transform(ncp4, ((1, 1), (0, 1)), (3, -2))
    assert validate_all(moved) == []
    assert moved.ids == ncp4.ids
    assert moved.stratum("v2").wall.vertices[0] == as_vec((7, -2))


def test_transform_rejects_singular_matrix(cp4):
    with pytest.raises(ValueError, match="singular|rank"):
        transform(cp4, ((1, 1), (1, 1)), (0, 0))


def test_vertex_data_weights_sorted():
    vd = VertexData((as_vec((2, 0)), as_vec((-1, 1))), **seeds_one())
    assert vd.weights == (as_vec((-1, 1)), as_vec((2, 0)))


def test_poset_shape(ncp4):
    assert ncp4.top_id == "top"
    assert ncp4.dim(DIAG) == 1
    assert ncp4.leq("v2", DIAG)
    assert not ncp4.leq(DIAG, "v2")
    assert set(ncp4.vertices_below(DIAG)) == {"v2", "v3", "v4", "v5"}
    assert ncp4.above("v1") == frozenset({"w1-2", "w1-3", "w1-4", "w1-5", "top"})


def test_rejects_vertex_data_on_positive_dim():
    seg = hull([as_vec((0,)), as_vec((1,))])
    bad = Stratum("s", seg, (), (), VertexData((as_vec((1,)),), **seeds_one()))
    with pytest.raises(MalformedXray):
        WeightedXray(1, 1, (bad,))


def test_rejects_child_wall_outside_parent():
    seg = hull([as_vec((0,)), as_vec((1,))])
    v = Stratum("v", hull([as_vec((5,))]), ("s",), (), VertexData((as_vec((1,)),), **seeds_one()))
    s = Stratum("s", seg, (), (), None)
    with pytest.raises(MalformedXray, match="not contained"):
        WeightedXray(1, 1, (v, s))


def test_rejects_order_cycle():
    seg = hull([as_vec((0,)), as_vec((1,))])
    a = Stratum("a", seg, ("b",), (), None)
    b = Stratum("b", seg, ("a",), (), None)
    with pytest.raises(MalformedXray, match="cycle"):
        WeightedXray(1, 1, (a, b))
