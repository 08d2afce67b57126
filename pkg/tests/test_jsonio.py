import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laxcat.collage import collage_of_profunctor
from laxcat.errors import SchemaError, UnboundedComplex
from laxcat.fincat import build_category, standard_category
from laxcat.jsonio import (category_from_json, category_to_json,
                           chainmap_from_json, chainmap_to_json,
                           collage_to_json, complex_from_json,
                           complex_to_json, diagram_from_json,
                           diagram_to_json, dumps_canonical,
                           functor_from_json, functor_to_json,
                           homology_to_json, matrix_from_json,
                           profunctor_from_json, profunctor_to_json,
                           sniff_kind, snf_to_json, tower_from_json)
from laxcat.k0chain import (as_matrix, build_complex, homology_all, mat_eq,
                            smith_normal_form)
from laxcat.rand import (rand_category, rand_chain_map, rand_complex,
                         rand_diagram, rand_functor, rand_profunctor,
                         rng_from_seed)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


# -- roundtrips -----------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(seeds)
def test_category_roundtrip(seed):
    C = rand_category(rng_from_seed(seed))
    assert category_from_json(category_to_json(C)) == C


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_functor_roundtrip(seed):
    rng = rng_from_seed(seed)
    F = rand_functor(rng, rand_category(rng, 3), rand_category(rng, 3))
    if F is None:
        return
    G = functor_from_json(functor_to_json(F))
    assert G.source == F.source and G.target == F.target
    assert G.obmap == F.obmap and G.mormap == F.mormap


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_profunctor_roundtrip(seed):
    rng = rng_from_seed(seed)
    P = rand_profunctor(rng, rand_category(rng, 3), rand_category(rng, 3))
    Q = profunctor_from_json(profunctor_to_json(P))
    assert Q.source == P.source and Q.target == P.target
    assert Q.elements == P.elements
    assert Q.lact == P.lact and Q.ract == P.ract


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_diagram_roundtrip(seed):
    X = rand_diagram(rng_from_seed(seed))
    Y = diagram_from_json(diagram_to_json(X))
    assert Y.shape == X.shape
    assert Y.fiber == X.fiber
    for f in X.shape.morphisms:
        assert Y.transition[f].obmap == X.transition[f].obmap
        assert Y.transition[f].mormap == X.transition[f].mormap


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_complex_roundtrip(seed):
    C, _ = rand_complex(rng_from_seed(seed))
    assert complex_from_json(complex_to_json(C)) == C


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_chainmap_roundtrip(seed):
    rng = rng_from_seed(seed)
    A, _ = rand_complex(rng)
    B, _ = rand_complex(rng)
    f = rand_chain_map(rng, A, B)
    assert chainmap_from_json(chainmap_to_json(f)) == f


def test_canonical_dumps_is_stable():
    C = standard_category("interval")
    a = dumps_canonical(category_to_json(C))
    b = dumps_canonical(category_from_json(json.loads(a)) and
                        category_to_json(category_from_json(json.loads(a))))
    assert a == b
    assert a.endswith("\n")


# -- schema rejection ------------------------------------------------------------

def test_unknown_key_rejected():
    data = category_to_json(standard_category("interval"))
    data["flavor"] = "sour"
    with pytest.raises(SchemaError):
        category_from_json(data)


def test_missing_key_rejected():
    data = category_to_json(standard_category("interval"))
    del data["composition"]
    with pytest.raises(SchemaError):
        category_from_json(data)


def test_conflicting_composition_triples():
    data = category_to_json(standard_category("interval"))
    data["composition"].append(["id_1", "u", "id_1"])
    with pytest.raises(SchemaError):
        category_from_json(data)


def test_bool_rank_rejected():
    data = complex_to_json(build_complex({0: 1}, {}))
    data["ranks"]["0"] = True
    with pytest.raises(SchemaError):
        complex_from_json(data)


def test_null_window_is_unbounded():
    data = complex_to_json(build_complex({0: 1}, {}))
    data["window"] = None
    with pytest.raises(UnboundedComplex):
        complex_from_json(data)


def test_rank_outside_window_rejected():
    data = complex_to_json(build_complex({0: 1}, {}))
    data["ranks"]["7"] = 2
    with pytest.raises(SchemaError):
        complex_from_json(data)


def test_bad_functor_rejected():
    F = functor_to_json(rand_functor(rng_from_seed(1),
                                     standard_category("interval"),
                                     standard_category("interval")))
    F["obmap"]["0"] = "1"
    F["obmap"]["1"] = "0"
    with pytest.raises(SchemaError):
        functor_from_json(F)


# -- cell keys --------------------------------------------------------------------

def comma_category(names):
    objs = tuple(names)
    idm = {o: f"id({o})" for o in objs}
    src = {idm[o]: o for o in objs}
    comp = {(m, m): m for m in src}
    return build_category(objs, tuple(sorted(src)), src, dict(src), idm, comp)


def test_cell_keys_with_commas_roundtrip():
    # unique split: only one way to read "(a,b,c)" against these objects
    from laxcat.profunctor import build_profunctor
    C = comma_category(["a,b", "c"])
    D = comma_category(["x"])
    P = build_profunctor(C, D, {("x", "a,b"): ["e0"]}, {}, {})
    Q = profunctor_from_json(profunctor_to_json(P))
    assert Q.elements == P.elements


def test_ambiguous_cell_key_rejected():
    from laxcat.profunctor import build_profunctor
    C = comma_category(["a", "a,a"])
    D = comma_category(["a", "a,a"])
    P = build_profunctor(C, D, {("a", "a,a"): ["e0"]}, {}, {})
    data = profunctor_to_json(P)
    # "(a,a,a)" splits as both (a)(a,a) and (a,a)(a)
    with pytest.raises(SchemaError):
        profunctor_from_json(data)


# -- misc shapes ------------------------------------------------------------------

def test_matrix_from_json_forms():
    assert mat_eq(matrix_from_json([[1, 2]]), as_matrix([[1, 2]]))
    assert mat_eq(matrix_from_json({"matrix": [[3]]}), as_matrix([[3]]))
    with pytest.raises(SchemaError):
        matrix_from_json({"matrix": [[True]]})


def test_tower_from_json():
    Z = complex_to_json(build_complex({0: 1}, {}))
    data = {"complexes": [Z, Z], "maps": [{"matrices": {"0": [[2]]}}]}
    complexes, maps = tower_from_json(data)
    assert len(complexes) == 2 and len(maps) == 1
    assert maps[0].mat(0)[0, 0] == 2


def test_homology_and_snf_serialization():
    C = build_complex({0: 1, 1: 1}, {1: [[4]]})
    out = homology_to_json(homology_all(C))
    assert out["0"] == {"free": 0, "torsion": [4]}
    dec = smith_normal_form([[2, 4], [6, 8]])
    blob = snf_to_json(dec)
    assert blob["diagonal"] == [2, 4]
    assert all(k in blob for k in ("U", "S", "V"))


def test_collage_to_json_has_origin():
    rng = rng_from_seed(5)
    P = rand_profunctor(rng, rand_category(rng, 2), rand_category(rng, 2))
    data = collage_to_json(collage_of_profunctor(P))
    assert data["origin"]["kind"] == "profunctor"
    assert category_from_json(
        {k: v for k, v in data.items() if k != "origin"})


def test_sniff_kind():
    assert sniff_kind({"composition": []}) == "category"
    assert sniff_kind({"left_action": {}}) == "profunctor"
    assert sniff_kind({"fibers": {}}) == "diagram"
    assert sniff_kind({"ranks": {}}) == "complex"
    assert sniff_kind({"obmap": {}}) == "functor"
    assert sniff_kind({"complexes": []}) == "tower"
    assert sniff_kind({"matrices": {}}) == "chainmap"
    assert sniff_kind([[1]]) == "matrix"
    with pytest.raises(SchemaError):
        sniff_kind({"mystery": 1})
