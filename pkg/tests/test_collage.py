"""Collages, the lax matrix calculus, and their round trips."""

import pytest

from laxcat.collage import (assemble_matrix, block_multiply, build_diagram,
                            check_absoluteness, check_bilimit_roundtrip,
                            check_block_multiply, check_semiorthogonal,
                            collage_of_profunctor, grothendieck,
                            identity_block_decomposition, restrict_matrix)
from laxcat.errors import InvalidParameter
from laxcat.fincat import CatFunctor, standard_category
from laxcat.profunctor import compose_profunctors, from_functor
from laxcat.rand import (rand_category, rand_diagram, rand_profunctor,
                         rng_from_seed)


def interval_diagram():
    I = standard_category("interval")
    D2 = standard_category("simplex", 2)
    F = CatFunctor(I, D2, {"0": "0", "1": "2"},
                   {"id_0": "0<=0", "id_1": "2<=2", "u": "0<=2"})
    return build_diagram(I, {"0": I, "1": D2}, {"u": F}), F


def test_grothendieck_objects_and_homs():
    X, _ = interval_diagram()
    G = grothendieck(X)
    assert len(G.total.objects) == 2 + 3
    # no morphisms from the far fiber back to the near one
    assert G.total.hom("(1,0)", "(0,0)") == ()


def test_grothendieck_matches_profunctor_collage():
    """Gluing along a functor and gluing along its representable give the
    same composition table, not merely isomorphic ones."""
    X, F = interval_diagram()
    assert grothendieck(X).total == collage_of_profunctor(from_functor(F)).total


def test_diagram_requires_strict_composites():
    D2 = standard_category("simplex", 2)
    I = standard_category("interval")
    f01 = CatFunctor(I, I, {"0": "0", "1": "1"},
                     {"id_0": "id_0", "id_1": "id_1", "u": "u"})
    f12 = f01
    wrong02 = CatFunctor(I, I, {"0": "0", "1": "0"},
                         {"id_0": "id_0", "id_1": "id_0", "u": "id_0"})
    with pytest.raises(InvalidParameter):
        build_diagram(D2, {"0": I, "1": I, "2": I},
                      {"0<=1": f01, "1<=2": f12, "0<=2": wrong02})


def test_semiorthogonality_batch():
    rng = rng_from_seed(21)
    for _ in range(25):
        C, D = rand_category(rng, 3), rand_category(rng, 3)
        P = rand_profunctor(rng, C, D, 4)
        G = collage_of_profunctor(P)
        assert check_semiorthogonal(G).ok
        rep, blocks = identity_block_decomposition(G)
        assert rep.ok
        # the cross block carries P, element by element, under (u, -)
        B = blocks[("1", "0")]
        for pair, es in P.elements.items():
            assert B.elements[pair] == tuple(f"(u,{e})" for e in es)


def test_restrict_assemble_identity():
    rng = rng_from_seed(22)
    for _ in range(15):
        X = rand_diagram(rng, max_fiber_objects=2)
        G = grothendieck(X)
        T = rand_category(rng, 2)
        for side, M in (("source", rand_profunctor(rng, G.total, T, 3)),
                        ("target", rand_profunctor(rng, T, G.total, 3))):
            data = restrict_matrix(M, G, side)
            assert assemble_matrix(data) == M


def test_bilimit_roundtrip_both_orientations():
    rng = rng_from_seed(23)
    for shape in ("interval", "cospan", "simplex2"):
        for _ in range(6):
            X = rand_diagram(rng, shape, 2)
            G = grothendieck(X)
            T = rand_category(rng, 2)
            for M in (rand_profunctor(rng, G.total, T, 3),
                      rand_profunctor(rng, T, G.total, 3)):
                rep = check_bilimit_roundtrip(X, T, M)
                assert rep.ok, rep.failures


def test_block_multiply_equals_global_composite():
    rng = rng_from_seed(24)
    for _ in range(15):
        X = rand_diagram(rng, max_fiber_objects=2)
        G = grothendieck(X)
        A = rand_category(rng, 2)
        B = rand_category(rng, 2)
        N = rand_profunctor(rng, G.total, B, 3)
        M = rand_profunctor(rng, A, G.total, 3)
        Nd = restrict_matrix(N, G, "source")
        Md = restrict_matrix(M, G, "target")
        assert block_multiply(Nd, Md).profunctor == compose_profunctors(N, M)
        assert check_block_multiply(Nd, Md).ok


def test_absoluteness_against_mixed_factors():
    rng = rng_from_seed(25)
    for _ in range(12):
        X = rand_diagram(rng, max_fiber_objects=2)
        E = rand_category(rng, 3)
        rep = check_absoluteness(X, E)
        assert rep.ok, rep.failures


def test_bilimit_report_rejects_unanchored():
    X, _ = interval_diagram()
    T = standard_category("discrete", 1)
    other = standard_category("discrete", 2)
    P = rand_profunctor(rng_from_seed(1), other, T, 2)
    rep = check_bilimit_roundtrip(X, T, P)
    assert not rep.ok
