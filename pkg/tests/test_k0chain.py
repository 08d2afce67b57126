import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laxcat.errors import (CompositeNonzero, DifferentialSquareNonzero,
                           DimensionMismatch, InvalidParameter,
                           NotANullHomotopy)
from laxcat.k0chain import (BlockGradedMatrix, GradedIndex, add_chain_maps,
                            as_matrix, block_plain_multiply, build_chain_map,
                            build_complex, build_homotopy, compose_chain_maps,
                            cone, cone_from_data, cone_star_matrix,
                            cone_to_data, det_exact, direct_sum, euler_char,
                            eye, graded_map_image, graded_sign_reindex,
                            graded_to_vector, hom_basis,
                            hom_complex, hom_complex_with_basis, homology,
                            homology_all, identity_chain_map, is_acyclic,
                            is_quasi_iso, is_zero_matrix, kernel_basis,
                            mat_eq, shift, sign_scale_rows,
                            smith_normal_form, snf_diagonal_naive,
                            star_multiply, tot, validate_complex,
                            zero_chain_map, zeros)
from laxcat.rand import (rand_chain_map, rand_complex, rand_graded,
                         rand_quasi_iso_case, rand_universal_case,
                         rng_from_seed)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m, max_size=m)))


# -- matrices ------------------------------------------------------------------

def test_as_matrix_rejects_bools():
    with pytest.raises(DimensionMismatch):
        as_matrix([[True]])


def test_det_exact_small():
    assert det_exact(as_matrix([[2, 1], [1, 1]])) == 1
    assert det_exact(as_matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 0
    assert det_exact(eye(4)) == 1


# -- complexes -----------------------------------------------------------------

def test_build_complex_rejects_nonzero_square():
    with pytest.raises(DifferentialSquareNonzero):
        build_complex({0: 1, 1: 1, 2: 1}, {1: [[1]], 2: [[1]]})


def test_build_complex_rejects_bad_shape():
    with pytest.raises(DimensionMismatch):
        build_complex({0: 2, 1: 1}, {1: [[1]]})


def test_build_complex_trims_zero_ranks():
    C = build_complex({0: 1, 1: 0, 5: 0}, {})
    assert C.ranks == {0: 1}
    assert C.window == (0, 0)
    assert validate_complex(C).ok


def test_shift_sign_and_involution():
    C = build_complex({0: 1, 1: 1}, {1: [[3]]})
    S = shift(C, 1)
    assert S.rank(2) == 1
    assert S.diff(2)[0, 0] == -3
    assert shift(S, -1) == C


def test_direct_sum_and_euler():
    A = build_complex({0: 2, 1: 1}, {1: [[1], [0]]})
    B = build_complex({0: 1, 2: 3}, {})
    S = direct_sum(A, B)
    assert S.rank(0) == 3 and S.rank(2) == 3
    assert euler_char(S) == euler_char(A) + euler_char(B)


# -- chain maps ------------------------------------------------------------------

def test_chain_map_square_enforced():
    A = build_complex({0: 1, 1: 1}, {1: [[1]]})
    Z = build_complex({0: 1}, {})
    with pytest.raises(InvalidParameter):
        build_chain_map(A, Z, {0: [[1]]})


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_graded_image_is_chain_map(seed):
    rng = rng_from_seed(seed)
    A, _ = rand_complex(rng)
    B, _ = rand_complex(rng)
    f = graded_map_image(A, B, rand_graded(rng, A, B))
    for n in set(A.ranks) | set(B.ranks):
        assert mat_eq(B.diff(n) @ f.mat(n), f.mat(n - 1) @ A.diff(n))


def test_homotopy_orientation_enforced():
    Z = build_complex({0: 1}, {})
    two = build_chain_map(Z, Z, {0: [[2]]})
    with pytest.raises(NotANullHomotopy):
        build_homotopy(zero_chain_map(Z, Z), two, {})


# -- cone -------------------------------------------------------------------------

def test_cone_identity_acyclic():
    rng = rng_from_seed(30)
    for _ in range(10):
        A, _ = rand_complex(rng)
        assert is_acyclic(cone(identity_chain_map(A)).complex)


def test_cone_times_two():
    Z = build_complex({0: 1}, {})
    two = build_chain_map(Z, Z, {0: [[2]]})
    groups = homology_all(cone(two).complex)
    assert list(groups) == [0]
    assert groups[0].free == 0 and groups[0].torsion == (2,)


def test_cone_euler():
    rng = rng_from_seed(31)
    for _ in range(15):
        A, _ = rand_complex(rng)
        B, _ = rand_complex(rng)
        f = rand_chain_map(rng, A, B)
        assert euler_char(cone(f).complex) == euler_char(B) - euler_char(A)


def test_cone_inclusion_projection_composite():
    rng = rng_from_seed(32)
    A, _ = rand_complex(rng)
    B, _ = rand_complex(rng)
    f = rand_chain_map(rng, A, B)
    mc = cone(f)
    comp = compose_chain_maps(mc.projection, mc.inclusion)
    assert all(is_zero_matrix(m) for m in comp.matrices.values())


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_quasi_iso_two_routes_agree(seed):
    f, expected = rand_quasi_iso_case(rng_from_seed(seed))
    assert is_quasi_iso(f) == expected
    assert is_acyclic(cone(f).complex) == expected


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_cone_universal_roundtrip(seed):
    f, g, H = rand_universal_case(rng_from_seed(seed))
    phi = cone_from_data(f, g, H)
    g2, H2 = cone_to_data(f, phi)
    assert g2 == g and H2 == H
    assert cone_from_data(f, g2, H2) == phi


def test_from_data_rejects_wrong_homotopy():
    Z = build_complex({0: 1}, {})
    f = identity_chain_map(Z)
    with pytest.raises(NotANullHomotopy):
        cone_from_data(f, f, build_homotopy(zero_chain_map(Z, Z),
                                            zero_chain_map(Z, Z), {}))


# -- hom complex --------------------------------------------------------------------

def test_hom_basis_counts():
    A = build_complex({0: 2, 1: 1}, {1: [[0], [0]]})
    B = build_complex({0: 3}, {})
    assert len(hom_basis(A, B, 0)) == 6
    assert len(hom_basis(A, B, -1)) == 3
    H = hom_complex(A, B)
    assert H.rank(0) == 6 and H.rank(-1) == 3


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_chain_maps_are_reindexed_cycles(seed):
    rng = rng_from_seed(seed)
    A, _ = rand_complex(rng)
    B, _ = rand_complex(rng)
    f = rand_chain_map(rng, A, B)
    H, _ = hom_complex_with_basis(A, B)
    vec = graded_to_vector(A, B, 0, graded_sign_reindex(dict(f.matrices)))
    assert is_zero_matrix(H.diff(0) @ vec)


def test_cycles_are_reindexed_chain_maps():
    # every integral cycle in degree 0 reindexes to an honest chain map
    rng = rng_from_seed(33)
    for _ in range(10):
        A, _ = rand_complex(rng)
        B, _ = rand_complex(rng)
        H, bases = hom_complex_with_basis(A, B)
        if not H.rank(0):
            continue
        K = kernel_basis(H.diff(0))
        for col in range(K.shape[1]):
            gmap = {}
            for pos, (k, i, j) in enumerate(bases[0]):
                if K[pos, col] != 0:
                    gmap.setdefault(k, zeros(B.rank(k), A.rank(k)))
                    gmap[k][i, j] = K[pos, col]
            mats = graded_sign_reindex(gmap)
            build_chain_map(A, B, mats)


# -- tot ---------------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(seeds)
def test_tot_of_two_term_tower_is_shifted_cone(seed):
    rng = rng_from_seed(seed)
    A, _ = rand_complex(rng)
    B, _ = rand_complex(rng)
    f = rand_chain_map(rng, A, B)
    assert tot([A, B], [f]) == shift(cone(f).complex, -1)


def test_tot_requires_zero_composites():
    Z = build_complex({0: 1}, {})
    i = identity_chain_map(Z)
    with pytest.raises(CompositeNonzero):
        tot([Z, Z, Z], [i, i])


def test_tot_euler_alternating():
    rng = rng_from_seed(34)
    A, _ = rand_complex(rng)
    B, _ = rand_complex(rng)
    f = rand_chain_map(rng, A, B)
    zero = zero_chain_map(B, A)
    T = tot([A, B, A], [f, zero])
    assert euler_char(T) == euler_char(A) - euler_char(B) + euler_char(A)


# -- star product ---------------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(seeds)
def test_unsigned_cone_matrix_star_squares_to_zero(seed):
    rng = rng_from_seed(seed)
    A, _ = rand_complex(rng)
    B, _ = rand_complex(rng)
    f = rand_chain_map(rng, A, B)
    N = cone_star_matrix(f)
    assert star_multiply(N, N).is_zero()
    # scaling block rows by the grade sign turns star into the plain product
    assert star_multiply(N, N) == block_plain_multiply(N, sign_scale_rows(N))


def test_star_needs_matching_inner_indices():
    a = BlockGradedMatrix((GradedIndex("x", 0, 1),), (GradedIndex("y", 1, 1),),
                          {("x", "y"): eye(1)})
    with pytest.raises(Exception):
        star_multiply(a, a)


# -- smith normal form -----------------------------------------------------------------

def test_snf_frozen_example():
    dec = smith_normal_form([[2, 4], [6, 8]])
    assert dec.diagonal() == [2, 4]
    assert dec.verify().ok


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_verifies(mat):
    dec = smith_normal_form(mat)
    assert dec.verify().ok


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m, max_size=m))))
def test_snf_matches_naive_oracle(mat):
    assert smith_normal_form(mat).diagonal() == snf_diagonal_naive(mat)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_basis_spans_kernel(mat):
    A = as_matrix(mat)
    K = kernel_basis(A)
    assert is_zero_matrix(A @ K)
    if K.shape[1]:
        # primitive: the basis extends to a basis of the ambient lattice
        assert all(v == 1 for v in smith_normal_form(K).diagonal())


# -- homology ---------------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(seeds)
def test_homology_matches_construction(seed):
    C, known = rand_complex(rng_from_seed(seed))
    assert homology_all(C) == known


def test_homology_of_twisted_disk():
    C = build_complex({0: 1, 1: 1}, {1: [[6]]})
    h = homology(C, 0)
    assert h.free == 0 and h.torsion == (6,)
    assert homology(C, 1).is_zero()
