from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rankforge.gf import make_field
from rankforge.linalg import FMatrix, rank
from rankforge.seeded import SeededCondenser, lossless_collection, strong
from rankforge.smallfield import (lift_condenser, lossy_extension_degree, min_extension_degree,
                                  phi_lift_matrix, small_field_expander_params, small_field_lossy)
from rankforge.verify import verify_seeded
from oracles import rank_mod_p


def _digit_lift(E, p, k):
    """Reference coordinate expansion using integer digits only."""
    out = []
    for row in E:
        for c in range(k):
            out.append([(x // p**c) % p for x in row])
    return out


def test_lift_of_single_generator():
    F = make_field(2, 2)
    assert phi_lift_matrix(FMatrix(F, [[2]])).to_lists() == [[0], [1]]


def test_lift_of_identity_keeps_rank():
    F = make_field(2, 2)
    L = phi_lift_matrix(FMatrix.identity(F, 2))
    assert L.shape == (4, 2) and rank(L) == 2


@pytest.mark.parametrize("pk", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_lift_of_basis_row_has_full_rank(pk):
    F = make_field(*pk)
    row = FMatrix(F, [[F.p ** i for i in range(F.k)]])
    assert rank(row) == 1
    assert rank(phi_lift_matrix(row)) == F.k


def test_lift_rejects_other_base():
    with pytest.raises(ValueError):
        phi_lift_matrix(FMatrix(make_field(2, 2), [[1]]), make_field(3))


def test_lossless_lift_shape_and_claim():
    C = lift_condenser(lossless_collection(make_field(2, 3), 5, 3, 2))
    assert len(C) == 2 and C.t == 9 and C.field == make_field(2)
    assert C.claim == strong(2, 3)
    assert C.note == "lifted-from p=2 k=3"


def test_identity_collection_lift_preserves_rank():
    F = make_field(3, 2)
    C = SeededCondenser.from_matrices(F, 3, 3, [FMatrix.identity(F, 3)], strong(3, 0))
    L = lift_condenser(C)
    assert rank(L.matrices[0]) == 3
    assert verify_seeded(L).passed


def test_extension_degree_formulas():
    assert lossy_extension_degree(2, 4, 3) == 6
    assert min_extension_degree(3, 109) == 5
    assert min_extension_degree(2, 1) == 0
    p = small_field_expander_params(2, 4, 2, Fraction(1, 19), Fraction(1, 2))
    assert p.k == 9
    with pytest.raises(ValueError):
        small_field_expander_params(2, 4, 2, Fraction(1, 18), Fraction(1, 2))
    with pytest.raises(ValueError):
        small_field_expander_params(2, 4, 2, Fraction(1, 2), Fraction(1, 2))
    assert small_field_expander_params(3, 3, 2, Fraction(1, 20), Fraction(1, 2)).k == 5


def test_small_field_lossy_verifies():
    C = small_field_lossy(2, 3, 2, 1, Fraction(1, 2))
    assert C.field == make_field(2) and C.t == 2 * 5
    assert verify_seeded(C).passed


_EXT = st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 4)])


@settings(max_examples=80, deadline=None)
@given(_EXT, st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_lift_matches_digit_reference_and_composes(pk, t, n, c, seed):
    F = make_field(*pk)
    rng = np.random.default_rng(seed)
    E = rng.integers(0, F.q, (t, n))
    assert phi_lift_matrix(FMatrix(F, E)).to_lists() == _digit_lift(E.tolist(), F.p, F.k)
    # coordinates are linear over the prime field, so lifting commutes with base-field M
    M = FMatrix(F, rng.integers(0, F.p, (n, c)))
    base = F.prime_subfield
    lhs = phi_lift_matrix(FMatrix(F, E)) @ FMatrix(base, M.array)
    assert lhs == phi_lift_matrix(FMatrix(F, E) @ M)


@settings(max_examples=80, deadline=None)
@given(_EXT, st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_lift_never_lowers_rank(pk, t, n, seed):
    F = make_field(*pk)
    E = np.random.default_rng(seed).integers(0, F.q, (t, n))
    lifted = _digit_lift(E.tolist(), F.p, F.k)
    assert rank_mod_p(lifted, F.p) >= rank(FMatrix(F, E))
