from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from rankforge.expander import (DimExpander, expander_from_two_source, expander_params_gamma0,
                                expander_params_general, tensor_maps, tensor_then_condense)
from rankforge.gf import make_field
from rankforge.linalg import FMatrix, hstack, rank
from rankforge.seeded import SeededCondenser, lossy, lossy_collection
from rankforge.twosource import BilinearCondenser, inner_condenser_search
from rankforge.verify import verify_expander, witness_violates
from oracles import all_subspaces, basis_of, matmul_mod_p, rank_mod_p, transpose


def test_tensor_maps_single_copy_is_identity():
    F = make_field(5)
    (T,) = tensor_maps(F, 3, 1)
    assert T == FMatrix.identity(F, 3)


def test_second_block_map_sends_e1_to_e3():
    F = make_field(3)
    T1, T2 = tensor_maps(F, 2, 2)
    e1 = FMatrix(F, [[1], [0]])
    assert (T2 @ e1).to_lists() == [[0], [0], [1], [0]]


def test_block_maps_double_every_line_of_f3_squared():
    F = make_field(3)
    maps = tensor_maps(F, 2, 2)
    for v in product(range(3), repeat=2):
        if any(v):
            col = FMatrix(F, [[x] for x in v])
            assert rank(hstack([T @ col for T in maps])) == 2


def _lossy_stub(F, n, d, r, eps, mode="le"):
    stack = np.random.default_rng(0).integers(0, F.q, (3, n, n * d))
    return SeededCondenser(F, n * d, n, stack, lossy(r, eps, mode))


def test_tensor_then_condense_degree_and_claim():
    F = make_field(3)
    X = tensor_then_condense(_lossy_stub(F, 2, 2, 2, 0), 2, 0)
    assert X.degree == 6
    assert X.alpha == 2 and X.eps == Fraction(1, 2)


def test_tensor_then_condense_rejects_eq_mode_and_bad_shapes():
    F = make_field(3)
    with pytest.raises(ValueError):
        tensor_then_condense(_lossy_stub(F, 2, 2, 2, Fraction(1, 2), "eq"), 2, 0)
    with pytest.raises(ValueError):
        tensor_then_condense(_lossy_stub(F, 2, 2, 2, Fraction(1, 2)), 3, 0)
    with pytest.raises(ValueError):
        tensor_then_condense(_lossy_stub(F, 2, 2, 1, Fraction(1, 2)), 2, 0)


def test_gamma0_parameters():
    p = expander_params_gamma0(4, 2, Fraction(1, 4), Fraction(1, 4))
    assert (p.condenser_size, p.degree, p.eps, p.alpha) == (16, 32, Fraction(1, 4), Fraction(3, 2))
    p = expander_params_gamma0(4, 3, Fraction(1, 6), Fraction(1, 2))
    assert (p.condenser_size, p.degree, p.eps, p.alpha) == (12, 36, Fraction(1, 6), Fraction(3, 2))
    with pytest.raises(ValueError):
        expander_params_gamma0(4, 2, Fraction(1, 2), Fraction(1, 4))


def test_general_parameters():
    p = expander_params_general(Fraction(1, 4), Fraction(1, 2))
    assert (p.d, p.gamma, p.delta, p.degree) == (3, 0, Fraction(1, 3), 108)
    p = expander_params_general(Fraction(1, 3), Fraction(2, 3))
    assert (p.d, p.gamma, p.delta, p.degree) == (3, Fraction(1, 6), Fraction(1, 5), 270)
    assert expander_params_general(Fraction(1, 3), Fraction(1, 3)).alpha == 1


@pytest.mark.parametrize("eps,eta", [(Fraction(a, b), Fraction(c, e)) for a, b in [(1, 2), (1, 3), (1, 4), (2, 7), (1, 10)]
                                     for c, e in [(1, 2), (1, 3), (2, 3), (1, 5), (4, 5)]])
def test_general_parameters_reach_the_target_expansion(eps, eta):
    p = expander_params_general(eps, eta)
    assert 0 <= p.gamma < 1
    assert (1 - p.gamma) * (1 - p.delta) * eps * p.d == eta


def test_lossy_collection_feeds_an_expander_that_verifies():
    F = make_field(13)
    C = lossy_collection(F, 6, 3, 2, Fraction(1, 2))
    X = tensor_then_condense(C, 2, 0, r=1)
    assert X.degree == 2 * len(C)
    assert verify_expander(X).passed


def test_expander_from_two_source_shapes():
    F = make_field(3)
    with pytest.raises(ValueError):
        expander_from_two_source(BilinearCondenser(F, 2, 2, FMatrix.identity(F, 4), 1, 1))
    B = BilinearCondenser(F, 3, 1, FMatrix.identity(F, 3), 1, 1, Fraction(1, 2))
    X = expander_from_two_source(B)
    assert X.degree == 1 and X.alpha == Fraction(1, 2)
    assert X.matrices[0] == FMatrix.identity(F, 3)


def test_brute_force_two_source_gives_degree_two_expander():
    F = make_field(3)
    found = inner_condenser_search(F, 2, 2, 1, 2, 0, seed=0, budget=2000)
    assert found.found
    X = expander_from_two_source(found.condenser.with_claim(1, 2, 0, le_r=True))
    assert X.degree == 2 and X.alpha == 2
    rep = verify_expander(X)
    assert rep.passed and rep.checked == 4


def test_identity_and_zero_expanders():
    F = make_field(2)
    ident = DimExpander(F, 3, np.eye(3, dtype=np.int64)[None], Fraction(2, 3), 1)
    assert verify_expander(ident).passed
    zero = DimExpander(F, 3, np.zeros((2, 3, 3), dtype=np.int64), Fraction(1, 3), Fraction(1, 2))
    rep = verify_expander(zero)
    assert not rep.passed and witness_violates(zero, rep)


@pytest.mark.parametrize("seed", range(3))
def test_expander_statistic_matches_brute_force(seed):
    p, n = 2, 4
    F = make_field(p)
    stack = np.random.default_rng(seed).integers(0, p, (2, n, n))
    X = DimExpander(F, n, stack, Fraction(1, 2), Fraction(3, 2))
    rep = verify_expander(X)
    for s, det in zip((1, 2), rep.details):
        worst = min(
            rank_mod_p(transpose([row for A in stack
                                  for row in transpose(matmul_mod_p(A.tolist(), transpose(basis_of(V, p, s)), p))]), p)
            for V in all_subspaces(p, n, s))
        assert det["worst"] == worst
