from __future__ import annotations

import random
import sys

import pytest

from oracles import surjection_count
from shufflehom.barhom import disc, f_r
from shufflehom.doldkan import (check_gamma_f_r, check_gamma_n, check_n_gamma, check_symmetry_square, constant,
                                ez_shuffle_map, gamma_functor, l_n_free, normalize, random_chain_seq,
                                random_simplicial, simplicial_from_complex, surjections)
from shufflehom.exactlin import Matrix, Ring
from shufflehom.symseq.rep import ValidationError, random_reduced_seq

Q = Ring.parse("Q")
F2 = Ring.parse("F2")
F3 = Ring.parse("F3")


def test_surjections_are_counted_by_binomials():
    for n in range(5):
        for m in range(n + 1):
            assert len(surjections(n, m)) == surjection_count(n, m)


def test_gamma_of_a_sphere_has_n_simplices_in_degree_n():
    X = simplicial_from_complex(Q, [1], None, 5)
    assert X.dims(0) == [0, 1, 2, 3, 4, 5]
    X.validate()


def test_gamma_of_a_disc():
    d = disc(Q, 1)
    X = simplicial_from_complex(Q, d.degrees, d.diff, 4)
    # one copy of k for the 0-cell and n for the 1-cell
    assert X.dims(0) == [1 + n for n in range(5)]
    X.validate()
    assert normalize(X).homology() == {0: {0: 0, 1: 0}}


def test_constant_object_normalizes_to_degree_zero():
    S = random_reduced_seq(F3, 3, seed=2)
    N = normalize(constant(S, 3))
    assert N.dims() == S.dims()


@pytest.mark.parametrize("ring", [Q, F2, F3])
def test_n_gamma_round_trip(ring):
    rng = random.Random(7)
    for _ in range(3):
        C = random_chain_seq(ring, 3, rng)
        assert check_n_gamma(C, 5) == []


@pytest.mark.parametrize("ring", [Q, F2])
def test_gamma_n_round_trip(ring):
    for seed in range(3):
        X = random_simplicial(ring, 3, 5, seed=seed)
        X.validate()
        assert check_gamma_n(X) == []


def test_gamma_rejects_negative_degrees():
    from shufflehom.symseq.rep import Rep, SymSeq
    C = SymSeq(Q, 1, {1: Rep(Q, 1, [-1], [])})
    with pytest.raises(ValidationError):
        gamma_functor(C, 2)


@pytest.mark.parametrize("ring", [Q, F2, F3])
def test_shuffle_map_is_an_equivariant_chain_map(ring):
    rng = random.Random(3)
    for _ in range(4):
        A = random_simplicial(ring, 2, 3, rng=rng)
        B = random_simplicial(ring, 2, 3, rng=rng)
        s = ez_shuffle_map(A, B)
        assert s.check_chain_map() == []
        assert s.check_equivariant() == []


def test_symmetry_square():
    rng = random.Random(5)
    for ring in (Q, F3):
        for _ in range(3):
            A = random_simplicial(ring, 2, 3, rng=rng)
            B = random_simplicial(ring, 2, 3, rng=rng)
            assert check_symmetry_square(A, B) == []


def test_unsigned_shuffle_map_is_caught():
    dk = sys.modules["shufflehom.doldkan"]
    saved = dk._shuffle_pairs
    dk._shuffle_pairs = lambda i, j: [(mu, nu, 1) for mu, nu, _ in saved(i, j)]
    try:
        d = disc(Q, 1)
        X = simplicial_from_complex(Q, d.degrees, d.diff, 3)
        from shufflehom.doldkan import f_r_simplicial
        A = f_r_simplicial(X, 1, 2)
        s = ez_shuffle_map(A, A)
        assert s.check_chain_map() != []
    finally:
        dk._shuffle_pairs = saved


@pytest.mark.parametrize("ring", [Q, F2])
@pytest.mark.parametrize("r", [1, 2])
def test_gamma_commutes_with_f_r(ring, r):
    d = disc(ring, 2)
    assert check_gamma_f_r(ring, d.degrees, d.diff, r, 4) == []
    assert check_gamma_f_r(ring, [0, 1], None, r, 3) == []


def test_free_simplicial_algebra():
    d = disc(F2, 1)
    M = f_r(d, 1, 3)
    free = l_n_free(M, 3)
    assert free.check_witness()
    assert free.check_algebra_maps() == []
    free.simplicial.validate()
    # only the unit survives
    assert free.homology() == {(0, 0): 1}


def test_l_n_free_needs_reduced_input():
    from shufflehom.symseq.rep import unit_seq
    with pytest.raises(ValidationError):
        l_n_free(unit_seq(Q, 2), 2)


def test_faces_and_degeneracies_of_gamma_are_identity_matrices_on_sections():
    X = simplicial_from_complex(F3, [0], None, 3)
    for (n, j), s in X.degeneracies.items():
        assert s[0] == Matrix.identity(F3, 1)
