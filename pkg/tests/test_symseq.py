from __future__ import annotations

import random
import sys
import warnings
from math import comb

import pytest

from oracles import all_shuffles
from shufflehom.exactlin import Ring
from shufflehom.symseq import perm as P
from shufflehom.symseq.odot import PowerData, norm_map, odot, power_coinvariants, power_invariants, twist
from shufflehom.symseq.rep import (SymSeq, ValidationError, concentrated, random_chain_rep, random_reduced_seq,
                                   regular_rep, sign_rep, trivial_rep, unit_seq)

Q = Ring.parse("Q")
F2 = Ring.parse("F2")
F3 = Ring.parse("F3")


def level1(ring, dim=1, L=4):
    return concentrated(trivial_rep(ring, 1) if dim == 1 else _sum_trivial(ring, dim), L)


def _sum_trivial(ring, dim):
    from shufflehom.symseq.rep import direct_sum
    return direct_sum([trivial_rep(ring, 1)] * dim)


# permutations ----------------------------------------------------------------


def test_chi():
    assert P.chi(2, 1) == (2, 3, 1)
    assert P.chi(0, 3) == (1, 2, 3)
    assert P.chi(1, 1) == (2, 1)


def test_block_permutation():
    assert P.block_permutation((1, 2), 3) == (1, 2, 3, 4, 5, 6)
    assert P.block_permutation((2, 1), 2) == (3, 4, 1, 2)
    assert P.block_permutation((3, 1, 2), 1) == (3, 1, 2)


@pytest.mark.parametrize("p,q", [(0, 2), (1, 1), (2, 2), (3, 2), (1, 4)])
def test_shuffles_match_filtered_permutations(p, q):
    assert sorted(P.shuffles(p, q)) == sorted(all_shuffles(p, q))


def test_multi_shuffles_and_orbits():
    assert P.multi_shuffles(3, 1) == [(1, 2, 3)]
    assert len(P.multi_shuffles(1, 2)) == 2
    assert len(P.multi_shuffles(2, 2)) == 6
    assert len(P.shuffle_orbit_reps(1, 2)) == 1
    assert len(P.shuffle_orbit_reps(2, 2)) == 3
    assert P.shuffle_orbit_reps(4, 1) == [(1, 2, 3, 4)]


@pytest.mark.parametrize("p,n", [(1, 3), (2, 3), (3, 2), (1, 4)])
def test_orbit_reps_count(p, n):
    # Σ_n acts freely on Sh(p;n), which has (pn)!/(p!)^n elements
    from math import factorial
    assert len(P.shuffle_orbit_reps(p, n)) == factorial(p * n) // (factorial(p) ** n * factorial(n))


def test_coset_decompose_examples():
    assert P.coset_decompose((1, 2, 3), 2, 1) == ((1, 2, 3), (1, 2), (1,))
    assert P.coset_decompose((2, 1), 1, 1) == ((2, 1), (1,), (1,))
    assert P.coset_decompose((2, 3, 1), 2, 1) == ((2, 3, 1), (1, 2), (1,))


def test_coset_decompose_recomposes():
    for tau in [(3, 1, 4, 2), (4, 3, 2, 1), (2, 4, 1, 3)]:
        sigma, a, b = P.coset_decompose(tau, 2, 2)
        assert sigma in P.shuffles(2, 2)
        assert P.compose(sigma, P.direct_sum(a, b)) == tau


# ⊙ product ----------------------------------------------------------------


def test_odot_unit():
    X = random_reduced_seq(Q, 4, seed=3)
    XI = odot(unit_seq(Q, 4), X)
    assert XI.dims() == X.dims()


def test_odot_level_two_is_regular():
    X = level1(Q, L=2)
    XY = odot(X, X)
    r = XY.rep(2)
    assert r.dim == 2
    g = r.gens[0]
    assert g.columns[0] == {1: 1} and g.columns[1] == {0: 1}


def test_odot_dimension_formula():
    rng = random.Random(11)
    for _ in range(5):
        X = random_reduced_seq(F3, 5, rng=rng)
        Y = random_reduced_seq(F3, 5, rng=rng)
        XY = odot(X, Y)
        for l in range(6):
            expect = sum(comb(l, p) * X.dim(p) * Y.dim(l - p) for p in range(l + 1))
            assert XY.dim(l) == expect
        XY.validate()


def test_twist_is_involutive_and_equivariant():
    rng = random.Random(2)
    X = random_reduced_seq(Q, 4, rng=rng)
    Y = random_reduced_seq(Q, 4, rng=rng)
    t = twist(X, Y)
    back = twist(Y, X)
    assert t.is_equivariant()
    comp = back.compose(t)
    assert all(comp[l].is_identity() for l in range(5) if comp.source.dim(l))


def test_twist_with_unit_is_reindexing():
    X = random_reduced_seq(Q, 3, seed=9)
    t = twist(unit_seq(Q, 3), X)
    assert all(t[l].is_identity() for l in range(4) if X.dim(l))


# norm map -----------------------------------------------------------------


@pytest.mark.parametrize("ring", [Q, F2, F3])
def test_norm_level_one_square(ring):
    V = level1(ring, L=2)
    assert power_coinvariants(V, 2).dim(2) == 1
    assert power_invariants(V, 2).dim(2) == 1
    res = norm_map(V, 2)
    assert res.verdict
    assert res.mats[2].shape == (1, 1) and not res.mats[2].is_zero()


def test_norm_n_equal_one_is_identity():
    V = random_reduced_seq(F2, 3, seed=1)
    res = norm_map(V, 1)
    assert res.verdict
    assert all(res.mats[l].is_identity() for l in range(4) if V.dim(l))


def test_norm_non_reduced_counterexample():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = norm_map(unit_seq(F2, 2), 2)
    assert not res.verdict
    assert res.witness[0] == 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert norm_map(unit_seq(Q, 2), 2).verdict


def test_norm_graded_inputs():
    rng = random.Random(4)
    for ring in (Q, F2, F3):
        X = SymSeq(ring, 3, {l: random_chain_rep(ring, l, rng, max_dim=2, degrees=(0, 1)) for l in (1, 2)})
        for n in (2, 3):
            res = norm_map(X, n)
            assert res.verdict
            assert res.maps.is_equivariant()
            assert res.maps.is_chain_map()


def test_signed_orbit_shortcut_matches_kernel():
    odot_mod = sys.modules["shufflehom.symseq.odot"]
    rng = random.Random(5)
    checked = 0
    for ring in (Q, F2, F3):
        for i in range(4):
            if i < 2:
                X = random_reduced_seq(ring, 4, rng=rng)
            else:
                X = SymSeq(ring, 3, {l: random_chain_rep(ring, l, rng, max_dim=2, degrees=(0, 1)) for l in (1, 2)})
            for n in (2, 3):
                fast = PowerData(X, n)
                slow = PowerData(X, n)
                for l in range(fast.max_level + 1):
                    if not fast.prod.rep(l).dim:
                        continue
                    a, qa = fast.invariant_subspace(l), fast.coinvariant_quotient(l)
                    saved = odot_mod._signed_orbits
                    odot_mod._signed_orbits = lambda *args: None
                    try:
                        b, qb = slow.invariant_subspace(l), slow.coinvariant_quotient(l)
                    finally:
                        odot_mod._signed_orbits = saved
                    assert a.dim == b.dim and all(b.contains(v) for v in a.basis)
                    assert qa.dim == qb.dim
                    assert all(not qb.project(r) for r in qa._ech.rows.values())
                    checked += 1
    assert checked > 20


# representations ----------------------------------------------------------


def test_basic_reps_validate():
    for ring in (Q, F2):
        for l in range(1, 5):
            for r in (trivial_rep(ring, l), sign_rep(ring, l), regular_rep(ring, l)):
                r.validate()


def test_invalid_rep_rejected():
    from shufflehom.exactlin import Matrix
    from shufflehom.symseq.rep import Rep
    bad = Rep(Q, 3, [0], [Matrix.from_rows(Q, [[1]]), Matrix.from_rows(Q, [[-1]])])
    with pytest.raises(ValidationError):
        bad.validate()
