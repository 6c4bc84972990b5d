"""Property tests; the hypothesis profile in conftest makes every run draw the same cases."""

from __future__ import annotations

import random
from math import comb

from hypothesis import given
from hypothesis import strategies as st

from oracles import fraction_rank, module_table, suspended
from shufflehom.barhom import harrison
from shufflehom.doldkan import check_gamma_n, random_simplicial
from shufflehom.exactlin import Matrix, Ring, kernel_basis, rank
from shufflehom.shalg import free_comm
from shufflehom.symseq import perm as P
from shufflehom.symseq.odot import norm_map, odot
from shufflehom.symseq.rep import SymSeq, random_reduced_seq, trivial_rep

RINGS = st.sampled_from([Ring.parse("Q"), Ring.parse("F2"), Ring.parse("F3")])
seeds = st.integers(min_value=0, max_value=10 ** 6)
small = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4)


@given(small)
def test_rank_matches_fraction_oracle(rows):
    assert rank(Matrix.from_rows(Ring.parse("Q"), rows)) == fraction_rank(rows)


@given(small, RINGS)
def test_rank_nullity(rows, ring):
    m = Matrix.from_rows(ring, rows)
    k = kernel_basis(m)
    assert rank(m) + k.ncols == m.ncols
    assert (m @ k).is_zero()


@given(st.integers(0, 4), st.integers(0, 4))
def test_shuffle_count(p, q):
    sh = P.shuffles(p, q)
    assert len(sh) == comb(p + q, p) == len(set(sh))


@given(RINGS, seeds, st.integers(1, 4))
def test_norm_map_is_iso_on_reduced_input(ring, seed, n):
    X = random_reduced_seq(ring, 5, seed=seed)
    assert norm_map(X, n).verdict


@given(RINGS, seeds, seeds)
def test_odot_dimensions_and_validity(ring, s1, s2):
    X, Y = random_reduced_seq(ring, 4, seed=s1), random_reduced_seq(ring, 4, seed=s2)
    XY = odot(X, Y)
    XY.validate()
    for l in range(5):
        assert XY.dim(l) == sum(comb(l, p) * X.dim(p) * Y.dim(l - p) for p in range(l + 1))


@given(RINGS, st.dictionaries(st.integers(1, 3), st.lists(st.integers(0, 1), min_size=1, max_size=2),
                              min_size=1, max_size=2))
def test_harrison_of_free_on_trivial_reps(ring, gens):
    from shufflehom.symseq.rep import direct_sum
    levels = {l: direct_sum([trivial_rep(ring, l).shift(d) for d in ds]) for l, ds in gens.items()}
    A = free_comm(SymSeq(ring, 3, levels))
    assert A.check() == []
    assert harrison(A) == module_table(suspended(gens))


@given(RINGS, seeds)
def test_random_simplicial_objects_round_trip(ring, seed):
    X = random_simplicial(ring, 2, 3, seed=seed)
    X.validate()
    assert check_gamma_n(X) == []


def test_generators_are_seed_reproducible():
    a = random_reduced_seq(Ring.parse("F3"), 4, seed=42)
    b = random_reduced_seq(Ring.parse("F3"), 4, rng=random.Random(42))
    assert a.dims() == b.dims()
    assert all(x == y for l in range(5) if a.dim(l) for x, y in zip(a.rep(l).gens, b.rep(l).gens))
