from __future__ import annotations

from math import factorial

import pytest

from oracles import free_comm_table, lie_dim, module_table, stirling1, suspended
from shufflehom.barhom import (acyclicity_check, aq_homology, aq_weight_homology, associated_graded_free, bar,
                               bar_homology, classical_free_on_disc, cotriple_resolution, disc, e1_homology,
                               en_homology, f_r, harrison, hodge_check, indecomposables, iterated_bar_homology,
                               sphere, symmetrization_embedding)
from shufflehom.exactlin import Ring
from shufflehom.shalg import aug_ideal, free_comm, sign_sequence, trivial_algebra, truncated_polynomial
from shufflehom.symseq.rep import ValidationError, concentrated, trivial_rep

Q = Ring.parse("Q")
F2 = Ring.parse("F2")
F3 = Ring.parse("F3")

# generator data: level -> degrees of a basis of M(level)
GENS = {
    "F1k": (lambda R, L: f_r(sphere(R, 0), 1, L), {1: [0]}),
    "F2S0": (lambda R, L: f_r(sphere(R, 0), 2, L), {2: [0, 0]}),
    "F1S1": (lambda R, L: f_r(sphere(R, 1), 1, L), {1: [1]}),
}


def _free(name, ring, L):
    build, gens = GENS[name]
    return free_comm(build(ring, L)), gens


def trivial_on_point(ring, L):
    return trivial_algebra(concentrated(trivial_rep(ring, 1), L))


# free algebras ---------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(GENS))
def test_free_algebra_dimensions_against_partition_count(name):
    A, gens = _free(name, Q, 4)
    table = {}
    for l in range(1, 5):
        for d, n in A.rep(l).dims_by_degree().items() if A.dim(l) else []:
            table[(l, d)] = n
    assert table == free_comm_table(gens, 4)


@pytest.mark.parametrize("ring", [Q, F2])
@pytest.mark.parametrize("name", sorted(GENS))
def test_harrison_gives_back_suspended_generators(name, ring):
    A, gens = _free(name, ring, 4)
    assert harrison(A) == module_table(suspended(gens))


@pytest.mark.parametrize("ring", [Q, F2])
def test_bar_homology_of_free_is_free_on_suspension(ring):
    A, gens = _free("F1k", ring, 3)
    assert bar_homology(A) == free_comm_table(suspended(gens), 3)


def test_double_bar_of_free():
    A, gens = _free("F1k", F2, 2)
    expect = free_comm_table(suspended(gens, 2), 2)
    assert iterated_bar_homology(A, 2) == expect
    assert en_homology(A, 2) == {(l, d - 2): v for (l, d), v in expect.items()}


def test_iterated_bar_is_capped():
    A, _ = _free("F1k", F2, 2)
    with pytest.raises(ValidationError):
        iterated_bar_homology(A, 3)


def test_bar_needs_reduced_input():
    with pytest.raises(ValidationError):
        bar(free_comm(f_r(sphere(Q, 0), 1, 2), unital=True))


def test_bar_differential_squares_to_zero():
    for A in (_free("F2S0", F3, 4)[0], aug_ideal(sign_sequence(truncated_polynomial(Q, 3, degree=2), 3)),
              trivial_on_point(F2, 4)):
        B = bar(A)
        for l in range(1, B.max_level + 1):
            r = B.rep(l)
            if r.dim:
                assert (r.dmatrix() @ r.dmatrix()).is_zero()
                r.validate()


def test_bar_shuffle_product_is_a_commutative_algebra():
    B = bar(_free("F1k", Q, 3)[0]).materialize()
    assert B.check() == []


# trivial multiplication -----------------------------------------------------


@pytest.mark.parametrize("ring", [Q, F2])
def test_trivial_algebra_harrison_is_lie(ring):
    # Harrison of a square-zero extension is the cofree Lie coalgebra on ΣV
    A = trivial_on_point(ring, 4)
    assert harrison(A) == {(l, l): lie_dim(l) for l in range(1, 5)}


def test_trivial_algebra_bar_is_tensor_coalgebra():
    A = trivial_on_point(Q, 4)
    assert bar_homology(A) == {(l, l): factorial(l) for l in range(1, 5)}
    assert e1_homology(A) == {(l, l - 1): factorial(l) for l in range(1, 5)}


def test_hodge_weights_of_trivial_algebra_are_stirling_numbers():
    A = trivial_on_point(Q, 4)
    res = cotriple_resolution(A, 4)
    for q in range(1, 5):
        w = aq_weight_homology(A, q, 3, res=res)
        assert w.get((4, 3), 0) == stirling1(4, q)


# André–Quillen --------------------------------------------------------------


@pytest.mark.parametrize("ring", [Q, F2])
def test_aq_of_free_is_concentrated_in_degree_zero(ring):
    A, gens = _free("F1k", ring, 3)
    assert aq_homology(A, 2) == module_table(gens)


@pytest.mark.parametrize("ring", [Q, F2])
def test_aq_shifts_harrison(ring):
    samples = [_free("F1S1", ring, 3)[0], trivial_on_point(ring, 3),
               aug_ideal(sign_sequence(truncated_polynomial(ring, 3, degree=2), 3))]
    for A in samples:
        aq = aq_homology(A, 1)
        harr = {(l, n - 1): v for (l, n), v in harrison(A).items() if n - 1 <= 1}
        assert aq == harr


def test_aq_rejects_short_resolution():
    with pytest.raises(ValidationError):
        aq_homology(trivial_on_point(Q, 2), 2, t_max=2)


def test_cotriple_resolution_identities():
    res = cotriple_resolution(trivial_on_point(F2, 3), 3)
    assert res.check_identities() == []
    assert res.check_equivariance()


@pytest.mark.parametrize("ring", [Q, F2])
def test_hodge_decomposition(ring):
    for A in (_free("F1k", ring, 3)[0], trivial_on_point(ring, 3),
              aug_ideal(sign_sequence(truncated_polynomial(ring, 3, degree=2), 3))):
        rep = hodge_check(A, 2)
        assert rep.passed, rep.mismatches


def test_hodge_needs_a_field():
    with pytest.raises(ValidationError):
        hodge_check(trivial_on_point(Ring.parse("Z"), 2), 1)


# acyclicity --------------------------------------------------------------------


@pytest.mark.parametrize("ring", [Q, F2, F3])
@pytest.mark.parametrize("r,n", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_free_on_disc_is_acyclic(r, n, ring):
    v = acyclicity_check(r, n, ring, 4)
    assert v.passed, v.witness


def test_level_zero_is_excluded():
    with pytest.raises(ValidationError):
        acyclicity_check(0, 1, Q)


def test_classical_free_on_disc_is_not_acyclic_mod_two():
    # x_2^a with a even is a cycle that is not hit
    assert classical_free_on_disc(2, 2, 8) == {0: 1, 3: 1, 4: 1, 7: 1, 8: 1}
    assert classical_free_on_disc(3, 2, 6) == {0: 1, 5: 1, 6: 1}


def test_disc_and_sphere_complexes():
    assert disc(Q, 3).degrees == [3, 2]
    assert sphere(Q, 2).degrees == [2]
    with pytest.raises(ValidationError):
        disc(Q, 0)


# symmetrization, associated graded, indecomposables ---------------------------


@pytest.mark.parametrize("ring", [Q, F2])
def test_symmetrization_has_a_retraction(ring):
    for M in (f_r(sphere(ring, 0), 1, 4), f_r(sphere(ring, 1), 1, 4)):
        j, rho = symmetrization_embedding(M)
        comp = rho.compose(j)
        assert all(comp[l].is_identity() for l in range(5) if comp.source.dim(l))
        assert j.is_equivariant()


def test_associated_graded_of_free():
    for name in ("F1k", "F2S0"):
        build, _ = GENS[name]
        v = associated_graded_free(build(Q, 4))
        assert v.passed, v.witness


def test_associated_graded_detects_non_free():
    A = trivial_on_point(Q, 2)
    v = associated_graded_free(None, algebra=A)
    assert not v.passed
    assert v.witness == (2, 2, 1, 0)


def test_indecomposables_of_free_are_generators():
    for name in sorted(GENS):
        A, gens = _free(name, Q, 4)
        Qa = indecomposables(A)
        assert {l: Qa.dim(l) for l in range(1, 5) if Qa.dim(l)} == {l: len(d) for l, d in gens.items()}
