from __future__ import annotations

import pytest

from oracles import fraction_rank, image_size_mod_p
from shufflehom.exactlin import (ChainComplex, Echelon, Matrix, Quotient, Ring, RingError, Subspace,
                                 homology_dims, inverse, kernel_basis, rank, smith_normal_form, solve)

Q = Ring.parse("Q")
F2 = Ring.parse("F2")
F3 = Ring.parse("F3")
Z = Ring.parse("Z")


def test_ring_parsing():
    assert Ring.parse("F5").p == 5
    assert Ring.parse("Q").name == "Q" and Ring.parse("Q").is_field
    assert not Ring.parse("Z").is_field
    with pytest.raises(RingError):
        Ring.parse("F4")
    with pytest.raises(RingError):
        Ring.parse("R")


def test_ring_coercion():
    assert Q("3/4") * 4 == 3
    assert F3("1/2") == 2
    assert F2(5) == 1
    with pytest.raises(RingError):
        Z("1/2")
    with pytest.raises(RingError):
        F3("1/3")


def test_rank_examples():
    assert rank(Matrix.zeros(Q, 3, 4)) == 0
    assert rank(Matrix.identity(F2, 5)) == 5
    assert rank(Matrix.from_rows(Q, [[1, 2], [2, 4]])) == 1


def test_rank_against_fraction_oracle():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, -1, 2], [1, 3, 2, 6]]
    assert rank(Matrix.from_rows(Q, rows)) == fraction_rank(rows)


def test_rank_against_enumeration_mod_p():
    rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    # over F2 the three rows sum to zero
    assert 2 ** rank(Matrix.from_rows(F2, rows)) == image_size_mod_p(rows, 2) == 4
    assert 3 ** rank(Matrix.from_rows(F3, rows)) == image_size_mod_p(rows, 3) == 27


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(Q, 3)).ncols == 0
    assert kernel_basis(Matrix.zeros(Q, 2, 3)).ncols == 3
    k = kernel_basis(Matrix.from_rows(F2, [[1, 1]]))
    assert k.ncols == 1 and k.columns[0] == {0: 1, 1: 1}


def test_inverse_and_solve():
    m = Matrix.from_rows(Q, [[2, 1], [1, 1]])
    assert (inverse(m) @ m).is_identity()
    x = solve(m, {0: Q(3), 1: Q(2)})
    assert m.apply(x) == {0: 3, 1: 2}


def test_smith_normal_form_examples():
    assert smith_normal_form(Matrix.from_rows(Z, [[2]]))[0] == [2]
    assert smith_normal_form(Matrix.identity(Z, 3))[0] == [1, 1, 1]
    factors, D, U, V = smith_normal_form(Matrix.from_rows(Z, [[2, 0], [0, 3]]))
    assert factors == [1, 6]
    assert U @ Matrix.from_rows(Z, [[2, 0], [0, 3]]) @ V == D


def test_smith_normal_form_larger():
    m = Matrix.from_rows(Z, [[4, 6, 2], [2, 0, 8], [6, 6, 12]])
    factors, D, U, V = smith_normal_form(m)
    assert U @ m @ V == D
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    # the product of invariant factors is |det| when the matrix is nonsingular
    det = 4 * (0 * 12 - 8 * 6) - 6 * (2 * 12 - 8 * 6) + 2 * (2 * 6 - 0 * 6)
    prod = 1
    for f in factors:
        prod *= f
    assert prod == abs(det)


def test_homology_of_disc_and_torsion():
    disc = ChainComplex(Q, {1: 1, 0: 1}, {1: Matrix.identity(Q, 1)})
    assert all(v == 0 for v in homology_dims(disc).values())
    two = ChainComplex(Z, {1: 1, 0: 1}, {1: Matrix.from_rows(Z, [[2]])})
    assert homology_dims(two)[0] == (0, [2])
    flat = ChainComplex(F3, {0: 2, 3: 1})
    assert homology_dims(flat) == {0: 2, 3: 1}


def test_chain_complex_rejects_nonzero_square():
    d1 = Matrix.from_rows(Q, [[1]])
    d2 = Matrix.from_rows(Q, [[1]])
    with pytest.raises(ValueError):
        ChainComplex(Q, {0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})


def test_subspace_and_quotient():
    S = Subspace(Q, 3, [{0: Q(1), 1: Q(1)}, {0: Q(2), 1: Q(2)}, {2: Q(1)}])
    assert S.dim == 2
    assert S.contains({0: Q(3), 1: Q(3), 2: Q(1)})
    q = Quotient(Q, 3, [{0: Q(1), 1: Q(-1)}])
    assert q.dim == 2
    assert q.project({0: Q(1)}) == q.project({1: Q(1)})


def test_echelon_tracking():
    e = Echelon(F3, track=True)
    e.add({0: 1, 1: 2})
    e.add({1: 1})
    coords = e.coordinates({0: 1})
    total = {}
    for k, c in coords.items():
        vec = [{0: 1, 1: 2}, {1: 1}][k]
        for i, x in vec.items():
            total[i] = (total.get(i, 0) + c * x) % 3
    assert {i: x for i, x in total.items() if x} == {0: 1}


def test_fraction_fallback_without_gmpy2():
    import subprocess
    import sys
    code = ("import sys; sys.modules['gmpy2'] = None\n"
            "from shufflehom.exactlin import Matrix, Ring, rank\n"
            "Q = Ring.parse('Q')\n"
            "assert type(Q('1/3')).__name__ == 'Fraction'\n"
            "assert rank(Matrix.from_rows(Q, [[1, 2], [3, 6]])) == 1\n")
    assert subprocess.run([sys.executable, "-c", code]).returncode == 0
