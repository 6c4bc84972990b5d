from __future__ import annotations

import json

import pytest

from shufflehom import serialize as S
from shufflehom.barhom import f_r, sphere
from shufflehom.doldkan import random_simplicial
from shufflehom.exactlin import Matrix, Ring
from shufflehom.shalg import free_comm, sign_sequence, exterior_algebra
from shufflehom.symseq.rep import random_reduced_seq

Q = Ring.parse("Q")
F3 = Ring.parse("F3")


def _same_seq(X, Y):
    assert X.dims() == Y.dims()
    for l in range(X.max_level + 1):
        if X.dim(l):
            a, b = X.rep(l), Y.rep(l)
            assert a.degrees == b.degrees
            assert all(g == h for g, h in zip(a.gens, b.gens))


def test_scalars_round_trip():
    for c in (Q(0), Q(3), Q("-7/4")):
        assert S.scalar_in(Q, S.scalar_out(Q, c)) == c
    assert S.scalar_out(Q, Q("1/2")) == "1/2"
    assert S.scalar_in(F3, "1/2") == 2
    with pytest.raises(S.DocumentError):
        S.scalar_in(Q, 0.5)
    with pytest.raises(S.DocumentError):
        S.scalar_in(Q, True)


def test_matrix_round_trip():
    m = Matrix.from_rows(Q, [[1, Q("1/3")], [0, -2]])
    assert S.matrix_in(Q, S.matrix_out(m)) == m


@pytest.mark.parametrize("ring", [Q, F3])
def test_symseq_round_trip(ring):
    X = random_reduced_seq(ring, 4, seed=8)
    doc = json.loads(S.dumps(S.symseq_to_doc(X)))
    _same_seq(X, S.symseq_from_doc(doc))


def test_symseq_document_is_validated():
    doc = {"type": "symseq", "ring": "Q", "max_level": 2,
           "levels": {"2": {"degrees": [0], "generators": [[[2]]]}}}
    with pytest.raises(S.DocumentError):
        S.symseq_from_doc(doc)


def test_missing_fields_are_reported():
    with pytest.raises(S.DocumentError):
        S.symseq_from_doc({"type": "symseq", "ring": "Q", "levels": {}})
    with pytest.raises(S.DocumentError):
        S.symseq_from_doc({"type": "symseq", "ring": "F4", "max_level": 1, "levels": {}})
    with pytest.raises(S.DocumentError):
        S.symseq_from_doc({"type": "symseq", "ring": "Q", "max_level": 2,
                           "levels": {"2": {"degrees": [0], "generators": []}}})


def test_algebra_round_trip():
    for A in (free_comm(f_r(sphere(Q, 0), 2, 4)), sign_sequence(exterior_algebra(Q, 2), 2)):
        B = S.algebra_from_doc(json.loads(S.dumps(S.algebra_to_doc(A))))
        _same_seq(A.seq, B.seq)
        assert B.mult.keys() == A.mult.keys()
        assert all(B.mult[k] == A.mult[k] for k in A.mult)
        assert B.check() == []


def test_free_algebra_document():
    doc = {"type": "algebra", "ring": "Q", "max_level": 3, "kind": "free_comm",
           "generators": {"levels": {"1": {"degrees": [1]}}}}
    A = S.algebra_from_doc(doc)
    assert [A.dim(l) for l in range(4)] == [0, 1, 1, 1]


def test_unknown_algebra_kind():
    with pytest.raises(S.DocumentError):
        S.algebra_from_doc({"type": "algebra", "ring": "Q", "max_level": 1, "kind": "lie"})


def test_simplicial_round_trip():
    X = random_simplicial(F3, 2, 3, seed=1)
    Y = S.simplicial_from_doc(json.loads(S.dumps(S.simplicial_to_doc(X))))
    assert Y.check_identities() == []
    for n in range(X.D + 1):
        _same_seq(X.objects[n], Y.objects[n])


def test_tables():
    t = {(1, 1): 1, (2, 2): 3}
    text = S.format_table(t, [1, 2], {"ring": "Q"}, "title")
    assert text.splitlines()[:2] == ["title", "caps: ring=Q"]
    assert "(zero" in S.format_table({}, [1])
    doc = S.table_to_doc(t)
    assert doc["cells"][1] == {"level": 2, "degree": 2, "dim": 3}
    assert S.dumps(doc) == S.dumps(S.table_to_doc(dict(reversed(list(t.items())))))


def test_load_reports_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(S.DocumentError):
        S.load(str(bad))
    with pytest.raises(S.DocumentError):
        S.load(str(tmp_path / "missing.json"))
