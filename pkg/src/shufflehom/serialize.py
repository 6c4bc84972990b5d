"""JSON documents for symmetric sequences, algebras, simplicial objects and Betti tables.

Every document states its ring and truncation explicitly.  Matrices are
row-major lists; rational entries are strings ``"a/b"`` (or integers),
field entries are canonical residues.

Symmetric sequence::

    {"type": "symseq", "ring": "F2", "max_level": 3,
     "levels": {"2": {"degrees": [0, 0], "generators": [[[0, 1], [1, 0]]],
                      "differential": null}}}

Algebra (``kind`` is one of ``free_comm``, ``trivial``, ``sym``,
``sign_sequence``, ``gr_sigma``, ``explicit``)::

    {"type": "algebra", "ring": "Q", "max_level": 3, "kind": "free_comm",
     "generators": {<symseq document without ring/max_level>}}
"""

from __future__ import annotations

import json

from .exactlin import Matrix, Ring
from .symseq.rep import Rep, SymMap, SymSeq, ValidationError


class DocumentError(ValueError):
    """Malformed or incomplete input document."""


# ---------------------------------------------------------------------------
# scalars and matrices


def scalar_out(ring, c):
    if ring.kind == "Q":
        c = ring(c)
        n, d = int(c.numerator), int(c.denominator)
        return n if d == 1 else f"{n}/{d}"
    return int(ring.reduce(c))


def scalar_in(ring, x):
    if isinstance(x, str):
        if "/" in x:
            a, b = x.split("/")
            if ring.kind != "Q":
                return ring(int(a)) * ring.inv(ring(int(b)))
            return ring(int(a)) / ring(int(b))
        return ring(int(x))
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"matrix entry {x!r} is not an exact number")
    return ring(x)


def matrix_out(m):
    return [[scalar_out(m.ring, c) for c in row] for row in m.to_rows()]


def matrix_in(ring, rows, nrows=None, ncols=None):
    if not isinstance(rows, list):
        raise DocumentError("matrix must be a list of rows")
    if nrows is not None and len(rows) != nrows:
        raise DocumentError(f"matrix has {len(rows)} rows, expected {nrows}")
    conv = [[scalar_in(ring, x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(conv[0]) if conv else 0
    if any(len(r) != ncols for r in conv):
        raise DocumentError("ragged matrix")
    return Matrix.from_rows(ring, conv, ncols=ncols) if conv else Matrix.zeros(ring, 0, ncols)


# ---------------------------------------------------------------------------
# symmetric sequences


def _need(doc, key):
    if key not in doc:
        raise DocumentError(f"document is missing the required field {key!r}")
    return doc[key]


def ring_of(doc):
    try:
        return Ring.parse(_need(doc, "ring"))
    except ValueError as e:
        raise DocumentError(str(e)) from e


def symseq_to_doc(X):
    levels = {}
    for l in range(X.max_level + 1):
        if not X.dim(l):
            continue
        r = X.rep(l)
        levels[str(l)] = {
            "degrees": list(r.degrees),
            "generators": [matrix_out(g) for g in r.gens],
            "differential": matrix_out(r.diff) if r.diff is not None else None,
        }
    return {"type": "symseq", "ring": X.ring.name, "max_level": X.max_level, "levels": levels}


def symseq_from_doc(doc, ring=None, max_level=None):
    ring = ring or ring_of(doc)
    L = max_level if max_level is not None else _need(doc, "max_level")
    if not isinstance(L, int) or L < 0:
        raise DocumentError("max_level must be a non-negative integer")
    levels = {}
    for key, body in _need(doc, "levels").items():
        l = int(key)
        if l > L:
            continue
        degrees = body.get("degrees")
        if degrees is None:
            degrees = [0] * int(_need(body, "dim"))
        n = len(degrees)
        gens = [matrix_in(ring, g, n, n) for g in body.get("generators", [])]
        if len(gens) != max(l - 1, 0):
            raise DocumentError(f"level {l} needs {max(l - 1, 0)} generator matrices, got {len(gens)}")
        diff = body.get("differential")
        diff = matrix_in(ring, diff, n, n) if diff is not None else None
        levels[l] = Rep(ring, l, degrees, gens, diff)
    X = SymSeq(ring, L, levels)
    try:
        X.validate()
    except ValidationError as e:
        raise DocumentError(f"invalid symmetric sequence: {e}") from e
    return X


# ---------------------------------------------------------------------------
# algebras


def _ordinary(ring, body):
    from .shalg.examples import OrdinaryAlgebra
    degrees = _need(body, "degrees")
    unit = {int(k): scalar_in(ring, v) for k, v in _need(body, "unit").items()}
    table = {}
    for key, vec in body.get("table", {}).items():
        i, j = (int(t) for t in key.split(","))
        table[(i, j)] = {int(k): scalar_in(ring, v) for k, v in vec.items()}
    aug = body.get("augmentation")
    if aug is not None:
        aug = {int(k): scalar_in(ring, v) for k, v in aug.items()}
    alg = OrdinaryAlgebra(ring, degrees, unit, table, aug)
    alg.validate()
    return alg


def algebra_from_doc(doc):
    """Build the algebra described by ``doc``; returns a :class:`ShuffleAlgebra`."""
    from .shalg.algebra import ShuffleAlgebra, aug_ideal, trivial_algebra
    from .shalg.examples import gr_sigma, sign_sequence, sym_of_module
    from .shalg.free import free_comm
    ring = ring_of(doc)
    L = _need(doc, "max_level")
    kind = _need(doc, "kind")
    try:
        if kind == "free_comm":
            A = free_comm(symseq_from_doc(_need(doc, "generators"), ring, L), unital=bool(doc.get("unital")))
        elif kind == "trivial":
            A = trivial_algebra(symseq_from_doc(_need(doc, "generators"), ring, L))
        elif kind == "sym":
            A = sym_of_module(ring, int(_need(doc, "dim")), L)
        elif kind == "sign_sequence":
            A = sign_sequence(_ordinary(ring, _need(doc, "algebra")), L, doc.get("action", "sign"))
        elif kind == "gr_sigma":
            A = gr_sigma(_ordinary(ring, _need(doc, "algebra")), L, doc.get("action", "trivial"))
        elif kind == "explicit":
            seq = symseq_from_doc(_need(doc, "seq"), ring, L)
            mult = {}
            for key, rows in _need(doc, "mult").items():
                p, q = (int(t) for t in key.split(","))
                mult[(p, q)] = matrix_in(ring, rows, seq.dim(p + q), seq.dim(p) * seq.dim(q))
            unit = doc.get("unit")
            unit = {int(k): scalar_in(ring, v) for k, v in unit.items()} if unit is not None else None
            A = ShuffleAlgebra(seq, mult, unit, name=doc.get("name"))
        else:
            raise DocumentError(f"unknown algebra kind {kind!r}")
    except ValidationError as e:
        raise DocumentError(str(e)) from e
    if doc.get("augmentation_ideal"):
        A = aug_ideal(A)
    return A


def algebra_to_doc(A):
    mult = {f"{p},{q}": matrix_out(m) for (p, q), m in sorted(A.mult.items())}
    return {
        "type": "algebra", "ring": A.ring.name, "max_level": A.max_level, "kind": "explicit",
        "seq": symseq_to_doc(A.seq), "mult": mult,
        "unit": {str(k): scalar_out(A.ring, v) for k, v in A.unit.items()} if A.unit else None,
    }


# ---------------------------------------------------------------------------
# simplicial objects


def simplicial_to_doc(X):
    def maps(d):
        return {f"{n},{i}": {str(l): matrix_out(m) for l, m in f.mats.items() if m.nrows or m.ncols}
                for (n, i), f in sorted(d.items())}

    return {
        "type": "simplicial", "ring": X.ring.name, "max_level": X.max_level, "D": X.D,
        "objects": [symseq_to_doc(o) for o in X.objects],
        "faces": maps(X.faces), "degeneracies": maps(X.degeneracies),
    }


def simplicial_from_doc(doc):
    from .doldkan import SimplicialSymSeq
    ring = ring_of(doc)
    L = _need(doc, "max_level")
    D = _need(doc, "D")
    objects = [symseq_from_doc(o, ring, L) for o in _need(doc, "objects")]
    if len(objects) != D + 1:
        raise DocumentError("need one object per simplicial degree")

    def maps(d, delta):
        out = {}
        for key, by_level in d.items():
            n, i = (int(t) for t in key.split(","))
            src, tgt = objects[n], objects[n + delta]
            mats = {int(l): matrix_in(ring, rows, tgt.dim(int(l)), src.dim(int(l))) for l, rows in by_level.items()}
            out[(n, i)] = SymMap(src, tgt, mats)
        return out

    return SimplicialSymSeq(ring, L, D, objects, maps(_need(doc, "faces"), -1),
                            maps(_need(doc, "degeneracies"), 1))


# ---------------------------------------------------------------------------
# tables


def betti_rows(table):
    """Rows ``degree -> {level: dim}`` sorted for printing."""
    rows = {}
    for (l, n), v in table.items():
        rows.setdefault(n, {})[l] = v
    return rows


def format_table(table, levels, caps=None, title=None):
    """Text table: rows are degrees, columns levels; empty tables print ``(zero)``."""
    lines = []
    if title:
        lines.append(title)
    if caps:
        lines.append("caps: " + ", ".join(f"{k}={v}" for k, v in caps.items()))
    levels = list(levels)
    if not table:
        lines.append("(zero in all computed cells)")
        return "\n".join(lines)
    rows = betti_rows(table)
    width = max(4, max(len(str(v)) for v in table.values()))
    head = "deg\\lvl " + " ".join(f"{l:>{width}}" for l in levels)
    lines.append(head)
    for n in sorted(rows):
        lines.append(f"{n:>7} " + " ".join(f"{rows[n].get(l, 0):>{width}}" for l in levels))
    return "\n".join(lines)


def table_to_doc(table, caps=None, title=None):
    return {
        "title": title,
        "caps": caps or {},
        "cells": [{"level": l, "degree": n, "dim": v} for (l, n), v in sorted(table.items())],
    }


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise DocumentError(f"cannot read {path}: {e}") from e
