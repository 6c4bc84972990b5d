"""Disc and sphere complexes, the functors Fʳ, and (de)suspension."""

from __future__ import annotations

from ..exactlin import ChainComplex, Matrix
from ..symseq.rep import SymSeq, ValidationError, regular_rep, tensor_with_complex


class SmallComplex:
    """A complex given by one basis with per-vector degrees and a differential."""

    def __init__(self, ring, degrees, diff=None, name=None):
        self.ring = ring
        self.degrees = list(degrees)
        self.diff = diff
        self.name = name

    def chain_complex(self):
        return ChainComplex.from_graded(self.ring, self.degrees, self.diff)


def disc(ring, n):
    """𝔻ⁿ: k in degrees n and n-1, the differential being the identity."""
    if n < 1:
        raise ValidationError("discs start in degree 1")
    return SmallComplex(ring, [n, n - 1], Matrix(ring, 2, 2, [{1: ring.one}, {}]), name=f"D{n}")


def sphere(ring, n):
    """𝕊ⁿ: k in degree n."""
    return SmallComplex(ring, [n], None, name=f"S{n}")


def disc_sphere(ring, n):
    """The pair ``(𝔻ⁿ, 𝕊ⁿ)`` as chain complexes."""
    return disc(ring, n).chain_complex(), sphere(ring, n).chain_complex()


def f_r(X, r, max_level=None):
    """``Fʳ(X)``: the regular representation of Σ_r tensored with X, in level r."""
    if r < 0:
        raise ValidationError("r must be non-negative")
    L = r if max_level is None else max_level
    rep = tensor_with_complex(regular_rep(X.ring, r), X.degrees, X.diff)
    return SymSeq(X.ring, L, {r: rep})


def suspend(X, s):
    """Degree shift by ``s`` (any integer)."""
    return X.shift(s)
