"""Commutative shuffle algebras given by explicit multiplication matrices.

``mult[(p, q)]`` is the matrix of ``μ_{p,q}: A(p) ⊗ A(q) -> A(p+q)``; the
tensor basis vector ``a_i ⊗ b_j`` has column index ``i * dim A(q) + j``.
Products landing above the truncation level are not stored.
"""

from __future__ import annotations

from ..exactlin import Matrix, axpy, kron, vscale
from ..symseq import perm as P
from ..symseq.rep import Rep, SymMap, SymSeq, ValidationError, trivial_rep


class TruncatedProduct(dict):
    """Zero element standing for a product beyond the truncation level."""

    truncated = True


class ShuffleAlgebra:
    """A (chain) symmetric sequence with an equivariant commutative product.

    Parameters
    ----------
    seq : SymSeq
        Underlying (chain) symmetric sequence.
    mult : dict
        ``(p, q) -> Matrix``; missing pairs mean a zero product.
    unit : dict or None
        Unit vector in level 0 for unital algebras.
    """

    def __init__(self, seq, mult=None, unit=None, name=None):
        self.seq = seq
        self.ring = seq.ring
        self.max_level = seq.max_level
        self.unit = unit
        self.name = name or "A"
        self.mult = {}
        for (p, q), m in (mult or {}).items():
            if p + q > self.max_level:
                continue
            shape = (seq.dim(p + q), seq.dim(p) * seq.dim(q))
            if m.shape != shape:
                raise ValidationError(f"μ_{p},{q} has shape {m.shape}, expected {shape}")
            if not m.is_zero():
                self.mult[(p, q)] = m

    def __repr__(self):
        return f"ShuffleAlgebra({self.name}, {self.ring.name}, L={self.max_level}, dims={self.seq.dims()})"

    # structure --------------------------------------------------------------

    def dim(self, level):
        return self.seq.dim(level)

    def rep(self, level):
        return self.seq.rep(level)

    def mu(self, p, q):
        m = self.mult.get((p, q))
        if m is None:
            m = Matrix.zeros(self.ring, self.dim(p + q), self.dim(p) * self.dim(q))
        return m

    @property
    def is_unital(self):
        return self.unit is not None

    @property
    def is_pointed(self):
        return self.unit is not None and self.dim(0) == 1

    @property
    def is_reduced(self):
        return self.dim(0) == 0

    def is_graded(self):
        return self.seq.is_graded()

    # elements ---------------------------------------------------------------

    def product(self, p, q, a, b):
        """``μ_{p,q}(a, b)`` for vectors ``a ∈ A(p)``, ``b ∈ A(q)``."""
        if p + q > self.max_level:
            return TruncatedProduct()
        m = self.mult.get((p, q))
        out = {}
        if m is None:
            return out
        dq = self.dim(q)
        ring = self.ring
        for i, x in a.items():
            for j, y in b.items():
                axpy(ring, out, m.columns[i * dq + j], x * y)
        return out

    def act(self, level, sigma, v):
        return self.rep(level).act(sigma, v)

    def multiply(self, sigma, p, q, a, b):
        """``σ · μ_{p,q}(a, b)``; beyond the truncation a flagged zero."""
        if p + q > self.max_level:
            return TruncatedProduct()
        return self.act(p + q, sigma, self.product(p, q, a, b))

    def d(self, level, v):
        return self.rep(level).d(v)

    def degree(self, level, i):
        return self.rep(level).degrees[i]

    def element_degree(self, level, v):
        degs = {self.rep(level).degrees[i] for i in v}
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else 0

    # validation -------------------------------------------------------------

    def swap_matrix(self, p, q):
        """``A(p) ⊗ A(q) -> A(q) ⊗ A(p)``, ``a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a``."""
        dp, dq = self.dim(p), self.dim(q)
        degp, degq = self.rep(p).degrees, self.rep(q).degrees
        cols = []
        for i in range(dp):
            for j in range(dq):
                s = -1 if degp[i] % 2 and degq[j] % 2 else 1
                cols.append({j * dp + i: self.ring(s)})
        return Matrix(self.ring, dq * dp, dp * dq, cols)

    def check(self, commutative=True):
        """List of failed identities (empty when the algebra is valid)."""
        failures = []
        try:
            self.seq.validate()
        except ValidationError as e:
            failures.append(f"representation: {e}")
        L = self.max_level
        ring = self.ring
        pairs = [(p, q) for p in range(L + 1) for q in range(L + 1 - p)]
        for p, q in pairs:
            if not (self.dim(p) and self.dim(q) and self.dim(p + q)):
                continue
            m = self.mu(p, q)
            rp, rq, rpq = self.rep(p), self.rep(q), self.rep(p + q)
            # degree
            for c, col in enumerate(m.columns):
                i, j = divmod(c, self.dim(q))
                if any(rpq.degrees[r] != rp.degrees[i] + rq.degrees[j] for r in col):
                    failures.append(f"μ_{p},{q} does not preserve degree")
                    break
            # equivariance
            iq = Matrix.identity(ring, self.dim(q))
            ip = Matrix.identity(ring, self.dim(p))
            for k, g in enumerate(rp.gens, 1):
                if not (m @ kron(g, iq) == rpq.gens[k - 1] @ m):
                    failures.append(f"μ_{p},{q} not equivariant for s_{k} on the left factor")
            for k, g in enumerate(rq.gens, 1):
                if not (m @ kron(ip, g) == rpq.gens[p + k - 1] @ m):
                    failures.append(f"μ_{p},{q} not equivariant for s_{k} on the right factor")
            # twisted commutativity
            if commutative and not (m == rpq.perm_matrix(P.chi(q, p)) @ self.mu(q, p) @ self.swap_matrix(p, q)):
                failures.append(f"twisted commutativity fails for (p,q)=({p},{q})")
            # derivation
            if self.is_graded():
                dpq = rpq.dmatrix()
                sgn_cols = []
                for i in range(self.dim(p)):
                    s = -1 if rp.degrees[i] % 2 else 1
                    for j in range(self.dim(q)):
                        sgn_cols.append(s)
                left = dpq @ m
                dd = kron(rp.dmatrix(), iq)
                idd = kron(ip, rq.dmatrix())
                idd = Matrix(ring, idd.nrows, idd.ncols,
                             [vscale(ring, col, sgn_cols[c]) for c, col in enumerate(idd.columns)])
                right = m @ (dd + idd)
                if not (left == right):
                    failures.append(f"d is not a derivation for μ_{p},{q}")
        for p in range(L + 1):
            for q in range(L + 1 - p):
                for r in range(L + 1 - p - q):
                    if not (self.dim(p) and self.dim(q) and self.dim(r) and self.dim(p + q + r)):
                        continue
                    lhs = self.mu(p + q, r) @ kron(self.mu(p, q), Matrix.identity(ring, self.dim(r)))
                    rhs = self.mu(p, q + r) @ kron(Matrix.identity(ring, self.dim(p)), self.mu(q, r))
                    if not (lhs == rhs):
                        failures.append(f"associativity fails for ({p},{q},{r})")
        if self.unit is not None:
            for q in range(L + 1):
                for j in range(self.dim(q)):
                    e = {j: ring.one}
                    if self.product(0, q, self.unit, e) != e or self.product(q, 0, e, self.unit) != e:
                        failures.append(f"unit law fails at level {q}")
                        break
        return failures

    def validate(self, commutative=True):
        failures = self.check(commutative)
        if failures:
            raise ValidationError("; ".join(failures))
        return True


class AlgebraMap:
    """Levelwise equivariant map between shuffle algebras."""

    def __init__(self, source, target, mats):
        self.source = source
        self.target = target
        self.map = SymMap(source.seq, target.seq, mats)

    def apply(self, level, v):
        return self.map[level].apply(v)

    def check(self):
        failures = []
        if not self.map.is_equivariant():
            failures.append("not equivariant")
        if not self.map.is_chain_map():
            failures.append("does not commute with differentials")
        A, B = self.source, self.target
        L = min(A.max_level, B.max_level)
        for p in range(L + 1):
            for q in range(L + 1 - p):
                for i in range(A.dim(p)):
                    for j in range(A.dim(q)):
                        lhs = self.apply(p + q, A.product(p, q, {i: 1}, {j: 1}))
                        rhs = B.product(p, q, self.apply(p, {i: 1}), self.apply(q, {j: 1}))
                        if lhs != rhs:
                            failures.append(f"not multiplicative on ({p},{q})")
                            return failures
        return failures


# ---------------------------------------------------------------------------
# units


def aug_ideal(A):
    """The augmentation ideal of a pointed algebra: drop level 0."""
    if not A.is_pointed:
        raise ValidationError("augmentation ideal needs a pointed algebra")
    levels = {l: r for l, r in A.seq.levels.items() if l > 0}
    seq = SymSeq(A.ring, A.max_level, levels)
    mult = {k: m for k, m in A.mult.items() if k[0] > 0 and k[1] > 0}
    return ShuffleAlgebra(seq, mult, None, name=f"aug({A.name})")


def adjoin_unit(B):
    """``B₊ = I ⊕ B`` for a reduced algebra."""
    if not B.is_reduced:
        raise ValidationError("adjoin_unit needs a reduced algebra")
    ring = B.ring
    levels = dict(B.seq.levels)
    levels[0] = trivial_rep(ring, 0)
    seq = SymSeq(ring, B.max_level, levels)
    mult = dict(B.mult)
    mult[(0, 0)] = Matrix.identity(ring, 1)
    for q in range(1, B.max_level + 1):
        if B.dim(q):
            mult[(0, q)] = Matrix.identity(ring, B.dim(q))
            mult[(q, 0)] = Matrix.identity(ring, B.dim(q))
    return ShuffleAlgebra(seq, mult, {0: ring.one}, name=f"{B.name}+")


def zero_algebra(ring, max_level):
    return ShuffleAlgebra(SymSeq(ring, max_level, {}), {}, None, name="0")


def trivial_algebra(seq, name=None):
    """``seq`` with the zero product (``seq`` must be reduced)."""
    if not seq.is_reduced():
        raise ValidationError("trivial multiplication needs a reduced sequence")
    return ShuffleAlgebra(seq, {}, None, name=name or "triv")


def multiply(A, sigma, a, b, p, q):
    """``σ · μ_{p,q}(a, b)``."""
    return A.multiply(sigma, p, q, a, b)


def corrupt(A, p, q, scale=2):
    """Copy of ``A`` with ``μ_{p,q}`` scaled (used as a negative control)."""
    mult = dict(A.mult)
    mult[(p, q)] = A.mu(p, q).scale(scale)
    return ShuffleAlgebra(A.seq, mult, A.unit, name=f"corrupt({A.name})")


def levels_rep(A):
    return {l: A.rep(l) for l in range(A.max_level + 1)}


__all__ = [
    "AlgebraMap", "ShuffleAlgebra", "TruncatedProduct", "adjoin_unit", "aug_ideal", "corrupt",
    "multiply", "trivial_algebra", "zero_algebra", "Rep",
]
