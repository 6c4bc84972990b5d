"""Acyclicity of free algebras on discs, the symmetrization embedding and ``gr C(kS)``."""

from __future__ import annotations

from itertools import permutations

from ..exactlin import Matrix, Quotient, Subspace, rank
from ..shalg.free import FreeComm, block_sizes, normalize
from ..symseq import perm as P
from ..symseq.odot import koszul_sign
from ..symseq.rep import SymMap, ValidationError
from .discs import disc, f_r


class Verdict:
    def __init__(self, name, passed, table=None, witness=None, caps=None):
        self.name = name
        self.passed = passed
        self.table = table or {}
        self.witness = witness
        self.caps = caps or {}

    def __bool__(self):
        return bool(self.passed)

    def __repr__(self):
        return f"Verdict({self.name!r}, passed={self.passed}, witness={self.witness!r})"


# ---------------------------------------------------------------------------
# acyclicity


def acyclicity_check(r, n, ring, max_level=4):
    """``H_*(C(Fʳ𝔻ⁿ)) = I`` levelwise up to ``max_level``."""
    if r < 1:
        raise ValidationError("r = 0 is excluded: the level-0 part is the classical free algebra")
    M = f_r(disc(ring, n), r, max_level)
    A = FreeComm(M, max_level, unital=True).materialize()
    table = {}
    witness = None
    for l in range(max_level + 1):
        if not A.dim(l):
            continue
        for deg, b in A.rep(l).homology().items():
            b = b[0] if isinstance(b, tuple) else b
            if b:
                table[(l, deg)] = b
    expected = {(0, 0): 1}
    if table != expected:
        witness = sorted(k for k in set(table) | set(expected) if table.get(k) != expected.get(k))
    return Verdict(f"H(C(F^{r} D^{n})) = I", witness is None, table, witness,
                   {"r": r, "n": n, "max_level": max_level, "ring": ring.name})


def classical_free_on_disc(p, n, max_degree):
    """Homology of ``k[x_n] ⊗ Λ(x_{n-1})`` (n even) over ``F_p``, ``∂x_n = x_{n-1}``.

    Hand-rolled for the one-variable case.  The basis is ``x_n^a x_{n-1}^e``
    with ``e ∈ {0, 1}``; ``∂(x_n^a) = a·x_n^{a-1}x_{n-1}``.  Returns Betti
    numbers ``{degree: dim}`` for degrees ``≤ max_degree``.
    """
    if n % 2:
        raise ValueError("use an even top degree so that x_n is polynomial")
    cells = {}
    for a in range(max_degree // n + 2):
        for e in (0, 1):
            deg = a * n + e * (n - 1)
            cells.setdefault(deg, []).append((a, e))
    rk = {}
    for deg, basis in cells.items():
        # rank of ∂ out of this degree: each x^a with a·1 ≠ 0 mod p hits a distinct basis vector
        rk[deg] = sum(1 for a, e in basis if e == 0 and a % p)
    out = {}
    for deg in range(max_degree + 1):
        dim = len(cells.get(deg, []))
        b = dim - rk.get(deg, 0) - rk.get(deg + 1, 0)
        if b:
            out[deg] = b
    return out


# ---------------------------------------------------------------------------
# C(M) -> T(M)


def _tensor_index(T):
    return {l: T.rep(l).index if T.dim(l) else {} for l in range(T.max_level + 1)}


def symmetrization_embedding(M, max_level=None):
    """The norm ``j: C(M) -> T(M)`` and a retraction ``ϱ`` with ``ϱ∘j = id``.

    ``j`` sums a normal-form word over all orderings of its factors (with
    Koszul signs).  ``ϱ`` reads off the coefficient of the term whose
    factors appear in order of their first positions.
    """
    from ..shalg.free import free_assoc
    if not M.is_reduced():
        raise ValidationError("the embedding needs a reduced sequence")
    L = M.max_level if max_level is None else max_level
    fc = FreeComm(M, L, unital=True)
    C = fc.materialize()
    T = free_assoc(M, L)
    ring = M.ring
    tidx = _tensor_index(T)
    cidx = {l: C.rep(l).index if C.dim(l) else {} for l in range(L + 1)}
    jm, rm = {}, {}
    for l in range(L + 1):
        cols = []
        for w, b in fc.keys(l):
            s = len(b)
            sizes = block_sizes(w)
            degs = fc.factor_degrees(w, b)
            col = {}
            for pi in permutations(range(1, s + 1)):
                # factor i moves to slot pi[i]-1
                order = [0] * s
                for i, x in enumerate(pi):
                    order[x - 1] = i
                sgn = koszul_sign(degs, order)
                comp = tuple(sizes[i] for i in order)
                new_w = tuple(pi[x] - 1 for x in w)
                key = (comp, new_w, tuple(b[i] for i in order))
                col[tidx[l][key]] = ring(sgn)
            cols.append(col)
        jm[l] = Matrix(ring, T.dim(l), C.dim(l), cols)
        rcols = []
        for comp, w, b in (T.rep(l).keys if T.dim(l) else []):
            first = []
            for x in w:
                if x not in first:
                    first.append(x)
            if first == sorted(first):
                rcols.append({cidx[l][(w, b)]: ring.one})
            else:
                rcols.append({})
        rm[l] = Matrix(ring, C.dim(l), T.dim(l), rcols)
    return SymMap(C.seq, T.seq, jm), SymMap(T.seq, C.seq, rm)


# ---------------------------------------------------------------------------
# associated graded


def _evaluate(A, w, vecs):
    ring = A.ring
    sizes = block_sizes(w)
    v = vecs[0]
    lev = sizes[0]
    for s, x in zip(sizes[1:], vecs[1:]):
        v = A.product(lev, s, v, x)
        lev += s
    return A.act(len(w), P.word_to_shuffle(w), v)


def augmentation_powers(A, i_max):
    """``m^i(ℓ)`` for ``1 ≤ i ≤ i_max`` as :class:`Subspace` objects (``A`` reduced or pointed)."""
    L = A.max_level
    pw = {1: {l: Subspace(A.ring, A.dim(l), [{j: A.ring.one} for j in range(A.dim(l))]) for l in range(1, L + 1)}}
    for i in range(2, i_max + 1):
        cur = {}
        for l in range(1, L + 1):
            vecs = []
            for p in range(1, l):
                q = l - p
                if not A.dim(q) or (p, q) not in A.mult:
                    continue
                for x in pw[i - 1][p].basis:
                    for j in range(A.dim(q)):
                        prod = A.product(p, q, x, {j: A.ring.one})
                        if prod:
                            for sigma in P.shuffles(p, q):
                                vecs.append(A.act(l, sigma, prod))
            cur[l] = Subspace(A.ring, A.dim(l), vecs)
        pw[i] = cur
    return pw


def associated_graded_free(S, max_level=None, algebra=None):
    """Check that ``ξ: C̄(m/m²) -> gr C̄(kS)`` is bijective per level.

    ``S`` is the generating sequence; pass ``algebra`` to run the same
    check on another reduced algebra (a non-free one should fail).
    """
    A = algebra if algebra is not None else FreeComm(S, max_level).materialize()
    ring = A.ring
    L = A.max_level if max_level is None else min(max_level, A.max_level)
    pw = augmentation_powers(A, L + 1)
    # m/m² with a section
    from ..symseq.rep import Rep, SymSeq
    qlevels, lifts = {}, {}
    for l in range(1, L + 1):
        if not A.dim(l):
            continue
        q = Quotient(ring, A.dim(l), pw[2][l].basis)
        r = A.rep(l)
        qlevels[l] = Rep(ring, l, [r.degrees[b] for b in q.basis], [q.induced(g, q) for g in r.gens],
                         q.induced(r.dmatrix(), q))
        lifts[l] = [{b: ring.one} for b in q.basis]
    Qseq = SymSeq(ring, L, qlevels)
    fc = FreeComm(Qseq, L)
    table = {}
    witness = None
    for l in range(1, L + 1):
        for i in range(1, l + 1):
            keys = [k for k in fc.keys(l) if len(k[1]) == i]
            top = pw[i][l] if l in pw[i] else None
            if top is None:
                continue
            low = pw[i + 1].get(l) if (i + 1) in pw else None
            rel = [top.coordinates(v) for v in low.basis] if low is not None else []
            quot = Quotient(ring, top.dim, rel)
            cols = []
            for w, b in keys:
                vecs = [lifts[s][j] for s, j in zip(block_sizes(w), b)]
                cols.append(quot.project(top.coordinates(_evaluate(A, w, vecs))))
            xi = Matrix(ring, quot.dim, len(keys), cols)
            table[(l, i)] = (len(keys), quot.dim)
            if not (len(keys) == quot.dim and rank(xi) == quot.dim):
                witness = witness or (l, i, len(keys), quot.dim)
    return Verdict("xi: C(m/m^2) -> gr is bijective", witness is None, table, witness, {"max_level": L})
