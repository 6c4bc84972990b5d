"""The bar construction of a reduced commutative shuffle algebra.

A bar word ``[a_0 | ... | a_{s-1}]`` at level ℓ is a key ``(w, b)``: ``w``
is the label word of the shuffle distributing the ℓ positions over the
``s`` factors (``w[k]`` is the factor at position ``k``) and ``b[i]`` is a
basis index of ``A(#{k : w[k] = i})``.  Factor ``i`` has suspended degree
``|a_i| + 1``.

The differential is ``d = d_int + d_merge`` with

    d_int [.. | a_i | ..]  = Σ_i -(-1)^{Σ_{j<i}(|a_j|+1)} [.. | d a_i | ..]
    d_merge [a_0|..|a_{s-1}] = Σ_i (-1)^{(i+1) + Σ_{j≤i}|a_j|} [.. | τ·μ(a_i, a_{i+1}) | ..]

where τ is the relative shuffle of the positions of factors ``i`` and
``i+1``.  The shuffle product interleaves the factors of two words with
the Koszul sign of the suspended degrees.
"""

from __future__ import annotations

from itertools import product as cartesian

from ..exactlin import ChainComplex, Matrix, Quotient, axpy, homology_dims
from ..shalg.algebra import ShuffleAlgebra
from ..symseq import perm as P
from ..symseq.odot import act_adjacent, koszul_sign
from ..symseq.rep import Rep, SymSeq, ValidationError
from ..shalg.free import block_sizes


class BarComplex:
    """``B(A)`` truncated at ``max_level``; word length 0 is included iff ``unital``."""

    def __init__(self, A, max_level=None, unital=False):
        if not A.is_reduced:
            raise ValidationError("the bar construction needs a reduced algebra")
        self.A = A
        self.ring = A.ring
        self.max_level = A.max_level if max_level is None else min(max_level, A.max_level)
        self.unital = unital
        self._keys = {}
        self._reps = {}
        self._algebra = None

    # basis --------------------------------------------------------------------

    def keys(self, level):
        if level in self._keys:
            return self._keys[level]
        A = self.A
        out = []
        if level == 0:
            out = [((), ())] if self.unital else []
        else:
            support = [p for p in range(1, level + 1) if A.dim(p)]
            for s in range(1, level + 1):
                for comp in P.compositions(level, s):
                    if not all(A.dim(p) for p in comp):
                        continue
                    ranges = [range(A.dim(p)) for p in comp]
                    for w in P.words_for_sizes(comp):
                        for b in cartesian(*ranges):
                            out.append((w, b))
        self._keys[level] = out
        return out

    def factor_degrees(self, key):
        w, b = key
        return [self.A.degree(p, i) for p, i in zip(block_sizes(w), b)]

    def suspended_degrees(self, key):
        return [d + 1 for d in self.factor_degrees(key)]

    def degree(self, key):
        return sum(self.suspended_degrees(key))

    def word_length(self, key):
        return len(key[1])

    # differential -------------------------------------------------------------

    def d_key(self, key):
        w, b = key
        ring = self.ring
        A = self.A
        sizes = block_sizes(w)
        degs = [A.degree(p, i) for p, i in zip(sizes, b)]
        out = {}
        # internal part
        prefix = 0
        for i, (p, bi) in enumerate(zip(sizes, b)):
            r = A.rep(p)
            if r.diff is not None:
                sgn = -1 if prefix % 2 == 0 else 1
                for j, c in r.diff.columns[bi].items():
                    k2 = (w, b[:i] + (j,) + b[i + 1:])
                    out[k2] = ring.reduce(out.get(k2, 0) + sgn * c)
            prefix += degs[i] + 1
        # merging adjacent factors
        cum = 0
        for i in range(len(sizes) - 1):
            cum += degs[i]
            eps = (i + 1) + cum
            sgn = -1 if eps % 2 else 1
            p, q = sizes[i], sizes[i + 1]
            if p + q > A.max_level:
                continue
            prod = A.product(p, q, {b[i]: ring.one}, {b[i + 1]: ring.one})
            if not prod:
                continue
            sub = [0 if x == i else 1 for x in w if x == i or x == i + 1]
            tau = P.word_to_shuffle(sub, 2)
            prod = A.act(p + q, tau, prod)
            new_w = tuple(x if x <= i else x - 1 for x in w)
            for j, c in prod.items():
                k2 = (new_w, b[:i] + (j,) + b[i + 2:])
                out[k2] = ring.reduce(out.get(k2, 0) + sgn * c)
        return {k: v for k, v in out.items() if v}

    # levels -------------------------------------------------------------------

    def rep(self, level):
        if level in self._reps:
            return self._reps[level]
        ring = self.ring
        keys = self.keys(level)
        idx = {k: i for i, k in enumerate(keys)}
        n = len(keys)
        A = self.A
        gens = []
        for k in range(1, level):
            cols = []
            for w, b in keys:
                reps = [A.rep(p) for p in block_sizes(w)]
                cols.append({idx[(w2, b2)]: ring.reduce(c) for c, w2, b2 in act_adjacent(reps, w, b, k)})
            gens.append(Matrix(ring, n, n, cols))
        diff = Matrix(ring, n, n, [{idx[k2]: c for k2, c in self.d_key(key).items()} for key in keys])
        degrees = [self.degree(key) for key in keys]
        r = Rep(ring, level, degrees, gens, diff, keys)
        self._reps[level] = r
        return r

    def seq(self):
        return SymSeq(self.ring, self.max_level, {l: self.rep(l) for l in range(self.max_level + 1)})

    def complex(self, level):
        r = self.rep(level)
        return ChainComplex.from_graded(self.ring, r.degrees, r.diff)

    def homology(self, level):
        return homology_dims(self.complex(level))

    # shuffle product ----------------------------------------------------------

    def product_keys(self, u, v):
        """Shuffle product of two bar words (identity shuffle on positions)."""
        (w1, b1), (w2, b2) = u, v
        s1, s2 = len(b1), len(b2)
        w = w1 + tuple(x + s1 for x in w2)
        b = b1 + b2
        sd = self.suspended_degrees(u) + self.suspended_degrees(v)
        ring = self.ring
        out = {}
        for rho in P.shuffles(s1, s2):
            order = P.inverse(rho)
            src = [o - 1 for o in order]
            sgn = koszul_sign(sd, src)
            key = (tuple(rho[x] - 1 for x in w), tuple(b[j] for j in src))
            out[key] = ring.reduce(out.get(key, 0) + sgn)
        return {k: c for k, c in out.items() if c}

    def product(self, x, y):
        out = {}
        for u, a in x.items():
            for v, c in y.items():
                axpy(self.ring, out, self.product_keys(u, v), a * c)
        return out

    def act_word(self, sigma, key):
        """σ·key for σ preserving the order inside every factor (e.g. a shuffle of a product)."""
        w, b = key
        new_w = [0] * len(w)
        for k, x in enumerate(w):
            new_w[sigma[k] - 1] = x
        return (tuple(new_w), b)

    def decomposables(self, level):
        """Spanning vectors of ``Σ σ·(B̄(p)·B̄(q))`` inside ``B̄(level)``, ``p, q ≥ 1``."""
        idx = self.rep(level).index
        vecs = []
        for p in range(1, level):
            q = level - p
            kp, kq = self.keys(p), self.keys(q)
            if not (kp and kq):
                continue
            shuf = P.shuffles(p, q)
            for u in kp:
                for v in kq:
                    prod = self.product_keys(u, v)
                    if not prod:
                        continue
                    for sigma in shuf:
                        vec = {}
                        for key, c in prod.items():
                            vec[idx[self.act_word(sigma, key)]] = c
                        vecs.append(vec)
        return vecs

    def materialize(self):
        """``B̄(A)`` (or ``B(A)`` when unital) as a chain :class:`ShuffleAlgebra`."""
        if self._algebra is not None:
            return self._algebra
        ring = self.ring
        L = self.max_level
        seq = self.seq()
        mult = {}
        for p in range(L + 1):
            for q in range(L + 1 - p):
                kp, kq = self.keys(p), self.keys(q)
                if not (kp and kq):
                    continue
                idx = seq.rep(p + q).index
                cols = []
                for u in kp:
                    for v in kq:
                        if not u[0] and not u[1]:
                            cols.append({idx[v]: ring.one})
                        elif not v[0] and not v[1]:
                            cols.append({idx[u]: ring.one})
                        else:
                            cols.append({idx[k]: c for k, c in self.product_keys(u, v).items()})
                mult[(p, q)] = Matrix(ring, seq.dim(p + q), len(kp) * len(kq), cols)
        unit = {0: ring.one} if self.unital else None
        self._algebra = ShuffleAlgebra(seq, mult, unit, name=f"B({self.A.name})")
        return self._algebra


def bar(A, max_level=None, unital=False):
    return BarComplex(A, max_level, unital)


def bar_shuffle_product(B):
    """The chain shuffle algebra structure on a :class:`BarComplex`."""
    return B.materialize()


def _betti_from_levels(per_level):
    out = {}
    for l, h in per_level.items():
        for n, v in h.items():
            b = v[0] if isinstance(v, tuple) else v
            if b:
                out[(l, n)] = b
    return out


def bar_homology(A, max_level=None):
    """Betti table ``{(level, degree): dim}`` of ``B̄(A)`` (reduced bar complex)."""
    B = BarComplex(A, max_level)
    return _betti_from_levels({l: B.homology(l) for l in range(1, B.max_level + 1)})


def e1_homology(A, max_level=None):
    """``H^{E_1}``: homology of ``Σ^{-1} B̄(A)`` as a Betti table."""
    return {(l, d - 1): v for (l, d), v in bar_homology(A, max_level).items()}


def iterated_bar(A, n, max_level=None, max_n=2):
    """``B̄ⁿ(A)`` as a chain shuffle algebra (``n ≤ max_n``)."""
    if n < 1:
        raise ValidationError("n must be positive")
    if n > max_n:
        raise ValidationError(f"iterated bar beyond n = {max_n} is disabled (combinatorial blow-up)")
    X = A
    for _ in range(n):
        X = BarComplex(X, max_level).materialize()
    return X


def iterated_bar_homology(A, n, max_level=None, max_n=2):
    X = iterated_bar(A, n, max_level, max_n)
    return _betti_from_levels(X.seq.homology())


def en_homology(A, n, max_level=None, max_n=2):
    """``H^{E_n}``: homology of ``Σ^{-n} B̄ⁿ(A)`` as a Betti table."""
    table = iterated_bar_homology(A, n, max_level, max_n)
    return {(l, d - n): v for (l, d), v in table.items()}


def harrison(A, max_level=None):
    """Harrison homology: homology of ``B̄(A)`` modulo products of positive words."""
    B = BarComplex(A, max_level)
    ring = A.ring
    out = {}
    for l in range(1, B.max_level + 1):
        r = B.rep(l)
        if not r.dim:
            continue
        q = Quotient(ring, r.dim, B.decomposables(l))
        qd = q.induced(r.dmatrix(), q)
        degs = [r.degrees[b] for b in q.basis]
        h = homology_dims(ChainComplex.from_graded(ring, degs, qd))
        for n, v in h.items():
            if v:
                out[(l, n)] = v
    return out


def indecomposables(A):
    """``Q_a(A) = A / Σ σ·μ_{p,q}(A(p) ⊗ A(q))`` with induced action and differential."""
    ring = A.ring
    levels = {}
    maps = {}
    for l in range(1, A.max_level + 1):
        r = A.rep(l)
        if not r.dim:
            continue
        vecs = []
        for p in range(1, l):
            m = A.mult.get((p, l - p))
            if m is None:
                continue
            shuf = P.shuffles(p, l - p)
            for col in m.columns:
                if col:
                    for sigma in shuf:
                        vecs.append(r.act(sigma, col))
        q = Quotient(ring, r.dim, vecs)
        gens = [q.induced(g, q) for g in r.gens]
        diff = q.induced(r.diff, q) if r.diff is not None else None
        levels[l] = Rep(ring, l, [r.degrees[b] for b in q.basis], gens, diff)
        maps[l] = q
    out = SymSeq(ring, A.max_level, levels)
    out.quotients = maps
    return out
