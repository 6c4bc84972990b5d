"""The ⊙ product of symmetric sequences, its symmetry, and tensor powers.

A basis vector of ``(V_0 ⊙ ... ⊙ V_{s-1})(ℓ)`` is a key ``(comp, w, b)``:
``comp`` gives the level of each factor, ``w`` is the label word of the
shuffle (``w[k]`` is the factor occupying position ``k``) and ``b`` lists a
basis index of ``V_i(comp[i])`` for each factor.  Keys are ordered by
composition, then shuffle lex order, then factor indices.
"""

from __future__ import annotations

import warnings
from itertools import permutations, product

from ..exactlin import Matrix, Quotient, Subspace, rank
from . import perm as P
from .rep import Rep, SymMap, SymSeq, ValidationError


def koszul_sign(degrees, order):
    """Sign of moving graded factors with ``degrees`` into ``order``.

    ``order[j]`` is the old position of the factor that ends up at ``j``.
    """
    s = 0
    n = len(order)
    for a in range(n):
        da = degrees[order[a]]
        if not da % 2:
            continue
        for b in range(a + 1, n):
            if order[a] > order[b] and degrees[order[b]] % 2:
                s += 1
    return -1 if s % 2 else 1


def act_adjacent(factor_reps, w, b, k):
    """``s_k`` applied to the basis vector ``(w, b)``; returns ``[(coef, w, b)]``.

    ``factor_reps[i]`` is the representation containing ``b[i]``.
    """
    x, y = w[k - 1], w[k]
    if x != y:
        w2 = list(w)
        w2[k - 1], w2[k] = y, x
        return [(1, tuple(w2), b)]
    j = sum(1 for t in range(k - 1) if w[t] == x)
    col = factor_reps[x].gens[j].columns[b[x]]
    out = []
    for i, c in col.items():
        b2 = b[:x] + (i,) + b[x + 1:]
        out.append((c, w, b2))
    return out


def key_degree(factor_degrees, b):
    return sum(d[i] for d, i in zip(factor_degrees, b))


class ProductSeq:
    """Lazy description of ``V_0 ⊙ ... ⊙ V_{s-1}``; ``rep(ℓ)`` materializes a level."""

    def __init__(self, factors, max_level=None):
        self.factors = list(factors)
        if not self.factors:
            raise ValueError("need at least one factor")
        ring = self.factors[0].ring
        for f in self.factors:
            if f.ring != ring:
                raise ValidationError("ring mismatch in ⊙ product")
        self.ring = ring
        if max_level is None:
            max_level = min(f.max_level for f in self.factors)
        self.max_level = max_level
        self._reps = {}

    def compositions(self, level):
        s = len(self.factors)
        supports = [[l for l in range(level + 1) if f.dim(l)] for f in self.factors]
        out = []

        def rec(i, acc, left):
            if i == s:
                if left == 0:
                    out.append(tuple(acc))
                return
            for l in supports[i]:
                if l <= left:
                    rec(i + 1, acc + [l], left - l)

        rec(0, [], level)
        return sorted(out)

    def keys(self, level):
        out = []
        for comp in self.compositions(level):
            ranges = [range(f.dim(l)) for f, l in zip(self.factors, comp)]
            words = P.words_for_sizes(comp)
            for w in words:
                for b in product(*ranges):
                    out.append((comp, w, b))
        return out

    def rep(self, level):
        if level in self._reps:
            return self._reps[level]
        ring = self.ring
        keys = self.keys(level)
        idx = {k: i for i, k in enumerate(keys)}
        n = len(keys)
        degrees = []
        for comp, w, b in keys:
            degrees.append(key_degree([f.rep(l).degrees for f, l in zip(self.factors, comp)], b))
        gens = []
        for k in range(1, level):
            cols = []
            for comp, w, b in keys:
                reps = [f.rep(l) for f, l in zip(self.factors, comp)]
                col = {}
                for c, w2, b2 in act_adjacent(reps, w, b, k):
                    col[idx[(comp, w2, b2)]] = ring.reduce(c)
                cols.append(col)
            gens.append(Matrix(ring, n, n, cols))
        diff = None
        if any(f.is_graded() for f in self.factors):
            cols = []
            for comp, w, b in keys:
                reps = [f.rep(l) for f, l in zip(self.factors, comp)]
                col = {}
                sgn = 1
                for i, r in enumerate(reps):
                    if r.diff is not None:
                        for j, c in r.diff.columns[b[i]].items():
                            key = (comp, w, b[:i] + (j,) + b[i + 1:])
                            col[idx[key]] = ring.reduce(sgn * c)
                    if r.degrees[b[i]] % 2:
                        sgn = -sgn
                cols.append(col)
            diff = Matrix(ring, n, n, cols)
        r = Rep(ring, level, degrees, gens, diff, keys)
        self._reps[level] = r
        return r

    def to_symseq(self):
        return SymSeq(self.ring, self.max_level, {l: self.rep(l) for l in range(self.max_level + 1)})


def odot(*seqs, max_level=None):
    """``X ⊙ Y`` (or an iterated product), truncated at ``max_level``."""
    return ProductSeq(seqs, max_level).to_symseq()


def factor_permutation(prod, pi, level):
    """Matrix of the factor permutation π on ``prod`` at ``level``.

    The factor in position ``i`` moves to position ``π(i)``; ``prod`` must
    be a power ``V^{⊙n}`` (all factors equal).
    """
    ring = prod.ring
    rep = prod.rep(level)
    idx = rep.index
    n = len(prod.factors)
    order = P.inverse(pi)
    cols = []
    for comp, w, b in rep.keys:
        degs = [prod.factors[i].rep(comp[i]).degrees[b[i]] for i in range(n)]
        src = [o - 1 for o in order]
        sgn = koszul_sign(degs, src)
        w2 = tuple(pi[x] - 1 for x in w)
        comp2 = tuple(comp[j] for j in src)
        b2 = tuple(b[j] for j in src)
        cols.append({idx[(comp2, w2, b2)]: ring(sgn)})
    return Matrix(ring, rep.dim, rep.dim, cols)


def twist(X, Y, max_level=None):
    """The symmetry ``X ⊙ Y -> Y ⊙ X``: ``[σ, x, y] ↦ ±[σ∘χ(q,p), y, x]``."""
    xy = ProductSeq([X, Y], max_level)
    yx = ProductSeq([Y, X], max_level)
    ring = xy.ring
    mats = {}
    for l in range(xy.max_level + 1):
        src = xy.rep(l)
        tgt = yx.rep(l)
        cols = []
        for (p, q), w, (x, y) in src.keys:
            dx = X.rep(p).degrees[x]
            dy = Y.rep(q).degrees[y]
            sgn = -1 if dx % 2 and dy % 2 else 1
            w2 = tuple(1 - a for a in w)
            cols.append({tgt.index[((q, p), w2, (y, x))]: ring(sgn)})
        mats[l] = Matrix(ring, tgt.dim, src.dim, cols)
    return SymMap(xy.to_symseq(), yx.to_symseq(), mats)


# ---------------------------------------------------------------------------
# coinvariants, invariants, norm


class PowerData:
    """``V^{⊙n}`` with its Σ_n factor action, coinvariants and invariants per level."""

    def __init__(self, V, n, max_level=None):
        if n < 1:
            raise ValueError("n must be positive")
        if not V.is_reduced() and n > 1:
            warnings.warn("tensor powers of a non-reduced sequence: the norm map need not be bijective",
                          stacklevel=3)
        self.V = V
        self.n = n
        self.prod = ProductSeq([V] * n, max_level)
        self.ring = V.ring
        self.max_level = self.prod.max_level
        self._gen_actions = {}
        self._coinv = {}
        self._inv = {}

    def factor_gens(self, level):
        """Matrices of the adjacent factor swaps ``t_1, ..., t_{n-1}``."""
        if level not in self._gen_actions:
            self._gen_actions[level] = [
                factor_permutation(self.prod, P.transposition(self.n, i), level) for i in range(1, self.n)]
        return self._gen_actions[level]

    def coinvariant_quotient(self, level):
        if level not in self._coinv:
            rep = self.prod.rep(level)
            rels = []
            orbits = _signed_orbits(self.factor_gens(level), rep.dim, self.ring)
            if orbits is not None:
                # e_i ~ ±e_rep along each orbit, with rep its largest element
                for signs, dead in orbits:
                    top = max(signs)
                    if dead:
                        rels.append({top: self.ring.one})
                    for i, sg in signs.items():
                        if i != top:
                            rels.append({i: self.ring.one, top: self.ring(-sg * signs[top])})
                self._coinv[level] = Quotient(self.ring, rep.dim, rels)
                return self._coinv[level]
            for t in self.factor_gens(level):
                for j in range(rep.dim):
                    v = dict(t.columns[j])
                    v[j] = self.ring.reduce(v.get(j, 0) - 1)
                    if not v[j]:
                        del v[j]
                    if v:
                        rels.append(v)
            self._coinv[level] = Quotient(self.ring, rep.dim, rels)
        return self._coinv[level]

    def invariant_subspace(self, level):
        if level not in self._inv:
            rep = self.prod.rep(level)
            if not self.ring.is_field:
                raise ValidationError("invariants are computed over fields only")
            orbits = _signed_orbits(self.factor_gens(level), rep.dim, self.ring)
            if orbits is not None:
                sums = [{i: self.ring(sg) for i, sg in signs.items()} for signs, dead in orbits if not dead]
                self._inv[level] = Subspace(self.ring, rep.dim, sums)
                return self._inv[level]
            # joint kernel of (t_i - 1)
            n = rep.dim
            stacked_cols = [{} for _ in range(n)]
            for i, t in enumerate(self.factor_gens(level)):
                for j in range(n):
                    col = stacked_cols[j]
                    for r, c in t.columns[j].items():
                        col[i * n + r] = c
                    key = i * n + j
                    val = self.ring.reduce(col.get(key, 0) - 1)
                    if val:
                        col[key] = val
                    else:
                        col.pop(key, None)
            from ..exactlin import kernel_basis
            m = Matrix(self.ring, n * max(self.n - 1, 0), n, stacked_cols)
            kb = kernel_basis(m)
            self._inv[level] = Subspace(self.ring, n, kb.columns)
        return self._inv[level]

    def norm_vector(self, level, v):
        """``Σ_{π ∈ Σ_n} π·v``."""
        out = {}
        from ..exactlin import axpy
        for pi in permutations(range(1, self.n + 1)):
            axpy(self.ring, out, self._apply_factor_perm(pi, level, v), 1)
        return out

    def _apply_factor_perm(self, pi, level, v):
        word = P.adjacent_word(pi)
        gens = self.factor_gens(level)
        for k in word:
            v = gens[k - 1].apply(v)
        return v


def _signed_orbits(gens, dim, ring):
    """Orbits of a group generated by signed permutation matrices, or ``None``.

    Returns ``[(signs, dead)]`` where ``signs`` maps each orbit element to
    its sign relative to the first one and ``dead`` records that some group
    element sends a basis vector to its negative (irrelevant in
    characteristic 2).
    """
    images = []
    for g in gens:
        img = []
        for j in range(dim):
            col = g.columns[j]
            if len(col) != 1:
                return None
            (i, c), = col.items()
            c = ring.reduce(c)
            if c == ring.one:
                img.append((i, 1))
            elif ring.reduce(c + 1) == 0:
                img.append((i, -1))
            else:
                return None
        images.append(img)
    seen = [False] * dim
    out = []
    char2 = ring.kind == "F" and ring.p == 2
    for start in range(dim):
        if seen[start]:
            continue
        sign = {start: 1}
        stack = [start]
        seen[start] = True
        dead = False
        while stack:
            j = stack.pop()
            for img in images:
                i, c = img[j]
                sg = sign[j] * c
                if i in sign:
                    if sign[i] != sg and not char2:
                        dead = True
                else:
                    sign[i] = sg
                    seen[i] = True
                    stack.append(i)
        out.append((sign, dead))
    return out


def _restricted_rep(rep, space, ring, level):
    gens = [space.restrict(g, space) for g in rep.gens]
    diff = space.restrict(rep.diff, space) if rep.diff is not None else None
    degrees = [rep.degrees[min(b)] if b else 0 for b in space.basis]
    return Rep(ring, level, degrees, gens, diff)


def _quotient_rep(rep, q, ring, level):
    gens = [q.induced(g, q) for g in rep.gens]
    diff = q.induced(rep.diff, q) if rep.diff is not None else None
    degrees = [rep.degrees[b] for b in q.basis]
    return Rep(ring, level, degrees, gens, diff)


def power_coinvariants(V, n, max_level=None, data=None):
    """``(V^{⊙n})_{Σ_n}`` levelwise, as a cokernel of ``t_i - 1``."""
    data = data or PowerData(V, n, max_level)
    levels = {}
    for l in range(data.max_level + 1):
        rep = data.prod.rep(l)
        if rep.dim:
            levels[l] = _quotient_rep(rep, data.coinvariant_quotient(l), data.ring, l)
    return SymSeq(data.ring, data.max_level, levels)


def power_invariants(V, n, max_level=None, data=None):
    """``(V^{⊙n})^{Σ_n}`` levelwise, as the joint kernel of ``t_i - 1``."""
    data = data or PowerData(V, n, max_level)
    levels = {}
    for l in range(data.max_level + 1):
        rep = data.prod.rep(l)
        if rep.dim:
            levels[l] = _restricted_rep(rep, data.invariant_subspace(l), data.ring, l)
    return SymSeq(data.ring, data.max_level, levels)


class NormResult:
    """Verdict plus level matrices; the source and target sequences are built on demand."""

    def __init__(self, data, mats, verdict, witness):
        self._data = data
        self.mats = mats
        self.verdict = verdict
        self.witness = witness
        self._maps = None

    @property
    def coinvariants(self):
        return self.maps.source

    @property
    def invariants(self):
        return self.maps.target

    @property
    def maps(self):
        if self._maps is None:
            d = self._data
            self._maps = SymMap(power_coinvariants(d.V, d.n, data=d), power_invariants(d.V, d.n, data=d),
                                self.mats)
        return self._maps

    def __bool__(self):
        return self.verdict


def norm_map(V, n, max_level=None):
    """The norm ``Σ_{σ∈Σ_n} σ`` from coinvariants to invariants of ``V^{⊙n}``.

    Returns a :class:`NormResult` with the matrices per level, the verdict
    (bijective at every level) and, on failure, a witness
    ``(level, reason, vector)``.
    """
    data = PowerData(V, n, max_level)
    ring = data.ring
    maps = {}
    verdict = True
    witness = None
    for l in range(data.max_level + 1):
        rep = data.prod.rep(l)
        if not rep.dim:
            maps[l] = Matrix.zeros(ring, 0, 0)
            continue
        q = data.coinvariant_quotient(l)
        sub = data.invariant_subspace(l)
        cols = []
        for k in range(q.dim):
            v = data.norm_vector(l, q.lift(k))
            cols.append(sub.coordinates(v))
        m = Matrix(ring, sub.dim, q.dim, cols)
        maps[l] = m
        if verdict and not (m.nrows == m.ncols and rank(m) == m.ncols):
            verdict = False
            from ..exactlin import kernel_basis
            kb = kernel_basis(m)
            vec = kb.columns[0] if kb.ncols else None
            reason = "not injective" if vec is not None else "not surjective"
            witness = (l, reason, vec)
    return NormResult(data, maps, verdict, witness)
