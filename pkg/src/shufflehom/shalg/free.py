"""Free commutative and free associative shuffle algebras.

For a reduced generating sequence ``V`` the symmetric group Σ_n permutes
the signed basis of ``V^{⊙n}`` freely, so the coinvariants have a basis of
orbit representatives.  We use the representative whose label word is in
restricted-growth form (labels appear in order of first occurrence).  A
basis vector of ``C̄(V)(ℓ)`` is therefore a key ``(w, b)`` with ``w`` a
restricted-growth word of length ``ℓ`` and ``b[i]`` a basis index of
``V(#{k : w[k] = i})``.  Products are concatenations, which are already in
normal form.

Elements are sparse dicts ``{key: coefficient}``; :meth:`FreeComm.materialize`
turns a truncation into a :class:`ShuffleAlgebra` with explicit matrices.
"""

from __future__ import annotations

from itertools import product as cartesian

from ..exactlin import Matrix, axpy
from ..symseq import perm as P
from ..symseq.odot import ProductSeq, koszul_sign
from ..symseq.rep import Rep, SymMap, SymSeq, ValidationError
from .algebra import ShuffleAlgebra


def normalize(w, b, degrees):
    """Relabel ``w`` in order of first occurrence; returns ``(sign, w, b)``.

    ``degrees[i]`` is the degree of the factor ``b[i]``.
    """
    order = []
    seen = {}
    out = []
    for x in w:
        y = seen.get(x)
        if y is None:
            y = seen[x] = len(order)
            order.append(x)
        out.append(y)
    if order == list(range(len(order))):
        return 1, tuple(out), tuple(b)
    sgn = koszul_sign(degrees, order) if degrees is not None else 1
    return sgn, tuple(out), tuple(b[o] for o in order)


def block_sizes(w):
    sizes = {}
    for x in w:
        sizes[x] = sizes.get(x, 0) + 1
    return [sizes[i] for i in range(len(sizes))]


class FreeComm:
    """``C̄(V)`` (or ``C(V)`` when ``unital``) on a reduced sequence ``V``."""

    def __init__(self, V, max_level=None, unital=False, name=None):
        if not V.is_reduced():
            raise ValidationError("free commutative algebra needs a reduced generating sequence")
        self.V = V
        self.ring = V.ring
        self.max_level = V.max_level if max_level is None else max_level
        self.unital = unital
        self.name = name or ("C" if unital else "C̄") + "(V)"
        self._keys = {}
        self._algebra = None
        self._ungraded = not V.is_graded()

    # keys ---------------------------------------------------------------------

    def factor_degrees(self, w, b):
        sizes = block_sizes(w)
        return [self.V.rep(s).degrees[i] for s, i in zip(sizes, b)]

    def key_degree(self, key):
        return sum(self.factor_degrees(*key))

    def weight(self, key):
        return len(key[1])

    def keys(self, level):
        """Basis keys at ``level``, ordered by weight, word and factor indices."""
        if level in self._keys:
            return self._keys[level]
        if level == 0:
            out = [((), ())] if self.unital else []
            self._keys[0] = out
            return out
        allowed = {l for l in range(1, level + 1) if self.V.dim(l)}
        maxsize = max(allowed) if allowed else 0
        words = []

        def rec(acc, sizes):
            if len(acc) == level:
                if all(s in allowed for s in sizes):
                    words.append(tuple(acc))
                return
            remaining = level - len(acc)
            # prune: every block that is too small must still be fillable
            for x in range(len(sizes)):
                if sizes[x] < maxsize:
                    sizes[x] += 1
                    acc.append(x)
                    rec(acc, sizes)
                    acc.pop()
                    sizes[x] -= 1
            if remaining >= min(allowed, default=level + 1):
                sizes.append(1)
                acc.append(len(sizes) - 1)
                rec(acc, sizes)
                acc.pop()
                sizes.pop()

        if allowed:
            rec([], [])
        out = []
        for w in words:
            sizes = block_sizes(w)
            for b in cartesian(*[range(self.V.dim(s)) for s in sizes]):
                out.append((w, b))
        out.sort(key=lambda k: (len(k[1]), k[0], k[1]))
        self._keys[level] = out
        return out

    def dim(self, level):
        return len(self.keys(level))

    # element calculus ---------------------------------------------------------

    def generator(self, level, i):
        """The weight-one element given by basis vector ``i`` of ``V(level)``."""
        return {((0,) * level, (i,)): self.ring.one}

    def include(self, level, v):
        """Weight-one inclusion ``V(level) -> C̄(V)(level)``."""
        return {((0,) * level, (i,)): c for i, c in v.items()}

    def unit(self):
        if not self.unital:
            raise ValidationError("non-unital free algebra has no unit")
        return {((), ()): self.ring.one}

    def product(self, x, y):
        """``μ_{p,q}(x, y)`` by concatenation."""
        ring = self.ring
        out = {}
        for (w1, b1), c1 in x.items():
            n1 = len(b1)
            for (w2, b2), c2 in y.items():
                key = (w1 + tuple(a + n1 for a in w2), b1 + b2)
                t = ring.reduce(out.get(key, 0) + c1 * c2)
                if t:
                    out[key] = t
                else:
                    out.pop(key, None)
        return out

    def act_key(self, sigma, key):
        """``σ · (w, b)`` as a sparse element."""
        w, b = key
        n = len(w)
        if n == 0:
            return {key: self.ring.one}
        new_w = [0] * n
        last = [0] * len(b)
        monotone = True
        for k, x in enumerate(w):
            t = sigma[k]
            new_w[t - 1] = x
            if t < last[x]:
                monotone = False
            last[x] = t
        if monotone:
            # σ keeps the order inside every block: only a relabelling
            if self._ungraded:
                _, w2, b2 = normalize(new_w, b, None)
                return {(w2, b2): self.ring.one}
            sgn, w2, b2 = normalize(new_w, b, self.factor_degrees(w, b))
            return {(w2, b2): self.ring(sgn)}
        sizes = block_sizes(w)
        positions = [[] for _ in sizes]
        for k, x in enumerate(w):
            positions[x].append(sigma[k])
        # factor actions α_i
        factor_vectors = []
        for i, s in enumerate(sizes):
            alpha = P.standardize(positions[i])
            v = {b[i]: self.ring.one}
            if alpha != tuple(range(1, s + 1)):
                v = self.V.rep(s).act(alpha, v)
            factor_vectors.append(v)
        out = {}
        ring = self.ring
        for combo in cartesian(*[list(v.items()) for v in factor_vectors]):
            bb = tuple(i for i, _ in combo)
            c = ring.one
            for _, x in combo:
                c = c * x
            degs = [self.V.rep(s).degrees[i] for s, i in zip(sizes, bb)]
            sgn, w2, b2 = normalize(new_w, bb, degs)
            k2 = (w2, b2)
            t = ring.reduce(out.get(k2, 0) + sgn * c)
            if t:
                out[k2] = t
            else:
                out.pop(k2, None)
        return out

    def act(self, sigma, x):
        out = {}
        if tuple(sigma) == tuple(range(1, len(sigma) + 1)):
            return dict(x)
        for key, c in x.items():
            axpy(self.ring, out, self.act_key(sigma, key), c)
        return out

    def act_adjacent_key(self, k, key):
        """``s_k · (w, b)``."""
        w, b = key
        x, y = w[k - 1], w[k]
        ring = self.ring
        if x != y:
            w2 = list(w)
            w2[k - 1], w2[k] = y, x
            degs = self.factor_degrees(w, b)
            sgn, w3, b3 = normalize(w2, b, degs)
            return {(w3, b3): ring(sgn)}
        j = sum(1 for t in range(k - 1) if w[t] == x)
        size = w.count(x)
        col = self.V.rep(size).gens[j].columns[b[x]]
        return {(w, b[:x] + (i,) + b[x + 1:]): c for i, c in col.items()}

    def d_key(self, key):
        w, b = key
        sizes = block_sizes(w)
        out = {}
        sgn = 1
        for i, s in enumerate(sizes):
            r = self.V.rep(s)
            if r.diff is not None:
                for j, c in r.diff.columns[b[i]].items():
                    out[(w, b[:i] + (j,) + b[i + 1:])] = self.ring.reduce(sgn * c)
            if r.degrees[b[i]] % 2:
                sgn = -sgn
        return out

    def d(self, x):
        out = {}
        for key, c in x.items():
            axpy(self.ring, out, self.d_key(key), c)
        return out

    def multiply(self, sigma, x, y):
        return self.act(sigma, self.product(x, y))

    # materialization ----------------------------------------------------------

    def materialize(self):
        """The truncation at ``max_level`` as an explicit :class:`ShuffleAlgebra`."""
        if self._algebra is not None:
            return self._algebra
        ring = self.ring
        L = self.max_level
        levels = {}
        graded = self.V.is_graded()
        for l in range(L + 1):
            keys = self.keys(l)
            if not keys:
                continue
            idx = {k: i for i, k in enumerate(keys)}
            n = len(keys)
            gens = []
            for k in range(1, l):
                cols = [{idx[k2]: c for k2, c in self.act_adjacent_key(k, key).items()} for key in keys]
                gens.append(Matrix(ring, n, n, cols))
            diff = None
            if graded:
                diff = Matrix(ring, n, n, [{idx[k2]: c for k2, c in self.d_key(key).items()} for key in keys])
            degrees = [self.key_degree(key) for key in keys]
            levels[l] = Rep(ring, l, degrees, gens, diff, keys)
        seq = SymSeq(ring, L, levels)
        mult = {}
        for p in range(L + 1):
            for q in range(L + 1 - p):
                kp, kq = self.keys(p), self.keys(q)
                if not (kp and kq):
                    continue
                idx = seq.rep(p + q).index
                cols = []
                for a in kp:
                    for b in kq:
                        prod = self.product({a: 1}, {b: 1})
                        cols.append({idx[k]: ring(c) for k, c in prod.items()})
                mult[(p, q)] = Matrix(ring, len(idx), len(kp) * len(kq), cols)
        unit = {0: ring.one} if self.unital else None
        self._algebra = ShuffleAlgebra(seq, mult, unit, name=self.name)
        return self._algebra

    def to_vector(self, level, x):
        idx = self.materialize().rep(level).index
        return {idx[k]: c for k, c in x.items()}

    def from_vector(self, level, v):
        keys = self.materialize().rep(level).keys
        return {keys[i]: c for i, c in v.items()}

    def weight_part(self, level, q):
        """Indices of the weight-``q`` basis vectors at ``level``."""
        return [i for i, k in enumerate(self.keys(level)) if len(k[1]) == q]


def free_comm(M, max_level=None, unital=False, name=None):
    """The free commutative algebra ``C(M)`` / ``C̄(M)`` as an explicit algebra."""
    return FreeComm(M, max_level, unital, name).materialize()


# ---------------------------------------------------------------------------
# maps out of and between free algebras


def free_functor(f, src, tgt):
    """``C̄(f): C̄(V) -> C̄(W)`` for a degree-preserving equivariant ``f: V -> W``.

    ``src`` and ``tgt`` are :class:`FreeComm` objects on ``V`` and ``W``.
    """
    ring = src.ring
    mats = {}
    A, B = src.materialize(), tgt.materialize()
    for l in range(min(src.max_level, tgt.max_level) + 1):
        keys = src.keys(l)
        idx = B.rep(l).index if B.dim(l) else {}
        cols = []
        for w, b in keys:
            sizes = block_sizes(w)
            images = [list(f[s].columns[i].items()) for s, i in zip(sizes, b)]
            col = {}
            for combo in cartesian(*images):
                c = ring.one
                for _, x in combo:
                    c = c * x
                key = (w, tuple(i for i, _ in combo))
                j = idx[key]
                t = ring.reduce(col.get(j, 0) + c)
                if t:
                    col[j] = t
                else:
                    col.pop(j, None)
            cols.append(col)
        mats[l] = Matrix(ring, B.dim(l), A.dim(l), cols)
    return SymMap(A.seq, B.seq, mats)


def structure_map(fc, B):
    """``ε_B: C̄(UB) -> B``; ``fc`` is the :class:`FreeComm` on ``B.seq``."""
    ring = B.ring
    A = fc.materialize()
    mats = {}
    for l in range(min(fc.max_level, B.max_level) + 1):
        cols = []
        for w, b in fc.keys(l):
            if not w:
                cols.append(dict(B.unit) if B.unit else {})
                continue
            sizes = block_sizes(w)
            v = {b[0]: ring.one}
            lev = sizes[0]
            for s, i in zip(sizes[1:], b[1:]):
                v = B.product(lev, s, v, {i: ring.one})
                lev += s
            sigma = P.word_to_shuffle(w)
            cols.append(B.act(l, sigma, v))
        mats[l] = Matrix(ring, B.dim(l), A.dim(l), cols)
    return SymMap(A.seq, B.seq, mats)


def unit_map(fc):
    """``η: V -> C̄(V)``, the weight-one inclusion."""
    A = fc.materialize()
    mats = {}
    for l in range(fc.max_level + 1):
        idx = A.rep(l).index if A.dim(l) else {}
        cols = [{idx[((0,) * l, (i,))]: fc.ring.one} for i in range(fc.V.dim(l))]
        mats[l] = Matrix(fc.ring, A.dim(l), fc.V.dim(l), cols)
    return SymMap(fc.V, A.seq, mats)


def weight_one_projection(fc):
    """``C̄(V) -> V`` keeping the weight-one part (indecomposables of a free algebra)."""
    A = fc.materialize()
    mats = {}
    for l in range(fc.max_level + 1):
        cols = []
        for w, b in fc.keys(l):
            cols.append({b[0]: fc.ring.one} if len(b) == 1 else {})
        mats[l] = Matrix(fc.ring, fc.V.dim(l), A.dim(l), cols)
    return SymMap(A.seq, fc.V, mats)


def flatten(outer, inner):
    """``C̄(C̄(V)) -> C̄(V)``: merge nested words and renormalize.

    ``inner`` is the :class:`FreeComm` on ``V``; ``outer`` the one on the
    materialized ``inner``.
    """
    ring = inner.ring
    A = outer.materialize()
    B = inner.materialize()
    mats = {}
    for l in range(min(outer.max_level, inner.max_level) + 1):
        idx = B.rep(l).index if B.dim(l) else {}
        cols = []
        for W, c in outer.keys(l):
            sizes = block_sizes(W)
            new_w = [0] * l
            bb = []
            degs = []
            offset = 0
            for blk, (s, ci) in enumerate(zip(sizes, c)):
                wi, bi = inner.keys(s)[ci]
                pos = [k for k in range(l) if W[k] == blk]
                for k, x in zip(pos, wi):
                    new_w[k] = x + offset
                offset += len(bi)
                bb.extend(bi)
                degs.extend(inner.factor_degrees(wi, bi))
            sgn, w2, b2 = normalize(new_w, bb, degs)
            cols.append({idx[(w2, b2)]: ring(sgn)})
        mats[l] = Matrix(ring, B.dim(l), A.dim(l), cols)
    return SymMap(A.seq, B.seq, mats)


# ---------------------------------------------------------------------------
# free associative algebra


def free_assoc(M, max_level=None):
    """``T(M) = ⊕_i M^{⊙i}`` with concatenation, truncated (pointed)."""
    if not M.is_reduced():
        raise ValidationError("free associative algebra needs a reduced generating sequence")
    ring = M.ring
    L = M.max_level if max_level is None else max_level
    powers = [ProductSeq([M] * i, L) for i in range(1, L + 1)]
    levels = {}
    keys_by_level = {0: [((), (), ())]}
    for l in range(1, L + 1):
        reps = [pw.rep(l) for pw in powers if pw.rep(l).dim]
        keys = [k for r in reps for k in r.keys]
        keys_by_level[l] = keys
    from ..symseq.rep import direct_sum, trivial_rep
    for l in range(L + 1):
        if l == 0:
            levels[0] = trivial_rep(ring, 0)
            levels[0].keys = keys_by_level[0]
            continue
        reps = [pw.rep(l) for pw in powers if pw.rep(l).dim]
        if not reps:
            continue
        r = direct_sum(reps)
        levels[l] = Rep(ring, l, r.degrees, r.gens, r.diff, keys_by_level[l])
    seq = SymSeq(ring, L, levels)
    mult = {}
    for p in range(L + 1):
        for q in range(L + 1 - p):
            if not (seq.dim(p) and seq.dim(q)):
                continue
            idx = seq.rep(p + q).index
            cols = []
            for c1, w1, b1 in seq.rep(p).keys:
                for c2, w2, b2 in seq.rep(q).keys:
                    n1 = len(c1)
                    key = (c1 + c2, w1 + tuple(x + n1 for x in w2), b1 + b2)
                    cols.append({idx[key]: ring.one})
            mult[(p, q)] = Matrix(ring, seq.dim(p + q), seq.dim(p) * seq.dim(q), cols)
    from .algebra import ShuffleAlgebra as SA
    alg = SA(seq, mult, {0: ring.one}, name="T(M)")
    return alg
