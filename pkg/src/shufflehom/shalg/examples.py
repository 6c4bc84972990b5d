"""Shuffle algebras built from ordinary algebras and from other shuffle algebras."""

from __future__ import annotations

from itertools import product as cartesian

from ..exactlin import Matrix, Quotient, Subspace, axpy
from ..symseq import perm as P
from ..symseq.odot import ProductSeq
from ..symseq.rep import Rep, SymSeq, ValidationError, sign_rep, trivial_rep
from .algebra import AlgebraMap, ShuffleAlgebra, adjoin_unit, aug_ideal


class OrdinaryAlgebra:
    """A finite-dimensional graded algebra given by structure constants.

    ``table[(i, j)]`` is the sparse vector ``e_i · e_j``; missing entries are
    zero.  ``degrees[i]`` is the degree of ``e_i``.
    """

    def __init__(self, ring, degrees, unit, table, augmentation=None, names=None):
        self.ring = ring
        self.degrees = list(degrees)
        self.unit = {i: ring(c) for i, c in unit.items()}
        self.table = {k: {i: ring(c) for i, c in v.items() if ring(c)} for k, v in table.items()}
        self.augmentation = augmentation
        self.names = names

    @property
    def dim(self):
        return len(self.degrees)

    def mul(self, u, v):
        out = {}
        for i, x in u.items():
            for j, y in v.items():
                t = self.table.get((i, j))
                if t:
                    axpy(self.ring, out, t, x * y)
        return out

    def check(self, graded_commutative=True, commutative=False):
        failures = []
        n = self.dim
        e = [{i: self.ring.one} for i in range(n)]
        for i in range(n):
            if self.mul(self.unit, e[i]) != e[i] or self.mul(e[i], self.unit) != e[i]:
                failures.append(f"unit law fails on e_{i}")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul(self.mul(e[i], e[j]), e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                        failures.append(f"associativity fails on (e_{i}, e_{j}, e_{k})")
        for i in range(n):
            for j in range(n):
                s = -1 if graded_commutative and self.degrees[i] % 2 and self.degrees[j] % 2 else 1
                a = self.mul(e[i], e[j])
                b = {k: self.ring.reduce(s * c) for k, c in self.mul(e[j], e[i]).items()}
                b = {k: c for k, c in b.items() if c}
                if (graded_commutative or commutative) and a != b:
                    failures.append(f"(graded) commutativity fails on (e_{i}, e_{j})")
                for k in a:
                    if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                        failures.append(f"product e_{i} e_{j} is not homogeneous")
        return failures

    def validate(self, **kw):
        f = self.check(**kw)
        if f:
            raise ValidationError("; ".join(f))
        return True


def exterior_algebra(ring, ngens, degree=1):
    """Λ(x_1..x_n) with generators in odd ``degree``; basis = subsets."""
    subsets = sorted((s for r in range(ngens + 1) for s in _subsets(ngens, r)), key=lambda s: (len(s), s))
    idx = {s: i for i, s in enumerate(subsets)}
    table = {}
    for a in subsets:
        for b in subsets:
            if set(a) & set(b):
                continue
            merged = a + b
            inv = sum(1 for i in range(len(merged)) for j in range(i + 1, len(merged)) if merged[i] > merged[j])
            table[(idx[a], idx[b])] = {idx[tuple(sorted(merged))]: (-1) ** inv}
    return OrdinaryAlgebra(ring, [degree * len(s) for s in subsets], {0: 1}, table,
                           augmentation={0: 1}, names=subsets)


def _subsets(n, r):
    from itertools import combinations
    return list(combinations(range(n), r))


def truncated_polynomial(ring, top, degree=1):
    """``k[t]/(t^{top+1})`` with ``|t| = degree``; basis ``1, t, ..., t^top``."""
    table = {(i, j): {i + j: 1} for i in range(top + 1) for j in range(top + 1) if i + j <= top}
    return OrdinaryAlgebra(ring, [degree * i for i in range(top + 1)], {0: 1}, table,
                           augmentation={0: 1})


# ---------------------------------------------------------------------------
# Sym(V)


def sym_of_module(ring, dim, max_level):
    """``Sym(V)(ℓ) = V^{⊗ℓ}`` with place permutations and concatenation."""
    levels = {}
    keys_by_level = {}
    for l in range(max_level + 1):
        keys = list(cartesian(range(dim), repeat=l))
        idx = {k: i for i, k in enumerate(keys)}
        keys_by_level[l] = keys
        gens = []
        for k in range(1, l):
            cols = []
            for t in keys:
                t2 = list(t)
                t2[k - 1], t2[k] = t2[k], t2[k - 1]
                cols.append({idx[tuple(t2)]: ring.one})
            gens.append(Matrix(ring, len(keys), len(keys), cols))
        if keys:
            levels[l] = Rep(ring, l, [0] * len(keys), gens, keys=keys)
    seq = SymSeq(ring, max_level, levels)
    mult = {}
    for p in range(max_level + 1):
        for q in range(max_level + 1 - p):
            idx = seq.rep(p + q).index
            cols = [{idx[a + b]: ring.one} for a in keys_by_level[p] for b in keys_by_level[q]]
            if cols:
                mult[(p, q)] = Matrix(ring, seq.dim(p + q), len(cols), cols)
    return ShuffleAlgebra(seq, mult, {0: ring.one}, name=f"Sym(k^{dim})")


# ---------------------------------------------------------------------------
# A± and grᴱ


def sign_sequence(alg, max_level, action="sign"):
    """``A±(ℓ) = A_ℓ`` with the sign action (or the trivial one) and A's product.

    The degree of ``alg`` becomes the level; the result is ungraded.
    """
    ring = alg.ring
    by_deg = {}
    for i, g in enumerate(alg.degrees):
        if g < 0:
            raise ValidationError("negative degrees are not allowed")
        by_deg.setdefault(g, []).append(i)
    pos = {}
    for g, lst in by_deg.items():
        for k, i in enumerate(lst):
            pos[i] = k
    levels = {}
    builder = sign_rep if action == "sign" else trivial_rep
    for l in range(max_level + 1):
        lst = by_deg.get(l, [])
        if not lst:
            continue
        base = builder(ring, l)
        gens = [Matrix(ring, len(lst), len(lst), [{k: g.columns[0][0]} for k in range(len(lst))]) for g in base.gens]
        levels[l] = Rep(ring, l, [0] * len(lst), gens, keys=list(lst))
    seq = SymSeq(ring, max_level, levels)
    mult = {}
    for p in range(max_level + 1):
        for q in range(max_level + 1 - p):
            if not (seq.dim(p) and seq.dim(q) and seq.dim(p + q)):
                continue
            cols = []
            for i in by_deg[p]:
                for j in by_deg[q]:
                    prod = alg.mul({i: ring.one}, {j: ring.one})
                    cols.append({pos[k]: c for k, c in prod.items()})
            mult[(p, q)] = Matrix(ring, seq.dim(p + q), len(cols), cols)
    unit = None
    if 0 in by_deg:
        unit = {pos[i]: c for i, c in alg.unit.items()}
    return ShuffleAlgebra(seq, mult, unit, name=f"A{'±' if action == 'sign' else '(trivial)'}")


class GradedPieces:
    """Powers ``I^ℓ`` of the augmentation ideal and the pieces ``I^ℓ / I^{ℓ+1}``."""

    def __init__(self, alg, max_level):
        ring = alg.ring
        if alg.augmentation is None:
            raise ValidationError("augmentation required")
        eps = alg.augmentation
        n = alg.dim
        if sum(ring(eps.get(i, 0)) * c for i, c in alg.unit.items()) != 1:
            raise ValidationError("augmentation does not send the unit to 1")
        # I = ker ε
        row = Matrix(ring, 1, n, [{0: ring(eps[i])} if ring(eps.get(i, 0)) else {} for i in range(n)])
        from ..exactlin import kernel_basis
        ideal = kernel_basis(row).columns
        for x in ideal:
            for y in ideal:
                if sum(ring(eps.get(i, 0)) * c for i, c in alg.mul(x, y).items()):
                    raise ValidationError("augmentation is not multiplicative")
        self.alg = alg
        self.ring = ring
        powers = [Subspace(ring, n, [alg.unit] + list(ideal))]  # I^0 = A
        current = ideal
        powers.append(Subspace(ring, n, current))
        for _ in range(max_level):
            nxt = [alg.mul(x, y) for x in powers[-1].basis for y in ideal]
            powers.append(Subspace(ring, n, [v for v in nxt if v]))
        self.powers = powers
        self.pieces = []
        for l in range(max_level + 1):
            S = powers[l]
            rels = [S.coordinates(v) for v in powers[l + 1].basis]
            self.pieces.append(Quotient(ring, S.dim, rels))

    def lift(self, l, k):
        """Vector in A representing basis element ``k`` of ``I^l/I^{l+1}``."""
        S = self.powers[l]
        coords = self.pieces[l].lift(k)
        out = {}
        for i, c in coords.items():
            axpy(self.ring, out, S.basis[i], c)
        return out

    def project(self, l, v):
        S = self.powers[l]
        return self.pieces[l].project(S.coordinates(v))

    def dim(self, l):
        return self.pieces[l].dim


def gr_sigma(alg, max_level, action="trivial"):
    """``grᴱ(A)(ℓ) = I^ℓ / I^{ℓ+1}`` with the chosen Σ_ℓ-action.

    The pieces keep the internal degree of ``A``, so the Koszul sign is
    already part of the twist; the trivial action is the commutative one
    for graded inputs as well.
    """
    if action not in ("trivial", "sign"):
        raise ValidationError(f"unknown action {action!r}")
    gp = GradedPieces(alg, max_level)
    ring = alg.ring
    builder = sign_rep if action == "sign" else trivial_rep
    levels = {}
    for l in range(max_level + 1):
        d = gp.dim(l)
        if not d:
            continue
        base = builder(ring, l)
        gens = [Matrix(ring, d, d, [{k: g.columns[0][0]} for k in range(d)]) for g in base.gens]
        degs = []
        for k in range(d):
            v = gp.lift(l, k)
            ds = {alg.degrees[i] for i in v}
            if len(ds) != 1:
                raise ValidationError("graded pieces are not homogeneous")
            degs.append(ds.pop())
        levels[l] = Rep(ring, l, degs, gens)
    seq = SymSeq(ring, max_level, levels)
    mult = {}
    for p in range(max_level + 1):
        for q in range(max_level + 1 - p):
            if not (seq.dim(p) and seq.dim(q) and seq.dim(p + q)):
                continue
            cols = []
            for a in range(gp.dim(p)):
                for b in range(gp.dim(q)):
                    prod = alg.mul(gp.lift(p, a), gp.lift(q, b))
                    cols.append(gp.project(p + q, prod) if prod else {})
            mult[(p, q)] = Matrix(ring, seq.dim(p + q), len(cols), cols)
    unit = {0: ring.one} if seq.dim(0) else None
    out = ShuffleAlgebra(seq, mult, unit, name=f"gr({action})")
    out.pieces = gp
    return out


def gr_functor(f, src_alg, tgt_alg, max_level, action="trivial"):
    """Shuffle algebra map ``grᴱ(f)`` for an augmentation-preserving algebra map ``f``.

    ``f`` is a Matrix ``src_alg -> tgt_alg``.
    """
    A = gr_sigma(src_alg, max_level, action)
    B = gr_sigma(tgt_alg, max_level, action)
    mats = {}
    for l in range(max_level + 1):
        cols = []
        for k in range(A.dim(l)):
            v = f.apply(A.pieces.lift(l, k))
            cols.append(B.pieces.project(l, v) if B.dim(l) else {})
        mats[l] = Matrix(A.ring, B.dim(l), A.dim(l), cols)
    return AlgebraMap(A, B, mats)


# ---------------------------------------------------------------------------
# ⋄ sum


def diamond(B1, B2):
    """``B1 ⋄ B2``: the augmentation ideal of ``B1₊ ⊙ B2₊``.

    Basis keys ``((p, q), w, (i, j))`` as in the ⊙ product, level 0 removed.
    """
    if not (B1.is_reduced and B2.is_reduced):
        raise ValidationError("⋄ needs reduced algebras")
    ring = B1.ring
    L = min(B1.max_level, B2.max_level)
    P1, P2 = adjoin_unit(B1), adjoin_unit(B2)
    prod = ProductSeq([P1.seq, P2.seq], L)
    levels = {l: prod.rep(l) for l in range(1, L + 1) if prod.rep(l).dim}
    seq = SymSeq(ring, L, levels)
    mult = {}
    for l1 in range(1, L + 1):
        for l2 in range(1, L + 1 - l1):
            r1, r2 = seq.rep(l1), seq.rep(l2)
            if not (r1.dim and r2.dim):
                continue
            tgt = seq.rep(l1 + l2)
            cols = []
            for (p1, q1), w1, (a1, b1) in r1.keys:
                for (p2, q2), w2, (a2, b2) in r2.keys:
                    sgn = -1 if P2.degree(q1, b1) % 2 and P1.degree(p2, a2) % 2 else 1
                    a = P1.product(p1, p2, {a1: ring.one}, {a2: ring.one})
                    b = P2.product(q1, q2, {b1: ring.one}, {b2: ring.one})
                    w = w1 + w2
                    col = {}
                    for i, x in a.items():
                        for j, y in b.items():
                            key = ((p1 + p2, q1 + q2), w, (i, j))
                            col[tgt.index[key]] = ring.reduce(sgn * x * y)
                    cols.append({k: v for k, v in col.items() if v})
            mult[(l1, l2)] = Matrix(ring, tgt.dim, r1.dim * r2.dim, cols)
    return ShuffleAlgebra(seq, mult, None, name=f"{B1.name}⋄{B2.name}")


def diamond_inclusions(B1, B2, D=None):
    """The two algebra maps ``B1 -> B1⋄B2`` and ``B2 -> B1⋄B2``."""
    D = D or diamond(B1, B2)
    ring = B1.ring
    m1, m2 = {}, {}
    for l in range(D.max_level + 1):
        idx = D.rep(l).index if D.dim(l) else {}
        w = (0,) * l
        m1[l] = Matrix(ring, D.dim(l), B1.dim(l), [{idx[((l, 0), w, (i, 0))]: ring.one} for i in range(B1.dim(l))])
        w = (1,) * l
        m2[l] = Matrix(ring, D.dim(l), B2.dim(l), [{idx[((0, l), w, (0, i))]: ring.one} for i in range(B2.dim(l))])
    return AlgebraMap(B1, D, m1), AlgebraMap(B2, D, m2)


def diamond_induced(f1, f2, D=None):
    """The map ``B1⋄B2 -> C`` induced by algebra maps ``f1: B1 -> C`` and ``f2: B2 -> C``."""
    B1, B2, C = f1.source, f2.source, f1.target
    D = D or diamond(B1, B2)
    ring = C.ring
    mats = {}
    for l in range(D.max_level + 1):
        cols = []
        for (p, q), w, (i, j) in D.rep(l).keys if D.dim(l) else []:
            if q == 0:
                cols.append(f1.apply(p, {i: ring.one}))
            elif p == 0:
                cols.append(f2.apply(q, {j: ring.one}))
            else:
                x = f1.apply(p, {i: ring.one})
                y = f2.apply(q, {j: ring.one})
                sigma = P.word_to_shuffle(w, 2)
                cols.append(C.multiply(sigma, p, q, x, y))
        mats[l] = Matrix(ring, C.dim(l), D.dim(l), cols)
    return AlgebraMap(D, C, mats)


__all__ = [
    "OrdinaryAlgebra", "diamond", "diamond_induced", "diamond_inclusions", "exterior_algebra",
    "gr_functor", "gr_sigma", "sign_sequence", "sym_of_module", "truncated_polynomial",
    "aug_ideal", "adjoin_unit",
]
