"""Simplicial symmetric sequences and the levelwise Dold–Kan correspondence.

A simplicial object is stored truncated at simplicial degree ``D``: for
every level ℓ and every ``n ≤ D`` a representation of Σ_ℓ, together with
faces ``d_i: X_n -> X_{n-1}`` and degeneracies ``s_j: X_n -> X_{n+1}``
(the latter only for ``n < D``).

Conventions: the Moore complex is ``N_n = ∩_{i≥1} ker d_i`` with
differential ``d_0``.  ``Γ(C)_n = ⊕_{[n] ↠ [m]} C_m`` indexed by
surjections, which we encode as non-decreasing surjective tuples
``(θ(0), ..., θ(n))`` with ``θ(0) = 0``.
"""

from __future__ import annotations

import random
from itertools import combinations

from .exactlin import ChainComplex, Matrix, Subspace, block_diag, homology_dims, kernel_basis, kron
from .symseq import perm as P
from .symseq.odot import ProductSeq
from .symseq.rep import Rep, SymMap, SymSeq, ValidationError, identity_map, random_chain_rep


# ---------------------------------------------------------------------------
# Moore complexes of simplicial chain objects (one level)


def _stack(ring, mats, ncols):
    rows = sum(m.nrows for m in mats)
    cols = [{} for _ in range(ncols)]
    off = 0
    for m in mats:
        for j, col in enumerate(m.columns):
            for i, c in col.items():
                cols[j][off + i] = c
        off += m.nrows
    return Matrix(ring, rows, ncols, cols)


def moore_bases(ring, degrees, faces, t_max):
    """Homogeneous bases of ``N_t = ∩_{i≥1} ker d_i`` for ``t ≤ t_max``.

    ``degrees[t]`` lists internal degrees of the basis of ``X_t`` and
    ``faces[(t, i)]`` is the matrix of ``d_i``.
    """
    out = []
    for t in range(t_max + 1):
        n = len(degrees[t])
        if t == 0 or n == 0:
            out.append([{j: ring.one} for j in range(n)])
            continue
        by_deg = {}
        for j, g in enumerate(degrees[t]):
            by_deg.setdefault(g, []).append(j)
        basis = []
        for g in sorted(by_deg):
            cols = by_deg[g]
            sub = [faces[(t, i)].select_columns(cols) for i in range(1, t + 1)]
            K = kernel_basis(_stack(ring, sub, len(cols)))
            for v in K.columns:
                basis.append({cols[k]: c for k, c in v.items()})
        out.append(basis)
    return out


def moore_total_complex(ring, degrees, faces, dint, t_max, shift=0):
    """Total complex of the Moore complex of a simplicial chain object.

    ``dint[t]`` is the internal differential of ``X_t`` (or ``None``).  A
    vector of ``N_t`` in internal degree ``g`` sits in total degree
    ``t + g + shift``; the differential is ``d_0 + (-1)^t d_int``.
    Returns ``(ChainComplex, bases)``.
    """
    bases = moore_bases(ring, degrees, faces, t_max)
    subs = [Subspace(ring, len(degrees[t]), bases[t]) for t in range(t_max + 1)]
    offs = [0]
    for b in bases:
        offs.append(offs[-1] + len(b))
    total = offs[-1]
    tot_deg = []
    cols = []
    for t in range(t_max + 1):
        for v in bases[t]:
            g = degrees[t][next(iter(v))] if v else 0
            tot_deg.append(t + g + shift)
            col = {}
            if t > 0:
                img = faces[(t, 0)].apply(v)
                if img:
                    for k, c in subs[t - 1].coordinates(img).items():
                        col[offs[t - 1] + k] = c
            if dint[t] is not None:
                img = dint[t].apply(v)
                if img:
                    sgn = -1 if t % 2 else 1
                    for k, c in subs[t].coordinates(img).items():
                        col[offs[t] + k] = ring.reduce(col.get(offs[t] + k, 0) + sgn * c)
            cols.append({k: c for k, c in col.items() if c})
    diff = Matrix(ring, total, total, cols)
    return ChainComplex.from_graded(ring, tot_deg, diff), bases


def alternating_total_complex(ring, degrees, faces, dint, t_max, shift=0):
    """Unnormalized version: ``Σ (-1)^i d_i + (-1)^t d_int`` on all of ``X_t``."""
    offs = [0]
    for d in degrees[:t_max + 1]:
        offs.append(offs[-1] + len(d))
    total = offs[-1]
    tot_deg = []
    cols = []
    for t in range(t_max + 1):
        for j in range(len(degrees[t])):
            tot_deg.append(t + degrees[t][j] + shift)
            col = {}
            for i in range(t + 1 if t > 0 else 0):
                s = -1 if i % 2 else 1
                for k, c in faces[(t, i)].columns[j].items():
                    col[offs[t - 1] + k] = ring.reduce(col.get(offs[t - 1] + k, 0) + s * c)
            if dint[t] is not None:
                s = -1 if t % 2 else 1
                for k, c in dint[t].columns[j].items():
                    col[offs[t] + k] = ring.reduce(col.get(offs[t] + k, 0) + s * c)
            cols.append({k: c for k, c in col.items() if c})
    return ChainComplex.from_graded(ring, tot_deg, Matrix(ring, total, total, cols))


# ---------------------------------------------------------------------------
# simplicial symmetric sequences


def surjections(n, m):
    """Monotone surjections ``[n] ↠ [m]`` as tuples ``(θ(0), ..., θ(n))``."""
    out = []
    for steps in combinations(range(n), m):
        t, cur = [0], 0
        for k in range(n):
            if k in steps:
                cur += 1
            t.append(cur)
        out.append(tuple(t))
    return out


def _face_tuple(theta, i):
    return theta[:i] + theta[i + 1:]


def _degen_tuple(theta, j):
    return theta[:j + 1] + theta[j:]


def _epi_mono(phi, m):
    """Split a monotone ``φ: [n'] -> [m]`` as ``δ∘η``; returns ``(η, kind)``.

    ``kind`` is ``"id"`` if ``δ`` is the identity, ``"d0"`` if ``δ`` misses
    only 0, and ``None`` otherwise.
    """
    image = sorted(set(phi))
    if image == list(range(m + 1)):
        return phi, "id"
    if image == list(range(1, m + 1)):
        return tuple(x - 1 for x in phi), "d0"
    return None, None


class SimplicialSymSeq:
    """Simplicial symmetric sequence truncated at simplicial degree ``D``.

    ``objects[n]`` is a :class:`SymSeq` (ungraded); ``faces[(n, i)]`` and
    ``degeneracies[(n, j)]`` are :class:`SymMap` objects out of degree ``n``.
    """

    def __init__(self, ring, max_level, D, objects, faces, degeneracies, name=None):
        self.ring = ring
        self.max_level = max_level
        self.D = D
        self.objects = list(objects)
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies)
        self.name = name
        if len(self.objects) != D + 1:
            raise ValidationError("need one object per simplicial degree 0..D")

    def dim(self, n, level):
        return self.objects[n].dim(level)

    def dims(self, level):
        return [X.dim(level) for X in self.objects]

    def check_identities(self):
        d, s = self.faces, self.degeneracies
        bad = []
        for l in range(self.max_level + 1):
            def eq(f, g, name):
                if not (f == g):
                    bad.append((name, l))

            for n in range(2, self.D + 1):
                for j in range(1, n + 1):
                    for i in range(j):
                        eq(d[(n - 1, i)][l] @ d[(n, j)][l], d[(n - 1, j - 1)][l] @ d[(n, i)][l], f"d{i}d{j} n={n}")
            for n in range(self.D):
                for j in range(n + 1):
                    for i in range(n + 2):
                        lhs = d[(n + 1, i)][l] @ s[(n, j)][l]
                        if i < j:
                            eq(lhs, s[(n - 1, j - 1)][l] @ d[(n, i)][l], f"d{i}s{j} n={n}")
                        elif i in (j, j + 1):
                            if not lhs.is_identity():
                                bad.append((f"d{i}s{j}=id n={n}", l))
                        else:
                            eq(lhs, s[(n - 1, j)][l] @ d[(n, i - 1)][l], f"d{i}s{j} n={n}")
            for n in range(self.D - 1):
                for j in range(n + 1):
                    for i in range(j + 1):
                        eq(s[(n + 1, i)][l] @ s[(n, j)][l], s[(n + 1, j + 1)][l] @ s[(n, i)][l], f"s{i}s{j} n={n}")
        return bad

    def check_equivariance(self):
        maps = list(self.faces.values()) + list(self.degeneracies.values())
        return all(m.is_equivariant() for m in maps)

    def validate(self):
        for X in self.objects:
            X.validate()
        bad = self.check_identities()
        if bad:
            raise ValidationError(f"simplicial identity fails: {bad[0]}")
        if not self.check_equivariance():
            raise ValidationError("a structure map is not equivariant")
        return self


def constant(seq, D):
    """The constant simplicial object on ``seq``."""
    ident = identity_map(seq)
    faces = {(n, i): ident for n in range(1, D + 1) for i in range(n + 1)}
    degs = {(n, j): ident for n in range(D) for j in range(n + 1)}
    return SimplicialSymSeq(seq.ring, seq.max_level, D, [seq] * (D + 1), faces, degs, name="const")


# ---------------------------------------------------------------------------
# Γ and N


def _gamma_level(rep, D):
    """Per simplicial degree: keys, and index of ``Γ(C)_n`` for one level."""
    ring = rep.ring
    by_deg = {}
    for i, g in enumerate(rep.degrees):
        if g < 0:
            raise ValidationError("Γ needs non-negatively graded input")
        by_deg.setdefault(g, []).append(i)
    keys = []
    for n in range(D + 1):
        ks = []
        for m in range(n + 1):
            for theta in surjections(n, m):
                for i in by_deg.get(m, []):
                    ks.append((theta, i))
        keys.append(ks)
    return keys


def gamma_functor(C, D):
    """``Γ(C)`` for a non-negatively graded chain symmetric sequence, truncated at ``D``."""
    ring = C.ring
    L = C.max_level
    keys = {l: _gamma_level(C.rep(l), D) for l in range(L + 1) if C.dim(l)}
    objects = []
    for n in range(D + 1):
        levels = {}
        for l, ks in keys.items():
            rep = C.rep(l)
            idx = {k: a for a, k in enumerate(ks[n])}
            gens = []
            for g in rep.gens:
                cols = [{idx[(theta, j)]: c for j, c in g.columns[i].items()} for theta, i in ks[n]]
                gens.append(Matrix(ring, len(ks[n]), len(ks[n]), cols))
            levels[l] = Rep(ring, l, [0] * len(ks[n]), gens, None, ks[n])
        objects.append(SymSeq(ring, L, levels))

    def op_map(n_src, n_tgt, transform):
        mats = {}
        for l, ks in keys.items():
            rep = C.rep(l)
            d = rep.dmatrix()
            idx = {k: a for a, k in enumerate(ks[n_tgt])}
            cols = []
            for theta, i in ks[n_src]:
                m = theta[-1]
                eta, kind = _epi_mono(transform(theta), m)
                if kind == "id":
                    cols.append({idx[(eta, i)]: ring.one})
                elif kind == "d0":
                    cols.append({idx[(eta, j)]: c for j, c in d.columns[i].items()})
                else:
                    cols.append({})
            mats[l] = Matrix(ring, len(ks[n_tgt]), len(ks[n_src]), cols)
        return SymMap(objects[n_src], objects[n_tgt], mats)

    faces = {}
    for n in range(1, D + 1):
        for i in range(n + 1):
            faces[(n, i)] = op_map(n, n - 1, lambda th, i=i: _face_tuple(th, i))
    degs = {}
    for n in range(D):
        for j in range(n + 1):
            degs[(n, j)] = op_map(n, n + 1, lambda th, j=j: _degen_tuple(th, j))
    out = SimplicialSymSeq(ring, L, D, objects, faces, degs, name="Γ")
    out.source = C
    return out


class Normalized:
    """Moore complex of a :class:`SimplicialSymSeq` with its bases in ``X_n``."""

    def __init__(self, X):
        self.X = X
        ring = X.ring
        self.bases = {}
        self.subspaces = {}
        levels = {}
        for l in range(X.max_level + 1):
            dims = X.dims(l)
            if not any(dims):
                continue
            bases = []
            for n in range(X.D + 1):
                if n == 0 or not dims[n]:
                    bases.append([{j: ring.one} for j in range(dims[n])])
                    continue
                stacked = _stack(ring, [X.faces[(n, i)][l] for i in range(1, n + 1)], dims[n])
                bases.append([dict(v) for v in kernel_basis(stacked).columns])
            subs = [Subspace(ring, dims[n], bases[n]) for n in range(X.D + 1)]
            self.bases[l] = bases
            self.subspaces[l] = subs
            offs = [0]
            for b in bases:
                offs.append(offs[-1] + len(b))
            total = offs[-1]
            if not total:
                continue
            degrees = [n for n in range(X.D + 1) for _ in bases[n]]
            gens = []
            for k in range(max(l - 1, 0)):
                blocks = [subs[n].restrict(X.objects[n].rep(l).gens[k], subs[n]) if dims[n] else Matrix.zeros(ring, 0, 0)
                          for n in range(X.D + 1)]
                gens.append(block_diag(ring, blocks))
            cols = []
            for n in range(X.D + 1):
                for v in bases[n]:
                    col = {}
                    if n > 0:
                        img = X.faces[(n, 0)][l].apply(v)
                        if img:
                            col = {offs[n - 1] + a: c for a, c in subs[n - 1].coordinates(img).items()}
                    cols.append(col)
            levels[l] = Rep(ring, l, degrees, gens, Matrix(ring, total, total, cols))
            levels[l].offsets = offs
        self.seq = SymSeq(ring, X.max_level, levels)

    def vector(self, l, n, a):
        """The ``a``-th basis vector of ``N_n(l)`` inside ``X_n(l)``."""
        return self.bases[l][n][a]


def normalize(X):
    """Moore complex ``N(X)`` as a chain :class:`SymSeq` (``N_n = ∩_{i≥1} ker d_i``, ``d = d_0``)."""
    return Normalized(X).seq


def _iso_report(mats):
    from .exactlin import rank
    return all(m.nrows == m.ncols and rank(m) == m.nrows for m in mats)


def check_n_gamma(C, D):
    """``N Γ C ≅ C`` in degrees ``≤ D`` via ``x ↦ (id, x)``; returns a list of failures."""
    G = gamma_functor(C, D)
    N = Normalized(G)
    bad = []
    for l in range(C.max_level + 1):
        if not C.dim(l):
            continue
        rep = C.rep(l)
        keep = [i for i, g in enumerate(rep.degrees) if g <= D]
        nrep = N.seq.rep(l)
        offs = nrep.offsets
        cols = []
        for i in keep:
            m = rep.degrees[i]
            idx = G.objects[m].rep(l).index
            v = {idx[(tuple(range(m + 1)), i)]: C.ring.one}
            if not N.subspaces[l][m].contains(v):
                bad.append(("not normalized", l, i))
                continue
            cols.append({offs[m] + a: c for a, c in N.subspaces[l][m].coordinates(v).items()})
        if bad:
            return bad
        u = Matrix(C.ring, nrep.dim, len(keep), cols)
        if not _iso_report([u]):
            bad.append(("not an isomorphism", l))
            continue
        sub = lambda m_: m_.select_columns(keep).select_rows(keep)
        if not (u @ sub(rep.dmatrix()) == nrep.dmatrix() @ u):
            bad.append(("not a chain map", l))
        for g, ng in zip(rep.gens, nrep.gens):
            if not (u @ sub(g) == ng @ u):
                bad.append(("not equivariant", l))
                break
    return bad


def _apply_surjection(X, l, theta, v):
    """``θ^*(v)`` for ``v ∈ X_m(l)``, ``θ: [n] ↠ [m]``."""
    for j in range(len(theta) - 1):
        if theta[j] == theta[j + 1]:
            inner = theta[:j + 1] + theta[j + 2:]
            w = _apply_surjection(X, l, inner, v)
            return X.degeneracies[(len(inner) - 1, j)][l].apply(w)
    return v


def check_gamma_n(X):
    """``Γ N X ≅ X`` via ``(θ, y) ↦ θ^*(y)``: iso and compatible with all structure maps."""
    N = Normalized(X)
    G = gamma_functor(N.seq, X.D)
    ring = X.ring
    bad = []
    phis = {}
    for l in range(X.max_level + 1):
        if not any(X.dims(l)):
            continue
        offs = N.seq.rep(l).offsets if N.seq.dim(l) else [0] * (X.D + 2)
        for n in range(X.D + 1):
            cols = []
            for theta, a in (G.objects[n].rep(l).keys if G.objects[n].dim(l) else []):
                m = theta[-1]
                y = N.bases[l][m][a - offs[m]]
                cols.append(_apply_surjection(X, l, theta, y))
            phis[(l, n)] = Matrix(ring, X.dim(n, l), len(cols), cols)
            if not _iso_report([phis[(l, n)]]):
                bad.append(("not an isomorphism", l, n))
    if bad:
        return bad
    for l in range(X.max_level + 1):
        if (l, 0) not in phis:
            continue
        for (n, i), f in X.faces.items():
            if not (f[l] @ phis[(l, n)] == phis[(l, n - 1)] @ G.faces[(n, i)][l]):
                bad.append((f"d{i}", l, n))
        for (n, j), f in X.degeneracies.items():
            if not (f[l] @ phis[(l, n)] == phis[(l, n + 1)] @ G.degeneracies[(n, j)][l]):
                bad.append((f"s{j}", l, n))
    return bad


# ---------------------------------------------------------------------------
# ⊙̂ and the shuffle map


def odot_maps(fs, src, tgt, level):
    """Matrix of ``f_0 ⊙ ... ⊙ f_{s-1}`` between :class:`ProductSeq` objects (ungraded maps)."""
    ring = src.ring
    rs, rt = src.rep(level), tgt.rep(level)
    cols = []
    for comp, w, b in rs.keys:
        images = [list(f[p].columns[i].items()) for f, p, i in zip(fs, comp, b)]
        col = {}
        for combo in _cartesian(images):
            c = ring.one
            for _, x in combo:
                c = c * x
            k = rt.index[(comp, w, tuple(i for i, _ in combo))]
            col[k] = ring.reduce(col.get(k, 0) + c)
        cols.append({k: c for k, c in col.items() if c})
    return Matrix(ring, rt.dim, rs.dim, cols)


def _cartesian(lists):
    from itertools import product
    return product(*lists)


def odot_hat(A, B, max_level=None):
    """Degreewise ``A_n ⊙ B_n`` with diagonal faces and degeneracies."""
    if A.ring != B.ring or A.D != B.D:
        raise ValidationError("⊙̂ needs equal rings and simplicial truncations")
    L = min(A.max_level, B.max_level) if max_level is None else max_level
    prods = [ProductSeq([A.objects[n], B.objects[n]], L) for n in range(A.D + 1)]
    objects = [p.to_symseq() for p in prods]

    def both(fa, fb, s, t):
        return SymMap(objects[s], objects[t], {l: odot_maps([fa, fb], prods[s], prods[t], l) for l in range(L + 1)})

    faces = {k: both(A.faces[k], B.faces[k], k[0], k[0] - 1) for k in A.faces}
    degs = {k: both(A.degeneracies[k], B.degeneracies[k], k[0], k[0] + 1) for k in A.degeneracies}
    out = SimplicialSymSeq(A.ring, L, A.D, objects, faces, degs, name="A⊙̂B")
    out.products = prods
    out.factors = (A, B)
    return out


def _shuffle_pairs(i, j):
    """``(μ, ν, sign)`` over ``(i, j)``-shuffles of ``{0, ..., i+j-1}``."""
    out = []
    for mu in combinations(range(i + j), i):
        nu = tuple(x for x in range(i + j) if x not in mu)
        perm = [x + 1 for x in mu + nu]
        out.append((mu, nu, P.sign(tuple(perm))))
    return out


def _degenerate(X, l, v, indices, start):
    n = start
    for k in indices:
        v = X.degeneracies[(n, k)][l].apply(v)
        n += 1
    return v


class ShuffleMap:
    """``s: N(A) ⊙ N(B) -> N(A ⊙̂ B)``, the Eilenberg–Zilber map followed by
    the projection onto the Moore complex along degenerate simplices."""

    def __init__(self, A, B, max_level=None):
        self.A, self.B = A, B
        self.AB = odot_hat(A, B, max_level)
        self.L = self.AB.max_level
        self.NA, self.NB = Normalized(A), Normalized(B)
        self.NAB = Normalized(self.AB)
        self.source = ProductSeq([self.NA.seq, self.NB.seq], self.L)
        self.D = A.D
        self._proj = {}
        self.mats = {l: self._level(l) for l in range(self.L + 1)}

    def _projector(self, l, n):
        key = (l, n)
        if key not in self._proj:
            X = self.AB
            ring = X.ring
            nb = self.NAB.bases[l][n] if l in self.NAB.bases else []
            vecs = list(nb)
            if n > 0:
                for j in range(n):
                    s = X.degeneracies[(n - 1, j)][l]
                    vecs.extend(c for c in s.columns if c)
            self._proj[key] = (Subspace(ring, X.dim(n, l), vecs), len(nb))
        return self._proj[key]

    def project(self, l, n, v):
        sub, k = self._projector(l, n)
        return {a: c for a, c in sub.coordinates(v).items() if a < k}

    def _level(self, l):
        ring = self.AB.ring
        src = self.source.rep(l)
        tgt = self.NAB.seq.rep(l) if self.NAB.seq.dim(l) else None
        if tgt is None or not src.dim:
            return Matrix(ring, tgt.dim if tgt else 0, src.dim)
        offs = tgt.offsets
        cols = []
        for (p, q), w, (x, y) in src.keys:
            i = self.NA.seq.rep(p).degrees[x]
            j = self.NB.seq.rep(q).degrees[y]
            n = i + j
            if n > self.D:
                cols.append({})
                continue
            ox = self.NA.seq.rep(p).offsets[i]
            oy = self.NB.seq.rep(q).offsets[j]
            xv = self.NA.bases[p][i][x - ox]
            yv = self.NB.bases[q][j][y - oy]
            prod = self.AB.products[n].rep(l)
            total = {}
            for mu, nu, sgn in _shuffle_pairs(i, j):
                a = _degenerate(self.A, p, xv, nu, i)
                b = _degenerate(self.B, q, yv, mu, j)
                for ka, ca in a.items():
                    for kb, cb in b.items():
                        k = prod.index[((p, q), w, (ka, kb))]
                        total[k] = ring.reduce(total.get(k, 0) + sgn * ca * cb)
            total = {k: c for k, c in total.items() if c}
            cols.append({offs[n] + a: c for a, c in self.project(l, n, total).items()})
        return Matrix(ring, tgt.dim, src.dim, cols)

    def __getitem__(self, l):
        return self.mats[l]

    def check_chain_map(self):
        bad = []
        for l, m in self.mats.items():
            if not self.source.rep(l).dim or not self.NAB.seq.dim(l):
                continue
            src = self.source.rep(l)
            tgt = self.NAB.seq.rep(l)
            # only compare in source degrees ≤ D, where the map is defined
            keep = [a for a, g in enumerate(src.degrees) if g <= self.D]
            lhs = (m @ src.dmatrix()).select_columns(keep)
            rhs = (tgt.dmatrix() @ m).select_columns(keep)
            if not (lhs == rhs):
                bad.append(l)
        return bad

    def check_equivariant(self):
        bad = []
        for l, m in self.mats.items():
            if not self.source.rep(l).dim or not self.NAB.seq.dim(l):
                continue
            for g1, g2 in zip(self.source.rep(l).gens, self.NAB.seq.rep(l).gens):
                if not (m @ g1 == g2 @ m):
                    bad.append(l)
                    break
        return bad


def ez_shuffle_map(A, B, max_level=None):
    return ShuffleMap(A, B, max_level)


def _twist_hat(AB, BA, level, n):
    """Degreewise twist ``(A ⊙̂ B)_n -> (B ⊙̂ A)_n`` (ungraded, no sign)."""
    ring = AB.ring
    src = AB.products[n].rep(level)
    tgt = BA.products[n].rep(level)
    cols = []
    for (p, q), w, (x, y) in src.keys:
        cols.append({tgt.index[((q, p), tuple(1 - a for a in w), (y, x))]: ring.one})
    return Matrix(ring, tgt.dim, src.dim, cols)


def check_symmetry_square(A, B, max_level=None):
    """``N(tw) ∘ s_{A,B} = s_{B,A} ∘ tw``; returns failing levels."""
    from .symseq.odot import twist
    sAB = ShuffleMap(A, B, max_level)
    sBA = ShuffleMap(B, A, max_level)
    tw = twist(sAB.NA.seq, sAB.NB.seq, sAB.L)
    bad = []
    for l in range(sAB.L + 1):
        if not sAB.source.rep(l).dim or not sAB.NAB.seq.dim(l):
            continue
        tgt = sAB.NAB.seq.rep(l)
        offs_s, offs_t = tgt.offsets, sBA.NAB.seq.rep(l).offsets
        cols = []
        for n in range(sAB.D + 1):
            for v in sAB.NAB.bases[l][n]:
                img = _twist_hat(sAB.AB, sBA.AB, l, n).apply(v)
                cols.append({offs_t[n] + a: c for a, c in sBA.NAB.subspaces[l][n].coordinates(img).items()})
        ntw = Matrix(A.ring, sBA.NAB.seq.dim(l), tgt.dim, cols)
        src = sAB.source.rep(l)
        keep = [a for a, g in enumerate(src.degrees) if g <= sAB.D]
        lhs = (ntw @ sAB[l]).select_columns(keep)
        rhs = (sBA[l] @ tw[l]).select_columns(keep)
        if not (lhs == rhs):
            bad.append(l)
    return bad


# ---------------------------------------------------------------------------
# Fʳ on simplicial objects, random objects, L_N on free inputs


def simplicial_from_complex(ring, degrees, diff, D):
    """``Γ`` of a plain complex, as a simplicial sequence concentrated in level 0."""
    rep = Rep(ring, 0, degrees, [], diff)
    return gamma_functor(SymSeq(ring, 0, {0: rep}), D)


def f_r_simplicial(Y, r, max_level=None):
    """``Fʳ`` applied degreewise to a simplicial object concentrated in level 0."""
    from .symseq.rep import regular_rep, tensor_with_complex
    ring = Y.ring
    L = r if max_level is None else max_level
    reg = regular_rep(ring, r)
    eye = Matrix.identity(ring, reg.dim)
    objects = []
    for n in range(Y.D + 1):
        base = Y.objects[n].rep(0) if Y.objects[n].dim(0) else Rep(ring, 0, [], [])
        objects.append(SymSeq(ring, L, {r: tensor_with_complex(reg, base.degrees, None)}))

    def lift(f, s, t):
        return SymMap(objects[s], objects[t], {r: kron(eye, f[0])})

    faces = {k: lift(f, k[0], k[0] - 1) for k, f in Y.faces.items()}
    degs = {k: lift(f, k[0], k[0] + 1) for k, f in Y.degeneracies.items()}
    return SimplicialSymSeq(ring, L, Y.D, objects, faces, degs, name=f"F{r}")


def check_gamma_f_r(ring, degrees, diff, r, D):
    """``Γ(FʳX) = FʳΓ(X)`` as constructed objects (after the canonical reindexing)."""
    from .barhom.discs import SmallComplex, f_r
    X = SmallComplex(ring, degrees, diff)
    left = gamma_functor(f_r(X, r), D)
    right = f_r_simplicial(simplicial_from_complex(ring, degrees, diff, D), r)
    dimx = len(degrees)
    bad = []
    perms = {}
    for n in range(D + 1):
        lk = left.objects[n].rep(r).keys if left.objects[n].dim(r) else []
        gk = right.objects[n].dim(r)
        if len(lk) != gk:
            return [("dimension", n)]
        base_keys = simplicial_from_complex(ring, degrees, diff, D).objects[n]
        bidx = base_keys.rep(0).index if base_keys.dim(0) else {}
        nb = len(bidx)
        perm = [0] * len(lk)
        for a, (theta, i) in enumerate(lk):
            g, x = divmod(i, dimx)
            perm[a] = g * nb + bidx[(theta, x)]
        perms[n] = Matrix(ring, gk, len(lk), [{p: ring.one} for p in perm])
    for n in range(D + 1):
        for g1, g2 in zip(left.objects[n].rep(r).gens if left.objects[n].dim(r) else [],
                          right.objects[n].rep(r).gens):
            if not (perms[n] @ g1 == g2 @ perms[n]):
                bad.append(("action", n))
    for (n, i), f in left.faces.items():
        if not (perms[n - 1] @ f[r] == right.faces[(n, i)][r] @ perms[n]):
            bad.append((f"d{i}", n))
    for (n, j), f in left.degeneracies.items():
        if not (perms[n + 1] @ f[r] == right.degeneracies[(n, j)][r] @ perms[n]):
            bad.append((f"s{j}", n))
    return bad


def random_chain_seq(ring, max_level, rng, max_degree=2, max_dim=2):
    """A random reduced, non-negatively graded chain symmetric sequence."""
    levels = {}
    for l in range(1, max_level + 1):
        if rng.random() < 0.7:
            levels[l] = random_chain_rep(ring, l, rng, max_dim=max_dim, degrees=tuple(range(max_degree + 1)))
    if not levels:
        levels[1] = random_chain_rep(ring, 1, rng, max_dim=max_dim, degrees=tuple(range(max_degree + 1)))
    return SymSeq(ring, max_level, levels)


def random_simplicial(ring, max_level, D, seed=None, rng=None):
    """``Γ`` of a random chain sequence (seeded)."""
    rng = rng or random.Random(seed)
    return gamma_functor(random_chain_seq(ring, max_level, rng, max_degree=min(2, D)), D)


class FreeSimplicialAlgebra:
    """``L_N C(X) = C(Γ X)`` degreewise, with witness data ``Z_q``."""

    def __init__(self, X, D, max_level=None):
        from .shalg.free import FreeComm, free_functor
        if not X.is_reduced():
            raise ValidationError("L_N is computed on reduced free inputs only")
        self.X = X
        self.G = gamma_functor(X, D)
        L = X.max_level if max_level is None else max_level
        self.fcs = [FreeComm(self.G.objects[n], L, unital=True) for n in range(D + 1)]
        self.algebras = [fc.materialize() for fc in self.fcs]
        faces = {k: free_functor(f, self.fcs[k[0]], self.fcs[k[0] - 1]) for k, f in self.G.faces.items()}
        degs = {k: free_functor(f, self.fcs[k[0]], self.fcs[k[0] + 1]) for k, f in self.G.degeneracies.items()}
        self.simplicial = SimplicialSymSeq(X.ring, L, D, [A.seq for A in self.algebras], faces, degs, name="C(ΓX)")
        self.D = D

    def witness(self):
        """``Z_q``: the standard basis of ``Γ(X)_q``, with its non-degenerate part.

        Returns per ``q`` a pair ``(all keys, non-degenerate keys)``; the
        degeneracies map ``Z_q`` into ``Z_{q+1}`` and ``C(Z_q)`` is the
        whole object in degree ``q``.
        """
        out = {}
        for q, obj in enumerate(self.G.objects):
            keys = [k for l in range(obj.max_level + 1) if obj.dim(l) for k in obj.rep(l).keys]
            nondeg = [k for k in keys if k[0] == tuple(range(len(k[0])))]
            out[q] = (keys, nondeg)
        return out

    def check_witness(self):
        for (n, j), s in self.G.degeneracies.items():
            for l, m in s.mats.items():
                for col in m.columns:
                    if len(col) != 1 or set(col.values()) != {self.X.ring.one}:
                        return False
        return True

    def check_algebra_maps(self):
        from .shalg.algebra import AlgebraMap
        bad = []
        for (n, i), f in self.simplicial.faces.items():
            if AlgebraMap(self.algebras[n], self.algebras[n - 1], f.mats).check():
                bad.append(("d", n, i))
        for (n, j), f in self.simplicial.degeneracies.items():
            if AlgebraMap(self.algebras[n], self.algebras[n + 1], f.mats).check():
                bad.append(("s", n, j))
        return bad

    def homology(self):
        """Betti table ``{(level, degree): dim}`` of ``N C(ΓX)``, degrees ``< D``."""
        N = normalize(self.simplicial)
        out = {}
        for l, h in N.homology().items():
            for n, v in h.items():
                if n < self.D and v:
                    out[(l, n)] = v
        return out


def l_n_free(X, D, max_level=None):
    return FreeSimplicialAlgebra(X, D, max_level)
