"""The free simplicial resolution ``C̄^{•+1}(A)`` and André–Quillen homology.

Write ``Z_0 = A`` and ``Z_{j+1} = C̄(Z_j)``, so the resolution is
``P_t = Z_{t+1}``.  Since ``Q_a(C̄V) = V``, its indecomposables form the
simplicial sequence ``t ↦ Z_t`` with

    d_0 = weight-one projection C̄(Z_{t-1}) -> Z_{t-1}
    d_1 = ε: C̄(Z_{t-1}) -> Z_{t-1}  (the algebra structure of Z_{t-1})
    d_i = C̄(d_{i-1})               for i ≥ 2

    s_0 = η: Z_t -> C̄(Z_t)
    s_j = C̄(s_{j-1})               for j ≥ 1
"""

from __future__ import annotations

from ..exactlin import homology_dims
from ..shalg.algebra import AlgebraMap
from ..shalg.free import FreeComm, flatten, free_functor, structure_map, unit_map, weight_one_projection
from ..symseq.rep import ValidationError
from ..doldkan import alternating_total_complex, moore_total_complex


class CotripleResolution:
    """Indecomposables of ``C̄^{•+1}(A)`` up to simplicial degree ``t_max``."""

    def __init__(self, A, t_max, max_level=None, validate=True):
        if not A.is_reduced:
            raise ValidationError("the resolution needs a reduced algebra")
        if t_max < 0:
            raise ValidationError("t_max must be non-negative")
        self.A = A
        self.ring = A.ring
        self.t_max = t_max
        self.max_level = A.max_level if max_level is None else min(max_level, A.max_level)
        L = self.max_level
        self.Z = [A]
        self.F = []
        for _ in range(t_max + 1):
            fc = FreeComm(self.Z[-1].seq, L)
            self.F.append(fc)
            self.Z.append(fc.materialize())
        self._eps = {}
        self.faces = {}
        self.degeneracies = {}
        for t in range(1, t_max + 1):
            for i in range(t + 1):
                self.faces[(t, i)] = self._face(t, i)
        for t in range(t_max):
            for j in range(t + 1):
                self.degeneracies[(t, j)] = self._degeneracy(t, j)
        if validate:
            bad = self.check_identities()
            if bad:
                raise ValidationError(f"simplicial identity fails: {bad[0]}")

    def _structure(self, j):
        """``ε: Z_{j+1} -> Z_j``."""
        if j not in self._eps:
            if j == 0:
                self._eps[j] = structure_map(self.F[0], self.A)
            else:
                self._eps[j] = flatten(self.F[j], self.F[j - 1])
        return self._eps[j]

    def _face(self, t, i):
        if i == 0:
            return weight_one_projection(self.F[t - 1])
        if i == 1:
            return self._structure(t - 1)
        return free_functor(self.faces[(t - 1, i - 1)], self.F[t - 1], self.F[t - 2])

    def _degeneracy(self, t, j):
        if j == 0:
            return unit_map(self.F[t])
        return free_functor(self.degeneracies[(t - 1, j - 1)], self.F[t - 1], self.F[t])

    def seq(self, t):
        return self.Z[t].seq

    def resolution_object(self, t):
        """``P_t = C̄^{t+1}(A)`` as a shuffle algebra."""
        return self.Z[t + 1]

    def algebra_face(self, t, i):
        """Face ``d_i: P_t -> P_{t-1}`` of the resolution itself."""
        if i == 0:
            m = self._structure(t)
        else:
            m = free_functor(self.faces[(t, i)], self.F[t], self.F[t - 1])
        return AlgebraMap(self.Z[t + 1], self.Z[t], m.mats)

    def check_identities(self):
        """Failures among the simplicial identities, as ``(identity, level)`` pairs."""
        bad = []
        d, s = self.faces, self.degeneracies
        L = self.max_level

        def eq(f, g, name):
            for l in range(L + 1):
                if not (f[l] == g[l]):
                    bad.append((name, l))
                    return

        for t in range(2, self.t_max + 1):
            for j in range(1, t + 1):
                for i in range(j):
                    eq(d[(t - 1, i)].compose(d[(t, j)]), d[(t - 1, j - 1)].compose(d[(t, i)]),
                       f"d{i}d{j}=d{j - 1}d{i} (t={t})")
        for t in range(self.t_max):
            for j in range(t + 1):
                for i in range(t + 2):
                    lhs = d[(t + 1, i)].compose(s[(t, j)])
                    if i < j:
                        rhs = s[(t - 1, j - 1)].compose(d[(t, i)])
                    elif i in (j, j + 1):
                        for l in range(L + 1):
                            if not lhs[l].is_identity():
                                bad.append((f"d{i}s{j}=id (t={t})", l))
                                break
                        continue
                    else:
                        rhs = s[(t - 1, j)].compose(d[(t, i - 1)])
                    eq(lhs, rhs, f"d{i}s{j} (t={t})")
        for t in range(self.t_max - 1):
            for j in range(t + 1):
                for i in range(j + 1):
                    eq(s[(t + 1, i)].compose(s[(t, j)]), s[(t + 1, j + 1)].compose(s[(t, i)]),
                       f"s{i}s{j}=s{j + 1}s{i} (t={t})")
        return bad

    def check_equivariance(self):
        return all(f.is_equivariant() for f in list(self.faces.values()) + list(self.degeneracies.values()))

    # homology -----------------------------------------------------------------

    def _level_data(self, l, objs, faces):
        degrees = [objs[t].rep(l).degrees if objs[t].dim(l) else [] for t in range(self.t_max + 1)]
        dint = [objs[t].rep(l).diff if objs[t].dim(l) else None for t in range(self.t_max + 1)]
        fmats = {k: f[l] for k, f in faces.items()}
        return degrees, fmats, dint

    def total_complex(self, l, normalized=True):
        objs = [z.seq for z in self.Z[:self.t_max + 1]]
        degrees, fmats, dint = self._level_data(l, objs, self.faces)
        fn = moore_total_complex if normalized else alternating_total_complex
        out = fn(self.ring, degrees, fmats, dint, self.t_max)
        return out[0] if normalized else out

    def weight_complex(self, l, q, normalized=True):
        """Total complex of ``Σ^{-1} C̄_q Σ Q_a(P_•)`` at level ``l``."""
        objs, faces = self._weight_objects(q)
        sel = {t: [i for i, k in enumerate(objs[t].keys(l)) if len(k[1]) == q] for t in objs}
        degrees = []
        dint = []
        for t in range(self.t_max + 1):
            A = objs[t].materialize()
            if not A.dim(l):
                degrees.append([])
                dint.append(None)
                continue
            r = A.rep(l)
            degrees.append([r.degrees[i] for i in sel[t]])
            dint.append(r.dmatrix().select_columns(sel[t]).select_rows(sel[t]))
        fmats = {}
        for (t, i), f in faces.items():
            fmats[(t, i)] = f[l].select_columns(sel[t]).select_rows(sel[t - 1])
        fn = moore_total_complex if normalized else alternating_total_complex
        out = fn(self.ring, degrees, fmats, dint, self.t_max, shift=-1)
        return out[0] if normalized else out

    def _weight_objects(self, q):
        if not hasattr(self, "_wobj"):
            objs = {t: FreeComm(self.Z[t].seq.shift(1), self.max_level) for t in range(self.t_max + 1)}
            faces = {}
            for (t, i), f in self.faces.items():
                faces[(t, i)] = free_functor(_shifted(f, objs[t].V, objs[t - 1].V), objs[t], objs[t - 1])
            self._wobj = (objs, faces)
        return self._wobj


def _shifted(f, src, tgt):
    from ..symseq.rep import SymMap
    return SymMap(src, tgt, f.mats)


def cotriple_resolution(A, t_max, max_level=None, validate=True):
    return CotripleResolution(A, t_max, max_level, validate)


def _table(res, complex_fn, p_max):
    out = {}
    for l in range(1, res.max_level + 1):
        h = homology_dims(complex_fn(l))
        for n, v in h.items():
            b = v[0] if isinstance(v, tuple) else v
            if n <= p_max and b:
                out[(l, n)] = b
    return out


def aq_homology(A, p_max, max_level=None, t_max=None, normalized=True):
    """Betti table ``{(level, p): dim AQ_p(A)}`` for ``p ≤ p_max``."""
    t_max = p_max + 1 if t_max is None else t_max
    if t_max < p_max + 1:
        raise ValidationError(f"t_max = {t_max} is too small for p_max = {p_max}")
    res = CotripleResolution(A, t_max, max_level)
    return _table(res, lambda l: res.total_complex(l, normalized), p_max)


def aq_weight_homology(A, q, p_max, max_level=None, t_max=None, res=None):
    """``{(level, p): dim AQ^{(q)}_p(A)}`` for ``p ≤ p_max``."""
    if q < 1:
        raise ValidationError("weights start at q = 1")
    t_max = p_max + 1 if t_max is None else t_max
    res = res or CotripleResolution(A, t_max, max_level)
    return _table(res, lambda l: res.weight_complex(l, q), p_max)


class HodgeReport:
    def __init__(self, lhs, rhs, weights, n_max, max_level):
        self.lhs = lhs
        self.rhs = rhs
        self.weights = weights
        self.n_max = n_max
        self.max_level = max_level
        self.mismatches = sorted(k for k in set(lhs) | set(rhs) if lhs.get(k, 0) != rhs.get(k, 0))

    @property
    def passed(self):
        return not self.mismatches


def hodge_check(A, n_max, max_level=None):
    """Compare ``dim H^{E_1}_n(A)`` with ``Σ_q dim AQ^{(q)}_n(A)`` per level, ``n ≤ n_max``.

    Both sides are graded by total degree; ``AQ^{(q)}`` at level ℓ vanishes
    for ``q > ℓ``, so the sum is finite.
    """
    from .bar import e1_homology
    if not A.ring.is_field:
        raise ValidationError("the Hodge decomposition is checked over fields only")
    L = A.max_level if max_level is None else min(max_level, A.max_level)
    lhs = {k: v for k, v in e1_homology(A, L).items() if k[1] <= n_max}
    res = CotripleResolution(A, n_max + 1, L)
    weights = {}
    rhs = {}
    for q in range(1, L + 1):
        w = aq_weight_homology(A, q, n_max, res=res)
        weights[q] = w
        for k, v in w.items():
            rhs[k] = rhs.get(k, 0) + v
    return HodgeReport(lhs, rhs, weights, n_max, L)
