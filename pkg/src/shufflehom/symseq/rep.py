"""Graded Σ_ℓ-representations and symmetric sequences.

A :class:`Rep` is a finite-dimensional graded module with an action of
Σ_ℓ presented by the matrices of the adjacent transpositions
``s_1, ..., s_{ℓ-1}``, and an optional equivariant differential of
degree -1.  Every basis vector has its own degree; an ungraded
representation simply has all degrees zero.

A :class:`SymSeq` is a family of such representations indexed by the level
``ℓ = 0..L``.  The same class serves for chain symmetric sequences.
"""

from __future__ import annotations

import random
from itertools import permutations

from ..exactlin import ChainComplex, Matrix, Ring, homology_dims, inverse, kron
from . import perm as P


class ValidationError(ValueError):
    pass


class Rep:
    """Graded representation of Σ_level with optional differential.

    ``keys`` optionally names the basis vectors; ``index`` inverts it.
    """

    def __init__(self, ring, level, degrees, gens=None, diff=None, keys=None):
        self.ring = ring
        self.level = level
        self.degrees = list(degrees)
        n = len(self.degrees)
        if gens is None:
            gens = [Matrix.identity(ring, n) for _ in range(max(level - 1, 0))]
        if len(gens) != max(level - 1, 0):
            raise ValidationError(f"level {level} needs {max(level - 1, 0)} generator matrices, got {len(gens)}")
        for g in gens:
            if g.shape != (n, n):
                raise ValidationError(f"generator has shape {g.shape}, expected {(n, n)}")
        self.gens = list(gens)
        if diff is not None:
            if diff.shape != (n, n):
                raise ValidationError("differential has wrong shape")
            if diff.is_zero():
                diff = None
        self.diff = diff
        self.keys = keys
        self._index = None

    # basic data -------------------------------------------------------------

    @property
    def dim(self):
        return len(self.degrees)

    @property
    def index(self):
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.keys)}
        return self._index

    def __repr__(self):
        return f"Rep(level={self.level}, dim={self.dim})"

    @classmethod
    def zero(cls, ring, level):
        return cls(ring, level, [], [Matrix(ring, 0, 0) for _ in range(max(level - 1, 0))], keys=[])

    def is_graded(self):
        return any(self.degrees) or self.diff is not None

    def dims_by_degree(self):
        out = {}
        for g in self.degrees:
            out[g] = out.get(g, 0) + 1
        return out

    # action -----------------------------------------------------------------

    def act_gen(self, k, v):
        return self.gens[k - 1].apply(v)

    def act(self, sigma, v):
        for k in P.adjacent_word(sigma):
            v = self.gens[k - 1].apply(v)
        return v

    def perm_matrix(self, sigma):
        return Matrix(self.ring, self.dim, self.dim, [self.act(sigma, {j: self.ring.one}) for j in range(self.dim)])

    def d(self, v):
        if self.diff is None:
            return {}
        return self.diff.apply(v)

    def dmatrix(self):
        return self.diff if self.diff is not None else Matrix.zeros(self.ring, self.dim, self.dim)

    # derived structures -----------------------------------------------------

    def chain_complex(self):
        return ChainComplex.from_graded(self.ring, self.degrees, self.diff)

    def homology(self):
        return homology_dims(self.chain_complex())

    def conjugate(self, p):
        """Same representation in the basis given by the columns of ``p``."""
        pi = inverse(p)
        gens = [pi @ g @ p for g in self.gens]
        diff = pi @ self.diff @ p if self.diff is not None else None
        return Rep(self.ring, self.level, self.degrees, gens, diff)

    def shift(self, s):
        """Degree shift by ``s``; the differential picks up the sign ``(-1)^s``."""
        diff = self.diff.scale((-1) ** (s % 2)) if self.diff is not None and s % 2 else self.diff
        return Rep(self.ring, self.level, [g + s for g in self.degrees], self.gens, diff, self.keys)

    # validation -------------------------------------------------------------

    def validate(self):
        """Check the Coxeter relations, degree preservation and ``d² = 0``.

        Raises :class:`ValidationError` naming the failed identity.
        """
        n = self.dim
        ident = Matrix.identity(self.ring, n)
        deg = self.degrees
        for i, g in enumerate(self.gens, 1):
            if not (g @ g == ident):
                raise ValidationError(f"s_{i}^2 != 1 at level {self.level}")
            for j, col in enumerate(g.columns):
                if any(deg[r] != deg[j] for r in col):
                    raise ValidationError(f"s_{i} does not preserve degrees at level {self.level}")
        for i in range(len(self.gens) - 1):
            a, b = self.gens[i], self.gens[i + 1]
            if not (a @ b @ a == b @ a @ b):
                raise ValidationError(f"braid relation fails for s_{i + 1}, s_{i + 2} at level {self.level}")
        for i in range(len(self.gens)):
            for j in range(i + 2, len(self.gens)):
                if not (self.gens[i] @ self.gens[j] == self.gens[j] @ self.gens[i]):
                    raise ValidationError(f"s_{i + 1} and s_{j + 1} do not commute at level {self.level}")
        if self.diff is not None:
            d = self.diff
            for j, col in enumerate(d.columns):
                if any(deg[r] != deg[j] - 1 for r in col):
                    raise ValidationError(f"differential does not lower degree by one at level {self.level}")
            if not (d @ d).is_zero():
                raise ValidationError(f"d^2 != 0 at level {self.level}")
            for i, g in enumerate(self.gens, 1):
                if not (d @ g == g @ d):
                    raise ValidationError(f"differential does not commute with s_{i} at level {self.level}")
        return True


# ---------------------------------------------------------------------------
# standard representations


def trivial_rep(ring, level, degree=0):
    return Rep(ring, level, [degree], [Matrix.identity(ring, 1) for _ in range(max(level - 1, 0))])


def sign_rep(ring, level, degree=0):
    return Rep(ring, level, [degree], [Matrix(ring, 1, 1, [{0: ring(-1)}]) for _ in range(max(level - 1, 0))])


def regular_rep(ring, level, degree=0):
    """kΣ_ℓ with left multiplication; basis = permutations in lex order."""
    perms = sorted(permutations(range(1, level + 1)))
    idx = {p: i for i, p in enumerate(perms)}
    gens = []
    for k in range(1, level):
        s = P.transposition(level, k)
        gens.append(Matrix(ring, len(perms), len(perms), [{idx[P.compose(s, p)]: ring.one} for p in perms]))
    return Rep(ring, level, [degree] * len(perms), gens, keys=perms)


def permutation_rep(ring, level, degree=0):
    """The natural representation on k^ℓ."""
    gens = []
    for k in range(1, level):
        cols = [{i: ring.one} for i in range(level)]
        cols[k - 1], cols[k] = {k: ring.one}, {k - 1: ring.one}
        gens.append(Matrix(ring, level, level, cols))
    return Rep(ring, level, [degree] * level, gens)


def direct_sum(reps, ring=None, level=None):
    reps = list(reps)
    if not reps:
        return Rep.zero(ring, level)
    ring, level = reps[0].ring, reps[0].level
    from ..exactlin import block_diag
    degrees = [g for r in reps for g in r.degrees]
    gens = [block_diag(ring, [r.gens[i] for r in reps]) for i in range(max(level - 1, 0))]
    diff = None
    if any(r.diff is not None for r in reps):
        diff = block_diag(ring, [r.dmatrix() for r in reps])
    return Rep(ring, level, degrees, gens, diff)


def tensor_with_complex(rep, degrees, diff):
    """``rep ⊗ X`` for a complex X given by basis degrees and differential.

    Basis ``(i, x)`` has index ``i * dim X + x``; ``rep`` must be ungraded.
    """
    ring = rep.ring
    n = len(degrees)
    ident = Matrix.identity(ring, n)
    gens = [kron(g, ident) for g in rep.gens]
    d = None
    if diff is not None:
        d = kron(Matrix.identity(ring, rep.dim), diff)
    degs = [rep.degrees[i] + degrees[x] for i in range(rep.dim) for x in range(n)]
    keys = None
    if rep.keys is not None:
        keys = [(k, x) for k in rep.keys for x in range(n)]
    return Rep(ring, rep.level, degs, gens, d, keys)


# ---------------------------------------------------------------------------
# symmetric sequences


class SymSeq:
    """Levels ``0..max_level`` of graded Σ_ℓ-representations.

    ``levels`` maps a level to its :class:`Rep`; absent levels are zero.
    """

    def __init__(self, ring, max_level, levels=None):
        self.ring = ring
        self.max_level = max_level
        self.levels = {}
        for l, r in (levels or {}).items():
            if l > max_level:
                continue
            if r.level != l:
                raise ValidationError(f"representation stored at level {l} has level {r.level}")
            if r.ring != ring:
                raise ValidationError("ring mismatch")
            if r.dim:
                self.levels[l] = r

    def __repr__(self):
        return f"SymSeq({self.ring.name}, L={self.max_level}, dims={self.dims()})"

    def rep(self, level):
        r = self.levels.get(level)
        if r is None:
            return Rep.zero(self.ring, level)
        return r

    def dim(self, level):
        r = self.levels.get(level)
        return r.dim if r is not None else 0

    def dims(self):
        return {l: self.dim(l) for l in range(self.max_level + 1)}

    def is_reduced(self):
        return self.dim(0) == 0

    def is_zero(self):
        return not self.levels

    def is_graded(self):
        return any(r.is_graded() for r in self.levels.values())

    def validate(self):
        for r in self.levels.values():
            r.validate()
        return True

    def truncate(self, max_level):
        return SymSeq(self.ring, max_level, {l: r for l, r in self.levels.items() if l <= max_level})

    def shift(self, s):
        return SymSeq(self.ring, self.max_level, {l: r.shift(s) for l, r in self.levels.items()})

    def homology(self):
        """``{level: {degree: dim}}`` over fields; Z adds torsion (see homology_dims)."""
        return {l: r.homology() for l, r in sorted(self.levels.items())}

    def betti(self):
        """Nonzero homology dimensions as ``{(level, degree): dim}`` (fields only)."""
        out = {}
        for l, h in self.homology().items():
            for n, v in h.items():
                b = v[0] if isinstance(v, tuple) else v
                if b:
                    out[(l, n)] = b
        return out

    def dims_table(self):
        """``{(level, degree): dim}`` of the underlying graded module."""
        out = {}
        for l, r in self.levels.items():
            for g, c in r.dims_by_degree().items():
                out[(l, g)] = c
        return out


def unit_seq(ring, max_level):
    """The unit I: k at level 0."""
    return SymSeq(ring, max_level, {0: trivial_rep(ring, 0)})


def zero_seq(ring, max_level):
    return SymSeq(ring, max_level, {})


def concentrated(rep, max_level):
    return SymSeq(rep.ring, max_level, {rep.level: rep})


def seq_direct_sum(seqs):
    seqs = list(seqs)
    ring, L = seqs[0].ring, seqs[0].max_level
    levels = {}
    for l in range(L + 1):
        reps = [s.levels[l] for s in seqs if l in s.levels]
        if reps:
            levels[l] = direct_sum(reps)
    return SymSeq(ring, L, levels)


class SymMap:
    """Levelwise matrices ``source(ℓ) -> target(ℓ)``."""

    def __init__(self, source, target, mats):
        self.source = source
        self.target = target
        self.mats = {}
        ring = source.ring
        for l in range(min(source.max_level, target.max_level) + 1):
            m = mats.get(l)
            shape = (target.dim(l), source.dim(l))
            if m is None:
                m = Matrix.zeros(ring, *shape)
            if m.shape != shape:
                raise ValidationError(f"map at level {l} has shape {m.shape}, expected {shape}")
            self.mats[l] = m

    def __getitem__(self, l):
        return self.mats[l]

    def compose(self, other):
        """``self ∘ other``."""
        return SymMap(other.source, self.target, {l: self.mats[l] @ other.mats[l] for l in self.mats if l in other.mats})

    def is_equivariant(self):
        for l, m in self.mats.items():
            a, b = self.source.rep(l), self.target.rep(l)
            for ga, gb in zip(a.gens, b.gens):
                if not (m @ ga == gb @ m):
                    return False
        return True

    def is_chain_map(self):
        for l, m in self.mats.items():
            a, b = self.source.rep(l), self.target.rep(l)
            if not (m @ a.dmatrix() == b.dmatrix() @ m):
                return False
        return True

    def preserves_degree(self):
        for l, m in self.mats.items():
            a, b = self.source.rep(l), self.target.rep(l)
            for j, col in enumerate(m.columns):
                if any(b.degrees[i] != a.degrees[j] for i in col):
                    return False
        return True

    def is_iso(self):
        from ..exactlin import rank
        return all(m.nrows == m.ncols and rank(m) == m.nrows for m in self.mats.values())


def identity_map(seq):
    return SymMap(seq, seq, {l: Matrix.identity(seq.ring, seq.dim(l)) for l in range(seq.max_level + 1)})


# ---------------------------------------------------------------------------
# random inputs


def random_invertible(ring, n, rng, bound=2):
    """Random invertible matrix as a product of unit triangular matrices."""
    def entry():
        return ring(rng.randint(-bound, bound))
    low = [[ring.one if i == j else (entry() if i > j else ring.zero) for j in range(n)] for i in range(n)]
    up = [[ring.one if i == j else (entry() if i < j else ring.zero) for j in range(n)] for i in range(n)]
    return Matrix.from_rows(ring, low) @ Matrix.from_rows(ring, up)


_BUILDERS = {
    "trivial": trivial_rep,
    "sign": sign_rep,
    "permutation": permutation_rep,
    "regular": regular_rep,
}


def random_rep(ring, level, rng, max_dim=3, conjugate=True):
    """Direct sum of trivial/sign/permutation/regular pieces in a random basis."""
    pieces = []
    dim = 0
    target = rng.randint(1, max_dim)
    while dim < target:
        kinds = ["trivial", "sign"]
        if 2 <= level and level + dim <= max_dim:
            kinds.append("permutation")
        if 2 <= level <= 3 and P.count_shuffles([1] * level) + dim <= max_dim:
            kinds.append("regular")
        r = _BUILDERS[rng.choice(kinds)](ring, level)
        pieces.append(r)
        dim += r.dim
    rep = direct_sum(pieces)
    rep = Rep(ring, level, rep.degrees, rep.gens)
    if conjugate and rep.dim > 1:
        rep = rep.conjugate(random_invertible(ring, rep.dim, rng))
    return rep


def random_reduced_seq(ring, max_level, seed=None, rng=None, density=0.5, max_dim=2):
    """A random reduced ungraded SymSeq with small levels."""
    rng = rng or random.Random(seed)
    levels = {}
    for l in range(1, max_level + 1):
        if rng.random() < density:
            levels[l] = random_rep(ring, l, rng, max_dim=max_dim)
    if not levels:
        levels[1] = trivial_rep(ring, 1)
    return SymSeq(ring, max_level, levels)


def random_chain_rep(ring, level, rng, max_dim=3, degrees=(0, 1, 2)):
    """Random equivariant complex: a sum of discs and spheres on standard reps."""
    pieces = []
    for _ in range(rng.randint(1, max_dim)):
        base = _BUILDERS[rng.choice(["trivial", "sign"] + (["permutation"] if level >= 2 else []))](ring, level)
        if rng.random() < 0.5:
            n = rng.choice(list(degrees))
            pieces.append(tensor_with_complex(base, [n], None))
        else:
            n = rng.choice([d for d in degrees if d >= 1] or [1])
            pieces.append(tensor_with_complex(base, [n, n - 1], Matrix(ring, 2, 2, [{1: ring.one}, {}])))
    rep = direct_sum(pieces)
    order = sorted(range(rep.dim), key=lambda i: rep.degrees[i])
    return _reorder(rep, order)


def _reorder(rep, order):
    pos = {j: i for i, j in enumerate(order)}
    ring = rep.ring
    n = rep.dim
    p = Matrix(ring, n, n, [{pos[j]: ring.one} for j in range(n)])
    pinv = Matrix(ring, n, n, [{order[i]: ring.one} for i in range(n)])
    gens = [p @ g @ pinv for g in rep.gens]
    diff = p @ rep.diff @ pinv if rep.diff is not None else None
    return Rep(ring, rep.level, [rep.degrees[j] for j in order], gens, diff)


def parse_ring(text):
    return text if isinstance(text, Ring) else Ring.parse(text)
