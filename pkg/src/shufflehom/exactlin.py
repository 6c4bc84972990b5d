"""Exact linear algebra over Q, F_p and Z.

Vectors are sparse dicts ``{index: coefficient}`` without zero entries.
Matrices store their columns as such dicts, so applying a matrix to a
basis vector is a lookup.  Over Q and F_p everything is computed by
Gaussian elimination on sparse vectors; over Z ranks are taken over Q
and torsion comes from the Smith normal form.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    QQ = Fraction

_QQ_TYPE = type(QQ(0))


class RingError(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Ring:
    """The coefficient ring: ``Ring("Q")``, ``Ring("Z")`` or ``Ring("F", p)``."""

    def __init__(self, kind, p=None):
        if kind in ("Q", "rationals"):
            kind = "Q"
        elif kind in ("Z", "integers"):
            kind = "Z"
        elif kind in ("F", "prime_field"):
            kind = "F"
            if p is None or not _is_prime(p):
                raise RingError(f"prime field needs a prime characteristic, got {p!r}")
        else:
            raise RingError(f"unknown ring kind {kind!r}")
        self.kind = kind
        self.p = p if kind == "F" else None

    @classmethod
    def parse(cls, text):
        """Parse ``Q``, ``Z``, ``F2``, ``F3``, ``GF(5)`` and similar."""
        t = str(text).strip().upper().replace("GF(", "F").replace(")", "")
        if t in ("Q", "QQ", "RATIONALS"):
            return cls("Q")
        if t in ("Z", "ZZ", "INTEGERS"):
            return cls("Z")
        if t.startswith("F") and t[1:].isdigit():
            return cls("F", int(t[1:]))
        raise RingError(f"cannot parse ring {text!r}")

    def __repr__(self):
        return f"Ring({self.name!r})"

    @property
    def name(self):
        return f"F{self.p}" if self.kind == "F" else self.kind

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    @property
    def is_field(self):
        return self.kind != "Z"

    @property
    def characteristic(self):
        return self.p if self.kind == "F" else 0

    @property
    def zero(self):
        return QQ(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return QQ(1) if self.kind == "Q" else 1

    def __call__(self, x):
        """Coerce an int, Fraction or string like ``"3/4"`` into the ring."""
        t = type(x)
        if t is _QQ_TYPE and self.kind == "Q":
            return x
        if t is int and self.kind != "Q":
            return x % self.p if self.kind == "F" else x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == "Q":
            if isinstance(x, Fraction):
                return QQ(x.numerator, x.denominator)
            return QQ(x)
        if isinstance(x, int):
            return x % self.p if self.kind == "F" else x
        num, den = int(x.numerator), int(x.denominator)
        if self.kind == "Z":
            if den != 1:
                raise RingError(f"{x} is not an integer")
            return num
        num %= self.p
        den %= self.p
        if den == 0:
            raise RingError(f"{x} has no image in F{self.p}")
        return num * pow(den, -1, self.p) % self.p

    def reduce(self, x):
        return x % self.p if self.kind == "F" else x

    def inv(self, x):
        if self.kind == "F":
            if x % self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, -1, self.p)
        if self.kind == "Q":
            return 1 / QQ(x)
        if x in (1, -1):
            return x
        raise RingError(f"{x} is not a unit in Z")

    def fmt(self, x):
        """Canonical text form: residues in [0, p) for F_p, ``a/b`` for Q."""
        x = self(x)
        if self.kind == "Q":
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)


# ---------------------------------------------------------------------------
# sparse vectors


def axpy(ring, y, x, c):
    """In place ``y += c * x``."""
    if not c:
        return y
    p = ring.p
    if p:
        for k, v in x.items():
            t = (y.get(k, 0) + c * v) % p
            if t:
                y[k] = t
            else:
                y.pop(k, None)
    else:
        for k, v in x.items():
            t = y.get(k, 0) + c * v
            if t:
                y[k] = t
            else:
                y.pop(k, None)
    return y


def vscale(ring, x, c):
    c = ring.reduce(c)
    if not c:
        return {}
    out = {}
    for k, v in x.items():
        t = ring.reduce(c * v)
        if t:
            out[k] = t
    return out


def vadd(ring, x, y):
    return axpy(ring, dict(x), y, 1)


def vsub(ring, x, y):
    return axpy(ring, dict(x), y, -1)


def vlincomb(ring, terms):
    """Sum of ``c * x`` over ``(c, x)`` pairs."""
    out = {}
    for c, x in terms:
        axpy(ring, out, x, c)
    return out


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """An ``nrows x ncols`` matrix stored as a list of sparse columns."""

    __slots__ = ("ring", "nrows", "ncols", "columns")

    def __init__(self, ring, nrows, ncols, columns=None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        if columns is None:
            columns = [{} for _ in range(ncols)]
        if len(columns) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(columns)}")
        self.columns = columns

    @classmethod
    def from_rows(cls, ring, rows, ncols=None):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(r):
                x = ring(x)
                if x:
                    cols[j][i] = x
        return cls(ring, nrows, ncols, cols)

    @classmethod
    def from_entries(cls, ring, nrows, ncols, entries):
        """Row-major entry list."""
        entries = list(entries)
        if len(entries) != nrows * ncols:
            raise ValueError(f"{nrows}x{ncols} matrix needs {nrows * ncols} entries, got {len(entries)}")
        return cls.from_rows(ring, [entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, n, [{i: ring.one} for i in range(n)])

    @classmethod
    def from_columns(cls, ring, nrows, columns):
        return cls(ring, nrows, len(columns), [dict(c) for c in columns])

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.ring.name})"

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def to_rows(self):
        rows = [[self.ring.zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def entries(self):
        return [x for r in self.to_rows() for x in r]

    def entry(self, i, j):
        return self.columns[j].get(i, self.ring.zero)

    def apply(self, v):
        out = {}
        ring = self.ring
        for j, c in v.items():
            axpy(ring, out, self.columns[j], c)
        return out

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.ring, self.nrows, other.ncols, [self.apply(c) for c in other.columns])

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, self.nrows, self.ncols,
                      [vadd(self.ring, a, b) for a, b in zip(self.columns, other.columns)])

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, self.nrows, self.ncols,
                      [vsub(self.ring, a, b) for a, b in zip(self.columns, other.columns)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return Matrix(self.ring, self.nrows, self.ncols, [vscale(self.ring, col, c) for col in self.columns])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and all(a == b for a, b in zip(self.columns, other.columns)))

    __hash__ = None

    def is_zero(self):
        return not any(self.columns)

    def is_identity(self):
        return self.nrows == self.ncols and all(c == {j: 1} for j, c in enumerate(self.columns))

    def transpose(self):
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                cols[i][j] = x
        return Matrix(self.ring, self.ncols, self.nrows, cols)

    def select_columns(self, idx):
        return Matrix(self.ring, self.nrows, len(idx), [dict(self.columns[j]) for j in idx])

    def select_rows(self, idx):
        pos = {i: k for k, i in enumerate(idx)}
        cols = [{pos[i]: x for i, x in col.items() if i in pos} for col in self.columns]
        return Matrix(self.ring, len(idx), self.ncols, cols)

    def nnz(self):
        return sum(len(c) for c in self.columns)


def block_diag(ring, mats):
    nr = sum(m.nrows for m in mats)
    cols = []
    off = 0
    for m in mats:
        for c in m.columns:
            cols.append({i + off: x for i, x in c.items()})
        off += m.nrows
    return Matrix(ring, nr, len(cols), cols)


def kron(a, b):
    """Kronecker product; basis ``(i, j)`` of the tensor has index ``i * dim_b + j``."""
    ring = a.ring
    cols = []
    for ca in a.columns:
        for cb in b.columns:
            col = {}
            for i, x in ca.items():
                for k, y in cb.items():
                    t = ring.reduce(x * y)
                    if t:
                        col[i * b.nrows + k] = t
            cols.append(col)
    return Matrix(ring, a.nrows * b.nrows, a.ncols * b.ncols, cols)


# ---------------------------------------------------------------------------
# elimination


def _normalize(ring, v):
    if ring.kind == "F":
        p = ring.p
        out = {k: x % p for k, x in v.items()}
    elif ring.kind == "Q":
        out = {k: x if type(x) is _QQ_TYPE else ring(x) for k, x in v.items()}
    else:
        out = dict(v)
    return {k: x for k, x in out.items() if x}


class Echelon:
    """Incrementally built echelon basis of a subspace of ``ring^n``.

    Each stored vector has its pivot as smallest key with coefficient one.
    With ``track=True`` every stored vector also remembers which
    combination of the inserted vectors produced it.
    """

    def __init__(self, ring, track=False):
        if not ring.is_field:
            ring = Ring("Q")
        self.ring = ring
        self.track = track
        self.rows = {}       # pivot -> vector
        self.combos = {}     # pivot -> combination of inserted vectors
        self.count = 0       # number of inserted vectors
        self.relations = []  # dependent insertions, tracking mode only

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def _reduce(self, v, combo=None):
        ring = self.ring
        rows = self.rows
        p = ring.p if ring.kind == "F" else 0
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c:
                continue
            r = rows[k]
            for j, x in r.items():
                t = v.get(j, 0) - c * x
                if p:
                    t %= p
                if t:
                    if j not in v and j in rows:
                        heapq.heappush(heap, j)
                    v[j] = t
                else:
                    v.pop(j, None)
            if combo is not None:
                axpy(ring, combo, self.combos[k], -c)
        return v

    def reduce(self, v):
        """Remainder of ``v`` modulo the subspace; has no pivot keys."""
        return self._reduce(dict(v))

    def add(self, v):
        """Insert ``v``; returns the new pivot or ``None`` if ``v`` was dependent.

        In tracking mode a dependent vector records its relation in
        :attr:`relations` (as a combination of inserted vectors).
        """
        ring = self.ring
        v = _normalize(ring, v)
        combo = {self.count: ring.one} if self.track else None
        self.count += 1
        self._reduce(v, combo)
        if not v:
            if self.track:
                self.relations.append(combo)
            return None
        piv = min(v)
        inv = ring.inv(v[piv])
        if inv != 1:
            v = vscale(ring, v, inv)
            if combo is not None:
                combo = vscale(ring, combo, inv)
        self.rows[piv] = v
        if combo is not None:
            self.combos[piv] = combo
        return piv

    def contains(self, v):
        return not self.reduce(v)

    def coordinates(self, v):
        """Coefficients of ``v`` in terms of the inserted vectors (tracking mode).

        Raises ``ValueError`` if ``v`` is not in the span.
        """
        if not self.track:
            raise ValueError("coordinates need a tracking echelon")
        combo = {}
        w = dict(v)
        self._reduce(w, combo)
        if w:
            raise ValueError("vector not in span")
        return vscale(self.ring, combo, -1)


def rank(m):
    """Rank over the fraction field."""
    e = Echelon(m.ring)
    for c in m.columns:
        e.add(c)
    return len(e)


def kernel_basis(m):
    """Matrix whose columns form a basis of ``ker m``.

    Over Z the columns are a Z-basis of the integral kernel.
    """
    ring = m.ring
    if not ring.is_field:
        _, _, _, v = smith_normal_form(m)
        r = rank(m)
        return v.select_columns(list(range(r, m.ncols)))
    e = Echelon(ring, track=True)
    for c in m.columns:
        e.add(c)
    return Matrix(ring, m.ncols, len(e.relations), list(e.relations))


def column_space(vectors, ring):
    e = Echelon(ring)
    for v in vectors:
        e.add(v)
    return e


def inverse(m):
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    ring = m.ring
    if not ring.is_field:
        inv_q = inverse(Matrix(Ring("Q"), m.nrows, m.ncols,
                               [{i: QQ(x) for i, x in c.items()} for c in m.columns]))
        cols = []
        for c in inv_q.columns:
            if any(x.denominator != 1 for x in c.values()):
                raise RingError("matrix is not invertible over Z")
            cols.append({i: int(x) for i, x in c.items()})
        return Matrix(ring, m.nrows, m.ncols, cols)
    # solve m x = e_i for each i via a tracking echelon on the columns
    e = Echelon(ring, track=True)
    for c in m.columns:
        if e.add(c) is None:
            raise RingError("matrix is singular")
    cols = [e.coordinates({i: ring.one}) for i in range(m.nrows)]
    return Matrix(ring, m.nrows, m.ncols, cols)


def solve(m, b):
    """One solution ``x`` of ``m x = b`` or ``None``."""
    e = Echelon(m.ring, track=True)
    for c in m.columns:
        e.add(c)
    try:
        return e.coordinates(b)
    except ValueError:
        return None


class Subspace:
    """Subspace spanned by given vectors, with a chosen basis and coordinates."""

    def __init__(self, ring, ambient_dim, vectors):
        self.ring = ring
        self.ambient_dim = ambient_dim
        e = Echelon(ring, track=True)
        basis = []
        for v in vectors:
            if e.add(v) is not None:
                basis.append(dict(v))
        # rebuild so that tracked combinations refer to basis indices
        self._ech = Echelon(ring, track=True)
        for v in basis:
            self._ech.add(v)
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)

    def inclusion(self):
        return Matrix(self.ring, self.ambient_dim, self.dim, [dict(b) for b in self.basis])

    def contains(self, v):
        return self._ech.contains(v)

    def coordinates(self, v):
        return self._ech.coordinates(v)

    def restrict(self, f, target=None):
        """Matrix of ``f`` restricted to this subspace, landing in ``target``."""
        imgs = [f.apply(b) for b in self.basis]
        if target is None:
            return Matrix(self.ring, f.nrows, self.dim, imgs)
        return Matrix(self.ring, target.dim, self.dim, [target.coordinates(v) for v in imgs])


class Quotient:
    """Quotient of ``ring^n`` by the span of ``relations``.

    The quotient basis is the set of non-pivot standard basis vectors, so
    every class has a canonical lift.
    """

    def __init__(self, ring, ambient_dim, relations):
        if not ring.is_field:
            raise RingError("quotients are only supported over fields")
        self.ring = ring
        self.ambient_dim = ambient_dim
        self._ech = Echelon(ring)
        for r in relations:
            self._ech.add(r)
        piv = set(self._ech.rows)
        self.basis = [i for i in range(ambient_dim) if i not in piv]
        self.index = {b: k for k, b in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def project(self, v):
        r = self._ech.reduce(v)
        return {self.index[k]: x for k, x in r.items()}

    def lift(self, k):
        return {self.basis[k]: self.ring.one}

    def projection(self):
        return Matrix(self.ring, self.dim, self.ambient_dim,
                      [self.project({j: self.ring.one}) for j in range(self.ambient_dim)])

    def section(self):
        return Matrix(self.ring, self.ambient_dim, self.dim, [self.lift(k) for k in range(self.dim)])

    def induced(self, f, target):
        """Map of quotients induced by ``f``; ``target`` is a Quotient of f's codomain."""
        return Matrix(self.ring, target.dim, self.dim,
                      [target.project(f.columns[b]) for b in self.basis])


# ---------------------------------------------------------------------------
# Smith normal form


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(m):
    """Smith normal form of an integer matrix.

    Returns ``(factors, D, U, V)`` with ``U @ m @ V == D`` diagonal, the
    nonzero diagonal entries ``factors`` positive and each dividing the next,
    and ``U``, ``V`` unimodular.
    """
    if m.ring.kind != "Z":
        raise RingError("Smith normal form needs ring Z")
    R = m.ring
    nr, nc = m.nrows, m.ncols
    a = m.to_rows()
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_comb(mat, i, k, p, q, r, s):
        # rows i, k <- (p*row_i + q*row_k, r*row_i + s*row_k)
        ri, rk = mat[i], mat[k]
        mat[i] = [p * x + q * y for x, y in zip(ri, rk)]
        mat[k] = [r * x + s * y for x, y in zip(ri, rk)]

    def col_comb(mat, j, k, p, q, r, s):
        for row in mat:
            x, y = row[j], row[k]
            row[j] = p * x + q * y
            row[k] = r * x + s * y

    t = 0
    while t < min(nr, nc):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        a[t], a[i0] = a[i0], a[t]
        u[t], u[i0] = u[i0], u[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        for row in v:
            row[t], row[j0] = row[j0], row[t]
        while True:
            changed = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    g, x, y = _xgcd(a[t][t], a[i][t])
                    p_, q_ = a[t][t] // g, a[i][t] // g
                    row_comb(a, t, i, x, y, -q_, p_)
                    row_comb(u, t, i, x, y, -q_, p_)
                    changed = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    g, x, y = _xgcd(a[t][t], a[t][j])
                    p_, q_ = a[t][t] // g, a[t][j] // g
                    col_comb(a, t, j, x, y, -q_, p_)
                    col_comb(v, t, j, x, y, -q_, p_)
                    changed = True
            if not changed:
                break
        # divisibility: fold in any entry not divisible by the pivot
        bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                    if a[i][j] % a[t][t]), None)
        if bad is not None:
            i, _ = bad
            row_comb(a, t, i, 1, 1, 0, 1)
            row_comb(u, t, i, 1, 1, 0, 1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    factors = [a[i][i] for i in range(min(nr, nc)) if a[i][i]]
    return (factors, Matrix.from_rows(R, a, nc), Matrix.from_rows(R, u, nr), Matrix.from_rows(R, v, nc))


# ---------------------------------------------------------------------------
# chain complexes


class ChainComplex:
    """Finitely supported Z-graded chain complex of free modules.

    ``dims[n]`` is the rank in degree ``n``; ``diffs[n]`` the matrix of
    ``d_n: C_n -> C_{n-1}``.  Missing differentials are zero.
    """

    def __init__(self, ring, dims, diffs=None, check=True):
        self.ring = ring
        self.dims = {n: d for n, d in dims.items() if d}
        self.diffs = {}
        for n, m in (diffs or {}).items():
            if m.shape != (dims.get(n - 1, 0), dims.get(n, 0)):
                raise ValueError(f"d_{n} has shape {m.shape}, expected {(dims.get(n - 1, 0), dims.get(n, 0))}")
            if m.ncols and m.nrows and not m.is_zero():
                self.diffs[n] = m
        if check:
            self.check()

    @property
    def degrees(self):
        return sorted(self.dims)

    def d(self, n):
        return self.diffs.get(n) or Matrix.zeros(self.ring, self.dims.get(n - 1, 0), self.dims.get(n, 0))

    def check(self):
        for n in self.diffs:
            if n - 1 in self.diffs:
                if not (self.diffs[n - 1] @ self.diffs[n]).is_zero():
                    raise ValueError(f"d_{n - 1} d_{n} != 0")

    @classmethod
    def from_graded(cls, ring, degrees, diff=None, check=True):
        """Complex from one basis with per-vector degrees and a degree -1 differential."""
        by_deg = {}
        pos = []
        for i, g in enumerate(degrees):
            lst = by_deg.setdefault(g, [])
            pos.append(len(lst))
            lst.append(i)
        dims = {g: len(v) for g, v in by_deg.items()}
        diffs = {}
        if diff is not None:
            cols = {g: [{} for _ in v] for g, v in by_deg.items()}
            for j, col in enumerate(diff.columns):
                g = degrees[j]
                for i, x in col.items():
                    if degrees[i] != g - 1:
                        raise ValueError("differential does not have degree -1")
                    cols[g][pos[j]][pos[i]] = x
            for g, c in cols.items():
                diffs[g] = Matrix(ring, dims.get(g - 1, 0), len(c), c)
        return cls(ring, dims, diffs, check=check)


def homology_dims(c):
    """Betti numbers per degree; over Z also torsion invariant factors.

    Returns ``{n: dim}`` over fields and ``{n: (rank, [torsion])}`` over Z.
    """
    ring = c.ring
    ranks = {n: rank(m) for n, m in c.diffs.items()}
    out = {}
    degs = set(c.dims)
    for n in sorted(degs):
        b = c.dims[n] - ranks.get(n, 0) - ranks.get(n + 1, 0)
        if ring.is_field:
            out[n] = b
        else:
            tors = []
            if n + 1 in c.diffs:
                tors = [f for f in smith_normal_form(c.diffs[n + 1])[0] if f > 1]
            out[n] = (b, tors)
    return out


def quotient_complex_homology(ring, degrees, diff, relations):
    """Homology of ``C / W`` where ``W`` (spanned by ``relations``) is a subcomplex."""
    q = Quotient(ring, len(degrees), relations)
    qdeg = [degrees[b] for b in q.basis]
    qd = q.induced(diff, q) if diff is not None else None
    return homology_dims(ChainComplex.from_graded(ring, qdeg, qd))
