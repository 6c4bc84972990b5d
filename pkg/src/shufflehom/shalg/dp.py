"""The graded algebra Ψ(A) and its divided powers.

``Ψ(A)_{2m} = A(m)``.  An element of Ψ(A) is a pair ``(m, v)`` with ``v`` a
sparse vector of ``A(m)``; its degree is ``2m``.  The product of ``(p, a)``
and ``(q, b)`` sums ``σ · μ_{p,q}(a, b)`` over the (p,q)-shuffles σ, and

    γ_n(x) = Σ_{σ ∈ S(p;n)} σ · μ^{(n)}(x, ..., x)

for ``x`` of level ``p ≥ 1``.

The algebra ``A`` may be an explicit :class:`ShuffleAlgebra` or a lazy
:class:`FreeComm`; the two are wrapped behind the same small interface.
"""

from __future__ import annotations

import random
from math import comb, factorial

from ..exactlin import axpy, vscale
from ..symseq import perm as P
from ..symseq.rep import ValidationError
from .algebra import ShuffleAlgebra
from .free import FreeComm


class _Explicit:
    def __init__(self, A):
        if not A.is_pointed:
            raise ValidationError("Ψ needs a pointed algebra")
        self.A = A
        self.ring = A.ring
        self.max_level = A.max_level

    def unit(self):
        return dict(self.A.unit)

    def product(self, p, q, a, b):
        if p + q > self.max_level:
            raise ValidationError(f"product at level {p + q} exceeds the truncation {self.max_level}")
        return self.A.product(p, q, a, b)

    def act(self, level, sigma, v):
        return self.A.act(level, sigma, v)

    def basis(self, level, i):
        return {i: self.ring.one}


class _Free:
    def __init__(self, fc):
        self.fc = fc
        self.ring = fc.ring
        self.max_level = None

    def unit(self):
        return {((), ()): self.ring.one}

    def product(self, p, q, a, b):
        return self.fc.product(a, b)

    def act(self, level, sigma, v):
        return self.fc.act(sigma, v)

    def basis(self, level, key):
        return {key: self.ring.one}


class DividedPowerAlgebra:
    """Ψ(A) with the symmetrized product and the operations γ_n.

    ``reps`` chooses the representatives of S(p;n): ``"lex"`` (default) or
    ``"random"`` together with ``seed``.
    """

    def __init__(self, A, reps="lex", seed=None):
        if isinstance(A, FreeComm):
            self.impl = _Free(A)
        elif isinstance(A, ShuffleAlgebra):
            self.impl = _Explicit(A)
        else:
            raise TypeError("expected a ShuffleAlgebra or FreeComm")
        self.ring = self.impl.ring
        self.reps = reps
        self.rng = random.Random(seed)
        self._rep_cache = {}

    # elements -----------------------------------------------------------------

    def one(self):
        return (0, self.impl.unit())

    def element(self, level, v):
        return (level, dict(v))

    def zero(self, level):
        return (level, {})

    def add(self, x, y):
        if x[0] != y[0]:
            raise ValueError("sums are formed within one degree")
        out = dict(x[1])
        axpy(self.ring, out, y[1], 1)
        return (x[0], out)

    def scale(self, c, x):
        return (x[0], vscale(self.ring, x[1], self.ring(c)))

    def equal(self, x, y):
        if not x[1] and not y[1]:
            return True
        return x[0] == y[0] and x[1] == y[1]

    def degree(self, x):
        return 2 * x[0]

    # operations ---------------------------------------------------------------

    def mul(self, x, y):
        (p, a), (q, b) = x, y
        if not a or not b:
            return (p + q, {})
        base = self.impl.product(p, q, a, b)
        if p == 0 or q == 0:
            return (p + q, base)
        out = {}
        for sigma in P.shuffles(p, q):
            axpy(self.ring, out, self.impl.act(p + q, sigma, base), 1)
        return (p + q, out)

    def power(self, x, n):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def orbit_reps(self, p, n):
        key = (p, n)
        if self.reps == "lex":
            if key not in self._rep_cache:
                self._rep_cache[key] = P.shuffle_orbit_reps(p, n)
            return self._rep_cache[key]
        out = []
        for s in P.shuffle_orbit_reps(p, n):
            # a random element of the orbit: reorder the blocks
            blocks = [s[i * p:(i + 1) * p] for i in range(n)]
            self.rng.shuffle(blocks)
            out.append(sum(blocks, ()))
        return out

    def gamma(self, n, x):
        """γ_n(x) for ``x`` of positive level."""
        p, a = x
        if p == 0:
            raise ValidationError("divided powers are defined on positive degrees only")
        if n == 0:
            return self.one()
        if n == 1:
            return (p, dict(a))
        base = a
        for i in range(1, n):
            base = self.impl.product(p * i, p, base, a)
        out = {}
        for sigma in self.orbit_reps(p, n):
            axpy(self.ring, out, self.impl.act(p * n, sigma, base), 1)
        return (p * n, out)


def psi(A, **kw):
    return DividedPowerAlgebra(A, **kw)


# ---------------------------------------------------------------------------
# axiom checks


class AxiomReport:
    def __init__(self):
        self.checks = []
        self.failures = []

    def record(self, name, ok, witness=None):
        self.checks.append((name, ok))
        if not ok:
            self.failures.append((name, witness))

    @property
    def passed(self):
        return not self.failures

    def __repr__(self):
        return f"AxiomReport({len(self.checks)} checks, {len(self.failures)} failures)"


def check_axioms(D, x, y=None, max_sum=5, max_comp=6, max_cartan=3, max_power=5, report=None):
    """Check n!γ_n = x^n and the product, sum, composition and Cartan axioms on ``x`` (and ``y`` of equal level).

    Returns an :class:`AxiomReport`; witnesses name the failing indices.
    """
    R = report or AxiomReport()
    ring = D.ring
    gam = {}

    def g(n, z=None, tag="x"):
        z = x if z is None else z
        k = (tag, n)
        if k not in gam:
            gam[k] = D.gamma(n, z)
        return gam[k]

    for n in range(0, max_power + 1):
        lhs = D.scale(factorial(n), g(n))
        R.record(f"{n}!γ_{n}(x) = x^{n}", D.equal(lhs, D.power(x, n)), n)
    for n in range(0, max_sum + 1):
        for m in range(0, max_sum + 1 - n):
            lhs = D.mul(g(n), g(m))
            rhs = D.scale(comb(n + m, n), g(n + m))
            R.record(f"product: γ_{n}γ_{m} = C({n + m},{n})γ_{n + m}", D.equal(lhs, rhs), (n, m))
    for n in range(1, max_comp + 1):
        for m in range(1, max_comp // n + 1):
            inner = g(m)
            lhs = D.gamma(n, inner)
            coef = factorial(n * m) // (factorial(n) * factorial(m) ** n)
            rhs = D.scale(coef, g(n * m))
            R.record(f"composition: γ_{n}(γ_{m}(x)) = {coef}·γ_{n * m}(x)", D.equal(lhs, rhs), (n, m))
    if y is not None:
        s = D.add(x, y)
        for n in range(0, max_sum + 1):
            lhs = D.gamma(n, s)
            rhs = D.zero(x[0] * n)
            for i in range(n + 1):
                rhs = D.add(rhs, D.mul(g(i), g(n - i, y, "y")))
            R.record(f"sum: γ_{n}(x+y) = Σ_i γ_i(x)γ_({n}-i)(y)", D.equal(lhs, rhs), n)
        xy = D.mul(x, y)
        for n in range(0, max_cartan + 1):
            lhs = D.gamma(n, xy)
            rhs = D.mul(D.power(x, n), g(n, y, "y"))
            R.record(f"Cartan: γ_{n}(xy) = x^{n}γ_{n}(y)", D.equal(lhs, rhs), n)
    for c in (2, 3):
        for n in range(0, max_cartan + 1):
            lhs = D.gamma(n, D.scale(c, x))
            rhs = D.scale(c ** n, g(n))
            R.record(f"scaling: γ_{n}({c}x) = {c}^{n}γ_{n}(x)", D.equal(lhs, rhs), (c, n))
    return R
