"""Independent reference computations used as test oracles.

Nothing here imports the package; every value is obtained by brute force
or by a closed formula.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial


def set_partitions(elems):
    elems = list(elems)
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def free_comm_table(gens, max_level):
    """Betti/dimension table of the free commutative algebra on ``gens``.

    ``gens`` maps a level to the list of degrees of a basis of M(level);
    M must have zero differential.  Each set partition of {1..ℓ} contributes
    one basis vector per choice of a generator for every block.
    """
    out = {}
    for l in range(1, max_level + 1):
        for part in set_partitions(range(l)):
            choices = [gens.get(len(b), []) for b in part]
            for pick in product(*choices):
                key = (l, sum(pick))
                out[key] = out.get(key, 0) + 1
    return out


def suspended(gens, s=1):
    return {l: [d + s for d in ds] for l, ds in gens.items()}


def module_table(gens):
    out = {}
    for l, ds in gens.items():
        for d in ds:
            out[(l, d)] = out.get((l, d), 0) + 1
    return out


def stirling1(n, k):
    """Unsigned Stirling numbers of the first kind."""
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            table[i][j] = table[i - 1][j - 1] + (i - 1) * table[i - 1][j]
    return table[n][k]


def fraction_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def image_size_mod_p(rows, p):
    """Number of vectors in the column space over F_p, by enumeration."""
    ncols = len(rows[0]) if rows else 0
    seen = set()
    for x in product(range(p), repeat=ncols):
        seen.add(tuple(sum(r[j] * x[j] for j in range(ncols)) % p for r in rows))
    return len(seen)


def all_shuffles(p, q):
    """(p,q)-shuffles by filtering Σ_{p+q}; one-line notation, 1-based."""
    out = []
    for s in permutations(range(1, p + q + 1)):
        if list(s[:p]) == sorted(s[:p]) and list(s[p:]) == sorted(s[p:]):
            out.append(s)
    return out


def lie_dim(n):
    return factorial(n - 1)


def surjection_count(n, m):
    """Monotone surjections [n] -> [m]."""
    from math import comb
    return comb(n, m) if n >= m else 0
