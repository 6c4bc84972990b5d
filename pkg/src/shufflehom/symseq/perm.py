"""Permutations in one-line notation and shuffle combinatorics.

A permutation of ``{1..n}`` is a tuple ``(σ(1), ..., σ(n))``.  Composition
follows functions: ``compose(s, t)(i) = s(t(i))``.

Shuffles are also handled through *label words*: a word ``w`` of length
``n`` whose entry at position ``k`` names the block whose element lands on
``k``.  The shuffle with label word ``w`` sends the elements of block ``i``,
in order, onto the positions carrying label ``i``.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb, factorial


def identity(n):
    return tuple(range(1, n + 1))


def is_permutation(p):
    return sorted(p) == list(range(1, len(p) + 1))


def compose(s, t):
    return tuple(s[i - 1] for i in t)


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return tuple(out)


def sign(p):
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def transposition(n, k):
    """The adjacent transposition ``s_k`` swapping ``k`` and ``k+1`` in Σ_n."""
    p = list(range(1, n + 1))
    p[k - 1], p[k] = p[k], p[k - 1]
    return tuple(p)


def adjacent_word(p):
    """Indices ``k1, ..., km`` with ``p = s_{km} ∘ ... ∘ s_{k1}``.

    Obtained by bubble sort: while ``p`` has a descent at ``k``, record ``k``
    and replace ``p`` by ``p ∘ s_k``.  To act by ``p`` on a vector apply
    ``s_{k1}`` first.  The word has minimal length.
    """
    p = list(p)
    word = []
    n = len(p)
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if p[k] > p[k + 1]:
                p[k], p[k + 1] = p[k + 1], p[k]
                word.append(k + 1)
                changed = True
    return word


def direct_sum(a, b):
    """Block-diagonal embedding ``a ⊕ b`` into Σ_{p+q}."""
    p = len(a)
    return tuple(a) + tuple(x + p for x in b)


def chi(q, p):
    """The block swap χ(q,p) ∈ Σ_{q+p}: ``i ↦ i+p`` for ``i ≤ q``, else ``i-q``."""
    return tuple(i + p if i <= q else i - q for i in range(1, q + p + 1))


def block_permutation(sigma, p):
    """σ acting on ``n`` consecutive blocks of size ``p``."""
    out = []
    for b in sigma:
        out.extend(range((b - 1) * p + 1, b * p + 1))
    return tuple(out)


def shuffles(p, q):
    """All (p,q)-shuffles, sorted lexicographically by one-line notation."""
    n = p + q
    out = []
    for first in combinations(range(1, n + 1), p):
        s = set(first)
        out.append(first + tuple(i for i in range(1, n + 1) if i not in s))
    out.sort()
    return out


def _ordered_partitions(elems, sizes):
    if not sizes:
        yield ()
        return
    for first in combinations(elems, sizes[0]):
        s = set(first)
        rest = [e for e in elems if e not in s]
        for tail in _ordered_partitions(rest, sizes[1:]):
            yield (first,) + tail


def multi_shuffles_sizes(sizes):
    """Shuffles for an arbitrary composition ``sizes``, sorted lexicographically."""
    n = sum(sizes)
    out = [sum(blocks, ()) for blocks in _ordered_partitions(list(range(1, n + 1)), list(sizes))]
    out.sort()
    return out


def multi_shuffles(p, n):
    """Sh(p;n): permutations of Σ_{pn} increasing on each of the ``n`` p-blocks."""
    if n < 1:
        raise ValueError("n must be positive")
    return multi_shuffles_sizes([p] * n)


def _orbit_rep(sigma, p, n):
    blocks = [sigma[i * p:(i + 1) * p] for i in range(n)]
    blocks.sort()
    return sum(blocks, ())


def shuffle_orbit_reps(p, n):
    """S(p;n): the lexicographically least element of each Σ_n-orbit in Sh(p;n).

    Σ_n acts by precomposition with block permutations, i.e. by reordering
    the blocks; the least element lists the blocks by increasing minimum.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if p == 0:
        return [()]
    total = p * n
    out = []

    def rec(remaining, acc):
        if not remaining:
            out.append(acc)
            return
        first = remaining[0]
        for rest in combinations(remaining[1:], p - 1):
            blk = (first,) + rest
            s = set(blk)
            rec([e for e in remaining if e not in s], acc + blk)

    rec(list(range(1, total + 1)), ())
    out.sort()
    return out


def orbit_of(sigma, p, n):
    """All elements of the Σ_n-orbit of ``sigma`` in Sh(p;n)."""
    return sorted({compose(sigma, block_permutation(t, p)) for t in permutations(range(1, n + 1))})


def standardize(seq):
    """The permutation with the same relative order as ``seq``."""
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    out = [0] * len(seq)
    for rank, i in enumerate(order, 1):
        out[i] = rank
    return tuple(out)


def coset_decompose(tau, p, q):
    """Write ``tau = σ ∘ (α ⊕ β)`` with σ a (p,q)-shuffle."""
    if len(tau) != p + q:
        raise ValueError("length mismatch")
    first, second = tau[:p], tau[p:]
    sigma = tuple(sorted(first)) + tuple(sorted(second))
    return sigma, standardize(first), standardize(second)


def multi_coset_decompose(tau, sizes):
    """``tau = σ ∘ (α_1 ⊕ ... ⊕ α_s)`` with σ a shuffle for ``sizes``."""
    sigma = []
    alphas = []
    pos = 0
    for s in sizes:
        blk = tau[pos:pos + s]
        sigma.extend(sorted(blk))
        alphas.append(standardize(blk))
        pos += s
    return tuple(sigma), alphas


# ---------------------------------------------------------------------------
# label words


def word_to_shuffle(w, nblocks=None):
    """One-line notation of the shuffle with label word ``w``.

    With empty blocks allowed, ``nblocks`` fixes the number of blocks.
    """
    if nblocks is None:
        nblocks = max(w) + 1 if w else 0
    out = []
    for b in range(nblocks):
        out.extend(k + 1 for k, x in enumerate(w) if x == b)
    return tuple(out)


def shuffle_to_word(sigma, sizes):
    w = [0] * len(sigma)
    pos = 0
    for b, s in enumerate(sizes):
        for i in range(pos, pos + s):
            w[sigma[i] - 1] = b
        pos += s
    return tuple(w)


def words_for_sizes(sizes):
    """Label words of all shuffles for ``sizes``, in shuffle lex order."""
    return [shuffle_to_word(s, sizes) for s in multi_shuffles_sizes(sizes)]


def restricted_growth_words(n):
    """Restricted-growth words of length ``n`` (labels appear in order of first use)."""
    out = []

    def rec(acc, m):
        if len(acc) == n:
            out.append(tuple(acc))
            return
        for x in range(m + 1):
            rec(acc + [x], max(m, x + 1))

    rec([], 0)
    return out


def compositions(total, parts, minimum=1):
    """Compositions of ``total`` into ``parts`` entries each ``>= minimum``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def count_shuffles(sizes):
    n = sum(sizes)
    out = factorial(n)
    for s in sizes:
        out //= factorial(s)
    return out


def binomial(n, k):
    return comb(n, k)
