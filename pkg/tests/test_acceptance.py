"""Acceptance suite.

Each criterion prints one ``[PASS]``/``[FAIL]`` line with its wall time and
asserts both the mathematical outcome and the time budget.  Run directly
with ``python tests/test_acceptance.py`` for the summary lines alone.
"""

from __future__ import annotations

import random
import sys
import time
import warnings
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import free_comm_table, module_table, suspended  # noqa: E402
from shufflehom.barhom import (acyclicity_check, aq_homology, bar, bar_homology, classical_free_on_disc,  # noqa: E402
                               cotriple_resolution, disc, f_r, harrison, hodge_check, iterated_bar_homology,
                               sphere)
from shufflehom.doldkan import (check_gamma_f_r, check_gamma_n, check_n_gamma, check_symmetry_square,  # noqa: E402
                                ez_shuffle_map, gamma_functor, l_n_free, random_chain_seq, random_simplicial)
from shufflehom.exactlin import Ring  # noqa: E402
from shufflehom.shalg import (FreeComm, DividedPowerAlgebra, aug_ideal, check_axioms, diamond,  # noqa: E402
                              exterior_algebra, free_comm, gr_sigma, sign_sequence, sym_of_module,
                              trivial_algebra, truncated_polynomial)
from shufflehom.symseq.odot import norm_map, odot  # noqa: E402
from shufflehom.symseq.rep import concentrated, random_reduced_seq, trivial_rep, unit_seq  # noqa: E402

Q, F2, F3 = (Ring.parse(r) for r in ("Q", "F2", "F3"))
_printer = print


@contextmanager
def criterion(number, title, budget):
    """Times the body; prints the verdict line and enforces the budget."""
    state = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        ok = state["ok"] and elapsed <= budget
        tag = "PASS" if ok else "FAIL"
        extra = f"  {state['detail']}" if state["detail"] else ""
        _printer(f"[{tag}] criterion {number}: {title} ({elapsed:.1f}s / {budget}s){extra}")
    assert state["ok"], state["detail"]
    assert elapsed <= budget, f"took {elapsed:.1f}s, budget {budget}s"


@pytest.fixture(autouse=True)
def _show(capsys):
    global _printer

    def emit(line):
        with capsys.disabled():
            print("\n" + line)

    _printer = emit
    yield
    _printer = print


def trivial_on_point(ring, L):
    return trivial_algebra(concentrated(trivial_rep(ring, 1), L))


def sign_truncated(ring, L):
    return aug_ideal(sign_sequence(truncated_polynomial(ring, L, degree=2), L))


# 1 ------------------------------------------------------------------------------


def test_criterion_1_norm_isomorphism():
    with criterion(1, "norm map iso on 50 random reduced sequences per ring", 60) as st:
        bad = []
        rng = random.Random(2024)
        count = 0
        for ring in (Q, F2, F3):
            for _ in range(50):
                X = random_reduced_seq(ring, 6, rng=rng)
                for n in range(1, 5):
                    if not norm_map(X, n, 6).verdict:
                        bad.append((ring.name, n))
                count += 1
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            counter = norm_map(unit_seq(F2, 2), 2)
        st["ok"] = not bad and not counter.verdict
        st["detail"] = f"{count} sequences, failures={bad[:3]}, unit counterexample rejected={not counter.verdict}"


# 2 ------------------------------------------------------------------------------


def _dp_cases(ring):
    fc = FreeComm(f_r(sphere(ring, 0), 1, 6), 6, unital=True)
    g = [k for k in fc.keys(1) if len(k[1]) == 1][0]
    yield "C(F1k)", fc, (1, {g: ring.one}), (1, {g: ring(3)})
    fc2 = FreeComm(f_r(sphere(ring, 0), 2, 12), 12, unital=True)
    gs = [k for k in fc2.keys(2) if len(k[1]) == 1]
    yield "C(F2S0)", fc2, (2, {gs[0]: ring.one}), (2, {gs[1]: ring.one})
    S = sym_of_module(ring, 1, 6)
    yield "Psi(Sym k)", S, (1, {0: ring.one}), (1, {0: ring(3)})
    S2 = sym_of_module(ring, 2, 6)
    yield "Psi(Sym k^2)", S2, (1, {0: ring.one}), (1, {1: ring.one})
    G = gr_sigma(truncated_polynomial(ring, 6, degree=0), 6)
    yield "gr(k[t]/t^7)", G, (1, {0: ring.one}), (1, {0: ring(2)})


def test_criterion_2_divided_powers():
    with criterion(2, "divided power axioms, exact equality", 120) as st:
        total, bad = 0, []
        for ring in (Q, F2):
            for name, A, x, y in _dp_cases(ring):
                rep = check_axioms(DividedPowerAlgebra(A), x, y, max_sum=5, max_comp=6, max_cartan=3,
                                   max_power=5)
                total += len(rep.checks)
                bad += [(ring.name, name, f) for f in rep.failures]
        st["ok"] = not bad
        st["detail"] = f"{total} identities, failures={bad[:3]}"


# 3 ------------------------------------------------------------------------------

GENS = {
    "F1k": (lambda R, L: f_r(sphere(R, 0), 1, L), {1: [0]}),
    "F2S0": (lambda R, L: f_r(sphere(R, 0), 2, L), {2: [0, 0]}),
    "F1S1": (lambda R, L: f_r(sphere(R, 1), 1, L), {1: [1]}),
}


def test_criterion_3_harrison_of_free():
    with criterion(3, "Harr(C(M)) = ΣM for three generators, levels ≤ 4", 300) as st:
        bad = []
        for ring in (Q, F2):
            for name, (build, gens) in GENS.items():
                got = harrison(free_comm(build(ring, 4)))
                if got != module_table(suspended(gens)):
                    bad.append((ring.name, name, got))
        st["ok"] = not bad
        st["detail"] = f"mismatches={bad}"


# 4 ------------------------------------------------------------------------------


def test_criterion_4_bar_of_free():
    with criterion(4, "H B^n C(F1k) = C(Σ^n F1k) over F2", 300) as st:
        gens = {1: [0]}
        one = bar_homology(free_comm(f_r(sphere(F2, 0), 1, 3)))
        two = iterated_bar_homology(free_comm(f_r(sphere(F2, 0), 1, 2)), 2)
        ok1 = one == free_comm_table(suspended(gens, 1), 3)
        ok2 = two == free_comm_table(suspended(gens, 2), 2)
        st["ok"] = ok1 and ok2
        st["detail"] = f"n=1 {sorted(one.items())}, n=2 {sorted(two.items())}"


# 5 ------------------------------------------------------------------------------


def test_criterion_5_aq_versus_harrison():
    with criterion(5, "AQ_r = Harr_{r+1} for r ≤ 1, AQ_{1,2}(free) = 0", 600) as st:
        bad = []
        for ring in (Q, F2):
            samples = {
                "C(F1k)": free_comm(f_r(sphere(ring, 0), 1, 3)),
                "C(F1S1)": free_comm(f_r(sphere(ring, 1), 1, 3)),
                "trivial": trivial_on_point(ring, 3),
                "sign k[t]": sign_truncated(ring, 3),
            }
            for name, A in samples.items():
                aq = aq_homology(A, 1)
                harr = {(l, n - 1): v for (l, n), v in harrison(A).items() if n - 1 <= 1}
                if aq != harr:
                    bad.append((ring.name, name, aq, harr))
            # generators in degree 0, so total degree is the simplicial degree
            for name, A in (("C(F1k)", samples["C(F1k)"]), ("C(F2S0)", free_comm(f_r(sphere(ring, 0), 2, 3)))):
                high = {k: v for k, v in aq_homology(A, 2).items() if k[1] in (1, 2)}
                if high:
                    bad.append((ring.name, name, "higher AQ", high))
        st["ok"] = not bad
        st["detail"] = f"mismatches={bad[:2]}"


# 6 ------------------------------------------------------------------------------


def test_criterion_6_hodge():
    with criterion(6, "H^E1_n = Σ AQ^(q) for n ≤ 2, levels ≤ 3, over F2", 600) as st:
        bad = []
        for name, A in (("trivial", trivial_on_point(F2, 3)), ("sign k[t]", sign_truncated(F2, 3)),
                        ("C(F1k)", free_comm(f_r(sphere(F2, 0), 1, 3)))):
            rep = hodge_check(A, 2)
            if not rep.passed:
                bad.append((name, rep.mismatches))
        st["ok"] = not bad
        st["detail"] = f"mismatches={bad}"


# 7 ------------------------------------------------------------------------------


def test_criterion_7_acyclicity():
    with criterion(7, "H C(F^r D^n) = I, plus the classical contrast", 120) as st:
        bad = []
        for ring in (Q, F2, F3):
            for r in (1, 2):
                for n in (1, 2):
                    v = acyclicity_check(r, n, ring, 4)
                    if not v.passed:
                        bad.append((ring.name, r, n, v.witness))
        classical = classical_free_on_disc(2, 2, 8)
        contrast = any(d > 0 for d in classical)
        st["ok"] = not bad and contrast
        st["detail"] = f"failures={bad}, classical F2 Betti={classical}"


# 8 ------------------------------------------------------------------------------


def test_criterion_8_dold_kan():
    with criterion(8, "NΓ/ΓN at D=5, shuffle map on 20 pairs, Γ F^r = F^r Γ", 60) as st:
        bad = []
        rng = random.Random(8)
        for ring in (Q, F2, F3):
            for _ in range(2):
                C = random_chain_seq(ring, 3, rng)
                bad += [("NΓ", ring.name, b) for b in check_n_gamma(C, 5)]
                X = random_simplicial(ring, 3, 5, rng=rng)
                bad += [("ΓN", ring.name, b) for b in check_gamma_n(X)]
        pairs = 0
        for ring in (Q, F2, F3, Q, F3):
            for _ in range(4):
                A = random_simplicial(ring, 2, 3, rng=rng)
                B = random_simplicial(ring, 2, 3, rng=rng)
                s = ez_shuffle_map(A, B)
                bad += [("chain", l) for l in s.check_chain_map()]
                bad += [("equivariant", l) for l in s.check_equivariant()]
                bad += [("square", l) for l in check_symmetry_square(A, B)]
                pairs += 1
        for ring in (Q, F2):
            for r in (1, 2):
                d = disc(ring, 2)
                bad += [("F^r", r, b) for b in check_gamma_f_r(ring, d.degrees, d.diff, r, 4)]
        st["ok"] = not bad and pairs >= 20
        st["detail"] = f"{pairs} pairs, failures={bad[:3]}"


# 9 ------------------------------------------------------------------------------


def _constructed_algebras():
    for ring in (Q, F2, F3):
        for build, _ in GENS.values():
            yield free_comm(build(ring, 4))
            yield FreeComm(build(ring, 4), 4, unital=True).materialize()
        yield sym_of_module(ring, 2, 4)
        yield sign_sequence(exterior_algebra(ring, 2), 2)
        yield sign_truncated(ring, 4)
        yield gr_sigma(truncated_polynomial(ring, 3, degree=0), 4)
        yield trivial_on_point(ring, 4)
        yield diamond(trivial_on_point(ring, 3), free_comm(f_r(sphere(ring, 0), 1, 3)))
        yield bar(free_comm(f_r(sphere(ring, 0), 1, 3))).materialize()


def test_criterion_9_structural_validators():
    with criterion(9, "validators pass on every constructed object; seeded suites reproduce", 600) as st:
        bad, count = [], 0
        for A in _constructed_algebras():
            failures = A.check()
            count += 1
            if failures:
                bad.append((A.name, failures[:1]))
        rng = random.Random(9)
        for ring in (Q, F2, F3):
            X, Y = random_reduced_seq(ring, 4, rng=rng), random_reduced_seq(ring, 4, rng=rng)
            odot(X, Y).validate()
            G = gamma_functor(random_chain_seq(ring, 3, rng), 4)
            G.validate()
            res = cotriple_resolution(trivial_on_point(ring, 3), 3)
            if res.check_identities() or not res.check_equivariance():
                bad.append(("cotriple", ring.name))
            free = l_n_free(f_r(disc(ring, 1), 1, 3), 3)
            free.simplicial.validate()
            if free.check_algebra_maps():
                bad.append(("L_N", ring.name))
            count += 5
        first = random_reduced_seq(F3, 5, seed=77)
        again = random_reduced_seq(F3, 5, seed=77)
        reproducible = first.dims() == again.dims() and all(
            g == h for l in range(6) if first.dim(l) for g, h in zip(first.rep(l).gens, again.rep(l).gens))
        st["ok"] = not bad and reproducible
        st["detail"] = f"{count} objects, failures={bad[:3]}, seeded reproducible={reproducible}"


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
