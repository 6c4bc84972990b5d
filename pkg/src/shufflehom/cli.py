"""Command-line driver.

Exit codes: 0 when every check passed, 1 when a mathematical check failed
(a witness is printed), 2 for input or usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field

from . import serialize as S
from .exactlin import Ring, RingError
from .symseq.rep import ValidationError

PASS, FAIL, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    inputs: list = field(default_factory=list)
    ring: Ring = None
    max_level: int = None
    max_degree: int = None
    p_max: int = None
    q: int = None
    r: int = None
    n: int = None
    seed: int = 0
    fmt: str = "table"
    extra: dict = field(default_factory=dict)

    def caps(self, **more):
        out = {"ring": self.ring.name}
        for k in ("max_level", "max_degree", "p_max", "q", "r", "n", "seed"):
            v = getattr(self, k)
            if v is not None and (k != "seed" or self.command in _SEEDED):
                out[k] = v
        out.update(more)
        return out


_SEEDED = {"norm-check", "doldkan-check", "validate"}


# ---------------------------------------------------------------------------
# inputs


def builtin_sequence(name, ring, L):
    from .barhom.discs import disc, f_r, sphere
    table = {
        "F1k": lambda: f_r(sphere(ring, 0), 1, L),
        "F2S0": lambda: f_r(sphere(ring, 0), 2, L),
        "F1S1": lambda: f_r(sphere(ring, 1), 1, L),
        "F1D1": lambda: f_r(disc(ring, 1), 1, L),
    }
    if name not in table:
        raise InputError(f"unknown built-in sequence {name!r}; choose from {sorted(table)}")
    return table[name]()


def builtin_algebra(name, ring, L):
    """``free-F1k``, ``free-F2S0``, ``free-F1S1``, ``trivial-F1k``, ``trunc-sign``."""
    from .shalg.algebra import aug_ideal, trivial_algebra
    from .shalg.examples import sign_sequence, truncated_polynomial
    from .shalg.free import free_comm
    if name.startswith("free-"):
        return free_comm(builtin_sequence(name[5:], ring, L))
    if name.startswith("trivial-"):
        return trivial_algebra(builtin_sequence(name[8:], ring, L))
    if name == "trunc-sign":
        return aug_ideal(sign_sequence(truncated_polynomial(ring, 2), L))
    raise InputError(f"unknown built-in algebra {name!r}")


def load_algebra(job, lazy=False):
    if not job.inputs:
        raise InputError("an algebra is required: give a file or builtin:NAME")
    src = job.inputs[0]
    if src.startswith("builtin:"):
        if job.max_level is None:
            raise InputError("built-in algebras need an explicit --max-level")
        name = src[8:]
        if lazy and name.startswith("free-"):
            from .shalg.free import FreeComm
            return FreeComm(builtin_sequence(name[5:], job.ring, job.max_level), job.max_level)
        return builtin_algebra(name, job.ring, job.max_level)
    doc = S.load(src)
    A = S.algebra_from_doc(doc)
    if job.max_level is not None and job.max_level > A.max_level:
        raise InputError(f"--max-level {job.max_level} exceeds the document's truncation {A.max_level}")
    job.ring = A.ring
    return A


def load_sequence(job):
    src = job.inputs[0]
    if src.startswith("builtin:"):
        if job.max_level is None:
            raise InputError("built-in sequences need an explicit --max-level")
        return builtin_sequence(src[8:], job.ring, job.max_level)
    X = S.symseq_from_doc(S.load(src))
    job.ring = X.ring
    return X


# ---------------------------------------------------------------------------
# output


class Output:
    def __init__(self, job, stream):
        self.job = job
        self.stream = stream
        self.doc = {"command": job.command, "caps": job.caps(), "results": []}

    def table(self, title, table, levels, **caps):
        if self.job.fmt == "table":
            print(S.format_table(table, levels, self.job.caps(**caps), title), file=self.stream)
            print(file=self.stream)
        else:
            self.doc["results"].append(S.table_to_doc(table, self.job.caps(**caps), title))

    def verdict(self, name, passed, witness=None, **caps):
        if self.job.fmt == "table":
            line = f"[{'PASS' if passed else 'FAIL'}] {name}"
            if caps:
                line += "  (" + ", ".join(f"{k}={v}" for k, v in caps.items()) + ")"
            print(line, file=self.stream)
            if not passed and witness is not None:
                print(f"       witness: {witness}", file=self.stream)
        else:
            self.doc["results"].append({"check": name, "passed": bool(passed),
                                        "witness": None if passed else repr(witness), "caps": caps})

    def close(self):
        if self.job.fmt == "json":
            print(S.dumps(self.doc), file=self.stream)


def _levels(L):
    return range(1, L + 1)


# ---------------------------------------------------------------------------
# commands


def cmd_norm_check(job, out):
    from .symseq.odot import norm_map
    from .symseq.rep import random_reduced_seq
    n_max = job.n if job.n is not None else 3
    L = job.max_level if job.max_level is not None else 4
    if job.inputs:
        X = load_sequence(job)
        if not X.is_reduced():
            raise InputError("input is not reduced (level 0 is nonzero); the norm map is only "
                             "claimed to be an isomorphism for reduced sequences")
        seqs = [("input", X)]
        L = min(L, X.max_level) if job.max_level is not None else X.max_level
    else:
        rng = random.Random(job.seed)
        count = job.extra.get("count") or 10
        seqs = [(f"random#{i}", random_reduced_seq(job.ring, L, rng=rng)) for i in range(count)]
    ok = True
    for label, X in seqs:
        for n in range(1, n_max + 1):
            res = norm_map(X, n, L)
            ok &= bool(res.verdict)
            if not res.verdict:
                out.verdict(f"norm map iso for {label}, n={n}", False, res.witness, ring=job.ring.name)
    out.verdict(f"norm map Σ_n-coinvariants -> invariants is an isomorphism ({len(seqs)} sequence{'s' if len(seqs) != 1 else ''}, n ≤ {n_max})",
                ok, max_level=L)
    return PASS if ok else FAIL


def cmd_divided_powers(job, out):
    from .shalg.algebra import corrupt
    from .shalg.dp import DividedPowerAlgebra, check_axioms
    from .shalg.free import FreeComm
    from .shalg.algebra import adjoin_unit
    A = load_algebra(job, lazy=True)
    if not isinstance(A, FreeComm) and not A.is_pointed:
        A = adjoin_unit(A)
    if "corrupt" in job.extra and job.extra["corrupt"]:
        if job.ring.kind == "F" and job.ring.p == 2:
            raise InputError("--corrupt scales by 2, which is zero over F2; pick another ring")
        if isinstance(A, FreeComm):
            A = FreeComm(A.V, A.max_level, unital=True).materialize()
        p, q = job.extra["corrupt"]
        A = corrupt(A, p, q)
    n = job.n if job.n is not None else 5
    if isinstance(A, FreeComm):
        p = min(l for l in range(1, A.max_level + 1) if A.V.dim(l))
        gens = [k for k in A.keys(p) if len(k[1]) == 1]
        x = (p, {gens[0]: A.ring.one})
        y = (p, {gens[-1]: A.ring(2)}) if len(gens) == 1 else (p, {gens[1]: A.ring.one})
        caps_n = n
    else:
        p = min(l for l in range(1, A.max_level + 1) if A.dim(l))
        x = (p, {0: A.ring.one})
        y = (p, {A.dim(p) - 1: A.ring(2) if A.dim(p) == 1 else A.ring.one})
        caps_n = min(n, A.max_level // p)
    D = DividedPowerAlgebra(A, reps=job.extra.get("reps", "lex"), seed=job.seed)
    cartan = min(3, caps_n) if isinstance(A, FreeComm) else min(3, A.max_level // (2 * p))
    rep = check_axioms(D, x, y, max_sum=caps_n, max_comp=min(6, caps_n),
                       max_cartan=cartan, max_power=caps_n)
    for name, witness in rep.failures:
        out.verdict(name, False, witness)
    out.verdict(f"divided power axioms ({len(rep.checks)} identities)", rep.passed, level=p, n=caps_n)
    return PASS if rep.passed else FAIL


def cmd_harrison(job, out):
    from .barhom.bar import harrison
    A = load_algebra(job)
    L = job.max_level or A.max_level
    out.table("Harrison homology", harrison(A, L), _levels(L), max_level=L)
    return PASS


def cmd_bar(job, out):
    from .barhom.bar import bar_homology, iterated_bar_homology
    A = load_algebra(job)
    L = job.max_level or A.max_level
    n = job.n or 1
    table = bar_homology(A, L) if n == 1 else iterated_bar_homology(A, n, L)
    out.table(f"H_*(B^{n}(A))", table, _levels(L), max_level=L)
    return PASS


def cmd_e1(job, out):
    from .barhom.bar import e1_homology, en_homology
    A = load_algebra(job)
    L = job.max_level or A.max_level
    n = job.n or 1
    table = e1_homology(A, L) if n == 1 else en_homology(A, n, L)
    out.table(f"E_{n}-homology", table, _levels(L), max_level=L)
    return PASS


def cmd_aq(job, out):
    from .barhom.cotriple import aq_homology, aq_weight_homology
    A = load_algebra(job)
    L = job.max_level or A.max_level
    p_max = job.p_max if job.p_max is not None else 1
    if job.q:
        table = aq_weight_homology(A, job.q, p_max, L)
        out.table(f"AQ^({job.q})", table, _levels(L), max_level=L, t_max=p_max + 1)
    else:
        table = aq_homology(A, p_max, L)
        out.table("André–Quillen homology", table, _levels(L), max_level=L, t_max=p_max + 1)
    return PASS


def cmd_hodge(job, out):
    from .barhom.cotriple import hodge_check
    A = load_algebra(job)
    L = job.max_level or A.max_level
    n = job.n if job.n is not None else 2
    rep = hodge_check(A, n, L)
    out.table("E_1-homology", rep.lhs, _levels(L), max_level=L)
    for q, w in sorted(rep.weights.items()):
        if w:
            out.table(f"AQ^({q})", w, _levels(L), max_level=L)
    out.verdict("dim H^E1_n = Σ_q dim AQ^(q)_n", rep.passed, rep.mismatches, n_max=n, max_level=L)
    return PASS if rep.passed else FAIL


def cmd_acyclicity(job, out):
    from .barhom.checks import acyclicity_check, classical_free_on_disc
    r = job.r if job.r is not None else 1
    n = job.n if job.n is not None else 1
    L = job.max_level if job.max_level is not None else 4
    if job.extra.get("classical") and (job.ring.kind != "F" or n % 2):
        raise InputError("the classical contrast needs a prime field and even n")
    try:
        v = acyclicity_check(r, n, job.ring, L)
    except ValidationError as e:
        raise InputError(str(e)) from e
    positive = {k: b for k, b in v.table.items() if k[0] >= 1}
    out.table(f"H_*(C(F^{r} D^{n})) at positive levels", positive, _levels(L), max_level=L)
    out.verdict("H_*(C(F^r D^n)) = I", v.passed, v.witness, r=r, n=n, max_level=L)
    if job.extra.get("classical"):
        h = classical_free_on_disc(job.ring.p, n, job.max_degree or 3 * n)
        out.table("classical level-0 free algebra on the disc", {(0, d): b for d, b in h.items()}, [0])
    return PASS if v.passed else FAIL


def cmd_doldkan(job, out):
    from .barhom.discs import f_r, disc
    from .doldkan import (check_gamma_f_r, check_gamma_n, check_n_gamma, check_symmetry_square,
                          ez_shuffle_map, gamma_functor, random_chain_seq)
    from .exactlin import Matrix
    D = job.max_degree if job.max_degree is not None else 5
    ring = job.ring
    ok = True
    C = load_sequence(job) if job.inputs else f_r(disc(ring, 1), 1, job.max_level or 1)
    bad = check_n_gamma(C, D)
    out.verdict("N Γ C ≅ C", not bad, bad, D=D)
    ok &= not bad
    bad = check_gamma_n(gamma_functor(C, D))
    out.verdict("Γ N X ≅ X", not bad, bad, D=D)
    ok &= not bad
    pairs = job.extra.get("pairs", 0)
    if pairs:
        rng = random.Random(job.seed)
        from .symseq.rep import SymSeq, random_chain_rep
        failures = []
        for i in range(pairs):
            A, B = [gamma_functor(SymSeq(ring, 2, {l: random_chain_rep(ring, l, rng, max_dim=2, degrees=(0, 1, 2))
                                                    for l in (1, 2)}), min(D, 4)) for _ in range(2)]
            s = ez_shuffle_map(A, B, 4)
            if s.check_chain_map() or s.check_equivariant() or check_symmetry_square(A, B, 4):
                failures.append(i)
        out.verdict(f"shuffle map is an equivariant chain map with commuting symmetry square ({pairs} pairs)",
                    not failures, failures)
        ok &= not failures
    bad = check_gamma_f_r(ring, [1, 0], Matrix(ring, 2, 2, [{1: ring.one}, {}]), job.r or 2, D)
    out.verdict("Γ(F^r D^1) = F^r Γ(D^1)", not bad, bad)
    ok &= not bad
    return PASS if ok else FAIL


def cmd_gr(job, out):
    from .barhom.checks import associated_graded_free
    if job.inputs and not job.inputs[0].startswith("builtin:"):
        doc = S.load(job.inputs[0])
        if doc.get("type") == "algebra":
            A = S.algebra_from_doc(doc)
            v = associated_graded_free(None, job.max_level, algebra=A)
        else:
            v = associated_graded_free(S.symseq_from_doc(doc), job.max_level)
    else:
        M = load_sequence(job) if job.inputs else builtin_sequence("F1k", job.ring, job.max_level or 4)
        v = associated_graded_free(M, job.max_level)
    out.verdict("ξ: C(m/m²) -> gr is bijective", v.passed, v.witness, **v.caps)
    return PASS if v.passed else FAIL


def cmd_validate(job, out):
    if not job.inputs:
        raise InputError("validate needs an input document")
    ok = True
    for path in job.inputs:
        doc = S.load(path)
        kind = doc.get("type")
        try:
            if kind == "symseq":
                S.symseq_from_doc(doc)
                failures = []
            elif kind == "algebra":
                A = S.algebra_from_doc(doc)
                failures = A.check(commutative=not doc.get("associative_only"))
            elif kind == "simplicial":
                X = S.simplicial_from_doc(doc)
                failures = X.check_identities()
                if not X.check_equivariance():
                    failures.append("not equivariant")
            else:
                raise InputError(f"{path}: unknown document type {kind!r}")
        except S.DocumentError as e:
            failures = [str(e)]
        out.verdict(f"{path} ({kind})", not failures, failures)
        ok &= not failures
    return PASS if ok else FAIL


COMMANDS = {
    "norm-check": cmd_norm_check,
    "divided-powers": cmd_divided_powers,
    "harrison": cmd_harrison,
    "aq": cmd_aq,
    "bar-homology": cmd_bar,
    "e1": cmd_e1,
    "hodge": cmd_hodge,
    "acyclicity": cmd_acyclicity,
    "doldkan-check": cmd_doldkan,
    "gr-check": cmd_gr,
    "validate": cmd_validate,
}


def _positive(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("caps must be non-negative")
    return v


def build_parser():
    ap = argparse.ArgumentParser(prog="shufflehom", description="Homology of commutative shuffle algebras.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("inputs", nargs="*", help="JSON document(s) or builtin:NAME")
        p.add_argument("--ring", default="F2")
        p.add_argument("--max-level", type=_positive)
        p.add_argument("--max-degree", type=_positive)
        p.add_argument("--p-max", type=_positive)
        p.add_argument("--q", type=_positive)
        p.add_argument("--r", type=_positive)
        p.add_argument("--n", type=_positive)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["table", "json"], default="table")
        if name == "norm-check":
            p.add_argument("--count", type=_positive, default=10, help="number of random sequences")
        if name == "divided-powers":
            p.add_argument("--corrupt", help="scale μ_{p,q} by 2, e.g. 1,1 (negative control; needs 2 ≠ 0)")
            p.add_argument("--reps", choices=["lex", "random"], default="lex")
        if name == "acyclicity":
            p.add_argument("--classical", action="store_true", help="also print the level-0 contrast")
        if name == "doldkan-check":
            p.add_argument("--pairs", type=_positive, default=0, help="random pairs for the shuffle map")
    return ap


def make_job(args):
    try:
        ring = Ring.parse(args.ring)
    except RingError as e:
        raise InputError(str(e)) from e
    extra = {}
    for k in ("count", "reps", "classical", "pairs"):
        if hasattr(args, k):
            extra[k] = getattr(args, k)
    if getattr(args, "corrupt", None):
        try:
            extra["corrupt"] = tuple(int(t) for t in args.corrupt.split(","))
        except ValueError as e:
            raise InputError("--corrupt expects P,Q") from e
    return JobSpec(args.command, list(args.inputs), ring, args.max_level, args.max_degree, args.p_max,
                   args.q, args.r, args.n, args.seed, args.format, extra)


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else PASS
    try:
        job = make_job(args)
        out = Output(job, stream)
        code = COMMANDS[job.command](job, out)
        out.close()
        return code
    except (InputError, S.DocumentError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except (ValidationError, RingError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return INPUT_ERROR


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
