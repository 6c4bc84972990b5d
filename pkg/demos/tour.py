"""A short tour: norm map, divided powers, Harrison, Hodge weights, Dold–Kan.

Run with ``python demos/tour.py``; every number printed is exact.
"""

from shufflehom.barhom import aq_weight_homology, cotriple_resolution, f_r, harrison, sphere
from shufflehom.doldkan import check_gamma_n, random_simplicial
from shufflehom.exactlin import Ring
from shufflehom.serialize import format_table
from shufflehom.shalg import DividedPowerAlgebra, check_axioms, free_comm, trivial_algebra
from shufflehom.symseq.odot import norm_map
from shufflehom.symseq.rep import concentrated, random_reduced_seq, trivial_rep

F2 = Ring.parse("F2")
Q = Ring.parse("Q")

X = random_reduced_seq(F2, 4, seed=1)
print("norm map X^{⊙3}_Σ -> (X^{⊙3})^Σ iso:", norm_map(X, 3).verdict)

S = free_comm(f_r(sphere(F2, 0), 1, 6), unital=True)
x = (1, {0: F2.one})
rep = check_axioms(DividedPowerAlgebra(S), x, (1, {0: F2.one}), max_sum=4, max_comp=4, max_cartan=2, max_power=4)
print(f"divided powers on C(F1k) over F2: {len(rep.checks)} identities, passed={rep.passed}")

M = f_r(sphere(Q, 0), 2, 4)
print(format_table(harrison(free_comm(M)), range(1, 5), {"ring": "Q", "max_level": 4}, "Harrison of C(F2 S0)"))

T = trivial_algebra(concentrated(trivial_rep(Q, 1), 4))
res = cotriple_resolution(T, 4)
weights = [aq_weight_homology(T, q, 3, res=res).get((4, 3), 0) for q in range(1, 5)]
print("Hodge weights of the square-zero algebra at level 4:", weights)

print("Γ N X ≅ X on a random simplicial sequence:", check_gamma_n(random_simplicial(Q, 3, 4, seed=3)) == [])
