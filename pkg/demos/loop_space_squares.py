"""Cohomology of loop spaces from the bar complex of cochains, with Steenrod squares.

Run with ``python demos/loop_space_squares.py``.
"""

from seqop.cochains import CochainAlgebra, loop_cohomology, projective_space, sphere
from seqop.steenrod import Sq, cochain_structure, homology

for n, p in ((2, 2), (3, 2), (3, 3)):
    res = loop_cohomology(sphere(n), p, 6, operations=False)
    print(f"H^*(Omega S^{n}; F_{p}) through degree 6:", res["dimensions"])

res = loop_cohomology(sphere(2), 2, 5)
for row in res["operations"]:
    print(f"  {row['class']} = {row['representative']}: {row['operation']} -> {row['result']}")

# squares on the cochains of RP^4 recover the classical answer
C = cochain_structure(CochainAlgebra(projective_space(4), modulus=2))
(a,) = homology(C, 1)
(b,) = homology(C, 2)
print("RP^4: Sq1 a =", Sq(1, a), "| Sq1 b =", Sq(1, b), "| Sq2 b =", Sq(2, b))
