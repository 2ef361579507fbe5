"""Walk through the first coefficient elements and check their defining identity.

Run with ``python demos/coefficients_tour.py``.
"""

from seqop.coefficients import X1, X2, X3, coefficient
from seqop.operad import boundary

# the length-one term of the product (12) on bar tensors of lengths 1 and q
for q in range(1, 5):
    print(f"C((12);1,{q}) = {coefficient((1, 2), (1, q))}")

# vanishing once the first tensor is longer than one
print("C((12);2,1) =", coefficient((1, 2), (2, 1)))

# a ternary example; the boundary is assembled from lower coefficients
f, e = (1, 2, 3), (1, 2, 1)
c = coefficient(f, e)
print(f"C({f};{e}) = {c}")
print("dC == X1 + X2 + X3:", boundary(c) == X1(f, e) + X2(f, e) + X3(f, e))
print("mod 2:", coefficient(f, e, 2))
