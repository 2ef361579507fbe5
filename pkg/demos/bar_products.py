"""Products and higher operations on the bar complex of a free algebra.

Run with ``python demos/bar_products.py``.
"""

from seqop.bar import bar_differential, format_bar, parse_bar
from seqop.freealg import FreeAlgebra
from seqop.operad import compose, parse_element
from seqop.phi import phi, product

A = FreeAlgebra()
A.add_generator("x", 2)
A.add_generator("y", 2)
A.add_generator("z", 3)
A.add_generator("w", 4, A.parse("(12)(x,z)"))  # d w = x . z

x, y, z, w = (parse_bar(A, f"[{n}]") for n in "xyzw")

print("[x] * [y]        =", format_bar(A, product(A, x, y)))
print("[x] * [y|z]      =", format_bar(A, product(A, x, parse_bar(A, "[y|z]"))))
print("(121)([x],[z])   =", format_bar(A, phi(A, parse_element("(121)"), [x, z])))

# the product is associative on the nose
left = product(A, product(A, x, y), z)
right = product(A, x, product(A, y, z))
print("associative:", left == right)

# but the higher operations do not assemble into an operad action
comp = compose(parse_element("(121)"), 1, parse_element("(12)"))
lhs = phi(A, parse_element("(121)"), [product(A, x, y), z])
print("(121) o_1 (12) =", comp, "| acts compatibly:", lhs == phi(A, comp, [x, y, z]))

# d on the bar complex sees the formal differential of w
print("d[w|y] =", format_bar(A, bar_differential(A, parse_bar(A, "[w|y]"))))
