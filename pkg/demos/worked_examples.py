"""
The two small worked examples
=============================

A 2x2 triple that is (b,c)-polar, and one that is only dually polar.
Run with ``python3 demos/worked_examples.py``.
"""

from bcpolar import Mat, bc_inverse, bc_invertible, dual_bc_polar
from bcpolar.bc import bc_polar_conditions

# a is nilpotent, b and c are rank one
a = Mat([[0, 0], [1, 0]])
b = Mat([[1, -1], [0, 0]])
c = Mat([[0, 1], [0, 1]])

res = bc_inverse(a, b, c)
print("y =", res.y.tolist())
print("p = ya =", res.p.tolist())
print("q = ay =", res.q.tolist())

# every polarity condition, by name
for label, ok in bc_polar_conditions(a, b, c, res.p, res.q):
    print(f"  {label:10s} {ok}")

# swapping p and q breaks pb = b
bad = dict(bc_polar_conditions(a, b, c, res.q, res.p))
print("swapped pair passes pb=b?", bad["pb=b"])

# here ab = 0, so no (b,c)-inverse
a = Mat([[1, 0], [0, 0]])
b = Mat([[0, 0], [1, 0]])
c = Mat([[0, 1], [0, 0]])
print("\nab =", (a @ b).tolist(), " (b,c)-invertible:", bc_invertible(a, b, c))

dual = dual_bc_polar(a, b, c)
print("dual idempotents r, s:", dual.r.tolist(), dual.s.tolist())
print("both equal a:", dual.r == a == dual.s)
