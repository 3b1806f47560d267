"""
Group, Drazin and Moore-Penrose inverses as inverses along an element
=====================================================================

One formula, ``d (d a d)^- d``, gives all three for suitable ``d``.
"""

import numpy as np

from bcpolar import GF, Mat, drazin, group_inverse, inverse_along, moore_penrose
from bcpolar.classic import drazin_by_linear_system, drazin_index
from bcpolar.matrix import random_matrix

# a Jordan block at 0 next to the eigenvalue 3
a = Mat([[0, 1, 0], [0, 0, 0], [0, 0, 3]])
k = drazin_index(a)
print("index:", k)
print("group inverse exists:", group_inverse(a) is not None)

d = drazin(a)
print("Drazin inverse:", d.d_inverse.tolist())
print("spectral idempotent:", d.spectral_idempotent.tolist())
print("along a^k agrees:", inverse_along(a, a**k).y == d.d_inverse)

# the pseudoinverse is the inverse along the transpose
m = Mat([[1, 2], [2, 4], [0, 0]])
sq = Mat([[1, 2, 0], [2, 4, 0], [0, 0, 0]])
print("\nMoore-Penrose of a rank-one 3x3:", moore_penrose(sq).tolist())
print("along transpose agrees:", inverse_along(sq, sq.T).y == moore_penrose(sq))
print("rectangular:", moore_penrose(m).tolist())

# over GF(7): compare with the Drazin inverse solved from its identities
rng = np.random.default_rng(11)
F7 = GF(7)
agree = 0
for _ in range(200):
    x = random_matrix(F7, rng, 4, 2) @ random_matrix(F7, rng, 2, 4)
    agree += drazin(x).d_inverse == drazin_by_linear_system(x)
print(f"\nGF(7): {agree}/200 random rank-2 matrices agree with the linear-system oracle")
