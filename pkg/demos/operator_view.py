"""
Spectral idempotents as projectors
==================================

For matrices, (B,C)-invertibility of A is a statement about subspaces:
R(B) must complement N(CA) and R(AB) must complement N(C).  The projectors
along those splittings are exactly the spectral idempotents.
"""

import numpy as np

from bcpolar import GF, bc_inverse, thm41_check
from bcpolar.subspace import cor43_check, cor43_literal_projector, nullspace_of, range_of
from bcpolar.matrix import Mat
from bcpolar.suite import generate_instance

rng = np.random.default_rng(3)
F7 = GF(7)

shown = 0
while shown < 3:
    A, B, C = generate_instance("rank-deficient", rng, F7, 3)[:3]
    v = thm41_check(A, B, C)
    if not v.invertible:
        continue
    res = bc_inverse(A, B, C)
    print("dim R(B) =", range_of(B).dim, " dim N(CA) =", nullspace_of(C @ A).dim)
    print("  projector P equals p:", v.P.matrix == res.p, " Q equals q:", v.Q.matrix == res.q)
    shown += 1

# inverse along B: the projector ranges are R(B) and R(AB), which differ in general
A = Mat([[1, 0], [1, 1]])
B = Mat([[1, 0], [0, 0]])
print("\nA =", A.tolist(), " B =", B.tolist())
print("four equivalent verdicts:", cor43_check(A, B))
print("R(AB) == R(B)?", range_of(A @ B) == range_of(B))
print("single projector with R(P)=R(AB)=R(B):", cor43_literal_projector(A, B))
