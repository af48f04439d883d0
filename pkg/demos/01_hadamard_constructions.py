"""Constructing and checking Hadamard matrices.

Two families are built in: Sylvester doubling (orders 2^k) and the
quadratic-residue border construction (orders q+1 for primes q = 3 mod 4).
Everything is integer arithmetic, so every check here is exact.
"""

import numpy as np

from fermigraph import core_blocks, normalize, paley, sylvester, verify

# The order-4 matrix; all order-4 Hadamard matrices are equivalent to it.
h4 = sylvester(2)
print("Sylvester order 4:")
print(h4.entries)
ok, dev = verify(h4)
print("H H^T == 4 I:", ok, "(max deviation", dev, ")")

# An order-12 matrix from the prime q = 11.  The raw construction comes out
# normalized: first row and column all +1.
h12 = paley(11)
print("\nPaley order 12, normalized:", h12.is_normalized())
print("verify:", verify(h12))

# Normalization repairs sign-flipped rows/columns without leaving the family.
flipped = h12.entries.copy()
flipped[3, :] *= -1
from fermigraph.hadamard import HadamardMatrix
renorm = normalize(HadamardMatrix(order=12, entries=flipped))
print("re-normalized equals the original:", (renorm.entries == h12.entries).all())

# Deleting the first column gives the sign block Hbar, and from it the two
# 0/1 halves M1, M2 that describe which row vertices see which column
# vertices on the graph side.
cb = core_blocks(h4)
n = h4.order
print("\nM1 =")
print(cb.m1.astype(int))
print("M1 + M2 is all ones:",
      (cb.m1 + cb.m2 == np.ones((n, 2 * n - 2), dtype=object)).all())
print("2 M1 M1^T == n I + (n-2) J:",
      (2 * cb.m1 @ cb.m1.T == n * np.eye(n, dtype=object)
       + (n - 2) * np.ones((n, n), dtype=object)).all())
print("2 M1 M2^T == n (J - I):",
      (2 * cb.m1 @ cb.m2.T
       == n * (np.ones((n, n), dtype=object) - np.eye(n, dtype=object))).all())
