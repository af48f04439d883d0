"""The block-tridiagonal operator commuting with the chopped correlation.

With a base vertex fixed, the dual idempotents E*_i project onto the
neighbourhood shells and the dual adjacency A* is diagonal with the
eigenvalue column on its diagonal.  The bilinear combination

    T = {A, A*} + mu A* + nu A

commutes with both the shell projector pi1(ell) and the energy projector
pi2(K) once mu and nu are matched to the cutoffs, hence with the chopped
correlation matrix Pi(K, ell) - and all of that is checked here exactly.
"""

from fermigraph import (QRootN, build_scheme, build_hadamard_graph,
                        chopped_correlation, commutator, heun_operator,
                        projector_pair, sylvester, terwilliger_basis)
from fermigraph.qroot import sqrt_of
from fermigraph.terwilliger import (block_tridiagonal_decompose,
                                    cubic_relation_residual)

graph = build_hadamard_graph(sylvester(2))
tables = build_scheme(graph)
basis = terwilliger_basis(tables, base_vertex=0)
n = graph.order

print("dual adjacency diagonal values:",
      sorted({str(v) for v in basis.dual_adjacency.diagonal_values()}))

# A is block-tridiagonal across shells, with empty diagonal blocks because
# the graph is bipartite.
blocks = block_tridiagonal_decompose(tables.adjacency,
                                     list(basis.dual_idempotents))
survivors = sorted((i, j) for (i, j), b in blocks.items() if not b.is_zero())
print("nonzero shell blocks of A:", survivors)

# The commuting operator for the half-filled, radius-2 cut.
t = heun_operator(tables, basis, 2, 2)
print(f"T(2,2): mu = {t.mu}, nu = {t.nu}")
pair = projector_pair(tables, basis, 2, 2)
pi = chopped_correlation(tables, basis, 2, 2)
for name, other in [("pi1", pair.pi1), ("pi2", pair.pi2), ("Pi", pi)]:
    print(f"[T, {name}] == 0 exactly:", commutator(t.matrix, other).is_zero())

# Off-diagonal coupling between shells 1 and 2 is 2 sqrt(n) times the edge
# block; shells 2 and 3 decouple entirely.
es = basis.dual_idempotents
cross12 = es[1] @ t.matrix @ es[2]
edge12 = es[1] @ tables.adjacency @ es[2]
print("shell 1-2 coupling is 2 sqrt(n) A-block:",
      cross12 == edge12.scale(QRootN(0, 2, n)))
print("shell 2-3 coupling vanishes:",
      (es[2] @ t.matrix @ es[3]).is_zero())

# A and A* close under a pair of cubic exchange relations whose
# coefficients come from the eigenvalue spacing.
r1, r2 = cubic_relation_residual(tables.adjacency, basis.dual_adjacency,
                                 sqrt_of(n), QRootN(n, 0, n))
print("cubic relations hold exactly:", r1.is_zero() and r2.is_zero())
r1, r2 = cubic_relation_residual(tables.adjacency, basis.dual_adjacency,
                                 sqrt_of(n), QRootN(n + 1, 0, n))
print("perturbed coefficients break them:",
      not r1.is_zero() and not r2.is_zero())
