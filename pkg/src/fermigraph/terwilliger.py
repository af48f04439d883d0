"""Dual idempotents, dual distance matrices and the relations they satisfy.

With respect to a base vertex x, E*_i is the diagonal 0/1 projector onto the
i-th neighbourhood of x and A*_i is the diagonal matrix N * (E_i) restricted
to row x.  Together with the Bose-Mesner algebra these generate the algebra
in which the chopped correlation matrix and its commuting partner live.
All checks in this module are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactmat import ExactMatrix
from .qroot import QRootN
from .scheme import SchemeTables


@dataclass(frozen=True)
class TerwilligerBasis:
    tables: SchemeTables
    base_vertex: int
    dual_idempotents: tuple[ExactMatrix, ...]   # E*_0..E*_d, diagonal 0/1
    dual_distance: tuple[ExactMatrix, ...]      # A*_0..A*_d, diagonal

    @property
    def adjacency(self) -> ExactMatrix:
        return self.tables.adjacency

    @property
    def dual_adjacency(self) -> ExactMatrix:
        return self.dual_distance[1]

    def neighbourhood_sizes(self) -> list[int]:
        return [int(e.trace().a) for e in self.dual_idempotents]


def dual_idempotents(base_vertex: int,
                     distance: list[ExactMatrix]) -> list[ExactMatrix]:
    """E*_i(x): diagonal 0/1 with (E*_i)_yy = (A_i)_xy."""
    out = []
    for a in distance:
        row = [a.entry(base_vertex, y) for y in range(a.dim)]
        out.append(ExactMatrix.diagonal(row, a.radicand))
    return out


def dual_distance(base_vertex: int, idempotents: list[ExactMatrix],
                  vertex_count: int) -> list[ExactMatrix]:
    """A*_i(x): diagonal with (A*_i)_yy = N (E_i)_xy."""
    out = []
    for e in idempotents:
        row = [e.entry(base_vertex, y) * vertex_count for y in range(e.dim)]
        out.append(ExactMatrix.diagonal(row, e.radicand))
    return out


def terwilliger_basis(tables: SchemeTables, base_vertex: int = 0) -> TerwilligerBasis:
    dist = list(tables.distance)
    estars = dual_idempotents(base_vertex, dist)
    astars = dual_distance(base_vertex, list(tables.idempotents),
                           tables.vertex_count)
    n = tables.radicand
    ident = ExactMatrix.identity(tables.vertex_count, n)
    total = ExactMatrix.zeros(tables.vertex_count, n)
    for estar in estars:
        total = total + estar
    if total != ident:
        raise ValueError("dual idempotents do not resolve the identity")
    if astars[0] != ident:
        raise ValueError("A*_0 != I")
    # A* must expand as sum_i Q_i1 E*_i
    recon = ExactMatrix.zeros(tables.vertex_count, n)
    for i, estar in enumerate(estars):
        recon = recon + estar.scale(tables.eigenmatrix_q[i][1])
    if recon != astars[1]:
        raise ValueError("A* != sum_i Q_i1 E*_i")
    return TerwilligerBasis(
        tables=tables,
        base_vertex=base_vertex,
        dual_idempotents=tuple(estars),
        dual_distance=tuple(astars),
    )


def verify_dual_products(basis: TerwilligerBasis) -> None:
    """A*_i A*_j = sum_k q_ij^k A*_k, exactly (diagonal products are cheap)."""
    t = basis.tables
    d = t.diameter
    for i in range(d + 1):
        for j in range(i, d + 1):
            prod = basis.dual_distance[i] @ basis.dual_distance[j]
            recon = ExactMatrix.zeros(t.vertex_count, t.radicand)
            for k in range(d + 1):
                q = t.krein[i][j][k]
                if q:
                    recon = recon + basis.dual_distance[k].scale(q)
            if recon != prod:
                raise ValueError(f"A*_{i} A*_{j} != sum_k q A*_k")


@dataclass(frozen=True)
class TripleVanishingReport:
    checked: int
    violations: tuple[tuple[str, int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def triple_vanishing_check(basis: TerwilligerBasis) -> TripleVanishingReport:
    """E*_i A_j E*_k = 0 iff p_ij^k = 0, and E_i A*_j E_k = 0 iff q_ij^k = 0,
    for every triple (i, j, k).  Violations are collected, not raised."""
    t = basis.tables
    d = t.diameter
    violations: list[tuple[str, int, int, int]] = []
    checked = 0
    for i in range(d + 1):
        for j in range(d + 1):
            sandwich_left = basis.dual_idempotents[i] @ t.distance[j]
            for k in range(d + 1):
                triple = sandwich_left @ basis.dual_idempotents[k]
                if triple.is_zero() != (t.p_numbers[i][j][k] == 0):
                    violations.append(("EsAEs", i, j, k))
                checked += 1
    for i in range(d + 1):
        for j in range(d + 1):
            sandwich_left = t.idempotents[i] @ basis.dual_distance[j]
            for k in range(d + 1):
                triple = sandwich_left @ t.idempotents[k]
                if triple.is_zero() != (not bool(t.krein[i][j][k])):
                    violations.append(("EAsE", i, j, k))
                checked += 1
    return TripleVanishingReport(checked=checked, violations=tuple(violations))


def block_tridiagonal_decompose(m: ExactMatrix,
                                projectors: list[ExactMatrix],
                                ) -> dict[tuple[int, int], ExactMatrix]:
    """Blocks P_i M P_j for a projector family resolving the identity.

    The blocks are returned for all (i, j) and their sum is verified to
    reconstruct M exactly.
    """
    total = ExactMatrix.zeros(m.dim, m.radicand)
    for p in projectors:
        total = total + p
    if total != ExactMatrix.identity(m.dim, m.radicand):
        raise ValueError("projector family does not resolve the identity")
    blocks: dict[tuple[int, int], ExactMatrix] = {}
    recon = ExactMatrix.zeros(m.dim, m.radicand)
    for i, pi in enumerate(projectors):
        left = pi @ m
        for j, pj in enumerate(projectors):
            b = left @ pj
            blocks[(i, j)] = b
            recon = recon + b
    if recon != m:
        raise ValueError("block decomposition does not reconstruct the input")
    return blocks


def cubic_relation_residual(a: ExactMatrix, astar: ExactMatrix,
                            rho: QRootN, tau: QRootN,
                            ) -> tuple[ExactMatrix, ExactMatrix]:
    """Residuals of the two cubic exchange relations between A and A*.

        r1 = A^2 A* - rho A A* A + A* A^2 - tau A*
        r2 = A*^2 A - rho A* A A* + A A*^2 - tau A

    Both vanish exactly when (rho, tau) match the eigenvalue spacing of the
    scheme (sqrt(n) and n for Hadamard graphs, 2 and 4 for hypercubes).
    """
    if not isinstance(rho, QRootN):
        rho = QRootN(rho, 0, a.radicand)
    if not isinstance(tau, QRootN):
        tau = QRootN(tau, 0, a.radicand)
    a2 = a @ a
    r1 = a2 @ astar - (a @ astar @ a).scale(rho) + astar @ a2 - astar.scale(tau)
    s2 = astar @ astar
    r2 = s2 @ a - (astar @ a @ astar).scale(rho) + a @ s2 - a.scale(tau)
    return r1, r2
