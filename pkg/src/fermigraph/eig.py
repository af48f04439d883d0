"""Dense symmetric eigensolver and spectrum clustering.

The production path delegates to LAPACK through ``numpy.linalg.eigh``
(Householder tridiagonalization followed by implicit-shift QL/QR), with a
hand-rolled cyclic Jacobi sweep kept as an independent reference for small
matrices.  Every solve is verified a posteriori against the residual bound
``|M v - lambda v| <= tol * |M|_F``; the matrices treated here are heavily
degenerate, so eigenvectors inside an eigenvalue cluster are re-orthonormalized
with modified Gram-Schmidt before the result is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_EIG_TOL = 1e-10
DEFAULT_CLUSTER_TOL = 1e-8
SYMMETRY_RTOL = 1e-12


class NonSymmetricError(ValueError):
    """Input matrix is not symmetric within tolerance."""


class EigenSolveError(RuntimeError):
    """The eigensolver failed to converge or missed its residual bound."""


class InvalidSpectrumError(ValueError):
    """A spectrum violates a required containment (e.g. outside [0, 1])."""


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with multiplicities, ascending."""

    entries: tuple[tuple[float, int], ...]
    cluster_tolerance: float
    trace_check: float = 0.0

    @property
    def values(self) -> list[float]:
        return [v for v, _ in self.entries]

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.entries]

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def flatten(self) -> list[float]:
        out: list[float] = []
        for v, m in self.entries:
            out.extend([v] * m)
        return out

    def nonzero(self, tol: float | None = None) -> list[tuple[float, int]]:
        t = self.cluster_tolerance if tol is None else tol
        return [(v, m) for v, m in self.entries if abs(v) > t]

    def __str__(self) -> str:
        return "{" + ", ".join(f"{v:.12g}^({m})" for v, m in self.entries) + "}"


def _check_symmetric(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSymmetricError(f"expected a square matrix, got shape {m.shape}")
    scale = np.max(np.abs(m)) if m.size else 0.0
    dev = np.max(np.abs(m - m.T)) if m.size else 0.0
    if dev > SYMMETRY_RTOL * max(scale, 1.0):
        raise NonSymmetricError(f"asymmetry {dev:.3e} exceeds {SYMMETRY_RTOL:.0e}*max|M|")


def _regroup_orthonormalize(values: np.ndarray, vectors: np.ndarray,
                            tol: float) -> np.ndarray:
    """Modified Gram-Schmidt inside each eigenvalue cluster."""
    out = vectors.copy()
    i = 0
    dim = len(values)
    scale = max(abs(values[0]), abs(values[-1]), 1.0) if dim else 1.0
    while i < dim:
        j = i + 1
        while j < dim and values[j] - values[j - 1] <= tol * scale:
            j += 1
        if j - i > 1:
            block = out[:, i:j]
            for k in range(block.shape[1]):
                v = block[:, k]
                for p in range(k):
                    v = v - np.dot(block[:, p], v) * block[:, p]
                nv = np.linalg.norm(v)
                if nv == 0.0:
                    raise EigenSolveError("degenerate cluster collapsed under MGS")
                block[:, k] = v / nv
            out[:, i:j] = block
        i = j
    return out


def symmetric_eig(m: np.ndarray, tol: float = DEFAULT_EIG_TOL,
                  ) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.

    Verifies |M v - lambda v| <= tol * |M|_F and orthonormality to tol for
    every pair before returning.
    """
    m = np.asarray(m, dtype=float)
    _check_symmetric(m)
    if m.shape[0] == 0:
        raise NonSymmetricError("empty matrix")
    sym = 0.5 * (m + m.T)
    try:
        values, vectors = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"eigh did not converge: {exc}") from exc
    vectors = _regroup_orthonormalize(values, vectors, tol)
    frob = np.linalg.norm(sym, "fro")
    resid = np.linalg.norm(sym @ vectors - vectors * values, axis=0)
    bound = tol * max(frob, 1e-300)
    if np.any(resid > bound):
        raise EigenSolveError(
            f"residual {resid.max():.3e} exceeds bound {bound:.3e}")
    gram_dev = np.max(np.abs(vectors.T @ vectors - np.eye(m.shape[0])))
    if gram_dev > tol:
        raise EigenSolveError(f"eigenvector basis not orthonormal: {gram_dev:.3e}")
    return values, vectors


def jacobi_eig(m: np.ndarray, sweeps: int = 100,
               tol: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi reference eigensolver for small symmetric matrices.

    Independent of LAPACK; intended for dim <= 64 cross-checks.  Reports
    non-convergence instead of looping forever.
    """
    a = np.asarray(m, dtype=float)
    _check_symmetric(a)
    a = 0.5 * (a + a.T)
    dim = a.shape[0]
    v = np.eye(dim)
    scale = np.linalg.norm(a, "fro")
    if scale == 0.0:
        return np.zeros(dim), v
    for _ in range(sweeps):
        off = np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:  # theta^2 would overflow; t ~ 1/(2 theta)
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0  # exact by choice of rotation angle
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        a = 0.5 * (a + a.T)  # remove asymmetric rounding drift
    else:
        raise EigenSolveError(f"Jacobi did not converge in {sweeps} sweeps")
    order = np.argsort(np.diag(a), kind="stable")
    return np.diag(a)[order].copy(), v[:, order].copy()


def cluster_spectrum(values, tol: float = DEFAULT_CLUSTER_TOL,
                     trace: float | None = None) -> Spectrum:
    """Merge ascending eigenvalues into (value, multiplicity) clusters.

    Consecutive values within tol are merged; the representative is the
    cluster mean.  tol <= 0 groups exactly equal values only.
    """
    vals = [float(v) for v in values]
    if any(vals[i] > vals[i + 1] for i in range(len(vals) - 1)):
        raise ValueError("eigenvalues must be sorted ascending")
    entries: list[tuple[float, int]] = []
    i = 0
    eff = max(tol, 0.0)
    while i < len(vals):
        j = i + 1
        while j < len(vals) and vals[j] - vals[j - 1] <= eff:
            j += 1
        entries.append((sum(vals[i:j]) / (j - i), j - i))
        i = j
    target = sum(vals) if trace is None else float(trace)
    check = abs(sum(v * m for v, m in entries) - target)
    return Spectrum(tuple(entries), cluster_tolerance=tol, trace_check=check)
