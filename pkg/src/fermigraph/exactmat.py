"""Dense exact matrices over Q(sqrt(n)).

A matrix is stored as a pair of arbitrary-precision integer arrays ``ra``,
``rb`` and a common positive denominator ``den``:

    M = (ra + rb*sqrt(n)) / den

The irrational array is dropped (``rb is None``) whenever it vanishes, which
it does for every matrix over a perfect-square radicand; products then cost a
single integer matmul instead of four.  Arrays use dtype=object so entries are
Python ints and never overflow.  Instances are treated as immutable: all
operations return fresh matrices.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .qroot import QRootN, RadicandMismatchError, perfect_square_root


class DimensionMismatchError(ValueError):
    """Raised when matrix operands do not conform."""


def _gcd_reduce(arrays: Iterable[np.ndarray], start: int) -> int:
    g = start
    for arr in arrays:
        for v in arr.flat:
            if v:
                g = math.gcd(g, v if v > 0 else -v)
                if g == 1:
                    return 1
    return g


def _as_object(arr) -> np.ndarray:
    out = np.asarray(arr)
    if out.dtype != object:
        out = out.astype(object)
    return out


class ExactMatrix:
    """Square matrix with entries in Q(sqrt(n)), exact in every operation."""

    __slots__ = ("dim", "radicand", "den", "ra", "rb")

    def __init__(self, dim: int, radicand: int, ra, rb=None, den: int = 1,
                 _normalized: bool = False) -> None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.dim = dim
        self.radicand = radicand
        self.ra = _as_object(ra)
        self.rb = None if rb is None else _as_object(rb)
        self.den = den
        if self.ra.shape != (dim, dim):
            raise DimensionMismatchError(f"expected {(dim, dim)} got {self.ra.shape}")
        if self.rb is not None and self.rb.shape != (dim, dim):
            raise DimensionMismatchError("rational/irrational shapes differ")
        if not _normalized:
            self._normalize()

    # -- construction --------------------------------------------------------

    @classmethod
    def zeros(cls, dim: int, radicand: int = 1) -> "ExactMatrix":
        return cls(dim, radicand, np.zeros((dim, dim), dtype=object), None, 1,
                   _normalized=True)

    @classmethod
    def identity(cls, dim: int, radicand: int = 1) -> "ExactMatrix":
        ra = np.zeros((dim, dim), dtype=object)
        for i in range(dim):
            ra[i, i] = 1
        return cls(dim, radicand, ra, None, 1, _normalized=True)

    @classmethod
    def ones(cls, dim: int, radicand: int = 1) -> "ExactMatrix":
        return cls(dim, radicand, np.ones((dim, dim), dtype=int), None, 1)

    @classmethod
    def from_int_array(cls, arr, radicand: int = 1) -> "ExactMatrix":
        arr = _as_object(arr)
        return cls(arr.shape[0], radicand, arr, None, 1)

    @classmethod
    def diagonal(cls, values: Sequence[QRootN | int | Fraction],
                 radicand: int = 1) -> "ExactMatrix":
        dim = len(values)
        scalars = [v if isinstance(v, QRootN) else QRootN(v, 0, radicand)
                   for v in values]
        if any(s.n != radicand for s in scalars):
            raise RadicandMismatchError("diagonal values carry a different radicand")
        den = reduce(math.lcm, (s.a.denominator for s in scalars), 1)
        den = reduce(math.lcm, (s.b.denominator for s in scalars), den)
        ra = np.zeros((dim, dim), dtype=object)
        rb = np.zeros((dim, dim), dtype=object)
        irrational = False
        for i, s in enumerate(scalars):
            ra[i, i] = int(s.a * den)
            bi = int(s.b * den)
            rb[i, i] = bi
            irrational = irrational or bi != 0
        return cls(dim, radicand, ra, rb if irrational else None, den)

    @classmethod
    def from_scalars(cls, rows: Sequence[Sequence[QRootN | int | Fraction]],
                     radicand: int) -> "ExactMatrix":
        dim = len(rows)
        scalars = [[v if isinstance(v, QRootN) else QRootN(v, 0, radicand)
                    for v in row] for row in rows]
        den = 1
        for row in scalars:
            for s in row:
                if s.n != radicand:
                    raise RadicandMismatchError("entry radicand differs from matrix")
                den = math.lcm(den, s.a.denominator, s.b.denominator)
        ra = np.empty((dim, dim), dtype=object)
        rb = np.empty((dim, dim), dtype=object)
        irrational = False
        for i, row in enumerate(scalars):
            if len(row) != dim:
                raise DimensionMismatchError("matrix must be square")
            for j, s in enumerate(row):
                ra[i, j] = int(s.a * den)
                bij = int(s.b * den)
                rb[i, j] = bij
                irrational = irrational or bij != 0
        return cls(dim, radicand, ra, rb if irrational else None, den)

    # -- canonical form ------------------------------------------------------

    def _normalize(self) -> None:
        if self.den < 0:
            self.ra = -self.ra
            if self.rb is not None:
                self.rb = -self.rb
            self.den = -self.den
        if self.rb is not None:
            s = perfect_square_root(self.radicand)
            if s is not None:
                self.ra = self.ra + self.rb * s
                self.rb = None
            elif not self.rb.any():
                self.rb = None
        arrays = (self.ra,) if self.rb is None else (self.ra, self.rb)
        g = _gcd_reduce(arrays, self.den)
        if g > 1:
            self.ra = self.ra // g
            if self.rb is not None:
                self.rb = self.rb // g
            self.den //= g

    # -- elementwise access --------------------------------------------------

    def entry(self, i: int, j: int) -> QRootN:
        b = 0 if self.rb is None else self.rb[i, j]
        return QRootN(Fraction(int(self.ra[i, j]), self.den),
                      Fraction(int(b), self.den), self.radicand)

    def __getitem__(self, ij: tuple[int, int]) -> QRootN:
        return self.entry(*ij)

    def diagonal_values(self) -> list[QRootN]:
        return [self.entry(i, i) for i in range(self.dim)]

    # -- structural predicates -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.ra.any() and (self.rb is None or not self.rb.any())

    def is_diagonal(self) -> bool:
        off = ~np.eye(self.dim, dtype=bool)
        if self.ra[off].any():
            return False
        return self.rb is None or not self.rb[off].any()

    def is_symmetric(self) -> bool:
        if not np.array_equal(self.ra, self.ra.T):
            return False
        return self.rb is None or np.array_equal(self.rb, self.rb.T)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.dim != other.dim or self.radicand != other.radicand:
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:  # matrices are mutable-looking containers
        raise TypeError("ExactMatrix is unhashable")

    # -- ring operations -------------------------------------------------------

    def _check_conforming(self, other: "ExactMatrix") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dim {self.dim} vs {other.dim}")
        if self.radicand != other.radicand:
            raise RadicandMismatchError(
                f"radicand mismatch: {self.radicand} vs {other.radicand}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_conforming(other)
        den = math.lcm(self.den, other.den)
        m1, m2 = den // self.den, den // other.den
        ra = self.ra * m1 + other.ra * m2
        if self.rb is None and other.rb is None:
            rb = None
        else:
            b1 = 0 if self.rb is None else self.rb * m1
            b2 = 0 if other.rb is None else other.rb * m2
            rb = b1 + b2
        return ExactMatrix(self.dim, self.radicand, ra, rb, den)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.dim, self.radicand, -self.ra,
                           None if self.rb is None else -self.rb,
                           self.den, _normalized=True)

    def scale(self, c: QRootN | int | Fraction) -> "ExactMatrix":
        if not isinstance(c, QRootN):
            c = QRootN(c, 0, self.radicand)
        elif c.n != self.radicand:
            raise RadicandMismatchError("scalar radicand differs from matrix")
        cd = math.lcm(c.a.denominator, c.b.denominator)
        pa, pb = int(c.a * cd), int(c.b * cd)
        n = self.radicand
        ra = self.ra * pa
        rb = None
        if pb:
            if self.rb is not None:
                ra = ra + self.rb * (pb * n)
                rb = self.ra * pb + self.rb * pa
            else:
                rb = self.ra * pb
        elif self.rb is not None:
            rb = self.rb * pa
        return ExactMatrix(self.dim, self.radicand, ra, rb, self.den * cd)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_conforming(other)
        # diagonal operands reduce the product to a row or column scaling
        if self.is_diagonal():
            da = self.ra.diagonal().reshape(-1, 1)
            ra = da * other.ra
            rb = None if other.rb is None else da * other.rb
            if self.rb is not None:
                db = self.rb.diagonal().reshape(-1, 1)
                n = self.radicand
                ra = ra + (db * other.rb) * n if other.rb is not None else ra
                extra = db * other.ra
                rb = extra if rb is None else rb + extra
            return ExactMatrix(self.dim, self.radicand, ra, rb,
                               self.den * other.den)
        if other.is_diagonal():
            da = other.ra.diagonal().reshape(1, -1)
            ra = self.ra * da
            rb = None if self.rb is None else self.rb * da
            if other.rb is not None:
                db = other.rb.diagonal().reshape(1, -1)
                n = self.radicand
                ra = ra + (self.rb * db) * n if self.rb is not None else ra
                extra = self.ra * db
                rb = extra if rb is None else rb + extra
            return ExactMatrix(self.dim, self.radicand, ra, rb,
                               self.den * other.den)
        n = self.radicand
        ra = np.dot(self.ra, other.ra)
        rb = None
        if self.rb is not None and other.rb is not None:
            ra = ra + np.dot(self.rb, other.rb) * n
            rb = np.dot(self.ra, other.rb) + np.dot(self.rb, other.ra)
        elif other.rb is not None:
            rb = np.dot(self.ra, other.rb)
        elif self.rb is not None:
            rb = np.dot(self.rb, other.ra)
        return ExactMatrix(self.dim, self.radicand, ra, rb, self.den * other.den)

    def schur(self, other: "ExactMatrix") -> "ExactMatrix":
        """Entrywise (Schur) product."""
        self._check_conforming(other)
        n = self.radicand
        ra = self.ra * other.ra
        rb = None
        if self.rb is not None and other.rb is not None:
            ra = ra + self.rb * other.rb * n
            rb = self.ra * other.rb + self.rb * other.ra
        elif other.rb is not None:
            rb = self.ra * other.rb
        elif self.rb is not None:
            rb = self.rb * other.ra
        return ExactMatrix(self.dim, self.radicand, ra, rb, self.den * other.den)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.dim, self.radicand, self.ra.T.copy(),
                           None if self.rb is None else self.rb.T.copy(),
                           self.den, _normalized=True)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def trace(self) -> QRootN:
        ta = sum(int(v) for v in self.ra.diagonal())
        tb = 0 if self.rb is None else sum(int(v) for v in self.rb.diagonal())
        return QRootN(Fraction(ta, self.den), Fraction(tb, self.den), self.radicand)

    # -- support masking -------------------------------------------------------

    def masked_principal(self, m: int) -> "ExactMatrix":
        """Zero every entry outside the leading m x m principal block."""
        keep = np.zeros((self.dim, self.dim), dtype=object)
        keep[:m, :m] = 1
        return ExactMatrix(self.dim, self.radicand, self.ra * keep,
                           None if self.rb is None else self.rb * keep, self.den)

    def masked_support(self, support: np.ndarray) -> "ExactMatrix":
        """Zero rows and columns outside a boolean support vector."""
        keep = np.outer(support, support).astype(int).astype(object)
        return ExactMatrix(self.dim, self.radicand, self.ra * keep,
                           None if self.rb is None else self.rb * keep, self.den)

    def principal_block(self, m: int) -> "ExactMatrix":
        return ExactMatrix(m, self.radicand, self.ra[:m, :m].copy(),
                           None if self.rb is None else self.rb[:m, :m].copy(),
                           self.den)

    # -- conversions -----------------------------------------------------------

    def to_float(self) -> np.ndarray:
        out = self.ra.astype(float)
        if self.rb is not None:
            out = out + self.rb.astype(float) * math.sqrt(self.radicand)
        return out / float(self.den)

    def max_abs(self) -> float:
        if self.is_zero():
            return 0.0
        return float(np.max(np.abs(self.to_float())))

    def __repr__(self) -> str:
        kind = "rational" if self.rb is None else f"sqrt({self.radicand})"
        return f"ExactMatrix(dim={self.dim}, radicand={self.radicand}, {kind}, den={self.den})"


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """[a, b] = ab - ba."""
    return a @ b - b @ a


def anticommutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """{a, b} = ab + ba."""
    return a @ b + b @ a
