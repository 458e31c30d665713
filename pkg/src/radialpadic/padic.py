"""Exact p-adic arithmetic on rationals: valuations, norms, vectors, matrices.

Everything here is exact.  Rational numbers carry their p-adic valuation
exactly (valuation of a Fraction is valuation(numerator) - valuation(denominator)),
so norms are exact powers of p represented as Fractions, and matrix inversion
is exact Gaussian elimination over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"p must be a prime integer, got {p!r}")
    return p


def valuation(x: int | Fraction, p: int) -> int | float:
    """p-adic valuation; valuation(0) is +inf by convention."""
    check_prime(p)
    if x == 0:
        return math.inf
    if isinstance(x, Fraction):
        return valuation(x.numerator, p) - valuation(x.denominator, p)
    n, v = abs(int(x)), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def pnorm(x: int | Fraction, p: int) -> Fraction:
    """|x|_p = p^(-valuation(x)) as an exact Fraction; |0|_p = 0."""
    v = valuation(x, p)
    if v is math.inf:
        return Fraction(0)
    return Fraction(p) ** (-v)


def log_norm(x: int | Fraction, p: int) -> int | float:
    """log_p |x|_p = -valuation(x); -inf for 0."""
    v = valuation(x, p)
    return -v if v is not math.inf else -math.inf


@dataclass(frozen=True)
class PAdicVector:
    """A point of Q_p^n with exact rational coordinates."""

    p: int
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        check_prime(self.p)
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if not self.coords:
            raise ValueError("vector needs at least one coordinate")

    @property
    def n(self) -> int:
        return len(self.coords)

    def norm(self) -> Fraction:
        """max norm: |x|_p = max_j |x_j|_p."""
        return max(pnorm(c, self.p) for c in self.coords)

    def shell(self) -> int | float:
        """log_p |x|_p; -inf for the zero vector."""
        return max(log_norm(c, self.p) for c in self.coords)

    def scale(self, t: int | Fraction) -> "PAdicVector":
        return PAdicVector(self.p, tuple(Fraction(t) * c for c in self.coords))

    def __add__(self, other: "PAdicVector") -> "PAdicVector":
        if self.p != other.p or self.n != other.n:
            raise ValueError("mismatched vectors")
        return PAdicVector(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True)
class PAdicMatrix:
    """An n x n rational matrix acting on Q_p^n, with exact p-adic data."""

    p: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        check_prime(self.p)
        rows = tuple(tuple(Fraction(e) for e in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")

    @property
    def n(self) -> int:
        return len(self.rows)

    def norm(self) -> Fraction:
        """operator norm for the max norm: ||A||_p = max_ij |a_ij|_p."""
        return max(pnorm(e, self.p) for row in self.rows for e in row)

    def log_norm(self) -> int | float:
        return max(log_norm(e, self.p) for row in self.rows for e in row)

    def det(self) -> Fraction:
        """exact determinant by fraction-free expansion on a working copy."""
        n = self.n
        m = [list(row) for row in self.rows]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det *= m[col][col]
            inv = Fraction(1) / m[col][col]
            for r in range(col + 1, n):
                factor = m[r][col] * inv
                if factor:
                    for c in range(col, n):
                        m[r][c] -= factor * m[col][c]
        return det

    def inverse(self) -> "PAdicMatrix":
        """exact inverse via Gauss-Jordan elimination; raises on singular input."""
        n = self.n
        m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            m[col], m[pivot] = m[pivot], m[col]
            inv = Fraction(1) / m[col][col]
            m[col] = [e * inv for e in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    factor = m[r][col]
                    m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
        return PAdicMatrix(self.p, tuple(tuple(row[n:]) for row in m))

    def matvec(self, x: PAdicVector) -> PAdicVector:
        if x.p != self.p or x.n != self.n:
            raise ValueError("mismatched matrix and vector")
        return PAdicVector(
            self.p,
            tuple(sum((a * c for a, c in zip(row, x.coords)), Fraction(0)) for row in self.rows),
        )

    @staticmethod
    def identity(p: int, n: int) -> "PAdicMatrix":
        return PAdicMatrix(p, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @staticmethod
    def scalar(p: int, n: int, s: int | Fraction) -> "PAdicMatrix":
        return PAdicMatrix(p, tuple(tuple(Fraction(s) * int(i == j) for j in range(n)) for i in range(n)))


def det_norm_bounds_hold(a: PAdicMatrix) -> bool:
    """Check ||A||^(-n) <= |det A^{-1}|_p <= ||A^{-1}||^n for invertible A."""
    n = a.n
    det = a.det()
    if det == 0:
        raise ZeroDivisionError("matrix is singular")
    det_inv_norm = pnorm(Fraction(1) / det, a.p)
    return a.norm() ** (-n) <= det_inv_norm <= a.inverse().norm() ** n
