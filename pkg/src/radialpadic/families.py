"""Matrix families A(y) parameterizing Hausdorff operators.

Three kinds, in decreasing order of exact computability:

  * ScalarRadial: A(y) = s(y) I with log_p ||A(y)|| = slope * shell(y) + offset.
    Acting on radial functions this is a pure shell dilation, so operators
    built from these families stay inside the radial algebra and every norm
    is exactly computable.  ||A|| ||A^-1|| = 1 identically.
  * ConstantMatrix: A(y) = A fixed and invertible.  Operator values at a
    point remain exact; outputs are no longer radial.
  * Pointwise: an opaque evaluator y -> A(y).  Only Monte Carlo estimates
    are available, and the distortion exponent can only be probed by sampling.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .padic import PAdicMatrix, PAdicVector, check_prime, pnorm


@dataclass(frozen=True)
class ScalarRadial:
    """A(y) = s(y) I with ||A(y)||_p = p^(slope * shell(y) + offset) on each shell."""

    slope: int
    offset: int

    def k_on_shell(self, gamma: int) -> int:
        """log_p ||A(y)||_p for y on shell gamma."""
        return self.slope * gamma + self.offset

    def scalar_on_shell(self, p: int, gamma: int) -> Fraction:
        """A concrete scalar with the required norm: s = p^(-k)."""
        return Fraction(p) ** (-self.k_on_shell(gamma))

    def matrix_at(self, p: int, n: int, y: PAdicVector) -> PAdicMatrix:
        shell = y.shell()
        if shell == -math.inf:
            raise ValueError("family is undefined at the origin")
        return PAdicMatrix.scalar(p, n, self.scalar_on_shell(p, int(shell)))


@dataclass(frozen=True)
class ConstantMatrix:
    """A(y) = A for an invertible rational matrix A."""

    matrix: PAdicMatrix

    def __post_init__(self) -> None:
        if self.matrix.det() == 0:
            raise ValueError("family matrix must be invertible")

    @property
    def k_norm(self) -> int:
        return int(self.matrix.log_norm())

    @property
    def k_inverse(self) -> int:
        return int(self.matrix.inverse().log_norm())

    @property
    def det_inv_norm(self) -> Fraction:
        return pnorm(Fraction(1) / self.matrix.det(), self.matrix.p)

    def matrix_at(self, p: int, n: int, y: PAdicVector) -> PAdicMatrix:
        return self.matrix


@dataclass(frozen=True)
class Pointwise:
    """An arbitrary measurable family given by an evaluator y -> A(y)."""

    evaluator: Callable[[PAdicVector], PAdicMatrix]

    def matrix_at(self, p: int, n: int, y: PAdicVector) -> PAdicMatrix:
        return self.evaluator(y)


Family = ScalarRadial | ConstantMatrix | Pointwise


def nu_of_family(
    family: Family,
    p: int,
    n: int,
    probe_shells: Sequence[int] = (-3, -2, -1, 0, 1, 2, 3),
    samples_per_shell: int = 8,
    seed: int = 0,
) -> int:
    """Least nu with ||A(y)|| ||A(y)^-1|| <= p^nu over the probed y.

    Exact for ScalarRadial (always 0) and ConstantMatrix; for Pointwise
    families the result is a sampled lower bound.
    """
    check_prime(p)
    if isinstance(family, ScalarRadial):
        return 0
    if isinstance(family, ConstantMatrix):
        return family.k_norm + family.k_inverse
    from .sampling import sample_sphere

    rng = random.Random(seed)
    best = 0
    for gamma in probe_shells:
        for _ in range(samples_per_shell):
            y = sample_sphere(rng, p, n, gamma)
            a = family.matrix_at(p, n, y)
            if a.det() == 0:
                continue
            best = max(best, int(a.log_norm() + a.inverse().log_norm()))
    return best


def nu_of_scenario(families: Sequence[Family], p: int, n: int, **kw) -> int:
    return max(nu_of_family(f, p, n, **kw) for f in families)
