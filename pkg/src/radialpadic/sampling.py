"""Seeded Monte Carlo sampling on p-adic spheres and shells.

Haar measure on the ball B_gamma factors over coordinates: x_j = p^(-gamma) u_j
with u_j Haar-uniform in Z_p, realized to finite depth D as a uniform integer
in [0, p^D).  The sphere S_gamma = B_gamma minus the interior is sampled by
rejection (resample while every coordinate has positive valuation), which is
exactly Haar conditioned on the sphere.  Estimates over a set of shells are
stratified: shell masses |S_gamma| are exact, so only the within-shell means
are estimated.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .padic import PAdicVector, check_prime
from .radial import sphere_measure

#: base-p digits kept per coordinate; valuations beyond this depth are
#: indistinguishable from zero for the sampled point
DIGIT_DEPTH = 32


def sample_ball(rng: random.Random, p: int, n: int, gamma: int, depth: int = DIGIT_DEPTH) -> PAdicVector:
    """One Haar-uniform point of B_gamma = {|x|_p <= p^gamma} to `depth` digits."""
    check_prime(p)
    scale = Fraction(p) ** (-gamma)
    top = p ** depth
    return PAdicVector(p, tuple(Fraction(rng.randrange(top)) * scale for _ in range(n)))


def sample_sphere(rng: random.Random, p: int, n: int, gamma: int, depth: int = DIGIT_DEPTH) -> PAdicVector:
    """One Haar-uniform point of the sphere S_gamma = {|x|_p = p^gamma}.

    Rejection from the ball: a ball point lies in the interior iff every
    coordinate's unit part is divisible by p, which happens with probability
    p^-n, so the loop accepts quickly.
    """
    check_prime(p)
    scale = Fraction(p) ** (-gamma)
    top = p ** depth
    while True:
        units = [rng.randrange(top) for _ in range(n)]
        if any(u % p for u in units):
            return PAdicVector(p, tuple(Fraction(u) * scale for u in units))


@dataclass(frozen=True)
class MCEstimate:
    """Stratified estimate of an integral over a union of shells."""

    value: float
    stderr: float
    n_samples: int
    seed: int
    per_shell: dict

    def within(self, target: float, sigmas: float = 4.0, floor: float = 1e-12) -> bool:
        """|estimate - target| <= sigmas * stderr plus a roundoff floor.

        The floor covers the degenerate zero-variance case (integrands that
        are constant on every shell), where the only discrepancy left is
        float accumulation error.
        """
        tol = sigmas * self.stderr + floor * max(1.0, abs(target))
        return abs(self.value - target) <= tol


def integrate_mc(
    integrand: Callable[[PAdicVector], float],
    p: int,
    n: int,
    shells: Sequence[int],
    n_samples: int,
    seed: int,
    depth: int = DIGIT_DEPTH,
) -> MCEstimate:
    """Stratified Monte Carlo integral of `integrand` over the given shells.

    Each shell gamma receives an equal share of the sample budget; the shell
    contribution is |S_gamma| times the within-shell sample mean, and the
    variance combines the exact stratum masses with sample variances.
    """
    shells = sorted(set(shells))
    if not shells:
        return MCEstimate(0.0, 0.0, 0, seed, {})
    rng = random.Random(seed)
    per = max(2, n_samples // len(shells))
    total = 0.0
    var = 0.0
    detail = {}
    for gamma in shells:
        mass = float(sphere_measure(p, n, gamma))
        vals = []
        for _ in range(per):
            x = sample_sphere(rng, p, n, gamma, depth)
            vals.append(float(integrand(x)))
        mean = math.fsum(vals) / per
        centered = math.fsum((v - mean) ** 2 for v in vals)
        sample_var = centered / (per - 1) if per > 1 else 0.0
        total += mass * mean
        var += mass * mass * sample_var / per
        detail[gamma] = {"mean": mean, "stderr": math.sqrt(sample_var / per), "n": per}
    return MCEstimate(total, math.sqrt(var), per * len(shells), seed, detail)
