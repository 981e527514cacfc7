"""Prime sieve, Chebyshev psi-function, and its step integral.

psi(x) sums log p over prime powers up to x and equals log lcm(1..x) at
integers; the prime number theorem makes its integral from 1 to x behave like
x^2/2.  The table built here carries psi at every integer up to the limit and
the exact integral values (psi is constant between integers, so the integral
is a plain prefix sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LimitTooSmallError


@dataclass(frozen=True)
class PsiTable:
    """psi and its integral at integer arguments up to ``limit``.

    Arrays are indexed by the integer argument itself (entry 0 unused);
    ``integral_values[n]`` is the integral of psi from 1 to n.
    """

    limit: int
    primes: np.ndarray
    psi_values: np.ndarray
    integral_values: np.ndarray

    def psi(self, n: int) -> float:
        return float(self.psi_values[n])

    def integral(self, n: int) -> float:
        return float(self.integral_values[n])

    def psi_sum(self, lo: int, hi: int) -> float:
        """Sum of psi(l) for lo <= l <= hi."""
        return float(self.psi_values[lo : hi + 1].sum())


def build_psi(limit: int) -> PsiTable:
    """Sieve of Eratosthenes plus prime-power accumulation of psi."""
    if limit < 2:
        raise LimitTooSmallError("limit must be at least 2")
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(math.isqrt(limit)) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    primes = np.nonzero(is_prime)[0]
    jumps = np.zeros(limit + 1)
    jumps[primes] = np.log(primes)
    for p in primes[primes <= math.isqrt(limit)]:
        q = int(p) * int(p)
        logp = math.log(int(p))
        while q <= limit:
            jumps[q] += logp
            q *= int(p)
    psi = np.cumsum(jumps)
    integral = np.concatenate([[0.0], np.cumsum(psi)[:-1]])
    return PsiTable(
        limit=limit, primes=primes, psi_values=psi, integral_values=integral
    )


def verify_psi_lcm(n: int, table: PsiTable | None = None) -> bool:
    """Check psi(n) against log lcm(1..n) with exact big-integer lcm."""
    if table is None or table.limit < n:
        table = build_psi(max(n, 2))
    acc = 1
    for k in range(2, n + 1):
        acc = math.lcm(acc, k)
    psi_n = table.psi(n) if n >= 1 else 0.0
    return abs(psi_n - math.log(acc)) < 1e-9 * (1.0 + psi_n)


def verify_psi_lcm_range(n_max: int, table: PsiTable | None = None) -> bool:
    """verify_psi_lcm for every n up to n_max, sharing one incremental lcm."""
    if table is None or table.limit < n_max:
        table = build_psi(max(n_max, 2))
    acc = 1
    for n in range(2, n_max + 1):
        acc = math.lcm(acc, n)
        psi_n = table.psi(n)
        if not abs(psi_n - math.log(acc)) < 1e-9 * (1.0 + psi_n):
            return False
    return True


@dataclass(frozen=True)
class EmpiricalBoundReport:
    """Worst observed ratio of the psi integral to x^2/2 on a window."""

    coefficient: float
    x_min: int
    min_ratio: float
    argmin_x: int
    ratio_at_limit: float
    satisfied: bool


def empirical_bound_check(
    table: PsiTable, coefficient: float, x_min: int
) -> EmpiricalBoundReport:
    """Scan integral(x)/(x^2/2) for x in [x_min, limit] against a coefficient.

    The underlying bound is asymptotic; this is a sanity check on sieve
    output, not a proof.
    """
    xs = np.arange(x_min, table.limit + 1)
    ratios = table.integral_values[x_min:] / (0.5 * xs.astype(float) ** 2)
    k = int(np.argmin(ratios))
    min_ratio = float(ratios[k])
    return EmpiricalBoundReport(
        coefficient=coefficient,
        x_min=x_min,
        min_ratio=min_ratio,
        argmin_x=int(xs[k]),
        ratio_at_limit=float(ratios[-1]),
        satisfied=bool(min_ratio >= coefficient),
    )
