"""Weighted Fekete points and the exact integer certificate.

The n-point weighted Vandermonde ``prod_{i<j}(x_i-x_j) prod_i w(x_i)^{n-1}``
is maximized by cyclic coordinate ascent: each coordinate's slice objective
is concave between consecutive singular points (the other coordinates and the
weight zeros), so per-piece golden section finds the exact 1-D maximum.  The
normalized maxima d_n decrease toward the weighted capacity and never drop
below it.

The certificate path expands the squared Vandermonde times integer-power
weight factors as an exact integer polynomial, integrates it over the unit
cube in rational arithmetic, and multiplies by the matching product of
lcm(1..l); the result is a positive integer, which converts the integral
into a certified lower bound for a sum of psi values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from . import primes
from .errors import (
    BudgetExceededError,
    NonIntegerCertificateError,
    StagnationWarning,
    WeightError,
)
from .search import golden_max
from .weights import FactoredWeight, RootWeight, log_weight


@dataclass(frozen=True)
class FeketeSet:
    """Maximizing configuration for one n."""

    n: int
    points: tuple[float, ...]
    log_vandermonde: float

    def diameter(self) -> float:
        """Normalized size (max V^2)^(1/(n(n-1)))."""
        return math.exp(2.0 * self.log_vandermonde / (self.n * (self.n - 1)))


def _log_vandermonde(w: RootWeight, xs: np.ndarray) -> float:
    n = xs.size
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            total += math.log(abs(xs[i] - xs[j]))
        total += (n - 1) * log_weight(w, float(xs[i]))
    return total


def fekete_points(
    w: RootWeight,
    n: int,
    sweep_tol: float = 1e-12,
    max_sweeps: int = 500,
) -> FeketeSet:
    """Maximize the weighted Vandermonde by cyclic coordinate ascent.

    Starts from Chebyshev-Gauss-Lobatto nodes pushed off the weight zeros.
    Each coordinate is re-solved by golden section on every interval between
    consecutive singular points of its slice objective; a move is taken only
    when it strictly improves.  Sweeps stop once the total gain drops below
    ``sweep_tol``.
    """
    if n < 2:
        raise ValueError("need at least two points")
    a, b = w.interval
    mid, rho = 0.5 * (a + b), 0.5 * (b - a)
    xs = mid - rho * np.cos(np.arange(n) * np.pi / (n - 1))
    delta = 1e-4 * (b - a)
    for k in range(n):
        for z in w.zeros:
            if abs(xs[k] - z) < delta:
                xs[k] = z + delta if (z - a) <= (b - z) else z - delta
    xs = np.clip(xs, a, b)
    xs.sort()
    for k in range(1, n):  # keep strictly increasing after the nudge
        if xs[k] <= xs[k - 1]:
            xs[k] = xs[k - 1] + delta

    zero_arr = np.asarray(w.zeros)
    n1_log_a = (n - 1) * w.logA
    expo = (n - 1) * np.asarray(w.exponents) if w.n_zeros else None

    def make_slice(k: int):
        others = np.delete(xs, k)

        def value(x: float) -> float:
            d = np.abs(others - x)
            if np.any(d == 0.0):
                return -math.inf
            total = float(np.sum(np.log(d))) + n1_log_a
            if expo is not None:
                dz = np.abs(x - zero_arr)
                if np.any(dz == 0.0):
                    return -math.inf
                total += float(expo @ np.log(dz))
            return total

        return others, value

    total = _log_vandermonde(w, xs)
    golden_tol = 1e-10 * (b - a)
    # full piece scans early and periodically; neighbor-only scans between
    for sweep in range(max_sweeps):
        before = total
        full_scan = sweep < 2 or sweep % 8 == 0
        for k in range(n):
            others, value = make_slice(k)
            cuts = np.unique(np.concatenate([[a, b], others, zero_arr]))
            cuts = cuts[(cuts >= a) & (cuts <= b)]
            best_x, best_val = float(xs[k]), value(float(xs[k]))
            if full_scan:
                piece_ids = range(len(cuts) - 1)
            else:
                idx = int(np.searchsorted(cuts, xs[k])) - 1
                piece_ids = range(max(0, idx - 1), min(len(cuts) - 1, idx + 2))
            for i in piece_ids:
                lo, hi = float(cuts[i]), float(cuts[i + 1])
                if hi - lo <= 2 * golden_tol:
                    continue
                cand_x, cand_val = golden_max(value, lo, hi, golden_tol)
                if cand_val > best_val:
                    best_x, best_val = cand_x, cand_val
            old = value(float(xs[k]))
            if best_val > old:
                total += best_val - old
                xs[k] = best_x
        if total - before < sweep_tol and full_scan:
            break
        if total - before < sweep_tol and not full_scan:
            # confirm convergence against the full piece set before stopping
            improved = False
            for k in range(n):
                others, value = make_slice(k)
                cuts = np.unique(np.concatenate([[a, b], others, zero_arr]))
                cuts = cuts[(cuts >= a) & (cuts <= b)]
                cur = value(float(xs[k]))
                for i in range(len(cuts) - 1):
                    lo, hi = float(cuts[i]), float(cuts[i + 1])
                    if hi - lo <= 2 * golden_tol:
                        continue
                    cand_x, cand_val = golden_max(value, lo, hi, golden_tol)
                    if cand_val > cur + sweep_tol:
                        total += cand_val - cur
                        xs[k] = cand_x
                        improved = True
                        break
                if improved:
                    break
            if not improved:
                break
    else:
        warnings.warn(
            f"fekete ascent for n={n} hit the {max_sweeps}-sweep cap",
            StagnationWarning,
        )
    xs.sort()
    return FeketeSet(n=n, points=tuple(float(v) for v in xs),
                     log_vandermonde=_log_vandermonde(w, xs))


def transfinite_sequence(w: RootWeight, n_max: int) -> list[float]:
    """Normalized Vandermonde maxima d_n for n = 2..n_max."""
    return [fekete_points(w, n).diameter() for n in range(2, n_max + 1)]


# --- exact certificate -------------------------------------------------------

CERTIFICATE_TERM_BUDGET = 10 ** 6


@dataclass(frozen=True)
class GSCertificate:
    """Exact integer certificate for a psi-sum lower bound.

    ``certified_integer`` is lcm_product times the exact integral, proved
    positive and integral; taking logs turns it into the bound
    ``sum of psi(l), l = n+shift .. 2n-1+shift >= psi_sum_lower_bound``.
    """

    n: int
    weight: FactoredWeight
    degree_shift: int
    exact_integral: Fraction
    lcm_product: int
    certified_integer: int
    psi_sum_lower_bound: float
    psi_sum_actual: float


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        if ci:
            for j, cj in enumerate(q):
                out[i + j] += ci * cj
    return out


def _poly_pow(p: list[int], e: int) -> list[int]:
    out = [1]
    base = list(p)
    while e:
        if e & 1:
            out = _poly_mul(out, base)
        e >>= 1
        if e:
            base = _poly_mul(base, base)
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    inversions = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def expand_certificate_polynomial(
    fw: FactoredWeight, n: int, budget: int = CERTIFICATE_TERM_BUDGET
) -> dict[tuple[int, ...], int]:
    """Exact expansion of the certificate integrand as exponent -> coefficient.

    The integrand is the squared Vandermonde in n variables times, for every
    variable, each factor polynomial raised to 2*ceil(alpha*(n-1)).
    """
    terms: dict[tuple[int, ...], int] = {}
    perms = list(permutations(range(n)))
    signs = [_perm_sign(p) for p in perms]
    for sigma, s_sig in zip(perms, signs):
        for tau, s_tau in zip(perms, signs):
            key = tuple(sigma[j] + tau[j] for j in range(n))
            terms[key] = terms.get(key, 0) + s_sig * s_tau
    terms = {k: v for k, v in terms.items() if v}
    weight_poly = [1]
    for coeffs, alpha in fw.factors:
        e = _ceil_exact(alpha, n - 1)
        weight_poly = _poly_mul(weight_poly, _poly_pow(list(coeffs), 2 * e))
    for var in range(n):
        new: dict[tuple[int, ...], int] = {}
        for key, cv in terms.items():
            for d, cw in enumerate(weight_poly):
                if cw:
                    nk = key[:var] + (key[var] + d,) + key[var + 1 :]
                    new[nk] = new.get(nk, 0) + cv * cw
            if len(new) > budget:
                raise BudgetExceededError(
                    f"expansion exceeded {budget} terms at variable {var + 1}"
                )
        terms = {k: v for k, v in new.items() if v}
    return terms


def _ceil_exact(alpha, n_minus_1: int) -> int:
    if not isinstance(alpha, (int, Fraction)):
        raise WeightError(
            "certificate weights need exact rational exponents, got "
            f"{type(alpha).__name__}"
        )
    return math.ceil(Fraction(alpha) * n_minus_1)


def exact_gs_certificate(fw: FactoredWeight, n: int) -> GSCertificate:
    """Certified lower bound on a psi sum from an exact cube integral.

    Only n in {2, 3, 4} is supported; beyond that the expansion blows up
    combinatorially.
    """
    if n not in (2, 3, 4):
        raise ValueError("certificate supports n in {2, 3, 4}")
    a, b = fw.interval
    if (a, b) != (0.0, 1.0):
        raise WeightError("certificate integrates over the unit cube; use [0, 1]")
    shift = 2 * sum(
        (len(coeffs) - 1) * _ceil_exact(alpha, n - 1) for coeffs, alpha in fw.factors
    )
    terms = expand_certificate_polynomial(fw, n)
    max_deg = max((max(k) for k in terms), default=0)
    lcm_small = 1
    for m in range(2, max_deg + 2):
        lcm_small = math.lcm(lcm_small, m)
    denom = lcm_small ** n
    numer = 0
    for key, cv in terms.items():
        prod = 1
        for e in key:
            prod *= e + 1
        numer += cv * (denom // prod)
    integral = Fraction(numer, denom)
    if integral <= 0:
        raise NonIntegerCertificateError(f"integral {integral} is not positive")
    lcm_product = 1
    acc = 1
    for m in range(2, 2 * n + shift):
        acc = math.lcm(acc, m)
        if m >= n + shift:
            lcm_product *= acc
    certified = integral * lcm_product
    if certified.denominator != 1 or certified < 1:
        raise NonIntegerCertificateError(
            f"lcm product times integral is {certified}, not a positive integer"
        )
    bound = float(math.log(integral.denominator) - math.log(integral.numerator))
    table = primes.build_psi(2 * n - 1 + shift)
    psi_sum = table.psi_sum(n + shift, 2 * n - 1 + shift)
    return GSCertificate(
        n=n,
        weight=fw,
        degree_shift=shift,
        exact_integral=integral,
        lcm_product=lcm_product,
        certified_integer=int(certified),
        psi_sum_lower_bound=bound,
        psi_sum_actual=psi_sum,
    )
