"""Singular and principal-value integration primitives.

Three integral shapes recur throughout the equilibrium machinery:

* integrals of ``f(x) / sqrt((x-c)(d-x))`` over ``[c, d]`` (densities and
  their moments), handled by Gauss-Chebyshev quadrature after the cosine
  substitution ``x = mid + rho*cos(theta)``;
* Cauchy principal values over a gap between support intervals, where the
  integrand carries simple poles at weight zeros inside the gap, handled by
  analytic subtraction of each pole;
* logarithmic potentials ``-int log|x-t| dmu(t)``, evaluated through the
  closed-form action of the log kernel on Chebyshev polynomials, which is
  spectrally accurate both on and off the support.

All fixed-resolution routines are deterministic for a given node count; the
``*_converged`` drivers double nodes until the result stabilizes and raise
``QuadratureConvergenceError`` at the cap instead of returning silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_legendre

from .errors import (
    DegenerateIntervalError,
    PoleOnBoundaryError,
    QuadratureConvergenceError,
)

DEFAULT_START_NODES = 64
DEFAULT_MAX_NODES = 16384
DEFAULT_RTOL = 1e-12
_POLE_BOUNDARY_TOL = 1e-12


def _eval_vectorized(f: Callable, xs: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(xs), dtype=float)
    if vals.shape != xs.shape:
        vals = np.broadcast_to(vals, xs.shape).copy()
    return vals


def integrate_sqrt_singular(f: Callable, c: float, d: float, nodes: int) -> float:
    """Integrate ``f(x)/sqrt((x-c)(d-x))`` over ``[c, d]``.

    Uses the cosine substitution and the equally weighted Gauss-Chebyshev
    rule of the first kind; exact mass ``pi`` for ``f == 1`` at any node
    count.  ``f`` must accept ndarray arguments.
    """
    if not d > c:
        raise DegenerateIntervalError(f"need c < d, got [{c}, {d}]")
    if nodes < 1:
        raise ValueError("nodes must be positive")
    mid, rho = 0.5 * (c + d), 0.5 * (d - c)
    theta = (2.0 * np.arange(1, nodes + 1) - 1.0) * np.pi / (2.0 * nodes)
    xs = mid + rho * np.cos(theta)
    return float(np.pi / nodes * _eval_vectorized(f, xs).sum())


def _converge(eval_at, start: int, cap: int, rtol: float, what: str) -> float:
    prev = eval_at(start)
    n = start
    while n < cap:
        n *= 2
        cur = eval_at(n)
        if abs(cur - prev) <= rtol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureConvergenceError(
        f"{what} did not stabilize to rtol={rtol} within {cap} nodes"
    )


def sqrt_singular_converged(
    f: Callable,
    c: float,
    d: float,
    rtol: float = DEFAULT_RTOL,
    start: int = DEFAULT_START_NODES,
    cap: int = DEFAULT_MAX_NODES,
) -> float:
    """Node-doubling driver for integrate_sqrt_singular."""
    return _converge(
        lambda n: integrate_sqrt_singular(f, c, d, n), start, cap, rtol,
        "sqrt-singular integral",
    )


@dataclass(frozen=True)
class GapIntegralSpec:
    """One gap integral between two support intervals.

    ``r_endpoints`` lists every support endpoint (the zeros of R); it may be
    empty, in which case the square-root factor degenerates to 1.  ``zeros``
    and ``exponents`` describe the weight; only zeros strictly inside the gap
    introduce principal-value poles.  ``poly_coeffs`` holds the density
    polynomial in ascending order.
    """

    gap: tuple[float, float]
    r_endpoints: tuple[float, ...] = ()
    zeros: tuple[float, ...] = ()
    exponents: tuple[float, ...] = ()
    poly_coeffs: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        c, d = self.gap
        if not d > c:
            raise DegenerateIntervalError(f"empty gap [{c}, {d}]")

    def poles_inside(self) -> list[float]:
        c, d = self.gap
        inside = []
        for z in self.zeros:
            if abs(z - c) <= _POLE_BOUNDARY_TOL or abs(z - d) <= _POLE_BOUNDARY_TOL:
                raise PoleOnBoundaryError(f"weight zero {z} on gap boundary [{c}, {d}]")
            if c < z < d:
                inside.append(z)
        return inside


def _polyval(coeffs: Sequence[float], x: np.ndarray | float):
    acc = 0.0
    for cf in reversed(coeffs):
        acc = acc * x + cf
    return acc


def _sqrt_abs_r(r_endpoints: Sequence[float], x: np.ndarray | float):
    prod = 1.0
    for e in r_endpoints:
        prod = prod * np.abs(x - e)
    return np.sqrt(prod)


def principal_value_gap(spec: GapIntegralSpec, nodes: int) -> float:
    """Cauchy principal value of ``sqrt|R| * P / prod(x - z_j)`` over the gap.

    Each pole inside the gap is subtracted analytically: with residue
    ``c_j = sqrt|R(z_j)| P(z_j) / prod_{m != j}(z_j - z_m)``, the regular
    remainder is integrated under the cosine substitution (the remainder is
    analytic in the angle variable) and ``c_j log|(d-z_j)/(c-z_j)|`` is added
    back in closed form.
    """
    c, d = spec.gap
    poles = spec.poles_inside()
    residues = []
    for z in poles:
        denom = 1.0
        for m in spec.zeros:
            if m != z:
                denom *= z - m
        residues.append(float(_sqrt_abs_r(spec.r_endpoints, z)) * float(_polyval(spec.poly_coeffs, z)) / denom)

    mid, rho = 0.5 * (c + d), 0.5 * (d - c)
    t, wts = roots_legendre(nodes + nodes % 2)  # even count keeps nodes off a centered pole
    theta = 0.5 * np.pi * (t + 1.0)
    xs = mid + rho * np.cos(theta)
    # nudge any node that still lands on a pole
    for z in poles:
        hit = np.abs(xs - z) < 1e-15 * max(1.0, abs(z))
        xs[hit] += 1e-13 * rho

    vals = _sqrt_abs_r(spec.r_endpoints, xs) * _polyval(spec.poly_coeffs, xs)
    for z in spec.zeros:
        vals = vals / (xs - z)
    for z, res in zip(poles, residues):
        vals = vals - res / (xs - z)
    integral = float((0.5 * np.pi) * np.sum(wts * vals * rho * np.sin(theta)))
    for z, res in zip(poles, residues):
        integral += res * math.log(abs((d - z) / (c - z)))
    return integral


def pv_gap_converged(
    spec: GapIntegralSpec,
    rtol: float = DEFAULT_RTOL,
    start: int = DEFAULT_START_NODES,
    cap: int = DEFAULT_MAX_NODES,
) -> float:
    """Node-doubling driver for principal_value_gap."""
    return _converge(
        lambda n: principal_value_gap(spec, n), start, cap, rtol,
        "principal-value gap integral",
    )


# --- logarithmic potentials ---------------------------------------------

def chebyshev_coeffs(f: Callable, c: float, d: float, n: int) -> np.ndarray:
    """First-kind Chebyshev coefficients of f on [c, d] at n sample points."""
    theta = (2.0 * np.arange(1, n + 1) - 1.0) * np.pi / (2.0 * n)
    xs = 0.5 * (c + d) + 0.5 * (d - c) * np.cos(theta)
    g = _eval_vectorized(f, xs)
    k = np.arange(n)
    coeffs = (2.0 / n) * (np.cos(np.outer(k, theta)) @ g)
    coeffs[0] *= 0.5
    return coeffs


def _log_kernel_sum(coeffs: np.ndarray, c: float, d: float, x: float) -> float:
    """``int_c^d log|x-t| f(t)/sqrt((t-c)(d-t)) dt`` from Chebyshev coeffs of f.

    The log kernel acts diagonally on the Chebyshev basis: against T_0 it
    integrates to ``pi log(rho/2)`` on the segment (``pi log(rho|zeta|/2)``
    outside, with zeta the exterior Joukowski preimage), and against T_k to
    ``-(pi/k) T_k`` on the segment, ``-(pi/k) zeta^{-k}`` outside.
    """
    n = coeffs.size
    rho = 0.5 * (d - c)
    xt = (2.0 * x - c - d) / (d - c)
    k = np.arange(1, n)
    if abs(xt) <= 1.0:
        base = np.pi * math.log(0.5 * rho)
        tail = -np.pi * np.cos(k * math.acos(min(1.0, max(-1.0, xt)))) / k
    else:
        zeta = xt + math.copysign(math.sqrt(xt * xt - 1.0), xt)
        base = np.pi * math.log(0.5 * rho * abs(zeta))
        tail = -np.pi * zeta ** (-k.astype(float)) / k
    return float(coeffs[0] * base + coeffs[1:] @ tail)


def log_potential_of_density(
    support: Sequence[tuple[float, float]],
    density: Sequence[Callable],
    x: float,
    nodes: int,
) -> float:
    """Potential ``-sum_l int log|x-t| dmu(t)`` of a piecewise density.

    ``density[l]`` is the smooth part ``f_l`` of the measure on the l-th
    interval, ``dmu = f_l(t)/sqrt((t-a_l)(b_l-t)) dt``.  ``nodes`` sets the
    Chebyshev resolution per interval.
    """
    total = 0.0
    for (a_l, b_l), f in zip(support, density):
        coeffs = chebyshev_coeffs(f, a_l, b_l, nodes)
        total += _log_kernel_sum(coeffs, a_l, b_l, x)
    return -total


def log_potential_converged(
    support: Sequence[tuple[float, float]],
    density: Sequence[Callable],
    x: float,
    rtol: float = DEFAULT_RTOL,
    start: int = DEFAULT_START_NODES,
    cap: int = DEFAULT_MAX_NODES,
) -> float:
    """Node-doubling driver for log_potential_of_density."""
    return _converge(
        lambda n: log_potential_of_density(support, density, x, n),
        start, cap, rtol, "log potential",
    )
