"""Weighted equilibrium measures on a segment.

For a weight ``w(x) = exp(logA) prod |x - z_j|^{p_j}`` whose zeros include
both segment endpoints, the minimizer of the weighted logarithmic energy is
supported on finitely many intervals avoiding the zeros, with density

    sign_l * (1 + p) * sqrt|R(x)| * P(x) / (pi * prod_j (x - z_j))

on the l-th interval, where R collects the support endpoints, P is a monic
polynomial of degree K - L - 1, and sign_l alternates so the density stays
positive.  The endpoints and P solve K evaluation conditions at the zeros
plus L - 1 principal-value conditions across the interior gaps.  This module
finds that configuration (discrete energy seed, then damped Newton), computes
the capacity, and independently cross-checks the density via the
harmonic-measure representation of the measure.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import quadrature as quad
from .errors import (
    ConstancyViolationError,
    MassDeviationError,
    NoFeasibleSupportError,
    NonConvergenceWarning,
    SingularMomentSystemError,
    WeightError,
)
from .quadrature import GapIntegralSpec
from .weights import RootWeight, log_weight


@dataclass(frozen=True)
class SolveOptions:
    """Tunables for support detection and Newton refinement."""

    grid_size: int = 400
    grid_iterations: int = 6000
    newton_tol: float = 1e-12
    newton_max_iter: int = 200
    max_damping_halvings: int = 30
    accept_residual: float = 1e-10
    density_check_points: int = 1000
    min_interval_width: float = 1e-9
    quad_rtol: float = 1e-13


DEFAULT_OPTIONS = SolveOptions()


@dataclass(frozen=True)
class SupportConfig:
    """Support of an equilibrium measure: interleaved endpoints plus the gap
    index of every weight zero (0 = left of the first interval, L = right of
    the last)."""

    endpoints: tuple[float, ...]
    gap_assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.endpoints) % 2 or not self.endpoints:
            raise ValueError("endpoints must interleave as a_1,b_1,...,a_L,b_L")
        for u, v in zip(self.endpoints, self.endpoints[1:]):
            if not u < v:
                raise ValueError("support endpoints must be strictly increasing")

    @property
    def n_intervals(self) -> int:
        return len(self.endpoints) // 2

    @property
    def intervals(self) -> tuple[tuple[float, float], ...]:
        e = self.endpoints
        return tuple((e[2 * i], e[2 * i + 1]) for i in range(self.n_intervals))

    @property
    def gaps(self) -> tuple[tuple[float, float], ...]:
        """Interior gaps (b_l, a_{l+1})."""
        e = self.endpoints
        return tuple(
            (e[2 * i + 1], e[2 * i + 2]) for i in range(self.n_intervals - 1)
        )

    def contains(self, x: float) -> bool:
        return any(a <= x <= b for a, b in self.intervals)


@dataclass(frozen=True)
class EquilibriumMeasure:
    """Solved equilibrium measure.

    ``monic_coeffs`` holds the density polynomial in ascending order with
    leading coefficient 1.  A weight with no zeros gets the classical arcsine
    measure of the segment; that case is flagged by ``weight.n_zeros == 0``.
    """

    weight: RootWeight
    support: SupportConfig
    monic_coeffs: tuple[float, ...]

    def interval_sign(self, i: int) -> int:
        """Sign prefactor of the density on 0-based interval i."""
        return -1 if (self.support.n_intervals + i) % 2 else 1

    def density(self, x) -> np.ndarray:
        """Pointwise density; zero off the support."""
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(xs)
        w = self.weight
        if w.n_zeros == 0:
            a, b = w.interval
            inside = (xs > a) & (xs < b)
            out[inside] = 1.0 / (np.pi * np.sqrt((xs[inside] - a) * (b - xs[inside])))
            return out if np.ndim(x) else float(out[0])
        one_p = 1.0 + w.total_exponent
        for i, (a_l, b_l) in enumerate(self.support.intervals):
            inside = (xs >= a_l) & (xs <= b_l)
            if not inside.any():
                continue
            t = xs[inside]
            sqrt_r = np.sqrt(np.abs(_prod_diffs(t, self.support.endpoints)))
            denom = _prod_diffs(t, w.zeros)
            out[inside] = (
                self.interval_sign(i)
                * one_p
                * sqrt_r
                * _polyval_asc(self.monic_coeffs, t)
                / (np.pi * denom)
            )
        return out if np.ndim(x) else float(out[0])

    def smooth_parts(self) -> list:
        """Per-interval smooth parts f_l with dmu = f_l(t)/sqrt((t-a_l)(b_l-t)) dt."""
        w = self.weight
        if w.n_zeros == 0:
            return [lambda t: np.full_like(np.asarray(t, float), 1.0 / np.pi)]
        one_p = 1.0 + w.total_exponent
        parts = []
        for i, (a_l, b_l) in enumerate(self.support.intervals):
            rest = tuple(e for e in self.support.endpoints if e not in (a_l, b_l))
            sign = self.interval_sign(i)

            def f(t, a_l=a_l, b_l=b_l, rest=rest, sign=sign):
                t = np.asarray(t, dtype=float)
                # (t-a_l)(b_l-t) taken out of sqrt|R| cancels the 1/sqrt weight
                val = (t - a_l) * (b_l - t) * np.sqrt(np.abs(_prod_diffs(t, rest)))
                return (
                    sign * one_p * val * _polyval_asc(self.monic_coeffs, t)
                    / (np.pi * _prod_diffs(t, w.zeros))
                )

            parts.append(f)
        return parts

    def mass(self, rtol: float = 1e-12) -> float:
        total = 0.0
        for (a_l, b_l), f in zip(self.support.intervals, self.smooth_parts()):
            total += quad.sqrt_singular_converged(f, a_l, b_l, rtol=rtol)
        return total

    def potential(self, x: float, rtol: float = 1e-12) -> float:
        """Logarithmic potential -int log|x-t| dmu(t)."""
        return quad.log_potential_converged(
            self.support.intervals, self.smooth_parts(), x, rtol=rtol
        )


@dataclass(frozen=True)
class CapacityReport:
    """Robin constant, minimal energy, capacity, and the constancy diagnostic."""

    robin_constant: float
    energy: float
    capacity: float
    equilibrium_constancy_residual: float


# --- small helpers -------------------------------------------------------

def _prod_diffs(x, points: Sequence[float]):
    prod = np.ones_like(np.asarray(x, dtype=float))
    for pt in points:
        prod = prod * (np.asarray(x, dtype=float) - pt)
    return prod


def _polyval_asc(coeffs: Sequence[float], x):
    acc = np.zeros_like(np.asarray(x, dtype=float))
    for cf in reversed(coeffs):
        acc = acc * x + cf
    return acc


def _logw_vec(w: RootWeight, xs: np.ndarray) -> np.ndarray:
    total = np.full_like(np.asarray(xs, dtype=float), w.logA)
    for z, p in zip(w.zeros, w.exponents):
        total = total + p * np.log(np.abs(xs - z))
    return total


def _gap_index(endpoints: Sequence[float], z: float) -> int:
    """Number of support intervals lying entirely left of z."""
    return sum(1 for i in range(len(endpoints) // 2) if endpoints[2 * i + 1] < z)


def _require_solver_form(w: RootWeight):
    if w.n_zeros < 2 or not w.spans_endpoints():
        raise WeightError(
            "equilibrium solving needs at least two zeros with the first at a "
            "and the last at b"
        )


# --- closed-form two-zero solve ------------------------------------------

def jacobi_endpoints(p1: float, p2: float) -> tuple[float, float]:
    """Support endpoints on [0,1] for the weight x^{p1} (1-x)^{p2}."""
    one_p = 1.0 + p1 + p2
    r1, r2 = p1 / one_p, p2 / one_p
    s = 1.0 + r1 * r1 - r2 * r2
    disc = math.sqrt(s * s - 4.0 * r1 * r1)
    return 0.5 * (s - disc), 0.5 * (s + disc)


def solve_jacobi(p1: float, p2: float) -> EquilibriumMeasure:
    """Closed-form equilibrium measure for x^{p1} (1-x)^{p2} on [0,1]."""
    if not (p1 > 0 and p2 > 0):
        raise WeightError("both exponents must be positive")
    w = RootWeight(interval=(0.0, 1.0), zeros=(0.0, 1.0), exponents=(p1, p2))
    return _solve_two_zero(w)


def _solve_two_zero(w: RootWeight) -> EquilibriumMeasure:
    """Affine transplant of the closed form onto the weight's own segment."""
    a, b = w.interval
    u_a, u_b = jacobi_endpoints(w.exponents[0], w.exponents[1])
    s = b - a
    support = SupportConfig(
        endpoints=(a + s * u_a, a + s * u_b), gap_assignment=(0, 1)
    )
    return EquilibriumMeasure(weight=w, support=support, monic_coeffs=(1.0,))


# --- discrete energy seed --------------------------------------------------

@dataclass(frozen=True)
class DiscreteMeasure:
    """Grid approximation of the equilibrium measure."""

    points: np.ndarray
    masses: np.ndarray
    energy: float
    converged: bool


def _project_simplex(v: np.ndarray) -> np.ndarray:
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    cond = u - css / idx > 0
    theta = css[cond][-1] / idx[cond][-1]
    return np.maximum(v - theta, 0.0)


def discrete_energy_minimize(
    w: RootWeight,
    grid_size: int = DEFAULT_OPTIONS.grid_size,
    max_iterations: int = DEFAULT_OPTIONS.grid_iterations,
    step_tol: float = 1e-12,
) -> DiscreteMeasure:
    """Minimize the discretized weighted energy over unit mass vectors.

    Projected gradient on the probability simplex.  The kernel matrix gets
    the cell self-energy ``-log h + 3/2`` on the diagonal; without it the
    discrete functional is minimized by a point mass and cannot localize the
    support.  The reported ``energy`` is the plain off-diagonal sum.
    """
    if grid_size < 200:
        raise ValueError("grid_size must be at least 200")
    a, b = w.interval
    xs = np.linspace(a, b, grid_size)
    rad = (b - a) / grid_size
    keep = np.ones(grid_size, dtype=bool)
    for z in w.zeros:
        keep &= np.abs(xs - z) > rad
    xs = xs[keep]
    n = xs.size
    h = (b - a) / grid_size
    diff = np.abs(xs[:, None] - xs[None, :]) + np.eye(n)
    kernel = -np.log(diff) + np.eye(n) * (-math.log(h) + 1.5)
    logw = _logw_vec(w, xs)
    m = np.full(n, 1.0 / n)
    step = 1.0 / (2.0 * float(np.linalg.eigvalsh(kernel)[-1]))
    converged = False
    y, t_mom = m.copy(), 1.0
    for _ in range(max_iterations):
        grad = 2.0 * (kernel @ y) - 2.0 * logw
        m_next = _project_simplex(y - step * grad)
        t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t_mom * t_mom))
        y = m_next + ((t_mom - 1.0) / t_next) * (m_next - m)
        t_mom = t_next
        if np.max(np.abs(m_next - m)) < step_tol:
            m = m_next
            converged = True
            break
        m = m_next
    if not converged:
        warnings.warn(
            "discrete energy minimizer hit its iteration cap", NonConvergenceWarning
        )
    off = kernel - np.diag(np.diag(kernel))
    energy = float(m @ off @ m - 2.0 * m @ logw)
    return DiscreteMeasure(points=xs, masses=m, energy=energy, converged=converged)


def _propose_clusters(
    w: RootWeight, discrete: DiscreteMeasure
) -> list[tuple[float, float, float]]:
    """Cluster the discrete masses into one candidate interval per zero gap.

    Returns (lo, hi, mass) triples ordered left to right.  The support can
    meet each open interval between consecutive zeros in at most one
    component, so clustering is per zero window.
    """
    xs, m = discrete.points, discrete.masses
    thresh = 1e-6 * m.max()
    clusters = []
    for z_lo, z_hi in zip(w.zeros, w.zeros[1:]):
        sel = (xs > z_lo) & (xs < z_hi) & (m > thresh)
        if not sel.any():
            continue
        mass = float(m[(xs > z_lo) & (xs < z_hi)].sum())
        if mass < 1e-4:
            continue
        pts = xs[sel]
        width = z_hi - z_lo
        lo = max(float(pts.min()), z_lo + 1e-3 * width)
        hi = min(float(pts.max()), z_hi - 1e-3 * width)
        if hi <= lo:
            mid = 0.5 * (z_lo + z_hi)
            lo, hi = mid - 0.2 * width, mid + 0.2 * width
        clusters.append((lo, hi, mass))
    if not clusters:
        # fall back to one component in the widest zero gap
        j = int(np.argmax(np.diff(w.zeros)))
        z_lo, z_hi = w.zeros[j], w.zeros[j + 1]
        width = z_hi - z_lo
        clusters.append((z_lo + 0.25 * width, z_hi - 0.25 * width, 1.0))
    return clusters


# --- Newton refinement ------------------------------------------------------

class _NewtonProblem:
    """Endpoint/polynomial system for a fixed interval count and zero layout."""

    def __init__(self, w: RootWeight, n_intervals: int, opts: SolveOptions):
        self.w = w
        self.L = n_intervals
        self.opts = opts
        self.K = w.n_zeros
        self.n_coeffs = self.K - self.L - 1  # free lower coefficients of monic P
        self.dim = 2 * self.L + self.n_coeffs

    def unpack(self, theta: np.ndarray) -> tuple[tuple[float, ...], tuple[float, ...]]:
        endpoints = tuple(float(v) for v in theta[: 2 * self.L])
        coeffs = tuple(float(v) for v in theta[2 * self.L :]) + (1.0,)
        return endpoints, coeffs

    def valid(self, endpoints: Sequence[float]) -> bool:
        a, b = self.w.interval
        margin = 1e-12 * (b - a)
        seq = (a,) + tuple(endpoints) + (b,)
        if any(not u < v for u, v in zip(seq, seq[1:])):
            return False
        for z in self.w.zeros:
            for i in range(self.L):
                if endpoints[2 * i] - margin <= z <= endpoints[2 * i + 1] + margin:
                    return False
        # every interior gap must keep at least one zero
        for i in range(self.L - 1):
            lo, hi = endpoints[2 * i + 1], endpoints[2 * i + 2]
            if not any(lo < z < hi for z in self.w.zeros):
                return False
        return True

    def residual(self, theta: np.ndarray) -> np.ndarray | None:
        endpoints, coeffs = self.unpack(theta)
        if not self.valid(endpoints):
            return None
        w = self.w
        one_p = 1.0 + w.total_exponent
        res = np.empty(self.dim)
        zs = np.asarray(w.zeros)
        for j, (z, p_j) in enumerate(zip(w.zeros, w.exponents)):
            sign = -1.0 if (self.L + _gap_index(endpoints, z)) % 2 else 1.0
            sqrt_r = math.sqrt(abs(float(_prod_diffs(z, endpoints))))
            others = float(np.prod(z - np.delete(zs, j)))
            lhs = one_p * float(_polyval_asc(coeffs, z)) * sqrt_r
            rhs = sign * p_j * others
            res[j] = (lhs - rhs) / max(1.0, abs(p_j * others))
        for i in range(self.L - 1):
            gap = (endpoints[2 * i + 1], endpoints[2 * i + 2])
            spec = GapIntegralSpec(
                gap=gap,
                r_endpoints=endpoints,
                zeros=w.zeros,
                exponents=w.exponents,
                poly_coeffs=coeffs,
            )
            try:
                res[self.K + i] = quad.pv_gap_converged(spec, rtol=self.opts.quad_rtol)
            except Exception:
                return None
        return res

    def initial_coeffs(self, endpoints: Sequence[float]) -> np.ndarray:
        """Least-squares monic P from the zero evaluation conditions."""
        if self.n_coeffs == 0:
            return np.empty(0)
        w = self.w
        one_p = 1.0 + w.total_exponent
        zs = np.asarray(w.zeros)
        rows, rhs = [], []
        for j, (z, p_j) in enumerate(zip(w.zeros, w.exponents)):
            sign = -1.0 if (self.L + _gap_index(endpoints, z)) % 2 else 1.0
            sqrt_r = math.sqrt(abs(float(_prod_diffs(z, endpoints))))
            others = float(np.prod(z - np.delete(zs, j)))
            target = sign * p_j * others / (one_p * sqrt_r) - z ** self.n_coeffs
            rows.append([z ** k for k in range(self.n_coeffs)])
            rhs.append(target)
        sol, *_ = np.linalg.lstsq(np.asarray(rows), np.asarray(rhs), rcond=None)
        return sol

    def solve(self, theta0: np.ndarray) -> tuple[np.ndarray, float] | None:
        theta = theta0.copy()
        res = self.residual(theta)
        if res is None:
            return None
        norm = float(np.max(np.abs(res)))
        scale = self.w.interval[1] - self.w.interval[0]
        for _ in range(self.opts.newton_max_iter):
            if norm < self.opts.newton_tol:
                break
            jac = np.empty((self.dim, self.dim))
            ok = True
            for k in range(self.dim):
                h = 1e-7 * max(abs(theta[k]), scale)
                tp, tm = theta.copy(), theta.copy()
                tp[k] += h
                tm[k] -= h
                rp, rm = self.residual(tp), self.residual(tm)
                if rp is None or rm is None:
                    ok = False
                    break
                jac[:, k] = (rp - rm) / (2.0 * h)
            if not ok:
                return None
            try:
                delta = np.linalg.solve(jac, -res)
            except np.linalg.LinAlgError:
                return None
            lam = 1.0
            improved = False
            for _ in range(self.opts.max_damping_halvings):
                trial = theta + lam * delta
                r_trial = self.residual(trial)
                if r_trial is not None and float(np.max(np.abs(r_trial))) < norm:
                    theta, res = trial, r_trial
                    norm = float(np.max(np.abs(r_trial)))
                    improved = True
                    break
                lam *= 0.5
            if not improved:
                return None
        if norm >= self.opts.accept_residual:
            return None
        return theta, norm


def _accept_solution(
    w: RootWeight, problem: _NewtonProblem, theta: np.ndarray, opts: SolveOptions
) -> tuple[SupportConfig, tuple[float, ...]] | None:
    endpoints, coeffs = problem.unpack(theta)
    if not problem.valid(endpoints):
        return None
    for i in range(problem.L):
        if endpoints[2 * i + 1] - endpoints[2 * i] < opts.min_interval_width:
            return None
    support = SupportConfig(
        endpoints=endpoints,
        gap_assignment=tuple(_gap_index(endpoints, z) for z in w.zeros),
    )
    measure = EquilibriumMeasure(weight=w, support=support, monic_coeffs=coeffs)
    for a_l, b_l in support.intervals:
        grid = np.linspace(a_l, b_l, opts.density_check_points)
        if np.min(measure.density(grid)) < -1e-10:
            return None
    return support, coeffs


def _solve_support(
    w: RootWeight, opts: SolveOptions = DEFAULT_OPTIONS
) -> tuple[SupportConfig, tuple[float, ...]]:
    _require_solver_form(w)
    discrete = discrete_energy_minimize(w, opts.grid_size, opts.grid_iterations)
    clusters = _propose_clusters(w, discrete)
    max_l = w.n_zeros - 1
    while len(clusters) > max_l:
        clusters.pop(int(np.argmin([c[2] for c in clusters])))
    while clusters:
        problem = _NewtonProblem(w, len(clusters), opts)
        endpoints0 = tuple(v for lo, hi, _ in clusters for v in (lo, hi))
        theta0 = np.concatenate(
            [np.asarray(endpoints0), problem.initial_coeffs(endpoints0)]
        )
        solved = problem.solve(theta0)
        if solved is not None:
            accepted = _accept_solution(w, problem, solved[0], opts)
            if accepted is not None:
                return accepted
        if len(clusters) == 1:
            break
        clusters.pop(int(np.argmin([c[2] for c in clusters])))
    raise NoFeasibleSupportError(
        f"no interval count from {len(_propose_clusters(w, discrete))} down to 1 "
        f"admits an accepted solve for zeros {w.zeros}"
    )


def determine_support(
    w: RootWeight, opts: SolveOptions = DEFAULT_OPTIONS
) -> SupportConfig:
    """Locate the support intervals of the equilibrium measure."""
    return _solve_support(w, opts)[0]


def solve_equilibrium(
    w: RootWeight, opts: SolveOptions = DEFAULT_OPTIONS
) -> EquilibriumMeasure:
    """Solve for the equilibrium measure of a root-form weight.

    Weights with no zeros get the arcsine measure of the segment; two-zero
    weights short-circuit to the closed form; anything larger runs support
    detection plus Newton refinement.
    """
    if w.n_zeros == 0:
        a, b = w.interval
        support = SupportConfig(endpoints=(a, b), gap_assignment=())
        return EquilibriumMeasure(weight=w, support=support, monic_coeffs=(1.0,))
    if w.n_zeros == 2:
        _require_solver_form(w)
        measure = _solve_two_zero(w)
    else:
        support, coeffs = _solve_support(w, opts)
        measure = EquilibriumMeasure(weight=w, support=support, monic_coeffs=coeffs)
    mass = measure.mass()
    if abs(mass - 1.0) > 1e-6:
        raise MassDeviationError(f"equilibrium mass {mass} deviates from 1")
    return measure


def recovered_leading_coeff(m: EquilibriumMeasure) -> float:
    """Leading coefficient of the density polynomial recovered by residue
    interpolation at the weight zeros (equals 1 at an exact solve)."""
    w = m.weight
    L = m.support.n_intervals
    one_p = 1.0 + w.total_exponent
    deg = w.n_zeros - L - 1
    acc = np.zeros(w.n_zeros)
    zs = np.asarray(w.zeros)
    for j, (z, p_j) in enumerate(zip(w.zeros, w.exponents)):
        sign = -1.0 if (L + _gap_index(m.support.endpoints, z)) % 2 else 1.0
        sqrt_r = sign * math.sqrt(abs(float(_prod_diffs(z, m.support.endpoints))))
        basis = np.polynomial.polynomial.polyfromroots(np.delete(zs, j))
        acc[: basis.size] += (p_j / sqrt_r) * basis
    return float(acc[deg] / one_p)


# --- capacity ---------------------------------------------------------------

def capacity(m: EquilibriumMeasure, constancy_samples: int = 25) -> CapacityReport:
    """Robin constant, minimal energy, and capacity of a solved measure.

    The Robin constant is read off at the midpoint of the widest support
    interval; the constancy residual samples the defining identity across the
    whole support and a violation beyond 1e-6 raises.
    """
    w = m.weight
    intervals = m.support.intervals
    parts = m.smooth_parts()
    widest = max(intervals, key=lambda iv: iv[1] - iv[0])
    x_star = 0.5 * (widest[0] + widest[1])
    u_star = m.potential(x_star)
    robin = u_star - log_weight(w, x_star)
    int_log_w = 0.0
    for (a_l, b_l), f in zip(intervals, parts):
        int_log_w += quad.sqrt_singular_converged(
            lambda t, f=f: f(t) * _logw_vec(w, t), a_l, b_l
        )
    energy = robin - int_log_w
    cap = math.exp(-energy)
    total_width = sum(b_l - a_l for a_l, b_l in intervals)
    residual = 0.0
    for a_l, b_l in intervals:
        n_l = max(2, round(constancy_samples * (b_l - a_l) / total_width))
        ts = a_l + (b_l - a_l) * (np.arange(1, n_l + 1) / (n_l + 1.0))
        for t in ts:
            dev = abs(m.potential(float(t)) - log_weight(w, float(t)) - robin)
            residual = max(residual, dev)
    if residual > 1e-6:
        raise ConstancyViolationError(
            f"potential minus log-weight varies by {residual} on the support"
        )
    return CapacityReport(
        robin_constant=robin,
        energy=energy,
        capacity=cap,
        equilibrium_constancy_residual=residual,
    )


def off_support_margin(
    m: EquilibriumMeasure, robin: float, n_probe: int = 500
) -> float:
    """Minimum of U - log w - F over probe points outside the support.

    Nonnegative (up to tolerance) for a correct solve.
    """
    w = m.weight
    a, b = w.interval
    segments = []
    prev = a
    for a_l, b_l in m.support.intervals:
        if a_l > prev:
            segments.append((prev, a_l))
        prev = b_l
    if b > prev:
        segments.append((prev, b))
    total = sum(hi - lo for lo, hi in segments)
    worst = math.inf
    for lo, hi in segments:
        count = max(2, round(n_probe * (hi - lo) / total))
        ts = lo + (hi - lo) * (np.arange(1, count + 1) / (count + 1.0))
        for t in ts:
            lw = log_weight(w, float(t))
            if lw == -math.inf:
                continue
            worst = min(worst, m.potential(float(t)) - lw - robin)
    return worst


def density_samples(m: EquilibriumMeasure, samples: int) -> np.ndarray:
    """(x, density) rows across the support at roughly uniform spacing."""
    intervals = m.support.intervals
    total = sum(b - a for a, b in intervals)
    rows = []
    for a_l, b_l in intervals:
        count = max(2, round(samples * (b_l - a_l) / total))
        xs = np.linspace(a_l, b_l, count)
        rows.append(np.column_stack([xs, m.density(xs)]))
    return np.vstack(rows)


# --- harmonic-measure cross-check -------------------------------------------

def _component_moment(
    endpoints: Sequence[float], comp: tuple[float, float], k: int, rtol: float
) -> float:
    """int over one support interval of t^k / sqrt|R(t)| dt."""
    a_l, b_l = comp
    rest = tuple(e for e in endpoints if e not in (a_l, b_l))

    def f(t):
        t = np.asarray(t, dtype=float)
        return t ** k / np.sqrt(np.abs(_prod_diffs(t, rest)))

    return quad.sqrt_singular_converged(f, a_l, b_l, rtol=rtol)


def _gap_moment(
    endpoints: Sequence[float],
    gap: tuple[float, float],
    k: int,
    pole: float | None,
    rtol: float,
) -> float:
    """int over a gap of t^k / ((t - pole) sqrt|R(t)|) dt, principal value if
    the pole sits inside; without a pole the plain 1/sqrt|R| moment."""
    c, d = gap
    rest = tuple(e for e in endpoints if e not in (c, d))

    def h(t):
        t = np.asarray(t, dtype=float)
        return t ** k / np.sqrt(np.abs(_prod_diffs(t, rest)))

    if pole is None:
        return quad.sqrt_singular_converged(h, c, d, rtol=rtol)
    if c < pole < d:
        hz = float(h(np.asarray([pole]))[0])

        def g(t):
            t = np.asarray(t, dtype=float)
            num = h(t) - hz
            den = t - pole
            small = np.abs(den) < 1e-13 * (d - c)
            den = np.where(small, 1.0, den)
            out = num / den
            if small.any():
                eps = 1e-7 * (d - c)
                slope = (h(np.asarray([pole + eps]))[0] - h(np.asarray([pole - eps]))[0]) / (2 * eps)
                out = np.where(small, slope, out)
            return out

        # PV of 1/((t-pole) sqrt((t-c)(d-t))) over the gap vanishes
        return quad.sqrt_singular_converged(g, c, d, rtol=rtol)

    def g(t):
        t = np.asarray(t, dtype=float)
        return h(t) / (t - pole)

    return quad.sqrt_singular_converged(g, c, d, rtol=rtol)


def _harmonic_numerators(
    w: RootWeight, support: SupportConfig, rtol: float
) -> tuple[np.ndarray, list[np.ndarray]]:
    """Numerator polynomials of the harmonic measures on the support.

    Returns the coefficients (ascending, length L) of the polynomial for the
    measure seen from infinity and one per weight zero.  Each is pinned by
    vanishing gap conditions plus a normalization row.
    """
    L = support.n_intervals
    endpoints = support.endpoints
    rows_gap = np.zeros((L - 1, L))
    for i, gap in enumerate(support.gaps):
        for k in range(L):
            rows_gap[i, k] = _gap_moment(endpoints, gap, k, None, rtol)
    # normalization row: signed component moments give unit total mass
    norm_row = np.zeros(L)
    for k in range(L):
        acc = 0.0
        for i, comp in enumerate(support.intervals):
            sign = -1.0 if (L + i) % 2 else 1.0
            acc += sign * _component_moment(endpoints, comp, k, rtol)
        norm_row[k] = acc / math.pi
    mat_inf = np.vstack([rows_gap, norm_row[None, :]])
    rhs_inf = np.zeros(L)
    rhs_inf[-1] = 1.0
    t_inf = _solve_moment_system(mat_inf, rhs_inf)

    t_zeros = []
    for z in w.zeros:
        rows = np.zeros((L, L))
        for i, gap in enumerate(support.gaps):
            for k in range(L):
                rows[i, k] = _gap_moment(endpoints, gap, k, z, rtol)
        # mass row: numerator at the pole equals the signed sqrt of R there
        g = _gap_index(endpoints, z)
        sign = -1.0 if (L + g) % 2 else 1.0
        rows[L - 1] = [z ** k for k in range(L)]
        rhs = np.zeros(L)
        rhs[L - 1] = sign * math.sqrt(abs(float(_prod_diffs(z, endpoints))))
        t_zeros.append(_solve_moment_system(rows, rhs))
    return t_inf, t_zeros


def _solve_moment_system(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        sol = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMomentSystemError(str(exc)) from exc
    if not np.all(np.isfinite(sol)) or np.linalg.cond(mat) > 1e12:
        raise SingularMomentSystemError("harmonic moment system is ill conditioned")
    return sol


def harmonic_measure_density(
    w: RootWeight,
    support: SupportConfig,
    xs: np.ndarray,
    rtol: float = 1e-12,
) -> np.ndarray:
    """Density of the equilibrium measure assembled from harmonic measures:
    (1 + p) times the measure at infinity minus the exponent-weighted
    measures at the zeros."""
    t_inf, t_zeros = _harmonic_numerators(w, support, rtol)
    L = support.n_intervals
    xs = np.asarray(xs, dtype=float)
    out = np.zeros_like(xs)
    one_p = 1.0 + w.total_exponent
    for i, (a_l, b_l) in enumerate(support.intervals):
        inside = (xs >= a_l) & (xs <= b_l)
        if not inside.any():
            continue
        t = xs[inside]
        sign = -1.0 if (L + i) % 2 else 1.0
        sqrt_r = np.sqrt(np.abs(_prod_diffs(t, support.endpoints)))
        num = one_p * _polyval_asc(t_inf, t)
        for z, p_j, t_z in zip(w.zeros, w.exponents, t_zeros):
            num = num - p_j * _polyval_asc(t_z, t) / (t - z)
        out[inside] = sign * num / (np.pi * sqrt_r)
    return out


def harmonic_cross_check(
    w: RootWeight,
    support: SupportConfig,
    monic_coeffs: Sequence[float] | None = None,
    check_points: int = 200,
    rtol: float = 1e-12,
) -> float:
    """Max deviation between the harmonic-measure density and the direct
    density formula over an interior check grid."""
    if monic_coeffs is None:
        measure = solve_equilibrium(w)
        monic_coeffs = measure.monic_coeffs
        support = measure.support
    m = EquilibriumMeasure(weight=w, support=support, monic_coeffs=tuple(monic_coeffs))
    grids = []
    for a_l, b_l in support.intervals:
        margin = 0.01 * (b_l - a_l)
        grids.append(np.linspace(a_l + margin, b_l - margin, check_points))
    xs = np.concatenate(grids)
    rho_h = harmonic_measure_density(w, support, xs, rtol=rtol)
    rho_d = m.density(xs)
    return float(np.max(np.abs(rho_h - rho_d)))
