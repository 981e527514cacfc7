"""Lower-bound coefficient for the psi-function integral and its optimization.

A weight of polynomial type on [0, 1] with aggregate exponent ``alpha`` and
weighted capacity ``c`` yields the coefficient ``-2 log(c) / (4 alpha + 3)``
in the quadratic lower bound for the integral of Chebyshev's psi-function.
The coefficient is provably below 1 for every such weight, so crossing 1 is
treated as a numerical bug and aborts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .equilibrium import capacity, solve_equilibrium
from .errors import BoundExceedsOneError
from .search import golden_max
from .weights import FactoredWeight, to_root_form


@dataclass(frozen=True)
class BoundReport:
    """Capacity and bound coefficient for one weight."""

    weight: FactoredWeight
    alpha: float
    capacity: float
    coefficient: float
    below_one: bool


def bound_coefficient(fw: FactoredWeight) -> BoundReport:
    """Bound coefficient -2 log(c_w) / (4 alpha + 3) of a factored weight."""
    w = to_root_form(fw)
    report = capacity(solve_equilibrium(w))
    alpha = fw.aggregate_exponent
    coeff = -2.0 * math.log(report.capacity) / (4.0 * alpha + 3.0)
    if not coeff < 1.0:
        raise BoundExceedsOneError(
            f"coefficient {coeff} >= 1 for weight {fw}; the strict inequality "
            "is a theorem, so this indicates a capacity bug"
        )
    return BoundReport(
        weight=fw,
        alpha=alpha,
        capacity=report.capacity,
        coefficient=coeff,
        below_one=coeff < 1.0,
    )


@dataclass(frozen=True)
class OptimizeOptions:
    """Knobs for exponent optimization."""

    lower: float = 1e-4
    upper: float = 10.0
    tied: bool = False
    bracket: tuple[float, float] = (0.05, 0.5)
    golden_tol: float = 1e-6
    xatol: float = 1e-7
    fatol: float = 1e-12
    max_iterations: int = 500
    restarts: int = 1


def optimize_exponents(
    factor_polys: Sequence[Sequence[int]],
    alpha0: Sequence[float],
    opts: OptimizeOptions = OptimizeOptions(),
) -> tuple[tuple[float, ...], BoundReport]:
    """Maximize the bound coefficient over factor exponents.

    Factor polynomials stay fixed; exponents move inside the box
    ``[opts.lower, opts.upper]``.  With ``opts.tied`` all exponents are a
    single parameter maximized by golden section on ``opts.bracket``;
    otherwise Nelder-Mead runs from ``alpha0`` with one restart from the best
    point.  Evaluations are memoized (each one is an equilibrium solve) and a
    failing probe scores -inf.  Deterministic for fixed inputs.
    """
    polys = tuple(tuple(int(c) for c in p) for p in factor_polys)
    interval = (0.0, 1.0)
    cache: dict[tuple[float, ...], float] = {}

    def coeff_at(alphas: Sequence[float]) -> float:
        clipped = tuple(min(max(float(a), opts.lower), opts.upper) for a in alphas)
        key = tuple(round(a, 12) for a in clipped)
        if key not in cache:
            try:
                fw = FactoredWeight(
                    interval=interval, factors=tuple(zip(polys, clipped))
                )
                cache[key] = bound_coefficient(fw).coefficient
            except BoundExceedsOneError:
                raise
            except Exception:
                cache[key] = -math.inf
        return cache[key]

    if opts.tied:
        t_best, _ = golden_max(
            lambda t: coeff_at([t] * len(polys)),
            opts.bracket[0],
            opts.bracket[1],
            opts.golden_tol,
        )
        best = tuple([t_best] * len(polys))
    else:
        x0 = np.asarray([float(a) for a in alpha0])
        if x0.size != len(polys):
            raise ValueError("alpha0 length must match factor count")
        best = tuple(x0)
        for _ in range(1 + opts.restarts):
            res = minimize(
                lambda v: -coeff_at(v),
                np.asarray(best),
                method="Nelder-Mead",
                bounds=[(opts.lower, opts.upper)] * len(polys),
                options={
                    "xatol": opts.xatol,
                    "fatol": opts.fatol,
                    "maxiter": opts.max_iterations,
                },
            )
            candidate = tuple(
                min(max(float(a), opts.lower), opts.upper) for a in res.x
            )
            if coeff_at(candidate) >= coeff_at(best):
                best = candidate
    fw_best = FactoredWeight(interval=interval, factors=tuple(zip(polys, best)))
    return best, bound_coefficient(fw_best)


def sweep_bound(
    factor_polys: Sequence[Sequence[int]],
    t_lo: float,
    t_hi: float,
    steps: int,
    jobs: int = 1,
) -> list[tuple[float, float]]:
    """Tied-exponent sweep: coefficient at each of ``steps`` points.

    Rows are ordered by parameter value regardless of worker scheduling.
    """
    polys = tuple(tuple(int(c) for c in p) for p in factor_polys)
    ts = [t_lo + (t_hi - t_lo) * i / (steps - 1) for i in range(steps)] if steps > 1 else [t_lo]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_tied_coefficient, [(polys, t) for t in ts]))
    else:
        values = [_tied_coefficient((polys, t)) for t in ts]
    return list(zip(ts, values))


def _tied_coefficient(args: tuple[tuple, float]) -> float:
    polys, t = args
    fw = FactoredWeight(interval=(0.0, 1.0), factors=tuple((p, t) for p in polys))
    return bound_coefficient(fw).coefficient
