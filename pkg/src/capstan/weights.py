"""Weight functions of polynomial type on a real segment.

Two equivalent representations are supported: a product of integer-coefficient
polynomial factors raised to positive powers (``FactoredWeight``), and the
fully factored form ``A * prod |x - z_i|^{p_i}`` with the multiplier kept in
log space (``RootWeight``).  Conversion between the two locates the factor
roots exactly (sympy's real root isolation on integer polynomials), merges
repeated or shared roots, and snaps roots onto the segment endpoints within a
tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .errors import ComplexRootError, RootOutsideIntervalError, WeightError

DEFAULT_ROOT_TOL = 1e-10

Exponent = float | Fraction


@dataclass(frozen=True)
class FactoredWeight:
    """Weight ``prod_i |Q_i(x)|^{alpha_i}`` on ``[a, b]``.

    ``factors`` is a sequence of ``(coeffs, exponent)`` pairs, where ``coeffs``
    lists the integer coefficients of one factor polynomial in ascending
    degree order.  An empty factor list denotes the constant weight 1.
    """

    interval: tuple[float, float]
    factors: tuple[tuple[tuple[int, ...], Exponent], ...]

    def __post_init__(self):
        a, b = self.interval
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise WeightError(f"invalid interval [{a}, {b}]")
        norm = []
        for coeffs, alpha in self.factors:
            coeffs = tuple(int(c) for c in coeffs)
            while coeffs and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
            if len(coeffs) < 2:
                raise WeightError(f"factor {coeffs} must have degree >= 1")
            if not alpha > 0:
                raise WeightError(f"exponent {alpha} must be positive")
            norm.append((coeffs, alpha))
        object.__setattr__(self, "factors", tuple(norm))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(c) - 1 for c, _ in self.factors)

    @property
    def aggregate_exponent(self) -> float:
        """Sum of exponent times degree over all factors."""
        return float(sum(alpha * (len(c) - 1) for c, alpha in self.factors))

    def log_value(self, x: float) -> float:
        """log of the weight at x; -inf at a root of any factor."""
        total = 0.0
        for coeffs, alpha in self.factors:
            q = _polyval(coeffs, x)
            if q == 0.0:
                return -math.inf
            total += float(alpha) * math.log(abs(q))
        return total


@dataclass(frozen=True)
class RootWeight:
    """Weight ``exp(logA) * prod_j |x - z_j|^{p_j}`` on ``[a, b]``.

    Zeros are strictly increasing and lie inside the segment.  ``K = 0``
    (no zeros) denotes the constant weight ``exp(logA)``.
    """

    interval: tuple[float, float]
    logA: float = 0.0
    zeros: tuple[float, ...] = ()
    exponents: tuple[float, ...] = ()

    def __post_init__(self):
        a, b = self.interval
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise WeightError(f"invalid interval [{a}, {b}]")
        if len(self.zeros) != len(self.exponents):
            raise WeightError("zeros and exponents must have equal length")
        for z in self.zeros:
            if not (a <= z <= b):
                raise RootOutsideIntervalError(f"zero {z} outside [{a}, {b}]")
        for z0, z1 in zip(self.zeros, self.zeros[1:]):
            if not z0 < z1:
                raise WeightError("zeros must be strictly increasing")
        for p in self.exponents:
            if not p > 0:
                raise WeightError(f"exponent {p} must be positive")

    @property
    def n_zeros(self) -> int:
        return len(self.zeros)

    @property
    def total_exponent(self) -> float:
        """Sum of all zero exponents."""
        return float(sum(self.exponents))

    def spans_endpoints(self) -> bool:
        """True when the first zero is a and the last is b (solver form)."""
        a, b = self.interval
        return self.n_zeros >= 2 and self.zeros[0] == a and self.zeros[-1] == b


def log_weight(w: RootWeight, x: float) -> float:
    """log w(x) = logA + sum_j p_j log|x - z_j|; -inf exactly at a zero."""
    total = w.logA
    for z, p in zip(w.zeros, w.exponents):
        d = x - z
        if d == 0.0:
            return -math.inf
        total += p * math.log(abs(d))
    return total


def to_root_form(fw: FactoredWeight, root_tol: float = DEFAULT_ROOT_TOL) -> RootWeight:
    """Convert a factored weight to root form.

    All factor roots must be real and lie in the weight's interval (within
    ``root_tol``).  Roots closer than ``root_tol`` merge with exponents
    summed; a root of multiplicity s in a factor contributes s times that
    factor's exponent.  Roots within ``root_tol`` of an interval endpoint are
    snapped onto it.
    """
    a, b = fw.interval
    raw: list[tuple[float, float]] = []
    log_a = 0.0
    x = sympy.Symbol("x")
    for coeffs, alpha in fw.factors:
        log_a += float(alpha) * math.log(abs(coeffs[-1]))
        poly = sympy.Poly(list(reversed(coeffs)), x)
        roots = poly.real_roots()
        if len(roots) < len(coeffs) - 1:
            raise ComplexRootError(f"factor {coeffs} has nonreal roots")
        for r in roots:
            rv = float(r.evalf(30))
            if rv < a - root_tol or rv > b + root_tol:
                raise RootOutsideIntervalError(
                    f"root {rv} of factor {coeffs} outside [{a}, {b}]"
                )
            rv = min(max(rv, a), b)
            if abs(rv - a) <= root_tol:
                rv = a
            elif abs(rv - b) <= root_tol:
                rv = b
            raw.append((rv, float(alpha)))
    raw.sort()
    zeros: list[float] = []
    expos: list[float] = []
    for rv, p in raw:
        if zeros and rv - zeros[-1] <= root_tol:
            expos[-1] += p
        else:
            zeros.append(rv)
            expos.append(p)
    return RootWeight(
        interval=fw.interval,
        logA=log_a,
        zeros=tuple(zeros),
        exponents=tuple(expos),
    )


def _polyval(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# --- weight config files -----------------------------------------------

def parse_weight_config(text: str) -> FactoredWeight:
    """Parse the JSON weight config: interval plus factor coeff/exponent list.

    Exponents may be numbers or strings like "39/200"; either way they are
    kept as exact rationals so the certificate path can consume them.
    """
    data = json.loads(text)
    if not isinstance(data, dict):
        raise WeightError("weight config must be a JSON object")
    unknown = set(data) - {"interval", "factors"}
    if unknown:
        raise WeightError(f"unknown weight config keys: {sorted(unknown)}")
    try:
        a, b = data["interval"]
        factors = []
        for item in data.get("factors", []):
            bad = set(item) - {"coeffs", "exponent"}
            if bad:
                raise WeightError(f"unknown factor keys: {sorted(bad)}")
            expo = item["exponent"]
            expo = Fraction(str(expo)) if not isinstance(expo, Fraction) else expo
            factors.append((tuple(int(c) for c in item["coeffs"]), expo))
    except (KeyError, TypeError, ValueError) as exc:
        raise WeightError(f"malformed weight config: {exc}") from exc
    return FactoredWeight(interval=(float(a), float(b)), factors=tuple(factors))


def serialize_weight_config(fw: FactoredWeight) -> str:
    """Inverse of parse_weight_config (round-trips exactly)."""
    factors = [
        {"coeffs": list(c), "exponent": str(e) if isinstance(e, Fraction) else e}
        for c, e in fw.factors
    ]
    return json.dumps(
        {"interval": list(fw.interval), "factors": factors}, indent=2
    )
