"""Command-line front end.

Every subcommand reads a weight config (JSON with an interval and integer
coefficient factor list), runs the requested computation, and writes JSON or
CSV.  Output is deterministic: fixed key order, floats at 12 significant
digits, comma-separated CSV with a header row and LF line endings.

Exit codes: 0 success, 1 validation error, 2 solver failure, 3 certificate
integrity failure.
"""

from __future__ import annotations

import os
import sys
from fractions import Fraction

import click

from . import equilibrium, fekete, gsbound, primes
from .errors import (
    BoundExceedsOneError,
    BudgetExceededError,
    CapstanError,
    ConstancyViolationError,
    MassDeviationError,
    NoFeasibleSupportError,
    NonIntegerCertificateError,
    QuadratureConvergenceError,
    SingularMomentSystemError,
    WeightError,
)
from .weights import FactoredWeight, parse_weight_config, to_root_form

_SOLVER_ERRORS = (
    NoFeasibleSupportError,
    MassDeviationError,
    ConstancyViolationError,
    QuadratureConvergenceError,
    SingularMomentSystemError,
    BoundExceedsOneError,
    BudgetExceededError,
)


def render_json(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, 12-significant-digit floats."""
    pieces: list[str] = []
    _render(obj, pieces)
    return "".join(pieces)


def _render(obj, out: list[str]):
    if isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(f'"{k}": ')
            _render(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _render(v, out)
        out.append("]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, float):
        out.append(format(obj, ".12g"))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif obj is None:
        out.append("null")
    else:
        out.append('"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"')


def _write(text: str, output: str):
    if output == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(format(v, ".12g") if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _load_weight(path: str) -> FactoredWeight:
    with open(path) as fh:
        return parse_weight_config(fh.read())


def _weight_json(fw: FactoredWeight) -> dict:
    return {
        "interval": list(fw.interval),
        "factors": [
            {"coeffs": list(c), "exponent": str(e) if isinstance(e, Fraction) else e}
            for c, e in fw.factors
        ],
    }


_jobs_option = click.option(
    "--jobs",
    type=int,
    default=lambda: int(os.environ.get("CAPSTAN_JOBS", "1")),
    help="worker pool size (default: CAPSTAN_JOBS or 1)",
)
_weight_option = click.option(
    "--weight", "weight_path", required=True, type=click.Path(exists=True),
    help="weight config JSON",
)
_output_option = click.option(
    "--output", default="-", help="output path ('-' for stdout)"
)


@click.group()
def main():
    """Weighted capacities, equilibrium measures, and psi-function bounds."""


@main.command()
@_weight_option
@_output_option
def capacity(weight_path, output):
    """Capacity report for a weight."""
    fw = _load_weight(weight_path)
    measure = equilibrium.solve_equilibrium(to_root_form(fw))
    rep = equilibrium.capacity(measure)
    _write(
        render_json(
            {
                "weight": _weight_json(fw),
                "c_w": rep.capacity,
                "V_w": rep.energy,
                "F_w": rep.robin_constant,
                "constancy_residual": rep.equilibrium_constancy_residual,
            }
        ),
        output,
    )


@main.command()
@_weight_option
@_output_option
def support(weight_path, output):
    """Support intervals of the equilibrium measure."""
    fw = _load_weight(weight_path)
    w = to_root_form(fw)
    measure = equilibrium.solve_equilibrium(w)
    cfg = measure.support
    _write(
        render_json(
            {
                "L": cfg.n_intervals,
                "endpoints": list(cfg.endpoints),
                "gap_assignment": list(cfg.gap_assignment),
            }
        ),
        output,
    )


@main.command()
@_weight_option
@click.option("--samples", type=int, default=200, help="sample count across the support")
@_output_option
def density(weight_path, samples, output):
    """CSV of the equilibrium density."""
    fw = _load_weight(weight_path)
    measure = equilibrium.solve_equilibrium(to_root_form(fw))
    rows = equilibrium.density_samples(measure, samples)
    _write(_csv("x,density", ((float(x), float(d)) for x, d in rows)), output)


@main.command()
@_weight_option
@_output_option
def bound(weight_path, output):
    """Bound coefficient report for a weight."""
    fw = _load_weight(weight_path)
    rep = gsbound.bound_coefficient(fw)
    _write(
        render_json(
            {
                "weight": _weight_json(fw),
                "alpha": rep.alpha,
                "c_w": rep.capacity,
                "B": rep.coefficient,
                "B_lt_1": rep.below_one,
            }
        ),
        output,
    )


@main.command()
@_weight_option
@click.option("--mode", type=click.Choice(["tied", "free"]), default="tied")
@click.option("--bracket", default="0.05:0.5", help="tied-mode search bracket t0:t1")
@click.option("--sweep", default=None, help="also emit a tied sweep CSV: t0:t1:steps")
@click.option("--sweep-output", default=None, help="path for the sweep CSV")
@_jobs_option
@_output_option
def optimize(weight_path, mode, bracket, sweep, sweep_output, jobs, output):
    """Maximize the bound coefficient over exponents."""
    fw = _load_weight(weight_path)
    polys = tuple(c for c, _ in fw.factors)
    if not polys:
        raise WeightError("optimization needs at least one factor")
    if sweep is not None:
        t0, t1, steps = sweep.split(":")
        rows = gsbound.sweep_bound(polys, float(t0), float(t1), int(steps), jobs=jobs)
        _write(_csv("t,B", rows), sweep_output or "-")
    t_lo, t_hi = (float(v) for v in bracket.split(":"))
    opts = gsbound.OptimizeOptions(tied=(mode == "tied"), bracket=(t_lo, t_hi))
    alpha0 = tuple(float(e) for _, e in fw.factors)
    best, rep = gsbound.optimize_exponents(polys, alpha0, opts)
    _write(
        render_json(
            {
                "mode": mode,
                "exponents": [float(v) for v in best],
                "alpha": rep.alpha,
                "c_w": rep.capacity,
                "B": rep.coefficient,
                "B_lt_1": rep.below_one,
            }
        ),
        output,
    )


@main.command(name="psi-check")
@click.option("--limit", type=int, required=True, help="sieve limit")
@click.option("--coefficient", type=float, required=True, help="coefficient to test against")
@click.option("--x-min", type=int, default=None, help="window start (default limit // 100)")
@click.option("--rows", type=int, default=200, help="CSV row count (log-spaced)")
@_output_option
def psi_check(limit, coefficient, x_min, rows, output):
    """Empirical check of the psi-integral lower bound; CSV plus summary."""
    import numpy as np

    table = primes.build_psi(limit)
    x_min = x_min if x_min is not None else max(2, limit // 100)
    rep = primes.empirical_bound_check(table, coefficient, x_min)
    xs = np.unique(
        np.rint(np.logspace(np.log10(x_min), np.log10(limit), rows)).astype(int)
    )
    csv_rows = [
        (
            int(x),
            table.psi(x),
            table.integral(x),
            table.integral(x) / (0.5 * float(x) ** 2),
        )
        for x in xs
    ]
    _write(_csv("x,psi,I,ratio", csv_rows), output)
    sys.stderr.write(
        f"min ratio {rep.min_ratio:.12g} at x={rep.argmin_x}; "
        f"ratio at {limit}: {rep.ratio_at_limit:.12g}; "
        f"coefficient {coefficient:.12g} "
        f"{'satisfied' if rep.satisfied else 'VIOLATED'}\n"
    )
    if not rep.satisfied:
        raise CapstanError("empirical ratio fell below the coefficient")


@main.command(name="fekete")
@_weight_option
@click.option("--nmax", type=int, required=True, help="largest point count")
@_jobs_option
@_output_option
def fekete_cmd(weight_path, nmax, jobs, output):
    """CSV of normalized Vandermonde maxima d_n for n = 2..nmax."""
    fw = _load_weight(weight_path)
    w = to_root_form(fw)
    ns = list(range(2, nmax + 1))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            sets = list(pool.map(fekete.fekete_points, [w] * len(ns), ns))
    else:
        sets = [fekete.fekete_points(w, n) for n in ns]
    _write(_csv("n,d_n", ((s.n, s.diameter()) for s in sets)), output)


@main.command()
@_weight_option
@click.option("--n", "n_points", type=int, required=True, help="variable count (2-4)")
@_output_option
def certify(weight_path, n_points, output):
    """Exact integer certificate and the psi-sum bound it implies."""
    fw = _load_weight(weight_path)
    cert = fekete.exact_gs_certificate(fw, n_points)
    _write(
        render_json(
            {
                "n": cert.n,
                "weight": _weight_json(cert.weight),
                "degree_shift": cert.degree_shift,
                "exact_integral": f"{cert.exact_integral.numerator}/{cert.exact_integral.denominator}",
                "lcm_product": str(cert.lcm_product),
                "certified_integer": str(cert.certified_integer),
                "psi_sum_lower_bound": cert.psi_sum_lower_bound,
                "psi_sum_actual": cert.psi_sum_actual,
                "psi_window": [cert.n + cert.degree_shift, 2 * cert.n - 1 + cert.degree_shift],
            }
        ),
        output,
    )


@main.command(name="cross-check")
@_weight_option
@_output_option
def cross_check(weight_path, output):
    """Residual between the direct density and its harmonic-measure form."""
    fw = _load_weight(weight_path)
    w = to_root_form(fw)
    measure = equilibrium.solve_equilibrium(w)
    residual = equilibrium.harmonic_cross_check(
        w, measure.support, measure.monic_coeffs
    )
    _write(render_json({"residual": residual}), output)


def run(argv: list[str]) -> int:
    """Dispatch argv and map failures onto documented exit codes."""
    try:
        main.main(args=argv, standalone_mode=False)
        return 0
    except NonIntegerCertificateError as exc:
        sys.stderr.write(f"certificate integrity failure: {exc}\n")
        return 3
    except _SOLVER_ERRORS as exc:
        sys.stderr.write(f"solver failure: {exc}\n")
        return 2
    except (WeightError, click.ClickException, click.UsageError, OSError, ValueError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return 1
    except CapstanError as exc:
        sys.stderr.write(f"solver failure: {exc}\n")
        return 2


def entry():  # pragma: no cover - thin shim for the console script
    sys.exit(run(sys.argv[1:]))
