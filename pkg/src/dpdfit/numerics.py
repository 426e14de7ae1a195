"""Shared numerical kernels: special functions, half-line quadrature,
derivative-free minimization, bracketed root finding, CDF inversion.

Everything here is a pure function of its inputs; no module state.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special

from .errors import BracketingError, DomainError, InversionError, QuadratureError

__all__ = [
    "QuadratureSpec",
    "OptimizerSpec",
    "log_gamma",
    "reg_incomplete_gamma_lower",
    "std_normal_cdf",
    "integrate_halfline",
    "minimize",
    "find_root_bracketed",
    "invert_cdf",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings for adaptive quadrature over [0, inf).

    The half line is mapped onto (0, 1) by x = t/(1-t) before panels are
    laid down, so integrands must decay fast enough to be integrable.
    """

    abs_tolerance: float = 1e-10
    rel_tolerance: float = 1e-8
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.abs_tolerance <= 0 or self.rel_tolerance <= 0:
            raise DomainError("quadrature tolerances must be strictly positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


@dataclass(frozen=True)
class OptimizerSpec:
    """Settings for the derivative-free minimizer."""

    param_tolerance: float = 1e-8
    objective_tolerance: float = 1e-10
    max_evaluations: int = 10000
    restart_count: int = 2

    def __post_init__(self):
        if self.param_tolerance <= 0 or self.objective_tolerance <= 0:
            raise DomainError("optimizer tolerances must be strictly positive")
        if self.max_evaluations < 1 or self.restart_count < 0:
            raise DomainError("max_evaluations must be >= 1 and restart_count >= 0")


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    if not np.all(np.asarray(x) > 0):
        raise DomainError("log_gamma requires x > 0")
    return special.gammaln(x)


def reg_incomplete_gamma_lower(a, x):
    """Regularized lower incomplete gamma P(a, x); the Gamma(a, 1) CDF."""
    if not np.all(np.asarray(a) > 0):
        raise DomainError("reg_incomplete_gamma_lower requires a > 0")
    if not np.all(np.asarray(x) >= 0):
        raise DomainError("reg_incomplete_gamma_lower requires x >= 0")
    return special.gammainc(a, x)


def std_normal_cdf(z):
    """Standard normal CDF."""
    return special.ndtr(z)


def integrate_halfline(f, spec=None):
    """Integrate f over [0, inf); returns (value, err_estimate).

    Raises QuadratureError if the error estimate exceeds
    10 * max(abs_tolerance, rel_tolerance * |value|) or the adaptive
    scheme runs out of subdivisions; the exception carries the best
    estimate found.
    """
    if spec is None:
        spec = QuadratureSpec()

    def transformed(t):
        # x = t/(1-t) maps (0,1) onto (0,inf); dx = dt/(1-t)^2
        u = 1.0 - t
        return f(t / u) / (u * u)

    out = integrate.quad(
        transformed,
        0.0,
        1.0,
        epsabs=spec.abs_tolerance,
        epsrel=spec.rel_tolerance,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    value, err = out[0], out[1]
    if len(out) > 3 or not (np.isfinite(value) and np.isfinite(err)):
        raise QuadratureError(
            "quadrature did not converge within max_subdivisions",
            value=value,
            err_estimate=err,
        )
    if err > 10.0 * max(spec.abs_tolerance, spec.rel_tolerance * abs(value)):
        raise QuadratureError(
            f"quadrature error estimate {err:.3e} too large for value {value:.6e}",
            value=value,
            err_estimate=err,
        )
    return value, err


def _nelder_mead(objective, x0, spec, budget, initial_step=None):
    """One simplex descent. Returns (x, fx, converged, evals_used).

    Standard reflect/expand/contract/shrink coefficients; non-finite
    objective values are treated as +inf so the step is rejected.
    """
    evals = 0

    def call(x):
        nonlocal evals
        evals += 1
        v = float(objective(x))
        return v if np.isfinite(v) else np.inf

    k = x0.size
    sim = np.empty((k + 1, k))
    sim[0] = x0
    for i in range(k):
        if initial_step is not None:
            step = initial_step
        else:
            step = 0.05 * abs(x0[i]) if abs(x0[i]) > 1e-12 else 0.00025
        sim[i + 1] = x0
        sim[i + 1, i] += step
    fsim = np.array([call(v) for v in sim])

    converged = False
    while evals < budget:
        order = np.argsort(fsim, kind="stable")
        sim, fsim = sim[order], fsim[order]
        if (
            np.max(np.abs(sim[1:] - sim[0])) <= spec.param_tolerance
            and np.max(np.abs(fsim[1:] - fsim[0])) <= spec.objective_tolerance
        ):
            converged = True
            break

        centroid = sim[:-1].mean(axis=0)
        xr = centroid + (centroid - sim[-1])
        fr = call(xr)
        if fr < fsim[0]:
            xe = centroid + 2.0 * (centroid - sim[-1])
            fe = call(xe)
            if fe < fr:
                sim[-1], fsim[-1] = xe, fe
            else:
                sim[-1], fsim[-1] = xr, fr
        elif fr < fsim[-2]:
            sim[-1], fsim[-1] = xr, fr
        else:
            if fr < fsim[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (sim[-1] - centroid)
            fc = call(xc)
            if fc < min(fr, fsim[-1]):
                sim[-1], fsim[-1] = xc, fc
            else:
                for i in range(1, k + 1):
                    sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                    fsim[i] = call(sim[i])

    best = int(np.argmin(fsim))
    return sim[best], fsim[best], converged, evals


def minimize(objective, start, spec=None, initial_step=None):
    """Derivative-free minimization in one or two variables.

    Runs a simplex search from `start`, then `restart_count` further
    searches from randomly perturbed copies of the best point so far
    (fixed internal seed, so results are deterministic). Returns
    (argmin, value, converged); `converged` reports whether the run
    that produced the returned point met both tolerances within the
    evaluation budget. `initial_step` overrides the default simplex
    edge length; warm-started callers pass something small.
    """
    if spec is None:
        spec = OptimizerSpec()
    x0 = np.atleast_1d(np.asarray(start, dtype=float))
    k = x0.size
    if k not in (1, 2):
        raise DomainError("minimize handles one or two variables only")
    f0 = float(objective(x0))
    if not np.isfinite(f0):
        raise DomainError("objective is non-finite at the start point")

    rng = np.random.default_rng(181621)
    remaining = spec.max_evaluations
    best_x, best_f, best_conv = x0, f0, False
    origin = x0
    for attempt in range(spec.restart_count + 1):
        if remaining <= 0:
            break
        if attempt > 0:
            origin = best_x + rng.normal(0.0, 0.1, size=k) * (1.0 + np.abs(best_x))
            if not np.isfinite(float(objective(origin))):
                continue
        x, fx, conv, used = _nelder_mead(
            objective, origin, spec, remaining, initial_step=initial_step
        )
        remaining -= used
        if fx < best_f or (fx == best_f and conv and not best_conv):
            best_x, best_f, best_conv = x, fx, conv
    return best_x, best_f, best_conv


def find_root_bracketed(f, lo, hi):
    """Brent root finding on [lo, hi]; endpoints must straddle a root."""
    flo, fhi = f(lo), f(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)) or flo * fhi > 0:
        raise BracketingError(f"no sign change on [{lo:g}, {hi:g}]")
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    return optimize.brentq(f, lo, hi, xtol=1e-12, rtol=4 * np.finfo(float).eps)


def invert_cdf(cdf, p):
    """Solve cdf(x) = p for x > 0 by bracket expansion then bisection."""
    if not 0.0 < p < 1.0:
        raise DomainError("invert_cdf requires p in (0, 1)")
    lo = hi = 1.0
    while cdf(hi) < p:
        lo = hi
        hi *= 2.0
        if hi > 1e308:
            raise InversionError("bracket expansion exceeded 1e308")
    while cdf(lo) > p:
        hi = lo
        lo /= 2.0
        if lo < 1e-308:
            raise InversionError("bracket expansion underflowed")
    for _ in range(500):
        mid = 0.5 * (lo + hi)
        c = cdf(mid)
        if abs(c - p) <= 1e-10:
            return mid
        if c < p:
            lo = mid
        else:
            hi = mid
        if hi - lo <= np.finfo(float).eps * mid:
            break
    raise InversionError(f"bisection stalled at p={p:g}")
