"""Bootstrap standard errors and seeded sample generation.

All randomness comes from the counter-based Philox generator. Stream
r of a seed is Philox(SeedSequence(seed, spawn_key=(r,))), so every
replicate's draws are fixed by (seed, r) alone and results cannot
depend on execution order or thread count.
"""

import csv
import warnings
from dataclasses import dataclass

import numpy as np

from .dataio import Sample
from .errors import DomainError, DpdError, FitError
from .estimator import _sample_values, fit
from .families import ParamVector, quantile

__all__ = [
    "BootstrapResult",
    "ContaminationScheme",
    "bootstrap_se",
    "sample_family",
    "simulate_contaminated",
]


def _stream(seed, r):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(r,))))


def _as_param_vector(family, theta):
    if isinstance(theta, ParamVector):
        if theta.family is not family:
            raise DomainError(f"theta is for {theta.family.tag}, expected {family.tag}")
        return theta
    return ParamVector(family, tuple(theta))


@dataclass(frozen=True)
class BootstrapResult:
    """Replicate estimates and their spread around a full-sample fit.

    replicate_estimates holds converged replicates only, one row per
    replicate id in replicate_ids; failures counts the dropped ones.
    """

    fit: object
    B: int
    se: tuple
    replicate_estimates: tuple
    replicate_ids: tuple
    failures: int
    warning: str = None

    def estimates_to_csv(self, path_or_fp):
        names = self.fit.family.param_names

        def _write(fh):
            writer = csv.writer(fh)
            writer.writerow(["replicate", "param", "value"])
            for rid, est in zip(self.replicate_ids, self.replicate_estimates):
                for name, v in zip(names, est):
                    writer.writerow([rid, name, repr(float(v))])

        if hasattr(path_or_fp, "write"):
            _write(path_or_fp)
        else:
            with open(path_or_fp, "w", newline="", encoding="utf-8") as fh:
                _write(fh)


@dataclass(frozen=True)
class ContaminationScheme:
    """Mixture (1 - epsilon) base + epsilon at a point or displaced law.

    point_or_dist is either a positive contamination point y or a
    ParamVector of the displaced distribution to draw from.
    """

    epsilon: float
    point_or_dist: object
    seed: int = 0

    def __post_init__(self):
        eps = float(self.epsilon)
        if not 0.0 <= eps < 0.5:
            raise DomainError(f"epsilon must lie in [0, 0.5), got {eps}")
        object.__setattr__(self, "epsilon", eps)
        pod = self.point_or_dist
        if isinstance(pod, ParamVector):
            return
        try:
            y = float(pod)
        except (TypeError, ValueError):
            raise DomainError(
                "point_or_dist must be a positive point or a ParamVector"
            ) from None
        if not np.isfinite(y) or y <= 0.0:
            raise DomainError(f"contamination point must be positive and finite, got {y}")
        object.__setattr__(self, "point_or_dist", y)


def sample_family(family, theta, n, seed):
    """n inverse-CDF draws from the family at theta, fixed by seed."""
    p = _as_param_vector(family, theta)
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    u = _stream(seed, 0).random(int(n))
    # random() can return exactly 0, which the quantile domain excludes.
    u = np.maximum(u, 1e-300)
    xs = quantile(p, u)
    return Sample(
        values=tuple(float(v) for v in np.atleast_1d(xs)),
        dry_count=0,
        label=f"{family.tag}-sim-{seed}",
    )


def simulate_contaminated(family, theta, scheme, n):
    """Base draws with each observation independently replaced with
    probability epsilon; epsilon = 0 reproduces sample_family bit for
    bit because replacement uses a separate stream."""
    base = sample_family(family, theta, n, scheme.seed)
    xs = np.asarray(base.values, dtype=float)
    rng = _stream(scheme.seed, 1)
    marks = rng.random(int(n)) < scheme.epsilon
    k = int(np.count_nonzero(marks))
    if k:
        pod = scheme.point_or_dist
        if isinstance(pod, ParamVector):
            u = np.maximum(rng.random(k), 1e-300)
            xs[marks] = np.atleast_1d(quantile(pod, u))
        else:
            xs[marks] = pod
    return Sample(
        values=tuple(float(v) for v in xs),
        dry_count=0,
        label=f"{family.tag}-contam-{scheme.seed}",
    )


def bootstrap_se(family, alpha, sample, B=1000, seed=0):
    """Nonparametric bootstrap around the full-sample fit.

    Each replicate resamples n observations with replacement and
    refits warm-started at the full-sample estimate; se is the
    per-parameter standard deviation over converged replicates with
    divisor B_conv - 1. More than 5% failures attaches a warning.
    """
    if B < 2:
        raise DomainError(f"need B >= 2, got {B}")
    full = fit(family, alpha, sample)
    xs = _sample_values(sample)
    n = xs.size
    estimates = []
    ids = []
    failures = 0
    for r in range(int(B)):
        idx = _stream(seed, r).integers(0, n, size=n)
        with warnings.catch_warnings():
            # Non-convergence warnings are aggregated into the failure
            # count instead of being emitted B times.
            warnings.simplefilter("ignore", RuntimeWarning)
            try:
                res = fit(family, alpha, xs[idx], warm_start=full.theta_hat, fast=True)
            except DpdError:
                failures += 1
                continue
        if not res.converged:
            failures += 1
            continue
        estimates.append(tuple(float(v) for v in res.theta_hat.values))
        ids.append(r)
    if len(estimates) < 2:
        raise FitError(
            f"bootstrap needs at least 2 converged replicates, got {len(estimates)} of {B}"
        )
    se = np.std(np.asarray(estimates), axis=0, ddof=1)
    warning = None
    if failures > 0.05 * B:
        warning = f"{failures} of {B} bootstrap replicates failed to converge"
        warnings.warn(warning, RuntimeWarning, stacklevel=2)
    return BootstrapResult(
        fit=full,
        B=int(B),
        se=tuple(float(v) for v in se),
        replicate_estimates=tuple(estimates),
        replicate_ids=tuple(ids),
        failures=failures,
        warning=warning,
    )
