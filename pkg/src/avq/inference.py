"""Classical statistical companion: Bayes posteriors, MSE decomposition,
credibility/confidence intervals, p-values, and the translation-model
experiment where credibility and coverage coincide.

All Monte Carlo runs are driven by an explicit seed and generate their
draws in a fixed canonical order, so a repeated run is bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import ZeroEvidence


@dataclass(frozen=True)
class DiscretePrior:
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", w)
        if v.shape != w.shape:
            raise ValueError("values and weights must have equal length")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {w.sum()}, not 1")


@dataclass(frozen=True)
class SimulationSpec:
    n: int
    seed: int
    theta: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one replicate")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass(frozen=True)
class IntervalEstimate:
    lower: float
    upper: float
    level: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("interval endpoints are out of order")
        if not (0.0 < self.level < 1.0):
            raise ValueError("level must lie in (0, 1)")

    def contains(self, x) -> bool:
        return bool(self.lower <= x <= self.upper)


def bayes_posterior(prior: DiscretePrior, likelihood) -> DiscretePrior:
    """Weights proportional to likelihood(theta) * prior(theta).

    ``likelihood`` is a callable value -> density (or an array of
    densities aligned with the prior's values).
    """
    if callable(likelihood):
        lik = np.array([float(likelihood(v)) for v in prior.values])
    else:
        lik = np.asarray(likelihood, dtype=float).reshape(-1)
    w = prior.weights * lik
    total = w.sum()
    if total <= 0.0:
        raise ZeroEvidence("no parameter value has positive likelihood mass")
    return DiscretePrior(prior.values, w / total)


def posterior_mean(posterior: DiscretePrior) -> float:
    return float(posterior.values @ posterior.weights)


def mse_decompose(estimator, sampler, spec: SimulationSpec):
    """Empirical (mse, variance, bias^2) of an estimator.

    ``sampler(rng, theta)`` draws one replicate's data; ``estimator(data)``
    returns a point estimate.  The decomposition mse = var + bias^2 holds
    exactly on the same-sample moments.
    """
    rng = spec.rng()
    est = np.array([float(estimator(sampler(rng, spec.theta)))
                    for _ in range(spec.n)])
    err = est - spec.theta
    mse = float(np.mean(err ** 2))
    bias_sq = float(np.mean(err)) ** 2
    return mse, mse - bias_sq, bias_sq


def credibility_interval(posterior, level: float) -> IntervalEstimate:
    """Equal-tail interval from posterior samples or a DiscretePrior."""
    if not (0.0 < level < 1.0):
        raise ValueError("level must lie in (0, 1)")
    alpha = 1.0 - level
    if isinstance(posterior, DiscretePrior):
        order = np.argsort(posterior.values)
        vals = posterior.values[order]
        cum = np.cumsum(posterior.weights[order])
        lo = vals[np.searchsorted(cum, alpha / 2.0)]
        hi = vals[np.searchsorted(cum, 1.0 - alpha / 2.0)]
    else:
        samples = np.asarray(posterior, dtype=float).reshape(-1)
        lo, hi = np.quantile(samples, [alpha / 2.0, 1.0 - alpha / 2.0])
    return IntervalEstimate(float(lo), float(hi), level)


def confidence_coverage(rule, sampler, spec: SimulationSpec) -> float:
    """Fraction of replicates whose interval covers the true parameter.

    ``rule(data)`` returns an IntervalEstimate or a (lower, upper) pair.
    """
    rng = spec.rng()
    hits = 0
    for _ in range(spec.n):
        iv = rule(sampler(rng, spec.theta))
        lo, hi = (iv.lower, iv.upper) if isinstance(iv, IntervalEstimate) else iv
        if lo <= spec.theta <= hi:
            hits += 1
    return hits / spec.n


def p_value_one_sided(sampler, estimator, observed: float,
                      spec: SimulationSpec, discrete_ties: bool = False) -> float:
    """Monte Carlo P(estimate(X) > observed) under the null parameter.

    Strict inequality; with ``discrete_ties`` ties contribute half weight
    (only sensible for discrete samplers).
    """
    if observed == -np.inf:
        return 1.0
    if observed == np.inf:
        return 0.0
    rng = spec.rng()
    est = np.array([float(estimator(sampler(rng, spec.theta)))
                    for _ in range(spec.n)])
    p = np.mean(est > observed)
    if discrete_ties:
        p += 0.5 * np.mean(est == observed)
    return float(p)


@dataclass(frozen=True)
class EquivalenceResult:
    credibility: float
    coverage: float
    analytic: float
    se_credibility: float
    se_coverage: float

    @property
    def combined_se(self) -> float:
        return float(np.hypot(self.se_credibility, self.se_coverage))


def prop2_experiment(c1: float, c2: float, spec: SimulationSpec) -> EquivalenceResult:
    """Translation model X ~ N(theta, 1) with the equivariant interval
    [X + c1, X + c2].

    Under the flat (invariant) prior the posterior is N(x, 1), so the
    interval's posterior mass and its frequentist coverage are both
    Phi(-c1) - Phi(-c2).  Both sides are estimated by Monte Carlo: one
    data draw and one posterior draw per replicate, in canonical order.
    """
    if c1 >= c2:
        raise ValueError("need c1 < c2")
    rng = spec.rng()
    x = spec.theta + rng.standard_normal(spec.n)
    theta_post = x + rng.standard_normal(spec.n)
    cred_hits = (x + c1 <= theta_post) & (theta_post <= x + c2)
    cov_hits = (x + c1 <= spec.theta) & (spec.theta <= x + c2)
    cred = float(np.mean(cred_hits))
    cov = float(np.mean(cov_hits))
    analytic = float(norm.cdf(-c1) - norm.cdf(-c2))
    se_cred = float(np.sqrt(cred * (1.0 - cred) / spec.n))
    se_cov = float(np.sqrt(cov * (1.0 - cov) / spec.n))
    return EquivalenceResult(cred, cov, analytic, se_cred, se_cov)
