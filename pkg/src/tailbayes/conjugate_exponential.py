"""Conjugate updates for shifted exponential data: onset, rate, or both.

Model: data follow ShiftedExp(alpha, l), the exponential law started at
l.  This is the log image of the Pareto model (if x is Pareto(alpha, l)
then log x is ShiftedExp(alpha, log l)), and every update here mirrors the
Pareto one through that link:

* onset l with alpha known; LogPower prior and posterior over l,
* rate alpha with l known; Gamma prior and posterior over alpha,
* both jointly; LogPower conditional over l times a Gamma marginal.

The joint prior's Gamma rate block is n0_rate * mu0 with no "- l" term:
the onset is unknown there, so the prior mean guess mu0 is taken on the
absolute scale.  The record-discount factor c = (n+n0)/(n+n0+1) enters
every predictive through the onset block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .conjugate_pareto import GammaPosterior, extrapolation_factor
from .distributions import LogPower, ShiftedExp
from .errors import DomainError, InvalidRegimeError, NoInformationError
from .predictives import ParetoShiftLink
from .sufficient import SuffStats

__all__ = [
    "ExpPriorL",
    "ExpPriorAlpha",
    "ExpJointPrior",
    "OnsetPosterior",
    "ExpJointPosterior",
    "posterior_l",
    "predictive_l",
    "posterior_alpha",
    "predictive_alpha",
    "posterior_joint",
    "predictive_joint",
    "noninformative",
]


@dataclass(frozen=True)
class ExpPriorL:
    """LogPower(l0, alpha*n0) prior over the onset; alpha known."""

    l0: float
    n0: float
    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.l0):
            raise DomainError("prior onset l0 must be finite")
        if self.n0 < 0:
            raise DomainError("pseudo-count n0 cannot be negative")
        if self.alpha <= 0:
            raise DomainError("alpha must be positive")


@dataclass(frozen=True)
class ExpPriorAlpha:
    """Gamma(n0, n0*(mu0 - l)) prior over the rate; onset l known.

    mu0 > l is the prior guess of the data mean, so the rate block is
    positive whenever n0 > 0.
    """

    mu0: float
    n0: float
    l: float

    def __post_init__(self):
        if self.n0 < 0:
            raise DomainError("pseudo-count n0 cannot be negative")
        if not self.mu0 > self.l:
            raise DomainError("prior mean mu0 must exceed the onset l")


@dataclass(frozen=True)
class ExpJointPrior:
    """LogPower over the onset times Gamma(n0_rate, n0_rate*mu0) over the rate."""

    l0: float
    n0: float
    mu0: float
    n0_rate: float

    def __post_init__(self):
        if not math.isfinite(self.l0):
            raise DomainError("prior onset l0 must be finite")
        if self.n0 < 0 or self.n0_rate < 0:
            raise DomainError("pseudo-counts cannot be negative")
        if self.n0_rate > 0 and self.mu0 <= 0:
            raise DomainError(
                "prior mean mu0 must be positive (it enters the rate block "
                "on the absolute scale)"
            )


@dataclass(frozen=True)
class OnsetPosterior:
    """LogPower(l_n, alpha*n_eff) posterior over the onset point."""

    l_n: float
    alpha: float
    n_eff: float

    @property
    def is_proper(self) -> bool:
        return math.isfinite(self.l_n) and self.n_eff > 0

    def distribution(self) -> LogPower:
        if not self.is_proper:
            raise NoInformationError("posterior over the onset is improper")
        return LogPower(self.l_n, self.alpha * self.n_eff)


@dataclass(frozen=True)
class ExpJointPosterior:
    """Joint posterior: LogPower conditional over l, Gamma marginal over alpha."""

    l_n: float
    n_eff_onset: float
    rate_posterior: GammaPosterior

    @property
    def is_proper(self) -> bool:
        return (
            math.isfinite(self.l_n)
            and self.n_eff_onset > 0
            and self.rate_posterior.is_proper
        )

    def conditional_onset(self, alpha: float) -> LogPower:
        if alpha <= 0:
            raise DomainError("alpha must be positive")
        if not self.is_proper:
            raise NoInformationError("joint posterior is improper")
        return LogPower(self.l_n, alpha * self.n_eff_onset)


def posterior_l(prior: ExpPriorL, stats: SuffStats) -> OnsetPosterior:
    """Update the onset block: l_n = min(l0, data min), count n0 + n."""
    if prior.n0 == 0 and stats.n == 0:
        raise NoInformationError("flat prior and no data: nothing to update")
    l_n = prior.l0 if stats.n == 0 else min(prior.l0, stats.min)
    return OnsetPosterior(l_n=l_n, alpha=prior.alpha, n_eff=prior.n0 + stats.n)


def predictive_l(post: OnsetPosterior) -> ShiftedExp:
    """Predictive ShiftedExp(alpha, l_n + log(c)/alpha); log(c) < 0."""
    if not post.is_proper:
        raise NoInformationError("cannot predict from an improper posterior")
    c = extrapolation_factor(post.n_eff)
    return ShiftedExp(post.alpha, post.l_n + math.log(c) / post.alpha)


def posterior_alpha(prior: ExpPriorAlpha, stats: SuffStats) -> GammaPosterior:
    """Update the rate block: shape n0 + n, rate (n+n0)*(mu_n - l)."""
    if stats.n > 0 and stats.min < prior.l:
        raise DomainError("datum below the known onset l")
    shape = prior.n0 + stats.n
    rate = prior.n0 * (prior.mu0 - prior.l) + (stats.sum - stats.n * prior.l)
    if shape == 0:
        raise NoInformationError("flat prior and no data: nothing to update")
    if rate <= 0:
        raise DomainError(
            "degenerate update: every datum sits at the onset and the prior "
            "carries no weight"
        )
    return GammaPosterior(shape=shape, rate=rate)


def predictive_alpha(post: GammaPosterior, l: float) -> ParetoShiftLink:
    """Predictive with x + rate - l Pareto-distributed; support x > l."""
    if not post.is_proper:
        raise NoInformationError("cannot predict from an improper posterior")
    return ParetoShiftLink(shape=post.shape, scale=post.rate, offset=post.rate, anchor=l)


def posterior_joint(prior: ExpJointPrior, stats: SuffStats) -> ExpJointPosterior:
    """Update both blocks; the rate block pools means on the absolute scale."""
    l_n = prior.l0 if stats.n == 0 else min(prior.l0, stats.min)
    shape = prior.n0_rate + stats.n
    rate = prior.n0_rate * prior.mu0 + stats.sum
    if shape == 0:
        raise NoInformationError("flat prior and no data: nothing to update")
    if rate <= 0:
        raise InvalidRegimeError(
            "pooled mean mu_n is non-positive, so the rate posterior is "
            "invalid; shift the data to a positive scale"
        )
    return ExpJointPosterior(
        l_n=l_n,
        n_eff_onset=prior.n0 + stats.n,
        rate_posterior=GammaPosterior(shape=shape, rate=rate),
    )


def predictive_joint(post: ExpJointPosterior) -> ParetoShiftLink:
    """Predictive with x + rate - l_n Pareto-distributed, scale discounted."""
    if not post.is_proper:
        raise NoInformationError("cannot predict from an improper posterior")
    c = extrapolation_factor(post.n_eff_onset)
    shape = post.rate_posterior.shape
    rate = post.rate_posterior.rate
    return ParetoShiftLink(
        shape=shape,
        scale=c ** (1.0 / shape) * rate,
        offset=rate,
        anchor=post.l_n,
    )


def noninformative(case: str, stats: SuffStats, *, alpha: float | None = None,
                   l: float | None = None):
    """Posterior under the non-informative limit of the matching prior.

    case "location" (alpha required): flat onset prior, posterior
    LogPower(data min, alpha*n).  case "shape" (l required): scale-free
    rate prior, posterior Gamma(n, sum(x) - n*l).  With no data the
    posterior stays improper and is returned flagged as such.
    """
    if case == "location":
        if alpha is None or alpha <= 0:
            raise DomainError("case 'location' needs a positive known alpha")
        if stats.n == 0:
            return OnsetPosterior(l_n=math.inf, alpha=alpha, n_eff=0.0)
        return OnsetPosterior(l_n=stats.min, alpha=alpha, n_eff=float(stats.n))
    if case == "shape":
        if l is None:
            raise DomainError("case 'shape' needs the known onset l")
        if stats.n == 0:
            return GammaPosterior(shape=0.0, rate=0.0)
        if stats.min < l:
            raise DomainError("datum below the known onset l")
        rate = stats.sum - stats.n * l
        if rate <= 0:
            raise DomainError(
                "degenerate update: every datum sits at the onset and the "
                "prior carries no weight"
            )
        return GammaPosterior(shape=float(stats.n), rate=rate)
    raise DomainError(f"unknown case {case!r}; expected 'location' or 'shape'")
