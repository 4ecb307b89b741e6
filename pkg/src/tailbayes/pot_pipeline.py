"""Peaks-over-threshold pipeline: one entry point over the four families.

The flow is: collect sufficient statistics (or pick a threshold and keep
the exceedances), describe the model in a ModelSpec, then fit, predict,
and report support bounds through a single dispatch layer.  Posteriors
can be composed sequentially (posterior of one batch acting as the prior
for the next), which reproduces the batch result exactly for every case
except the uniform joint one, whose posterior leaves the prior family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from . import conjugate_exponential as cexp
from . import conjugate_pareto as cpar
from . import conjugate_power as cpow
from . import conjugate_uniform as cuni
from .errors import DomainError, UnsupportedCompositionError, UsageError
from .sufficient import SuffStats, merge, suff_stats

__all__ = [
    "SuffStats",
    "suff_stats",
    "merge",
    "ModelSpec",
    "FittedModel",
    "SupportReport",
    "FAMILIES",
    "fit",
    "predict",
    "support",
    "select_threshold",
    "pot_fit",
    "holdout_log_predictive",
    "sequential_update",
]

# (family, case) -> prior class accepted for that combination.
_PRIOR_TYPES = {
    ("pareto", "location"): cpar.ParetoPriorL,
    ("pareto", "shape"): cpar.ParetoPriorAlpha,
    ("pareto", "joint"): cpar.ParetoJointPrior,
    ("shifted_exp", "location"): cexp.ExpPriorL,
    ("shifted_exp", "shape"): cexp.ExpPriorAlpha,
    ("shifted_exp", "joint"): cexp.ExpJointPrior,
    ("power", "location"): cpow.PowerPriorU,
    ("power", "shape"): cpow.PowerPriorAlpha,
    ("power", "joint"): cpow.PowerJointPrior,
    ("uniform", "width"): cuni.UniformPriorW,
    ("uniform", "lower"): cuni.UniformPriorL,
    ("uniform", "joint"): cuni.UniformJointPrior,
}

FAMILIES = {
    "pareto": ("location", "shape", "joint"),
    "shifted_exp": ("location", "shape", "joint"),
    "power": ("location", "shape", "joint"),
    "uniform": ("width", "lower", "joint"),
}

# Known parameters each non-informative case requires.
_NONINF_KNOWN = {
    ("pareto", "location"): ("alpha",),
    ("pareto", "shape"): ("l",),
    ("shifted_exp", "location"): ("alpha",),
    ("shifted_exp", "shape"): ("l",),
    ("power", "location"): ("alpha",),
    ("power", "shape"): ("u",),
    ("uniform", "width"): ("l",),
    ("uniform", "lower"): ("w",),
}


@dataclass(frozen=True)
class ModelSpec:
    """What to fit: family, case, and either a proper prior or the
    non-informative limit with the case's known parameters.

    view records whether threshold exceedances enter raw or as excesses
    x - threshold; threshold echoes the value used, when any.
    """

    family: str
    case: str
    prior: object | None = None
    noninformative: bool = False
    known: Mapping[str, float] = field(default_factory=dict)
    view: str = "raw"
    threshold: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family!r}")
        if self.case not in FAMILIES[self.family]:
            raise UsageError(
                f"family {self.family!r} has cases {FAMILIES[self.family]}, "
                f"not {self.case!r}"
            )
        if self.view not in ("raw", "excess"):
            raise UsageError("view must be 'raw' or 'excess'")
        if (self.prior is None) == (not self.noninformative):
            raise UsageError("give exactly one of a prior or noninformative=True")


@dataclass(frozen=True)
class FittedModel:
    """A posterior plus everything needed to keep using it: the spec that
    produced it, the cumulative sufficient statistics, and the resolved
    known parameters."""

    spec: ModelSpec
    posterior: object
    stats: SuffStats
    known: Mapping[str, float]


@dataclass(frozen=True)
class SupportReport:
    """Estimated support bound and its predictive extrapolation.

    posterior_bound is the fitted bound parameter (l_n, u_n, or the width
    w_n for the uniform width case); predictive_bound is the matching
    edge of the posterior predictive's support, always on the data axis.
    direction says which side of the data the bound sits on.
    """

    family: str
    case: str
    posterior_bound: float
    predictive_bound: float
    n_effective: float
    direction: str


def _known_from_prior(spec: ModelSpec) -> dict:
    prior = spec.prior
    fam, case = spec.family, spec.case
    if case == "shape":
        if fam == "power":
            return {"u": prior.u}
        return {"l": prior.l}
    if (fam, case) in (("pareto", "location"), ("shifted_exp", "location"),
                       ("power", "location")):
        return {"alpha": prior.alpha}
    if (fam, case) == ("uniform", "width"):
        return {"l": prior.l}
    if (fam, case) == ("uniform", "lower"):
        return {"w": prior.w}
    return {}


def _require_known(spec: ModelSpec) -> dict:
    needed = _NONINF_KNOWN.get((spec.family, spec.case))
    if needed is None:
        raise DomainError(
            f"no non-informative limit is provided for {spec.family}/{spec.case}; "
            "supply a proper prior"
        )
    missing = [k for k in needed if k not in spec.known]
    if missing:
        raise UsageError(
            f"{spec.family}/{spec.case} non-informative fit needs known "
            f"parameter(s) {missing}"
        )
    return {k: float(spec.known[k]) for k in needed}


def fit(spec: ModelSpec, stats: SuffStats) -> FittedModel:
    """Dispatch the conjugate update for spec on the given statistics."""
    fam, case = spec.family, spec.case
    if spec.noninformative:
        known = _require_known(spec)
        if fam == "pareto":
            post = cpar.noninformative(case, stats, **known)
        elif fam == "shifted_exp":
            post = cexp.noninformative(case, stats, **known)
        elif fam == "power":
            mapped = "bound" if case == "location" else case
            post = cpow.noninformative(mapped, stats, **known)
        else:
            post = cuni.noninformative(case, stats, **known)
        return FittedModel(spec=spec, posterior=post, stats=stats, known=known)

    expected = _PRIOR_TYPES[(fam, case)]
    if not isinstance(spec.prior, expected):
        raise UsageError(
            f"{fam}/{case} expects a {expected.__name__} prior, got "
            f"{type(spec.prior).__name__}"
        )
    update = {
        ("pareto", "location"): cpar.posterior_l,
        ("pareto", "shape"): cpar.posterior_alpha,
        ("pareto", "joint"): cpar.posterior_joint,
        ("shifted_exp", "location"): cexp.posterior_l,
        ("shifted_exp", "shape"): cexp.posterior_alpha,
        ("shifted_exp", "joint"): cexp.posterior_joint,
        ("power", "location"): cpow.posterior_u,
        ("power", "shape"): cpow.posterior_alpha,
        ("power", "joint"): cpow.posterior_joint,
        ("uniform", "width"): cuni.posterior_w,
        ("uniform", "lower"): cuni.posterior_location,
        ("uniform", "joint"): cuni.posterior_joint,
    }[(fam, case)]
    post = update(spec.prior, stats)
    return FittedModel(spec=spec, posterior=post, stats=stats,
                       known=_known_from_prior(spec))


def predict(fitted: FittedModel, mode: str | None = None):
    """Posterior predictive for a fitted model.

    mode selects the uniform-joint predictive flavor ('numeric' default,
    'uniform' for the constant-density reproduction) and is rejected for
    every other model.
    """
    fam, case = fitted.spec.family, fitted.spec.case
    if mode is not None and (fam, case) != ("uniform", "joint"):
        raise UsageError("mode applies only to the uniform joint case")
    post = fitted.posterior
    if fam == "pareto":
        if case == "location":
            return cpar.predictive_l(post)
        if case == "shape":
            return cpar.predictive_alpha(post, fitted.known["l"])
        return cpar.predictive_joint(post)
    if fam == "shifted_exp":
        if case == "location":
            return cexp.predictive_l(post)
        if case == "shape":
            return cexp.predictive_alpha(post, fitted.known["l"])
        return cexp.predictive_joint(post)
    if fam == "power":
        if case == "location":
            return cpow.predictive_u(post)
        if case == "shape":
            return cpow.predictive_alpha(post, fitted.known["u"])
        return cpow.predictive_joint(post)
    if case == "width":
        return cuni.predictive_w(post)
    if case == "lower":
        return cuni.predictive_location(post)
    return cuni.predictive_joint(post, mode=mode or "numeric")


def support(fitted: FittedModel) -> SupportReport:
    """Posterior bound and predictive support edge for a fitted model.

    Shape-only cases report the known bound on both sides (nothing is
    estimated, nothing extrapolates).  The uniform width case reports the
    posterior bound as a width and the predictive bound as an absolute
    upper end, matching how each is naturally read.  The uniform joint
    numeric predictive has no finite support edge, so its predictive
    bound is infinite.
    """
    fam, case = fitted.spec.family, fitted.spec.case
    post = fitted.posterior
    pred = predict(fitted)
    lo, hi = pred.support()
    if fam in ("pareto", "shifted_exp"):
        if case == "location":
            return SupportReport(fam, case, post.l_n, lo, post.n_eff, "lower")
        if case == "shape":
            return SupportReport(fam, case, fitted.known["l"], lo,
                                 post.shape, "lower")
        return SupportReport(fam, case, post.l_n, lo,
                             post.n_eff_bound if fam == "pareto" else post.n_eff_onset,
                             "lower")
    if fam == "power":
        if case == "location":
            return SupportReport(fam, case, post.u_n, hi, post.n_eff, "upper")
        if case == "shape":
            return SupportReport(fam, case, fitted.known["u"], hi,
                                 post.shape, "upper")
        return SupportReport(fam, case, post.u_n, hi, post.n_eff_bound, "upper")
    if case == "width":
        return SupportReport(fam, case, post.w_n, hi, post.n_eff, "upper")
    if case == "lower":
        return SupportReport(fam, case, post.high, lo,
                             float(fitted.stats.n), "lower")
    return SupportReport(fam, case, post.u_n, math.inf, post.n_eff, "upper")


def select_threshold(data, k: int):
    """Top-k threshold: theta is the k-th largest value; exceedances are
    every value strictly above theta, kept in input order (ties at theta
    are excluded)."""
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 1:
        raise DomainError("threshold selection expects a 1-d sequence")
    n = arr.size
    if not 1 <= k <= n:
        raise DomainError(f"k must be in [1, {n}], got {k}")
    theta = float(np.sort(arr)[n - k])
    return theta, arr[arr > theta]


def pot_fit(data, k: int, spec: ModelSpec):
    """Select a threshold, fit the exceedances, and echo the pieces.

    Exceedances enter raw or as excesses over the threshold, per
    spec.view.  Returns (fitted model, theta, fitted values).
    """
    theta, exceed = select_threshold(data, k)
    values = exceed if spec.view == "raw" else exceed - theta
    fitted = fit(replace(spec, threshold=theta), suff_stats(values))
    return fitted, theta, values


def holdout_log_predictive(predictive, holdout) -> float:
    """Summed log predictive density of held-out points.

    -inf signals that some point falls outside the predictive support,
    i.e. the model is rejected by the holdout.  The sum is computed with
    exact accumulation, so it is invariant under permutation.
    """
    arr = np.atleast_1d(np.asarray(holdout, dtype=float))
    if arr.size == 0:
        return 0.0
    logs = np.atleast_1d(predictive.log_pdf(arr))
    if np.any(np.isneginf(logs)):
        return -math.inf
    return math.fsum(logs.tolist())


def _posterior_as_prior(fitted: FittedModel):
    """Rebuild a prior object equivalent to the current posterior."""
    fam, case = fitted.spec.family, fitted.spec.case
    post = fitted.posterior
    known = fitted.known
    if fam == "pareto":
        if case == "location":
            return cpar.ParetoPriorL(l0=post.l_n, n0=post.n_eff,
                                     alpha=known["alpha"])
        if case == "shape":
            return cpar.ParetoPriorAlpha(g0=math.exp(post.rate / post.shape),
                                         n0=post.shape, l=known["l"])
        sp = post.shape_posterior
        return cpar.ParetoJointPrior(l0=post.l_n, n0=post.n_eff_bound,
                                     g0=math.exp(sp.rate / sp.shape),
                                     n0_shape=sp.shape)
    if fam == "shifted_exp":
        if case == "location":
            return cexp.ExpPriorL(l0=post.l_n, n0=post.n_eff,
                                  alpha=known["alpha"])
        if case == "shape":
            return cexp.ExpPriorAlpha(mu0=known["l"] + post.rate / post.shape,
                                      n0=post.shape, l=known["l"])
        rp = post.rate_posterior
        return cexp.ExpJointPrior(l0=post.l_n, n0=post.n_eff_onset,
                                  mu0=rp.rate / rp.shape, n0_rate=rp.shape)
    if fam == "power":
        if case == "location":
            return cpow.PowerPriorU(u0=post.u_n, n0=post.n_eff,
                                    alpha=known["alpha"])
        if case == "shape":
            return cpow.PowerPriorAlpha(g0=math.exp(-post.rate / post.shape),
                                        n0=post.shape, u=known["u"])
        sp = post.shape_posterior
        return cpow.PowerJointPrior(u0=post.u_n, n0=post.n_eff_bound,
                                    g0=math.exp(-sp.rate / sp.shape),
                                    n0_shape=sp.shape)
    if case == "width":
        return cuni.UniformPriorW(w0=post.w_n, n0=post.n_eff, l=known["l"])
    return cuni.UniformPriorL(l0=post.high, u0=post.low + post.width,
                              w=post.width)


def sequential_update(fitted: FittedModel, new_stats: SuffStats) -> FittedModel:
    """Absorb a new batch by using the current posterior as the prior.

    Matches the batch fit on the concatenated data exactly for every
    composable case; the original spec and the merged statistics are
    carried along.  The uniform joint case refuses (not composable).
    """
    fam, case = fitted.spec.family, fitted.spec.case
    merged = merge(fitted.stats, new_stats)
    if (fam, case) == ("uniform", "joint"):
        raise UnsupportedCompositionError(
            "the uniform joint posterior leaves its prior family (the width "
            "marginal is not conjugate); refit from the full data instead"
        )
    if not getattr(fitted.posterior, "is_proper", True):
        return fit(fitted.spec, merged)
    chained = ModelSpec(family=fam, case=case, prior=_posterior_as_prior(fitted),
                        known=fitted.spec.known, view=fitted.spec.view,
                        threshold=fitted.spec.threshold)
    refreshed = fit(chained, new_stats)
    return FittedModel(spec=fitted.spec, posterior=refreshed.posterior,
                       stats=merged, known=fitted.known)
