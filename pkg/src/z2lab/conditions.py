"""Growth diagnostics for the boundedness conditions of block-operator families.

Each condition of the characterization (the four necessary ones, the star
condition, and the additional ones) is evaluated per truncation size as a
probe supremum of an output/input norm ratio, then classified across sizes
by growth_trend.  Conditions involving the inverse map are evaluated on the
parametric family omega = kp_map(v) with the section choice v, which is
exact and spans the relevant directions; only the (c4) condition needs the
numerical inverse on arbitrary inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .blockop import BlockOperator
from .errors import NoConvergence
from .normest import NormTrend, growth_trend, opnorm_p
from .seqspace import (
    kp_inverse,
    kp_map,
    lf_quasinorm,
    lf_star_quasinorm_ub,
    spread,
)

MANDATORY_CONDITIONS = ("d", "g1", "g2", "d_gKinv", "g_dK", "star")
ADDITIONAL_CONDITIONS = ("a", "c0", "c1", "c2", "c3", "c4")


@dataclass(frozen=True)
class OperatorFamily:
    """A rule n -> BlockOperator standing in for an operator on the full space."""

    builder: Callable[[int], BlockOperator]
    label: str

    def __call__(self, n: int) -> BlockOperator:
        T = self.builder(n)
        if T.n != n:
            raise ValueError(f"builder returned dimension {T.n}, expected {n}")
        return T


@dataclass(frozen=True)
class ConditionReport:
    """Per-condition growth trends for a family, with the aggregate verdict."""

    label: str
    trends: dict
    verdict: str

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "verdict": self.verdict,
            "trends": {k: t.to_dict() for k, t in self.trends.items()},
        }


def probe_vectors(n: int, budget: int, rng) -> list[np.ndarray]:
    """Probe set: leading basis vectors, spreads of every dyadic width,
    and budget-many seeded random unit vectors."""
    probes = []
    for k in range(min(3, n)):
        e = np.zeros(n)
        e[k] = 1.0
        probes.append(e)
    k = 2
    while k <= n:
        probes.append(spread(n, k))
        k *= 2
    if n & (n - 1) != 0:
        probes.append(spread(n, n))
    for _ in range(budget):
        v = rng.standard_normal(n)
        probes.append(v / np.linalg.norm(v))
    return probes


def _sup_ratio(pairs) -> float:
    """Max of num/den over (num, den) pairs, skipping degenerate denominators."""
    best = 0.0
    for num, den in pairs:
        if den > 1e-300:
            best = max(best, num / den)
    return best


def _condition_values(T: BlockOperator, keys, probes, star_budget: int) -> dict:
    """Per-size value of each requested condition key on one operator."""
    alpha, beta, delta, gamma = T.alpha, T.beta, T.delta, T.gamma
    values = {}

    lf_cache = {}
    lfs_cache = {}

    def lf(x, tag):
        if tag not in lf_cache:
            lf_cache[tag] = lf_quasinorm(x)
        return lf_cache[tag]

    def lfs(om, tag):
        if tag not in lfs_cache:
            lfs_cache[tag] = lf_star_quasinorm_ub(om, budget=star_budget)
        return lfs_cache[tag]

    if "d" in keys:
        values["d"] = opnorm_p(delta, 2)
    if "g1" in keys:
        values["g1"] = _sup_ratio(
            (np.linalg.norm(gamma @ x), lf(x, i)) for i, x in enumerate(probes)
        )
    if "g2" in keys:
        values["g2"] = _sup_ratio(
            (np.linalg.norm(beta @ x - kp_map(gamma @ x)), lf(x, i))
            for i, x in enumerate(probes)
        )
    if "d_gKinv" in keys:
        # parametric omega = kp_map(v), section = v
        values["d_gKinv"] = _sup_ratio(
            (np.linalg.norm(delta @ kp_map(v) + gamma @ v), lfs(kp_map(v), i))
            for i, v in enumerate(probes)
        )
    if "g_dK" in keys:
        values["g_dK"] = _sup_ratio(
            (np.linalg.norm(gamma @ x + delta @ kp_map(x)), np.linalg.norm(x))
            for x in probes
        )
    if "star" in keys:
        def star_num(v):
            om = kp_map(v)
            return np.linalg.norm(alpha @ om + beta @ v - kp_map(delta @ om + gamma @ v))

        values["star"] = _sup_ratio(
            (star_num(v), lfs(kp_map(v), i)) for i, v in enumerate(probes)
        )
    if "a" in keys:
        values["a"] = _sup_ratio(
            (lf_star_quasinorm_ub(alpha @ x, budget=star_budget), np.linalg.norm(x))
            for x in probes
        )
    if "c0" in keys:
        values["c0"] = _sup_ratio(
            (np.linalg.norm(alpha @ x - kp_map(delta @ x)), np.linalg.norm(x))
            for x in probes
        )
    if "c1" in keys:
        values["c1"] = _sup_ratio(
            (
                lf_star_quasinorm_ub(alpha @ kp_map(x) + beta @ x, budget=star_budget),
                np.linalg.norm(x),
            )
            for x in probes
        )
    if "c2" in keys:
        values["c2"] = _sup_ratio(
            (
                lf_star_quasinorm_ub(alpha @ kp_map(v) + beta @ v, budget=star_budget),
                lfs(kp_map(v), i),
            )
            for i, v in enumerate(probes)
        )
    if "c3" in keys:
        def c3_num(x):
            kx = kp_map(x)
            return np.linalg.norm(alpha @ kx + beta @ x - kp_map(delta @ kx + gamma @ x))

        values["c3"] = _sup_ratio((c3_num(x), np.linalg.norm(x)) for x in probes)
    if "c4" in keys:
        # the one condition needing the solver: invert on beta-image probes
        pairs = []
        for i, x in enumerate(probes):
            bx = beta @ x
            try:
                inv = (
                    np.zeros_like(bx)
                    if not np.any(bx)
                    else kp_inverse(bx, tol=1e-7, max_iter=60)
                )
            except NoConvergence:
                continue
            pairs.append((lf_quasinorm(gamma @ x - inv), lf(x, i)))
        values["c4"] = _sup_ratio(pairs) if pairs else np.nan
    return values


def _trends(F: OperatorFamily, sizes, keys, budget: int, seed: int, star_budget: int):
    per_key = {k: [] for k in keys}
    for n in sizes:
        rng = np.random.default_rng(seed + n)
        probes = probe_vectors(n, budget, rng)
        vals = _condition_values(F(n), keys, probes, star_budget)
        for k in keys:
            per_key[k].append(vals[k])
    out = {}
    for k in keys:
        vals = np.asarray(per_key[k], dtype=float)
        if np.count_nonzero(np.isfinite(vals)) >= 4:
            out[k] = growth_trend(sizes, vals)
        else:
            # too many per-size solver gaps to fit anything
            out[k] = NormTrend(
                sizes=tuple(float(n) for n in sizes),
                values=tuple(float(v) for v in vals),
                fit="inconclusive",
                coeffs={},
                residual=float("nan"),
            )
    return out


def check_necessary(
    F: OperatorFamily, sizes, budget: int = 8, seed: int = 0, star_budget: int = 12
) -> dict:
    """Trends for the four necessary conditions (the gamma condition splits
    into its two maps, keyed g1 and g2)."""
    keys = ("d", "g1", "g2", "d_gKinv", "g_dK")
    return _trends(F, sizes, keys, budget, seed, star_budget)


def check_star(
    F: OperatorFamily, sizes, budget: int = 8, seed: int = 0, star_budget: int = 12
) -> NormTrend:
    """Trend for the star condition completing the boundedness characterization."""
    return _trends(F, sizes, ("star",), budget, seed, star_budget)["star"]


def check_additional(
    F: OperatorFamily, sizes, budget: int = 8, seed: int = 0, star_budget: int = 12
) -> dict:
    """Trends for the additional conditions (a) and (c0) through (c4)."""
    return _trends(F, sizes, ADDITIONAL_CONDITIONS, budget, seed, star_budget)


def boundedness_verdict(trends: dict) -> str:
    """Aggregate the mandatory condition trends into a verdict.

    "inconsistent" if any mandatory trend is a growth class,
    "consistent_with_bounded" if all mandatory trends are bounded,
    "inconclusive" otherwise.
    """
    missing = [k for k in MANDATORY_CONDITIONS if k not in trends]
    if missing:
        raise ValueError(f"report is missing mandatory conditions: {missing}")
    fits = [trends[k].fit for k in MANDATORY_CONDITIONS]
    if any(f in ("log_growth", "log_sq_growth", "power_growth") for f in fits):
        return "inconsistent"
    if all(f == "bounded" for f in fits):
        return "consistent_with_bounded"
    return "inconclusive"


def full_report(
    F: OperatorFamily,
    sizes,
    budget: int = 8,
    seed: int = 0,
    star_budget: int = 12,
    include_additional: bool = True,
) -> ConditionReport:
    """Run every condition across sizes and aggregate the verdict."""
    trends = check_necessary(F, sizes, budget, seed, star_budget)
    trends["star"] = check_star(F, sizes, budget, seed, star_budget)
    if include_additional:
        trends.update(check_additional(F, sizes, budget, seed, star_budget))
    return ConditionReport(
        label=F.label, trends=trends, verdict=boundedness_verdict(trends)
    )
