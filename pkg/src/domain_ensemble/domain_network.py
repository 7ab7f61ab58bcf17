"""Charge equilibration between domains that share one chemical potential.

Each domain follows its own three-state ensemble, but all domains see the
same multiplier ``gamma``. Fixing the total transferred charge then pins
``gamma`` because every per-domain charge is strictly decreasing in it.
No inter-domain coupling beyond the shared multiplier is modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ensemble_core import DomainSpec, nu_from_gamma
from .errors import InvalidInputError, OutOfRangeError

__all__ = ["DomainCharge", "NetworkSolution", "total_charge_at", "equilibrate"]

_BISECT_ITER = 200
_POLISH_ITER = 8


@dataclass(frozen=True)
class DomainCharge:
    label: str
    nu: float
    population: float


@dataclass(frozen=True)
class NetworkSolution:
    gamma_star: float
    per_domain: tuple[DomainCharge, ...]
    total_charge: float
    residual: float


def _check_domains(domains) -> tuple[DomainSpec, ...]:
    domains = tuple(domains)
    if not domains:
        raise InvalidInputError("at least one domain is required")
    for d in domains:
        if not isinstance(d, DomainSpec):
            raise InvalidInputError(f"expected DomainSpec, got {type(d).__name__}")
    return domains


def total_charge_at(domains, gamma: float) -> float:
    """Sum of the per-domain net charges at a shared ``gamma``."""
    domains = _check_domains(domains)
    return math.fsum(nu_from_gamma(d.q, gamma) for d in domains)


def _slope(domains, gamma: float) -> float:
    # d nu / d gamma = -q^2 (2 cosh x + 4) / (1 + 2 cosh x)^2, on t = exp(-|x|)
    total = 0.0
    for d in domains:
        t = math.exp(-abs(d.q * gamma))
        total -= d.q * d.q * t * (1.0 + 4.0 * t + t * t) / (1.0 + t + t * t) ** 2
    return total


def equilibrate(domains, total_charge_target: float) -> NetworkSolution:
    """Shared ``gamma`` at which the domain charges add up to the target.

    Bisection on ``[-60/min q, 60/min q]`` brackets the root (the summed
    charge has saturated to within rounding of ``+-sum q`` at the ends),
    followed by a few Newton steps that are kept only if they reduce the
    residual.
    """
    domains = _check_domains(domains)
    target = float(total_charge_target)
    if not math.isfinite(target):
        raise InvalidInputError(f"total charge must be finite, got {target}")
    q_sum = sum(d.q for d in domains)
    if not (-q_sum < target < q_sum):
        raise OutOfRangeError(
            f"total charge must lie strictly inside ({-q_sum}, {q_sum}), got {target}"
        )

    def f(g):
        return total_charge_at(domains, g) - target

    g_max = 60.0 / min(d.q for d in domains)
    lo, hi = -g_max, g_max
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        g = lo
    elif f_hi == 0.0:
        g = hi
    else:
        for _ in range(_BISECT_ITER):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            fm = f(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if fm > 0.0:
                lo = mid
            else:
                hi = mid
        g = 0.5 * (lo + hi)

    best = abs(f(g))
    for _ in range(_POLISH_ITER):
        slope = _slope(domains, g)
        if slope == 0.0 or best == 0.0:
            break
        g_new = g - f(g) / slope
        r_new = abs(f(g_new))
        if r_new >= best:
            break
        g, best = g_new, r_new

    per_domain = []
    for d in domains:
        nu = nu_from_gamma(d.q, g)
        per_domain.append(DomainCharge(d.label, nu, d.N + nu))
    total = math.fsum(c.nu for c in per_domain)
    return NetworkSolution(
        gamma_star=g,
        per_domain=tuple(per_domain),
        total_charge=total,
        residual=abs(total - target),
    )
