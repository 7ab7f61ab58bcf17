"""Closed-form three-state ensemble for the electron population of a domain.

A domain with baseline electron count ``N`` mixes the ground states with
``N - q``, ``N`` and ``N + q`` electrons. Maximising the Shannon entropy of
the mixing weights at fixed mean population gives weights that depend on
the multiplier ``gamma`` only through ``x = q * gamma``::

    w_center = 1 / (1 + 2 cosh x)
    w_plus   = exp(-x) * w_center        # anionic edge, N + q
    w_minus  = exp(+x) * w_center        # cationic edge, N - q
    nu       = q * (w_plus - w_minus) = -2 q sinh(x) / (1 + 2 cosh x)

Everything here is evaluated on ``t = exp(-|x|)`` so no intermediate
exponential can overflow.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

from .errors import InfeasibleError, InvalidInputError, OutOfRangeError

__all__ = [
    "DomainSpec",
    "ThreeStateWeights",
    "EnsembleReport",
    "weights_from_gamma",
    "nu_from_gamma",
    "gamma_from_nu",
    "edge_weights_algebraic",
    "entropy",
    "log_partition_three_state",
    "report",
]

# |nu|/q above which the closed-form inverse is refined by bisection
_EDGE_REFINE = 1.0 - 1e-6
_SUM_TOL = 1e-12


def _check_q(q) -> int:
    if isinstance(q, bool) or not isinstance(q, numbers.Integral):
        raise InvalidInputError(f"q must be a positive integer, got {q!r}")
    if q < 1:
        raise InvalidInputError(f"q must be >= 1, got {q}")
    return int(q)


def _check_finite(name: str, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidInputError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise InvalidInputError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class DomainSpec:
    """A molecular domain: baseline electron count ``N`` and maximum transferable charge ``q``."""

    label: str
    N: int
    q: int

    def __post_init__(self):
        if not isinstance(self.label, str):
            raise InvalidInputError(f"label must be a string, got {self.label!r}")
        if isinstance(self.N, bool) or not isinstance(self.N, numbers.Integral):
            raise InvalidInputError(f"N must be a non-negative integer, got {self.N!r}")
        _check_q(self.q)
        if self.N < 0:
            raise InvalidInputError(f"N must be >= 0, got {self.N}")
        if self.N - self.q < 0:
            raise InvalidInputError(
                f"N - q must be >= 0 (cationic edge state), got N={self.N}, q={self.q}"
            )


@dataclass(frozen=True)
class ThreeStateWeights:
    """Mixing weights of the ``N - q``, ``N`` and ``N + q`` ground states."""

    w_minus: float
    w_center: float
    w_plus: float

    def __post_init__(self):
        for name in ("w_minus", "w_center", "w_plus"):
            w = getattr(self, name)
            if not (0.0 <= w <= 1.0):
                raise InvalidInputError(f"{name} must lie in [0, 1], got {w}")
        total = self.w_minus + self.w_center + self.w_plus
        if abs(total - 1.0) > _SUM_TOL:
            raise InvalidInputError(f"weights must sum to 1, got {total!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w_minus, self.w_center, self.w_plus)


@dataclass(frozen=True)
class EnsembleReport:
    gamma: float
    nu: float
    population: float
    entropy: float
    chi: float
    weights: ThreeStateWeights


def weights_from_gamma(q: int, gamma: float) -> ThreeStateWeights:
    """Maximum-entropy weights at multiplier ``gamma``.

    >>> weights_from_gamma(1, 0.0).as_tuple()
    (0.3333333333333333, 0.3333333333333333, 0.3333333333333333)
    """
    q = _check_q(q)
    gamma = _check_finite("gamma", gamma)
    x = q * gamma
    t = math.exp(-abs(x))
    denom = 1.0 + t + t * t
    big = 1.0 / denom
    center = t / denom
    small = t * t / denom
    if x >= 0.0:
        return ThreeStateWeights(w_minus=big, w_center=center, w_plus=small)
    return ThreeStateWeights(w_minus=small, w_center=center, w_plus=big)


def nu_from_gamma(q: int, gamma: float) -> float:
    """Net transferred charge ``nu`` at multiplier ``gamma``; odd and strictly decreasing."""
    q = _check_q(q)
    gamma = _check_finite("gamma", gamma)
    x = q * gamma
    t = math.exp(-abs(x))
    # 2 sinh|x| / (1 + 2 cosh x) = (1 - t^2) / (1 + t + t^2)
    frac = -math.expm1(-2.0 * abs(x)) / (1.0 + t + t * t)
    return -q * math.copysign(frac, x)


def _x_from_ratio(r: float) -> float:
    # e^x solves (1 + r) u^2 + r u + (r - 1) = 0; the positive root, rationalised
    # so neither edge r -> +-1 cancels: u = 2 (1 - r) / (sqrt(4 - 3 r^2) + r)
    return math.log(2.0 * (1.0 - r)) - math.log(math.sqrt(4.0 - 3.0 * r * r) + r)


def _bisect_x(r: float, x0: float) -> float:
    def f(x):
        return nu_from_gamma(1, x) - r

    lo, hi = x0 - 1.0, x0 + 1.0
    while f(lo) < 0.0:
        lo -= 2.0 * (hi - lo)
    while f(hi) > 0.0:
        hi += 2.0 * (hi - lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
    # both ends map to the closest attainable charge; pick the better one
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


def gamma_from_nu(q: int, nu: float) -> float:
    """Invert :func:`nu_from_gamma`.

    Raises :class:`OutOfRangeError` unless ``-q < nu < q``; the edge charges
    are only reached in the limit ``gamma -> -+inf``.
    """
    q = _check_q(q)
    nu = _check_finite("nu", nu)
    if not (-q < nu < q):
        raise OutOfRangeError(
            f"nu must lie strictly inside (-q, q) = ({-q}, {q}), got {nu}"
        )
    r = nu / q
    x = _x_from_ratio(r)
    if abs(r) > _EDGE_REFINE:
        x = _bisect_x(r, x)
    return x / q


def edge_weights_algebraic(w_center: float, nu: float, q: int) -> tuple[float, float]:
    """Edge weights ``(w_minus, w_plus)`` fixed by normalisation and mean population.

    Any central weight in ``[0, 1 - |nu|/q]`` is admissible; the pair is
    ``w_pm = (1 +- nu/q - w_center) / 2``. The upper bound is enforced up to
    the normalisation tolerance, and an edge weight that rounds below zero
    inside that slack is returned as zero.
    """
    q = _check_q(q)
    nu = _check_finite("nu", nu)
    w_center = _check_finite("w_center", w_center)
    if abs(nu) > q:
        raise OutOfRangeError(f"|nu| must not exceed q={q}, got {nu}")
    r = nu / q
    if w_center < 0.0 or w_center > 1.0 - abs(r) + _SUM_TOL:
        raise InfeasibleError(
            f"w_center={w_center} outside [0, 1 - |nu|/q] = [0, {1.0 - abs(r)}]"
        )
    w_minus = max(0.0, 0.5 * (1.0 - r - w_center))
    w_plus = max(0.0, 0.5 * (1.0 + r - w_center))
    return w_minus, w_plus


def entropy(weights: ThreeStateWeights) -> float:
    """Shannon entropy in nats, with ``0 ln 0 = 0``."""
    return -sum(w * math.log(w) for w in weights.as_tuple() if w > 0.0)


def log_partition_three_state(q: int, gamma: float) -> float:
    """``ln(1 + 2 cosh(q gamma))`` without overflow."""
    q = _check_q(q)
    gamma = _check_finite("gamma", gamma)
    a = abs(q * gamma)
    t = math.exp(-a)
    return a + math.log1p(t + t * t)


def report(spec: DomainSpec, gamma: float) -> EnsembleReport:
    gamma = _check_finite("gamma", gamma)
    weights = weights_from_gamma(spec.q, gamma)
    nu = nu_from_gamma(spec.q, gamma)
    return EnsembleReport(
        gamma=gamma,
        nu=nu,
        population=spec.N + nu,
        entropy=entropy(weights),
        chi=-gamma,
        weights=weights,
    )
