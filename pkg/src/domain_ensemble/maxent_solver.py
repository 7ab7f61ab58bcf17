"""Maximum-entropy weights over an arbitrary set of particle-number states.

Only the normalisation and the mean particle number are constrained, so the
solution is the exponential family ``w_M ∝ exp(-gamma * M)``. The multiplier
is found by a safeguarded Newton iteration on the mean; its derivative with
respect to ``gamma`` is minus the variance of ``M``, so the mean is strictly
decreasing and the root is unique.

:func:`brute_force_maxent` scans a grid on the probability simplex and is
kept independent of the exponential-family solution so it can serve as an
oracle for it.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InfeasibleError, InvalidInputError, OutOfRangeError

__all__ = [
    "GeneralEnsemble",
    "log_partition",
    "ensemble_at",
    "mean_and_variance",
    "solve_maxent",
    "brute_force_maxent",
]

MAX_ITER = 200
INITIAL_BRACKET = 50.0


@dataclass(frozen=True)
class GeneralEnsemble:
    """Weights over strictly increasing particle numbers.

    ``gamma`` is the multiplier that generated the weights, or ``None`` for
    ensembles that did not come from the exponential family (grid search).
    """

    states: tuple[int, ...]
    weights: tuple[float, ...]
    gamma: float | None = None

    def __post_init__(self):
        _check_states(self.states)
        if len(self.weights) != len(self.states):
            raise InvalidInputError("states and weights must have the same length")
        if any(not (0.0 <= w <= 1.0) for w in self.weights):
            raise InvalidInputError(f"weights must lie in [0, 1], got {self.weights}")
        if abs(math.fsum(self.weights) - 1.0) > 1e-10:
            raise InvalidInputError(f"weights must sum to 1, got {math.fsum(self.weights)!r}")

    @property
    def mean(self) -> float:
        m0 = self.states[0]
        return m0 + math.fsum(w * (m - m0) for m, w in zip(self.states, self.weights))

    @property
    def entropy(self) -> float:
        return -math.fsum(w * math.log(w) for w in self.weights if w > 0.0)


def _check_states(states) -> tuple[int, ...]:
    states = tuple(states)
    if len(states) < 2:
        raise InvalidInputError(f"need at least two states, got {len(states)}")
    for m in states:
        if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < 0:
            raise InvalidInputError(f"states must be non-negative integers, got {m!r}")
    if any(b <= a for a, b in zip(states, states[1:])):
        raise InvalidInputError(f"states must be strictly increasing, got {states}")
    return tuple(int(m) for m in states)


def _check_gamma(gamma) -> float:
    gamma = float(gamma)
    if not math.isfinite(gamma):
        raise InvalidInputError(f"gamma must be finite, got {gamma}")
    return gamma


def _unnormalised(states: np.ndarray, gamma: float) -> np.ndarray:
    # shift by the state minimising gamma*M so the largest term is exactly 1
    exponent = -gamma * states
    return np.exp(exponent - exponent.max())


def log_partition(states, gamma: float, center: float = 0.0) -> float:
    """``ln sum_M exp(-gamma * (M - center))`` evaluated without overflow.

    With ``center = N`` and states ``N - q, N, N + q`` this is
    ``ln(1 + 2 cosh(q gamma))``.
    """
    m = np.asarray(_check_states(states), dtype=float)
    gamma = _check_gamma(gamma)
    exponent = -gamma * (m - center)
    top = exponent.max()
    return float(top + math.log(math.fsum(np.exp(exponent - top))))


def ensemble_at(states, gamma: float) -> GeneralEnsemble:
    """Exponential-family weights ``w_M ∝ exp(-gamma M)`` at fixed ``gamma``."""
    states = _check_states(states)
    gamma = _check_gamma(gamma)
    z = _unnormalised(np.asarray(states, dtype=float), gamma)
    w = z / math.fsum(z)
    return GeneralEnsemble(states, tuple(float(v) for v in w), gamma)


def mean_and_variance(states, gamma: float) -> tuple[float, float]:
    """Mean and variance of ``M`` under ``w_M ∝ exp(-gamma M)``."""
    m = np.asarray(_check_states(states), dtype=float)
    gamma = _check_gamma(gamma)
    z = _unnormalised(m, gamma)
    w = z / math.fsum(z)
    d = m - m[0]
    mu = math.fsum(w * d)
    var = math.fsum(w * (d - mu) ** 2)
    return m[0] + mu, var


def solve_maxent(states, target_mean: float, max_iter: int = MAX_ITER) -> GeneralEnsemble:
    """Maximum-entropy ensemble over ``states`` with prescribed mean.

    Newton steps on ``gamma`` are accepted only while they stay inside the
    current sign-change bracket; otherwise the step falls back to bisection.
    Raises :class:`OutOfRangeError` when the target is not strictly inside
    ``(min(states), max(states))`` and :class:`ConvergenceError` when the
    iteration budget runs out.
    """
    states = _check_states(states)
    target = float(target_mean)
    if not math.isfinite(target):
        raise InvalidInputError(f"target_mean must be finite, got {target}")
    lo_state, hi_state = states[0], states[-1]
    if not (lo_state < target < hi_state):
        raise OutOfRangeError(
            f"target mean must lie strictly inside ({lo_state}, {hi_state}), got {target}"
        )
    tol = 1e-12 * (1.0 + abs(target))

    def residual(g):
        mu, var = mean_and_variance(states, g)
        return mu - target, var

    # residual is decreasing in gamma: positive at lo, negative at hi
    lo, hi = -INITIAL_BRACKET, INITIAL_BRACKET
    while residual(lo)[0] < 0.0:
        lo *= 2.0
    while residual(hi)[0] > 0.0:
        hi *= 2.0

    g = 0.0 if lo < 0.0 < hi else 0.5 * (lo + hi)
    for _ in range(max_iter):
        f, var = residual(g)
        if abs(f) <= tol:
            return ensemble_at(states, g)
        if f > 0.0:
            lo = g
        else:
            hi = g
        if not lo < 0.5 * (lo + hi) < hi:
            # bracket collapsed to adjacent floats: best attainable root
            return ensemble_at(states, g)
        step_ok = False
        if var > 0.0:
            g_new = g + f / var
            step_ok = lo < g_new < hi
        g = g_new if step_ok else 0.5 * (lo + hi)
    raise ConvergenceError(
        f"maxent multiplier did not converge in {max_iter} iterations "
        f"(states={states}, target={target})"
    )


def _grid_entropy(w: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w > 0.0, w * np.log(w), 0.0)
    return -terms.sum(axis=-1)


def brute_force_maxent(
    states, target_mean: float, grid_step: float = 1e-3, constraint_tol: float = 1e-3
) -> GeneralEnsemble:
    """Exhaustive grid search for the maximum-entropy point on the simplex.

    Weights are multiples of ``1/n`` with ``n = round(1/grid_step)``. Every
    grid point whose mean is within ``constraint_tol`` of the target is a
    candidate; the one with the largest entropy is returned. The leading
    ``k - 2`` coordinates are enumerated in full and, for each, the feasible
    splits of the remaining mass between the last two states are read off
    the linear mean constraint, so no feasible grid point is skipped.
    """
    states = _check_states(states)
    k = len(states)
    if not 3 <= k <= 4:
        raise InvalidInputError(f"brute force supports 3 or 4 states, got {k}")
    if not 1e-4 <= grid_step <= 1e-2:
        raise InvalidInputError(f"grid_step must lie in [1e-4, 1e-2], got {grid_step}")
    if constraint_tol < 0.0:
        raise InvalidInputError("constraint_tol must be non-negative")
    target = float(target_mean)
    n = int(round(1.0 / grid_step))
    h = 1.0 / n
    m = np.asarray(states, dtype=float)

    # prefix: integer counts for the first k-2 states
    axes = np.meshgrid(*[np.arange(n + 1)] * (k - 2), indexing="ij")
    prefix = np.stack([a.ravel() for a in axes], axis=-1)
    prefix = prefix[prefix.sum(axis=1) <= n]
    rem = n - prefix.sum(axis=1)
    base = h * (prefix @ m[: k - 2])

    # mean(j) = base + h*(m_a*j + m_b*(rem - j)) with j counts on state a
    m_a, m_b = m[k - 2], m[k - 1]
    slope = h * (m_a - m_b)
    offset = base + h * m_b * rem
    j1 = (target - constraint_tol - offset) / slope
    j2 = (target + constraint_tol - offset) / slope
    j_lo = np.maximum(np.ceil(np.minimum(j1, j2) - 1e-9), 0).astype(np.int64)
    j_hi = np.minimum(np.floor(np.maximum(j1, j2) + 1e-9), rem).astype(np.int64)
    ok = j_lo <= j_hi
    if not ok.any():
        raise InfeasibleError(
            f"no grid point with step {h} has mean within {constraint_tol} of {target}"
        )
    prefix, rem, j_lo, j_hi = prefix[ok], rem[ok], j_lo[ok], j_hi[ok]

    best_s = -np.inf
    best_w = None
    for d in range(int((j_hi - j_lo).max()) + 1):
        j = j_lo + d
        sel = j <= j_hi
        if not sel.any():
            continue
        counts = np.column_stack([prefix[sel], j[sel], rem[sel] - j[sel]])
        w = counts * h
        feasible = np.abs(w @ m - target) <= constraint_tol
        if not feasible.any():
            continue
        w = w[feasible]
        s = _grid_entropy(w)
        i = int(np.argmax(s))
        if s[i] > best_s:
            best_s, best_w = s[i], w[i]
    if best_w is None:
        raise InfeasibleError(
            f"no grid point with step {h} has mean within {constraint_tol} of {target}"
        )
    # renormalise away the rounding of counts * h
    best_w = best_w / best_w.sum()
    return GeneralEnsemble(states, tuple(float(v) for v in best_w))
