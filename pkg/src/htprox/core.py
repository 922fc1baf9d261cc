"""Domain types shared by every solver: problem bundles, constants, run records."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

Array = np.ndarray

#: One draw of the stochastic subgradient estimator at a point. The second
#: argument is an explicit randomness stream so runs never share hidden state.
StochasticOracle = Callable[[Array, np.random.Generator], Array]


class NumericalOverflowError(RuntimeError):
    """An objective or iterate stopped being finite; the message names the term."""


class ConfigurationError(ValueError):
    """A solver or schedule was configured inconsistently."""


@dataclass(frozen=True)
class SmoothnessConstants:
    """Constants of the three-part subgradient continuity bound for f.

    The bound combines a Lipschitz-gradient part (weight ``L_f``), a Holder
    part with exponent ``nu`` (weight ``H_f``), and a bounded-subgradient
    part (weight ``M_f``). Any of the three weights may be zero, but not all.
    """

    L_f: float
    H_f: float
    nu: float
    M_f: float

    def __post_init__(self):
        if self.L_f < 0 or self.H_f < 0 or self.M_f < 0:
            raise ConfigurationError("smoothness constants must be nonnegative")
        if not 0.0 < self.nu < 1.0:
            raise ConfigurationError(f"nu must lie in (0, 1), got {self.nu}")
        if self.L_f == 0 and self.H_f == 0 and self.M_f == 0:
            raise ConfigurationError("at least one of L_f, H_f, M_f must be positive")


@dataclass(frozen=True)
class NoiseConstants:
    """Moment bound on the oracle noise: alpha-th central moment at most sigma^alpha.

    ``sigma == 0`` is allowed as the exact-oracle degenerate case so noiseless
    fixtures share the same code path.
    """

    sigma: float
    alpha: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ConfigurationError("sigma must be nonnegative")
        if not 1.0 < self.alpha <= 2.0:
            raise ConfigurationError(f"alpha must lie in (1, 2], got {self.alpha}")


class Termination(enum.Enum):
    BUDGET_EXHAUSTED = "BudgetExhausted"
    GAP_TARGET = "GapTarget"


@dataclass(frozen=True)
class CompositeProblem:
    """Bundle of the two oracles and all constants describing ``min f(x) + h(x)``.

    ``h_value`` returns only the finite regularizer part of h; feasibility with
    respect to the indicator part is exposed through ``in_domain`` and enforced
    by ``prox_h``. Instances are immutable and safe to share across workers;
    every oracle call takes its randomness stream explicitly.
    """

    dimension: int
    stochastic_oracle: StochasticOracle
    f_value: Callable[[Array], float]
    h_value: Callable[[Array], float]
    prox_h: Callable[[Array, float], Array]
    in_domain: Callable[[Array], bool]
    smoothness: SmoothnessConstants
    noise: NoiseConstants
    domain_diameter: float
    feasible_start: Array
    exact_subgradient: Optional[Callable[[Array], Array]] = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ConfigurationError("dimension must be positive")
        if not (np.isfinite(self.domain_diameter) and self.domain_diameter > 0):
            raise ConfigurationError("domain diameter must be positive and finite")
        start = np.asarray(self.feasible_start, dtype=np.float64)
        if start.shape != (self.dimension,):
            raise ConfigurationError("feasible_start has wrong shape")


@dataclass(frozen=True)
class RunResult:
    """Trace of one solver run.

    ``gap_history`` holds ``(iteration, F value)`` pairs sampled at the
    configured cadence; ``output_point`` is the averaged iterate.
    """

    output_point: Array
    iterations_used: int
    oracle_calls: int
    gap_history: Sequence[tuple[int, float]]
    wall_time: float
    seed: int
    terminated_by: Termination

    def __post_init__(self):
        if self.oracle_calls != self.iterations_used:
            raise ConfigurationError(
                "oracle_calls must equal iterations_used (one draw per iteration)"
            )


def evaluate_F(problem: CompositeProblem, x: Array) -> float:
    """Objective value f(x) + h(x), with h restricted to its finite part.

    Raises :class:`NumericalOverflowError` naming the offending term if either
    value is not finite. Feasibility of ``x`` is the caller's responsibility.
    """
    fx = float(problem.f_value(x))
    if not np.isfinite(fx):
        raise NumericalOverflowError(f"f(x) evaluated to a non-finite value: {fx!r}")
    hx = float(problem.h_value(x))
    if not np.isfinite(hx):
        raise NumericalOverflowError(f"h(x) evaluated to a non-finite value: {hx!r}")
    return fx + hx
