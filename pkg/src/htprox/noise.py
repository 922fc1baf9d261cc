"""Heavy-tailed coordinate noise, the noisy-oracle wrapper, and stream plumbing.

The noise law has density omega / (2 * (1 + |t|)^(1 + omega)) on the real
line: symmetric, mean zero for omega > 1, with finite moments of every order
strictly below omega and infinite moments from omega upward.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

from .core import Array, NoiseConstants, StochasticOracle


@dataclass(frozen=True)
class HeavyTailModel:
    """Tail index omega (> 1) and multiplicative noise scale rho (>= 0)."""

    omega: float
    rho: float

    def __post_init__(self):
        if not self.omega > 1.0:
            raise ValueError("tail index omega must exceed 1")
        if self.rho < 0:
            raise ValueError("noise scale rho must be nonnegative")


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Dedicated generator for a (trial, purpose, ...) key under one master seed.

    Built on numpy's SeedSequence spawn keys, so distinct keys give
    statistically independent streams and the mapping is stable across runs
    and across processes.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=master_seed, spawn_key=key))


def _inverse_cdf(u: Array, omega: float) -> Array:
    s = np.sign(u - 0.5)
    w = 1.0 - 2.0 * np.abs(u - 0.5)
    return s * (w ** (-1.0 / omega) - 1.0)


def sample_heavy_tail(model: HeavyTailModel, stream: np.random.Generator) -> float:
    """One unscaled draw by inversion of the analytic CDF."""
    u = stream.random()
    while u == 0.0 or u == 0.5:  # measure-zero guard: sign/weight degenerate
        u = stream.random()
    return float(_inverse_cdf(np.float64(u), model.omega))


def _clean_uniforms(shape, stream: np.random.Generator) -> Array:
    u = stream.random(shape)
    bad = (u == 0.0) | (u == 0.5)
    while np.any(bad):  # measure-zero guard, essentially never taken
        u[bad] = stream.random(int(bad.sum()))
        bad = (u == 0.0) | (u == 0.5)
    return u


def sample_noise_vector(model: HeavyTailModel, n: int, stream: np.random.Generator) -> Array:
    """Vector of n i.i.d. unscaled draws; rho is applied by the oracle wrapper."""
    if n < 1:
        raise ValueError("noise dimension must be positive")
    return _inverse_cdf(_clean_uniforms(n, stream), model.omega)


def noisy_oracle(grad: Callable[[Array], Array], model: HeavyTailModel) -> StochasticOracle:
    """Wrap an exact (sub)gradient map as grad(x) + rho * xi with xi per-coordinate heavy-tailed.

    With rho == 0 the wrapper returns grad(x) exactly and does not consume
    randomness, so noiseless runs are bit-for-bit reproductions of the exact
    oracle.
    """
    if model.rho == 0.0:
        def exact(x: Array, stream: np.random.Generator) -> Array:
            return grad(x)
        return exact

    def oracle(x: Array, stream: np.random.Generator) -> Array:
        g = grad(x)
        return g + model.rho * sample_noise_vector(model, g.shape[0], stream)

    return oracle


def heavy_tail_cdf(t, omega: float):
    """Analytic CDF: 1/2 + sign(t) * (1 - (1 + |t|)^(-omega)) / 2."""
    t = np.asarray(t, dtype=np.float64)
    return 0.5 + 0.5 * np.sign(t) * (1.0 - (1.0 + np.abs(t)) ** (-omega))


def abs_moment(omega: float, alpha: float) -> float:
    """Analytic E|xi|^alpha = omega * B(alpha + 1, omega - alpha), finite iff alpha < omega."""
    if not 0 < alpha < omega:
        raise ValueError("absolute moment is finite only for 0 < alpha < omega")
    return float(omega * special.beta(alpha + 1.0, omega - alpha))


def coordinate_variance(omega: float) -> float:
    """Analytic per-coordinate variance 2 / ((omega - 1)(omega - 2)), finite iff omega > 2."""
    if not omega > 2.0:
        raise ValueError("variance is finite only for omega > 2")
    return 2.0 / ((omega - 1.0) * (omega - 2.0))


def estimate_noise_constants(
    model: HeavyTailModel,
    n: int,
    stream: np.random.Generator,
    presample: int = 100_000,
    alpha: float | None = None,
) -> NoiseConstants:
    """Plug-in (sigma, alpha) for the moment bound of an n-dimensional noisy oracle.

    Default alpha is min(2, 0.95 * omega), keeping a margin below the tail
    index so the alpha-th moment exists. For omega > 2 the vector moment is
    bounded through the finite second moment, E||rho xi||^alpha <=
    (E||rho xi||^2)^(alpha/2); otherwise sigma comes from a Monte Carlo
    estimate of E||xi||^alpha over ``presample`` vector draws.
    """
    if alpha is None:
        alpha = min(2.0, 0.95 * model.omega)
    if not 1.0 < alpha <= 2.0:
        raise ValueError("plug-in alpha must lie in (1, 2]")
    if alpha >= model.omega:
        raise ValueError("plug-in alpha must stay below the tail index omega")
    if model.rho == 0.0:
        return NoiseConstants(sigma=0.0, alpha=alpha)
    if model.omega > 2.0:
        sigma = model.rho * float(np.sqrt(n * coordinate_variance(model.omega)))
    else:
        norms_pow = np.empty(presample)
        chunk = max(1, min(presample, 8_388_608 // max(n, 1)))
        done = 0
        while done < presample:
            m = min(chunk, presample - done)
            xi = _inverse_cdf(np.clip(stream.random((m, n)), 1e-300, None), model.omega)
            norms_pow[done : done + m] = np.linalg.norm(xi, axis=1) ** alpha
            done += m
        sigma = model.rho * float(np.mean(norms_pow) ** (1.0 / alpha))
    return NoiseConstants(sigma=sigma, alpha=alpha)
