"""Exact proximal operators and domain diameters for the experiment problems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Array


@dataclass(frozen=True)
class BoxL1Prox:
    """Weighted l1 norm plus indicator of the box [lower, upper]."""

    lower: Array
    upper: Array
    lam: float

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=np.float64)
        upper = np.asarray(self.upper, dtype=np.float64)
        if np.any(lower > upper):
            raise ValueError("box bounds require lower <= upper componentwise")
        if self.lam < 0:
            raise ValueError("l1 weight must be nonnegative")


@dataclass(frozen=True)
class BallProx:
    """Indicator of the Euclidean ball of the given radius."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("ball radius must be positive")


def soft_threshold(v: Array, tau: float) -> Array:
    """sign(v) * max(|v| - tau, 0), with sign(0) = 0."""
    return np.sign(v) * np.maximum(np.abs(v) - tau, 0.0)


def prox_box_l1(p: BoxL1Prox, v: Array, eta: float) -> Array:
    """Prox of eta * (lam * ||.||_1 + indicator of the box) at v.

    Each coordinate problem is one-dimensional and convex, so the constrained
    minimizer is the interval projection of the soft-thresholded point.
    """
    if not eta > 0:
        raise ValueError("prox step must be positive")
    v = np.asarray(v, dtype=np.float64)
    if not np.all(np.isfinite(v)):
        raise ValueError("prox input contains non-finite entries")
    return np.clip(soft_threshold(v, eta * p.lam), p.lower, p.upper)


def prox_ball(p: BallProx, v: Array, eta: float) -> Array:
    """Euclidean projection onto the ball; eta is accepted but has no effect."""
    if not eta > 0:
        raise ValueError("prox step must be positive")
    v = np.asarray(v, dtype=np.float64)
    nrm = float(np.linalg.norm(v))
    if nrm <= p.radius:
        return v
    return (p.radius / nrm) * v


def domain_diameter_box(lower: Array, upper: Array) -> float:
    """Euclidean diameter of the box [lower, upper]: ||upper - lower||."""
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    if np.any(lower > upper):
        raise ValueError("box bounds require lower <= upper componentwise")
    return float(np.linalg.norm(upper - lower))


def domain_diameter_ball(radius: float) -> float:
    """Euclidean diameter of the ball: twice the radius (antipodal points)."""
    if not radius > 0:
        raise ValueError("ball radius must be positive")
    return 2.0 * radius
