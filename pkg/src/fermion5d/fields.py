"""Multivector-valued fields over the five coordinates (t, x, y, z, w).

A field exposes ``value(x)`` and ``partial(axis, x)`` where ``partial`` is the
plain coordinate derivative (lower index); metric raising is applied by the
consumers.  Analytic fields carry exact derivatives; sampled fields fall back
to second-order central differences with a configurable step.
"""
from __future__ import annotations

from typing import Callable, Protocol, Sequence

import numpy as np

from .algebra import CL32, Multivector

#: Diagonal metric signs g_AA for coordinates (t, x, y, z, w).
METRIC_SIGNS = np.array([-1.0, 1.0, 1.0, 1.0, -1.0])
METRIC_SIGNS.setflags(write=False)

DEFAULT_FD_STEP = 1e-4


def as_point(x: Sequence[float]) -> np.ndarray:
    pt = np.asarray(x, dtype=np.float64)
    if pt.shape != (5,):
        raise ValueError(f"a point has five coordinates, got shape {pt.shape}")
    return pt


def minkowski_dot(a: Sequence[float], b: Sequence[float]) -> float:
    """Inner product with signature (-,+,+,+,-) on (t, x, y, z, w)."""
    return float(np.dot(METRIC_SIGNS * as_point(a), as_point(b)))


class Field5(Protocol):
    def value(self, x: Sequence[float]) -> Multivector: ...

    def partial(self, axis: int, x: Sequence[float]) -> Multivector: ...


class AnalyticField:
    """Field defined by explicit value and derivative callables."""

    def __init__(
        self,
        value_fn: Callable[[np.ndarray], Multivector],
        partial_fn: Callable[[int, np.ndarray], Multivector],
    ):
        self._value = value_fn
        self._partial = partial_fn

    def value(self, x):
        return self._value(as_point(x))

    def partial(self, axis, x):
        if not 0 <= axis <= 4:
            raise ValueError(f"axis must be 0..4, got {axis}")
        return self._partial(axis, as_point(x))


class FiniteDifferenceField:
    """Central-difference derivatives (O(step^2)) around a value callable."""

    def __init__(self, value_fn: Callable[[np.ndarray], Multivector], step: float = DEFAULT_FD_STEP):
        if step <= 0:
            raise ValueError("finite-difference step must be positive")
        self._value = value_fn
        self.step = step

    def value(self, x):
        return self._value(as_point(x))

    def partial(self, axis, x):
        if not 0 <= axis <= 4:
            raise ValueError(f"axis must be 0..4, got {axis}")
        pt = as_point(x)
        fwd, bwd = pt.copy(), pt.copy()
        fwd[axis] += self.step
        bwd[axis] -= self.step
        return (self._value(fwd) - self._value(bwd)) / (2 * self.step)


class ConstantField:
    def __init__(self, mv: Multivector):
        self._mv = mv
        self._zero = Multivector.zero(mv.signature)

    def value(self, x):
        as_point(x)
        return self._mv

    def partial(self, axis, x):
        if not 0 <= axis <= 4:
            raise ValueError(f"axis must be 0..4, got {axis}")
        as_point(x)
        return self._zero


class MappedField:
    """Pointwise application of a linear, x-independent map to a base field.

    Linearity lets the map commute with differentiation, so partials are the
    map applied to the base partials.
    """

    def __init__(self, base: Field5, linear_fn: Callable[[Multivector], Multivector]):
        self._base = base
        self._fn = linear_fn

    def value(self, x):
        return self._fn(self._base.value(x))

    def partial(self, axis, x):
        return self._fn(self._base.partial(axis, x))


def sample_grid(center: Sequence[float], half_extent: float, points_per_axis: int) -> np.ndarray:
    """Uniform 5D grid of shape (points_per_axis**5, 5) around ``center``."""
    center = as_point(center)
    axis = np.linspace(-half_extent, half_extent, points_per_axis)
    grids = np.meshgrid(*([axis] * 5), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1) + center
    return pts


def random_points(rng: np.random.Generator, count: int, scale: float = 1.0) -> np.ndarray:
    return rng.uniform(-scale, scale, size=(count, 5))
