"""The five-dimensional wave equation in Cl(3,2) and its plane-wave solutions.

The free equation is ``e_A d^A phi = -E m phi`` for an even multivector field
``phi`` over coordinates (t, x, y, z, w), with ``E`` the unit pseudoscalar.
Oscillating solutions use a bivector ``gamma`` with ``gamma^2 = -1`` in place
of the complex unit:  ``phi(x) = amp * (cos(k.x) + gamma sin(k.x))``, where the
amplitude must satisfy the momentum constraint ``K amp gamma = -m E amp`` with
``K = k^A e_A``.  Admissible phase bivectors are ``e1e2`` and ``e0*E``; their
trigonometric mixtures square to -1 only at integer multiples of pi/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    CL32,
    Multivector,
    e,
    even_masks,
    from_even_coeffs,
    linear_map_matrix,
    nullspace,
    pseudoscalar,
)
from .fields import AnalyticField, Field5, MappedField, METRIC_SIGNS, as_point, minkowski_dot
from .spinor import idempotent_split, pm_split

_E_BLADES = [e(CL32, a) for a in range(5)]
_PSEUDO = pseudoscalar(CL32)
_E12 = e(CL32, 1, 2)
_E34 = e(CL32, 3, 4)
_E012 = e(CL32, 0, 1, 2)
_E0E = e(CL32, 0) * _PSEUDO  # equals -e1e2e3e4

#: Even blades free of the second time generator (the 4D Dirac sector).
NO_E4_EVEN_MASKS = tuple(m for m in even_masks(CL32) if not m & 0b10000)

NULLSPACE_RCOND = 1e-10


class GammaRejectionError(ValueError):
    """A candidate phase bivector failed the admissibility identities."""

    def __init__(self, message: str, diagnostics: list[str]):
        super().__init__(message + ": " + "; ".join(diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class GammaChoice:
    """Phase bivector playing the role of the complex unit.

    Variants: ``e12`` (spatial rotation plane), ``e0E`` (time axis times the
    pseudoscalar) and ``superposition`` with a mixing angle, which is only
    admissible when the mixing collapses to one of the two pure choices.
    """

    variant: str
    theta: float | None = None

    E12_VARIANT = "e12"
    E0E_VARIANT = "e0E"
    SUPERPOSITION_VARIANT = "superposition"

    @classmethod
    def e12(cls) -> "GammaChoice":
        return cls(cls.E12_VARIANT)

    @classmethod
    def e0E(cls) -> "GammaChoice":
        return cls(cls.E0E_VARIANT)

    @classmethod
    def superposition(cls, theta: float) -> "GammaChoice":
        return cls(cls.SUPERPOSITION_VARIANT, float(theta))

    @classmethod
    def from_name(cls, name: str) -> "GammaChoice":
        key = name.strip().lower()
        if key in {"e12", "e1e2"}:
            return cls.e12()
        if key in {"e0e", "e0_e", "e0pseudo"}:
            return cls.e0E()
        raise ValueError(f"unknown phase bivector {name!r}; expected 'e12' or 'e0e'")

    def as_multivector(self) -> Multivector:
        if self.variant == self.E12_VARIANT:
            return _E12
        if self.variant == self.E0E_VARIANT:
            return _E0E
        if self.variant == self.SUPERPOSITION_VARIANT:
            c2 = math.cos(self.theta) ** 2
            s2 = math.sin(self.theta) ** 2
            return _E12 * c2 - (_E12 * _E34) * s2
        raise ValueError(f"unknown variant {self.variant!r}")

    def is_admissible(self, tolerance: float = 1e-12) -> bool:
        g = self.as_multivector()
        return (g * g + 1).inf_norm() <= tolerance

    def require_admissible(self, tolerance: float = 1e-12) -> None:
        if not self.is_admissible(tolerance):
            raise GammaRejectionError(
                "phase bivector is not admissible",
                [
                    f"square differs from -1 by {(self.as_multivector()*self.as_multivector() + 1).inf_norm():.3e}",
                    "mixtures are admissible only at integer multiples of pi/2",
                ],
            )


def gamma_classify(candidate: Multivector, tolerance: float = 1e-12) -> GammaChoice:
    """Classify a multivector as one of the admissible phase bivectors.

    Checks (1) even grade content, (2) square equal to -1, and (3) the
    projection identity ``plus - minus*e3e4 == e1e2``; rejects with
    diagnostics when any fails, otherwise returns the matching variant.
    """
    diagnostics: list[str] = []
    if candidate.signature != CL32:
        raise GammaRejectionError("phase bivector rejected", ["not a Cl(3,2) multivector"])
    if not candidate.is_even:
        diagnostics.append("has odd-grade content")
    square_err = (candidate * candidate + 1).inf_norm()
    if square_err > tolerance:
        diagnostics.append(f"square differs from -1 by {square_err:.3e}")
    plus, minus = pm_split(candidate)
    ident_err = (plus - minus * _E34 - _E12).inf_norm()
    if ident_err > tolerance:
        diagnostics.append(f"projection identity off by {ident_err:.3e}")
    if diagnostics:
        raise GammaRejectionError("phase bivector rejected", diagnostics)
    if (candidate - _E12).inf_norm() <= tolerance:
        return GammaChoice.e12()
    if (candidate - _E0E).inf_norm() <= tolerance:
        return GammaChoice.e0E()
    raise GammaRejectionError(
        "phase bivector rejected",
        ["passes the identities but matches neither e1e2 nor e0*pseudoscalar"],
    )


# ---------------------------------------------------------------------------
# plane waves
# ---------------------------------------------------------------------------


def momentum_vector(k: Sequence[float]) -> Multivector:
    """The grade-1 multivector ``k^A e_A`` from contravariant components."""
    k = as_point(k)
    out = Multivector.zero(CL32)
    for a in range(5):
        out = out + float(k[a]) * _E_BLADES[a]
    return out


def momentum_constraint_matrix(k: Sequence[float], mass: float, gamma: GammaChoice) -> np.ndarray:
    """Matrix (32 x 16) of ``amp -> K amp gamma + m E amp`` on the even basis."""
    kvec = momentum_vector(k)
    gmv = gamma.as_multivector()

    def fn(mv: Multivector) -> Multivector:
        return kvec * mv * gmv + mass * (_PSEUDO * mv)

    return linear_map_matrix(fn, CL32, even_masks(CL32))


def solve_momentum_constraint(
    k: Sequence[float], mass: float, gamma: GammaChoice
) -> list[Multivector]:
    """Orthonormal basis of even amplitudes satisfying the constraint.

    Dimension 8 on the mass shell ``k.k = -m^2``, zero off it.
    """
    gamma.require_admissible()
    basis = nullspace(momentum_constraint_matrix(k, mass, gamma), NULLSPACE_RCOND)
    return [from_even_coeffs(basis[:, i]) for i in range(basis.shape[1])]


def solve_time_component(k_spatial: Sequence[float], k4: float, mass: float) -> float:
    """Positive-frequency k^0 from the mass shell ``k.k = -m^2``.

    With two minus signs in the metric, ``(k^0)^2 = |k|^2 + m^2 - (k^4)^2``;
    raises when the right side is negative.
    """
    k_spatial = np.asarray(k_spatial, dtype=np.float64)
    if k_spatial.shape != (3,):
        raise ValueError("k_spatial must have three components")
    disc = float(k_spatial @ k_spatial) + mass * mass - k4 * k4
    if disc < 0:
        raise ValueError(
            f"no real frequency: |k|^2 + m^2 - (k^4)^2 = {disc:.6g} is negative"
        )
    return math.sqrt(disc)


@dataclass(frozen=True, eq=False)
class PlaneWave:
    """Oscillating solution ``amp (cos(k.x) + gamma sin(k.x))``."""

    amplitude: Multivector
    k: np.ndarray
    gamma: GammaChoice
    mass: float

    def __post_init__(self):
        object.__setattr__(self, "k", as_point(self.k).copy())
        self.k.setflags(write=False)
        if not self.amplitude.is_even:
            raise ValueError("plane-wave amplitude must be even")
        err = self.constraint_residual()
        if err > 1e-8:
            raise ValueError(f"amplitude violates the momentum constraint by {err:.3e}")

    def constraint_residual(self) -> float:
        kvec = momentum_vector(self.k)
        gmv = self.gamma.as_multivector()
        return (kvec * self.amplitude * gmv + self.mass * (_PSEUDO * self.amplitude)).inf_norm()

    def dispersion_residual(self) -> float:
        """|k.k + m^2| — zero on the mass shell."""
        return abs(minkowski_dot(self.k, self.k) + self.mass**2)

    def field(self) -> AnalyticField:
        amp = self.amplitude
        amp_gamma = amp * self.gamma.as_multivector()
        k = self.k
        k_low = METRIC_SIGNS * k

        def value(x: np.ndarray) -> Multivector:
            th = minkowski_dot(k, x)
            return amp * math.cos(th) + amp_gamma * math.sin(th)

        def partial(axis: int, x: np.ndarray) -> Multivector:
            th = minkowski_dot(k, x)
            return (amp * (-math.sin(th)) + amp_gamma * math.cos(th)) * float(k_low[axis])

        return AnalyticField(value, partial)


def build_plane_wave(
    k_spatial: Sequence[float],
    k4: float,
    mass: float,
    gamma: GammaChoice,
    amplitude: Multivector | None = None,
) -> PlaneWave:
    """Solve k^0 and, if not supplied, pick the first null-space amplitude."""
    k0 = solve_time_component(k_spatial, k4, mass)
    k = np.array([k0, *np.asarray(k_spatial, dtype=np.float64), k4])
    if amplitude is None:
        basis = solve_momentum_constraint(k, mass, gamma)
        if not basis:
            raise ValueError("momentum constraint has no nontrivial amplitude")
        amplitude = basis[0]
    return PlaneWave(amplitude=amplitude, k=k, gamma=gamma, mass=mass)


def plane_wave_field(
    k_spatial: Sequence[float],
    k4: float,
    mass: float,
    gamma: GammaChoice,
    amplitude: Multivector | None = None,
) -> AnalyticField:
    return build_plane_wave(k_spatial, k4, mass, gamma, amplitude).field()


def specialized_constraint_residual(wave: PlaneWave) -> float:
    """Residual of the reduced amplitude condition for the pure variants.

    For ``gamma = e0E`` the constraint collapses to ``K amp = m amp e0``; for
    ``gamma = e1e2`` to ``K amp = -m amp e0e3e4``.
    """
    kvec = momentum_vector(wave.k)
    amp = wave.amplitude
    if wave.gamma.variant == GammaChoice.E0E_VARIANT:
        return (kvec * amp - wave.mass * (amp * e(CL32, 0))).inf_norm()
    if wave.gamma.variant == GammaChoice.E12_VARIANT:
        return (kvec * amp + wave.mass * (amp * e(CL32, 0, 3, 4))).inf_norm()
    raise ValueError("specialized form exists only for the pure phase bivectors")


# ---------------------------------------------------------------------------
# residual evaluators
# ---------------------------------------------------------------------------


def dirac5_residual(field: Field5, mass: float, x: Sequence[float]) -> Multivector:
    """Left side minus right side of the free equation at a point."""
    pt = as_point(x)
    res = mass * (_PSEUDO * field.value(pt))
    for a in range(5):
        res = res + float(METRIC_SIGNS[a]) * (_E_BLADES[a] * field.partial(a, pt))
    return res


def _potential_value(potential, x) -> Multivector:
    value = potential.value(x) if hasattr(potential, "value") else potential(x)
    if not isinstance(value, Multivector):
        raise TypeError("potential must produce a Multivector")
    return value


def dirac5_potential_residual(
    field: Field5,
    mass: float,
    charge: float,
    potential,
    gamma: GammaChoice,
    x: Sequence[float],
) -> Multivector:
    """Residual of the minimally-coupled equation at a point.

    The potential must evaluate to a grade-1 multivector; anything else is a
    modeling error and raises.
    """
    pt = as_point(x)
    a_val = _potential_value(potential, pt)
    if a_val.grades_present not in ((), (1,)):
        raise ValueError(
            f"potential must be grade-1, found grades {a_val.grades_present}"
        )
    val = field.value(pt)
    res = mass * (val * _PSEUDO) - charge * (a_val * val * gamma.as_multivector())
    for a in range(5):
        res = res + float(METRIC_SIGNS[a]) * (_E_BLADES[a] * field.partial(a, pt))
    return res


def coupled_residual(field: Field5, mass: float, x: Sequence[float], part: str) -> Multivector:
    """Residual of one sign of the projected pair of equations.

    ``part='plus'`` evaluates ``e4 d^4 phi_+ + e_mu d^mu phi_- + m E phi_+``
    and ``part='minus'`` the same with the roles swapped.
    """
    if part not in ("plus", "minus"):
        raise ValueError("part must be 'plus' or 'minus'")
    pick = (lambda p: p.plus) if part == "plus" else (lambda p: p.minus)
    other = (lambda p: p.minus) if part == "plus" else (lambda p: p.plus)
    pt = as_point(x)
    res = mass * (_PSEUDO * pick(pm_split(field.value(pt))))
    res = res + float(METRIC_SIGNS[4]) * (_E_BLADES[4] * pick(pm_split(field.partial(4, pt))))
    for mu in range(4):
        res = res + float(METRIC_SIGNS[mu]) * (_E_BLADES[mu] * other(pm_split(field.partial(mu, pt))))
    return res


def hestenes_dirac_residual(
    field: Field5,
    mass: float,
    x: Sequence[float],
    charge: float = 0.0,
    potential=None,
    cylinder_tolerance: float = 1e-10,
) -> Multivector:
    """Residual of the 4D Dirac equation in Hestenes form at a point.

    The field must be flat along the second time axis at the point (checked
    against ``cylinder_tolerance``); the optional potential must be grade-1
    with no second-time component.
    """
    pt = as_point(x)
    d4 = field.partial(4, pt).inf_norm()
    if d4 >= cylinder_tolerance:
        raise ValueError(
            f"field varies along the second time axis (|d4| = {d4:.3e}); "
            "the 4D reduction does not apply"
        )
    val = field.value(pt)
    res = -mass * (val * _E012)
    if charge != 0.0:
        if potential is None:
            raise ValueError("charge given without a potential")
        a_val = _potential_value(potential, pt)
        if a_val.grades_present not in ((), (1,)):
            raise ValueError(
                f"potential must be grade-1, found grades {a_val.grades_present}"
            )
        if np.any(a_val.coeffs[[1 << 4]]):
            raise ValueError("potential must have no second-time component")
        res = res - charge * (a_val * val * _E12)
    for mu in range(4):
        res = res + float(METRIC_SIGNS[mu]) * (_E_BLADES[mu] * field.partial(mu, pt))
    return res


def sector_fields(field: Field5) -> tuple[Field5, Field5]:
    """Plus/minus idempotent-transform halves of a field, as fields."""
    plus = MappedField(field, lambda mv: idempotent_split(mv).plus)
    minus = MappedField(field, lambda mv: idempotent_split(mv).minus)
    return plus, minus


# ---------------------------------------------------------------------------
# 4D Dirac plane waves (no second-time dependence)
# ---------------------------------------------------------------------------


def minkowski4_dot(a: Sequence[float], b: Sequence[float]) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != (4,) or b.shape != (4,):
        raise ValueError("four-vectors expected")
    return float(-a[0] * b[0] + a[1:] @ b[1:])


def solve_hestenes_amplitude(k4: Sequence[float], mass: float) -> list[Multivector]:
    """Amplitudes for the 4D wave: null space of ``K psi e12 - m psi e012``.

    Works on the eight even blades free of the second time generator.
    """
    k4 = np.asarray(k4, dtype=np.float64)
    kvec = momentum_vector(np.concatenate([k4, [0.0]]))

    def fn(mv: Multivector) -> Multivector:
        return kvec * mv * _E12 - mass * (mv * _E012)

    mat = linear_map_matrix(fn, CL32, NO_E4_EVEN_MASKS)
    basis = nullspace(mat, NULLSPACE_RCOND)
    out = []
    for i in range(basis.shape[1]):
        coeffs = np.zeros(CL32.n_blades)
        coeffs[list(NO_E4_EVEN_MASKS)] = basis[:, i]
        out.append(Multivector(coeffs, CL32))
    return out


def hestenes_plane_wave_field(
    k_spatial: Sequence[float], mass: float, amplitude: Multivector | None = None
) -> AnalyticField:
    """4D Dirac plane wave as a five-coordinate field flat along the last axis."""
    k_spatial = np.asarray(k_spatial, dtype=np.float64)
    k0 = math.sqrt(float(k_spatial @ k_spatial) + mass * mass)
    k4 = np.array([k0, *k_spatial])
    if amplitude is None:
        basis = solve_hestenes_amplitude(k4, mass)
        if not basis:
            raise ValueError("no nontrivial 4D amplitude")
        amplitude = basis[0]
    amp_g = amplitude * _E12
    k_low4 = np.array([-k4[0], k4[1], k4[2], k4[3], 0.0])

    def value(x: np.ndarray) -> Multivector:
        th = minkowski4_dot(k4, x[:4])
        return amplitude * math.cos(th) + amp_g * math.sin(th)

    def partial(axis: int, x: np.ndarray) -> Multivector:
        th = minkowski4_dot(k4, x[:4])
        return (amplitude * (-math.sin(th)) + amp_g * math.cos(th)) * float(k_low4[axis])

    return AnalyticField(value, partial)
