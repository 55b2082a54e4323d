"""Tests for the second-time demos: scalar potential, flatness, source current."""
from __future__ import annotations

import math

import numpy as np
import pytest

from fermion5d.algebra import CL32, Multivector, e
from fermion5d.beyond import (
    CURRENT_MASKS,
    DEMO_GRID_POINTS,
    DEMO_GRID_SPACING,
    GradeStructureError,
    MINUS_CONSTANCY_BOUND,
    SECOND_TIME_EVEN_MASKS,
    ScalarPotentialDemo,
    SourceCurrent,
    demo_grid,
    derived_minus_field,
    grade_structure_violations,
    massless_consistency,
    minus_constancy_ratio,
    oscillating_source_pair,
    pair_residual,
    random_minus_field,
    scalar_potential_residual,
    second_time_gradient,
    source_current,
    sourced_massless_residual,
    spacetime_gradient,
)
from fermion5d.fields import AnalyticField, ConstantField
from fermion5d.wave import hestenes_plane_wave_field

E012 = e(CL32, 0, 1, 2)


def sample_points(rng, count=5, scale=0.5):
    return rng.uniform(-scale, scale, size=(count, 5))


# ---------------------------------------------------------------------------
# gradients
# ---------------------------------------------------------------------------


def test_gradients_on_linear_fields():
    blade = e(CL32, 0, 1)

    def coordinate_field(axis):
        def value(pt):
            return float(pt[axis]) * blade

        def partial(a, pt):
            return blade if a == axis else Multivector.zero()

        return AnalyticField(value, partial)

    x = np.zeros(5)
    # raised index flips the sign on the two time axes
    assert spacetime_gradient(coordinate_field(0), x) == -(e(CL32, 0) * blade)
    assert spacetime_gradient(coordinate_field(2), x) == e(CL32, 2) * blade
    assert spacetime_gradient(coordinate_field(4), x) == Multivector.zero()
    assert second_time_gradient(coordinate_field(4), x) == -(e(CL32, 4) * blade)
    assert second_time_gradient(coordinate_field(0), x) == Multivector.zero()


def test_pair_residual_sign_validation(rng):
    field = ConstantField(e(CL32, 0, 1))
    with pytest.raises(ValueError):
        pair_residual(field, field, 1.0, np.zeros(5), "diagonal")


# ---------------------------------------------------------------------------
# induced scalar potential
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("s", [0.01, 0.1, 1.0])
def test_scalar_demo_solves_both_reduced_forms(rng, s):
    demo = ScalarPotentialDemo(1.0, s, k_spatial=(0.2, -0.15, 0.1))
    for x in sample_points(rng):
        second_form, potential_form = scalar_potential_residual(demo, x)
        assert second_form.inf_norm() < 1e-9
        assert potential_form.inf_norm() < 1e-9
        assert (second_form - potential_form).inf_norm() < 1e-9
        assert demo.eigen_residual(x) < 1e-9


def test_scalar_demo_supports_an_oscillatory_regime(rng):
    # negative potential strength turns the profile trigonometric
    demo = ScalarPotentialDemo(1.0, -0.25)
    for w in (-0.7, 0.0, 1.3):
        assert demo.profile(w, 2) == pytest.approx(-0.25 * demo.profile(w, 0), abs=1e-15)
    for x in sample_points(rng, count=3):
        assert demo.eigen_residual(x) < 1e-12
        second_form, potential_form = scalar_potential_residual(demo, x)
        assert second_form.inf_norm() < 1e-12
        assert potential_form.inf_norm() < 1e-12


def test_scalar_demo_at_zero_strength_is_flat(rng):
    demo = ScalarPotentialDemo(1.0, 0.0)
    pts = sample_points(rng, count=4)
    assert massless_consistency(demo.xi_plus, pts, tolerance=1e-14)
    assert demo.profile(0.3, 0) == 1.0 and demo.profile(0.3, 1) == 0.0


def test_scalar_demo_requires_positive_mass():
    with pytest.raises(ValueError, match="mass"):
        ScalarPotentialDemo(0.0, 0.1)
    with pytest.raises(ValueError, match="mass"):
        ScalarPotentialDemo(-1.0, 0.1)


def test_profile_derivative_order_validation():
    demo = ScalarPotentialDemo(1.0, 0.1)
    with pytest.raises(ValueError):
        demo.profile(0.0, -1)


def test_derived_minus_lives_on_the_second_time_blades(rng):
    demo = ScalarPotentialDemo(1.0, 0.1, k_spatial=(0.1, 0.2, -0.3))
    ximinus = demo.derived_minus()
    for x in sample_points(rng, count=4):
        present = {int(m) for m in np.nonzero(ximinus.value(x).coeffs)[0]}
        assert present <= set(SECOND_TIME_EVEN_MASKS)


def test_derived_minus_reconstructs_the_second_time_gradient(rng):
    demo = ScalarPotentialDemo(1.0, 0.1, k_spatial=(0.1, 0.2, -0.3))
    ximinus = demo.derived_minus()
    for x in sample_points(rng, count=4):
        recon = second_time_gradient(demo.xi_plus, x) - 1.0 * (
            ximinus.value(x) * E012
        )
        assert recon.inf_norm() < 1e-12


def test_pair_equation_round_trip(rng):
    # substituting the derived minus half back gives exactly the reduced form
    demo = ScalarPotentialDemo(1.0, 0.1, k_spatial=(0.1, 0.2, -0.3))
    ximinus = demo.derived_minus()
    for x in sample_points(rng, count=4):
        lower = pair_residual(demo.xi_plus, ximinus, 1.0, x, "lower")
        second_form, _ = scalar_potential_residual(demo, x)
        assert (lower - second_form).inf_norm() < 1e-12
        assert lower.inf_norm() < 1e-9


def test_finite_difference_minus_matches_the_analytic_one(rng):
    demo = ScalarPotentialDemo(1.0, 0.1)
    analytic = demo.derived_minus()
    numeric = derived_minus_field(demo.xi_plus, 1.0, step=0.01)
    for x in sample_points(rng, count=3):
        assert (analytic.value(x) - numeric.value(x)).inf_norm() < 1e-14
        for axis in range(5):
            delta = analytic.partial(axis, x) - numeric.partial(axis, x)
            assert delta.inf_norm() < 1e-4  # central differences, O(step^2)


def test_finite_difference_minus_requires_mass():
    with pytest.raises(ValueError, match="non-zero mass"):
        derived_minus_field(ConstantField(e(CL32, 0, 1)), 0.0)


def test_minus_constancy_ratio_cases(rng):
    pts = sample_points(rng, count=4)
    assert minus_constancy_ratio(ConstantField(e(CL32, 0, 4)), pts) == 0.0
    flat_but_varying = hestenes_plane_wave_field((0.3, 0.0, 0.0), 1.0)
    assert minus_constancy_ratio(flat_but_varying, pts) == math.inf
    _, xi_minus = oscillating_source_pair()
    assert minus_constancy_ratio(xi_minus, pts) == 0.0
    assert minus_constancy_ratio(random_minus_field(rng), pts) > MINUS_CONSTANCY_BOUND
    with pytest.raises(ValueError):
        minus_constancy_ratio(ConstantField(e(CL32, 0, 4)), [])


# ---------------------------------------------------------------------------
# massless consistency
# ---------------------------------------------------------------------------


def test_massless_consistency_detects_flatness(rng):
    pts = sample_points(rng, count=4)
    assert massless_consistency(hestenes_plane_wave_field((0.2, 0.1, 0.0), 1.0), pts)
    xi_plus, _ = oscillating_source_pair()
    assert not massless_consistency(xi_plus, pts)
    with pytest.raises(ValueError):
        massless_consistency(xi_plus, [])


# ---------------------------------------------------------------------------
# source current
# ---------------------------------------------------------------------------


def test_current_masks_are_grades_one_and_three_without_the_second_time():
    for mask in CURRENT_MASKS:
        assert bin(mask).count("1") in (1, 3)
        assert not mask & 0b10000
    # four grade-1 blades (e0..e3) and four grade-3 blades (their complements)
    assert len(CURRENT_MASKS) == 8


def test_random_minus_fields_induce_structurally_clean_currents(rng):
    worst = 0.0
    forbidden = [m for m in range(32) if m not in CURRENT_MASKS]
    for _ in range(20):
        field = random_minus_field(rng)
        current = SourceCurrent(field)
        for x in sample_points(rng, count=2, scale=1.0):
            value = current.value(x)
            worst = max(worst, float(np.abs(value.coeffs[forbidden]).max()))
    assert worst == 0.0


def test_random_minus_field_stays_on_its_masks(rng):
    field = random_minus_field(rng)
    for x in sample_points(rng, count=3):
        present = {int(m) for m in np.nonzero(field.value(x).coeffs)[0]}
        assert present <= set(SECOND_TIME_EVEN_MASKS)
        for axis in range(5):
            d = field.partial(axis, x)
            present = {int(m) for m in np.nonzero(d.coeffs)[0]}
            assert present <= set(SECOND_TIME_EVEN_MASKS)


def test_grade_structure_error_names_the_offenders():
    # a field outside the minus support induces forbidden blades
    def value(pt):
        return math.cos(pt[4]) * e(CL32, 1, 2)

    def partial(axis, pt):
        if axis == 4:
            return -math.sin(pt[4]) * e(CL32, 1, 2)
        return Multivector.zero()

    bogus = SourceCurrent(AnalyticField(value, partial))
    with pytest.raises(GradeStructureError) as err:
        bogus.value(np.full(5, 0.3))
    assert "e124" in err.value.blades
    assert "e124" in str(err.value)


def test_grade_structure_violations_lists_blades():
    assert grade_structure_violations(e(CL32, 0)) == []
    assert grade_structure_violations(e(CL32, 0, 1, 2)) == []
    assert grade_structure_violations(e(CL32, 4)) == ["e4"]
    assert set(grade_structure_violations(e(CL32, 0, 1) + e(CL32, 2))) == {"e01"}
    from fermion5d.algebra import CL31

    with pytest.raises(ValueError):
        grade_structure_violations(Multivector.scalar(1.0, CL31))


def test_oscillating_pair_satisfies_the_sourced_equation(rng):
    xi_plus, xi_minus = oscillating_source_pair()
    current = SourceCurrent(xi_minus)
    for x in sample_points(rng, count=6, scale=1.0):
        # the induced current is the hand value -(cos(x4)/4pi) e0, exactly
        expected = Multivector.blade(1, CL32, -math.cos(x[4]) / (4.0 * math.pi))
        assert current.value(x) == expected
        assert sourced_massless_residual(xi_plus, current, x).inf_norm() < 1e-14
        # and the pair solves the lower-sign equation at zero mass
        assert pair_residual(xi_plus, xi_minus, 0.0, x, "lower").inf_norm() < 1e-14


def test_vector_part_and_divergence_of_the_oscillating_pair(rng):
    _, xi_minus = oscillating_source_pair()
    current = SourceCurrent(xi_minus)
    for x in sample_points(rng, count=4, scale=1.0):
        vec = current.vector_part(x)
        assert vec[0] == -math.cos(x[4]) / (4.0 * math.pi)
        assert np.all(vec[1:] == 0.0)
        # spatially constant minus half: the divergence vanishes identically
        assert current.divergence(x) == 0.0
    with pytest.raises(ValueError):
        current.divergence(np.zeros(5), step=0.0)


def test_divergence_converges_at_second_order():
    # minus half x4*sin(x1) e1e4 induces J = -(sin(x1)/4pi) e1 with an exact
    # divergence -cos(x1)/4pi; central differences must approach it as h^2
    e14 = e(CL32, 1, 4)

    def value(pt):
        return (pt[4] * math.sin(pt[1])) * e14

    def partial(axis, pt):
        if axis == 1:
            return (pt[4] * math.cos(pt[1])) * e14
        if axis == 4:
            return math.sin(pt[1]) * e14
        return Multivector.zero()

    current = SourceCurrent(AnalyticField(value, partial))
    x = np.array([0.1, 0.4, -0.2, 0.3, 0.7])
    exact = -math.cos(x[1]) / (4.0 * math.pi)
    errors = [abs(current.divergence(x, step=h) - exact) for h in (0.1, 0.05)]
    assert errors[1] < errors[0] / 3.0  # better than half of the h^2 factor 4
    assert errors[1] < 1e-4


def test_source_current_factory_verifies_pairs(rng):
    xi_plus, xi_minus = oscillating_source_pair()
    pts = sample_points(rng, count=4, scale=1.0)
    current = source_current(xi_minus, xi_plus, pts)
    assert isinstance(current, SourceCurrent)
    # a mismatched plus half is rejected
    with pytest.raises(ValueError, match="sourced zero-mass"):
        source_current(xi_minus, ConstantField(Multivector.zero()), pts)
    with pytest.raises(ValueError, match="sample points"):
        source_current(xi_minus, xi_plus)
    # without a plus half the factory only enforces the grade structure
    assert isinstance(source_current(xi_minus, points=pts), SourceCurrent)


def test_flat_minus_half_induces_no_current(rng):
    current = SourceCurrent(ConstantField(e(CL32, 0, 4)))
    for x in sample_points(rng, count=3):
        assert current.value(x) == Multivector.zero()


# ---------------------------------------------------------------------------
# demo grid
# ---------------------------------------------------------------------------


def test_demo_grid_shape_and_spacing():
    grid = demo_grid()
    assert grid.shape == (DEMO_GRID_POINTS**5, 5)
    axis_values = np.unique(grid[:, 0])
    assert len(axis_values) == DEMO_GRID_POINTS
    steps = np.diff(axis_values)
    assert np.allclose(steps, DEMO_GRID_SPACING, atol=1e-12, rtol=0.0)
    assert np.allclose(grid.mean(axis=0), 0.0, atol=1e-12)
    shifted = demo_grid(center=(1.0, 0.0, 0.0, 0.0, 0.0))
    assert shifted[:, 0].mean() == pytest.approx(1.0, abs=1e-12)
