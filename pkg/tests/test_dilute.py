"""Dilute-limit cross-check: sphere pair forces, the summed cylinder
route, the closed near/far forms, and their mutual agreement.  This is
the validation path that is independent of the scattering engine."""

import math
import warnings

import numpy as np
import pytest

from neqcasimir import asymptotics, materials
from neqcasimir.dilute import (cylinder_force_by_summation,
                               dilute_closed_forms, excluded_d2_term,
                               sphere_pair_force)
from neqcasimir.engine import QuadratureControls, interaction_force
from neqcasimir.materials import Constant, CylinderSpec

# weak dispersionless absorber: the frequency-independent loss makes
# the Bose integrand log-divergent at u = 0, so the u window opens at
# u_min instead of 0
EPS_D = Constant(1.0001 + 1e-4j)
R = 10e-9
T2 = 300.0
CTL = QuadratureControls(rel_tol=1e-3, u_min=1e-3)
V = 1e-24


def test_zero_temperature_is_null():
    assert sphere_pair_force(V, V, EPS_D, EPS_D, 0.0, 1e-6,
                             controls=CTL) == 0.0
    assert cylinder_force_by_summation(R, R, EPS_D, EPS_D, 0.0, 1e-6,
                                       controls=CTL) == 0.0
    assert dilute_closed_forms(R, R, EPS_D, EPS_D, 0.0, 1e-6,
                               controls=CTL) == 0.0
    assert excluded_d2_term(R, R, EPS_D, EPS_D, 0.0, 1e-6,
                            controls=CTL) == 0.0


def test_argument_validation():
    with pytest.raises(ValueError):
        sphere_pair_force(0.0, V, EPS_D, EPS_D, T2, 1e-6, controls=CTL)
    with pytest.raises(ValueError):
        sphere_pair_force(V, V, EPS_D, EPS_D, T2, -1e-6, controls=CTL)
    with pytest.raises(ValueError):
        sphere_pair_force(V, V, EPS_D, EPS_D, T2, 1e-6,
                          terms=("d4",), controls=CTL)
    with pytest.raises(ValueError):
        cylinder_force_by_summation(-R, R, EPS_D, EPS_D, T2, 1e-6,
                                    controls=CTL)
    with pytest.raises(ValueError):
        dilute_closed_forms(R, R, EPS_D, EPS_D, T2, 1e-6,
                            regime="bogus", controls=CTL)
    with pytest.raises(TypeError):
        sphere_pair_force(V, V, "sic", EPS_D, T2, 1e-6, controls=CTL)


def test_sphere_force_bilinear_in_volumes():
    f11 = sphere_pair_force(V, V, EPS_D, EPS_D, T2, 1e-6, controls=CTL)
    f23 = sphere_pair_force(2 * V, 3 * V, EPS_D, EPS_D, T2, 1e-6,
                            controls=CTL)
    assert abs(f23 - 6.0 * f11) <= 1e-12 * abs(f23)


def test_summed_d5_d7_match_closed_near():
    d = 0.5e-6
    summed = cylinder_force_by_summation(R, R, EPS_D, EPS_D, T2, d,
                                         terms=("d5", "d7"), controls=CTL)
    closed = dilute_closed_forms(R, R, EPS_D, EPS_D, T2, d,
                                 regime="near", controls=CTL)
    assert closed < 0.0
    assert abs(summed - closed) <= 0.01 * abs(closed)


def test_summed_d2_matches_closed_far():
    d = 50e-6
    summed = cylinder_force_by_summation(R, R, EPS_D, EPS_D, T2, d,
                                         terms=("d2",), controls=CTL)
    closed = dilute_closed_forms(R, R, EPS_D, EPS_D, T2, d,
                                 regime="far", controls=CTL)
    assert closed > 0.0
    assert abs(summed - closed) <= 0.01 * abs(closed)


def test_summed_d3_matches_excluded_term():
    d = 2e-6
    summed = cylinder_force_by_summation(R, R, EPS_D, EPS_D, T2, d,
                                         terms=("d3",), controls=CTL)
    excl = excluded_d2_term(R, R, EPS_D, EPS_D, T2, d, controls=CTL)
    assert excl < 0.0
    assert abs(summed - excl) <= 0.01 * abs(excl)
    # the excluded piece falls off as d^-2 exactly
    excl2 = excluded_d2_term(R, R, EPS_D, EPS_D, T2, 2 * d, controls=CTL)
    assert excl / excl2 == pytest.approx(4.0, rel=1e-10)


def test_near_form_needs_real_contrast():
    # Re eps1 = 1 kills the near (d^-6 + d^-4) attraction entirely
    lossy_only = Constant(1.0 + 1e-4j)
    f = dilute_closed_forms(R, R, lossy_only, EPS_D, T2, 0.5e-6,
                            regime="near", controls=CTL)
    assert f == 0.0


def test_far_form_symmetric_in_materials():
    a = Constant(1.0001 + 1e-4j)
    b = Constant(1.0002 + 3e-4j)
    fab = dilute_closed_forms(R, R, a, b, T2, 50e-6, regime="far",
                              controls=CTL)
    fba = dilute_closed_forms(R, R, b, a, T2, 50e-6, regime="far",
                              controls=CTL)
    assert fab == fba


def test_closed_forms_match_asymptotics_route():
    # same physics through the generic asymptotic formulas, which go
    # through the eps-dependent g weights instead of the expanded
    # dilute integrands
    d_near, d_far = 0.5e-6, 50e-6
    near_d = dilute_closed_forms(R, R, EPS_D, EPS_D, T2, d_near,
                                 regime="near", controls=CTL)
    far_d = dilute_closed_forms(R, R, EPS_D, EPS_D, T2, d_far,
                                regime="far", controls=CTL)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        near_a = asymptotics.interaction_near(R, R, EPS_D, EPS_D, T2,
                                              d_near, controls=CTL)
        far_a = asymptotics.interaction_far(R, R, EPS_D, EPS_D, T2,
                                            d_far, controls=CTL)
    assert abs(near_d - near_a) <= 1e-3 * abs(near_a)
    assert abs(far_d - far_a) <= 1e-3 * abs(far_a)


def test_engine_agrees_in_dilute_limit():
    # the backbone triple check at its near-side separation: the
    # scattering engine against the closed dilute total
    d = 0.5e-6
    spec = CylinderSpec(R, EPS_D, 0.0)
    src = CylinderSpec(R, EPS_D, T2)
    engine, _ = interaction_force(src, spec, T2, d, controls=CTL)
    closed = dilute_closed_forms(R, R, EPS_D, EPS_D, T2, d,
                                 regime="sum", controls=CTL)
    assert abs(engine - closed) <= 0.02 * abs(closed)


def test_strong_material_triggers_dilute_warning():
    _, sic = materials.load_material("sic")
    with pytest.warns(UserWarning, match="departs from 1"):
        dilute_closed_forms(R, R, sic, sic, T2, 1e-6, controls=CTL)


def test_axial_sum_of_oscillation_decays_three_halves():
    # mechanism check with no package code: summing an oscillating
    # pairwise kernel cos(2ks)/s^2 over the axial offset produces a
    # d^-3/2 envelope with the stationary-phase amplitude sqrt(pi/k)
    k = 2.0 * math.pi

    def line_force(d):
        step = math.pi / (20.0 * k)
        l = np.arange(0.0, 20.0 * d, step)
        s = np.hypot(d, l)
        integrand = np.cos(2.0 * k * s) * d / s ** 3
        return 2.0 * np.trapezoid(integrand, l)

    def amplitude(d):
        return math.hypot(line_force(d), line_force(d + math.pi / (4 * k)))

    ds = np.array([20.0, 63.0, 200.0])
    amps = np.array([amplitude(d) for d in ds])
    slope = np.polyfit(np.log(ds), np.log(amps), 1)[0]
    assert slope == pytest.approx(-1.5, abs=0.05)
    assert amps[1] == pytest.approx(math.sqrt(math.pi / k) * 63.0 ** -1.5,
                                    rel=0.01)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
