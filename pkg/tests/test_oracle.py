"""Brute-force measurement sweep against dense-matrix reference results."""

import math

import numpy as np
import pytest

from conftest import EX_MATRIX, measured_conditional_entropy
from xdiscord import (BlochX, FContext, MeasurementPoint, XDensityMatrix,
                      bloch_to_matrix, conditional_ensemble,
                      conditional_entropy, conjugate_paulis,
                      correlation_objective, discord, f_value,
                      matrix_to_bloch, measurement_direction,
                      oracle_classical_correlation, theta_circle_max)
from xdiscord.sampling import random_states


def random_quaternions(rng, n):
    q = rng.normal(size=(n, 4))
    return q / np.linalg.norm(q, axis=1, keepdims=True)


def test_conjugation_matrix_is_special_orthogonal(rng):
    for t, y1, y2, y3 in random_quaternions(rng, 200):
        m = conjugate_paulis(t, y1, y2, y3)
        np.testing.assert_allclose(m @ m.T, np.eye(3), atol=1e-12)
        assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-12)


def test_conjugation_rejects_unnormalized():
    with pytest.raises(ValueError):
        conjugate_paulis(1.0, 0.2, 0.0, 0.0)


def test_direction_is_third_column_of_conjugation(rng):
    for t, y1, y2, y3 in random_quaternions(rng, 100):
        m = conjugate_paulis(t, y1, y2, y3)
        np.testing.assert_allclose(measurement_direction(t, y1, y2, y3),
                                   m[:, 2], atol=1e-13)
        assert np.linalg.norm(measurement_direction(t, y1, y2, y3)) == \
            pytest.approx(1.0, abs=1e-12)


def test_direction_examples():
    assert measurement_direction(1.0, 0.0, 0.0, 0.0) == (0.0, 0.0, 1.0)
    # V = i sigma_3 leaves the measurement axis on the pole
    assert measurement_direction(0.0, 0.0, 0.0, 1.0) == (0.0, 0.0, 1.0)
    s = 1.0 / math.sqrt(2.0)
    z1, z2, z3 = measurement_direction(s, 0.0, s, 0.0)
    assert (z1, z2, z3) == pytest.approx((-1.0, 0.0, 0.0), abs=1e-15)


def test_measurement_point_constructors():
    m = MeasurementPoint.from_polar(0.6, 0.25)
    assert m.z3 == 0.6
    assert math.hypot(m.z1, m.z2) == pytest.approx(0.8, abs=1e-12)
    assert math.atan2(m.z2, m.z1) == pytest.approx(0.25, abs=1e-12)
    with pytest.raises(ValueError):
        MeasurementPoint(1.0, 1.0, 1.0)
    q = MeasurementPoint.from_quaternion(0.5, 0.5, 0.5, 0.5)
    assert (q.z1, q.z2, q.z3) == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)


def test_conditional_ensemble_against_projectors(rng):
    for p in random_states(rng, 60):
        m = bloch_to_matrix(p).matrix
        t, y1, y2, y3 = random_quaternions(rng, 1)[0]
        point = MeasurementPoint.from_quaternion(t, y1, y2, y3)
        ens = conditional_ensemble(p, point)
        assert sum(ens.probabilities) == pytest.approx(1.0, abs=1e-12)
        assert ens.probabilities[0] == pytest.approx(
            (1.0 + p.s * point.z3) / 2.0, abs=1e-12)
        expect = measured_conditional_entropy(m, (point.z1, point.z2,
                                                  point.z3))
        assert ens.entropy() == pytest.approx(expect, abs=1e-10)
        assert conditional_entropy(p, point) == pytest.approx(expect,
                                                              abs=1e-10)


def test_conditional_entropy_of_pure_state_vanishes(rng):
    bell = BlochX(0.0, 0.0, 1.0, -1.0, 1.0)
    for t, y1, y2, y3 in random_quaternions(rng, 25):
        point = MeasurementPoint.from_quaternion(t, y1, y2, y3)
        assert conditional_entropy(bell, point) == pytest.approx(0.0,
                                                                 abs=1e-12)


def test_theta_circle_max_closed_form(rng):
    # over the circle at fixed z3 the best theta is c^2 (1 - z3^2) + c3^2 z3^2
    for p in random_states(rng, 60):
        c2 = max(p.c1 ** 2, p.c2 ** 2)
        for z3 in np.linspace(0.0, 1.0, 7):
            expect = c2 * (1.0 - z3 * z3) + (p.c3 * z3) ** 2
            assert theta_circle_max(p, z3) == pytest.approx(expect,
                                                            abs=1e-12)


def test_objective_monotone_in_theta(rng):
    for p in random_states(rng, 40):
        z3 = rng.uniform(0.0, 1.0)
        hi = theta_circle_max(p, z3)
        thetas = np.linspace(0.0, hi, 9)
        vals = [correlation_objective(p, z3, th) for th in thetas]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_reduction_identity(rng):
    # the engine's F(z) is the circle maximum of the measured correlation
    for p in random_states(rng, 40):
        ctx = FContext.from_state(p)
        for z3 in np.linspace(0.0, 1.0, 9):
            best = correlation_objective(p, z3, theta_circle_max(p, z3))
            assert f_value(ctx, z3) == pytest.approx(best, abs=1e-10)


def test_oracle_agrees_with_engine(rng):
    for p in random_states(rng, 25):
        res = discord(p)
        orc = oracle_classical_correlation(p, grid_n=256)
        assert orc.classical_correlation == pytest.approx(
            res.classical_correlation, abs=1e-5)
        assert orc.classical_correlation == pytest.approx(
            res.mutual_information - res.discord, abs=1e-5)


def test_oracle_argmin_on_axis_circle(rng):
    # the measured entropy minimum always lies on a circle with z1 = 0
    # or z2 = 0; two coarse grid steps of slack cover the refinement
    for p in random_states(rng, 25):
        orc = oracle_classical_correlation(p, grid_n=256)
        step = (math.pi / 2.0) / (orc.grid_n - 1)
        assert min(orc.phi, math.pi / 2.0 - orc.phi) <= 2.0 * step


def test_oracle_worked_example():
    p = matrix_to_bloch(XDensityMatrix(EX_MATRIX))
    orc = oracle_classical_correlation(p, grid_n=512)
    res = discord(p)
    assert orc.classical_correlation == pytest.approx(
        res.classical_correlation, abs=1e-6)
    assert orc.entropy_min == pytest.approx(0.6948818323656692, abs=1e-9)
    assert orc.z3 == pytest.approx(res.z_star, abs=2.0 / 511.0)
    assert orc.phi == pytest.approx(0.0, abs=(math.pi / 2.0) / 511.0)
    assert orc.grid_index == (451, 0)


def test_oracle_is_deterministic():
    p = BlochX(0.31, -0.22, 0.47, -0.18, 0.29)
    first = oracle_classical_correlation(p, grid_n=128)
    second = oracle_classical_correlation(p, grid_n=128)
    assert first == second


def test_oracle_refinement_improves_on_coarse_grid():
    p = matrix_to_bloch(XDensityMatrix(EX_MATRIX))
    coarse = oracle_classical_correlation(p, grid_n=64, refine_rounds=0)
    refined = oracle_classical_correlation(p, grid_n=64)
    assert refined.entropy_min <= coarse.entropy_min + 1e-15
    res = discord(p)
    assert refined.classical_correlation == pytest.approx(
        res.classical_correlation, abs=1e-6)
