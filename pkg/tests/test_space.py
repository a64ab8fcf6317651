"""Exact random-variable representation: CDFs, expectations, differences.

Oracles: independent scipy quadrature of densities, closed-form moments of
the uniform distribution, and hand-derived values for small piecewise cases.
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from convlab.errors import (AccuracyError, ParameterError, RepresentationError)
from convlab.space import (AffineInOmega, Constant, Piece, PowerAtOne,
                           QuantileOfDensity, RandomVariable, cdf, char_fn,
                           constant_rv, density_rv, diff_abs, expectation,
                           expectation_joint, require_omega, sup_norm,
                           truncated_abs_moment, uniform_rv)


def test_require_omega_bounds():
    assert require_omega(0.5) == 0.5
    for bad in (0.0, 1.0, -0.1, 1.1):
        with pytest.raises(ParameterError):
            require_omega(bad)


def test_constant_rv():
    rv = constant_rv(3.0)
    assert rv(0.2) == 3.0
    c = cdf(rv)
    assert c(3.0) == 1.0
    assert c(2.999) == 0.0
    assert c.prob_at(3.0) == 1.0
    assert c.jump_points == (3.0,)
    assert not c.is_continuity_point(3.0)


def test_uniform_cdf_and_moments():
    u = uniform_rv()
    c = cdf(u)
    for x in (0.1, 0.25, 0.5, 0.9):
        assert abs(c(x) - x) < 1e-14
    assert c.jump_points == ()
    mean, err = expectation(u, lambda v: v)
    assert abs(mean - 0.5) < 1e-12
    second, _ = expectation(u, lambda v: v * v)
    assert abs(second - 1.0 / 3.0) < 1e-12


def test_uniform_char_fn_closed_form():
    u = uniform_rv()
    t = math.pi
    # oracle: (e^{it} - 1)/(it), |phi(pi)| = 2/pi
    phi = char_fn(u, t)
    oracle = (complex(math.cos(t), math.sin(t)) - 1.0) / complex(0.0, t)
    assert abs(phi - oracle) < 1e-10
    assert abs(abs(phi) - 2.0 / math.pi) < 1e-8
    assert char_fn(u, 0.0) == complex(1.0, 0.0)


def test_power_at_one_validation():
    for bad in (-0.5, 0.0, 1.0, 1.5):
        with pytest.raises(ParameterError):
            PowerAtOne(bad)


@given(
    alpha=st.floats(0.05, 0.95),
    w=st.floats(1e-6, 0.999),
)
@settings(max_examples=200, deadline=None)
def test_power_at_one_quantile_inverts_cdf(alpha, w):
    dens = PowerAtOne(alpha)
    q = dens.quantile(w)
    # near w=1 with alpha near 1 the quantile rounds to an exact 1.0; the
    # round trip is only meaningful while 1-q is representable
    assume(q < 1.0 - 1e-14)
    # conditioning of the round trip: the rounding of 1-q (about 1 ulp of 1)
    # is amplified by d(cdf)/dq = (1-alpha)(1-q)^(-alpha)
    tol = 1e-9 + (1.0 - alpha) * 1e-15 / (1.0 - q)
    assert abs(dens.cdf(q) - w) < tol


def test_power_at_one_cdf_values():
    dens = PowerAtOne(0.5)
    assert abs(dens.cdf(0.75) - 0.5) < 1e-15
    # oracle: integrate the density directly
    val, _ = quad(dens.pdf, 0.0, 0.75, points=[0.75])
    assert abs(dens.cdf(0.75) - val) < 1e-10


def test_density_rv_mean_vs_quadrature_oracle():
    dens = PowerAtOne(0.5)
    rv = density_rv(dens)
    mean, err = expectation(rv, lambda v: v, tol=1e-10)
    # oracle: E[X] = int x (1-alpha)(1-x)^-alpha dx = 2/3 for alpha = 1/2
    oracle, oerr = quad(lambda x: x * dens.pdf(x), 0.0, 1.0, epsabs=1e-12)
    assert abs(mean - 2.0 / 3.0) < 1e-8
    assert abs(mean - oracle) < 1e-8


def test_density_rv_cdf():
    rv = density_rv(PowerAtOne(0.5))
    c = cdf(rv)
    assert abs(c(0.75) - 0.5) < 1e-10
    assert c.jump_points == ()


def test_partition_validation():
    with pytest.raises(RepresentationError):
        RandomVariable((Piece(0.0, 0.4, Constant(1.0)),))  # does not reach 1
    with pytest.raises(RepresentationError):
        RandomVariable(
            (Piece(0.0, 0.5, Constant(1.0)), Piece(0.6, 1.0, Constant(0.0)))
        )  # gap
    with pytest.raises(RepresentationError):
        RandomVariable((Piece(0.5, 0.5, Constant(1.0)),))  # empty piece


def test_shift_scale():
    u = uniform_rv()
    v = u.shifted(2.0).scaled(3.0)
    assert abs(v(0.5) - 7.5) < 1e-14
    assert abs(sup_norm(v) - 9.0) < 1e-14


def test_diff_abs_constant_shift():
    base = density_rv(PowerAtOne(0.5))
    shifted = base.shifted(0.01)
    d = diff_abs(shifted, base)
    for w in (0.1, 0.5, 0.9):
        assert abs(d(w) - 0.01) < 1e-14
    assert abs(sup_norm(d) - 0.01) < 1e-14


def test_diff_abs_sign_split():
    # |omega - 0.5|: the crossing at 0.5 must be split exactly
    d = diff_abs(uniform_rv(), constant_rv(0.5))
    for w in (0.1, 0.3, 0.6, 0.9):
        assert abs(d(w) - abs(w - 0.5)) < 1e-14
    mean, _ = expectation(d, lambda v: v)
    assert abs(mean - 0.25) < 1e-12


def test_diff_abs_two_atoms():
    rv = RandomVariable(
        (Piece(0.0, 1.0 / 9.0, Constant(1.0)),
         Piece(1.0 / 9.0, 1.0, Constant(3.0 ** -0.5)))
    )
    d = diff_abs(rv, constant_rv(0.0))
    c = cdf(d)
    assert abs(c.prob_at(1.0) - 1.0 / 9.0) < 1e-12
    assert abs(c.prob_at(3.0 ** -0.5) - 8.0 / 9.0) < 1e-12


def test_diff_abs_mixed_kinds_rejected():
    with pytest.raises(RepresentationError):
        diff_abs(uniform_rv(), density_rv(PowerAtOne(0.5)))


def test_expectation_joint_matches_diff_abs():
    base = density_rv(PowerAtOne(0.3))
    shifted = base.shifted(0.2)
    via_joint, _ = expectation_joint(shifted, base, lambda a, b: abs(a - b))
    via_diff, _ = expectation(diff_abs(shifted, base), lambda v: v)
    assert abs(via_joint - via_diff) < 1e-9
    assert abs(via_joint - 0.2) < 1e-9


@given(
    split=st.floats(0.1, 0.9),
    v1=st.floats(0.0, 2.0),
    v2=st.floats(0.0, 2.0),
    eps=st.floats(0.05, 2.5),
)
@settings(max_examples=150, deadline=None)
def test_truncated_abs_moment_two_atoms(split, v1, v2, eps):
    rv = RandomVariable(
        (Piece(0.0, split, Constant(v1)), Piece(split, 1.0, Constant(v2)))
    )
    got = truncated_abs_moment(rv, eps)
    want = split * v1 * (v1 < eps) + (1.0 - split) * v2 * (v2 < eps)
    assert abs(got - want) < 1e-12


@given(eps=st.floats(0.02, 1.5))
@settings(max_examples=80, deadline=None)
def test_truncated_abs_moment_affine_vs_quadrature(eps):
    d = diff_abs(uniform_rv(), constant_rv(0.5))
    got = truncated_abs_moment(d, eps)
    want, _ = expectation(
        d, lambda v: v if v < eps else 0.0, tol=1e-10, value_breaks=(eps,)
    )
    assert abs(got - want) < 1e-9


def test_truncated_abs_moment_quantile_piece():
    base = density_rv(PowerAtOne(0.5))
    d = diff_abs(base, constant_rv(0.0))  # |X| = X
    got = truncated_abs_moment(d, 0.5)
    want, _ = expectation(
        base, lambda v: v if v < 0.5 else 0.0, tol=1e-10, value_breaks=(0.5,)
    )
    assert abs(got - want) < 1e-8
    with pytest.raises(ParameterError):
        truncated_abs_moment(d, 0.0)


def test_expectation_value_breaks_indicator():
    u = uniform_rv()
    val, _ = expectation(
        u, lambda v: 1.0 if v >= 0.3 else 0.0, tol=1e-10, value_breaks=(0.3,)
    )
    assert abs(val - 0.7) < 1e-9


def test_cdf_mass_check():
    seg_rv = uniform_rv()
    c = cdf(seg_rv)
    assert abs(c(1.5) - 1.0) < 1e-12
    assert abs(c(-0.5) - 0.0) < 1e-12
