import random
from fractions import Fraction as F

import numpy as np
import pytest

from conftest import random_fraction
from sobolev1d.oracles import (
    GalerkinConfig,
    IllConditionedError,
    galerkin_lambda,
    gram_entry,
    max_principle_check,
    sign_iteration,
)
from sobolev1d.polynomials import Polynomial, bridge_poly, kth_derivative, monomial
from sobolev1d.scalars import FLOAT
from sobolev1d.solver import ProblemSpec, solve
from sobolev1d.weights import (
    DiracWeight,
    PolyWeight,
    UnsupportedWeightError,
    parse_weight,
)


# -- Galerkin ---------------------------------------------------------------


def test_gram_closed_form_matches_direct_integration():
    for k in (1, 2, 3):
        for i in range(4):
            for j in range(4):
                pi = kth_derivative(bridge_poly(k) * monomial(i), k)
                pj = kth_derivative(bridge_poly(k) * monomial(j), k)
                direct = (pi * pj).integrate(F(0), F(1))
                assert gram_entry(k, i, j) == direct


def test_galerkin_uniform_k1_degree0_exact():
    # G = [1/3], r = [1/6]: the one-dimensional value is already sharp
    report = galerkin_lambda(ProblemSpec(1, parse_weight("poly:1")), GalerkinConfig(0))
    assert report.details["lambda_sq_exact"] == F(1, 12)


def test_galerkin_uniform_k2_degree0_exact():
    report = galerkin_lambda(ProblemSpec(2, parse_weight("poly:1")), GalerkinConfig(0))
    assert report.details["lambda_sq_exact"] == F(1, 720)


def test_galerkin_exact_containment_polynomial_weights():
    # once the trial degree reaches deg(rho) + k the minimizer lies in the
    # span and the bound closes exactly
    rng = random.Random(2468)
    for k in (1, 2):
        for deg in (0, 1, 2, 3):
            coeffs = [abs(random_fraction(rng)) + F(1, 9) for _ in range(deg + 1)]
            w = PolyWeight(Polynomial(coeffs))
            mu = solve(ProblemSpec(k, w)).mu
            report = galerkin_lambda(ProblemSpec(k, w), GalerkinConfig(deg + k))
            assert report.details["lambda_sq_exact"] == 1 / mu
            # and strictly below at insufficient degree when deg > 0
            if deg:
                small = galerkin_lambda(ProblemSpec(k, w), GalerkinConfig(deg + k - 1))
                assert small.details["lambda_sq_exact"] <= 1 / mu


def test_galerkin_history_monotone_and_bounded():
    spec = ProblemSpec(1, parse_weight("chi:0,1/2"))
    mu = solve(spec).mu
    report = galerkin_lambda(spec, GalerkinConfig(14))
    values = [v for _, v in report.history]
    assert all(a <= b + 1e-14 for a, b in zip(values, values[1:]))
    # the exact bound never overshoots the exact reciprocal eigenvalue
    assert report.details["lambda_sq_exact"] <= 1 / mu


def test_galerkin_dirac_midpoint_converges_slowly():
    # the tent extremizer has a kink, so polynomial trial spaces close the
    # gap only at rate O(1/N): at N = 12 the measured exact gap is
    # 28977349219/2641807540224 ~ 1.097e-2 (frozen value)
    spec = ProblemSpec(1, DiracWeight(F(1, 2)))
    report = galerkin_lambda(spec, GalerkinConfig(12))
    lam_sq = report.details["lambda_sq_exact"]
    gap = F(1, 4) - lam_sq
    assert float(gap) == pytest.approx(1.0969698429107666e-2, rel=1e-12)
    assert 0 < gap
    values = [v for _, v in report.history]
    assert all(a <= b + 1e-14 for a, b in zip(values, values[1:]))


def test_galerkin_dirac_sifting_load():
    # r_i = phi_i(a) exactly
    spec = ProblemSpec(1, DiracWeight(F(1, 2)))
    report = galerkin_lambda(spec, GalerkinConfig(0))
    # phi_0 = x(1-x): value 1/4 at the mass, stiffness 1/3: (1/4)^2 / (1/3)
    assert report.details["lambda_sq_exact"] == F(3, 16)


def test_galerkin_power_weight_cross_check():
    # pipeline mu for x^(-1/2) is exactly 9/2 (hand derivation); the exact
    # dual-norm bound at degree 64 sits 6.6e-9 below 1/mu
    spec = ProblemSpec(1, parse_weight("pow:1/2"), FLOAT)
    pipeline_mu = solve(spec).mu
    report = galerkin_lambda(spec, GalerkinConfig(64))
    lam_sq = float(report.details["lambda_sq_exact"])
    assert abs(pipeline_mu - 4.5) < 1e-9
    assert 0 < 1.0 / pipeline_mu - lam_sq < 1e-8


def test_galerkin_hardy_approaches_one():
    spec = ProblemSpec(1, parse_weight("hardy:1"))
    report = galerkin_lambda(spec, GalerkinConfig(24))
    lam_sq = report.details["lambda_sq_exact"]
    assert F(9, 10) < lam_sq < 1


def test_galerkin_float_mode_small_degree():
    exact = galerkin_lambda(ProblemSpec(1, parse_weight("poly:1")), GalerkinConfig(8))
    floaty = galerkin_lambda(
        ProblemSpec(1, parse_weight("poly:1")), GalerkinConfig(8, FLOAT)
    )
    assert floaty.details["lambda_sq"] == pytest.approx(
        exact.details["lambda_sq"], rel=1e-9
    )


def test_galerkin_float_mode_ill_conditioned():
    with pytest.raises(IllConditionedError):
        galerkin_lambda(ProblemSpec(1, parse_weight("poly:1")), GalerkinConfig(24, FLOAT))


def test_galerkin_power_weight_float_quadrature_route():
    # float mode integrates the load against x^(-alpha) numerically; at a
    # modest degree it must agree with the exact monomial-moment route
    spec = ProblemSpec(1, parse_weight("pow:1/2"), FLOAT)
    exact = galerkin_lambda(spec, GalerkinConfig(8))
    floaty = galerkin_lambda(spec, GalerkinConfig(8, FLOAT))
    assert floaty.details["lambda_sq"] == pytest.approx(
        exact.details["lambda_sq"], rel=1e-9
    )


# -- sign iteration ---------------------------------------------------------


def test_sign_iteration_uniform_k1():
    report = sign_iteration(ProblemSpec(1, parse_weight("poly:1")), n=99)
    assert report.sign_definite
    assert report.details["converged"]
    assert abs(report.details["mu_h"] - 12.0) <= 12.0 * 0.02


def test_sign_iteration_uniform_k2():
    report = sign_iteration(ProblemSpec(2, parse_weight("poly:1")), n=199)
    assert report.sign_definite
    assert abs(report.details["mu_h"] - 720.0) <= 720.0 * 0.02


def test_sign_iteration_adversarial_alternating():
    init = np.array([(-1.0) ** i for i in range(99)])
    report = sign_iteration(
        ProblemSpec(1, parse_weight("poly:1")), n=99, initial_signs=init
    )
    assert report.sign_definite
    assert report.details["converged"]


def test_sign_iteration_discrete_solution_converges_to_extremizer():
    # O(h^2): halving h should cut the max-norm error by at least 3x
    spec = ProblemSpec(2, parse_weight("poly:1"))
    s = solve(spec)
    errs = []
    for n in (49, 99, 199):
        report = sign_iteration(spec, n=n)
        u_h = report.details["solution"]
        xs = np.arange(1, n + 1) / (n + 1)
        exact = np.array([s.eval_u(x) for x in xs])
        errs.append(float(np.max(np.abs(u_h - exact))))
    assert errs[0] / errs[1] >= 3.0
    assert errs[1] / errs[2] >= 3.0


def test_sign_iteration_dirac():
    report = sign_iteration(ProblemSpec(1, DiracWeight(F(1, 2))), n=99)
    assert report.sign_definite
    assert abs(report.details["mu_h"] - 4.0) <= 4.0 * 0.02
    report = sign_iteration(ProblemSpec(2, DiracWeight(F(1, 2))), n=199)
    assert abs(report.details["mu_h"] - 192.0) <= 192.0 * 0.02


def test_sign_iteration_rejects_high_order():
    with pytest.raises(ValueError):
        sign_iteration(ProblemSpec(3, parse_weight("poly:1")), n=49)


# -- maximum principle -------------------------------------------------------


def test_max_principle_k1_poisson():
    report = max_principle_check(1, parse_weight("poly:1"))
    w = report.details["solution"]
    # -w'' = 1 clamped: w = x(1-x)/2
    assert w.pieces[0] == Polynomial([0, F(1, 2), F(-1, 2)])


def test_max_principle_k2_beam():
    report = max_principle_check(2, parse_weight("poly:1"))
    w = report.details["solution"]
    expected = Polynomial([0, 0, F(1, 24)]) * Polynomial([1, -2, 1])
    assert w.pieces[0] == expected


def test_max_principle_random_loads_exact():
    rng = random.Random(321)
    for k in (1, 2, 3):
        for _ in range(10):
            q = Polynomial([random_fraction(rng) for _ in range(3)])
            load = q * q + Polynomial([F(1, 50)])
            report = max_principle_check(k, PolyWeight(load))
            assert report.sign_definite
            assert report.details["route"] == "exact"


def test_max_principle_grid_route():
    for k in (1, 2):
        for n in (99, 199):
            report = max_principle_check(
                k, parse_weight("chi:1/4,3/4"), n=n, route="grid"
            )
            assert report.sign_definite
            assert report.details["route"] == "grid"
            assert report.details["min_value"] > 0


def test_max_principle_grid_rejects_high_order():
    with pytest.raises(UnsupportedWeightError):
        max_principle_check(3, parse_weight("chi:1/4,3/4"), route="grid")
