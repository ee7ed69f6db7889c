import math
import warnings

import numpy as np
import pytest
from scipy import integrate

from antizeno.model import SpectralModel, coupling_density
from antizeno.oracles import (
    ModeBath,
    OracleConfig,
    alpha_spectral,
    completeness,
    cut_density,
    discretize_bath,
    evolve_modes,
    solve_volterra,
)
from antizeno.oracles.modes import NormDriftError
from antizeno.oracles.spectral import alpha_resonance_part
from antizeno.oracles.volterra import solve_volterra_grid
from antizeno.survival import alpha_analytic, alpha_pole_terms, build_expansion

CANONICAL = [
    SpectralModel.band_edge(-1.0),
    SpectralModel.band_edge(0.0),
    SpectralModel.band_edge(1.0),
    SpectralModel.photodetachment(10.0, 0.5),
    SpectralModel.photodetachment(10.0, 3.0),
]
IDS = ["edge-1", "edge0", "edge+1", "pd-below", "pd-above"]


# -- mode discretisation ----------------------------------------------------------


def test_band_edge_couplings_uniform_in_u():
    with pytest.warns(UserWarning):
        bath = discretize_bath(SpectralModel.band_edge(0.0), OracleConfig(n_modes=4, u_max=2.0))
    assert np.allclose(bath.couplings ** 2, 2 * 0.5 / math.pi, rtol=1e-15)
    assert np.allclose(bath.u_nodes, [0.25, 0.75, 1.25, 1.75])


def test_photodetachment_coupling_sum_matches_quadrature():
    m = SpectralModel.photodetachment(1.0, 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bath = discretize_bath(m, OracleConfig(n_modes=2000, u_max=10.0))
    ref = integrate.quad(lambda w: coupling_density(m, w), 0, 100, limit=200)[0]
    assert abs(np.sum(bath.couplings ** 2) - ref) <= 1e-3


def test_short_cutoff_warns():
    with pytest.warns(UserWarning):
        discretize_bath(SpectralModel.band_edge(0.0), OracleConfig(n_modes=10, u_max=5.0))


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(n_modes=0)


def test_zero_coupling_is_free_precession():
    u = np.linspace(0.1, 1, 10)
    bath = ModeBath(u, np.zeros(10), u * u)
    t = np.linspace(0, 5, 11)
    tr = evolve_modes(bath, 0.7, t)
    assert np.allclose(tr.alpha, np.exp(-0.7j * t), atol=1e-15)
    assert np.allclose(tr.p, 1.0)


def test_mode_evolution_is_unitary():
    bath = discretize_bath(SpectralModel.band_edge(0.0), OracleConfig(n_modes=1000, u_max=40.0))
    _, norm = evolve_modes(bath, 0.0, np.linspace(0, 20, 41), return_norm=True)
    assert np.max(np.abs(norm - 1)) <= 1e-9


def test_rk4_agrees_with_exact_on_small_bath():
    m = SpectralModel.band_edge(0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bath = discretize_bath(m, OracleConfig(n_modes=60, u_max=6.0))
    t = np.linspace(0, 5, 11)
    exact = evolve_modes(bath, 0.0, t)
    rk4, norm = evolve_modes(bath, 0.0, t, method="rk4", dt=1e-3, return_norm=True)
    assert np.max(np.abs(exact.alpha - rk4.alpha)) <= 1e-8
    assert np.max(np.abs(norm - 1)) <= 1e-8


def test_rk4_drift_guard():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bath = discretize_bath(SpectralModel.band_edge(0.0), OracleConfig(n_modes=60, u_max=6.0))
    with pytest.raises(NormDriftError):
        evolve_modes(bath, 0.0, np.linspace(0, 5, 6), method="rk4", dt=0.2)


def test_modes_converge_to_analytic_band_edge():
    m = SpectralModel.band_edge(0.0)
    bath = discretize_bath(m, OracleConfig(n_modes=4000, u_max=40.0))
    p_modes = evolve_modes(bath, 0.0, np.array([10.0])).p[0]
    p_exact = abs(alpha_analytic(build_expansion(m), 10.0)) ** 2
    assert abs(p_modes - p_exact) <= 1e-3


# -- Volterra -----------------------------------------------------------------------


def test_volterra_vanishing_kernel_is_free_precession():
    m = SpectralModel.band_edge(0.7, gamma=1e-30)
    t = np.linspace(0, 3, 7)
    assert np.allclose(solve_volterra(m, times=t).alpha, np.exp(-0.7j * t), atol=1e-12)


def test_volterra_is_second_order():
    m = SpectralModel.band_edge(0.0)
    ref = alpha_analytic(build_expansion(m), 2.0)
    errs = [abs(solve_volterra_grid(m, 0.0, h, int(round(2.0 / h)))[-1] - ref) for h in (0.02, 0.01, 0.005)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(np.abs(orders - 2) < 0.1)


def test_volterra_band_edge_at_t5():
    m = SpectralModel.band_edge(0.0)
    a = solve_volterra(m, times=np.array([0.0, 5.0])).alpha[1]
    assert abs(a - alpha_analytic(build_expansion(m), 5.0)) <= 1e-6


def test_volterra_matches_spectral_photodetachment():
    m = SpectralModel.photodetachment(10.0, 0.5)
    t = np.linspace(0, 10, 6)
    v = solve_volterra(m, times=t).alpha
    s = np.array([alpha_spectral(m, x) for x in t])
    assert np.max(np.abs(v - s)) <= 1e-6


# -- spectral decomposition ------------------------------------------------------


@pytest.mark.parametrize("model", CANONICAL, ids=IDS)
def test_sum_rule(model):
    assert abs(completeness(model) - 1) <= 1e-8
    assert abs(alpha_spectral(model, 0.0) - 1) <= 1e-8


@pytest.mark.parametrize("model", CANONICAL, ids=IDS)
def test_cut_density_nonnegative(model):
    s = np.concatenate([np.logspace(-8, 8, 2000)])
    assert np.all(cut_density(model, s) >= 0)


def test_band_edge_bound_part_modulus():
    from antizeno.model import find_poles

    (b,) = find_poles(SpectralModel.band_edge(0.0)).bound
    assert abs(b.residue * np.exp(b.location * 1e3)) == pytest.approx(2 / 3, rel=1e-14)


def test_resonance_term_decays_into_cut_tail():
    m = SpectralModel.photodetachment(10.0, 3.0)
    exp = build_expansion(m)
    t = np.array([5.0, 40.0])
    res = alpha_resonance_part(m, t)
    # the second-sheet pole and the closed form's growing-argument term coincide
    assert np.allclose(res, alpha_pole_terms(exp, t), rtol=1e-10, atol=0)
    early, late = abs(alpha_spectral(m, 5.0)), abs(alpha_spectral(m, 40.0))
    assert abs(res[0]) > 0.9 * early
    assert abs(res[1]) < 1e-3 * late


@pytest.mark.parametrize("model", CANONICAL, ids=IDS)
def test_three_oracles_agree(model):
    t = np.linspace(0, 20, 21)
    a = alpha_analytic(build_expansion(model), t)
    s = np.array([alpha_spectral(model, x) for x in t])
    v = solve_volterra(model, times=t).alpha
    assert np.max(np.abs(a - s)) <= 1e-6
    assert np.max(np.abs(a - v)) <= 1e-6
