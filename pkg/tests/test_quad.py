"""Quadrature layer: Simpson grids, radial integrals, spectral synthesis.

The radial integrator is checked against the moment identity
int_0^inf r^p exp(-lam r) dr = Gamma(p+1) / lam^(p+1), with the reference
values taken from scipy.special.gamma, which shares no code with the
integrator under test.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma as scipy_gamma

from antimix.errors import ConvergenceError, DomainError, TailLeakageError
from antimix.quad import (
    Grid1D,
    SpectralCoefficients,
    integrate_grid,
    integrate_radial,
    mass_shell_identity,
    simpson_weights,
    synthesize,
)


# ---------------------------------------------------------------------------
# Grid1D
# ---------------------------------------------------------------------------

def test_grid_symmetric_contains_endpoints():
    g = Grid1D.symmetric(10.0, 101)
    assert g.start == -10.0
    assert g.stop == pytest.approx(10.0, rel=1e-15)
    assert g.count == 101
    assert g.is_symmetric()
    pts = g.points
    assert pts[0] == -10.0
    assert pts[-1] == pytest.approx(10.0, rel=1e-15)


def test_grid_from_span_matches_linspace():
    g = Grid1D.from_span(-3.0, 7.0, 41)
    assert np.allclose(g.points, np.linspace(-3.0, 7.0, 41), rtol=0, atol=1e-14)


def test_grid_rejects_degenerate():
    with pytest.raises(DomainError):
        Grid1D.from_span(1.0, 1.0, 10)
    with pytest.raises(DomainError):
        Grid1D.from_span(0.0, 1.0, 1)


# ---------------------------------------------------------------------------
# Simpson weights and grid integration
# ---------------------------------------------------------------------------

def test_simpson_weights_sum_to_span():
    for count in (2, 3, 4, 5, 6, 9, 10, 101, 1024):
        w = simpson_weights(count, 0.25)
        assert w.sum() == pytest.approx(0.25 * (count - 1), rel=1e-13)


def test_simpson_exact_for_cubics():
    # composite Simpson integrates cubics exactly on odd-count grids
    g = Grid1D.from_span(0.0, 2.0, 21)
    x = g.points
    val = integrate_grid(x**3 - 2.0 * x**2 + x - 1.0, g)
    exact = 2.0**4 / 4 - 2.0 * 2.0**3 / 3 + 2.0**2 / 2 - 2.0
    assert val == pytest.approx(exact, rel=1e-13)


def test_integrate_grid_gaussian_sqrt_pi():
    g = Grid1D.symmetric(8.0, 801)
    val = integrate_grid(np.exp(-g.points**2), g)
    assert val == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_integrate_grid_linearity():
    g = Grid1D.from_span(0.0, 1.0, 33)
    f = np.sin(g.points)
    h = np.cos(3.0 * g.points)
    lhs = integrate_grid(2.0 * f + 0.5 * h, g)
    rhs = 2.0 * integrate_grid(f, g) + 0.5 * integrate_grid(h, g)
    assert lhs == pytest.approx(rhs, rel=1e-13)


def test_integrate_grid_even_count_tail_rule():
    # even node counts use a 3/8 closing panel; quartic still near-exact
    g = Grid1D.from_span(0.0, 1.0, 32)
    val = integrate_grid(g.points**2, g)
    assert val == pytest.approx(1.0 / 3.0, rel=1e-9)


# ---------------------------------------------------------------------------
# integrate_radial: Gamma-moment oracle
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", [0.0, 0.1, 0.5, 1.0, 2.0, 3.7])
@pytest.mark.parametrize("lam", [0.2, 1.0, 3.5])
def test_radial_moments_match_gamma(p, lam):
    # decay is half the exponential rate: f ~ exp(-2 decay r) at infinity
    val = integrate_radial(lambda r: r**p * np.exp(-lam * r),
                           power_floor=p, decay=0.5 * lam)
    oracle = float(scipy_gamma(p + 1.0)) / lam ** (p + 1.0)
    assert val == pytest.approx(oracle, rel=1e-9)


def test_radial_handles_integrable_endpoint_singularity():
    # p = -0.5 diverges at r = 0 but is integrable; the power-map
    # substitution removes the singularity
    val = integrate_radial(lambda r: np.exp(-r) / np.sqrt(r),
                           power_floor=-0.5, decay=0.5)
    assert val == pytest.approx(math.sqrt(math.pi), rel=1e-9)


def test_radial_never_evaluates_origin():
    seen = []

    def f(r):
        seen.append(np.min(r))
        return np.exp(-r)

    integrate_radial(f, power_floor=0.0, decay=1.0)
    assert min(seen) > 0.0


def test_radial_rejects_bad_parameters():
    with pytest.raises(DomainError):
        integrate_radial(lambda r: np.exp(-r), power_floor=-1.0, decay=1.0)
    with pytest.raises(DomainError):
        integrate_radial(lambda r: np.exp(-r), power_floor=0.0, decay=0.0)


@settings(max_examples=25, deadline=None)
@given(p=st.floats(min_value=-0.45, max_value=4.0),
       lam=st.floats(min_value=0.1, max_value=5.0))
def test_radial_moment_property(p, lam):
    val = integrate_radial(lambda r: r**p * np.exp(-lam * r),
                           power_floor=p, decay=0.5 * lam)
    oracle = float(scipy_gamma(p + 1.0)) / lam ** (p + 1.0)
    assert val == pytest.approx(oracle, rel=1e-8)


# ---------------------------------------------------------------------------
# spectral synthesis
# ---------------------------------------------------------------------------

def test_mass_shell_identity():
    k, w = mass_shell_identity(np.array([0.0, 1.0]))
    assert w[0] == 1.0
    assert w[1] == pytest.approx(math.sqrt(2.0), rel=1e-15)
    k, w = mass_shell_identity(np.linspace(-5, 5, 11))
    assert np.allclose(w * w, k * k + 1.0, rtol=1e-15)


def test_spectral_coefficients_reject_leaking_tails():
    kgrid = Grid1D.symmetric(2.0, 33)
    vals = np.exp(-kgrid.points**2)  # edge value exp(-4) ~ 1.8e-2 of peak
    with pytest.raises(TailLeakageError):
        SpectralCoefficients(kgrid, vals)


def test_synthesize_single_mode_is_plane_wave():
    # one nonzero coefficient must synthesize c * w * exp(i k z) with the
    # Simpson weight of that node
    kgrid = Grid1D.symmetric(4.0, 9)
    vals = np.zeros(9, dtype=complex)
    vals[4] = 2.0 - 1.0j  # k = 0 node
    coeffs = SpectralCoefficients(kgrid, vals)
    zgrid = Grid1D.symmetric(3.0, 16)
    out = synthesize(coeffs, zgrid)
    w = simpson_weights(9, kgrid.step)[4]
    assert np.allclose(out, (2.0 - 1.0j) * w * np.ones(16), rtol=1e-13)


def test_synthesize_time_phase():
    # a k = 0 mode rotates as exp(-i t) on the mass shell (omega = 1)
    kgrid = Grid1D.symmetric(4.0, 9)
    vals = np.zeros(9, dtype=complex)
    vals[4] = 1.0
    coeffs = SpectralCoefficients(kgrid, vals)
    zgrid = Grid1D.symmetric(1.0, 4)
    t = 0.7
    out = synthesize(coeffs, zgrid, t=t)
    ref = synthesize(coeffs, zgrid) * np.exp(-1j * t)
    assert np.allclose(out, ref, rtol=1e-13)


def test_synthesize_parseval():
    # int |f|^2 dz = 2 pi int |a|^2 dk for a well-resolved gaussian
    sigma = 0.05
    kgrid = Grid1D.symmetric(1.8, 801)
    a = (sigma / math.pi) ** 0.25 * np.exp(-kgrid.points**2 / (2.0 * sigma))
    coeffs = SpectralCoefficients(kgrid, a.astype(complex))
    zgrid = Grid1D.symmetric(60.0, 4001)
    f = synthesize(coeffs, zgrid)
    lhs = integrate_grid(np.abs(f) ** 2, zgrid)
    rhs = 2.0 * math.pi * integrate_grid(np.abs(a) ** 2, kgrid)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_synthesize_linearity():
    kgrid = Grid1D.symmetric(3.0, 65)
    rng = np.random.default_rng(7)
    # envelope squeezes the random edge values safely under the tail check
    a = rng.normal(size=65) * np.exp(-2.0 * kgrid.points**2)
    b = rng.normal(size=65) * np.exp(-2.0 * kgrid.points**2)
    zgrid = Grid1D.symmetric(2.0, 50)
    ca = SpectralCoefficients(kgrid, a.astype(complex))
    cb = SpectralCoefficients(kgrid, b.astype(complex))
    csum = SpectralCoefficients(kgrid, (a + 3.0 * b).astype(complex))
    out = synthesize(csum, zgrid)
    ref = synthesize(ca, zgrid) + 3.0 * synthesize(cb, zgrid)
    assert np.allclose(out, ref, rtol=1e-12, atol=1e-15)
