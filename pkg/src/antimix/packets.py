"""Boosted Gaussian wave packets split into particle and antiparticle channels.

A rest-frame packet with momentum profile a(k) = (sigma/pi)^(1/4) exp(-k^2/(2 sigma))
is carried to velocity beta by the mode map q = gamma (k + beta omega_k) with
amplitude reweighting A(q) = a(k(q)) sqrt(d k / d q), d k / d q = omega_k / omega_q,
which keeps the mode-intensity integral of |A|^2 fixed.  Each lab mode q then
contributes plane-wave channel amplitudes:

    Klein-Gordon:  theta ~ (1 + omega_q) A(q),   chi ~ (1 - omega_q) A(q)
    Dirac:         theta ~ u(q) A(q),            chi ~ l(q) A(q)

with u, l the unit-spinor components.  Position-space fields are Simpson
quadratures of the mode integral on a window that travels with the packet,
xi = z - beta t, so the profile stays centered for any evolution time.

sigma is the variance of the momentum-space intensity |a|^2 (the rest
position-space intensity envelope is exp(-sigma xi^2)); sqrt(sigma) <= 0.1 is
enforced so the envelope stays nonrelativistic while the carrier itself can
be ultrarelativistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

import numpy as np

from .diracfree import dirac_component_amplitudes
from .errors import BoundaryLeakageError, ConvergenceError, DomainError, TailLeakageError
from .kgfree import kg_component_amplitudes
from .quad import Grid1D, SpectralCoefficients, integrate_grid, synthesize
from .units import Beta, ModelKind, RatioResult, gamma_factor

DEFAULT_SIGMA = 1e-4
DEFAULT_XI_COUNT = 8192
DEFAULT_MODE_COUNT = 2049
MAX_SQRT_SIGMA = 0.1

# intensity |theta|^2 + |chi|^2 at the window edge must stay below this
# fraction of its peak, otherwise the window is too narrow for the packet
BOUNDARY_INTENSITY_TOL = 1e-10
# the default window half width targets an edge intensity of 1e-14
_WINDOW_INTENSITY_FLOOR = 1e-14

# momentum half width in units of sqrt(sigma): widened until the dropped
# Gaussian tail mass erfc(x) clears 1e-12 and both channels' endpoint
# coefficients clear the spectral tail threshold
_MODE_HALF_WIDTH_START = 5.0
_MODE_HALF_WIDTH_STEP = 0.5
_MODE_HALF_WIDTH_MAX = 16.0
_MODE_TAIL_MASS = 1e-12


def _check_sigma(sigma: float) -> float:
    s = float(sigma)
    if not (s > 0.0 and math.isfinite(s)):
        raise DomainError(f"sigma must be positive and finite, got {sigma}")
    if math.sqrt(s) > MAX_SQRT_SIGMA:
        raise DomainError(
            f"sqrt(sigma) = {math.sqrt(s):.3g} exceeds {MAX_SQRT_SIGMA}; "
            "the narrow-packet regime is required"
        )
    return s


def gaussian_rest_amplitude(k, sigma: float = DEFAULT_SIGMA):
    """Rest-frame momentum profile; integral of |a|^2 over k equals sigma."""
    s = _check_sigma(sigma)
    k = np.asarray(k, dtype=float)
    return (s / math.pi) ** 0.25 * np.exp(-k * k / (2.0 * s))


def boosted_wavenumber(k, beta: float):
    """Mode map k -> q = gamma (k + beta omega_k)."""
    b = float(Beta(beta))
    g = gamma_factor(b)
    k = np.asarray(k, dtype=float)
    return g * (k + b * np.sqrt(1.0 + k * k))


def rest_wavenumber(q, beta: float):
    """Inverse mode map q -> k = gamma (q - beta omega_q)."""
    b = float(Beta(beta))
    g = gamma_factor(b)
    q = np.asarray(q, dtype=float)
    return g * (q - b * np.sqrt(1.0 + q * q))


def boost_amplitude(rest_amplitude: Callable, beta: float, kgrid: Grid1D) -> SpectralCoefficients:
    """Lab-frame coefficients A(q) = a(k(q)) sqrt(omega_k / omega_q) on kgrid.

    The Jacobian square root preserves the mode-intensity integral: for any
    rest profile a, the quadrature of |A|^2 over q equals that of |a|^2 over
    k.  At beta = 0 the map is the identity.  Raises TailLeakageError when
    kgrid fails to cover the boosted support.
    """
    q = kgrid.points
    k = rest_wavenumber(q, beta)
    omega_k = np.sqrt(1.0 + k * k)
    omega_q = np.sqrt(1.0 + q * q)
    values = np.asarray(rest_amplitude(k)) * np.sqrt(omega_k / omega_q)
    return SpectralCoefficients(kgrid, values)


def default_window_half_width(sigma: float = DEFAULT_SIGMA, beta: float = 0.0) -> float:
    """Half width putting the rest envelope edge intensity at 1e-14 of peak.

    The boosted envelope is the rest one contracted by gamma, so the width
    shrinks accordingly and the edge intensity ratio is preserved.
    """
    s = _check_sigma(sigma)
    return math.sqrt(-math.log(_WINDOW_INTENSITY_FLOOR) / s) / gamma_factor(float(Beta(beta)))


@dataclass(frozen=True)
class PacketSpec:
    """Recipe for a synthesized two-component packet.

    zgrid is the comoving window over xi = z - beta t; None picks a default
    wide enough for the boundary invariant with an order-of-magnitude margin.
    """

    model: ModelKind
    beta: float = 0.0
    sigma: float = DEFAULT_SIGMA
    t: float = 0.0
    zgrid: Grid1D | None = None
    xi_count: int = DEFAULT_XI_COUNT
    mode_count: int = DEFAULT_MODE_COUNT

    def __post_init__(self):
        Beta(self.beta)
        _check_sigma(self.sigma)
        if self.xi_count < 16 or self.mode_count < 16:
            raise DomainError("grids need at least 16 nodes")
        if self.zgrid is not None:
            # Gaussian-envelope prediction of the edge intensity ratio:
            # intensity ~ exp(-sigma (gamma xi)^2), must be < 1e-10 at both edges
            g = gamma_factor(self.beta)
            edge = min(abs(self.zgrid.start), abs(self.zgrid.stop))
            if self.zgrid.start > 0.0 or self.zgrid.stop < 0.0:
                raise DomainError("window must contain the packet center xi = 0")
            predicted = math.exp(-self.sigma * (g * edge) ** 2)
            if predicted >= BOUNDARY_INTENSITY_TOL:
                raise DomainError(
                    f"window too narrow: predicted edge intensity {predicted:.2e} "
                    f"of peak (must be < {BOUNDARY_INTENSITY_TOL:.0e})"
                )

    def window(self) -> Grid1D:
        if self.zgrid is not None:
            return self.zgrid
        hw = default_window_half_width(self.sigma, self.beta)
        return Grid1D.symmetric(hw, self.xi_count)


def channel_weights(model: ModelKind, q):
    """Per-mode (theta, chi) channel amplitudes of a plane wave at wavenumber q."""
    q = np.asarray(q, dtype=float)
    if model is ModelKind.KLEIN_GORDON:
        theta_w, chi_w = kg_component_amplitudes(q)
    elif model is ModelKind.DIRAC:
        theta_w, chi_w = dirac_component_amplitudes(q)
    else:
        raise DomainError(f"unknown model {model}")
    return theta_w, chi_w


def mode_coefficients(spec: PacketSpec):
    """(theta, chi, tail_mass_bound): channel coefficients of the boosted packet.

    The momentum window spans +-x sqrt(sigma) around the carrier in the rest
    frame, mapped through the boost; x grows from 5 in steps of 0.5 until the
    dropped Gaussian tail mass erfc(x) is below 1e-12 and the endpoint
    amplitudes of both channels fall below the spectral tail threshold.  The
    chi channel grows polynomially off center and is the binding constraint.
    """
    x = _MODE_HALF_WIDTH_START
    rest = partial(gaussian_rest_amplitude, sigma=spec.sigma)
    last_err: Exception | None = None
    while x <= _MODE_HALF_WIDTH_MAX:
        tail_mass = math.erfc(x)
        if tail_mass > _MODE_TAIL_MASS:
            x += _MODE_HALF_WIDTH_STEP
            continue
        k_half = x * math.sqrt(spec.sigma)
        q_lo = float(boosted_wavenumber(-k_half, spec.beta))
        q_hi = float(boosted_wavenumber(k_half, spec.beta))
        qgrid = Grid1D.from_span(q_lo, q_hi, spec.mode_count)
        try:
            carrier = boost_amplitude(rest, spec.beta, qgrid)
            theta_w, chi_w = channel_weights(spec.model, qgrid.points)
            theta_c = SpectralCoefficients(qgrid, theta_w * carrier.values)
            chi_c = SpectralCoefficients(qgrid, chi_w * carrier.values)
            return theta_c, chi_c, tail_mass
        except TailLeakageError as err:
            last_err = err
            x += _MODE_HALF_WIDTH_STEP
    raise ConvergenceError(
        f"momentum window would not close below {_MODE_HALF_WIDTH_MAX:g} sqrt(sigma)"
    ) from last_err


@dataclass(frozen=True)
class ComponentField:
    """Synthesized theta and chi samples on a comoving window."""

    model: ModelKind
    beta: float
    sigma: float
    t: float
    grid: Grid1D  # comoving coordinate xi = z - beta t
    theta: np.ndarray
    chi: np.ndarray
    tail_mass_bound: float = 0.0  # dropped momentum-tail mass fraction
    boundary_tol: float = field(default=BOUNDARY_INTENSITY_TOL)

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=complex)
        ch = np.asarray(self.chi, dtype=complex)
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "chi", ch)
        if th.shape != (self.grid.count,) or ch.shape != (self.grid.count,):
            raise DomainError("component arrays must match the window grid")
        intensity = np.abs(th) ** 2 + np.abs(ch) ** 2
        peak = float(np.max(intensity))
        edge = float(max(intensity[0], intensity[-1]))
        if peak > 0.0 and edge > self.boundary_tol * peak:
            raise BoundaryLeakageError(
                f"window edge intensity {edge:.3e} exceeds {self.boundary_tol:.1e} "
                f"of peak {peak:.3e}; widen the window"
            )
        if peak > 0.0 and self.charge <= 0.0:
            raise DomainError("synthesized packet carries nonpositive total charge")

    @property
    def rho(self) -> np.ndarray:
        """Density: |theta|^2 - |chi|^2 (Klein-Gordon charge) or + (Dirac norm)."""
        t2 = np.abs(self.theta) ** 2
        c2 = np.abs(self.chi) ** 2
        return t2 - c2 if self.model is ModelKind.KLEIN_GORDON else t2 + c2

    @property
    def charge(self) -> float:
        return float(integrate_grid(self.rho, self.grid))

    def channel_intensity_ratio(self) -> float:
        """Integrated |chi|^2 over integrated |theta|^2."""
        num = float(integrate_grid(np.abs(self.chi) ** 2, self.grid))
        den = float(integrate_grid(np.abs(self.theta) ** 2, self.grid))
        return num / den


def synthesize_packet(spec: PacketSpec) -> ComponentField:
    """Build mode coefficients and synthesize both channels on the window."""
    theta_c, chi_c, tail_mass = mode_coefficients(spec)
    window = spec.window()
    # evaluate at lab positions z = xi + beta t so the window tracks the packet
    zgrid = Grid1D(start=window.start + spec.beta * spec.t, step=window.step,
                   count=window.count)
    theta = synthesize(theta_c, zgrid, t=spec.t)
    chi = synthesize(chi_c, zgrid, t=spec.t)
    return ComponentField(model=spec.model, beta=spec.beta, sigma=spec.sigma,
                          t=spec.t, grid=window, theta=theta, chi=chi,
                          tail_mass_bound=tail_mass)


def full_width_half_max(grid: Grid1D, values) -> float:
    """FWHM of a sampled peaked curve with linear interpolation at the crossings.

    The peak must sit in the grid interior and both half-level crossings must
    exist inside the window.
    """
    v = np.asarray(values, dtype=float)
    if v.shape != (grid.count,):
        raise DomainError("sample length does not match the grid")
    i = int(np.argmax(v))
    if i <= 0 or i >= grid.count - 1:
        raise DomainError("peak sits on the window edge; widen the window")
    half = 0.5 * v[i]
    z = grid.points

    j = i
    while j > 0 and v[j - 1] > half:
        j -= 1
    if j == 0 and v[0] > half:
        raise DomainError("left half-level crossing lies outside the window")
    frac = (half - v[j - 1]) / (v[j] - v[j - 1])
    left = z[j - 1] + frac * grid.step

    j = i
    while j < grid.count - 1 and v[j + 1] > half:
        j += 1
    if j == grid.count - 1 and v[-1] > half:
        raise DomainError("right half-level crossing lies outside the window")
    frac = (half - v[j + 1]) / (v[j] - v[j + 1])
    right = z[j + 1] - frac * grid.step

    return right - left


@dataclass(frozen=True)
class PacketReport:
    """Measured summary of a synthesized packet."""

    model: str
    beta: float
    gamma: float
    sigma: float
    t: float
    ratio: RatioResult  # integrated |chi|^2 / |theta|^2
    fwhm: float  # of the density profile rho
    peak_rho: float
    peak_xi: float
    charge: float

    def __post_init__(self):
        if not self.fwhm > 0.0:
            raise DomainError(f"fwhm must be positive, got {self.fwhm}")
        if self.model == ModelKind.KLEIN_GORDON.value and not self.peak_rho > 0.0:
            raise DomainError("Klein-Gordon density peak must be positive")

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "beta": self.beta,
            "gamma": self.gamma,
            "sigma": self.sigma,
            "t": self.t,
            "ratio": {
                "value": self.ratio.value,
                "method": self.ratio.method,
                "abs_error_estimate": self.ratio.abs_error_estimate,
                "is_limit": self.ratio.is_limit,
            },
            "fwhm": self.fwhm,
            "peak_rho": self.peak_rho,
            "peak_xi": self.peak_xi,
            "charge": self.charge,
        }


def packet_report(fld: ComponentField) -> PacketReport:
    """Measure the density profile of a synthesized field."""
    rho = fld.rho
    width = full_width_half_max(fld.grid, rho)
    peak_idx = int(np.argmax(rho))
    ratio = RatioResult(value=fld.channel_intensity_ratio(), method="quadrature",
                        abs_error_estimate=fld.tail_mass_bound)
    return PacketReport(
        model=fld.model.value,
        beta=fld.beta,
        gamma=gamma_factor(fld.beta),
        sigma=fld.sigma,
        t=fld.t,
        ratio=ratio,
        fwhm=width,
        peak_rho=float(rho[peak_idx]),
        peak_xi=float(fld.grid.points[peak_idx]),
        charge=fld.charge,
    )


def lowspeed_closed_form(sigma: float, zgrid: Grid1D, t: float = 0.0) -> np.ndarray:
    """Unit-norm analytic rest packet in the quadratic-dispersion regime.

    (sigma/pi)^(1/4) (1 + i sigma t)^(-1/2) exp(-sigma z^2 / (2 (1 + i sigma t)) - i t),
    valid while sigma t << 1.  A synthesized rest packet matches this after
    dividing out its 2 pi sigma mode normalization.
    """
    s = _check_sigma(sigma)
    z = zgrid.points
    spread = 1.0 + 1j * s * float(t)
    return ((s / math.pi) ** 0.25 / np.sqrt(spread)
            * np.exp(-s * z * z / (2.0 * spread) - 1j * float(t)))
