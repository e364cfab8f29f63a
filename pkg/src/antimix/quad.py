"""Quadrature and spectral synthesis on uniform grids.

Grid integrals use composite Simpson weights (exact for cubics).  Half-line
radial integrals r^p * exp(-2*lambda*r) * smooth are handled by normalizing
the decay with u = 2*lambda*r, absorbing a fractional or negative endpoint
power with u = t^m, and then doubling the Simpson node count until successive
refinements agree.  Packet synthesis is a direct Simpson-weighted sum over
momentum modes; no FFT, so momentum grids stay modest by design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, TailLeakageError

# relative endpoint amplitude above which spectral coefficients are considered truncated
DEFAULT_TAIL_THRESHOLD = 1e-6

_RADIAL_MAX_DOUBLINGS = 15  # caps the finest grid near 2e6 nodes
_RADIAL_START_COUNT = 65


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid: nodes start + i*step for i in range(count)."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not (self.step > 0.0) or not math.isfinite(self.step):
            raise DomainError(f"grid step must be positive, got {self.step}")
        if self.count < 2:
            raise DomainError(f"grid needs at least 2 nodes, got {self.count}")
        if not math.isfinite(self.start):
            raise DomainError("grid start must be finite")

    @classmethod
    def from_span(cls, start: float, stop: float, count: int) -> "Grid1D":
        if count < 2:
            raise DomainError(f"grid needs at least 2 nodes, got {count}")
        if not stop > start:
            raise DomainError("grid stop must exceed start")
        return cls(start=float(start), step=(float(stop) - float(start)) / (count - 1), count=int(count))

    @classmethod
    def symmetric(cls, half_width: float, count: int) -> "Grid1D":
        return cls.from_span(-float(half_width), float(half_width), count)

    @property
    def stop(self) -> float:
        return self.start + (self.count - 1) * self.step

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    def is_symmetric(self, tol: float = 1e-9) -> bool:
        return abs(self.start + self.stop) <= tol * self.step


@dataclass(frozen=True)
class SpectralCoefficients:
    """Complex mode amplitudes sampled on a momentum grid.

    The grid must cover the support: endpoint amplitudes above
    tail_threshold * max|values| raise TailLeakageError.
    """

    kgrid: Grid1D
    values: np.ndarray
    tail_threshold: float = field(default=DEFAULT_TAIL_THRESHOLD)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", vals)
        if vals.shape != (self.kgrid.count,):
            raise DomainError(f"coefficient array length {vals.shape} does not match grid count {self.kgrid.count}")
        if not np.all(np.isfinite(vals.view(float))):
            raise DomainError("spectral coefficients must be finite")
        peak = float(np.max(np.abs(vals)))
        if peak > 0.0:
            edge = max(abs(vals[0]), abs(vals[-1]))
            if edge > self.tail_threshold * peak:
                raise TailLeakageError(
                    f"momentum grid does not cover the packet: endpoint amplitude "
                    f"{edge:.3e} exceeds {self.tail_threshold:.1e} of peak {peak:.3e}"
                )


def simpson_weights(count: int, step: float) -> np.ndarray:
    """Composite Simpson weights on a uniform grid; exact for cubics.

    Odd counts use plain composite Simpson.  Even counts >= 4 close the last
    three intervals with the 3/8 rule, which keeps cubic exactness.  count == 2
    falls back to the trapezoid (nothing better exists on two nodes).
    """
    if count < 2:
        raise DomainError("need at least 2 nodes")
    h = float(step)
    if count == 2:
        return np.array([0.5 * h, 0.5 * h])
    w = np.zeros(count)
    if count % 2 == 1:
        w[0] = w[-1] = h / 3.0
        w[1:-1:2] = 4.0 * h / 3.0
        w[2:-1:2] = 2.0 * h / 3.0
    elif count == 4:
        w[:] = np.array([3.0, 9.0, 9.0, 3.0]) * h / 8.0
    else:
        # Simpson over the first count-3 nodes, 3/8 rule over the final 3 intervals
        body = count - 3
        w[0] = w[body - 1] = h / 3.0
        w[1:body - 1:2] = 4.0 * h / 3.0
        w[2:body - 1:2] = 2.0 * h / 3.0
        w[body - 1] += 3.0 * h / 8.0
        w[body] += 9.0 * h / 8.0
        w[body + 1] += 9.0 * h / 8.0
        w[body + 2] += 3.0 * h / 8.0
    return w


def integrate_grid(samples, grid: Grid1D) -> float | complex:
    """Integral of samples over the grid with composite Simpson weights."""
    vals = np.asarray(samples)
    if vals.shape != (grid.count,):
        raise DomainError(f"sample length {vals.shape} does not match grid count {grid.count}")
    total = np.dot(simpson_weights(grid.count, grid.step), vals)
    if np.iscomplexobj(vals):
        return complex(total)
    return float(total)


def _radial_transform_order(power_floor: float) -> int:
    """Exponent m for u = t^m: the mapped integrand goes like t^(m(p+1)-1).

    Choosing m(p+1) >= 5 makes the integrand and three derivatives vanish at
    t = 0, so skipping the origin node is exact and Simpson keeps h^4.
    """
    p = float(power_floor)
    return max(1, math.ceil(5.0 / (p + 1.0)))


def _radial_nodes_value(f, power_floor: float, decay: float, m: int, t_upper: float, count: int) -> float:
    t = np.linspace(0.0, t_upper, count)
    r = t**m / (2.0 * decay)
    vals = np.zeros(count)
    live = r > 0.0
    fv = np.asarray(f(r[live]), dtype=float)
    if not np.all(np.isfinite(fv)):
        raise DomainError("radial integrand returned non-finite values away from r = 0")
    # jacobian of r = t^m / (2 lambda); the t = 0 endpoint limit is 0 since m*(p+1) >= 5
    vals[live] = fv * (m * t[live] ** (m - 1) / (2.0 * decay))
    return float(np.dot(simpson_weights(count, t[1] - t[0]), vals))


def _integrate_radial_impl(f, power_floor: float, decay: float, rel_tol: float):
    p = float(power_floor)
    lam = float(decay)
    if not (p > -1.0):
        raise DomainError(f"power_floor must exceed -1 for integrability, got {power_floor}")
    if not (lam > 0.0) or not math.isfinite(lam):
        raise DomainError(f"decay constant must be positive, got {decay}")
    if not (0.0 < rel_tol < 1.0):
        raise DomainError(f"rel_tol must lie in (0, 1), got {rel_tol}")

    m = _radial_transform_order(p)
    u_upper = 75.0 + 10.0 * max(p, 0.0)  # u^p e^-u is ~1e-30 of peak out here
    t_upper = u_upper ** (1.0 / m)

    count = _RADIAL_START_COUNT
    prev = _radial_nodes_value(f, p, lam, m, t_upper, count)
    for _ in range(_RADIAL_MAX_DOUBLINGS):
        count = 2 * count - 1
        cur = _radial_nodes_value(f, p, lam, m, t_upper, count)
        delta = abs(cur - prev)
        scale = max(abs(cur), 1e-300)
        if delta <= rel_tol * scale:
            tail = (u_upper ** max(p, 0.0)) * math.exp(-u_upper) / (2.0 * lam) ** (p + 1.0)
            return cur, delta / 15.0 + tail, count
        prev = cur
    raise ConvergenceError(
        f"radial quadrature did not converge to rel_tol={rel_tol:g} within "
        f"{_RADIAL_MAX_DOUBLINGS} doublings (power_floor={p:g})"
    )


def integrate_radial(f: Callable, power_floor: float, decay: float, rel_tol: float = 1e-10) -> float:
    """Adaptive integral of f over (0, inf) for f ~ r^power_floor near 0, ~exp(-2*decay*r) at infinity.

    f is called with numpy arrays of strictly positive r and never at r = 0.
    """
    value, _, _ = _integrate_radial_impl(f, power_floor, decay, rel_tol)
    return value


def mass_shell_identity(k: np.ndarray):
    """Default phase map: each mode keeps its wavenumber, omega = sqrt(k^2 + 1)."""
    k = np.asarray(k, dtype=float)
    return k, np.sqrt(1.0 + k * k)


def synthesize(coeffs: SpectralCoefficients, zgrid: Grid1D, t: float = 0.0,
               phase: Callable | None = None, block: int = 2048) -> np.ndarray:
    """Field samples sum_k w_k values(k) exp(i (k_eff z - omega_eff t)) on zgrid.

    w_k are Simpson weights, so this is the quadrature of the mode integral.
    The phase map must return mass-shell pairs omega^2 - k^2 = 1.
    """
    k = coeffs.kgrid.points
    if phase is None:
        keff, omega = mass_shell_identity(k)
    else:
        keff, omega = phase(k)
        keff = np.asarray(keff, dtype=float)
        omega = np.asarray(omega, dtype=float)
        if keff.shape != k.shape or omega.shape != k.shape:
            raise DomainError("phase map must return arrays matching the momentum grid")
        off_shell = float(np.max(np.abs(omega * omega - keff * keff - 1.0)))
        if off_shell > 1e-9:
            raise DomainError(f"phase map leaves the mass shell by {off_shell:.3e}")
    weighted = simpson_weights(coeffs.kgrid.count, coeffs.kgrid.step) * coeffs.values
    weighted = weighted * np.exp(-1j * float(t) * omega)
    z = zgrid.points
    out = np.empty(zgrid.count, dtype=complex)
    for lo in range(0, zgrid.count, block):
        zz = z[lo:lo + block]
        out[lo:lo + block] = np.exp(1j * np.outer(zz, keff)) @ weighted
    return out
