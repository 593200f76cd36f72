"""Fixed regular lattice, wavefunctions on it, and the momentum picture.

The lattice is x_n = n * mu0 with the origin pinned at site 0.  States
are finite windows of complex amplitudes; everything outside a window
is implicitly zero.  The momentum representation lives on the interval
(-pi*hbar/mu0, pi*hbar/mu0) where momentum wavefunctions are periodic,
so the transform below is a discrete-time Fourier transform sampled on
a midpoint grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class PhysicalParams:
    """hbar, particle mass, and lattice spacing mu0; all strictly positive."""

    hbar: float = 1.0
    mass: float = 1.0
    mu0: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "mu0"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")

    @property
    def energy_scale(self) -> float:
        """hbar^2 / (m mu0^2), the natural kinetic-energy unit of the lattice."""
        return self.hbar**2 / (self.mass * self.mu0**2)

    @property
    def brillouin_edge(self) -> float:
        """pi*hbar/mu0, the boundary of the momentum interval."""
        return math.pi * self.hbar / self.mu0


def dimensionless_time(params: PhysicalParams, dt: float) -> float:
    """z = hbar * dt / (m * mu0^2); the argument of every Bessel kernel."""
    dt = float(dt)
    if not math.isfinite(dt):
        raise ValueError(f"dt must be finite, got {dt}")
    return params.hbar * dt / (params.mass * params.mu0**2)


@dataclass(frozen=True)
class Lattice:
    """Index window [n_min, n_max] on the grid x_n = n * mu0."""

    params: PhysicalParams
    n_min: int
    n_max: int

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise ValueError(f"empty window: n_min={self.n_min} > n_max={self.n_max}")

    @property
    def num_sites(self) -> int:
        return self.n_max - self.n_min + 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def positions(self) -> np.ndarray:
        return self.sites * self.params.mu0


@dataclass(frozen=True, eq=False)
class LatticeWavefunction:
    """Complex amplitudes on a lattice window, one per site."""

    lattice: Lattice
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size != self.lattice.num_sites:
            raise ValueError(
                f"expected {self.lattice.num_sites} amplitudes, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amps)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def amplitude_at(self, n: int) -> complex:
        """Amplitude at site n; zero outside the window."""
        if self.lattice.n_min <= n <= self.lattice.n_max:
            return complex(self.amplitudes[n - self.lattice.n_min])
        return 0.0 + 0.0j


def delta_state(lattice: Lattice, n: int) -> LatticeWavefunction:
    """Position eigenstate |x_n>: amplitude 1 at site n, 0 elsewhere."""
    if not (lattice.n_min <= n <= lattice.n_max):
        raise ValueError(f"site {n} outside window [{lattice.n_min}, {lattice.n_max}]")
    amps = np.zeros(lattice.num_sites, dtype=complex)
    amps[n - lattice.n_min] = 1.0
    return LatticeWavefunction(lattice, amps)


def gaussian_packet(lattice: Lattice, center: float, sigma: float,
                    momentum: float = 0.0) -> LatticeWavefunction:
    """Normalized Gaussian wave packet exp(-(x-x0)^2/(4 sigma^2) + i p x / hbar)."""
    if sigma <= 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    x = lattice.positions
    amps = np.exp(-((x - center) ** 2) / (4.0 * sigma**2)
                  + 1j * momentum * x / lattice.params.hbar)
    nrm = math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    if nrm == 0.0:
        raise ValueError("packet has no support on the window")
    return LatticeWavefunction(lattice, amps / nrm)


def inner_product(a: LatticeWavefunction, b: LatticeWavefunction) -> complex:
    """Polymer inner product sum_n conj(a_n) b_n over a common window."""
    if a.lattice != b.lattice:
        raise ValueError("wavefunctions live on different lattices")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


@dataclass(frozen=True)
class MomentumGrid:
    """Midpoint grid of M momenta inside the open interval (-pi hbar/mu0, pi hbar/mu0).

    The half-step offset keeps both endpoints (which are identified on
    the momentum circle) out of the grid.
    """

    params: PhysicalParams
    num_points: int

    def __post_init__(self):
        if self.num_points < 1:
            raise ValueError(f"num_points must be >= 1, got {self.num_points}")

    @property
    def values(self) -> np.ndarray:
        edge = self.params.brillouin_edge
        step = 2.0 * edge / self.num_points
        return -edge + (np.arange(self.num_points) + 0.5) * step


def momentum_samples(psi: LatticeWavefunction, p_values: np.ndarray) -> np.ndarray:
    """psi~(p) = sum_n psi_n exp(i n mu0 p / hbar) at arbitrary momenta."""
    p = np.atleast_1d(np.asarray(p_values, dtype=float))
    n = psi.lattice.sites
    phase = np.exp(1j * np.outer(p, n) * psi.lattice.params.mu0
                   / psi.lattice.params.hbar)
    return phase @ psi.amplitudes


def to_momentum(psi: LatticeWavefunction, grid: MomentumGrid) -> np.ndarray:
    """Sample the momentum wavefunction of psi on the grid."""
    if psi.lattice.params != grid.params:
        raise ValueError("wavefunction and momentum grid have different parameters")
    return momentum_samples(psi, grid.values)


def from_momentum(values: np.ndarray, grid: MomentumGrid,
                  lattice: Lattice) -> LatticeWavefunction:
    """Invert `to_momentum` by the uniform quadrature over the momentum interval.

    psi_n = (1/M) sum_k values_k exp(-i n mu0 p_k / hbar).  The rule is
    exact (not approximate) when M is at least the window width, since
    the integrand is then a trigonometric polynomial of degree < M.
    """
    if grid.params != lattice.params:
        raise ValueError("momentum grid and lattice have different parameters")
    vals = np.asarray(values, dtype=complex)
    if vals.shape != (grid.num_points,):
        raise ValueError(
            f"expected {grid.num_points} momentum samples, got shape {vals.shape}"
        )
    if grid.num_points < lattice.num_sites:
        raise ValueError(
            f"grid with {grid.num_points} points cannot resolve a "
            f"{lattice.num_sites}-site window"
        )
    n = lattice.sites
    phase = np.exp(-1j * np.outer(n, grid.values) * lattice.params.mu0
                   / lattice.params.hbar)
    amps = (phase @ vals) / grid.num_points
    return LatticeWavefunction(lattice, amps)
