"""Lattice dynamics: the polymer Hamiltonian, dispersion, and the box spectrum.

The kinetic term is the second-difference stencil

    (H psi)_n = (hbar^2 / 2 m mu0^2) (2 psi_n - psi_{n+1} - psi_{n-1}) + V_n psi_n

with amplitudes outside the window treated as zero.  The particle in a
box of length L = N*mu0 has walls AT sites 0 and N where amplitudes are
constrained to vanish; no infinite potential values enter the arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lattice import Lattice, LatticeWavefunction, PhysicalParams


class WallSupportError(ValueError):
    """Raised when a box state has nonzero amplitude at or beyond a wall."""


@dataclass(frozen=True)
class PotentialSpec:
    """Potential selector: free particle, or a box with walls at sites 0 and n."""

    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in ("free", "box"):
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.kind == "box":
            if self.n is None or int(self.n) < 2:
                raise ValueError(f"box needs n >= 2 lattice intervals, got {self.n}")
            object.__setattr__(self, "n", int(self.n))
        elif self.n is not None:
            raise ValueError("free potential takes no n")

    @classmethod
    def free(cls) -> "PotentialSpec":
        return cls(kind="free")

    @classmethod
    def box(cls, n: int) -> "PotentialSpec":
        return cls(kind="box", n=n)


def _box_interior_amplitudes(psi: LatticeWavefunction, n_box: int) -> np.ndarray:
    """Embed a box state into the full 0..N window, checking wall support.

    Any nonzero amplitude at a wall or outside the box violates the
    boundary conditions psi(x_0) = psi(x_N) = 0.
    """
    lat = psi.lattice
    full = np.zeros(n_box + 1, dtype=complex)
    for idx, n in enumerate(lat.sites):
        a = psi.amplitudes[idx]
        if n <= 0 or n >= n_box:
            if a != 0:
                raise WallSupportError(
                    f"box state has nonzero amplitude {a} at site {n}; "
                    f"support must lie strictly inside (0, {n_box})"
                )
        else:
            full[n] = a
    return full


def apply_hamiltonian(psi: LatticeWavefunction,
                      potential: PotentialSpec) -> LatticeWavefunction:
    """Apply the polymer Hamiltonian to a windowed state.

    Free: the output window grows by one site on each side (the stencil
    widens support).  Box: the output lives on sites 0..N with walls
    pinned to zero.
    """
    params = psi.lattice.params
    c = 0.5 * params.energy_scale

    if potential.kind == "free":
        # convolution with [-1, 2, -1] is the zero-padded stencil
        out = c * np.convolve(psi.amplitudes, [-1.0, 2.0, -1.0])
        lat = Lattice(params, psi.lattice.n_min - 1, psi.lattice.n_max + 1)
        return LatticeWavefunction(lat, out)

    n_box = potential.n
    full = _box_interior_amplitudes(psi, n_box)
    out = c * np.convolve(full, [-1.0, 2.0, -1.0])[1:-1]
    out[0] = 0.0
    out[n_box] = 0.0
    return LatticeWavefunction(Lattice(params, 0, n_box), out)


def dispersion_energy(params: PhysicalParams, p: float) -> float:
    """E(p) = (hbar^2 / m mu0^2) (1 - cos(mu0 p / hbar)); bounded band [0, 2*scale]."""
    p = float(p)
    if not math.isfinite(p):
        raise ValueError(f"momentum must be finite, got {p}")
    return params.energy_scale * (1.0 - math.cos(params.mu0 * p / params.hbar))


def dispersion_momentum(params: PhysicalParams, energy: float) -> float:
    """Inverse dispersion p_E = (hbar/mu0) arccos(1 - m mu0^2 E / hbar^2) in [0, pi hbar/mu0]."""
    energy = float(energy)
    band_top = 2.0 * params.energy_scale
    if not math.isfinite(energy) or energy < 0.0 or energy > band_top * (1.0 + 1e-12):
        raise ValueError(
            f"energy {energy} outside the polymer band [0, {band_top}]"
        )
    x = 1.0 - energy / params.energy_scale
    x = min(1.0, max(-1.0, x))  # guard rounding at the band edges
    return (params.hbar / params.mu0) * math.acos(x)


def recurrence_solve(energy: float, psi0: complex, psi1: complex,
                     n_steps: int, params: PhysicalParams) -> np.ndarray:
    """March the eigenvalue difference equation psi_{n+1} = 2 E' psi_n - psi_{n-1}.

    E' = 1 - m mu0^2 E / hbar^2.  Returns (psi_0, ..., psi_{n_steps}).
    For in-band energies the solution is A L+^n + B L-^n with
    L+- = E' +- i sqrt(1 - E'^2).
    """
    n_steps = int(n_steps)
    if n_steps < 2:
        raise ValueError(f"n_steps must be >= 2, got {n_steps}")
    curly_e = 1.0 - float(energy) / params.energy_scale
    out = np.empty(n_steps + 1, dtype=complex)
    out[0] = complex(psi0)
    out[1] = complex(psi1)
    for n in range(1, n_steps):
        out[n + 1] = 2.0 * curly_e * out[n] - out[n - 1]
    return out


@dataclass(frozen=True, eq=False)
class BoxSpectrum:
    """All N-1 levels of the box with walls at sites 0 and N.

    energies[l-1] = (hbar^2/m mu0^2)(1 - cos(l pi / N)) for l = 1..N-1;
    eigenvectors[l-1, n] = sqrt(2/N) sin(l pi n / N) on sites n = 0..N,
    with the wall entries exactly zero and unit lattice norm.
    """

    n: int
    params: PhysicalParams
    energies: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)

    def level(self, l: int) -> tuple[float, np.ndarray]:
        """(E_l, eigenvector samples on 0..N) for l in 1..N-1."""
        if not (1 <= l <= self.n - 1):
            raise ValueError(f"level {l} outside 1..{self.n - 1}")
        return float(self.energies[l - 1]), self.eigenvectors[l - 1]

    def eigenstate(self, l: int) -> LatticeWavefunction:
        _, vec = self.level(l)
        return LatticeWavefunction(Lattice(self.params, 0, self.n), vec)


def box_spectrum(n: int, params: PhysicalParams) -> BoxSpectrum:
    """Closed-form spectrum of the box Hamiltonian on an N-interval lattice."""
    n = int(n)
    if n < 2:
        raise ValueError(f"box needs n >= 2 (no interior sites for n={n})")
    levels = np.arange(1, n)
    energies = params.energy_scale * (1.0 - np.cos(levels * math.pi / n))
    sites = np.arange(0, n + 1)
    vectors = math.sqrt(2.0 / n) * np.sin(np.outer(levels, sites) * math.pi / n)
    vectors[:, 0] = 0.0
    vectors[:, n] = 0.0  # sin(l*pi) is exactly zero, floats are not
    return BoxSpectrum(n=n, params=params, energies=energies, eigenvectors=vectors)
