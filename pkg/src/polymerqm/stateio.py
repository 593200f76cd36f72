"""Wavefunction files: CSV amplitudes plus a JSON sidecar with lattice metadata.

Layout for a state stored at `state.csv`:

  state.csv   header `n,re,im`, one row per site, sites strictly increasing
  state.json  {"hbar": ..., "mass": ..., "mu0": ..., "n_min": ..., "n_max": ...}

Floats are serialized with shortest round-trip precision so a
load/save cycle is lossless.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .lattice import Lattice, LatticeWavefunction, PhysicalParams

_HEADER = ["n", "re", "im"]


def sidecar_path(csv_path: str | Path) -> Path:
    return Path(csv_path).with_suffix(".json")


def save_wavefunction(psi: LatticeWavefunction, csv_path: str | Path) -> None:
    csv_path = Path(csv_path)
    lat = psi.lattice
    with open(csv_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(_HEADER)
        for n, a in zip(lat.sites, psi.amplitudes):
            writer.writerow([int(n), repr(float(a.real)), repr(float(a.imag))])
    meta = {
        "hbar": lat.params.hbar,
        "mass": lat.params.mass,
        "mu0": lat.params.mu0,
        "n_min": lat.n_min,
        "n_max": lat.n_max,
    }
    with open(sidecar_path(csv_path), "w") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")


def load_wavefunction(csv_path: str | Path) -> LatticeWavefunction:
    csv_path = Path(csv_path)
    meta_path = sidecar_path(csv_path)
    if not meta_path.exists():
        raise ValueError(f"missing sidecar metadata file {meta_path}")
    with open(meta_path) as f:
        try:
            meta = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed sidecar JSON {meta_path}: {exc}") from exc
    try:
        params = PhysicalParams(hbar=float(meta["hbar"]), mass=float(meta["mass"]),
                                mu0=float(meta["mu0"]))
        lattice = Lattice(params, n_min=int(meta["n_min"]), n_max=int(meta["n_max"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"sidecar {meta_path} missing or invalid field: {exc}") from exc

    sites = []
    amps = []
    with open(csv_path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != _HEADER:
            raise ValueError(f"{csv_path}: expected header {','.join(_HEADER)!r}, "
                             f"got {header!r}")
        for row in reader:
            if len(row) != 3:
                raise ValueError(f"{csv_path}: malformed row {row!r}")
            try:
                sites.append(int(row[0]))
                amps.append(complex(float(row[1]), float(row[2])))
            except ValueError as exc:
                raise ValueError(f"{csv_path}: malformed row {row!r}") from exc

    if sites != list(range(lattice.n_min, lattice.n_max + 1)):
        raise ValueError(
            f"{csv_path}: site column must be exactly {lattice.n_min}..{lattice.n_max} "
            "in increasing order"
        )
    return LatticeWavefunction(lattice, np.array(amps, dtype=complex))
