"""Shared fixtures. The zero catalog and the expensive frequency-axis
artifacts are built once per session and reused across test modules."""

import math
import os

import pytest

from weil_lab import debranges as db
from weil_lab import numerics as nu
from weil_lab import zero_catalog as zc

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
ZERO_TABLE = os.path.join(DATA_DIR, "zeros_t110.txt")


@pytest.fixture(scope="session")
def catalog():
    return zc.compute_zeros(100.0)


@pytest.fixture(scope="session")
def table_catalog():
    return zc.load_zeros(ZERO_TABLE, 100.0)


def band_exact_grid(x_min, x_max, band, margin=150.0):
    """Uniform grid sampled above the Nyquist rate of a band-limited build."""
    tau = 2.0 * math.pi / (band + margin) * 0.98
    n = int(math.ceil((x_max - x_min) / tau)) + 1
    return nu.Grid(x_min, x_max, n)


@pytest.fixture(scope="session")
def small_psi(catalog):
    """psi_gamma artifacts at Z = 500 for the light checks."""
    zs = catalog
    Z = 500.0
    grid = band_exact_grid(-4.0, 30.0, 2.0 * Z)
    return {
        "Z": Z,
        "grid": grid,
        "psi1": db.psi_gamma(zs.ordinates[0], zs, Z, grid),
        "psi2": db.psi_gamma(zs.ordinates[1], zs, Z, grid),
    }


@pytest.fixture(scope="session")
def heavy_psi(catalog):
    """The acceptance-scale artifacts: psi_gamma at Z = 5000 and 10000 on a
    window long enough for the slow e^{-delta x} modes, plus K psi."""
    zs = catalog
    g1, g2 = zs.ordinates[0], zs.ordinates[1]
    Z1, Z2 = 5000.0, 10000.0
    grid = band_exact_grid(-6.0, 38.0, 2.0 * Z2, margin=2.0 * Z2 * 0.02)
    psi1_z1 = db.psi_gamma(g1, zs, Z1, grid)
    psi2_z1 = db.psi_gamma(g2, zs, Z1, grid)
    psi1_z2 = db.psi_gamma(g1, zs, Z2, grid)
    k_psi1 = db.K_apply(psi1_z1, Z1, band_limit=Z1)
    return {"Z1": Z1, "Z2": Z2, "grid": grid,
            "psi1_z1": psi1_z1, "psi2_z1": psi2_z1, "psi1_z2": psi1_z2,
            "k_psi1": k_psi1}


@pytest.fixture(scope="session")
def basis_bank(catalog):
    zs = catalog
    grid = band_exact_grid(-4.0, 18.0, 500.0 + zs.ordinates[-1])
    return db.build_basis_bank(zs, 500.0, grid)
