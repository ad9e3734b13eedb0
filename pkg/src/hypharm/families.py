"""Shipped initial-data families for the smoothing and regularity experiments.

Four families on the hyperbolic plane (7 members each, 28 data): radial
Gaussians with dyadic widths, modulated Gaussians with dyadic frequencies,
compactly supported smooth ring bumps, and off-center bumps at increasing
distance from the origin.  Every member is smooth ON THE PLANE (radial
profiles are even in r, angular modes vanish appropriately at the origin) and
is normalized to unit L^2 norm.

One-dimensional counterparts for the Euclidean baselines live here too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import FunctionOnX, PolarGrid, busemann_grid, hyperbolic_distance

__all__ = [
    "FamilyMember",
    "smooth_bump",
    "gaussian_family",
    "modulated_family",
    "ring_family",
    "offcenter_family",
    "shipped_families",
    "smoothing_corpus",
    "gaussian_family_1d",
    "modulated_family_1d",
    "random_bump_family",
]


@dataclass
class FamilyMember:
    label: str
    function: FunctionOnX
    # spectral radius: |F u| is negligible beyond this lambda
    lambda_support: float


def smooth_bump(x):
    """C-infinity bump exp(1 - 1/(1 - x^2)) on |x| < 1, zero outside."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = np.abs(x) < 1.0
    out[m] = np.exp(1.0 - 1.0 / (1.0 - x[m] ** 2))
    return out


def _normalized(grid: PolarGrid, values: np.ndarray) -> FunctionOnX:
    u = FunctionOnX(grid, values.astype(complex))
    n = u.norm()
    if n == 0:
        raise ValueError("zero family member")
    return u.scaled(1.0 / n)


def gaussian_family(grid: PolarGrid, count: int = 7) -> list[FamilyMember]:
    """Radial Gaussians exp(-r^2 / (2 sigma_j^2)), sigma_j = 2^{-j/2}."""
    r = grid.r_values[:, None]
    ones = np.ones((1, grid.n_theta))
    out = []
    for j in range(count):
        sigma = 2.0 ** (-0.5 * j)
        vals = np.exp(-(r**2) / (2.0 * sigma**2)) * ones
        out.append(FamilyMember(f"gauss_w{j}", _normalized(grid, vals),
                                lambda_support=5.5 / sigma + 4.0))
    return out


def modulated_family(grid: PolarGrid, count: int = 7,
                     beta0: float = 0.0) -> list[FamilyMember]:
    """Unit-width Gaussian times the plane-wave phase e^{i omega A(x, b0)}.

    omega_j = 2^{j/2}; the phase translates the spectrum by ~omega along the
    b0 direction, probing frequency concentration.
    """
    r = grid.r_values[:, None]
    A = busemann_grid(grid, beta0)
    out = []
    for j in range(count):
        omega = 2.0 ** (0.5 * j)
        vals = np.exp(-(r**2)) * np.exp(1j * omega * A)
        out.append(FamilyMember(f"modulated_f{j}", _normalized(grid, vals),
                                lambda_support=omega + 9.0))
    return out


def ring_family(grid: PolarGrid, count: int = 7) -> list[FamilyMember]:
    """Compactly supported smooth bumps of r^2, peaked on rings r ~ c_j.

    Using r^2 as the bump argument keeps the profile even in r, hence smooth
    at the origin; supports stay inside r < 3.2.
    """
    r = grid.r_values[:, None]
    ones = np.ones((1, grid.n_theta))
    out = []
    for j in range(count):
        c = 0.4 + 0.4 * j
        width = 1.5 + 0.5 * c
        vals = smooth_bump((r**2 - c**2) / width) * ones
        out.append(FamilyMember(f"ring_c{j}", _normalized(grid, vals),
                                lambda_support=14.0 + 2.0 * j))
    return out


def offcenter_family(grid: PolarGrid, count: int = 7) -> list[FamilyMember]:
    """Gaussians of the hyperbolic distance to centers at distance 0.3 + 0.35 j."""
    z = (np.tanh(0.5 * grid.r_values)[:, None]
         * np.exp(1j * grid.theta_values[None, :]))
    out = []
    for j in range(count):
        d0 = 0.3 + 0.35 * j
        center = math.tanh(0.5 * d0) * np.exp(1j * (0.9 * j))
        d = hyperbolic_distance(z, center)
        vals = np.exp(-np.asarray(d) ** 2)
        out.append(FamilyMember(f"offcenter_d{j}", _normalized(grid, vals),
                                lambda_support=10.0 + 1.2 * d0))
    return out


def shipped_families(grid: PolarGrid) -> dict[str, list[FamilyMember]]:
    return {
        "gaussian": gaussian_family(grid),
        "modulated": modulated_family(grid),
        "ring": ring_family(grid),
        "offcenter": offcenter_family(grid),
    }


def smoothing_corpus(family_size: int = 7, refine: int = 1) -> dict[str, list[FamilyMember]]:
    """The 28 shipped smoothing data on per-family grids.

    Radial families live on thin-angle grids (their Fourier image is
    b-independent), which keeps the transfer-side work proportional to the
    radial content; the angular families get 64 boundary angles.  Narrow
    members use smaller balls with finer radial steps.
    """
    out: dict[str, list[FamilyMember]] = {"gaussian": [], "ring": [],
                                          "modulated": [], "offcenter": []}
    for j in range(family_size):
        sigma = 2.0 ** (-0.5 * j)
        r_max = max(4.0, 6.5 * sigma)
        n_r = refine * max(192, int(math.ceil(6.0 * r_max / sigma)))
        g = PolarGrid.build(r_max, n_r, 8 * refine)
        out["gaussian"].append(gaussian_family(g, count=j + 1)[j])
    ring_grid = PolarGrid.build(4.5, 224 * refine, 8 * refine)
    out["ring"] = ring_family(ring_grid, count=family_size)
    ang_grid = PolarGrid.build(6.5, 256 * refine, 64 * refine)
    out["modulated"] = modulated_family(ang_grid, count=family_size)
    out["offcenter"] = offcenter_family(ang_grid, count=family_size)
    return out


# ---------------------------------------------------------------------------
# One-dimensional families (Euclidean baselines)
# ---------------------------------------------------------------------------

def _grid_1d(xi_support: float, horizon: float) -> np.ndarray:
    """Uniform H grid resolving |xi| <= xi_support without wrap-around.

    The window covers the full dispersive excursion 2 xi_support * horizon so
    periodic FFT evolution never folds mass back into the weighted region.
    """
    dh = math.pi / (1.3 * xi_support)
    h_max = 24.0 + 2.0 * xi_support * horizon
    n = 1 << max(10, math.ceil(math.log2(2.0 * h_max / dh)))
    dh = 2.0 * h_max / n
    return -h_max + dh * np.arange(n)


def gaussian_family_1d(horizon: float, count: int = 7) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Unit-norm Gaussians of widths 2^{-j}, j = 0..count-1.

    Each member carries its own H grid sized to its spectral support and the
    evolution horizon; returns (label, h_values, samples) triples.
    """
    out = []
    for j in range(count):
        sigma = 2.0 ** (-j)
        h = _grid_1d(5.3 / sigma + 2.0, horizon)
        dh = h[1] - h[0]
        psi = np.exp(-(h**2) / (2.0 * sigma**2)).astype(complex)
        psi /= math.sqrt(np.sum(np.abs(psi) ** 2) * dh)
        out.append((f"gauss1d_w{j}", h, psi))
    return out


def modulated_family_1d(horizon: float, freqs) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Unit-width Gaussians modulated to frequency xi0, on adaptive grids."""
    out = []
    for xi0 in freqs:
        h = _grid_1d(abs(xi0) + 8.0, horizon)
        dh = h[1] - h[0]
        base = np.exp(-0.5 * h**2)
        psi = (base * np.exp(1j * xi0 * h)).astype(complex)
        psi /= math.sqrt(np.sum(np.abs(psi) ** 2) * dh)
        out.append((f"mod1d_x{xi0:g}", h, psi))
    return out


def random_bump_family(grid: PolarGrid, count: int, support_radius: float,
                       seed: int = 0) -> list[FunctionOnX]:
    """Seeded smooth bumps supported in B(o, support_radius).

    Radial profile is a bump of (r / R)^2; the angular part mixes a few low
    modes with r^|m| prefactors so every member is smooth at the origin.
    """
    rng = np.random.default_rng(seed)
    r = grid.r_values[:, None]
    th = grid.theta_values[None, :]
    out = []
    for _ in range(count):
        prof = smooth_bump((r / support_radius) ** 2
                           * (1.0 + 0.3 * rng.uniform(-1, 1)))
        vals = prof * (1.0 + 0j)
        for m in range(1, 4):
            amp = 0.5 * rng.uniform(-1, 1) / m
            phase = rng.uniform(0, 2 * np.pi)
            vals = vals + amp * prof * np.minimum(r, 1.0) ** m * np.cos(m * th + phase)
        out.append(_normalized(grid, vals))
    return out
