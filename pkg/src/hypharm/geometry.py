"""Poincare-disc model of the hyperbolic plane (curvature -1, rho = 1/2).

Points live in the open unit disc, the boundary circle is the space of
horocycle normals, and the Busemann function A(x, b) is the signed distance
from the origin to the horocycle through x tangent at b, positive on the side
of b (A(tanh(s/2) b, b) = +s).  Horocycle parametrizations route through the
upper half-plane, where the nilpotent group acts by horizontal translation,
and return via the Cayley map.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RHO",
    "GeometryError",
    "DiscPoint",
    "BoundaryPoint",
    "HorocycleCoord",
    "MobiusMap",
    "PolarGrid",
    "FunctionOnX",
    "busemann",
    "busemann_grid",
    "cocycle_check",
    "boundary_jacobian",
    "horocycle_points",
    "horocycle_polar",
    "hyperbolic_distance",
    "laplace_beltrami_apply",
]

RHO = 0.5  # half sum of positive roots for H^2 in curvature -1 normalization


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class DiscPoint:
    """Point of the open unit disc in Euclidean coordinates."""

    u: float
    v: float

    def __post_init__(self):
        if self.u**2 + self.v**2 >= 1.0:
            raise GeometryError("disc point must satisfy u^2 + v^2 < 1")

    @property
    def z(self) -> complex:
        return complex(self.u, self.v)

    @classmethod
    def origin(cls) -> "DiscPoint":
        return cls(0.0, 0.0)

    @classmethod
    def from_complex(cls, z: complex) -> "DiscPoint":
        return cls(z.real, z.imag)

    @classmethod
    def from_polar(cls, r: float, theta: float) -> "DiscPoint":
        s = math.tanh(0.5 * r)
        return cls(s * math.cos(theta), s * math.sin(theta))

    @property
    def radius(self) -> float:
        """Geodesic distance to the origin."""
        return 2.0 * math.atanh(min(abs(self.z), 1.0 - 1e-16))


@dataclass(frozen=True)
class BoundaryPoint:
    """Boundary direction b = e^{i beta} on the unit circle."""

    beta: float

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta) % (2.0 * math.pi))

    @property
    def z(self) -> complex:
        return complex(math.cos(self.beta), math.sin(self.beta))

    def antipode(self) -> "BoundaryPoint":
        return BoundaryPoint(self.beta + math.pi)


@dataclass(frozen=True)
class HorocycleCoord:
    """Horocycle xi(H, b): level set {A(., b) = H}."""

    h: float
    b: BoundaryPoint


@dataclass(frozen=True)
class MobiusMap:
    """Isometry of the disc as a 2x2 complex matrix with |det| = 1.

    Constructors produce SU(1,1)-form matrices [[alpha, beta], [conj beta,
    conj alpha]]; composition keeps the determinant modulus within roundoff.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(abs(det) - 1.0) > 1e-12:
            raise GeometryError("Mobius matrix must have |det| = 1")

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rotation(cls, phi: float) -> "MobiusMap":
        h = 0.5 * phi
        return cls(complex(math.cos(h), math.sin(h)), 0.0, 0.0,
                   complex(math.cos(h), -math.sin(h)))

    @classmethod
    def translation(cls, s: float, beta: float = 0.0) -> "MobiusMap":
        """Translate the origin by hyperbolic distance s toward e^{i beta}."""
        ch, sh = math.cosh(0.5 * s), math.sinh(0.5 * s)
        e = complex(math.cos(beta), math.sin(beta))
        return cls(ch, sh * e, sh * np.conj(e), ch)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        det = self.a * self.d - self.b * self.c
        return MobiusMap(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def apply_complex(self, z):
        z = np.asarray(z, dtype=complex)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def apply(self, x: DiscPoint) -> DiscPoint:
        return DiscPoint.from_complex(complex(self.apply_complex(x.z)))

    def apply_boundary(self, b: BoundaryPoint) -> BoundaryPoint:
        w = complex(self.apply_complex(b.z))
        if abs(abs(w) - 1.0) > 1e-10:
            raise GeometryError("map does not preserve the unit circle")
        return BoundaryPoint(math.atan2(w.imag, w.real))


def _simpson_coeffs(n_intervals: int) -> np.ndarray:
    """Composite-Simpson coefficients on n_intervals uniform intervals.

    Odd interval counts close with a 3/8 rule on the last three intervals;
    one interval degrades to the trapezoid rule.
    """
    if n_intervals < 1:
        raise GeometryError("need at least 1 interval")
    if n_intervals == 1:
        return np.array([0.5, 0.5])
    if n_intervals == 2:
        return np.array([1.0, 4.0, 1.0]) / 3.0
    c = np.zeros(n_intervals + 1)
    if n_intervals % 2 == 0:
        c[0] = c[-1] = 1.0 / 3.0
        c[1:-1:2] = 4.0 / 3.0
        c[2:-1:2] = 2.0 / 3.0
    else:
        m = n_intervals - 3
        if m > 0:
            c[: m + 1] += _simpson_coeffs(m)
        else:
            c[0] = 0.0
        c[m:] += np.array([3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0])
    return c


@dataclass(frozen=True)
class PolarGrid:
    """Geodesic-polar quadrature grid on the ball B(o, r_max).

    Radial nodes r_j = j * dr (j = 1..n_r) carry composite-Simpson weights for
    the measure sinh(r) dr; the j = 0 node is omitted because sinh(0) = 0.
    Angles are uniform with periodic-trapezoid weight.
    """

    r_values: np.ndarray
    theta_values: np.ndarray
    weights: np.ndarray  # (n_r, n_theta), full measure weight per node

    @classmethod
    def build(cls, r_max: float, n_r: int, n_theta: int) -> "PolarGrid":
        if n_r < 4 or n_theta < 8:
            raise GeometryError("grid too coarse: need n_r >= 4, n_theta >= 8")
        dr = r_max / n_r
        r = dr * np.arange(1, n_r + 1)
        theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
        radial_w = _simpson_coeffs(n_r)[1:] * dr * np.sinh(r)
        w = np.outer(radial_w, np.full(n_theta, 2.0 * np.pi / n_theta))
        return cls(r_values=r, theta_values=theta, weights=w)

    @property
    def n_r(self) -> int:
        return len(self.r_values)

    @property
    def n_theta(self) -> int:
        return len(self.theta_values)

    @property
    def r_max(self) -> float:
        return float(self.r_values[-1])

    @property
    def delta_r(self) -> float:
        return float(self.r_values[0])

    @property
    def delta_theta(self) -> float:
        return 2.0 * np.pi / self.n_theta

    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    def hyperbolic_area(self) -> float:
        return 2.0 * np.pi * (math.cosh(self.r_max) - 1.0)

    def refine(self, factor: int = 2) -> "PolarGrid":
        return PolarGrid.build(self.r_max, factor * self.n_r, factor * self.n_theta)


@dataclass
class FunctionOnX:
    """Complex samples of a function on a PolarGrid."""

    grid: PolarGrid
    values: np.ndarray
    valid_mask: np.ndarray | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        expect = (self.grid.n_r, self.grid.n_theta)
        if self.values.shape != expect:
            raise GeometryError(f"values shape {self.values.shape} != grid {expect}")
        if not np.all(np.isfinite(self.values)):
            raise GeometryError("function values must be finite")

    @classmethod
    def from_callable(cls, grid: PolarGrid, fn) -> "FunctionOnX":
        r = grid.r_values[:, None]
        th = grid.theta_values[None, :]
        return cls(grid, np.broadcast_to(np.asarray(fn(r, th), dtype=complex),
                                         (grid.n_r, grid.n_theta)).copy())

    def norm(self) -> float:
        """L^2(X) norm under the grid quadrature."""
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2 * self.grid.weights)))

    def inner(self, other: "FunctionOnX") -> complex:
        return complex(np.sum(self.values * np.conj(other.values) * self.grid.weights))

    def scaled(self, factor: complex) -> "FunctionOnX":
        return FunctionOnX(self.grid, self.values * factor, self.valid_mask)

    def plus(self, other: "FunctionOnX") -> "FunctionOnX":
        return FunctionOnX(self.grid, self.values + other.values)


# ---------------------------------------------------------------------------
# Busemann function and the boundary action
# ---------------------------------------------------------------------------

def busemann(x: DiscPoint, b: BoundaryPoint) -> float:
    """A(x, b) = log[(1 - |x|^2) / |x - b|^2].

    Validated against the eigenfunction identity: the grid Laplacian applied
    to exp((i lam + rho) A(., b)) returns -(lam^2 + rho^2) times the function.
    """
    z, w = x.z, b.z
    d2 = abs(z - w) ** 2
    if d2 < 1e-24:
        raise GeometryError("point too close to the boundary normal")
    return math.log((1.0 - abs(z) ** 2) / d2)


def busemann_grid(grid: PolarGrid, beta: float) -> np.ndarray:
    """A(x, b) over all grid nodes for b = e^{i beta}; shape (n_r, n_theta).

    Uses the equivalent closed form -log(cosh r - sinh r cos(theta - beta)),
    which is stable out to large radius.
    """
    r = grid.r_values[:, None]
    gamma = grid.theta_values[None, :] - beta
    return -np.log(np.cosh(r) - np.sinh(r) * np.cos(gamma))


def cocycle_check(g: MobiusMap, x: DiscPoint, b: BoundaryPoint) -> float:
    """Residual |A(g x, g b) - A(x, b) - A(g o, g b)| of the cocycle identity."""
    gx, gb = g.apply(x), g.apply_boundary(b)
    go = g.apply(DiscPoint.origin())
    return abs(busemann(gx, gb) - busemann(x, b) - busemann(go, gb))


def boundary_jacobian(g: MobiusMap, b: BoundaryPoint) -> float:
    """Radon-Nikodym factor of the boundary action, d(g b) = e^{-2 rho A(g o, g b)} db."""
    go = g.apply(DiscPoint.origin())
    gb = g.apply_boundary(b)
    return math.exp(-2.0 * RHO * busemann(go, gb))


def hyperbolic_distance(z1, z2) -> float:
    z1 = complex(z1) if np.ndim(z1) == 0 else np.asarray(z1, dtype=complex)
    z2 = complex(z2) if np.ndim(z2) == 0 else np.asarray(z2, dtype=complex)
    q = np.abs(z1 - z2) / np.abs(1.0 - np.conj(z2) * z1)
    return 2.0 * np.arctanh(np.minimum(q, 1.0 - 1e-16))


# ---------------------------------------------------------------------------
# Horocycle parametrization (through the half-plane model)
# ---------------------------------------------------------------------------

def horocycle_polar(h: float, s_params: np.ndarray):
    """Polar data (r, angle offset) of the horocycle xi(H, b) at b-angle 0.

    The half-plane picture sends b to infinity, the horocycle to the line
    Im z = e^H parametrized as z(s) = e^H (s + i) whose induced arc length is
    exactly ds; the inverse Cayley map returns it to the disc tangent at 1.
    For other b, rotate the angles by beta.
    """
    s = np.asarray(s_params, dtype=float)
    z = np.exp(h) * (s + 1j)
    w = (z - 1j) / (z + 1j)
    aw = np.abs(w)
    r = 2.0 * np.arctanh(np.minimum(aw, 1.0 - 1e-16))
    ang = np.arctan2(w.imag, w.real)
    return r, ang


def horocycle_points(xi: HorocycleCoord, s_params: np.ndarray):
    """Disc points of xi(H, b) at the given arc parameters, with ds weights.

    The returned weights are plain arc length; the Haar normalization of the
    horocycle group (a 1/pi factor for H^2) is applied by the Radon transform,
    not here.
    """
    s = np.asarray(s_params, dtype=float)
    if len(s) > 1 and abs(s[0] + s[-1]) > 1e-9:
        raise GeometryError("arc parameter grid must be symmetric about 0")
    r, ang = horocycle_polar(xi.h, s)
    zs = np.tanh(0.5 * r) * np.exp(1j * (ang + xi.b.beta))
    ds = np.full(len(s), s[1] - s[0]) if len(s) > 1 else np.array([1.0])
    points = [DiscPoint.from_complex(complex(z)) for z in zs]
    return points, ds


# ---------------------------------------------------------------------------
# Finite-difference Laplace-Beltrami operator
# ---------------------------------------------------------------------------

def laplace_beltrami_apply(u: FunctionOnX) -> FunctionOnX:
    """Second-order FD discretization of d_rr + coth(r) d_r + sinh(r)^{-2} d_tt.

    Valid on interior radial rings only; the first and last rings are flagged
    invalid in the result's valid_mask (values set to 0 there).
    """
    grid = u.grid
    if grid.n_r < 4 or grid.n_theta < 8:
        raise GeometryError("grid too coarse for the FD Laplacian")
    v = u.values
    dr = grid.delta_r
    dth = grid.delta_theta
    r = grid.r_values[:, None]

    d_rr = np.zeros_like(v)
    d_r = np.zeros_like(v)
    d_rr[1:-1] = (v[2:] - 2 * v[1:-1] + v[:-2]) / dr**2
    d_r[1:-1] = (v[2:] - v[:-2]) / (2 * dr)
    d_tt = (np.roll(v, -1, axis=1) - 2 * v + np.roll(v, 1, axis=1)) / dth**2

    out = d_rr + d_r / np.tanh(r) + d_tt / np.sinh(r) ** 2
    mask = np.zeros(v.shape, dtype=bool)
    mask[1:-1, :] = True
    out[~mask] = 0.0
    return FunctionOnX(grid, out, valid_mask=mask)
