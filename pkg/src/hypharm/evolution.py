"""Spectral multiplier calculus a(D_x), the propagator e^{it a(D_x)}, and the
intertwining identities that reduce evolution on the hyperbolic plane to
one-dimensional Euclidean evolution in the horocycle distance.

Evolution lives on SpectralTable objects, where the propagator is an exact
diagonal phase; physical-space snapshots are derived views through the
inverse transform.  All multipliers are W-invariant (functions of |lambda|),
matching radially symmetric symbols.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .geometry import RHO, FunctionOnX, _simpson_coeffs
from .specialfn import CFunctionEvaluator
from .transforms import (A_SPACE_DLEB, SpectralTable, TruncationWarning,
                         apply_h_multiplier, fourier_dual, helgason_forward,
                         helgason_inverse, isometry_T)

__all__ = [
    "Multiplier",
    "TimeGrid",
    "EvolutionState",
    "multiplier_apply",
    "propagate",
    "duhamel",
    "euclid_propagate_1d",
    "intertwine_homogeneous_check",
    "schrodinger_intertwine_check",
]


@dataclass(frozen=True)
class Multiplier:
    """Real-valued spectral symbol a(lambda), lambda >= 0, with optional a'.

    growth_order/growth_const declare the polynomial bound
    |a(lambda)| <= C <lambda>^m, checked on demand by validate_on().
    """

    fn: object
    name: str = "custom"
    dfn: object = None
    growth_order: float = 2.0
    growth_const: float = 2.0

    def __call__(self, lam):
        return np.asarray(self.fn(np.abs(np.asarray(lam, dtype=float))))

    def derivative(self, lam):
        if self.dfn is None:
            raise ValueError(f"multiplier {self.name!r} has no derivative evaluator")
        lam = np.asarray(lam, dtype=float)
        # odd extension: a(|lambda|) differentiates to sign(lambda) a'(|lambda|)
        return np.sign(lam) * np.asarray(self.dfn(np.abs(lam)))

    def validate_on(self, lam: np.ndarray) -> bool:
        vals = self(lam)
        if not np.all(np.isreal(vals)):
            return False
        bound = self.growth_const * np.hypot(1.0, lam) ** self.growth_order
        return bool(np.all(np.abs(vals) <= bound + 1e-12))

    # -- named builders ------------------------------------------------------
    @classmethod
    def schrodinger(cls, rho: float = RHO) -> "Multiplier":
        return cls(fn=lambda lam: lam**2 + rho**2, dfn=lambda lam: 2.0 * lam,
                   name="schrodinger", growth_order=2.0, growth_const=1.0 + rho**2)

    @classmethod
    def polynomial(cls, coeffs, rho: float = RHO) -> "Multiplier":
        """a(lambda) = sum_k c_k (lambda^2 + rho^2)^k."""
        coeffs = [float(c) for c in coeffs]

        def fn(lam):
            base = lam**2 + rho**2
            return sum(c * base**k for k, c in enumerate(coeffs))

        def dfn(lam):
            base = lam**2 + rho**2
            return sum(c * k * base ** (k - 1) * 2.0 * lam
                       for k, c in enumerate(coeffs) if k > 0)

        deg = 2 * (len(coeffs) - 1)
        cbound = sum(abs(c) * (1 + rho**2) ** k for k, c in enumerate(coeffs))
        return cls(fn=fn, dfn=dfn, name="poly:" + ",".join(map(repr, coeffs)),
                   growth_order=float(deg), growth_const=cbound)

    @classmethod
    def homogeneous(cls, m: float) -> "Multiplier":
        return cls(fn=lambda lam: lam**m, dfn=lambda lam: m * lam ** (m - 1.0),
                   name=f"homogeneous:{m}", growth_order=float(m), growth_const=1.0)

    @classmethod
    def from_spec(cls, spec: str, rho: float = RHO) -> "Multiplier":
        """Parse the CLI multiplier notation.

        "schrodinger" | "poly:c0,c1,..." | "homogeneous:m".  No general
        expression parsing.
        """
        if spec == "schrodinger":
            return cls.schrodinger(rho)
        if spec.startswith("poly:"):
            return cls.polynomial([float(c) for c in spec[5:].split(",")], rho)
        if spec.startswith("homogeneous:"):
            return cls.homogeneous(float(spec.split(":", 1)[1]))
        raise ValueError(f"unknown multiplier spec {spec!r}")


@dataclass(frozen=True)
class TimeGrid:
    """Uniform symmetric time grid including 0."""

    t_values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t_values, dtype=float)
        object.__setattr__(self, "t_values", t)
        if len(t) < 3 or abs(t[0] + t[-1]) > 1e-12 or not np.any(np.abs(t) < 1e-15):
            raise ValueError("time grid must be symmetric about and include 0")

    @classmethod
    def build(cls, horizon: float, n_t: int) -> "TimeGrid":
        if n_t % 2 == 0:
            n_t += 1  # odd count so that t = 0 is a node
        return cls(np.linspace(-horizon, horizon, n_t))

    @property
    def delta_t(self) -> float:
        return float(self.t_values[1] - self.t_values[0])

    @property
    def horizon(self) -> float:
        return float(self.t_values[-1])

    def simpson_weights(self) -> np.ndarray:
        return _simpson_coeffs(len(self.t_values) - 1) * self.delta_t


@dataclass
class EvolutionState:
    """Frequency-side state of the evolution at a fixed time."""

    time: float
    snapshot: SpectralTable

    def plancherel_norm(self, ev: CFunctionEvaluator) -> float:
        return self.snapshot.plancherel_norm(ev)

    def to_function(self, out_grid, ev: CFunctionEvaluator) -> FunctionOnX:
        return helgason_inverse(self.snapshot, out_grid, ev)


def multiplier_apply(a: Multiplier, u: FunctionOnX, ev: CFunctionEvaluator,
                     lambda_max: float = 12.0, n_lambda: int = 256) -> FunctionOnX:
    """a(D_x) u via the diagonal action on the Fourier image."""
    table = helgason_forward(u, lambda_max=lambda_max, n_lambda=n_lambda)
    scaled = table.apply_multiplier(a)
    top = np.max(np.abs(scaled.values[-1]))
    peak = np.max(np.abs(scaled.values))
    if peak > 0 and top > 1e-6 * peak:
        warnings.warn("a(lambda) F u not decayed at lambda_max", TruncationWarning)
    return helgason_inverse(scaled, u.grid, ev)


def propagate(a: Multiplier, t: float, state) -> EvolutionState:
    """e^{i t a(D_x)} acting on a SpectralTable or EvolutionState."""
    if isinstance(state, EvolutionState):
        base, t0 = state.snapshot, state.time
    else:
        base, t0 = state, 0.0
    phase = lambda lam: np.exp(1j * t * np.asarray(a(lam)))
    return EvolutionState(time=t0 + t, snapshot=base.apply_multiplier(phase))


def duhamel(a: Multiplier, f_tables: list[SpectralTable], t: float,
            time_grid: TimeGrid) -> SpectralTable:
    """G f(t) = int_0^t e^{i (t - tau) a(D_x)} f(tau) d tau on spectral tables.

    f_tables holds the forcing snapshots on the full time grid; t must be a
    grid node.  Composite Simpson in tau.
    """
    tv = time_grid.t_values
    if len(f_tables) != len(tv):
        raise ValueError("need one forcing table per time node")
    i0 = int(np.argmin(np.abs(tv)))
    it = int(np.argmin(np.abs(tv - t)))
    if abs(tv[it] - t) > 1e-12:
        raise ValueError("t must lie on the time grid")
    ref = f_tables[0]
    lam = ref.lambda_values
    avals = np.asarray(a(lam))
    if time_grid.delta_t * float(np.max(np.abs(avals))) > np.pi / 4:
        warnings.warn("time step rotates the fastest mode by more than pi/4",
                      TruncationWarning)
    out_pos = np.zeros_like(ref.values)
    out_neg = np.zeros_like(ref.values_neg)
    if it != i0:
        lo, hi = sorted((i0, it))
        idx = np.arange(lo, hi + 1)
        w = _simpson_coeffs(len(idx) - 1) * time_grid.delta_t
        if it < i0:
            w = -w  # integral from 0 backwards in time
        for j, wj in zip(idx, w):
            ph = np.exp(1j * (t - tv[j]) * avals)[:, None]
            out_pos += wj * ph * f_tables[j].values
            out_neg += wj * ph * f_tables[j].values_neg
    return SpectralTable(ref.lambda_values.copy(), ref.b_values.copy(),
                         out_pos, out_neg)


def euclid_propagate_1d(a: Multiplier, t: float, psi: np.ndarray,
                        h_values: np.ndarray) -> np.ndarray:
    """e^{i t a(D_H)} on one-dimensional samples (unitary FFT multiplier).

    The workhorse for every Euclidean baseline; a is evaluated at |xi|
    (W-invariant symbol).
    """
    psi = np.asarray(psi, dtype=complex)
    xi = fourier_dual(h_values)
    spec = np.fft.fft(psi, axis=0)
    nyq = int(np.argmax(np.abs(xi)))
    peak = np.max(np.abs(spec))
    if peak > 0 and np.max(np.abs(spec[nyq])) > 1e-6 * peak:
        warnings.warn("spectral content at the Nyquist frequency; aliasing likely",
                      TruncationWarning)
    phase = np.exp(1j * t * np.asarray(a(xi)))
    shape = [1] * psi.ndim
    shape[0] = len(xi)
    return np.fft.ifft(spec * phase.reshape(shape), axis=0)


def _hb_norm(values: np.ndarray, h_values: np.ndarray, n_b: int) -> float:
    dh = h_values[1] - h_values[0]
    return float(np.sqrt(np.sum(np.abs(values) ** 2) * A_SPACE_DLEB * dh / n_b))


def _as_table(source, ev, lambda_max, n_lambda):
    if isinstance(source, SpectralTable):
        return source, source.plancherel_norm(ev)
    table = helgason_forward(source, lambda_max=lambda_max, n_lambda=n_lambda)
    return table, source.norm()


def intertwine_homogeneous_check(a: Multiplier, p: Multiplier, u0,
                                 t: float, ev: CFunctionEvaluator,
                                 h_values: np.ndarray,
                                 lambda_max: float = 12.0,
                                 n_lambda: int = 1024) -> float:
    """Residual of T_s(p(D_x) e^{it a(D_x)} u0) = p(s D_H) e^{it a(s D_H)} T_s u0.

    Both sides are computed independently: the left through the multiplied
    spectral table and the Filon chamber transform, the right by 1D Fourier
    multipliers acting on T_s u0.  Returns the worse of the two chambers,
    relative to ||u0||.  u0 may be a FunctionOnX or a precomputed
    SpectralTable (reused across times).
    """
    table, base = _as_table(u0, ev, lambda_max, n_lambda)
    mult = lambda lam: np.asarray(p(lam)) * np.exp(1j * t * np.asarray(a(lam)))
    table_lhs = table.apply_multiplier(mult)
    worst = 0.0
    for s in (+1, -1):
        lhs = isometry_T(table_lhs, ev, h_values, chamber=s)
        ts = isometry_T(table, ev, h_values, chamber=s)
        m1 = lambda xi: np.asarray(p(s * xi)) * np.exp(1j * t * np.asarray(a(s * xi)))
        rhs_vals = apply_h_multiplier(ts.values, h_values, m1, axis=0)
        resid = _hb_norm(lhs.values - rhs_vals, h_values, table.n_b) / base
        worst = max(worst, resid)
    return worst


def schrodinger_intertwine_check(u0, t: float, ev: CFunctionEvaluator,
                                 h_values: np.ndarray,
                                 lambda_max: float = 12.0,
                                 n_lambda: int = 1024) -> float:
    """Residual of T(e^{-it Delta_X} u0) = e^{it rho^2} e^{-it Delta_a} (T u0).

    e^{-it Delta_X} is the propagator with a(lambda) = lambda^2 + rho^2 (the
    Laplacian is negative); on the Euclidean side e^{-it Delta_a} uses
    a(xi) = xi^2, and the curvature contributes the global phase e^{it rho^2}.
    """
    a = Multiplier.schrodinger()
    table, base = _as_table(u0, ev, lambda_max, n_lambda)
    lhs = isometry_T(table.apply_multiplier(
        lambda lam: np.exp(1j * t * np.asarray(a(lam)))), ev, h_values, "both")
    tu = isometry_T(table, ev, h_values, "both")
    rhs_vals = np.exp(1j * t * RHO**2) * euclid_propagate_1d(
        Multiplier(fn=lambda lam: lam**2, name="xi^2"), t, tu.values, h_values)
    return _hb_norm(lhs.values - rhs_vals, h_values, table.n_b) / base
