"""
Spherical transform and its inversion on W-invariant functions.

Conventions (H in the orthonormal frame of a, dH Lebesgue):
- f^∧(λ) = (1/#W) ∫_a f(H) Υ^π(φ_{−λ}^π)(H) δ_{G/K}(H) dH
- f(H) = (1/#W) ∫_{i a*} f^∧(λ) Υ^π(φ_λ^π)(H) |c^π(λ)|^{-2} dλ
- F^∨(H) = ∫_{η + i a*} F(λ) Φ_λ(H) c^π(−λ)^{-1} dλ
- dλ = (2π)^{-r} dν for λ = η + iν, which in coroot coordinates x = Im λ_{α_i}
  is (2π)^{-r} J dx with J = |det(fundamental weights)|

Spherical values come from a ``SphericalProvider``: the Heckman–Opdam series
for triv and π₁, or an external module for π₂.
"""

from __future__ import annotations

import importlib.util
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Protocol, Sequence, Union, runtime_checkable

import numpy as np
import pandas as pd
from scipy.interpolate import LinearNDInterpolator, RegularGridInterpolator

from ..config import DEFAULT_QUADRATURE, DEFAULT_SERIES, RunConfig
from ..errors import ChamberError, ProviderError, QuadratureError, SingularRegionError
from ..roots.rootsys import (
    RootSystemData,
    SpectralPoint,
    dominant_representative,
    is_strictly_dominant,
    weyl_group,
)
from ..spectral.cfun import SmallKType, c_array, log_c_array, plancherel_density_array
from ..spectral.hcseries import radial_system, series_engine, upsilon_grid

SpectralFunction = Callable[[np.ndarray], np.ndarray]


# ==================== QUADRATURE SETTINGS ====================

@dataclass(frozen=True)
class QuadratureSpec:
    """Grid boxes and steps for the H- and λ-integrals."""

    lambda_box: float = DEFAULT_QUADRATURE["lambda_box"]
    lambda_step: float = DEFAULT_QUADRATURE["lambda_step"]
    h_box: float = DEFAULT_QUADRATURE["h_box"]
    h_step: float = DEFAULT_QUADRATURE["h_step"]
    max_height: int = DEFAULT_SERIES["max_height"]
    tol: Optional[float] = None

    def __post_init__(self):
        for name in ("lambda_box", "lambda_step", "h_box", "h_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.lambda_step > self.lambda_box or self.h_step > self.h_box:
            raise ValueError("quadrature steps must not exceed their boxes")
        if self.max_height < 0:
            raise ValueError(f"max_height must be >= 0, got {self.max_height}")

    @classmethod
    def from_config(cls, config: RunConfig) -> "QuadratureSpec":
        return cls(
            lambda_box=config.lambda_box,
            lambda_step=config.lambda_step,
            h_box=config.h_box,
            h_step=config.h_step,
            max_height=config.max_height,
            tol=config.tol,
        )


@dataclass(frozen=True)
class TransformValue:
    """A quadrature result and its error estimate (refinement difference plus truncation)."""

    value: complex
    error: float

    def __complex__(self) -> complex:
        return complex(self.value)


# ==================== GRIDS ====================

# Offsets keep every node of the λ-grid off the walls λ_β = 0.
_LAMBDA_OFFSETS = {1: (0.5,), 2: (1 / 3, 1 / 5)}


@dataclass(frozen=True)
class HGrid:
    points: np.ndarray
    weights: np.ndarray
    coarse_weights: np.ndarray


@dataclass(frozen=True)
class LambdaGrid:
    """Nodes of η + i a*, with t = Im λ in coroot coordinates."""

    t: np.ndarray
    lams: np.ndarray
    weights: np.ndarray
    coarse_weights: np.ndarray
    shell: np.ndarray


def _trapezoid_axis(n: int, step: float) -> tuple[np.ndarray, np.ndarray]:
    w = np.full(n, step)
    w[[0, -1]] = step / 2
    coarse = np.zeros(n)
    coarse[::2] = 2 * step
    coarse[[0, -1]] = step
    return w, coarse


def h_grid(R: RootSystemData, quad: QuadratureSpec, chamber_only: bool = True) -> HGrid:
    """
    Tensor trapezoid grid on [−h_box, h_box]^r.

    With ``chamber_only`` the nodes are restricted to the open positive
    chamber, which integrates a W-invariant integrand over a/W.
    """
    n = int(round(quad.h_box / quad.h_step))
    axis = np.arange(-n, n + 1) * quad.h_step
    w, coarse = _trapezoid_axis(len(axis), quad.h_step)
    mesh = np.meshgrid(*([axis] * R.rank), indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)
    weights = np.prod(np.stack(np.meshgrid(*([w] * R.rank), indexing="ij")).reshape(R.rank, -1), axis=0)
    cweights = np.prod(np.stack(np.meshgrid(*([coarse] * R.rank), indexing="ij")).reshape(R.rank, -1), axis=0)
    if chamber_only:
        inside = np.all(points @ R.simple_root_vectors().T > 0, axis=1)
        points, weights, cweights = points[inside], weights[inside], cweights[inside]
    return HGrid(points, weights, cweights)


def dual_measure_constant(R: RootSystemData) -> float:
    """(2π)^{-r} J: the density of dλ with respect to dx in coroot coordinates."""
    J = abs(float(np.linalg.det(R.fundamental_weights)))
    return J / (2 * math.pi) ** R.rank


def lambda_grid(R: RootSystemData, quad: QuadratureSpec, eta: Optional[Sequence[float]] = None) -> LambdaGrid:
    """
    Offset rectangle grid on η + i a*, |Im λ_{α_i}| ≤ lambda_box.

    The coarse weights use the nodes with even index only (step 2h), and
    ``shell`` marks the outermost ring of nodes.
    """
    n = int(math.ceil(quad.lambda_box / quad.lambda_step))
    j = np.arange(-n, n)
    theta = _LAMBDA_OFFSETS[R.rank]
    axes = [(j + th) * quad.lambda_step for th in theta]
    mesh = np.meshgrid(*axes, indexing="ij")
    jmesh = np.meshgrid(*([j] * R.rank), indexing="ij")
    t = np.stack([m.ravel() for m in mesh], axis=1)
    jj = np.stack([m.ravel() for m in jmesh], axis=1)

    const = dual_measure_constant(R)
    weights = np.full(len(t), const * quad.lambda_step ** R.rank)
    even = np.all(jj % 2 == 0, axis=1)
    coarse = np.where(even, const * (2 * quad.lambda_step) ** R.rank, 0.0)
    shell = np.any((jj == -n) | (jj == n - 1), axis=1)

    eta_vec = np.zeros(R.rank) if eta is None else np.asarray(eta, dtype=float) @ R.fundamental_weights
    lams = eta_vec[None, :] + 1j * (t @ R.fundamental_weights)
    return LambdaGrid(t, lams, weights, coarse, shell)


# ==================== DENSITIES ====================

def delta_weight_array(R: RootSystemData, Hs) -> np.ndarray:
    Hs = np.atleast_2d(np.asarray(Hs, dtype=float))
    out = np.ones(len(Hs))
    for a in R.positive_roots:
        out *= np.abs(2 * np.sinh(Hs @ a.as_array())) ** a.multiplicity
    return out


def delta_weight(R: RootSystemData, H) -> float:
    """
    δ_{G/K}(H) = Π_{α∈Σ⁺} |2 sinh α(H)|^{m_α}.

    Example:
        >>> from g2_plancherel.roots.rootsys import build_root_system
        >>> round(delta_weight(build_root_system("A1"), [1 / math.sqrt(2)]), 7)
        2.3504024
    """
    return float(delta_weight_array(R, np.asarray(H, dtype=float).reshape(1, R.rank))[0])


# ==================== FUNCTIONS ====================

@dataclass(frozen=True)
class RadialFunction:
    """
    A W-invariant function on a, defined through its values on the closed
    positive chamber; ``__call__`` folds every argument into that chamber.
    """

    system: RootSystemData
    evaluator: Callable[[np.ndarray], np.ndarray]
    support: float
    name: str = "f"
    smooth: bool = True

    def __call__(self, Hs) -> np.ndarray:
        Hs = np.atleast_2d(np.asarray(Hs, dtype=float))
        dom = dominant_representative(self.system, Hs)
        values = np.asarray(self.evaluator(dom), dtype=complex).reshape(len(dom))
        return np.where(np.linalg.norm(Hs, axis=1) <= self.support, values, 0)

    @classmethod
    def from_callable(cls, system: RootSystemData, fn, support: float, name: str = "f") -> "RadialFunction":
        return cls(system, fn, float(support), name)

    @classmethod
    def zero(cls, system: RootSystemData) -> "RadialFunction":
        return cls(system, lambda H: np.zeros(len(H)), 0.0, "zero")

    @classmethod
    def from_samples(cls, system: RootSystemData, points, values, name: str = "samples") -> "RadialFunction":
        """
        Piecewise-linear interpolant of sampled values, folded into the chamber.

        Samples at W-related points are averaged; the function is 0 outside
        the hull of the samples.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values = np.asarray(values, dtype=complex).reshape(len(points))
        if points.shape[1] != system.rank:
            raise ValueError(f"expected {system.rank} coordinates per sample, got {points.shape[1]}")
        dom = dominant_representative(system, points)
        frame = pd.DataFrame(np.round(dom, 12), columns=[f"H{i + 1}" for i in range(system.rank)])
        frame["re"], frame["im"] = values.real, values.imag
        grouped = frame.groupby([f"H{i + 1}" for i in range(system.rank)], as_index=False).mean()
        nodes = grouped[[f"H{i + 1}" for i in range(system.rank)]].to_numpy()
        vals = grouped["re"].to_numpy() + 1j * grouped["im"].to_numpy()
        support = float(np.linalg.norm(points, axis=1).max()) if len(points) else 0.0

        if system.rank == 1:
            x = nodes[:, 0]

            def evaluator(H):
                h = H[:, 0]
                re = np.interp(h, x, vals.real, left=vals.real[0], right=0.0)
                im = np.interp(h, x, vals.imag, left=vals.imag[0], right=0.0)
                return re + 1j * im

        else:
            re_i = LinearNDInterpolator(nodes, vals.real, fill_value=0.0)
            im_i = LinearNDInterpolator(nodes, vals.imag, fill_value=0.0)

            def evaluator(H):
                return re_i(H) + 1j * im_i(H)

        return cls(system, evaluator, support, name, smooth=False)


def bump_function(R: RootSystemData, radius: float = 1.0) -> RadialFunction:
    """exp(−1/(1 − |H|²/radius²)) on |H| < radius."""

    def evaluator(H):
        r2 = np.einsum("ij,ij->i", H, H) / radius ** 2
        out = np.zeros(len(H))
        inside = r2 < 1
        out[inside] = np.exp(-1 / (1 - r2[inside]))
        return out

    return RadialFunction.from_callable(R, evaluator, radius, name="bump")


def gaussian_function(R: RootSystemData, sigma: float = 1.0, support: float = math.inf) -> RadialFunction:
    def evaluator(H):
        return np.exp(-np.einsum("ij,ij->i", H, H) / (2 * sigma ** 2))

    return RadialFunction.from_callable(R, evaluator, support, name="gaussian")


@dataclass
class Spectrum:
    """
    A λ-sampled function on η + i a*.

    ``t`` holds Im λ in coroot coordinates; evaluation interpolates linearly
    and is only defined on the sampled surface Re λ = η.
    """

    system: RootSystemData
    t: np.ndarray
    values: np.ndarray
    errors: Optional[np.ndarray] = None
    eta: tuple[float, ...] = ()
    _interp: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.t = np.atleast_2d(np.asarray(self.t, dtype=float))
        self.values = np.asarray(self.values, dtype=complex).reshape(len(self.t))
        if self.errors is None:
            self.errors = np.zeros(len(self.t))
        if not self.eta:
            self.eta = (0.0,) * self.system.rank

    def _build(self) -> Callable:
        if self.system.rank == 1:
            order = np.argsort(self.t[:, 0])
            x, v = self.t[order, 0], self.values[order]

            def interp(t):
                return np.interp(t[:, 0], x, v.real, 0, 0) + 1j * np.interp(t[:, 0], x, v.imag, 0, 0)

            return interp
        axes = [np.unique(self.t[:, i]) for i in range(self.system.rank)]
        if np.prod([len(a) for a in axes]) == len(self.t):
            order = np.lexsort(self.t.T[::-1])
            grid = self.values[order].reshape([len(a) for a in axes])
            kw = dict(bounds_error=False, fill_value=0.0)
            re = RegularGridInterpolator(axes, grid.real, **kw)
            im = RegularGridInterpolator(axes, grid.imag, **kw)
        else:
            re = LinearNDInterpolator(self.t, self.values.real, fill_value=0.0)
            im = LinearNDInterpolator(self.t, self.values.imag, fill_value=0.0)
        return lambda t: re(t) + 1j * im(t)

    def __call__(self, lams) -> np.ndarray:
        lams = np.atleast_2d(np.asarray(lams, dtype=complex))
        coords = lams @ self.system.coroot_matrix.T
        if np.any(np.abs(coords.real - np.asarray(self.eta)[None, :]) > 1e-9):
            raise ValueError("a sampled spectrum can only be evaluated on its own surface Re λ = η")
        if self._interp is None:
            self._interp = self._build()
        return self._interp(coords.imag)

    def to_frame(self) -> pd.DataFrame:
        cols = ["im_lambda_a1", "im_lambda_a2"][: self.system.rank]
        df = pd.DataFrame(self.t, columns=cols)
        df["re"], df["im"], df["error"] = self.values.real, self.values.imag, self.errors
        if any(self.eta):
            df["surface"] = ",".join(f"{e:g}" for e in self.eta)
        return df


# ==================== PROVIDERS ====================

@runtime_checkable
class SphericalProvider(Protocol):
    """Source of Φ_λ(H) and Υ^π(φ_λ^π)(H) on (B, r) × (n, r) batches."""

    def series(self, pi, R: RootSystemData, lams: np.ndarray, Hs: np.ndarray) -> np.ndarray: ...

    def spherical(self, pi, R: RootSystemData, lams: np.ndarray, Hs: np.ndarray) -> np.ndarray: ...


@dataclass
class HeckmanOpdamProvider:
    """Exact series values for triv and π₁."""

    max_height: int = DEFAULT_SERIES["max_height"]

    def series(self, pi, R, lams, Hs):
        rs = radial_system(R, pi)
        engine = series_engine(rs.engine, rs.k, int(self.max_height))
        values, _ = engine.evaluate(lams, Hs)
        return values * rs.gauge(Hs)[None, :]

    def spherical(self, pi, R, lams, Hs):
        values, _ = upsilon_grid(pi, R, lams, Hs, self.max_height)
        return values


@dataclass
class LeadingTermProvider:
    """Φ_λ ≈ e^{(λ−ρ)(H)}; usable for every K-type as an execution stub."""

    def series(self, pi, R, lams, Hs):
        lams = np.atleast_2d(np.asarray(lams, dtype=complex))
        Hs = np.atleast_2d(np.asarray(Hs, dtype=float))
        return np.exp(lams @ Hs.T - (Hs @ R.rho)[None, :])

    def spherical(self, pi, R, lams, Hs):
        lams = np.atleast_2d(np.asarray(lams, dtype=complex))
        total = 0
        for w in weyl_group(R):
            lw = w.apply(lams)
            total = total + c_array(pi, R, lw)[:, None] * self.series(pi, R, lw, Hs)
        return total


@dataclass
class ZeroProvider:
    def series(self, pi, R, lams, Hs):
        return np.zeros((np.atleast_2d(lams).shape[0], np.atleast_2d(Hs).shape[0]), dtype=complex)

    spherical = series


def default_provider(pi, max_height: int = DEFAULT_SERIES["max_height"]) -> SphericalProvider:
    """
    Raises:
        ProviderError: For π₂, which has no built-in spherical values
    """
    if SmallKType.parse(pi) is SmallKType.PI2:
        raise ProviderError("π₂ needs an external spherical provider (--provider leading|path.py)")
    return HeckmanOpdamProvider(max_height)


def load_provider(spec: Union[str, Path], max_height: int = DEFAULT_SERIES["max_height"]) -> SphericalProvider:
    """
    Resolve a provider name or a Python file exposing ``provider``.

    Args:
        spec: "series", "leading", "zero", or a path to a .py file

    Raises:
        FileNotFoundError: If the file does not exist
        ProviderError: If the module has no usable ``provider`` attribute
    """
    named = {
        "series": lambda: HeckmanOpdamProvider(max_height),
        "leading": LeadingTermProvider,
        "zero": ZeroProvider,
    }
    if str(spec) in named:
        return named[str(spec)]()
    path = Path(spec)
    if not path.exists():
        raise FileNotFoundError(f"Provider file not found: {path}")
    module_spec = importlib.util.spec_from_file_location(path.stem, path)
    module = importlib.util.module_from_spec(module_spec)
    module_spec.loader.exec_module(module)
    provider = getattr(module, "provider", None)
    if provider is None or not isinstance(provider, SphericalProvider):
        raise ProviderError(f"{path} must define `provider` with series() and spherical() methods")
    return provider


# ==================== FORWARD TRANSFORM ====================

def _as_lambda_vectors(R: RootSystemData, lam) -> np.ndarray:
    if isinstance(lam, SpectralPoint):
        return lam.as_array()[None, :]
    return np.atleast_2d(np.asarray(lam, dtype=complex)).reshape(-1, R.rank)


def forward_transform_grid(
    pi,
    f: RadialFunction,
    lams,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    f^∧ on a batch of λ (orthonormal frame, shape (B, r)).

    Returns:
        (values, error estimates) of shape (B,)
    """
    quad = quad or QuadratureSpec()
    R = f.system
    lams = _as_lambda_vectors(R, lams)
    grid = h_grid(R, quad)
    fv = f(grid.points) * delta_weight_array(R, grid.points)
    keep = fv != 0
    if not np.any(keep):
        return np.zeros(len(lams), dtype=complex), np.zeros(len(lams))
    provider = provider or default_provider(pi, quad.max_height)
    ups = provider.spherical(pi, R, -lams, grid.points[keep])
    weighted = ups * fv[keep][None, :]
    fine = weighted @ grid.weights[keep]
    coarse = weighted @ grid.coarse_weights[keep]
    return fine, np.abs(fine - coarse)


def forward_transform(
    pi,
    f: RadialFunction,
    lam,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
) -> TransformValue:
    """
    f^∧(λ) = (1/#W) ∫_a f(H) Υ^π(φ_{−λ}^π)(H) δ_{G/K}(H) dH.

    The integrand is W-invariant, so the quadrature runs over a/W only.

    Args:
        pi: K-type (π₂ needs ``provider``)
        f: W-invariant function with support inside the H box
        lam: SpectralPoint or orthonormal-frame vector
        quad: Grid settings; ``quad.tol`` turns the error estimate into a check
        provider: Spherical values (defaults to the series for triv/π₁)

    Returns:
        TransformValue(value, error) with error = |I_h − I_{2h}|

    Raises:
        QuadratureError: If quad.tol is set and the error estimate exceeds it
        ResonanceError: If λ is integral on a root
    """
    quad = quad or QuadratureSpec()
    if math.isfinite(f.support) and f.support > quad.h_box:
        raise QuadratureError(f"support radius {f.support} exceeds the H box {quad.h_box}")
    values, errors = forward_transform_grid(pi, f, lam, quad, provider)
    result = TransformValue(complex(values[0]), float(errors[0]))
    if quad.tol is not None and result.error > quad.tol:
        raise QuadratureError(f"forward transform under-resolved: error {result.error:.3e} > {quad.tol:.3e}")
    return result


def forward_spectrum(
    pi,
    f: RadialFunction,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
) -> Spectrum:
    """Sample f^∧ on the λ-grid of ``quad``."""
    quad = quad or QuadratureSpec()
    grid = lambda_grid(f.system, quad)
    values, errors = forward_transform_grid(pi, f, grid.lams, quad, provider)
    return Spectrum(f.system, grid.t, values, errors)


# ==================== INVERSION ====================

def _dominant_points(R: RootSystemData, Hs) -> np.ndarray:
    Hs = np.atleast_2d(np.asarray(Hs, dtype=float)).reshape(-1, R.rank)
    dom = dominant_representative(R, Hs)
    for H in dom:
        if not is_strictly_dominant(R, H, 1e-12):
            raise ChamberError(f"H={tuple(H)} lies on a chamber wall")
    return dom


def _spectral_values(F, lams: np.ndarray) -> np.ndarray:
    return np.asarray(F(lams), dtype=complex).reshape(len(lams))


def _finish(fine, coarse, shell, quad: QuadratureSpec, what: str) -> tuple[np.ndarray, np.ndarray]:
    errors = np.abs(fine - coarse) + shell
    if quad.tol is not None and np.any(errors > quad.tol):
        raise QuadratureError(f"{what} error estimate {errors.max():.3e} exceeds {quad.tol:.3e}")
    return fine, errors


def inverse_grid(
    pi,
    F,
    Hs,
    R: RootSystemData,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Continuous-spectrum inversion at several points H (folded into the chamber)."""
    quad = quad or QuadratureSpec()
    Hs = _dominant_points(R, Hs)
    grid = lambda_grid(R, quad)
    weight = _spectral_values(F, grid.lams) * plancherel_density_array(pi, R, grid.t)
    keep = weight != 0
    if not np.any(keep):
        return np.zeros(len(Hs), dtype=complex), np.zeros(len(Hs))
    provider = provider or default_provider(pi, quad.max_height)
    order = len(weyl_group(R))
    ups = provider.spherical(pi, R, grid.lams[keep], Hs)
    integrand = weight[keep][:, None] * ups / order
    fine = grid.weights[keep] @ integrand
    coarse = grid.coarse_weights[keep] @ integrand
    shell = np.abs(integrand[grid.shell[keep]]).T @ grid.weights[keep][grid.shell[keep]]
    return _finish(fine, coarse, shell, quad, "inverse transform")


def inverse_continuous(
    pi,
    F,
    H,
    R: Optional[RootSystemData] = None,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
) -> TransformValue:
    """
    f(H) = (1/#W) ∫_{i a*} F(λ) Υ^π(φ_λ^π)(H) |c^π(λ)|^{-2} dλ.

    Args:
        pi: "triv" or "pi1" (π₂ only with a provider)
        F: Spectrum or callable on (B, r) λ-vectors
        H: Strictly dominant point
        R: Root system (taken from F when it is a Spectrum)

    Returns:
        TransformValue whose error adds |I_h − I_{2h}| and the outermost
        shell's contribution as a truncation estimate

    Raises:
        ChamberError: If H is not strictly dominant
        QuadratureError: If quad.tol is set and the estimate exceeds it
    """
    R = R if R is not None else F.system
    H = np.asarray(H, dtype=float).reshape(R.rank)
    if not is_strictly_dominant(R, H):
        raise ChamberError(f"H={tuple(H)} is not strictly dominant")
    values, errors = inverse_grid(pi, F, H[None, :], R, quad, provider)
    return TransformValue(complex(values[0]), float(errors[0]))


def check_contour(pi, R: RootSystemData, eta: Sequence[float]) -> None:
    """
    Check that c^π(−λ)^{-1} is regular on Re λ ∈ η − closure(a₊*).

    Raises:
        ChamberError: If η is not in −closure(a₊*)
        SingularRegionError: If the shifted region meets a singular line of π
    """
    pi = SmallKType.parse(pi)
    eta = np.asarray(eta, dtype=float).reshape(R.rank)
    if np.any(eta > 1e-12):
        raise ChamberError(f"η={tuple(eta)} is not in −closure(a₊*)")
    if pi is not SmallKType.PI2:
        return
    point = SpectralPoint.from_coroot(R, eta)
    for root in R.short_roots:
        if point.pairing(root).real >= -0.5:
            raise SingularRegionError(
                f"c^π₂(−λ)⁻¹ has a pole on λ_{root.label} = −1/2 inside η − closure(a₊*) for η={tuple(eta)}"
            )


def arthur_grid(
    pi,
    F,
    Hs,
    eta: Sequence[float],
    R: RootSystemData,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
) -> tuple[np.ndarray, np.ndarray]:
    quad = quad or QuadratureSpec()
    check_contour(pi, R, eta)
    Hs = _dominant_points(R, Hs)
    grid = lambda_grid(R, quad, eta)
    with np.errstate(all="ignore"):
        weight = _spectral_values(F, grid.lams) * np.exp(-log_c_array(pi, R, -grid.lams))
    weight = np.where(np.isfinite(weight), weight, 0)
    keep = weight != 0
    if not np.any(keep):
        return np.zeros(len(Hs), dtype=complex), np.zeros(len(Hs))
    provider = provider or default_provider(pi, quad.max_height)
    integrand = weight[keep][:, None] * provider.series(pi, R, grid.lams[keep], Hs)
    fine = grid.weights[keep] @ integrand
    coarse = grid.coarse_weights[keep] @ integrand
    shell = np.abs(integrand[grid.shell[keep]]).T @ grid.weights[keep][grid.shell[keep]]
    return _finish(fine, coarse, shell, quad, "shifted-contour inverse")


def arthur_inverse(
    pi,
    F,
    H,
    eta: Sequence[float],
    R: Optional[RootSystemData] = None,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
) -> TransformValue:
    """
    F^∨(H) = ∫_{η + i a*} F(λ) Φ_λ(H) c^π(−λ)^{-1} dλ.

    ``eta`` is given in coroot coordinates (λ_{α₁}, λ_{α₂}). For triv and π₁
    the value does not depend on η and equals ``inverse_continuous`` for
    W-invariant F. F must be analytic off the imaginary surface, so a
    sampled Spectrum is only accepted at η = 0.

    Raises:
        ChamberError: If η ∉ −closure(a₊*) or H is not strictly dominant
        SingularRegionError: If η is in a singular region for π
    """
    R = R if R is not None else F.system
    H = np.asarray(H, dtype=float).reshape(R.rank)
    if not is_strictly_dominant(R, H):
        raise ChamberError(f"H={tuple(H)} is not strictly dominant")
    values, errors = arthur_grid(pi, F, H[None, :], eta, R, quad, provider)
    return TransformValue(complex(values[0]), float(errors[0]))


# ==================== EUCLIDEAN DUALITY ====================

@dataclass(frozen=True)
class EuclideanRoundTrip:
    points: np.ndarray
    recovered: np.ndarray
    expected: np.ndarray

    @property
    def max_error(self) -> float:
        return float(np.max(np.abs(self.recovered - self.expected))) if len(self.points) else 0.0


def euclidean_round_trip(
    R: RootSystemData,
    f: RadialFunction,
    quad: Optional[QuadratureSpec] = None,
    points=None,
    chunk: int = 1024,
) -> EuclideanRoundTrip:
    """
    Euclidean Fourier transform and inverse with the (dH, dλ) pair used above.

    ĝ(ν) = ∫_a f(H) e^{−iν(H)} dH,  f(H) = ∫ ĝ(ν) e^{iν(H)} dλ,  λ = iν.
    """
    quad = quad or QuadratureSpec()
    hg = h_grid(R, quad, chamber_only=False)
    lg = lambda_grid(R, quad)
    nu = lg.lams.imag
    fv = f(hg.points) * hg.weights
    ghat = np.concatenate(
        [np.exp(-1j * nu[i:i + chunk] @ hg.points.T) @ fv for i in range(0, len(nu), chunk)]
    )
    if points is None:
        points = 0.3 * np.eye(R.rank)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    recovered = np.exp(1j * points @ nu.T) @ (ghat * lg.weights)
    return EuclideanRoundTrip(points, recovered, f(points))


# ==================== TESTING ====================

if __name__ == "__main__":
    from ..roots.rootsys import build_root_system

    R = build_root_system("A1")
    quad = QuadratureSpec(lambda_box=30, lambda_step=0.1, h_box=1.0, h_step=0.01, max_height=400)
    f = bump_function(R)
    print("📊 A1 triv round trip on the bump:")
    spectrum = forward_spectrum("triv", f, quad)
    print(f"  ├─ sampled f^∧ on {len(spectrum.t)} nodes (max error {spectrum.errors.max():.2e})")
    value = inverse_continuous("triv", spectrum, [0.6], quad=quad)
    print(f"  └─ f(0.6) = {f([[0.6]])[0].real:.8f}, recovered {value.value.real:.8f} ± {value.error:.1e}")
