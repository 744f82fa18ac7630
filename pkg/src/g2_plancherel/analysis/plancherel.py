"""
Residue calculus for the π₂ inversion formula on split G2.

- Singular lines λ_β = −½ (β short) of c^{π₂}(−λ)⁻¹ and the regions I–IV
  they cut out of −closure(a₊*)
- Numerical residues (symmetric ε-limit with Richardson extrapolation, and
  a small-circle trapezoid integral) checked against the closed forms
- The line density p and its factorization into the two residue pieces
- Contour-shift bookkeeping and the assembled inversion / Plancherel sums

Coordinates on a line λ_γ = z (γ = 2α₁+α₂) use t = λ_{α₂}: then
λ_{α₁} = (z − 3t)/2 and λ_{α₂} = t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from ..config import DEFAULT_RESIDUE, DEFAULT_TOLERANCES
from ..errors import ChamberError, ToleranceError
from ..roots.rootsys import (
    Root,
    RootSystemData,
    SpectralPoint,
    WeylElement,
    build_root_system,
    weyl_group,
    weyl_positivity_set,
)
from ..special.cgamma import gamma_ratio
from ..spectral.cfun import SmallKType, c_function, c_split_long_short, mu_density, plancherel_density_array
from .transform import (
    QuadratureSpec,
    RadialFunction,
    SphericalProvider,
    default_provider,
    delta_weight_array,
    forward_transform_grid,
    h_grid,
    inverse_grid,
    lambda_grid,
)

GAMMA = "2a1+a2"
LINE_VALUE = -0.5


def _g2(R: Optional[RootSystemData]) -> RootSystemData:
    return R if R is not None else build_root_system("G2")


def line_point(R: RootSystemData, t: complex, z: complex = LINE_VALUE) -> SpectralPoint:
    """λ with λ_{2α₁+α₂} = z and λ_{α₂} = t."""
    return SpectralPoint.from_coroot(R, [(z - 3 * t) / 2, t])


def c1_constant(R: Optional[RootSystemData] = None) -> float:
    """c₁ = ‖α₁‖·‖3α₁+2α₂‖/4 in the active metric (√3/2 at scale 1)."""
    R = _g2(R)
    return float(np.linalg.norm(R.root("a1").as_array()) * np.linalg.norm(R.root("3a1+2a2").as_array()) / 4)


# ==================== GEOMETRY ====================

@dataclass(frozen=True)
class SingularLine:
    """The affine line λ_root = value."""

    root: Root
    value: float = LINE_VALUE

    @property
    def label(self) -> str:
        return f"lambda_{self.root.label} = {self.value:g}"

    def distance(self, lam: SpectralPoint) -> float:
        return abs(lam.pairing(self.root) - self.value)


class RegionLabel(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


def singular_lines(pi, R: Optional[RootSystemData] = None) -> list[SingularLine]:
    """Lines λ_β = −½ (β short) for π₂; none for triv and π₁."""
    R = _g2(R)
    if SmallKType.parse(pi) is not SmallKType.PI2:
        return []
    return [SingularLine(R.root(label)) for label in ("a1", "a1+a2", "2a1+a2")]


def region_of(eta: Sequence[float], R: Optional[RootSystemData] = None, tol: float = 1e-12) -> RegionLabel:
    """
    Classify a real point of −closure(a₊*) given in coroot coordinates.

    Raises:
        ChamberError: If η is outside −closure(a₊*) or on a singular line

    Example:
        >>> region_of([0.0, 0.0]).value
        'IV'
    """
    R = _g2(R)
    x1, x2 = (float(v) for v in eta)
    if x1 > tol or x2 > tol:
        raise ChamberError(f"η=({x1}, {x2}) is not in −closure(a₊*)")
    lam = SpectralPoint.from_coroot(R, [x1, x2])
    for line in singular_lines("pi2", R):
        if line.distance(lam) < tol:
            raise ChamberError(f"η=({x1}, {x2}) lies on the singular line {line.label}")
    a1 = x1
    a1a2 = lam.pairing("a1+a2").real
    g = lam.pairing(GAMMA).real
    if a1 < -0.5:
        return RegionLabel.I
    if a1a2 < -0.5:
        return RegionLabel.II
    if g < -0.5:
        return RegionLabel.III
    return RegionLabel.IV


def _region_inequalities(label: RegionLabel, x1: float, x2: float) -> bool:
    # restated from the pairings λ_{α₁+α₂} = x1+3x2 and λ_{2α₁+α₂} = 2x1+3x2
    a1a2, g = x1 + 3 * x2, 2 * x1 + 3 * x2
    inside = x1 <= 0 and x2 <= 0
    return inside and {
        RegionLabel.I: x1 < -0.5,
        RegionLabel.II: -0.5 < x1 and a1a2 < -0.5,
        RegionLabel.III: a1a2 > -0.5 and g < -0.5,
        RegionLabel.IV: g > -0.5,
    }[label]


def region_scan(n: int = 100, R: Optional[RootSystemData] = None, seed: int = 0, extent: float = 3.0) -> pd.DataFrame:
    """
    Label n deterministic points of −closure(a₊*) off the singular lines.

    Returns:
        DataFrame with lambda_a1, lambda_a2, region and ``consistent`` (the
        label re-checked against the region inequalities)
    """
    R = _g2(R)
    rng = np.random.default_rng(seed)
    rows = []
    while len(rows) < n:
        x1, x2 = -extent * rng.random(2)
        try:
            label = region_of([x1, x2], R, tol=1e-6)
        except ChamberError:
            continue
        rows.append(
            {
                "lambda_a1": x1,
                "lambda_a2": x2,
                "region": label.value,
                "consistent": _region_inequalities(label, x1, x2),
            }
        )
    return pd.DataFrame(rows)


# ==================== RESIDUES ====================

def residue_limit(g: Callable[[complex], complex], z0: complex, eps: Sequence[float] = DEFAULT_RESIDUE["eps"]) -> complex:
    """Richardson-extrapolated ε(g(z₀+ε) − g(z₀−ε))/2 for a simple pole."""
    e1, e2 = eps
    r1 = e1 * (g(z0 + e1) - g(z0 - e1)) / 2
    r2 = e2 * (g(z0 + e2) - g(z0 - e2)) / 2
    q = (e1 / e2) ** 2
    return (q * r2 - r1) / (q - 1)


def residue_circle(
    g: Callable[[complex], complex],
    z0: complex,
    radius: float = DEFAULT_RESIDUE["circle_radius"],
    nodes: int = DEFAULT_RESIDUE["circle_nodes"],
) -> complex:
    """(1/2πi)∮ g dz on |z − z₀| = radius by the trapezoid rule."""
    theta = 2 * np.pi * np.arange(nodes) / nodes
    total = sum(g(z0 + radius * cmath.exp(1j * th)) * cmath.exp(1j * th) for th in theta)
    return radius * total / nodes


def kernel_identity(z: complex) -> tuple[complex, complex]:
    """
    Both sides of the rank-one identity
    (z−½)Γ(z)/Γ(z+3/2) · (−z−½)Γ(−z)/Γ(−z+3/2) = −cos πz/(z sin πz).
    """
    z = complex(z)
    lhs = (z - 0.5) * gamma_ratio(z, z + 1.5) * (-z - 0.5) * gamma_ratio(-z, -z + 1.5)
    rhs = -cmath.cos(math.pi * z) / (z * cmath.sin(math.pi * z))
    return lhs, rhs


def restemp0(t: complex) -> complex:
    """(4t³ − t) sin πt / (16 cos πt)."""
    t = complex(t)
    return (4 * t ** 3 - t) * cmath.sin(math.pi * t) / (16 * cmath.cos(math.pi * t))


def restemp(t: complex) -> complex:
    """(36t² − 1)/(32π)."""
    t = complex(t)
    return (36 * t ** 2 - 1) / (32 * math.pi)


def long_part_on_line(R: RootSystemData, t: complex) -> complex:
    """(c_l(λ) c_l(−λ))⁻¹ evaluated numerically on λ_{2α₁+α₂} = −½."""
    lam = line_point(R, t)
    cl_plus, _ = c_split_long_short(lam)
    cl_minus, _ = c_split_long_short(-lam)
    return 1 / (cl_plus * cl_minus)


def short_residue(R: RootSystemData, w: WeylElement, t: complex, method: str = "limit") -> complex:
    """
    Res_{λ_{2α₁+α₂}=−½} c_s(−wλ)⁻¹ times c_s(wλ)⁻¹, at λ_{α₂} = t.

    Args:
        method: "limit" (ε-limit) or "circle" (contour integral)
    """

    def g(z):
        _, cs = c_split_long_short(-(line_point(R, t, z).act(w)))
        return 1 / cs

    res = residue_limit(g, LINE_VALUE) if method == "limit" else residue_circle(g, LINE_VALUE)
    _, cs_w = c_split_long_short(line_point(R, t).act(w))
    return res / cs_w


@dataclass
class ResidueLemmaReport:
    """Per-point comparison table plus the maximal deviations."""

    rows: pd.DataFrame
    max_long_error: float
    max_limit_error: float
    max_circle_error: float
    w_spread: float
    passed: bool


def residue_lemma_check(
    points: Optional[Sequence[complex]] = None,
    R: Optional[RootSystemData] = None,
    tol: float = DEFAULT_TOLERANCES["residue"],
    w_tol: float = DEFAULT_TOLERANCES["w_independence"],
    raise_on_failure: bool = True,
) -> ResidueLemmaReport:
    """
    Compare the numerical restriction and residue with their closed forms.

    (a) (c_l(λ)c_l(−λ))⁻¹ on the line against (4t³−t) sin πt/(16 cos πt);
    (b) Res c_s(−wλ)⁻¹ · c_s(wλ)⁻¹ against (36t²−1)/(32π) for every
        w ∈ W^{2α₁+α₂}, by ε-limit and by contour integral.

    Args:
        points: Values t = λ_{α₂} (default: 20 points of i[0.1, 3])
        R: G2 root data (any metric scale)
        tol: Allowed deviation from the closed forms
        w_tol: Allowed spread of (b) across the Weyl set

    Raises:
        ToleranceError: If ``raise_on_failure`` and a comparison fails
    """
    R = _g2(R)
    points = list(points) if points is not None else list(1j * np.linspace(0.1, 3.0, 20))
    weyl_set = weyl_positivity_set(R, GAMMA)
    rows = []
    spread = 0.0
    for t in points:
        long_num = long_part_on_line(R, t)
        long_closed = restemp0(t)
        closed = restemp(t)
        first = None
        for w in weyl_set:
            lim = short_residue(R, w, t, "limit")
            circ = short_residue(R, w, t, "circle")
            first = lim if first is None else first
            spread = max(spread, abs(lim - first))
            rows.append(
                {
                    "t": complex(t),
                    "w": w.label,
                    "long_numeric": long_num,
                    "long_closed": long_closed,
                    "residue_limit": lim,
                    "residue_circle": circ,
                    "residue_closed": closed,
                    "long_error": abs(long_num - long_closed),
                    "limit_error": abs(lim - closed),
                    "circle_error": abs(circ - closed),
                }
            )
    df = pd.DataFrame(rows)
    report = ResidueLemmaReport(
        rows=df,
        max_long_error=float(df["long_error"].max()),
        max_limit_error=float(df["limit_error"].max()),
        max_circle_error=float(df["circle_error"].max()),
        w_spread=spread,
        passed=False,
    )
    report.passed = (
        max(report.max_long_error, report.max_limit_error, report.max_circle_error) <= tol and spread <= w_tol
    )
    if raise_on_failure and not report.passed:
        raise ToleranceError(
            f"residue lemma mismatch: long {report.max_long_error:.2e}, limit {report.max_limit_error:.2e}, "
            f"circle {report.max_circle_error:.2e}, w-spread {spread:.2e}"
        )
    return report


# ==================== LINE DENSITY ====================

def residue_density_p(t: complex) -> complex:
    """
    p(t) = π(36t²−1)(4t³−t) sin πt / (2¹⁷ cos πt), with the removable
    points t = ±½ filled in.

    Example:
        >>> abs(residue_density_p(0))
        0.0
    """
    t = complex(t)
    cos = cmath.cos(math.pi * t)
    if abs(cos) < 1e-12 and abs(4 * t ** 3 - t) < 1e-12:
        return -(36 * t ** 2 - 1) * (12 * t ** 2 - 1) / 2 ** 17
    return math.pi * (36 * t ** 2 - 1) * (4 * t ** 3 - t) * cmath.sin(math.pi * t) / (2 ** 17 * cos)


def residue_density_tanh(s: float) -> float:
    """p(is) = −2⁻¹⁷ π (36s²+1)(4s²+1) s tanh(πs)."""
    s = float(s)
    return -math.pi * (36 * s ** 2 + 1) * (4 * s ** 2 + 1) * s * math.tanh(math.pi * s) / 2 ** 17


def line_weight(s, R: Optional[RootSystemData] = None):
    """−(c₁/4π) p(is), the nonnegative weight of the line term in ds."""
    c1 = c1_constant(R)
    s = np.asarray(s, dtype=float)
    p = -np.pi * (36 * s ** 2 + 1) * (4 * s ** 2 + 1) * s * np.tanh(np.pi * s) / 2 ** 17
    return -(c1 / (4 * np.pi)) * p


@dataclass(frozen=True)
class PowerTerm:
    """coefficient · 2^two · π^pi, kept exact."""

    coefficient: Fraction
    two: Fraction
    pi: Fraction

    def __mul__(self, other: "PowerTerm") -> "PowerTerm":
        return PowerTerm(self.coefficient * other.coefficient, self.two + other.two, self.pi + other.pi)


@dataclass(frozen=True)
class PFactorization:
    prefactor: PowerTerm
    long_piece: PowerTerm
    short_piece: PowerTerm

    @property
    def total(self) -> PowerTerm:
        return self.prefactor * self.long_piece * self.short_piece


def p_factorization() -> PFactorization:
    """
    Constant bookkeeping of p = (π/16)² · restemp0 · restemp.

    The t-dependent parts are (4t³−t) sin πt / cos πt and (36t²−1); the
    constants multiply to 2⁻¹⁷ π¹.
    """
    return PFactorization(
        prefactor=PowerTerm(Fraction(1), Fraction(-8), Fraction(2)),
        long_piece=PowerTerm(Fraction(1), Fraction(-4), Fraction(0)),
        short_piece=PowerTerm(Fraction(1), Fraction(-5), Fraction(-1)),
    )


def mu_residue(t: complex, R: Optional[RootSystemData] = None, method: str = "circle") -> complex:
    """Res_{λ_{2α₁+α₂}=−½} of the π₂ μ-function at λ_{α₂} = t, computed numerically."""
    R = _g2(R)

    def g(z):
        return mu_density(SmallKType.PI2, line_point(R, t, z))

    return residue_circle(g, LINE_VALUE) if method == "circle" else residue_limit(g, LINE_VALUE)


def line_density_scan(n: int = 200, R: Optional[RootSystemData] = None) -> pd.DataFrame:
    """
    p on the real segment of the line with λ_{3α₁+2α₂} ∈ (−1, 0].

    The other two short lines cross there at t = ±1/6, where (36t²−1)
    vanishes; every sampled value must be finite.
    """
    R = _g2(R)
    rows = []
    for coord in np.linspace(-1.0, 0.0, n + 1)[1:]:
        t = 2 * coord + 0.5
        rows.append({"lambda_3a1+2a2": coord, "t": t, "p": residue_density_p(t).real})
    for t in (1 / 6, -1 / 6):
        rows.append({"lambda_3a1+2a2": line_point(R, t).pairing("3a1+2a2").real, "t": t, "p": residue_density_p(t).real})
    return pd.DataFrame(rows)


# ==================== CONTOUR SHIFT ====================

@dataclass(frozen=True)
class ResidueTerm:
    """One line contribution: ∫ F · Υ · density over the free coordinate, times prefactor."""

    line: SingularLine
    weyl_set: tuple[WeylElement, ...]
    coordinate: str
    density: Callable[[complex], complex] = field(compare=False)
    prefactor: complex = 0j


def contour_shift_plan(pi, R: Optional[RootSystemData] = None) -> list[ResidueTerm]:
    """
    The line terms collected when shifting from region I to η = 0.

    π₂ gives a single term on λ_{2α₁+α₂} = −½ with Weyl set W^{2α₁+α₂},
    density p and prefactor −c₁/(4π i); triv and π₁ give none.
    """
    R = _g2(R)
    if SmallKType.parse(pi) is not SmallKType.PI2:
        return []
    return [
        ResidueTerm(
            line=SingularLine(R.root(GAMMA)),
            weyl_set=weyl_positivity_set(R, GAMMA),
            coordinate="a2",
            density=residue_density_p,
            prefactor=-c1_constant(R) / (4 * math.pi * 1j),
        )
    ]


def line_residue_terms(pi, R: Optional[RootSystemData] = None) -> list[ResidueTerm]:
    """
    The three unsymmetrised terms, one per short singular line.

    Term w ∈ {e, s₁, s₂s₁} sits on λ_{w(2α₁+α₂)} = −½ and integrates over
    λ_{wα₂}; the prefactor is −c₁/(2π i).
    """
    R = _g2(R)
    if SmallKType.parse(pi) is not SmallKType.PI2:
        return []
    W = weyl_group(R)
    gamma = R.root(GAMMA)
    alpha2 = R.root("a2")
    terms = []
    for word in ((), (1,), (2, 1)):
        w = W.element(word)
        terms.append(
            ResidueTerm(
                line=SingularLine(R.root(w.apply_coords(gamma.coords))),
                weyl_set=(w,),
                coordinate=R.root(w.apply_coords(alpha2.coords)).label,
                density=residue_density_p,
                prefactor=-c1_constant(R) / (2 * math.pi * 1j),
            )
        )
    return terms


def vanishing_off_weyl_set(R: Optional[RootSystemData] = None, t: complex = 0.7j) -> dict[str, bool]:
    """For w ∉ W^{2α₁+α₂}: whether c^{π₂}(wλ) vanishes on the line (it should)."""
    R = _g2(R)
    inside = set(weyl_positivity_set(R, GAMMA))
    lam = line_point(R, t)
    return {w.label: c_function(SmallKType.PI2, lam.act(w)).is_zero for w in weyl_group(R) if w not in inside}


# ==================== ASSEMBLY ====================

@dataclass(frozen=True)
class InversionResult:
    value: complex
    error: float
    continuous: complex
    residual: complex


def _line_lams(R: RootSystemData, s: np.ndarray) -> np.ndarray:
    t = 1j * s
    coords = np.stack([(LINE_VALUE - 3 * t) / 2, t], axis=1)
    return coords @ R.fundamental_weights


def _line_axis(quad: QuadratureSpec) -> np.ndarray:
    n = int(math.ceil(quad.lambda_box / quad.lambda_step))
    return np.arange(-n, n + 1) * quad.lambda_step


def inverse_transform_full(
    pi,
    F,
    H,
    R: Optional[RootSystemData] = None,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
    line_provider: Optional[SphericalProvider] = None,
) -> InversionResult:
    """
    Most-continuous term plus the line terms of ``contour_shift_plan``.

    The π₂ line term is −(c₁/4π) ∫ F(λ) Υ(φ_λ)(H) p(is) ds over
    λ_{2α₁+α₂} = −½, λ_{α₂} = is.

    Args:
        F: Callable on (B, 2) λ-vectors (it must extend to the line)
        provider: Spherical values on i a* (required for π₂)
        line_provider: Spherical values on the line (defaults to ``provider``)

    Raises:
        ProviderError: If π₂ is requested without a provider
    """
    R = _g2(R)
    quad = quad or QuadratureSpec()
    provider = provider or default_provider(pi, quad.max_height)
    H = np.asarray(H, dtype=float).reshape(1, R.rank)
    cont, cont_err = inverse_grid(pi, F, H, R, quad, provider)
    residual, error = 0j, float(cont_err[0])
    for term in contour_shift_plan(pi, R):
        s = _line_axis(quad)
        lams = _line_lams(R, s)
        ups = (line_provider or provider).spherical(pi, R, lams, H)[:, 0]
        density = np.asarray([term.density(1j * x) for x in s])
        integrand = np.asarray(F(lams), dtype=complex) * ups * density
        # dλ_{α₂} = i ds
        fine = term.prefactor * 1j * trapezoid(integrand, s)
        coarse = term.prefactor * 1j * trapezoid(integrand[::2], s[::2])
        residual += fine
        error += abs(fine - coarse)
    return InversionResult(complex(cont[0]) + residual, error, complex(cont[0]), residual)


@dataclass(frozen=True)
class PlancherelIdentity:
    lhs: float
    rhs: float
    line_part: float

    @property
    def rel_err(self) -> float:
        return abs(self.lhs - self.rhs) / max(abs(self.lhs), 1e-300)


def plancherel_identity(
    pi,
    f: RadialFunction,
    quad: Optional[QuadratureSpec] = None,
    provider: Optional[SphericalProvider] = None,
) -> PlancherelIdentity:
    """
    (1/#W)∫|f|²δ dH against (1/#W)∫|f^∧|²|c|⁻² dλ (+ the π₂ line term).

    Example:
        >>> from g2_plancherel.roots.rootsys import build_root_system
        >>> from g2_plancherel.analysis.transform import bump_function
        >>> R = build_root_system("A1")
        >>> quad = QuadratureSpec(lambda_box=30, h_box=1.0, h_step=0.01, max_height=400)
        >>> plancherel_identity("triv", bump_function(R), quad).rel_err < 1e-3
        True
    """
    quad = quad or QuadratureSpec()
    R = f.system
    hg = h_grid(R, quad)
    lhs = float(np.sum(np.abs(f(hg.points)) ** 2 * delta_weight_array(R, hg.points) * hg.weights))

    lg = lambda_grid(R, quad)
    fhat, _ = forward_transform_grid(pi, f, lg.lams, quad, provider)
    order = len(weyl_group(R))
    rhs = float(np.sum(np.abs(fhat) ** 2 * plancherel_density_array(pi, R, lg.t) * lg.weights) / order)

    line_part = 0.0
    plan = contour_shift_plan(pi, R) if R.base_kind == "G2" else []
    if plan:
        s = _line_axis(quad)
        fline, _ = forward_transform_grid(pi, f, _line_lams(R, s), quad, provider)
        line_part += float(trapezoid(np.abs(fline) ** 2 * line_weight(s, R), s))
    return PlancherelIdentity(lhs, rhs + line_part, line_part)


# ==================== DENSITY TABLES ====================

def density_frame(
    pi,
    R: Optional[RootSystemData] = None,
    box: float = 5.0,
    step: float = 0.1,
) -> pd.DataFrame:
    """
    Rows (section, x1, x2, value): |c^π(iν)|⁻² over the coroot box, and for
    π₂ the line weight −(c₁/4π)p(is) over s ∈ [−box, box].
    """
    R = _g2(R)
    axis = np.arange(-box, box + step / 2, step)
    mesh = np.meshgrid(*([axis] * R.rank), indexing="ij")
    t = np.stack([m.ravel() for m in mesh], axis=1)
    grid = pd.DataFrame(
        {
            "section": "grid",
            "x1": t[:, 0],
            "x2": t[:, 1] if R.rank > 1 else np.nan,
            "value": plancherel_density_array(pi, R, t),
        }
    )
    if SmallKType.parse(pi) is not SmallKType.PI2:
        return grid
    line = pd.DataFrame({"section": "line", "x1": axis, "x2": np.nan, "value": line_weight(axis, R)})
    return pd.concat([grid, line], ignore_index=True)


# ==================== TESTING ====================

if __name__ == "__main__":
    R = build_root_system("G2")
    print("📊 Residue lemma at λ_α₂ = i:")
    report = residue_lemma_check([1j], R)
    print(f"  ├─ long piece error: {report.max_long_error:.2e}")
    print(f"  ├─ residue errors (limit / circle): {report.max_limit_error:.2e} / {report.max_circle_error:.2e}")
    print(f"  ├─ p(i) = {residue_density_p(1j).real:.6e}")
    print(f"  └─ line weight at s=1: {float(line_weight(1.0, R)):.6e}")
