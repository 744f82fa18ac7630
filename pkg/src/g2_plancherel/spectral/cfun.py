"""
Harish-Chandra c-functions for the small K-types of split G2.

- Rank-one SL(2) factors with weight ν and their duplication-collapsed forms
- The product formula c = c₀ Π c_{β_k} along a reduced word of w*
- The closed forms for triv, π₁ and π₂, and the long/short split of c^{π₂}
- μ-function (c(λ)c(−λ))⁻¹ and the Plancherel density |c(iν)|⁻²

Values are accumulated in log space; poles and zeros are carried as integer
orders so that densities on singular sets come out as 0 or ``inf`` instead
of NaN.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..roots.rootsys import (
    LONG,
    SHORT,
    RootSystemData,
    SpectralPoint,
    beta_sequence,
    build_root_system,
)
from ..special.cgamma import POLE_TOL, log_gamma_array, log_gamma_quotient

LOG2 = math.log(2.0)
LOGPI = math.log(math.pi)


# ==================== K-TYPES ====================

class SmallKType(Enum):
    """The three small K-types; ``weight`` is the SL(2) weight ν per root length."""

    TRIV = "triv"
    PI1 = "pi1"
    PI2 = "pi2"

    def weight(self, length_class: str) -> Fraction:
        if self is SmallKType.TRIV:
            return Fraction(0)
        if self is SmallKType.PI1:
            return Fraction(1, 2)
        return Fraction(3, 2) if length_class == SHORT else Fraction(1, 2)

    @classmethod
    def parse(cls, value) -> "SmallKType":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown K-type {value!r}; expected one of triv, pi1, pi2") from None


# Closed-form prefactors of c^π for G2.
CLOSED_FORM_PREFACTOR = {
    SmallKType.TRIV: 2 / math.pi,
    SmallKType.PI1: 16 / math.pi,
    SmallKType.PI2: 16 / math.pi,
}


@dataclass(frozen=True)
class CFunctionValue:
    """
    A c-function value with pole/zero bookkeeping.

    ``order`` is the net order: positive for a pole, negative for a zero
    (its absolute value is the multiplicity), 0 for a regular nonzero value.
    """

    value: complex
    is_pole: bool = False
    is_zero: bool = False
    order: int = 0

    def __complex__(self) -> complex:
        return complex(self.value)


def _assemble(log_value: complex, order: int) -> CFunctionValue:
    if order > 0:
        return CFunctionValue(complex(math.inf, 0.0), is_pole=True, order=order)
    if order < 0:
        return CFunctionValue(0j, is_zero=True, order=order)
    return CFunctionValue(cmath.exp(log_value))


def _linear_zero(x: complex, root: complex, tol: float = POLE_TOL) -> tuple[complex, int]:
    """log(x − root) and its zero order (−1 if x sits on the root)."""
    d = complex(x) - root
    if abs(d) < tol:
        return 0j, -1
    return cmath.log(d), 0


# ==================== RANK-ONE FACTORS ====================

def _sl2_log(mu: complex, nu: Fraction) -> tuple[complex, int]:
    mu = complex(mu)
    nu = float(nu)
    log_val, order = log_gamma_quotient(
        [(mu, 1.0)],
        [((mu + 1 + nu) / 2, 0.5), ((mu + 1 - nu) / 2, 0.5)],
    )
    return (1 - mu) * LOG2 + log_val, order


def sl2_factor(mu: complex, nu) -> CFunctionValue:
    """
    c(μ) = 2^{1−μ} Γ(μ) / (Γ((μ+1+ν)/2) Γ((μ+1−ν)/2)).

    Example:
        >>> abs(sl2_factor(1, 0).value - 1) < 1e-14
        True
    """
    return _assemble(*_sl2_log(mu, Fraction(nu)))


def _collapsed_log(mu: complex, nu: Fraction) -> tuple[complex, int]:
    mu = complex(mu)
    if nu == 0:
        log_val, order = log_gamma_quotient([(mu / 2, 0.5)], [(mu / 2 + 0.5, 0.5)])
        return -0.5 * LOGPI + log_val, order
    if nu == Fraction(1, 2):
        log_val, order = log_gamma_quotient([(mu, 1.0)], [(mu + 0.5, 1.0)])
        return 0.5 * (LOG2 - LOGPI) + log_val, order
    if nu == Fraction(3, 2):
        log_val, order = log_gamma_quotient([(mu, 1.0)], [(mu + 1.5, 1.0)])
        lin, zero = _linear_zero(mu, 0.5)
        return 0.5 * (LOG2 - LOGPI) + lin + log_val, order + zero
    raise ValueError(f"no collapsed form for weight ν={nu}")


def collapsed_factor(mu: complex, nu) -> CFunctionValue:
    """Duplication-collapsed rank-one factor for ν ∈ {0, 1/2, 3/2}."""
    return _assemble(*_collapsed_log(mu, Fraction(nu)))


# ==================== NORMALIZATION ====================

def normalization_c0(kind: str = "G2") -> float:
    """
    The constant c₀ of the product formula.

    For G2 this is 2π²; other kinds get the value fixed by c^{triv}(ρ) = 1.
    """
    if kind == "G2":
        return 2 * math.pi ** 2
    return _solve_c0(build_root_system(kind))


def _solve_c0(R: RootSystemData) -> float:
    rho = SpectralPoint.rho(R)
    log_val = 0j
    for beta in beta_sequence(R):
        lv, order = _sl2_log(rho.pairing(beta), Fraction(0))
        if order != 0:
            raise ValueError(f"rank-one factor singular at ρ for {beta.label}")
        log_val += lv
    return float(cmath.exp(-log_val).real)


def verify_c0(R: Optional[RootSystemData] = None) -> float:
    """Solve c₀ · Π sl2_factor(ρ_{β_k}, 0) = 1 numerically."""
    return _solve_c0(R if R is not None else build_root_system("G2"))


# ==================== PRODUCT FORMULA ====================

def _gk_log(R: RootSystemData, pi: SmallKType, lam: SpectralPoint, word=None) -> tuple[complex, int]:
    log_val = complex(math.log(normalization_c0(R.kind)))
    order = 0
    for beta in beta_sequence(R, word):
        lv, o = _sl2_log(lam.pairing(beta), pi.weight(beta.length))
        log_val += lv
        order += o
    return log_val, order


def gk_product(
    R: RootSystemData,
    pi,
    lam: SpectralPoint,
    word: Sequence[int] | None = None,
) -> CFunctionValue:
    """
    c^π(λ) = c₀ Π_k c_{β_k}^π(λ) along a reduced word of the longest element.

    Args:
        R: Base root system (G2, or A1/A1xA1 for tests)
        pi: Small K-type
        lam: Spectral point
        word: Reduced word for w* (defaults to the stored one)

    Returns:
        CFunctionValue with pole/zero bookkeeping
    """
    return _assemble(*_gk_log(R, SmallKType.parse(pi), lam, word))


# ==================== CLOSED FORMS (G2) ====================

def _g2(lam: SpectralPoint) -> RootSystemData:
    return build_root_system("G2", lam.system.metric_scale)


def _closed_log(pi: SmallKType, lam: SpectralPoint) -> tuple[complex, int]:
    R = _g2(lam)
    log_val = complex(math.log(CLOSED_FORM_PREFACTOR[pi]))
    order = 0
    for root in R.positive_roots:
        x = lam.pairing(root)
        if pi is SmallKType.TRIV:
            lv, o = log_gamma_quotient([(x / 2, 0.5)], [(x / 2 + 0.5, 0.5)])
        elif pi is SmallKType.PI2 and root.length == SHORT:
            lv, o = log_gamma_quotient([(x, 1.0)], [(x + 1.5, 1.0)])
            lin, z = _linear_zero(x, 0.5)
            lv, o = lv + lin, o + z
        else:
            lv, o = log_gamma_quotient([(x, 1.0)], [(x + 0.5, 1.0)])
        log_val += lv
        order += o
    return log_val, order


def closed_form_c(pi, lam: SpectralPoint) -> CFunctionValue:
    """
    The G2 closed forms:

    - triv: (2/π) Π Γ(λ_α/2)/Γ(λ_α/2 + 1/2)
    - π₁: (16/π) Π Γ(λ_α)/Γ(λ_α + 1/2)
    - π₂: (16/π) Π_long Γ(λ_α)/Γ(λ_α + 1/2) · Π_short (λ_β − 1/2)Γ(λ_β)/Γ(λ_β + 3/2)
    """
    return _assemble(*_closed_log(SmallKType.parse(pi), lam))


def c_split_long_short(lam: SpectralPoint) -> tuple[complex, complex]:
    """(c_l, c_s) with c^{π₂} = (16/π) c_l c_s."""
    R = _g2(lam)
    parts = []
    for roots, short in ((R.long_roots, False), (R.short_roots, True)):
        log_val, order = 0j, 0
        for root in roots:
            x = lam.pairing(root)
            if short:
                lv, o = log_gamma_quotient([(x, 1.0)], [(x + 1.5, 1.0)])
                lin, z = _linear_zero(x, 0.5)
                lv, o = lv + lin, o + z
            else:
                lv, o = log_gamma_quotient([(x, 1.0)], [(x + 0.5, 1.0)])
            log_val += lv
            order += o
        parts.append(_assemble(log_val, order).value)
    return parts[0], parts[1]


def c_function(pi, lam: SpectralPoint, R: Optional[RootSystemData] = None) -> CFunctionValue:
    """c^π(λ): closed form on G2, product formula on the small test systems."""
    pi = SmallKType.parse(pi)
    R = R if R is not None else lam.system
    if R.base_kind == "G2":
        return closed_form_c(pi, lam)
    return gk_product(build_root_system(R.base_kind, R.metric_scale), pi, lam)


def _c_log(pi: SmallKType, lam: SpectralPoint, R: Optional[RootSystemData]) -> tuple[complex, int]:
    R = R if R is not None else lam.system
    if R.base_kind == "G2":
        return _closed_log(pi, lam)
    return _gk_log(build_root_system(R.base_kind, R.metric_scale), pi, lam)


# ==================== DENSITIES ====================

def mu_density(pi, lam: SpectralPoint, R: Optional[RootSystemData] = None) -> complex:
    """
    (c^π(λ) c^π(−λ))⁻¹.

    Returns ``inf`` at poles of the density and 0 at its zeros.
    """
    pi = SmallKType.parse(pi)
    lp, op = _c_log(pi, lam, R)
    lm, om = _c_log(pi, -lam, R)
    order = -(op + om)
    if order > 0:
        return complex(math.inf, 0.0)
    if order < 0:
        return 0j
    return cmath.exp(-(lp + lm))


def plancherel_density(pi, t: Sequence[float], R: Optional[RootSystemData] = None) -> float:
    """
    |c^π(λ)|⁻² at λ = i·t, with t given in coroot coordinates.

    Zero where c has a pole (e.g. the walls through 0 for triv).
    """
    pi = SmallKType.parse(pi)
    R = R if R is not None else build_root_system("G2")
    lam = SpectralPoint.from_coroot(R, 1j * np.asarray(t, dtype=float))
    log_val, order = _c_log(pi, lam, R)
    if order > 0:
        return 0.0
    if order < 0:
        return math.inf
    return math.exp(-2 * log_val.real)


# ==================== VECTORIZED ====================

def _pairings(R: RootSystemData, lam_vectors: np.ndarray, roots) -> np.ndarray:
    vecs = np.vstack([r.as_array() for r in roots])
    coroots = 2 * vecs / np.einsum("ij,ij->i", vecs, vecs)[:, None]
    return np.asarray(lam_vectors, dtype=complex) @ coroots.T


def log_c_array(pi, R: RootSystemData, lam_vectors) -> np.ndarray:
    """
    log c^π for a batch of λ (orthonormal frame, shape (B, r)).

    Poles give +inf real part, zeros −inf; simultaneous cancellations are
    not resolved here (callers evaluate off the singular sets).
    """
    pi = SmallKType.parse(pi)
    lam_vectors = np.atleast_2d(np.asarray(lam_vectors, dtype=complex))
    base = build_root_system(R.base_kind, R.metric_scale)
    out = np.zeros(lam_vectors.shape[0], dtype=complex)
    with np.errstate(all="ignore"):
        if base.kind == "G2":
            out += math.log(CLOSED_FORM_PREFACTOR[pi])
            for root in base.positive_roots:
                x = _pairings(base, lam_vectors, [root])[:, 0]
                if pi is SmallKType.TRIV:
                    out += log_gamma_array(x / 2) - log_gamma_array(x / 2 + 0.5)
                elif pi is SmallKType.PI2 and root.length == SHORT:
                    out += np.log(x - 0.5) + log_gamma_array(x) - log_gamma_array(x + 1.5)
                else:
                    out += log_gamma_array(x) - log_gamma_array(x + 0.5)
        else:
            out += math.log(normalization_c0(base.kind))
            for root in base.positive_roots:
                x = _pairings(base, lam_vectors, [root])[:, 0]
                nu = float(pi.weight(root.length))
                out += (
                    (1 - x) * LOG2
                    + log_gamma_array(x)
                    - log_gamma_array((x + 1 + nu) / 2)
                    - log_gamma_array((x + 1 - nu) / 2)
                )
    return out


def c_array(pi, R: RootSystemData, lam_vectors) -> np.ndarray:
    with np.errstate(all="ignore"):
        return np.exp(log_c_array(pi, R, lam_vectors))


def plancherel_density_array(pi, R: RootSystemData, t_coroot) -> np.ndarray:
    """|c^π(i t)|⁻² for t of shape (B, r) in coroot coordinates."""
    t = np.atleast_2d(np.asarray(t_coroot, dtype=float))
    lam = 1j * t @ R.fundamental_weights
    with np.errstate(all="ignore"):
        dens = np.exp(-2 * log_c_array(pi, R, lam).real)
    return np.where(np.isnan(dens), 0.0, dens)


# ==================== TESTING ====================

if __name__ == "__main__":
    R = build_root_system("G2")
    rho = SpectralPoint.rho(R)
    print("📊 c-functions at ρ:")
    for pi in SmallKType:
        print(f"  ├─ {pi.value:4s}: closed = {closed_form_c(pi, rho).value:.12f}, "
              f"product = {gk_product(R, pi, rho).value:.12f}")
    print(f"  └─ c₀ solved = {verify_c0():.12f} (2π² = {2 * math.pi ** 2:.12f})")
