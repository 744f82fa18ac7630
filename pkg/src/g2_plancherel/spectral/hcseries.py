"""
Harish-Chandra series and spherical functions for triv and π₁.

The series Φ_λ(H) = e^{(λ−ρ(k))(H)} Σ_μ Γ_μ(λ) e^{−μ(H)} is computed for a
root system R with multiplicity function k, i.e. for the radial operator
Δ + Σ_{β∈R⁺} k_β coth(β/2) ∂_β, with ρ(k) = ½ Σ k_β β. The coefficients obey

    ⟨μ, μ − 2λ⟩ Γ_μ = 2 Σ_β k_β Σ_{n≥1} Γ_{μ−nβ} ⟨μ − nβ + ρ(k) − λ, β⟩,  Γ_0 = 1.

Spherical functions for the small K-types are assembled from the c-expansion
Υ^π(φ_λ^π) = g_π Σ_w c^π(wλ) Φ_{wλ}, with engine systems

- triv: (Doubled(Σ), k = ½), gauge g ≡ 1
- π₁:   (Σ, k = ½), gauge g = Π_{α∈Σ⁺} (2 cosh(α/2))^{-1/2}

The gauge g = (δ_k/δ_{G/K})^{1/2} moves the engine series to the leading
exponent e^{(λ−ρ)(H)} of the G2 expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from ..config import DEFAULT_SERIES
from ..errors import ChamberError, ProviderError, ResonanceError, TailBoundError
from ..roots.rootsys import (
    Root,
    RootSystemData,
    SpectralPoint,
    doubled,
    is_strictly_dominant,
    weyl_group,
)
from .cfun import SmallKType, c_array


# ==================== MULTIPLICITIES ====================

@dataclass(frozen=True)
class MultiplicityFunction:
    """
    k on the roots, given per length class with optional per-label overrides.

    Overrides must stay constant on Weyl orbits; ``validate`` checks this.
    """

    short: float = 0.5
    long: float = 0.5
    overrides: tuple[tuple[str, float], ...] = ()

    @classmethod
    def uniform(cls, k: float) -> "MultiplicityFunction":
        return cls(short=k, long=k)

    def __call__(self, root: Root) -> float:
        for label, value in self.overrides:
            if label == root.label:
                return float(value)
        return float(self.short if root.length == "short" else self.long)

    def rho(self, R: RootSystemData) -> np.ndarray:
        return 0.5 * sum(self(r) * r.as_array() for r in R.positive_roots)

    def validate(self, R: RootSystemData) -> None:
        W = weyl_group(R)
        for r in R.positive_roots:
            for w in W:
                image = R.root(w.apply_coords(r.coords))
                pos = image if image.is_positive else R.root(tuple(-c for c in image.coords))
                if abs(self(pos) - self(r)) > 1e-15:
                    raise ValueError(f"k is not W-invariant: k({r.label}) != k({pos.label})")


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series value and its reported tail bound."""

    value: complex
    tail_bound: float
    max_height: int

    def __complex__(self) -> complex:
        return complex(self.value)


@dataclass
class CoeffTable:
    """Γ_μ(λ) for μ = Σ n_i α_i (R's simple basis) with Σ n_i ≤ max_height."""

    base: RootSystemData
    k: MultiplicityFunction
    lam: SpectralPoint
    max_height: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, mu: Sequence[int]) -> complex:
        return self.entries[tuple(int(n) for n in mu)]

    def __len__(self) -> int:
        return len(self.entries)


# ==================== SERIES ENGINE ====================

class SeriesEngine:
    """
    Recursion plan for one (R, k, max_height), evaluated on batches of λ.

    The plan lists, for every lattice point μ, the lower points μ − nβ that
    feed it together with the λ-independent part of their weights, so a
    batch of B spectral points costs one small gather per μ.
    """

    def __init__(
        self,
        R: RootSystemData,
        k: MultiplicityFunction,
        max_height: int = DEFAULT_SERIES["max_height"],
        resonance_tol: float = DEFAULT_SERIES["resonance_tol"],
        batch_size: int = DEFAULT_SERIES["batch_size"],
    ):
        if max_height < 0:
            raise ValueError(f"max_height must be >= 0, got {max_height}")
        self.R = R
        self.k = k
        self.max_height = int(max_height)
        self.resonance_tol = resonance_tol
        self.batch_size = batch_size

        self.mus = _lattice_points(R.rank, self.max_height)
        self.index = {mu: i for i, mu in enumerate(self.mus)}
        self.heights = np.asarray([sum(mu) for mu in self.mus])
        frame = np.asarray(R.frame)
        self.mu_vectors = np.asarray(self.mus, dtype=float) @ frame
        self.mu_norm2 = np.einsum("ij,ij->i", self.mu_vectors, self.mu_vectors)

        self.beta_vectors = R.positive_root_vectors()
        self.k_values = np.asarray([k(r) for r in R.positive_roots])
        self.rho_k = k.rho(R)
        self.simple_vectors = R.simple_root_vectors()
        self._plans = self._build_plans()

    def _build_plans(self):
        betas = [tuple(int(c) for c in r.coords) for r in self.R.positive_roots]
        nb = len(betas)
        plans = [None]
        for mu in self.mus[1:]:
            idx, weights, onehot = [], [], []
            for b, beta in enumerate(betas):
                n = 1
                while True:
                    lower = tuple(m - n * c for m, c in zip(mu, beta))
                    if any(x < 0 for x in lower):
                        break
                    nu = self.mu_vectors[self.index[lower]]
                    beta_vec = self.beta_vectors[b]
                    idx.append(self.index[lower])
                    weights.append(2 * self.k_values[b] * float((nu + self.rho_k) @ beta_vec))
                    row = np.zeros(nb)
                    row[b] = 1.0
                    onehot.append(row)
                    n += 1
            plans.append(
                (
                    np.asarray(idx, dtype=int),
                    np.asarray(weights, dtype=float),
                    np.asarray(onehot).reshape(len(idx), nb),
                )
            )
        return plans

    # ---------- coefficients ----------

    def coefficients(self, lams) -> np.ndarray:
        """Γ_μ(λ) for λ of shape (B, r) (orthonormal frame); returns (B, M)."""
        lams = np.atleast_2d(np.asarray(lams, dtype=complex))
        if lams.shape[0] > self.batch_size:
            return np.vstack(
                [self.coefficients(lams[i:i + self.batch_size]) for i in range(0, lams.shape[0], self.batch_size)]
            )
        B, M = lams.shape[0], len(self.mus)
        G = np.zeros((B, M), dtype=complex)
        G[:, 0] = 1.0
        two_k_lam = 2 * self.k_values[None, :] * (lams @ self.beta_vectors.T)
        denom = self.mu_norm2[None, :] - 2 * (lams @ self.mu_vectors.T)
        for m in range(1, M):
            d = denom[:, m]
            if np.any(np.abs(d) < self.resonance_tol):
                raise ResonanceError(
                    f"λ lies on the resonance hyperplane of μ={self.mus[m]} in {self.R.kind}"
                )
            idx, weights, onehot = self._plans[m]
            lower = G[:, idx]
            rhs = lower @ weights - ((lower @ onehot) * two_k_lam).sum(axis=1)
            G[:, m] = rhs / d
        return G

    # ---------- evaluation ----------

    def _geometric_tail(self, x: np.ndarray) -> np.ndarray:
        N = self.max_height
        if self.R.rank == 1:
            return x ** (N + 1) / (1 - x)
        return x ** (N + 1) * ((N + 2) - (N + 1) * x) / (1 - x) ** 2

    def evaluate(self, lams, Hs, coefficients: Optional[np.ndarray] = None) -> tuple[np.ndarray, np.ndarray]:
        """
        Φ_λ(H) for λ of shape (B, r) and strictly dominant H of shape (n, r).

        Returns:
            (values, tail bounds), both of shape (B, n)
        """
        lams = np.atleast_2d(np.asarray(lams, dtype=complex))
        Hs = np.atleast_2d(np.asarray(Hs, dtype=float))
        G = self.coefficients(lams) if coefficients is None else coefficients
        E = np.exp(-(self.mu_vectors @ Hs.T))
        lead = np.exp(lams @ Hs.T - (Hs @ self.rho_k)[None, :])
        values = lead * (G @ E)

        last = self.heights >= self.max_height - 1
        A = np.abs(G[:, last]).max(axis=1)
        x = np.exp(-(Hs @ self.simple_vectors.T).min(axis=1))
        tail = A[:, None] * self._geometric_tail(x)[None, :] * np.abs(lead)
        return values, tail


def _lattice_points(rank: int, max_height: int) -> list[tuple[int, ...]]:
    """ℕ-combinations of simple roots ordered by height, then lexicographically."""
    if rank == 1:
        return [(h,) for h in range(max_height + 1)]
    pts = []
    for h in range(max_height + 1):
        for n1 in range(h, -1, -1):
            pts.append((n1, h - n1))
    return pts


@lru_cache(maxsize=32)
def series_engine(R: RootSystemData, k: MultiplicityFunction, max_height: int) -> SeriesEngine:
    return SeriesEngine(R, k, max_height)


# ==================== SCALAR API ====================

def _check_dominant(R: RootSystemData, H) -> np.ndarray:
    H = np.asarray(H, dtype=float).reshape(R.rank)
    if not is_strictly_dominant(R, H):
        raise ChamberError(f"H={tuple(H)} is not strictly dominant for {R.kind}")
    return H


def coeff_table(
    R: RootSystemData,
    k: MultiplicityFunction,
    lam: SpectralPoint,
    max_height: int = DEFAULT_SERIES["max_height"],
    resonance_tol: float = DEFAULT_SERIES["resonance_tol"],
) -> CoeffTable:
    """
    Γ_μ(λ) for all μ of height ≤ max_height.

    Raises:
        ResonanceError: If |⟨μ, μ − 2λ⟩| ≤ resonance_tol for some μ ≠ 0
        ValueError: If max_height < 0
    """
    engine = SeriesEngine(R, k, max_height, resonance_tol)
    G = engine.coefficients(lam.as_array()[None, :])[0]
    return CoeffTable(
        base=R,
        k=k,
        lam=lam,
        max_height=engine.max_height,
        entries={mu: complex(g) for mu, g in zip(engine.mus, G)},
    )


def phi(
    R: RootSystemData,
    k: MultiplicityFunction,
    lam: SpectralPoint,
    H,
    max_height: int = DEFAULT_SERIES["max_height"],
    tol: Optional[float] = None,
) -> SeriesValue:
    """
    Φ_λ(H) with a truncation bound.

    Raises:
        ChamberError: If H is not strictly dominant
        TailBoundError: If ``tol`` is given and the tail bound exceeds it
    """
    H = _check_dominant(R, H)
    engine = series_engine(R, k, int(max_height))
    values, tail = engine.evaluate(lam.as_array()[None, :], H[None, :])
    bound = float(tail[0, 0])
    if tol is not None and bound > tol:
        raise TailBoundError(f"series tail bound {bound:.3e} exceeds tolerance {tol:.3e}")
    return SeriesValue(complex(values[0, 0]), bound, engine.max_height)


# ==================== SPHERICAL FUNCTIONS ====================

@dataclass(frozen=True)
class RadialSystem:
    """The engine (R, k) and gauge used for one small K-type."""

    base: RootSystemData
    engine: RootSystemData
    k: MultiplicityFunction
    pi: SmallKType

    def gauge(self, Hs) -> np.ndarray:
        """(δ_k/δ_{G/K})^{1/2} at strictly dominant H of shape (n, r)."""
        Hs = np.atleast_2d(np.asarray(Hs, dtype=float))
        log_dk = sum(
            2 * self.k(b) * np.log(np.abs(2 * np.sinh(Hs @ b.as_array() / 2)))
            for b in self.engine.positive_roots
        )
        log_dg = sum(
            a.multiplicity * np.log(np.abs(2 * np.sinh(Hs @ a.as_array())))
            for a in self.base.positive_roots
        )
        return np.exp(0.5 * (log_dk - log_dg))


def radial_system(R: RootSystemData, pi) -> RadialSystem:
    """
    Engine system for Υ^π.

    Raises:
        ProviderError: For π₂, which has no Heckman–Opdam radial system here
    """
    pi = SmallKType.parse(pi)
    if pi is SmallKType.TRIV:
        return RadialSystem(R, doubled(R), MultiplicityFunction.uniform(0.5), pi)
    if pi is SmallKType.PI1:
        return RadialSystem(R, R, MultiplicityFunction.uniform(0.5), pi)
    raise ProviderError("π₂ spherical functions need an external spherical provider")


def check_integrality(rs: RadialSystem, lams, tol: float = DEFAULT_SERIES["resonance_tol"]) -> None:
    """Raise ResonanceError if some λ_β (β in the engine system) is an integer."""
    lams = np.atleast_2d(np.asarray(lams, dtype=complex))
    vecs = rs.engine.positive_root_vectors()
    coroots = 2 * vecs / np.einsum("ij,ij->i", vecs, vecs)[:, None]
    x = lams @ coroots.T
    if np.any(np.abs(x - np.round(x.real)) < tol):
        raise ResonanceError("λ_β is an integer for some root β; the c-expansion is singular there")


def upsilon_grid(
    pi,
    R: RootSystemData,
    lams,
    Hs,
    max_height: int = DEFAULT_SERIES["max_height"],
) -> tuple[np.ndarray, np.ndarray]:
    """
    Υ^π(φ_λ^π)(H) for λ of shape (B, r) and dominant H of shape (n, r).

    Returns:
        (values, tail bounds) of shape (B, n)
    """
    rs = radial_system(R, pi)
    lams = np.atleast_2d(np.asarray(lams, dtype=complex))
    Hs = np.atleast_2d(np.asarray(Hs, dtype=float))
    check_integrality(rs, lams)
    engine = series_engine(rs.engine, rs.k, int(max_height))
    total = np.zeros((lams.shape[0], Hs.shape[0]), dtype=complex)
    tails = np.zeros(total.shape)
    for w in weyl_group(R):
        lw = w.apply(lams)
        c = c_array(rs.pi, R, lw)
        values, tail = engine.evaluate(lw, Hs)
        total += c[:, None] * values
        tails += np.abs(c)[:, None] * tail
    g = rs.gauge(Hs)[None, :]
    return total * g, tails * g


def upsilon_phi(
    pi,
    lam: SpectralPoint,
    H,
    max_height: int = DEFAULT_SERIES["max_height"],
) -> complex:
    """
    Υ^π(φ_λ^π)(H) = g_π(H) Σ_{w∈W} c^π(wλ) Φ_{wλ}(H) for π ∈ {triv, π₁}.

    Args:
        pi: "triv" or "pi1"
        lam: Spectral point with λ_β ∉ ℤ for the engine roots
        H: Strictly dominant point of a (orthonormal frame)
        max_height: Series truncation height

    Raises:
        ResonanceError: If λ is integral on some root
        ChamberError: If H is not strictly dominant
        ProviderError: For π₂
    """
    R = lam.system
    H = _check_dominant(R, H)
    values, _ = upsilon_grid(pi, R, lam.as_array()[None, :], H[None, :], max_height)
    return complex(values[0, 0])


# ==================== TESTING ====================

if __name__ == "__main__":
    from ..roots.rootsys import build_root_system

    R = build_root_system("G2")
    lam = SpectralPoint.from_coroot(R, [1.3 + 0.2j, 0.9 - 0.1j])
    H = 0.6 * R.rho / np.linalg.norm(R.rho)
    print("📊 Harish-Chandra series at a sample point:")
    for pi in ("triv", "pi1"):
        print(f"  ├─ Υ^{pi}(φ_λ)(H) = {upsilon_phi(pi, lam, H):.10f}")
    print("  └─ done")
