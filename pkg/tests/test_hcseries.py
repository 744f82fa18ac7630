"""
Tests for the Harish-Chandra series and the spherical functions built on it.
"""

import cmath
import math

import mpmath
import numpy as np
import pytest
from scipy import special

from g2_plancherel.errors import ChamberError, ProviderError, ResonanceError, TailBoundError
from g2_plancherel.roots.rootsys import SpectralPoint, doubled, weyl_group
from g2_plancherel.spectral.cfun import closed_form_c
from g2_plancherel.spectral.hcseries import (
    MultiplicityFunction,
    coeff_table,
    phi,
    radial_system,
    upsilon_grid,
    upsilon_phi,
)

HALF = MultiplicityFunction.uniform(0.5)


def _interior(R, value=1.0):
    """H with α_i(H) = value for both simple roots."""
    return np.linalg.solve(R.simple_root_vectors(), np.full(R.rank, value))


def test_a1_coefficients_match_hypergeometric(a1):
    """Γ_n = (k)_n (k−ℓ)_n / ((1−ℓ)_n n!) for heights ≤ 12."""
    engine = doubled(a1)
    lam = SpectralPoint.from_coroot(a1, [0.37])
    ell = lam.pairing(engine.positive_roots[0]).real
    table = coeff_table(engine, HALF, lam, 12)
    assert len(table) == 13
    for n in range(13):
        oracle = special.poch(0.5, n) * special.poch(0.5 - ell, n) / (special.poch(1 - ell, n) * math.factorial(n))
        assert abs(table[(n,)] - oracle) < 1e-10, f"Γ_{n} mismatch"


def test_a1_phi_matches_gauss_function(a1):
    """Φ_λ at H = 1 equals e^{(ℓ−k)x/2} ₂F₁(k, k−ℓ; 1−ℓ; e^{−x})."""
    engine = doubled(a1)
    lam = SpectralPoint.from_coroot(a1, [0.37])
    ell = lam.pairing(engine.positive_roots[0]).real
    H = np.array([1.0])
    x = float(engine.positive_roots[0].as_array() @ H)
    closed = math.exp((ell - 0.5) * x / 2) * special.hyp2f1(0.5, 0.5 - ell, 1 - ell, math.exp(-x))
    value = phi(engine, HALF, lam, H, max_height=40)
    assert abs(value.value - closed) < 1e-9, f"Φ = {value.value}, expected {closed}"
    assert value.tail_bound < 1e-12


def test_a1_spherical_function_matches_jacobi(a1):
    """Υ^triv on A1 is ₂F₁((1+ℓ)/4, (1−ℓ)/4; 1; −sinh² α(H))."""
    ell = 0.37 + 0.6j
    lam = SpectralPoint.from_coroot(a1, [ell])
    for h in (0.5, 0.9):
        H = np.array([h])
        t = float(a1.positive_roots[0].as_array() @ H)
        oracle = complex(mpmath.hyp2f1((1 + ell) / 4, (1 - ell) / 4, 1, -math.sinh(t) ** 2))
        got = upsilon_phi("triv", lam, H, max_height=200)
        assert abs(got - oracle) < 1e-9, f"Υ({h}) = {got}, expected {oracle}"


def test_constant_function_at_rho_limit(a1):
    """Near λ = ρ the spherical function is close to 1."""
    lam = SpectralPoint.from_coroot(a1, [1.0 + 1e-4j])
    got = upsilon_phi("triv", lam, np.array([0.6]), max_height=200)
    assert abs(got - 1) < 1e-3, f"φ near ρ should be ≈ 1, got {got}"


def test_limit_recovers_c_function(g2):
    """e^{t(ρ−λ)(H)} Υ(tH) → c(λ) at t = 25."""
    H = _interior(g2)
    t = 25.0
    samples = [(1.3 + 0.4j, 0.8 - 0.2j), (0.7 + 1.1j, 1.2 + 0.3j), (2.1 - 0.5j, 0.6 + 0.9j), (1.6, 1.45 + 0.1j), (0.9 - 1.2j, 1.7 - 0.4j)]
    for pi in ("triv", "pi1"):
        for x in samples:
            lam = SpectralPoint.from_coroot(g2, x)
            values, _ = upsilon_grid(pi, g2, lam.as_array()[None, :], t * H[None, :], max_height=10)
            scaled = cmath.exp(t * (float(g2.rho @ H) - lam.evaluate(H))) * values[0, 0]
            c = closed_form_c(pi, lam).value
            assert abs(scaled - c) < 1e-4, f"{pi} limit fails at {x}"


def test_weyl_invariance(g2):
    """Υ(wλ) = Υ(λ) for every w."""
    lam = SpectralPoint.from_coroot(g2, [0.37 + 0.8j, -0.21 + 1.3j])
    H = _interior(g2)
    for pi in ("triv", "pi1"):
        base = upsilon_phi(pi, lam, H, max_height=30)
        for w in weyl_group(g2):
            assert abs(upsilon_phi(pi, lam.act(w), H, max_height=30) - base) < 1e-10 * abs(base), f"{pi}, {w.label}"


def test_removable_singularity_at_origin(a1):
    """Υ stays continuous as λ approaches the wall λ = 0."""
    H = np.array([0.7])
    v1 = upsilon_phi("triv", SpectralPoint.from_coroot(a1, [1e-3j]), H, max_height=200)
    v2 = upsilon_phi("triv", SpectralPoint.from_coroot(a1, [2e-3j]), H, max_height=200)
    assert abs(v1 - v2) < 1e-4, "Υ jumps near λ = 0"
    assert abs(v1.imag) < 1e-8, "Υ at imaginary λ should be real"


def test_tail_bound_is_honest(g2):
    """Truncation at height 10 stays within the reported tail bound."""
    lam = SpectralPoint.from_coroot(g2, [0.6j, 1.1j])
    H = _interior(g2, 1.0)
    short = phi(g2, HALF, lam, H, max_height=10)
    long = phi(g2, HALF, lam, H, max_height=80)
    assert abs(short.value - long.value) <= short.tail_bound, "tail bound underestimates the truncation"


def test_resonance_raises(a1):
    """Even integral λ_α puts λ on a resonance hyperplane of the doubled system."""
    with pytest.raises(ResonanceError):
        coeff_table(doubled(a1), HALF, SpectralPoint.from_coroot(a1, [2.0]), 5)
    with pytest.raises(ResonanceError):
        upsilon_phi("triv", SpectralPoint.from_coroot(a1, [4.0]), np.array([0.5]))


@pytest.mark.parametrize("mu", [(1, 2), (2, 3), (4, 1)])
def test_coefficients_bounded_across_non_root_hyperplane(g2, mu):
    """Γ_μ stays finite and continuous across σ_μ when μ is not a multiple of a root."""
    mu_vec = np.asarray(mu, dtype=float) @ g2.simple_root_vectors()
    normal = mu_vec / (mu_vec @ mu_vec)
    perp = np.array([-mu_vec[1], mu_vec[0]])
    on_plane = 0.5 * mu_vec + (0.11 + 0.37j) * perp
    values = []
    for s in (-2e-6, -1e-6, 1e-6, 2e-6):
        lam = SpectralPoint.from_vector(g2, on_plane + s * normal)
        values.append(coeff_table(g2, HALF, lam, sum(mu))[mu])
    assert all(cmath.isfinite(v) for v in values), f"Γ_{mu} blows up: {values}"
    scale = max(1.0, abs(values[1]))
    assert abs(values[1] - values[2]) < 1e-4 * scale, f"Γ_{mu} jumps across σ_μ: {values}"
    assert abs(values[0] - values[3]) < 1e-4 * scale


def test_wall_raises(g2):
    """Φ needs strictly dominant H."""
    lam = SpectralPoint.from_coroot(g2, [0.4j, 0.9j])
    with pytest.raises(ChamberError):
        phi(g2, HALF, lam, np.zeros(2))


def test_tail_tolerance_raises(g2):
    """A tolerance below the tail bound raises TailBoundError."""
    lam = SpectralPoint.from_coroot(g2, [0.4j, 0.9j])
    with pytest.raises(TailBoundError):
        phi(g2, HALF, lam, _interior(g2, 0.2), max_height=2, tol=1e-15)


def test_negative_height_rejected(g2):
    """max_height < 0 is a ValueError."""
    with pytest.raises(ValueError):
        coeff_table(g2, HALF, SpectralPoint.from_coroot(g2, [0.4j, 0.9j]), -1)


def test_pi2_has_no_radial_system(g2):
    """π₂ spherical values need a provider."""
    with pytest.raises(ProviderError):
        radial_system(g2, "pi2")


def test_multiplicity_validation(g2):
    """k must be constant on Weyl orbits."""
    HALF.validate(g2)
    with pytest.raises(ValueError):
        MultiplicityFunction(overrides=(("a1", 1.0),)).validate(g2)


def test_triv_gauge_is_trivial(g2):
    """For triv the gauge is identically 1."""
    rs = radial_system(g2, "triv")
    Hs = np.vstack([_interior(g2, 0.3), _interior(g2, 1.7)])
    assert np.allclose(rs.gauge(Hs), 1.0)


def test_grid_matches_scalar(g2):
    """Batch evaluation agrees with the scalar API."""
    lams = np.vstack([SpectralPoint.from_coroot(g2, x).as_array() for x in ([0.3j, 1.2j], [1.1j, 0.4j])])
    Hs = np.vstack([_interior(g2, 0.5), _interior(g2, 0.8)])
    values, tails = upsilon_grid("pi1", g2, lams, Hs, max_height=30)
    assert values.shape == (2, 2) and tails.shape == (2, 2)
    scalar = upsilon_phi("pi1", SpectralPoint.from_vector(g2, lams[1]), Hs[0], max_height=30)
    assert abs(values[1, 0] - scalar) < 1e-12 * abs(scalar)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
