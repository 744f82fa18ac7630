"""
Tests for c-functions: product formula, closed forms and densities.
"""

import math

import numpy as np
import pytest

from g2_plancherel.roots.rootsys import SpectralPoint, build_root_system, weyl_group
from g2_plancherel.spectral.cfun import (
    SmallKType,
    c_function,
    c_split_long_short,
    closed_form_c,
    collapsed_factor,
    gk_product,
    mu_density,
    plancherel_density,
    plancherel_density_array,
    sl2_factor,
    verify_c0,
)


def _samples(n=30, seed=1):
    rng = np.random.default_rng(seed)
    return [tuple(rng.uniform(-3, 3, 2) + 1j * rng.uniform(0.2, 3, 2) * rng.choice([-1, 1], 2)) for _ in range(n)]


def test_triv_at_rho_is_one(g2_scaled):
    """c^triv(ρ) = 1 by closed form and product formula."""
    rho = SpectralPoint.rho(g2_scaled)
    assert abs(closed_form_c("triv", rho).value - 1) < 1e-10, "closed form at ρ"
    assert abs(gk_product(g2_scaled, "triv", rho).value - 1) < 1e-10, "product at ρ"


def test_c0_is_two_pi_squared():
    """The normalization solved from c^triv(ρ) = 1 is 2π²."""
    c0 = verify_c0()
    assert abs(c0 - 2 * math.pi ** 2) / (2 * math.pi ** 2) < 1e-10, f"c₀ = {c0}"


def test_product_matches_closed_form(g2):
    """Product and closed forms agree for all three K-types."""
    for x in _samples():
        lam = SpectralPoint.from_coroot(g2, x)
        for pi in SmallKType:
            a = gk_product(g2, pi, lam).value
            b = closed_form_c(pi, lam).value
            assert abs(a - b) <= 1e-10 * abs(b), f"{pi.value} mismatch at {x}"


def test_product_is_word_independent(g2):
    """Both reduced words of w* give the same product."""
    W = weyl_group(g2)
    w1, w2 = W.reduced_words(W.longest)
    lam = SpectralPoint.from_coroot(g2, [0.4 + 1.2j, -0.9 + 0.3j])
    for pi in SmallKType:
        a = gk_product(g2, pi, lam, w1).value
        b = gk_product(g2, pi, lam, w2).value
        assert abs(a - b) <= 1e-12 * abs(a), f"word dependence for {pi.value}"


def test_rank_one_factor_normalization():
    """c(1) = 1 for ν = 0."""
    assert abs(sl2_factor(1, 0).value - 1) < 1e-14


def test_duplication_collapse():
    """The collapsed rank-one factors equal the 2^{1−μ} form."""
    rng = np.random.default_rng(4)
    for mu in rng.uniform(0.1, 4, 10) + 1j * rng.uniform(-4, 4, 10):
        for nu in (0, 0.5, 1.5):
            a = collapsed_factor(mu, nu).value
            b = sl2_factor(mu, nu).value
            assert abs(a - b) <= 1e-11 * abs(b), f"collapse fails at μ={mu}, ν={nu}"


def test_collapsed_factor_rejects_other_weights():
    """Only ν ∈ {0, 1/2, 3/2} have collapsed forms."""
    with pytest.raises(ValueError):
        collapsed_factor(1.3, 2.5)


def test_pi2_vanishes_on_short_line(g2):
    """λ_{α₁} = 1/2 is a zero of c^{π₂}."""
    lam = SpectralPoint.from_coroot(g2, [0.5, 1.0])
    value = closed_form_c("pi2", lam)
    assert value.is_zero and value.value == 0, "expected a flagged zero"
    assert gk_product(g2, "pi2", lam).is_zero, "product formula should agree"


def test_triv_pole_on_wall(g2):
    """c^triv has a pole on λ_{α₁} = 0 and the density vanishes there."""
    lam = SpectralPoint.from_coroot(g2, [0.0, 0.7j])
    assert closed_form_c("triv", lam).is_pole
    assert plancherel_density("triv", [0.0, 0.7], g2) == 0.0


def test_long_short_split(g2):
    """c^{π₂} = (16/π) c_l c_s."""
    lam = SpectralPoint.from_coroot(g2, [0.3 + 0.8j, 1.1 - 0.4j])
    cl, cs = c_split_long_short(lam)
    assert abs(16 / math.pi * cl * cs - closed_form_c("pi2", lam).value) < 1e-12 * abs(cl * cs)


def test_conjugation_symmetry(g2):
    """c(λ̄) = conj c(λ)."""
    lam = SpectralPoint.from_coroot(g2, [0.3 + 0.8j, 1.1 - 0.4j])
    bar = SpectralPoint.from_vector(g2, lam.as_array().conj())
    for pi in SmallKType:
        a, b = closed_form_c(pi, bar).value, closed_form_c(pi, lam).value
        assert abs(a - b.conjugate()) < 1e-12 * abs(b)


def test_density_matches_mu_on_imaginary_axis(g2):
    """|c(iν)|⁻² equals (c(λ)c(−λ))⁻¹ at λ = iν."""
    t = [0.7, -1.3]
    lam = SpectralPoint.from_coroot(g2, 1j * np.asarray(t))
    for pi in SmallKType:
        d = plancherel_density(pi, t, g2)
        m = mu_density(pi, lam)
        assert abs(d - m.real) < 1e-10 * d and abs(m.imag) < 1e-10 * d


def test_density_is_weyl_invariant(g2):
    """μ(wλ) = μ(λ)."""
    lam = SpectralPoint.from_coroot(g2, [0.6j, 1.7j])
    base = mu_density("triv", lam)
    for w in weyl_group(g2):
        assert abs(mu_density("triv", lam.act(w)) - base) < 1e-10 * abs(base), f"fails for {w.label}"


def test_density_array_matches_scalar(g2):
    """The vectorized density agrees with the scalar one."""
    pts = np.asarray([[0.3, 0.9], [-1.2, 2.5], [4.0, -0.7]])
    for pi in SmallKType:
        arr = plancherel_density_array(pi, g2, pts)
        for p, a in zip(pts, arr):
            s = plancherel_density(pi, p, g2)
            assert abs(a - s) <= 1e-10 * s


def test_density_nonnegative_on_grid(g2):
    """|c^π(iν)|⁻² ≥ 0 on a 50 × 50 grid."""
    axis = np.linspace(-5, 5, 50)
    mesh = np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1).reshape(-1, 2)
    for pi in SmallKType:
        assert np.min(plancherel_density_array(pi, g2, mesh)) >= -1e-15


def test_a1_product_uses_solved_constant(a1):
    """On A1 the product formula is normalized by c(ρ) = 1."""
    rho = SpectralPoint.rho(a1)
    assert abs(c_function("triv", rho).value - 1) < 1e-12


def test_ktype_parsing():
    """K-types parse case-insensitively and reject unknown names."""
    assert SmallKType.parse("PI1") is SmallKType.PI1
    with pytest.raises(ValueError):
        SmallKType.parse("pi3")


def test_scale_invariance():
    """c-functions depend only on coroot coordinates."""
    x = [0.4 + 0.5j, -0.2 + 1.5j]
    a = closed_form_c("pi1", SpectralPoint.from_coroot(build_root_system("G2"), x)).value
    b = closed_form_c("pi1", SpectralPoint.from_coroot(build_root_system("G2", 4.0), x)).value
    assert abs(a - b) < 1e-12 * abs(a)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
