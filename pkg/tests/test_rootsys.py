"""
Tests for root data, Weyl groups and spectral points.
"""

from fractions import Fraction

import numpy as np
import pytest

from g2_plancherel.errors import NotARootError, UnknownRootSystemError
from g2_plancherel.roots.rootsys import (
    SpectralPoint,
    beta_sequence,
    build_root_system,
    doubled,
    dominant_representative,
    is_strictly_dominant,
    weyl_group,
    weyl_positivity_set,
)


def test_g2_root_data(g2):
    """G2 has six positive roots, three of them short."""
    assert len(g2.positive_roots) == 6, "Wrong number of positive roots"
    assert [r.label for r in g2.short_roots] == ["a1", "a1+a2", "2a1+a2"]
    assert [r.label for r in g2.long_roots] == ["a2", "3a1+a2", "3a1+2a2"]
    assert g2.rho_coords == (Fraction(5), Fraction(3)), "ρ should be 5α₁+3α₂"


def test_coroot_pairings_are_exact(g2):
    """Cartan integers of G2 with α₁ short."""
    a1, a2 = (r.coords for r in g2.simple_roots)
    assert g2.coroot_pairing(a2, a1) == -3
    assert g2.coroot_pairing(a1, a2) == -1


def test_metric_scale_scales_lengths():
    """|α_short|² = 2s and coroot pairings do not move with s."""
    for s in (1.0, 4.0):
        R = build_root_system("G2", s)
        a1 = R.root("a1").as_array()
        assert abs(a1 @ a1 - 2 * s) < 1e-12, f"wrong short length at scale {s}"
        lam = SpectralPoint.from_coroot(R, [0.3 + 1j, -0.7])
        assert abs(lam.pairing("3a1+2a2") - (0.3 + 1j + 2 * -0.7)) < 1e-12


def test_pairing_coefficients(g2):
    """λ_β in terms of (λ_{α₁}, λ_{α₂}) for every positive root."""
    expected = {"a1": (1, 0), "a2": (0, 1), "a1+a2": (1, 3), "2a1+a2": (2, 3), "3a1+a2": (1, 1), "3a1+2a2": (1, 2)}
    x = (0.37 - 0.2j, 1.1 + 0.5j)
    lam = SpectralPoint.from_coroot(g2, x)
    for label, (p, q) in expected.items():
        assert abs(lam.pairing(label) - (p * x[0] + q * x[1])) < 1e-12, f"pairing with {label}"


def test_weyl_group_orders():
    """Orders 12, 2 and 4; the longest element inverts every positive root."""
    for kind, order in (("G2", 12), ("A1", 2), ("A1xA1", 4)):
        R = build_root_system(kind)
        W = weyl_group(R)
        assert len(W) == order, f"|W({kind})| should be {order}"
        assert W.longest.length == len(R.positive_roots)
        assert W.inversion_count(W.longest) == len(R.positive_roots)


def test_weyl_elements_are_isometries(g2):
    """Every w acts orthogonally in the orthonormal frame."""
    v = np.array([0.3, -1.7])
    for w in weyl_group(g2):
        assert abs(np.linalg.norm(w.apply(v)) - np.linalg.norm(v)) < 1e-12, f"{w.label} is not an isometry"


def test_beta_sequence_covers_positive_roots(g2):
    """Both reduced words of w* list each positive root once."""
    W = weyl_group(g2)
    words = W.reduced_words(W.longest)
    assert sorted(words) == [(1, 2, 1, 2, 1, 2), (2, 1, 2, 1, 2, 1)]
    for word in words:
        betas = beta_sequence(g2, word)
        assert sorted(b.label for b in betas) == sorted(r.label for r in g2.positive_roots)


def test_beta_sequence_rejects_bad_word(g2):
    """A word that is not reduced for w* raises ValueError."""
    with pytest.raises(ValueError):
        beta_sequence(g2, (1, 2, 1))


def test_weyl_positivity_set(g2):
    """W^{2α₁+α₂} has six elements."""
    W = weyl_group(g2)
    found = set(weyl_positivity_set(g2, "2a1+a2"))
    expected = {W.element(word) for word in ((), (1,), (2,), (1, 2), (2, 1), (2, 1, 2))}
    assert found == expected, f"unexpected positivity set {sorted(w.label for w in found)}"


def test_not_a_root(g2):
    """(1, 2) is not a root of G2."""
    with pytest.raises(NotARootError):
        weyl_positivity_set(g2, (1, 2))


def test_unknown_kind_and_bad_scale():
    """Unsupported kinds and nonpositive scales are rejected."""
    with pytest.raises(UnknownRootSystemError):
        build_root_system("B2")
    with pytest.raises(ValueError):
        build_root_system("G2", 0.0)


def test_doubled_system(g2):
    """Doubled(G2) has roots 2α in the same frame."""
    D = doubled(g2)
    assert D.kind == "Doubled(G2)"
    assert D.base_kind == "G2"
    for r, d in zip(g2.positive_roots, D.positive_roots):
        assert np.allclose(2 * r.as_array(), d.as_array()), f"{d.label} is not twice {r.label}"
    with pytest.raises(UnknownRootSystemError):
        doubled(D)


def test_rho_pairs_to_one_with_simple_roots(g2_scaled):
    """ρ_{α_i} = 1 for the simple roots at any scale."""
    rho = SpectralPoint.rho(g2_scaled)
    coords = rho.coroot_coords()
    assert np.allclose(coords, [1, 1]), f"ρ coroot coordinates {coords}"


def test_dominant_representative(g2):
    """Folding lands in the positive chamber and preserves norms."""
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(50, 2))
    dom = dominant_representative(g2, pts)
    assert np.allclose(np.linalg.norm(dom, axis=1), np.linalg.norm(pts, axis=1))
    for H in dom:
        assert is_strictly_dominant(g2, H, -1e-12), f"{H} not dominant"


def test_to_json_roundtrip_fields(g2):
    """The debug dump lists roots and ρ."""
    d = g2.to_dict()
    assert d["kind"] == "G2"
    assert len(d["positive_roots"]) == 6
    assert d["rho"] == ["5", "3"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
