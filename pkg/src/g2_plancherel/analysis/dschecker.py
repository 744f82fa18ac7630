"""
Discrete-series containment check for the K-type π₂.

Works in the compact Cartan basis (β₁, β₂) with Gram matrix [[2, −3], [−3, 6]]:
- Δ⁺ (6 roots) and Δ_K⁺ = {β₁, 3β₁+2β₂}
- Three positive systems Δ⁺_i containing Δ_K⁺, with half-sums δ_i and δ_K
- For each chamber, the parameters λ = (3/2)β₁+β₂ − δ_i + 2δ_K − Σ n_γ γ
  (γ simple in Δ⁺_i, n_γ ∈ ℕ) are searched for a point with
  (λ, β) > 0 on the chamber's defining roots; none may exist

All arithmetic is exact (Fraction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from ..errors import InfeasibilityViolation

Vector = tuple[Fraction, Fraction]

GRAM = ((Fraction(2), Fraction(-3)), (Fraction(-3), Fraction(6)))
PI2_HIGHEST_WEIGHT: Vector = (Fraction(3, 2), Fraction(1))
MIN_BOUND = 10


def _v(a, b) -> Vector:
    return (Fraction(a), Fraction(b))


def inner(a: Vector, b: Vector) -> Fraction:
    return sum((a[i] * GRAM[i][j] * b[j] for i in range(2) for j in range(2)), Fraction(0))


def _add(*vs: Vector) -> Vector:
    return (sum((v[0] for v in vs), Fraction(0)), sum((v[1] for v in vs), Fraction(0)))


def _scale(c, v: Vector) -> Vector:
    return (Fraction(c) * v[0], Fraction(c) * v[1])


def _half_sum(roots) -> Vector:
    return _scale(Fraction(1, 2), _add(*roots))


def _fmt(v: Vector) -> str:
    return f"{v[0]}b1+{v[1]}b2"


# ==================== ROOT DATA ====================

ROOTS: tuple[Vector, ...] = (
    _v(1, 0), _v(0, 1), _v(1, 1), _v(2, 1), _v(3, 1), _v(3, 2),
)
COMPACT: tuple[Vector, ...] = (_v(1, 0), _v(3, 2))

# Chambers are cut out by signs of (λ, β₂) and (λ, β₁+β₂) inside the
# positive chamber of Δ_K⁺.
CHAMBER_SIGNS = {
    1: ((_v(0, 1), 1),),
    2: ((_v(0, 1), -1), (_v(1, 1), 1)),
    3: ((_v(1, 1), -1),),
}


@dataclass(frozen=True)
class Chamber:
    index: int
    positive: tuple[Vector, ...]
    simple: tuple[Vector, Vector]
    delta: Vector
    walls: tuple[Vector, ...]


@dataclass(frozen=True)
class DeltaData:
    """Compact-Cartan root data and the three chambers containing Δ_K⁺."""

    positive: tuple[Vector, ...]
    compact: tuple[Vector, ...]
    chambers: tuple[Chamber, ...]
    delta_k: Vector


def _sample_point(index: int) -> Vector:
    """A regular point of the i-th chamber (used to orient the roots)."""
    # (λ, β₁) > 0, (λ, 3β₁+2β₂) > 0 plus the chamber signs
    candidates = [_v(a, b) for a in range(-20, 21) for b in range(-20, 21)]
    for lam in candidates:
        if any(inner(lam, r) == 0 for r in ROOTS):
            continue
        if inner(lam, COMPACT[0]) <= 0 or inner(lam, COMPACT[1]) <= 0:
            continue
        if all((inner(lam, r) > 0) == (sign > 0) for r, sign in CHAMBER_SIGNS[index]):
            return lam
    raise ValueError(f"no regular point found for chamber {index}")


def _simple_roots(positive: tuple[Vector, ...]) -> tuple[Vector, Vector]:
    """The two positive roots that are not sums of two other positive roots."""
    sums = {_add(a, b) for a in positive for b in positive if a != b}
    simple = tuple(r for r in positive if r not in sums)
    if len(simple) != 2:
        raise ValueError(f"expected 2 simple roots, found {len(simple)}")
    return simple


def build_delta_data() -> DeltaData:
    chambers = []
    for index in (1, 2, 3):
        point = _sample_point(index)
        positive = tuple(r if inner(point, r) > 0 else _scale(-1, r) for r in ROOTS)
        walls = tuple(COMPACT) + tuple(r if s > 0 else _scale(-1, r) for r, s in CHAMBER_SIGNS[index])
        chambers.append(
            Chamber(
                index=index,
                positive=positive,
                simple=_simple_roots(positive),
                delta=_half_sum(positive),
                walls=walls,
            )
        )
    return DeltaData(
        positive=ROOTS,
        compact=COMPACT,
        chambers=tuple(chambers),
        delta_k=_half_sum(COMPACT),
    )


def chamber_deltas() -> tuple[Vector, Vector, Vector, Vector]:
    """
    (δ₁, δ₂, δ₃, δ_K) as exact (β₁, β₂)-coefficients.

    Example:
        >>> [_fmt(d) for d in chamber_deltas()]
        ['5b1+3b2', '5b1+2b2', '4b1+1b2', '2b1+1b2']
    """
    data = build_delta_data()
    return tuple(c.delta for c in data.chambers) + (data.delta_k,)


# ==================== FEASIBILITY ====================

def candidate_parameter(chamber: Chamber, delta_k: Vector, c1: int, c2: int) -> Vector:
    """λ = (3/2)β₁+β₂ − δ_i + 2δ_K − c₁γ₁ − c₂γ₂."""
    g1, g2 = chamber.simple
    return _add(
        PI2_HIGHEST_WEIGHT,
        _scale(-1, chamber.delta),
        _scale(2, delta_k),
        _scale(-c1, g1),
        _scale(-c2, g2),
    )


def wall_forms(chamber: Chamber, delta_k: Vector) -> list[tuple[Fraction, Fraction, Fraction]]:
    """
    Each condition (λ, wall) > 0 as a + b·c₁ + c·c₂ > 0.
    """
    base = candidate_parameter(chamber, delta_k, 0, 0)
    g1, g2 = chamber.simple
    return [(inner(base, w), -inner(g1, w), -inner(g2, w)) for w in chamber.walls]


def _feasible(forms, c1: int, c2: int) -> bool:
    return all(a + b * c1 + c * c2 > 0 for a, b, c in forms)


def _witness(forms) -> Optional[dict]:
    """
    Look for a pair of forms whose positive combination has no positive
    values on ℕ²: coefficients of c₁ and c₂ ≤ 0 and constant ≤ 0.
    """
    for i, j in product(range(len(forms)), repeat=2):
        if i >= j:
            continue
        for p, q in product(range(0, 13), repeat=2):
            if p == q == 0:
                continue
            a = p * forms[i][0] + q * forms[j][0]
            b = p * forms[i][1] + q * forms[j][1]
            c = p * forms[i][2] + q * forms[j][2]
            if a <= 0 and b <= 0 and c <= 0:
                return {"forms": [i, j], "multipliers": [p, q], "combined": [str(a), str(b), str(c)]}
    return None


def _elimination_witness(forms) -> Optional[dict]:
    """
    Eliminate c₁ between a form bounding it from below and one bounding it
    from above. Only integer slopes are handled, so the lower bound can be
    rounded up exactly.
    """
    for lower, upper in product(forms, repeat=2):
        if not (lower[1] > 0 and upper[1] < 0):
            continue
        slope = -lower[2] / lower[1]
        if slope.denominator != 1:
            continue
        # c₁ > q + slope·c₂ with slope·c₂ integral, so c₁ ≥ ⌊q⌋ + 1 + slope·c₂
        start = math.floor(-lower[0] / lower[1]) + 1
        const = upper[0] + upper[1] * start
        coef = upper[2] + upper[1] * slope
        if const <= 0 and coef <= 0:
            return {
                "forms": [forms.index(lower), forms.index(upper)],
                "lower_bound": f"c1 >= {start} + ({slope})c2",
                "reduced": [str(const), str(coef)],
            }
    return None


def no_discrete_series_check(bound: int = 100) -> dict:
    """
    Certify that no chamber admits a parameter for π₂.

    Args:
        bound: Enumeration limit for c₁, c₂ ∈ {0, …, bound} (≥ 10)

    Returns:
        Certificate dict with per-chamber forms, witness and counts

    Raises:
        ValueError: If bound < 10
        InfeasibilityViolation: If a feasible point is found
    """
    if bound < MIN_BOUND:
        raise ValueError(f"bound must be >= {MIN_BOUND}, got {bound}")
    data = build_delta_data()
    certificate = {
        "highest_weight": _fmt(PI2_HIGHEST_WEIGHT),
        "delta_k": _fmt(data.delta_k),
        "bound": bound,
        "chambers": [],
    }
    for chamber in data.chambers:
        forms = wall_forms(chamber, data.delta_k)
        for c1, c2 in product(range(bound + 1), repeat=2):
            if _feasible(forms, c1, c2):
                raise InfeasibilityViolation(chamber.index, (c1, c2))
        entry = {
            "chamber": chamber.index,
            "delta": _fmt(chamber.delta),
            "simple_roots": [_fmt(g) for g in chamber.simple],
            "forms": [[str(x) for x in f] for f in forms],
            "checked": (bound + 1) ** 2,
            "feasible": 0,
            "witness": _witness(forms),
            "elimination": _elimination_witness(forms),
        }
        certificate["chambers"].append(entry)
    return certificate


# ==================== TESTING ====================

if __name__ == "__main__":
    import json

    print("📐 Chamber half-sums:", [_fmt(d) for d in chamber_deltas()])
    print(json.dumps(no_discrete_series_check(100), indent=2))
