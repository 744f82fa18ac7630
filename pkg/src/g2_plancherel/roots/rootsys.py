"""
Root systems, Weyl groups and coroot coordinates.

This module provides the combinatorial backbone used by every other module:
- Exact root data (Fractions in the simple-root basis, Gram matrix × scale)
- Weyl groups built by breadth-first search over simple reflections
- β-sequences attached to reduced words of the longest element
- Spectral points λ ∈ a*_C addressed through coroot pairings λ_α

Supported kinds are G2, A1, A1xA1 and their doubles (roots 2α), the latter
serving as the engine system for trivial-K-type spherical functions.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from ..errors import NotARootError, UnknownRootSystemError


# ==================== ROOT DATA ====================

# Unit Gram matrices and positive roots, simple-root coordinates.
BASE_SYSTEMS = {
    "G2": {
        "gram": ((2, -3), (-3, 6)),
        "positive": ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)),
        "labels": ("a1", "a2", "a1+a2", "2a1+a2", "3a1+a2", "3a1+2a2"),
    },
    "A1": {
        "gram": ((2,),),
        "positive": ((1,),),
        "labels": ("a",),
    },
    "A1xA1": {
        "gram": ((2, 0), (0, 2)),
        "positive": ((1, 0), (0, 1)),
        "labels": ("a1", "a2"),
    },
}

KINDS = tuple(BASE_SYSTEMS) + tuple(f"Doubled({k})" for k in BASE_SYSTEMS)

SHORT = "short"
LONG = "long"

Coords = tuple[Fraction, ...]


def _as_coords(v: Iterable) -> Coords:
    return tuple(Fraction(x) for x in v)


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p))
        for i in range(n)
    )


def _matvec(a, v) -> Coords:
    return tuple(sum((a[i][k] * v[k] for k in range(len(v))), Fraction(0)) for i in range(len(a)))


def _identity(n: int):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


# ==================== TYPES ====================

@dataclass(frozen=True)
class Root:
    """A root: exact simple-root coordinates plus its orthonormal-frame vector."""

    coords: Coords
    length: str
    multiplicity: int
    label: str
    vector: tuple[float, ...]

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vector, dtype=float)


@dataclass(frozen=True)
class RootSystemData:
    """
    A rank ≤ 2 reduced root system with a scaled inner product.

    Roots are stored exactly; ``frame`` holds the orthonormal coordinates of
    the simple roots (rows), obtained from the Cholesky factor of the Gram
    matrix so that α₁ lies along the first axis. G2 and Doubled(G2) share
    the same frame, which lets spectral points move between them freely.
    """

    kind: str
    rank: int
    simple_roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    metric_scale: float
    unit_gram: tuple[tuple[Fraction, ...], ...]
    frame: tuple[tuple[float, ...], ...]

    # ---------- inner products ----------

    def exact_inner(self, a: Sequence, b: Sequence) -> Fraction:
        """Unit-scale inner product of two simple-root coordinate vectors."""
        g = self.unit_gram
        return sum(
            (Fraction(a[i]) * g[i][j] * Fraction(b[j]) for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def inner(self, a: Sequence, b: Sequence) -> float:
        return self.metric_scale * float(self.exact_inner(a, b))

    def coroot_pairing(self, a: Sequence, b: Sequence) -> Fraction:
        """⟨a, b∨⟩ = 2(a, b)/(b, b), exact and scale free."""
        return 2 * self.exact_inner(a, b) / self.exact_inner(b, b)

    def to_vector(self, coords: Sequence) -> np.ndarray:
        return np.asarray([float(c) for c in coords]) @ np.asarray(self.frame)

    # ---------- root lookup ----------

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        neg = tuple(
            Root(
                coords=tuple(-c for c in r.coords),
                length=r.length,
                multiplicity=r.multiplicity,
                label=f"-({r.label})",
                vector=tuple(-x for x in r.vector),
            )
            for r in self.positive_roots
        )
        return self.positive_roots + neg

    @cached_property
    def _by_coords(self) -> dict:
        return {r.coords: r for r in self.roots}

    def find_root(self, coords: Sequence) -> Root | None:
        return self._by_coords.get(_as_coords(coords))

    def root(self, key: Union[str, Sequence, Root]) -> Root:
        """
        Resolve a root from its label, coordinates or a Root instance.

        Raises:
            NotARootError: If ``key`` does not name a root of this system
        """
        if isinstance(key, Root):
            found = self.find_root(key.coords)
        elif isinstance(key, str):
            found = next((r for r in self.roots if r.label == key), None)
        else:
            found = self.find_root(key)
        if found is None:
            raise NotARootError(f"{key!r} is not a root of {self.kind}")
        return found

    @property
    def short_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.positive_roots if r.length == SHORT)

    @property
    def long_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.positive_roots if r.length == LONG)

    # ---------- derived vectors ----------

    @cached_property
    def rho_coords(self) -> Coords:
        acc = [Fraction(0)] * self.rank
        for r in self.positive_roots:
            for i, c in enumerate(r.coords):
                acc[i] += Fraction(r.multiplicity) * c / 2
        return tuple(acc)

    @cached_property
    def rho(self) -> np.ndarray:
        return self.to_vector(self.rho_coords)

    @cached_property
    def coroot_matrix(self) -> np.ndarray:
        """Rows α_i∨ = 2α_i/|α_i|²; maps a vector λ to (λ_{α_1}, …, λ_{α_r})."""
        rows = [
            2 * r.as_array() / (self.metric_scale * float(self.exact_inner(r.coords, r.coords)))
            for r in self.simple_roots
        ]
        return np.vstack(rows)

    @cached_property
    def fundamental_weights(self) -> np.ndarray:
        """Rows ω_i with ⟨ω_i, α_j∨⟩ = δ_ij."""
        return np.linalg.inv(self.coroot_matrix).T

    @property
    def is_doubled(self) -> bool:
        return self.kind.startswith("Doubled(")

    @property
    def base_kind(self) -> str:
        return self.kind[len("Doubled("):-1] if self.is_doubled else self.kind

    def positive_root_vectors(self) -> np.ndarray:
        return np.vstack([r.as_array() for r in self.positive_roots])

    def simple_root_vectors(self) -> np.ndarray:
        return np.vstack([r.as_array() for r in self.simple_roots])

    # ---------- debug dump ----------

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "rank": self.rank,
            "metric_scale": self.metric_scale,
            "gram": [[str(x) for x in row] for row in self.unit_gram],
            "positive_roots": [
                {
                    "label": r.label,
                    "coords": [str(c) for c in r.coords],
                    "length": r.length,
                    "multiplicity": r.multiplicity,
                }
                for r in self.positive_roots
            ],
            "rho": [str(c) for c in self.rho_coords],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


# ==================== CONSTRUCTION ====================

@lru_cache(maxsize=None)
def build_root_system(kind: str = "G2", metric_scale: float = 1.0) -> RootSystemData:
    """
    Build root data for one of the supported kinds.

    Args:
        kind: "G2", "A1", "A1xA1" or "Doubled(<base>)"
        metric_scale: Global scale s of the inner product (|α_short|² = 2s)

    Returns:
        RootSystemData with positive roots in the canonical order

    Raises:
        UnknownRootSystemError: If ``kind`` is not supported
        ValueError: If metric_scale is not positive

    Example:
        >>> R = build_root_system("G2")
        >>> [r.label for r in R.short_roots]
        ['a1', 'a1+a2', '2a1+a2']
    """
    if kind not in KINDS:
        raise UnknownRootSystemError(f"unknown root system kind {kind!r}; expected one of {KINDS}")
    if not metric_scale > 0:
        raise ValueError(f"metric_scale must be positive, got {metric_scale!r}")

    doubled = kind.startswith("Doubled(")
    base = BASE_SYSTEMS[kind[len("Doubled("):-1] if doubled else kind]
    factor = 4 if doubled else 1
    gram = tuple(tuple(Fraction(factor * x) for x in row) for row in base["gram"])
    rank = len(gram)

    chol = np.linalg.cholesky(np.asarray([[float(x) for x in row] for row in gram]) * metric_scale)
    frame = tuple(tuple(float(x) for x in row) for row in chol)

    def norm2(c):
        return sum((Fraction(c[i]) * gram[i][j] * Fraction(c[j]) for i in range(rank) for j in range(rank)), Fraction(0))

    lengths = [norm2(c) for c in base["positive"]]
    shortest = min(lengths)
    positive = []
    for coords, label, n2 in zip(base["positive"], base["labels"], lengths):
        vec = np.asarray([float(c) for c in coords]) @ chol
        positive.append(
            Root(
                coords=_as_coords(coords),
                length=SHORT if n2 == shortest else LONG,
                multiplicity=1,
                label=f"2({label})" if doubled else label,
                vector=tuple(float(x) for x in vec),
            )
        )
    simple = tuple(positive[i] for i in range(rank))
    return RootSystemData(
        kind=kind,
        rank=rank,
        simple_roots=simple,
        positive_roots=tuple(positive),
        metric_scale=float(metric_scale),
        unit_gram=gram,
        frame=frame,
    )


def doubled(R: RootSystemData) -> RootSystemData:
    """Return Doubled(R): roots 2α with the same frame and multiplicities."""
    if R.is_doubled:
        raise UnknownRootSystemError(f"{R.kind} is already doubled")
    return build_root_system(f"Doubled({R.kind})", R.metric_scale)


# ==================== WEYL GROUP ====================

@dataclass(frozen=True, eq=False)
class WeylElement:
    """
    A Weyl group element, canonicalized by its exact matrix.

    ``matrix`` acts on simple-root coordinates (column j is the image of
    α_j); ``word`` (i₁, …, i_k) is a reduced witness for s_{i₁}⋯s_{i_k};
    ``orth`` is the same map in the orthonormal frame.
    """

    matrix: tuple[tuple[Fraction, ...], ...]
    word: tuple[int, ...]
    orth: tuple[tuple[float, ...], ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"WeylElement({self.label})"

    @property
    def label(self) -> str:
        return "e" if not self.word else "".join(f"s{i}" for i in self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def apply_coords(self, coords: Sequence) -> Coords:
        return _matvec(self.matrix, _as_coords(coords))

    def apply(self, vectors) -> np.ndarray:
        """Act on orthonormal-frame vectors; accepts shape (r,) or (n, r)."""
        return np.asarray(vectors) @ np.asarray(self.orth).T


def _reflection(R: RootSystemData, i: int):
    n = R.rank
    m = [list(row) for row in _identity(n)]
    ai = R.simple_roots[i].coords
    for j in range(n):
        aj = R.simple_roots[j].coords
        m[i][j] -= R.coroot_pairing(aj, ai)
    return tuple(tuple(row) for row in m)


def _orth_matrix(R: RootSystemData, matrix) -> tuple[tuple[float, ...], ...]:
    frame_t = np.asarray(R.frame).T
    m = np.asarray([[float(x) for x in row] for row in matrix])
    orth = frame_t @ m @ np.linalg.inv(frame_t)
    return tuple(tuple(float(x) for x in row) for row in orth)


@dataclass(frozen=True)
class WeylGroup:
    system: RootSystemData
    elements: tuple[WeylElement, ...]
    longest: WeylElement

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @property
    def longest_word(self) -> tuple[int, ...]:
        return self.longest.word

    def element(self, word: Sequence[int]) -> WeylElement:
        """Return the element s_{i₁}⋯s_{i_k} for a (not necessarily reduced) word."""
        m = _identity(self.system.rank)
        for i in word:
            m = _matmul(m, _reflection(self.system, i - 1))
        return self._by_matrix[m]

    @cached_property
    def _by_matrix(self) -> dict:
        return {w.matrix: w for w in self.elements}

    def inversion_count(self, w: WeylElement) -> int:
        """Number of positive roots sent to negative roots."""
        return sum(1 for r in self.system.positive_roots if not _is_positive(w.apply_coords(r.coords)))

    def reduced_words(self, w: WeylElement) -> list[tuple[int, ...]]:
        """All reduced words for ``w`` (a reduced word starts with i iff s_i lowers the length)."""
        if w.length == 0:
            return [()]
        out = []
        for i in range(1, self.system.rank + 1):
            si_w = self._by_matrix[_matmul(_reflection(self.system, i - 1), w.matrix)]
            if si_w.length == w.length - 1:
                out.extend((i,) + rest for rest in self.reduced_words(si_w))
        return sorted(out)


def _is_positive(coords: Sequence) -> bool:
    return all(c >= 0 for c in coords) and any(c != 0 for c in coords)


@lru_cache(maxsize=None)
def weyl_group(R: RootSystemData) -> WeylGroup:
    """
    Generate W(R) from the simple reflections.

    Elements are discovered breadth-first by left multiplication, so every
    stored word is reduced. The longest element is the one that maps Σ⁺
    onto −Σ⁺.
    """
    reflections = [_reflection(R, i) for i in range(R.rank)]
    ident = _identity(R.rank)
    first = WeylElement(matrix=ident, word=(), orth=_orth_matrix(R, ident))
    seen = {ident: first}
    order = [first]
    queue = deque([first])
    while queue:
        w = queue.popleft()
        for i, s in enumerate(reflections):
            m = _matmul(s, w.matrix)
            if m not in seen:
                el = WeylElement(matrix=m, word=(i + 1,) + w.word, orth=_orth_matrix(R, m))
                seen[m] = el
                order.append(el)
                queue.append(el)

    longest = None
    for w in order:
        if all(not _is_positive(w.apply_coords(r.coords)) for r in R.positive_roots):
            longest = w
    assert longest is not None and longest.length == len(R.positive_roots)
    return WeylGroup(system=R, elements=tuple(order), longest=longest)


def beta_sequence(R: RootSystemData, word: Sequence[int] | None = None) -> list[Root]:
    """
    β_k = s_{i₁}⋯s_{i_{k−1}} α_{i_k} for a reduced word of w*.

    Args:
        R: Root system
        word: Reduced word for the longest element (defaults to the stored one)

    Returns:
        Positive roots in product-formula order, each exactly once

    Raises:
        ValueError: If ``word`` is not a reduced word of the longest element
    """
    W = weyl_group(R)
    word = tuple(W.longest_word if word is None else word)
    if len(word) != len(R.positive_roots) or W.element(word) != W.longest:
        raise ValueError(f"{word} is not a reduced word for the longest element of {R.kind}")

    betas = []
    prefix = _identity(R.rank)
    for i in word:
        image = _matvec(prefix, R.simple_roots[i - 1].coords)
        betas.append(R.root(image))
        prefix = _matmul(prefix, _reflection(R, i - 1))
    return betas


def weyl_positivity_set(R: RootSystemData, gamma) -> tuple[WeylElement, ...]:
    """
    {w ∈ W : wγ ∈ Σ⁺}.

    Raises:
        NotARootError: If ``gamma`` is not a root of R
    """
    g = R.root(gamma)
    return tuple(w for w in weyl_group(R) if _is_positive(w.apply_coords(g.coords)))


# ==================== CHAMBERS ====================

def dominant_representative(R: RootSystemData, points) -> np.ndarray:
    """
    Map points of a (orthonormal frame, shape (n, r)) into the closed
    positive chamber by repeated simple reflections.
    """
    pts = np.array(points, dtype=float, ndmin=2, copy=True)
    simple = R.simple_root_vectors()
    norms = np.einsum("ij,ij->i", simple, simple)
    for _ in range(4 * len(R.positive_roots) + 4):
        moved = False
        for i in range(R.rank):
            val = pts @ simple[i]
            neg = val < 0
            if np.any(neg):
                pts[neg] -= (2 * val[neg] / norms[i])[:, None] * simple[i]
                moved = True
        if not moved:
            break
    return pts


def is_strictly_dominant(R: RootSystemData, H, tol: float = 0.0) -> bool:
    values = R.simple_root_vectors() @ np.asarray(H, dtype=float)
    return bool(np.all(values > tol))


# ==================== SPECTRAL POINTS ====================

@dataclass(frozen=True)
class SpectralPoint:
    """
    A point λ of a*_C, stored as a complex vector in the orthonormal frame.

    ``pairing`` gives λ_α = 2⟨λ, α⟩/⟨α, α⟩ for any root carrying a frame
    vector, so the same point can be paired against G2 or Doubled(G2) roots.
    """

    system: RootSystemData
    vector: tuple[complex, ...]

    @classmethod
    def from_coroot(cls, system: RootSystemData, coords: Sequence[complex]) -> "SpectralPoint":
        """Build λ from (λ_{α_1}, …, λ_{α_r})."""
        c = np.asarray(coords, dtype=complex)
        if c.shape != (system.rank,):
            raise ValueError(f"expected {system.rank} coroot coordinates, got {len(c)}")
        vec = c @ system.fundamental_weights
        return cls(system, tuple(complex(x) for x in vec))

    @classmethod
    def from_vector(cls, system: RootSystemData, vector) -> "SpectralPoint":
        return cls(system, tuple(complex(x) for x in np.asarray(vector, dtype=complex)))

    @classmethod
    def rho(cls, system: RootSystemData) -> "SpectralPoint":
        return cls.from_vector(system, system.rho)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vector, dtype=complex)

    def pairing(self, root: Union[Root, str, Sequence]) -> complex:
        r = root if isinstance(root, Root) else self.system.root(root)
        a = r.as_array()
        return complex(2 * (self.as_array() @ a) / (a @ a))

    def coroot_coords(self) -> tuple[complex, ...]:
        return tuple(complex(x) for x in self.system.coroot_matrix @ self.as_array())

    def evaluate(self, H) -> complex:
        """λ(H) for H in the orthonormal frame."""
        return complex(self.as_array() @ np.asarray(H, dtype=float))

    def act(self, w: WeylElement) -> "SpectralPoint":
        return SpectralPoint.from_vector(self.system, w.apply(self.as_array()))

    def __add__(self, other: "SpectralPoint") -> "SpectralPoint":
        return SpectralPoint.from_vector(self.system, self.as_array() + other.as_array())

    def __sub__(self, other: "SpectralPoint") -> "SpectralPoint":
        return SpectralPoint.from_vector(self.system, self.as_array() - other.as_array())

    def __neg__(self) -> "SpectralPoint":
        return SpectralPoint.from_vector(self.system, -self.as_array())

    def __mul__(self, scalar: complex) -> "SpectralPoint":
        return SpectralPoint.from_vector(self.system, scalar * self.as_array())

    __rmul__ = __mul__


# ==================== TESTING ====================

if __name__ == "__main__":
    R = build_root_system("G2")
    W = weyl_group(R)
    print(f"📐 {R.kind}: {len(R.positive_roots)} positive roots, |W| = {len(W)}")
    rho = SpectralPoint.rho(R)
    for r in R.positive_roots:
        print(f"  ├─ {r.label:8s} {r.length:5s}  ρ_α = {rho.pairing(r).real:.0f}")
    print(f"  └─ longest word: {W.longest_word}")
    print(R.to_json())
