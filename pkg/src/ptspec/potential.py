"""Monomial PT-symmetric potentials V(x) = s * x^(2M) * (ix)^eps + i*b*x.

The family is parameterized by two non-negative integer exponents (M, eps),
an explicit sign s = +/-1, and a real linear coefficient b.  Because
-x^(2M) (ix)^eps = x^(2M+2) (ix)^(eps-2), one polynomial admits several
(M, eps, s) representations; ``canonicalize`` and
``equivalent_representations`` navigate between them.  All exponents are
integers, so every power is evaluated by integer exponentiation and no
branch cuts ever enter.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "PotentialSpec",
    "TurningPointSet",
    "evaluate",
    "canonicalize",
    "equivalent_representations",
    "turning_points",
    "pt_check",
]


@dataclass(frozen=True)
class PotentialSpec:
    """Potential V(x) = s * x^(2M) * (ix)^epsilon + i*b*x.

    The polynomial degree K = 2M + epsilon must be at least 2.
    """

    M: int
    epsilon: int
    s: int = 1
    b: float = 0.0

    def __post_init__(self):
        if self.M < 0 or self.epsilon < 0:
            raise ValueError("M and epsilon must be non-negative integers")
        if self.s not in (1, -1):
            raise ValueError("s must be +1 or -1")
        if self.degree < 2:
            raise ValueError(f"degree 2M + epsilon = {self.degree} must be >= 2")

    @property
    def degree(self) -> int:
        return 2 * self.M + self.epsilon


@dataclass(frozen=True)
class TurningPointSet:
    """All K roots of E - x^(2M) (ix)^eps = 0, plus the distinguished pair.

    ``points`` are ordered by the root index j; ``pair_plus`` is the j = 0
    root and ``pair_minus`` its mirror -conj(pair_plus).
    """

    energy: float
    points: tuple[complex, ...]
    pair_plus: complex
    pair_minus: complex


def evaluate(spec: PotentialSpec, x: complex) -> complex:
    """Evaluate V at a complex point (total function, no branch choices)."""
    x = complex(x)
    return spec.s * x ** (2 * spec.M) * (1j * x) ** spec.epsilon + 1j * spec.b * x


def canonicalize(spec: PotentialSpec) -> PotentialSpec:
    """Fold an explicit minus sign into the exponents where possible.

    Uses -x^(2M) (ix)^eps = x^(2M+2) (ix)^(eps-2): a spec with s = -1 and
    eps >= 2 is rewritten with s = +1.  Anything else is returned unchanged.
    The result evaluates identically to the input everywhere.
    """
    if spec.s == -1 and spec.epsilon >= 2:
        return replace(spec, M=spec.M + 1, epsilon=spec.epsilon - 2, s=1)
    return spec


def equivalent_representations(spec: PotentialSpec) -> tuple[PotentialSpec, ...]:
    """All (M', eps', +1) representations of the same polynomial.

    The monomial part equals s * i^eps * x^K; a plus-sign representation
    needs i^eps' = s * i^eps, i.e. eps' in a fixed residue class mod 4.
    Returned in increasing eps'; always non-empty.
    """
    k = spec.degree
    residue = spec.epsilon % 4 if spec.s == 1 else (spec.epsilon + 2) % 4
    reps = []
    for eps_p in range(residue, k + 1, 4):
        if (k - eps_p) % 2 == 0:
            reps.append(PotentialSpec((k - eps_p) // 2, eps_p, 1, spec.b))
    return tuple(reps)


def turning_points(spec: PotentialSpec, energy: float) -> TurningPointSet:
    """Roots x_j = exp(-i*pi*(eps - 4j) / (2K)) * E^(1/K), j = 0..K-1.

    Requires the plus-sign, b = 0 form; canonicalize first if needed.
    Angles are reduced to [0, 2*pi).
    """
    if spec.s != 1:
        raise ValueError("turning_points requires s = +1 (canonicalize first)")
    if spec.b != 0.0:
        raise ValueError("turning_points requires b = 0")
    if energy <= 0.0:
        raise ValueError("energy must be positive")
    k = spec.degree
    radius = energy ** (1.0 / k)
    pts = []
    for j in range(k):
        ang = (-np.pi * (spec.epsilon - 4 * j) / (2.0 * k)) % (2.0 * np.pi)
        pts.append(radius * complex(np.cos(ang), np.sin(ang)))
    plus = pts[0]
    return TurningPointSet(
        energy=energy,
        points=tuple(pts),
        pair_plus=plus,
        pair_minus=-np.conj(plus),
    )


def _pt_defect(fn, n_samples: int, seed: int = 20230517) -> float:
    """Worst normalized deviation of conj(f(-conj(x))) from f(x) at random x."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        x = complex(*rng.uniform(-2.0, 2.0, size=2))
        v = fn(x)
        mirror = np.conj(fn(-np.conj(x)))
        worst = max(worst, abs(mirror - v) / (1.0 + abs(v)))
    return worst


def pt_check(spec: PotentialSpec, n_samples: int = 64) -> bool:
    """True iff V commutes with combined parity + complex conjugation.

    Sampled test: |conj(V(-conj(x))) - V(x)| < 1e-12 * (1 + |V(x)|) at
    ``n_samples`` pseudo-random complex points (fixed internal seed).
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    return _pt_defect(lambda x: evaluate(spec, x), n_samples) < 1e-12
