"""Leading-order semiclassical energies and the quantization integral.

Three closed forms are provided:

* ``energy_nm``   -- variant whose Stokes wedges contain the real axis
                     (turning points always in the lower half plane),
* ``energy_bb``   -- variant with wedges below the real axis,
* ``energy_general`` -- the (M, eps) formula that contains both.

``quantization_integral`` evaluates Re int sqrt(E - V) dx between the
distinguished turning-point pair along the straight segment joining them,
which double-checks the closed forms; ``quantum_number`` inverts it for
level labeling.
"""

from __future__ import annotations

from math import cos, gamma, pi, sin, sqrt

import numpy as np

from .levels import EnergyLevel
from .potential import PotentialSpec, evaluate, turning_points

__all__ = [
    "EnergyLevel",
    "energy_nm",
    "energy_bb",
    "energy_general",
    "quantization_integral",
    "quantum_number",
    "label_from_quantum_number",
    "DegeneratePathError",
]

#: a computed quantum number is accepted as the integer label n only when
#: it lies within this distance of n
LABEL_WINDOW = 0.2


class DegeneratePathError(RuntimeError):
    """E - V(x) vanishes strictly inside the quantization segment."""


def energy_nm(n: int, N: int) -> float:
    """Closed-form level n of the degree-(2N+1) oscillator, axis-containing wedges."""
    if n < 0 or N < 1:
        raise ValueError("require n >= 0 and N >= 1")
    denom = 2 * N + 1
    pref = sqrt(pi) * (2 * N + 3) * gamma(0.5 + 1.0 / denom) / (
        2.0 * cos(pi / (4 * N + 2)) * gamma(1.0 / denom)
    )
    return (pref * (n + 0.5)) ** ((4 * N + 2) / (2 * N + 3))


def energy_bb(n: int, N: int) -> float:
    """Closed-form level n of the degree-(2N+1) oscillator, off-axis wedges."""
    if n < 0 or N < 1:
        raise ValueError("require n >= 0 and N >= 1")
    denom = 2 * N + 1
    pref = sqrt(pi) * gamma(1.5 + 1.0 / denom) / (
        sin(pi / denom) * gamma(1.0 + 1.0 / denom)
    )
    return (pref * (n + 0.5)) ** ((4 * N + 2) / (2 * N + 3))


def energy_general(n: int, M: int, epsilon: int) -> float:
    """Level n for V = x^(2M) (ix)^eps with turning pair (x_0, -conj(x_0)).

    Specializes to ``energy_bb`` at (M, eps) = (1, 2N-1) and to
    ``energy_nm`` at (M, eps) = (N, 1); gives exactly 2n+1 at (1, 0).
    """
    if n < 0 or M < 1 or epsilon < 0:
        raise ValueError("require n >= 0, M >= 1, epsilon >= 0")
    k = 2 * M + epsilon
    pref = sqrt(pi) * gamma(1.5 + 1.0 / k) * (n + 0.5) / (
        sin(pi * M / k) * gamma(1.0 + 1.0 / k)
    )
    return pref ** ((4 * M + 2 * epsilon) / (k + 2))


def _segment_integral(spec: PotentialSpec, energy: float, nodes: int) -> complex:
    """Gauss-Chebyshev (2nd kind) integral of sqrt(E - V) over the segment.

    The integrand vanishes like a square root at both endpoints (simple
    turning points), which the sin^2 weights absorb exactly; interior
    nodes keep the branch tracker away from the zeros.
    """
    tps = turning_points(spec, energy)
    mid = 0.5 * (tps.pair_plus + tps.pair_minus)
    half = 0.5 * (tps.pair_plus - tps.pair_minus)
    if abs(half) == 0.0:
        return 0.0 + 0.0j
    k = np.arange(1, nodes + 1)
    t = np.cos(k * np.pi / (nodes + 1))
    xs = mid + half * t
    f2 = energy - np.array([evaluate(spec, x) for x in xs])
    scale = max(abs(f2).max(), energy)
    if abs(f2).min() < 1e-13 * scale:
        raise DegeneratePathError(
            f"E - V vanishes inside the segment for {spec} at E={energy}"
        )
    f = np.sqrt(f2)
    # fix the branch at the midpoint (positive real part), then continue
    # outward in both directions choosing the nearer square root
    center = nodes // 2
    if f[center].real < 0.0:
        f = -f
    for i in range(center + 1, nodes):
        if abs(f[i] - f[i - 1]) > abs(f[i] + f[i - 1]):
            f[i] = -f[i]
    for i in range(center - 1, -1, -1):
        if abs(f[i] - f[i + 1]) > abs(f[i] + f[i + 1]):
            f[i] = -f[i]
    weights = np.sin(k * np.pi / (nodes + 1))
    return half * np.pi / (nodes + 1) * np.sum(weights * f)


def quantization_integral(spec: PotentialSpec, energy: float) -> float:
    """Re int_{x_-}^{x_+} sqrt(E - V(x)) dx along the straight segment.

    Node counts are doubled until two consecutive estimates agree to
    1e-9 relative (comfortably below the 1e-8 contract).  The imaginary
    part must vanish by PT symmetry of the segment; this is asserted.
    """
    if energy <= 0.0:
        raise ValueError("energy must be positive")
    prev = None
    result = None
    for nodes in (48, 96, 192, 384, 768):
        result = _segment_integral(spec, energy, nodes)
        if prev is not None and abs(result - prev) <= 1e-9 * (1.0 + abs(result)):
            break
        prev = result
    else:
        raise RuntimeError(
            f"quantization integral did not converge for {spec} at E={energy}"
        )
    if abs(result.imag) >= 1e-8 * (1.0 + abs(result)):
        raise RuntimeError(
            f"quantization integral has spurious imaginary part {result.imag:g}"
        )
    return float(result.real)


def quantum_number(spec: PotentialSpec, energy: float) -> float:
    """Continuous level index nu(E) = quantization_integral / pi - 1/2."""
    return quantization_integral(spec, energy) / pi - 0.5


def label_from_quantum_number(nu: float) -> int | None:
    """Round nu to the nearest integer if within LABEL_WINDOW, else None."""
    nearest = round(nu)
    if nearest >= 0 and abs(nu - nearest) <= LABEL_WINDOW:
        return int(nearest)
    return None
