"""Asymptotic Stokes geometry and line tracing in the complex plane.

Convention used throughout this package: an *anti-Stokes* direction is one
of pure exponential growth/decay of the semiclassical solutions (a wedge
center, the natural integration ray for the shooting solver); a *Stokes*
direction is an oscillatory wedge boundary.  The opposite naming also
circulates; this module is the single place the choice is made.

For V ~ s * x^(2M) (ix)^eps of degree K, the action along the ray
x = rho * e^(i*theta) carries the phase (K+2)*theta/2 + phi0 with
phi0 = eps*pi/4 + (1-s)*pi/4, so directions solve

    anti-Stokes:  (K+2)*theta/2 + phi0 = 0    (mod pi)
    Stokes:       (K+2)*theta/2 + phi0 = pi/2 (mod pi)

All angles are exact rational multiples of pi and are carried as
``fractions.Fraction`` alongside their float value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp

from .potential import PotentialSpec, canonicalize, evaluate, turning_points

__all__ = [
    "AsymptoticLine",
    "StokesDiagram",
    "RayPair",
    "TracedLine",
    "TraceError",
    "asymptotic_lines",
    "bb_rays",
    "wedge_rays",
    "local_branch_angles",
    "trace_line",
    "trace_all_lines",
    "pi_fraction",
]

Kind = Literal["stokes", "antistokes"]

#: traces start this many local length units off the singular turning point
TRACE_OFFSET = 1e-4
#: re-entering a disc of this radius around any turning point aborts a trace
TURNING_DISC = 1e-3


class TraceError(RuntimeError):
    """A traced line ran back into a turning point."""


@dataclass(frozen=True)
class AsymptoticLine:
    """One asymptotic direction: angle = fraction * pi, reduced to [0, 2*pi)."""

    angle: float
    kind: Kind
    fraction: Fraction


@dataclass(frozen=True)
class StokesDiagram:
    """All 2*(K+2) asymptotic directions of a degree-K potential."""

    K: int
    lines: tuple[AsymptoticLine, ...]

    def angles(self, kind: Kind) -> tuple[float, ...]:
        return tuple(line.angle for line in self.lines if line.kind == kind)

    def fractions(self, kind: Kind) -> tuple[Fraction, ...]:
        return tuple(line.fraction for line in self.lines if line.kind == kind)


@dataclass(frozen=True)
class RayPair:
    """PT-mirrored integration rays: theta_left = pi - theta_right (mod 2*pi)."""

    theta_right: float
    theta_left: float


@dataclass(frozen=True)
class TracedLine:
    """Sampled line with the accumulated action S(s) = int sqrt(V - E) dx."""

    points: np.ndarray
    action: np.ndarray
    kind: Kind
    direction: int
    start: complex = 0j
    branch_angle: float = 0.0


def pi_fraction(angle: float, max_denominator: int) -> Fraction | None:
    """Recover angle as an exact multiple of pi, or None if it is not one."""
    q = Fraction(angle / pi).limit_denominator(max_denominator)
    if abs(float(q) * pi - angle) < 1e-9:
        return q
    return None


def asymptotic_lines(spec: PotentialSpec) -> StokesDiagram:
    """Classify all asymptotic directions of ``spec`` (b is subdominant)."""
    k = spec.degree
    lines = []
    for kind, shift in (("antistokes", 0), ("stokes", 2)):
        for j in range(k + 2):
            frac = Fraction(4 * j - spec.epsilon - (1 - spec.s) + shift, 2 * (k + 2)) % 2
            lines.append(AsymptoticLine(float(frac) * pi, kind, frac))
    lines.sort(key=lambda ln: (ln.fraction, ln.kind))
    return StokesDiagram(K=k, lines=tuple(lines))


def bb_rays(m: int) -> RayPair:
    """Decay rays arg(x) = -pi/2 +/- 2*pi/(m+2) for a degree-m oscillator."""
    if m < 2:
        raise ValueError("m must be >= 2")
    right = Fraction(4 - (m + 2), 2 * (m + 2)) % 2
    left = Fraction(-4 - (m + 2), 2 * (m + 2)) % 2
    return RayPair(float(right) * pi, float(left) * pi)


def _mirrored_pairs(diagram: StokesDiagram) -> list[tuple[Fraction, Fraction]]:
    """All (right, left) anti-Stokes fraction pairs with left = 1 - right mod 2."""
    fracs = set(diagram.fractions("antistokes"))
    pairs = []
    for q in sorted(fracs):
        mirror = (1 - q) % 2
        if mirror == q:  # +/- pi/2: self-mirrored, not a usable pair
            continue
        if mirror in fracs:
            # the right member has cos > 0, i.e. fraction in (3/2, 2) or [0, 1/2)
            right = q if (q < Fraction(1, 2) or q > Fraction(3, 2)) else mirror
            left = (1 - right) % 2
            if (right, left) not in pairs:
                pairs.append((right, left))
    return pairs


def wedge_rays(spec: PotentialSpec, mode: str) -> RayPair:
    """Select the PT-mirrored anti-Stokes pair for one of the two wedge modes.

    ``contains-real-axis``: the pair flanking the real axis (smallest
    |sin theta|), bounding wedges that contain it.  ``off-axis``: the
    closest pair on the opposite side of the real axis.
    """
    if mode not in ("contains-real-axis", "off-axis"):
        raise ValueError(f"unknown mode {mode!r}")
    k = spec.degree
    if k % 2 == 0 or k < 3:
        raise ValueError("wedge modes are defined for odd degree K >= 3")
    pairs = _mirrored_pairs(asymptotic_lines(spec))
    if not pairs:
        raise RuntimeError("no PT-mirrored anti-Stokes pair exists")

    def abs_sin(pair):
        return abs(np.sin(float(pair[0]) * pi))

    def side(pair):  # +1 upper half plane, -1 lower
        return 1 if pair[0] < 1 else -1

    closest = min(pairs, key=abs_sin)
    if mode == "contains-real-axis":
        chosen = closest
    else:
        opposite = [p for p in pairs if side(p) != side(closest)]
        if not opposite:
            raise RuntimeError("no anti-Stokes pair on the opposite side")
        chosen = min(opposite, key=abs_sin)
    return RayPair(float(chosen[0]) * pi, float(chosen[1]) * pi)


def _dv(spec: PotentialSpec, x: complex) -> complex:
    """Analytic derivative of the potential."""
    m2, eps = 2 * spec.M, spec.epsilon
    out = 1j * spec.b
    if m2 > 0:
        out += spec.s * m2 * x ** (m2 - 1) * (1j * x) ** eps
    if eps > 0:
        out += spec.s * eps * 1j * x ** m2 * (1j * x) ** (eps - 1)
    return out


def local_branch_angles(spec: PotentialSpec, energy: float, start: complex,
                        kind: Kind) -> tuple[float, float, float]:
    """Directions of the three ``kind`` branches leaving a simple turning point.

    Near the turning point S ~ (2/3) sqrt(V'(x*)) (x - x*)^(3/2); branch m
    leaves at angle (2/3)*(m*pi - arg V'/2) (anti-Stokes, S real) shifted
    by pi/3 for Stokes (S imaginary).  Outward motion changes S with sign
    (-1)^m for both kinds.
    """
    dv = _dv(spec, start)
    if abs(dv) == 0.0:
        raise ValueError("degenerate turning point (V' = 0)")
    base = -np.angle(dv) / 3.0 + (np.pi / 3.0 if kind == "stokes" else 0.0)
    return tuple((base + 2.0 * m * np.pi / 3.0) % (2.0 * np.pi) for m in range(3))


def trace_line(spec: PotentialSpec, energy: float, start: complex, kind: Kind,
               direction: int, arc_length: float, n_points: int = 400,
               branch_angle: float | None = None) -> TracedLine:
    """Trace one Stokes or anti-Stokes line away from a turning point.

    The trace follows dx/ds = direction * u * |w| / w with w = sqrt(V - E)
    and u = 1 (anti-Stokes, S stays real) or u = i (Stokes, S stays
    imaginary), at unit arc length.  ``direction`` selects the sign with
    which S grows; among the branches consistent with it the one nearest
    ``branch_angle`` (or, by default, the outward radial direction) is
    taken.  The square root is continued along the trace by evolving w as
    part of the state, so no branch cuts are consulted after the start.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if arc_length <= 0.0:
        raise ValueError("arc_length must be positive")
    if spec.b != 0.0:
        raise ValueError("tracing supports b = 0 potentials only")
    spec_c = canonicalize(spec)
    if abs(energy - evaluate(spec_c, start)) > 1e-8 * (1.0 + energy):
        raise ValueError(f"{start} is not a turning point at E={energy}")

    angles = local_branch_angles(spec_c, energy, start, kind)
    candidates = [(m, ang) for m, ang in enumerate(angles) if (-1) ** m == direction]
    target = np.angle(start) if branch_angle is None else branch_angle

    def ang_dist(a, b):
        return abs((a - b + np.pi) % (2.0 * np.pi) - np.pi)

    phi = min(candidates, key=lambda c: ang_dist(c[1], target))[1]

    u = 1j if kind == "stokes" else 1.0
    delta = TRACE_OFFSET * energy ** (1.0 / spec_c.degree)
    x1 = start + delta * np.exp(1j * phi)
    w1 = np.sqrt(evaluate(spec_c, x1) - energy)
    step = direction * u * abs(w1) / w1
    if (np.conj(np.exp(1j * phi)) * step).real < 0.0:
        w1 = -w1
        step = -step
    s0 = (2.0 / 3.0) * (x1 - start) * w1

    def rhs(_, y):
        x, w = y[0], y[1]
        v = direction * u * abs(w) / w
        return [v, _dv(spec_c, x) * v / (2.0 * w), w * v]

    sol = solve_ivp(
        rhs, (0.0, arc_length), [x1, w1, s0],
        t_eval=np.linspace(0.0, arc_length, n_points),
        rtol=1e-9, atol=1e-12, method="RK45",
    )
    if not sol.success:
        raise TraceError(f"trace integration failed: {sol.message}")
    points = sol.y[0]
    action = sol.y[2]

    tps = turning_points(spec_c, energy).points
    for tp in tps:
        inside = np.abs(points - tp) < TURNING_DISC
        if not inside.any():
            continue
        if abs(tp - start) < TURNING_DISC:
            # the trace starts inside its own disc; flag only re-entry
            if inside.all():
                continue
            first_out = int(np.argmin(inside))  # first False index
            if inside[first_out:].any():
                raise TraceError(f"trace re-entered turning point {tp:.6g}")
        else:
            raise TraceError(f"trace entered turning point {tp:.6g}")
    return TracedLine(points=points, action=action, kind=kind,
                      direction=direction, start=complex(start), branch_angle=phi)


def trace_all_lines(spec: PotentialSpec, energy: float, arc_length: float = 8.0,
                    n_points: int = 200) -> tuple[list[TracedLine], list[str]]:
    """Trace every branch of both kinds from every turning point.

    Lines that run into another turning point (coalescing geometry) are
    collected as failure messages; all remaining lines are returned.
    """
    spec_c = canonicalize(spec)
    traces: list[TracedLine] = []
    failures: list[str] = []
    for i, tp in enumerate(turning_points(spec_c, energy).points):
        for kind in ("antistokes", "stokes"):
            for m, angle in enumerate(local_branch_angles(spec_c, energy, tp, kind)):
                try:
                    traces.append(trace_line(
                        spec_c, energy, tp, kind, (-1) ** m, arc_length,
                        n_points=n_points, branch_angle=angle))
                except TraceError as exc:
                    failures.append(
                        f"turning point {i} ({tp:.4g}), {kind} branch {m}: {exc}")
    return traces, failures
