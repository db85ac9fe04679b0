"""Eigenvalues by shooting along a PT-mirrored pair of anti-Stokes rays.

On the right ray x = rho * e^(i theta) the Schrodinger equation becomes
psi'' = Q(rho) psi with Q = e^(2 i theta) (V - E).  The solution is seeded
deep in the wedge with the decaying WKB branch and integrated down to the
origin.  The left-ray solution is the PT image of the right one, so the
two-solution Wronskian at the origin collapses to

    W(E) = 2 Re[conj(psi(0)) * dpsi/dx(0)],

a real function of E whose zeros are exactly the eigenvalues of the
boundary-value problem defined by the ray pair.  ``find_eigenvalues``
scans W's sign on a WKB-spaced grid and refines each change by bisection.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _ode
from .levels import EnergyLevel, SpectrumResult, SpectrumWarning
from .potential import PotentialSpec, canonicalize
from .stokes import RayPair, asymptotic_lines
from .wkb import energy_general, label_from_quantum_number, quantum_number

__all__ = [
    "ShootingConfig",
    "RayResult",
    "AlignedRep",
    "SpectrumWarning",
    "SpectrumResult",
    "ShootingError",
    "integrate_ray",
    "matching",
    "two_ray_wronskian",
    "aligned_representation",
    "find_eigenvalues",
]

#: Re-action accumulated along the ray beyond which the seed error is
#: far below double precision (e^-70 from the subdominant admixture)
ACTION_TARGET = 40.0
#: explicit truncation radii must reach at least this action at the
#: largest scanned energy
ACTION_MINIMUM = 35.0

_TINY = 1e-300


class ShootingError(RuntimeError):
    pass


@dataclass(frozen=True)
class ShootingConfig:
    """Controls for the ray integration and the eigenvalue scan.

    ``rho_max`` of None solves Re-action = 40 for the truncation radius
    at every evaluated energy (keeps step counts uniform across levels).
    ``scan_step`` is a fraction of the local WKB level spacing.
    """

    rho_max: float | None = None
    ode_rel_tol: float = 1e-10
    ode_abs_tol: float = 1e-12
    scan_step: float = 0.25
    root_tol: float = 1e-7
    max_bisections: int = 80
    rescale_threshold: float = 1e100

    def __post_init__(self):
        if self.rho_max is not None and self.rho_max <= 0.0:
            raise ValueError("rho_max must be positive")
        for name in ("ode_rel_tol", "ode_abs_tol", "scan_step", "root_tol"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class RayResult:
    """State at the end of a ray integration (true psi = psi0 * exp(log_scale))."""

    psi0: complex
    dpsi0_dx: complex
    log_scale: float
    rho_max: float
    n_steps: int


@dataclass(frozen=True)
class AlignedRep:
    """Representation of the potential whose turning pair matches a ray pair."""

    rep: PotentialSpec
    parity_flipped: bool
    well_aligned: bool


def _ray_q(spec: PotentialSpec, energy: float, theta: float, rho: np.ndarray) -> np.ndarray:
    x = rho * np.exp(1j * theta)
    v = spec.s * x ** (2 * spec.M) * (1j * x) ** spec.epsilon + 1j * spec.b * x
    return np.exp(2j * theta) * (v - energy)


def _re_action(spec: PotentialSpec, energy: float, theta: float, radius: float,
               n: int = 600) -> float:
    """Re int_0^R sqrt(Q) drho with the pointwise Re >= 0 branch."""
    rho = np.linspace(0.0, radius, n)
    w = np.sqrt(_ray_q(spec, energy, theta, rho))
    w = np.where(w.real < 0.0, -w, w)
    return float(np.trapezoid(w.real, rho))


def _auto_rho_max(spec: PotentialSpec, energy: float, theta: float) -> float:
    hi = max(1.0, energy ** (1.0 / spec.degree))
    for _ in range(200):
        if _re_action(spec, energy, theta, hi) >= ACTION_TARGET:
            break
        hi *= 1.5
    else:
        raise ShootingError("could not reach the target action along the ray")
    lo = 0.0
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        if _re_action(spec, energy, theta, mid) < ACTION_TARGET:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _check_antistokes(spec: PotentialSpec, theta: float) -> None:
    diagram = asymptotic_lines(spec)
    dist = min(
        abs((theta - a + np.pi) % (2.0 * np.pi) - np.pi)
        for a in diagram.angles("antistokes")
    )
    if dist > 1e-9:
        warnings.warn(
            f"theta={theta:.6f} is not an anti-Stokes direction of {spec} "
            f"(nearest is {dist:.3g} rad away); integration may converge slowly",
            stacklevel=3,
        )


def integrate_ray(spec: PotentialSpec, energy: float, theta: float,
                  config: ShootingConfig | None = None,
                  rho_end: float = 0.0) -> RayResult:
    """Integrate the ray equation from the truncation radius down to rho_end.

    The seed at rho_max is psi = 1, dpsi/drho = -sqrt(Q) with the
    positive-real-part branch (the outward-decaying WKB solution; the
    prefactor cancels in the matching as the action is ~40).  Returns the
    rescaled endpoint state; ``dpsi0_dx`` is the derivative with respect
    to x, i.e. e^(-i theta) times the rho derivative.
    """
    config = config or ShootingConfig()
    _check_antistokes(spec, theta)
    rho_max = config.rho_max if config.rho_max is not None else _auto_rho_max(
        spec, energy, theta)
    if rho_max <= rho_end:
        raise ValueError("rho_max must exceed rho_end")

    q_seed = complex(_ray_q(spec, energy, theta, np.array([rho_max]))[0])
    if abs(q_seed) < 1e-12:
        raise ShootingError(
            f"seed-branch ambiguity: |V - E| < 1e-12 at rho_max={rho_max:g}")
    w = np.sqrt(q_seed)
    if w.real < 0.0:
        w = -w

    psi, dpsi, log_scale, status, rho_reached, n_steps = _ode.integrate_ray_kernel(
        2 * spec.M, spec.epsilon, float(spec.s), spec.b, float(energy),
        float(theta), float(rho_max), float(rho_end),
        1.0 + 0.0j, -w, config.ode_rel_tol, config.ode_abs_tol,
        config.rescale_threshold,
    )
    if status == _ode.STEP_UNDERFLOW:
        raise ShootingError(f"step size underflow at rho={rho_reached:g}")
    return RayResult(
        psi0=psi,
        dpsi0_dx=np.exp(-1j * theta) * dpsi,
        log_scale=log_scale,
        rho_max=rho_max,
        n_steps=n_steps,
    )


def matching(spec: PotentialSpec, energy: float, theta_right: float,
             config: ShootingConfig | None = None) -> float:
    """Normalized origin Wronskian F(E) of the PT-reduced two-ray problem.

    F = 2 Re[conj(psi0) dpsi0_dx] / (|psi0|^2 + |dpsi0_dx|^2), which stays
    in [-1, 1] across the ~e^40 growth of the raw solution and vanishes
    exactly at the eigenvalues (including the real-potential case where
    psi is real and the product-normalized Wronskian would be stuck at
    +/-1).
    """
    ray = integrate_ray(spec, energy, theta_right, config)
    wron = 2.0 * (np.conj(ray.psi0) * ray.dpsi0_dx).real
    return float(wron / (abs(ray.psi0) ** 2 + abs(ray.dpsi0_dx) ** 2 + _TINY))


def two_ray_wronskian(spec: PotentialSpec, energy: float, rays: RayPair,
                      config: ShootingConfig | None = None) -> complex:
    """Explicit two-solution Wronskian at the origin, scale-normalized.

    Integrates both rays independently (no PT reduction); used to verify
    that the reduced matching function is the real part of the honest
    Wronskian.  The common exponential scale cancels in the normalization.
    """
    right = integrate_ray(spec, energy, rays.theta_right, config)
    left = integrate_ray(spec, energy, rays.theta_left, config)
    wron = left.psi0 * right.dpsi0_dx - left.dpsi0_dx * right.psi0
    norm = (abs(left.psi0) * abs(right.dpsi0_dx)
            + abs(left.dpsi0_dx) * abs(right.psi0) + _TINY)
    return complex(wron / norm)


def _principal(angle: float) -> float:
    return (angle + np.pi) % (2.0 * np.pi) - np.pi


def aligned_representation(spec: PotentialSpec, rays: RayPair) -> AlignedRep:
    """Find the (M' >= 1, eps', +1) representation matching a ray pair.

    The closed-form spectrum and the level labels depend on which
    turning-point pair the rays flank, and that pair is encoded in the
    representation: x_0 sits at angle -pi*eps'/(2K).  Candidates are all
    M' >= 1 rewritings of the potential itself (x_0 compared with
    theta_right) and of its parity image V(-x) (compared with the
    parity-transformed ray -theta_right).  The nearest candidate wins;
    alignment worse than one wedge half-width is flagged.
    """
    base = canonicalize(spec)
    k = base.degree
    target_value = base.s * 1j ** base.epsilon  # coefficient of x^K
    theta = _principal(rays.theta_right)

    candidates = []
    for m_p in range(1, k // 2 + 1):
        eps_p = k - 2 * m_p
        value = 1j ** eps_p
        x0_angle = -np.pi * eps_p / (2.0 * k)
        if abs(value - target_value) < 1e-12:
            candidates.append((abs(_principal(x0_angle - theta)), m_p, eps_p, False))
        # parity image: V(-x) = (-1)^K V(x) for these monomials
        if k % 2 == 1 and abs(value + target_value) < 1e-12:
            candidates.append((abs(_principal(x0_angle + theta)), m_p, eps_p, True))
    if not candidates:
        raise ShootingError(
            f"no semiclassical labeling representation exists for {spec}")
    dist, m_p, eps_p, parity = min(candidates)
    rep = PotentialSpec(m_p, eps_p, 1, 0.0)
    return AlignedRep(rep=rep, parity_flipped=parity,
                      well_aligned=dist <= np.pi / (k + 2) + 1e-9)


def _bisect_root(f, e_lo: float, e_hi: float, f_lo: float,
                 config: ShootingConfig) -> tuple[float, float]:
    """Shrink a sign-change bracket; returns (root, final bracket width)."""
    for _ in range(config.max_bisections):
        if e_hi - e_lo <= config.root_tol:
            break
        mid = 0.5 * (e_lo + e_hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid, 0.0
        if (f_mid < 0.0) == (f_lo < 0.0):
            e_lo, f_lo = mid, f_mid
        else:
            e_hi = mid
    return 0.5 * (e_lo + e_hi), e_hi - e_lo


def find_eigenvalues(spec: PotentialSpec, rays: RayPair, n_max: int,
                     config: ShootingConfig | None = None) -> SpectrumResult:
    """Scan and refine all eigenvalues up to quantum number n_max.

    The scan runs from 0.1 x (WKB ground level) to 1.5 x (WKB level
    n_max) of the ray-aligned representation, stepping by ``scan_step``
    times the local WKB spacing; each sign change of the matching
    function is bisected to ``root_tol``.  Levels are labeled by rounding
    the continuous quantum number; collisions, gaps and unlabeled roots
    are reported as structured warnings, never dropped silently.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    config = config or ShootingConfig()
    notes: list[SpectrumWarning] = []

    aligned = aligned_representation(spec, rays)
    rep = aligned.rep
    if not aligned.well_aligned:
        notes.append(SpectrumWarning(
            "alignment",
            f"ray pair sits far from every turning pair of {spec}; "
            f"labels use {rep} and may be unreliable"))
    if spec.b != 0.0:
        notes.append(SpectrumWarning(
            "linear-term",
            "labels ignore the i*b*x term (leading-order only)"))

    power = (4 * rep.M + 2 * rep.epsilon) / (rep.degree + 2)
    coeff = energy_general(0, rep.M, rep.epsilon) / 0.5 ** power

    def wkb_level(nu: float) -> float:
        return coeff * (nu + 0.5) ** power

    def spacing(energy: float) -> float:
        nu = max((energy / coeff) ** (1.0 / power) - 0.5, 0.0)
        return wkb_level(nu + 1.0) - wkb_level(nu)

    e_lo = 0.1 * wkb_level(0.0)
    e_hi = 1.5 * wkb_level(float(n_max))
    if config.rho_max is not None:
        action = _re_action(spec, e_hi, rays.theta_right, config.rho_max)
        if action < ACTION_MINIMUM:
            raise ValueError(
                f"rho_max={config.rho_max:g} reaches action {action:.1f} < "
                f"{ACTION_MINIMUM:g} at the scan maximum E={e_hi:g}")

    def f(energy: float) -> float:
        return matching(spec, energy, rays.theta_right, config)

    roots: list[tuple[float, float]] = []
    e_prev = e_lo
    f_prev = f(e_prev)
    while e_prev < e_hi:
        e_next = min(e_prev + config.scan_step * spacing(e_prev), e_hi)
        f_next = f(e_next)
        if f_next == 0.0:
            roots.append((e_next, 0.0))
        elif (f_next < 0.0) != (f_prev < 0.0):
            roots.append(_bisect_root(f, e_prev, e_next, f_prev, config))
        e_prev, f_prev = e_next, f_next

    # deduplicate (adjacent brackets can touch the same root)
    deduped: list[tuple[float, float]] = []
    for root, err in sorted(roots):
        if deduped and abs(root - deduped[-1][0]) <= 10.0 * config.root_tol:
            continue
        deduped.append((root, err))

    levels = []
    seen_labels: dict[int, float] = {}
    for root, err in deduped:
        label = label_from_quantum_number(quantum_number(rep, root))
        if label is None:
            notes.append(SpectrumWarning(
                "unlabeled", f"root E={root:.9g} has no integer quantum number"))
        elif label in seen_labels:
            notes.append(SpectrumWarning(
                "label-collision",
                f"roots E={seen_labels[label]:.9g} and E={root:.9g} both label n={label}"))
        else:
            seen_labels[label] = root
        if label is None or label <= n_max:
            levels.append(EnergyLevel(n=label, value=root, method="shooting",
                                      err_estimate=err))
    for n in range(n_max + 1):
        if n not in seen_labels:
            notes.append(SpectrumWarning("label-gap", f"no root labeled n={n}"))
    return SpectrumResult(levels=tuple(levels), warnings=tuple(notes))
