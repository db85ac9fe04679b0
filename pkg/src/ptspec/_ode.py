"""Adaptive Dormand-Prince 5(4) integrator for the ray Schrodinger equation.

Solves psi'' = Q(rho) psi with Q(rho) = e^(2 i theta) (V(rho e^(i theta)) - E)
from rho_start down to rho_end, for the monomial potentials of this package.
The kernel is jitted because an eigenvalue scan evaluates it hundreds of
times with ~1e4 steps each.

The solution grows like exp(+action) toward the origin; whenever the state
magnitude exceeds ``rescale_threshold`` it is divided down and the factor
is accumulated in a running log_scale, so overflow is impossible for any
truncation radius.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# status codes returned by the kernel
OK = 0
STEP_UNDERFLOW = 1

# Dormand-Prince 5(4) tableau (FSAL)
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0)
# difference between the 5th- and 4th-order weights, for the error estimate
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


@njit(cache=True)
def _q_ray(rho, cos_t, sin_t, m2, eps, s, b, energy):
    """Q(rho) = e^(2 i theta) * (V(rho e^(i theta)) - E), integer powers only."""
    eit = complex(cos_t, sin_t)
    x = rho * eit
    ix = 1j * x
    v = complex(s, 0.0)
    for _ in range(m2):
        v *= x
    for _ in range(eps):
        v *= ix
    v += 1j * b * x
    return eit * eit * (v - energy)


@njit(cache=True)
def integrate_ray_kernel(m2, eps, s, b, energy, theta, rho_start, rho_end,
                         psi, dpsi, rtol, atol, rescale_threshold):
    """Integrate (psi, dpsi/drho) from rho_start down to rho_end.

    Returns (psi, dpsi, log_scale, status, rho_reached, n_steps).
    """
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    rho = rho_start
    log_scale = 0.0
    n_steps = 0

    k1p = dpsi
    k1d = _q_ray(rho, cos_t, sin_t, m2, eps, s, b, energy) * psi

    span = rho_start - rho_end
    q0 = abs(k1d) / max(abs(psi), 1e-300)
    h = -min(0.1 * span, 0.5 / (1.0 + np.sqrt(q0)))

    while rho > rho_end:
        if rho + h < rho_end:
            h = rho_end - rho
        # stages 2..6
        p = psi + h * _A21 * k1p
        d = dpsi + h * _A21 * k1d
        k2p = d
        k2d = _q_ray(rho + _C2 * h, cos_t, sin_t, m2, eps, s, b, energy) * p

        p = psi + h * (_A31 * k1p + _A32 * k2p)
        d = dpsi + h * (_A31 * k1d + _A32 * k2d)
        k3p = d
        k3d = _q_ray(rho + _C3 * h, cos_t, sin_t, m2, eps, s, b, energy) * p

        p = psi + h * (_A41 * k1p + _A42 * k2p + _A43 * k3p)
        d = dpsi + h * (_A41 * k1d + _A42 * k2d + _A43 * k3d)
        k4p = d
        k4d = _q_ray(rho + _C4 * h, cos_t, sin_t, m2, eps, s, b, energy) * p

        p = psi + h * (_A51 * k1p + _A52 * k2p + _A53 * k3p + _A54 * k4p)
        d = dpsi + h * (_A51 * k1d + _A52 * k2d + _A53 * k3d + _A54 * k4d)
        k5p = d
        k5d = _q_ray(rho + _C5 * h, cos_t, sin_t, m2, eps, s, b, energy) * p

        p = psi + h * (_A61 * k1p + _A62 * k2p + _A63 * k3p + _A64 * k4p + _A65 * k5p)
        d = dpsi + h * (_A61 * k1d + _A62 * k2d + _A63 * k3d + _A64 * k4d + _A65 * k5d)
        k6p = d
        k6d = _q_ray(rho + h, cos_t, sin_t, m2, eps, s, b, energy) * p

        # 5th-order solution; its derivative slot is the FSAL stage
        psi_new = psi + h * (_B1 * k1p + _B3 * k3p + _B4 * k4p + _B5 * k5p + _B6 * k6p)
        dpsi_new = dpsi + h * (_B1 * k1d + _B3 * k3d + _B4 * k4d + _B5 * k5d + _B6 * k6d)
        k7p = dpsi_new
        k7d = _q_ray(rho + h, cos_t, sin_t, m2, eps, s, b, energy) * psi_new

        err_p = h * (_E1 * k1p + _E3 * k3p + _E4 * k4p + _E5 * k5p + _E6 * k6p + _E7 * k7p)
        err_d = h * (_E1 * k1d + _E3 * k3d + _E4 * k4d + _E5 * k5d + _E6 * k6d + _E7 * k7d)
        sc_p = atol + rtol * max(abs(psi), abs(psi_new))
        sc_d = atol + rtol * max(abs(dpsi), abs(dpsi_new))
        err = np.sqrt(0.5 * ((abs(err_p) / sc_p) ** 2 + (abs(err_d) / sc_d) ** 2))

        if err <= 1.0:
            rho += h
            psi, dpsi = psi_new, dpsi_new
            k1p, k1d = k7p, k7d
            n_steps += 1
            mag = max(abs(psi), abs(dpsi))
            if mag > rescale_threshold:
                psi /= mag
                dpsi /= mag
                k1p /= mag
                k1d /= mag
                log_scale += np.log(mag)
        if err > 0.0:
            factor = 0.9 * err ** -0.2
        else:
            factor = 5.0
        h *= min(5.0, max(0.2, factor))
        if abs(h) < 1e-14 * max(rho_start, 1.0):
            return psi, dpsi, log_scale, STEP_UNDERFLOW, rho, n_steps

    return psi, dpsi, log_scale, OK, rho, n_steps
