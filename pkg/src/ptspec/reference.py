"""Published benchmark values for the quintic PT-symmetric oscillator.

Two inequivalent eigenvalue problems share the potential (ix)^5:

* wedges containing the real axis -- solvable by diagonalization (DM
  column), by shooting along the flanking anti-Stokes rays (NI column),
  and approximated by the ``energy_nm`` closed form;
* wedges below the real axis (the -(ix)^5 formulation) -- benchmarked by
  a high-precision reference column and approximated by ``energy_bb``.

The angle lists reproduce the four published Stokes-geometry panels, as
numerators of pi/14.
"""

from __future__ import annotations

# --- real-axis wedge problem of (ix)^5 (benchmark table 2) -----------------

#: diagonalization column, n = 0..10
QUINTIC_AXIS_DIAG = (
    1.16477040794341,
    4.36378436771211,
    8.95516699824067,
    14.4177548302741,
    20.6101375100489,
    27.4284077210062,
    34.8037156407346,
    42.6845638108818,
    51.030837828189,
    59.81014759020,
    68.9956534721,
)

#: numerical-integration column (6 printed decimals), n = 0..10
QUINTIC_AXIS_SHOOTING = (
    1.164771,
    4.363785,
    8.955167,
    14.417755,
    20.610138,
    27.428408,
    34.803715,
    42.684564,
    51.030837,
    59.810150,
    68.995644,
)

#: leading-order closed form (energy_nm at N = 2), n = 0..10
QUINTIC_AXIS_WKB = (
    0.8906863480,
    4.278845331,
    8.876737420,
    14.35514917,
    20.55551587,
    27.37969662,
    34.75941365,
    42.64372812,
    50.99281286,
    59.77445901,
    68.96194510,
)

# --- off-axis wedge problem (benchmark table 1) -----------------------------

#: high-precision reference eigenvalues, n = 0..3
QUINTIC_OFF_AXIS_REFERENCE = (
    1.9082645781707777079714407742647568531562,
    8.58722083620722180027956616257834275867345,
    17.710809011731145002460444521074221024,
    28.595103311735974787298524540082589714,
)

#: leading-order closed form (energy_bb at N = 2), n = 0..3
QUINTIC_OFF_AXIS_WKB = (
    1.771244715,
    8.509035978,
    17.65253759,
    28.54706617,
)

# --- published Stokes-geometry panels ---------------------------------------

#: numerators q of the displayed line angles q*pi/14, per potential and panel
FIGURE_ANGLES = {
    (0, 5): {"A": (1, 13, 15, 17, 25, 27), "B": (1, 3, 5, 9, 11, 13)},
    (1, 3): {"A": (15, 17, 19, 23, 25, 27), "B": (1, 3, 11, 13, 15, 27)},
}

#: published level-spacing ratios of the two closed forms at N = 1, 2, 3
BB_OVER_NM_RATIOS = (1.0, 1.988629015, 3.523156867)
