"""Spectra of PT-symmetric anharmonic oscillators by three independent routes.

The potentials V(x) = s x^(2M) (ix)^eps + i b x are solved by

* closed-form leading-order semiclassical energies (``ptspec.wkb``),
* shooting along PT-mirrored anti-Stokes rays in the complex plane
  (``ptspec.shooting``),
* harmonic-oscillator-basis diagonalization (``ptspec.diag``),

with the Stokes-wedge geometry that makes the wedge choice explicit in
``ptspec.stokes``.  Different wedge pairs define inequivalent spectra for
the same potential; the ``ptspec`` CLI reproduces the benchmark tables
and figures demonstrating this.
"""

from .diag import BasisConfig, build_hamiltonian, eigenvalues, real_spectrum
from .levels import EnergyLevel, SpectrumResult, SpectrumWarning
from .potential import (
    PotentialSpec,
    TurningPointSet,
    canonicalize,
    equivalent_representations,
    evaluate,
    pt_check,
    turning_points,
)
from .shooting import (
    ShootingConfig,
    aligned_representation,
    find_eigenvalues,
    integrate_ray,
    matching,
)
from .stokes import (
    RayPair,
    StokesDiagram,
    asymptotic_lines,
    bb_rays,
    trace_line,
    wedge_rays,
)
from .wkb import (
    energy_bb,
    energy_general,
    energy_nm,
    quantization_integral,
    quantum_number,
)

__version__ = "0.1.0"

__all__ = [
    "BasisConfig",
    "EnergyLevel",
    "PotentialSpec",
    "RayPair",
    "ShootingConfig",
    "SpectrumResult",
    "SpectrumWarning",
    "StokesDiagram",
    "TurningPointSet",
    "aligned_representation",
    "asymptotic_lines",
    "bb_rays",
    "build_hamiltonian",
    "canonicalize",
    "eigenvalues",
    "energy_bb",
    "energy_general",
    "energy_nm",
    "equivalent_representations",
    "evaluate",
    "find_eigenvalues",
    "integrate_ray",
    "matching",
    "pt_check",
    "quantization_integral",
    "quantum_number",
    "real_spectrum",
    "trace_line",
    "turning_points",
    "wedge_rays",
    "__version__",
]
