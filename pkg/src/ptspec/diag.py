"""Oscillator-basis diagonalization of H = p^2 + V.

The basis is phi_n(x) = sqrt(alpha) * h_n(alpha x) with h_n the unit-scale
oscillator eigenfunctions, in which x is tridiagonal and p^2 pentadiagonal,
so every matrix element of the monomial potential is exact once x^K is
accumulated in a workspace padded by K rows.  The resulting Hamiltonian is
complex symmetric (not Hermitian); its eigenvalues come from the general
dense solver, and physical levels are recognized by being (numerically)
real and stable under basis-size growth.

This route only converges when the Stokes wedges of the problem contain
the real axis; for the off-axis problems the spectrum never stabilizes,
which ``real_spectrum`` reports rather than hides.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .levels import EnergyLevel, SpectrumResult, SpectrumWarning
from .potential import PotentialSpec

__all__ = [
    "BasisConfig",
    "EigenSolverError",
    "position_matrix",
    "momentum_squared_matrix",
    "build_hamiltonian",
    "eigenvalues",
    "real_spectrum",
]


class EigenSolverError(RuntimeError):
    """The QR iteration failed to converge within the standard budget."""


@dataclass(frozen=True)
class BasisConfig:
    """Basis truncation size, length scale, and acceptance thresholds.

    ``im_tol`` filters (relative) imaginary parts when selecting real
    eigenvalues; ``stab_tol`` is the relative cross-size stabilization
    threshold for n <= 5, ``stab_tol_high`` the relaxed one above that
    (higher levels converge slower in a fixed-size schedule).
    """

    size: int
    alpha: float = 1.0
    im_tol: float = 1e-8
    stab_tol: float = 1e-6
    stab_tol_high: float = 1e-3

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be >= 1")
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")


def position_matrix(size: int, alpha: float = 1.0) -> np.ndarray:
    """X[m, n] = (sqrt(n+1) delta_{m,n+1} + sqrt(n) delta_{m,n-1}) / (alpha sqrt(2))."""
    if size < 1:
        raise ValueError("size must be >= 1")
    x = np.zeros((size, size))
    root = np.sqrt(np.arange(1, size))
    x[np.arange(size - 1), np.arange(1, size)] = root
    x[np.arange(1, size), np.arange(size - 1)] = root
    return x / (alpha * np.sqrt(2.0))


def momentum_squared_matrix(size: int, alpha: float = 1.0) -> np.ndarray:
    """P^2: diagonal alpha^2 (2n+1)/2, second off-diagonals -alpha^2 sqrt((n+1)(n+2))/2."""
    if size < 1:
        raise ValueError("size must be >= 1")
    n = np.arange(size)
    p2 = np.diag(alpha ** 2 * (2 * n + 1) / 2.0)
    if size > 2:
        off = -alpha ** 2 * np.sqrt((n[:-2] + 1.0) * (n[:-2] + 2.0)) / 2.0
        p2[n[:-2], n[:-2] + 2] = off
        p2[n[:-2] + 2, n[:-2]] = off
    return p2


def build_hamiltonian(spec: PotentialSpec, basis: BasisConfig) -> np.ndarray:
    """Dense complex-symmetric matrix of p^2 + s i^eps x^K + i b x.

    x^K is accumulated at workspace size N_b + K and truncated, which
    makes the kept block exact (x has bandwidth 1, so no path of length K
    between kept indices leaves the workspace).
    """
    k = spec.degree
    if basis.size < k + 2:
        raise ValueError(f"basis size {basis.size} < K + 2 = {k + 2}")
    workspace = basis.size + k
    x = position_matrix(workspace, basis.alpha)
    xk = np.linalg.matrix_power(x, k)
    # binary powering of a symmetric matrix is symmetric only to rounding;
    # fold so the truncated Hamiltonian is symmetric exactly
    xk = 0.5 * (xk + xk.T)
    h = momentum_squared_matrix(basis.size, basis.alpha).astype(complex)
    h += spec.s * 1j ** spec.epsilon * xk[:basis.size, :basis.size]
    if spec.b != 0.0:
        h += 1j * spec.b * x[:basis.size, :basis.size]
    return h


def eigenvalues(a: np.ndarray) -> np.ndarray:
    """All eigenvalues of a dense complex matrix (backward-stable QR).

    Balancing, Hessenberg reduction and implicitly shifted QR with
    deflation via LAPACK; each returned value is exact for some A + dA
    with ||dA|| = O(order * eps * ||A||).  Non-convergence inside the
    standard shift budget raises ``EigenSolverError`` (LAPACK reports the
    count of unconverged trailing eigenvalues in its message).
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("input must be a square matrix")
    if a.shape[0] < 1:
        raise ValueError("order must be >= 1")
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"QR iteration did not converge: {exc}") from exc


def _real_levels(ev: np.ndarray, im_tol: float) -> np.ndarray:
    keep = np.abs(ev.imag) < im_tol * (1.0 + np.abs(ev))
    return np.sort(ev[keep].real)


def real_spectrum(spec: PotentialSpec, sizes, alpha: float = 1.0,
                  n_max: int = 10, im_tol: float = 1e-8,
                  stab_tol: float = 1e-6,
                  stab_tol_high: float = 1e-3) -> SpectrumResult:
    """Stabilized real eigenvalues over an increasing basis-size schedule.

    For each size the (numerically) real eigenvalues are kept; a level of
    the final size is accepted when its nearest counterpart at the
    previous size agrees to the stabilization threshold.  Levels that
    never stabilize are reported as warnings -- the expected outcome for
    potentials whose wedges avoid the real axis.
    """
    sizes = sorted(int(s) for s in sizes)
    if len(sizes) < 3:
        raise ValueError("need at least 3 basis sizes")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")

    spectra = []
    for size in sizes:
        basis = BasisConfig(size=size, alpha=alpha, im_tol=im_tol,
                            stab_tol=stab_tol, stab_tol_high=stab_tol_high)
        spectra.append(_real_levels(eigenvalues(build_hamiltonian(spec, basis)),
                                    im_tol))
    final, previous = spectra[-1], spectra[-2]

    levels = []
    notes = []
    for n in range(min(n_max + 1, len(final))):
        lam = final[n]
        change = np.abs(previous - lam).min() if len(previous) else np.inf
        threshold = (stab_tol if n <= 5 else stab_tol_high) * (1.0 + abs(lam))
        if change < threshold:
            levels.append(EnergyLevel(n=n, value=float(lam),
                                      method="diagonalization",
                                      err_estimate=float(change)))
        else:
            notes.append(SpectrumWarning(
                "unstable",
                f"level n={n} at E={lam:.9g} moved by {change:.3g} over the "
                f"last size step (threshold {threshold:.3g})"))
    if len(final) < n_max + 1:
        notes.append(SpectrumWarning(
            "missing",
            f"only {len(final)} (numerically) real eigenvalues at size "
            f"{sizes[-1]}, fewer than n_max + 1 = {n_max + 1}"))
    return SpectrumResult(levels=tuple(levels), warnings=tuple(notes))
