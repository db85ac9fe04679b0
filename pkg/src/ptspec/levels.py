"""Shared result types for the three spectrum solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

__all__ = ["EnergyLevel", "SpectrumWarning", "SpectrumResult"]

Method = Literal["wkb-bb", "wkb-nm", "wkb-general", "shooting", "diagonalization"]


@dataclass(frozen=True)
class EnergyLevel:
    """One eigenvalue with its provenance.

    ``n`` is None when the level could not be matched to an integer
    quantum number.
    """

    n: int | None
    value: float
    method: Method
    err_estimate: float = 0.0


@dataclass(frozen=True)
class SpectrumWarning:
    """Structured solver diagnostic that must not be silently dropped."""

    kind: str
    message: str


@dataclass(frozen=True)
class SpectrumResult:
    levels: tuple[EnergyLevel, ...]
    warnings: tuple[SpectrumWarning, ...]

    def values(self) -> list[float]:
        return [lv.value for lv in self.levels]

    def level(self, n: int) -> EnergyLevel:
        for lv in self.levels:
            if lv.n == n:
                return lv
        raise KeyError(f"no level labeled n={n}")
