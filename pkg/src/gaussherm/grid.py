"""Uniform symmetric grids and sampled complex functions.

All quadrature in the package runs against the measure dm = dx/sqrt(2*pi),
on a uniform grid x_j = -L + j*(2L/N), j = 0..N-1 (the right endpoint +L is
excluded; integrands are expected to have decayed there anyway).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SQRT_2PI = np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class GridSpec:
    """Uniform symmetric grid on [-L, L) with an even number of points.

    Parameters
    ----------
    half_width : float
        L > 0, in x-units.
    num_points : int
        Even, at least 16.  Spacing is h = 2L/N and x = 0 is the point
        with index N/2.
    """

    half_width: float = 16.0
    num_points: int = 4096

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.num_points < 16 or self.num_points % 2 != 0:
            raise ValueError(
                f"num_points must be even and >= 16, got {self.num_points}"
            )

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.num_points

    @property
    def xs(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.num_points)


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class SampledFunction:
    """Complex values of a function on a :class:`GridSpec`."""

    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.num_points,):
            raise ValueError(
                f"values has shape {vals.shape}, grid has {self.grid.num_points} points"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", vals)


def sample(fn, grid: GridSpec = DEFAULT_GRID) -> SampledFunction:
    """Sample a vectorized callable on the grid."""
    return SampledFunction(grid, np.asarray(fn(grid.xs), dtype=complex))


def trapezoid(values: np.ndarray, spacing: float):
    """Trapezoid rule on uniformly spaced samples (spectrally accurate for
    smooth integrands that decay at both ends)."""
    return spacing * (values.sum() - 0.5 * (values[0] + values[-1]))


def trapezoid_weights(n: int, spacing: float) -> np.ndarray:
    w = np.full(n, spacing)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def norm_sq(f: SampledFunction) -> float:
    """Squared L^2(dm) norm by quadrature."""
    return float(trapezoid(np.abs(f.values) ** 2, f.grid.spacing).real) / SQRT_2PI
