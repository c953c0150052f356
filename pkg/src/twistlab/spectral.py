"""Continuum-calibrated discrete Fourier transforms and the windowed
(short-time) transform used by the wavefront estimator.

Convention, fixed project-wide: F f(xi) = (2pi)^{-n/2} integral of
f(x) exp(-i xi.x) dx.  On a centered grid with spacing d = 2L/N this is
realized per axis as

    F_hat[k] = (2pi)^{-1/2} d (-1)^{N/2} (-1)^k FFT[(-1)^j f_j][k]

which is exactly unitary from the grid to its dual and has the sampled
unit Gaussian as a fixed point.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .grids import Grid, SampledField


def _axis_shape(v: np.ndarray, axis: int, ndim: int) -> np.ndarray:
    shape = [1] * ndim
    shape[axis] = v.size
    return v.reshape(shape)


def fourier_forward(f: SampledField) -> SampledField:
    """Unitary Fourier transform; the result lives on the dual grid."""
    g = f.grid
    signs = (-1.0) ** np.arange(g.N)
    w = np.asarray(f.values, dtype=complex)
    for ax in range(g.n):
        s = _axis_shape(signs, ax, g.n)
        w = np.fft.fft(w * s, axis=ax) * s
    scale = ((2.0 * np.pi) ** -0.5 * g.spacing * (-1.0) ** (g.N // 2)) ** g.n
    return SampledField(g.dual(), w * scale)


def fourier_inverse(f: SampledField) -> SampledField:
    """Inverse transform, also mapping a grid to its dual (the dual of
    the dual is the original grid, so round trips land home)."""
    g = f.grid
    back = fourier_forward(SampledField(g, np.conj(f.values)))
    return SampledField(back.grid, np.conj(back.values))


# ---------------------------------------------------------------------------
# windows

@dataclass(frozen=True, eq=False)
class WindowFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).reshape((self.grid.N,) * self.grid.n)
        object.__setattr__(self, "values", vals)
        if not np.all(np.isfinite(vals.view(float))):
            raise ValueError("window values must be finite")
        if not np.any(vals):
            raise ValueError("window must not vanish identically")

    @cached_property
    def l2norm(self) -> float:
        g = self.grid
        return float(np.sqrt(g.spacing**g.n * np.sum(np.abs(self.values) ** 2)))

    @cached_property
    def sigma_x(self) -> float:
        """Largest per-axis amplitude-weighted spatial spread."""
        return _spread(self.grid, self.values)

    @cached_property
    def sigma_xi(self) -> float:
        """Largest per-axis amplitude-weighted spread of the transform."""
        hat = fourier_forward(SampledField(self.grid, self.values))
        return _spread(hat.grid, hat.values)


def _spread(g: Grid, values: np.ndarray) -> float:
    amp = np.abs(values)
    total = float(amp.sum())
    if total == 0.0:
        return 0.0
    axis_pts = g.axis()
    worst = 0.0
    for ax in range(g.n):
        x2 = _axis_shape(axis_pts**2, ax, g.n)
        worst = max(worst, float(np.sum(x2 * amp)) / total)
    return float(np.sqrt(worst))


def gaussian_window(g: Grid) -> WindowFunction:
    """pi^{-n/4} exp(-|x|^2/2); unit mass in L2 up to grid truncation."""
    pts_sq = np.zeros((g.N,) * g.n)
    ax = g.axis()
    for a in range(g.n):
        pts_sq = pts_sq + _axis_shape(ax**2, a, g.n)
    vals = np.pi ** (-g.n / 4.0) * np.exp(-0.5 * pts_sq)
    return WindowFunction(g, vals)


def hann_window(g: Grid, half_width: float = 2.5) -> WindowFunction:
    """Compactly supported cos^2 bump, product over axes; an unrelated
    window family for cross-checking estimator invariance."""
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    vals = np.ones((g.N,) * g.n)
    ax = g.axis()
    for a in range(g.n):
        w = np.where(
            np.abs(ax) < half_width,
            np.cos(np.pi * ax / (2.0 * half_width)) ** 2,
            0.0,
        )
        vals = vals * _axis_shape(w, a, g.n)
    return WindowFunction(g, vals)


# ---------------------------------------------------------------------------
# windowed transform

@dataclass(frozen=True, eq=False)
class STFTData:
    """Windowed spectrogram over the full position-frequency lattice.

    `values[j, k]` (multi-indices j over positions, k over frequencies)
    holds V(x_j, xi_k) including the overall constant recorded in
    `normalization`; magnitude-only consumers can ignore the phase
    bookkeeping entirely.
    """

    base_grid: Grid
    freq_grid: Grid
    values: np.ndarray
    normalization: float
    window_sigma_x: float = 0.0
    window_sigma_xi: float = 0.0
    phase_kernel: str = "exp(-i xi.y) in the integrand"

    def __post_init__(self):
        n = self.base_grid.n
        expected = (self.base_grid.N,) * n + (self.freq_grid.N,) * n
        vals = np.asarray(self.values, dtype=complex).reshape(expected)
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.base_grid.n

    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    def to_csv(self) -> str:
        g, d = self.base_grid, self.freq_grid
        n = g.n
        buf = io.StringIO()
        cols = [f"x{i+1}" for i in range(n)] + [f"xi{i+1}" for i in range(n)] + ["abs"]
        buf.write(",".join(cols) + "\n")
        xs = g.points()
        fs = d.points()
        mag = self.magnitude().reshape(g.M, d.M)
        for j in range(g.M):
            xj = xs[j]
            for k in range(d.M):
                row = list(xj) + list(fs[k]) + [mag[j, k]]
                buf.write(",".join(f"{v:.12g}" for v in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        flat = self.values.reshape(-1)
        return json.dumps(
            {
                "kind": "stft",
                "n": self.base_grid.n,
                "N": self.base_grid.N,
                "L": self.base_grid.L,
                "normalization": self.normalization,
                "re": [float(v) for v in flat.real],
                "im": [float(v) for v in flat.imag],
            }
        )


def _shift_zero_pad(values: np.ndarray, shifts: tuple[int, ...]) -> np.ndarray:
    """Integer lattice translate; samples pushed past the box vanish."""
    out = np.zeros_like(values)
    src = []
    dst = []
    for s, size in zip(shifts, values.shape):
        if abs(s) >= size:
            return out
        if s >= 0:
            src.append(slice(0, size - s))
            dst.append(slice(s, size))
        else:
            src.append(slice(-s, size))
            dst.append(slice(0, size + s))
    out[tuple(dst)] = values[tuple(src)]
    return out


def stft(u: SampledField, window: WindowFunction) -> STFTData:
    """V(x, xi) on the full lattice: for each grid point x, transform
    y -> u(y) conj(window(y - x)) and divide by the window norm.

    The window is translated by whole grid steps with zero fill, so any
    sampled window works; the (2pi)^{-n/2} lives inside the transform.
    """
    g = u.grid
    if not g.compatible(window.grid):
        raise ValueError("field and window grids differ")
    n, N = g.n, g.N
    wvals = window.values
    nrm = 1.0 / window.l2norm
    out = np.empty((N,) * n + (N,) * n, dtype=complex)
    uvals = u.values
    for j in np.ndindex(*(N,) * n):
        shifts = tuple(idx - N // 2 for idx in j)
        shifted = _shift_zero_pad(wvals, shifts)
        slab = fourier_forward(SampledField(g, uvals * np.conj(shifted)))
        out[j] = slab.values * nrm
    return STFTData(
        base_grid=g,
        freq_grid=g.dual(),
        values=out,
        normalization=(2.0 * np.pi) ** (-n / 2.0) / window.l2norm,
        window_sigma_x=window.sigma_x,
        window_sigma_xi=window.sigma_xi,
    )


def parseval_constant(g: Grid) -> float:
    """Exact lattice Parseval factor: spacing^{2n} sum |V|^2 equals this
    times |u|_2^2 for a unit-norm window (see the derivation note in the
    calibration record)."""
    return float((2.0 * g.L**2 / (np.pi * g.N)) ** g.n)
