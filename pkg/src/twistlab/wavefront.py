"""Phase space singularity estimation by ray-wise decay regression on
the windowed spectrogram.

A direction on the unit sphere of R^{2n} is declared singular when the
fitted polynomial decay order of |V(r w)| along the ray falls below a
calibrated threshold.  The estimator is deliberately plain: log-spaced
radii inside the trusted (truncation-free) band, multilinear
interpolation of |V|, one least squares fit per direction.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.stats import qmc

from . import calibration
from .cones import ConicSet, caps_set
from .grids import SampledField
from .spectral import STFTData, WindowFunction, fourier_forward, gaussian_window, stft

_SPHERE_SEED = 20240817


@dataclass(frozen=True, eq=False)
class DirectionGrid:
    """Antipodally closed unit vectors with a covering-radius estimate."""

    directions: np.ndarray
    resolution_deg: float

    def __post_init__(self):
        dirs = np.atleast_2d(np.asarray(self.directions, dtype=float))
        norms = np.linalg.norm(dirs, axis=1)
        if not np.all(np.abs(norms - 1.0) <= 1e-12):
            raise ValueError("directions must be unit vectors")
        object.__setattr__(self, "directions", dirs)

    @property
    def dim(self) -> int:
        return self.directions.shape[1]

    @property
    def count(self) -> int:
        return self.directions.shape[0]


def direction_grid(dim: int, count: int | None = None, seed: int = _SPHERE_SEED) -> DirectionGrid:
    """Standard sphere samplings: uniform angles on S^1, a scrambled
    low-discrepancy net mapped to S^3; both closed under negation."""
    if dim == 2:
        d = 360 if count is None else int(count)
        if d < 4 or d % 2:
            raise ValueError("need an even count of at least 4")
        ang = np.arange(d) * (2.0 * np.pi / d)
        dirs = np.column_stack([np.cos(ang), np.sin(ang)])
        return DirectionGrid(dirs, resolution_deg=180.0 / d)
    if dim == 4:
        d = 2048 if count is None else int(count)
        if d < 8 or d % 2:
            raise ValueError("need an even count of at least 8")
        half = d // 2
        u = qmc.Sobol(3, scramble=True, seed=seed).random(half)
        s1 = np.sqrt(1.0 - u[:, 0])
        s2 = np.sqrt(u[:, 0])
        q = np.column_stack(
            [
                s1 * np.sin(2.0 * np.pi * u[:, 1]),
                s1 * np.cos(2.0 * np.pi * u[:, 1]),
                s2 * np.sin(2.0 * np.pi * u[:, 2]),
                s2 * np.cos(2.0 * np.pi * u[:, 2]),
            ]
        )
        q /= np.linalg.norm(q, axis=1, keepdims=True)
        dirs = np.concatenate([q, -q], axis=0)
        # covering radius probed on a deterministic random cloud
        rng = np.random.default_rng(seed + 1)
        probes = rng.standard_normal((4096, 4))
        probes /= np.linalg.norm(probes, axis=1, keepdims=True)
        cosmax = np.max(np.abs(probes @ dirs.T), axis=1)
        res = float(np.degrees(np.max(np.arccos(np.clip(cosmax, -1.0, 1.0)))))
        return DirectionGrid(dirs, resolution_deg=res)
    raise ValueError("direction grids are provided for phase space dimensions 2 and 4")


@dataclass(frozen=True)
class WavefrontParams:
    """Estimator configuration; None fields pull calibrated defaults."""

    k_test: float | None = None
    r_max_frac: float = 0.8
    r_min_frac: float = 0.2
    radii: int = 12
    flag_floor: float | None = None
    dead_floor: float = 1e-13
    directions: DirectionGrid | None = None

    def resolved_k_test(self) -> float:
        return calibration.default_k_test() if self.k_test is None else float(self.k_test)


@dataclass(frozen=True, eq=False)
class WavefrontEstimate:
    directions: DirectionGrid
    k_hat: np.ndarray
    residual: np.ndarray
    trusted: np.ndarray
    value_at_rmax: np.ndarray
    k_test: float
    r_min: float
    r_max: float
    radii: int
    flag_floor: float

    @property
    def flagged(self) -> np.ndarray:
        """Boolean mask: decay order below threshold, or magnitude still
        above the absolute floor at the outer radius."""
        mask = self.k_hat < self.k_test
        if math.isfinite(self.flag_floor):
            mask = mask | (self.value_at_rmax > self.flag_floor)
        return mask

    def flagged_directions(self) -> np.ndarray:
        return self.directions.directions[self.flagged]

    def to_caps(self, radius_deg: float | None = None) -> ConicSet:
        dirs = self.flagged_directions()
        r = self.directions.resolution_deg if radius_deg is None else radius_deg
        if len(dirs) == 0:
            from .cones import empty_set

            return empty_set(self.directions.dim)
        return caps_set(dirs, r)

    def to_json(self) -> str:
        return json.dumps(
            {
                "directions": self.directions.directions.tolist(),
                "k_hat": [None if not math.isfinite(v) else v for v in self.k_hat.tolist()],
                "flagged": self.flagged.tolist(),
                "params": {
                    "k_test": self.k_test,
                    "r_min": self.r_min,
                    "r_max": self.r_max,
                    "radii": self.radii,
                    "flag_floor": None if not math.isfinite(self.flag_floor) else self.flag_floor,
                    "resolution_deg": self.directions.resolution_deg,
                },
            }
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        d = self.directions.dim
        cols = [f"w{i+1}" for i in range(d)] + ["k_hat", "residual", "flagged", "trusted"]
        buf.write(",".join(cols) + "\n")
        fl = self.flagged
        for i, w in enumerate(self.directions.directions):
            row = [f"{v:.12g}" for v in w]
            row += [f"{self.k_hat[i]:.12g}", f"{self.residual[i]:.12g}",
                    str(bool(fl[i])), str(bool(self.trusted[i]))]
            buf.write(",".join(row) + "\n")
        return buf.getvalue()


def trusted_radii(v: STFTData) -> tuple[float, float]:
    """Largest |x| and |xi| not contaminated by box truncation: the box
    half-width minus twice the window spread on each side."""
    g, d = v.base_grid, v.freq_grid
    tx = g.L - 2.0 * v.window_sigma_x
    tf = d.L - 2.0 * v.window_sigma_xi
    return tx, tf


def estimate_wf(
    u: SampledField,
    window: WindowFunction | None = None,
    params: WavefrontParams | None = None,
) -> WavefrontEstimate:
    """Fit the decay order of |V| along each ray of a direction grid.

    Per direction w: sample |V| at R log-spaced radii in
    [r_min, r_max] (multilinear interpolation), regress -log|V| against
    log(1 + r^2), and flag the ray when the slope stays below k_test.
    Rays whose spectrogram is already at the numerical floor at r_max
    count as infinitely fast decay.
    """
    if params is None:
        params = WavefrontParams()
    if not np.any(u.values):
        raise ValueError("cannot estimate singularities of the zero field")
    if window is None:
        window = gaussian_window(u.grid)
    v = stft(u, window)
    return estimate_wf_from_stft(v, params)


def estimate_wf_from_stft(v: STFTData, params: WavefrontParams | None = None) -> WavefrontEstimate:
    if params is None:
        params = WavefrontParams()
    n = v.base_grid.n
    dim = 2 * n
    tx, tf = trusted_radii(v)
    if tx <= 0.0 or tf <= 0.0:
        raise ValueError(
            "trusted region is empty: the grid box is too small for the window "
            f"(spatial margin {tx:.3g}, frequency margin {tf:.3g})"
        )
    r_trust = min(tx, tf)
    r_max = params.r_max_frac * r_trust
    r_min = params.r_min_frac * r_max
    if params.radii < 8:
        raise ValueError("need at least 8 radii for a stable fit")
    dirs = params.directions if params.directions is not None else direction_grid(dim)
    if dirs.dim != dim:
        raise ValueError(f"direction grid dimension {dirs.dim} != phase space dimension {dim}")

    axes = [v.base_grid.axis()] * n + [v.freq_grid.axis()] * n
    interp = RegularGridInterpolator(
        axes, v.magnitude(), method="linear", bounds_error=False, fill_value=0.0
    )
    radii = np.geomspace(r_min, r_max, params.radii)
    t = np.log1p(radii**2)
    design = np.column_stack([t, np.ones_like(t)])

    pts = radii[None, :, None] * dirs.directions[:, None, :]
    vals = interp(pts.reshape(-1, dim)).reshape(dirs.count, params.radii)

    k_test = params.resolved_k_test()
    flag_floor = math.inf if params.flag_floor is None else float(params.flag_floor)
    k_hat = np.empty(dirs.count)
    residual = np.zeros(dirs.count)
    trusted = np.ones(dirs.count, dtype=bool)
    # per-coordinate trust: any sample outside the clean band voids the ray
    limits = np.array([tx] * n + [tf] * n)
    outside = np.any(np.abs(pts) > limits[None, None, :], axis=(1, 2))
    trusted[outside] = False

    dead = vals[:, -1] <= params.dead_floor
    k_hat[dead] = math.inf
    live = ~dead
    if np.any(live):
        y = -np.log(np.maximum(vals[live], 1e-300))
        coef, *_ = np.linalg.lstsq(design, y.T, rcond=None)
        k_hat[live] = coef[0]
        fit = design @ coef
        residual[live] = np.sqrt(np.mean((fit - y.T) ** 2, axis=0))
    return WavefrontEstimate(
        directions=dirs,
        k_hat=k_hat,
        residual=residual,
        trusted=trusted,
        value_at_rmax=vals[:, -1].copy(),
        k_test=k_test,
        r_min=float(r_min),
        r_max=float(r_max),
        radii=params.radii,
        flag_floor=flag_floor,
    )


# ---------------------------------------------------------------------------
# set-level comparisons

def hausdorff_deg(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric angular Hausdorff distance between two direction sets;
    empty-vs-empty is 0, empty-vs-nonempty is infinite."""
    a = np.atleast_2d(np.asarray(a, dtype=float)) if np.size(a) else np.empty((0, 1))
    b = np.atleast_2d(np.asarray(b, dtype=float)) if np.size(b) else np.empty((0, 1))
    if a.shape[0] == 0 and b.shape[0] == 0:
        return 0.0
    if a.shape[0] == 0 or b.shape[0] == 0:
        return math.inf
    # chord form: exact zero for coincident rays, stable near zero
    chord = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    ang = 2.0 * np.degrees(np.arcsin(np.clip(chord / 2.0, 0.0, 1.0)))
    return float(max(ang.min(axis=1).max(), ang.min(axis=0).max()))


@dataclass(frozen=True, eq=False)
class TransformCheckReport:
    hausdorff_deg: float
    estimate_u: WavefrontEstimate
    estimate_v: WavefrontEstimate
    mapped_directions: np.ndarray

    @property
    def passed_within(self) -> float:
        return self.hausdorff_deg


def _rotate90_dirs(dirs: np.ndarray, n: int) -> np.ndarray:
    x, xi = dirs[:, :n], dirs[:, n:]
    return np.concatenate([xi, -x], axis=1)


def check_fourier_symmetry(
    u: SampledField,
    window_factory=gaussian_window,
    params: WavefrontParams | None = None,
) -> TransformCheckReport:
    """Estimate on u and on its transform; the flagged set of the
    transform should be the (x, xi) -> (xi, -x) rotation of the flagged
    set of u."""
    n = u.grid.n
    est_u = estimate_wf(u, window_factory(u.grid), params)
    fu = fourier_forward(u)
    est_f = estimate_wf(fu, window_factory(fu.grid), params)
    rotated = _rotate90_dirs(est_u.flagged_directions(), n)
    dist = hausdorff_deg(rotated, est_f.flagged_directions())
    return TransformCheckReport(dist, est_u, est_f, rotated)


def check_chirp_shear(
    u: SampledField,
    a,
    window: WindowFunction | None = None,
    params: WavefrontParams | None = None,
) -> TransformCheckReport:
    """Estimate on u and on exp((i/2) x.Ax) u; flagged rays should
    follow the shear (x, xi) -> (x, xi + Ax)."""
    from .catalog import Chirp, sample_analytic

    n = u.grid.n
    factor = sample_analytic(Chirp(a), u.grid)
    sheared_field = SampledField(u.grid, u.values * factor.values)
    est_u = estimate_wf(u, window, params)
    est_c = estimate_wf(sheared_field, window, params)
    am = np.atleast_2d(np.asarray(a, dtype=float))
    dirs = est_u.flagged_directions()
    if dirs.size and np.any(am):
        x, xi = dirs[:, :n], dirs[:, n:]
        mapped = np.concatenate([x, xi + x @ am.T], axis=1)
        mapped /= np.linalg.norm(mapped, axis=1, keepdims=True)
    else:
        mapped = dirs
    dist = hausdorff_deg(mapped, est_c.flagged_directions())
    return TransformCheckReport(dist, est_u, est_c, mapped)
