"""Verification suites: every numeric claim the package makes, checked
against an independent oracle or an exact symbolic computation.

Checks are self-contained callables so a suite can run them in a thread
pool; results are reported in declaration order regardless of
completion order.  Anchor strings are stable check-family ids.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from fractions import Fraction

import numpy as np

from .calculus import (
    shift_algebra_check,
    existence_condition,
    existence_condition_theta_inv,
    feasible_with_nonzero,
    pair_condition,
    predicted_product_wf,
    predicted_star_wf,
    wf_pullback,
)
from .catalog import Chirp, Delta, GaussianPacket, PlaneWave, exact_wf, sample_analytic
from .cones import (
    ConicSet,
    Ray,
    angular_distance_deg,
    conic_equal,
    empty_set,
    full_space,
    polyhedral,
    product_set,
    ray_set,
    set_gencones,
    vec,
)
from .grids import SampledField, field_l2_distance, make_grid
from .products import (
    associativity_defect,
    pointwise_product,
    star_via_product,
    twisted_convolution,
    twisted_convolution_product,
)
from .reports import CheckResult, VerificationReport
from .spectral import gaussian_window, hann_window
from .wavefront import (
    WavefrontParams,
    check_chirp_shear,
    check_fourier_symmetry,
    estimate_wf,
    hausdorff_deg,
)

SUITE_NAMES = ("products", "wavefront", "calculus", "bridge")

_REGISTRY: list[tuple[str, int | None, object]] = []


def _check(suite: str, criterion: int | None = None):
    def deco(fn):
        _REGISTRY.append((suite, criterion, fn))
        return fn

    return deco


def _tol(name: str, anchor: str, measured: float, tol: float, detail: str = "") -> CheckResult:
    ok = measured <= tol
    return CheckResult(name, "pass" if ok else "fail", float(measured), float(tol),
                       anchor, detail=detail if not ok else "")


def _cond(name: str, anchor: str, ok: bool, detail: str = "",
          measured: float | None = None) -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", measured, None, anchor,
                       detail=detail if not ok else "")


# ---------------------------------------------------------------------------
# products suite

def _oracle_convolution(f: SampledField, g: SampledField, theta, probes: np.ndarray) -> np.ndarray:
    """Brute-force twisted quadrature at selected output points.

    Deliberately naive: full-lattice sum with fancy-index shifts, no
    tiling, no compensation.  Serves as the independent oracle.
    """
    grid = f.grid
    n, big_n = grid.n, grid.N
    pts = grid.points()
    th = np.asarray(theta, dtype=float)
    jidx = np.stack(np.unravel_index(np.arange(grid.M), (big_n,) * n), axis=1)
    out = np.empty(len(probes), dtype=complex)
    for row, p in enumerate(probes):
        pidx = np.unravel_index(int(p), (big_n,) * n)
        kidx = np.asarray(pidx)[None, :] - jidx + big_n // 2
        valid = np.all((kidx >= 0) & (kidx < big_n), axis=1)
        fk = f.values[tuple(np.clip(kidx, 0, big_n - 1).T)] * valid
        phase = np.exp(-0.5j * (pts[int(p)] @ th @ pts.T))
        out[row] = np.sum(fk * g.values.reshape(-1) * phase)
    return out * grid.spacing**n


@_check("products", 1)
def check_conv_oracle_1d() -> CheckResult:
    g = make_grid(1, 64, 8.0)
    f = sample_analytic(GaussianPacket(0.4, 1.0, 0.6), g)
    h = sample_analytic(GaussianPacket(-0.3, 0.8, -0.2), g)
    direct = twisted_convolution(f, h, [[0.0]])
    oracle = _oracle_convolution(f, h, [[0.0]], np.arange(g.M))
    rel = float(np.linalg.norm(direct.values.reshape(-1) - oracle) / np.linalg.norm(oracle))
    return _tol("conv-oracle-1d-theta0", "conv-def", rel, 1e-8)


@_check("products", 1)
def check_conv_oracle_2d() -> CheckResult:
    g = make_grid(2, 32, 6.0)
    theta = [[0.0, 1.0], [-1.0, 0.0]]
    f = sample_analytic(GaussianPacket([0.3, -0.1], 1.0, [0.4, 0.0]), g)
    h = sample_analytic(GaussianPacket([-0.2, 0.2], 0.9, [0.0, -0.3]), g)
    direct = twisted_convolution(f, h, theta)
    probes = (np.arange(16) * (g.M // 16) + g.M // 32).astype(int)
    oracle = _oracle_convolution(f, h, theta, probes)
    got = direct.values.reshape(-1)[probes]
    rel = float(np.linalg.norm(got - oracle) / np.linalg.norm(oracle))
    return _tol("conv-oracle-2d-symplectic", "conv-def", rel, 1e-6)


@_check("products", 2)
def check_product_theta0() -> CheckResult:
    g = make_grid(1, 64, 8.0)
    pairs = [
        (GaussianPacket(0.2, 1.0, 0.5), GaussianPacket(-0.4, 0.9, -0.3)),
        (GaussianPacket(0.0, 1.2, 0.0), PlaneWave(0.4)),
        (GaussianPacket(0.5, 0.8, 1.0), GaussianPacket(0.1, 1.1, 0.2)),
    ]
    worst = 0.0
    for du, dv in pairs:
        u, v = sample_analytic(du, g), sample_analytic(dv, g)
        got = twisted_convolution_product(u, v, [[0.0]])
        want = pointwise_product(u, v)
        worst = max(worst, field_l2_distance(got, want))
    return _tol("product-theta0-pointwise", "product-def", worst, 1e-10)


def _assoc_fields(big_n: int):
    g = make_grid(2, big_n, 6.0)
    f = sample_analytic(GaussianPacket([0.3, -0.1], 1.0, [0.4, 0.0]), g)
    h = sample_analytic(GaussianPacket([-0.2, 0.2], 0.9, [0.0, -0.3]), g)
    k = sample_analytic(GaussianPacket([0.0, 0.1], 1.1, [0.2, 0.1]), g)
    return f, h, k


_SYMPLECTIC_2 = [[0.0, 1.0], [-1.0, 0.0]]


@_check("products", 3)
def check_assoc_star() -> CheckResult:
    f, h, k = _assoc_fields(32)
    d = associativity_defect(f, h, k, _SYMPLECTIC_2, product="star")
    return _tol("assoc-star-n2", "assoc", d, 1e-4)


@_check("products", 3)
def check_assoc_product() -> CheckResult:
    f, h, k = _assoc_fields(32)
    d = associativity_defect(f, h, k, _SYMPLECTIC_2, product="product")
    return _tol("assoc-product-n2", "assoc", d, 1e-4)


@_check("products", 3)
def check_assoc_refinement() -> CheckResult:
    coarse = _assoc_fields(32)
    fine = _assoc_fields(64)
    msgs = []
    ok = True
    for kind in ("star", "product"):
        d32 = associativity_defect(*coarse, _SYMPLECTIC_2, product=kind)
        d64 = associativity_defect(*fine, _SYMPLECTIC_2, product=kind)
        msgs.append(f"{kind}: {d32:.3e} -> {d64:.3e}")
        ok = ok and d64 < d32
    return _cond("assoc-defect-shrinks-with-n", "assoc", ok, "; ".join(msgs))


@_check("products", 4)
def check_star_route() -> CheckResult:
    g = make_grid(2, 32, 8.0)
    f = sample_analytic(GaussianPacket([0.3, -0.1], 1.0, [0.4, 0.0]), g)
    h = sample_analytic(GaussianPacket([-0.2, 0.2], 0.9, [0.0, -0.3]), g)
    direct = twisted_convolution(f, h, _SYMPLECTIC_2)
    routed = star_via_product(f, h, _SYMPLECTIC_2)
    return _tol("star-route-bridge-n2", "route-bridge", field_l2_distance(routed, direct), 1e-6)


@_check("products")
def check_conv_closed_form() -> CheckResult:
    # centered unit Gaussians, symplectic coupling: the twisted kernel
    # integrates to pi * exp(-(5/16)|x|^2) at n=2
    g = make_grid(2, 32, 6.0)
    u = SampledField(g, np.exp(-0.5 * np.sum(g.points() ** 2, axis=1)).reshape((g.N,) * g.n))
    got = twisted_convolution(u, u, _SYMPLECTIC_2)
    want = SampledField(
        g, np.pi * np.exp(-(5.0 / 16.0) * np.sum(g.points() ** 2, axis=1)).reshape((g.N,) * g.n)
    )
    return _tol("conv-gaussian-closed-form", "conv-def", field_l2_distance(got, want), 1e-6)


@_check("products")
def check_product_closed_form() -> CheckResult:
    # same pair through the frequency-side product at theta = 0:
    # plain square exp(-|x|^2), then a twisted variant against the
    # closed form 0.8 exp(-0.8 |x|^2) at the pinned coupling
    g = make_grid(2, 32, 6.0)
    u = SampledField(g, np.exp(-0.5 * np.sum(g.points() ** 2, axis=1)).reshape((g.N,) * g.n))
    theta = [[0.0, 1.0], [-1.0, 0.0]]
    got = twisted_convolution_product(u, u, theta)
    want = SampledField(
        g, 0.8 * np.exp(-0.8 * np.sum(g.points() ** 2, axis=1)).reshape((g.N,) * g.n)
    )
    return _tol("product-gaussian-closed-form", "product-def", field_l2_distance(got, want), 1e-8)


# ---------------------------------------------------------------------------
# wavefront suite

_WF_GRID = (1, 128, 12.0)
_TRUE_DIRS = {
    "delta": [(0.0, 1.0), (0.0, -1.0)],
    "planewave": [(1.0, 0.0), (-1.0, 0.0)],
    "chirp": [(1.0, 1.0), (-1.0, -1.0)],
}
_MEMBERS = (
    ("delta", Delta(0.0)),
    ("planewave", PlaneWave(0.1)),
    ("gauss", GaussianPacket()),
    ("chirp", Chirp([[1.0]])),
)


def _catalog_estimate(dist, window=None, params=None):
    g = make_grid(*_WF_GRID)
    u = sample_analytic(dist, g)
    win = window if window is not None else gaussian_window(g)
    return estimate_wf(u, win, params)


def _two_sided_angle(name: str, dist) -> tuple[float, str]:
    """Max of (worst flagged-ray distance to truth, worst truth-ray
    distance to a flagged ray); inf when nothing is flagged."""
    est = _catalog_estimate(dist)
    flagged = est.flagged_directions()
    truth = exact_wf(dist)
    if not len(flagged):
        return math.inf, "empty flagged set"
    out = max(angular_distance_deg(truth, w) for w in flagged)
    reps = np.asarray(_TRUE_DIRS[name], dtype=float)
    reps /= np.linalg.norm(reps, axis=1, keepdims=True)
    cov = float(np.max(np.min(
        2.0 * np.degrees(np.arcsin(np.clip(
            np.linalg.norm(reps[:, None, :] - flagged[None, :, :], axis=2) / 2.0, 0, 1))),
        axis=1)))
    return max(out, cov), f"containment {out:.2f} deg, coverage {cov:.2f} deg"


@_check("wavefront", 5)
def check_catalog_delta() -> CheckResult:
    ang, detail = _two_sided_angle("delta", Delta(0.0))
    r = _tol("wf-catalog-delta", "wf-def", ang, 5.0)
    return replace(r, detail=detail)


@_check("wavefront", 5)
def check_catalog_planewave() -> CheckResult:
    ang, detail = _two_sided_angle("planewave", PlaneWave(0.1))
    r = _tol("wf-catalog-planewave", "wf-def", ang, 5.0)
    return replace(r, detail=detail)


@_check("wavefront", 5)
def check_catalog_gauss() -> CheckResult:
    est = _catalog_estimate(GaussianPacket())
    count = int(est.flagged.sum())
    return _cond("wf-catalog-gauss-empty", "wf-regularity", count == 0,
                 f"{count} directions flagged", measured=float(count))


@_check("wavefront", 5)
def check_catalog_chirp() -> CheckResult:
    ang, detail = _two_sided_angle("chirp", Chirp([[1.0]]))
    r = _tol("wf-catalog-chirp", "wf-def", ang, 5.0)
    return replace(r, detail=detail)


@_check("wavefront", 6)
def check_fourier_rotation() -> CheckResult:
    g = make_grid(*_WF_GRID)
    worst, worst_name = 0.0, ""
    for name, dist in _MEMBERS:
        rep = check_fourier_symmetry(sample_analytic(dist, g))
        if rep.hausdorff_deg > worst:
            worst, worst_name = rep.hausdorff_deg, name
    return _tol("wf-fourier-rotation-catalog", "wf-fourier-rotate", worst, 10.0,
                f"worst member: {worst_name}")


@_check("wavefront", 6)
def check_shear_covariance() -> CheckResult:
    g = make_grid(*_WF_GRID)
    win = gaussian_window(g)
    worst, worst_name = 0.0, ""
    for name, dist in _MEMBERS:
        rep = check_chirp_shear(sample_analytic(dist, g), [[1.0]], win)
        if rep.hausdorff_deg > worst:
            worst, worst_name = rep.hausdorff_deg, name
    return _tol("wf-chirp-shear-catalog", "wf-chirp-shear", worst, 5.0,
                f"worst member: {worst_name}")


@_check("wavefront")
def check_window_independence() -> CheckResult:
    g = make_grid(*_WF_GRID)
    hann = hann_window(g)
    worst = 0.0
    for _, dist in _MEMBERS:
        a = _catalog_estimate(dist).flagged_directions()
        b = _catalog_estimate(dist, window=hann).flagged_directions()
        worst = max(worst, hausdorff_deg(a, b))
    # gate: twice the direction-grid resolution (0.5 deg at D=360)
    return _tol("wf-window-independence", "wf-def", worst, 1.0 + 1e-9)


@_check("wavefront")
def check_conicity() -> CheckResult:
    worst = 0.0
    for _, dist in _MEMBERS:
        a = _catalog_estimate(dist).flagged_directions()
        b = _catalog_estimate(
            dist, params=WavefrontParams(r_max_frac=0.4, r_min_frac=0.2)
        ).flagged_directions()
        worst = max(worst, hausdorff_deg(a, b))
    # the flag boundary moves by up to ~2 grid steps when the radial
    # band doubles; gate at 5x resolution
    return _tol("wf-conicity-band-doubling", "wf-def", worst, 2.5)


# ---------------------------------------------------------------------------
# calculus suite

def _j_theta(n: int, scale: Fraction = Fraction(1)) -> list[list[Fraction]]:
    """Tridiagonal antisymmetric n x n coupling; the rotation block J
    at n=2, a forced zero at n=1."""
    z = Fraction(0)
    th = [[z] * n for _ in range(n)]
    for i in range(n - 1):
        th[i][i + 1] = scale
        th[i + 1][i] = -scale
    return th


def _zero_theta(n: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * n for _ in range(n)]


@_check("calculus", 7)
def check_existence_forced() -> CheckResult:
    ok = True
    notes = []
    for n in (1, 2):
        wfu = product_set(full_space(n), None)
        wfv = product_set(None, full_space(n))
        thetas = [_zero_theta(n)]
        if n == 2:
            thetas += [_j_theta(2), _j_theta(2, Fraction(3, 7))]
        for th in thetas:
            res = existence_condition(wfu, wfv, th)
            ok = ok and bool(res)
            if not res:
                notes.append(f"n={n} witness {res.witness}")
    return _cond("existence-forced-pairs", "wf-product-existence", ok, "; ".join(notes))


@_check("calculus", 7)
def check_existence_delta_pair() -> CheckResult:
    n = 2
    d = product_set(None, full_space(n))
    res = existence_condition(d, d, _zero_theta(n))
    if bool(res):
        return _cond("existence-delta-pair-fails", "wf-product-existence", False,
                     "condition unexpectedly holds")
    w = res.witness
    ok = w is not None and any(x != 0 for x in w[0])
    detail = f"witness {tuple(map(str, w[0]))}" if w else "no witness"
    return _cond("existence-delta-pair-fails", "wf-product-existence", ok, detail)


def _random_polyhedral(rng: random.Random, dim: int) -> ConicSet:
    comps = []
    for _ in range(rng.randint(1, 2)):
        gens = []
        for _ in range(rng.randint(2, 3)):
            v = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(dim))
            if any(x != 0 for x in v):
                gens.append(v)
        if gens:
            comps.append(polyhedral(gens).components[0])
    return ConicSet(dim, tuple(comps)) if comps else empty_set(dim)


_THETA_FAMILY = (
    _j_theta(2),
    _j_theta(2, Fraction(2)),
    _j_theta(2, Fraction(1, 3)),
)


@_check("calculus", 7)
def check_phrasings_agree() -> CheckResult:
    rng = random.Random(11)
    mismatches = 0
    for i in range(100):
        wfu = _random_polyhedral(rng, 4)
        wfv = _random_polyhedral(rng, 4)
        th = _THETA_FAMILY[i % len(_THETA_FAMILY)]
        a = bool(existence_condition(wfu, wfv, th))
        b = bool(existence_condition_theta_inv(wfu, wfv, th))
        if a != b:
            mismatches += 1
    return _cond("existence-phrasings-agree-100", "existence-theta-inverse",
                 mismatches == 0, f"{mismatches} mismatches",
                 measured=float(mismatches))


@_check("calculus")
def check_theta0_cross() -> CheckResult:
    rng = random.Random(23)
    zero2 = _zero_theta(2)
    bad = 0
    for _ in range(100):
        wfu = _random_polyhedral(rng, 4)
        wfv = _random_polyhedral(rng, 4)
        a = bool(existence_condition(wfu, wfv, zero2))
        b = _pointwise_theta0(wfu, wfv)
        if a != (not b):
            bad += 1
    return _cond("existence-theta0-crosscheck-100", "wf-product-existence",
                 bad == 0, f"{bad} mismatches", measured=float(bad))


def _pointwise_theta0(wfu: ConicSet, wfv: ConicSet) -> bool:
    """True iff a violating frequency pair exists: (0, xi) in WFu with
    (0, -xi) in WFv.  Assembled directly from the projector rows."""
    from .calculus import _gen_matrix, _lift_excludes

    dim = wfu.dim
    n = dim // 2
    for gu in set_gencones(wfu):
        for gv in set_gencones(wfv):
            mu, mv = _gen_matrix(gu), _gen_matrix(gv)
            cu, cv = len(mu[0]), len(mv[0])
            rows = []
            for i in range(n):                       # x parts vanish
                rows.append(tuple(mu[i]) + (Fraction(0),) * cv)
                rows.append((Fraction(0),) * cu + tuple(mv[i]))
            for i in range(n):                       # xi_u + xi_v = 0
                rows.append(tuple(mu[n + i]) + tuple(mv[n + i]))
            selectors = [tuple(tuple(mu[n + i]) + (Fraction(0),) * cv for i in range(n))]
            selectors += _lift_excludes(gu, mu, 0, cu + cv)
            selectors += _lift_excludes(gv, mv, cu, cu + cv)
            if feasible_with_nonzero(tuple(rows), cu + cv, selectors) is not None:
                return True
    return False


_LEFT_HALF = polyhedral([(-1, 0), (0, 1), (0, -1)])
_THETA_LIGHT = ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))


@_check("calculus", 7)
def check_lightcone_upward() -> CheckResult:
    gamma2 = polyhedral([(1, 1), (-1, 1)])
    rep = shift_algebra_check(_LEFT_HALF, gamma2, _THETA_LIGHT)
    return _cond("shift-algebra-lightcone", "twisted-shift-algebra",
                 rep.passed and rep.verdict == "exact",
                 "; ".join(f"{c.name}={c.passed}" for c in rep.conditions))


@_check("calculus")
def check_lightcone_as_printed() -> CheckResult:
    # the two-wedge reading (positivity on the subordinate coordinate):
    # a union that is not closed under addition
    wedges = ConicSet(2, polyhedral([(0, 1), (1, 1)]).components
                      + polyhedral([(0, -1), (1, -1)]).components)
    rep = shift_algebra_check(_LEFT_HALF, wedges, _THETA_LIGHT)
    c = rep.additive_salient
    ok = (not c.passed) and c.witness is not None
    s = sum(np.asarray([float(x) for x in w]) for w in c.witness) if c.witness else None
    ok = ok and s is not None and np.allclose(s, 0.0)
    return _cond("shift-algebra-two-wedge-reading", "twisted-shift-algebra", ok,
                 f"witness {c.witness}")


@_check("calculus")
def check_lightcone_time_forward() -> CheckResult:
    forward = polyhedral([(1, 1), (1, -1)])
    rep = shift_algebra_check(_LEFT_HALF, forward, _THETA_LIGHT)
    ok = rep.additive_salient.passed and not rep.shift_stability.passed \
        and rep.shift_stability.witness is not None
    return _cond("shift-algebra-time-forward-reading", "twisted-shift-algebra", ok,
                 f"shift witness {rep.shift_stability.witness}")


@_check("calculus", 7)
def check_double_cone() -> CheckResult:
    double = ConicSet(2, polyhedral([(1, 1), (-1, 1)]).components
                      + polyhedral([(-1, -1), (1, -1)]).components)
    rep = shift_algebra_check(_LEFT_HALF, double, _THETA_LIGHT)
    c = rep.additive_salient
    ok = (not rep.passed) and (not c.passed) and c.witness is not None
    return _cond("shift-algebra-double-cone-fails", "twisted-shift-algebra", ok,
                 f"witness {c.witness}")


@_check("calculus")
def check_shift_algebra_zero_coupling() -> CheckResult:
    zero2 = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)))
    rep = shift_algebra_check(_LEFT_HALF, polyhedral([(1, 1), (-1, 1)]), zero2)
    return _cond("shift-algebra-zero-coupling", "twisted-shift-algebra",
                 rep.passed and rep.shift_stability.passed,
                 rep.shift_stability.note)


@_check("calculus", 7)
def check_pair_condition() -> CheckResult:
    one_sided = product_set(full_space(1), ray_set((1,)))
    sym = product_set(None, full_space(1))
    pos_ray = product_set(None, ray_set((1,)))
    a = pair_condition(one_sided)
    b = pair_condition(sym)
    c = pair_condition(pos_ray)
    ok = bool(a) and (not bool(b)) and b.witness is not None and bool(c)
    return _cond("pair-condition-verdicts", "pair-condition", ok,
                 f"one_sided={bool(a)} symmetric={bool(b)} pos_ray={bool(c)}")


@_check("calculus", 9)
def check_star_closure() -> CheckResult:
    ok = True
    notes = []
    for n, theta in ((1, _zero_theta(1)), (2, _j_theta(2)),
                     (2, _j_theta(2, Fraction(3, 7))), (3, _j_theta(3))):
        d = product_set(None, full_space(n))
        got = predicted_star_wf(d, d, theta)
        if not conic_equal(got, d):
            ok = False
            notes.append(f"n={n} closure broken")
    return _cond("star-wf-closure-exact", "star-wf-closure", ok, "; ".join(notes))


@_check("calculus")
def check_product_prediction() -> CheckResult:
    notes = []
    # oscillation times impulse at symplectic coupling
    pw = product_set(full_space(2), None)
    dl = product_set(None, full_space(2))
    got = predicted_product_wf(pw, dl, _j_theta(2))
    ok = conic_equal(got, dl)
    if not ok:
        notes.append("planewave*delta prediction off")
    # zero coupling: impulse times oscillation
    got2 = predicted_product_wf(dl, pw, _zero_theta(2))
    if not conic_equal(got2, dl):
        ok = False
        notes.append("theta=0 delta*osc prediction off")
    # empty inputs
    if not predicted_product_wf(empty_set(4), empty_set(4), _j_theta(2)).is_empty:
        ok = False
        notes.append("empty*empty not empty")
    return _cond("product-wf-prediction-cases", "product-wf-bound", ok, "; ".join(notes))


@_check("calculus")
def check_schwartz_factor_slice() -> CheckResult:
    # one Schwartz factor: the survivors are exactly the rays of WFu
    # annihilated by x + (1/2) theta xi, enumerable by hand on ray sets
    th = _j_theta(2)
    r_keep = (Fraction(0), Fraction(1), Fraction(2), Fraction(0))   # x = -theta xi / 2
    r_drop = (Fraction(1), Fraction(0), Fraction(1), Fraction(0))
    wfu = ConicSet(4, (Ray(vec(r_keep)), Ray(vec(r_drop))))
    got = predicted_product_wf(wfu, empty_set(4), th)
    ok = conic_equal(got, ray_set(r_keep))
    # and symmetrically for the other factor
    got2 = predicted_product_wf(empty_set(4), wfu, th)
    sym_keep = (Fraction(0), Fraction(-1), Fraction(2), Fraction(0))  # x = +theta xi / 2
    wfv = ConicSet(4, (Ray(vec(sym_keep)), Ray(vec(r_drop))))
    got2 = predicted_product_wf(empty_set(4), wfv, th)
    ok = ok and conic_equal(got2, ray_set(sym_keep))
    return _cond("schwartz-factor-slice", "product-wf-bound", ok)


@_check("calculus")
def check_pullback() -> CheckResult:
    notes = []
    s = product_set(None, full_space(1))
    res = wf_pullback(s, [[Fraction(1)]])
    ok = res.defined and conic_equal(res.wavefront, s)
    if not ok:
        notes.append("identity pullback off")
    diag = ((Fraction(1),), (Fraction(1),))
    good = wf_pullback(ray_set((0, 0, 1, 1)), diag)
    if not (good.defined and conic_equal(good.wavefront, ray_set((0, 1)))):
        ok = False
        notes.append("diagonal restriction off")
    bad = wf_pullback(ray_set((0, 0, 1, -1)), diag)
    if bad.defined or bad.undefined_witness is None:
        ok = False
        notes.append("normal-direction case not refused")
    return _cond("pullback-cases", "pullback", ok, "; ".join(notes))


# ---------------------------------------------------------------------------
# bridge suite

def _bridge_product():
    g = make_grid(2, 32, 7.0)
    theta = _SYMPLECTIC_2
    a_vec = np.array([0.875, -0.875])
    u = sample_analytic(PlaneWave(tuple(a_vec)), g)
    half = 0.5 * (np.asarray(theta) @ a_vec)
    v = sample_analytic(Delta(tuple(half)), g)
    return twisted_convolution_product(u, v, theta), g


@_check("bridge", 8)
def check_bridge_impulse() -> CheckResult:
    w, g = _bridge_product()
    mag = np.abs(w.values)
    peak = np.unravel_index(int(np.argmax(mag)), mag.shape)
    at_origin = all(abs(g.axis()[i]) < g.spacing / 2 for i in peak)
    side = float(np.partition(mag.reshape(-1), -2)[-2] / mag.max())
    ok = at_origin and side <= 0.2
    return _cond("bridge-impulse-at-origin", "product-def", ok,
                 f"peak index {peak}, sidelobe {side:.3f}", measured=side)


@_check("bridge", 8)
def check_bridge_prediction_exact() -> CheckResult:
    pw = product_set(full_space(2), None)
    dl = product_set(None, full_space(2))
    got = predicted_product_wf(pw, dl, _j_theta(2))
    return _cond("bridge-predicted-set", "product-wf-bound", conic_equal(got, dl))


@_check("bridge", 8)
def check_bridge_containment() -> CheckResult:
    w, g = _bridge_product()
    est = estimate_wf(w, gaussian_window(g), WavefrontParams(k_test=0.05))
    flagged = est.flagged_directions()
    if not len(flagged):
        return _cond("bridge-angular-containment", "product-wf-bound", False,
                     "nothing flagged")
    predicted = product_set(None, full_space(2))
    worst = max(angular_distance_deg(predicted, d) for d in flagged)
    r = _tol("bridge-angular-containment", "product-wf-bound", worst, 10.0)
    return replace(r, detail=f"{len(flagged)} directions flagged")


# ---------------------------------------------------------------------------
# runner

def _timed(fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        res = fn()
    except Exception as exc:  # a crashed check is a failed check
        res = CheckResult(fn.__name__, "fail", detail=f"{type(exc).__name__}: {exc}")
    return replace(res, seconds=time.perf_counter() - t0)


def suite_checks(name: str) -> list:
    if name == "all":
        return [fn for _, _, fn in _REGISTRY]
    if name not in SUITE_NAMES:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")
    return [fn for s, _, fn in _REGISTRY if s == name]


def criterion_checks(k: int) -> list:
    return [fn for _, c, fn in _REGISTRY if c == k]


def run_suite(name: str, threads: int | None = None) -> VerificationReport:
    checks = suite_checks(name)
    workers = threads if threads else min(8, os.cpu_count() or 1)
    if workers <= 1:
        results = [_timed(fn) for fn in checks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_timed, fn) for fn in checks]
            results = [f.result() for f in futures]
    return VerificationReport(name, tuple(results), meta={"threads": workers})
