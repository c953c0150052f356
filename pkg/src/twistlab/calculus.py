"""Exact conic calculus: product existence, predicted wavefront sets,
cone algebra conditions, and the pullback transform.

All verdicts here are exact over rational arithmetic.  The workhorse is
nonnegative feasibility with "nonzero" side conditions: a pointed cone
C = {w >= 0 : A w = 0} admits a point with S_j w != 0 for every selector
S_j if and only if each selector individually is nonzero somewhere on C
(a convex cone is never covered by finitely many proper subspace
slices), and an explicit witness is a positive combination sum t^i r_i
of the extreme rays r_i for all but finitely many t > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .matrices import AntisymmetricMatrix
from .rational import (
    Mat,
    Vec,
    cone_contains,
    extreme_rays,
    frac,
    is_zero_vec,
    mat,
    mat_t,
    matmul,
    matvec,
    nullspace,
    primitive_ray,
    vadd,
    vneg,
    vscale,
)
from .cones import (
    ConicSet,
    ExactnessError,
    GenCone,
    PolyhedralCone,
    SampledCaps,
    _projector,
    member,
    set_gencones,
    wf_fourier_rotate,
)

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# shared rational plumbing

def as_rational_antisym(theta, n: int) -> Mat:
    """Rational antisymmetric matrix from floats, Fractions, or wrapper."""
    if isinstance(theta, AntisymmetricMatrix):
        rows = theta.matrix.tolist()
    elif hasattr(theta, "tolist"):
        rows = theta.tolist()
    else:
        rows = [list(r) for r in theta]
    tm = mat(rows)
    if len(tm) != n or any(len(r) != n for r in tm):
        raise ValueError(f"theta must be {n}x{n}")
    for i in range(n):
        for j in range(n):
            if tm[i][j] != -tm[j][i]:
                raise ValueError("theta must be antisymmetric")
    return tm


def _hcat(*blocks: Mat) -> Mat:
    blocks = tuple(b for b in blocks if b)
    rows = len(blocks[0])
    return tuple(
        tuple(x for b in blocks for x in b[i]) for i in range(rows)
    )


def _zeros(rows: int, cols: int) -> Mat:
    return tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))


def _scale_mat(c: Fraction, a: Mat) -> Mat:
    return tuple(tuple(c * x for x in r) for r in a)


def _mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _gen_matrix(gc: GenCone) -> Mat:
    """Generators as columns (d x k)."""
    return mat_t(gc.gens)


def feasible_with_nonzero(a: Mat, ncols: int, selectors: list[Mat]) -> Vec | None:
    """A point of {w >= 0 : A w = 0} with S w != 0 for every selector, or None.

    Exactness: the cone is covered by the union of the selector kernels
    iff it lies inside one of them, which happens iff that selector
    vanishes on every extreme ray.
    """
    rays = extreme_rays(a, ncols)
    rays = [r for r in rays if not is_zero_vec(r)]
    if not rays:
        return None
    for sel in selectors:
        if all(is_zero_vec(matvec(sel, r)) for r in rays):
            return None
    # deterministic generic combination: w(t) = sum t^i r_i
    for t in range(1, 1 + max(4, len(rays) * (len(selectors) + 1) * 4)):
        w = tuple(ZERO for _ in range(ncols))
        power = ONE
        for r in rays:
            w = vadd(w, vscale(power, r))
            power *= t
        if all(not is_zero_vec(matvec(sel, w)) for sel in selectors):
            return w
    raise RuntimeError("generic witness search failed; selector degrees exceeded bound")


def _lift_excludes(gc: GenCone, gmat: Mat, offset_cols: int, total_cols: int) -> list[Mat]:
    """Component selectors E v != 0 expressed on the stacked weight vector."""
    out = []
    k = len(gmat[0]) if gmat else 0
    for e in gc.excludes:
        eg = matmul(e, gmat)
        rows = tuple(
            tuple(ZERO for _ in range(offset_cols))
            + r
            + tuple(ZERO for _ in range(total_cols - offset_cols - k))
            for r in eg
        )
        out.append(rows)
    return out


# ---------------------------------------------------------------------------
# existence condition for the twisted product

@dataclass(frozen=True)
class ExistenceResult:
    holds: bool
    witness: tuple[Vec, Vec] | None = None
    phrasing: str = "position-shift"

    def __bool__(self) -> bool:
        return self.holds


def existence_condition(wfu: ConicSet, wfv: ConicSet, theta) -> ExistenceResult:
    """Check that x = (1/2) theta xi has no nonzero solution with
    (x, xi) in wfu and (x, -xi) in wfv.

    Returns holds=True when the twisted product criterion is satisfied;
    otherwise holds=False together with the violating pair of phase
    space points ((x, xi), (x, -xi)).
    """
    if wfu.dim != wfv.dim or wfu.dim % 2 != 0:
        raise ValueError("wavefront sets must share an even dimension")
    d = wfu.dim
    n = d // 2
    tm = as_rational_antisym(theta, n)
    if not (wfu.is_exact() and wfv.is_exact()):
        raise ExactnessError("existence condition needs exact (rational) sets")
    px, pxi = _projector(n, 0), _projector(n, 1)
    half_theta = _scale_mat(Fraction(1, 2), tm)
    # F flips the sign of the xi half
    flip = tuple(
        tuple((-ONE if i >= n and i == j else (ONE if i == j else ZERO)) for j in range(d))
        for i in range(d)
    )
    for cu in set_gencones(wfu):
        gu = _gen_matrix(cu)
        ku = len(cu.gens)
        if ku == 0:
            continue
        slice_rows = _mat_sub(matmul(px, gu), matmul(half_theta, matmul(pxi, gu)))
        for cv in set_gencones(wfv):
            gv = _gen_matrix(cv)
            kv = len(cv.gens)
            if kv == 0:
                continue
            ncols = ku + kv
            a = _hcat(_scale_mat(-ONE, matmul(flip, gu)), gv) + _hcat(
                slice_rows, _zeros(n, kv)
            )
            selectors = [_hcat(gu, _zeros(d, kv))]
            selectors += _lift_excludes(cu, gu, 0, ncols)
            selectors += _lift_excludes(cv, gv, ku, ncols)
            w = feasible_with_nonzero(a, ncols, selectors)
            if w is not None:
                p = matvec(gu, w[:ku])
                q = matvec(gv, w[ku:])
                return ExistenceResult(False, (primitive_ray(p), primitive_ray(q)))
    return ExistenceResult(True, None)


def existence_condition_theta_inv(wfu: ConicSet, wfv: ConicSet, theta) -> ExistenceResult:
    """Same criterion, phrased through the inverse of theta.

    For invertible theta the condition reads: no x != 0 has
    (x, 2 theta^{-1} x) in wfu and (x, -2 theta^{-1} x) in wfv.  This is
    an independent elimination path used to cross-check
    `existence_condition`.
    """
    if wfu.dim != wfv.dim or wfu.dim % 2 != 0:
        raise ValueError("wavefront sets must share an even dimension")
    d = wfu.dim
    n = d // 2
    tm = as_rational_antisym(theta, n)
    from .cones import _rational_inverse

    tinv = _rational_inverse(tm)
    if tinv is None:
        raise ValueError("theta is not invertible; use existence_condition")
    ti2 = _scale_mat(Fraction(2), tinv)
    px, pxi = _projector(n, 0), _projector(n, 1)
    for cu in set_gencones(wfu):
        gu = _gen_matrix(cu)
        ku = len(cu.gens)
        if ku == 0:
            continue
        for cv in set_gencones(wfv):
            gv = _gen_matrix(cv)
            kv = len(cv.gens)
            if kv == 0:
                continue
            ncols = ku + kv
            # xi_u = 2 theta^{-1} x_u, x_v = x_u, xi_v = -2 theta^{-1} x_v
            rows_u = _mat_sub(matmul(pxi, gu), matmul(ti2, matmul(px, gu)))
            coupling = _hcat(_scale_mat(-ONE, matmul(px, gu)), matmul(px, gv))
            rows_v = _mat_add(matmul(pxi, gv), matmul(ti2, matmul(px, gv)))
            a = _hcat(rows_u, _zeros(n, kv)) + coupling + _hcat(
                _zeros(n, ku), rows_v
            )
            selectors = [_hcat(matmul(px, gu), _zeros(n, kv))]
            selectors += _lift_excludes(cu, gu, 0, ncols)
            selectors += _lift_excludes(cv, gv, ku, ncols)
            w = feasible_with_nonzero(a, ncols, selectors)
            if w is not None:
                p = matvec(gu, w[:ku])
                q = matvec(gv, w[ku:])
                return ExistenceResult(False, (primitive_ray(p), primitive_ray(q)), "theta-inverse")
    return ExistenceResult(True, None, "theta-inverse")


# ---------------------------------------------------------------------------
# predicted wavefront sets of the two twisted operations

def _collect_rays(a: Mat, ncols: int) -> list[Vec]:
    return [r for r in extreme_rays(a, ncols) if not is_zero_vec(r)]


def _dedup_gens(gens: list[Vec]) -> tuple[Vec, ...]:
    seen: dict[Vec, None] = {}
    for g in gens:
        if not is_zero_vec(g):
            seen.setdefault(primitive_ray(g), None)
    return tuple(seen.keys())


def predicted_product_wf(wfu: ConicSet, wfv: ConicSet, theta) -> ConicSet:
    """Conic superset of the wavefront set of the twisted product.

    Three families of components:
      * interaction pairs p from wfu, q from wfv constrained by
        x_p + (1/2) theta xi_p = x_q - (1/2) theta xi_q, contributing
        p + ((1/2) theta xi_q, xi_q);
      * points of wfu on the slice x + (1/2) theta xi = 0 paired with a
        trivial second factor, contributing p itself;
      * symmetrically for wfv on x - (1/2) theta xi = 0, contributing
        ((1/2) theta xi_q, xi_q).

    The interaction components are returned as closed hulls (their
    exclusion data does not map forward); the one-sided components keep
    their exact nonzero selectors.
    """
    if wfu.dim != wfv.dim or wfu.dim % 2 != 0:
        raise ValueError("wavefront sets must share an even dimension")
    d = wfu.dim
    n = d // 2
    tm = as_rational_antisym(theta, n)
    if not (wfu.is_exact() and wfv.is_exact()):
        raise ExactnessError("predicted sets need exact (rational) inputs")
    px, pxi = _projector(n, 0), _projector(n, 1)
    half_theta = _scale_mat(Fraction(1, 2), tm)
    plus = _mat_add(px, matmul(half_theta, pxi))
    minus = _mat_sub(px, matmul(half_theta, pxi))
    # output map applied to the second factor: q -> ((1/2) theta xi_q, xi_q)
    bv = tuple(
        tuple(
            (half_theta[i][j - n] if j >= n else ZERO)
            for j in range(d)
        )
        for i in range(n)
    ) + tuple(
        tuple((ONE if j == n + i else ZERO) for j in range(d)) for i in range(n)
    )
    comps = []
    cus = [c for c in set_gencones(wfu) if c.gens]
    cvs = [c for c in set_gencones(wfv) if c.gens]
    for cu in cus:
        gu = _gen_matrix(cu)
        ku = len(cu.gens)
        for cv in cvs:
            gv = _gen_matrix(cv)
            kv = len(cv.gens)
            a = _hcat(_scale_mat(-ONE, matmul(plus, gu)), matmul(minus, gv))
            gens = []
            for r in _collect_rays(a, ku + kv):
                p = matvec(gu, r[:ku])
                q = matvec(gv, r[ku:])
                o = vadd(p, matvec(bv, q))
                if not is_zero_vec(o):
                    gens.append(o)
            gens = _dedup_gens(gens)
            if gens:
                comps.append(PolyhedralCone(gens))
    for cu in cus:
        gu = _gen_matrix(cu)
        ku = len(cu.gens)
        gens = []
        for r in _collect_rays(matmul(plus, gu), ku):
            p = matvec(gu, r)
            if not is_zero_vec(p):
                gens.append(p)
        gens = _dedup_gens(gens)
        if gens:
            comps.append(PolyhedralCone(gens, cu.excludes))
    for cv in cvs:
        gv = _gen_matrix(cv)
        kv = len(cv.gens)
        gens = []
        for r in _collect_rays(matmul(minus, gv), kv):
            q = matvec(bv, matvec(gv, r))
            if not is_zero_vec(q):
                gens.append(q)
        gens = _dedup_gens(gens)
        if gens:
            comps.append(PolyhedralCone(gens, cv.excludes))
    # drop duplicate components (same generators and selectors)
    uniq = []
    seen = set()
    for c in comps:
        key = (tuple(sorted(c.generators)), c.excludes)
        if key not in seen:
            seen.add(key)
            uniq.append(c)
    return ConicSet(d, tuple(uniq))


def predicted_star_wf(wfu: ConicSet, wfv: ConicSet, theta) -> ConicSet:
    """Conic superset for the twisted convolution, via the frequency
    side: conjugate the product prediction by the Fourier rotation."""
    ru = wf_fourier_rotate(wfu, inverse=True)
    rv = wf_fourier_rotate(wfv, inverse=True)
    return wf_fourier_rotate(predicted_product_wf(ru, rv, theta))


# ---------------------------------------------------------------------------
# cone algebra conditions

@dataclass(frozen=True)
class ConditionCheck:
    name: str
    passed: bool
    exact: bool
    witness: tuple | None = None
    note: str = ""


@dataclass(frozen=True)
class ShiftAlgebraReport:
    """Outcome of the three cone-algebra conditions for a pair
    (gamma1, gamma2) of cones and an antisymmetric coupling."""

    additive_salient: ConditionCheck
    origin_excluded: ConditionCheck
    shift_stability: ConditionCheck

    @property
    def conditions(self) -> tuple[ConditionCheck, ...]:
        return (self.additive_salient, self.origin_excluded, self.shift_stability)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.conditions)

    @property
    def verdict(self) -> str:
        return "exact" if self.exact else "numerical"


def _nonzero_gen_matrix(gc: GenCone) -> Mat:
    gens = [g for g in gc.gens if not is_zero_vec(g)]
    return mat_t(tuple(gens))


def _check_additive_salient(gamma2: ConicSet) -> ConditionCheck:
    name = "additive-salient"
    comps = [c for c in set_gencones(gamma2) if any(not is_zero_vec(g) for g in c.gens)]
    if not comps:
        return ConditionCheck(name, True, True, note="empty cone")
    # salience within and across components: no two members sum to zero
    for i, ci in enumerate(comps):
        gi = _nonzero_gen_matrix(ci)
        ki = len(gi[0])
        for j in range(i, len(comps)):
            gj = _nonzero_gen_matrix(comps[j])
            kj = len(gj[0])
            if i == j:
                rays = [r for r in extreme_rays(gi, ki) if not is_zero_vec(r)]
                for nu in rays:
                    i0 = next(t for t, x in enumerate(nu) if x != 0)
                    col = tuple(gi[r][i0] for r in range(len(gi)))
                    v1 = vscale(nu[i0], col)
                    return ConditionCheck(
                        name, False, True, (primitive_ray(v1), primitive_ray(vneg(v1))),
                        "two members sum to zero",
                    )
            else:
                a = _hcat(gi, gj)
                sel = [_hcat(gi, _zeros(len(gi), kj))]
                w = feasible_with_nonzero(a, ki + kj, sel)
                if w is not None:
                    v1 = matvec(gi, w[:ki])
                    return ConditionCheck(
                        name, False, True, (primitive_ray(v1), primitive_ray(vneg(v1))),
                        "members of two components sum to zero",
                    )
    if len(comps) == 1:
        return ConditionCheck(name, True, True, note="convex component; closure automatic")
    # union: additive closure checked on pairwise generator sums (necessary)
    hulls = [tuple(tuple(g) for g in c.gens if not is_zero_vec(g)) for c in comps]
    for i, ci in enumerate(comps):
        for j in range(i, len(comps)):
            if i == j:
                continue
            for ga in hulls[i]:
                for gb in hulls[j]:
                    ssum = vadd(ga, gb)
                    if is_zero_vec(ssum):
                        continue
                    if not any(cone_contains(h, ssum) for h in hulls):
                        return ConditionCheck(
                            name, False, True, (ga, gb, primitive_ray(ssum)),
                            "generator sum escapes the union",
                        )
    return ConditionCheck(
        name, True, False, None,
        "union: salience exact; closure verified on generator sums only",
    )


def _anchor_point(gc: GenCone) -> Vec:
    total = tuple(ZERO for _ in range(len(gc.gens[0])))
    for g in gc.gens:
        total = vadd(total, g)
    return total


def _check_shift_stability(gamma1: ConicSet, gamma2: ConicSet, half_theta: Mat) -> ConditionCheck:
    name = "shift-stability"
    comps1 = [c for c in set_gencones(gamma1) if c.gens]
    comps2 = [c for c in set_gencones(gamma2) if c.gens]
    if not comps2 or not comps1:
        return ConditionCheck(name, True, True, note="vacuous (empty cone)")
    hulls1 = [tuple(g for g in c.gens if not is_zero_vec(g)) for c in comps1]
    gens2 = [
        primitive_ray(g)
        for c in comps2
        for g in c.gens
        if not is_zero_vec(g)
    ]
    if len(comps1) == 1:
        # convex target: stability is equivalent to every shifted
        # generator lying in the recession cone, i.e. the hull itself
        hull = hulls1[0]
        for g in gens2:
            v = matvec(half_theta, g)
            if is_zero_vec(v):
                continue
            if not cone_contains(hull, v):
                x0 = _anchor_point(comps1[0])
                t = ONE
                for _ in range(64):
                    pt = vadd(x0, vscale(t, v))
                    if not cone_contains(hull, pt):
                        return ConditionCheck(
                            name, False, True, (primitive_ray(x0), g, primitive_ray(pt)),
                            "shifted point leaves the cone",
                        )
                    t *= 2
                raise RuntimeError("recession witness search failed")
        return ConditionCheck(
            name, True, True, None,
            "every shifted generator lies in the recession cone "
            "(membership taken on the closed hull)",
        )
    # union target: spot check along each component anchor (one-sided)
    for ci, hull_all in zip(comps1, hulls1):
        x0 = _anchor_point(ci)
        for g in gens2:
            v = matvec(half_theta, g)
            if is_zero_vec(v):
                continue
            for t in (Fraction(1, 2), ONE, Fraction(2), Fraction(8), Fraction(64)):
                pt = vadd(x0, vscale(t, v))
                if is_zero_vec(pt):
                    continue
                if not any(cone_contains(h, pt) for h in hulls1):
                    return ConditionCheck(
                        name, False, True, (primitive_ray(x0), g, primitive_ray(pt)),
                        "shifted point leaves the union",
                    )
    return ConditionCheck(
        name, True, False, None,
        "union target: verified along anchor rays only",
    )


def _float_directions(s: ConicSet) -> list[tuple[np.ndarray, float]]:
    out = []
    for comp in s.components:
        if isinstance(comp, SampledCaps):
            for d in np.asarray(comp.directions, dtype=float):
                out.append((d, float(comp.radius_deg)))
        else:
            for gc in [g for g in set_gencones(ConicSet(s.dim, (comp,)))]:
                for g in gc.gens:
                    v = np.array([float(x) for x in g])
                    nrm = np.linalg.norm(v)
                    if nrm > 0:
                        out.append((v / nrm, 0.0))
    return out


def _shift_algebra_numeric(gamma1: ConicSet, gamma2: ConicSet, half_theta_f: np.ndarray) -> ShiftAlgebraReport:
    from .cones import angular_distance_deg

    d2 = _float_directions(gamma2)
    sal_pass, sal_wit = True, None
    for i, (da, ra) in enumerate(d2):
        for db, rb in d2[i:]:
            cosang = float(np.clip(np.dot(da, -db), -1.0, 1.0))
            if np.degrees(np.arccos(cosang)) <= ra + rb + 1e-9:
                sal_pass, sal_wit = False, (tuple(da), tuple(db))
                break
        if not sal_pass:
            break
    additive = ConditionCheck(
        "additive-salient", sal_pass, False, sal_wit,
        "sampled sets: salience tested on stored directions; closure not tested",
    )
    origin = ConditionCheck(
        "origin-excluded", True, True, None,
        "conic sets exclude the origin by representation",
    )
    shift_pass, shift_wit = True, None
    for d, r in d2:
        v = half_theta_f @ d
        if np.linalg.norm(v) <= 1e-12:
            continue
        dist = angular_distance_deg(gamma1, v)
        if dist > r + 1e-6:
            shift_pass, shift_wit = False, (tuple(d), float(dist))
            break
    shift = ConditionCheck(
        "shift-stability", shift_pass, False, shift_wit,
        "sampled sets: shifted directions tested at their stated angular radius",
    )
    return ShiftAlgebraReport(additive, origin, shift)


def shift_algebra_check(gamma1: ConicSet, gamma2: ConicSet, theta) -> ShiftAlgebraReport:
    """Evaluate the three conditions under which the conic calculus is
    closed for the pair (gamma1, gamma2): gamma2 additively salient,
    origin excluded, and gamma1 stable under x -> x + (1/2) theta xi for
    xi in gamma2.  Exact for rational polyhedral data; sampled sets get
    a one-sided numerical verdict.
    """
    if gamma1.dim != gamma2.dim:
        raise ValueError("cones must live in the same dimension")
    n = gamma1.dim
    if gamma1.is_exact() and gamma2.is_exact():
        tm = as_rational_antisym(theta, n)
        half_theta = _scale_mat(Fraction(1, 2), tm)
        additive = _check_additive_salient(gamma2)
        origin = ConditionCheck(
            "origin-excluded", True, True, None,
            "conic sets exclude the origin by representation",
        )
        shift = _check_shift_stability(gamma1, gamma2, half_theta)
        return ShiftAlgebraReport(additive, origin, shift)
    tf = np.array(
        [[float(frac(x)) for x in row] for row in as_rational_antisym(theta, n)]
    )
    return _shift_algebra_numeric(gamma1, gamma2, 0.5 * tf)


# ---------------------------------------------------------------------------
# pair condition and pullback

@dataclass(frozen=True)
class PairConditionResult:
    holds: bool
    witness: tuple[Vec, Vec] | None = None

    def __bool__(self) -> bool:
        return self.holds


def pair_condition(gamma: ConicSet) -> PairConditionResult:
    """Check that gamma never meets its own frequency reflection:
    no (x, xi) in gamma with (x, -xi) also in gamma.  Exact."""
    if gamma.dim % 2 != 0:
        raise ValueError("phase space dimension must be even")
    d = gamma.dim
    n = d // 2
    if not gamma.is_exact():
        raise ExactnessError("pair condition needs exact (rational) sets")
    flip = tuple(
        tuple((-ONE if i >= n and i == j else (ONE if i == j else ZERO)) for j in range(d))
        for i in range(d)
    )
    comps = [c for c in set_gencones(gamma) if c.gens]
    for ci in comps:
        gi = _gen_matrix(ci)
        ki = len(ci.gens)
        for cj in comps:
            gj = _gen_matrix(cj)
            kj = len(cj.gens)
            a = _hcat(_scale_mat(-ONE, matmul(flip, gi)), gj)
            selectors = [_hcat(gi, _zeros(d, kj))]
            selectors += _lift_excludes(ci, gi, 0, ki + kj)
            selectors += _lift_excludes(cj, gj, ki, ki + kj)
            w = feasible_with_nonzero(a, ki + kj, selectors)
            if w is not None:
                p = primitive_ray(matvec(gi, w[:ki]))
                return PairConditionResult(False, (p, matvec(flip, p)))
    return PairConditionResult(True, None)


@dataclass(frozen=True)
class PullbackResult:
    defined: bool
    wavefront: ConicSet
    undefined_witness: Vec | None = None


def wf_pullback(s: ConicSet, amap) -> PullbackResult:
    """Pull a phase space conic set back through the linear map
    y = A x (A an m-by-n rational matrix, s living over y-space).

    The pullback is flagged undefined when s meets the conormal set
    {(0, eta) : A^T eta = 0, eta != 0}.  The returned set collects
    (x, A^T eta) over pairs with (A x, eta) in s, together with
    ker(A) x {0} directions contributed by the loss of injectivity.
    """
    am = mat([list(r) for r in (amap.tolist() if hasattr(amap, "tolist") else amap)])
    m = len(am)
    n = len(am[0])
    if s.dim != 2 * m:
        raise ValueError(f"set dimension {s.dim} does not match map rows {m}")
    if not s.is_exact():
        raise ExactnessError("pullback needs exact (rational) sets")
    px, pxi = _projector(m, 0), _projector(m, 1)
    at = mat_t(am)
    defined = True
    witness = None
    comps = [c for c in set_gencones(s) if c.gens]
    for gc in comps:
        g = _gen_matrix(gc)
        k = len(gc.gens)
        a = matmul(px, g) + matmul(at, matmul(pxi, g))
        selectors = [matmul(pxi, g)]
        selectors += [matmul(e, g) for e in gc.excludes]
        w = feasible_with_nonzero(a, k, selectors)
        if w is not None:
            defined = False
            witness = primitive_ray(matvec(g, w))
            break
    out_comps: list[PolyhedralCone] = []
    a_inv_t = None
    if m == n:
        from .cones import _rational_inverse

        inv = _rational_inverse(am)
        if inv is not None:
            a_inv_t = mat_t(inv)
    for gc in comps:
        g = _gen_matrix(gc)
        k = len(gc.gens)
        pxg = matmul(px, g)
        sys = _hcat(am, _scale_mat(-ONE, am), _scale_mat(-ONE, pxg))
        gens = []
        for r in _collect_rays(sys, 2 * n + k):
            x = tuple(r[i] - r[n + i] for i in range(n))
            eta = matvec(pxi, matvec(g, r[2 * n:]))
            o = tuple(x) + tuple(matvec(at, eta))
            if not is_zero_vec(o):
                gens.append(o)
        gens = _dedup_gens(gens)
        if not gens:
            continue
        if a_inv_t is not None:
            lift = tuple(
                tuple(
                    (am[i][j] if i < m and j < n else ZERO)
                    if i < m
                    else ((a_inv_t[i - m][j - n]) if j >= n else ZERO)
                    for j in range(2 * n)
                )
                for i in range(2 * m)
            )
            excl = tuple(matmul(e, lift) for e in gc.excludes)
            out_comps.append(PolyhedralCone(gens, excl))
        else:
            out_comps.append(PolyhedralCone(gens))
    kernel = nullspace(am, n)
    if kernel:
        kgens = []
        for b in kernel:
            v = tuple(b) + tuple(ZERO for _ in range(n))
            kgens.append(primitive_ray(v))
            kgens.append(primitive_ray(vneg(v)))
        out_comps.append(PolyhedralCone(tuple(kgens)))
    return PullbackResult(defined, ConicSet(2 * n, tuple(out_comps)), witness)
