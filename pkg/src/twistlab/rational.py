"""Exact rational linear algebra for small polyhedral cone problems.

Everything here works over tuples of fractions.Fraction and is exact.
The central primitive is extreme-ray enumeration for cones of the form
{w >= 0 : A w = 0}; dimensions stay tiny (a handful of rows, at most a
few dozen columns), so minimal-support enumeration over column subsets
is both exact and fast.  No external solver is used: verdicts built on
these routines are meant to certify counterexamples.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Exact Fraction from int/Fraction/float/(num, den) pair/decimal string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact binary expansion
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise TypeError(f"cannot interpret {x!r} as a rational scalar")


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vscale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def dot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def matvec(a: Mat, x: Vec) -> Vec:
    return tuple(dot(row, x) for row in a)


def mat_t(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def matmul(a: Mat, b: Mat) -> Mat:
    bt = mat_t(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def primitive(a: Vec) -> Vec:
    """Scale a rational vector to coprime integer entries, first nonzero > 0."""
    if is_zero_vec(a):
        return a
    from math import gcd, lcm

    den = 1
    for x in a:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in a]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints)


def primitive_ray(a: Vec) -> Vec:
    """Scale by a positive rational to coprime integers, keeping direction."""
    if is_zero_vec(a):
        return a
    from math import gcd, lcm

    den = 1
    for x in a:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in a]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(Fraction(v // g) for v in ints)


def rref(a: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot column indices."""
    rows = [list(r) for r in a]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    reduced = tuple(tuple(row) for row in rows[:r])
    return reduced, tuple(pivots)


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def nullspace(a: Mat, ncols: int | None = None) -> list[Vec]:
    """Basis of {x : A x = 0}; pass ncols when A may be empty."""
    if not a:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        return [tuple(ONE if j == i else ZERO for j in range(ncols)) for i in range(ncols)]
    ncols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for ri, pc in enumerate(pivots):
            x[pc] = -red[ri][fc]
        basis.append(tuple(x))
    return basis


def solve(a: Mat, b: Vec) -> Vec | None:
    """One exact solution of A x = b, or None when inconsistent."""
    if not a:
        return None
    ncols = len(a[0])
    aug = tuple(row + (bv,) for row, bv in zip(a, b))
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for ri, pc in enumerate(pivots):
        x[pc] = red[ri][ncols]
    return tuple(x)


def row_space_canonical(rows: Sequence[Vec]) -> Mat:
    """Canonical (rref, primitive-scaled) basis of the row space."""
    red, _ = rref(tuple(rows))
    return tuple(primitive(r) for r in red if not is_zero_vec(r))


def extreme_rays(a: Mat, ncols: int) -> list[Vec]:
    """Extreme rays of the pointed cone {w >= 0 : A w = 0}.

    Enumerates candidate supports: a ray with support S exists iff the
    columns of A restricted to S have a one-dimensional nullspace whose
    generator can be signed strictly positive.  Supports of extreme rays
    have size at most rank(A_S) + 1, so subsets up to full rank + 1
    suffice.  Returned rays are primitive-scaled and deduplicated.
    """
    if ncols == 0:
        return []
    if not a:
        # free nonnegative orthant: extreme rays are the unit vectors
        return [tuple(ONE if j == i else ZERO for j in range(ncols)) for i in range(ncols)]
    full_rank = rank(a)
    max_support = min(ncols, full_rank + 1)
    cols = mat_t(a)
    rays: dict[Vec, None] = {}
    for size in range(1, max_support + 1):
        for support in combinations(range(ncols), size):
            sub = mat_t(tuple(cols[j] for j in support))
            ns = nullspace(sub, ncols=size)
            if len(ns) != 1:
                continue
            gen = ns[0]
            if all(x > 0 for x in gen):
                pass
            elif all(x < 0 for x in gen):
                gen = vneg(gen)
            else:
                continue
            w = [ZERO] * ncols
            for j, val in zip(support, gen):
                w[j] = val
            rays[primitive(tuple(w))] = None
    # minimal supports only: drop rays whose support strictly contains another's
    out = []
    supports = {r: frozenset(j for j, x in enumerate(r) if x != 0) for r in rays}
    for r, s in supports.items():
        if not any(o != s and o < s for o in supports.values()):
            out.append(r)
    return out


def nonneg_solve(gens: Sequence[Vec], v: Vec) -> Vec | None:
    """Coefficients lam >= 0 with sum lam_i g_i = v, or None.

    Homogenize: rays of {(lam, s) >= 0 : G lam - s v = 0} with s > 0
    witness membership of v in the cone hull of gens.
    """
    k = len(gens)
    if is_zero_vec(v):
        return tuple([ZERO] * k)
    if k == 0:
        return None
    d = len(v)
    a = tuple(
        tuple(gens[j][i] for j in range(k)) + (-v[i],)
        for i in range(d)
    )
    for ray in extreme_rays(a, k + 1):
        s = ray[k]
        if s > 0:
            return tuple(x / s for x in ray[:k])
    return None


def cone_contains(gens: Sequence[Vec], v: Vec) -> bool:
    """Exact membership of v in the closed cone of nonnegative combinations."""
    return nonneg_solve(gens, v) is not None
