from fractions import Fraction

import pytest

from twistlab.calculus import (
    shift_algebra_check,
    as_rational_antisym,
    existence_condition,
    existence_condition_theta_inv,
    pair_condition,
    predicted_product_wf,
    predicted_star_wf,
    wf_pullback,
)
from twistlab.cones import (
    ConicSet,
    conic_equal,
    empty_set,
    full_space,
    member,
    polyhedral,
    product_set,
    ray_set,
    subspace_set,
)
from twistlab.rational import matvec, primitive_ray, vec

F = Fraction
J = ((F(0), F(1)), (F(-1), F(0)))
ZERO2 = ((F(0), F(0)), (F(0), F(0)))

# phase space sets over R^1 and R^2
DELTA_1 = product_set(None, full_space(1))       # {0} x (R \ 0)
OSC_1 = product_set(full_space(1), None)         # (R \ 0) x {0}
DELTA_2 = product_set(None, full_space(2))
OSC_2 = product_set(full_space(2), None)


def test_theta_validation():
    with pytest.raises(ValueError):
        as_rational_antisym(((F(0), F(1)), (F(1), F(0))), 2)
    with pytest.raises(ValueError):
        as_rational_antisym(((F(0),),), 2)
    m = as_rational_antisym([[0, 0.5], [-0.5, 0]], 2)
    assert m[0][1] == F(1, 2)


def test_existence_forced_true_any_coupling():
    # oscillation-only against point-singularity-only can never violate
    # the pairing condition
    for theta in (ZERO2, J, tuple(tuple(3 * x / 7 for x in row) for row in J)):
        assert existence_condition(OSC_2, DELTA_2, theta).holds
        assert existence_condition(DELTA_2, OSC_2, theta).holds


def test_existence_delta_pair_fails_with_valid_witness():
    res = existence_condition(DELTA_1, DELTA_1, ((F(0),),))
    assert not res.holds
    p, q = res.witness
    assert member(DELTA_1, p) and member(DELTA_1, q)
    # q is the frequency flip of p (up to positive scale)
    flip = (p[0], -p[1])
    assert primitive_ray(q) == primitive_ray(flip)
    # the pairing equation x = (1/2) theta xi degenerates to x = 0
    assert p[0] == 0


def test_existence_witness_solves_pairing_equation():
    # with invertible coupling the diagonal pair fails off the axes
    diag = subspace_set([(1, 0, 1, 0)])  # x1-direction with equal frequency
    res = existence_condition(diag, diag, J)
    if not res.holds:
        (x1, x2, k1, k2), _q = res.witness
        half = matvec(tuple(tuple(v / 2 for v in row) for row in J), (k1, k2))
        assert (x1, x2) == half


def test_phrasings_agree_on_small_cases():
    pairs = [
        (DELTA_2, DELTA_2),
        (OSC_2, OSC_2),
        (DELTA_2, OSC_2),
        (polyhedral([(1, 0, 0, 1), (0, 1, 1, 0)]), polyhedral([(1, 1, 1, 1)])),
    ]
    for u, v in pairs:
        a = existence_condition(u, v, J)
        b = existence_condition_theta_inv(u, v, J)
        assert a.holds == b.holds


def test_theta_inverse_requires_invertible():
    with pytest.raises(ValueError):
        existence_condition_theta_inv(DELTA_1, DELTA_1, ((F(0),),))


def test_predicted_product_absorbs_point_singularity():
    # delta times oscillation at zero coupling keeps only the delta set
    got = predicted_product_wf(DELTA_1, OSC_1, ((F(0),),))
    assert conic_equal(got, DELTA_1)
    # and symmetrically
    got2 = predicted_product_wf(OSC_1, DELTA_1, ((F(0),),))
    assert conic_equal(got2, DELTA_1)


def test_predicted_product_empty_inputs():
    assert predicted_product_wf(empty_set(2), empty_set(2), ((F(0),),)).is_empty
    # one factor smooth: output reduces to the slice family of the other
    got = predicted_product_wf(DELTA_1, empty_set(2), ((F(0),),))
    assert conic_equal(got, DELTA_1)


def test_predicted_star_closure_exact():
    for n, theta in ((1, ((F(0),),)), (2, J)):
        dl = product_set(None, full_space(n))
        assert conic_equal(predicted_star_wf(dl, dl, theta), dl)


THETA_SHIFT = ((F(0), F(-1)), (F(1), F(0)))
LEFT_HALF = polyhedral([(-1, 0), (0, 1), (0, -1)])


def test_shift_algebra_light_cone_passes():
    upward = polyhedral([(1, 1), (-1, 1)])
    rep = shift_algebra_check(LEFT_HALF, upward, THETA_SHIFT)
    assert rep.passed and rep.exact
    assert rep.verdict == "exact"
    assert [c.passed for c in rep.conditions] == [True, True, True]


def test_shift_algebra_double_cone_fails_with_witness():
    double = ConicSet(2, polyhedral([(1, 1), (-1, 1)]).components
                      + polyhedral([(1, -1), (-1, -1)]).components)
    rep = shift_algebra_check(LEFT_HALF, double, THETA_SHIFT)
    assert not rep.passed
    c = rep.additive_salient
    assert not c.passed and c.witness is not None
    # the witness pair sums to zero: the cone contains a line
    a, b = c.witness[0], c.witness[1]
    assert tuple(x + y for x, y in zip(a, b)) == (0, 0)
    assert member(double, a) and member(double, b)


def test_pair_condition_verdicts():
    assert pair_condition(ray_set((1, 1))).holds
    sym = ConicSet(2, ray_set((1, 1)).components + ray_set((1, -1)).components)
    res = pair_condition(sym)
    assert not res.holds
    p, q = res.witness
    assert member(sym, p) and member(sym, q)
    assert q == (p[0], -p[1])
    with pytest.raises(ValueError):
        pair_condition(ConicSet(3, polyhedral([(1, 0, 0)]).components))


def test_pullback_identity():
    s = polyhedral([(1, 0, 0, 1)])
    ident = ((F(1), F(0)), (F(0), F(1)))
    res = wf_pullback(s, ident)
    assert res.defined
    assert conic_equal(res.wavefront, s)


def test_pullback_diagonal_restriction():
    # restrict a function of two variables to the diagonal x1 = x2
    amap = ((F(1),), (F(1),))  # y = (x, x), A maps R^1 -> R^2
    s = ray_set((0, 0, 1, 1))  # conormal-free direction
    res = wf_pullback(s, amap)
    assert res.defined
    # pulled back frequency is A^T eta = 1 + 1 = 2 over x-direction 0
    assert member(res.wavefront, (0, 1))


def test_pullback_refuses_conormal():
    amap = ((F(1),), (F(1),))
    s = ray_set((0, 0, 1, -1))  # A^T eta = 0: the conormal direction
    res = wf_pullback(s, amap)
    assert not res.defined
    assert res.undefined_witness is not None
    assert member(s, res.undefined_witness)
