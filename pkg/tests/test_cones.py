from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistlab.cones import (
    ConicSet,
    angular_containment,
    angular_distance_deg,
    caps_set,
    conic_equal,
    empty_set,
    full_space,
    graph_set,
    linear_image,
    member,
    polyhedral,
    product_set,
    ray_set,
    set_from_json,
    set_to_json,
    subspace_set,
    wf_chirp_shear,
    wf_fourier_rotate,
)

F = Fraction


def test_membership_constructors():
    quad = polyhedral([(1, 0), (1, 1)])
    assert member(quad, (2, 1))
    assert member(quad, (1, 0))
    assert not member(quad, (0, 1))
    assert not member(quad, (-1, 0))
    # membership of the origin is rejected outright
    with pytest.raises(ValueError):
        member(quad, (0, 0))

    line = subspace_set([(1, 2)])
    assert member(line, (2, 4)) and member(line, (-1, -2))
    assert not member(line, (1, 0))

    r = ray_set((3, 0))
    assert member(r, (1, 0)) and not member(r, (-1, 0))
    both = ray_set((3, 0), both=True)
    assert member(both, (-1, 0))

    assert member(full_space(2), (5, -7))
    assert not member(empty_set(2), (1, 1))


def test_product_set_blocks():
    # {0} x (R^2 \ 0): frequency-axis directions of a point singularity
    s = product_set(None, full_space(2))
    assert member(s, (0, 0, 1, 2))
    assert not member(s, (1, 0, 0, 1))
    t = product_set(full_space(2), None)
    assert member(t, (3, -1, 0, 0))
    assert not member(t, (3, -1, 0, 1))


def test_graph_set_membership():
    g = graph_set([[F(1)]])  # {(x, x)}
    assert member(g, (2, 2))
    assert not member(g, (2, -2))
    assert not member(g, (0, 1))


@given(st.sampled_from([(1, 0), (1, 1), (0, 1), (-2, 3)]),
       st.integers(min_value=1, max_value=5))
def test_member_dilation_invariant(v, c):
    s = polyhedral([(1, 0), (1, 1)])
    scaled = tuple(c * x for x in v)
    assert member(s, v) == member(s, scaled)


def test_fourier_rotate_fourth_power_identity():
    s = polyhedral([(1, 0, 2, 1), (0, 1, 1, 1)])
    t = s
    for _ in range(4):
        t = wf_fourier_rotate(t)
    assert conic_equal(t, s)
    # inverse undoes one application
    assert conic_equal(wf_fourier_rotate(wf_fourier_rotate(s), inverse=True), s)


def test_fourier_rotate_maps_position_to_frequency():
    pos = product_set(full_space(1), None)   # (x, 0) directions
    freq = product_set(None, full_space(1))  # (0, xi) directions
    assert conic_equal(wf_fourier_rotate(pos), freq)


def test_chirp_shear_inverse():
    a = [[F(1), F(1, 2)], [F(1, 2), F(0)]]
    neg = [[-x for x in row] for row in a]
    s = polyhedral([(1, 0, 0, 1), (0, 1, 1, 0)])
    assert conic_equal(wf_chirp_shear(wf_chirp_shear(s, a), neg), s)


def test_chirp_shear_tilts_position_directions():
    # (x, xi) -> (x, xi + A x): position-axis directions pick up slope A,
    # while the frequency axis (x = 0) is left untouched
    pw_wf = product_set(full_space(1), None)
    sheared = wf_chirp_shear(pw_wf, [[F(1)]])
    assert member(sheared, (1, 1)) and member(sheared, (-1, -1))
    assert not member(sheared, (1, 0))
    delta_wf = product_set(None, full_space(1))
    assert conic_equal(wf_chirp_shear(delta_wf, [[F(1)]]), delta_wf)


def test_conic_equal_reduction():
    # the same ray presented twice collapses
    a = ConicSet(2, ray_set((1, 0)).components + ray_set((2, 0)).components)
    assert conic_equal(a, ray_set((1, 0)))
    # a ray absorbed into a hull that contains it
    hull = polyhedral([(1, 0), (1, 1)])
    b = ConicSet(2, hull.components + ray_set((2, 1)).components)
    assert conic_equal(b, hull)
    assert not conic_equal(ray_set((1, 0)), ray_set((0, 1)))


def test_angular_distance_known_values():
    axis = ray_set((1, 0))
    assert angular_distance_deg(axis, (1, 0)) == pytest.approx(0.0, abs=1e-12)
    assert angular_distance_deg(axis, (0, 1)) == pytest.approx(90.0, rel=1e-12)
    # directions with no positive component project to the apex: 90 degrees
    assert angular_distance_deg(axis, (-1, 0)) == pytest.approx(90.0, rel=1e-12)
    diag = ray_set((1, 1))
    assert angular_distance_deg(diag, (1, 0)) == pytest.approx(45.0, rel=1e-10)
    assert angular_distance_deg(empty_set(2), (1, 0)) == 180.0


def test_angular_containment_report():
    dirs = np.array([[1.0, 0.0], [np.cos(0.01), np.sin(0.01)]])
    rep = angular_containment(dirs, ray_set((1, 0)), tol_deg=1.0)
    assert rep.passed and rep.fraction == 1.0 and rep.total == 2
    strict = angular_containment(dirs, ray_set((1, 0)), tol_deg=0.1)
    assert not strict.passed and strict.within == 1
    assert strict.max_excess_deg == pytest.approx(np.degrees(0.01), rel=1e-6)
    # empty direction list is vacuously contained
    none = angular_containment(np.zeros((0, 2)), ray_set((1, 0)), tol_deg=1.0)
    assert none.passed and none.fraction == 1.0


def test_caps_set_membership():
    caps = caps_set(np.array([[1.0, 0.0]]), radius_deg=5.0)
    assert member(caps, (1.0, 0.0))
    assert member(caps, (np.cos(np.radians(4.0)), np.sin(np.radians(4.0))))
    assert not member(caps, (np.cos(np.radians(6.0)), np.sin(np.radians(6.0))))


def test_json_roundtrip():
    for s in (
        empty_set(4),
        full_space(3),
        ray_set((1, -2)),
        subspace_set([(1, 0, 0), (0, 1, 1)]),
        polyhedral([(1, 0), (1, 1)]),
        product_set(full_space(2), None),
        graph_set([[F(1), F(0)], [F(0), F(2)]]),
        caps_set(np.array([[0.0, 1.0]]), radius_deg=2.0),
    ):
        t = set_from_json(set_to_json(s))
        assert t.dim == s.dim
        if s.is_exact():
            assert conic_equal(s, t)
        else:
            assert set_to_json(t) == set_to_json(s)


def test_linear_image_of_ray():
    s = ray_set((1, 0))
    m = ((F(0), F(-1)), (F(1), F(0)))  # rotate 90 degrees
    t = linear_image(s, m)
    assert member(t, (0, 1))
    assert not member(t, (1, 0))
