import json

import numpy as np
import pytest

from twistlab.catalog import Chirp, Delta, GaussianPacket, PlaneWave, sample_analytic
from twistlab.grids import SampledField, make_grid
from twistlab.spectral import gaussian_window, hann_window
from twistlab.wavefront import (
    WavefrontParams,
    check_chirp_shear,
    check_fourier_symmetry,
    direction_grid,
    estimate_wf,
    hausdorff_deg,
)


@pytest.fixture(scope="module")
def grid128():
    return make_grid(1, 128, 12.0)


@pytest.fixture(scope="module")
def delta_estimate(grid128):
    u = sample_analytic(Delta(0.0), grid128)
    return estimate_wf(u, params=WavefrontParams(k_test=0.05))


def test_direction_grid_circle():
    d = direction_grid(2)
    assert d.count == 360
    assert d.resolution_deg == pytest.approx(0.5)
    np.testing.assert_allclose(np.linalg.norm(d.directions, axis=1), 1.0, rtol=1e-12)
    # closed under negation
    neg = -d.directions
    dots = neg @ d.directions.T
    assert np.all(dots.max(axis=1) > 1.0 - 1e-12)
    with pytest.raises(ValueError):
        direction_grid(2, count=7)
    with pytest.raises(ValueError):
        direction_grid(3)


def test_direction_grid_sphere_seeded():
    a = direction_grid(4, count=256, seed=1)
    b = direction_grid(4, count=256, seed=1)
    c = direction_grid(4, count=256, seed=2)
    np.testing.assert_array_equal(a.directions, b.directions)
    assert not np.array_equal(a.directions, c.directions)
    np.testing.assert_allclose(np.linalg.norm(a.directions, axis=1), 1.0, rtol=1e-12)
    # antipodal halves
    half = a.count // 2
    np.testing.assert_allclose(a.directions[half:], -a.directions[:half], rtol=1e-15)
    assert 0.0 < a.resolution_deg < 45.0


def test_delta_flags_frequency_axis(delta_estimate):
    est = delta_estimate
    flagged = est.flagged_directions()
    assert len(flagged) > 0
    # every flagged direction within 4 degrees of the vertical axis
    ang = np.degrees(np.arccos(np.clip(np.abs(flagged[:, 1]), -1.0, 1.0)))
    assert ang.max() <= 4.0 + 1e-9
    # the axis itself is flagged
    up = np.array([0.0, 1.0])
    assert np.any(np.all(np.abs(flagged - up) < 1e-12, axis=1))


def test_khat_values_on_and_off_set(delta_estimate):
    est = delta_estimate
    # exactly on the singular direction the decay order vanishes
    idx_up = int(np.argmin(np.linalg.norm(est.directions.directions - [0.0, 1.0], axis=1)))
    assert est.k_hat[idx_up] == pytest.approx(0.0, abs=1e-6)
    # transversal rays die into the dead floor: infinite order
    idx_right = int(np.argmin(np.linalg.norm(est.directions.directions - [1.0, 0.0], axis=1)))
    assert est.k_hat[idx_right] == np.inf


def test_flag_monotone_in_threshold(grid128):
    u = sample_analytic(Delta(0.0), grid128)
    lo = estimate_wf(u, params=WavefrontParams(k_test=0.01))
    hi = estimate_wf(u, params=WavefrontParams(k_test=0.05))
    assert np.all(hi.flagged[lo.flagged])  # nested by definition
    assert hi.flagged.sum() >= lo.flagged.sum()


def test_gaussian_flags_nothing(grid128):
    u = sample_analytic(GaussianPacket(), grid128)
    est = estimate_wf(u, params=WavefrontParams(k_test=0.05))
    assert est.flagged.sum() == 0
    # every finite decay order sits well above the threshold
    assert est.k_hat.min() > 1.0


def test_planewave_flags_position_axis(grid128):
    u = sample_analytic(PlaneWave(0.1), grid128)
    est = estimate_wf(u, params=WavefrontParams(k_test=0.05))
    flagged = est.flagged_directions()
    assert len(flagged) > 0
    ang = np.degrees(np.arccos(np.clip(np.abs(flagged[:, 0]), -1.0, 1.0)))
    assert ang.max() <= 4.0 + 1e-9


def test_chirp_flags_diagonal(grid128):
    u = sample_analytic(Chirp([[1.0]]), grid128)
    est = estimate_wf(u, params=WavefrontParams(k_test=0.05))
    flagged = est.flagged_directions()
    assert len(flagged) > 0
    diag = np.array([1.0, 1.0]) / np.sqrt(2.0)
    cosines = np.abs(flagged @ diag)
    assert np.degrees(np.arccos(np.clip(cosines, -1, 1))).max() <= 4.0 + 1e-9


def test_window_independence(grid128):
    u = sample_analytic(Delta(0.0), grid128)
    params = WavefrontParams(k_test=0.05)
    a = estimate_wf(u, gaussian_window(grid128), params)
    b = estimate_wf(u, hann_window(grid128), params)
    d = hausdorff_deg(a.flagged_directions(), b.flagged_directions())
    assert d <= 1.0 + 1e-9


def test_fourier_symmetry_delta(grid128):
    u = sample_analytic(Delta(0.0), grid128)
    rep = check_fourier_symmetry(u, params=WavefrontParams(k_test=0.05))
    assert rep.hausdorff_deg < 1e-6


def test_chirp_shear_zero_matrix_is_identity(grid128):
    u = sample_analytic(GaussianPacket(), grid128)
    rep = check_chirp_shear(u, [[0.0]], params=WavefrontParams(k_test=0.05))
    assert rep.hausdorff_deg == 0.0


def test_chirp_shear_unit_matrix(grid128):
    u = sample_analytic(Delta(0.0), grid128)
    rep = check_chirp_shear(u, [[1.0]], params=WavefrontParams(k_test=0.05))
    assert rep.hausdorff_deg <= 2.0


def test_hausdorff_properties():
    a = np.array([[1.0, 0.0]])
    b = np.array([[0.0, 1.0]])
    none = np.empty((0, 2))
    assert hausdorff_deg(a, a) == 0.0
    assert hausdorff_deg(none, none) == 0.0
    assert hausdorff_deg(a, none) == np.inf
    assert hausdorff_deg(a, b) == pytest.approx(90.0, rel=1e-12)
    # chord formula is exact for antipodes
    assert hausdorff_deg(a, -a) == pytest.approx(180.0, rel=1e-12)


def test_zero_field_rejected(grid128):
    z = SampledField(grid128, np.zeros(128, dtype=complex))
    with pytest.raises(ValueError):
        estimate_wf(z)


def test_trust_region_must_be_nonempty():
    # a unit window overflows a half-width-1 box: no trusted radii
    g = make_grid(1, 16, 1.0)
    u = sample_analytic(GaussianPacket(), g)
    with pytest.raises(ValueError, match="trust"):
        estimate_wf(u)


def test_estimate_serialization(delta_estimate):
    est = delta_estimate
    doc = json.loads(est.to_json())
    assert set(doc) >= {"directions", "k_hat", "flagged", "params"}
    assert len(doc["k_hat"]) == est.directions.count
    # infinities encode as nulls
    assert any(v is None for v in doc["k_hat"])
    lines = est.to_csv().splitlines()
    assert lines[0].startswith("w1,w2,k_hat")
    assert len(lines) == est.directions.count + 1


def test_estimate_deterministic(grid128):
    u = sample_analytic(Delta(0.0), grid128)
    a = estimate_wf(u, params=WavefrontParams(k_test=0.05))
    b = estimate_wf(u, params=WavefrontParams(k_test=0.05))
    np.testing.assert_array_equal(a.k_hat, b.k_hat)
    np.testing.assert_array_equal(a.flagged, b.flagged)


def test_default_threshold_from_calibration(grid128):
    from twistlab.calibration import default_k_test

    u = sample_analytic(Delta(0.0), grid128)
    est = estimate_wf(u)
    assert est.k_test == default_k_test()
    # calibrated threshold still finds the axis
    assert est.flagged.sum() > 0
