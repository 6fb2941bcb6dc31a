import math

import numpy as np
import pytest

from subord.functions import (
    FUNCTION_IDS,
    UnknownFunctionError,
    Verdict,
    eval_target,
    eval_target_deriv,
    get_target,
    region_contains,
    region_contains_batch,
    target_boundary,
)

from conftest import random_interior

E = math.e
SQRT2 = math.sqrt(2.0)


def test_catalog_has_the_eight_maps():
    assert set(FUNCTION_IDS) == {
        "PHI_Q", "PHI_0", "PHI_C", "PHI_LIM", "PHI_S", "BELL", "SG", "EXP",
    }


def test_unknown_id_raises():
    with pytest.raises(UnknownFunctionError):
        eval_target("NOPE", 0.0)
    with pytest.raises(UnknownFunctionError):
        eval_target_deriv("NOPE", 0.0)


def test_argument_outside_disk_rejected():
    with pytest.raises(ValueError):
        eval_target("BELL", 1.5)


@pytest.mark.parametrize("uid", FUNCTION_IDS)
def test_normalization_at_origin(uid):
    assert eval_target(uid, 0.0) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("uid", FUNCTION_IDS)
def test_endpoint_values_exact(uid):
    fn = get_target(uid)
    assert eval_target(uid, 1.0).real == pytest.approx(fn.at_plus1, abs=1e-14)
    assert eval_target(uid, -1.0).real == pytest.approx(fn.at_minus1, abs=1e-14)
    assert abs(eval_target(uid, 1.0).imag) < 1e-14
    assert fn.at_minus1 < 1.0 < fn.at_plus1


def test_specific_values():
    assert eval_target("BELL", 0.0) == pytest.approx(1.0, abs=1e-15)
    assert eval_target("PHI_C", -1.0) == pytest.approx(1.0 / 3.0, abs=1e-15)
    # sigmoid right endpoint 2e/(e+1)
    assert eval_target("SG", 1.0) == pytest.approx(2 * E / (E + 1), abs=1e-15)
    assert 2 * E / (E + 1) == pytest.approx(1.462117, abs=1e-6)


def test_crescent_branch_is_continuous_at_pm_i():
    # 1 + z^2 vanishes at +-i; the principal branch passes through +-i
    assert eval_target("PHI_Q", 1j) == pytest.approx(1j, abs=1e-12)
    assert eval_target("PHI_Q", -1j) == pytest.approx(-1j, abs=1e-12)
    near = eval_target("PHI_Q", 1j * (1 - 1e-9))
    assert abs(near - 1j) < 1e-4


@pytest.mark.parametrize("uid", FUNCTION_IDS)
def test_caratheodory_positivity_on_polar_grid(uid):
    radii = np.linspace(0.999 / 200, 0.999, 200)
    angles = 2 * np.pi * np.arange(200) / 200
    z = radii[:, None] * np.exp(1j * angles[None, :])
    values = eval_target(uid, z)
    assert float(np.min(values.real)) > 0.0


@pytest.mark.parametrize("uid", FUNCTION_IDS)
def test_conjugate_symmetry(uid, rng):
    z = random_interior(rng, 50)
    assert np.allclose(
        eval_target(uid, np.conj(z)), np.conj(eval_target(uid, z)), atol=1e-13
    )


def test_derivative_trivials():
    assert eval_target_deriv("PHI_S", 0.0) == pytest.approx(1.0, abs=1e-15)
    assert eval_target_deriv("BELL", 0.0) == pytest.approx(1.0, abs=1e-15)
    # derivative of the limacon at 1: sqrt(2) + 1, cross-checked below by the
    # finite-difference sweep
    assert eval_target_deriv("PHI_LIM", 1.0) == pytest.approx(SQRT2 + 1.0, abs=1e-14)


@pytest.mark.parametrize("uid", FUNCTION_IDS)
def test_derivative_matches_finite_differences(uid, rng):
    z = random_interior(rng, 100, r_max=0.9)
    h = 1e-5
    fd = (eval_target(uid, z + h) - eval_target(uid, z - h)) / (2 * h)
    dv = eval_target_deriv(uid, z)
    assert np.max(np.abs(dv - fd) / np.abs(dv)) < 1e-6


def test_boundary_requires_16_samples():
    with pytest.raises(ValueError):
        target_boundary("BELL", 8)


def test_boundary_samples_cardioid():
    curve = target_boundary("PHI_C", 16)
    # theta = pi/2 sample is phi_c(i) = 1/3 + 4i/3
    assert curve.points[4] == pytest.approx(1 / 3 + 4j / 3, abs=1e-14)
    assert curve.points[0] == pytest.approx(3.0, abs=1e-14)
    assert curve.points[8] == pytest.approx(1 / 3, abs=1e-14)


def test_boundary_first_sample_sigmoid():
    curve = target_boundary("SG", 64)
    assert curve.points[0] == pytest.approx(2 * E / (E + 1), abs=1e-14)


@pytest.mark.parametrize("uid", FUNCTION_IDS)
def test_boundary_conjugate_symmetry(uid):
    n = 128
    curve = target_boundary(uid, n)
    k = np.arange(1, n)
    assert np.allclose(curve.points[k], np.conj(curve.points[n - k]), atol=1e-12)


@pytest.mark.parametrize("uid", FUNCTION_IDS)
def test_center_is_inside(uid):
    assert region_contains(uid, 1.0 + 0.0j) is Verdict.INSIDE


def test_crescent_right_vertex_is_extreme():
    assert region_contains("PHI_Q", 1 + SQRT2 + 0.1) is Verdict.OUTSIDE


def test_point_abutting_cardioid_vertex_is_indeterminate():
    assert region_contains("PHI_C", 3.0 - 1e-15) is Verdict.INDETERMINATE


def test_region_contains_validates_arguments():
    with pytest.raises(ValueError):
        region_contains("BELL", 1.0, n=64)
    with pytest.raises(ValueError):
        region_contains("BELL", 1.0, delta=0.0)


@pytest.mark.parametrize("uid", FUNCTION_IDS)
def test_interior_images_are_inside(uid):
    thetas = 2 * np.pi * np.arange(64) / 64
    ws = eval_target(uid, 0.5 * np.exp(1j * thetas))
    for w in ws:
        assert region_contains(uid, complex(w), 4096, 1e-9) is Verdict.INSIDE


def test_batch_agrees_with_scalar(rng):
    for uid in ("PHI_Q", "BELL", "SG"):
        inner = eval_target(uid, 0.7 * np.exp(1j * rng.uniform(0, 2 * np.pi, 20)))
        outer = inner + 10.0  # far to the right of every catalog region
        ws = np.concatenate([inner, outer])
        verdicts, dists = region_contains_batch(uid, ws, 1024, 1e-9)
        for w, v in zip(ws, verdicts):
            assert region_contains(uid, complex(w), 1024, 1e-9) is v
        assert np.all(dists >= 0)


def test_batch_flags_boundary_points_indeterminate():
    w = eval_target("SG", 1.0)
    verdicts, _ = region_contains_batch("SG", [w], 1024, 1e-9)
    assert verdicts[0] is Verdict.INDETERMINATE


@pytest.mark.parametrize("uid", ["PHI_Q", "BELL", "SG", "PHI_C", "PHI_LIM"])
def test_near_boundary_stress(uid):
    # points straddling the rightmost boundary vertex at shrinking offsets:
    # the adaptive refinement must resolve every scale above the margin
    vertex = get_target(uid).at_plus1
    for eps in (1e-3, 1e-5, 1e-6, 1e-8):
        assert region_contains(uid, vertex - eps, 4096, 1e-9) is Verdict.INSIDE, eps
        assert region_contains(uid, vertex + eps, 4096, 1e-9) is Verdict.OUTSIDE, eps
    verdicts, dists = region_contains_batch(
        uid, [vertex - 1e-6, vertex + 1e-6], 4096, 1e-9
    )
    assert list(verdicts) == [Verdict.INSIDE, Verdict.OUTSIDE]
    assert np.all(dists <= 2e-6)


def test_cusp_vertex_straddle():
    # the cardioid boundary has a cusp at phi_c(-1) = 1/3; approach along
    # the real axis from both sides
    assert region_contains("PHI_C", 1 / 3 + 1e-6, 4096, 1e-9) is Verdict.INSIDE
    assert region_contains("PHI_C", 1 / 3 - 1e-6, 4096, 1e-9) is Verdict.OUTSIDE


def test_non_univalent_sampling_raises(monkeypatch):
    # a doubly-winding curve is not a Jordan boundary; the winding test must
    # refuse rather than return a side
    import subord.functions as fmod

    double = fmod.TargetFunction(
        "DOUBLE", "doubly-covered circle", lambda z: z * z + 2.0,
        lambda z: 2.0 * z, 1.0, 3.0,
    )
    monkeypatch.setitem(fmod._CATALOG, "DOUBLE", double)
    with pytest.raises(fmod.WindingError):
        region_contains("DOUBLE", 2.0 + 0.0j, 1024, 1e-9)
