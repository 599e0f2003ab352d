"""Subtorus degrees, the Gauss integral, and the triple-linking pipeline."""

import numpy as np
import pytest

from linkhel import catalog
from linkhel.errors import CurvesTooClose, NonzeroLinking
from linkhel.geometry import CurveR3, quat, stereo_image
from linkhel.invariants import (
    degree_integral,
    gauss_linking,
    milnor_mu,
    milnor_mu_bruteforce,
    pairwise_degrees,
    subtorus_degree,
)
from linkhel.torusfields import helicity, helicity_truncation_bound
from linkhel.charmap import sample_VL

# Pole used to project S^3 curves to R^3 for Gauss-integral cross-checks;
# away from every catalog component.
ORACLE_POLE = quat(0.5, 0.5, -0.5, 0.5)


def _circle(center, radius, phase=0.0, m=64):
    t = 2 * np.pi * np.arange(m) / m + phase
    return np.stack(
        [center[0] + radius * np.cos(t), center[1] + radius * np.sin(t), 0 * t],
        axis=1,
    )


def _xz_circle(center, radius, m=64):
    t = 2 * np.pi * np.arange(m) / m
    return np.stack(
        [center[0] + radius * np.cos(t), 0 * t, center[2] + radius * np.sin(t)],
        axis=1,
    )


# ---------------------------------------------------------------------------
# Gauss linking integral


def test_gauss_linking_split_pair():
    A = CurveR3.from_samples(_circle((0.0, 0.0), 1.0))
    B = CurveR3.from_samples(_circle((3.0, 0.0), 1.0))
    assert abs(gauss_linking(A, B)) <= 1e-6


def test_gauss_linking_hopf_pair_against_crossing_count():
    # B = unit circle in the xz-plane centered at (1, 0, 0) passes through
    # the spanning disk of A once, at the origin, moving along -z while the
    # disk normal (right-hand rule from A's ccw orientation) is +z: lk = -1.
    A = CurveR3.from_samples(_circle((0.0, 0.0), 1.0))
    B = CurveR3.from_samples(_xz_circle((1.0, 0.0, 0.0), 1.0))
    lk = gauss_linking(A, B)
    assert abs(lk - (-1.0)) <= 1e-6


def test_gauss_linking_orientation_odd_and_symmetric():
    A = CurveR3.from_samples(_circle((0.0, 0.0), 1.0))
    B = CurveR3.from_samples(_xz_circle((1.0, 0.0, 0.0), 1.0))
    lk = gauss_linking(A, B)
    assert gauss_linking(A.reversed(), B) == -lk
    assert abs(gauss_linking(B, A) - lk) <= 1e-8


def test_gauss_linking_separation_guard():
    A = CurveR3.from_samples(_circle((0.0, 0.0), 1.0))
    B = CurveR3.from_samples(_circle((2.0 + 1e-5, 0.0), 1.0))
    with pytest.raises(CurvesTooClose):
        gauss_linking(A, B)


# ---------------------------------------------------------------------------
# subtorus degrees


def test_unlink_degrees_are_exact_zeros(unlink_entry):
    degs, residuals = pairwise_degrees(unlink_entry.link, 32)
    assert degs == (0, 0, 0)
    assert max(residuals) <= 1e-10


def test_borromean_degrees(borromean_entry):
    degs, residuals = pairwise_degrees(borromean_entry.link, 64)
    assert degs == (0, 0, 0)
    assert max(residuals) <= 1e-6


def test_hopf_degrees_and_gauss_oracle(hopf_entry):
    # The only nonzero degree is frozen-u = lk(X, Y); its sign under the
    # package conventions agrees with the Gauss integral of the
    # stereographic images (regression-pinned to -1 for this entry).
    L = hopf_entry.link
    for axis, want in (("s", 0), ("t", 0)):
        k, res = subtorus_degree(L, axis, 0.0, 32)
        assert k == want and res <= 1e-6
    k_u, res_u = subtorus_degree(L, "u", 0.0, 64)
    assert abs(k_u) == 1 and res_u <= 1e-6
    oracle = gauss_linking(
        stereo_image(L.X, ORACLE_POLE), stereo_image(L.Y, ORACLE_POLE)
    )
    assert k_u == int(np.rint(oracle)) == -1


def test_async_degrees_match_map_degrees(
    borromean_entry, unlink_entry, hopf_entry
):
    for entry in (borromean_entry, unlink_entry, hopf_entry):
        for axis in "stu":
            k_map, _ = subtorus_degree(entry.link, axis, 0.0, 32)
            k_async, res = subtorus_degree(entry.link, axis, 0.0, 32, use_async=True)
            assert k_async == k_map
            assert res <= 1e-6


def test_degree_is_frozen_value_independent(hopf_entry):
    values = [
        degree_integral(hopf_entry.link, "u", v, 32)
        for v in (0.0, 1.1, 2.7, 4.4)
    ]
    assert max(values) - min(values) <= 1e-6


def test_degree_grid_validation(unlink_entry):
    with pytest.raises(ValueError):
        subtorus_degree(unlink_entry.link, "u", 0.0, 8)
    with pytest.raises(ValueError):
        subtorus_degree(unlink_entry.link, "x", 0.0, 32)


# ---------------------------------------------------------------------------
# the triple-linking pipeline


def test_report_fields_unlink(unlink_entry):
    report = milnor_mu(unlink_entry.link, 32)
    assert (report.p, report.q, report.r) == (0, 0, 0)
    assert report.mu == 0.5 * report.nu  # exact as stored reals
    assert abs(report.mu) <= 1e-3
    assert report.mu_residual <= 1e-3
    assert report.grid_n == 32
    assert not report.diagnostics["mean_flux_warning"]


def test_borromean_mu_magnitude(borromean_mu):
    report = borromean_mu(64)
    assert abs(abs(report.mu) - 1.0) <= 0.05
    assert np.sign(report.mu) == catalog.REGRESSION_MU_SIGN
    assert max(report.deg_residuals) <= 1e-6


def test_nonzero_linking_gate(hopf_entry):
    with pytest.raises(NonzeroLinking) as excinfo:
        milnor_mu(hopf_entry.link, 32)
    assert (excinfo.value.p, excinfo.value.q, excinfo.value.r) == (0, 0, -1)


def test_check_convergence_flag(unlink_entry):
    report = milnor_mu(unlink_entry.link, 32, check_convergence=True)
    assert report.converged is True
    assert report.mu_delta_half <= 1e-6


def test_bruteforce_oracle_agreement(borromean_entry, unlink_entry):
    for entry in (borromean_entry, unlink_entry):
        V = sample_VL(entry.link, 10)
        mu_fast = 0.5 * helicity(V)
        mu_brute = milnor_mu_bruteforce(entry.link, 10, 4)
        bound = 0.5 * helicity_truncation_bound(V, 4)
        assert abs(mu_fast - mu_brute) <= max(bound, 1e-9)
        assert abs(mu_fast - mu_brute) <= 1e-2


def test_richardson_consistency(borromean_mu):
    mu16, mu32, mu64 = (borromean_mu(n).mu for n in (16, 32, 64))
    assert abs(mu64 - mu32) <= abs(mu32 - mu16)


# ---------------------------------------------------------------------------
# symmetries of the computed invariant


def test_transposition_negates_mu(borromean_entry, borromean_mu):
    swapped = catalog.permute(borromean_entry, (0, 2, 1))
    assert abs(milnor_mu(swapped.link, 32).mu + borromean_mu(32).mu) <= 2e-3


def test_cyclic_permutation_preserves_mu(borromean_entry, borromean_mu):
    cycled = catalog.permute(borromean_entry, (1, 2, 0))
    assert abs(milnor_mu(cycled.link, 32).mu - borromean_mu(32).mu) <= 2e-3


def test_component_reversal_negates_mu(borromean_entry, borromean_mu):
    reversed_entry = catalog.reverse_component(borromean_entry, 1)
    assert abs(milnor_mu(reversed_entry.link, 32).mu + borromean_mu(32).mu) <= 1e-9


def test_mirror_preserves_mu(borromean_entry, borromean_mu):
    # The triple linking number of a link with vanishing pairwise linking is
    # EVEN under ambient reflection: the mirror image of the Borromean rings
    # is link-homotopic to the original (reflecting in a plane of the
    # standard realization reverses two components, and each reversal
    # negates the invariant).  Verified here bit-for-bit; see the honest
    # failure of the mirror clause in the acceptance suite.
    mirrored = catalog.mirror(borromean_entry)
    assert abs(milnor_mu(mirrored.link, 32).mu - borromean_mu(32).mu) <= 1e-9


def test_mirror_then_reversal_negates_mu(borromean_entry, borromean_mu):
    flipped = catalog.reverse_component(catalog.mirror(borromean_entry), 0)
    assert abs(milnor_mu(flipped.link, 32).mu + borromean_mu(32).mu) <= 1e-9


def test_component_reversal_flips_involved_degrees(hopf_entry):
    # reversing X flips lk(X, Y) and lk(X, Z), leaving lk(Y, Z) alone
    base, _ = pairwise_degrees(hopf_entry.link, 32)
    reversed_entry = catalog.reverse_component(hopf_entry, 0)
    flipped, _ = pairwise_degrees(reversed_entry.link, 32)
    assert flipped == (base[0], -base[1], -base[2])
    # and the Gauss oracle flips with it
    img_x = stereo_image(reversed_entry.link.X, ORACLE_POLE)
    img_y = stereo_image(reversed_entry.link.Y, ORACLE_POLE)
    assert int(np.rint(gauss_linking(img_x, img_y))) == -base[2] == 1
