import json
import math

import numpy as np
import pytest

from kirchhoff import (
    PowerNonlinearity, check_pohozaev_scalar, gradient_norm_sq, integrate_profile, shoot_state,
)
from kirchhoff import shooting
from kirchhoff.errors import IntegrationBlowup, ModelRejected, NoBracket, ShootingFailed
from kirchhoff.shooting import count_sign_changes, read_profile_csv

import oracles

CUBIC = PowerNonlinearity(1.0, 3.0)
# fixed-step RK4 (h = 1e-4) bisection to 1e-10, see oracles.rk4_shooting_xi
XI_GROUND_N3 = 4.337387679917695
XI_ONE_NODE_N3 = 14.103584405184588

MATRIX = [
    (N, m, p)
    for N in (3, 4, 5, 6)
    for (m, p) in ((1.0, 3.0), (1.0, 2.0), (2.0, 2.5))
    if p < (N + 2) / (N - 2)
]


def test_zeta0_undershoots():
    traj, cls = integrate_profile(CUBIC, 3, math.sqrt(2.0), tol=1e-12)
    assert cls.kind == "UNDERSHOOT"
    assert np.all(traj.v > 0)


def test_large_xi_crosses_zero():
    _, cls = integrate_profile(CUBIC, 3, 10.0)
    assert cls.kind == "CROSSES_ZERO"
    assert 0 < cls.r_cross < cls.r
    # independent fixed-step RK4 agrees
    assert oracles.rk4_classify(3, 1.0, 3.0, 10.0, 0, 1e-3, 40.0) == 1


def test_xi_above_ground_state_overshoots():
    # 4.3374 lies above the converged 4.33738768..., so the shot crosses zero
    _, cls = integrate_profile(CUBIC, 3, 4.3374, r_max=20.0)
    assert cls.kind == "CROSSES_ZERO"


def test_converged_lower_bracket_decays(ground3):
    traj, cls = integrate_profile(CUBIC, 3, ground3.bracket[0], r_max=20.0, tol=ground3.tol)
    assert cls.kind == "DECAYS"
    assert cls.r < 20.0
    assert abs(traj.v[-1]) < 1e-8 * ground3.xi


def test_inconclusive_at_short_radius():
    _, cls = integrate_profile(CUBIC, 3, 4.3373876, r_max=1.0)
    assert cls.kind == "INCONCLUSIVE"


@pytest.mark.parametrize("xi", [math.sqrt(2.0), 3.0, 4.3373, 4.34, 10.0, 30.0])
def test_energy_nonincreasing(xi):
    traj, _ = integrate_profile(CUBIC, 3, xi, tol=1e-11)
    E = traj.energy(CUBIC)
    scale = max(1.0, abs(E[0]))
    assert np.all(np.diff(E) <= 1e-9 * scale)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        integrate_profile(CUBIC, 3, -1.0)
    with pytest.raises(ModelRejected):
        shoot_state(PowerNonlinearity(1.0, 5.0), 3)


def test_blowup_is_reported(monkeypatch):
    def fake(*args):
        return 4, 1.25, math.nan, math.nan, 0, math.nan, 0, None

    monkeypatch.setattr(shooting.kernels, "integrate_radial", fake)
    with pytest.raises(IntegrationBlowup) as info:
        integrate_profile(CUBIC, 3, 4.0)
    assert info.value.r_last == 1.25


def test_no_bracket(monkeypatch):
    monkeypatch.setattr(shooting, "MAX_DOUBLINGS", 0)
    with pytest.raises(NoBracket):
        shoot_state(CUBIC, 3)


def test_wrong_node_count(monkeypatch):
    monkeypatch.setattr(shooting, "count_sign_changes", lambda v: 7)
    with pytest.raises(ShootingFailed):
        shoot_state(CUBIC, 3)


def test_ground_state_matches_rk4_oracle(ground3):
    assert abs(ground3.xi - XI_GROUND_N3) < 1e-3
    # the two methods agree far beyond the required tolerance
    assert abs(ground3.xi - XI_GROUND_N3) < 1e-8


def test_one_node_state_matches_rk4_oracle(state, ground3):
    one = state(3, 1.0, 3.0, 1)
    assert one.nodes == 1
    assert one.xi > ground3.xi
    assert abs(one.xi - XI_ONE_NODE_N3) < 1e-6


def test_ground_state_positive_and_decreasing(ground3):
    v = ground3.values
    assert np.all(v > 0)
    assert np.all(np.diff(v) < 0)
    assert ground3.nodes == 0
    assert ground3.derivatives[0] == 0.0


def test_profile_invariants(ground3):
    assert abs(ground3.values[-1]) < 1e-8 * ground3.xi
    assert ground3.K > 0 and ground3.xi > 0
    assert count_sign_changes(ground3.values) == ground3.nodes
    assert np.all(np.diff(ground3.grid) > 0)


def test_node_ordering(state):
    states = [state(3, 1.0, 3.0, k) for k in (0, 1, 2)]
    xis = [s.xi for s in states]
    Ks = [s.K for s in states]
    assert [s.nodes for s in states] == [0, 1, 2]
    assert xis == sorted(xis) and len(set(xis)) == 3
    assert Ks == sorted(Ks) and len(set(Ks)) == 3


@pytest.mark.parametrize("N, m, p", MATRIX)
def test_pohozaev_matrix(state, N, m, p):
    profile = state(N, m, p)
    assert profile.nodes == 0
    assert check_pohozaev_scalar(profile) < 1e-6


def test_pohozaev_restatement_n3(ground3):
    assert ground3.K == pytest.approx(6.0 * ground3.GInt, rel=1e-6)
    assert gradient_norm_sq(ground3) == ground3.K


def test_grid_refinement_changes_K_little(ground3):
    fine = ground3.refined(2 * len(ground3.grid) - 2)
    assert abs(fine.K - ground3.K) / ground3.K < 1e-4


def test_halving_tolerance_is_stable():
    tol = 1e-10
    coarse = shoot_state(CUBIC, 3, tol=tol)
    fine = shoot_state(CUBIC, 3, tol=tol / 2)
    assert abs(fine.xi - coarse.xi) / coarse.xi < 10 * tol
    assert abs(fine.K - coarse.K) / coarse.K < 1e-4


def test_truncation_increases_pohozaev_residual(ground3):
    radii = [8.0, 6.0, 4.0, 3.0, 2.0]
    res = [check_pohozaev_scalar(ground3.truncated(R)) for R in radii]
    assert check_pohozaev_scalar(ground3) < res[0]
    assert all(x < y for x, y in zip(res, res[1:]))


def test_rescaled_values_are_not_a_solution(ground3):
    doubled = ground3.with_values(2.0 * ground3.values, 2.0 * ground3.derivatives)
    assert check_pohozaev_scalar(doubled) > 0.1


def test_sample_reproduces_grid_values(ground3):
    v, dv = ground3.sample(ground3.grid[:1000])
    np.testing.assert_allclose(v, ground3.values[:1000], rtol=1e-12)


def test_csv_and_sidecar(tmp_path, ground3):
    path = tmp_path / "profile.csv"
    ground3.to_csv(path)
    assert path.read_text().splitlines()[0] == "r,v,dv"
    r, v, dv = read_profile_csv(path)
    np.testing.assert_array_equal(r, ground3.grid)
    np.testing.assert_array_equal(v, ground3.values)
    np.testing.assert_array_equal(dv, ground3.derivatives)
    side = json.loads(json.dumps(ground3.sidecar()))
    assert set(side) == {"N", "m", "p", "xi", "nodes", "K", "GInt", "pohozaev_residual"}


def test_python_backend_gives_same_state(monkeypatch, ground3):
    monkeypatch.setattr(shooting.kernels, "integrate_radial",
                        shooting.kernels.python_integrate_radial)
    slow = shoot_state(CUBIC, 3, n_grid=512)
    assert slow.xi == pytest.approx(ground3.xi, rel=1e-13)
