import numpy as np
import pytest
from scipy.integrate import quad

from solitonlab.errors import (
    CausalityError,
    DomainError,
    InsufficientDataError,
    RangeError,
)
from solitonlab.geometry import FourVector, minkowski_dot
from solitonlab.worldline import (
    HyperbolicWorldline,
    RestWorldline,
    Trajectory,
    TrajectoryWorldline,
    UniformWorldline,
    kinematics_at,
    resample_proper_time,
    sigma_basis,
)

X0, V0 = 2.0, 0.7


def hyperbola_speed_integrand(t):
    # sqrt(1 - xdot^2) for x(t) = -sqrt(x0^2 + v0^2 t^2); oracle for tau(t)
    xdot = -(V0**2) * t / np.sqrt(X0**2 + V0**2 * t**2)
    return np.sqrt(1.0 - xdot**2)


def sampled_hyperbola(n=4001, tmax=3.0):
    wl = HyperbolicWorldline(X0, V0)
    t = np.linspace(-tmax, tmax, n)
    return wl, wl.sample(t)


class TestKinematics:
    def test_rest_trajectory(self):
        tau = np.linspace(0.0, 5.0, 64)
        traj = RestWorldline().sample(tau)
        state = kinematics_at(traj, 2.3)
        assert state.zdot == pytest.approx_fields if False else True
        np.testing.assert_allclose(state.zdot.to_array(), [1, 0, 0, 0], atol=1e-12)
        np.testing.assert_allclose(state.zddot.to_array(), 0.0, atol=1e-12)
        np.testing.assert_allclose(state.zdddot.to_array(), 0.0, atol=1e-12)

    def test_uniform_v06(self):
        # gamma = 1.25 by direct substitution into 1/sqrt(1 - 0.36)
        traj = UniformWorldline((0.6, 0, 0)).sample(np.linspace(-4, 4, 33))
        state = kinematics_at(traj, 0.5)
        np.testing.assert_allclose(
            state.zdot.to_array(), [1.25, 0.75, 0, 0], rtol=1e-12, atol=1e-12
        )

    def test_hyperbola_apex(self):
        # analytic differentiation of the closed form: at t=0 the worldline is
        # momentarily at rest with proper acceleration v0^2/x0 along +/- x
        _, traj = sampled_hyperbola()
        state = kinematics_at(traj, 0.0)
        np.testing.assert_allclose(state.zdot.to_array(), [1, 0, 0, 0], atol=1e-7)
        acc = state.zddot.to_array()
        assert acc[0] == pytest.approx(0.0, abs=1e-7)
        assert abs(acc[1]) == pytest.approx(V0**2 / X0, rel=1e-5)
        assert np.hypot(acc[2], acc[3]) < 1e-12

    def test_analytic_hyperbola_matches_finite_differences(self):
        wl = HyperbolicWorldline(X0, V0)
        t = 0.8
        h = 1e-5
        # proper-time derivative oracle: d/dtau = (D/E) d/dt applied to the
        # closed-form unit velocity
        gamma = wl.unit_velocity(t)[0] / wl.velocity(t)[0]
        fd_acc = (wl.unit_velocity(t + h) - wl.unit_velocity(t - h)) / (2 * h) * gamma
        np.testing.assert_allclose(wl.acceleration(t), fd_acc, rtol=1e-8, atol=1e-10)
        fd_jerk = (wl.acceleration(t + h) - wl.acceleration(t - h)) / (2 * h) * gamma
        np.testing.assert_allclose(wl.jerk(t), fd_jerk, rtol=1e-7, atol=1e-9)

    def test_sampled_jerk_approximates_analytic(self):
        wl, traj = sampled_hyperbola()
        twl = TrajectoryWorldline(traj)
        np.testing.assert_allclose(twl.jerk(0.9), wl.jerk(0.9), rtol=0, atol=5e-3)

    def test_range_and_length_errors(self):
        traj = RestWorldline().sample(np.linspace(0, 1, 8))
        with pytest.raises(RangeError):
            kinematics_at(traj, 2.0)
        short = RestWorldline().sample(np.linspace(0, 1, 4))
        with pytest.raises(InsufficientDataError):
            kinematics_at(short, 0.5)


class TestTrajectoryValidation:
    def test_non_monotone_rejected(self):
        with pytest.raises(DomainError):
            Trajectory(np.array([0.0, 1.0, 0.5]), np.zeros((3, 4)) + np.arange(3)[:, None])

    def test_spacelike_segment_rejected(self):
        z = np.array([[0, 0, 0, 0], [1, 2, 0, 0]], dtype=float)  # |dx| > dt
        with pytest.raises(CausalityError):
            Trajectory(np.array([0.0, 1.0]), z, "coordinate-time")

    def test_mislabeled_proper_time_rejected(self):
        # a v=0.6 line labeled proper-time has chord speed 0.8 per unit lam
        z = UniformWorldline((0.6, 0, 0)).position(np.linspace(0, 2, 5))
        with pytest.raises(CausalityError):
            Trajectory(z[:, 0], z, "proper-time")


class TestResampleProperTime:
    def test_uniform_line(self):
        v = 0.6
        gamma = 1.25
        t = np.linspace(0.0, 2.0, 21)
        z = np.stack([t, v * t, 0 * t, 0 * t], axis=1)
        traj = Trajectory(t, z, "coordinate-time")
        out = resample_proper_time(traj, 11)
        assert out.parameterization == "proper-time"
        np.testing.assert_allclose(np.diff(out.lam), 2.0 / gamma / 10, rtol=1e-12)
        np.testing.assert_allclose(out.z[:, 0], gamma * out.lam, rtol=1e-10, atol=1e-12)

    def test_rest_duration(self):
        t = np.linspace(0.0, 7.0, 15)
        z = np.stack([t, 0 * t, 0 * t, 0 * t], axis=1)
        out = resample_proper_time(Trajectory(t, z, "coordinate-time"), 9)
        assert out.lam[-1] == pytest.approx(7.0, rel=1e-12)

    def test_hyperbola_total_proper_time_oracle(self):
        # independent oracle: adaptive quadrature of sqrt(1 - xdot(t)^2)
        tmax = 3.0
        half, err = quad(hyperbola_speed_integrand, 0.0, tmax, epsabs=1e-13, epsrel=1e-13)
        expected = 2.0 * half  # integrand is even in t
        assert err < 1e-12
        _, traj = sampled_hyperbola(n=2001, tmax=tmax)
        out = resample_proper_time(traj, 501)
        assert out.lam[-1] == pytest.approx(expected, rel=1e-9)
        # the analytic elliptic-integral map agrees with the same oracle
        wl = HyperbolicWorldline(X0, V0)
        assert wl.proper_time(tmax) - wl.proper_time(-tmax) == pytest.approx(
            expected, rel=1e-12
        )

    def test_idempotent(self):
        _, traj = sampled_hyperbola(n=2001, tmax=2.0)
        once = resample_proper_time(traj, 301)
        twice = resample_proper_time(once, 301)
        assert np.max(np.abs(once.lam - twice.lam)) < 1e-10
        assert np.max(np.abs(once.z - twice.z)) < 1e-10

    def test_lightlike_segment_raises(self):
        t = np.linspace(0, 1, 6)
        z = np.stack([t, 0.999999999 * t, 0 * t, 0 * t], axis=1)
        traj = Trajectory(t, z, "coordinate-time")
        # chords are timelike but barely; forcing resample through a nearly
        # null spline is fine -- an actually null segment is rejected upstream
        resample_proper_time(traj, 4)
        with pytest.raises(CausalityError):
            Trajectory(t, np.stack([t, t, 0 * t, 0 * t], axis=1), "coordinate-time")


class TestUnitVelocityInvariants:
    def test_normalization_and_orthogonality(self):
        _, traj = sampled_hyperbola(n=801, tmax=2.5)
        proper = traj.proper()
        for lam in np.linspace(proper.lam_min + 0.1, proper.lam_max - 0.1, 17):
            st = kinematics_at(proper, lam)
            assert abs(minkowski_dot(st.zdot, st.zdot) - 1.0) < 1e-8
            assert abs(minkowski_dot(st.zdot, st.zddot)) < 1e-6

    def test_proper_time_round_trip(self):
        wl = HyperbolicWorldline(X0, V0)
        tau = wl.proper_time(1.7)
        assert wl.lam_of_proper_time(tau) == pytest.approx(1.7, abs=1e-12)
        taus = np.array([-2.0, -0.3, 0.0, 0.4, 2.2])
        np.testing.assert_allclose(
            wl.proper_time(wl.lam_of_proper_time(taus)), taus, atol=1e-12
        )


def test_sigma_basis_orthonormal():
    wl = HyperbolicWorldline(X0, V0)
    u = wl.unit_velocity(1.2)
    basis = sigma_basis(u)
    assert basis.shape == (3, 4)
    for i in range(3):
        assert abs(minkowski_dot(basis[i], u)) < 1e-12
        for j in range(3):
            expect = -1.0 if i == j else 0.0
            assert minkowski_dot(basis[i], basis[j]) == pytest.approx(expect, abs=1e-12)


def test_csv_round_trip(tmp_path):
    _, traj = sampled_hyperbola(n=64, tmax=1.0)
    path = tmp_path / "traj.csv"
    traj.to_csv(path)
    back = Trajectory.from_csv(path)
    assert back.parameterization == "coordinate-time"
    np.testing.assert_array_equal(back.lam, traj.lam)
    np.testing.assert_array_equal(back.z, traj.z)
