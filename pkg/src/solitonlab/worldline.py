"""Worldlines: sampled trajectories, proper-time machinery, analytic motions.

A worldline is a timelike curve z(lam) addressed by a strictly monotone
parameter ``lam`` (proper time tau, coordinate time t, or a foliation leaf
label).  Proper-time kinematics are defined through the unit four-velocity

    zdot   = z' / sqrt(z'.z')          (renormalized after differentiation)
    zddot  = d zdot / dtau = a/n - z' (z'.a)/n^2,   n = z'.z'
    zdddot = d zddot / dtau

which keeps zdot.zdot = 1 and zdot.zddot = 0 exact by construction even when
z(lam) is an interpolant.  Sampled trajectories are interpolated with cubic
splines on (resampled) proper time; the third derivative uses a central
difference of the interpolated zddot.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator
from scipy.special import ellipeinc, ellipkinc

from .errors import (
    CausalityError,
    DomainError,
    InsufficientDataError,
    RangeError,
)
from .geometry import FourVector, as_four_array, minkowski_dot

__all__ = [
    "Trajectory",
    "KinematicState",
    "kinematics_at",
    "resample_proper_time",
    "Worldline",
    "RestWorldline",
    "UniformWorldline",
    "HyperbolicWorldline",
    "TrajectoryWorldline",
    "sigma_basis",
]

PROPER_TIME = "proper-time"
COORDINATE_TIME = "coordinate-time"

# chord-based unit-speed guard for trajectories declared proper-time
_PROPER_CHORD_TOL = 5e-2

# 10-point Gauss-Legendre nodes/weights on [-1, 1] for per-interval quadrature
_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)


class KinematicState(NamedTuple):
    """Position and proper-time derivatives at a point of a worldline."""

    z: FourVector
    zdot: FourVector
    zddot: FourVector
    zdddot: FourVector


@dataclass
class Trajectory:
    """Ordered samples (lam_i, z_i) of a timelike worldline.

    Treat instances as immutable; derived interpolants are cached internally.
    """

    lam: np.ndarray
    z: np.ndarray
    parameterization: str = PROPER_TIME
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.lam = np.asarray(self.lam, dtype=float)
        self.z = np.asarray(self.z, dtype=float)
        if self.lam.ndim != 1 or self.lam.size < 2:
            raise InsufficientDataError("trajectory needs at least 2 samples")
        if self.z.shape != (self.lam.size, 4):
            raise DomainError(f"z must have shape (n, 4), got {self.z.shape}")
        if self.parameterization not in (PROPER_TIME, COORDINATE_TIME):
            raise DomainError(f"unknown parameterization {self.parameterization!r}")
        dlam = np.diff(self.lam)
        if np.any(dlam <= 0):
            raise DomainError("lam must be strictly increasing")
        dz = np.diff(self.z, axis=0)
        ds2 = minkowski_dot(dz, dz)
        if np.any(ds2 <= 0):
            raise CausalityError("consecutive samples are not timelike-separated")
        if self.parameterization == PROPER_TIME:
            ratio = ds2 / dlam**2
            if np.any(np.abs(ratio - 1.0) > _PROPER_CHORD_TOL):
                raise CausalityError(
                    "samples declared proper-time but chord speed deviates from 1 "
                    f"by up to {np.max(np.abs(ratio - 1.0)):.3g}"
                )

    def __len__(self):
        return self.lam.size

    @property
    def lam_min(self) -> float:
        return float(self.lam[0])

    @property
    def lam_max(self) -> float:
        return float(self.lam[-1])

    @classmethod
    def from_events(cls, events, parameterization=PROPER_TIME) -> "Trajectory":
        """Build from an ordered iterable of (lam, FourVector) pairs."""
        lam = np.array([lv for lv, _ in events], dtype=float)
        z = np.array([as_four_array(zv) for _, zv in events])
        return cls(lam, z, parameterization)

    # -- CSV interchange (header: lambda,t,x,y,z) ---------------------------

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# parameterization={self.parameterization}\n")
            fh.write("lambda,t,x,y,z\n")
            for lv, zv in zip(self.lam, self.z):
                row = [float(lv), *(float(c) for c in zv)]
                fh.write(",".join(repr(c) for c in row) + "\n")

    @classmethod
    def from_csv(cls, path, parameterization=None) -> "Trajectory":
        parm = parameterization
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    if "parameterization=" in line and parm is None:
                        parm = line.split("parameterization=")[1].strip()
                    continue
                if line.lower().startswith("lambda"):
                    continue
                rows.append([float(v) for v in line.split(",")])
        data = np.asarray(rows)
        if data.ndim != 2 or data.shape[1] != 5:
            raise DomainError("trajectory CSV must have columns lambda,t,x,y,z")
        return cls(data[:, 0], data[:, 1:], parm or PROPER_TIME)

    # -- cached derived objects --------------------------------------------

    def spline(self) -> CubicSpline:
        if "spline" not in self._cache:
            self._cache["spline"] = CubicSpline(self.lam, self.z, axis=0)
        return self._cache["spline"]

    def proper(self) -> "Trajectory":
        """This trajectory in proper-time parameterization (cached)."""
        if self.parameterization == PROPER_TIME:
            return self
        if "proper" not in self._cache:
            self._cache["proper"] = resample_proper_time(self, len(self))
        return self._cache["proper"]


class _ProperTimeMap:
    """Monotone map tau(lam) for a spline worldline, with accurate inverse.

    Cumulative proper time is accumulated with 10-point Gauss-Legendre
    quadrature on a refined sub-grid of the spline intervals; the inverse is
    a PCHIP seed polished by Newton iterations on the quadrature itself.
    """

    def __init__(self, spline: CubicSpline, lam: np.ndarray, refine: int = 8):
        self._spline = spline
        self._dspline = spline.derivative()
        sub = np.linspace(lam[:-1], lam[1:], refine + 1, axis=1)[:, :-1].ravel()
        self._knots = np.append(sub, lam[-1])
        mids = 0.5 * (self._knots[:-1] + self._knots[1:])
        half = 0.5 * np.diff(self._knots)
        nodes = mids[:, None] + half[:, None] * _GL_X[None, :]
        speeds = self._speed(nodes.ravel()).reshape(nodes.shape)
        seg = half * (speeds @ _GL_W)
        self._tau_knots = np.concatenate([[0.0], np.cumsum(seg)])
        self._inverse = PchipInterpolator(self._tau_knots, self._knots)

    def _speed(self, lam):
        v = self._dspline(lam)
        n2 = minkowski_dot(v, v)
        if np.any(n2 <= 0):
            raise CausalityError("worldline segment is lightlike or spacelike")
        return np.sqrt(n2)

    @property
    def total(self) -> float:
        return float(self._tau_knots[-1])

    def tau_of_lam(self, lam):
        lam = np.asarray(lam, dtype=float)
        idx = np.clip(np.searchsorted(self._knots, lam) - 1, 0, len(self._knots) - 2)
        a = self._knots[idx]
        mid = 0.5 * (a + lam)
        half = 0.5 * (lam - a)
        nodes = mid[..., None] + half[..., None] * _GL_X
        speeds = self._speed(nodes.reshape(-1)).reshape(nodes.shape)
        return self._tau_knots[idx] + half * (speeds @ _GL_W)

    def lam_of_tau(self, tau):
        tau = np.asarray(tau, dtype=float)
        lam = np.asarray(self._inverse(np.clip(tau, 0.0, self.total)), dtype=float)
        for _ in range(3):  # Newton polish on the quadrature map
            lam = lam - (self.tau_of_lam(lam) - tau) / self._speed(lam)
            lam = np.clip(lam, self._knots[0], self._knots[-1])
        return lam


def _traj_map(traj: Trajectory) -> _ProperTimeMap:
    if "ptmap" not in traj._cache:
        traj._cache["ptmap"] = _ProperTimeMap(traj.spline(), traj.lam)
    return traj._cache["ptmap"]


def resample_proper_time(traj: Trajectory, n: int) -> Trajectory:
    """Resample onto n uniform proper-time samples spanning the whole curve.

    Total proper time is preserved to quadrature accuracy; endpoints are
    pinned exactly.
    """
    if n < 2:
        raise DomainError("need at least 2 output samples")
    ptmap = _traj_map(traj)
    tau = np.linspace(0.0, ptmap.total, n)
    lam = ptmap.lam_of_tau(tau)
    lam[0], lam[-1] = traj.lam[0], traj.lam[-1]
    z = traj.spline()(lam)
    return Trajectory(tau, z, PROPER_TIME)


def _unit_kinematics(dspline, lam):
    """(zdot, zddot, speed) from a derivative spline at parameter lam."""
    lam = np.asarray(lam, dtype=float)
    v = dspline(lam)
    a = dspline(lam, 1)
    n2 = minkowski_dot(v, v)
    if np.any(n2 <= 0):
        raise CausalityError("velocity is not timelike at the requested point")
    n2e = n2[..., None] if np.ndim(n2) else n2
    va = minkowski_dot(v, a)
    vae = va[..., None] if np.ndim(va) else va
    zdot = v / np.sqrt(n2e)
    zddot = a / n2e - v * vae / n2e**2
    return zdot, zddot, np.sqrt(n2)


def kinematics_at(traj: Trajectory, lam: float) -> KinematicState:
    """Position and proper-time derivatives (zdot, zddot, zdddot) at lam.

    For non-proper parameterizations the trajectory is first resampled onto
    uniform proper time and ``lam`` is interpreted in the original parameter.
    """
    if len(traj) < 5:
        raise InsufficientDataError(
            "third derivative needs at least 5 samples, got %d" % len(traj)
        )
    if not (traj.lam_min <= lam <= traj.lam_max):
        raise RangeError(
            f"lam={lam} outside sampled range [{traj.lam_min}, {traj.lam_max}]"
        )
    if traj.parameterization != PROPER_TIME:
        tau = float(_traj_map(traj).tau_of_lam(lam))
        return kinematics_at(traj.proper(), tau)

    sp = traj.spline()
    dsp = sp.derivative()
    z = sp(lam)
    zdot, zddot, speed = _unit_kinematics(dsp, lam)

    # jerk: central difference of the interpolated zddot, step ~ knot spacing
    i = min(max(int(np.searchsorted(traj.lam, lam)) - 1, 0), len(traj) - 2)
    h = traj.lam[i + 1] - traj.lam[i]
    la = max(traj.lam_min, lam - h)
    lb = min(traj.lam_max, lam + h)
    _, zdd_a, _ = _unit_kinematics(dsp, la)
    _, zdd_b, _ = _unit_kinematics(dsp, lb)
    zdddot = (zdd_b - zdd_a) / ((lb - la) * speed)

    return KinematicState(
        FourVector.from_array(z),
        FourVector.from_array(zdot),
        FourVector.from_array(zddot),
        FourVector.from_array(zdddot),
    )


# ---------------------------------------------------------------------------
# Worldline interface: analytic motions and the sampled-trajectory wrapper
# ---------------------------------------------------------------------------


class Worldline:
    """Timelike worldline addressed by a monotone parameter lam.

    Subclasses provide positions and exact (or interpolated) proper-time
    kinematics; field evaluators only consume this interface, so analytic and
    sampled worldlines are interchangeable.
    """

    lam_min: float = -np.inf
    lam_max: float = np.inf
    natural_parameterization: str = PROPER_TIME

    def position(self, lam) -> np.ndarray:
        raise NotImplementedError

    def velocity(self, lam) -> np.ndarray:
        """dz/dlam."""
        raise NotImplementedError

    def unit_velocity(self, lam) -> np.ndarray:
        v = self.velocity(lam)
        n2 = minkowski_dot(v, v)
        return v / np.sqrt(n2[..., None] if np.ndim(n2) else n2)

    def acceleration(self, lam) -> np.ndarray:
        """d^2 z / dtau^2."""
        raise NotImplementedError

    def jerk(self, lam) -> np.ndarray:
        """d^3 z / dtau^3."""
        raise NotImplementedError

    def proper_time(self, lam):
        """tau(lam), zero at the reference parameter."""
        raise NotImplementedError

    def lam_of_proper_time(self, tau):
        raise NotImplementedError

    def kinematics(self, lam) -> KinematicState:
        return KinematicState(
            FourVector.from_array(self.position(lam)),
            FourVector.from_array(self.unit_velocity(lam)),
            FourVector.from_array(self.acceleration(lam)),
            FourVector.from_array(self.jerk(lam)),
        )

    def sample(self, lam_values) -> Trajectory:
        lam_values = np.asarray(lam_values, dtype=float)
        return Trajectory(
            lam_values, self.position(lam_values), self.natural_parameterization
        )


class UniformWorldline(Worldline):
    """Inertial worldline with constant three-velocity, parameterized by tau."""

    natural_parameterization = PROPER_TIME

    def __init__(self, velocity=(0.0, 0.0, 0.0), origin: FourVector = FourVector()):
        v = np.asarray(velocity, dtype=float)
        if v.shape != (3,):
            raise DomainError("velocity must be a 3-vector")
        beta2 = float(v @ v)
        if beta2 >= 1.0:
            raise CausalityError(f"|v| = {np.sqrt(beta2):.4g} >= 1 is superluminal")
        self.three_velocity = v
        self.gamma = 1.0 / np.sqrt(1.0 - beta2)
        self.origin = origin
        self._u = self.gamma * np.array([1.0, *v])

    def position(self, lam):
        lam = np.asarray(lam, dtype=float)
        return self.origin.to_array() + lam[..., None] * self._u

    def velocity(self, lam):
        lam = np.asarray(lam, dtype=float)
        return np.broadcast_to(self._u, lam.shape + (4,)).copy()

    def unit_velocity(self, lam):
        return self.velocity(lam)

    def acceleration(self, lam):
        lam = np.asarray(lam, dtype=float)
        return np.zeros(lam.shape + (4,))

    jerk = acceleration

    def proper_time(self, lam):
        return np.asarray(lam, dtype=float)

    def lam_of_proper_time(self, tau):
        return np.asarray(tau, dtype=float)


class RestWorldline(UniformWorldline):
    """Worldline at rest at a fixed spatial point."""

    def __init__(self, origin: FourVector = FourVector()):
        super().__init__((0.0, 0.0, 0.0), origin)


class HyperbolicWorldline(Worldline):
    """Hyperbola x(t) = -sqrt(x0^2 + v0^2 t^2) in the t-x plane.

    Asymptotic speed v0 < 1; instantaneously at rest at t = 0.  The natural
    parameter is coordinate time t; tau(t) is the closed-form incomplete
    elliptic integral

        tau(t) = (x0/v0) [ v0 t E(t)/(x0 D(t)) - E(phi|m) + F(phi|m) ],

    with D^2 = x0^2 + v0^2 t^2, E^2 = x0^2 + v0^2 (1 - v0^2) t^2,
    phi = arctan(v0 t / x0) and m = v0^2.
    """

    natural_parameterization = COORDINATE_TIME

    def __init__(self, x0: float, v0: float):
        if x0 <= 0:
            raise DomainError("x0 must be positive")
        if not (0.0 < v0 < 1.0):
            raise CausalityError("asymptotic speed v0 must lie in (0, 1)")
        self.x0 = float(x0)
        self.v0 = float(v0)
        self._c2 = v0**2 * (1.0 - v0**2)

    def _DE(self, t):
        D = np.sqrt(self.x0**2 + self.v0**2 * t**2)
        E = np.sqrt(self.x0**2 + self._c2 * t**2)
        return D, E

    def position(self, lam):
        t = np.asarray(lam, dtype=float)
        out = np.zeros(t.shape + (4,))
        out[..., 0] = t
        out[..., 1] = -np.sqrt(self.x0**2 + self.v0**2 * t**2)
        return out

    def velocity(self, lam):
        t = np.asarray(lam, dtype=float)
        D, _ = self._DE(t)
        out = np.zeros(t.shape + (4,))
        out[..., 0] = 1.0
        out[..., 1] = -self.v0**2 * t / D
        return out

    def unit_velocity(self, lam):
        t = np.asarray(lam, dtype=float)
        D, E = self._DE(t)
        out = np.zeros(t.shape + (4,))
        out[..., 0] = D / E
        out[..., 1] = -self.v0**2 * t / E
        return out

    def acceleration(self, lam):
        t = np.asarray(lam, dtype=float)
        D, E = self._DE(t)
        out = np.zeros(t.shape + (4,))
        out[..., 0] = self.x0**2 * self.v0**4 * t / E**4
        out[..., 1] = -self.v0**2 * self.x0**2 * D / E**4
        return out

    def jerk(self, lam):
        t = np.asarray(lam, dtype=float)
        D, E = self._DE(t)
        out = np.zeros(t.shape + (4,))
        out[..., 0] = self.x0**2 * self.v0**4 * D * (E**2 - 4 * self._c2 * t**2) / E**7
        out[..., 1] = (
            -self.v0**2
            * self.x0**2
            * t
            * (self.v0**2 * E**2 - 4 * self._c2 * D**2)
            / E**7
        )
        return out

    def proper_time(self, lam):
        t = np.asarray(lam, dtype=float)
        ta = np.abs(t)
        D, E = self._DE(ta)
        phi = np.arctan(self.v0 * ta / self.x0)
        m = self.v0**2
        tau = (self.x0 / self.v0) * (
            self.v0 * ta * E / (self.x0 * D) - ellipeinc(phi, m) + ellipkinc(phi, m)
        )
        return np.sign(t) * tau

    def lam_of_proper_time(self, tau):
        tau = np.asarray(tau, dtype=float)
        slope = np.sqrt(1.0 - self.v0**2)  # asymptotic dtau/dt
        hi = np.abs(tau) / slope + self.x0 / self.v0
        lo = np.zeros_like(hi)
        target = np.abs(tau)
        for _ in range(64):  # bisection: tau(t) monotone on t >= 0
            mid = 0.5 * (lo + hi)
            above = self.proper_time(mid) > target
            hi = np.where(above, mid, hi)
            lo = np.where(above, lo, mid)
        t = 0.5 * (lo + hi)
        D, E = self._DE(t)
        for _ in range(3):  # Newton polish, dtau/dt = E/D
            t = t - (self.proper_time(t) - target) * D / E
            D, E = self._DE(t)
        return np.sign(tau) * t


class TrajectoryWorldline(Worldline):
    """Spline view of a sampled :class:`Trajectory` as a Worldline."""

    def __init__(self, traj: Trajectory):
        self.trajectory = traj
        self.lam_min = traj.lam_min
        self.lam_max = traj.lam_max
        self.natural_parameterization = traj.parameterization
        self._sp = traj.spline()
        self._dsp = self._sp.derivative()
        self._h = float(np.min(np.diff(traj.lam)))

    def position(self, lam):
        return self._sp(lam)

    def velocity(self, lam):
        return self._dsp(lam)

    def unit_velocity(self, lam):
        zdot, _, _ = _unit_kinematics(self._dsp, lam)
        return zdot

    def acceleration(self, lam):
        _, zddot, _ = _unit_kinematics(self._dsp, lam)
        return zddot

    def jerk(self, lam):
        lam = np.asarray(lam, dtype=float)
        la = np.maximum(self.lam_min, lam - self._h)
        lb = np.minimum(self.lam_max, lam + self._h)
        _, zdd_a, _ = _unit_kinematics(self._dsp, la)
        _, zdd_b, speed = _unit_kinematics(self._dsp, lam)
        _, zdd_c, _ = _unit_kinematics(self._dsp, lb)
        span = (lb - la)[..., None] if np.ndim(lam) else lb - la
        spd = speed[..., None] if np.ndim(lam) else speed
        return (zdd_c - zdd_a) / (span * spd)

    def proper_time(self, lam):
        if self.trajectory.parameterization == PROPER_TIME:
            return np.asarray(lam, dtype=float) - self.trajectory.lam_min
        return _traj_map(self.trajectory).tau_of_lam(lam)

    def lam_of_proper_time(self, tau):
        if self.trajectory.parameterization == PROPER_TIME:
            return np.asarray(tau, dtype=float) + self.trajectory.lam_min
        return _traj_map(self.trajectory).lam_of_tau(tau)


def sigma_basis(zdot) -> np.ndarray:
    """Orthonormal spacelike triad spanning the hyperplane normal to zdot.

    Returns shape (3, 4); each row e satisfies e.zdot = 0 and e.e = -1.
    Built by Minkowski Gram-Schmidt from the coordinate axes, so the result
    is deterministic
    """
    u = as_four_array(zdot)
    basis = []
    for k in (1, 2, 3, 0):
        c = np.zeros(4)
        c[k] = 1.0
        w = c - minkowski_dot(c, u) * u
        for e in basis:
            w = w + minkowski_dot(w, e) * e  # e.e = -1
        n2 = -minkowski_dot(w, w)
        if n2 > 1e-20:
            basis.append(w / np.sqrt(n2))
        if len(basis) == 3:
            break
    return np.array(basis)
