"""Minkowski geometry primitives and shared parameter records.

Conventions used throughout the package:

* metric signature (+, -, -, -), natural units (c = hbar = 1);
* four-vectors are ``[t, x, y, z]``; bulk code works on ndarrays whose last
  axis has length 4, the :class:`FourVector` dataclass is the scalar view;
* the soliton profile is parameterized by a charge ``g``, a core radius
  ``r0`` and a rest mass ``omega0``, with the point-particle regime
  ``omega0 * r0 << 1`` assumed by the far-field formulas.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RegimeWarning

__all__ = [
    "FourVector",
    "SolitonParams",
    "ExternalPotential",
    "minkowski_dot",
    "minkowski_norm_sq",
    "as_four_array",
]

#: diag(+1, -1, -1, -1) as a sign row for fast contractions
_METRIC_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])

#: omega0 * r0 above this triggers a RegimeWarning (small-core assumption)
SMALL_CORE_LIMIT = 0.1


@dataclass(frozen=True)
class FourVector:
    """Spacetime point or vector with components (t, x, y, z)."""

    t: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def to_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, a) -> "FourVector":
        a = np.asarray(a, dtype=float)
        if a.shape != (4,):
            raise DomainError(f"expected 4 components, got shape {a.shape}")
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "FourVector") -> float:
        """Minkowski inner product with signature (+,-,-,-)."""
        return float(
            self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
        )

    def norm_sq(self) -> float:
        return self.dot(self)

    def __add__(self, other):
        return FourVector(
            self.t + other.t, self.x + other.x, self.y + other.y, self.z + other.z
        )

    def __sub__(self, other):
        return FourVector(
            self.t - other.t, self.x - other.x, self.y - other.y, self.z - other.z
        )

    def __mul__(self, c):
        c = float(c)
        return FourVector(self.t * c, self.x * c, self.y * c, self.z * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


def as_four_array(v) -> np.ndarray:
    """Coerce a FourVector or array-like to an ndarray with last axis 4."""
    if isinstance(v, FourVector):
        return v.to_array()
    a = np.asarray(v, dtype=float)
    if a.shape == () or a.shape[-1] != 4:
        raise DomainError(f"expected last axis of length 4, got shape {a.shape}")
    return a


def minkowski_dot(a, b):
    """a . b = a^t b^t - a_vec . b_vec, broadcasting over leading axes.

    Accepts :class:`FourVector` or arrays with last axis 4; returns a float
    for two scalar vectors, an ndarray otherwise.
    """
    aa = as_four_array(a)
    bb = as_four_array(b)
    out = np.sum(aa * bb * _METRIC_SIGNS, axis=-1)
    if out.ndim == 0:
        return float(out)
    return out


def minkowski_norm_sq(a):
    """a . a with the (+,-,-,-) signature."""
    return minkowski_dot(a, a)


@dataclass(frozen=True)
class SolitonParams:
    """Soliton parameters: charge g, core radius r0, rest mass omega0, electric coupling e."""

    g: float
    r0: float
    omega0: float
    e: float = 0.0

    def __post_init__(self):
        if self.r0 <= 0:
            raise DomainError(f"core radius r0 must be positive, got {self.r0}")
        if self.omega0 < 0:
            raise DomainError(f"rest mass omega0 must be >= 0, got {self.omega0}")
        if self.omega0 * self.r0 > SMALL_CORE_LIMIT:
            warnings.warn(
                f"omega0*r0 = {self.omega0 * self.r0:.3g} > {SMALL_CORE_LIMIT}: "
                "core is not small against the Compton wavelength; far-field "
                "formulas degrade",
                RegimeWarning,
                stacklevel=2,
            )

    @property
    def compton_wavelength(self) -> float:
        """lambda0 = 2 pi / omega0."""
        if self.omega0 == 0:
            return np.inf
        return 2.0 * np.pi / self.omega0

    @property
    def static_energy(self) -> float:
        """Closed-form quasi-static energy g^2 / (32 r0)."""
        return self.g**2 / (32.0 * self.r0)


@dataclass(frozen=True)
class ExternalPotential:
    """External electromagnetic four-potential A = [V, A_vec].

    Only the gauge-trivial kinds are supported: identically zero, or a
    constant four-vector.  Both have vanishing field tensor F^{mu nu}.
    """

    value: FourVector = FourVector()

    @classmethod
    def zero(cls) -> "ExternalPotential":
        return cls(FourVector())

    @classmethod
    def constant(cls, value: FourVector) -> "ExternalPotential":
        return cls(value)

    @property
    def is_zero(self) -> bool:
        return self.value == FourVector()

    def at(self, x) -> np.ndarray:
        """A(x); broadcasts to the shape of x (constant by construction)."""
        xa = as_four_array(x)
        return np.broadcast_to(self.value.to_array(), xa.shape).copy()

    def field_tensor(self, x=None) -> np.ndarray:
        """F^{mu nu} = d^mu A^nu - d^nu A^mu; identically zero here."""
        return np.zeros((4, 4))
