"""Closed-form quintic (Lane-Emden) soliton profile and its integrals.

The self-interaction is the power-law family

    U(y) = -gamma y^(p+1) / (p+1),      N(y) = dU/dy = -gamma y^p,

with p = 2 and gamma = 3 r0^2 / (g/4pi)^4 giving the closed-form radial
soliton

    F(r) = (g/4pi) / sqrt(r^2 + r0^2),

whose central value is g/(4 pi r0) and whose tail is the monopole (g/4pi)/r.
The profile carries a charge -int N(f^2) f d^3x = g and a quasi-static energy
E_s = g^2/(32 r0), both reproduced here by adaptive quadrature with analytic
tail corrections (the integrands fall off as 1/r^5 and 1/r^6).  A dilation
F -> sqrt(alpha) F(alpha r) maps solitons to solitons with r0 -> r0/alpha and
g -> g/sqrt(alpha), leaving E_s and r0^2/g^4 invariant; `derrick_scan`
exercises the constrained stretching beta = alpha^(1/p) behind that
invariance (metastability at p = 2) next to the classical unconstrained
variant (instability, d2E/dalpha2 = -6 I_p).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad

from .errors import AccuracyError, DomainError, RegimeWarning
from .geometry import SolitonParams

__all__ = [
    "Nonlinearity",
    "LaneEmdenProfile",
    "DerrickScan",
    "dilate",
    "charge_integral",
    "static_energy",
    "derrick_scan",
    "interpolated_far_profile",
    "g_equation_residual",
]

#: default truncation radius for radial quadratures, in units of r0
QUAD_RMAX_FACTOR = 1e3


@dataclass(frozen=True)
class Nonlinearity:
    """Power-law self-interaction N(y) = -gamma y^p with U' = N."""

    gamma: float
    p: float = 2.0

    def U(self, y):
        return -self.gamma * np.asarray(y) ** (self.p + 1) / (self.p + 1)

    def N(self, y):
        return -self.gamma * np.asarray(y) ** self.p

    @classmethod
    def from_params(cls, params: SolitonParams, p: float = 2.0) -> "Nonlinearity":
        return cls(gamma=3.0 * params.r0**2 / (params.g / (4 * np.pi)) ** 4, p=p)


@dataclass(frozen=True)
class LaneEmdenProfile:
    """F(r) = (g/4pi)/sqrt(r^2 + r0^2), the p = 2 closed-form soliton."""

    params: SolitonParams

    @property
    def amplitude(self) -> float:
        return self.params.g / (4 * np.pi)

    @property
    def nonlinearity(self) -> Nonlinearity:
        return Nonlinearity.from_params(self.params)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.amplitude / np.sqrt(r**2 + self.params.r0**2)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        return -self.amplitude * r / (r**2 + self.params.r0**2) ** 1.5

    def center_value(self) -> float:
        return self.amplitude / self.params.r0

    def pde_residual(self, r):
        """laplacian F + gamma F^5, evaluated with analytic derivatives.

        Identically zero for the closed form; nonzero values flag a broken
        profile/nonlinearity pairing.
        """
        r = np.asarray(r, dtype=float)
        r0 = self.params.r0
        s = r**2 + r0**2
        lap = -3.0 * self.amplitude * r0**2 * s**-2.5
        return lap + self.nonlinearity.gamma * self(r) ** 5


def profile_eval(prof: LaneEmdenProfile, r):
    """Value of the closed-form profile at radius r >= 0."""
    return prof(r)


def dilate(prof: LaneEmdenProfile, alpha: float) -> LaneEmdenProfile:
    """Dilated soliton sqrt(alpha) F(alpha r): r0 -> r0/alpha, g -> g/sqrt(alpha).

    Preserves r0^2/g^4 (hence the nonlinearity) and the quasi-static energy.
    """
    if alpha <= 0:
        raise DomainError(f"dilation factor must be positive, got {alpha}")
    p = prof.params
    new = replace(p, r0=p.r0 / alpha, g=p.g / np.sqrt(alpha))
    return LaneEmdenProfile(new)


def _radial_quad(fn, a, b, name):
    out = quad(fn, a, b, epsabs=1e-14, epsrel=1e-12, limit=400, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3 or abserr > max(1e-10, 1e-8 * abs(value)):
        raise AccuracyError(
            f"{name} quadrature did not converge (abserr={abserr:.3g})",
            estimate=value,
        )
    return value


def charge_integral(prof: LaneEmdenProfile, rmax_factor: float = QUAD_RMAX_FACTOR):
    """-int N(f^2) f d^3x by adaptive radial quadrature plus analytic tail.

    Equals the soliton charge g; the tail beyond rmax uses the asymptotic
    integrand 4 pi r^2 * gamma f^5 ~ 3 g r0^2 / r^3.
    """
    nl = prof.nonlinearity
    rmax = rmax_factor * prof.params.r0

    def integrand(r):
        f = prof(r)
        return -4.0 * np.pi * r**2 * nl.N(f**2) * f

    core = _radial_quad(integrand, 0.0, rmax, "charge")
    tail = 3.0 * prof.params.g * prof.params.r0**2 / (2.0 * rmax**2)
    return core + tail


def static_energy(prof: LaneEmdenProfile, rmax_factor: float = QUAD_RMAX_FACTOR):
    """int [U(f^2) - N(f^2) f^2] d^3x; agrees with g^2/(32 r0).

    The integrand is (2 gamma / 3) f^6 ~ 1/r^6, so the tail beyond rmax is
    the analytic power-law remainder.
    """
    nl = prof.nonlinearity
    rmax = rmax_factor * prof.params.r0

    def integrand(r):
        f2 = prof(r) ** 2
        return 4.0 * np.pi * r**2 * (nl.U(f2) - nl.N(f2) * f2)

    core = _radial_quad(integrand, 0.0, rmax, "static energy")
    tail_coeff = 4.0 * np.pi * (2.0 * nl.gamma / 3.0) * prof.amplitude**6
    tail = tail_coeff / (3.0 * rmax**3)
    return core + tail


@dataclass(frozen=True)
class DerrickScan:
    """Stretched-soliton energies E(alpha) = beta^2/alpha I_k - beta^(2p+2)/alpha^3 I_p."""

    alphas: np.ndarray
    energies: np.ndarray
    betas: np.ndarray
    p: float
    constrained: bool
    I_k: float
    I_p: float
    dE_dalpha: float
    d2E_dalpha2: float
    surface_term: float

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# I_k={self.I_k!r}\n")
            fh.write(f"# I_p={self.I_p!r}\n")
            fh.write(f"# dE_dalpha={self.dE_dalpha!r}\n")
            fh.write(f"# d2E_dalpha2={self.d2E_dalpha2!r}\n")
            fh.write(f"# surface_term={self.surface_term!r}\n")
            fh.write(f"# constrained={self.constrained} p={self.p}\n")
            fh.write("alpha,E_s,beta\n")
            for a, e, b in zip(self.alphas, self.energies, self.betas):
                fh.write(f"{a!r},{e!r},{b!r}\n")


def derrick_scan(
    prof: LaneEmdenProfile,
    p: float = 2.0,
    alpha_grid=(0.5, 0.8, 1.0, 1.25, 2.0),
    constrained: bool = True,
    rmax_factor: float = QUAD_RMAX_FACTOR,
) -> DerrickScan:
    """Variational energy of the stretched trial field beta f(alpha x).

    With the constrained stretching beta = alpha^(1/p) (the map that keeps
    the p-law field equation form-invariant) both terms scale as
    alpha^(2/p - 1), so E(alpha) is flat at p = 2.  ``constrained=False``
    fixes beta = 1, reproducing the classical instability.  Derivatives at
    alpha = 1 are Richardson-extrapolated central differences (step 1e-3).
    The magnitude of the kinetic-term surface contribution at the quadrature
    boundary is reported instead of being assumed zero.
    """
    if p == 0:
        raise DomainError("power index p must be nonzero")
    rmax = rmax_factor * prof.params.r0
    A = prof.amplitude
    gamma = prof.nonlinearity.gamma

    def kinetic_integrand(r):
        return 4.0 * np.pi * r**2 * prof.derivative(r) ** 2

    # (grad f)^2 ~ A^2/r^4: analytic tail C/r^2 with C = 4 pi A^2
    I_k = _radial_quad(kinetic_integrand, 0.0, rmax, "I_k") + 4.0 * np.pi * A**2 / rmax

    if 2.0 * p <= 1.0:
        raise AccuracyError(f"I_p diverges for the 1/r tail when p <= 1/2 (p={p})")

    def potential_integrand(r):
        return 4.0 * np.pi * r**2 * gamma / (p + 1.0) * prof(r) ** (2.0 * (p + 1.0))

    tail_p = (
        4.0 * np.pi * gamma / (p + 1.0) * A ** (2 * (p + 1)) * rmax ** (1.0 - 2.0 * p)
        / (2.0 * p - 1.0)
    )
    I_p = _radial_quad(potential_integrand, 0.0, rmax, "I_p") + tail_p

    def beta_of(alpha):
        return alpha ** (1.0 / p) if constrained else 1.0

    def energy(alpha):
        beta = beta_of(alpha)
        return beta**2 / alpha * I_k - beta ** (2.0 * (p + 1.0)) / alpha**3 * I_p

    alphas = np.asarray(alpha_grid, dtype=float)
    if np.any(alphas <= 0):
        raise DomainError("alpha grid must be positive")
    energies = np.array([energy(a) for a in alphas])
    betas = np.array([beta_of(a) for a in alphas])

    h = 1e-3

    def d1(step):
        return (energy(1.0 + step) - energy(1.0 - step)) / (2.0 * step)

    def d2(step):
        return (energy(1.0 + step) - 2.0 * energy(1.0) + energy(1.0 - step)) / step**2

    dE = (4.0 * d1(h / 2) - d1(h)) / 3.0
    d2E = (4.0 * d2(h / 2) - d2(h)) / 3.0

    surface = abs(4.0 * np.pi * rmax**2 * prof(rmax) * prof.derivative(rmax))

    return DerrickScan(
        alphas=alphas,
        energies=energies,
        betas=betas,
        p=p,
        constrained=constrained,
        I_k=I_k,
        I_p=I_p,
        dE_dalpha=dE,
        d2E_dalpha2=d2E,
        surface_term=surface,
    )


def interpolated_far_profile(params: SolitonParams, M: float, r):
    """(g/4pi) cos(M r)/sqrt(r^2 + r0^2): monopole tail matched to the core.

    Interpolates between the quasi-static soliton (M r << 1) and the
    oscillating monopole cos(M r)/r (r >> r0); accurate to O((M r0)^2).
    """
    if M * params.r0 > 0.1:
        warnings.warn(
            f"M*r0 = {M * params.r0:.3g} is not small; the interpolated "
            "profile degrades",
            RegimeWarning,
            stacklevel=2,
        )
    r = np.asarray(r, dtype=float)
    return params.g / (4 * np.pi) * np.cos(M * r) / np.sqrt(r**2 + params.r0**2)


def g_equation_residual(x, offset: float = 0.0):
    """Residual of G'' + 3 G^5 / x^4 at G(x) = x/sqrt(1+x^2) + offset.

    The unshifted G solves the equation exactly (the second derivative is
    the analytic -3x (1+x^2)^(-5/2)); a nonzero offset probes the residual's
    sensitivity.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("x must be positive")
    G = x / np.sqrt(1.0 + x**2) + offset
    d2G = -3.0 * x * (1.0 + x**2) ** -2.5
    return d2G + 3.0 * G**5 / x**4
