"""Physical parameters for superheated liquid helium and derived scales.

Inputs are SI; derived quantities include the critical radius, the barrier
and mass scales, the kinetic prefactor of the effective z-space Hamiltonian,
and thermal quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from fractions import Fraction

from .susy import inverse_square_coefficient

# Pinned constants (SI).
PLANCK_H = 6.62607015e-34       # J s
HBAR = PLANCK_H / (2.0 * math.pi)
K_B = 1.380649e-23              # J / K
HELIUM4_MASS = 6.6465e-27       # kg
EV = 1.602176634e-19            # J


class PhysicsError(Exception):
    """Invalid or unsupported physical parameter combination."""


@dataclass(frozen=True)
class PhysicalParams:
    """Helium inputs: surface tension, vapor pressure, densities, applied
    pressure and temperature (all SI)."""

    sigma: float
    P_v: float
    rho_L: float
    T: float
    P: float = 0.0
    rho_v: float = 0.0

    def __post_init__(self):
        if self.sigma <= 0:
            raise PhysicsError("sigma must be positive")
        if self.rho_L <= 0:
            raise PhysicsError("rho_L must be positive")
        if self.T <= 0:
            raise PhysicsError("T must be positive")
        if not (0 <= self.rho_v < self.rho_L):
            raise PhysicsError("rho_v must satisfy 0 <= rho_v < rho_L")

    def with_pressure(self, P: float) -> "PhysicalParams":
        return PhysicalParams(
            sigma=self.sigma,
            P_v=self.P_v,
            rho_L=self.rho_L,
            T=self.T,
            P=P,
            rho_v=self.rho_v,
        )


#: Typical superfluid helium values at T = 4 K.
DEFAULT_HE4 = PhysicalParams(sigma=0.12e-3, P_v=8.1445e4, rho_L=140.0, T=4.0)


@dataclass(frozen=True)
class DerivedParams:
    """Derived scales: critical radius, barrier/mass scales, kinetic
    prefactor k = hbar^2 / (2 M0 R_c^2), thermal quantities."""

    R_c: float       # m
    U0: float        # J
    M0: float        # kg
    k: float         # J
    Lambda: float    # m
    p_Th: float      # kg m / s
    P_i_at_Rc: float  # Pa

    def as_dict(self) -> dict:
        return asdict(self)


def derived_params(p: PhysicalParams) -> DerivedParams:
    """All derived scales for a superheated state (requires P < P_v)."""
    if p.P >= p.P_v:
        raise PhysicsError(
            "no critical radius: applied pressure must be below P_v"
        )
    r_c = 2.0 * p.sigma / (p.P_v - p.P)
    u0 = 4.0 * math.pi * p.sigma * r_c**2
    m0 = 4.0 * math.pi * (1.0 - p.rho_v / p.rho_L) ** 2 * p.rho_L * r_c**3
    k = HBAR**2 / (2.0 * m0 * r_c**2)
    lam = PLANCK_H / math.sqrt(2.0 * math.pi * HELIUM4_MASS * K_B * p.T)
    return DerivedParams(
        R_c=r_c,
        U0=u0,
        M0=m0,
        k=k,
        Lambda=lam,
        p_Th=PLANCK_H / lam,
        P_i_at_Rc=p.P + 2.0 * p.sigma / r_c,
    )


def v_sys(z: float, U0: float, c0: float = 0.0) -> float:
    """System potential U0 z^{4/5} (1 - z^{2/5}) + c0 (J)."""
    if z <= 0:
        raise PhysicsError("v_sys requires z > 0")
    return U0 * z ** 0.8 * (1.0 - z ** 0.4) + c0


def v_inverse_square(z: float, k: float, c_a: Fraction) -> float:
    """Ordering-dependent inverse-square potential k * c_a / z^2 (J)."""
    if z <= 0:
        raise PhysicsError("inverse-square potential requires z > 0")
    return k * float(c_a) / z**2


@dataclass(frozen=True)
class ProfileRow:
    z: float
    V_a_J: float
    V_sys_J: float
    V_total_J: float

    @property
    def V_a_eV(self) -> float:
        return self.V_a_J / EV

    @property
    def V_sys_eV(self) -> float:
        return self.V_sys_J / EV

    @property
    def V_total_eV(self) -> float:
        return self.V_total_J / EV


def potential_profile(a, dp: DerivedParams, z_grid, source: str,
                      c0: float = 0.0) -> list[ProfileRow]:
    """Tabulate V_a, V_sys and their sum over a z grid (z > 0 throughout)."""
    c_a = inverse_square_coefficient(a, source)
    rows = []
    for z in z_grid:
        va = v_inverse_square(z, dp.k, c_a)
        vs = v_sys(z, dp.U0, c0)
        rows.append(ProfileRow(z=z, V_a_J=va, V_sys_J=vs, V_total_J=va + vs))
    return rows


def barrier_info(dp: DerivedParams, c0: float = 0.0) -> tuple[float, float]:
    """Stationary point of V_sys alone: z* = (2/3)^{5/2}, V* = c0 + (4/27) U0."""
    if dp.U0 <= 0:
        raise PhysicsError("barrier requires U0 > 0")
    z_star = (2.0 / 3.0) ** 2.5
    return z_star, c0 + 4.0 / 27.0 * dp.U0
