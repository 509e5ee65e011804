"""Supersymmetric factorization of the power-law-mass kinetic family.

Builds the superpotential and ladder operators, verifies the Heisenberg
algebra, extracts partner potentials by two routes, and produces the
effective constant-mass Hamiltonian in the oscillator variable z.

Two partner-potential sources are carried side by side:

* ``paper``    -- literal transcription of the published closed form
                  (n = 3 only);
* ``expanded`` -- exact operator subtraction A(+-) A(-+) minus the kinetic
                  sandwich.

The two agree only at a = -1/4; the divergence is surfaced, not resolved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraError,
    Coeff,
    DiffOp,
    OrderingParam,
    PolyX,
    PowerLawMass,
    _frac,
    kinetic_sandwich,
)

SOURCE_PAPER = "paper"
SOURCE_EXPANDED = "expanded"
_SOURCE_ALIASES = {
    "paper": SOURCE_PAPER,
    "paper-eq12": SOURCE_PAPER,
    "expanded": SOURCE_EXPANDED,
}


def normalize_source(source: str) -> str:
    try:
        return _SOURCE_ALIASES[source]
    except KeyError:
        raise ValueError(f"unknown partner-potential source: {source!r}") from None


@dataclass(frozen=True)
class Superpotential:
    """W(x) for a power-law mass; two monomial terms in general."""

    W: PolyX
    mass: PowerLawMass
    ord: OrderingParam


def superpotential(mass: PowerLawMass, ord: OrderingParam) -> Superpotential:
    """W = (1/2) integral sqrt(2 m) dx + ((4a+1)/2) (1/sqrt(2 m))'.

    For m = x^n (M0 = 1) this is
    sqrt2/(n+2) x^((n+2)/2) - n(4a+1) sqrt2/8 x^(-(n+2)/2).
    """
    n = mass.n
    half = (n + 2) / 2
    grow = Coeff.sqrt2(Fraction(1, 1) / (n + 2))
    sing = Coeff.sqrt2(-n * (4 * ord.a + 1) * Fraction(1, 8))
    terms = [(grow, half)]
    if not sing.is_zero():
        terms.append((sing, -half))
    return Superpotential(W=PolyX(terms), mass=mass, ord=ord)


@dataclass(frozen=True)
class LadderOp:
    """Ladder operator A(sign): first-order part plus the superpotential."""

    sign: str  # '+' or '-'
    op: DiffOp
    W: Superpotential
    ord: OrderingParam


def ladder_operator(mass: PowerLawMass, ord: OrderingParam, sign: str) -> LadderOp:
    """A- = (1/sqrt2) m^b D m^a + W;  A+ = -(1/sqrt2) m^a D m^b + W."""
    if sign not in "+-":
        raise ValueError("sign must be '+' or '-'")
    w = superpotential(mass, ord)
    d = DiffOp.derivative()
    inv_sqrt2 = Coeff.sqrt2(Fraction(1, 2))  # 1/sqrt2 = sqrt2/2
    if sign == "-":
        kin = (
            DiffOp.multiplication(mass.power(ord.b))
            .compose(d)
            .compose(DiffOp.multiplication(mass.power(ord.a)))
            .scale(inv_sqrt2)
        )
    else:
        kin = (
            DiffOp.multiplication(mass.power(ord.a))
            .compose(d)
            .compose(DiffOp.multiplication(mass.power(ord.b)))
            .scale(-inv_sqrt2)
        )
    return LadderOp(sign=sign, op=kin + DiffOp.multiplication(w.W), W=w, ord=ord)


def ladder_product(mass: PowerLawMass, ord: OrderingParam, sign: str) -> DiffOp:
    """H(sign) = A(sign) A(-sign), expanded to normal order."""
    plus = ladder_operator(mass, ord, "+").op
    minus = ladder_operator(mass, ord, "-").op
    if sign == "+":
        return plus.compose(minus)
    if sign == "-":
        return minus.compose(plus)
    raise ValueError("sign must be '+' or '-'")


def commutator_check(mass: PowerLawMass, ord: OrderingParam) -> DiffOp:
    """[A-, A+] - 1; the zero operator iff the Heisenberg algebra holds."""
    plus = ladder_operator(mass, ord, "+").op
    minus = ladder_operator(mass, ord, "-").op
    return minus.commutator(plus) - DiffOp.identity()


@dataclass(frozen=True)
class PartnerPotential:
    """Derivative-free part of A(sign) A(-sign)."""

    V: PolyX
    sign: str
    source: str


def _paper_partner(ord: OrderingParam, sign: str) -> PolyX:
    a = ord.a
    inv5 = (21 + 48 * a - 144 * a * a) * Fraction(1, 32)
    shift = Fraction(-1, 2) if sign == "+" else Fraction(1, 2)
    return PolyX([(inv5, -5), (Fraction(2, 25), 5), (shift, 0)])


def partner_potential(
    mass: PowerLawMass, ord: OrderingParam, sign: str, source: str
) -> PartnerPotential:
    """V(sign) by literal transcription ('paper', n = 3 only) or by exact
    operator subtraction of the kinetic sandwich ('expanded')."""
    source = normalize_source(source)
    if sign not in "+-":
        raise ValueError("sign must be '+' or '-'")
    if source == SOURCE_PAPER:
        if mass.n != 3:
            raise ValueError("paper source is transcribed for n = 3 only")
        return PartnerPotential(V=_paper_partner(ord, sign), sign=sign, source=source)
    product = ladder_product(mass, ord, sign)
    if sign == "+":
        kinetic = kinetic_sandwich(mass, ord.a, 2 * ord.b)
    else:
        kinetic = kinetic_sandwich(mass, ord.b, 2 * ord.a)
    residual = product - kinetic
    if residual.order != 0:
        raise AlgebraError(
            "partner-potential subtraction left derivative terms; "
            "algebra inconsistency"
        )
    return PartnerPotential(V=residual.coefficient(0), sign=sign, source=source)


def inverse_square_coefficient(a, source: str) -> Fraction:
    """Dimensionless coefficient c_a of the z-space term +k c_a / z^2.

    paper:    c_a = -(21 + 48a - 144a^2)/100
    expanded: c_a = +(144a^2 + 192a + 39)/100
    """
    a = _frac(a)
    source = normalize_source(source)
    if source == SOURCE_PAPER:
        return -(21 + 48 * a - 144 * a * a) / Fraction(100)
    return (144 * a * a + 192 * a + 39) / Fraction(100)


@dataclass(frozen=True)
class EffectiveHamiltonianZ:
    """Constant-mass Hamiltonian in z: -k d^2/dz^2 + k c_a / z^2 + V_sys(z),
    with V_sys = U0 z^{4/5} (1 - z^{2/5}) + c0."""

    kinetic_prefactor: float  # k = hbar^2 / (2 M0 R_c^2), J
    c_a: Fraction
    U0: float                 # J
    c0: float                 # J
    a: Fraction
    source: str

    def v_a(self, z: float) -> float:
        return self.kinetic_prefactor * float(self.c_a) / z**2

    def v_sys(self, z: float) -> float:
        return self.U0 * z**0.8 * (1.0 - z**0.4) + self.c0

    def v_total(self, z: float) -> float:
        return self.v_a(z) + self.v_sys(z)


def effective_hamiltonian_z(
    ord: OrderingParam, params, source: str, c0: float = 0.0
) -> EffectiveHamiltonianZ:
    """Effective z-space Hamiltonian for the n = 3 bubble problem.

    params is a helium DerivedParams (supplies k and U0 in joules).
    """
    return EffectiveHamiltonianZ(
        kinetic_prefactor=params.k,
        c_a=inverse_square_coefficient(ord.a, source),
        U0=params.U0,
        c0=c0,
        a=ord.a,
        source=normalize_source(source),
    )


def z_space_operator(ord: OrderingParam, source: str) -> DiffOp:
    """Kinetic plus inverse-square part in symbolic units (M0 = hbar = R_c = 1,
    so k = 1/2): -(1/2) D^2 + (c_a / 2) z^-2."""
    c_a = inverse_square_coefficient(ord.a, source)
    return DiffOp(
        [
            (PolyX.const(Fraction(-1, 2)), 2),
            (PolyX.mono(c_a / 2, -2), 0),
        ]
    )
