import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pdmbubble.algebra import Coeff, PolyX
from pdmbubble.helium import PhysicalParams
from pdmbubble.parsing import (
    ClassicalSymbol,
    ParseError,
    PPowerError,
    UnboundNameError,
    parse_hamiltonian,
    parse_params,
)

UNIT_BINDINGS = {"M0": Coeff.of(1), "U0": Coeff.of(1)}


class TestParseHamiltonian:
    def test_bubble_hamiltonian(self):
        sym = parse_hamiltonian("p^2/(2*M0*x^3) + U0*x^2*(1-x)", UNIT_BINDINGS)
        assert sym.part(2) == PolyX.mono(F(1, 2), -3)
        assert sym.part(0) == PolyX([(1, 2), (-1, 3)])
        assert sym.part(1).is_zero()

    def test_bound_name_scaling(self):
        sym = parse_hamiltonian(
            "p^2/(2*M0*x^3)", {"M0": Coeff.of(F(1, 4))}
        )
        assert sym.part(2) == PolyX.mono(2, -3)

    def test_half_p_squared(self):
        sym = parse_hamiltonian("p^2/2", {})
        assert sym.terms == ((PolyX.const(F(1, 2)), 2),)

    def test_rational_power_of_x(self):
        sym = parse_hamiltonian("x^(5/2)", {})
        assert sym.part(0) == PolyX.mono(1, F(5, 2))

    def test_decimal_literals_are_exact(self):
        sym = parse_hamiltonian("0.12e-3*x", {})
        assert sym.part(0) == PolyX.mono(F(3, 25000), 1)

    def test_unclosed_paren_reports_offset(self):
        with pytest.raises(ParseError) as info:
            parse_hamiltonian("x^(1/2", {})
        assert info.value.offset == 6

    def test_unbound_name(self):
        with pytest.raises(UnboundNameError):
            parse_hamiltonian("Q0*x", {})

    def test_p_cubed_rejected(self):
        with pytest.raises(PPowerError):
            parse_hamiltonian("p^3", {})
        with pytest.raises(PPowerError):
            parse_hamiltonian("p*p*p", {})

    def test_p_in_denominator_rejected(self):
        with pytest.raises(PPowerError):
            parse_hamiltonian("1/p", {})

    def test_p_fractional_power_rejected(self):
        with pytest.raises(PPowerError):
            parse_hamiltonian("p^(1/2)", {})

    def test_unary_minus(self):
        sym = parse_hamiltonian("-x + x", {})
        assert sym.terms == ()

    def test_offset_within_input(self):
        for text in ("", "+", "x^", "1/(", "x x", ")", "p^"):
            with pytest.raises(ParseError) as info:
                parse_hamiltonian(text, {})
            assert 0 <= info.value.offset <= len(text)


@st.composite
def symbols(draw):
    nterms = draw(st.integers(1, 4))
    parts = {}
    for _ in range(nterms):
        k = draw(st.integers(0, 2))
        coeff = draw(
            st.fractions(min_value=-20, max_value=20, max_denominator=12).filter(
                lambda f: f != 0
            )
        )
        exp = draw(st.fractions(min_value=-6, max_value=6, max_denominator=6))
        parts[k] = parts.get(k, PolyX.zero()) + PolyX.mono(coeff, exp)
    return ClassicalSymbol.from_parts(parts)


@given(symbols())
@settings(max_examples=150, deadline=None)
def test_pretty_print_roundtrip(sym):
    assert parse_hamiltonian(sym.to_text(), {}) == sym


def test_grammar_examples_roundtrip():
    for text in (
        "p^2/(2*M0*x^3) + U0*x^2*(1-x)",
        "p^2/2",
        "x^(5/2) - 3*x^(-5/2)*p",
        "-x^2*p^2 + 1/2",
    ):
        sym = parse_hamiltonian(text, UNIT_BINDINGS)
        assert parse_hamiltonian(sym.to_text(), {}) == sym


def test_fuzz_totality_10k():
    rng = random.Random(20260823)
    alphabet = ["x", "p", "M0", "1", "2", "1/2", "0.5e1", "+", "-", "*", "/",
                "^", "(", ")", " ", "q", "."]
    for _ in range(10_000):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 18)))
        try:
            parse_hamiltonian(text, UNIT_BINDINGS)
        except ParseError as exc:
            assert 0 <= exc.offset <= len(text)


class TestParseParams:
    GOOD = "sigma=0.12e-3\nP_v=8.1445e4\nrho_L=140\nT=4\nP=0\n"

    def test_helium_defaults(self):
        p = parse_params(self.GOOD)
        assert p == PhysicalParams(
            sigma=0.12e-3, P_v=8.1445e4, rho_L=140.0, T=4.0, P=0.0, rho_v=0.0
        )

    def test_crlf_and_comments(self):
        text = "# helium\r\nsigma=0.12e-3\r\nP_v=8.1445e4\r\nrho_L=140 # kg/m3\r\nT=4\r\nP=0\r\n"
        assert parse_params(text).rho_L == 140.0

    def test_missing_key(self):
        with pytest.raises(ValueError, match="missing key P"):
            parse_params("sigma=1e-4\nP_v=1e5\nrho_L=140\nT=4\n")

    def test_unknown_key(self):
        with pytest.raises(ValueError, match="unknown key"):
            parse_params(self.GOOD + "bogus=1\n")

    def test_non_numeric_value(self):
        with pytest.raises(ValueError, match="non-numeric"):
            parse_params("sigma=abc\nP_v=1e5\nrho_L=140\nT=4\nP=0\n")

    def test_negative_density_rejected(self):
        with pytest.raises(ValueError):
            parse_params("sigma=1e-4\nP_v=1e5\nrho_L=-1\nT=4\nP=0\n")
