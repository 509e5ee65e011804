"""Recursive-descent parser for the classical-Hamiltonian DSL and for
key=value parameter files.

The DSL covers sums of products of rational literals, bound names, x with
rational powers, and p up to p^2.  Precedence, tightest first: unary minus,
'^' (binding a single signed factor), '*' and '/', then '+' and '-'.
Decimal and scientific literals are converted exactly to rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Coeff, PolyX
from .helium import PhysicalParams, PhysicsError


class ParseError(Exception):
    """Malformed DSL input: carries the offset and what was expected/found."""

    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


class UnboundNameError(ParseError):
    def __init__(self, offset: int, name: str):
        super().__init__(offset, "a bound name", name)
        self.name = name


class PPowerError(ParseError):
    """p appears with power above 2, in a denominator, or under a
    non-integer exponent."""

    def __init__(self, offset: int, found: str):
        super().__init__(offset, "p-degree at most 2 outside denominators", found)


@dataclass(frozen=True)
class ClassicalSymbol:
    """Classical phase-space function: sum of terms coeff(x) * p^k, k <= 2."""

    terms: tuple  # of (PolyX, int p_power), canonical

    @staticmethod
    def from_parts(parts: dict[int, PolyX]) -> "ClassicalSymbol":
        return ClassicalSymbol(
            tuple(
                (parts[k], k)
                for k in sorted(parts)
                if not parts[k].is_zero()
            )
        )

    def part(self, p_power: int) -> PolyX:
        for poly, k in self.terms:
            if k == p_power:
                return poly
        return PolyX.zero()

    @property
    def max_p_power(self) -> int:
        return max((k for _, k in self.terms), default=0)

    def to_text(self) -> str:
        """Pretty-print in a form that reparses to an identical symbol."""
        if not self.terms:
            return "0"
        pieces = []
        for poly, k in self.terms:
            for coeff, exp in poly.terms:
                factors = [_coeff_text(coeff)]
                if exp != 0:
                    factors.append(f"x^({exp.numerator}/{exp.denominator})")
                if k == 1:
                    factors.append("p")
                elif k == 2:
                    factors.append("p^2")
                pieces.append("*".join(factors))
        return " + ".join(pieces)


def _coeff_text(c: Coeff) -> str:
    r = c.rational  # DSL output restricted to rational coefficients
    if r.denominator == 1:
        return f"({r.numerator})"
    return f"({r.numerator}/{r.denominator})"


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
    r"|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            off = len(text) - len(stripped)
            raise ParseError(off, "a token", repr(stripped[0]))
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Value:
    """Intermediate parse value: map p_power -> PolyX coefficient."""

    __slots__ = ("parts",)

    def __init__(self, parts: dict[int, PolyX]):
        self.parts = {k: v for k, v in parts.items() if not v.is_zero()}

    @staticmethod
    def const(c: Coeff) -> "_Value":
        return _Value({0: PolyX.const(c)})

    def add(self, other: "_Value") -> "_Value":
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = out.get(k, PolyX.zero()) + v
        return _Value(out)

    def neg(self) -> "_Value":
        return _Value({k: -v for k, v in self.parts.items()})

    def mul(self, other: "_Value", offset: int) -> "_Value":
        out: dict[int, PolyX] = {}
        for k1, v1 in self.parts.items():
            for k2, v2 in other.parts.items():
                k = k1 + k2
                if k > 2:
                    raise PPowerError(offset, f"p^{k}")
                out[k] = out.get(k, PolyX.zero()) + v1 * v2
        return _Value(out)

    def div(self, other: "_Value", offset: int) -> "_Value":
        if any(k > 0 for k in other.parts):
            raise PPowerError(offset, "p in a denominator")
        poly = other.parts.get(0, PolyX.zero())
        if poly.is_zero():
            raise ParseError(offset, "a nonzero divisor", "zero")
        if not poly.is_monomial():
            raise ParseError(offset, "a monomial divisor", "a multi-term divisor")
        c, e = poly.monomial_parts()
        inv = PolyX.mono(Coeff.of(1) / c, -e)
        return _Value({k: v * inv for k, v in self.parts.items()})

    def as_rational(self, offset: int) -> Fraction:
        if any(k > 0 for k in self.parts):
            raise PPowerError(offset, "p under ^")
        poly = self.parts.get(0, PolyX.zero())
        if poly.is_zero():
            return Fraction(0)
        if not poly.is_constant():
            raise ParseError(offset, "a constant exponent", "an x-dependent one")
        c = poly.coefficient(0)
        if not c.is_rational():
            raise ParseError(offset, "a rational exponent", str(c))
        return c.rational

    def pow(self, exponent: Fraction, offset: int) -> "_Value":
        if list(self.parts) == [1] and self.parts[1] == PolyX.one():
            # bare p under ^: integer powers up to 2 only
            if exponent.denominator != 1:
                raise PPowerError(offset, f"p^{exponent}")
            k = int(exponent)
            if k < 0:
                raise PPowerError(offset, "p in a denominator")
            if k > 2:
                raise PPowerError(offset, f"p^{k}")
            return _Value({k: PolyX.one()})
        if any(k > 0 for k in self.parts):
            raise PPowerError(offset, "p inside a ^ base")
        poly = self.parts.get(0, PolyX.zero())
        if poly.is_monomial():
            c, e = poly.monomial_parts()
            if c == Coeff.of(1):
                return _Value({0: PolyX.mono(1, e * exponent)})
            if exponent.denominator == 1:
                if abs(exponent) > 4096:
                    raise ParseError(
                        offset, "a numeric exponent at most 4096", str(exponent)
                    )
                return _Value(
                    {0: PolyX.mono(_coeff_pow(c, int(exponent)), e * exponent)}
                )
            raise ParseError(
                offset, "an integer exponent on a non-monic base", str(exponent)
            )
        if exponent.denominator != 1 or exponent < 0:
            raise ParseError(
                offset, "a nonnegative integer exponent on a sum", str(exponent)
            )
        if exponent > 16:
            raise ParseError(offset, "a sum exponent at most 16", str(exponent))
        out = _Value.const(Coeff.of(1))
        for _ in range(int(exponent)):
            out = out.mul(self, offset)
        return out


def _coeff_pow(c: Coeff, k: int) -> Coeff:
    """c**k by squaring; rational bases take the Fraction fast path."""
    if k < 0:
        c = Coeff.of(1) / c
        k = -k
    if c.is_rational():
        return Coeff.of(c.rational**k)
    out = Coeff.of(1)
    base = c
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


class _Parser:
    def __init__(self, tokens, bindings):
        self.tokens = tokens
        self.pos = 0
        self.bindings = bindings

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.peek()
        if kind == "op" and val == op:
            return self.advance()
        raise ParseError(off, repr(op), repr(val) if val else "end of input")

    def parse(self) -> _Value:
        value = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(off, "end of input", repr(val))
        return value

    def expr(self) -> _Value:
        value = self.term()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.term()
                value = value.add(rhs if val == "+" else rhs.neg())
            else:
                return value

    def term(self) -> _Value:
        value = self.power()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "*/":
                self.advance()
                rhs = self.power()
                value = value.mul(rhs, off) if val == "*" else value.div(rhs, off)
            else:
                return value

    def power(self) -> _Value:
        base = self.signed()
        kind, val, off = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            exp_val = self.signed()
            return base.pow(exp_val.as_rational(off), off)
        return base

    def signed(self) -> _Value:
        kind, val, off = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return self.signed().neg()
        return self.primary()

    def primary(self) -> _Value:
        kind, val, off = self.advance()
        if kind == "num":
            return _Value.const(Coeff.of(Fraction(val)))
        if kind == "name":
            if val == "x":
                return _Value({0: PolyX.mono(1, 1)})
            if val == "p":
                return _Value({1: PolyX.one()})
            if val in self.bindings:
                return _Value.const(Coeff.of(self.bindings[val]))
            raise UnboundNameError(off, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        found = repr(val) if val else "end of input"
        raise ParseError(off, "a number, name, or '('", found)


def parse_hamiltonian(text: str, bindings: dict | None = None) -> ClassicalSymbol:
    """Parse a classical-Hamiltonian expression into a ClassicalSymbol.

    Raises ParseError (or its UnboundNameError / PPowerError subclasses) on
    any malformed input; parsing is total.
    """
    tokens = _tokenize(text)
    try:
        value = _Parser(tokens, bindings or {}).parse()
    except ZeroDivisionError:
        raise ParseError(len(text), "a nonzero divisor", "zero") from None
    return ClassicalSymbol.from_parts(value.parts)


_PARAM_KEYS = ("sigma", "P_v", "rho_L", "rho_v", "T", "P")


def parse_params(text: str) -> PhysicalParams:
    """Parse a key=value parameter file (LF or CRLF, '#' comments).

    Keys: sigma, P_v, rho_L, rho_v, T, P (SI units); rho_v defaults to 0.
    """
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _PARAM_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = float(val.strip())
        except ValueError:
            raise ValueError(
                f"line {lineno}: non-numeric value for {key}: {val.strip()!r}"
            ) from None
    for key in ("sigma", "P_v", "rho_L", "T", "P"):
        if key not in values:
            raise ValueError(f"missing key {key}")
    try:
        return PhysicalParams(
            sigma=values["sigma"],
            P_v=values["P_v"],
            rho_L=values["rho_L"],
            T=values["T"],
            P=values["P"],
            rho_v=values.get("rho_v", 0.0),
        )
    except PhysicsError as exc:
        raise ValueError(str(exc)) from None
