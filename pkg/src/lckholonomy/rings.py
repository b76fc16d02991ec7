"""Exact scalar rings.

Three kinds of scalars are used throughout the package:

* ``Fraction`` (stdlib) for rational constants,
* :class:`QuadraticNumber` for elements ``a + b*sqrt(d)`` of a quadratic extension,
* :class:`SpherePolynomial` for polynomials in ``x1..xm`` modulo ``x1^2 + ... + xm^2 = 1``.

Polynomials are kept in a canonical form in which ``xm`` appears with degree
at most one, so equality of canonical forms is equality in the quotient ring.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction, "SpherePolynomial"]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"-3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_zero(value) -> bool:
    return value == 0


# ---------------------------------------------------------------------------
# quadratic fields


class QuadraticNumber:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b`` and integer ``d > 0``.

    ``d`` is kept as given (no squarefree reduction). A perfect square ``d`` is
    folded into the rational part so that componentwise equality stays sound.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 1):
        if d <= 0:
            raise ValueError("d must be a positive integer")
        a, b = as_fraction(a), as_fraction(b)
        r = math.isqrt(d)
        if r * r == d:
            a, b, d = a + b * r, Fraction(0), 1
        self.a, self.b, self.d = a, b, d

    def _coerce(self, other) -> "QuadraticNumber | None":
        if isinstance(other, QuadraticNumber):
            if other.d != self.d and other.b and self.b:
                raise ValueError(f"mixing sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        return None

    def _shared_d(self, other: "QuadraticNumber") -> int:
        if self.b == 0:
            return other.d
        return self.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.a + o.a, self.b + o.b, self._shared_d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._shared_d(o)
        return QuadraticNumber(self.a * o.a + d * self.b * o.b,
                               self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadraticNumber division by zero")
        c = self.conjugate()
        return QuadraticNumber(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, QuadraticNumber) else other
        if o is None:
            return NotImplemented
        if self.b == 0 and o.b == 0:
            return self.a == o.a
        return self.d == o.d and self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        lead = "" if self.a == 0 else f"{self.a} + "
        coeff = "" if self.b == 1 else f"{self.b}*"
        return f"{lead}{coeff}{root}"


# ---------------------------------------------------------------------------
# polynomials on the unit sphere


def _add_into(acc: dict, mono: Monomial, coeff: Fraction) -> None:
    value = acc.get(mono, 0) + coeff
    if value:
        acc[mono] = value
    else:
        acc.pop(mono, None)


_SPHERE_TAILS: dict[int, dict[Monomial, Fraction]] = {}


def _sphere_tail(m: int) -> dict[Monomial, Fraction]:
    """``1 - x1^2 - ... - x_{m-1}^2`` as a raw term dict (the value of ``xm^2``)."""
    tail = _SPHERE_TAILS.get(m)
    if tail is None:
        tail = {(0,) * m: Fraction(1)}
        for j in range(m - 1):
            e = [0] * m
            e[j] = 2
            tail[tuple(e)] = Fraction(-1)
        _SPHERE_TAILS[m] = tail
    return tail


def reduce_terms(m: int, terms: Mapping[Monomial, Fraction]) -> dict[Monomial, Fraction]:
    """Canonical remainder of ``terms`` modulo ``x1^2 + ... + xm^2 - 1``."""
    out: dict[Monomial, Fraction] = {}
    tail = _sphere_tail(m)
    pending = list(terms.items())
    while pending:
        mono, coeff = pending.pop()
        if not coeff:
            continue
        k = mono[-1]
        if k < 2:
            _add_into(out, mono, coeff)
            continue
        base = mono[:-1] + (k - 2,)
        for tmono, tcoeff in tail.items():
            pending.append((tuple(a + b for a, b in zip(base, tmono)), coeff * tcoeff))
    return out


class SpherePolynomial:
    """Polynomial in ``x1..xm`` with rational coefficients, reduced modulo the sphere.

    Instances are immutable and always canonical. Arithmetic mixes freely
    with ``int`` and ``Fraction`` operands.
    """

    __slots__ = ("m", "terms", "_hash")

    def __init__(self, m: int, terms: Mapping[Monomial, Fraction] | None = None, *,
                 reduced: bool = False):
        if m < 1:
            raise ValueError("need at least one variable")
        self.m = m
        terms = terms or {}
        for mono in terms:
            if len(mono) != m:
                raise ValueError(f"monomial {mono} does not have {m} exponents")
        self.terms = dict(terms) if reduced else reduce_terms(m, terms)
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def constant(cls, m: int, value) -> "SpherePolynomial":
        value = as_fraction(value)
        return cls(m, {(0,) * m: value} if value else {}, reduced=True)

    @classmethod
    def variable(cls, m: int, j: int) -> "SpherePolynomial":
        """The coordinate function ``xj`` (1-based)."""
        if not 1 <= j <= m:
            raise IndexError(f"variable index {j} out of range 1..{m}")
        e = [0] * m
        e[j - 1] = 1
        return cls(m, {tuple(e): Fraction(1)}, reduced=True)

    @classmethod
    def parse(cls, m: int, text: str) -> "SpherePolynomial":
        value = parse_expression(text, m)
        if isinstance(value, SpherePolynomial):
            return value
        return cls.constant(m, value)

    # arithmetic -------------------------------------------------------
    def _lift(self, other) -> "SpherePolynomial | None":
        if isinstance(other, SpherePolynomial):
            if other.m != self.m:
                raise ValueError(f"ring mismatch: {self.m} vs {other.m} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return SpherePolynomial.constant(self.m, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        acc = dict(self.terms)
        for mono, c in o.terms.items():
            _add_into(acc, mono, c)
        return SpherePolynomial(self.m, acc, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return SpherePolynomial(self.m, {e: -c for e, c in self.terms.items()}, reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SpherePolynomial(self.m, reduced=True)
            return SpherePolynomial(self.m, {e: c * other for e, c in self.terms.items()},
                                    reduced=True)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return SpherePolynomial(self.m, reduced=True)
        acc: dict[Monomial, Fraction] = {}
        overflow: dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                target = overflow if e[-1] >= 2 else acc
                _add_into(target, e, c1 * c2)
        if overflow:
            for mono, c in reduce_terms(self.m, overflow).items():
                _add_into(acc, mono, c)
        return SpherePolynomial(self.m, acc, reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = SpherePolynomial.constant(self.m, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SpherePolynomial):
            return self.m == other.m and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.m: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection ------------------------------------------------------
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.m, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in graded-lex order with ``xm`` greatest, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0][::-1]), reverse=True)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.sorted_terms())

    # calculus --------------------------------------------------------
    def derive(self, i: int) -> "SpherePolynomial":
        """Frame derivation ``U_i`` of the Hopf parallelisation, ``U_i(xj) = d_ij - xi*xj``."""
        if not 1 <= i <= self.m:
            raise IndexError(f"frame index {i} out of range 1..{self.m}")
        k = i - 1
        acc: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            if e[k]:
                lowered = e[:k] + (e[k] - 1,) + e[k + 1:]
                _add_into(acc, lowered, c * e[k])
            total = sum(e)
            if total:
                raised = e[:k] + (e[k] + 1,) + e[k + 1:]
                _add_into(acc, raised, -c * total)
        return SpherePolynomial(self.m, acc)

    def evaluate_uniform(self) -> QuadraticNumber:
        """Value at the point with every ``xj = 1/sqrt(m)``."""
        m = self.m
        a = Fraction(0)
        b = Fraction(0)
        for e, c in self.terms.items():
            deg = sum(e)
            if deg % 2 == 0:
                a += c / Fraction(m) ** (deg // 2)
            else:
                b += c / Fraction(m) ** ((deg + 1) // 2)
        return QuadraticNumber(a, b, m)

    def substitute(self, values) -> object:
        """Evaluate at explicit values (any ring supporting + and *)."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                for _ in range(k):
                    term = term * v
            total = total + term
        return total

    # printing --------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            factors = []
            for j, k in enumerate(e, start=1):
                if k == 1:
                    factors.append(f"x{j}")
                elif k > 1:
                    factors.append(f"x{j}^{k}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"SpherePolynomial({self.m}, {str(self)!r})"


def reduce(p: SpherePolynomial) -> SpherePolynomial:
    """Canonical form of ``p`` (instances are canonical already; kept for API symmetry)."""
    return SpherePolynomial(p.m, p.terms)


def frame_derivation(i: int, p) -> object:
    """``U_i(p)``; constants differentiate to zero."""
    if isinstance(p, SpherePolynomial):
        return p.derive(i)
    if isinstance(p, (int, Fraction)):
        return Fraction(0)
    raise TypeError(f"cannot differentiate {type(p).__name__}")


def evaluate_uniform(p, m: int) -> QuadraticNumber:
    if isinstance(p, SpherePolynomial):
        if p.m != m:
            raise ValueError(f"polynomial has {p.m} variables, expected {m}")
        return p.evaluate_uniform()
    return QuadraticNumber(as_fraction(p), 0, m)


# ---------------------------------------------------------------------------
# expression parsing

class ExpressionError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column
        self.reason = message


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ExpressionError(f"unexpected character {text[col - 1]!r}", col)
        col = match.start(0) + len(match.group(0)) - len(match.group(0).lstrip()) + 1
        if match.group(1):
            tokens.append(("num", match.group(1), col))
        elif match.group(2):
            tokens.append(("var", match.group(3), col))
        else:
            tokens.append(("op", match.group(4), col))
        pos = match.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, m: int | None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.m = m

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val, col = self.take()
        if kind != "op" or val != op:
            raise ExpressionError(f"expected {op!r}", col)

    def parse(self):
        value = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected token {val!r}", col)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-" and len(val) == 1:
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, val, col = self.peek()
            if kind == "op" and val in ("*", "/"):
                self.take()
                rhs = self.unary()
                if val == "*":
                    value = value * rhs
                else:
                    if isinstance(rhs, SpherePolynomial):
                        if not rhs.is_constant():
                            raise ExpressionError("division by a non-constant", col)
                        rhs = rhs.constant_value()
                    if rhs == 0:
                        raise ExpressionError("division by zero", col)
                    value = value / Fraction(rhs)
            else:
                return value

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if val == "+" else -inner
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, col = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            kind, exp, ecol = self.take()
            if kind != "num":
                raise ExpressionError("exponent must be a non-negative integer", ecol)
            base = base ** int(exp)
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return Fraction(int(val))
        if kind == "var":
            j = int(val)
            if self.m is None:
                raise ExpressionError(f"variable x{j} not allowed in the constants ring", col)
            if not 1 <= j <= self.m:
                raise ExpressionError(f"variable x{j} out of range 1..{self.m}", col)
            return SpherePolynomial.variable(self.m, j)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ExpressionError("expected a number, variable or '('" if kind != "end"
                              else "unexpected end of expression", col)


def parse_expression(text: str, m: int | None = None):
    """Parse ``"x1*x2 - 1/2"`` style input.

    With ``m=None`` only rational constants are accepted and a Fraction is
    returned; otherwise the result lives in the sphere ring on ``m`` variables.
    """
    return _Parser(str(text), m).parse()
