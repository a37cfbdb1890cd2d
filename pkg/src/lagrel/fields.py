"""Exact scalar fields: the rationals Q, prime fields F_p and rational functions Q(s).

Every field is described by a :class:`Field` object which knows how to build,
parse, print and sample its elements.  Elements themselves are ordinary Python
numbers with operator overloading:

* Q elements are :class:`fractions.Fraction` values.
* F_p elements are :class:`Fp` values which carry their modulus.
* Q(s) elements are :class:`RatFun` values, a reduced quotient of two dense
  polynomials with a monic denominator.

Plain ``int`` literals mix freely with every field.  Anything else from a
different field raises :class:`~lagrel.errors.FieldMismatch`.

>>> F5 = PrimeField(5)
>>> F5(2) + F5(4)
Fp(1, 5)
>>> s = QS.s
>>> (s * s - 1) / (s + 1) == s - 1
True
"""

from __future__ import annotations

import random as _random
import re
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DivisionByZero, FieldMismatch, ParseError

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "RationalFunctionField",
    "Fp",
    "RatFun",
    "Q",
    "QS",
    "field_from_tag",
    "field_of",
    "field_arith",
    "is_invertible",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Prime field elements
# ---------------------------------------------------------------------------


class Fp:
    """An element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} and F_{other.p} elements do not mix")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise FieldMismatch(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return Fp(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other) % self.p
        if d == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return Fp(self.value * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._coerce(other), self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        return Fp(pow(self.value, k, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __lt__(self, other):
        """Order by canonical representative in ``[0, p)`` (for sorting only)."""
        return self.value < (other.value if isinstance(other, Fp) else other % self.p)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


# ---------------------------------------------------------------------------
# Dense polynomials over Q (tuples of Fractions, lowest degree first)
# ---------------------------------------------------------------------------

Poly = tuple  # tuple[Fraction, ...] without trailing zeros; () is the zero polynomial


def _ptrim(c: Sequence[Fraction]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _ptrim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pscale(a: Poly, k: Fraction) -> Poly:
    if k == 0:
        return ()
    return tuple(c * k for c in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(r) >= len(b) and r:
        k = r[-1] / lb
        shift = len(r) - len(b)
        q[shift] = k
        for i, c in enumerate(b):
            r[shift + i] -= k * c
        r = list(_ptrim(r))
    return _ptrim(q), tuple(r)


def _pmonic(a: Poly) -> Poly:
    return _pscale(a, 1 / a[-1]) if a else a


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _coef(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class RatFun:
    """A rational function num(s)/den(s) with rational coefficients.

    The quotient is kept reduced with a monic denominator, so equal functions
    have identical coefficient tuples.  Zero is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence = (), den: Sequence = (1,)):
        n = _ptrim([_coef(c) for c in num])
        d = _ptrim([_coef(c) for c in den])
        if not d:
            raise DivisionByZero("rational function with zero denominator")
        if not n:
            self.num, self.den = (), (Fraction(1),)
            return
        g = _pgcd(n, d)
        if len(g) > 1:
            n = _pdivmod(n, g)[0]
            d = _pdivmod(d, g)[0]
        lc = d[-1]
        self.num = _pscale(n, 1 / lc)
        self.den = _pscale(d, 1 / lc)

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFun":
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return RatFun((other,))
        raise FieldMismatch(f"cannot combine Q(s) element with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFun(_padd(self.num, o.num), self.den)
        return RatFun(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(_pneg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFun(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o.num:
            raise DivisionByZero("division by zero in Q(s)")
        return RatFun(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        out = RatFun((1,))
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int) and not isinstance(other, bool):
            return self == RatFun((other,))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def __call__(self, value: Fraction) -> Fraction:
        """Evaluate at a rational point."""

        def ev(p):
            acc = Fraction(0)
            for c in reversed(p):
                acc = acc * value + c
            return acc

        d = ev(self.den)
        if d == 0:
            raise DivisionByZero("pole of the rational function")
        return ev(self.num) / d

    def __repr__(self):
        return f"RatFun({[str(c) for c in self.num]}, {[str(c) for c in self.den]})"

    def __str__(self):
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for k, c in enumerate(p):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append(f"{c}*s")
        else:
            terms.append(f"{c}*s^{k}")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# Field descriptors
# ---------------------------------------------------------------------------


class Field:
    """Uniform operations contract over one coefficient field."""

    tag: str = ""
    characteristic: int = 0
    finite: bool = False

    zero = None
    one = None

    def __call__(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        self.check(a)
        return str(a)

    def contains(self, a) -> bool:
        raise NotImplementedError

    def check(self, a):
        if not self.contains(a):
            raise FieldMismatch(f"{a!r} is not an element of {self.tag}")
        return a

    def random(self, rng: _random.Random, nonzero: bool = False):
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise TypeError(f"{self.tag} is infinite")

    @property
    def size(self) -> int | None:
        return None

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"<field {self.tag}>"


class RationalField(Field):
    tag = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatch(f"cannot make a rational from {value!r}")

    def parse(self, text: str):
        t = text.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", t):
            raise ParseError(f"not a rational scalar: {text!r}")
        try:
            return Fraction(t)
        except ZeroDivisionError as exc:
            raise ParseError(f"zero denominator in {text!r}") from exc

    def contains(self, a):
        return isinstance(a, Fraction)

    def random(self, rng, nonzero=False):
        while True:
            num = rng.randint(-6, 6)
            den = rng.randint(1, 4)
            v = Fraction(num, den)
            if v or not nonzero:
                return v


class PrimeField(Field):
    finite = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.tag = f"F_p:{p}"
        self.characteristic = p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, value):
        if isinstance(value, Fp):
            if value.p != self.p:
                raise FieldMismatch(f"F_{value.p} element given to F_{self.p}")
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Fp(value, self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"{value} has no image in F_{self.p}")
            return Fp(value.numerator, self.p) / value.denominator
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatch(f"cannot make an F_{self.p} element from {value!r}")

    def parse(self, text: str):
        t = text.strip()
        if not re.fullmatch(r"[+-]?\d+", t):
            raise ParseError(f"not an F_{self.p} scalar: {text!r}")
        return Fp(int(t), self.p)

    def contains(self, a):
        return isinstance(a, Fp) and a.p == self.p

    def random(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return Fp(rng.randrange(lo, self.p), self.p)

    def elements(self):
        return (Fp(v, self.p) for v in range(self.p))

    @property
    def size(self):
        return self.p


class RationalFunctionField(Field):
    tag = "Q(s)"
    characteristic = 0

    def __init__(self):
        self.zero = RatFun(())
        self.one = RatFun((1,))
        self.s = RatFun((0, 1))

    def __call__(self, value):
        if isinstance(value, RatFun):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return RatFun((value,))
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatch(f"cannot make a Q(s) element from {value!r}")

    def parse(self, text: str):
        return _RatFunParser(text).parse()

    def contains(self, a):
        return isinstance(a, RatFun)

    def random(self, rng, nonzero=False):
        while True:
            num = [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 2))]
            den = [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(0, 1))] + [1]
            try:
                v = RatFun(num, den)
            except DivisionByZero:
                continue
            if v or not nonzero:
                return v


class _RatFunParser:
    """Recursive-descent parser for rational expressions in ``s``."""

    _token = re.compile(r"\s*(?:(\d+)|(s)|([-+*/^()]))")

    def __init__(self, text: str):
        self.text = text
        self.tokens: list[str] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = self._token.match(stripped, pos)
            if not m:
                raise ParseError(f"bad Q(s) scalar {text!r} at offset {pos}")
            self.tokens.append(m.group(m.lastindex))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"bad Q(s) scalar {self.text!r}: expected {expected or 'token'}")
        self.i += 1
        return tok

    def parse(self) -> RatFun:
        if not self.tokens:
            raise ParseError("empty Q(s) scalar")
        try:
            v = self.expr()
        except DivisionByZero as exc:
            raise ParseError(f"division by zero in {self.text!r}") from exc
        if self.peek() is not None:
            raise ParseError(f"trailing input in Q(s) scalar {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            t = self.unary()
            v = v * t if op == "*" else v / t
        return v

    def unary(self):
        if self.peek() in ("+", "-"):
            op = self.take()
            v = self.unary()
            return -v if op == "-" else v
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.take()
            k = self.take()
            if not k.isdigit():
                raise ParseError(f"exponent must be a natural number in {self.text!r}")
            v = v ** int(k)
        return v

    def atom(self):
        tok = self.take()
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok == "s":
            return RatFun((0, 1))
        if tok.isdigit():
            return RatFun((int(tok),))
        raise ParseError(f"unexpected {tok!r} in Q(s) scalar {self.text!r}")


Q = RationalField()
QS = RationalFunctionField()

_prime_fields: dict[int, PrimeField] = {}


def prime_field(p: int) -> PrimeField:
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


def field_from_tag(tag: str) -> Field:
    """Parse a field tag: ``Q``, ``F_p:<p>`` / ``Fp:<p>``, or ``Q(s)`` / ``Qs``."""
    t = tag.strip()
    if t == "Q":
        return Q
    if t in ("Q(s)", "Qs"):
        return QS
    m = re.fullmatch(r"F_?p:(\d+)", t)
    if m:
        try:
            return prime_field(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field {tag!r}")


def field_of(a) -> Field:
    if isinstance(a, Fraction):
        return Q
    if isinstance(a, Fp):
        return prime_field(a.p)
    if isinstance(a, RatFun):
        return QS
    raise FieldMismatch(f"{a!r} is not a field element")


def field_arith(a, b=None, op: str = "add"):
    """Apply one of add, sub, mul, div, neg, inv to field elements."""
    fa = field_of(a)
    if b is not None and field_of(b) != fa:
        raise FieldMismatch(f"{fa.tag} and {field_of(b).tag} elements do not mix")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise DivisionByZero("zero has no inverse")
        return fa.one / a
    raise ValueError(f"unknown operation {op!r}")


def is_invertible(a) -> bool:
    return bool(a)
