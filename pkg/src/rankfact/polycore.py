"""Exact univariate polynomials over the rationals.

A :class:`Poly` stores its coefficients in ascending degree order as a tuple of
:class:`fractions.Fraction`, trimmed so the last entry is nonzero. The zero
polynomial is the empty tuple and has degree :data:`NEG_INF`.

    >>> X = Poly.x()
    >>> (X + 1) * (X - 1)
    Poly('λ^2 - 1')
    >>> poly_divrem(X**2 + 1, X)
    (Poly('λ'), Poly('1'))
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import GradeError, ParseError, PreconditionError

Rational = Fraction
Scalar = Union[int, Fraction]

#: Degree of the zero polynomial. Compares below every integer and absorbs
#: addition (``NEG_INF + k == NEG_INF``), matching the convention deg(0) = -inf.
NEG_INF = float("-inf")

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


class Poly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim([Fraction(c) for c in coeffs]))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        # coeffs must already be trimmed Fractions
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def zero(cls) -> "Poly":
        return _ZERO_POLY

    @classmethod
    def one(cls) -> "Poly":
        return _ONE_POLY

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self):
        """Integer degree, or NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (_ONE,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.coeffs))
        return self._hash

    def __call__(self, x: Scalar) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- ring arithmetic ---------------------------------------------------

    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(_trim(out))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _ZERO_POLY
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        # product of nonzero leading terms is nonzero over a field
        return Poly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result, base = _ONE_POLY, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if not c:
            return _ZERO_POLY
        return Poly._raw(tuple(x * c for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by λ^k."""
        if not self.coeffs or k == 0:
            return self
        return Poly._raw((_ZERO,) * k + self.coeffs)

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise PreconditionError("the zero polynomial has no monic associate")
        return self.scale(1 / self.lc)

    def __divmod__(self, other: "Poly"):
        return poly_divrem(self, other)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divrem(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divrem(self, other)[1]

    def valuation_at(self, alpha: Scalar) -> int:
        """Multiplicity of (λ - alpha) as a factor; the zero polynomial is rejected."""
        if not self.coeffs:
            raise PreconditionError("valuation of the zero polynomial is infinite")
        lin = Poly((-Fraction(alpha), 1))
        k, p = 0, self
        while True:
            q, r = poly_divrem(p, lin)
            if r:
                return k
            k, p = k + 1, q

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        return poly_display(self)

    def __repr__(self) -> str:
        return f"Poly({poly_display(self)!r})"


_ZERO_POLY = Poly._raw(())
_ONE_POLY = Poly._raw((_ONE,))


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly((x,))
    return None


def poly_arith(a: Poly, b, op: str) -> Poly:
    """Dispatch ``op`` in {'add', 'sub', 'mul', 'scale'}; for 'scale', ``b`` is a scalar."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def poly_divrem(a: Poly, b: Poly):
    """Euclidean division: ``a = q*b + r`` with ``deg r < deg b``."""
    if not b.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    bc = b.coeffs
    db = len(bc) - 1
    if len(a.coeffs) <= db:
        return _ZERO_POLY, a
    rem = list(a.coeffs)
    inv = 1 / bc[-1]
    q = [_ZERO] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        c = c * inv
        q[k - db] = c
        for i in range(db + 1):
            rem[k - db + i] -= c * bc[i]
    return Poly._raw(_trim(q)), Poly._raw(_trim(rem[:db]))


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    q, r = poly_divrem(a, b)
    if r:
        raise PreconditionError(f"{b} does not divide {a}")
    return q


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if not a.coeffs and not b.coeffs:
        raise PreconditionError("gcd(0, 0) is undefined")
    while b.coeffs:
        a, b = b, poly_divrem(a, b)[1]
    return a.monic()


def poly_reverse(p: Poly, grade: int) -> Poly:
    """Return λ^grade · p(1/λ)."""
    if p.degree > grade:
        raise GradeError(f"grade {grade} is below deg(p) = {p.degree}")
    if not p.coeffs:
        return p
    c = list(p.coeffs) + [_ZERO] * (grade + 1 - len(p.coeffs))
    return Poly._raw(_trim(c[::-1]))


# -- serialization -------------------------------------------------------------

_RATIONAL_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?\Z")


def format_rational(q: Fraction) -> str:
    return str(q)


def parse_rational(s: str) -> Fraction:
    """Parse a canonical "n" or "n/d" string; anything non-canonical is rejected."""
    if not isinstance(s, str) or not _RATIONAL_RE.match(s):
        raise ParseError(f"invalid rational {s!r}")
    q = Fraction(s)
    if str(q) != s:
        raise ParseError(f"rational {s!r} is not in lowest terms")
    return q


def poly_to_json(p: Poly) -> list:
    return [format_rational(c) for c in p.coeffs]


def poly_from_json(obj: Sequence[str]) -> Poly:
    if not isinstance(obj, list):
        raise ParseError(f"polynomial must be a list of coefficient strings, got {obj!r}")
    coeffs = [parse_rational(c) for c in obj]
    if coeffs and not coeffs[-1]:
        raise ParseError("polynomial has a trailing zero coefficient")
    return Poly._raw(tuple(coeffs))


def poly_display(p: Poly, var: str = "λ") -> str:
    if not p.coeffs:
        return "0"
    terms = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}" if mag.denominator == 1 else f"({mag}){mono}"
        terms.append((sign, body))
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
