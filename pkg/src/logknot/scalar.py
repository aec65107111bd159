"""Exact arithmetic in Q(zeta) with zeta = exp(pi i / 2p), plus an mpmath backend.

``zeta`` plays the role of ``k = K^{1/2}``: ``q = zeta**2`` and ``zeta**(2p) = -1``.
Elements are stored in the power basis ``1, zeta, ..., zeta**(deg-1)`` reduced
modulo the 4p-th cyclotomic polynomial, with integer numerators over a common
positive denominator, so equality is a tuple comparison.
"""

from __future__ import annotations

import re
import warnings
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

import mpmath
import numpy as np

__all__ = [
    "CyclotomicField",
    "CyclotomicNumber",
    "cyclotomic_field",
    "root_power",
    "quantum_integer",
    "quantum_factorial",
    "invert",
    "to_complex",
    "parse_cyclotomic",
    "complex_context",
    "ExactBackend",
    "ComplexBackend",
    "exact_backend",
    "complex_backend",
    "DEFAULT_PRECISION",
]

DEFAULT_PRECISION = 128


def _poly_divmod(num, den):
    """Integer-coefficient division by a monic polynomial (lists low -> high)."""
    num = list(num)
    out = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return out, num


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, _cyclotomic_poly(d))
            assert not any(rem)
    return tuple(poly)


class CyclotomicField:
    """Tables for Q(zeta_{4p}); build through :func:`cyclotomic_field`."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError(f"p must be >= 2, got {p}")
        self.p = p
        self.order = 4 * p
        self.modulus = _cyclotomic_poly(self.order)
        self.degree = len(self.modulus) - 1
        deg = self.degree
        # canonical coordinates of zeta**k for 0 <= k < order
        powers = []
        cur = [1] + [0] * (deg - 1)
        for _ in range(self.order):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(deg):
                    cur[j] -= top * self.modulus[j]
        self.powers = tuple(powers)
        # regular representation: column j of reg[k] holds zeta**(k+j)
        reg = np.zeros((self.order, deg, deg), dtype=np.int64)
        for k in range(self.order):
            for j in range(deg):
                reg[k, :, j] = powers[(k + j) % self.order]
        reg.setflags(write=False)
        self.reg = reg
        self.zero = CyclotomicNumber._make(self, (0,) * deg, 1)
        self.one = self.from_int(1)

    def __repr__(self):
        return f"CyclotomicField(p={self.p})"

    def __reduce__(self):
        return (cyclotomic_field, (self.p,))

    def from_int(self, n) -> CyclotomicNumber:
        if isinstance(n, Fraction):
            return CyclotomicNumber._make(self, (n.numerator,) + (0,) * (self.degree - 1), n.denominator)
        return CyclotomicNumber._make(self, (int(n),) + (0,) * (self.degree - 1), 1)

    def zeta(self, j: int) -> CyclotomicNumber:
        return CyclotomicNumber._make(self, self.powers[j % self.order], 1)

    def from_coeffs(self, coeffs) -> CyclotomicNumber:
        """Element sum(c_j zeta**j); any length, reduced modulo zeta**(4p) = 1."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        acc = [0] * self.degree
        for j, c in enumerate(fr):
            if c:
                n = c.numerator * (den // c.denominator)
                for i, v in enumerate(self.powers[j % self.order]):
                    acc[i] += n * v
        return CyclotomicNumber._make(self, acc, den)


@lru_cache(maxsize=None)
def cyclotomic_field(p: int) -> CyclotomicField:
    return CyclotomicField(p)


class CyclotomicNumber:
    """Immutable element of Q(zeta_{4p}).

    Stored as integer numerators over a positive common denominator in lowest
    terms; ``coeffs`` exposes the canonical rational coefficients.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, p: int, coeffs=(0,)):
        other = cyclotomic_field(p).from_coeffs(coeffs)
        self.field, self.num, self.den = other.field, other.num, other.den
        self._hash = None

    @classmethod
    def _make(cls, field, num, den):
        g = den
        for v in num:
            g = gcd(g, v)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(v // g for v in num)
            den //= g
        obj = object.__new__(cls)
        obj.field = field
        obj.num = tuple(num)
        obj.den = den
        obj._hash = None
        return obj

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.field is not self.field:
                raise ValueError(f"mixed fields p={self.p} and p={other.p}")
            return other
        if isinstance(other, (int, Rational)):
            return self.field.from_int(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CyclotomicNumber._make(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        den = self.den * other.den
        return CyclotomicNumber._make(
            self.field, [a * other.den + b * self.den for a, b in zip(self.num, other.num)], den
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._make(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.field
        deg = field.degree
        prod = [0] * (2 * deg - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        prod[i + j] += a * b
        out = prod[:deg]
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                for i, v in enumerate(field.powers[k]):
                    if v:
                        out[i] += c * v
        return CyclotomicNumber._make(field, out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * invert(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * invert(self)

    def __pow__(self, n: int):
        if n < 0:
            return invert(self) ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self == self.field.from_int(Fraction(other))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.p, self.num, self.den))
        return self._hash

    def conjugate(self) -> CyclotomicNumber:
        """Complex conjugate, i.e. the Galois automorphism zeta -> zeta**-1."""
        field = self.field
        acc = [0] * field.degree
        for j, a in enumerate(self.num):
            if a:
                for i, v in enumerate(field.powers[(-j) % field.order]):
                    acc[i] += a * v
        return CyclotomicNumber._make(field, acc, self.den)

    def __complex__(self):
        return complex(to_complex(self, 53))

    def to_text(self) -> str:
        return format_cyclotomic(self)

    def __str__(self):
        return format_cyclotomic(self)

    def __repr__(self):
        return f"CyclotomicNumber(p={self.p}, {format_cyclotomic(self)!r})"

    def __reduce__(self):
        return (_rebuild, (self.p, self.num, self.den))


def _rebuild(p, num, den):
    return CyclotomicNumber._make(cyclotomic_field(p), num, den)


def root_power(p: int, j: int) -> CyclotomicNumber:
    """``zeta**j`` in canonical form; ``root_power(p, 2)`` is q."""
    return cyclotomic_field(p).zeta(j)


@lru_cache(maxsize=None)
def quantum_integer(p: int, n: int) -> CyclotomicNumber:
    """[n] = (q^n - q^-n)/(q - q^-1), computed as q^{n-1} + q^{n-3} + ... + q^{1-n}."""
    field = cyclotomic_field(p)
    if n < 0:
        return -quantum_integer(p, -n)
    acc = [0] * field.degree
    for k in range(n):
        for i, v in enumerate(field.powers[(2 * (n - 1 - 2 * k)) % field.order]):
            acc[i] += v
    return CyclotomicNumber._make(field, acc, 1)


@lru_cache(maxsize=None)
def quantum_factorial(p: int, n: int) -> CyclotomicNumber:
    """[n]! = [n][n-1]...[1]; vanishes (with a warning) once n >= p."""
    if n < 0:
        raise ValueError(f"quantum factorial of negative n={n}")
    if n >= p:
        warnings.warn(f"[{n}]! vanishes at p={p}; do not invert it", RuntimeWarning, stacklevel=2)
        return cyclotomic_field(p).zero
    result = cyclotomic_field(p).one
    for k in range(1, n + 1):
        result = result * quantum_integer(p, k)
    return result


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def invert(x: CyclotomicNumber) -> CyclotomicNumber:
    """Multiplicative inverse via the extended Euclidean algorithm against the modulus."""
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero in Q(zeta)")
    field = x.field
    # work over Q with polynomials low -> high
    r0 = [Fraction(c) for c in field.modulus]
    r1 = _poly_trim([Fraction(v, x.den) for v in x.num])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        quot = [Fraction(0)] * (len(r0) - len(r1) + 1)
        rem = list(r0)
        lead = r1[-1]
        for k in range(len(r0) - len(r1), -1, -1):
            c = rem[k + len(r1) - 1] / lead
            quot[k] = c
            if c:
                for j, d in enumerate(r1):
                    rem[k + j] -= c * d
        rem = _poly_trim(rem[: len(r1) - 1])
        prod = [Fraction(0)] * (len(quot) + len(s1) - 1)
        for i, a in enumerate(quot):
            for j, b in enumerate(s1):
                prod[i + j] += a * b
        size = max(len(s0), len(prod))
        s_new = [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0) for i in range(size)]
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_trim(s_new) or [Fraction(0)]
        if not r1:
            raise ArithmeticError("modulus is not irreducible")  # cannot happen for cyclotomics
    c = r1[0]
    return field.from_coeffs([v / c for v in s1])


@lru_cache(maxsize=None)
def complex_context(precision: int = DEFAULT_PRECISION) -> mpmath.ctx_mp.MPContext:
    """An mpmath context with the given mantissa precision in bits."""
    ctx = mpmath.MPContext()
    ctx.prec = precision
    return ctx


def to_complex(x: CyclotomicNumber, precision: int = DEFAULT_PRECISION):
    """Embed via zeta -> exp(pi i / 2p); returns an mpmath ``mpc``."""
    ctx = complex_context(precision)
    total = ctx.mpc(0)
    order = x.field.order
    for j, v in enumerate(x.num):
        if v:
            total += v * ctx.expjpi(ctx.mpf(2 * j) / order)
    return total / x.den


def format_cyclotomic(x: CyclotomicNumber) -> str:
    """Canonical text ``c*z^j + ...`` with exact rational c; ``0`` for zero."""
    terms = []
    for j, c in enumerate(x.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        body = f"{mag}*z^{j}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)(?:\s*\*\s*z\s*\^\s*(-?\d+))?")


def parse_cyclotomic(text: str, p: int) -> CyclotomicNumber:
    """Inverse of the canonical text form (also accepts bare rationals as z^0 terms)."""
    text = text.strip()
    field = cyclotomic_field(p)
    if text == "0":
        return field.zero
    coeffs = [Fraction(0)] * field.order
    pos = 0
    for m in _TERM.finditer(text):
        if text[pos : m.start()].strip():
            raise ValueError(f"cannot parse cyclotomic text {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        j = int(m.group(3) or 0)
        coeffs[j % field.order] += sign * Fraction(m.group(2))
        pos = m.end()
    if text[pos:].strip() or pos == 0:
        raise ValueError(f"cannot parse cyclotomic text {text!r}")
    return field.from_coeffs(coeffs)


class ExactBackend:
    """Scalar operations for integral-weight modules (weights are ints)."""

    exact = True

    def __init__(self, p: int):
        self.p = p
        self.field = cyclotomic_field(p)
        self.zero = self.field.zero
        self.one = self.field.one

    @property
    def key(self):
        return ("exact", self.p)

    def scalar(self, x):
        return self.field.from_int(x) if not isinstance(x, CyclotomicNumber) else x

    def zeta(self, w) -> CyclotomicNumber:
        """zeta**w for an integer exponent."""
        return self.field.zeta(int(w))

    def qint(self, x) -> CyclotomicNumber:
        return quantum_integer(self.p, int(x))

    def weight(self, w):
        return int(w)

    def is_zero(self, x, tol=None) -> bool:
        return x.is_zero()

    def magnitude(self, x) -> float:
        return 0.0 if x.is_zero() else abs(complex(x))

    def to_complex(self, x, precision=DEFAULT_PRECISION):
        return to_complex(x, precision)


class ComplexBackend:
    """Scalar operations at fixed mpmath precision (weights may be complex)."""

    exact = False

    def __init__(self, p: int, precision: int = DEFAULT_PRECISION):
        self.p = p
        self.precision = precision
        self.ctx = complex_context(precision)
        self.zero = self.ctx.mpc(0)
        self.one = self.ctx.mpc(1)
        self._qden = self.ctx.sinpi(self.ctx.mpf(1) / p)

    @property
    def key(self):
        return ("complex", self.p, self.precision)

    def scalar(self, x):
        return self.ctx.mpc(x)

    def zeta(self, w):
        """exp(pi i w / 2p) for a (complex) exponent."""
        return self.ctx.expjpi(self.ctx.mpc(w) / (2 * self.p))

    def qint(self, x):
        return self.ctx.sinpi(self.ctx.mpc(x) / self.p) / self._qden

    def weight(self, w):
        return self.ctx.mpc(w)

    def is_zero(self, x, tol=0.0) -> bool:
        return abs(x) <= tol

    def magnitude(self, x) -> float:
        return float(abs(x))

    def to_complex(self, x, precision=None):
        return x


@lru_cache(maxsize=None)
def exact_backend(p: int) -> ExactBackend:
    return ExactBackend(p)


@lru_cache(maxsize=None)
def complex_backend(p: int, precision: int = DEFAULT_PRECISION) -> ComplexBackend:
    return ComplexBackend(p, precision)
