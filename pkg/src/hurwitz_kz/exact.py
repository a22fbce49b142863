"""Exact rational substrate: dense univariate polynomials over Q and Bernoulli data.

Rationals are :class:`fractions.Fraction`. Bernoulli numbers use the
``B_1 = -1/2`` convention, i.e. ``B_n = B_n(0)``; the ``+1/2`` convention
found elsewhere gives ``B_n(1)`` instead.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "RationalPoly",
    "as_rational",
    "bernoulli_number",
    "bernoulli_poly",
    "format_rational",
    "parse_rational",
]

Rational = Fraction
Number = Union[int, Fraction]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(s: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal such as ``"2.5"`` exactly."""
    s = s.strip()
    if not s:
        raise ValueError("empty rational string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {s!r}") from exc


def format_rational(q: Fraction) -> str:
    """Canonical ``"num/den"`` string; integers keep the ``/1``."""
    return f"{q.numerator}/{q.denominator}"


# --- Bernoulli numbers -------------------------------------------------------

_bern_table: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0 (m >= 1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    table = _bern_table
    if n < len(table):
        return table[n]
    with _bern_lock:
        while len(table) <= n:
            m = len(table)
            s = sum((comb(m + 1, j) * table[j] for j in range(m)), Fraction(0))
            table.append(-s / (m + 1))
    return table[n]


# --- polynomials -------------------------------------------------------------

class RationalPoly:
    """Dense polynomial in ``z`` over Q, coefficients in ascending degree.

    Instances are immutable and always canonical (no trailing zeros), so
    ``==`` is exact equality of polynomials.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [as_rational(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def constant(cls, a: Number) -> "RationalPoly":
        return cls([a])

    @classmethod
    def monomial(cls, n: int, a: Number = 1) -> "RationalPoly":
        return cls([0] * n + [a])

    @classmethod
    def z(cls) -> "RationalPoly":
        return cls([0, 1])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        # zero polynomial has degree -1
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, n: int) -> Fraction:
        if 0 <= n < len(self._c):
            return self._c[n]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == RationalPoly([other])._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPoly([other])
        raise TypeError(f"unsupported operand {other!r}")

    def __add__(self, other) -> "RationalPoly":
        try:
            q = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._c, q._c
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-x for x in self._c])

    def __sub__(self, other) -> "RationalPoly":
        try:
            q = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> "RationalPoly":
        return (-self) + other

    def __mul__(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            return RationalPoly([x * other for x in self._c])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return RationalPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            d = Fraction(other)
            return RationalPoly([x / d for x in self._c])
        return NotImplemented

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction points, float otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self._c):
                acc = acc * x + c
            return acc
        acc = 0.0
        for c in reversed(self._c):
            acc = acc * x + float(c)
        return acc

    def shift(self, h: Number = 1) -> "RationalPoly":
        """Return p(z + h) by binomial expansion."""
        h = as_rational(h)
        if h == 0 or not self._c:
            return self
        n = len(self._c)
        out = [Fraction(0)] * n
        for k, a in enumerate(self._c):
            if not a:
                continue
            hp = Fraction(1)
            # a * (z + h)^k = a * sum_j C(k, j) h^(k-j) z^j, walking j downwards
            for j in range(k, -1, -1):
                out[j] += a * comb(k, j) * hp
                hp *= h
        return RationalPoly(out)

    def __repr__(self) -> str:
        return f"RationalPoly({self.pretty()!r})"

    def __str__(self) -> str:
        return self.pretty()

    def pretty(self, var: str = "z", unicode: bool = True) -> str:
        """Human-readable form, highest degree first, e.g. ``z²/2 − 1/6``."""
        if not self._c:
            return "0"
        minus = "−" if unicode else "-"
        parts: list[tuple[bool, str]] = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            neg = c < 0
            num, den = abs(c.numerator), c.denominator
            if k == 0:
                body = str(num)
            else:
                mono = var if k == 1 else var + (_superscript(k) if unicode else f"^{k}")
                body = mono if num == 1 else f"{num}{mono}" if unicode else f"{num}*{mono}"
            if den != 1:
                body += f"/{den}"
            parts.append((neg, body))
        first_neg, first = parts[0]
        out = (minus if first_neg else "") + first
        for neg, body in parts[1:]:
            out += f" {minus} " if neg else " + "
            out += body
        return out


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _superscript(n: int) -> str:
    return str(n).translate(_SUP)


_bpoly_cache: dict[int, RationalPoly] = {}


def bernoulli_poly(n: int) -> RationalPoly:
    """B_n(z) = sum_j C(n, j) B_j z^(n-j)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    p = _bpoly_cache.get(n)
    if p is None:
        coeffs = [Fraction(0)] * (n + 1)
        for j in range(n + 1):
            coeffs[n - j] = comb(n, j) * bernoulli_number(j)
        p = _bpoly_cache.setdefault(n, RationalPoly(coeffs))
    return p


def poly_from_strings(coeffs: Sequence[str]) -> RationalPoly:
    return RationalPoly(parse_rational(s) for s in coeffs)
