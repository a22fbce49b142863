"""Floating-point Hurwitz polyzeta values, digamma, and regularized values.

Convergent words are evaluated by running the difference equation
``G(x) = G(x+1) + x^{-k_1} G'(x+1)`` backwards from a large argument
``X = z + N``, where every suffix function has an asymptotic expansion in
``1/X`` with exact rational coefficients. The expansion for ``w = (k, rest)``
comes from the one for ``rest`` (shifted by one), multiplied by ``X^{-k}``,
then summed term by term with the depth-one Euler–Maclaurin series of
``zeta(p|X)``. For convergent words no logarithms appear.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence, Tuple

import numpy as np

from .exact import bernoulli_number
from .words import Word, check_word, convergent, stuffle_regularize

__all__ = [
    "EvalRequest",
    "EvalResult",
    "difference_residual",
    "digamma",
    "evaluate",
    "hurwitz_polyzeta",
    "regularized_numeric",
    "zeta_one",
]

DEFAULT_TOL = 1e-8
# order of the asymptotic expansions, in powers of 1/X beyond the leading one
_ORDER = 48
_MIN_X = 24.0

_DIGAMMA_SHIFT = 12.0
_DIGAMMA_TERMS = 10


def digamma(x: float) -> float:
    """psi(x) for x > 0: upward recurrence, then the Bernoulli asymptotic series."""
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise ValueError(f"digamma needs a finite x > 0, got {x}")
    acc = 0.0
    while x < _DIGAMMA_SHIFT:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for k in range(1, _DIGAMMA_TERMS + 1):
        series += float(bernoulli_number(2 * k)) / (2 * k) * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series


def zeta_one(z: float) -> float:
    """Regularized zeta(1|z) = -psi(z)."""
    return -digamma(z)


# --- exact asymptotic expansions ----------------------------------------------

# An expansion is a tuple c with G(X) ~ sum_p c[p] X^{-p}, p = 0.._ORDER + lead.

def _shift_one(c: Sequence[Fraction], size: int) -> list[Fraction]:
    # (X+1)^{-p} = sum_i C(-p, i) X^{-p-i}
    out = [Fraction(0)] * size
    for p, a in enumerate(c):
        if not a:
            continue
        if p == 0:
            out[0] += a
            continue
        for i in range(0, size - p):
            out[p + i] += a * ((-1) ** i) * comb(p + i - 1, i)
    return out


@lru_cache(maxsize=None)
def _hurwitz_single_expansion(p: int, size: int) -> Tuple[Fraction, ...]:
    # zeta(p|X) ~ X^{1-p}/(p-1) + X^{-p}/2 + sum_j B_2j/(2j)! (p)_{2j-1} X^{-p-2j+1}
    out = [Fraction(0)] * size
    if p - 1 < size:
        out[p - 1] += Fraction(1, p - 1)
    if p < size:
        out[p] += Fraction(1, 2)
    j = 1
    while p + 2 * j - 1 < size:
        rising = 1
        for i in range(2 * j - 1):
            rising *= p + i
        out[p + 2 * j - 1] += bernoulli_number(2 * j) * rising / factorial(2 * j)
        j += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _expansion(w: Word, size: int) -> Tuple[Fraction, ...]:
    if not w:
        return (Fraction(1),) + (Fraction(0),) * (size - 1)
    k, rest = w[0], w[1:]
    inner = _shift_one(_expansion(rest, size), size)
    # f(X) = X^{-k} G_rest(X+1); its lowest power is >= 2 for convergent w
    f = [Fraction(0)] * size
    for p, a in enumerate(inner):
        if a and p + k < size:
            f[p + k] += a
    out = [Fraction(0)] * size
    for p, a in enumerate(f):
        if not a:
            continue
        if p < 2:
            raise ArithmeticError(f"divergent suffix in {w}")
        for q, b in enumerate(_hurwitz_single_expansion(p, size)):
            if b:
                out[q] += a * b
    return tuple(out)


@lru_cache(maxsize=None)
def _float_expansion(w: Word) -> np.ndarray:
    size = sum(w) - len(w) + _ORDER + 1
    return np.array([float(c) for c in _expansion(w, size)])


def _eval_expansion(w: Word, x: float) -> Tuple[float, float]:
    """Value of the asymptotic series at x and the size of its last term."""
    c = _float_expansion(w)
    powers = x ** -np.arange(len(c), dtype=float)
    terms = c * powers
    return float(terms[::-1].sum()), float(abs(terms[-1]))


# --- evaluation -----------------------------------------------------------------

@dataclass(frozen=True)
class EvalRequest:
    word: Word
    z: float
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "word", check_word(self.word))
        if not (0 < self.tol < 1):
            raise ValueError("tol must lie in (0, 1)")
        if not self.z > 0:
            raise ValueError(f"z must be positive, got {self.z}")


@dataclass(frozen=True)
class EvalResult:
    value: float
    tol: float
    terms_used: int
    error_estimate: float

    def to_json(self) -> dict:
        return {"value": self.value, "tol": self.tol, "terms_used": self.terms_used}


def evaluate(req: EvalRequest) -> EvalResult:
    """zeta(k_1, ..., k_r | z) for a convergent word and real z > 0."""
    w, z, tol = req.word, float(req.z), req.tol
    if not convergent(w):
        raise ValueError(f"word {w} does not converge (last index must be >= 2); regularize it instead")
    if not w:
        return EvalResult(1.0, tol, 0, 0.0)
    n_shift = max(0, math.ceil(_MIN_X - z))
    while True:
        x_big = z + n_shift
        # G_j at x_big for every suffix, then backwards to z
        r = len(w)
        nodes = z + np.arange(n_shift + 1, dtype=float)
        g_next = np.ones(n_shift + 1)
        err = 0.0
        for j in range(r - 1, -1, -1):
            top, last = _eval_expansion(w[j:], x_big)
            err = max(err, last)
            g = np.empty(n_shift + 1)
            g[-1] = top
            if n_shift:
                incr = nodes[:-1] ** (-w[j]) * g_next[1:]
                g[:-1] = top + np.cumsum(incr[::-1])[::-1]
            g_next = g
        value = float(g_next[0])
        if err <= tol * max(abs(value), 1e-300) * 1e-3 or n_shift > 4096:
            return EvalResult(value, tol, n_shift + len(_float_expansion(w)), err)
        n_shift = 2 * n_shift + 16


def hurwitz_polyzeta(word: Sequence[int], z: float, tol: float = DEFAULT_TOL) -> float:
    return evaluate(EvalRequest(tuple(word), float(z), tol)).value


def regularized_numeric(word: Sequence[int], z: float, tol: float = DEFAULT_TOL) -> float:
    """Stuffle-regularized zeta(w|z) with T = zeta(1|z) = -psi(z)."""
    z = float(z)
    if not z > 0:
        raise ValueError(f"z must be positive, got {z}")
    reg = stuffle_regularize(word)
    t = zeta_one(z)
    total = 0.0
    for d, lc in reg.coeffs.items():
        part = sum(float(c) * hurwitz_polyzeta(u, z, tol) for u, c in lc.terms.items())
        total += part * t**d
    return total


def difference_residual(word: Sequence[int], z: float, tol: float = DEFAULT_TOL) -> float:
    """|zeta(w|z+1) - zeta(w|z) + z^{-k_1} zeta(w'|z+1)| with regularized values."""
    w = check_word(word)
    if not w:
        raise ValueError("difference equation needs a non-empty word")
    z = float(z)
    lhs = regularized_numeric(w, z + 1, tol) - regularized_numeric(w, z, tol)
    rhs = -(z ** -w[0]) * regularized_numeric(w[1:], z + 1, tol)
    return abs(lhs - rhs)
