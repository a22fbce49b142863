"""Truncated generating series H(z), H_B(z), their difference equations, and
finite-rank unipotent difference connections.

Rational functions appearing here only ever have a pole at z = 1, so they are
kept as :class:`Laurent` objects: a polynomial part plus constant
coefficients of ``(z-1)^{-k}``. That form is canonical, so equality of two
expressions is plain structural equality.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .exact import RationalPoly, as_rational
from .nmbp import NegTuple, nmbp
from .numeric import DEFAULT_TOL, hurwitz_polyzeta, regularized_numeric
from .words import Word, compositions, convergent, word_sort_key

__all__ = [
    "Laurent",
    "NCSeries",
    "UnipotentDiffConnection",
    "ConnectionPieces",
    "build_HB",
    "build_H_numeric",
    "check_flat_H",
    "check_flat_HB",
    "connection_apply",
    "independence_matrix",
    "leibniz_check",
    "leibniz_sides",
    "nabla_A",
    "psi_compat_check",
    "psi_v",
    "random_connection",
    "random_poly",
    "random_section",
    "random_series",
    "word_matrix",
]

POSITIVE = "positive"
NONPOSITIVE = "nonpositive"


# --- Laurent expressions in (z - 1) ---------------------------------------------

class Laurent:
    """p(z) + sum_k c_k (z-1)^{-k} with constant c_k, canonical."""

    __slots__ = ("poly", "poles")

    def __init__(self, poly: Optional[RationalPoly] = None, poles: Optional[Mapping[int, Fraction]] = None):
        self.poly = poly if poly is not None else RationalPoly()
        self.poles: Dict[int, Fraction] = {k: Fraction(c) for k, c in (poles or {}).items() if c}

    @classmethod
    def from_pole(cls, numerator: RationalPoly, order: int) -> "Laurent":
        """numerator(z) / (z-1)^order, expanded around z = 1."""
        if order <= 0:
            raise ValueError("pole order must be positive")
        g = numerator.shift(1).coeffs  # numerator as a polynomial in u = z - 1
        poles = {order - i: g[i] for i in range(min(order, len(g)))}
        rest = RationalPoly(g[order:]).shift(-1) if len(g) > order else RationalPoly()
        return cls(rest, poles)

    def __add__(self, other: "Laurent") -> "Laurent":
        poles = dict(self.poles)
        for k, c in other.poles.items():
            poles[k] = poles.get(k, Fraction(0)) + c
        return Laurent(self.poly + other.poly, poles)

    def __neg__(self) -> "Laurent":
        return Laurent(-self.poly, {k: -c for k, c in self.poles.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def scale(self, a) -> "Laurent":
        a = as_rational(a)
        return Laurent(self.poly * a, {k: c * a for k, c in self.poles.items()})

    def times_poly(self, f: RationalPoly) -> "Laurent":
        out = Laurent(self.poly * f)
        for k, c in self.poles.items():
            out = out + Laurent.from_pole(f * c, k)
        return out

    def is_zero(self) -> bool:
        return self.poly.is_zero() and not self.poles

    def __eq__(self, other) -> bool:
        if isinstance(other, Laurent):
            return self.poly == other.poly and self.poles == other.poles
        return NotImplemented

    def __repr__(self) -> str:
        parts = [] if self.poly.is_zero() else [f"({self.poly})"]
        parts += [f"{c}/(z-1)^{k}" for k, c in sorted(self.poles.items())]
        return "Laurent(" + (" + ".join(parts) or "0") + ")"


LaurentVector = Tuple[Laurent, ...]
VectorSection = Tuple[RationalPoly, ...]


def _lv_add(a: LaurentVector, b: LaurentVector) -> LaurentVector:
    return tuple(x + y for x, y in zip(a, b))


def _lv_from_polys(v: Sequence[RationalPoly]) -> LaurentVector:
    return tuple(Laurent(p) for p in v)


# --- series ---------------------------------------------------------------------

Coefficient = Union[RationalPoly, float]


@dataclass
class NCSeries:
    """Truncated non-commutative series.

    ``alphabet="positive"`` words are index words truncated by weight;
    ``alphabet="nonpositive"`` words are magnitude tuples truncated by
    ``(max_depth, max_index)``.
    """

    alphabet: str
    coeffs: Dict[tuple, Coefficient]
    truncation: Dict[str, int]

    def __post_init__(self):
        if self.alphabet not in (POSITIVE, NONPOSITIVE):
            raise ValueError(f"unknown alphabet {self.alphabet!r}")
        if () not in self.coeffs:
            raise ValueError("series must carry the unit-word coefficient")
        for w in self.coeffs:
            if not self.within(w):
                raise ValueError(f"word {w} violates truncation {self.truncation}")

    def within(self, w: tuple) -> bool:
        if self.alphabet == POSITIVE:
            return all(k >= 1 for k in w) and sum(w) <= self.truncation["max_weight"]
        return (all(k >= 0 for k in w) and len(w) <= self.truncation["max_depth"]
                and all(k <= self.truncation["max_index"] for k in w))

    def __getitem__(self, w) -> Coefficient:
        return self.coeffs[tuple(w)]

    def get(self, w, default=None):
        return self.coeffs.get(tuple(w), default)

    def words(self) -> List[tuple]:
        return sorted(self.coeffs, key=word_sort_key)

    def __len__(self) -> int:
        return len(self.coeffs)


def _neg_tuples(max_depth: int, max_index: int):
    for depth in range(max_depth + 1):
        yield from itertools.product(range(max_index + 1), repeat=depth)


def build_HB(max_depth: int, max_index: int) -> NCSeries:
    """H_B truncated: coefficient of Y_{-k_1}...Y_{-k_r} is zeta(-k_1, ..., -k_r|z)."""
    if max_depth < 0 or max_index < 0:
        raise ValueError("bounds must be non-negative")
    coeffs: Dict[tuple, Coefficient] = {(): RationalPoly([1])}
    for t in _neg_tuples(max_depth, max_index):
        if t:
            coeffs[t] = nmbp(t)
    return NCSeries(NONPOSITIVE, coeffs, {"max_depth": max_depth, "max_index": max_index})


def check_flat_HB(series: NCSeries) -> List[dict]:
    """Per word: H_B(z+1) - H_B(z) = -sum_k Y_{-k} z^k H_B(z+1), coefficientwise."""
    if series.alphabet != NONPOSITIVE:
        raise ValueError("check_flat_HB needs a non-positive-alphabet series")
    out = []
    for w in series.words():
        f = series[w]
        lhs = f.shift(1) - f
        if w:
            rhs = -(RationalPoly.monomial(w[0]) * series[w[1:]].shift(1))
        else:
            rhs = RationalPoly()
        out.append({"word": w, "lhs": lhs, "rhs": rhs, "pass": lhs == rhs})
    return out


def build_H_numeric(z: float, weight_bound: int, tol: float = DEFAULT_TOL) -> NCSeries:
    """H(z) truncated by weight; divergent words via stuffle regularization."""
    z = float(z)
    if not z > 0:
        raise ValueError(f"z must be positive, got {z}")
    coeffs: Dict[tuple, Coefficient] = {(): 1.0}
    for wt in range(1, weight_bound + 1):
        for w in compositions(wt):
            coeffs[w] = hurwitz_polyzeta(w, z, tol) if convergent(w) else regularized_numeric(w, z, tol)
    return NCSeries(POSITIVE, coeffs, {"max_weight": weight_bound})


def flat_H_residuals(series: NCSeries, previous: NCSeries, z: float) -> Dict[tuple, float]:
    """Per word: H(z) - H(z-1) + sum_k (z-1)^{-k} Y_k H(z), coefficientwise."""
    out = {}
    zm1 = float(z) - 1.0
    for w in series.words():
        r = series[w] - previous[w]
        if w:
            r += zm1 ** (-w[0]) * series[w[1:]]
        out[w] = abs(r)
    return out


def check_flat_H(series: NCSeries, z: float, previous: Optional[NCSeries] = None,
                 tol: float = DEFAULT_TOL) -> float:
    """Max residual of D_- H(z) = -sum_k Y_k/(z-1)^k H(z) over stored words."""
    if series.alphabet != POSITIVE:
        raise ValueError("check_flat_H needs a positive-alphabet series")
    if previous is None:
        previous = build_H_numeric(float(z) - 1.0, series.truncation["max_weight"], tol)
    return max(flat_H_residuals(series, previous, z).values())


# --- connections ----------------------------------------------------------------

Matrix = Tuple[Tuple[Fraction, ...], ...]


def _as_matrix(m, rank: int) -> Matrix:
    rows = tuple(tuple(as_rational(x) for x in row) for row in m)
    if len(rows) != rank or any(len(r) != rank for r in rows):
        raise ValueError(f"matrix is not {rank}x{rank}")
    return rows


def _zero_like(x):
    if isinstance(x, Laurent):
        return Laurent()
    if isinstance(x, RationalPoly):
        return RationalPoly()
    return Fraction(0)


def _mat_vec(m: Matrix, v: Sequence):
    out = []
    for row in m:
        acc = _zero_like(v[0])
        for a, x in zip(row, v):
            if a:
                term = x * a if not isinstance(x, Laurent) else x.scale(a)
                acc = acc + term
        out.append(acc)
    return out


@dataclass
class UnipotentDiffConnection:
    """D^- - I - sum_k N_k/(z-1)^k on M_0^rank with strictly upper triangular N_k."""

    rank: int
    matrices: Dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        mats = {}
        for k, m in self.matrices.items():
            k = int(k)
            if k < 1:
                raise ValueError("matrix indices start at 1")
            m = _as_matrix(m, self.rank)
            if any(m[i][j] for i in range(self.rank) for j in range(i + 1)):
                raise ValueError(f"N_{k} is not strictly upper triangular")
            if any(any(row) for row in m):
                mats[k] = m
        self.matrices = mats

    @property
    def cutoff(self) -> int:
        return max(self.matrices, default=0)

    def apply_matrix(self, k: int, v: Sequence):
        m = self.matrices.get(k)
        if m is None:
            return None
        return _mat_vec(m, v)


def word_matrix(conn: UnipotentDiffConnection, w: Sequence[int]) -> Matrix:
    """N_w = N_{i_1} ... N_{i_r}; identity for the unit word."""
    r = conn.rank
    m = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    for k in w:
        n = conn.matrices.get(k)
        if n is None:
            return tuple(tuple(Fraction(0) for _ in range(r)) for _ in range(r))
        m = [[sum((m[i][l] * n[l][j] for l in range(r)), Fraction(0)) for j in range(r)] for i in range(r)]
    return tuple(tuple(row) for row in m)


def _apply_word(conn: UnipotentDiffConnection, w: Sequence[int], v: Sequence):
    """N_w v, applying the rightmost letter first; None when it vanishes identically."""
    cur = list(v)
    for k in reversed(w):
        cur = conn.apply_matrix(k, cur)
        if cur is None:
            return None
    return cur


@dataclass
class ConnectionPieces:
    """The three parts of (D^- - I - sum_k N_k (z-1)^{-k}) s."""

    shifted: VectorSection            # s(z-1)
    negated: VectorSection            # -s(z)
    pole: Dict[int, VectorSection]    # k -> numerator of the (z-1)^{-k} term

    def total(self) -> LaurentVector:
        out = _lv_add(_lv_from_polys(self.shifted), _lv_from_polys(self.negated))
        for k, num in self.pole.items():
            out = _lv_add(out, tuple(Laurent.from_pole(p, k) for p in num))
        return out


def _check_section(conn: UnipotentDiffConnection, s: Sequence[RationalPoly]) -> VectorSection:
    s = tuple(s)
    if len(s) != conn.rank:
        raise ValueError(f"section has length {len(s)}, connection rank is {conn.rank}")
    return s


def connection_apply(conn: UnipotentDiffConnection, s: Sequence[RationalPoly]) -> ConnectionPieces:
    s = _check_section(conn, s)
    pole = {}
    for k in sorted(conn.matrices):
        pole[k] = tuple(-p for p in conn.apply_matrix(k, s))
    return ConnectionPieces(
        shifted=tuple(p.shift(-1) for p in s),
        negated=tuple(-p for p in s),
        pole=pole,
    )


def _nabla(conn, s) -> LaurentVector:
    return connection_apply(conn, s).total()


def leibniz_sides(conn: UnipotentDiffConnection, f: RationalPoly, s: Sequence[RationalPoly],
                  form: str = "corrected") -> Tuple[LaurentVector, LaurentVector]:
    """Both sides of the twisted Leibniz rule for nabla(f s).

    ``form="corrected"``: nabla(f s) = (-D_- f)(D^- s) + f nabla(s), which is
    what expanding the connection gives. ``form="printed"``:
    D^- f (-D_- s) + f nabla(s), with the two shift operators swapped; kept
    to exhibit that it fails in general (already for f = 1 with a
    non-constant section, or f = z with a constant one).
    """
    s = _check_section(conn, s)
    lhs = _nabla(conn, tuple(f * p for p in s))
    f_nabla_s = tuple(x.times_poly(f) for x in _nabla(conn, s))
    f_prev = f.shift(-1)
    if form == "corrected":
        d_minus_f = f - f_prev
        extra = tuple(Laurent(-(d_minus_f * p.shift(-1))) for p in s)
    elif form == "printed":
        extra = tuple(Laurent(-(f_prev * (p - p.shift(-1)))) for p in s)
    else:
        raise ValueError("form must be 'corrected' or 'printed'")
    return lhs, _lv_add(extra, f_nabla_s)


def leibniz_check(conn: UnipotentDiffConnection, f: RationalPoly, s: Sequence[RationalPoly],
                  form: str = "corrected") -> bool:
    lhs, rhs = leibniz_sides(conn, f, s, form)
    return lhs == rhs


def _check_vector(conn, v) -> Tuple[Fraction, ...]:
    v = tuple(as_rational(x) for x in v)
    if len(v) != conn.rank:
        raise ValueError(f"vector has length {len(v)}, connection rank is {conn.rank}")
    return v


def psi_v(conn: UnipotentDiffConnection, v: Sequence, s: NCSeries) -> VectorSection:
    """sum_w f_w(z) N_w v."""
    v = _check_vector(conn, v)
    if s.alphabet != POSITIVE:
        raise ValueError("psi_v acts on positive-alphabet series")
    acc = [RationalPoly() for _ in range(conn.rank)]
    for w in s.words():
        nv = _apply_word(conn, w, v)
        if nv is None:
            continue
        f = s[w]
        for i, a in enumerate(nv):
            if a:
                acc[i] = acc[i] + f * a
    return tuple(acc)


def nabla_A(s: NCSeries, length_bound: int, max_letter: int) -> Dict[tuple, Laurent]:
    """The universal connection on series truncated to words of length <= length_bound.

    Coefficient of [w]: f_w(z-1) - f_w(z) - sum over w = Y_k w' of
    f_{w'}(z)/(z-1)^k, letters k running over 1..max_letter.
    """
    out: Dict[tuple, Laurent] = {}

    def add(w, x: Laurent):
        out[w] = out[w] + x if w in out else x

    for w in s.words():
        if len(w) > length_bound:
            continue
        f = s[w]
        add(w, Laurent(f.shift(-1) - f))
        if len(w) + 1 <= length_bound:
            for k in range(1, max_letter + 1):
                add((k,) + w, -Laurent.from_pole(f, k))
    return {w: x for w, x in out.items() if not x.is_zero()}


def psi_compat_sides(conn: UnipotentDiffConnection, v: Sequence, s: NCSeries,
                     length_bound: int) -> Tuple[LaurentVector, LaurentVector]:
    """(psi(nabla_A s), nabla_alg(psi s))."""
    v = _check_vector(conn, v)
    na = nabla_A(s, length_bound, max(conn.cutoff, 1))
    lhs = tuple(Laurent() for _ in range(conn.rank))
    for w, coeff in na.items():
        nv = _apply_word(conn, w, v)
        if nv is None:
            continue
        lhs = _lv_add(lhs, tuple(coeff.scale(a) if a else Laurent() for a in nv))
    rhs = _nabla(conn, psi_v(conn, v, s))
    return lhs, rhs


def psi_compat_check(conn: UnipotentDiffConnection, v: Sequence, s: NCSeries, length_bound: int) -> bool:
    """psi ∘ nabla_A == nabla_alg ∘ psi on a truncated series.

    Holds whenever length_bound >= rank - 1: the truncation then only drops
    words that strictly upper triangular matrices annihilate.
    """
    lhs, rhs = psi_compat_sides(conn, v, s, length_bound)
    return lhs == rhs


# --- random instances -------------------------------------------------------------

def _rand_q(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def random_connection(rng: random.Random, rank: int, cutoff: int) -> UnipotentDiffConnection:
    mats = {}
    for k in range(1, cutoff + 1):
        mats[k] = [[_rand_q(rng) if j > i else 0 for j in range(rank)] for i in range(rank)]
    return UnipotentDiffConnection(rank, mats)


def random_poly(rng: random.Random, degree: int) -> RationalPoly:
    return RationalPoly(_rand_q(rng) for _ in range(degree + 1))


def random_section(rng: random.Random, rank: int, degree: int = 3) -> VectorSection:
    return tuple(random_poly(rng, rng.randint(0, degree)) for _ in range(rank))


def random_series(rng: random.Random, weight_bound: int, degree: int = 2, density: float = 0.6) -> NCSeries:
    coeffs: Dict[tuple, Coefficient] = {(): random_poly(rng, degree)}
    for wt in range(1, weight_bound + 1):
        for w in compositions(wt):
            if rng.random() < density:
                coeffs[w] = random_poly(rng, degree)
    return NCSeries(POSITIVE, coeffs, {"max_weight": weight_bound})


# --- independence heuristic -------------------------------------------------------

def independence_matrix(words: Sequence[Word], zs: Sequence[float], tol: float = 1e-12) -> np.ndarray:
    """Rows: words; columns: sample points; entries zeta(w|z)."""
    if len(set(map(tuple, words))) != len(words):
        raise ValueError("words must be distinct")
    if len(set(zs)) != len(zs):
        raise ValueError("sample points must be distinct")
    return np.array([[hurwitz_polyzeta(w, z, tol) for z in zs] for w in words])
