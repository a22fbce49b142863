"""Index words, the stuffle (quasi-shuffle) product, its dual coproduct, and
stuffle regularization of words ending in ``y_1``.

A word ``(k_1, ..., k_r)`` stands for ``y_{k_1} ... y_{k_r}`` and, through the
Hurwitz polyzeta homomorphism, for ``zeta(k_1, ..., k_r | z)`` with the tuple
order as written in ``sum_{0 <= n_1 < ... < n_r}``.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

__all__ = [
    "Word",
    "LinComb",
    "TensorLinComb",
    "RegElement",
    "compositions",
    "convergent",
    "coproduct",
    "duality_pairing",
    "duality_pairing_check",
    "format_lincomb",
    "format_word",
    "iterated_coproduct",
    "parse_word",
    "regularize_lincomb",
    "stuffle",
    "stuffle_regularize",
    "weight",
    "word_sort_key",
]

Word = Tuple[int, ...]
UNIT: Word = ()


def weight(w: Word) -> int:
    return sum(w)


def convergent(w: Word) -> bool:
    """True for the empty word and for words whose last index is at least 2."""
    return not w or w[-1] >= 2


def word_sort_key(w: Word) -> tuple:
    return (sum(w), len(w), w)


def check_word(w: Iterable[int]) -> Word:
    w = tuple(int(k) for k in w)
    if any(k < 1 for k in w):
        raise ValueError(f"word indices must be positive integers, got {w}")
    return w


def parse_word(s: str) -> Word:
    """Parse ``"(2,1,1)"``, ``"2,1,1"`` or ``"()"``."""
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    s = s.strip()
    if not s:
        return UNIT
    return check_word(int(p) for p in s.split(","))


def format_word(w: Word) -> str:
    return "(" + ",".join(str(k) for k in w) + ")"


def format_lincomb(lc: "LinComb") -> str:
    """``2·(1,1) + (2)`` style; unit coefficients are dropped."""
    out = ""
    for w, c in lc.items():
        sign = "−" if c < 0 else "+"
        a = abs(c)
        body = format_word(w) if a == 1 else f"{a}·{format_word(w)}"
        out = (f"{'−' if c < 0 else ''}{body}" if not out else f"{out} {sign} {body}")
    return out or "0"


def compositions(total: int) -> Iterator[Word]:
    """All words of the given weight (compositions of ``total``)."""
    if total == 0:
        yield UNIT
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


# --- linear combinations ------------------------------------------------------

class LinComb:
    """Finite Q-linear combination of words; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[Word, object], Iterable[Tuple[Word, object]], None] = None):
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                acc[tuple(w)] += Fraction(c)
        self.terms: Dict[Word, Fraction] = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, w: Iterable[int], coeff=1) -> "LinComb":
        return cls({tuple(w): coeff})

    def coeff(self, w: Word) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: word_sort_key(kv[0]))

    def words(self):
        return [w for w, _ in self.items()]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return LinComb(out)

    def __neg__(self) -> "LinComb":
        return LinComb({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __rmul__(self, scalar) -> "LinComb":
        s = Fraction(scalar)
        return LinComb({w: s * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LinComb):
            return stuffle(self, other)
        return self.__rmul__(other)

    def __repr__(self) -> str:
        if not self.terms:
            return "LinComb(0)"
        return "LinComb(" + " + ".join(f"{c}*{format_word(w)}" for w, c in self.items()) + ")"


class TensorLinComb:
    """Finite Q-linear combination of pairs of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[Tuple[Word, Word], object], None] = None):
        self.terms: Dict[Tuple[Word, Word], Fraction] = {
            (tuple(a), tuple(b)): Fraction(c) for (a, b), c in (terms or {}).items() if c
        }

    def coeff(self, left: Word, right: Word) -> Fraction:
        return self.terms.get((tuple(left), tuple(right)), Fraction(0))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (word_sort_key(kv[0][0]), word_sort_key(kv[0][1])))

    def __eq__(self, other) -> bool:
        if isinstance(other, TensorLinComb):
            return self.terms == other.terms
        return NotImplemented

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return "TensorLinComb(" + " + ".join(
            f"{c}*{format_word(a)}⊗{format_word(b)}" for (a, b), c in self.items()) + ")"


# --- stuffle product ----------------------------------------------------------

@lru_cache(maxsize=None)
def _stuffle_words(u: Word, v: Word) -> Tuple[Tuple[Word, int], ...]:
    # y_k w * y_k' w' = y_k (w * y_k' w') + y_k' (y_k w * w') + y_{k+k'} (w * w')
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Dict[Word, int] = defaultdict(int)
    k, w = u[0], u[1:]
    kk, ww = v[0], v[1:]
    for x, c in _stuffle_words(w, v):
        acc[(k,) + x] += c
    for x, c in _stuffle_words(u, ww):
        acc[(kk,) + x] += c
    for x, c in _stuffle_words(w, ww):
        acc[(k + kk,) + x] += c
    return tuple(acc.items())


def _as_lincomb(a) -> LinComb:
    if isinstance(a, LinComb):
        return a
    return LinComb.word(a)


def stuffle(a, b) -> LinComb:
    """Stuffle product of two words or linear combinations (bilinear)."""
    a, b = _as_lincomb(a), _as_lincomb(b)
    acc: Dict[Word, Fraction] = defaultdict(Fraction)
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            for x, c in _stuffle_words(u, v):
                acc[x] += cu * cv * c
    return LinComb(acc)


# --- coproduct ----------------------------------------------------------------

def _letter_coproduct(k: int):
    # Y_0 is read as the empty word
    return [(((i,) if i else ()), ((k - i,) if k - i else ())) for i in range(k + 1)]


@lru_cache(maxsize=None)
def _coproduct_word(w: Word) -> Tuple[Tuple[Tuple[Word, Word], int], ...]:
    acc: Dict[Tuple[Word, Word], int] = defaultdict(int)
    for choice in itertools.product(*(_letter_coproduct(k) for k in w)):
        left = tuple(itertools.chain.from_iterable(c[0] for c in choice))
        right = tuple(itertools.chain.from_iterable(c[1] for c in choice))
        acc[(left, right)] += 1
    return tuple(acc.items())


def coproduct(w: Word) -> TensorLinComb:
    """Delta(Y_k) = sum_{i+j=k} Y_i ⊗ Y_j (Y_0 = 1), multiplicative over concatenation."""
    return TensorLinComb(dict(_coproduct_word(tuple(w))))


def iterated_coproduct(w: Word, side: str) -> Dict[Tuple[Word, Word, Word], Fraction]:
    """(Delta ⊗ id) Delta (``side="left"``) or (id ⊗ Delta) Delta (``side="right"``)."""
    acc: Dict[Tuple[Word, Word, Word], Fraction] = defaultdict(Fraction)
    for (a, b), c in _coproduct_word(tuple(w)):
        if side == "left":
            for (a1, a2), c2 in _coproduct_word(a):
                acc[(a1, a2, b)] += c * c2
        elif side == "right":
            for (b1, b2), c2 in _coproduct_word(b):
                acc[(a, b1, b2)] += c * c2
        else:
            raise ValueError("side must be 'left' or 'right'")
    return {k: v for k, v in acc.items() if v}


def duality_pairing(w1: Word, w2: Word, W: Word) -> Tuple[Fraction, Fraction]:
    """(coefficient of w1⊗w2 in Delta(W), coefficient of W in w1 * w2)."""
    return coproduct(W).coeff(w1, w2), stuffle(w1, w2).coeff(W)


def duality_pairing_check(w1: Word, w2: Word, W: Word) -> bool:
    lhs, rhs = duality_pairing(w1, w2, W)
    return lhs == rhs


# --- regularization -----------------------------------------------------------

class RegElement:
    """Polynomial in T = zeta(1|z) with LinComb coefficients of convergent words."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Union[Mapping[int, LinComb], None] = None):
        self.coeffs: Dict[int, LinComb] = {
            int(d): lc for d, lc in (coeffs or {}).items() if not lc.is_zero()
        }
        for lc in self.coeffs.values():
            bad = [w for w in lc.terms if not convergent(w)]
            if bad:
                raise ValueError(f"non-convergent words in a regularized element: {bad}")

    @classmethod
    def constant(cls, lc: LinComb) -> "RegElement":
        return cls({0: lc})

    def __getitem__(self, d: int) -> LinComb:
        return self.coeffs.get(d, LinComb())

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, RegElement):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __add__(self, other: "RegElement") -> "RegElement":
        out = dict(self.coeffs)
        for d, lc in other.coeffs.items():
            out[d] = out[d] + lc if d in out else lc
        return RegElement(out)

    def __neg__(self) -> "RegElement":
        return RegElement({d: -lc for d, lc in self.coeffs.items()})

    def __sub__(self, other: "RegElement") -> "RegElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "RegElement":
        return RegElement({d: scalar * lc for d, lc in self.coeffs.items()})

    def times_T(self, power: int = 1) -> "RegElement":
        return RegElement({d + power: lc for d, lc in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, RegElement):
            return self.__rmul__(other)
        out: Dict[int, LinComb] = {}
        for d1, a in self.coeffs.items():
            for d2, b in other.coeffs.items():
                p = stuffle(a, b)
                out[d1 + d2] = out[d1 + d2] + p if d1 + d2 in out else p
        return RegElement(out)

    def __repr__(self) -> str:
        parts = [f"T^{d}: {self.coeffs[d]!r}" for d in sorted(self.coeffs)]
        return "RegElement(" + ", ".join(parts) + ")"


def _trailing_ones(w: Word) -> int:
    n = 0
    for k in reversed(w):
        if k != 1:
            break
        n += 1
    return n


@lru_cache(maxsize=None)
def _regularize(w: Word) -> RegElement:
    if convergent(w):
        return RegElement.constant(LinComb.word(w))
    # U * y_1 = (m+1) U y_1 + (terms with fewer trailing 1s or the same count as U)
    u = w[:-1]
    prod = stuffle(u, (1,))
    mult = prod.coeff(w)
    others = prod - mult * LinComb.word(w)
    acc = _regularize(u).times_T()
    for x, c in others.terms.items():
        acc = acc - c * _regularize(x)
    return Fraction(1, int(mult)) * acc


def stuffle_regularize(w: Iterable[int]) -> RegElement:
    """Write ``w`` as a polynomial in T = y_1 over convergent words.

    The map fixes convergent words, sends ``(1,)`` to ``T`` and is a stuffle
    homomorphism, which determines it uniquely.
    """
    return _regularize(check_word(w))


def regularize_lincomb(lc: LinComb) -> RegElement:
    acc = RegElement()
    for w, c in lc.terms.items():
        acc = acc + c * _regularize(w)
    return acc
