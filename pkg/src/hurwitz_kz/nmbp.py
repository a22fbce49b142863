"""Normalized multiple Bernoulli polynomials and regularized zeta values at
non-positive integers.

Tuples are stored as magnitudes: ``(k_1, ..., k_r)`` means the arguments
``(-k_1, ..., -k_r)``. Signed forms only appear at the CLI/JSON boundary.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Tuple

from .exact import RationalPoly, as_rational, bernoulli_number, bernoulli_poly, format_rational

__all__ = [
    "NegTuple",
    "IdentityBounds",
    "bernoulli_transform",
    "check_neg_tuple",
    "from_signed",
    "identity_suite",
    "mzv_neg",
    "nmbp",
    "nmbp_closed_form",
    "solve_difference",
    "to_signed",
    "verify_b0",
    "zeta_neg_single",
]

NegTuple = Tuple[int, ...]


def check_neg_tuple(t: Iterable[int], allow_empty: bool = False) -> NegTuple:
    t = tuple(int(k) for k in t)
    if not t and not allow_empty:
        raise ValueError("tuple must be non-empty")
    if any(k < 0 for k in t):
        raise ValueError(f"magnitudes must be non-negative, got {t}")
    return t


def from_signed(values: Iterable[int]) -> NegTuple:
    """External signed form ``[0, -3, -1]`` to internal magnitudes ``(0, 3, 1)``."""
    values = tuple(int(v) for v in values)
    if any(v > 0 for v in values):
        raise ValueError(f"entries must be non-positive integers, got {values}")
    return tuple(-v for v in values)


def to_signed(t: NegTuple) -> list[int]:
    return [-k for k in t]


def zeta_neg_single(k: int) -> RationalPoly:
    """zeta(-k|z) = -B_{k+1}(z)/(k+1)."""
    return -bernoulli_poly(k + 1) / (k + 1)


def bernoulli_transform(f: RationalPoly) -> RationalPoly:
    """f(B)(z): replace each z^n in f by B_{n+1}(z)/(n+1)."""
    out = RationalPoly()
    for n, a in enumerate(f.coeffs):
        if a:
            out = out + bernoulli_poly(n + 1) * (a / (n + 1))
    return out


def solve_difference(q: RationalPoly) -> RationalPoly:
    """Polynomial u with u(z+1) - u(z) = q(z), Bernoulli-normalized.

    z^n on the right maps to B_{n+1}(z)/(n+1) with no added constant, so
    ``q = -z^n`` returns exactly zeta(-n|z).
    """
    return bernoulli_transform(q)


@lru_cache(maxsize=None)
def _nmbp(t: NegTuple) -> RationalPoly:
    if len(t) == 1:
        return zeta_neg_single(t[0])
    tail = _nmbp(t[1:]).shift(1)
    return solve_difference(-(RationalPoly.monomial(t[0]) * tail))


def nmbp(t: Iterable[int]) -> RationalPoly:
    """zeta(-k_1, ..., -k_r | z) from the difference system, solved depth by depth."""
    return _nmbp(check_neg_tuple(t))


def _rising(a: int, q: int) -> int:
    out = 1
    for i in range(q):
        out *= a + i
    return out


@lru_cache(maxsize=None)
def _closed_form(t: NegTuple) -> RationalPoly:
    if len(t) == 1:
        return zeta_neg_single(t[0])
    *prefix, last_prev, kr = t
    prefix = tuple(prefix)
    merged = last_prev + kr

    def sub(m: int) -> RationalPoly:
        return _closed_form(prefix + (m,))

    out = sub(merged + 1) * Fraction(-1, kr + 1) - sub(merged) * Fraction(1, 2)
    for q in range(1, kr + 1):
        b = bernoulli_number(q + 1)
        if b:
            out = out + sub(merged - q) * (_rising(-kr, q) * b / factorial(q + 1))
    return out


def nmbp_closed_form(t: Iterable[int]) -> RationalPoly:
    """Independent closed-form recursion in the last two slots.

    Merges ``k_{r-1}`` and ``k_r`` into one slot of the depth ``r-1`` prefix,
    bottoming out at zeta(-k|z) = -B_{k+1}(z)/(k+1). Used only to cross-check
    :func:`nmbp`.
    """
    return _closed_form(check_neg_tuple(t))


def mzv_neg(t: Iterable[int], at=1) -> Fraction:
    """Evaluate the NMBP at a rational point; ``at=1`` gives the regularized MZV."""
    return nmbp(t)(as_rational(at))


def verify_b0(t: Iterable[int]) -> bool:
    """Exact check of V(t|z+1) - V(t|z) = -z^{k_1} V(t'|z+1)."""
    t = check_neg_tuple(t)
    if len(t) < 2:
        raise ValueError("verify_b0 needs depth >= 2")
    v = nmbp(t)
    lhs = v.shift(1) - v
    rhs = -(RationalPoly.monomial(t[0]) * nmbp(t[1:]).shift(1))
    return lhs == rhs


# --- identities ---------------------------------------------------------------

@dataclass
class IdentityBounds:
    prop_a_n: Sequence[int] = (1, 2, 3, 4)
    prop_b_n: Sequence[int] = (1, 2, 3, 4, 5, 6)
    prop_c_n: Sequence[int] = (0, 1, 2, 3)
    zeta_r_max: int = 8
    remark_r_max: int = 6
    pair_t_max: int = 6
    sym_max_depth: int = 3
    sym_max_index: int = 4
    conjecture_n: Sequence[int] = (1, 2)


def _instance(identity: str, inp, lhs, rhs, asserted: bool = True) -> dict:
    return {
        "identity": identity,
        "input": inp,
        "lhs": lhs,
        "rhs": rhs,
        "pass": lhs == rhs,
        "asserted": asserted,
    }


def zeta_r_zero(r: int) -> RationalPoly:
    return nmbp((0,) * r)


def identity_suite(bounds: IdentityBounds | None = None, include: Sequence[str] | None = None) -> list[dict]:
    """Evaluate the value identities for NMBPs over the given ranges.

    Each instance records both sides exactly. Conjecture instances carry
    ``asserted=False``: they are experiments, not claims.
    """
    b = bounds or IdentityBounds()
    want = set(include) if include is not None else None

    def on(name: str) -> bool:
        return want is None or name in want

    out: list[dict] = []
    zeta0 = mzv_neg((0,))
    if on("prop_a"):
        for n in b.prop_a_n:
            for k in range(0, 2 * n + 2):
                t = (2 * n - k + 1, k)
                out.append(_instance("prop_a", {"n": n, "k": k, "tuple": to_signed(t)},
                                     zeta0 * mzv_neg((2 * n + 1,)), mzv_neg(t)))
    if on("prop_b"):
        for n in b.prop_b_n:
            out.append(_instance("prop_b", {"n": n}, mzv_neg((n, n + 1)), mzv_neg((n + 1, n))))
    if on("prop_c"):
        for n1, n2 in itertools.product(b.prop_c_n, repeat=2):
            out.append(_instance("prop_c", {"n1": n1, "n2": n2},
                                 mzv_neg((2 * n1 + 1, 0, 2 * n2 + 1)),
                                 -mzv_neg((2 * n1 + 1, 2 * n2 + 1))))
    if on("zeta_r_at_1"):
        for r in range(1, b.zeta_r_max + 1):
            out.append(_instance("zeta_r_at_1", {"r": r}, zeta_r_zero(r)(1), Fraction((-1) ** r, r + 1)))
    if on("zeta_r_at_0"):
        for r in range(1, b.zeta_r_max + 1):
            out.append(_instance("zeta_r_at_0", {"r": r}, zeta_r_zero(r)(0),
                                 Fraction((-1) ** (r + 1), r * (r + 1))))
    if on("remark_at_minus_1"):
        for r in range(1, b.remark_r_max + 1):
            expected = Fraction((-1) ** (r + 1) * 2, (r + 2) * (r + 1) * r)
            out.append(_instance("remark_at_minus_1", {"r": r}, zeta_r_zero(r + 1)(-1), expected))
            out.append(_instance("remark_transform_at_0", {"r": r},
                                 -bernoulli_transform(zeta_r_zero(r))(0), expected))
    if on("pair_recursion"):
        for t in range(2, b.pair_t_max + 1):
            out.append(_instance("pair_recursion", {"t": t},
                                 zeta_r_zero(t) + zeta_r_zero(t - 1),
                                 -bernoulli_transform(zeta_r_zero(t - 1))))
    if on("at_1_equals_at_0"):
        for depth in range(1, b.sym_max_depth + 1):
            for t in itertools.product(range(b.sym_max_index + 1), repeat=depth):
                if t[0] >= 1:
                    out.append(_instance("at_1_equals_at_0", {"tuple": to_signed(t)},
                                         mzv_neg(t, 1), mzv_neg(t, 0)))
    if on("conjecture"):
        for n in b.conjecture_n:
            for k in range(1, 2 * n + 1):
                out.append(_instance("conjecture", {"n": n, "k": k},
                                     nmbp((2 * n - k, 0, k)), nmbp((2 * n - k, k)), asserted=False))
    return out


def instance_to_json(inst: dict) -> dict:
    def enc(x):
        if isinstance(x, Fraction):
            return format_rational(x)
        if isinstance(x, RationalPoly):
            return {"coeffs": [format_rational(c) for c in x.coeffs]}
        return x

    return {k: enc(v) for k, v in inst.items()}
