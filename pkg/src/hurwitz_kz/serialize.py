"""JSON forms for the exchanged data types.

Every rational is written as a reduced ``"num/den"`` string, so reading a
document back gives exactly the object that produced it.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict

from .exact import RationalPoly, format_rational, parse_rational
from .kz import NONPOSITIVE, POSITIVE, NCSeries, UnipotentDiffConnection
from .nmbp import NegTuple, from_signed, mzv_neg, nmbp, to_signed
from .words import LinComb, RegElement, TensorLinComb, check_word

__all__ = [
    "connection_from_json",
    "connection_to_json",
    "encode",
    "lincomb_from_json",
    "lincomb_to_json",
    "nmbp_result",
    "poly_from_json",
    "poly_to_json",
    "reg_from_json",
    "reg_to_json",
    "series_from_json",
    "series_to_json",
    "tensor_to_json",
]


def poly_to_json(p: RationalPoly) -> dict:
    return {"coeffs": [format_rational(c) for c in p.coeffs]}


def poly_from_json(d: dict) -> RationalPoly:
    p = RationalPoly(parse_rational(s) for s in d["coeffs"])
    if len(p.coeffs) != len(d["coeffs"]):
        raise ValueError("RationalPoly JSON has trailing zero coefficients")
    return p


def lincomb_to_json(lc: LinComb) -> list:
    return [{"word": list(w), "coeff": format_rational(c)} for w, c in lc.items()]


def lincomb_from_json(items: list) -> LinComb:
    return LinComb((check_word(it["word"]), parse_rational(it["coeff"])) for it in items)


def tensor_to_json(t: TensorLinComb) -> list:
    return [{"left": list(a), "right": list(b), "coeff": format_rational(c)} for (a, b), c in t.items()]


def reg_to_json(r: RegElement) -> dict:
    return {f"T^{d}": lincomb_to_json(r.coeffs[d]) for d in sorted(r.coeffs)}


def reg_from_json(d: dict) -> RegElement:
    out = {}
    for key, items in d.items():
        if not key.startswith("T^"):
            raise ValueError(f"bad RegElement key {key!r}")
        out[int(key[2:])] = lincomb_from_json(items)
    return RegElement(out)


def nmbp_result(t: NegTuple) -> dict:
    return {
        "tuple": to_signed(t),
        "poly": poly_to_json(nmbp(t)),
        "value_at_1": format_rational(mzv_neg(t, 1)),
    }


def series_to_json(s: NCSeries) -> dict:
    terms = []
    for w in s.words():
        c = s[w]
        word = to_signed(w) if s.alphabet == NONPOSITIVE else list(w)
        terms.append({"word": word, "coeff": poly_to_json(c) if isinstance(c, RationalPoly) else float(c)})
    return {"alphabet": s.alphabet, "truncation": dict(s.truncation), "terms": terms}


def series_from_json(d: dict) -> NCSeries:
    alphabet = d["alphabet"]
    coeffs = {}
    for term in d["terms"]:
        if alphabet == NONPOSITIVE:
            w = from_signed(term["word"])
        elif alphabet == POSITIVE:
            w = check_word(term["word"])
        else:
            raise ValueError(f"unknown alphabet {alphabet!r}")
        c = term["coeff"]
        coeffs[w] = poly_from_json(c) if isinstance(c, dict) else float(c)
    return NCSeries(alphabet, coeffs, {k: int(v) for k, v in d["truncation"].items()})


def connection_to_json(conn: UnipotentDiffConnection) -> dict:
    return {
        "rank": conn.rank,
        "matrices": {str(k): [[format_rational(x) for x in row] for row in m]
                     for k, m in sorted(conn.matrices.items())},
    }


def connection_from_json(d: dict) -> UnipotentDiffConnection:
    mats = {int(k): [[parse_rational(str(x)) for x in row] for row in m] for k, m in d["matrices"].items()}
    return UnipotentDiffConnection(int(d["rank"]), mats)


def encode(x: Any) -> Any:
    """Best-effort JSON encoding of report values."""
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, RationalPoly):
        return poly_to_json(x)
    if isinstance(x, LinComb):
        return lincomb_to_json(x)
    if isinstance(x, RegElement):
        return reg_to_json(x)
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return x
