"""Verification sweeps with uniform reports.

Every suite returns a :class:`Report` whose instances carry the input, both
sides of the checked identity and a pass flag.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import kz
from .exact import RationalPoly
from .nmbp import IdentityBounds, identity_suite, nmbp, nmbp_closed_form, to_signed, verify_b0
from .numeric import hurwitz_polyzeta
from .serialize import encode
from .words import (
    LinComb,
    compositions,
    convergent,
    coproduct,
    format_word,
    iterated_coproduct,
    regularize_lincomb,
    stuffle,
    stuffle_regularize,
)

__all__ = ["Report", "SUITES", "run_suite", "INDEPENDENCE_WORDS", "INDEPENDENCE_POINTS", "independence_check"]


@dataclass
class Report:
    suite: str
    parameters: dict
    instances: List[dict] = field(default_factory=list)
    experiment: bool = False

    @property
    def failures(self) -> List[dict]:
        return [i for i in self.instances if not i["pass"]]

    @property
    def passed(self) -> bool:
        return self.experiment or not self.failures

    @property
    def summary(self) -> str:
        n = len(self.instances)
        if n == 0:
            return "vacuous"
        k = len(self.failures)
        if self.experiment:
            return f"EXPERIMENT ({n - k} of {n} instances hold)"
        if k == 0:
            return f"PASS (all {n} instances)"
        return f"FAIL ({k} of {n} instances failed)"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "parameters": encode(self.parameters),
            "instances": [
                {"input": encode(i["input"]), "lhs": encode(i["lhs"]), "rhs": encode(i["rhs"]), "pass": bool(i["pass"])}
                for i in self.instances
            ],
            "summary": self.summary,
        }

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")


def _inst(inp, lhs, rhs, ok) -> dict:
    return {"input": inp, "lhs": lhs, "rhs": rhs, "pass": bool(ok)}


def _neg_tuples(max_depth: int, max_index: int, min_depth: int = 1):
    for d in range(min_depth, max_depth + 1):
        yield from itertools.product(range(max_index + 1), repeat=d)


def _words_upto(max_weight: int, nonempty: bool = True):
    for wt in range(1 if nonempty else 0, max_weight + 1):
        yield from compositions(wt)


# --- exact suites -------------------------------------------------------------

def suite_b0(max_depth: int = 4, max_index: int = 5, **_) -> Report:
    rep = Report("b0", {"max_depth": max_depth, "max_index": max_index})
    for t in _neg_tuples(max_depth, max_index, min_depth=2):
        v = nmbp(t)
        lhs = v.shift(1) - v
        rhs = -(RationalPoly.monomial(t[0]) * nmbp(t[1:]).shift(1))
        rep.instances.append(_inst({"tuple": to_signed(t)}, lhs, rhs, lhs == rhs and verify_b0(t)))
    return rep


def suite_closed_form(max_depth: int = 4, max_index: int = 4, **_) -> Report:
    rep = Report("closed-form", {"max_depth": max_depth, "max_index": max_index})
    for t in _neg_tuples(max_depth, max_index):
        a, b = nmbp(t), nmbp_closed_form(t)
        rep.instances.append(_inst({"tuple": to_signed(t)}, a, b, a == b))
    return rep


def suite_props(**_) -> Report:
    rep = Report("props", {"bounds": "default"})
    for inst in identity_suite(IdentityBounds(), include=[
            "prop_a", "prop_b", "prop_c", "zeta_r_at_1", "zeta_r_at_0", "remark_at_minus_1",
            "pair_recursion", "at_1_equals_at_0"]):
        rep.instances.append(_inst(dict(inst["input"], identity=inst["identity"]), inst["lhs"], inst["rhs"], inst["pass"]))
    return rep


def suite_conjecture(**_) -> Report:
    rep = Report("conjecture", {"n": [1, 2]}, experiment=True)
    for inst in identity_suite(IdentityBounds(), include=["conjecture"]):
        rep.instances.append(_inst(inst["input"], inst["lhs"], inst["rhs"], inst["pass"]))
    return rep


def suite_flat_hb(max_depth: int = 3, max_index: int = 4, **_) -> Report:
    rep = Report("flat-hb", {"max_depth": max_depth, "max_index": max_index})
    for rec in kz.check_flat_HB(kz.build_HB(max_depth, max_index)):
        rep.instances.append(_inst({"word": to_signed(rec["word"])}, rec["lhs"], rec["rhs"], rec["pass"]))
    return rep


def suite_stuffle_alg(max_weight: int = 8, **_) -> Report:
    rep = Report("stuffle-alg", {"max_weight": max_weight})
    words = list(_words_upto(max_weight))
    for a, b in itertools.product(words, repeat=2):
        if sum(a) + sum(b) <= max_weight:
            l, r = stuffle(a, b), stuffle(b, a)
            rep.instances.append(_inst({"law": "commutative", "words": [a, b]}, l, r, l == r))
    for a, b in itertools.product(words, repeat=2):
        if sum(a) + sum(b) >= max_weight:
            continue
        for c in words:
            if sum(a) + sum(b) + sum(c) <= max_weight:
                l = stuffle(stuffle(a, b), c)
                r = stuffle(a, stuffle(b, c))
                rep.instances.append(_inst({"law": "associative", "words": [a, b, c]}, l, r, l == r))
    return rep


def suite_hopf(max_weight: int = 6, **_) -> Report:
    rep = Report("hopf", {"max_weight": max_weight})
    for w in _words_upto(max_weight, nonempty=False):
        l, r = iterated_coproduct(w, "left"), iterated_coproduct(w, "right")
        rep.instances.append(_inst({"law": "coassociative", "word": w}, len(l), len(r), l == r))
    for W in _words_upto(max_weight, nonempty=False):
        delta = coproduct(W)
        n = sum(W)
        for a in range(n + 1):
            for w1 in compositions(a):
                for w2 in compositions(n - a):
                    lhs = delta.coeff(w1, w2)
                    rhs = stuffle(w1, w2).coeff(W)
                    rep.instances.append(_inst({"law": "duality", "words": [w1, w2, W]}, lhs, rhs, lhs == rhs))
    return rep


def suite_reg_hom(max_weight: int = 6, **_) -> Report:
    rep = Report("reg-hom", {"max_weight": max_weight})
    words = list(_words_upto(max_weight))
    for a, b in itertools.product(words, repeat=2):
        if sum(a) + sum(b) <= max_weight:
            lhs = stuffle_regularize(a) * stuffle_regularize(b)
            rhs = regularize_lincomb(stuffle(a, b))
            rep.instances.append(_inst({"words": [a, b]}, lhs, rhs, lhs == rhs))
    return rep


def suite_leibniz(seed: int = 0, count: int = 100, max_rank: int = 4, **_) -> Report:
    rng = random.Random(seed)
    rep = Report("leibniz", {"seed": seed, "count": count, "max_rank": max_rank})
    for i in range(count):
        rank = rng.randint(1, max_rank)
        conn = kz.random_connection(rng, rank, rng.randint(1, 3))
        f = kz.random_poly(rng, rng.randint(0, 3))
        s = kz.random_section(rng, rank)
        lhs, rhs = kz.leibniz_sides(conn, f, s)
        rep.instances.append(_inst({"instance": i, "rank": rank}, repr(lhs), repr(rhs), lhs == rhs))
    return rep


def suite_psi(seed: int = 0, count: int = 50, max_rank: int = 4, max_weight: int = 4, **_) -> Report:
    rng = random.Random(seed)
    rep = Report("psi", {"seed": seed, "count": count, "max_rank": max_rank, "max_weight": max_weight})
    for i in range(count):
        rank = rng.randint(1, max_rank)
        conn = kz.random_connection(rng, rank, rng.randint(1, max_weight))
        v = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rank)]
        s = kz.random_series(rng, max_weight)
        lhs, rhs = kz.psi_compat_sides(conn, v, s, max_weight)
        rep.instances.append(_inst({"instance": i, "rank": rank}, repr(lhs), repr(rhs), lhs == rhs))
    return rep


# --- numeric suites -----------------------------------------------------------

DEFAULT_ZS = (Fraction(5, 2), Fraction(3), Fraction(4))


def suite_flat_h(max_weight: int = 5, zs: Optional[Sequence] = None, tol: float = 1e-6, **_) -> Report:
    zs = [float(z) for z in (zs or DEFAULT_ZS)]
    rep = Report("flat-h", {"max_weight": max_weight, "z": zs, "tol": tol})
    for z in zs:
        if z <= 1:
            raise ValueError("flat-h needs z > 1 so that z - 1 stays positive")
        cur = kz.build_H_numeric(z, max_weight)
        prev = kz.build_H_numeric(z - 1, max_weight)
        for w in cur.words():
            lhs = cur[w] - prev[w]
            rhs = -((z - 1) ** (-w[0])) * cur[w[1:]] if w else 0.0
            rep.instances.append(_inst({"z": z, "word": list(w)}, lhs, rhs, abs(lhs - rhs) < tol))
    return rep


def suite_stuffle_char(max_weight: int = 6, zs: Optional[Sequence] = None, tol: float = 1e-7, **_) -> Report:
    zs = [float(z) for z in (zs or (1, 1.5, 2))]
    rep = Report("stuffle-char", {"max_weight": max_weight, "z": zs, "tol": tol})
    words = [w for w in _words_upto(max_weight) if convergent(w)]
    for z in zs:
        val = {w: hurwitz_polyzeta(w, z, 1e-12) for w in words}
        for a, b in itertools.combinations_with_replacement(words, 2):
            if sum(a) + sum(b) > max_weight:
                continue
            lhs = val[a] * val[b]
            rhs = sum(float(c) * val[u] for u, c in stuffle(a, b).terms.items())
            ok = abs(lhs - rhs) <= tol * max(abs(lhs), 1e-300)
            rep.instances.append(_inst({"z": z, "words": [a, b]}, lhs, rhs, ok))
    return rep


# --- independence heuristic ---------------------------------------------------

INDEPENDENCE_WORDS = ((1, 2), (2, 2), (2, 1, 3), (2, 5), (4, 3), (5, 2), (2, 3, 2), (8,), (1, 7), (6, 2))
INDEPENDENCE_POINTS = tuple(float(x) for x in np.geomspace(1.05, 3.95, 10))


def independence_check(words=INDEPENDENCE_WORDS, zs=INDEPENDENCE_POINTS, bound: float = 1e12) -> Report:
    """Condition number of the value matrix; a heuristic witness only."""
    rep = Report("independence", {"words": [list(w) for w in words], "z": list(zs), "bound": bound})
    m = kz.independence_matrix(list(words), list(zs))
    cond = float(np.linalg.cond(m))
    rep.instances.append(_inst({"matrix_shape": list(m.shape)}, cond, bound, cond < bound))
    return rep


SUITES: Dict[str, Callable[..., Report]] = {
    "b0": suite_b0,
    "closed-form": suite_closed_form,
    "props": suite_props,
    "conjecture": suite_conjecture,
    "flat-hb": suite_flat_hb,
    "flat-h": suite_flat_h,
    "stuffle-alg": suite_stuffle_alg,
    "hopf": suite_hopf,
    "reg-hom": suite_reg_hom,
    "leibniz": suite_leibniz,
    "psi": suite_psi,
    "stuffle-char": suite_stuffle_char,
}


def run_suite(name: str, **params) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return fn(**{k: v for k, v in params.items() if v is not None})
