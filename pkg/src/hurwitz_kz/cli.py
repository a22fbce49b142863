"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
NMBP tuples are typed signed (``--tuple 0,-3,-1``); Hurwitz words positive
(``--word 2,1,1``).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional, Sequence

from . import kz, numeric, serialize, verify
from .exact import parse_rational
from .nmbp import from_signed, mzv_neg, nmbp, to_signed
from .words import coproduct, format_lincomb, format_word, parse_word, stuffle, stuffle_regularize

_LIST_FLAGS = ("--tuple", "--word", "--vector")
_NEG_LIST = re.compile(r"^-\d+(,-?\d+)*$")


class UsageError(Exception):
    pass


def _normalize_argv(argv: Sequence[str]) -> List[str]:
    # argparse would read "--tuple -1,-2" as two options; glue the value on
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a in _LIST_FLAGS:
            nxt = next(it, None)
            if nxt is not None and _NEG_LIST.match(nxt):
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(a)
    return out


def _int_list(s: str) -> List[int]:
    s = s.strip().strip("()[]")
    if not s:
        return []
    try:
        return [int(p) for p in s.split(",")]
    except ValueError:
        raise UsageError(f"malformed integer list {s!r}") from None


def _neg_tuple(s: str):
    try:
        return from_signed(_int_list(s))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _word(s: str):
    try:
        return parse_word(s)
    except ValueError as exc:
        raise UsageError(f"malformed word {s!r}: {exc}") from None


def _rational(s: str):
    try:
        return parse_rational(s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _positive_z(s: str) -> float:
    z = float(_rational(s))
    if z <= 0:
        raise UsageError(f"z must be positive, got {s}")
    return z


def _coeff_prefix(c) -> str:
    return "" if c == 1 else f"{c}·"


def _emit(args, human: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


# --- commands -------------------------------------------------------------------

def cmd_nmbp(args) -> int:
    t = _neg_tuple(args.tuple)
    if not t:
        raise UsageError("--tuple must be non-empty")
    _emit(args, nmbp(t).pretty(), serialize.nmbp_result(t))
    return 0


def cmd_mzv_neg(args) -> int:
    t = _neg_tuple(args.tuple)
    if not t:
        raise UsageError("--tuple must be non-empty")
    at = _rational(args.at)
    val = mzv_neg(t, at)
    _emit(args, str(val), {"tuple": to_signed(t), "at": serialize.encode(at), "value": serialize.encode(val)})
    return 0


def cmd_stuffle(args) -> int:
    if len(args.word) != 2:
        raise UsageError("stuffle needs exactly two --word flags")
    a, b = (_word(w) for w in args.word)
    lc = stuffle(a, b)
    _emit(args, format_lincomb(lc), serialize.lincomb_to_json(lc))
    return 0


def cmd_coproduct(args) -> int:
    t = coproduct(_word(args.word))
    human = " + ".join(f"{_coeff_prefix(c)}{format_word(a)}⊗{format_word(b)}" for (a, b), c in t.items())
    _emit(args, human, serialize.tensor_to_json(t))
    return 0


def cmd_regularize(args) -> int:
    reg = stuffle_regularize(_word(args.word))
    lines = []
    for d in sorted(reg.coeffs, reverse=True):
        lines.append(f"T^{d}: {format_lincomb(reg.coeffs[d])}")
    _emit(args, "\n".join(lines) or "0", serialize.reg_to_json(reg))
    return 0


def cmd_hurwitz_eval(args) -> int:
    w = _word(args.word)
    z = _positive_z(args.z)
    try:
        if args.regularize:
            value = numeric.regularized_numeric(w, z, args.tol)
            payload = {"value": value, "tol": args.tol, "terms_used": None}
        else:
            res = numeric.evaluate(numeric.EvalRequest(w, z, args.tol))
            value, payload = res.value, res.to_json()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, repr(value), payload)
    return 0


def cmd_digamma(args) -> int:
    z = _positive_z(args.z)
    v = numeric.digamma(z)
    _emit(args, repr(v), {"z": z, "value": v})
    return 0


def _finish_report(args, rep: verify.Report) -> int:
    if args.out:
        try:
            rep.write(args.out)
        except OSError as exc:
            raise UsageError(f"cannot write report: {exc}") from None
    if args.json:
        print(json.dumps(rep.to_json(), indent=2))
    else:
        label = "does not hold" if rep.experiment else "failed"
        for inst in rep.failures[:20]:
            print(f"{label}: {serialize.encode(inst['input'])}  lhs={serialize.encode(inst['lhs'])}"
                  f"  rhs={serialize.encode(inst['rhs'])}")
        print(rep.summary)
    return 0 if rep.passed else 1


def _suite_params(args) -> dict:
    zs = [_positive_z(z) for z in args.z] if args.z else None
    return {
        "max_depth": args.max_depth,
        "max_index": args.max_index,
        "max_weight": args.max_weight,
        "seed": args.seed,
        "count": args.count,
        "zs": zs,
        "tol": args.tol,
    }


def cmd_verify(args) -> int:
    try:
        rep = verify.run_suite(args.suite, **_suite_params(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _finish_report(args, rep)


def cmd_flatness(args) -> int:
    args.suite = "flat-hb" if args.kind == "hb" else "flat-h"
    return cmd_verify(args)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_psi_map(args) -> int:
    try:
        conn = serialize.connection_from_json(_load_json(args.connection))
        series = serialize.series_from_json(_load_json(args.series))
        v = [_rational(x) for x in args.vector.split(",")]
        out = kz.psi_v(conn, v, series)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, "\n".join(p.pretty() for p in out), [serialize.poly_to_json(p) for p in out])
    return 0


def cmd_independence(args) -> int:
    return _finish_report(args, verify.independence_check())


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hurwitz-kz", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="emit JSON instead of text")
        sp.set_defaults(func=fn)
        return sp

    sp = add("nmbp", cmd_nmbp, "normalized multiple Bernoulli polynomial")
    sp.add_argument("--tuple", required=True, help="non-positive integers, e.g. 0,-3,-1")

    sp = add("mzv-neg", cmd_mzv_neg, "NMBP value at a rational point")
    sp.add_argument("--tuple", required=True)
    sp.add_argument("--at", default="1", help="rational point p/q (default 1)")

    sp = add("stuffle", cmd_stuffle, "stuffle product of two words")
    sp.add_argument("--word", action="append", default=[], help="repeat twice, e.g. --word 2 --word 3")

    sp = add("coproduct", cmd_coproduct, "coproduct of a word")
    sp.add_argument("--word", required=True)

    sp = add("regularize", cmd_regularize, "stuffle regularization as a polynomial in T = zeta(1|z)")
    sp.add_argument("--word", required=True)

    sp = add("hurwitz-eval", cmd_hurwitz_eval, "numeric Hurwitz polyzeta value")
    sp.add_argument("--word", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--tol", type=float, default=numeric.DEFAULT_TOL)
    sp.add_argument("--regularize", action="store_true", help="allow words ending in 1")

    sp = add("digamma", cmd_digamma, "digamma function")
    sp.add_argument("--z", required=True)

    def sweep_flags(sp):
        sp.add_argument("--max-depth", type=int)
        sp.add_argument("--max-index", type=int)
        sp.add_argument("--max-weight", type=int)
        sp.add_argument("--z", action="append", help="sample point(s), repeatable")
        sp.add_argument("--tol", type=float)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--count", type=int)
        sp.add_argument("--out", help="write a JSON report to FILE")

    sp = add("verify", cmd_verify, "run a verification sweep")
    sp.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    sweep_flags(sp)

    sp = add("flatness", cmd_flatness, "flatness of H_B (exact) or H (numeric)")
    sp.add_argument("--kind", choices=("hb", "h"), default="hb")
    sweep_flags(sp)

    sp = add("psi-map", cmd_psi_map, "apply psi_v to a series")
    sp.add_argument("--connection", required=True, help="connection JSON file")
    sp.add_argument("--series", required=True, help="positive-alphabet series JSON file")
    sp.add_argument("--vector", required=True, help="comma-separated rationals")

    sp = add("independence-check", cmd_independence, "linear-independence heuristic")
    sp.add_argument("--out")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_normalize_argv(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
