import math
import random
from fractions import Fraction as F

import pytest

from hurwitz_kz import kz
from hurwitz_kz.exact import RationalPoly
from hurwitz_kz.kz import (
    POSITIVE,
    Laurent,
    NCSeries,
    UnipotentDiffConnection,
    build_H_numeric,
    build_HB,
    check_flat_H,
    check_flat_HB,
    connection_apply,
    leibniz_check,
    psi_compat_check,
    psi_v,
    word_matrix,
)
from hurwitz_kz.numeric import digamma, hurwitz_polyzeta

Z = RationalPoly.z()
ONE = RationalPoly.constant(1)
NILP = [[0, 1], [0, 0]]


def series(coeffs, max_weight):
    return NCSeries(POSITIVE, coeffs, {"max_weight": max_weight})


def test_build_HB_small():
    assert build_HB(0, 0).coeffs == {(): ONE}
    s = build_HB(2, 0)
    assert s[(0,)] == -Z + F(1, 2)
    assert s[(0, 0)] == Z * Z / 2 - F(1, 6)
    assert len(s) == 3


@pytest.mark.parametrize("depth,index", [(2, 2), (3, 3)])
def test_flat_HB(depth, index):
    recs = check_flat_HB(build_HB(depth, index))
    assert all(r["pass"] for r in recs)
    assert recs[0]["word"] == () and recs[0]["lhs"].is_zero()


def test_build_H_numeric_coefficients():
    s = build_H_numeric(2, 2)
    assert abs(s[(2,)] - (math.pi ** 2 / 6 - 1)) < 1e-13
    t = -digamma(2)
    assert abs(s[(1, 1)] - (t * t - hurwitz_polyzeta((2,), 2)) / 2) < 1e-13
    assert build_H_numeric(3, 0).coeffs == {(): 1.0}


@pytest.mark.parametrize("z,wt,bound", [(2.5, 3, 1e-7), (3, 5, 1e-6)])
def test_flat_H(z, wt, bound):
    assert check_flat_H(build_H_numeric(z, wt), z) < bound


def test_series_validation():
    with pytest.raises(ValueError):
        series({(1,): ONE}, 2)          # no unit word
    with pytest.raises(ValueError):
        series({(): ONE, (3,): ONE}, 2)  # over the weight bound


def test_connection_validation():
    with pytest.raises(ValueError):
        UnipotentDiffConnection(2, {1: [[1, 0], [0, 0]]})
    with pytest.raises(ValueError):
        UnipotentDiffConnection(2, {0: NILP})
    c = UnipotentDiffConnection(2, {1: NILP, 3: [[0, 0], [0, 0]]})
    assert c.cutoff == 1


def test_connection_apply_examples():
    trivial = UnipotentDiffConnection(2, {})
    v = (RationalPoly.constant(3), RationalPoly.constant(-1))
    pieces = connection_apply(trivial, v)
    assert pieces.shifted == v and pieces.negated == tuple(-p for p in v) and pieces.pole == {}
    assert all(x.is_zero() for x in pieces.total())

    c = UnipotentDiffConnection(2, {1: NILP})
    pieces = connection_apply(c, (RationalPoly(), ONE))
    assert pieces.pole == {1: (-ONE, RationalPoly())}


def test_rank_mismatch():
    c = UnipotentDiffConnection(2, {1: NILP})
    with pytest.raises(ValueError):
        connection_apply(c, (ONE,))
    with pytest.raises(ValueError):
        psi_v(c, [1], series({(): ONE}, 0))


def test_laurent_pole_arithmetic():
    # z/(z-1) = 1 + 1/(z-1)
    assert Laurent.from_pole(Z, 1) == Laurent(ONE) + Laurent.from_pole(ONE, 1)
    assert (Laurent.from_pole(Z * Z, 2) - Laurent(ONE) - Laurent.from_pole(2 * ONE, 1)
            - Laurent.from_pole(ONE, 2)).is_zero()


def test_leibniz_examples():
    rng = random.Random(3)
    c3 = UnipotentDiffConnection(3, {1: [[0, 1, 2], [0, 0, -1], [0, 0, 0]], 2: [[0, F(1, 2), 0], [0, 0, 3], [0, 0, 0]]})
    s = kz.random_section(rng, 3)
    assert leibniz_check(c3, ONE, s)
    assert leibniz_check(c3, Z * Z, s)
    trivial = UnipotentDiffConnection(1, {})
    assert leibniz_check(trivial, Z, (ONE,))


def test_printed_leibniz_form_fails():
    trivial = UnipotentDiffConnection(1, {})
    lhs, rhs = kz.leibniz_sides(trivial, Z, (ONE,), form="printed")
    assert lhs != rhs
    # even f = 1 breaks it once the section moves
    assert not leibniz_check(trivial, ONE, (Z,), form="printed")
    assert leibniz_check(trivial, ONE, (Z,))
    # both agree when f and s are constant
    assert leibniz_check(trivial, 5 * ONE, (ONE,), form="printed")


def test_psi_examples():
    c = UnipotentDiffConnection(2, {2: NILP})
    f = Z + 1
    # the Y_2 term contributes (f, 0); the unit word contributes v
    out = psi_v(c, [0, 1], series({(): ONE, (2,): f}, 2))
    assert out == (f, ONE)
    assert psi_v(c, [0, 1], series({(): RationalPoly(), (2,): f}, 2)) == (f, RationalPoly())
    assert psi_v(c, [4, 5], series({(): ONE}, 0)) == (4 * ONE, 5 * ONE)
    trivial = UnipotentDiffConnection(2, {})
    assert psi_v(trivial, [1, 2], series({(): Z, (1,): ONE, (3,): Z}, 3)) == (Z, 2 * Z)


def test_psi_compat_examples():
    trivial = UnipotentDiffConnection(2, {})
    assert psi_compat_check(trivial, [1, 2], series({(): Z, (1,): ONE}, 1), 1)
    c = UnipotentDiffConnection(2, {1: NILP})
    assert psi_compat_check(c, [F(1, 2), -3], series({(): ONE, (1,): Z * Z - 1}, 1), 1)


def test_word_matrices_vanish_past_rank():
    rng = random.Random(11)
    c = kz.random_connection(rng, 3, 2)
    for w in [(1, 1, 1), (1, 2, 1), (2, 2, 2, 1)]:
        assert all(x == 0 for row in word_matrix(c, w) for x in row)
    assert word_matrix(c, ()) == tuple(tuple(F(int(i == j)) for j in range(3)) for i in range(3))


def test_psi_compat_needs_long_enough_truncation():
    # with words of length < rank - 1 dropped, the compatibility breaks
    rng = random.Random(0)
    broken = 0
    for _ in range(20):
        c = kz.random_connection(rng, 4, 2)
        v = [F(rng.randint(-3, 3)) for _ in range(4)]
        s = kz.random_series(rng, 4)
        assert psi_compat_check(c, v, s, 4)
        broken += not psi_compat_check(c, v, s, 1)
    assert broken > 0
