from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from pshecke import linalg as la
from pshecke.exact_rings import VLaurent, VRational

N, D = 12, 2
ONE = la.one_of(N, D)


def to_exact(rows):
    return [[la.lift(VLaurent.const(Fraction(x), N, D), ONE) for x in r] for r in rows]


small = st.integers(-3, 3)
matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=4))


@given(matrices)
def test_rank_matches_sympy(rows):
    assert la.rank(to_exact(rows)) == sympy.Matrix(rows).rank()


@given(matrices)
def test_nullspace_is_kernel(rows):
    a = to_exact(rows)
    ker = la.nullspace(a, ncols=len(rows[0]), one=ONE)
    assert len(ker) == len(rows[0]) - sympy.Matrix(rows).rank()
    for v in ker:
        assert all(x.is_zero() for x in la.mvec(a, v))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_matches_sympy(rows):
    x = sympy.Symbol("x")
    expect = list(reversed(sympy.Matrix(rows).charpoly(x).all_coeffs()))
    got = la.charpoly(to_exact(rows))
    assert [g == la.lift(VLaurent.const(Fraction(int(e.p), int(e.q)), N, D), ONE) for g, e in zip(got, expect)] \
        == [True] * len(expect)


def test_inverse_over_function_field():
    v = VRational.lift(VLaurent.mono(1, 1, N, D))
    a = [[v, ONE], [ONE, v]]
    inv = la.inverse(a)
    assert la.meq(la.mmul(a, inv), la.eye(2, ONE))


def test_monomial_roots():
    v = VRational.lift(VLaurent.mono(1, 1, N, D))
    z = VRational.lift(VLaurent.unit(Fraction(1, 4), Fraction(1, 2), N, D))
    a = [[v, ONE], [la.zero_of(ONE), z]]
    roots = la.monomial_roots(la.charpoly(a))
    assert sorted(str(r) for r in roots) == sorted([str(v.num), str(z.num)])


def test_modular_rank_bounds_exact_rank():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    red = la.ModularMap(N, D, 7)
    assert red.p % N == 1
    assert la.mod_rank(red.matrix(to_exact(rows)), red.p) == la.rank(to_exact(rows)) == 2
