from fractions import Fraction
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from pshecke import lattice as lat
from pshecke import linalg as la
from pshecke import module_repr as mr
from pshecke.exact_rings import TorusPoint
from oracles import vrational_c, point_c, close

V = 1.29


def points(r, n=12, d=2):
    return st.tuples(st.lists(st.integers(0, n - 1), min_size=r, max_size=r),
                     st.lists(st.integers(-4, 4), min_size=r, max_size=r)).map(
        lambda p: TorusPoint([Fraction(a, n) for a in p[0]], [Fraction(b, d) for b in p[1]], n, d))


@pytest.mark.parametrize("name", ["A1-SL2", "A1xA1-swap", "A2", "BC1-U3-unram-trivial", "A1-PGL2-halved"])
@settings(max_examples=6)
@given(data=st.data())
def test_principal_series_is_a_module(cases, name, data):
    H = cases[name].algebra()
    t = data.draw(points(H.r))
    M = mr.principal_series_module(H, t, validate=False)
    assert M.dim == H.datum.order()
    assert M.relation_failures() == []
    assert mr.det_multiplicity(M) == 1


@pytest.mark.parametrize("name", ["A2", "A1xA1-swap", "C2-unequal"])
def test_theta_trace_is_orbit_sum(cases, name):
    # [DERIVED] tr(theta_x | M(t)) = sum over the extended Weyl group of (w t)(x)
    H = cases[name].algebra()
    dt = H.datum
    t = TorusPoint([Fraction(1, 12) * (i + 1) for i in range(H.r)], [Fraction(i - 1, 2) for i in range(H.r)])
    M = mr.principal_series_module(H, t)
    for x in [(1,) + (0,) * (H.r - 1), tuple(range(H.r)), (-1,) * H.r]:
        m = M.theta_matrix(x)
        tr = sum(vrational_c(m[i][i], V) for i in range(M.dim))
        expect = sum(point_c(t.act(dt.ext_matrix(k)), x, V) for k in dt.ext_elements())
        assert close(tr, expect)


def test_weights_are_the_orbit(cases):
    H = cases["A2"].algebra()
    t = TorusPoint([0, Fraction(1, 3), Fraction(2, 3)], [1, 0, 0])
    ws = mr.weights(mr.principal_series_module(H, t))
    assert Counter({p: m for p, m in ws}) == Counter(t.act(w) for w in H.datum.weyl)


def test_generic_point_certified_irreducible(cases):
    H = cases["A2"].algebra()
    t = TorusPoint([0, Fraction(1, 3), Fraction(2, 3)], [1, 0, 0])
    assert mr.certify_irreducible(mr.principal_series_module(H, t))


def test_steinberg_point_reducible(cases):
    H = cases["A1-SL2"].algebra()
    M = mr.principal_series_module(H, H.steinberg_point())
    assert not mr.certify_irreducible(M)
    dec = mr.decompose(M, mr.one_dim_characters(H))
    assert sorted((c.name, c.det_mult) for c in dec.constituents) == [("St", 1), ("triv", 0)]
    assert not dec.semisimple


def test_characters_validate(cases):
    for name in ("A1-SL2", "A1xA1-swap", "C2-unequal", "BC1-U3-unram-trivial"):
        H = cases[name].algebra()
        chars = mr.one_dim_characters(H)
        for ch in chars.values():
            assert ch.relation_failures() == []
        assert mr.det_multiplicity(chars["triv"]) == 0
        assert mr.det_multiplicity(chars["det"]) == 1
        # St has J = 1, so it is the det character only when every gamma has determinant 1
        trivial_det = all(lat.det(g) == 1 for g in H.datum.gammas)
        assert mr.det_multiplicity(chars["St"]) == int(trivial_det)


def test_st_minus_needs_unequal_labels(cases):
    with pytest.raises(mr.ModuleError):
        mr.st_minus(cases["A1-SL2"].algebra())
    ch = mr.st_minus(cases["BC1-U3-unram-trivial"].algebra())
    assert ch.relation_failures() == [] and mr.det_multiplicity(ch) == 1


def test_central_character_single_orbit(cases):
    H = cases["A1-SL2"].algebra()
    t = TorusPoint([Fraction(1, 4)], [1])
    cc = mr.central_character(mr.principal_series_module(H, t))
    assert set(cc) == {t, t.inverse()}


def test_bad_matrices_are_rejected(cases):
    H = cases["A1-SL2"].algebra()
    one = la.one_of(H.n, H.d)
    two = la.lift(2, one)
    with pytest.raises(mr.ModuleError):
        mr.FiniteModule(H, [[[two]]], [[[two]]], {0: [[one]]}, {0: [[one]]})
