from fractions import Fraction

import pytest
import sympy

from pshecke import lparam_side as lp
from pshecke.exact_rings import TorusPoint


def gl(n):
    return lp.MatrixDualGroup("GL", (n,))


def param(g, f, y=(), s=None, name=""):
    m = g.size
    f_F = TorusPoint([a for a, _ in f], [b for _, b in f])
    s_I = TorusPoint.one(m) if s is None else TorusPoint(s, [0] * m)
    return lp.PSParameter(g, s_I, f_F, {(i, j): 1 for i, j in y}, name=name)


def test_jm_triple_against_sympy():
    # [DERIVED] [h, y] = -2 y and Ad(t~) y = q^-1 y, checked with explicit matrices
    g = gl(3)
    p = param(g, [(0, 0)] * 3, [(0, 1), (1, 2)])
    h = sympy.diag(*lp.jm_coweight(p))
    y = sympy.zeros(3)
    for (i, j) in p.y:
        y[i, j] = 1
    assert h * y - y * h == -2 * y
    v = sympy.Symbol("v", positive=True)
    t = lp.infinitesimal_point(p)
    tm = sympy.diag(*[v ** b for b in t.vexps])
    assert sympy.simplify(tm * y * tm.inv() - y / v ** 2) == sympy.zeros(3)


def test_partitions_and_dense_orbits():
    g = gl(3)
    st_ = param(g, [(0, 0)] * 3, [(0, 1), (1, 2)])
    assert lp.partition(st_) == (3,) and lp.is_dense_orbit(st_)
    y0 = param(g, [(0, -2), (0, 0), (0, 2)])
    assert lp.partition(y0) == (1, 1, 1) and not lp.is_dense_orbit(y0)
    assert lp.q_eigenspace(y0) == lp.q_eigenspace(st_)


def test_predicates_gl2():
    g = gl(2)
    st_ = param(g, [(0, 0)] * 2, [(0, 1)])
    assert lp.predicates(st_) == {"bounded": True, "discrete": True}
    y0 = param(g, [(0, -1), (0, 1)])
    assert lp.predicates(y0) == {"bounded": False, "discrete": False}
    reg = param(g, [(Fraction(1, 4), 0), (0, 0)])
    assert lp.predicates(reg) == {"bounded": True, "discrete": False}


def test_invalid_parameters():
    g = gl(2)
    with pytest.raises(lp.LParamError):
        param(g, [(0, 1), (0, 0)], [(0, 1)])            # f_F does not fix y
    with pytest.raises(lp.LParamError):
        param(g, [(0, 0)] * 2, [(0, 0)])                # diagonal entry
    with pytest.raises(lp.LParamError):
        lp.MatrixDualGroup("SO", (3,))


def test_json_roundtrip():
    g = gl(2)
    p = param(g, [(Fraction(1, 3), 0), (0, Fraction(1, 2))], name="x")
    q = lp.PSParameter.from_json(g, p.to_json())
    assert q.f_F == p.f_F and q.y == p.y and q.name == "x"


def test_twist_commutes_with_infinitesimal_point():
    g = gl(2)
    p = param(g, [(0, 0)] * 2, [(0, 1)])
    z = TorusPoint([Fraction(1, 2)] * 2, [0, 0])
    pz = lp.twist_parameter(z, p)
    assert lp.infinitesimal_point(pz) == z * lp.infinitesimal_point(p)
    with pytest.raises(lp.LParamError):
        lp.twist_parameter(TorusPoint([Fraction(1, 2), 0], [0, 0]), p)


def test_gl2_match_table(cases):
    rows = {r.parameter: r for r in lp.match_bijection(cases["GL2-block"].block)}
    assert all(r.status == "ok" for r in rows.values())
    st_, y0 = rows["steinberg"], rows["y0-at-steinberg"]
    assert st_.det_mult == 1 and st_.module == "St-type" and st_.dense
    assert y0.det_mult == 0 and not y0.dense
    assert st_.t_tilde == y0.t_tilde
    assert st_.tempered and st_.bounded
    # the St module has weights v^(-1), v^(+1): tempered but not unitary
    assert not st_.unitary_weights


def test_casselman_test(cases):
    H = cases["GL2-block"].algebra()
    assert lp._casselman_point(H, TorusPoint([0, 0], [-1, 1]))
    assert not lp._casselman_point(H, TorusPoint([0, 0], [1, -1]))
    assert not lp._casselman_point(H, TorusPoint([0, 0], [1, 1]))
