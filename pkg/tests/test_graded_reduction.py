from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pshecke import graded_reduction as gr
from pshecke import module_repr as mr
from pshecke.exact_rings import TorusPoint

HALF = Fraction(1, 2)


def kvals(H, u):
    gp = gr.k_parameters(H, u)
    return {H.datum.roots[i]: k for i, k in gp.k_values.items()}, gp


@pytest.mark.parametrize("name,u_angle,k", [
    ("A1-SL2", 0, 1),                       # (1,1) at u = 1
    ("A1-SL2", HALF, 0),                    # (1,1) at u(a) = -1: k = 0, root excluded
    ("BC1-U3-unram-trivial", 0, 2),         # (3,1): (3+1)/2
    ("BC1-U3-unram-trivial", HALF, 1),      # (3,1): (3-1)/2
    ("BC1-U3-ramified", 0, HALF),           # (1,0)
    ("BC1-U3-ramified", HALF, HALF),
])
def test_rank_one_hand_values(cases, name, u_angle, k):
    H = cases[name].algebra()
    # u(a) = exp(2 pi i * angle) with a = e_1: the point coordinate equals the root angle
    ks, gp = kvals(H, TorusPoint([u_angle], [0]))
    assert ks[(1,)] == k and ks[(-1,)] == k
    assert ((1,) in [H.datum.roots[i] for i in gp.positive_system]) == (k > 0)
    assert gp.factorization_holds


def test_c2_unequal_hand_values(cases):
    H = cases["C2-unequal"].algebra()
    ks, gp = kvals(H, TorusPoint([0, 0], [0, 0]))
    # short roots (1,-1), (1,1) carry (1,1); long roots (0,1), (1,0) carry (3,1) -> k = 2
    assert ks[(1, -1)] == 1 and ks[(1, 1)] == 1
    assert ks[(0, 1)] == 2 and ks[(1, 0)] == 2
    assert gp.group_order == 8 and gp.weyl_pos_order == 8


@pytest.mark.parametrize("name", ["A1-SL2", "A1xA1-swap", "A2", "C2-unequal", "BC1-U3-unram-trivial"])
@given(data=st.data())
def test_factorization_and_equal_parameters(cases, name, data):
    H = cases[name].algebra()
    u = TorusPoint([Fraction(data.draw(st.sampled_from([0, 6, 0, 3, 4])), 12) for _ in range(H.r)], [0] * H.r)
    gp = gr.k_parameters(H, u)
    assert gp.factorization_holds
    assert gp.group_order == gp.weyl_pos_order * len(gp.gamma_pos)
    for r in gr.equal_parameter_form(gp):
        assert r.scale == gp.k_values[r.index] > 0


def test_non_unitary_point_rejected(cases):
    with pytest.raises(gr.GradedError):
        gr.k_parameters(cases["A1-SL2"].algebra(), TorusPoint([0], [1]))


@pytest.mark.parametrize("name", ["A1-SL2", "A2", "C2-unequal", "BC1-U3-unram-trivial", "A1-PGL2-halved"])
def test_graded_steinberg_exponentiates_to_steinberg(cases, name):
    H = cases[name].algebra()
    gp = gr.k_parameters(H, TorusPoint.one(H.r))
    pt = gr.exp_weights(gp.u, [gr.graded_steinberg_weight(gp)])[0]
    assert mr.same_orbit(H, pt, H.steinberg_point())


def test_graded_steinberg_minus(cases):
    H = cases["BC1-U3-unram-trivial"].algebra()
    gp = gr.k_parameters(H, TorusPoint([HALF], [0]))
    pt = gr.exp_weights(gp.u, [gr.graded_steinberg_weight(gp)])[0]
    st_minus_pt = mr._point_of(mr.st_minus(H))
    assert mr.same_orbit(H, pt, st_minus_pt)
