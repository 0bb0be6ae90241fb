import pytest
from hypothesis import given, strategies as st
from sympy.liealgebras.weyl_group import WeylGroup
from sympy.liealgebras.root_system import RootSystem

from pshecke import lattice as lat
from pshecke.root_datum import BasedRootDatum, DatumError, generate_weyl, det_character, \
    is_coroot_two_divisible, isotropy_data, subgroup_order
from pshecke.exact_rings import TorusPoint
from fractions import Fraction

# simple roots in coordinates of the root lattice; coroots as rows of the Cartan matrix transpose
DATA = {
    "A1": ([[1]], [[2]]),
    "A2": ([[1, -1, 0], [0, 1, -1]], [[1, -1, 0], [0, 1, -1]]),
    "A3": ([[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]], [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]]),
    "B2": ([[1, -1], [0, 1]], [[1, -1], [0, 2]]),
    "G2": ([[1, 0], [0, 1]], [[2, -1], [-3, 2]]),
}


@pytest.mark.parametrize("name", sorted(DATA))
def test_weyl_order_and_root_count_against_sympy(name):
    dt = BasedRootDatum(*DATA[name], name=name)
    assert len(dt.weyl) == int(WeylGroup(name).group_order())
    assert len(dt.roots) == len(RootSystem(name).all_roots())
    assert sum(dt.positive) * 2 == len(dt.roots)


@pytest.mark.parametrize("name", sorted(DATA))
def test_longest_element_length(name):
    dt = BasedRootDatum(*DATA[name], name=name)
    assert max(dt.length(w) for w in range(len(dt.weyl))) == sum(dt.positive)


def test_bad_pairing_rejected():
    with pytest.raises(DatumError):
        BasedRootDatum([[1]], [[1]])


def test_gamma_must_preserve_simple_roots():
    with pytest.raises(DatumError):
        BasedRootDatum([[1, 0], [0, 1]], [[2, 0], [0, 2]], [[[1, 1], [0, 1]]])


def test_swap_gamma():
    dt = BasedRootDatum([[1, 0], [0, 1]], [[2, 0], [0, 2]], [[[0, 1], [1, 0]]])
    assert len(dt.gammas) == 2 and dt.order() == 8
    assert dt.simple_orbit_of(0) == dt.simple_orbit_of(1)
    assert [det_character(e) for e in generate_weyl(dt)].count(-1) == 4


def test_two_divisibility():
    assert is_coroot_two_divisible(BasedRootDatum([[1]], [[2]]), 0)
    assert not is_coroot_two_divisible(BasedRootDatum([[2]], [[1]]), 0)


@given(st.lists(st.integers(0, 3), min_size=0, max_size=8))
def test_reduced_words_multiply_out(word):
    dt = BasedRootDatum(*DATA["B2"])
    m = lat.identity(2)
    for i in word:
        m = lat.mat_mul(m, dt.reflections[i % 2])
    w = dt.weyl_index[m]
    prod = lat.identity(2)
    for i in dt.weyl_words[w]:
        prod = lat.mat_mul(prod, dt.reflections[i])
    assert prod == m
    assert dt.length(w) <= len(word) and dt.length(w) % 2 == len(word) % 2


def test_isotropy_factorization_c2():
    dt = BasedRootDatum(*DATA["B2"])
    for u in ([0, 0], [Fraction(1, 2), 0], [Fraction(1, 2), Fraction(1, 2)], [0, Fraction(1, 2)]):
        iso = isotropy_data(dt, TorusPoint(u, [0, 0]))
        assert len(iso.group) == iso.weyl_pos_order * len(iso.gamma_pos)
        assert iso.weyl_pos_order == subgroup_order(dt, iso.positive_system)
