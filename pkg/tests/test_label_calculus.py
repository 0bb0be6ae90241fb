import pytest
from hypothesis import given, strategies as st

from pshecke.label_calculus import (ArithmeticRootData, LabelDataError, labels_padic, labels_galois, corrupt,
                                    check_label_match, case_space, label_invariants, CASE_TAGS, NONEXCEPTIONAL,
                                    EXC_UNRAM_TRIVIAL, EXC_UNRAM_NONTRIVIAL, EXC_RAMIFIED)

# hand values: (data, (lam, lam*))
HAND = [
    (ArithmeticRootData(1, NONEXCEPTIONAL), (1, 1)),
    (ArithmeticRootData(2, NONEXCEPTIONAL), (2, 2)),
    (ArithmeticRootData(1, NONEXCEPTIONAL, halved=True), (1, 0)),
    (ArithmeticRootData(2, EXC_UNRAM_TRIVIAL, 1), (3, 1)),
    (ArithmeticRootData(2, EXC_UNRAM_NONTRIVIAL, 1), (1, 1)),
    (ArithmeticRootData(1, EXC_RAMIFIED, 1), (1, 0)),
]


@pytest.mark.parametrize("data,expect", HAND)
def test_hand_values_both_sides(data, expect):
    assert labels_padic(data).as_tuple() == expect
    assert labels_galois(data).as_tuple() == expect


def test_full_case_space_agrees():
    n_valid = 0
    for data, ok in case_space((1, 2, 3)):
        if ok:
            n_valid += 1
            assert labels_padic(data) == labels_galois(data), data
    assert n_valid > 0


@given(st.sampled_from(CASE_TAGS), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.booleans(),
       st.booleans())
def test_agreement_beyond_desk_range(tag, f, e, k, halved, member):
    d = ArithmeticRootData(f, tag, e, halved, k, member)
    try:
        d.validate()
    except LabelDataError:
        return
    p, g = labels_padic(d), labels_galois(d)
    assert p == g
    if p is not None:
        assert label_invariants(p, True)


def test_excluded_root():
    d = ArithmeticRootData(1, NONEXCEPTIONAL, membership=False)
    assert labels_padic(d) is None and labels_galois(d) is None


def test_invalid_data_rejected():
    with pytest.raises(LabelDataError):
        ArithmeticRootData(3, EXC_UNRAM_TRIVIAL, 1).validate()
    with pytest.raises(LabelDataError):
        ArithmeticRootData.from_json({"residue_degree_f": 1, "oops": 2})


def test_corrupted_side_names_the_orbit():
    ok, rows = check_label_match({"s0": HAND[3][0]}, galois=corrupt)
    assert not ok and rows[0].orbit == "s0" and not rows[0].match
