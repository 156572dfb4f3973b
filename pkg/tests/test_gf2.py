"""Homology classes, spin matrices, and the twist action."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperspin import (
    HomologyClass,
    SpinMatrix,
    alpha,
    arf,
    beta,
    beta_pair,
    class_of,
    dehn_twist,
    evaluate,
    intersection,
)


def every_matrix(g):
    for key in range(1 << (2 * g)):
        yield SpinMatrix.from_key(g, key)


def every_class(g):
    mask = (1 << g) - 1
    for key in range(1 << (2 * g)):
        yield HomologyClass(g, key & mask, key >> g)


def random_class(g, rng):
    mask = (1 << g) - 1
    key = rng.randrange(1 << (2 * g))
    return HomologyClass(g, key & mask, key >> g)


matrices = st.integers(1, 12).flatmap(
    lambda g: st.tuples(
        st.just(g),
        st.integers(0, (1 << g) - 1),
        st.integers(0, (1 << g) - 1),
    )
).map(lambda t: SpinMatrix(*t))


def classes_for(g):
    word = st.integers(0, (1 << g) - 1)
    return st.tuples(st.just(g), word, word).map(lambda t: HomologyClass(*t))


# ---------------------------------------------------------------------------
# intersection


def test_intersection_of_dual_basis_classes():
    g = 3
    assert intersection(class_of(alpha(1), g), class_of(beta(1), g)) == 1
    assert intersection(class_of(alpha(1), g), class_of(alpha(2), g)) == 0
    assert intersection(class_of(beta(2), g), class_of(beta(3), g)) == 0
    assert intersection(class_of(alpha(2), g), class_of(beta(3), g)) == 0


def test_intersection_is_alternating():
    x = class_of(alpha(1), 2) + class_of(beta(2), 2)
    assert intersection(x, x) == 0
    for y in every_class(3):
        assert intersection(y, y) == 0


def test_intersection_is_bilinear_and_symmetric_g2():
    for x, y, z in itertools.product(every_class(2), repeat=3):
        assert intersection(x + y, z) == intersection(x, z) ^ intersection(y, z)
        assert intersection(x, y) == intersection(y, x)


def test_intersection_rejects_genus_mismatch():
    with pytest.raises(ValueError):
        intersection(HomologyClass.zero(2), HomologyClass.zero(3))


# ---------------------------------------------------------------------------
# evaluate


def test_evaluate_example_and_refinement_crosscheck():
    m = SpinMatrix.from_text("111/101")
    x = class_of(alpha(1), 3) + class_of(beta(1), 3)
    assert evaluate(m, x) == 1
    # same value through the quadratic refinement of the two basis values
    a1, b1 = class_of(alpha(1), 3), class_of(beta(1), 3)
    assert evaluate(m, x) == evaluate(m, a1) ^ evaluate(m, b1) ^ intersection(a1, b1)


def test_evaluate_zero_class_is_zero():
    for m in every_matrix(2):
        assert evaluate(m, HomologyClass.zero(2)) == 0


def test_evaluate_on_zero_matrix_sees_the_product_term():
    m = SpinMatrix.zero(2)
    x = class_of(alpha(1), 2) + class_of(beta(1), 2)
    assert evaluate(m, x) == 1


def test_evaluate_restricted_to_basis_reproduces_matrix():
    for m in every_matrix(3):
        for k in range(1, 4):
            assert evaluate(m, class_of(alpha(k), 3)) == m.column(k)[0]
            assert evaluate(m, class_of(beta(k), 3)) == m.column(k)[1]


def test_quadratic_refinement_exhaustive_g_le_3():
    for g in (1, 2, 3):
        for m in every_matrix(g):
            for x in every_class(g):
                for y in every_class(g):
                    assert evaluate(m, x + y) == (
                        evaluate(m, x) ^ evaluate(m, y) ^ intersection(x, y)
                    )


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_quadratic_refinement_randomized(data):
    g = data.draw(st.integers(1, 12))
    m = data.draw(
        st.tuples(st.integers(0, (1 << g) - 1), st.integers(0, (1 << g) - 1))
    )
    matrix = SpinMatrix(g, *m)
    x = data.draw(classes_for(g))
    y = data.draw(classes_for(g))
    assert evaluate(matrix, x + y) == (
        evaluate(matrix, x) ^ evaluate(matrix, y) ^ intersection(x, y)
    )


def test_evaluate_rejects_genus_mismatch():
    with pytest.raises(ValueError):
        evaluate(SpinMatrix.zero(2), HomologyClass.zero(3))


# ---------------------------------------------------------------------------
# arf


def test_arf_examples():
    assert arf(SpinMatrix.from_text("111/101")) == 0
    assert arf(SpinMatrix.zero(4)) == 0
    assert arf(SpinMatrix.from_text("100/100")) == 1


def test_arf_is_twist_invariant_exhaustive_g_le_4():
    for g in (1, 2, 3, 4):
        for m in every_matrix(g):
            for gamma in every_class(g):
                assert arf(dehn_twist(m, gamma)) == arf(m)


# ---------------------------------------------------------------------------
# dehn_twist


def test_twist_about_alpha_flips_bottom_entry():
    m = SpinMatrix.from_text("010/111")
    twisted = dehn_twist(m, class_of(alpha(1), 3))  # c(alpha_1) = 0
    assert str(twisted) == "010/011"
    fixed = dehn_twist(m, class_of(alpha(2), 3))  # c(alpha_2) = 1
    assert fixed == m


def test_twist_about_zero_class_is_identity():
    for m in every_matrix(2):
        assert dehn_twist(m, HomologyClass.zero(2)) == m


def test_twist_about_beta_pair_flips_both_tops():
    m = SpinMatrix.from_text("001/110")  # c(beta_1) + c(beta_2) = 0
    twisted = dehn_twist(m, class_of(beta_pair(1), 3))
    assert str(twisted) == "111/110"


def test_twist_is_an_involution_exhaustive_g_le_4():
    for g in (1, 2, 3, 4):
        for m in every_matrix(g):
            for gamma in every_class(g):
                assert dehn_twist(dehn_twist(m, gamma), gamma) == m


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_twist_matches_basiswise_formula(data):
    """The packed twist equals c(x) + (x.gamma)(c(gamma)+1) on every basis class."""
    g = data.draw(st.integers(1, 10))
    matrix = SpinMatrix(
        g,
        data.draw(st.integers(0, (1 << g) - 1)),
        data.draw(st.integers(0, (1 << g) - 1)),
    )
    gamma = data.draw(classes_for(g))
    twisted = dehn_twist(matrix, gamma)
    flip = evaluate(matrix, gamma) ^ 1
    for k in range(1, g + 1):
        ak, bk = class_of(alpha(k), g), class_of(beta(k), g)
        assert twisted.column(k)[0] == evaluate(matrix, ak) ^ (intersection(ak, gamma) & flip)
        assert twisted.column(k)[1] == evaluate(matrix, bk) ^ (intersection(bk, gamma) & flip)


def test_twist_rejects_genus_mismatch():
    with pytest.raises(ValueError):
        dehn_twist(SpinMatrix.zero(2), HomologyClass.zero(3))


# ---------------------------------------------------------------------------
# class_of and labels


def test_class_of_basis_labels():
    assert class_of(alpha(2), 3) == HomologyClass(3, 0b010, 0)
    assert class_of(beta_pair(1), 3) == HomologyClass(3, 0, 0b011)
    assert class_of(beta(3), 3) == HomologyClass(3, 0, 0b100)


def test_class_of_rejects_out_of_range_indices():
    with pytest.raises(ValueError):
        class_of(alpha(4), 3)
    with pytest.raises(ValueError):
        class_of(beta_pair(3), 3)
    with pytest.raises(ValueError):
        class_of(beta(0), 3)


# ---------------------------------------------------------------------------
# text format


@pytest.mark.parametrize("text", ["11111/10111", "0/1", "10/01", "111111/101101"])
def test_matrix_text_round_trip(text):
    assert str(SpinMatrix.from_text(text)) == text


@pytest.mark.parametrize(
    "text", ["111/10", "111", "11a/101", "/", "", "1/0/1", "11 1/101"]
)
def test_matrix_text_rejects_malformed(text):
    with pytest.raises(ValueError):
        SpinMatrix.from_text(text)


def test_matrix_key_round_trip():
    for m in every_matrix(3):
        assert SpinMatrix.from_key(3, m.key()) == m


def test_column_indexing_is_one_based_leftmost():
    m = SpinMatrix.from_text("100/001")
    assert m.column(1) == (1, 0)
    assert m.column(3) == (0, 1)
    with pytest.raises(ValueError):
        m.column(4)
