import pytest

from extcalc import ArityError, SparseMap
from extcalc.sparse import format_coefficient


def test_insert_accumulate_and_exact_cancellation():
    m = SparseMap(2, {(1, 3): 1.0})
    m = m.insert_accumulate((2, 4), 109.0)
    m = m.insert_accumulate((1, 3), -1.0)
    m = m.insert_accumulate((7, 8), 5.0)
    m = m.insert_accumulate((2, 4), 4.0)
    assert m.terms == {(2, 4): 113.0, (7, 8): 5.0}


def test_addition_merges_and_cancels():
    a = SparseMap(2, {(1, 3): 1.0, (2, 4): 109.0})
    b = SparseMap(2, {(1, 3): -1.0, (7, 8): 5.0, (2, 4): 4.0})
    assert (a + b).terms == {(2, 4): 113.0, (7, 8): 5.0}


def test_add_requires_matching_arity():
    with pytest.raises(ArityError):
        SparseMap(2, {(1, 2): 1.0}) + SparseMap(3, {(1, 2, 3): 1.0})


def test_self_cancellation_is_exact():
    a = SparseMap(3, {(5, 1, 1): 1.5, (2, 2, 2): -0.3})
    assert not (a + a.scale(-1.0)).terms


def test_scale():
    a = SparseMap(4, {(5, 1, 1, 1): 1.5})
    assert a.scale(2.0).terms == {(5, 1, 1, 1): 3.0}
    assert not a.scale(0.0).terms
    assert (2 * a).terms == (a * 2).terms == a.scale(2).terms


def test_construction_accumulates_pairs_and_drops_zeros():
    m = SparseMap(1, [((2,), 1.0), ((2,), -1.0), ((3,), 0.0), ((1,), 4.0)])
    assert m.terms == {(1,): 4.0}


def test_key_validation():
    with pytest.raises(ArityError):
        SparseMap(2, {(1, 2, 3): 1.0})
    with pytest.raises(ValueError):
        SparseMap(1, {(0,): 1.0})
    with pytest.raises(ValueError):
        SparseMap(1, {(-2,): 1.0})


def test_lexicographic_iteration_any_insertion_order():
    pairs = [((2, 1), 5.0), ((1, 10), 1.0), ((1, 2), 2.0), ((2, 3), 3.0)]
    forward = SparseMap(2, pairs)
    backward = SparseMap(2, list(reversed(pairs)))
    want = [(1, 2), (1, 10), (2, 1), (2, 3)]
    assert list(forward.terms) == list(backward.terms) == want


def test_dimension_is_largest_index():
    assert SparseMap(2, {(1, 7): 1.0, (3, 2): 1.0}).dimension == 7
    assert SparseMap(2).dimension == 0


def test_zap_drops_at_or_below_tol():
    m = SparseMap(1, {(1,): 5e-12, (2,): 2e-11})
    assert m.zap(1e-11).terms == {(2,): 2e-11}
    assert not SparseMap(1, {(1,): 5e-12}).zap().terms
    assert m.zap(0.0).terms == m.terms


def test_equals_tolerance_and_empty_rule():
    a = SparseMap(2, {(1, 2): 1.0})
    b = SparseMap(2, {(1, 2): 1.0 + 5e-12})
    assert a.equals(a, 0.0)
    assert a.equals(b)
    assert not a.equals(b, 1e-13)
    assert a == a
    assert a != b
    # an empty map is the zero map whatever its recorded arity
    assert SparseMap(2).equals(SparseMap(5))
    assert SparseMap(2) == SparseMap(5)
    assert SparseMap(5).equals(SparseMap(2, {(1, 1): 1e-13}))
    assert not SparseMap(5).equals(SparseMap(2, {(1, 1): 1.0}))
    assert not a.equals(SparseMap(3, {(1, 2, 3): 1.0}))


def test_coefficient_formatting():
    assert format_coefficient(113.0) == "113"
    assert format_coefficient(-5.0) == "-5"
    assert format_coefficient(0.1) == "0.1"
    # round trip within 1e-15 relative
    x = 0.12345678901234567
    assert abs(float(format_coefficient(x)) - x) <= 1e-15 * abs(x)


def test_text_form_and_zero_line():
    m = SparseMap(2, {(2, 4): 113.0, (7, 8): 5.0, (1, 10): 0.5})
    assert m.to_text() == "1 10 : 0.5\n2 4 : 113\n7 8 : 5\n"
    assert SparseMap(3).to_text() == "zero k=3\n"
