from hypothesis import given
from hypothesis import strategies as st

from dgematch._intersect import gallop_intersect, intersect_sorted, merge_intersect

sorted_sets = st.lists(st.integers(0, 400), unique=True).map(sorted)


@given(sorted_sets, sorted_sets)
def test_all_strategies_equal_set_intersection(a, b):
    want = sorted(set(a) & set(b))
    assert merge_intersect(a, b) == want
    assert gallop_intersect(a, b) == want
    assert gallop_intersect(b, a) == want
    assert intersect_sorted(a, b) == want


def test_gallop_path_taken_for_skewed_lengths():
    big = list(range(0, 10_000, 3))
    assert intersect_sorted([3, 4, 9999], big) == [3, 9999]
    assert intersect_sorted(big, []) == []
