import pytest
from hypothesis import given, strategies as st

from ovkit.core import BitVector, Family, Instance, iter_submasks
from ovkit.folklore import (closure_bound, count_kov_folklore, count_masks,
                            decide_kov_folklore, dense_superset_array, down_closure,
                            superset_counts, superset_table)
from ovkit.oracle import BudgetExceeded, count_brute, decide_brute

from conftest import instances


def fam(sets, d):
    return Family.from_sets(sets, d)


class TestDownClosure:
    def test_pair(self):
        assert {v.bits for v in down_closure(fam([{1, 2}], 2))} == \
            {frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})}

    def test_empty_member(self):
        assert down_closure(fam([set()], 3)) == {BitVector(0, 3)}

    def test_shared_empty_set(self):
        assert len(down_closure(fam([{1}, {2}], 2))) == 3

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            down_closure(fam([{1, 2, 3, 4}], 4), budget=15)

    @given(st.lists(st.integers(0, 255), min_size=1, max_size=6))
    def test_closed_under_subsets(self, masks):
        closure = down_closure(Family(8, tuple(masks)))
        keys = {v.mask for v in closure}
        assert len(keys) <= closure_bound(masks)
        for x in keys:
            assert set(iter_submasks(x)) <= keys
            assert any(x & ~m == 0 for m in masks)


class TestSupersetCounts:
    def test_hand_example(self):
        t = superset_counts(fam([{1, 2}, {1}], 2))
        assert [t[0b00], t[0b01], t[0b10], t[0b11]] == [2, 2, 1, 1]

    def test_singleton(self):
        t = superset_counts(fam([{1, 3}], 3))
        assert all(t[x] == 1 for x in iter_submasks(0b101))
        assert t[0b010] == 0

    def test_multiplicity(self):
        t = superset_counts(fam([{2}, {2}], 2))
        assert t[BitVector.from_coords([2], 2)] == 2

    @given(st.integers(1, 8), st.data())
    def test_matches_direct_count(self, d, data):
        masks = data.draw(st.lists(st.integers(0, (1 << d) - 1), min_size=1, max_size=8))
        table = superset_table(masks, d)
        dense = dense_superset_array(masks, d)
        for x in range(1 << d):
            direct = sum(1 for m in masks if x & ~m == 0)
            assert table.get(x, 0) == direct == dense[x]


class TestCount:
    def test_single_pair(self):
        assert count_kov_folklore(Instance.from_sets([[{1}], [{2}]], 2)) == 1

    def test_three_families(self):
        inst = Instance.from_sets([[{1}, {1, 2}], [{2}], [{3}]], 3)
        assert count_kov_folklore(inst) == 2
        assert decide_kov_folklore(inst)

    def test_cancellation(self):
        inst = Instance.from_sets([[{1}], [{1}]], 1)
        assert count_kov_folklore(inst) == 0
        assert not decide_kov_folklore(inst)

    def test_empty_family(self):
        inst = Instance(3, (Family(3, ()), fam([{1}], 3)))
        assert count_kov_folklore(inst) == 0
        assert not decide_kov_folklore(inst)

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            count_masks([[1]], 1, backend="gpu")

    def test_large_dimension_sparse(self):
        # d beyond the dense range; small members keep the closure tiny
        d = 100
        a = Family(d, (1 << 0, 1 << 50, (1 << 99) | 1))
        b = Family(d, (1 << 0, 1 << 99))
        inst = Instance(d, (a, b))
        assert count_kov_folklore(inst) == count_brute(inst) == 3

    def test_huge_counts_stay_exact(self):
        # 2^64 tuples of empty vectors would overflow fixed-width counters
        inst = Instance(1, (Family(1, (0,) * 256),) * 8)
        assert count_kov_folklore(inst) == 256 ** 8

    @pytest.mark.parametrize("backend", ["sparse", "dense", "auto"])
    @given(inst=instances(max_dim=8, max_k=4, max_n=6))
    def test_matches_brute(self, backend, inst):
        assert count_kov_folklore(inst, backend=backend) == count_brute(inst)
        assert decide_kov_folklore(inst, backend=backend) == decide_brute(inst)
