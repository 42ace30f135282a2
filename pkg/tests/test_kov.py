import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ovkit.core import BitVector, Family, Instance, full_mask
from ovkit.kov import (KovConfig, compress, decide_setcover_via_ov, reduce_setcover,
                       restrict_universe, solve_kov)
from ovkit.oracle import BudgetExceeded, decide_brute, decide_setcover_brute
from ovkit.representation import ReprConfig

from conftest import instances


def fam(sets, d):
    return Family.from_sets(sets, d)


class TestRestrict:
    def test_identity(self):
        f = fam([{1, 3}, {2}], 3)
        assert restrict_universe(f, BitVector(0b111, 3)) == f

    def test_empty_universe(self):
        f = fam([{1, 3}, {2}], 3)
        assert restrict_universe(f, BitVector(0, 3)) == Family(0, (0, 0))

    def test_hand_example(self):
        f = fam([{1, 3}, {2}], 3)
        r = BitVector.from_coords([1, 2], 3)
        assert restrict_universe(f, r) == fam([{1}, {2}], 2)

    def test_compress_keeps_order(self):
        assert compress(0b10110, [1, 2, 4]) == 0b111
        assert compress(0b10110, [0, 3]) == 0

    @given(instances(max_dim=8, max_k=3, max_n=4), st.data())
    def test_preserves_orthogonality_inside_r(self, inst, data):
        d = inst.dim
        r = BitVector(data.draw(st.integers(0, full_mask(d))), d)
        restricted = Instance(r.mask.bit_count(),
                              tuple(restrict_universe(f, r) for f in inst.families))
        expected = any(
            (r.mask & _meet(t, d)) == 0 for t in itertools.product(*(f.masks for f in inst.families))
        )
        assert decide_brute(restricted) == expected


def _meet(masks, d):
    acc = full_mask(d)
    for m in masks:
        acc &= m
    return acc


class TestSolve:
    def test_single_family(self):
        assert solve_kov(Instance.from_sets([[{1}, set()]], 2))
        assert not solve_kov(Instance.from_sets([[{1}, {2}]], 2))

    def test_three_families(self):
        assert solve_kov(Instance.from_sets([[{1}, {1, 2}], [{2}], [{3}]], 3))

    def test_full_sets(self):
        d = 6
        full = set(range(1, d + 1))
        assert not solve_kov(Instance.from_sets([[full]] * 3, d))

    def test_empty_family(self):
        assert not solve_kov(Instance(3, (Family(3, ()), fam([set()], 3), fam([set()], 3))))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            KovConfig(epsilon={3: 0})
        with pytest.raises(ValueError):
            KovConfig(epsilon_scale=0)
        with pytest.raises(ValueError):
            KovConfig(base2_solver="magic")

    def test_threshold(self):
        cfg = KovConfig(epsilon={3: 0.2}, epsilon_scale=0.5)
        assert cfg.threshold(3) == pytest.approx(0.1)
        assert KovConfig(epsilon_scale=1).threshold(2) == 0.5

    def test_enumeration_budget(self):
        d = 20
        heavy = [full_mask(d) & ~(1 << j) for j in range(d)]
        inst = Instance(d, (Family(d, tuple(heavy)),) * 3)
        with pytest.raises(BudgetExceeded):
            solve_kov(inst, KovConfig(max_enumeration_budget=4))
        assert solve_kov(inst) == decide_brute(inst)

    @settings(max_examples=200)
    @given(instances(max_dim=14, max_k=4, max_n=12))
    def test_matches_brute(self, inst):
        assert solve_kov(inst) == decide_brute(inst)

    @settings(max_examples=60)
    @given(instances(max_dim=10, max_k=4, max_n=8), st.sampled_from(["folklore", "repr"]),
           st.floats(0.05, 1.0))
    def test_other_base_solvers(self, inst, base2, scale):
        cfg = KovConfig(base2_solver=base2, epsilon_scale=scale,
                        repr_config=ReprConfig(candidates="exhaustive", caps=False))
        assert solve_kov(inst, cfg) == decide_brute(inst)

    @settings(max_examples=60)
    @given(instances(min_k=3, max_dim=10, max_k=4, max_n=8), st.floats(0.05, 0.5))
    def test_epsilon_override(self, inst, eps):
        cfg = KovConfig(epsilon={k: eps for k in range(3, 5)})
        assert solve_kov(inst, cfg) == decide_brute(inst)

    def test_dense_instance(self):
        # every member heavy forces the all-heavy enumeration branch
        d = 20
        members = [full_mask(d) & ~(1 << j) for j in range(d)]
        inst = Instance(d, (Family(d, tuple(members)),) * 3)
        assert solve_kov(inst) is False
        # a light empty member in one family makes the instance a yes
        mixed = Instance(d, inst.families[:2] + (Family(d, (0,)),))
        assert solve_kov(mixed) is True


class TestSetCover:
    def test_two_singletons(self):
        f = fam([{1}, {2}], 2)
        inst = reduce_setcover(2, f, 2)
        assert inst.families == (fam([{2}, {1}], 2),) * 2
        assert decide_setcover_via_ov(2, f, 2) is True

    def test_full_set(self):
        f = fam([{1, 2, 3}], 3)
        assert reduce_setcover(3, f, 2).families[0].masks == (0,)
        assert decide_setcover_via_ov(3, f, 2) is True

    def test_empty_set(self):
        f = fam([set()], 3)
        assert reduce_setcover(3, f, 2).families[0].masks == (0b111,)
        assert decide_setcover_via_ov(3, f, 2) is False

    def test_monotone_in_t(self):
        f = fam([{1, 2}, {3}, {2, 4}], 4)
        assert not decide_setcover_via_ov(4, f, 1)
        assert all(decide_setcover_via_ov(4, f, t) for t in (3, 4, 5))

    def test_empty_family(self):
        assert not decide_setcover_via_ov(3, Family(3, ()), 2)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            reduce_setcover(2, fam([{1}], 2), 0)
        with pytest.raises(ValueError):
            reduce_setcover(3, fam([{1}], 2), 1)

    @settings(max_examples=100)
    @given(st.integers(1, 8), st.integers(1, 4), st.data())
    def test_matches_brute(self, d, t, data):
        masks = data.draw(st.lists(st.integers(0, full_mask(d)), max_size=8))
        f = Family(d, tuple(masks))
        assert decide_setcover_via_ov(d, f, t) == decide_setcover_brute(d, f, t)


def test_deterministic_across_runs():
    inst = Instance.from_sets([[{1, 2}, {3}], [{2, 3}, {1}], [{1, 3}, {2}]], 3)
    assert len({solve_kov(inst) for _ in range(5)}) == 1
