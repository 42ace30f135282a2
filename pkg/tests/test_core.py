import pytest
from hypothesis import given, strategies as st

from ovkit.core import (MAX_DIM, BitVector, Family, Instance, gen_planted, gen_random,
                        is_orthogonal, iter_submasks, parse_bitstring, round_half_up)


def bv(coords, d):
    return BitVector.from_coords(coords, d)


class TestParse:
    def test_all_zero(self):
        v = parse_bitstring("000")
        assert v.dim == 3 and v.bits == frozenset()

    def test_leftmost_is_first_coordinate(self):
        assert parse_bitstring("101").bits == {1, 3}
        assert parse_bitstring("100").mask == 1

    def test_full_128(self):
        v = parse_bitstring("1" * 128)
        assert v.bits == frozenset(range(1, 129))

    @pytest.mark.parametrize("bad", ["", "102", "1" * 129, "10 1"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_bitstring(bad)

    @given(st.text(alphabet="01", min_size=1, max_size=MAX_DIM))
    def test_round_trip(self, s):
        assert parse_bitstring(s).to_bitstring() == s


class TestBitVector:
    def test_mask_out_of_range(self):
        with pytest.raises(ValueError):
            BitVector(0b1000, 3)

    def test_coordinate_out_of_range(self):
        with pytest.raises(ValueError):
            bv([4], 3)

    def test_set_ops(self):
        u, v = bv([1, 2], 3), bv([2, 3], 3)
        assert (u & v).bits == {2}
        assert (u | v).bits == {1, 2, 3}
        assert not u.isdisjoint(v)
        assert bv([2], 3).issubset(u)
        assert len(u) == 2

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            bv([1], 3) & bv([1], 4)


class TestOrthogonal:
    def test_disjoint_pair(self):
        assert is_orthogonal([bv([1, 2], 3), bv([3], 3)])

    def test_identical_singletons(self):
        assert not is_orthogonal([bv([1], 1), bv([1], 1)])

    def test_triangle(self):
        assert is_orthogonal([bv([1, 2], 3), bv([2, 3], 3), bv([3, 1], 3)])

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            is_orthogonal([bv([1], 2), bv([2], 3)])

    @given(st.lists(st.integers(0, 255), min_size=1, max_size=5))
    def test_matches_set_semantics(self, masks):
        vs = [BitVector(m, 8) for m in masks]
        common = set(range(1, 9))
        for v in vs:
            common &= v.bits
        assert is_orthogonal(vs) == (not common)


def test_iter_submasks_counts():
    assert sorted(iter_submasks(0b101)) == [0, 1, 4, 5]
    assert list(iter_submasks(0)) == [0]


def test_round_half_up_tolerates_float_noise():
    assert round_half_up(0.33 * 12) == 4
    assert round_half_up(2.5) == 3
    assert round_half_up(1 / 3 * 6) == 2


class TestGenRandom:
    def test_density_zero(self):
        inst = gen_random(4, 2, [3, 3], 0.0, 7)
        assert all(m == 0 for f in inst.families for m in f.masks)

    def test_density_one(self):
        inst = gen_random(4, 2, [3, 3], 1.0, 7)
        assert all(m == 0b1111 for f in inst.families for m in f.masks)

    def test_seed_determinism(self):
        assert gen_random(8, 2, [5, 5], 0.5, 1) == gen_random(8, 2, [5, 5], 0.5, 1)

    @pytest.mark.parametrize("args", [
        (0, 1, [1], 0.5), (129, 1, [1], 0.5), (4, 2, [1], 0.5), (4, 1, [0], 0.5), (4, 1, [1], 1.5),
    ])
    def test_rejects(self, args):
        with pytest.raises(ValueError):
            gen_random(*args, seed=0)

    @given(st.integers(1, 20), st.integers(1, 4), st.integers(0, 1000))
    def test_shape(self, d, k, seed):
        inst = gen_random(d, k, [3] * k, 0.5, seed)
        assert inst.dim == d and inst.sizes == (3,) * k


class TestGenPlanted:
    def test_pair(self):
        p = gen_planted(6, 2, (1 / 3, 1 / 3), 4, 3)
        assert [len(w) for w in p.witness] == [2, 2]
        assert is_orthogonal(p.witness)

    def test_triple(self):
        p = gen_planted(10, 3, (0.2, 0.2, 0.2), 8, 5)
        assert is_orthogonal(p.witness)

    def test_single_family_witness_is_empty(self):
        p = gen_planted(6, 1, (0,), 2, 1)
        assert p.witness[0].mask == 0

    def test_infeasible_weights(self):
        with pytest.raises(ValueError):
            gen_planted(6, 2, (0.6, 0.6), 4, 0)
        with pytest.raises(ValueError):
            gen_planted(6, 1, (0.5,), 4, 0)

    @given(st.integers(1, 40), st.integers(2, 4), st.integers(1, 10), st.integers(0, 10**6),
           st.floats(0, 0.5))
    def test_witness_is_member_and_orthogonal(self, d, k, n, seed, w):
        p = gen_planted(d, k, [w] * k, n, seed)
        assert is_orthogonal(p.witness)
        for fam, v in zip(p.instance.families, p.witness):
            assert len(fam) == n
            assert v.mask in fam.masks
            assert all(m.bit_count() == len(v) for m in fam.masks)


def test_instance_validation():
    with pytest.raises(ValueError):
        Instance(3, ())
    with pytest.raises(ValueError):
        Instance(3, (Family(4, ()),))
    inst = Instance.from_sets([[{1}, {1, 2}], [{2}], [{3}]], 3)
    assert inst.k == 3 and inst.sizes == (2, 1, 1)
