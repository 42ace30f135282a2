import pytest
from hypothesis import given

from ovkit.core import Family, gen_random
from ovkit.io import (FormatError, dumps_instance, dumps_setcover, loads_instance,
                      loads_setcover, read_instance, write_instance, write_witness)

from conftest import instances


def test_minimal_file():
    inst = loads_instance("2 1\n1\n01\n")
    assert inst.dim == 2 and inst.k == 1
    assert inst.families[0].members[0].bits == {2}


@pytest.mark.parametrize("text", [
    "0 1\n1\n0\n",          # d must be positive
    "129 1\n0\n",           # d cap
    "2 0\n",                # k must be positive
    "2 1\n1\n011\n",        # row length
    "2 1\n2\n01\n",         # truncated
    "2 1\n1\n01\n10\n",     # trailing
    "2 1\n1\n0x\n",         # bad character
    "2\n",                  # short header
    "",
])
def test_malformed(text):
    with pytest.raises(FormatError):
        loads_instance(text)


def test_empty_family_allowed():
    inst = loads_instance("3 2\n0\n1\n101\n")
    assert inst.sizes == (0, 1)


def test_file_round_trip(tmp_path):
    inst = gen_random(9, 3, [4, 5, 6], 0.4, 11)
    path = tmp_path / "inst.txt"
    write_instance(inst, path)
    assert read_instance(path) == inst


@given(instances(allow_empty=True))
def test_text_round_trip(inst):
    assert loads_instance(dumps_instance(inst)) == inst


def test_setcover_round_trip():
    fam = Family.from_sets([{1, 2}, {2, 3}], 3)
    d, f, t = loads_setcover(dumps_setcover(3, fam, 2))
    assert (d, f, t) == (3, fam, 2)


@pytest.mark.parametrize("text", ["3 1 0\n111\n", "3 2 1\n111\n", "3 1 1\n11\n"])
def test_setcover_malformed(text):
    with pytest.raises(FormatError):
        loads_setcover(text)


def test_witness_file(tmp_path):
    fam = Family.from_sets([{1}, {3}], 3)
    path = tmp_path / "w"
    write_witness(fam.members, path)
    assert path.read_text() == "100\n001\n"
