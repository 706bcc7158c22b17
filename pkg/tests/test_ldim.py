import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regretlab import (
    EmptyVersionSpace,
    LdimComputer,
    ShatteredTree,
    VersionSpace,
    ldim,
    ldim_witness_check,
)

from .conftest import make_class
from .oracles import exists_shattered_tree, ldim_by_enumeration


def test_quad_class_has_dimension_two(quad_class):
    result = ldim(quad_class, want_witness=True)
    assert result.value == 2
    assert result.witness.depth == 2
    assert ldim_witness_check(quad_class, quad_class.full_space(), result.witness)


def test_quad_class_known_tree_is_shattered(quad_class):
    tree = ShatteredTree(2, (0, 1, 2))
    assert ldim_witness_check(quad_class, quad_class.full_space(), tree)


def test_quad_class_no_depth_three_tree(quad_class):
    assert not exists_shattered_tree(quad_class, None, 3)


def test_singleton_class_dimension_zero():
    cls = make_class([[0, 1, 0]])
    assert ldim(cls).value == 0


def test_empty_member_set_rejected(quad_class):
    with pytest.raises(EmptyVersionSpace):
        ldim(quad_class, VersionSpace(0, 4))


def test_depth_zero_tree_accepted(quad_class):
    assert ldim_witness_check(quad_class, quad_class.full_space(), ShatteredTree(0, ()))


def test_threshold_class_dimension_verified_by_enumeration(threshold8):
    value = ldim(threshold8).value
    assert value == ldim_by_enumeration(threshold8)
    assert exists_shattered_tree(threshold8, None, value)
    assert not exists_shattered_tree(threshold8, None, value + 1)


def test_witness_tree_shape_rule():
    with pytest.raises(ValueError):
        ShatteredTree(2, (0, 1))


def test_witness_cap():
    table = np.zeros((25, 2), dtype=np.int8)
    table[:, 0] = np.arange(25) % 2
    cls = make_class(table)
    with pytest.raises(ValueError):
        ldim(cls, want_witness=True, witness_cap=20)
    assert ldim(cls).value >= 1  # value computation itself is not capped


def test_memo_is_per_computer(quad_class, threshold8):
    a, b = LdimComputer(quad_class), LdimComputer(threshold8)
    assert a.value(quad_class.full_space().mask) == 2
    assert b.value(threshold8.full_space().mask) == 2
    assert a._memo is not b._memo


small_tables = st.integers(1, 6).flatmap(
    lambda d: st.integers(1, 6).flatmap(
        lambda n: st.lists(
            st.integers(0, 1), min_size=d * n, max_size=d * n
        ).map(lambda bits: np.array(bits).reshape(d, n))
    )
)


@given(small_tables)
@settings(max_examples=60, deadline=None)
def test_recursion_matches_enumeration(table):
    cls = make_class(table)
    assert ldim(cls).value == ldim_by_enumeration(cls)


@given(small_tables)
@settings(max_examples=100, deadline=None)
def test_log2_ceiling(table):
    cls = make_class(table)
    assert ldim(cls).value <= cls.d.bit_length() - 1


@given(small_tables, st.integers(0, 2**6 - 1))
@settings(max_examples=100, deadline=None)
def test_monotone_in_members(table, raw_mask):
    cls = make_class(table)
    mask = raw_mask & ((1 << cls.d) - 1)
    if mask == 0:
        return
    subset = VersionSpace(mask, cls.d)
    assert ldim(cls, subset).value <= ldim(cls).value


@given(small_tables)
@settings(max_examples=40, deadline=None)
def test_witness_always_verifies(table):
    cls = make_class(table)
    result = ldim(cls, want_witness=True)
    assert result.witness.depth == result.value
    assert ldim_witness_check(cls, cls.full_space(), result.witness)
