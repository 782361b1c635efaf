import itertools

import pytest
from hypothesis import given, strategies as st

from iquot import (cyclic_group, endo_power, identity_endomorphism, scaling_endomorphism,
                   trivial_group, validate_endomorphism, validate_group)
from iquot.errors import EndomorphismError, GroupAxiomError


def test_trivial_group_is_valid():
    g = validate_group([[0]], 0)
    assert g.order == 1 and g.inv(0) == 0


def test_z2_is_valid():
    g = validate_group([[0, 1], [1, 0]], 0)
    assert g.inverse == (0, 1)


def test_bad_table_names_element_one():
    # 0 is a two-sided identity here; 1 has no inverse
    with pytest.raises(GroupAxiomError, match="x=1"):
        validate_group([[0, 1], [1, 1]], 0)


def test_wrong_identity_is_reported():
    with pytest.raises(GroupAxiomError, match="identity axiom violated at x=0"):
        validate_group([[0, 1], [1, 0]], 1)


def test_explicit_inverse_checked():
    with pytest.raises(GroupAxiomError, match="inverse"):
        validate_group([[0, 1, 2], [1, 2, 0], [2, 0, 1]], 0, inverse=[0, 1, 2])


def test_non_associative_table_rejected():
    # a Latin square with identity 0 that is not a group (order 5 loop)
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(GroupAxiomError, match="associativ"):
        validate_group(t, 0)


def test_shape_and_range_errors():
    with pytest.raises(GroupAxiomError):
        validate_group([[0, 1]], 0)
    with pytest.raises(GroupAxiomError):
        validate_group([[0, 2], [1, 0]], 0)


def test_endo_power_zero_is_identity_map():
    theta = scaling_endomorphism(4, 2)
    assert [endo_power(theta, 0, g) for g in range(4)] == [0, 1, 2, 3]


def test_endo_power_examples():
    z2 = cyclic_group(2)
    zero = validate_endomorphism(z2, [0, 0])
    assert endo_power(zero, 1, 1) == 0
    assert endo_power(scaling_endomorphism(4, 2), 2, 1) == 0
    assert endo_power(scaling_endomorphism(4, 2), 1, 1) == 2


def test_validate_endomorphism_examples():
    validate_endomorphism(cyclic_group(2), [0, 1])
    validate_endomorphism(cyclic_group(4), [0, 2, 0, 2])
    with pytest.raises(EndomorphismError, match=r"\(1,1\)"):
        validate_endomorphism(cyclic_group(4), [0, 1, 1, 1])


@given(n=st.integers(1, 9), k=st.integers(0, 8), t=st.integers(0, 12), g=st.integers(0, 8))
def test_endo_power_matches_modular_arithmetic(n, k, t, g):
    g %= n
    theta = scaling_endomorphism(n, k % n)
    assert endo_power(theta, t, g) == (pow(k % n, t, n) * g) % n


@given(n=st.integers(1, 8), k=st.integers(0, 7), s=st.integers(0, 6), t=st.integers(0, 6))
def test_endo_power_composes(n, k, s, t):
    theta = scaling_endomorphism(n, k % n)
    for g in range(n):
        assert endo_power(theta, s + t, g) == endo_power(theta, s, endo_power(theta, t, g))


@given(n=st.integers(1, 7))
def test_cyclic_groups_satisfy_axioms(n):
    g = cyclic_group(n)
    for x, y, z in itertools.product(range(n), repeat=3):
        assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))
    assert all(g.mul(x, g.inv(x)) == g.identity for x in range(n))
    assert identity_endomorphism(g).map == tuple(range(n))


def test_trivial_group_helper():
    assert trivial_group().table == ((0,),)
