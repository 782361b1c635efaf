import math

import pytest
from hypothesis import given, settings, strategies as st

from iquot import (Reilly, ReillyElement, close_generators, cyclic_group, l_class_coverage,
                   load_abstract, reference_window, scaling_endomorphism)
from iquot.errors import ProfileError, WindowError
from iquot.window import OVERFLOW, window_invariants

B = Reilly.bicyclic()


def naive_closure(gens, R, N):
    """Iterate S <- S u (S*S restricted to the window) until nothing changes."""
    S = {ReillyElement(*g) if len(g) == 3 else ReillyElement(g[0], 0, g[1]) for g in gens}
    S = {x for x in S if x.m <= N and x.n <= N}
    while True:
        new = {R.mul(x, y) for x in S for y in S}
        new = {z for z in new if z.m <= N and z.n <= N} | S
        if new == S:
            return S
        S = new


def ids(S):
    return {(e.m, e.n) for e in S.ids}


def test_single_generator_closure():
    S = close_generators([(0, 1)], B, 5)
    assert ids(S) == {(0, k) for k in range(1, 6)}
    top = S.index[ReillyElement(0, 0, 5)]
    for k in range(1, 6):
        assert S.product(top, S.index[ReillyElement(0, 0, k)]) is None
    assert S.l_horizon == 6


def test_even_closure():
    S = close_generators([(0, 2)], B, 8)
    assert ids(S) == {(0, 2), (0, 4), (0, 6), (0, 8)}


def test_empty_closure():
    S = close_generators([], B, 4)
    assert len(S) == 0
    assert l_class_coverage(S) == frozenset()


def test_generators_outside_window_rejected():
    with pytest.raises(WindowError):
        close_generators([(0, 9)], B, 4)


def test_reference_window_requires_closure():
    with pytest.raises(WindowError, match="not closed"):
        reference_window([(0, 0, 1)], B, 4)
    S = reference_window([(0, 0, 0)], B, 4)
    assert len(S) == 1 and S.complete


def test_right_zero_loads():
    S = load_abstract([("u", (0, 0)), ("v", (0, 0))],
                      {("u", "u"): "u", ("u", "v"): "v", ("v", "u"): "u", ("v", "v"): "v"}, 0)
    assert len(S) == 2 and S.complete and S.l_horizon == math.inf


def test_right_zero_profile_mismatch():
    table = {("u", "u"): "u", ("u", "v"): "v", ("v", "u"): "u", ("v", "v"): "v"}
    with pytest.raises(ProfileError, match="profile mismatch"):
        load_abstract([("u", (0, 0)), ("v", (0, 1))], table, 2)


def test_single_idempotent_loads():
    S = load_abstract([("e", (0, 0))], {("e", "e"): "e"}, 0)
    assert S.product(0, 0) == 0


def test_partial_table_is_overflow():
    S = load_abstract([("e", (0, 0)), ("a", (0, 1))],
                      {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): OVERFLOW}, 1)
    assert S.product(1, 1) is None
    assert not S.complete and S.l_horizon == 0


def test_undeclared_label_rejected():
    with pytest.raises(ProfileError, match="undeclared"):
        load_abstract([("e", (0, 0))], {("e", "f"): "e"}, 0)


def test_coverage_examples(bicyclic_S, even_S):
    assert l_class_coverage(bicyclic_S) == frozenset(range(21))
    assert l_class_coverage(even_S) == frozenset({2, 4, 6, 8})


reilly_ambients = st.sampled_from([(1, 0), (2, 1), (2, 0), (3, 2), (4, 2)])


@st.composite
def generator_sets(draw):
    n, k = draw(reilly_ambients)
    R = Reilly(cyclic_group(n), scaling_endomorphism(n, k))
    N = draw(st.integers(1, 5))
    gens = draw(st.lists(st.tuples(st.integers(0, N), st.integers(0, n - 1), st.integers(0, N)),
                         max_size=4))
    return R, N, gens


@settings(max_examples=60, deadline=None)
@given(generator_sets(), st.randoms(use_true_random=False))
def test_closure_matches_naive_fixpoint_and_ignores_order(case, rnd):
    R, N, gens = case
    S = close_generators(gens, R, N)
    assert set(S.ids) == naive_closure(gens, R, N)
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    T = close_generators(shuffled, R, N)
    assert T.ids == S.ids and T.ext == S.ext
    assert window_invariants(S) == []


@settings(max_examples=40, deadline=None)
@given(generator_sets())
def test_closure_is_monotone_in_window(case):
    R, N, gens = case
    small = set(close_generators(gens, R, N).ids)
    big = set(close_generators(gens, R, N + 1).ids)
    assert small <= big
    assert {x for x in big if x.m <= N and x.n <= N} >= small


@settings(max_examples=40, deadline=None)
@given(generator_sets())
def test_horizon_is_sound(case):
    """No element of the full closure with l below the horizon is missing from the window."""
    R, N, gens = case
    S = close_generators(gens, R, N)
    deeper = naive_closure(gens, R, 3 * N + 2)
    for x in deeper:
        if x.n < S.l_horizon and x.m <= N and x.n <= N:
            assert x in S.index
