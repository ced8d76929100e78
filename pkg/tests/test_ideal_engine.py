import pytest
from hypothesis import given, settings, strategies as st

from principal_subspaces.ideal_engine import (IdealSpec, Window, ambient_dim, graded_indices,
                                              ideal_graded_component, membership,
                                              membership_growing, quotient_dim)
from principal_subspaces.upbw import AffineWeight, GradedIndex, loop_algebra, r_generator

alg = loop_algebra(2)
A1, A2, TH = 0, 1, 2


def spec_of(*coords):
    return IdealSpec.from_weight(AffineWeight(coords))


def test_power_exponents():
    assert dict(spec_of(2, 1, 3).powers) == {A1: 2 + 3 + 1, A2: 2 + 1 + 1, TH: 2 + 1}
    assert dict(spec_of(0, 1, 1).powers)[TH] == 1


def test_full_component_at_vacuum():
    s = spec_of(1, 0, 0)
    g = GradedIndex(2, (2, 0))
    comp = ideal_graded_component(s, g, Window(w_max=2))
    assert comp.rank == 1 and comp.codim == 0
    assert quotient_dim(s, g, Window(w_max=2)) == 0


def test_empty_component_at_vacuum():
    s = spec_of(1, 0, 0)
    g = GradedIndex(1, (1, 0))
    assert ideal_graded_component(s, g, Window(w_max=1)).rank == 0
    assert quotient_dim(s, g, Window(w_max=1)) == 1


def test_power_generator_kills_lambda1():
    assert quotient_dim(spec_of(0, 1, 0), GradedIndex(1, (1, 0)), Window(w_max=1)) == 0


def test_theta_power_in_level_two():
    comp = ideal_graded_component(spec_of(0, 1, 1), GradedIndex(1, (1, 1)), Window(w_max=1))
    assert comp.contains(alg.x(TH, -1))


def test_membership_examples():
    w = Window(w_max=3)
    assert membership(spec_of(1, 1, 0), alg.x(A2, -1) ** 3, w)
    assert membership(spec_of(0, 1, 1), alg.zero(), w)
    assert not membership(spec_of(0, 1, 1), alg.x(A1, -1), w)


def test_membership_rejects_out_of_window():
    with pytest.raises(ValueError):
        membership(spec_of(1, 0, 0), alg.x(A1, -4), Window(w_max=2))
    with pytest.raises(ValueError):
        ideal_graded_component(spec_of(1, 0, 0), GradedIndex(3, (1, 0)), Window(w_max=2))


def test_membership_projects_positive_modes():
    s = spec_of(1, 0, 0)
    assert membership(s, alg.x(A1, -2) * alg.x(A2, 0), Window(w_max=2))


def test_membership_growing_finds_certificate():
    s = spec_of(1, 0, 0)
    ok, t = membership_growing(s, alg.x(A2, -1) * r_generator(alg, 1, 4, 1))
    assert ok and t == 5
    # a right multiple needs the extra x_theta(-1) generator
    right = r_generator(alg, 1, 4, 1) * alg.x(A2, -1)
    assert not membership_growing(s, right, growth_cap=3)[0]
    assert membership_growing(IdealSpec.vacuum(2, 1, {(1, 1): 1}), right)[0]
    ok, _ = membership_growing(s, alg.x(A1, -1), growth_cap=2)
    assert not ok


def test_ideal_contains_generators_componentwise():
    s = spec_of(1, 0, 0)
    for t in range(2, 6):
        for i in (1, 2):
            assert membership(s, r_generator(alg, i, t, 1), Window(w_max=5))


@pytest.mark.parametrize("coords", [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 1, 1)])
def test_ranks_monotone_in_seed_window(coords):
    s = spec_of(*coords)
    for g in graded_indices(2, 4, 4):
        ranks = [ideal_graded_component(s, g, Window(w_max=4, t_max=t)).rank
                 for t in range(4, 8)]
        assert ranks == sorted(ranks)
        assert ranks[-1] <= ambient_dim(s, g)


def test_rows_are_homogeneous():
    s = spec_of(1, 1, 0)
    for g in graded_indices(2, 4, 4):
        comp = ideal_graded_component(s, g, Window(w_max=4))
        for row in comp.rows():
            assert set(row.components()) <= {g}


def test_bad_specs():
    with pytest.raises(ValueError):
        IdealSpec(2, 0)


levels = st.sampled_from([(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 1, 0), (0, 1, 1)])


@settings(max_examples=25, deadline=None)
@given(levels, st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_ideal_is_left_ideal(coords, w, c1, c2):
    s = spec_of(*coords)
    g = GradedIndex(w, (c1, c2))
    if g.weight + 2 > 5 or not alg.enumerate_monomials(g):
        return
    win = Window(w_max=5, t_max=7)
    comp = ideal_graded_component(s, g, win)
    for row in comp.rows():
        for root in range(3):
            for m in (-2, -1, 0, 1):
                prod = alg.x(root, m) * row
                assert membership(s, prod, win)
