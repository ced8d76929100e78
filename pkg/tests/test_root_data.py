from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from principal_subspaces.root_data import CocycleUndefined, Cocycle, build_root_data, root_data


def test_rank_two_roots_and_pairings():
    rs = build_root_data(2)
    assert rs.positive_roots == ((1, 0), (0, 1), (1, 1))
    assert rs.fund_weight_pairing[0][0] == Fraction(2, 3)
    assert rs.fund_weight_pairing[1][1] == Fraction(2, 3)
    assert rs.fund_weight_pairing[0][1] == Fraction(1, 3)


def test_rank_one():
    rs = build_root_data(1)
    assert rs.positive_roots == ((1,),)
    assert rs.cartan == ((2,),)


def test_rank_three_interval_roots():
    rs = build_root_data(3)
    assert len(rs.positive_roots) == 6
    for r in rs.positive_roots:
        ones = [i for i, c in enumerate(r) if c]
        assert set(r) <= {0, 1}
        assert ones == list(range(ones[0], ones[-1] + 1))


@pytest.mark.parametrize("n", [0, -1])
def test_rejects_bad_rank(n):
    with pytest.raises(ValueError):
        build_root_data(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_cartan_and_inverse(n):
    rs = root_data(n)
    for i, j in product(range(n), repeat=2):
        want = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
        assert rs.cartan[i][j] == want
        # <alpha_i, lambda_j> = delta_ij
        assert rs.root_weight_pairing(rs.simple_root(i + 1), rs.fundamental(j + 1)) == int(i == j)
        total = sum(rs.cartan[i][k] * rs.fund_weight_pairing[k][j] for k in range(n))
        assert total == int(i == j)
    assert len(rs.positive_roots) == n * (n + 1) // 2


def test_rank_two_cocycle_table():
    rs = root_data(2)
    coc = rs.cocycle
    assert coc.full
    l1, l2 = rs.fundamental(1), rs.fundamental(2)
    assert coc.eps(l1, l2) == 1
    assert coc.eps(l2, l1) == -1
    assert coc.eps(l1, l1) == 1 and coc.eps(l2, l2) == 1
    a1 = rs.root_to_weight((1, 0))
    a2 = rs.root_to_weight((0, 1))
    th = rs.root_to_weight((1, 1))
    assert coc.c(a1, a2) == -1
    assert coc.c(a1, th) == -1
    assert coc.eps((0, 0), l1) == 1 and coc.eps(l1, (0, 0)) == 1


def test_omega_pairings():
    rs = root_data(2)
    w1 = rs.omega(1)
    assert w1 == (1, -1)
    assert [rs.root_weight_pairing(r, w1) for r in rs.positive_roots] == [1, -1, 0]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_commutator_on_root_lattice(n):
    rs = root_data(n)
    coc = rs.cocycle
    roots = [r for r in rs.positive_roots] + [tuple(-x for x in r) for r in rs.positive_roots]
    for a, b in product(roots, repeat=2):
        want = -1 if rs.root_pairing(a, b) % 2 else 1
        assert coc.c(rs.root_to_weight(a), rs.root_to_weight(b)) == want


def test_fallback_cocycle_refuses_weight_first_argument():
    rs = root_data(2)
    coc = Cocycle(rs, None)
    with pytest.raises(CocycleUndefined):
        coc.eps(rs.fundamental(1), (0, 0))
    a1 = rs.root_to_weight((1, 0))
    assert coc.eps(a1, (0, 0)) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_structure_constants_antisymmetric(n):
    rs = root_data(n)
    for (a, b), (s, c) in rs.brackets.items():
        s2, c2 = rs.brackets[(b, a)]
        assert s2 == s and c2 == -c
    for a, b in product(range(rs.num_roots), repeat=2):
        summed = tuple(x + y for x, y in zip(rs.positive_roots[a], rs.positive_roots[b]))
        assert ((a, b) in rs.brackets) == (summed in rs.positive_roots)


weights2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@given(weights2, weights2, weights2)
def test_bimultiplicative(l, l2, m):
    coc = root_data(2).cocycle
    s = tuple(x + y for x, y in zip(l, l2))
    assert coc.eps(s, m) == coc.eps(l, m) * coc.eps(l2, m)
    assert coc.eps(m, s) == coc.eps(m, l) * coc.eps(m, l2)


@given(weights2, weights2)
def test_pairing_symmetric(l, m):
    rs = root_data(2)
    assert rs.weight_pairing(l, m) == rs.weight_pairing(m, l)
