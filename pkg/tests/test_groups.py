import itertools

import pytest

from hullcover.core import InputError, is_independent
from hullcover.groups import (
    FiniteAbelianGroup,
    dependent_coset_pair,
    invariant_factor_groups,
    is_linearly_independent,
    linear_hull,
    n_torsion,
    primary_decomposition,
    subgroup_closure,
)
from hullcover.zoo import build_abelian_linear_matroid

Z4 = FiniteAbelianGroup((4,))
Z6 = FiniteAbelianGroup((6,))
Z2Z4 = FiniteAbelianGroup((2, 4))


def brute_torsion(G, n):
    return frozenset(x for x in G.elements if G.scalar(n, x) == G.zero)


# --- group basics -------------------------------------------------------------


def test_group_shape():
    assert Z2Z4.order == 8
    assert Z2Z4.exponent == 4
    assert len(Z2Z4.elements) == 8
    assert Z2Z4.zero == (0, 0)
    assert Z2Z4.element_order((1, 2)) == 2
    assert Z4.element(3) == (3,)


def test_group_validation():
    with pytest.raises(InputError):
        FiniteAbelianGroup((1,))
    with pytest.raises(InputError):
        Z4.element((4,))
    with pytest.raises(InputError):
        Z2Z4.element((0,))


def test_trivial_group_edge_cases():
    T = FiniteAbelianGroup(())
    assert T.order == 1 and T.exponent == 1
    assert T.elements == ((),)
    assert subgroup_closure(T, []) == {()}
    assert primary_decomposition(T).direct_sum_verified


# --- subgroup closure ----------------------------------------------------------


def test_subgroup_closure_examples():
    assert subgroup_closure(Z6, [(2,)]) == {(0,), (2,), (4,)}
    Z2Z2 = FiniteAbelianGroup((2, 2))
    assert subgroup_closure(Z2Z2, [(1, 0), (0, 1)]) == set(Z2Z2.elements)
    assert subgroup_closure(Z4, []) == {(0,)}


def test_subgroup_closure_is_a_subgroup():
    for G in invariant_factor_groups(12):
        for size in range(min(3, G.order) + 1):
            for B in itertools.combinations(G.elements, size):
                S = subgroup_closure(G, B)
                assert G.zero in S
                for x in S:
                    assert G.neg(x) in S
                    for y in S:
                        assert G.add(x, y) in S


# --- division hull --------------------------------------------------------------


def test_linear_hull_examples():
    assert linear_hull(Z4, [(2,)]) == {(0,), (1,), (2,), (3,)}
    assert linear_hull(Z6, [(3,)]) == {(0,), (1,), (3,), (5,)}
    assert linear_hull(Z6, []) == {(0,)}


def test_linear_hull_contains_subgroup_closure():
    for G in [Z4, Z6, Z2Z4]:
        for size in range(3):
            for B in itertools.combinations(G.elements, size):
                assert subgroup_closure(G, B) <= linear_hull(G, B)


# --- torsion ---------------------------------------------------------------------


def test_n_torsion_examples():
    assert n_torsion(Z4, 2) == {(0,), (2,)}
    assert n_torsion(Z6, 2) == {(0,), (3,)}
    assert n_torsion(Z2Z4, 2) == {(0, 0), (1, 0), (0, 2), (1, 2)}
    with pytest.raises(InputError):
        n_torsion(Z4, 0)


def test_n_torsion_matches_brute_force_and_is_a_subgroup():
    for G in invariant_factor_groups(12):
        for n in range(1, 13):
            S = n_torsion(G, n)
            assert S == brute_torsion(G, n)
            for x in S:
                for y in S:
                    assert G.add(x, y) in S


def test_torsion_is_monotone_under_divisibility():
    for G in invariant_factor_groups(12):
        for n in range(1, 13):
            for m in range(1, n + 1):
                if n % m == 0:
                    assert n_torsion(G, m) <= n_torsion(G, n)


# --- primary decomposition --------------------------------------------------------


def test_primary_decomposition_examples():
    rep = primary_decomposition(Z6)
    assert set(rep.components[2]) == {(0,), (3,)}
    assert set(rep.components[3]) == {(0,), (2,), (4,)}
    assert rep.direct_sum_verified

    single = primary_decomposition(FiniteAbelianGroup((8,)))
    assert list(single.components) == [2]
    assert len(single.components[2]) == 8

    rep23 = primary_decomposition(FiniteAbelianGroup((2, 3)))
    assert rep23.component_sizes == {2: 2, 3: 3}


def test_primary_decomposition_verifies_for_all_small_groups():
    for G in invariant_factor_groups(12):
        rep = primary_decomposition(G)
        assert rep.direct_sum_verified
        product = 1
        for comp in rep.components.values():
            product *= len(comp)
        assert product == G.order


# --- linear independence -----------------------------------------------------------


def test_linear_independence_examples():
    assert is_linearly_independent(FiniteAbelianGroup((2, 3)), [(1, 0), (0, 1)])
    assert not is_linearly_independent(Z4, [(1,), (3,)])
    assert is_linearly_independent(Z4, [])
    assert not is_linearly_independent(Z4, [(0,)])


def test_large_sets_fall_back_to_the_hull_route():
    G = FiniteAbelianGroup((2, 2, 2))
    nonzero = [e for e in G.elements if e != G.zero]
    assert not is_linearly_independent(G, nonzero)  # 7 elements, above the direct limit


def test_linear_independence_agrees_with_division_hull_matroid():
    for G in invariant_factor_groups(8):
        M = build_abelian_linear_matroid(G)
        for size in range(min(3, G.order) + 1):
            for A in itertools.combinations(G.elements, size):
                direct = is_linearly_independent(G, A)
                hull = is_independent(M, [M.index_of(e) for e in A])
                assert direct == hull, (G.orders, A)


# --- dependent coset pairs -----------------------------------------------------------


def test_coset_pair_on_z4():
    cert = dependent_coset_pair(Z4, 2, 1, 1, 0, 2)
    assert cert.pair == ((1,), (3,))
    assert cert.multiplier == 2
    assert cert.common_image == (2,)
    assert not is_linearly_independent(Z4, cert.pair)


def test_coset_pair_on_z2_z4():
    cert = dependent_coset_pair(Z2Z4, 2, 1, (0, 1), (0, 0), (1, 2))
    assert cert.pair == ((0, 1), (1, 3))
    assert cert.common_image == (0, 2)
    assert not is_linearly_independent(Z2Z4, cert.pair)


def test_coset_pair_preconditions_are_named():
    with pytest.raises(InputError, match="outside the p\\^n torsion"):
        dependent_coset_pair(Z4, 2, 1, 2, 0, 2)
    with pytest.raises(InputError, match="x and y must be distinct"):
        dependent_coset_pair(Z4, 2, 1, 1, 2, 2)
    with pytest.raises(InputError, match="not killed"):
        dependent_coset_pair(Z4, 2, 1, 1, 1, 2)
    with pytest.raises(InputError, match="prime"):
        dependent_coset_pair(Z4, 4, 1, 1, 0, 2)
    with pytest.raises(InputError, match="n must be"):
        dependent_coset_pair(Z4, 2, 0, 1, 0, 2)


def test_coset_pairs_validate_across_small_p_groups():
    checked = 0
    for G in [Z4, Z2Z4, FiniteAbelianGroup((8,)), FiniteAbelianGroup((2, 2, 4))]:
        torsion = n_torsion(G, 2)
        outside = [a for a in G.elements if a not in torsion]
        for a in outside[:2]:
            pairs = list(itertools.combinations(sorted(torsion), 2))[:3]
            for x, y in pairs:
                cert = dependent_coset_pair(G, 2, 1, a, x, y)
                assert not is_linearly_independent(G, cert.pair)
                checked += 1
    assert checked > 0


# --- enumeration ----------------------------------------------------------------------


def test_invariant_factor_enumeration():
    groups = invariant_factor_groups(16)
    assert len(groups) == 25
    assert all(g.order <= 16 for g in groups)
    orders16 = sorted(g.orders for g in groups if g.order == 16)
    assert orders16 == [(2, 2, 2, 2), (2, 2, 4), (2, 8), (4, 4), (16,)]
    for g in groups:
        for small, big in zip(g.orders, g.orders[1:]):
            assert big % small == 0
