from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import reference as ref
from gtiframes.groups import (
    FiniteAbelianGroup,
    GroupFunction,
    InvalidInput,
    annihilator,
    constant,
    delta,
    dft,
    group_from_relations,
    idft,
    inner,
    iter_subgroups,
    make_group,
    random_function,
    random_subgroup,
    smith_diagonal,
    subgroup_from_generators,
    trivial_subgroup,
    weil_check,
    weil_check_dual,
    whole_group,
)
from strategies import factor_lists, weights


def test_make_group_trivial():
    G = make_group([1])
    assert G.order == 1
    assert G.elements() == [(0,)]


def test_make_group_plancherel_weight():
    G = make_group([2, 4])
    assert G.order == 8
    assert G.dual.weight == Fraction(1, 8)
    assert make_group([2, 4], "1/2").dual.weight == Fraction(1, 4)


def test_make_group_cyclic_12():
    G = make_group([12])
    assert G.order == 12 and G.rank == 1


def test_make_group_normalizes_non_chain():
    assert make_group([2, 3]).factors == (6,)
    assert make_group([4, 2]).factors == (2, 4)
    assert make_group([6, 10]).factors == (2, 30)


def test_make_group_rejects_nonpositive():
    with pytest.raises(InvalidInput):
        make_group([0, 3])
    with pytest.raises(InvalidInput):
        make_group([-2])
    with pytest.raises(InvalidInput):
        make_group([2], haar_weight=0)


def test_direct_constructor_requires_chain():
    with pytest.raises(InvalidInput):
        FiniteAbelianGroup((4, 2))


def test_smith_diagonal_known_matrix():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_group_from_relations():
    G = group_from_relations([[2, 0], [0, 3]])
    assert G.factors == (6,)
    with pytest.raises(InvalidInput):
        group_from_relations([[1, 1]])


def test_subgroup_from_generators_examples():
    G = make_group([12])
    H = subgroup_from_generators(G, [(3,)])
    assert H.elements == ((0,), (3,), (6,), (9,))
    assert subgroup_from_generators(G, []).elements == ((0,),)
    assert subgroup_from_generators(G, [(1,)]).order == 12


def test_subgroup_rejects_foreign_generator():
    with pytest.raises(InvalidInput):
        subgroup_from_generators(make_group([12]), [(12,)])


def test_annihilator_examples():
    G = make_group([12])
    H = subgroup_from_generators(G, [(3,)])
    assert annihilator(G, H).elements == ((0,), (4,), (8,))
    assert annihilator(G, whole_group(G)).elements == (G.dual.identity,)
    assert annihilator(G, trivial_subgroup(G)).order == 12
    assert annihilator(G, H).haar_weight == 1


@given(factor_lists(), st.data())
def test_annihilator_matches_enumeration(factors, data):
    G = make_group(factors)
    gens = data.draw(st.lists(st.sampled_from(G.elements()), max_size=2))
    H = subgroup_from_generators(G, gens)
    assert list(H.elements) == ref.closure(G.factors, gens)
    assert list(annihilator(G, H).elements) == ref.annihilator(G.factors, H.elements)


@given(factor_lists(), weights(), st.data())
def test_subgroup_lattice_invariants(factors, w, data):
    G = make_group(factors, w)
    gens = data.draw(st.lists(st.sampled_from(G.elements()), max_size=2))
    H = subgroup_from_generators(G, gens)
    perp = annihilator(G, H)
    assert G.order % H.order == 0
    assert H.order * perp.order == G.order
    # lattice-size rule
    assert H.haar_weight * H.order == G.weight * G.order
    # H^perp^perp = H under the canonical identification of G^^ with G
    assert annihilator(G.dual, perp).elements == H.elements
    # closed under addition and negation
    for x in H.elements:
        assert G.neg(x) in H
        for y in H.elements[:5]:
            assert G.add(x, y) in H


def test_dft_of_delta_and_constant():
    G = make_group([4])
    np.testing.assert_allclose(dft(delta(G)).values, np.ones(4), atol=1e-15)
    np.testing.assert_allclose(dft(constant(G)).values, [4, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(idft(dft(constant(G))).values, np.ones(4), atol=1e-15)


@given(factor_lists(), weights(), st.integers(0, 2**32 - 1))
def test_dft_matches_character_table(factors, w, seed):
    G = make_group(factors, w)
    f = random_function(G, np.random.default_rng(seed))
    expected = ref.dft(G.factors, f.values, float(G.weight))
    np.testing.assert_allclose(dft(f).values, expected, atol=1e-10 * max(1.0, np.abs(expected).max()))


@given(factor_lists(), weights(), st.integers(0, 2**32 - 1))
def test_plancherel_and_round_trip(factors, w, seed):
    G = make_group(factors, w)
    f = random_function(G, np.random.default_rng(seed))
    fh = dft(f)
    assert abs(fh.norm_sq() - f.norm_sq()) <= 1e-12 * f.norm_sq()
    assert np.abs(idft(fh).values - f.values).max() <= 1e-12 * np.abs(f.values).max()


def test_plancherel_on_z2_z6():
    G = make_group([2, 6])
    f = random_function(G, np.random.default_rng(7))
    direct_primal = sum(abs(v) ** 2 for v in f.values)
    direct_dual = float(G.dual.weight) * sum(abs(v) ** 2 for v in ref.dft(G.factors, f.values))
    assert direct_primal == pytest.approx(direct_dual, rel=1e-13)


def test_character_pairing_is_exact_on_quarter_turns():
    G = make_group([4])
    assert G.pairing((1,), (1,)) == 1j
    assert G.pairing((2,), (1,)) == -1


def test_inner_product_uses_point_weight():
    G = make_group([3], "1/3")
    f = constant(G)
    assert inner(f, f) == pytest.approx(1.0)


def test_weil_examples():
    G = make_group([12])
    H = subgroup_from_generators(G, [(6,)])
    assert weil_check(G, H, constant(G)) == 0
    assert weil_check(G, H, delta(G, (5,))) <= 1e-15
    G2 = make_group([2, 4])
    H2 = subgroup_from_generators(G2, [(1, 2)])
    f = random_function(G2, np.random.default_rng(3))
    assert weil_check(G2, H2, f) <= 1e-12


@given(factor_lists(), weights(), st.integers(0, 2**32 - 1))
def test_weil_both_sides(factors, w, seed):
    rng = np.random.default_rng(seed)
    G = make_group(factors, w)
    H = random_subgroup(G, rng)
    f = random_function(G, rng)
    l1 = float(G.weight) * np.abs(f.values).sum()
    assert weil_check(G, H, f) <= 1e-12 * l1
    assert weil_check_dual(G, H, f) <= 1e-12 * float(G.dual.weight) * np.abs(dft(f).values).sum()


def test_iter_subgroups_counts():
    # Z_12 has one subgroup per divisor of 12
    assert len(iter_subgroups(make_group([12]), max_gens=1)) == 6
    # Z_2 x Z_2 has five subgroups
    assert len(iter_subgroups(make_group([2, 2]))) == 5


def test_group_function_validation():
    G = make_group([3])
    with pytest.raises(InvalidInput):
        GroupFunction(G, np.ones(4))


def test_whole_group_of_trivial_group():
    from gtiframes.groups import whole_group

    G = make_group([1])
    assert whole_group(G).elements == ((0,),)
